#include <algorithm>
#include <string>

#include "catch_amalgamated.hpp"
#include "icckit/families.hpp"
#include "icckit/spec_io.hpp"

using namespace icckit;

namespace {

GroupDesc sample(const std::string& name) {
  return parse_spec(std::string(ICCKIT_SAMPLES_DIR) + "/" + name + ".json");
}

std::optional<bool> clause_value(const Verdict& v, const std::string& tag) {
  for (const Condition& c : v.conditions)
    if (c.clause == tag) return c.holds;
  FAIL("missing clause " << tag);
  return std::nullopt;
}

bool has_clause(const Verdict& v, const std::string& tag) {
  return std::any_of(v.conditions.begin(), v.conditions.end(),
                     [&](const Condition& c) { return c.clause == tag; });
}

OmegaDesc regular() { return OmegaDesc{OmegaRegular{}}; }
OmegaDesc cosets(std::size_t n) { return OmegaDesc{OmegaCosets{n, {}}}; }

}  // namespace

TEST_CASE("wreath conditions follow the truth table", "[families][wreath]") {
  struct Base {
    GroupDesc g;
    bool icc, centerless;
  };
  const std::vector<Base> bases = {{finite(FiniteGroup::cyclic(2)), false, false},
                                   {finite(FiniteGroup::cyclic(3)), false, false},
                                   {finite(FiniteGroup::symmetric(3)), false, true},
                                   {free_abelian(1), false, false},
                                   {free_group(2), true, true}};
  struct Top {
    GroupDesc q;
    OmegaDesc omega;
    bool orbits_infinite, faithful;
  };
  const std::vector<Top> tops = {{free_abelian(1), regular(), true, true},
                                 {free_abelian(1), cosets(2), false, false},
                                 {free_abelian(1), cosets(3), false, false},
                                 {free_group(2), regular(), true, true},
                                 {finite(FiniteGroup::cyclic(3)), regular(), false, true}};
  for (const Base& b : bases) {
    for (const Top& t : tops) {
      for (bool complete : {false, true}) {
        CAPTURE(family_name(b.g), family_name(t.q), complete, t.orbits_infinite);
        const Verdict v = complete ? decide_icc_wreath_complete(b.g, t.q, t.omega)
                                   : decide_icc_wreath_restricted(b.g, t.q, t.omega);
        CHECK(clause_value(v, clause::kWreathBaseIcc) == b.icc);
        CHECK(clause_value(v, clause::kWreathOrbitsInfinite) == t.orbits_infinite);
        CHECK(clause_value(v, clause::kWreathFcFaithful) == t.faithful);
        CHECK(has_clause(v, clause::kWreathBaseCenterless) == complete);
        if (complete) CHECK(clause_value(v, clause::kWreathBaseCenterless) == b.centerless);
        const bool expect = (b.icc || t.orbits_infinite) && t.faithful && (!complete || b.centerless);
        CHECK(v.outcome == (expect ? Outcome::Icc : Outcome::NotIcc));
        if (!expect) CHECK(v.witness.has_value());

        WreathConditions wc;
        wc.base_icc = b.icc;
        wc.orbits_infinite = t.orbits_infinite;
        wc.fc_faithful = t.faithful;
        wc.base_centerless = b.centerless;
        CHECK(wreath_truth_table(wc, complete) == expect);
        CHECK(dispatch_decide(GroupDesc(WreathDesc{complete, b.g, t.q, t.omega})).outcome == v.outcome);
      }
    }
  }
}

TEST_CASE("wreath truth table with unknowns", "[families][wreath]") {
  WreathConditions c;
  c.orbits_infinite = true;
  c.fc_faithful = true;
  CHECK(wreath_truth_table(c, false) == true);
  CHECK_FALSE(wreath_truth_table(c, true).has_value());
  c.base_centerless = false;
  CHECK(wreath_truth_table(c, true) == false);
  WreathConditions d;
  d.fc_faithful = false;
  CHECK(wreath_truth_table(d, false) == false);
  WreathConditions e;
  e.fc_faithful = true;
  CHECK_FALSE(wreath_truth_table(e, false).has_value());
  e.base_icc = false;
  CHECK_FALSE(wreath_truth_table(e, false).has_value());
  e.orbits_infinite = false;
  CHECK(wreath_truth_table(e, false) == false);
}

TEST_CASE("wreath quadrant", "[families][wreath]") {
  CHECK(dispatch_decide(sample("lamplighter")).outcome == Outcome::Icc);
  const Verdict c = dispatch_decide(sample("lamplighter_complete"));
  CHECK(c.outcome == Outcome::NotIcc);
  REQUIRE(c.witness);
  CHECK(c.witness->kind == WitnessKind::Central);
  CHECK(c.witness->element.rfind("const(", 0) == 0);
  CHECK(dispatch_decide(sample("s3_wreath_z_complete")).outcome == Outcome::Icc);

  for (std::size_t n : {2, 3, 4}) {
    for (bool complete : {false, true}) {
      const WreathDesc w{complete, finite(FiniteGroup::cyclic(n)), free_abelian(1), cosets(n)};
      const Verdict v = dispatch_decide(GroupDesc(w));
      CAPTURE(n, complete);
      CHECK(v.outcome == Outcome::NotIcc);
      REQUIRE(v.witness);
      CHECK(clause_value(v, clause::kWreathOrbitsInfinite) == false);
    }
  }
  const Verdict z3 = dispatch_decide(sample("wreath_z3_cosets"));
  CHECK(z3.outcome == Outcome::NotIcc);
  REQUIRE(z3.witness);
  CHECK(z3.witness->kind == WitnessKind::Oracle);

  // Trivial base: the wreath product is the top group.
  const WreathDesc triv{false, finite(FiniteGroup::trivial()), free_group(2), regular()};
  CHECK(dispatch_decide(GroupDesc(triv)).outcome == Outcome::Icc);
  const WreathDesc triv_z{true, finite(FiniteGroup::trivial()), free_abelian(1), regular()};
  CHECK(dispatch_decide(GroupDesc(triv_z)).outcome == Outcome::NotIcc);
}

TEST_CASE("Baumslag-Solitar grid", "[families][bs]") {
  for (long long m = -5; m <= 5; ++m) {
    for (long long n = -5; n <= 5; ++n) {
      if (m == 0 || n == 0) continue;
      CAPTURE(m, n);
      const Verdict v = decide_icc_bs(m, n);
      const bool icc = m != n && m != -n;
      CHECK(v.outcome == (icc ? Outcome::Icc : Outcome::NotIcc));
      CHECK(clause_value(v, clause::kBsUnbalanced) == icc);
      if (!icc) {
        REQUIRE(v.witness);
        CHECK(v.witness->known_class.size() == (m == n ? 1U : 2U));
      }
      CHECK(dispatch_decide(GroupDesc(BaumslagSolitarDesc{m, n})).outcome == v.outcome);
    }
  }
  CHECK_THROWS_AS(decide_icc_bs(0, 2), Error);
  CHECK(decide_icc_bs(1, 1).witness->element == "a");
  CHECK(decide_icc_bs(3, -3).witness->element == "a^3");
}

TEST_CASE("free products", "[families][free_product]") {
  const GroupDesc z2 = finite(FiniteGroup::cyclic(2));
  const GroupDesc z3 = finite(FiniteGroup::cyclic(3));
  const Verdict d = decide_icc_free_product({z2, z2});
  CHECK(d.outcome == Outcome::NotIcc);
  REQUIRE(d.witness);
  CHECK(d.witness->known_class == std::vector<std::string>{"a*b", "b*a"});
  CHECK(decide_icc_free_product({z2, z3}).outcome == Outcome::Icc);
  CHECK(decide_icc_free_product({free_abelian(1), free_abelian(1)}).outcome == Outcome::Icc);
  CHECK(decide_icc_free_product({z2, z2, z2}).outcome == Outcome::Icc);
  CHECK(decide_icc_free_product({finite(FiniteGroup::symmetric(3)), free_abelian(2)}).outcome == Outcome::Icc);
  CHECK_THROWS_AS(decide_icc_free_product({z2}), Error);
  CHECK_THROWS_AS(decide_icc_free_product({z2, finite(FiniteGroup::trivial())}), Error);
  CHECK(decide_icc_free_product({z2, DeclaredDesc{}}).outcome == Outcome::Unknown);
  CHECK(dispatch_decide(sample("free_product_z2_z2")).outcome == Outcome::NotIcc);
  CHECK(dispatch_decide(sample("free_product_z2_z3")).outcome == Outcome::Icc);
}

TEST_CASE("amalgams over finite groups", "[families][amalgam]") {
  const Verdict z6v4 = dispatch_decide(sample("amalgam_z6_v4"));
  CHECK(z6v4.outcome == Outcome::NotIcc);
  CHECK(clause_value(z6v4, clause::kAmalgamCoreTrivial) == false);
  REQUIRE(z6v4.witness);
  CHECK(z6v4.witness->element == "a^3");
  CHECK(z6v4.witness->kind == WitnessKind::FiniteNormalSubgroup);

  const FiniteGroup z4 = FiniteGroup::cyclic(4), z6 = FiniteGroup::cyclic(6);
  const Verdict deg = decide_icc_amalgam(z4, z4, {0, 2}, {0, 2}, {0, 2});
  CHECK(deg.outcome == Outcome::NotIcc);
  CHECK(clause_value(deg, clause::kAmalgamDegenerate) == true);
  CHECK(decide_icc_amalgam(z4, z6, {0, 2}, {0, 3}, {0, 3}).outcome == Outcome::NotIcc);

  // S3 *_{Z/2} S3 over a non-normal Z/2: the core collapses.
  const FiniteGroup s3 = FiniteGroup::symmetric(3);
  const Verdict s = decide_icc_amalgam(s3, s3, {0, 1}, {0, 1}, {0, 1});
  CHECK(s.outcome == Outcome::Icc);
  CHECK(clause_value(s, clause::kAmalgamCoreTrivial) == true);
  // Trivial edge group: an ordinary free product.
  CHECK(decide_icc_amalgam(s3, z4, {0}, {0}, {0}).outcome == Outcome::Icc);

  CHECK_THROWS_AS(decide_icc_amalgam(z4, z4, {0, 1, 2, 3}, {0, 2}, {0, 2}), Error);
  CHECK_THROWS_AS(decide_icc_amalgam(z4, z6, {0, 2}, {0, 3}, {0, 0}), Error);
  CHECK_THROWS_AS(decide_icc_amalgam(z4, z6, {0, 1}, {0, 3}, {0, 3}), Error);
}

TEST_CASE("HNN extensions over finite groups", "[families][hnn]") {
  const Verdict s3 = dispatch_decide(sample("hnn_s3"));
  CHECK(s3.outcome == Outcome::Icc);
  CHECK(clause_value(s3, clause::kHnnCoreTrivial) == true);
  CHECK(clause_value(s3, clause::kHnnDegenerate) == false);

  const FiniteGroup z4 = FiniteGroup::cyclic(4);
  const Verdict deg = decide_icc_hnn_finite_base(z4, {0, 1, 2, 3}, {0, 1, 2, 3}, {0, 3, 2, 1});
  CHECK(deg.outcome == Outcome::NotIcc);
  CHECK(clause_value(deg, clause::kHnnDegenerate) == true);
  REQUIRE(deg.witness);
  CHECK(deg.witness->kind == WitnessKind::FiniteNormalSubgroup);

  const Verdict triv = decide_icc_hnn_finite_base(FiniteGroup::trivial(), {0}, {0}, {0});
  CHECK(triv.outcome == Outcome::NotIcc);
  CHECK(triv.witness->element == "t");

  // Abelian base with a proper edge group: the edge group is normal.
  const Verdict ab = decide_icc_hnn_finite_base(z4, {0, 2}, {0, 2}, {0, 2});
  CHECK(ab.outcome == Outcome::NotIcc);
  CHECK(ab.witness->element == "a^2");
  // Trivial edge group over a nontrivial base.
  CHECK(decide_icc_hnn_finite_base(z4, {0}, {0}, {0}).outcome == Outcome::Icc);
}

TEST_CASE("finite extensions agree across both criteria", "[families][finite_ext]") {
  const std::vector<std::string> names = {"lattice_by_z2", "declared_times_z3"};
  for (const std::string& n : names) {
    const GroupDesc g = sample(n);
    const FiniteExtDesc& e = *g.as<FiniteExtDesc>();
    const Verdict a = decide_icc_finite_extension(e);
    const Verdict b = decide_icc_finite_index_torsion(e);
    CHECK(a.outcome == b.outcome);
    CHECK(a.outcome == Outcome::NotIcc);
  }

  auto declared_ext = [](std::size_t p, std::vector<bool> inner) {
    FiniteExtDesc e;
    DeclaredDesc k;
    k.icc = true;
    k.name = "K";
    e.kernel = GroupDesc(k);
    e.quotient = FiniteGroup::cyclic(p);
    e.declared_inner = std::move(inner);
    return e;
  };
  const FiniteExtDesc outer = declared_ext(3, {true, false, false});
  CHECK(decide_icc_finite_extension(outer).outcome == Outcome::Icc);
  CHECK(decide_icc_finite_index_torsion(outer).outcome == Outcome::Icc);
  CHECK(dispatch_decide(GroupDesc(outer)).outcome == Outcome::Icc);
  for (std::size_t p : {2, 3, 5, 7}) {
    const FiniteExtDesc kp = declared_ext(p, std::vector<bool>(p, true));
    CHECK(decide_icc_finite_extension(kp).outcome == Outcome::NotIcc);
    CHECK(decide_icc_finite_index_torsion(kp).outcome == Outcome::NotIcc);
  }
  CHECK_THROWS_AS(decide_icc_finite_extension(declared_ext(4, {true, false, true})), Error);
  CHECK_THROWS_AS(decide_icc_finite_extension(declared_ext(3, {false, true, true})), Error);
  CHECK_THROWS_AS(decide_icc_finite_extension(declared_ext(3, {true})), Error);

  FiniteExtDesc s3;
  s3.kernel = finite(FiniteGroup::symmetric(3));
  s3.quotient = FiniteGroup::cyclic(2);
  s3.finite_action = {Perm{0, 1, 2, 3, 4, 5}};
  const Verdict f = dispatch_decide(GroupDesc(s3));
  CHECK(f.outcome == Outcome::NotIcc);
  CHECK(f.witness->kind == WitnessKind::FiniteGroup);
  CHECK(has_clause(f, clause::kTorsionNotInner));
}

TEST_CASE("infinite dihedral group three ways", "[families][dihedral]") {
  for (const char* name : {"free_product_z2_z2", "amalgam_dihedral", "dihedral_semidirect"}) {
    CAPTURE(name);
    const Verdict v = dispatch_decide(sample(name));
    CHECK(v.outcome == Outcome::NotIcc);
    REQUIRE(v.witness);
    CHECK(v.witness->kind == WitnessKind::Oracle);
  }
}

TEST_CASE("simple, declared and direct products", "[families][simple]") {
  CHECK(decide_icc_simple(GroupDesc(FiniteDesc{FiniteGroup::alternating(5), true})).outcome == Outcome::NotIcc);
  DeclaredDesc inf;
  inf.simple = true;
  inf.infinite = true;
  CHECK(decide_icc_simple(inf).outcome == Outcome::Icc);
  DeclaredDesc fin = inf;
  fin.infinite = false;
  CHECK(decide_icc_simple(fin).outcome == Outcome::NotIcc);
  DeclaredDesc unk;
  unk.simple = true;
  CHECK(decide_icc_simple(unk).outcome == Outcome::Unknown);
  CHECK_THROWS_AS(decide_icc_simple(free_group(2)), Error);
  CHECK_THROWS_AS(decide_icc_simple(DeclaredDesc{}), Error);
  CHECK(dispatch_decide(GroupDesc(inf)).outcome == Outcome::Icc);

  DeclaredDesc central;
  central.centerless = false;
  const Verdict c = dispatch_decide(central);
  CHECK(c.outcome == Outcome::NotIcc);
  CHECK(c.witness->kind == WitnessKind::Central);
  CHECK(dispatch_decide(DeclaredDesc{}).outcome == Outcome::Unknown);

  CHECK(dispatch_decide(DirectProductDesc{{free_group(2), free_group(3)}}).outcome == Outcome::Icc);
  const Verdict fz = dispatch_decide(DirectProductDesc{{free_group(2), free_abelian(1)}});
  CHECK(fz.outcome == Outcome::NotIcc);
  CHECK(fz.witness->kind == WitnessKind::Central);
  CHECK(dispatch_decide(DirectProductDesc{{free_group(2), DeclaredDesc{}}}).outcome == Outcome::Unknown);
  CHECK(dispatch_decide(DirectProductDesc{{DeclaredDesc{}, free_abelian(1)}}).outcome == Outcome::NotIcc);
  CHECK(dispatch_decide(DirectProductDesc{}).outcome == Outcome::NotIcc);
}

TEST_CASE("base families", "[families][dispatch]") {
  CHECK(dispatch_decide(sample("finite_s3")).outcome == Outcome::NotIcc);
  CHECK(dispatch_decide(sample("free_f2")).outcome == Outcome::Icc);
  CHECK(dispatch_decide(free_group(1)).outcome == Outcome::NotIcc);
  CHECK(dispatch_decide(free_group(0)).witness->kind == WitnessKind::FiniteGroup);
  CHECK(dispatch_decide(free_abelian(3)).outcome == Outcome::NotIcc);
  CHECK(dispatch_decide(sample("anosov")).outcome == Outcome::Icc);
  CHECK(dispatch_decide(sample("heisenberg")).outcome == Outcome::NotIcc);
  CHECK(dispatch_decide(sample("free_by_z")).outcome != Outcome::Unknown);
}

TEST_CASE("undecided inputs stay unknown", "[families][unknown]") {
  const Verdict c = dispatch_decide(sample("commuting_pair_unknown"));
  CHECK(c.outcome == Outcome::Unknown);
  CHECK_FALSE(c.witness);
  const Verdict t = dispatch_decide(sample("lattice_free_twist"));
  CHECK(t.outcome == Outcome::Unknown);
  CHECK(clause_value(t, clause::kNoDecider) == std::nullopt);
}
