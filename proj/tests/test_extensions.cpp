#include <random>

#include "catch_amalgamated.hpp"
#include "icckit/extensions.hpp"
#include "icckit/families.hpp"
#include "icckit/oracle.hpp"

using namespace icckit;

namespace {

IntMatrix M(const std::vector<std::vector<long long>>& rows) { return IntMatrix::from_rows(rows); }

SplitExtensionDesc lattice_ext(std::size_t n, GroupDesc q, std::vector<IntMatrix> action) {
  SplitExtensionDesc s;
  s.kernel = free_abelian(n);
  s.quotient = std::move(q);
  s.lattice_action = std::move(action);
  return s;
}

IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> k(-2, 2);
  for (int s = 0; s < 6; ++s) {
    const std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    IntMatrix e = IntMatrix::identity(n);
    e(i, j) = k(rng);
    u = u * e;
  }
  return u;
}

const IntMatrix kPhi = M({{1, 1}, {0, 1}});
const IntMatrix kPsi = M({{1, 0}, {1, 1}});
const IntMatrix kAnosov = M({{2, 1}, {1, 1}});

}  // namespace

TEST_CASE("FC_G(K) triviality", "[extensions][fc]") {
  const FcKernelCheck twist = check_fc_gk_trivial(lattice_ext(2, free_group(2), {kPhi, kPsi}));
  CHECK(twist.trivial == true);

  SplitExtensionDesc z6;
  z6.kernel = finite(FiniteGroup::cyclic(6));
  z6.quotient = free_abelian(1);
  z6.finite_action = {Perm{0, 5, 4, 3, 2, 1}};
  const FcKernelCheck fin = check_fc_gk_trivial(z6);
  CHECK(fin.trivial == false);
  CHECK(fin.finite_kernel);
  REQUIRE(fin.witness);
  CHECK_FALSE(fin.witness->empty());

  const FcKernelCheck dih = check_fc_gk_trivial(lattice_ext(1, finite(FiniteGroup::cyclic(2)), {M({{-1}})}));
  CHECK(dih.trivial == false);
  REQUIRE(dih.witness_vector);
  CHECK(*dih.witness_vector == to_int_vector({1}));

  const FcKernelCheck heis = check_fc_gk_trivial(lattice_ext(2, free_abelian(1), {kPhi}));
  CHECK(heis.trivial == false);
  REQUIRE(heis.witness_vector);
  CHECK(kPhi.apply(*heis.witness_vector) == *heis.witness_vector);
}

TEST_CASE("split cocycles", "[extensions][cocycle]") {
  const Cocycle c = split_cocycle_dq({kPhi}, to_int_vector({0, 1}));
  CHECK(c.values[0] == to_int_vector({1, 0}));
  CHECK(split_cocycle_dq({IntMatrix::identity(2)}, to_int_vector({3, -4})).values[0] == to_int_vector({0, 0}));
  CHECK_THROWS_AS(split_cocycle_dq({kPhi}, to_int_vector({1, 2, 3})), Error);
  for (long long n = 0; n <= 10; ++n) {
    const KerPhiElement e = twist_kernel_element(n);
    CHECK(e.values[1] == to_int_vector({0, n}));
    CHECK(make_cocycle(twist_center_actions(), e.values, twist_commuting()).satisfies_cocycle_condition());
  }
  // The cocycle condition is enforced on commuting pairs.
  CHECK_THROWS_AS(make_cocycle({kPhi, kPsi}, {to_int_vector({1, 0}), to_int_vector({0, 0})}, {{0, 1}}), Error);
}

TEST_CASE("H1 vanishing", "[extensions][h1]") {
  for (long long n = 1; n <= 10; ++n) {
    const Cocycle c = make_cocycle({kPhi}, {to_int_vector({0, n})});
    const H1Verdict h = h1_class_is_zero(c);
    CHECK_FALSE(h.zero);
    CHECK(h.obstruction_row);
    CHECK(h.recheck(c));
    const Cocycle full = make_cocycle(twist_center_actions(), twist_kernel_element(n).values, twist_commuting());
    CHECK_FALSE(h1_class_is_zero(full).zero);
  }
  const Cocycle zero0 = make_cocycle({kPhi}, {to_int_vector({0, 0})});
  const H1Verdict h0 = h1_class_is_zero(zero0);
  CHECK(h0.zero);
  REQUIRE(h0.z);
  CHECK(h0.recheck(zero0));
  CHECK(h1_class_is_zero(make_cocycle(twist_center_actions(), twist_kernel_element(0).values, twist_commuting())).zero);

  // Coboundaries are recognized and recovered; shifting by a coboundary
  // never changes the verdict.
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> d(-5, 5);
  const std::vector<std::vector<IntMatrix>> systems = {
      {kPhi}, {kPhi, kPsi}, {kAnosov}, {M({{-1, 0}, {0, -1}})}, {M({{0, -1}, {1, 0}})}};
  for (const auto& acts : systems) {
    for (int trial = 0; trial < 40; ++trial) {
      const IntVector z0 = to_int_vector({d(rng), d(rng)});
      const Cocycle cob = split_cocycle_dq(acts, z0);
      const H1Verdict h = h1_class_is_zero(cob);
      REQUIRE(h.zero);
      REQUIRE(h.recheck(cob));
      if (acts.size() == 1) {
        const IntVector base = to_int_vector({d(rng), d(rng)});
        IntVector shifted = base;
        for (std::size_t i = 0; i < 2; ++i) shifted[i] += cob.values[0][i];
        REQUIRE(h1_class_is_zero(make_cocycle(acts, {base})).zero ==
                h1_class_is_zero(make_cocycle(acts, {shifted})).zero);
      }
    }
  }
}

TEST_CASE("restricted action injectivity", "[extensions][theta]") {
  const SplitExtensionDesc heis = lattice_ext(2, free_abelian(1), {kPhi});
  CHECK(theta_restricted_injective(heis, fc_of_group(*heis.quotient)).injective == true);

  const SplitExtensionDesc flip = lattice_ext(1, free_abelian(1), {M({{-1}})});
  const InjectivityCheck f = theta_restricted_injective(flip, fc_of_group(*flip.quotient));
  CHECK(f.injective == false);
  REQUIRE(f.witness);
  CHECK(format_word(*f.witness, quotient_alphabet(flip)) == "t^2");

  const SplitExtensionDesc f2 = lattice_ext(2, free_group(2), {kPhi, kPsi});
  CHECK(theta_restricted_injective(f2, fc_of_group(*f2.quotient)).injective == true);

  // Finite quotient acting by a non-faithful action.
  const SplitExtensionDesc z4 = lattice_ext(1, finite(FiniteGroup::cyclic(4)), {M({{-1}})});
  CHECK(theta_restricted_injective(z4, fc_of_group(*z4.quotient)).injective == false);

  // Z^2 quotient with a relation among the matrices: found by bounded search.
  const SplitExtensionDesc rel = lattice_ext(2, free_abelian(2), {kPhi, kPhi.pow(2)});
  CHECK(theta_restricted_injective(rel, fc_of_group(*rel.quotient)).injective == false);

  // Z^2 quotient with commuting C, C + 2I and no small relation: unresolved.
  const IntMatrix c = M({{0, 0, -1}, {1, 0, 3}, {0, 1, 0}});
  const IntMatrix c2 = c + IntMatrix::identity(3).scaled(2);
  const SplitExtensionDesc open = lattice_ext(3, free_abelian(2), {c, c2});
  CHECK_FALSE(theta_restricted_injective(open, fc_of_group(*open.quotient)).injective.has_value());

  SplitExtensionDesc nonab;
  nonab.kernel = finite(FiniteGroup::symmetric(3));
  nonab.quotient = free_abelian(1);
  nonab.finite_action = {Perm{0, 1, 2, 3, 4, 5}};
  CHECK_THROWS_AS(theta_restricted_injective(nonab, fc_of_group(*nonab.quotient)), Error);
}

TEST_CASE("split extensions with abelian kernel", "[extensions][decide]") {
  const Verdict anosov = decide_icc_split_abelian_kernel(lattice_ext(2, free_abelian(1), {kAnosov}));
  CHECK(anosov.outcome == Outcome::Icc);

  SplitExtensionDesc dih = lattice_ext(1, finite(FiniteGroup::cyclic(2)), {M({{-1}})});
  const Verdict d = decide_icc_split_abelian_kernel(dih);
  CHECK(d.outcome == Outcome::NotIcc);
  REQUIRE(d.witness);
  CHECK(d.witness->element == "a");

  const Verdict heis = decide_icc_split_abelian_kernel(lattice_ext(2, free_abelian(1), {kPhi}));
  CHECK(heis.outcome == Outcome::NotIcc);
  REQUIRE(heis.witness);
  CHECK(heis.witness->element == "a1");

  const Verdict twist = decide_icc_split_abelian_kernel(lattice_ext(2, free_group(2), {kPhi, kPsi}));
  CHECK(twist.outcome == Outcome::Icc);

  const IntMatrix c = M({{0, 0, -1}, {1, 0, 3}, {0, 1, 0}});
  const Verdict open =
      decide_icc_split_abelian_kernel(lattice_ext(3, free_abelian(2), {c, c + IntMatrix::identity(3).scaled(2)}));
  CHECK(open.outcome == Outcome::Unknown);
}

TEST_CASE("cyclic quotient criterion", "[extensions][decide]") {
  CHECK(decide_icc_abelian_quotient_cyclic(lattice_ext(2, free_abelian(1), {kAnosov})).outcome == Outcome::Icc);
  CHECK(decide_icc_abelian_quotient_cyclic(lattice_ext(2, free_abelian(1), {M({{-1, 0}, {0, -1}})})).outcome ==
        Outcome::NotIcc);
  for (std::size_t n = 1; n <= 3; ++n)
    CHECK(decide_icc_abelian_quotient_cyclic(lattice_ext(n, free_abelian(1), {IntMatrix::identity(n)})).outcome ==
          Outcome::NotIcc);
  CHECK_THROWS_AS(decide_icc_abelian_quotient_cyclic(lattice_ext(2, free_abelian(2), {kPhi, kPhi})), Error);
  // Both criteria agree on Z^n x| Z.
  for (const IntMatrix& m : {kAnosov, kPhi, M({{0, -1}, {1, 0}}), M({{-1, 1}, {0, -1}}),
                             M({{0, 0, 1}, {1, 0, -1}, {0, 1, 1}})}) {
    const SplitExtensionDesc e = lattice_ext(m.rows(), free_abelian(1), {m});
    CHECK(decide_icc_abelian_quotient_cyclic(e).outcome == decide_icc_split_abelian_kernel(e).outcome);
  }
}

TEST_CASE("verdict invariant under kernel basis change", "[extensions][property]") {
  std::mt19937 rng(31);
  const std::vector<IntMatrix> ms = {kAnosov, kPhi, M({{0, -1}, {1, 0}}), M({{-1, 0}, {0, -1}}),
                                     M({{3, 2}, {1, 1}}), M({{1, 0}, {0, -1}})};
  for (const IntMatrix& m : ms) {
    const Outcome ref = decide_icc_abelian_quotient_cyclic(lattice_ext(2, free_abelian(1), {m})).outcome;
    for (int trial = 0; trial < 15; ++trial) {
      const IntMatrix p = random_unimodular(rng, 2);
      const IntMatrix conj = p * m * unimodular_inverse(p);
      REQUIRE(decide_icc_abelian_quotient_cyclic(lattice_ext(2, free_abelian(1), {conj})).outcome == ref);
      REQUIRE(decide_icc_split_abelian_kernel(lattice_ext(2, free_abelian(1), {conj})).outcome == ref);
    }
  }
}

TEST_CASE("finite abelian kernel by finite quotient agrees with brute force", "[extensions][oracle]") {
  struct Case {
    FiniteGroup k, q;
    std::vector<Perm> action;
  };
  const FiniteGroup z2 = FiniteGroup::cyclic(2), z3 = FiniteGroup::cyclic(3), z4 = FiniteGroup::cyclic(4);
  const FiniteGroup z5 = FiniteGroup::cyclic(5), z8 = FiniteGroup::cyclic(8);
  const FiniteGroup v4 = FiniteGroup::direct_product(z2, z2);
  const std::vector<Case> cases = {
      {z3, z2, {Perm{0, 2, 1}}},       {z3, z2, {Perm{0, 1, 2}}},         {z5, z4, {Perm{0, 2, 4, 1, 3}}},
      {z8, z2, {Perm{0, 7, 6, 5, 4, 3, 2, 1}}}, {z8, z2, {Perm{0, 3, 6, 1, 4, 7, 2, 5}}},
      {v4, z3, {Perm{0, 3, 1, 2}}},     {v4, z2, {Perm{0, 2, 1, 3}}},       {z4, z2, {Perm{0, 3, 2, 1}}},
      {FiniteGroup::cyclic(12), z2, {Perm{0, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1}}}};
  for (const Case& c : cases) {
    SplitExtensionDesc e;
    e.kernel = finite(c.k);
    e.quotient = finite(c.q);
    e.finite_action = c.action;
    const Verdict v = decide_icc_split_abelian_kernel(e);
    REQUIRE(v.outcome == Outcome::NotIcc);
    REQUIRE(v.witness);
    const FiniteNF g(FiniteGroup::semidirect_product(c.k, c.q, c.action), extension_alphabet(e));
    REQUIRE(g.group().order() <= 48);
    const auto cls = certify_finite_class(g, parse_element(g, v.witness->element), 8);
    REQUIRE(cls);
    REQUIRE(parse_element(g, v.witness->element) != g.identity());
  }
}

TEST_CASE("Xi injectivity reports", "[extensions][xi]") {
  std::vector<KerPhiElement> kernel;
  for (long long n = 1; n <= 10; ++n) kernel.push_back(twist_kernel_element(n));
  const XiReport r = xi_injective_report(twist_center_actions(), kernel, twist_commuting());
  CHECK_FALSE(r.violation);
  CHECK(r.classes.size() == 10);
  for (const auto& [q, h] : r.classes) CHECK_FALSE(h.zero);

  CHECK_FALSE(xi_injective_report(twist_center_actions(), {}, twist_commuting()).violation);
  CHECK_FALSE(xi_injective_report(twist_center_actions(), {twist_kernel_element(0)}, twist_commuting()).violation);

  KerPhiElement z;
  z.q = "q0";
  z.conjugator = to_int_vector({0, 0});
  const XiReport bad = xi_injective_report(twist_center_actions(), {z}, twist_commuting());
  CHECK(bad.violation);
  CHECK(bad.witness == "q0");

  KerPhiElement missing;
  missing.q = "q1";
  CHECK_THROWS_AS(xi_injective_report(twist_center_actions(), {missing}), Error);

  // Through a descriptor. A conjugator always yields a principal class.
  const SplitExtensionDesc ab = lattice_ext(2, free_abelian(1), {kPhi});
  KerPhiElement k;
  k.q = "t";
  k.values = {to_int_vector({0, 1})};
  CHECK_FALSE(xi_injective_report(ab, {k}).violation);
  k.values = {to_int_vector({1, 0})};
  CHECK(xi_injective_report(ab, {k}).violation);
  k.values.clear();
  k.conjugator = to_int_vector({0, 1});
  CHECK(xi_injective_report(ab, {k}).violation);
}

TEST_CASE("split extension validation", "[extensions][validate]") {
  CHECK_THROWS_AS(validate_split_extension(lattice_ext(2, free_abelian(2), {kPhi, kPsi})), Error);
  CHECK_THROWS_AS(validate_split_extension(lattice_ext(1, finite(FiniteGroup::cyclic(3)), {M({{-1}})})), Error);
  CHECK_THROWS_AS(validate_split_extension(lattice_ext(2, free_abelian(1), {M({{2, 0}, {0, 1}})})), Error);
  CHECK_THROWS_AS(validate_split_extension(lattice_ext(2, free_abelian(1), {})), Error);
  CHECK_NOTHROW(validate_split_extension(lattice_ext(1, finite(FiniteGroup::cyclic(4)), {M({{-1}})})));
  SplitExtensionDesc named = lattice_ext(1, finite(FiniteGroup::cyclic(2)), {M({{-1}})});
  named.kernel_names = {"t"};
  named.quotient_names = {"s"};
  CHECK(extension_alphabet(named) == std::vector<std::string>{"t", "s"});
  named.kernel_names = {"t", "u"};
  CHECK_THROWS_AS(validate_split_extension(named), Error);
}
