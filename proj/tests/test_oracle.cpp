#include <random>
#include <set>

#include "catch_amalgamated.hpp"
#include "icckit/oracle.hpp"
#include "icckit/spec_io.hpp"

using namespace icckit;

namespace {

GroupDesc sample(const std::string& name) {
  return parse_spec(std::string(ICCKIT_SAMPLES_DIR) + "/" + name + ".json");
}

AnyNormalForm nf_of(const GroupDesc& g) {
  NormalFormLookup l = make_normal_form(g);
  REQUIRE(l.group);
  return *l.group;
}

template <class G>
typename G::Element random_element(const G& g, std::mt19937& rng, std::size_t max_len) {
  const std::size_t n = g.alphabet().size();
  std::uniform_int_distribution<std::size_t> len(0, max_len), pick(0, n - 1);
  std::bernoulli_distribution sign;
  auto x = g.identity();
  for (std::size_t i = 0, l = len(rng); i < l; ++i) x = g.multiply(x, g.letter(pick(rng), sign(rng) ? 1 : -1));
  return x;
}

bool same(const AnyNormalForm& nf, const std::string& a, const std::string& b) {
  return canonical(nf, a) == canonical(nf, b);
}

const std::vector<std::string> kNormalFormSamples = {
    "bs_2_3",           "bs_2_2",          "bs_3_-3",         "anosov",         "heisenberg",
    "dihedral_semidirect", "lamplighter",  "wreath_z3_cosets", "free_product_z2_z2",
    "free_product_z2_z3", "amalgam_z6_v4", "amalgam_dihedral", "hnn_s3",        "finite_s3",
    "free_f2",          "lattice_free_twist", "lattice_by_z2", "free_by_z",     "commuting_pair_unknown"};

}  // namespace

TEST_CASE("normal forms satisfy the group axioms", "[oracle][axioms]") {
  std::mt19937 rng(11);
  for (const std::string& name : kNormalFormSamples) {
    CAPTURE(name);
    const AnyNormalForm nf = nf_of(sample(name));
    std::visit(
        [&](const auto& g) {
          const std::string id = g.format(g.identity());
          CHECK(id == "1");
          for (std::size_t i = 0; i < g.alphabet().size(); ++i)
            REQUIRE(g.format(g.multiply(g.letter(i, 1), g.letter(i, -1))) == id);
          for (int trial = 0; trial < 150; ++trial) {
            const auto x = random_element(g, rng, 7);
            const auto y = random_element(g, rng, 7);
            const auto z = random_element(g, rng, 7);
            REQUIRE(g.format(g.multiply(g.multiply(x, y), z)) == g.format(g.multiply(x, g.multiply(y, z))));
            REQUIRE(g.format(g.multiply(x, g.invert(x))) == id);
            REQUIRE(g.format(g.multiply(g.invert(x), x)) == id);
            REQUIRE(g.format(g.multiply(x, g.identity())) == g.format(x));
            REQUIRE(g.format(parse_element(g, g.format(x))) == g.format(x));
          }
        },
        nf);
  }
}

TEST_CASE("normal forms satisfy the defining relations", "[oracle][relations]") {
  for (auto [m, n] : std::vector<std::pair<long long, long long>>{{2, 3}, {1, 2}, {3, -3}, {2, 2}, {-2, 5}}) {
    const AnyNormalForm g = BsNF(m, n);
    CAPTURE(m, n);
    CHECK(same(g, "t*a^" + std::to_string(m) + "*t^-1", "a^" + std::to_string(n)));
    CHECK_FALSE(same(g, "t*a*t^-1", "a"));
  }
  const AnyNormalForm tw = nf_of(sample("lattice_free_twist"));
  CHECK(same(tw, "q1*a2*q1^-1", "a1*a2"));
  CHECK(same(tw, "q1*a1*q1^-1", "a1"));
  CHECK(same(tw, "q2*a1*q2^-1", "a1*a2"));
  CHECK(same(tw, "q1*k0*q1^-1", "k0*a2"));
  CHECK(same(tw, "q2*k0*q2^-1", "k0*a1"));
  CHECK(same(tw, "q1*k1*q1^-1", "k1"));
  CHECK(same(tw, "q0*k1*q0^-1", "k0*k1*k0^-1"));
  CHECK(same(tw, "q0*q1", "q1*q0"));
  CHECK(same(tw, "q0*a1", "a1*q0"));
  CHECK(same(tw, "k0*a2", "a2*k0"));
  CHECK_FALSE(same(tw, "q1*q2", "q2*q1"));
  // k^-1 q centralizes the kernel; conjugating by q1 shifts it by a central element.
  for (int n = 1; n <= 5; ++n) {
    const std::string e = "k0^-" + std::to_string(n) + "*q0^" + std::to_string(n);
    CHECK(same(tw, e + "*k1", "k1*" + e));
    CHECK(same(tw, "q1*" + e + "*q1^-1", "a2^-" + std::to_string(n) + "*" + e));
  }

  // Edge identifications, with words read off the finite factors.
  const GroupDesc amd = sample("amalgam_z6_v4");
  const AmalgamDesc& ad = *amd.as<AmalgamDesc>();
  const AnyNormalForm am = nf_of(amd);
  for (std::size_t i = 0; i < ad.c.size(); ++i)
    CHECK(same(am, format_word(ad.a.word_for(ad.c[i]), finite_alphabet(ad.a, "a")),
               format_word(ad.b.word_for(ad.phi[i]), finite_alphabet(ad.b, "b"))));
  const GroupDesc hd = sample("hnn_s3");
  const HnnDesc& h = *hd.as<HnnDesc>();
  const AnyNormalForm hnn = nf_of(hd);
  const std::vector<std::string> ha = finite_alphabet(h.base, "a");
  for (std::size_t i = 0; i < h.c.size(); ++i)
    if (h.c[i] != h.base.identity())
      CHECK(same(hnn, "t*" + format_word(h.base.word_for(h.c[i]), ha) + "*t^-1",
                 format_word(h.base.word_for(h.phi[i]), ha)));
  CHECK_FALSE(same(hnn, "t*" + format_word(h.base.word_for(2), ha) + "*t^-1",
                   format_word(h.base.word_for(2), ha)));
}

TEST_CASE("conjugate balls match independent class computations", "[oracle][ball]") {
  // Z^2 x|_A Z: the class of v in the kernel is {A^k v}, one new point per side.
  for (const char* name : {"anosov", "heisenberg"}) {
    const BallReport b = ball_report(sample(name), "a2", 6);
    CAPTURE(name);
    for (std::size_t r = 0; r <= 6; ++r) CHECK(b.counts[r] == 2 * r + 1);
    CHECK_FALSE(b.closed);
  }
  const BallReport central = ball_report(sample("heisenberg"), "a1", 5);
  CHECK(central.closed);
  CHECK(central.closed_at == 0U);
  CHECK(central.members == std::vector<std::string>{"a1"});

  const BallReport lamp = ball_report(sample("lamplighter"), "d0", 8);
  for (std::size_t r = 0; r <= 8; ++r) CHECK(lamp.counts[r] == 2 * r + 1);
  CHECK_FALSE(lamp.closed);

  const BallReport bs = ball_report(GroupDesc(BaumslagSolitarDesc{2, 3}), "a", 8);
  CHECK(bs.counts == std::vector<std::size_t>{1, 3, 8, 20, 48, 118, 282, 680, 1656});

  const BallReport z3 = ball_report(sample("wreath_z3_cosets"), "d0", 6);
  CHECK(z3.closed);
  CHECK(z3.members.size() == 3);
}

TEST_CASE("ball invariants", "[oracle][ball]") {
  std::mt19937 rng(5);
  for (const std::string& name : kNormalFormSamples) {
    if (name == "lattice_free_twist") continue;
    CAPTURE(name);
    const AnyNormalForm nf = nf_of(sample(name));
    const BallReport id = ball_report(nf, "", 4);
    CHECK(id.closed);
    CHECK(id.closed_at == 0U);
    CHECK(id.counts == std::vector<std::size_t>(5, 1));
    CHECK(id.members == std::vector<std::string>{"1"});
    for (const std::string& p : default_probes(nf)) {
      const BallReport b = ball_report(nf, p, 4);
      REQUIRE(b.counts.size() == 5);
      CHECK(b.counts[0] == 1);
      CHECK(std::is_sorted(b.counts.begin(), b.counts.end()));
      CHECK_FALSE(b.truncated);
      if (b.closed) {
        CHECK(b.members.size() == b.counts.back());
        CHECK(std::is_sorted(b.members.begin(), b.members.end()));
        CHECK(std::count(b.members.begin(), b.members.end(), b.element) == 1);
      }
    }
  }
  const BallReport capped = ball_conjugates(BsNF(2, 3), BsNF(2, 3).letter(0, 1), 12, 500);
  CHECK(capped.truncated);
  CHECK_FALSE(capped.closed);
}

TEST_CASE("certified classes equal brute-force classes in finite groups", "[oracle][finite]") {
  std::vector<FiniteGroup> groups = {FiniteGroup::trivial(), FiniteGroup::quaternion()};
  for (std::size_t n = 1; n <= 12; ++n) groups.push_back(FiniteGroup::cyclic(n));
  for (std::size_t n = 2; n <= 8; ++n) groups.push_back(FiniteGroup::dihedral(n));
  for (std::size_t k = 1; k <= 4; ++k) groups.push_back(FiniteGroup::symmetric(k));
  groups.push_back(FiniteGroup::alternating(4));
  groups.push_back(FiniteGroup::direct_product(FiniteGroup::symmetric(3), FiniteGroup::cyclic(2)));
  for (const FiniteGroup& g : groups) {
    const FiniteNF nf(g);
    CAPTURE(g.order());
    for (const auto& cls : fin_conjugacy_classes(g)) {
      std::vector<std::string> expect;
      for (std::size_t x : cls) expect.push_back(nf.format(x));
      std::sort(expect.begin(), expect.end());
      for (std::size_t x : cls) {
        const auto c = certify_finite_class(nf, x, 8);
        REQUIRE(c);
        REQUIRE(c->members == expect);
      }
    }
  }
  const WreathNF lamp(FiniteGroup::cyclic(2), std::nullopt, {"d0", "t"});
  CHECK_FALSE(certify_finite_class(lamp, lamp.letter(0, 1), 5));
}

TEST_CASE("infinite dihedral translation class in three presentations", "[oracle][dihedral]") {
  for (const char* name : {"free_product_z2_z2", "amalgam_dihedral", "dihedral_semidirect"}) {
    CAPTURE(name);
    const GroupDesc g = sample(name);
    const Verdict v = dispatch_decide(g);
    REQUIRE(v.witness);
    const BallReport b = ball_report(g, v.witness->element, 4);
    CHECK(b.closed);
    CHECK(b.members.size() == 2);
  }
  const BallReport t = ball_report(sample("dihedral_semidirect"), "t", 4);
  CHECK(t.members == std::vector<std::string>{"t", "t^-1"});
}

TEST_CASE("cross-checks on the sample corpus", "[oracle][cross_check]") {
  for (const std::string& name : kNormalFormSamples) {
    CAPTURE(name);
    const GroupDesc g = sample(name);
    const Verdict v = dispatch_decide(g);
    const CrossCheckRecord r = cross_check(g, v, 6);
    CHECK(r.consistent);
    CHECK(r.skipped == (v.outcome == Outcome::Unknown));
  }
  const GroupDesc complete = sample("s3_wreath_z_complete");
  CHECK_FALSE(make_normal_form(complete).group);
  CHECK_THROWS_AS(ball_report(complete, "d0", 2), Error);
  const CrossCheckRecord skip = cross_check(complete, dispatch_decide(complete));
  CHECK(skip.skipped);
  CHECK(skip.consistent);
}

TEST_CASE("cross-checks reject wrong verdicts", "[oracle][cross_check]") {
  const GroupDesc bs22 = BaumslagSolitarDesc{2, 2};
  Verdict wrong_icc;
  wrong_icc.outcome = Outcome::Icc;
  CHECK_FALSE(cross_check(bs22, wrong_icc, 6).consistent);

  const GroupDesc bs23 = BaumslagSolitarDesc{2, 3};
  Verdict open;
  open.outcome = Outcome::NotIcc;
  open.witness = Witness{"a", WitnessKind::Oracle, "", {}};
  CHECK_FALSE(cross_check(bs23, open, 5).consistent);

  const GroupDesc bs2m2 = BaumslagSolitarDesc{2, -2};
  Verdict not_central;
  not_central.outcome = Outcome::NotIcc;
  not_central.witness = Witness{"a^2", WitnessKind::Central, "", {}};
  CHECK_FALSE(cross_check(bs2m2, not_central, 5).consistent);

  Verdict wrong_class = dispatch_decide(bs2m2);
  REQUIRE(cross_check(bs2m2, wrong_class, 5).consistent);
  wrong_class.witness->known_class = {"a^2"};
  CHECK_FALSE(cross_check(bs2m2, wrong_class, 5).consistent);

  Verdict garbage;
  garbage.outcome = Outcome::NotIcc;
  garbage.witness = Witness{"zz", WitnessKind::Oracle, "", {}};
  CHECK_FALSE(cross_check(bs23, garbage, 5).consistent);
  garbage.witness->kind = WitnessKind::Structural;
  CHECK(cross_check(bs23, garbage, 5).consistent);

  Verdict bare;
  bare.outcome = Outcome::NotIcc;
  CHECK_FALSE(cross_check(bs23, bare, 5).consistent);
}

TEST_CASE("twisted lattice-by-free probes keep growing", "[oracle][twist]") {
  const AnyNormalForm tw = nf_of(sample("lattice_free_twist"));
  for (const char* p : {"a1", "a2", "k0", "k1", "q0", "q1", "a1*q0", "k0^-1*q0", "k0^-2*q0^2"}) {
    CAPTURE(p);
    const BallReport b = ball_report(tw, p, 6);
    REQUIRE(b.counts.size() == 7);
    CHECK_FALSE(b.closed);
    for (std::size_t r = 1; r <= 6; ++r) CHECK(b.counts[r] > b.counts[r - 1]);
  }
}
