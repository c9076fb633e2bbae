// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "icckit/icckit.hpp"

using namespace icckit;

namespace {

struct CriterionResult {
  bool ok = true;
  std::ostringstream note;
  void fail(const std::string& why) {
    if (ok) note << why;
    ok = false;
  }
};

GroupDesc sample(const std::string& name) {
  return parse_spec(std::string(ICCKIT_SAMPLES_DIR) + "/" + name + ".json");
}

IntMatrix M(const std::vector<std::vector<long long>>& rows) { return IntMatrix::from_rows(rows); }

bool strictly_increasing(const std::vector<std::size_t>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] <= v[i - 1]) return false;
  return true;
}

std::optional<bool> clause_value(const Verdict& v, const std::string& tag) {
  for (const Condition& c : v.conditions)
    if (c.clause == tag) return c.holds;
  return std::nullopt;
}

// 1 ------------------------------------------------------------------------
void bs_grid(CriterionResult& r) {
  int icc = 0, not_icc = 0;
  for (long long m = -5; m <= 5; ++m) {
    for (long long n = -5; n <= 5; ++n) {
      if (m == 0 || n == 0) continue;
      const std::string tag = "BS(" + std::to_string(m) + "," + std::to_string(n) + ")";
      const GroupDesc g = BaumslagSolitarDesc{m, n};
      const Verdict v = dispatch_decide(g);
      const bool expect = m != n && m != -n;
      if ((v.outcome == Outcome::Icc) != expect) return r.fail(tag + " decided " + to_string(v.outcome));
      if (expect) {
        ++icc;
        const BallReport b = ball_report(g, "a", 8);
        if (b.closed || !strictly_increasing(b.counts)) return r.fail(tag + ": class of a stops growing");
        continue;
      }
      ++not_icc;
      if (!v.witness) return r.fail(tag + ": no witness");
      const BallReport b = ball_report(g, v.witness->element, 4);
      const AnyNormalForm nf = *make_normal_form(g).group;
      std::vector<std::string> expect_class;
      expect_class.push_back(canonical(nf, "a^" + std::to_string(m)));
      if (m == -n) expect_class.push_back(canonical(nf, "a^" + std::to_string(-m)));
      std::sort(expect_class.begin(), expect_class.end());
      if (!b.closed || b.members != expect_class) return r.fail(tag + ": witness class not certified at radius 4");
    }
  }
  r.note << icc << " icc, " << not_icc << " not_icc";
}

// 2 ------------------------------------------------------------------------
void wreath_quadrant(CriterionResult& r) {
  auto table_ok = [](const Verdict& v, bool complete) {
    const auto b = clause_value(v, clause::kWreathBaseIcc);
    const auto o = clause_value(v, clause::kWreathOrbitsInfinite);
    const auto f = clause_value(v, clause::kWreathFcFaithful);
    const auto z = complete ? clause_value(v, clause::kWreathBaseCenterless) : std::optional<bool>(true);
    if (!b || !o || !f || !z) return false;
    const bool icc = (*b || *o) && *f && *z;
    return (v.outcome == Outcome::Icc) == icc;
  };
  const Verdict lamp = dispatch_decide(sample("lamplighter"));
  if (lamp.outcome != Outcome::Icc || !table_ok(lamp, false)) return r.fail("lamplighter");
  const Verdict comp = dispatch_decide(sample("lamplighter_complete"));
  if (comp.outcome != Outcome::NotIcc || !comp.witness || comp.witness->kind != WitnessKind::Central ||
      comp.witness->element.rfind("const(", 0) != 0 || !table_ok(comp, true))
    return r.fail("complete lamplighter");
  int cases = 2;
  for (std::size_t n : {2, 3, 4}) {
    for (bool complete : {false, true}) {
      const WreathDesc w{complete, finite(FiniteGroup::cyclic(n)), free_abelian(1),
                         OmegaDesc{OmegaCosets{n, {}}}};
      const Verdict v = dispatch_decide(GroupDesc(w));
      ++cases;
      if (v.outcome != Outcome::NotIcc || !table_ok(v, complete))
        return r.fail("Z/" + std::to_string(n) + (complete ? " complete" : " restricted"));
      if (clause_value(v, clause::kWreathOrbitsInfinite) != false ||
          clause_value(v, clause::kWreathFcFaithful) != false)
        return r.fail("Z/" + std::to_string(n) + ": unexpected clause values");
    }
  }
  r.note << cases << " wreath products";
}

// 3 ------------------------------------------------------------------------
void twisted_kernels(CriterionResult& r) {
  const FcLatticeResult fc = fc_lattice({twist_phi(), twist_psi()}, 2);
  if (!fc.resolved || !fc.lattice.is_zero()) return r.fail("fc_lattice is not the resolved zero lattice");
  for (long long n = 0; n <= 10; ++n) {
    const H1Verdict h = h1_class_is_zero(make_cocycle({twist_phi()}, {to_int_vector({0, n})}));
    if (h.zero != (n == 0)) return r.fail("h1 verdict wrong at n = " + std::to_string(n));
  }
  const AnyNormalForm tw = *make_normal_form(LatticeFreeTwistDesc{}).group;
  std::size_t last = 0;
  for (const char* p : {"a1", "a2", "k0", "q0", "a1*q0", "k0^-1*q0", "a1*q0^2"}) {
    const BallReport b = ball_report(tw, p, 6);
    if (b.closed || !strictly_increasing(b.counts)) return r.fail(std::string("probe ") + p + " stops growing");
    last = std::max(last, b.counts.back());
  }
  r.note << "7 probes growing, largest ball " << last;
}

// 4 ------------------------------------------------------------------------
void products(CriterionResult& r) {
  const GroupDesc z2 = finite(FiniteGroup::cyclic(2)), z3 = finite(FiniteGroup::cyclic(3));
  if (decide_icc_free_product({z2, z2}).outcome != Outcome::NotIcc) return r.fail("Z/2*Z/2");
  if (decide_icc_free_product({z2, z3}).outcome != Outcome::Icc) return r.fail("Z/2*Z/3");
  if (decide_icc_free_product({free_abelian(1), free_abelian(1)}).outcome != Outcome::Icc) return r.fail("Z*Z");
  if (decide_icc_free_product({z2, z2, z2}).outcome != Outcome::Icc) return r.fail("Z/2*Z/2*Z/2");

  const GroupDesc am = sample("amalgam_z6_v4");
  const AmalgamDesc& a = *am.as<AmalgamDesc>();
  const Verdict va = dispatch_decide(am);
  const Subgroup ca = cbar_fixpoint(a.a, &a.b, a.c, a.c_prime, a.phi);
  if (va.outcome != Outcome::NotIcc || ca.size() != 2 ||
      clause_value(va, clause::kAmalgamCoreTrivial) != false)
    return r.fail("Z/6 *_{Z/2} V4");
  const BallReport wa = ball_report(am, va.witness->element, 4);
  if (!wa.closed || wa.members.size() != 1) return r.fail("amalgam witness not central");

  const GroupDesc hn = sample("hnn_s3");
  const HnnDesc& h = *hn.as<HnnDesc>();
  const Verdict vh = dispatch_decide(hn);
  if (vh.outcome != Outcome::Icc || cbar_fixpoint(h.base, nullptr, h.c, h.c_prime, h.phi).size() != 1 ||
      clause_value(vh, clause::kHnnCoreTrivial) != true)
    return r.fail("HNN over S3");
  r.note << "C~ sizes 2 and 1";
}

// 5 ------------------------------------------------------------------------
void dihedral(CriterionResult& r) {
  for (const char* name : {"free_product_z2_z2", "amalgam_dihedral", "dihedral_semidirect"}) {
    const GroupDesc g = sample(name);
    const Verdict v = dispatch_decide(g);
    if (v.outcome != Outcome::NotIcc || !v.witness) return r.fail(std::string(name) + " verdict");
    const BallReport b = ball_report(g, v.witness->element, 4);
    if (!b.closed || b.members.size() != 2) return r.fail(std::string(name) + " class size");
    if (!cross_check(g, v, 8).consistent) return r.fail(std::string(name) + " cross-check");
  }
  r.note << "3 presentations, class size 2";
}

// 6 ------------------------------------------------------------------------
void finite_groups(CriterionResult& r) {
  std::vector<FiniteGroup> groups = {FiniteGroup::quaternion(), FiniteGroup::alternating(3),
                                     FiniteGroup::alternating(4)};
  for (std::size_t n = 1; n <= 48; ++n) groups.push_back(FiniteGroup::cyclic(n));
  for (std::size_t n = 2; n <= 24; ++n) groups.push_back(FiniteGroup::dihedral(n));
  for (std::size_t k = 1; k <= 4; ++k) groups.push_back(FiniteGroup::symmetric(k));
  std::size_t elements = 0;
  for (const FiniteGroup& g : groups) {
    const FiniteNF nf(g);
    for (const auto& cls : fin_conjugacy_classes(g)) {
      std::vector<std::string> expect;
      for (std::size_t x : cls) expect.push_back(nf.format(x));
      std::sort(expect.begin(), expect.end());
      for (std::size_t x : cls) {
        ++elements;
        const auto c = certify_finite_class(nf, x, 48);
        if (!c || c->members != expect) return r.fail("class mismatch in a group of order " + std::to_string(g.order()));
      }
    }
    if (dispatch_decide(finite(g)).outcome != Outcome::NotIcc) return r.fail("finite group decided icc");
  }
  r.note << groups.size() << " groups, " << elements << " elements";
}

// 7 ------------------------------------------------------------------------
void linear_algebra(CriterionResult& r) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  auto random_matrix = [&](std::size_t rows, std::size_t cols, int bound) {
    std::uniform_int_distribution<int> e(-bound, bound);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = e(rng);
    return m;
  };
  for (int t = 0; t < 500; ++t) {
    const IntMatrix m = random_matrix(dim(rng), dim(rng), 9);
    const SmithDecomposition s = smith_normal_form(m);
    if (!(s.U * m * s.V == s.D) || !s.U.is_unimodular() || !s.V.is_unimodular()) return r.fail("U M V != D");
    const std::size_t k = std::min(m.rows(), m.cols());
    for (std::size_t i = 0; i < s.D.rows(); ++i)
      for (std::size_t j = 0; j < s.D.cols(); ++j)
        if (i != j && s.D(i, j) != 0) return r.fail("D not diagonal");
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const BigInt a = s.D(i, i), b = s.D(i + 1, i + 1);
      if (a < 0 || b < 0 || (a == 0 ? b != 0 : b % a != 0)) return r.fail("divisibility chain broken");
    }
  }
  int none = 0;
  for (int t = 0; t < 120; ++t) {
    const IntMatrix a = random_matrix(3, 3, 3);
    const IntVector b = random_matrix(3, 1, 5).column(0);
    if (solve_linear_z(a, b).x) continue;
    ++none;
    for (int x0 = -10; x0 <= 10; ++x0)
      for (int x1 = -10; x1 <= 10; ++x1)
        for (int x2 = -10; x2 <= 10; ++x2)
          if (a.apply(to_int_vector({x0, x1, x2})) == b) return r.fail("'none' answer has a solution");
  }
  const std::vector<std::pair<std::vector<IntMatrix>, bool>> fin = {
      {{IntMatrix::identity(2)}, true},        {{M({{-1, 0}, {0, -1}})}, true},
      {{M({{0, -1}, {1, 0}})}, true},          {{twist_phi()}, false},
      {{twist_phi(), twist_psi()}, false},     {{M({{2, 1}, {1, 1}})}, false}};
  for (const auto& [gens, expect] : fin)
    if (matrix_group_is_finite(gens, 2).finite != expect) return r.fail("matrix_group_is_finite misclassifies");
  r.note << "500 Smith, " << none << " unsolvable systems brute-forced, 6 finiteness cases";
}

// 8 ------------------------------------------------------------------------
void finite_extensions(CriterionResult& r) {
  std::vector<std::pair<FiniteExtDesc, bool>> corpus;  // (descriptor, is K x Z/p)
  auto lattice = [&](std::size_t n, FiniteGroup q, std::vector<IntMatrix> act) {
    FiniteExtDesc e;
    e.kernel = free_abelian(n);
    e.quotient = std::move(q);
    e.lattice_action = std::move(act);
    corpus.push_back({e, false});
  };
  auto fin = [&](FiniteGroup k, FiniteGroup q, std::vector<Perm> act, bool product = false) {
    FiniteExtDesc e;
    e.kernel = finite(std::move(k));
    e.quotient = std::move(q);
    e.finite_action = std::move(act);
    corpus.push_back({e, product});
  };
  auto declared = [&](std::optional<bool> icc, std::size_t p, std::vector<bool> inner) {
    FiniteExtDesc e;
    DeclaredDesc k;
    k.name = "K";
    k.icc = icc;
    e.kernel = GroupDesc(k);
    e.quotient = FiniteGroup::cyclic(p);
    const bool product = std::all_of(inner.begin(), inner.end(), [](bool b) { return b; });
    e.declared_inner = std::move(inner);
    corpus.push_back({e, product && icc == true});
  };
  const FiniteGroup z2 = FiniteGroup::cyclic(2), z3 = FiniteGroup::cyclic(3);
  lattice(1, z2, {M({{-1}})});
  lattice(1, z2, {M({{1}})});
  lattice(2, z2, {M({{0, 1}, {1, 0}})});
  lattice(2, FiniteGroup::cyclic(4), {M({{0, -1}, {1, 0}})});
  lattice(2, z3, {M({{0, -1}, {1, -1}})});
  lattice(2, FiniteGroup::cyclic(6), {M({{1, -1}, {1, 0}})});
  lattice(2, z2, {M({{-1, 0}, {0, -1}})});
  lattice(3, z3, {M({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}})});
  lattice(2, FiniteGroup::direct_product(z2, z2), {M({{-1, 0}, {0, 1}}), M({{1, 0}, {0, -1}})});
  fin(z3, z2, {Perm{0, 2, 1}});
  fin(FiniteGroup::cyclic(5), FiniteGroup::cyclic(4), {Perm{0, 2, 4, 1, 3}});
  fin(FiniteGroup::symmetric(3), z2, {Perm{0, 1, 2, 3, 4, 5}}, true);
  fin(FiniteGroup::direct_product(z2, z2), z3, {Perm{0, 3, 1, 2}});
  fin(FiniteGroup::cyclic(7), z3, {Perm{0, 2, 4, 6, 1, 3, 5}});
  declared(true, 2, {true, true});
  declared(true, 3, {true, true, true});
  declared(true, 7, std::vector<bool>(7, true));
  declared(true, 4, {true, false, true, false});
  declared(true, 3, {true, false, false});
  declared(std::nullopt, 2, {true, false});

  std::size_t products = 0, icc = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& [e, product] = corpus[i];
    const Verdict a = decide_icc_finite_extension(e);
    const Verdict b = decide_icc_finite_index_torsion(e);
    if (a.outcome != b.outcome) return r.fail("descriptor " + std::to_string(i) + ": criteria disagree");
    if (e.quotient.order() > 8) return r.fail("quotient too large");
    if (product) {
      ++products;
      if (a.outcome != Outcome::NotIcc) return r.fail("K x Z/p descriptor " + std::to_string(i) + " not not_icc");
    }
    if (a.outcome == Outcome::Icc) ++icc;
  }
  if (corpus.size() != 20) return r.fail("corpus size " + std::to_string(corpus.size()));
  r.note << corpus.size() << " descriptors agree, " << products << " products not_icc, " << icc << " icc";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(CriterionResult&)>>> criteria = {
      {"Baumslag-Solitar grid", bs_grid},
      {"wreath quadrant", wreath_quadrant},
      {"twisted lattice-by-free kernels", twisted_kernels},
      {"free products and amalgams", products},
      {"infinite dihedral three ways", dihedral},
      {"finite-group oracle equivalence", finite_groups},
      {"linear-algebra properties", linear_algebra},
      {"finite-extension criteria agree", finite_extensions},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    CriterionResult r;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(r);
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (r.ok ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << " (" << r.note.str()
         << "; " << secs << " s)";
    std::cout << line.str() << "\n";
    if (!r.ok) ++failed;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
  return failed ? 1 : 0;
}
