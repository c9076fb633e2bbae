#pragma once

// Finite groups as multiplication tables: construction from tables or
// permutation generators, a small catalog, conjugacy classes, centers,
// cores, brute-force automorphism groups and couplings into Out(K).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "icckit/error.hpp"
#include "icckit/words.hpp"

namespace icckit {

using Perm = std::vector<std::size_t>;
/// Sorted element indices of a subset of a finite group.
using Subgroup = std::vector<std::size_t>;

class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(trivial()) {}

  /// Builds from a Cayley table. Checks closure, identity, inverses and
  /// associativity (exhaustive up to order 64, sampled above).
  static FiniteGroup from_table(const std::vector<std::vector<std::size_t>>& table,
                                std::vector<std::size_t> generators = {},
                                std::vector<std::string> labels = {}) {
    const std::size_t n = table.size();
    if (n == 0) throw Error("finite group: empty table");
    FiniteGroup g(n);
    for (std::size_t a = 0; a < n; ++a) {
      if (table[a].size() != n) throw Error("finite group: table is not square");
      for (std::size_t b = 0; b < n; ++b) {
        if (table[a][b] >= n) throw Error("finite group: table entry out of range");
        g.table_[a * n + b] = table[a][b];
      }
    }
    g.finish(std::move(generators), std::move(labels));
    return g;
  }

  /// Closure of permutations of {0..degree-1}; element 0 is the identity.
  /// Product convention: (p * q)(x) = p(q(x)).
  static FiniteGroup from_permutations(const std::vector<Perm>& gens, std::size_t degree,
                                       std::size_t max_order = 100000) {
    Perm id(degree);
    std::iota(id.begin(), id.end(), 0);
    for (const Perm& p : gens) {
      if (p.size() != degree) throw Error("permutation generator has wrong degree");
      std::vector<bool> hit(degree, false);
      for (std::size_t x : p) {
        if (x >= degree || hit[x]) throw Error("permutation generator is not a bijection");
        hit[x] = true;
      }
    }
    std::vector<Perm> elems{id};
    std::map<Perm, std::size_t> index{{id, 0}};
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (const Perm& s : gens) {
        Perm p = compose(elems[i], s);
        if (index.emplace(p, elems.size()).second) {
          elems.push_back(std::move(p));
          if (elems.size() > max_order) throw Error("permutation group too large");
        }
      }
    }
    const std::size_t n = elems.size();
    FiniteGroup g(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) g.table_[a * n + b] = index.at(compose(elems[a], elems[b]));
    std::vector<std::size_t> gen_idx;
    for (const Perm& s : gens) gen_idx.push_back(index.at(s));
    std::vector<std::string> labels;
    for (const Perm& p : elems) labels.push_back(cycle_notation(p));
    g.finish(std::move(gen_idx), std::move(labels));
    g.perms_ = std::move(elems);
    return g;
  }

  static FiniteGroup trivial() {
    FiniteGroup g(1);
    g.table_[0] = 0;
    g.finish({}, {"1"});
    return g;
  }

  static FiniteGroup cyclic(std::size_t n) {
    if (n == 0) throw Error("cyclic group of order 0");
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < n; ++a) labels.push_back(std::to_string(a));
    return from_table(t, n > 1 ? std::vector<std::size_t>{1} : std::vector<std::size_t>{},
                      labels);
  }

  static FiniteGroup symmetric(std::size_t k) {
    if (k <= 1) return trivial();
    Perm swap01(k), cycle(k);
    std::iota(swap01.begin(), swap01.end(), 0);
    std::swap(swap01[0], swap01[1]);
    for (std::size_t i = 0; i < k; ++i) cycle[i] = (i + 1) % k;
    if (k == 2) return from_permutations({swap01}, k);
    return from_permutations({swap01, cycle}, k);
  }

  static FiniteGroup alternating(std::size_t k) {
    if (k <= 2) return trivial();
    std::vector<Perm> gens;
    for (std::size_t i = 2; i < k; ++i) {
      Perm p(k);
      std::iota(p.begin(), p.end(), 0);
      p[0] = 1;
      p[1] = i;
      p[i] = 0;
      gens.push_back(p);
    }
    return from_permutations(gens, k);
  }

  /// Dihedral group of order 2n acting on an n-gon.
  static FiniteGroup dihedral(std::size_t n) {
    if (n < 3) {
      if (n == 1) return cyclic(2);
      return direct_product(cyclic(2), cyclic(2));
    }
    Perm rot(n), refl(n);
    for (std::size_t i = 0; i < n; ++i) {
      rot[i] = (i + 1) % n;
      refl[i] = (n - i) % n;
    }
    return from_permutations({rot, refl}, n);
  }

  /// Quaternion group Q8 via its regular representation.
  static FiniteGroup quaternion() {
    // Elements: 0=1, 1=-1, 2=i, 3=-i, 4=j, 5=-j, 6=k, 7=-k.
    auto unit = [](std::size_t e) { return e / 2; };  // 0:1 1:i 2:j 3:k
    auto sign = [](std::size_t e) { return e % 2; };
    // Unit products: (u,v) -> (unit, sign)
    const std::size_t prod_unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    const std::size_t prod_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<std::vector<std::size_t>> t(8, std::vector<std::size_t>(8));
    for (std::size_t a = 0; a < 8; ++a)
      for (std::size_t b = 0; b < 8; ++b) {
        const std::size_t u = prod_unit[unit(a)][unit(b)];
        const std::size_t s = (sign(a) + sign(b) + prod_sign[unit(a)][unit(b)]) % 2;
        t[a][b] = 2 * u + s;
      }
    return from_table(t, {2, 4}, {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
  }

  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const std::size_t na = a.order(), nb = b.order();
    std::vector<std::vector<std::size_t>> t(na * nb, std::vector<std::size_t>(na * nb));
    for (std::size_t x = 0; x < na * nb; ++x)
      for (std::size_t y = 0; y < na * nb; ++y)
        t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    std::vector<std::size_t> gens;
    for (std::size_t g : a.generators()) gens.push_back(g * nb + b.identity());
    for (std::size_t g : b.generators()) gens.push_back(a.identity() * nb + g);
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < na * nb; ++x)
      labels.push_back("(" + a.label(x / nb) + "," + b.label(x % nb) + ")");
    return from_table(t, gens, labels);
  }

  /// Semidirect product K x| Q with Q acting through automorphisms of K given
  /// per generator of Q (theta[i][k] = image of k). Pairs (k, q) are indexed
  /// k * |Q| + q with (k, q)(k', q') = (k theta_q(k'), q q').
  static FiniteGroup semidirect_product(const FiniteGroup& k, const FiniteGroup& q,
                                        const std::vector<Perm>& theta_gens);

  std::size_t order() const { return n_; }
  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * n_ + b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  std::size_t conj(std::size_t g, std::size_t x) const { return mul(mul(g, x), inv(g)); }
  const std::vector<std::size_t>& generators() const { return generators_; }
  const std::string& label(std::size_t a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool is_abelian() const {
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }
  std::vector<std::vector<std::size_t>> table() const {
    std::vector<std::vector<std::size_t>> t(n_, std::vector<std::size_t>(n_));
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) t[a][b] = mul(a, b);
    return t;
  }
  const std::vector<Perm>& permutations() const { return perms_; }

  std::size_t element_order(std::size_t a) const {
    std::size_t k = 1;
    for (std::size_t x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
  }

  std::size_t power(std::size_t a, long long k) const {
    if (k < 0) {
      a = inv(a);
      k = -k;
    }
    std::size_t r = identity_;
    for (long long i = 0; i < k % static_cast<long long>(element_order(a)); ++i) r = mul(r, a);
    return r;
  }

  Subgroup all_elements() const {
    Subgroup s(n_);
    std::iota(s.begin(), s.end(), 0);
    return s;
  }

  /// Subgroup generated by the given elements.
  Subgroup generate(const std::vector<std::size_t>& gens) const {
    std::vector<bool> in(n_, false);
    std::vector<std::size_t> elems{identity_};
    in[identity_] = true;
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t g : gens) {
        const std::size_t p = mul(elems[i], g);
        if (!in[p]) {
          in[p] = true;
          elems.push_back(p);
        }
      }
    std::sort(elems.begin(), elems.end());
    return elems;
  }

  bool is_subgroup(const Subgroup& h) const {
    if (h.empty()) return false;
    std::vector<bool> in(n_, false);
    for (std::size_t x : h) {
      if (x >= n_) return false;
      in[x] = true;
    }
    if (!in[identity_]) return false;
    for (std::size_t a : h)
      for (std::size_t b : h)
        if (!in[mul(a, inv(b))]) return false;
    return true;
  }

  /// Shortest word in the generators (BFS order) for each element.
  Word word_for(std::size_t target) const {
    std::vector<std::optional<std::pair<std::size_t, std::size_t>>> parent(n_);
    std::vector<bool> seen(n_, false);
    std::vector<std::size_t> queue{identity_};
    seen[identity_] = true;
    for (std::size_t i = 0; i < queue.size() && !seen[target]; ++i)
      for (std::size_t g = 0; g < generators_.size(); ++g) {
        const std::size_t p = mul(queue[i], generators_[g]);
        if (!seen[p]) {
          seen[p] = true;
          parent[p] = std::make_pair(queue[i], g);
          queue.push_back(p);
        }
      }
    if (!seen[target]) throw Error("word_for: element not reachable from generators");
    Word w;
    for (std::size_t x = target; parent[x]; x = parent[x]->first) w.push(parent[x]->second, 1);
    std::reverse(w.letters.begin(), w.letters.end());
    return w;
  }

  std::size_t evaluate(const Word& w) const {
    std::size_t x = identity_;
    for (const Letter& l : w.letters) {
      if (l.generator >= generators_.size()) throw Error("evaluate: generator out of range");
      const std::size_t g = generators_[l.generator];
      x = mul(x, l.exponent > 0 ? g : inv(g));
    }
    return x;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.table_ == b.table_ && a.generators_ == b.generators_;
  }

  static Perm compose(const Perm& p, const Perm& q) {
    Perm r(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
  }

  static std::string cycle_notation(const Perm& p) {
    std::string out;
    std::vector<bool> done(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (done[i] || p[i] == i) continue;
      out += '(';
      for (std::size_t j = i; !done[j]; j = p[j]) {
        if (j != i) out += ' ';
        out += std::to_string(j);
        done[j] = true;
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

 private:
  explicit FiniteGroup(std::size_t n) : n_(n), table_(n * n) {}

  void finish(std::vector<std::size_t> generators, std::vector<std::string> labels) {
    const std::size_t n = n_;
    std::optional<std::size_t> id;
    for (std::size_t e = 0; e < n && !id; ++e) {
      bool ok = true;
      for (std::size_t a = 0; a < n && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
      if (ok) id = e;
    }
    if (!id) throw Error("finite group: no identity element");
    identity_ = *id;
    inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b)
        if (mul(a, b) == identity_) {
          inverse_[a] = b;
          break;
        }
      if (inverse_[a] == n || mul(inverse_[a], a) != identity_)
        throw Error("finite group: element " + std::to_string(a) + " has no inverse");
    }
    auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
      return mul(mul(a, b), c) == mul(a, mul(b, c));
    };
    if (n <= 64) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c)
            if (!assoc(a, b, c)) throw Error("finite group: table is not associative");
    } else {
      std::mt19937_64 rng(0x1cc);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (int i = 0; i < 200000; ++i)
        if (!assoc(pick(rng), pick(rng), pick(rng)))
          throw Error("finite group: table is not associative");
    }
    for (std::size_t g : generators)
      if (g >= n) throw Error("finite group: generator out of range");
    if (generators.empty() || generate(generators).size() != n) {
      // Greedy generating set.
      generators.clear();
      Subgroup h{identity_};
      for (std::size_t a = 0; a < n; ++a) {
        if (std::binary_search(h.begin(), h.end(), a)) continue;
        generators.push_back(a);
        h = generate(generators);
      }
    }
    generators_ = std::move(generators);
    if (labels.size() != n) {
      labels.clear();
      for (std::size_t a = 0; a < n; ++a) labels.push_back("e" + std::to_string(a));
    }
    labels_ = std::move(labels);
  }

  std::size_t n_ = 1;
  std::vector<std::size_t> table_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> generators_;
  std::vector<std::string> labels_;
  std::vector<Perm> perms_;
};

/// Extends per-generator automorphisms of K to every element of Q
/// (theta(q1 q2) = theta(q1) o theta(q2)) and checks the homomorphism
/// property on every edge of the Cayley graph of Q.
inline std::vector<Perm> extend_action(const FiniteGroup& k, const FiniteGroup& q,
                                       const std::vector<Perm>& theta_gens) {
  if (theta_gens.size() != q.generators().size())
    throw Error("action: expected one automorphism per quotient generator");
  for (const Perm& p : theta_gens) {
    if (p.size() != k.order()) throw Error("action: automorphism has wrong size");
    std::vector<bool> hit(k.order(), false);
    for (std::size_t x : p) {
      if (x >= k.order() || hit[x]) throw Error("action: map is not a bijection");
      hit[x] = true;
    }
    for (std::size_t a = 0; a < k.order(); ++a)
      for (std::size_t b = 0; b < k.order(); ++b)
        if (p[k.mul(a, b)] != k.mul(p[a], p[b]))
          throw Error("action: map is not an automorphism of the kernel");
  }
  Perm id(k.order());
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::optional<Perm>> theta(q.order());
  theta[q.identity()] = id;
  std::vector<std::size_t> queue{q.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t g = 0; g < q.generators().size(); ++g) {
      const std::size_t p = q.mul(queue[i], q.generators()[g]);
      if (!theta[p]) {
        theta[p] = FiniteGroup::compose(*theta[queue[i]], theta_gens[g]);
        queue.push_back(p);
      }
    }
  std::vector<Perm> out;
  for (std::size_t x = 0; x < q.order(); ++x) {
    for (std::size_t g = 0; g < q.generators().size(); ++g)
      if (*theta[q.mul(x, q.generators()[g])] != FiniteGroup::compose(*theta[x], theta_gens[g]))
        throw Error("action: does not respect the relations of the quotient");
    out.push_back(*theta[x]);
  }
  return out;
}

inline FiniteGroup FiniteGroup::semidirect_product(const FiniteGroup& k, const FiniteGroup& q,
                                                   const std::vector<Perm>& theta_gens) {
  const std::vector<Perm> theta = extend_action(k, q, theta_gens);
  const std::size_t nk = k.order(), nq = q.order();
  std::vector<std::vector<std::size_t>> t(nk * nq, std::vector<std::size_t>(nk * nq));
  for (std::size_t x = 0; x < nk * nq; ++x)
    for (std::size_t y = 0; y < nk * nq; ++y) {
      const std::size_t k1 = x / nq, q1 = x % nq, k2 = y / nq, q2 = y % nq;
      t[x][y] = k.mul(k1, theta[q1][k2]) * nq + q.mul(q1, q2);
    }
  std::vector<std::size_t> gens;
  for (std::size_t g : k.generators()) gens.push_back(g * nq + q.identity());
  for (std::size_t g : q.generators()) gens.push_back(k.identity() * nq + g);
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < nk * nq; ++x)
    labels.push_back("(" + k.label(x / nq) + "," + q.label(x % nq) + ")");
  return from_table(t, gens, labels);
}

/// Conjugacy classes, ordered by smallest member; each class sorted.
inline std::vector<std::vector<std::size_t>> fin_conjugacy_classes(const FiniteGroup& g) {
  std::vector<bool> done(g.order(), false);
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (done[x]) continue;
    std::set<std::size_t> cls;
    for (std::size_t y = 0; y < g.order(); ++y) cls.insert(g.conj(y, x));
    for (std::size_t c : cls) done[c] = true;
    classes.emplace_back(cls.begin(), cls.end());
  }
  return classes;
}

inline Subgroup fin_center(const FiniteGroup& g) {
  Subgroup z;
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool central = true;
    for (std::size_t y = 0; y < g.order() && central; ++y) central = g.mul(x, y) == g.mul(y, x);
    if (central) z.push_back(x);
  }
  return z;
}

inline Subgroup conjugate_subgroup(const FiniteGroup& g, std::size_t by, const Subgroup& h) {
  Subgroup out;
  for (std::size_t x : h) out.push_back(g.conj(by, x));
  std::sort(out.begin(), out.end());
  return out;
}

inline Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  Subgroup out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (std::size_t y = 0; y < g.order(); ++y)
    if (conjugate_subgroup(g, y, h) != h) return false;
  return true;
}

/// Intersection of all conjugates of h: the largest normal subgroup of g in h.
inline Subgroup fin_core(const FiniteGroup& g, const Subgroup& h) {
  if (!g.is_subgroup(h)) throw Error("fin_core: H is not a subgroup");
  Subgroup core = h;
  for (std::size_t y = 0; y < g.order(); ++y) core = intersect(core, conjugate_subgroup(g, y, h));
  return core;
}

struct AutomorphismGroup {
  FiniteGroup group;             // Aut(G) as a table; element i acts by maps[i]
  std::vector<Perm> maps;        // maps[i][x] = image of x
  std::vector<bool> inner;       // maps[i] is conjugation by some element
  std::size_t order() const { return maps.size(); }
};

/// Brute-force Aut(G): images of a generating set are enumerated and
/// extended along the Cayley graph. Composition in the table is a o b.
inline AutomorphismGroup fin_aut_group(const FiniteGroup& g, std::size_t cap = 24) {
  if (g.order() > cap)
    throw Error("fin_aut_group: order " + std::to_string(g.order()) + " exceeds cap " +
                std::to_string(cap));
  const std::size_t n = g.order();
  const auto& gens = g.generators();
  std::vector<std::size_t> gen_orders;
  for (std::size_t s : gens) gen_orders.push_back(g.element_order(s));

  std::set<Perm> found;
  std::vector<std::size_t> choice(gens.size(), 0);
  auto try_choice = [&]() {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (g.element_order(choice[i]) != gen_orders[i]) return;
    Perm map(n, n);
    map[g.identity()] = g.identity();
    std::vector<std::size_t> queue{g.identity()};
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (std::size_t s = 0; s < gens.size(); ++s) {
        const std::size_t p = g.mul(queue[i], gens[s]);
        const std::size_t img = g.mul(map[queue[i]], choice[s]);
        if (map[p] == n) {
          map[p] = img;
          queue.push_back(p);
        } else if (map[p] != img) {
          return;
        }
      }
    std::vector<bool> hit(n, false);
    for (std::size_t x : map) {
      if (hit[x]) return;
      hit[x] = true;
    }
    found.insert(map);
  };
  if (gens.empty()) {
    Perm id(n);
    std::iota(id.begin(), id.end(), 0);
    found.insert(id);
  } else {
    for (;;) {
      try_choice();
      std::size_t i = 0;
      while (i < choice.size() && ++choice[i] == n) choice[i++] = 0;
      if (i == choice.size()) break;
    }
  }
  std::vector<Perm> maps(found.begin(), found.end());
  // Put the identity automorphism first.
  Perm id(n);
  std::iota(id.begin(), id.end(), 0);
  std::iter_swap(maps.begin(), std::find(maps.begin(), maps.end(), id));
  std::map<Perm, std::size_t> index;
  for (std::size_t i = 0; i < maps.size(); ++i) index[maps[i]] = i;
  std::vector<std::vector<std::size_t>> table(maps.size(), std::vector<std::size_t>(maps.size()));
  for (std::size_t a = 0; a < maps.size(); ++a)
    for (std::size_t b = 0; b < maps.size(); ++b)
      table[a][b] = index.at(FiniteGroup::compose(maps[a], maps[b]));
  std::vector<bool> inner(maps.size(), false);
  for (std::size_t y = 0; y < n; ++y) {
    Perm c(n);
    for (std::size_t x = 0; x < n; ++x) c[x] = g.conj(y, x);
    inner[index.at(c)] = true;
  }
  return {FiniteGroup::from_table(table), std::move(maps), std::move(inner)};
}

/// Element k with a(x) = k x k^-1 for all x, when the automorphism is inner.
inline std::optional<std::size_t> inner_conjugator(const FiniteGroup& k, const Perm& a) {
  for (std::size_t y = 0; y < k.order(); ++y) {
    bool ok = true;
    for (std::size_t x = 0; x < k.order() && ok; ++x) ok = a[x] == k.conj(y, x);
    if (ok) return y;
  }
  return std::nullopt;
}

struct CouplingCheck {
  bool injective = true;
  std::optional<std::size_t> kernel_element;  // q != 1 acting by an inner automorphism
  std::optional<std::size_t> conjugator;      // k with theta(q) = conjugation by k
};

/// Whether Q -> Out(K) induced by theta is injective.
inline CouplingCheck coupling_injective_finite(const FiniteGroup& k, const FiniteGroup& q,
                                               const std::vector<Perm>& theta_gens) {
  const std::vector<Perm> theta = extend_action(k, q, theta_gens);
  for (std::size_t x = 0; x < q.order(); ++x) {
    if (x == q.identity()) continue;
    if (auto c = inner_conjugator(k, theta[x])) return {false, x, c};
  }
  return {};
}

}  // namespace icckit
