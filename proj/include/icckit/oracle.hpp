#pragma once

// Brute-force conjugacy evidence. Each supported family gets a normal-form
// implementation (canonical element strings, multiplication, inversion);
// balls of conjugates are enumerated by radius, finite classes are
// certified by closure under conjugation by every generator and inverse.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "icckit/descriptor.hpp"
#include "icckit/extensions.hpp"
#include "icckit/families.hpp"
#include "icckit/finite_group.hpp"
#include "icckit/words.hpp"
#include "icckit/zlinalg.hpp"

namespace icckit {

template <class G>
concept NormalFormGroup = requires(const G& g, const typename G::Element& x, std::size_t i, int e) {
  { g.alphabet() } -> std::convertible_to<std::vector<std::string>>;
  { g.identity() } -> std::same_as<typename G::Element>;
  { g.letter(i, e) } -> std::same_as<typename G::Element>;
  { g.multiply(x, x) } -> std::same_as<typename G::Element>;
  { g.invert(x) } -> std::same_as<typename G::Element>;
  { g.format(x) } -> std::same_as<std::string>;  // canonical and injective
};

template <NormalFormGroup G>
typename G::Element normalize(const G& g, const Word& w) {
  typename G::Element x = g.identity();
  const std::size_t n = g.alphabet().size();
  for (const Letter& l : w.letters) {
    if (l.generator >= n) throw Error("oracle: letter outside the alphabet");
    x = g.multiply(x, g.letter(l.generator, l.exponent));
  }
  return x;
}

template <NormalFormGroup G>
typename G::Element parse_element(const G& g, const std::string& text) {
  return normalize(g, parse_word(text, g.alphabet()));
}

template <NormalFormGroup G>
typename G::Element conjugate(const G& g, const typename G::Element& w,
                              const typename G::Element& x) {
  return g.multiply(g.multiply(w, x), g.invert(w));
}

// ---------------------------------------------------------------------------
// Normal forms

namespace detail {

/// Shortest-word names of every element of a finite group, in one BFS.
inline std::vector<Word> all_words(const FiniteGroup& g) {
  std::vector<std::optional<Word>> words(g.order());
  words[g.identity()] = Word{};
  std::vector<std::size_t> queue{g.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t s = 0; s < g.generators().size(); ++s) {
      const std::size_t p = g.mul(queue[i], g.generators()[s]);
      if (!words[p]) {
        Word w = *words[queue[i]];
        w.push(s, 1);
        words[p] = w;
        queue.push_back(p);
      }
    }
  std::vector<Word> out;
  for (auto& w : words) {
    if (!w) throw Error("oracle: finite group not generated by its generators");
    out.push_back(*w);
  }
  return out;
}

inline Word offset_word(const Word& w, std::size_t offset) {
  Word out = w;
  for (Letter& l : out.letters) l.generator += offset;
  return out;
}

inline long long floor_mod(long long a, long long m) {
  m = m < 0 ? -m : m;
  return ((a % m) + m) % m;
}

}  // namespace detail

class FiniteNF {
 public:
  using Element = std::size_t;
  explicit FiniteNF(FiniteGroup g, std::vector<std::string> alphabet = {})
      : g_(std::move(g)), alphabet_(alphabet.empty() ? finite_alphabet(g_) : std::move(alphabet)) {
    for (const Word& w : detail::all_words(g_)) names_.push_back(format_word(w, alphabet_));
  }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  Element identity() const { return g_.identity(); }
  Element letter(std::size_t i, int e) const {
    const std::size_t s = g_.generators().at(i);
    return e > 0 ? s : g_.inv(s);
  }
  Element multiply(Element a, Element b) const { return g_.mul(a, b); }
  Element invert(Element a) const { return g_.inv(a); }
  std::string format(Element a) const { return names_[a]; }
  const FiniteGroup& group() const { return g_; }

 private:
  FiniteGroup g_;
  std::vector<std::string> alphabet_;
  std::vector<std::string> names_;
};

class FreeAbelianNF {
 public:
  using Element = std::vector<long long>;
  explicit FreeAbelianNF(std::size_t rank) : rank_(rank), alphabet_(default_names("a", rank)) {}
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  Element identity() const { return Element(rank_, 0); }
  Element letter(std::size_t i, int e) const {
    Element x(rank_, 0);
    x.at(i) = e;
    return x;
  }
  Element multiply(const Element& a, const Element& b) const {
    Element x = a;
    for (std::size_t i = 0; i < rank_; ++i) x[i] += b[i];
    return x;
  }
  Element invert(const Element& a) const {
    Element x = a;
    for (long long& v : x) v = -v;
    return x;
  }
  std::string format(const Element& a) const {
    Word w;
    for (std::size_t i = 0; i < rank_; ++i) w.append(power_word(i, a[i]));
    return format_word(w, alphabet_);
  }

 private:
  std::size_t rank_;
  std::vector<std::string> alphabet_;
};

class FreeNF {
 public:
  using Element = Word;
  explicit FreeNF(std::size_t rank, std::vector<std::string> alphabet = {})
      : alphabet_(alphabet.empty() ? default_names("x", rank) : std::move(alphabet)) {}
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  Element identity() const { return {}; }
  Element letter(std::size_t i, int e) const {
    Word w;
    w.push(i, e);
    return w;
  }
  Element multiply(const Element& a, const Element& b) const {
    Word w = a;
    w.append(b);
    return free_reduce(w);
  }
  Element invert(const Element& a) const { return a.inverse(); }
  std::string format(const Element& a) const { return format_word(a, alphabet_); }

 private:
  std::vector<std::string> alphabet_;
};

/// Z^n x| Q for Q free abelian, finite or free; elements (v, q) with
/// (v, q)(v', q') = (v + A_q v', q q').
class LatticeSemidirectNF {
 public:
  struct Element {
    IntVector v;
    std::vector<long long> q;  // exponents, {finite index}, or signed free letters
  };

  LatticeSemidirectNF(std::size_t n, const GroupDesc& quotient, std::vector<IntMatrix> action,
                      std::vector<std::string> alphabet)
      : n_(n), action_(std::move(action)), alphabet_(std::move(alphabet)) {
    for (const IntMatrix& a : action_) inverse_.push_back(unimodular_inverse(a));
    if (auto a = quotient.as<FreeAbelianDesc>()) {
      kind_ = Kind::Abelian;
      k_ = a->rank;
    } else if (auto f = quotient.as<FreeDesc>()) {
      kind_ = Kind::Free;
      k_ = f->rank;
    } else if (auto f = quotient.as<FiniteDesc>()) {
      kind_ = Kind::Finite;
      k_ = f->group.generators().size();
      finite_.emplace(f->group);
      images_ = extend_matrix_action(f->group, action_, n_);
      words_ = detail::all_words(f->group);
    } else {
      throw Error("oracle: unsupported semidirect quotient");
    }
    if (alphabet_.size() != n_ + k_) throw Error("oracle: semidirect alphabet size mismatch");
  }

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  Element identity() const { return {IntVector(n_), quotient_identity()}; }

  Element letter(std::size_t i, int e) const {
    Element x = identity();
    if (i < n_) {
      x.v[i] = e;
      return x;
    }
    const std::size_t j = i - n_;
    switch (kind_) {
      case Kind::Abelian: x.q[j] = e; break;
      case Kind::Finite: {
        const std::size_t s = finite_->generators()[j];
        x.q[0] = static_cast<long long>(e > 0 ? s : finite_->inv(s));
        break;
      }
      case Kind::Free: x.q = {static_cast<long long>(j + 1) * e}; break;
    }
    return x;
  }

  Element multiply(const Element& a, const Element& b) const {
    Element x{a.v, quotient_mul(a.q, b.q)};
    const IntVector t = matrix(a.q).apply(b.v);
    for (std::size_t i = 0; i < n_; ++i) x.v[i] += t[i];
    return x;
  }

  Element invert(const Element& a) const {
    Element x{IntVector(n_), quotient_inv(a.q)};
    const IntVector t = matrix(x.q).apply(a.v);
    for (std::size_t i = 0; i < n_; ++i) x.v[i] = -t[i];
    return x;
  }

  std::string format(const Element& a) const {
    Word w;
    for (std::size_t i = 0; i < n_; ++i) w.append(power_word(i, a.v[i].convert_to<long long>()));
    w.append(detail::offset_word(quotient_word(a.q), n_));
    std::string s = format_word(w, alphabet_);
    // Entries beyond long long would be ambiguous; keep exactness.
    for (const BigInt& c : a.v)
      if (boost::multiprecision::abs(c) > BigInt(1'000'000)) return s + "#" + vector_to_string(a.v);
    return s;
  }

 private:
  enum class Kind { Abelian, Finite, Free };

  std::vector<long long> quotient_identity() const {
    switch (kind_) {
      case Kind::Abelian: return std::vector<long long>(k_, 0);
      case Kind::Finite: return {static_cast<long long>(finite_->identity())};
      case Kind::Free: return {};
    }
    return {};
  }

  std::vector<long long> quotient_mul(const std::vector<long long>& a,
                                      const std::vector<long long>& b) const {
    switch (kind_) {
      case Kind::Abelian: {
        std::vector<long long> x = a;
        for (std::size_t i = 0; i < k_; ++i) x[i] += b[i];
        return x;
      }
      case Kind::Finite:
        return {static_cast<long long>(
            finite_->mul(static_cast<std::size_t>(a[0]), static_cast<std::size_t>(b[0])))};
      case Kind::Free: {
        std::vector<long long> x = a;
        for (long long l : b) {
          if (!x.empty() && x.back() == -l) x.pop_back();
          else x.push_back(l);
        }
        return x;
      }
    }
    return {};
  }

  std::vector<long long> quotient_inv(const std::vector<long long>& a) const {
    switch (kind_) {
      case Kind::Abelian: {
        std::vector<long long> x = a;
        for (long long& v : x) v = -v;
        return x;
      }
      case Kind::Finite:
        return {static_cast<long long>(finite_->inv(static_cast<std::size_t>(a[0])))};
      case Kind::Free: {
        std::vector<long long> x(a.rbegin(), a.rend());
        for (long long& v : x) v = -v;
        return x;
      }
    }
    return {};
  }

  IntMatrix power(std::size_t j, long long e) const {
    return e >= 0 ? action_[j].pow(static_cast<std::uint64_t>(e))
                  : inverse_[j].pow(static_cast<std::uint64_t>(-e));
  }

  IntMatrix matrix(const std::vector<long long>& q) const {
    switch (kind_) {
      case Kind::Abelian: {
        IntMatrix m = IntMatrix::identity(n_);
        for (std::size_t j = 0; j < k_; ++j)
          if (q[j] != 0) m = m * power(j, q[j]);
        return m;
      }
      case Kind::Finite: return images_[static_cast<std::size_t>(q[0])];
      case Kind::Free: {
        IntMatrix m = IntMatrix::identity(n_);
        for (long long l : q) {
          const std::size_t j = static_cast<std::size_t>((l < 0 ? -l : l) - 1);
          m = m * (l > 0 ? action_[j] : inverse_[j]);
        }
        return m;
      }
    }
    return IntMatrix::identity(n_);
  }

  Word quotient_word(const std::vector<long long>& q) const {
    Word w;
    switch (kind_) {
      case Kind::Abelian:
        for (std::size_t j = 0; j < k_; ++j) w.append(power_word(j, q[j]));
        break;
      case Kind::Finite: w = words_[static_cast<std::size_t>(q[0])]; break;
      case Kind::Free:
        for (long long l : q) w.push(static_cast<std::size_t>((l < 0 ? -l : l) - 1), l < 0 ? -1 : 1);
        break;
    }
    return w;
  }

  std::size_t n_;
  std::vector<IntMatrix> action_;
  std::vector<IntMatrix> inverse_;
  std::vector<std::string> alphabet_;
  Kind kind_ = Kind::Abelian;
  std::size_t k_ = 0;
  std::optional<FiniteGroup> finite_;
  std::vector<IntMatrix> images_;
  std::vector<Word> words_;
};

/// D wr Z over the regular action or a transitive finite Z-set: finitely
/// supported functions and a shift, (f, s)(f', s') = (f . t^s f', s + s').
class WreathNF {
 public:
  struct Element {
    std::map<long long, std::size_t> f;
    long long s = 0;
  };

  WreathNF(FiniteGroup base, std::optional<Perm> omega, std::vector<std::string> alphabet)
      : d_(std::move(base)), omega_(std::move(omega)), alphabet_(std::move(alphabet)) {
    words_ = detail::all_words(d_);
    if (omega_) {
      const std::size_t n = omega_->size();
      position_.assign(n, -1);
      std::size_t p = 0;
      for (long long j = 0; position_[p] < 0; ++j) {
        position_[p] = j;
        p = (*omega_)[p];
      }
      order_ = 0;
      for (long long x : position_) {
        if (x < 0) throw Error("oracle: wreath Omega must be transitive");
        ++order_;
      }
    }
  }

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  Element identity() const { return {}; }

  Element letter(std::size_t i, int e) const {
    Element x;
    if (i == 0) {
      x.s = e;
    } else {
      const std::size_t g = d_.generators().at(i - 1);
      x.f[0] = e > 0 ? g : d_.inv(g);
    }
    return x;
  }

  Element multiply(const Element& a, const Element& b) const {
    Element x = a;
    for (const auto& [p, d] : b.f) put(x.f, act(a.s, p), d);
    x.s = a.s + b.s;
    return x;
  }

  Element invert(const Element& a) const {
    Element x;
    for (const auto& [p, d] : a.f) x.f[act(-a.s, p)] = d_.inv(d);
    x.s = -a.s;
    return x;
  }

  std::string format(const Element& a) const {
    Word w;
    long long at = 0;  // current shift applied by the letters so far
    for (const auto& [p, d] : a.f) {
      const long long j = omega_ ? position_[static_cast<std::size_t>(p)] : p;
      w.append(power_word(0, j - at));
      w.append(detail::offset_word(words_[d], 1));
      at = j;
    }
    w.append(power_word(0, a.s - at));
    return format_word(free_reduce(w), alphabet_);
  }

 private:
  long long act(long long s, long long p) const {
    if (!omega_) return p + s;
    const long long k = detail::floor_mod(s, order_);
    std::size_t x = static_cast<std::size_t>(p);
    for (long long i = 0; i < k; ++i) x = (*omega_)[x];
    return static_cast<long long>(x);
  }

  void put(std::map<long long, std::size_t>& f, long long p, std::size_t d) const {
    auto it = f.find(p);
    const std::size_t cur = it == f.end() ? d_.identity() : it->second;
    const std::size_t v = d_.mul(cur, d);
    if (v == d_.identity()) {
      if (it != f.end()) f.erase(it);
    } else {
      f[p] = v;
    }
  }

  FiniteGroup d_;
  std::optional<Perm> omega_;
  std::vector<std::string> alphabet_;
  std::vector<Word> words_;
  std::vector<long long> position_;
  long long order_ = 0;
};

/// BS(m, n) = <a, t | t a^m t^-1 = a^n>. Elements a^r1 t^e1 ... a^rp t^ep a^k
/// with 0 <= r < |n| before t, 0 <= r < |m| before t^-1, and no pinch.
class BsNF {
 public:
  struct Element {
    std::vector<std::pair<long long, int>> syl;
    long long tail = 0;
  };

  BsNF(long long m, long long n) : m_(m), n_(n) {
    if (m == 0 || n == 0) throw Error("oracle: BS parameters must be nonzero");
  }
  std::vector<std::string> alphabet() const { return {"a", "t"}; }
  Element identity() const { return {}; }
  Element letter(std::size_t i, int e) const {
    Element x;
    if (i == kBsA) x.tail = e;
    else append_t(x, e);
    return x;
  }
  Element multiply(const Element& a, const Element& b) const {
    Element x = a;
    for (const auto& [r, e] : b.syl) {
      x.tail += r;
      append_t(x, e);
    }
    x.tail += b.tail;
    return x;
  }
  Element invert(const Element& a) const {
    Element x;
    x.tail = -a.tail;
    for (auto it = a.syl.rbegin(); it != a.syl.rend(); ++it) {
      append_t(x, -it->second);
      x.tail -= it->first;
    }
    return x;
  }
  std::string format(const Element& a) const {
    Word w;
    for (const auto& [r, e] : a.syl) {
      w.append(power_word(kBsA, r));
      w.push(kBsT, e);
    }
    w.append(power_word(kBsA, a.tail));
    return format_word(w, alphabet());
  }

 private:
  void append_t(Element& x, int eps) const {
    const long long e = x.tail;
    const long long div = eps > 0 ? n_ : m_;  // split modulus before t / t^-1
    const long long mul = eps > 0 ? m_ : n_;
    if (!x.syl.empty() && x.syl.back().second == -eps && e % div == 0) {
      x.tail = x.syl.back().first + e / div * mul;
      x.syl.pop_back();
      return;
    }
    const long long r = detail::floor_mod(e, div);
    x.syl.push_back({r, eps});
    x.tail = (e - r) / div * mul;
  }

  long long m_, n_;
};

/// Free product of finite and infinite cyclic factors: alternating syllables.
class FreeProductNF {
 public:
  struct Element {
    std::vector<std::pair<std::size_t, long long>> syl;  // (factor, index or exponent)
  };

  explicit FreeProductNF(const std::vector<GroupDesc>& factors) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      Factor f;
      const std::string stem(1, static_cast<char>('a' + i));
      f.offset = alphabet_.size();
      if (auto g = factors[i].as<FiniteDesc>()) {
        f.finite.emplace(g->group);
        for (const Word& w : detail::all_words(g->group)) f.words.push_back(w);
        f.gens = g->group.generators().size();
      } else if ((factors[i].as<FreeAbelianDesc>() && factors[i].as<FreeAbelianDesc>()->rank == 1) ||
                 (factors[i].as<FreeDesc>() && factors[i].as<FreeDesc>()->rank == 1)) {
        f.gens = 1;
      } else {
        throw Error("oracle: free product factors must be finite or infinite cyclic");
      }
      for (std::string& s : default_names(stem, f.gens)) alphabet_.push_back(std::move(s));
      factors_.push_back(std::move(f));
    }
  }

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  Element identity() const { return {}; }
  Element letter(std::size_t i, int e) const {
    for (std::size_t k = 0; k < factors_.size(); ++k) {
      const Factor& f = factors_[k];
      if (i < f.offset || i >= f.offset + f.gens) continue;
      Element x;
      if (f.finite) {
        const std::size_t s = f.finite->generators()[i - f.offset];
        x.syl.push_back({k, static_cast<long long>(e > 0 ? s : f.finite->inv(s))});
      } else {
        x.syl.push_back({k, e});
      }
      return x;
    }
    throw Error("oracle: letter outside the alphabet");
  }
  Element multiply(const Element& a, const Element& b) const {
    Element x = a;
    for (const auto& [k, v] : b.syl) push(x, k, v);
    return x;
  }
  Element invert(const Element& a) const {
    Element x;
    for (auto it = a.syl.rbegin(); it != a.syl.rend(); ++it) {
      const Factor& f = factors_[it->first];
      x.syl.push_back({it->first, f.finite ? static_cast<long long>(f.finite->inv(
                                                 static_cast<std::size_t>(it->second)))
                                           : -it->second});
    }
    return x;
  }
  std::string format(const Element& a) const {
    Word w;
    for (const auto& [k, v] : a.syl) {
      const Factor& f = factors_[k];
      if (f.finite) w.append(detail::offset_word(f.words[static_cast<std::size_t>(v)], f.offset));
      else w.append(power_word(f.offset, v));
    }
    return format_word(w, alphabet_);
  }

 private:
  struct Factor {
    std::optional<FiniteGroup> finite;
    std::vector<Word> words;
    std::size_t offset = 0;
    std::size_t gens = 0;
  };

  void push(Element& x, std::size_t k, long long v) const {
    const Factor& f = factors_[k];
    if (!x.syl.empty() && x.syl.back().first == k) {
      long long& cur = x.syl.back().second;
      if (f.finite) {
        cur = static_cast<long long>(
            f.finite->mul(static_cast<std::size_t>(cur), static_cast<std::size_t>(v)));
        if (static_cast<std::size_t>(cur) == f.finite->identity()) x.syl.pop_back();
      } else {
        cur += v;
        if (cur == 0) x.syl.pop_back();
      }
      return;
    }
    x.syl.push_back({k, v});
  }

  std::vector<Factor> factors_;
  std::vector<std::string> alphabet_;
};

namespace detail {

/// Left transversal of h in g with the identity representing h itself:
/// rep[x] is the representative of xH and part[x] = rep[x]^-1 x in H.
struct Transversal {
  std::vector<std::size_t> rep;
  std::vector<std::size_t> part;
};

inline Transversal left_transversal(const FiniteGroup& g, const Subgroup& h) {
  Transversal t;
  t.rep.assign(g.order(), g.order());
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (t.rep[x] != g.order()) continue;
    std::size_t r = x;
    if (std::binary_search(h.begin(), h.end(), x)) r = g.identity();
    for (std::size_t y : h) t.rep[g.mul(x, y)] = r;
  }
  t.part.resize(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) t.part[x] = g.mul(g.inv(t.rep[x]), x);
  return t;
}

inline std::vector<std::size_t> full_map(std::size_t order, const Subgroup& c,
                                         const std::vector<std::size_t>& phi) {
  std::vector<std::size_t> m(order, order);
  for (std::size_t i = 0; i < c.size(); ++i) m[c[i]] = phi[i];
  return m;
}

}  // namespace detail

/// A *_C B over finite factors: t1 ... tk c with alternating nontrivial
/// transversal elements and c in C (stored in A's indexing).
class AmalgamNF {
 public:
  struct Element {
    std::vector<std::pair<int, std::size_t>> syl;  // side 0 = A, 1 = B
    std::size_t c = 0;
  };

  AmalgamNF(const FiniteGroup& a, const FiniteGroup& b, const Subgroup& c, const Subgroup& cp,
            const std::vector<std::size_t>& phi)
      : a_(a), b_(b) {
    validate_isomorphism(a, c, b, cp, phi);
    ta_ = detail::left_transversal(a, c);
    tb_ = detail::left_transversal(b, cp);
    phi_ = detail::full_map(a.order(), c, phi);
    phi_inv_.assign(b.order(), b.order());
    for (std::size_t i = 0; i < c.size(); ++i) phi_inv_[phi[i]] = c[i];
    wa_ = detail::all_words(a);
    wb_ = detail::all_words(b);
    alphabet_ = finite_alphabet(a, "a");
    for (std::string& s : finite_alphabet(b, "b")) alphabet_.push_back(std::move(s));
  }

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  Element identity() const { return {{}, a_.identity()}; }
  Element letter(std::size_t i, int e) const {
    Element x = identity();
    const std::size_t na = a_.generators().size();
    if (i < na) {
      const std::size_t s = a_.generators()[i];
      mul_side(x, 0, e > 0 ? s : a_.inv(s));
    } else {
      const std::size_t s = b_.generators().at(i - na);
      mul_side(x, 1, e > 0 ? s : b_.inv(s));
    }
    return x;
  }
  Element multiply(const Element& x, const Element& y) const {
    Element z = x;
    for (const auto& [side, r] : y.syl) mul_side(z, side, r);
    mul_side(z, 0, y.c);
    return z;
  }
  Element invert(const Element& x) const {
    Element z = identity();
    mul_side(z, 0, a_.inv(x.c));
    for (auto it = x.syl.rbegin(); it != x.syl.rend(); ++it)
      mul_side(z, it->first, it->first == 0 ? a_.inv(it->second) : b_.inv(it->second));
    return z;
  }
  std::string format(const Element& x) const {
    Word w;
    const std::size_t na = a_.generators().size();
    for (const auto& [side, r] : x.syl)
      w.append(side == 0 ? wa_[r] : detail::offset_word(wb_[r], na));
    w.append(wa_[x.c]);
    return format_word(w, alphabet_);
  }

 private:
  void mul_side(Element& z, int side, std::size_t g) const {
    const FiniteGroup& f = side == 0 ? a_ : b_;
    const detail::Transversal& t = side == 0 ? ta_ : tb_;
    const std::size_t c_here = side == 0 ? z.c : phi_[z.c];
    std::size_t y;
    if (!z.syl.empty() && z.syl.back().first == side) {
      y = f.mul(f.mul(z.syl.back().second, c_here), g);
      z.syl.pop_back();
    } else {
      y = f.mul(c_here, g);
    }
    const std::size_t r = t.rep[y];
    if (r != f.identity()) z.syl.push_back({side, r});
    z.c = side == 0 ? t.part[y] : phi_inv_[t.part[y]];
  }

  FiniteGroup a_, b_;
  detail::Transversal ta_, tb_;
  std::vector<std::size_t> phi_, phi_inv_;
  std::vector<Word> wa_, wb_;
  std::vector<std::string> alphabet_;
};

/// HNN extension <A, t | t c t^-1 = phi(c)> of a finite A: r1 t^e1 ... rp t^ep a
/// with r a transversal element of C' before t and of C before t^-1.
class HnnNF {
 public:
  struct Element {
    std::vector<std::pair<std::size_t, int>> syl;
    std::size_t tail = 0;
  };

  HnnNF(const FiniteGroup& a, const Subgroup& c, const Subgroup& cp,
        const std::vector<std::size_t>& phi)
      : a_(a), c_(c), cp_(cp) {
    validate_isomorphism(a, c, a, cp, phi);
    tc_ = detail::left_transversal(a, c);
    tcp_ = detail::left_transversal(a, cp);
    phi_ = detail::full_map(a.order(), c, phi);
    phi_inv_.assign(a.order(), a.order());
    for (std::size_t i = 0; i < c.size(); ++i) phi_inv_[phi[i]] = c[i];
    words_ = detail::all_words(a);
    alphabet_ = finite_alphabet(a, "a");
    alphabet_.push_back("t");
  }

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  Element identity() const { return {{}, a_.identity()}; }
  Element letter(std::size_t i, int e) const {
    Element x = identity();
    if (i < a_.generators().size()) {
      const std::size_t s = a_.generators()[i];
      x.tail = e > 0 ? s : a_.inv(s);
    } else {
      append_t(x, e);
    }
    return x;
  }
  Element multiply(const Element& x, const Element& y) const {
    Element z = x;
    for (const auto& [r, e] : y.syl) {
      z.tail = a_.mul(z.tail, r);
      append_t(z, e);
    }
    z.tail = a_.mul(z.tail, y.tail);
    return z;
  }
  Element invert(const Element& x) const {
    Element z = identity();
    z.tail = a_.inv(x.tail);
    for (auto it = x.syl.rbegin(); it != x.syl.rend(); ++it) {
      append_t(z, -it->second);
      z.tail = a_.mul(z.tail, a_.inv(it->first));
    }
    return z;
  }
  std::string format(const Element& x) const {
    Word w;
    const std::size_t t = a_.generators().size();
    for (const auto& [r, e] : x.syl) {
      w.append(words_[r]);
      w.push(t, e);
    }
    w.append(words_[x.tail]);
    return format_word(w, alphabet_);
  }

 private:
  bool in(const Subgroup& h, std::size_t x) const { return std::binary_search(h.begin(), h.end(), x); }

  void append_t(Element& z, int eps) const {
    const std::size_t e = z.tail;
    if (eps > 0) {
      if (!z.syl.empty() && z.syl.back().second == -1 && in(cp_, e)) {
        z.tail = a_.mul(z.syl.back().first, phi_inv_[e]);
        z.syl.pop_back();
        return;
      }
      z.syl.push_back({tcp_.rep[e], 1});
      z.tail = phi_inv_[tcp_.part[e]];
    } else {
      if (!z.syl.empty() && z.syl.back().second == 1 && in(c_, e)) {
        z.tail = a_.mul(z.syl.back().first, phi_[e]);
        z.syl.pop_back();
        return;
      }
      z.syl.push_back({tc_.rep[e], -1});
      z.tail = phi_[tc_.part[e]];
    }
  }

  FiniteGroup a_;
  Subgroup c_, cp_;
  detail::Transversal tc_, tcp_;
  std::vector<std::size_t> phi_, phi_inv_;
  std::vector<Word> words_;
  std::vector<std::string> alphabet_;
};

/// (Z^2 x F(k0,k1)) x| (Z x F(q1,q2)). q0 conjugates by k0; q1 and q2 act on
/// Z^2 by [[1,1],[0,1]] and [[1,0],[1,1]] and send k0 to k0 a2 and k0 a1.
class LatticeFreeTwistNF {
 public:
  struct Element {
    long long v1 = 0, v2 = 0;
    std::vector<int> w;  // +-1 = k0, +-2 = k1
    long long n0 = 0;
    std::vector<int> u;  // +-1 = q1, +-2 = q2
  };

  std::vector<std::string> alphabet() const { return lattice_free_twist_alphabet(); }
  Element identity() const { return {}; }
  Element letter(std::size_t i, int e) const {
    Element x;
    switch (i) {
      case 0: x.v1 = e; break;
      case 1: x.v2 = e; break;
      case 2: x.w = {e}; break;
      case 3: x.w = {2 * e}; break;
      case 4: x.n0 = e; break;
      case 5: x.u = {e}; break;
      case 6: x.u = {2 * e}; break;
      default: throw Error("oracle: letter outside the alphabet");
    }
    return x;
  }
  Element multiply(const Element& a, const Element& b) const {
    Element k = act(a.n0, a.u, b);
    Element x;
    x.v1 = a.v1 + k.v1;
    x.v2 = a.v2 + k.v2;
    x.w = concat(a.w, k.w);
    x.n0 = a.n0 + b.n0;
    x.u = concat(a.u, b.u);
    return x;
  }
  Element invert(const Element& a) const {
    Element k;
    k.v1 = -a.v1;
    k.v2 = -a.v2;
    k.w = inverse(a.w);
    const std::vector<int> ui = inverse(a.u);
    Element x = act(-a.n0, ui, k);
    x.n0 = -a.n0;
    x.u = ui;
    return x;
  }
  std::string format(const Element& a) const {
    Word w;
    w.append(power_word(0, a.v1));
    w.append(power_word(1, a.v2));
    for (int l : a.w) w.push(l == 1 || l == -1 ? 2 : 3, l > 0 ? 1 : -1);
    w.append(power_word(4, a.n0));
    for (int l : a.u) w.push(l == 1 || l == -1 ? 5 : 6, l > 0 ? 1 : -1);
    return format_word(w, alphabet());
  }

 private:
  static std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> x = a;
    for (int l : b) {
      if (!x.empty() && x.back() == -l) x.pop_back();
      else x.push_back(l);
    }
    return x;
  }
  static std::vector<int> inverse(const std::vector<int>& a) {
    std::vector<int> x(a.rbegin(), a.rend());
    for (int& l : x) l = -l;
    return x;
  }
  static long long sigma0(const std::vector<int>& w) {
    long long s = 0;
    for (int l : w)
      if (l == 1 || l == -1) s += l;
    return s;
  }

  /// Kernel part of b acted on by the quotient element (n0, u); the
  /// quotient fields of the result are left empty.
  Element act(long long n0, const std::vector<int>& u, const Element& b) const {
    Element k;
    k.v1 = b.v1;
    k.v2 = b.v2;
    k.w = b.w;
    const long long s = sigma0(k.w);
    for (auto it = u.rbegin(); it != u.rend(); ++it) {
      const long long x = k.v1, y = k.v2;
      switch (*it) {
        case 1: k.v1 = x + y; k.v2 = y + s; break;           // Phi v + s a2
        case -1: k.v1 = x - (y - s); k.v2 = y - s; break;    // Phi^-1 (v - s a2)
        case 2: k.v1 = x + s; k.v2 = x + y; break;           // Psi v + s a1
        case -2: k.v1 = x - s; k.v2 = y - (x - s); break;    // Psi^-1 (v - s a1)
        default: break;
      }
    }
    if (n0 != 0) {
      std::vector<int> pre(static_cast<std::size_t>(n0 < 0 ? -n0 : n0), n0 > 0 ? 1 : -1);
      k.w = concat(concat(pre, k.w), inverse(pre));
    }
    return k;
  }
};

// ---------------------------------------------------------------------------
// Ball enumeration

struct BallReport {
  std::string element;
  std::size_t radius = 0;
  std::vector<std::size_t> counts;  // counts[r] = |{w x w^-1 : |w| <= r}|
  bool closed = false;              // stable under conjugation by every letter
  std::optional<std::size_t> closed_at;
  bool truncated = false;
  std::vector<std::string> members;  // sorted, when closed
};

inline constexpr std::size_t kBallElementCap = 3'000'000;

template <NormalFormGroup G>
BallReport ball_conjugates(const G& g, const typename G::Element& x, std::size_t radius,
                           std::size_t cap = kBallElementCap) {
  using E = typename G::Element;
  const std::size_t n = g.alphabet().size();
  std::vector<std::pair<E, E>> letters;  // (s, s^-1)
  for (std::size_t i = 0; i < n; ++i) {
    letters.push_back({g.letter(i, 1), g.letter(i, -1)});
    letters.push_back({g.letter(i, -1), g.letter(i, 1)});
  }
  BallReport rep;
  rep.element = g.format(x);
  rep.radius = radius;
  std::unordered_set<std::string> seen{rep.element};
  std::vector<E> all{x};
  std::vector<E> frontier{x};
  rep.counts.push_back(1);
  for (std::size_t r = 1; r <= radius + 1; ++r) {
    std::vector<E> next;
    for (const E& y : frontier) {
      for (const auto& [s, si] : letters) {
        E z = g.multiply(g.multiply(s, y), si);
        if (seen.insert(g.format(z)).second) {
          next.push_back(z);
          if (rep.closed_at || seen.size() > cap) break;
        }
      }
      if (seen.size() > cap) break;
    }
    if (next.empty()) {
      rep.closed = true;
      rep.closed_at = r - 1;
      while (rep.counts.size() <= radius) rep.counts.push_back(seen.size());
      break;
    }
    if (r > radius) break;  // one step past the radius only decides closure
    if (seen.size() > cap) {
      rep.truncated = true;
      rep.counts.push_back(seen.size());
      break;
    }
    rep.counts.push_back(seen.size());
    frontier = std::move(next);
  }
  if (rep.closed) {
    rep.members.assign(seen.begin(), seen.end());
    std::sort(rep.members.begin(), rep.members.end());
  }
  return rep;
}

struct CertifiedClass {
  std::vector<std::string> members;  // sorted canonical forms
  std::size_t radius = 0;            // radius at which closure was reached
};

/// The exact conjugacy class of x when the conjugates within some radius
/// <= r_max are closed under conjugation by every generator and inverse.
template <NormalFormGroup G>
std::optional<CertifiedClass> certify_finite_class(const G& g, const typename G::Element& x,
                                                   std::size_t r_max) {
  const BallReport rep = ball_conjugates(g, x, r_max);
  if (!rep.closed) return std::nullopt;
  return CertifiedClass{rep.members, *rep.closed_at};
}

// ---------------------------------------------------------------------------
// Type-erased access by descriptor

using AnyNormalForm = std::variant<FiniteNF, FreeAbelianNF, FreeNF, LatticeSemidirectNF, WreathNF,
                                   BsNF, FreeProductNF, AmalgamNF, HnnNF, LatticeFreeTwistNF>;

struct NormalFormLookup {
  std::optional<AnyNormalForm> group;
  std::string reason;  // why no normal form is available
};

inline NormalFormLookup make_normal_form(const GroupDesc& g) {
  try {
    if (auto f = g.as<FiniteDesc>()) return {FiniteNF(f->group), {}};
    if (auto a = g.as<FreeAbelianDesc>()) return {FreeAbelianNF(a->rank), {}};
    if (auto f = g.as<FreeDesc>()) return {FreeNF(f->rank), {}};
    if (auto s = g.as<SplitExtensionDesc>()) {
      validate_split_extension(*s);
      if (auto a = s->kernel->as<FreeAbelianDesc>())
        return {LatticeSemidirectNF(a->rank, *s->quotient, s->lattice_action, extension_alphabet(*s)), {}};
      auto k = s->kernel->as<FiniteDesc>();
      auto q = s->quotient->as<FiniteDesc>();
      if (k && q)
        return {FiniteNF(FiniteGroup::semidirect_product(k->group, q->group, s->finite_action),
                         extension_alphabet(*s)),
                {}};
      return {std::nullopt, "finite kernel with infinite quotient has no normal form"};
    }
    if (auto w = g.as<WreathDesc>()) {
      const GroupDesc& top = *w->top;
      const bool cyclic = (top.as<FreeAbelianDesc>() && top.as<FreeAbelianDesc>()->rank == 1) ||
                          (top.as<FreeDesc>() && top.as<FreeDesc>()->rank == 1);
      auto base = w->base->as<FiniteDesc>();
      if (!cyclic || !base) return {std::nullopt, "wreath normal form needs a finite base and top Z"};
      const OmegaDesc omega = resolve_omega(top, w->omega);
      std::optional<Perm> perm;
      if (auto fs = std::get_if<OmegaFiniteSet>(&omega.kind)) {
        perm = fs->generator_images.front();
      } else if (w->complete) {
        return {std::nullopt, "complete wreath product over an infinite set has no finite-support normal form"};
      }
      return {WreathNF(base->group, perm, family_alphabet(g)), {}};
    }
    if (auto b = g.as<BaumslagSolitarDesc>()) return {BsNF(b->m, b->n), {}};
    if (auto f = g.as<FreeProductDesc>()) return {FreeProductNF(f->factors), {}};
    if (auto a = g.as<AmalgamDesc>()) return {AmalgamNF(a->a, a->b, a->c, a->c_prime, a->phi), {}};
    if (auto h = g.as<HnnDesc>()) return {HnnNF(h->base, h->c, h->c_prime, h->phi), {}};
    if (auto e = g.as<FiniteExtDesc>()) {
      if (auto a = e->kernel->as<FreeAbelianDesc>(); a && !e->torsion_free_cosets)
        return {LatticeSemidirectNF(a->rank, finite(e->quotient), e->lattice_action, family_alphabet(g)), {}};
      if (auto k = e->kernel->as<FiniteDesc>())
        return {FiniteNF(FiniteGroup::semidirect_product(k->group, e->quotient, e->finite_action),
                         family_alphabet(g)),
                {}};
      return {std::nullopt, "finite extension without a split realization"};
    }
    if (g.as<LatticeFreeTwistDesc>()) return {LatticeFreeTwistNF{}, {}};
  } catch (const Error& e) {
    return {std::nullopt, e.what()};
  }
  return {std::nullopt, "no normal form for family " + family_name(g)};
}

/// Parses `element` in the family alphabet and enumerates its conjugate ball.
inline BallReport ball_report(const AnyNormalForm& nf, const std::string& element, std::size_t radius) {
  return std::visit([&](const auto& g) { return ball_conjugates(g, parse_element(g, element), radius); },
                    nf);
}

inline BallReport ball_report(const GroupDesc& desc, const std::string& element, std::size_t radius) {
  NormalFormLookup nf = make_normal_form(desc);
  if (!nf.group) throw Error("oracle: " + nf.reason);
  return ball_report(*nf.group, element, radius);
}

inline std::vector<std::string> normal_form_alphabet(const AnyNormalForm& nf) {
  return std::visit([](const auto& g) { return std::vector<std::string>(g.alphabet()); }, nf);
}

/// Canonical form of a word, for comparing against known classes.
inline std::string canonical(const AnyNormalForm& nf, const std::string& element) {
  return std::visit([&](const auto& g) { return g.format(parse_element(g, element)); }, nf);
}

/// Default probe set: every generator and every product of two generators.
inline std::vector<std::string> default_probes(const AnyNormalForm& nf) {
  return std::visit(
      [](const auto& g) {
        const std::vector<std::string> alpha(g.alphabet());
        std::vector<std::string> out;
        std::unordered_set<std::string> seen;
        auto add = [&](const auto& x) {
          std::string s = g.format(x);
          if (s != "1" && seen.insert(s).second) out.push_back(s);
        };
        for (std::size_t i = 0; i < alpha.size(); ++i) add(g.letter(i, 1));
        for (std::size_t i = 0; i < alpha.size(); ++i)
          for (std::size_t j = i; j < alpha.size(); ++j) add(g.multiply(g.letter(i, 1), g.letter(j, 1)));
        return out;
      },
      nf);
}

/// Checks a verdict against the oracle. A NotIcc witness that claims oracle
/// certification must close within `budget`; structural witnesses are
/// re-checked when they parse. For Icc, every default probe must still be
/// growing at `budget` (evidence only).
inline CrossCheckRecord cross_check(const GroupDesc& desc, const Verdict& verdict,
                                    std::size_t budget = 8) {
  CrossCheckRecord rec;
  rec.radius = budget;
  if (verdict.outcome == Outcome::Unknown) {
    rec.skipped = true;
    rec.mode = "skipped";
    rec.message = "unknown verdict: nothing to check";
    return rec;
  }
  NormalFormLookup nf = make_normal_form(desc);
  if (verdict.outcome == Outcome::NotIcc) {
    rec.mode = "witness";
    if (!verdict.witness) {
      rec.consistent = false;
      rec.message = "not_icc verdict without a witness";
      return rec;
    }
    const Witness& w = *verdict.witness;
    const bool must_certify = w.kind == WitnessKind::Oracle;
    if (!nf.group) {
      rec.skipped = !must_certify;
      rec.consistent = !must_certify;
      rec.message = must_certify ? "witness requires the oracle but " + nf.reason
                                 : "structural witness (" + to_string(w.kind) + "); " + nf.reason;
      return rec;
    }
    std::optional<BallReport> ball;
    try {
      ball = ball_report(*nf.group, w.element, budget);
    } catch (const Error&) {
      if (must_certify) {
        rec.consistent = false;
        rec.message = "witness '" + w.element + "' does not parse in the family alphabet";
      } else {
        rec.message = "structural witness (" + to_string(w.kind) + ") accepted";
      }
      return rec;
    }
    rec.probes.push_back({ball->element, ball->counts, ball->closed});
    if (!ball->closed) {
      rec.consistent = false;
      rec.message = "witness class not closed within radius " + std::to_string(budget);
      return rec;
    }
    if (w.kind == WitnessKind::Central && ball->members.size() != 1) {
      rec.consistent = false;
      rec.message = "central witness has a class of size " + std::to_string(ball->members.size());
      return rec;
    }
    if (!w.known_class.empty()) {
      std::vector<std::string> expect;
      for (const std::string& s : w.known_class) expect.push_back(canonical(*nf.group, s));
      std::sort(expect.begin(), expect.end());
      if (expect != ball->members) {
        rec.consistent = false;
        rec.message = "certified class differs from the expected class";
        return rec;
      }
    }
    rec.message = "witness class certified, size " + std::to_string(ball->members.size()) +
                  " at radius " + std::to_string(*ball->closed_at);
    return rec;
  }
  rec.mode = "evidence";
  if (!nf.group) {
    rec.skipped = true;
    rec.message = "no normal form: " + nf.reason;
    return rec;
  }
  for (const std::string& p : default_probes(*nf.group)) {
    const BallReport b = ball_report(*nf.group, p, budget);
    rec.probes.push_back({b.element, b.counts, b.closed});
    if (b.closed) {
      rec.consistent = false;
      rec.message = "probe " + p + " has a finite class of size " + std::to_string(b.members.size());
      return rec;
    }
  }
  rec.message = "all " + std::to_string(rec.probes.size()) + " probes still growing at radius " +
                std::to_string(budget) + " (evidence, not proof)";
  return rec;
}

}  // namespace icckit
