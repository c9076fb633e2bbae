#pragma once

// Exact integer linear algebra: Smith and Hermite normal forms, integer
// linear systems, orders of matrices in GL(n, Z), finiteness of finitely
// generated subgroups of GL(n, Z), and the periodic / finite-orbit
// sublattices of Z^n under such subgroups.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "icckit/error.hpp"
#include "icckit/words.hpp"

namespace icckit {

using BigInt = boost::multiprecision::cpp_int;
using IntVector = std::vector<BigInt>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error("IntMatrix: ragged initializer");
      for (long long v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw Error("IntMatrix: ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  /// Matrix whose columns are the given vectors (all of length `rows`).
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw Error("IntMatrix: column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector column(std::size_t j) const {
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  IntVector row(std::size_t i) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return x == 0; });
  }

  bool is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntVector apply(const IntVector& v) const {
    if (v.size() != cols_) throw Error("IntMatrix::apply: dimension mismatch");
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      BigInt acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
      out[i] = std::move(acc);
    }
    return out;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("IntMatrix: product dimension mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const BigInt& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    a.require_same_shape(b);
    IntMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    a.require_same_shape(b);
    IntMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  IntMatrix scaled(const BigInt& s) const {
    IntMatrix c = *this;
    for (auto& x : c.data_) x *= s;
    return c;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  IntMatrix pow(std::uint64_t k) const {
    if (!is_square()) throw Error("IntMatrix::pow: matrix must be square");
    IntMatrix result = identity(rows_);
    IntMatrix base = *this;
    while (k > 0) {
      if (k & 1U) result = result * base;
      k >>= 1U;
      if (k > 0) base = base * base;
    }
    return result;
  }

  /// Fraction-free (Bareiss) determinant.
  BigInt determinant() const {
    if (!is_square()) throw Error("determinant: matrix must be square");
    const std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix a = *this;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (a(k, k) == 0) {
        std::size_t p = k + 1;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) return 0;
        for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
  }

  bool is_unimodular() const {
    if (!is_square()) return false;
    const BigInt d = determinant();
    return d == 1 || d == -1;
  }

  /// Residues in {0, 1, 2}, used as a hash key for reduction mod 3.
  std::string mod3_key() const {
    std::string key(data_.size(), '0');
    for (std::size_t i = 0; i < data_.size(); ++i) {
      BigInt r = data_[i] % 3;
      if (r < 0) r += 3;
      key[i] = static_cast<char>('0' + static_cast<int>(r));
    }
    return key;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) os << ',';
      os << '[';
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) os << ',';
        os << (*this)(i, j);
      }
      os << ']';
    }
    os << ']';
    return os.str();
  }

  // Elementary operations (used by the normal form algorithms).
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const BigInt& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += f * (*this)(src, j);
  }
  /// col[dst] += f * col[src]
  void add_col(std::size_t dst, std::size_t src, const BigInt& f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += f * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }

 private:
  void require_same_shape(const IntMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw Error("IntMatrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

inline IntVector to_int_vector(const std::vector<long long>& v) {
  return IntVector(v.begin(), v.end());
}

inline bool is_zero_vector(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}

/// U * M * V = D with U, V unimodular and D diagonal with d1 | d2 | ... and
/// trailing zeros.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::size_t rank() const {
    std::size_t r = 0;
    while (r < std::min(D.rows(), D.cols()) && D(r, r) != 0) ++r;
    return r;
  }
};

inline SmithDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithDecomposition s{IntMatrix::identity(rows), m, IntMatrix::identity(cols)};
  IntMatrix& d = s.D;
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (d(i, j) != 0 && (!best || abs(d(i, j)) < abs(d(best->first, best->second))))
            best = std::make_pair(i, j);
      if (!best) return s;  // trailing block is zero
      d.swap_rows(t, best->first);
      s.U.swap_rows(t, best->first);
      d.swap_cols(t, best->second);
      s.V.swap_cols(t, best->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        const BigInt q = d(i, t) / d(t, t);
        d.add_row(i, t, -q);
        s.U.add_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        const BigInt q = d(t, j) / d(t, t);
        d.add_col(j, t, -q);
        s.V.add_col(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the remaining block by the pivot.
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row) {
        d.add_row(t, *bad_row, 1);
        s.U.add_row(t, *bad_row, 1);
        continue;
      }
      break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.U.negate_row(t);
    }
  }
  return s;
}

/// Row Hermite normal form of the row lattice of `m`; zero rows dropped.
/// Pivots are positive and entries above a pivot are reduced into [0, pivot).
inline IntMatrix row_hermite_form(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t p = 0;
  for (std::size_t c = 0; c < cols && p < rows; ++c) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t r = p; r < rows; ++r)
        if (a(r, c) != 0 && (!best || abs(a(r, c)) < abs(a(*best, c)))) best = r;
      if (!best) break;
      a.swap_rows(p, *best);
      bool done = true;
      for (std::size_t r = p + 1; r < rows; ++r) {
        if (a(r, c) == 0) continue;
        a.add_row(r, p, -(a(r, c) / a(p, c)));
        if (a(r, c) != 0) done = false;
      }
      if (done) break;
    }
    if (a(p, c) == 0) continue;
    if (a(p, c) < 0) a.negate_row(p);
    for (std::size_t r = 0; r < p; ++r) {
      BigInt q = a(r, c) / a(p, c);
      if (a(r, c) - q * a(p, c) < 0) q -= 1;
      a.add_row(r, p, -q);
    }
    ++p;
  }
  IntMatrix out(p, cols);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(i, j);
  return out;
}

/// Saturated basis of {x in Z^cols : A x = 0}.
inline std::vector<IntVector> integer_kernel(const IntMatrix& a) {
  const SmithDecomposition s = smith_normal_form(a);
  std::vector<IntVector> basis;
  for (std::size_t j = s.rank(); j < a.cols(); ++j) basis.push_back(s.V.column(j));
  return basis;
}

/// Solution of A x = b over Z. When none exists, `obstruction` holds the
/// index of the Smith-transformed equation that fails.
struct LinearSolution {
  std::optional<IntVector> x;
  std::optional<std::size_t> obstruction;
  std::string reason;
};

inline LinearSolution solve_linear_z(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw Error("solve_linear_z: dimension mismatch");
  const SmithDecomposition s = smith_normal_form(a);
  const IntVector c = s.U.apply(b);
  const std::size_t r = s.rank();
  IntVector y(a.cols());
  for (std::size_t i = 0; i < r; ++i) {
    if (c[i] % s.D(i, i) != 0) {
      return {std::nullopt, i,
              "transformed equation " + std::to_string(i) + ": " + s.D(i, i).str() +
                  " does not divide " + c[i].str()};
    }
    y[i] = c[i] / s.D(i, i);
  }
  for (std::size_t i = r; i < c.size(); ++i) {
    if (c[i] != 0) {
      return {std::nullopt, i,
              "transformed equation " + std::to_string(i) + ": 0 = " + c[i].str()};
    }
  }
  return {s.V.apply(y), std::nullopt, {}};
}

inline IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (!m.is_unimodular()) throw Error("unimodular_inverse: matrix is not unimodular");
  const SmithDecomposition s = smith_normal_form(m);
  // U M V = I  =>  M^-1 = V U.
  return s.V * s.U;
}

inline std::uint64_t euler_phi(std::uint64_t m) {
  std::uint64_t result = m;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

/// lcm of all m with phi(m) <= n: every root-of-unity eigenvalue of an n x n
/// integer matrix has order dividing this number.
inline std::uint64_t root_of_unity_exponent(std::size_t n) {
  if (n > 16) throw Error("root_of_unity_exponent: dimension too large");
  std::uint64_t l = 1;
  for (std::uint64_t m = 1; m <= 2 * n * n + 2; ++m)
    if (euler_phi(m) <= n) l = std::lcm(l, m);
  return l;
}

/// |GL(n, Z/3)|.
inline BigInt gl_mod3_order(std::size_t n) {
  BigInt order = 1;
  BigInt three_n = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(n));
  BigInt three_i = 1;
  for (std::size_t i = 0; i < n; ++i) {
    order *= three_n - three_i;
    three_i *= 3;
  }
  return order;
}

/// Least k >= 1 with M^k = I, or nullopt when M has infinite order.
inline std::optional<std::uint64_t> matrix_order(const IntMatrix& m) {
  if (!m.is_unimodular()) throw Error("matrix_order: matrix is not invertible over Z");
  const std::uint64_t l = root_of_unity_exponent(m.rows());
  if (!m.pow(l).is_identity()) return std::nullopt;
  for (std::uint64_t d = 1; d <= l; ++d)
    if (l % d == 0 && m.pow(d).is_identity()) return d;
  return l;
}

/// Outcome of the finiteness test for <gens> in GL(n, Z).
struct FinitenessVerdict {
  bool finite = false;
  std::size_t order = 0;                  // when finite
  std::vector<IntMatrix> elements;        // when finite: the full group
  std::optional<Word> witness;            // when infinite: word of infinite order
  std::optional<IntMatrix> witness_matrix;
};

inline void require_unimodular_family(const std::vector<IntMatrix>& gens, std::size_t n,
                                      const char* who) {
  for (const IntMatrix& g : gens) {
    if (g.rows() != n || g.cols() != n)
      throw Error(std::string(who) + ": dimension mismatch");
    if (!g.is_unimodular()) throw Error(std::string(who) + ": non-unimodular generator");
  }
}

/// Decides whether the matrices generate a finite group. Reduction mod 3 is
/// injective on finite subgroups of GL(n, Z) and its kernel is torsion-free,
/// so two distinct elements with equal residues give an infinite-order word.
inline FinitenessVerdict matrix_group_is_finite(const std::vector<IntMatrix>& gens,
                                                std::size_t n) {
  require_unimodular_family(gens, n, "matrix_group_is_finite");
  std::vector<IntMatrix> elems{IntMatrix::identity(n)};
  std::vector<Word> words{Word{}};
  std::map<std::string, std::size_t> by_residue{{elems[0].mod3_key(), 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      IntMatrix p = elems[i] * gens[g];
      auto [it, fresh] = by_residue.emplace(p.mod3_key(), elems.size());
      if (!fresh) {
        if (elems[it->second] == p) continue;
        FinitenessVerdict v;
        Word w = words[i];
        w.push(g, 1);
        w.append(words[it->second].inverse());
        v.witness = free_reduce(w);
        v.witness_matrix = p * unimodular_inverse(elems[it->second]);
        return v;
      }
      Word w = words[i];
      w.push(g, 1);
      elems.push_back(std::move(p));
      words.push_back(std::move(w));
    }
  }
  FinitenessVerdict v;
  v.finite = true;
  v.order = elems.size();
  v.elements = std::move(elems);
  return v;
}

/// Sublattice of Z^n, stored as a column Hermite basis (n x rank).
class Lattice {
 public:
  Lattice() = default;

  static Lattice zero(std::size_t n) { return Lattice(n, IntMatrix(n, 0)); }
  static Lattice full(std::size_t n) { return Lattice(n, IntMatrix::identity(n)); }

  /// Lattice spanned by arbitrary (possibly dependent) generators.
  static Lattice span(std::size_t n, const std::vector<IntVector>& gens) {
    if (gens.empty()) return zero(n);
    IntMatrix rows(gens.size(), n);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (gens[i].size() != n) throw Error("Lattice::span: dimension mismatch");
      for (std::size_t j = 0; j < n; ++j) rows(i, j) = gens[i][j];
    }
    return Lattice(n, row_hermite_form(rows).transpose());
  }

  std::size_t ambient_rank() const { return n_; }
  std::size_t rank() const { return basis_.cols(); }
  bool is_zero() const { return rank() == 0; }
  const IntMatrix& basis() const { return basis_; }
  std::vector<IntVector> basis_vectors() const {
    std::vector<IntVector> out;
    for (std::size_t j = 0; j < rank(); ++j) out.push_back(basis_.column(j));
    return out;
  }

  bool contains(const IntVector& v) const {
    if (v.size() != n_) throw Error("Lattice::contains: dimension mismatch");
    if (is_zero()) return is_zero_vector(v);
    return solve_linear_z(basis_, v).x.has_value();
  }

  Lattice intersect(const Lattice& other) const {
    if (other.n_ != n_) throw Error("Lattice::intersect: dimension mismatch");
    if (is_zero() || other.is_zero()) return zero(n_);
    const std::size_t k1 = rank();
    const std::size_t k2 = other.rank();
    IntMatrix joint(n_, k1 + k2);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < k1; ++j) joint(i, j) = basis_(i, j);
      for (std::size_t j = 0; j < k2; ++j) joint(i, k1 + j) = -other.basis_(i, j);
    }
    std::vector<IntVector> gens;
    for (const IntVector& kv : integer_kernel(joint)) {
      IntVector x(kv.begin(), kv.begin() + static_cast<std::ptrdiff_t>(k1));
      gens.push_back(basis_.apply(x));
    }
    return span(n_, gens);
  }

  /// (L tensor Q) intersected with Z^n.
  Lattice saturation() const {
    if (is_zero()) return *this;
    // Vectors orthogonal to the lattice, then everything orthogonal to those.
    const std::vector<IntVector> ortho = integer_kernel(basis_.transpose());
    if (ortho.empty()) return full(n_);
    IntMatrix rows(ortho.size(), n_);
    for (std::size_t i = 0; i < ortho.size(); ++i)
      for (std::size_t j = 0; j < n_; ++j) rows(i, j) = ortho[i][j];
    return span(n_, integer_kernel(rows));
  }

  /// True when g maps every basis vector back into the lattice.
  bool invariant_under(const IntMatrix& g) const {
    for (std::size_t j = 0; j < rank(); ++j)
      if (!contains(g.apply(basis_.column(j)))) return false;
    return true;
  }

  /// Matrix of g restricted to this (g-invariant) lattice in its own basis.
  IntMatrix restrict(const IntMatrix& g) const {
    std::vector<IntVector> cols;
    for (std::size_t j = 0; j < rank(); ++j) {
      auto sol = solve_linear_z(basis_, g.apply(basis_.column(j)));
      if (!sol.x) throw Error("Lattice::restrict: lattice is not invariant");
      cols.push_back(*sol.x);
    }
    return IntMatrix::from_columns(cols, rank());
  }

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  Lattice(std::size_t n, IntMatrix basis) : n_(n), basis_(std::move(basis)) {}

  std::size_t n_ = 0;
  IntMatrix basis_;
};

namespace detail {

using Poly = std::vector<long long>;  // coefficients, lowest degree first

inline Poly poly_divide_exact(Poly num, const Poly& den) {
  Poly q(num.size() - den.size() + 1, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    const long long c = num[i + den.size() - 1] / den.back();
    q[i] = c;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
  }
  return q;
}

/// Cyclotomic polynomial Phi_m by dividing x^m - 1 by Phi_d for proper divisors d.
inline Poly cyclotomic(std::uint64_t m) {
  Poly p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (std::uint64_t d = 1; d < m; ++d)
    if (m % d == 0) p = poly_divide_exact(p, cyclotomic(d));
  return p;
}

inline IntMatrix poly_eval(const Poly& p, const IntMatrix& m) {
  const std::size_t n = m.rows();
  IntMatrix acc(n, n);
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = acc * m;
    if (p[i] != 0) acc = acc + IntMatrix::identity(n).scaled(p[i]);
  }
  return acc;
}

}  // namespace detail

/// {v in Z^n : M^k v = v for some k >= 1}, which equals ker(M^L - I) for the
/// root-of-unity exponent L. Computed as the saturated sum of the integer
/// kernels of Phi_m(M) over cyclotomic polynomials of degree <= n.
inline Lattice periodic_sublattice(const IntMatrix& m) {
  if (!m.is_unimodular()) throw Error("periodic_sublattice: matrix is not invertible over Z");
  const std::size_t n = m.rows();
  std::vector<IntVector> gens;
  for (std::uint64_t k = 1; k <= 2 * n * n + 2; ++k) {
    if (euler_phi(k) > n) continue;
    for (IntVector& v : integer_kernel(detail::poly_eval(detail::cyclotomic(k), m)))
      gens.push_back(std::move(v));
  }
  return Lattice::span(n, gens).saturation();
}

struct FcLatticeResult {
  Lattice lattice;
  bool resolved = false;
  std::size_t words_examined = 0;
};

/// Lattice of vectors with finite orbit under <gens>. Intersects periodic
/// sublattices of group elements in BFS order up to `word_cutoff`, and
/// reports `resolved` once the current lattice is invariant and the induced
/// action on it is a finite group (then it is exactly the finite-orbit set).
inline FcLatticeResult fc_lattice(const std::vector<IntMatrix>& gens, std::size_t n,
                                  std::size_t word_cutoff = 8) {
  require_unimodular_family(gens, n, "fc_lattice");
  FcLatticeResult result{Lattice::full(n), false, 0};

  std::vector<IntMatrix> letters;
  for (const IntMatrix& g : gens) {
    letters.push_back(g);
    letters.push_back(unimodular_inverse(g));
  }

  auto try_resolve = [&]() {
    const Lattice& w = result.lattice;
    if (w.is_zero()) return true;
    std::vector<IntMatrix> restricted;
    for (const IntMatrix& g : gens) {
      if (!w.invariant_under(g)) return false;
      restricted.push_back(w.restrict(g));
    }
    return matrix_group_is_finite(restricted, w.rank()).finite;
  };

  if (try_resolve()) {
    result.resolved = true;
    return result;
  }
  std::map<std::string, bool> seen{{IntMatrix::identity(n).to_string(), true}};
  std::vector<IntMatrix> frontier{IntMatrix::identity(n)};
  for (std::size_t len = 1; len <= word_cutoff && !frontier.empty(); ++len) {
    std::vector<IntMatrix> next;
    for (const IntMatrix& f : frontier) {
      for (const IntMatrix& l : letters) {
        IntMatrix p = f * l;
        if (!seen.emplace(p.to_string(), true).second) continue;
        ++result.words_examined;
        if (!result.lattice.is_zero())
          result.lattice = result.lattice.intersect(periodic_sublattice(p));
        next.push_back(std::move(p));
      }
    }
    if (try_resolve()) {
      result.resolved = true;
      return result;
    }
    frontier = std::move(next);
  }
  return result;
}

}  // namespace icckit
