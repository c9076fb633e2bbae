#pragma once

// Group descriptors for the catalog of computable families, verdicts with
// certificates, and FC-subgroups of catalog quotient groups.

#include <cstddef>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "icckit/error.hpp"
#include "icckit/finite_group.hpp"
#include "icckit/zlinalg.hpp"

namespace icckit {

/// Owning pointer with value semantics, for recursive descriptors.
template <class T>
class Box {
 public:
  Box() = default;
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT implicit
  Box(const Box& other) : ptr_(other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr;
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  explicit operator bool() const { return static_cast<bool>(ptr_); }

  friend bool operator==(const Box& a, const Box& b) {
    if (!a.ptr_ || !b.ptr_) return !a.ptr_ && !b.ptr_;
    return *a.ptr_ == *b.ptr_;
  }

 private:
  std::unique_ptr<T> ptr_;
};

struct GroupDesc;

struct FiniteDesc {
  FiniteGroup group;
  bool simple = false;
  friend bool operator==(const FiniteDesc&, const FiniteDesc&) = default;
};

struct FreeAbelianDesc {
  std::size_t rank = 0;
  friend bool operator==(const FreeAbelianDesc&, const FreeAbelianDesc&) = default;
};

struct FreeDesc {
  std::size_t rank = 0;
  friend bool operator==(const FreeDesc&, const FreeDesc&) = default;
};

/// A group known only through asserted properties.
struct DeclaredDesc {
  std::optional<bool> icc;
  std::optional<bool> centerless;
  std::optional<bool> infinite;
  std::optional<bool> simple;
  std::string name;
  friend bool operator==(const DeclaredDesc&, const DeclaredDesc&) = default;
};

struct DirectProductDesc {
  std::vector<GroupDesc> factors;
  friend bool operator==(const DirectProductDesc&, const DirectProductDesc&);
};

/// K x|_theta Q. Lattice kernels carry one matrix per quotient generator,
/// finite kernels one automorphism (as an image table) per quotient generator.
struct SplitExtensionDesc {
  Box<GroupDesc> kernel;
  Box<GroupDesc> quotient;
  std::vector<IntMatrix> lattice_action;
  std::vector<Perm> finite_action;
  std::vector<std::string> kernel_names;
  std::vector<std::string> quotient_names;
  friend bool operator==(const SplitExtensionDesc&, const SplitExtensionDesc&) = default;
};

struct OmegaRegular {
  friend bool operator==(const OmegaRegular&, const OmegaRegular&) = default;
};
/// Finite Q-set {0..size-1}; one permutation per generator of the top group.
struct OmegaFiniteSet {
  std::size_t size = 0;
  std::vector<Perm> generator_images;
  friend bool operator==(const OmegaFiniteSet&, const OmegaFiniteSet&) = default;
};
/// Cosets of a finite-index subgroup of the top group: `index` for the
/// subgroup nZ of Z, or an explicit subgroup of a finite top group.
struct OmegaCosets {
  std::optional<std::size_t> index;
  Subgroup subgroup;
  friend bool operator==(const OmegaCosets&, const OmegaCosets&) = default;
};
struct OmegaDesc {
  std::variant<OmegaRegular, OmegaFiniteSet, OmegaCosets> kind;
  friend bool operator==(const OmegaDesc&, const OmegaDesc&) = default;
};

struct WreathDesc {
  bool complete = false;
  Box<GroupDesc> base;
  Box<GroupDesc> top;
  OmegaDesc omega;
  friend bool operator==(const WreathDesc&, const WreathDesc&) = default;
};

struct BaumslagSolitarDesc {
  long long m = 1;
  long long n = 1;
  friend bool operator==(const BaumslagSolitarDesc&, const BaumslagSolitarDesc&) = default;
};

/// phi maps C[i] to phi[i] (an element of the target subgroup).
struct HnnDesc {
  FiniteGroup base;
  Subgroup c;
  Subgroup c_prime;
  std::vector<std::size_t> phi;
  friend bool operator==(const HnnDesc&, const HnnDesc&) = default;
};

struct AmalgamDesc {
  FiniteGroup a;
  FiniteGroup b;
  Subgroup c;        // in a
  Subgroup c_prime;  // in b
  std::vector<std::size_t> phi;
  friend bool operator==(const AmalgamDesc&, const AmalgamDesc&) = default;
};

struct FreeProductDesc {
  std::vector<GroupDesc> factors;
  friend bool operator==(const FreeProductDesc&, const FreeProductDesc&);
};

/// Extension of `kernel` by a finite quotient. For declared kernels the
/// coupling is given per quotient element as "acts by an inner automorphism".
struct FiniteExtDesc {
  Box<GroupDesc> kernel;
  FiniteGroup quotient;
  std::vector<IntMatrix> lattice_action;
  std::vector<Perm> finite_action;
  std::vector<bool> declared_inner;
  bool torsion_free_cosets = false;
  friend bool operator==(const FiniteExtDesc&, const FiniteExtDesc&) = default;
};

/// (Z^2 x F(k0,k1)) x| (Z x F(q1,q2)): q0 conjugates by k0, q1 and q2 act on
/// Z^2 by [[1,1],[0,1]] and [[1,0],[1,1]] and twist k0 by a2 and a1.
struct LatticeFreeTwistDesc {
  friend bool operator==(const LatticeFreeTwistDesc&, const LatticeFreeTwistDesc&) = default;
};

struct GroupDesc {
  std::variant<FiniteDesc, FreeAbelianDesc, FreeDesc, DeclaredDesc, DirectProductDesc,
               SplitExtensionDesc, WreathDesc, BaumslagSolitarDesc, HnnDesc, AmalgamDesc,
               FreeProductDesc, FiniteExtDesc, LatticeFreeTwistDesc>
      node;

  GroupDesc() = default;
  template <class T>
    requires(!std::is_same_v<std::decay_t<T>, GroupDesc>)
  GroupDesc(T&& alt) : node(std::forward<T>(alt)) {}  // NOLINT implicit

  template <class T>
  const T* as() const {
    return std::get_if<T>(&node);
  }

  friend bool operator==(const GroupDesc&, const GroupDesc&) = default;
};

inline bool operator==(const DirectProductDesc& a, const DirectProductDesc& b) {
  return a.factors == b.factors;
}
inline bool operator==(const FreeProductDesc& a, const FreeProductDesc& b) {
  return a.factors == b.factors;
}

inline GroupDesc finite(FiniteGroup g) { return FiniteDesc{std::move(g), false}; }
inline GroupDesc free_abelian(std::size_t rank) { return FreeAbelianDesc{rank}; }
inline GroupDesc free_group(std::size_t rank) { return FreeDesc{rank}; }

std::string family_name(const GroupDesc& g);

// ---------------------------------------------------------------------------
// Verdicts

enum class Outcome { Icc, NotIcc, Unknown };

inline std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Icc: return "icc";
    case Outcome::NotIcc: return "not_icc";
    case Outcome::Unknown: return "unknown";
  }
  return "unknown";
}

/// Fixed enumeration of condition tags that may appear in certificates.
namespace clause {
inline constexpr const char* kFiniteGroup = "finite_group";
inline constexpr const char* kAbelian = "abelian";
inline constexpr const char* kFreeRank = "free.rank_at_least_two";
inline constexpr const char* kDeclared = "declared";
inline constexpr const char* kDirectProduct = "direct_product.all_factors_icc";
inline constexpr const char* kKernelFcTrivial = "kernel_fc_trivial";
inline constexpr const char* kFcActionInjective = "fc_quotient_action_injective";
inline constexpr const char* kCouplingInjective = "coupling_injective";
inline constexpr const char* kKernelIcc = "kernel_icc";
inline constexpr const char* kTorsionNotInner = "coset_torsion_not_inner";
inline constexpr const char* kH1NonZero = "h1_class_nonzero";
inline constexpr const char* kWreathBaseIcc = "wreath.base_icc";
inline constexpr const char* kWreathOrbitsInfinite = "wreath.orbits_infinite";
inline constexpr const char* kWreathFcFaithful = "wreath.fc_top_faithful";
inline constexpr const char* kWreathBaseCenterless = "wreath.base_centerless";
inline constexpr const char* kBsUnbalanced = "bs.m_ne_pm_n";
inline constexpr const char* kHnnDegenerate = "hnn.degenerate";
inline constexpr const char* kHnnCoreTrivial = "hnn.normal_core_trivial";
inline constexpr const char* kAmalgamDegenerate = "amalgam.degenerate";
inline constexpr const char* kAmalgamCoreTrivial = "amalgam.normal_core_trivial";
inline constexpr const char* kFreeProductNotDihedral = "free_product.not_dihedral";
inline constexpr const char* kSimpleInfinite = "simple.infinite";
inline constexpr const char* kNoDecider = "no_decider";

inline const std::vector<std::string>& all() {
  static const std::vector<std::string> tags = {
      kFiniteGroup, kAbelian, kFreeRank, kDeclared, kDirectProduct, kKernelFcTrivial,
      kFcActionInjective, kCouplingInjective, kKernelIcc, kTorsionNotInner, kH1NonZero,
      kWreathBaseIcc, kWreathOrbitsInfinite, kWreathFcFaithful, kWreathBaseCenterless,
      kBsUnbalanced, kHnnDegenerate, kHnnCoreTrivial, kAmalgamDegenerate,
      kAmalgamCoreTrivial, kFreeProductNotDihedral, kSimpleInfinite, kNoDecider};
  return tags;
}
}  // namespace clause

struct Condition {
  std::string clause;
  std::optional<bool> holds;
  std::string detail;
  friend bool operator==(const Condition&, const Condition&) = default;
};

/// How a NotIcc witness is certified.
enum class WitnessKind {
  Oracle,                // a word whose finite class the oracle can certify
  Central,               // a central element (class of size one)
  FiniteNormalSubgroup,  // a member of a nontrivial finite normal subgroup
  FiniteGroup,           // the whole group is finite
  Structural,            // other structural argument, described in `note`
};

inline std::string to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::Oracle: return "oracle";
    case WitnessKind::Central: return "central";
    case WitnessKind::FiniteNormalSubgroup: return "finite_normal_subgroup";
    case WitnessKind::FiniteGroup: return "finite_group";
    case WitnessKind::Structural: return "structural";
  }
  return "structural";
}

struct Witness {
  std::string element;  // word in the family's generator alphabet
  WitnessKind kind = WitnessKind::Oracle;
  std::string note;
  std::vector<std::string> known_class;  // expected conjugacy class, when known
};

struct ProbeRecord {
  std::string element;
  std::vector<std::size_t> counts;
  bool closed = false;
};

struct CrossCheckRecord {
  bool skipped = false;
  bool consistent = true;
  std::string mode;  // "witness", "evidence" or "skipped"
  std::size_t radius = 0;
  std::vector<ProbeRecord> probes;
  std::string message;
};

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  std::string family;
  std::vector<Condition> conditions;
  std::optional<Witness> witness;
  std::optional<CrossCheckRecord> oracle;
  std::string reason;

  void add(std::string tag, std::optional<bool> holds, std::string detail) {
    conditions.push_back({std::move(tag), holds, std::move(detail)});
  }
};

struct Options {
  std::size_t word_cutoff = 8;
  std::size_t aut_cap = 24;

  /// Options with ICCKIT_WORD_CUTOFF applied when set.
  static Options from_environment() {
    Options o;
    if (const char* v = std::getenv("ICCKIT_WORD_CUTOFF")) {
      char* end = nullptr;
      const unsigned long x = std::strtoul(v, &end, 10);
      if (end != v && *end == '\0' && x > 0 && x < 64) o.word_cutoff = x;
    }
    return o;
  }
};

/// Three-valued conjunction / disjunction.
inline std::optional<bool> tri_and(std::optional<bool> a, std::optional<bool> b) {
  if (a == false || b == false) return false;
  if (a == true && b == true) return true;
  return std::nullopt;
}
inline std::optional<bool> tri_or(std::optional<bool> a, std::optional<bool> b) {
  if (a == true || b == true) return true;
  if (a == false && b == false) return false;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Structural facts about catalog members

inline std::optional<bool> is_infinite(const GroupDesc& g);

inline std::optional<bool> is_trivial(const GroupDesc& g) {
  if (auto f = g.as<FiniteDesc>()) return f->group.order() == 1;
  if (auto a = g.as<FreeAbelianDesc>()) return a->rank == 0;
  if (auto f = g.as<FreeDesc>()) return f->rank == 0;
  if (auto d = g.as<DirectProductDesc>()) {
    std::optional<bool> all = true;
    for (const GroupDesc& x : d->factors) all = tri_and(all, is_trivial(x));
    return all;
  }
  if (auto d = g.as<DeclaredDesc>()) {
    if (d->infinite == true || d->icc == true) return false;
    return std::nullopt;
  }
  if (g.as<BaumslagSolitarDesc>() || g.as<HnnDesc>() || g.as<LatticeFreeTwistDesc>()) return false;
  if (auto inf = is_infinite(g); inf == true) return false;
  return std::nullopt;
}

inline std::optional<bool> is_infinite(const GroupDesc& g) {
  if (g.as<FiniteDesc>()) return false;
  if (auto a = g.as<FreeAbelianDesc>()) return a->rank > 0;
  if (auto f = g.as<FreeDesc>()) return f->rank > 0;
  if (auto d = g.as<DeclaredDesc>()) {
    if (d->icc == true) return true;
    return d->infinite;
  }
  if (auto d = g.as<DirectProductDesc>()) {
    std::optional<bool> any = false;
    for (const GroupDesc& x : d->factors) any = tri_or(any, is_infinite(x));
    return any;
  }
  if (auto s = g.as<SplitExtensionDesc>())
    return tri_or(is_infinite(*s->kernel), is_infinite(*s->quotient));
  if (auto w = g.as<WreathDesc>()) {
    auto base_trivial = is_trivial(*w->base);
    if (base_trivial == true) return is_infinite(*w->top);
    std::optional<bool> omega_infinite;
    if (std::holds_alternative<OmegaRegular>(w->omega.kind))
      omega_infinite = is_infinite(*w->top);
    else
      omega_infinite = false;
    return tri_or(tri_or(is_infinite(*w->base), is_infinite(*w->top)), omega_infinite);
  }
  if (g.as<BaumslagSolitarDesc>() || g.as<HnnDesc>() || g.as<LatticeFreeTwistDesc>()) return true;
  if (auto a = g.as<AmalgamDesc>()) {
    // C proper in both factors makes the amalgam infinite.
    return a->c.size() < a->a.order() && a->c_prime.size() < a->b.order();
  }
  if (auto f = g.as<FreeProductDesc>()) {
    std::size_t nontrivial = 0;
    for (const GroupDesc& x : f->factors)
      if (is_trivial(x) == false) ++nontrivial;
    if (nontrivial >= 2) return true;
    std::optional<bool> any = false;
    for (const GroupDesc& x : f->factors) any = tri_or(any, is_infinite(x));
    return any;
  }
  if (auto e = g.as<FiniteExtDesc>()) return is_infinite(*e->kernel);
  return std::nullopt;
}

/// Number of generators a catalog quotient exposes to an action.
inline std::optional<std::size_t> generator_count(const GroupDesc& g) {
  if (auto f = g.as<FiniteDesc>()) return f->group.generators().size();
  if (auto a = g.as<FreeAbelianDesc>()) return a->rank;
  if (auto f = g.as<FreeDesc>()) return f->rank;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// FC-subgroups

struct FcSubgroup {
  enum class Kind { Whole, Trivial, Product, Unsupported };
  Kind kind = Kind::Unsupported;
  std::vector<FcSubgroup> parts;  // Product: one entry per direct factor
  std::string reason;

  bool is_trivial() const {
    if (kind == Kind::Trivial) return true;
    if (kind != Kind::Product) return false;
    for (const FcSubgroup& p : parts)
      if (!p.is_trivial()) return false;
    return true;
  }

  std::string describe() const {
    switch (kind) {
      case Kind::Whole: return "whole group";
      case Kind::Trivial: return "trivial";
      case Kind::Unsupported: return "unsupported (" + reason + ")";
      case Kind::Product: {
        std::string s = "product(";
        for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i].describe();
        return s + ")";
      }
    }
    return "";
  }
};

/// FC(Q), the union of finite conjugacy classes, for quotient-shaped catalog
/// members. Computed structurally.
inline FcSubgroup fc_of_group(const GroupDesc& q) {
  using K = FcSubgroup::Kind;
  if (q.as<FiniteDesc>()) return {K::Whole, {}, {}};
  if (q.as<FreeAbelianDesc>()) return {K::Whole, {}, {}};
  if (auto f = q.as<FreeDesc>()) return {f->rank <= 1 ? K::Whole : K::Trivial, {}, {}};
  if (auto d = q.as<DirectProductDesc>()) {
    FcSubgroup out{K::Product, {}, {}};
    for (const GroupDesc& x : d->factors) {
      FcSubgroup p = fc_of_group(x);
      if (p.kind == K::Unsupported) return p;
      out.parts.push_back(std::move(p));
    }
    return out;
  }
  if (auto d = q.as<DeclaredDesc>()) {
    if (d->icc == true) return {K::Trivial, {}, {}};
    if (d->infinite == false) return {K::Whole, {}, {}};
    return {K::Unsupported, {}, "declared group without icc or finiteness assertion"};
  }
  return {K::Unsupported, {}, "FC is only computed for finite, free abelian, free, "
                              "direct products of these, and declared groups"};
}

inline std::string family_name(const GroupDesc& g) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FiniteDesc>) return "finite";
        else if constexpr (std::is_same_v<T, FreeAbelianDesc>) return "free_abelian";
        else if constexpr (std::is_same_v<T, FreeDesc>) return "free";
        else if constexpr (std::is_same_v<T, DeclaredDesc>) return "declared";
        else if constexpr (std::is_same_v<T, DirectProductDesc>) return "direct_product";
        else if constexpr (std::is_same_v<T, SplitExtensionDesc>) return "semidirect";
        else if constexpr (std::is_same_v<T, WreathDesc>) return "wreath";
        else if constexpr (std::is_same_v<T, BaumslagSolitarDesc>) return "bs";
        else if constexpr (std::is_same_v<T, HnnDesc>) return "hnn";
        else if constexpr (std::is_same_v<T, AmalgamDesc>) return "amalgam";
        else if constexpr (std::is_same_v<T, FreeProductDesc>) return "free_product";
        else if constexpr (std::is_same_v<T, FiniteExtDesc>) return "finite_extension";
        else return "lattice_free_twist";
      },
      g.node);
}

}  // namespace icckit
