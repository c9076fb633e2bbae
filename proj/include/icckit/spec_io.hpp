#pragma once

// JSON descriptors, reports and ball serializations.

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "icckit/descriptor.hpp"
#include "icckit/extensions.hpp"
#include "icckit/families.hpp"
#include "icckit/oracle.hpp"

namespace icckit {

inline constexpr const char* kToolkitVersion = "0.3.0";

using json = nlohmann::json;

/// Schema or validation failure; `key` is a JSON path such as $.kernel.rank.
class SpecError : public Error {
 public:
  SpecError(std::string key, const std::string& message)
      : Error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

namespace detail {

inline const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw SpecError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SpecError(path + "." + key, "missing key");
  return *it;
}

inline bool has(const json& j, const char* key) { return j.is_object() && j.contains(key); }

inline long long get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SpecError(path, "expected an integer");
  return j.get<long long>();
}

inline std::size_t get_size(const json& j, const std::string& path) {
  const long long v = get_int(j, path);
  if (v < 0) throw SpecError(path, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

inline bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw SpecError(path, "expected true or false");
  return j.get<bool>();
}

inline std::optional<bool> get_tri(const json& j, const char* key, const std::string& path) {
  if (!has(j, key) || j.at(key).is_null()) return std::nullopt;
  return get_bool(j.at(key), path + "." + key);
}

inline const json& get_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw SpecError(path, "expected an array");
  return j;
}

inline std::vector<std::size_t> get_indices(const json& j, const std::string& path) {
  std::vector<std::size_t> out;
  const json& a = get_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(get_size(a[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::string> get_strings(const json& j, const std::string& path) {
  std::vector<std::string> out;
  const json& a = get_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_string()) throw SpecError(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(a[i].get<std::string>());
  }
  return out;
}

inline IntMatrix get_matrix(const json& j, const std::string& path) {
  const json& rows = get_array(j, path);
  const std::size_t n = rows.size();
  if (n == 0) throw SpecError(path, "empty matrix");
  IntMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    const json& row = get_array(rows[r], rp);
    if (row.size() != n) throw SpecError(rp, "matrix is not square");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = get_int(row[c], rp + "[" + std::to_string(c) + "]");
  }
  if (!m.is_unimodular()) throw SpecError(path, "non-unimodular matrix " + m.to_string());
  return m;
}

inline std::vector<IntMatrix> get_matrices(const json& j, const std::string& path) {
  std::vector<IntMatrix> out;
  const json& a = get_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(get_matrix(a[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<Perm> get_perms(const json& j, const std::string& path) {
  std::vector<Perm> out;
  const json& a = get_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(get_indices(a[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

/// Runs a library validator and re-raises its diagnostic under `path`.
template <class F>
void validated(const std::string& path, F&& f) {
  try {
    f();
  } catch (const SpecError&) {
    throw;
  } catch (const Error& e) {
    throw SpecError(path, e.what());
  }
}

inline FiniteGroup parse_finite_group(const json& j, const std::string& path) {
  if (!j.is_object()) throw SpecError(path, "expected an object");
  const char* catalog[] = {"cyclic", "symmetric", "alternating", "dihedral"};
  for (const char* c : catalog)
    if (has(j, c)) {
      const std::size_t n = get_size(j.at(c), path + "." + c);
      if (n == 0) throw SpecError(path + "." + c, "expected a positive integer");
      const std::string name = c;
      FiniteGroup g;
      validated(path + "." + c, [&] {
        g = name == "cyclic"        ? FiniteGroup::cyclic(n)
            : name == "symmetric"   ? FiniteGroup::symmetric(n)
            : name == "alternating" ? FiniteGroup::alternating(n)
                                    : FiniteGroup::dihedral(n);
      });
      return g;
    }
  if (has(j, "quaternion")) return FiniteGroup::quaternion();
  if (has(j, "table")) {
    const std::string tp = path + ".table";
    std::vector<std::vector<std::size_t>> table;
    const json& rows = get_array(j.at("table"), tp);
    for (std::size_t r = 0; r < rows.size(); ++r)
      table.push_back(get_indices(rows[r], tp + "[" + std::to_string(r) + "]"));
    std::vector<std::size_t> gens;
    std::vector<std::string> labels;
    if (has(j, "generators")) gens = get_indices(j.at("generators"), path + ".generators");
    if (has(j, "labels")) labels = get_strings(j.at("labels"), path + ".labels");
    FiniteGroup g;
    validated(tp, [&] { g = FiniteGroup::from_table(table, gens, labels); });
    return g;
  }
  if (has(j, "permutation_generators")) {
    const std::string pp = path + ".permutation_generators";
    const std::vector<Perm> gens = get_perms(j.at("permutation_generators"), pp);
    std::size_t degree = gens.empty() ? 1 : gens.front().size();
    if (has(j, "degree")) degree = get_size(j.at("degree"), path + ".degree");
    FiniteGroup g;
    validated(pp, [&] { g = FiniteGroup::from_permutations(gens, degree); });
    return g;
  }
  throw SpecError(path, "finite group needs one of table, permutation_generators, cyclic, "
                        "symmetric, alternating, dihedral, quaternion");
}

inline OmegaDesc parse_omega(const json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "regular") return {OmegaRegular{}};
  if (has(j, "finite_set")) {
    const json& f = j.at("finite_set");
    const std::string fp = path + ".finite_set";
    OmegaFiniteSet s;
    s.size = get_size(field(f, fp, "size"), fp + ".size");
    s.generator_images = get_perms(field(f, fp, "generator_images"), fp + ".generator_images");
    return {s};
  }
  if (has(j, "cosets")) {
    const json& c = j.at("cosets");
    const std::string cp = path + ".cosets";
    OmegaCosets s;
    if (has(c, "index")) s.index = get_size(c.at("index"), cp + ".index");
    if (has(c, "subgroup")) s.subgroup = get_indices(c.at("subgroup"), cp + ".subgroup");
    if (!s.index && !has(c, "subgroup")) throw SpecError(cp, "needs index or subgroup");
    return {s};
  }
  throw SpecError(path, "omega must be \"regular\", {\"finite_set\":...} or {\"cosets\":...}");
}

}  // namespace detail

inline GroupDesc parse_group(const json& j, const std::string& path = "$");

namespace detail {

inline std::vector<GroupDesc> parse_factors(const json& j, const std::string& path) {
  std::vector<GroupDesc> out;
  const json& a = get_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(parse_group(a[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

/// Descriptor from a JSON value. Nested groups may use the shorthands
/// {"free_abelian": n}, {"free": n} and the finite catalog keys.
inline GroupDesc parse_group(const json& j, const std::string& path) {
  using namespace detail;
  if (!j.is_object()) throw SpecError(path, "expected an object");
  if (!has(j, "family")) {
    if (has(j, "free_abelian")) return free_abelian(get_size(j.at("free_abelian"), path + ".free_abelian"));
    if (has(j, "free")) return free_group(get_size(j.at("free"), path + ".free"));
    return finite(parse_finite_group(j, path));
  }
  const json& fam = j.at("family");
  if (!fam.is_string()) throw SpecError(path + ".family", "expected a string");
  const std::string family = fam.get<std::string>();

  if (family == "finite") {
    FiniteDesc d{parse_finite_group(j, path), false};
    if (has(j, "simple")) d.simple = get_bool(j.at("simple"), path + ".simple");
    return d;
  }
  if (family == "free_abelian") return free_abelian(get_size(field(j, path, "rank"), path + ".rank"));
  if (family == "free") return free_group(get_size(field(j, path, "rank"), path + ".rank"));
  if (family == "declared") {
    DeclaredDesc d;
    d.icc = get_tri(j, "icc", path);
    d.centerless = get_tri(j, "centerless", path);
    d.infinite = get_tri(j, "infinite", path);
    d.simple = get_tri(j, "simple", path);
    if (has(j, "name")) {
      if (!j.at("name").is_string()) throw SpecError(path + ".name", "expected a string");
      d.name = j.at("name").get<std::string>();
    }
    return d;
  }
  if (family == "direct_product")
    return DirectProductDesc{parse_factors(field(j, path, "factors"), path + ".factors")};
  if (family == "free_product") {
    FreeProductDesc f{parse_factors(field(j, path, "factors"), path + ".factors")};
    if (f.factors.size() < 2) throw SpecError(path + ".factors", "a free product needs at least two factors");
    for (std::size_t i = 0; i < f.factors.size(); ++i)
      if (is_trivial(f.factors[i]) == true)
        throw SpecError(path + ".factors[" + std::to_string(i) + "]", "free product factor is trivial");
    return f;
  }
  if (family == "semidirect") {
    SplitExtensionDesc s;
    s.kernel = parse_group(field(j, path, "kernel"), path + ".kernel");
    s.quotient = parse_group(field(j, path, "quotient"), path + ".quotient");
    if (has(j, "action")) s.lattice_action = get_matrices(j.at("action"), path + ".action");
    if (has(j, "finite_action")) s.finite_action = get_perms(j.at("finite_action"), path + ".finite_action");
    if (has(j, "kernel_names")) s.kernel_names = get_strings(j.at("kernel_names"), path + ".kernel_names");
    if (has(j, "quotient_names"))
      s.quotient_names = get_strings(j.at("quotient_names"), path + ".quotient_names");
    validated(path + (has(j, "action") ? ".action" : ".finite_action"), [&] { validate_split_extension(s); });
    return s;
  }
  if (family == "wreath") {
    WreathDesc w;
    if (has(j, "complete")) w.complete = get_bool(j.at("complete"), path + ".complete");
    w.base = parse_group(field(j, path, "base"), path + ".base");
    w.top = parse_group(field(j, path, "top"), path + ".top");
    w.omega = has(j, "omega") ? parse_omega(j.at("omega"), path + ".omega") : OmegaDesc{OmegaRegular{}};
    validated(path + ".omega", [&] { resolve_omega(*w.top, w.omega); });
    return w;
  }
  if (family == "bs") {
    BaumslagSolitarDesc b{get_int(field(j, path, "m"), path + ".m"), get_int(field(j, path, "n"), path + ".n")};
    if (b.m == 0) throw SpecError(path + ".m", "must be nonzero");
    if (b.n == 0) throw SpecError(path + ".n", "must be nonzero");
    return b;
  }
  if (family == "hnn") {
    HnnDesc h;
    h.base = parse_finite_group(field(j, path, "base"), path + ".base");
    h.c = get_indices(field(j, path, "c"), path + ".c");
    h.c_prime = get_indices(field(j, path, "c_prime"), path + ".c_prime");
    h.phi = get_indices(field(j, path, "phi"), path + ".phi");
    validated(path + ".phi", [&] { validate_isomorphism(h.base, h.c, h.base, h.c_prime, h.phi); });
    return h;
  }
  if (family == "amalgam") {
    AmalgamDesc a;
    a.a = parse_finite_group(field(j, path, "a"), path + ".a");
    a.b = parse_finite_group(field(j, path, "b"), path + ".b");
    a.c = get_indices(field(j, path, "c"), path + ".c");
    a.c_prime = get_indices(field(j, path, "c_prime"), path + ".c_prime");
    a.phi = get_indices(field(j, path, "phi"), path + ".phi");
    validated(path + ".phi", [&] { validate_isomorphism(a.a, a.c, a.b, a.c_prime, a.phi); });
    return a;
  }
  if (family == "finite_extension") {
    FiniteExtDesc e;
    e.kernel = parse_group(field(j, path, "kernel"), path + ".kernel");
    e.quotient = parse_finite_group(field(j, path, "quotient"), path + ".quotient");
    if (has(j, "action")) e.lattice_action = get_matrices(j.at("action"), path + ".action");
    if (has(j, "finite_action")) e.finite_action = get_perms(j.at("finite_action"), path + ".finite_action");
    if (has(j, "declared_inner")) {
      const json& a = get_array(j.at("declared_inner"), path + ".declared_inner");
      for (std::size_t i = 0; i < a.size(); ++i)
        e.declared_inner.push_back(get_bool(a[i], path + ".declared_inner[" + std::to_string(i) + "]"));
    }
    if (has(j, "torsion_free_cosets"))
      e.torsion_free_cosets = get_bool(j.at("torsion_free_cosets"), path + ".torsion_free_cosets");
    if (e.kernel->as<DeclaredDesc>() && e.declared_inner.size() != e.quotient.order())
      throw SpecError(path + ".declared_inner", "needs one entry per quotient element");
    if (e.kernel->as<FreeAbelianDesc>() || e.kernel->as<FiniteDesc>())
      validated(path + (e.kernel->as<FreeAbelianDesc>() ? ".action" : ".finite_action"),
                [&] { finite_ext_coupling(e); });
    return e;
  }
  if (family == "lattice_free_twist") return LatticeFreeTwistDesc{};
  throw SpecError(path + ".family", "unknown family '" + family + "'");
}

inline GroupDesc parse_spec_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError("$", std::string("invalid JSON: ") + e.what());
  }
  return parse_group(j);
}

inline GroupDesc parse_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str());
}

// ---------------------------------------------------------------------------
// Serialization

namespace detail {

inline json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).convert_to<long long>());
    rows.push_back(row);
  }
  return rows;
}

inline json matrices_json(const std::vector<IntMatrix>& ms) {
  json a = json::array();
  for (const IntMatrix& m : ms) a.push_back(matrix_json(m));
  return a;
}

inline json finite_group_json(const FiniteGroup& g) {
  return {{"table", g.table()}, {"generators", g.generators()}, {"labels", g.labels()}};
}

inline json tri_json(std::optional<bool> b) { return b ? json(*b) : json(nullptr); }

}  // namespace detail

inline json serialize(const GroupDesc& g) {
  using namespace detail;
  json j;
  j["family"] = family_name(g);
  if (auto f = g.as<FiniteDesc>()) {
    j.update(finite_group_json(f->group));
    if (f->simple) j["simple"] = true;
  } else if (auto a = g.as<FreeAbelianDesc>()) {
    j["rank"] = a->rank;
  } else if (auto f = g.as<FreeDesc>()) {
    j["rank"] = f->rank;
  } else if (auto d = g.as<DeclaredDesc>()) {
    j["icc"] = tri_json(d->icc);
    j["centerless"] = tri_json(d->centerless);
    j["infinite"] = tri_json(d->infinite);
    j["simple"] = tri_json(d->simple);
    if (!d->name.empty()) j["name"] = d->name;
  } else if (auto p = g.as<DirectProductDesc>()) {
    for (const GroupDesc& f : p->factors) j["factors"].push_back(serialize(f));
  } else if (auto p = g.as<FreeProductDesc>()) {
    for (const GroupDesc& f : p->factors) j["factors"].push_back(serialize(f));
  } else if (auto s = g.as<SplitExtensionDesc>()) {
    j["kernel"] = serialize(*s->kernel);
    j["quotient"] = serialize(*s->quotient);
    if (!s->lattice_action.empty()) j["action"] = matrices_json(s->lattice_action);
    if (!s->finite_action.empty()) j["finite_action"] = s->finite_action;
    if (!s->kernel_names.empty()) j["kernel_names"] = s->kernel_names;
    if (!s->quotient_names.empty()) j["quotient_names"] = s->quotient_names;
  } else if (auto w = g.as<WreathDesc>()) {
    j["complete"] = w->complete;
    j["base"] = serialize(*w->base);
    j["top"] = serialize(*w->top);
    if (std::holds_alternative<OmegaRegular>(w->omega.kind)) {
      j["omega"] = "regular";
    } else if (auto fs = std::get_if<OmegaFiniteSet>(&w->omega.kind)) {
      j["omega"] = {{"finite_set", {{"size", fs->size}, {"generator_images", fs->generator_images}}}};
    } else {
      const auto& c = std::get<OmegaCosets>(w->omega.kind);
      json cj = json::object();
      if (c.index) cj["index"] = *c.index;
      if (!c.subgroup.empty() || !c.index) cj["subgroup"] = c.subgroup;
      j["omega"] = {{"cosets", cj}};
    }
  } else if (auto b = g.as<BaumslagSolitarDesc>()) {
    j["m"] = b->m;
    j["n"] = b->n;
  } else if (auto h = g.as<HnnDesc>()) {
    j["base"] = finite_group_json(h->base);
    j["c"] = h->c;
    j["c_prime"] = h->c_prime;
    j["phi"] = h->phi;
  } else if (auto a = g.as<AmalgamDesc>()) {
    j["a"] = finite_group_json(a->a);
    j["b"] = finite_group_json(a->b);
    j["c"] = a->c;
    j["c_prime"] = a->c_prime;
    j["phi"] = a->phi;
  } else if (auto e = g.as<FiniteExtDesc>()) {
    j["kernel"] = serialize(*e->kernel);
    j["quotient"] = finite_group_json(e->quotient);
    if (!e->lattice_action.empty()) j["action"] = matrices_json(e->lattice_action);
    if (!e->finite_action.empty()) j["finite_action"] = e->finite_action;
    if (!e->declared_inner.empty()) {
      j["declared_inner"] = json::array();
      for (bool b : e->declared_inner) j["declared_inner"].push_back(b);
    }
    if (e->torsion_free_cosets) j["torsion_free_cosets"] = true;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Reports

inline json ball_json(const BallReport& b) {
  json j{{"element", b.element},
         {"radius", b.radius},
         {"counts", b.counts},
         {"closed", b.closed},
         {"truncated", b.truncated}};
  if (b.closed_at) j["closed_at"] = *b.closed_at;
  if (b.closed) j["class"] = b.members;
  return j;
}

/// One row per radius; `closed` marks radii at which the set was already stable.
inline std::string ball_csv(const BallReport& b) {
  std::string out = "radius,count,closed\n";
  for (std::size_t r = 0; r < b.counts.size(); ++r) {
    const bool closed = b.closed_at && r >= *b.closed_at;
    out += std::to_string(r) + "," + std::to_string(b.counts[r]) + "," + (closed ? "true" : "false") + "\n";
  }
  return out;
}

inline json cross_check_json(const CrossCheckRecord& c) {
  json probes = json::array();
  for (const ProbeRecord& p : c.probes)
    probes.push_back({{"element", p.element}, {"counts", p.counts}, {"closed", p.closed}});
  return {{"skipped", c.skipped}, {"consistent", c.consistent}, {"mode", c.mode},
          {"radius", c.radius},   {"probes", probes},           {"message", c.message}};
}

inline json report_json(const Verdict& v) {
  json conds = json::array();
  for (const Condition& c : v.conditions)
    conds.push_back({{"clause", c.clause}, {"holds", detail::tri_json(c.holds)}, {"detail", c.detail}});
  json j{{"family", v.family},
         {"verdict", to_string(v.outcome)},
         {"conditions", conds},
         {"reason", v.reason},
         {"toolkit_version", kToolkitVersion}};
  if (v.witness) {
    json w{{"element", v.witness->element}, {"kind", to_string(v.witness->kind)}, {"note", v.witness->note}};
    if (!v.witness->known_class.empty()) w["class"] = v.witness->known_class;
    j["witness"] = w;
  }
  if (v.oracle) j["oracle"] = cross_check_json(*v.oracle);
  return j;
}

/// Plain-language meaning of each clause tag.
inline std::string clause_meaning(const std::string& tag) {
  static const std::map<std::string, std::string> m = {
      {clause::kFiniteGroup, "the group is infinite"},
      {clause::kAbelian, "the group is non-abelian"},
      {clause::kFreeRank, "the free group has rank at least two"},
      {clause::kDeclared, "the descriptor asserts the answer"},
      {clause::kDirectProduct, "every direct factor is icc"},
      {clause::kKernelFcTrivial, "no nontrivial kernel element has a finite class in the whole group"},
      {clause::kFcActionInjective,
       "the FC-center of the quotient acts faithfully on the kernel modulo inner automorphisms"},
      {clause::kCouplingInjective, "no nontrivial quotient element acts on the kernel as an inner automorphism"},
      {clause::kKernelIcc, "the finite-index kernel is icc"},
      {clause::kTorsionNotInner,
       "no nontrivial torsion coset acts on the kernel as an inner automorphism"},
      {clause::kH1NonZero, "the twisting class is nonzero, so no lift centralizes the kernel"},
      {clause::kWreathBaseIcc, "the base group is icc"},
      {clause::kWreathOrbitsInfinite, "every orbit of the top group on the index set is infinite"},
      {clause::kWreathFcFaithful, "the FC-center of the top group acts faithfully on the index set"},
      {clause::kWreathBaseCenterless, "the base group has trivial center"},
      {clause::kBsUnbalanced, "m differs from n and from -n"},
      {clause::kHnnDegenerate, "the associated subgroups are the whole base, so the base is normal"},
      {clause::kHnnCoreTrivial, "the largest normal subgroup inside the associated subgroups is trivial"},
      {clause::kAmalgamDegenerate, "the amalgamated subgroup has index two on both sides"},
      {clause::kAmalgamCoreTrivial, "the largest normal subgroup inside the amalgamated subgroup is trivial"},
      {clause::kFreeProductNotDihedral, "the free product is not Z/2 * Z/2"},
      {clause::kSimpleInfinite, "the simple group is infinite"},
      {clause::kNoDecider, "a decision procedure exists for this family"},
  };
  auto it = m.find(tag);
  return it == m.end() ? tag : it->second;
}

inline std::string tri_word(std::optional<bool> b) {
  return !b ? "undetermined" : *b ? "holds" : "fails";
}

/// Short prose report, as printed by `decide` without --json.
inline std::string report_text(const Verdict& v) {
  std::ostringstream out;
  out << "family:  " << v.family << "\n";
  out << "verdict: " << to_string(v.outcome) << "\n";
  for (const Condition& c : v.conditions)
    out << "  [" << tri_word(c.holds) << "] " << c.clause << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  if (v.witness) {
    out << "witness: " << v.witness->element << " (" << to_string(v.witness->kind) << ")";
    if (!v.witness->note.empty()) out << ", " << v.witness->note;
    out << "\n";
  }
  if (!v.reason.empty()) out << "reason:  " << v.reason << "\n";
  if (v.oracle) out << "oracle:  " << v.oracle->mode << ", " << (v.oracle->consistent ? "consistent" : "INCONSISTENT")
                    << ", " << v.oracle->message << "\n";
  return out.str();
}

/// Longer walk-through: what each condition means, its status, and how the
/// verdict follows.
inline std::string explain_text(const GroupDesc& g, const Verdict& v) {
  std::ostringstream out;
  out << "Group family " << v.family << ", generators";
  const std::vector<std::string> alpha = family_alphabet(g);
  if (alpha.empty()) out << " (none named)";
  for (const std::string& a : alpha) out << " " << a;
  out << ".\n\n";
  if (v.conditions.empty()) out << "No conditions were evaluated.\n";
  for (std::size_t i = 0; i < v.conditions.size(); ++i) {
    const Condition& c = v.conditions[i];
    out << i + 1 << ". " << c.clause << "\n";
    out << "   asks whether " << clause_meaning(c.clause) << ".\n";
    out << "   status: " << tri_word(c.holds) << (c.detail.empty() ? "" : " (" + c.detail + ")") << ".\n";
  }
  out << "\nConclusion: " << to_string(v.outcome);
  if (!v.reason.empty()) out << ", because " << v.reason;
  out << ".\n";
  if (v.witness) {
    out << "A nontrivial element with a finite conjugacy class is " << v.witness->element << " ("
        << to_string(v.witness->kind) << ")";
    if (!v.witness->known_class.empty()) {
      out << "; its class is {";
      for (std::size_t i = 0; i < v.witness->known_class.size(); ++i)
        out << (i ? ", " : "") << v.witness->known_class[i];
      out << "}";
    }
    out << ".\n";
  }
  if (v.outcome == Outcome::Unknown)
    out << "At least one condition could not be settled within the configured search bounds "
           "(ICCKIT_WORD_CUTOFF raises them).\n";
  return out.str();
}

}  // namespace icckit
