#pragma once

#include "eqtate/numberfield.hpp"
#include "eqtate/simplicial.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>

namespace eqtate {

/// Raised for malformed corpus files; the message names the offending field
/// as a JSON pointer.
class CorpusError : public std::runtime_error {
 public:
  CorpusError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// μ_L as Z/w with σ_i(ζ) = ζ^{k_i} for each group generator.
struct RootsOfUnity {
  Int order = 2;
  std::vector<Int> exponents;

  GModule module(const GroupPtr& g) const {
    std::vector<IntMatrix> act;
    for (const auto& k : exponents) act.push_back(IntMatrix::diagonal({k}));
    return GModule::with_diagonal_relations(g, {order}, std::move(act));
  }
};

struct CorpusEntry {
  std::string id;
  std::string label_l, label_k;
  GroupPtr group;
  RamificationRecord ramification;
  std::optional<Int> k_quadratic;  // K = Q(√m); nullopt for K = Q
  std::size_t s = 0, s_bar = 0, s0 = 0;
  std::optional<GModule> class_group;  // Cl(L)
  std::optional<GModule> units_mod_torsion;  // U_L/μ
  std::optional<GModule> unit_group;  // U_L, when the full extension is recorded
  RootsOfUnity mu;
  bool totally_imaginary_l = false;
  bool totally_imaginary_k = false;
  bool cl_k_trivial = false;
  std::size_t roots_of_unity_k = 2;  // |U_K| for imaginary quadratic or Q
  std::map<int, FinAbGroup> claimed_gm;  // optional claims for Ĥ^n_G(X; G_m)
  std::optional<GModule> h2_z_override;  // optional H^2(X; Z) presentation
  std::map<std::string, std::string> provenance;
};

struct ComplexEntry {
  std::string id;
  SimplicialGComplex complex;
  std::optional<std::size_t> s_claim;
  std::string provenance;
};

namespace detail {

using nlohmann::json;

inline const json& field(const json& j, const std::string& key, const std::string& at) {
  if (!j.is_object()) throw CorpusError(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw CorpusError(at + "/" + key, "missing required field");
  return *it;
}

inline Int as_int(const json& j, const std::string& at) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    Int v;
    if (v.set_str(j.get<std::string>(), 10) == 0) return v;
  }
  throw CorpusError(at, "expected an integer");
}

inline std::size_t as_size(const json& j, const std::string& at) {
  Int v = as_int(j, at);
  if (v < 0) throw CorpusError(at, "expected a non-negative integer");
  return v.get_ui();
}

inline std::string as_string(const json& j, const std::string& at) {
  if (!j.is_string()) throw CorpusError(at, "expected a string");
  return j.get<std::string>();
}

inline bool as_bool(const json& j, const std::string& at) {
  if (!j.is_boolean()) throw CorpusError(at, "expected a boolean");
  return j.get<bool>();
}

inline const json& as_array(const json& j, const std::string& at) {
  if (!j.is_array()) throw CorpusError(at, "expected an array");
  return j;
}

/// Row-major matrix with a fixed number of rows (columns may be zero).
inline IntMatrix as_matrix(const json& j, std::size_t rows, std::optional<std::size_t> cols,
                           const std::string& at) {
  as_array(j, at);
  if (j.empty()) {
    if (rows != 0 && cols.value_or(0) != 0) throw CorpusError(at, "expected " + std::to_string(rows) + " rows");
    return IntMatrix(rows, cols.value_or(0));
  }
  if (j.size() != rows) throw CorpusError(at, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  std::size_t c = cols.value_or(as_array(j[0], at + "/0").size());
  IntMatrix m(rows, c);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rat = at + "/" + std::to_string(r);
    as_array(j[r], rat);
    if (j[r].size() != c) throw CorpusError(rat, "ragged row: expected " + std::to_string(c) + " entries");
    for (std::size_t k = 0; k < c; ++k) m(r, k) = as_int(j[r][k], rat + "/" + std::to_string(k));
  }
  return m;
}

inline FiniteGroup parse_group(const json& j, const std::string& at) {
  if (j.contains("type")) {
    const std::string type = as_string(j["type"], at + "/type");
    if (type == "cyclic") return FiniteGroup::cyclic(as_size(field(j, "order", at), at + "/order"));
    if (type == "klein") return FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    throw CorpusError(at + "/type", "unknown group type '" + type + "'");
  }
  const json& t = as_array(field(j, "table", at), at + "/table");
  FiniteGroup::Table table;
  for (std::size_t r = 0; r < t.size(); ++r) {
    std::vector<FiniteGroup::Element> row;
    for (std::size_t c = 0; c < as_array(t[r], at + "/table/" + std::to_string(r)).size(); ++c)
      row.push_back(as_size(t[r][c], at + "/table/" + std::to_string(r) + "/" + std::to_string(c)));
    table.push_back(std::move(row));
  }
  std::vector<FiniteGroup::Element> gens;
  for (std::size_t i = 0; i < as_array(field(j, "generators", at), at + "/generators").size(); ++i)
    gens.push_back(as_size(j["generators"][i], at + "/generators/" + std::to_string(i)));
  try {
    return FiniteGroup(std::move(table), std::move(gens));
  } catch (const std::invalid_argument& e) {
    throw CorpusError(at, e.what());
  }
}

inline GModule parse_module(const json& j, const GroupPtr& g, const std::string& at) {
  const std::size_t n = as_size(field(j, "generators", at), at + "/generators");
  IntMatrix rel = as_matrix(field(j, "relations", at), n, std::nullopt, at + "/relations");
  const json& acts = as_array(field(j, "action", at), at + "/action");
  if (acts.size() != g->generators().size())
    throw CorpusError(at + "/action", "expected one matrix per group generator (" +
                                          std::to_string(g->generators().size()) + ")");
  std::vector<IntMatrix> act;
  for (std::size_t i = 0; i < acts.size(); ++i)
    act.push_back(as_matrix(acts[i], n, n, at + "/action/" + std::to_string(i)));
  try {
    return GModule(g, std::move(rel), std::move(act));
  } catch (const std::invalid_argument& e) {
    throw CorpusError(at, std::string("module invariant violated: ") + e.what());
  }
}

inline std::vector<FiniteGroup::Element> parse_elements(const json& j, const std::string& at) {
  std::vector<FiniteGroup::Element> out;
  for (std::size_t i = 0; i < as_array(j, at).size(); ++i) out.push_back(as_size(j[i], at + "/" + std::to_string(i)));
  return out;
}

inline FinAbGroup parse_abgroup(const json& j, const std::string& at) {
  IntVector d;
  for (std::size_t i = 0; i < as_array(j, at).size(); ++i) d.push_back(as_int(j[i], at + "/" + std::to_string(i)));
  return FinAbGroup::from_diagonal(d);
}

inline std::string provenance_of(const json& entry, const std::string& key, const std::string& at) {
  const json& prov = field(entry, "provenance", at);
  if (!prov.contains(key)) throw CorpusError(at + "/provenance/" + key, "missing provenance for a numeric field");
  std::string v = as_string(prov[key], at + "/provenance/" + key);
  if (v.rfind("derived-by:", 0) != 0) throw CorpusError(at + "/provenance/" + key, "provenance must start with 'derived-by:'");
  return v;
}

inline RamificationRecord parse_ramification(const json& j, const GroupPtr& g, const std::string& at,
                                             std::string& provenance, const json& entry,
                                             const std::string& entry_at) {
  RamificationRecord rec;
  if (j.contains("engine")) {
    const std::string engine = as_string(j["engine"], at + "/engine");
    try {
      if (engine == "biquadratic") {
        rec = biquad_ramification(QuadField(as_int(field(j, "k", at), at + "/k")),
                                  as_int(field(j, "adjoin", at), at + "/adjoin"));
      } else if (engine == "quadratic") {
        rec = quad_ramification(QuadField(as_int(field(j, "m", at), at + "/m")));
      } else {
        throw CorpusError(at + "/engine", "unknown engine '" + engine + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw CorpusError(at, e.what());
    }
    if (rec.group->table() != g->table()) throw CorpusError(at, "engine group differs from the entry group");
    rec.group = g;
    provenance = "derived-by: built-in " + engine + " splitting engine";
    return rec;
  }
  rec.group = g;
  rec.degree = g->order();
  const json& places = as_array(field(j, "places", at), at + "/places");
  for (std::size_t i = 0; i < places.size(); ++i) {
    const std::string pat = at + "/places/" + std::to_string(i);
    const json& p = places[i];
    PlaceRecord pr;
    pr.label = as_string(field(p, "label", pat), pat + "/label");
    pr.archimedean = p.contains("archimedean") && as_bool(p["archimedean"], pat + "/archimedean");
    if (!pr.archimedean) pr.residue_char = as_int(field(p, "residue_char", pat), pat + "/residue_char");
    pr.e = static_cast<int>(as_size(field(p, "e", pat), pat + "/e"));
    pr.f = static_cast<int>(as_size(field(p, "f", pat), pat + "/f"));
    pr.g = static_cast<int>(as_size(field(p, "g", pat), pat + "/g"));
    pr.decomposition = parse_elements(field(p, "decomposition", pat), pat + "/decomposition");
    pr.inertia = parse_elements(field(p, "inertia", pat), pat + "/inertia");
    rec.places.push_back(std::move(pr));
  }
  try {
    rec.validate();
  } catch (const std::invalid_argument& e) {
    throw CorpusError(at, e.what());
  }
  provenance = provenance_of(entry, "ramification", entry_at);
  return rec;
}

inline CorpusEntry parse_entry(const json& j, const std::string& at) {
  CorpusEntry e;
  e.id = as_string(field(j, "id", at), at + "/id");
  e.label_l = as_string(field(j, "L", at), at + "/L");
  e.label_k = as_string(field(j, "K", at), at + "/K");
  e.group = make_group(parse_group(field(j, "group", at), at + "/group"));
  e.ramification = parse_ramification(field(j, "ramification", at), e.group, at + "/ramification",
                                      e.provenance["ramification"], j, at);
  e.s = e.ramification.s();
  e.s_bar = e.ramification.s_bar();
  e.s0 = e.ramification.s0();
  if (j.contains("counts")) {
    const json& c = j["counts"];
    const std::pair<const char*, std::size_t> expect[] = {{"s", e.s}, {"s_bar", e.s_bar}, {"s0", e.s0}};
    for (auto [key, v] : expect)
      if (c.contains(key) && as_size(c[key], at + "/counts/" + key) != v)
        throw CorpusError(at + "/counts/" + key, std::string("invariant violated: stated ") + key +
                                                     " disagrees with the ramification record (" + std::to_string(v) + ")");
  }
  if (e.s > e.s_bar) throw CorpusError(at, "invariant violated: s <= s_bar");

  // base field
  const json& base = field(j, "base", at);
  if (base.is_string() && base.get<std::string>() == "Q") {
    e.cl_k_trivial = true;
    e.totally_imaginary_k = false;
    e.roots_of_unity_k = 2;
    e.provenance["base"] = "derived-by: K = Q";
  } else {
    const Int m = as_int(field(base, "quadratic", at + "/base"), at + "/base/quadratic");
    try {
      QuadField k(m);
      e.k_quadratic = m;
      e.totally_imaginary_k = k.is_imaginary();
      e.roots_of_unity_k = k.roots_of_unity();
      if (k.is_imaginary()) {
        e.cl_k_trivial = quad_class_group(k.discriminant()).is_trivial();
        e.provenance["base"] = "derived-by: built-in reduced-form class group";
      } else {
        e.cl_k_trivial = as_bool(field(base, "cl_trivial", at + "/base"), at + "/base/cl_trivial");
        e.provenance["base"] = provenance_of(j, "base", at);
      }
    } catch (const std::invalid_argument& ex) {
      throw CorpusError(at + "/base", ex.what());
    }
  }
  if (base.is_object() && base.contains("cl_trivial") &&
      as_bool(base["cl_trivial"], at + "/base/cl_trivial") != e.cl_k_trivial)
    throw CorpusError(at + "/base/cl_trivial", "invariant violated: stated Cl(K) triviality disagrees with computation");

  e.totally_imaginary_l = as_bool(field(j, "totally_imaginary_L", at), at + "/totally_imaginary_L");
  e.provenance["totally_imaginary_L"] = provenance_of(j, "totally_imaginary_L", at);
  if (e.totally_imaginary_k && !e.totally_imaginary_l)
    throw CorpusError(at + "/totally_imaginary_L", "invariant violated: L contains a totally imaginary K");

  if (j.contains("class_group")) {
    e.class_group = parse_module(j["class_group"], e.group, at + "/class_group");
    if (!e.class_group->is_finite()) throw CorpusError(at + "/class_group", "invariant violated: Cl(L) must be finite");
    e.provenance["class_group"] = provenance_of(j, "class_group", at);
  }
  if (j.contains("units_mod_torsion")) {
    e.units_mod_torsion = parse_module(j["units_mod_torsion"], e.group, at + "/units_mod_torsion");
    if (!e.units_mod_torsion->abelian_group().torsion().empty())
      throw CorpusError(at + "/units_mod_torsion", "invariant violated: U_L/mu must be torsion-free");
    e.provenance["units_mod_torsion"] = provenance_of(j, "units_mod_torsion", at);
  }
  if (j.contains("unit_group")) {
    e.unit_group = parse_module(j["unit_group"], e.group, at + "/unit_group");
    e.provenance["unit_group"] = provenance_of(j, "unit_group", at);
  }
  {
    const json& mu = field(j, "roots_of_unity", at);
    const std::string mat = at + "/roots_of_unity";
    e.mu.order = as_int(field(mu, "order", mat), mat + "/order");
    if (e.mu.order < 2 || e.mu.order % 2 != 0) throw CorpusError(mat + "/order", "invariant violated: |mu_L| is even and >= 2");
    for (std::size_t i = 0; i < as_array(field(mu, "action", mat), mat + "/action").size(); ++i)
      e.mu.exponents.push_back(as_int(mu["action"][i], mat + "/action/" + std::to_string(i)));
    if (e.mu.exponents.size() != e.group->generators().size())
      throw CorpusError(mat + "/action", "expected one exponent per group generator");
    try {
      e.mu.module(e.group);
    } catch (const std::invalid_argument& ex) {
      throw CorpusError(mat, std::string("module invariant violated: ") + ex.what());
    }
    e.provenance["roots_of_unity"] = provenance_of(j, "roots_of_unity", at);
  }
  if (!e.unit_group && e.units_mod_torsion && e.units_mod_torsion->ngens() > 0 &&
      std::gcd(e.group->order(), e.mu.order.get_ui()) != 1)
    throw CorpusError(at + "/unit_group", "missing required field: U_L need not split as mu + U_L/mu when gcd(|G|, |mu|) > 1");
  if (e.unit_group) {
    // torsion and rank of U_L must match μ_L and U_L/μ
    const FinAbGroup a = e.unit_group->abelian_group();
    const FinAbGroup expect_tor = FinAbGroup::cyclic(e.mu.order);
    const std::size_t rank = e.units_mod_torsion ? e.units_mod_torsion->ngens() : 0;
    if (!(FinAbGroup::from_diagonal(a.torsion()) == expect_tor) || a.free_rank() != rank)
      throw CorpusError(at + "/unit_group", "invariant violated: U_L disagrees with mu_L and U_L/mu");
  }
  if (j.contains("claims")) {
    const json& c = j["claims"];
    if (c.contains("gm_cohomology")) {
      const json& g = c["gm_cohomology"];
      if (!g.is_object()) throw CorpusError(at + "/claims/gm_cohomology", "expected an object keyed by degree");
      for (auto it = g.begin(); it != g.end(); ++it) {
        int n = 0;
        try {
          n = std::stoi(it.key());
        } catch (...) {
          throw CorpusError(at + "/claims/gm_cohomology/" + it.key(), "degree key is not an integer");
        }
        e.claimed_gm[n] = parse_abgroup(it.value(), at + "/claims/gm_cohomology/" + it.key());
      }
    }
    if (c.contains("h2_z")) e.h2_z_override = parse_module(c["h2_z"], e.group, at + "/claims/h2_z");
  }
  return e;
}

inline nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError(path, "cannot open file");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw CorpusError(path, std::string("JSON syntax error: ") + e.what());
  }
}

inline SimplicialGComplex build_complex(const json& j, const std::string& at) {
  if (j.contains("builder")) {
    const json& b = j["builder"];
    const std::string bat = at + "/builder";
    const std::string kind = as_string(field(b, "kind", bat), bat + "/kind");
    const std::size_t p = as_size(field(b, "p", bat), bat + "/p");
    if (!eqtate::is_prime(Int(static_cast<unsigned long>(p)))) throw CorpusError(bat + "/p", "p must be prime");
    try {
      if (kind == "branched_join") return branched_join(p, as_size(field(b, "m", bat), bat + "/m"));
      if (kind == "free_join") return free_join(p);
    } catch (const std::invalid_argument& e) {
      throw CorpusError(bat, e.what());
    }
    throw CorpusError(bat + "/kind", "unknown builder '" + kind + "'");
  }
  GroupPtr g = make_group(parse_group(field(j, "group", at), at + "/group"));
  const std::size_t nv = as_size(field(j, "vertices", at), at + "/vertices");
  std::vector<Simplex> facets;
  const json& fs = as_array(field(j, "facets", at), at + "/facets");
  for (std::size_t i = 0; i < fs.size(); ++i) {
    Simplex s;
    for (std::size_t k = 0; k < as_array(fs[i], at + "/facets/" + std::to_string(i)).size(); ++k)
      s.push_back(as_size(fs[i][k], at + "/facets/" + std::to_string(i) + "/" + std::to_string(k)));
    facets.push_back(std::move(s));
  }
  std::vector<Permutation> perms;
  const json& ps = as_array(field(j, "generator_perms", at), at + "/generator_perms");
  for (std::size_t i = 0; i < ps.size(); ++i) {
    Permutation p;
    for (std::size_t k = 0; k < as_array(ps[i], at + "/generator_perms/" + std::to_string(i)).size(); ++k)
      p.push_back(as_size(ps[i][k], at + "/generator_perms/" + std::to_string(i) + "/" + std::to_string(k)));
    perms.push_back(std::move(p));
  }
  try {
    return SimplicialGComplex::from_facets(nv, facets, g, perms);
  } catch (const std::invalid_argument& e) {
    throw CorpusError(at, e.what());
  }
}

}  // namespace detail

/// Parses and validates a corpus: a JSON array of entries.
inline std::vector<CorpusEntry> parse_corpus(const nlohmann::json& j, const std::string& origin = "") {
  if (!j.is_array()) throw CorpusError(origin + "#", "top level must be an array of entries");
  std::vector<CorpusEntry> out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(detail::parse_entry(j[i], origin + "#/" + std::to_string(i)));
    if (!ids.insert(out.back().id).second) throw CorpusError(origin + "#/" + std::to_string(i) + "/id", "duplicate id");
  }
  return out;
}

inline std::vector<CorpusEntry> load_corpus(const std::string& path) { return parse_corpus(detail::read_json(path), path); }

inline std::vector<ComplexEntry> parse_complexes(const nlohmann::json& j, const std::string& origin = "") {
  if (!j.is_array()) throw CorpusError(origin + "#", "top level must be an array of complexes");
  std::vector<ComplexEntry> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = origin + "#/" + std::to_string(i);
    const auto& e = j[i];
    ComplexEntry c{detail::as_string(detail::field(e, "id", at), at + "/id"), detail::build_complex(e, at), std::nullopt,
                   e.contains("provenance") ? detail::as_string(e["provenance"], at + "/provenance") : ""};
    if (e.contains("s_claim")) c.s_claim = detail::as_size(e["s_claim"], at + "/s_claim");
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<ComplexEntry> load_complexes(const std::string& path) {
  return parse_complexes(detail::read_json(path), path);
}

}  // namespace eqtate
