#pragma once

#include "eqtate/corpus.hpp"
#include "eqtate/spectral.hpp"

#include <functional>

namespace eqtate {

enum class Verdict { Pass, Fail, NotApplicable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::NotApplicable: return "NOT-APPLICABLE";
  }
  return "?";
}

struct CheckResult {
  std::string check;
  std::string anchor;   // stable theorem identifier
  std::string subject;  // corpus entry or complex id
  std::string inputs;
  std::string lhs, rhs;
  Verdict verdict = Verdict::NotApplicable;
  std::optional<long> slack;  // rhs - lhs (or lhs - rhs) for inequalities
  std::string note;
};

/// Stable identifiers of the statements under test.
namespace anchor {
inline constexpr const char* majoration = "ramified-places-upper-bound";
inline constexpr const char* minoration = "ramified-places-lower-bound";
inline constexpr const char* sphere_cyclic = "homology-sphere-invariants";
inline constexpr const char* cor_calcul = "gm-cohomology-from-inertia";
inline constexpr const char* duality = "gm-z-duality";
inline constexpr const char* egaltopar = "torsion-invariants-equality";
inline constexpr const char* localization = "localization-fixed-locus";
inline constexpr const char* degeneration = "e2-degeneration-fixed-locus";
}  // namespace anchor

namespace detail {

inline std::string group_str(const FinAbGroup& g) { return g.to_string(); }

/// dim over F_p of a group killed by p.
inline std::size_t fp_dim(const FinAbGroup& g, std::size_t p, const std::string& what) {
  const Int pp(static_cast<unsigned long>(p));
  for (const auto& t : g.torsion())
    if (t != pp) throw std::logic_error(what + " is not an F_p-vector space: " + g.to_string());
  if (g.free_rank() != 0) throw std::logic_error(what + " is infinite");
  return g.p_rank(pp);
}

inline std::size_t prime_order(const CorpusEntry& e, const char* check) {
  const std::size_t p = e.group->order();
  if (!e.group->is_cyclic() || !eqtate::is_prime(Int(static_cast<unsigned long>(p))))
    throw std::invalid_argument(std::string(check) + ": G must be cyclic of prime order");
  return p;
}

inline const GModule& need(const std::optional<GModule>& m, const char* what) {
  if (!m) throw std::invalid_argument(std::string("missing module data: ") + what);
  return *m;
}

inline CheckResult base_result(const char* check, const char* anchor, const CorpusEntry& e) {
  CheckResult r;
  r.check = check;
  r.anchor = anchor;
  r.subject = e.id;
  r.inputs = e.label_l + " / " + e.label_k + ", |G| = " + std::to_string(e.group->order()) +
             ", s = " + std::to_string(e.s) + ", s_bar = " + std::to_string(e.s_bar) +
             ", s0 = " + std::to_string(e.s0);
  return r;
}

inline void set_inequality(CheckResult& r, long small, long large) {
  r.lhs = std::to_string(small);
  r.rhs = std::to_string(large);
  r.slack = large - small;
  r.verdict = small <= large ? Verdict::Pass : Verdict::Fail;
}

}  // namespace detail

/// U_L as a G-module: the recorded extension when present, otherwise μ ⊕ U/μ.
inline GModule unit_module(const CorpusEntry& e) {
  if (e.unit_group) return *e.unit_group;
  GModule mu = e.mu.module(e.group);
  if (!e.units_mod_torsion) return mu;
  return direct_sum(mu, *e.units_mod_torsion);
}

inline CheckResult check_majoration(const CorpusEntry& e) {
  const std::size_t p = detail::prime_order(e, "check_majoration");
  CheckResult r = detail::base_result("majoration", anchor::majoration, e);
  const auto& u = detail::need(e.units_mod_torsion, "U_L/mu");
  const auto& cl = detail::need(e.class_group, "Cl(L)");
  const std::size_t h1u = detail::fp_dim(tate_cohomology(u, 1), p, "H^1(G; U/mu)");
  const std::size_t h0c = detail::fp_dim(tate_cohomology(cl, 0), p, "H^0(G; Cl(L))");
  detail::set_inequality(r, static_cast<long>(e.s), static_cast<long>(1 + h1u + h0c));
  r.note = "s <= 1 + dim H^1(G; U_L/mu) + dim H^0(G; Cl(L)) = 1 + " + std::to_string(h1u) + " + " +
           std::to_string(h0c) + (e.totally_imaginary_k ? "" : "; s counts finite places only");
  return r;
}

inline CheckResult check_minoration(const CorpusEntry& e) {
  const std::size_t p = detail::prime_order(e, "check_minoration");
  CheckResult r = detail::base_result("minoration", anchor::minoration, e);
  if (!e.cl_k_trivial) {
    r.verdict = Verdict::NotApplicable;
    r.note = "hypothesis Cl(K) = 0 unmet";
    return r;
  }
  const auto& cl = detail::need(e.class_group, "Cl(L)");
  const std::size_t h0c = detail::fp_dim(tate_cohomology(cl, 0), p, "H^0(G; Cl(L))");
  const std::size_t count = e.totally_imaginary_k ? e.s : e.s_bar;
  const long need = static_cast<long>(1 + h0c);
  r.lhs = std::to_string(count);
  r.rhs = std::to_string(need);
  r.slack = static_cast<long>(count) - need;
  r.verdict = static_cast<long>(count) >= need ? Verdict::Pass : Verdict::Fail;
  r.note = std::string(e.totally_imaginary_k ? "s" : "s_bar") + " >= 1 + dim H^0(G; Cl(L))";
  return r;
}

/// Finite places of K ramified in L, with their inertia groups.
inline std::vector<const PlaceRecord*> ramified_finite_places(const CorpusEntry& e) {
  std::vector<const PlaceRecord*> out;
  for (const auto& p : e.ramification.places)
    if (!p.archimedean && p.e > 1) out.push_back(&p);
  return out;
}

inline CheckResult check_sphere_cyclic(const CorpusEntry& e) {
  CheckResult r = detail::base_result("sphere_cyclic", anchor::sphere_cyclic, e);
  const std::size_t n = e.group->order();
  std::string unmet;
  if (!e.k_quadratic || *e.k_quadratic >= 0) unmet = "K imaginary quadratic";
  else if (!e.cl_k_trivial) unmet = "Cl(K) = 0";
  else if (!e.group->is_cyclic()) unmet = "G cyclic";
  else if (std::gcd(n, e.roots_of_unity_k) != 1) unmet = "gcd(|G|, |U_K|) = 1";
  if (!unmet.empty()) {
    r.verdict = Verdict::NotApplicable;
    r.note = "hypothesis " + unmet + " unmet";
    return r;
  }
  const auto& cl = detail::need(e.class_group, "Cl(L)");
  Int inertia = 1;
  for (auto* p : ramified_finite_places(e)) inertia *= static_cast<unsigned long>(p->inertia.size());
  const Int h1 = *tate_cohomology(cl, 1).order();
  const Int rhs = h1 * static_cast<unsigned long>(n);
  r.lhs = "|prod I_q| = " + inertia.get_str();
  r.rhs = "|H^1(G; Cl(L))| * |G| = " + rhs.get_str();
  bool ok = inertia == rhs;
  if (is_prime(Int(static_cast<unsigned long>(n)))) {
    const FinAbGroup inv = invariants(cl);
    const FinAbGroup expect = e.s >= 1 ? FinAbGroup::elementary(Int(static_cast<unsigned long>(n)), e.s - 1) : FinAbGroup();
    r.lhs += "; Cl(L)^G = " + inv.to_string();
    r.rhs += "; F_p^(s-1) = " + expect.to_string();
    ok = ok && e.s >= 1 && inv == expect;
  }
  r.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return r;
}

/// Ĥ^n_G(X; G_m) assembled from inertia data: ∏ I_q^ab in degree 0,
/// ∏ Z/e_q in degree 1, and the same group in every degree when G is cyclic.
inline std::map<int, FinAbGroup> gm_cohomology(const CorpusEntry& e, DegreeWindow window) {
  FinAbGroup h0, h1;
  for (auto* p : ramified_finite_places(e)) {
    h0 = h0 + abelianization(*e.group, p->inertia);
    h1 = h1 + FinAbGroup::cyclic(Int(p->e));
  }
  std::map<int, FinAbGroup> out;
  if (e.group->is_cyclic()) {
    for (int n = window.lo; n <= window.hi; ++n) out[n] = h1;
  } else {
    out[0] = h0;
    out[1] = h1;
  }
  return out;
}

inline CheckResult cor_calcul(const CorpusEntry& e, DegreeWindow window = {-3, 6}) {
  CheckResult r = detail::base_result("cor_calcul", anchor::cor_calcul, e);
  std::vector<std::string> problems;
  FinAbGroup h0;
  for (auto* p : ramified_finite_places(e)) {
    if (p->inertia.size() != static_cast<std::size_t>(p->e)) problems.push_back("|I| != e at " + p->label);
    const FinAbGroup ab = abelianization(*e.group, p->inertia);
    if (e.group->is_abelian() && *ab.order() != Int(static_cast<unsigned long>(p->inertia.size())))
      problems.push_back("I^ab != I at " + p->label);
    h0 = h0 + ab;
  }
  const auto gm = gm_cohomology(e, window);
  if (e.group->is_cyclic() && !(h0 == gm.at(window.lo)))
    problems.push_back("prod I^ab = " + h0.to_string() + " differs from prod Z/e = " + gm.at(window.lo).to_string());
  for (const auto& [n, claim] : e.claimed_gm) {
    auto it = gm.find(n);
    if (it == gm.end()) {
      problems.push_back("claim in degree " + std::to_string(n) + " outside the computed range");
    } else if (!(it->second == claim)) {
      problems.push_back("degree " + std::to_string(n) + ": claimed " + claim.to_string() + ", computed " +
                         it->second.to_string());
    }
  }
  r.lhs = "H^0 = " + (gm.count(0) ? gm.at(0).to_string() : std::string("?")) +
          ", H^1 = " + (gm.count(1) ? gm.at(1).to_string() : std::string("?"));
  r.rhs = "prod I_q^ab = " + h0.to_string();
  r.verdict = problems.empty() ? Verdict::Pass : Verdict::Fail;
  for (const auto& p : problems) r.note += (r.note.empty() ? "" : "; ") + p;
  if (r.note.empty() && e.group->is_cyclic()) r.note = "cyclic: identical in every degree of the window";
  return r;
}

/// One row of an E_2 grid: q -> (p -> group).
using Grid = std::map<int, std::map<int, FinAbGroup>>;

/// E_2^{p,q}(X; G_m) rows U_L, Cl(L), 0, Q/Z and the Z-side rows
/// Z, 0, Cl(L)^D, U_L^D on the columns `cols`.
inline std::pair<Grid, Grid> duality_grids(const CorpusEntry& e, DegreeWindow cols) {
  const GModule units = unit_module(e);
  const GModule& cl = detail::need(e.class_group, "Cl(L)");
  const GModule h2z = e.h2_z_override ? *e.h2_z_override : dual_module(cl);
  const GModule z = GModule::integers(e.group);
  Grid gm, zs;
  for (int p = cols.lo; p <= cols.hi; ++p) {
    gm[0][p] = tate_cohomology(units, p);
    gm[1][p] = tate_cohomology(cl, p);
    gm[2][p] = FinAbGroup();
    gm[3][p] = shifted_integral_identity(e.group, p);
    zs[0][p] = tate_cohomology(z, p);
    zs[1][p] = FinAbGroup();
    zs[2][p] = tate_cohomology(h2z, p);
    zs[3][p] = tate_cohomology_of_dual(units, p);
  }
  return {gm, zs};
}

inline CheckResult check_duality(const CorpusEntry& e, DegreeWindow window = {-3, 6}) {
  CheckResult r = detail::base_result("duality", anchor::duality, e);
  if (!e.group->is_cyclic()) {
    r.verdict = Verdict::NotApplicable;
    r.note = "hypothesis G cyclic unmet";
    return r;
  }
  std::vector<std::string> problems;
  // degree-wise: Ĥ^n(Z) := Ĥ^{n+1}(G_m), compared with Ĥ^{2-n}(G_m)
  const DegreeWindow wide{std::min(window.lo, 3 - window.hi), std::max(window.hi, 3 - window.lo)};
  const auto gm = gm_cohomology(e, wide);
  for (int n = window.lo; n <= window.hi; ++n) {
    const Int a = *gm.at(n).order(), b = *gm.at(3 - n).order();
    if (a != b) problems.push_back("|H^" + std::to_string(n) + "(G_m)| = " + a.get_str() + " vs |H^" +
                                   std::to_string(2 - n) + "(Z)| = " + b.get_str());
  }
  // E_2 grid: |E_2^{p,q}(G_m)| = |E_2^{-1-p,3-q}(Z)|
  const DegreeWindow cols{std::min(window.lo, -1 - window.hi), std::max(window.hi, -1 - window.lo)};
  const auto [g, z] = duality_grids(e, cols);
  std::size_t compared = 0;
  for (int q = 0; q <= 3; ++q)
    for (int p = window.lo; p <= window.hi; ++p) {
      const Int a = *g.at(q).at(p).order(), b = *z.at(3 - q).at(-1 - p).order();
      ++compared;
      if (a != b)
        problems.push_back("E2(" + std::to_string(p) + "," + std::to_string(q) + "): " + a.get_str() + " vs " + b.get_str());
    }
  r.lhs = "degree-wise |H^n(G_m)|, E2 grid (" + std::to_string(compared) + " cells)";
  r.rhs = "|H^(2-n)(Z)|, dual E2 grid";
  r.verdict = problems.empty() ? Verdict::Pass : Verdict::Fail;
  r.note = "cardinality level only; higher differentials are assumed dual and not checked";
  for (const auto& p : problems) r.note += "; " + p;
  return r;
}

/// Shared core of the equality Tors^G = F_p^(s-1) on both sides of the
/// dictionary. `s_is_hypothesis`: s >= 1 is assumed rather than concluded.
struct EgaltoparInput {
  std::string subject;
  std::string inputs;
  std::size_t p = 0;
  GModule torsion;
  std::size_t free_rank = 0;
  std::size_t s = 0;
  bool s_is_hypothesis = true;
  bool require_p_two = false;
};

inline CheckResult egaltopar_core(const EgaltoparInput& in) {
  CheckResult r;
  r.check = "egaltopar";
  r.anchor = anchor::egaltopar;
  r.subject = in.subject;
  r.inputs = in.inputs;
  if (in.free_rank != 0) {
    r.verdict = Verdict::NotApplicable;
    r.note = "hypothesis: free part vanishes (rank " + std::to_string(in.free_rank) + ")";
    return r;
  }
  if (in.s_is_hypothesis && in.s < 1) {
    r.verdict = Verdict::NotApplicable;
    r.note = "hypothesis s >= 1 unmet";
    return r;
  }
  const FinAbGroup inv = invariants(in.torsion);
  r.lhs = "Tors^G = " + inv.to_string();
  bool ok = true;
  if (in.require_p_two && in.p != 2) {
    ok = false;
    r.note = "conclusion p = 2 violated (p = " + std::to_string(in.p) + ")";
  }
  if (in.s < 1) {
    ok = false;
    r.rhs = "s >= 1";
    r.note += (r.note.empty() ? "" : "; ") + std::string("conclusion s >= 1 violated");
  } else {
    const FinAbGroup expect = FinAbGroup::elementary(Int(static_cast<unsigned long>(in.p)), in.s - 1);
    r.rhs = "F_p^(s-1) = " + expect.to_string();
    ok = ok && inv == expect;
  }
  r.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return r;
}

inline CheckResult check_egaltopar(const CorpusEntry& e) {
  const std::size_t p = detail::prime_order(e, "check_egaltopar");
  const GModule& cl = detail::need(e.class_group, "Cl(L)");
  const std::size_t rank = e.units_mod_torsion ? e.units_mod_torsion->ngens() : 0;
  auto r = egaltopar_core({e.id, detail::base_result("", "", e).inputs, p, cl, rank, e.s0, false, true});
  r.note += std::string(r.note.empty() ? "" : "; ") + "torsion = Cl(L), free = U_L/mu, s = s0";
  return r;
}

/// Topological side: M the complex, torsion and free part of H_1(M).
inline CheckResult check_egaltopar(const ComplexEntry& c) {
  const SimplicialGComplex& k = c.complex;
  const std::size_t p = k.group().order();
  const std::size_t s = c.s_claim ? *c.s_claim : fixed_subcomplex(k).components;
  auto [tor, fr] = torsion_split(homology_module(k, 1));
  auto r = egaltopar_core({c.id, "|G| = " + std::to_string(p) + ", s = " + std::to_string(s), p, tor, fr.ngens(), s,
                           true, false});
  r.note += std::string(r.note.empty() ? "" : "; ") + "torsion = H_1 tors, free = H_1 free, s = fixed circles";
  return r;
}

inline std::vector<CheckResult> check_complex(const ComplexEntry& c, DegreeWindow window = {-3, 6}) {
  std::vector<CheckResult> out;
  const auto& k = c.complex;
  const std::size_t p = k.group().order();
  const FixedLocus z = fixed_subcomplex(k);
  const std::size_t s = c.s_claim ? *c.s_claim : z.components;
  const std::string inputs = "|G| = " + std::to_string(p) + ", f-vector (" + std::to_string(k.count(0)) + "," +
                             std::to_string(k.count(1)) + "," + std::to_string(k.count(2)) + "," +
                             std::to_string(k.count(3)) + "), s = " + std::to_string(s) +
                             (c.s_claim ? " (claimed)" : "");
  {
    CheckResult r;
    r.check = "localization";
    r.anchor = anchor::localization;
    r.subject = c.id;
    r.inputs = inputs;
    try {
      auto rep = verify_localization(k, window);
      const FinAbGroup expect = p == 1 ? FinAbGroup() : FinAbGroup::elementary(Int(static_cast<unsigned long>(p)), s);
      bool ok = true;
      for (int n = window.lo; n <= window.hi; ++n) {
        if (!(rep.total.at(n) == expect)) {
          ok = false;
          r.note += "H^" + std::to_string(n) + " = " + rep.total.at(n).to_string() + "; ";
        }
        if (!(rep.fixed_locus.at(n) == expect)) ok = false;
      }
      r.lhs = "H^n_G(M), n in [" + std::to_string(window.lo) + "," + std::to_string(window.hi) + "] = " +
              rep.total.at(window.lo).to_string();
      r.rhs = "(Z/p)^s = " + expect.to_string();
      r.verdict = ok ? Verdict::Pass : Verdict::Fail;
    } catch (const std::invalid_argument& e) {
      r.verdict = Verdict::NotApplicable;
      r.note = e.what();
    }
    out.push_back(r);
  }
  {
    CheckResult r;
    r.check = "e2_degeneration";
    r.anchor = anchor::degeneration;
    r.subject = c.id;
    r.inputs = inputs;
    if (p == 1 || !is_prime(Int(static_cast<unsigned long>(p)))) {
      r.verdict = Verdict::NotApplicable;
      r.note = "hypothesis |G| prime unmet";
    } else {
      const auto cz = cochain_complex(z.complex);
      const auto ab = equivariant_cohomology_range(cz, window);
      const auto page = e2_page(cz, diagonal_columns(cz, window));
      const auto rep = diagonal_cardinality_check(page, ab);
      Int expect = 1;
      for (std::size_t i = 0; i < s; ++i) expect *= static_cast<unsigned long>(p);
      bool ok = rep.all_degenerate();
      for (const auto& d : rep.diagonals)
        if (d.product != expect) ok = false;
      // the total complex of M only needs the inequality
      const auto cm = cochain_complex(k);
      const auto page_m = e2_page(cm, diagonal_columns(cm, window));
      const auto rep_m = diagonal_cardinality_check(page_m, equivariant_cohomology_range(cm, window));
      if (!rep_m.all_consistent()) ok = false;
      r.lhs = "prod |E2| on each diagonal of the fixed locus = " + rep.diagonals.front().product.get_str();
      r.rhs = "|abutment| = p^s = " + expect.get_str();
      r.note = std::string("fixed locus ") + (rep.all_degenerate() ? "degenerate" : "not degenerate") + "; M " +
               (rep_m.all_degenerate() ? "degenerate" : "not degenerate") +
               (rep_m.all_consistent() ? ", product >= abutment" : ", product < abutment");
      r.verdict = ok ? Verdict::Pass : Verdict::Fail;
    }
    out.push_back(r);
  }
  out.push_back(check_egaltopar(c));
  return out;
}

/// Every arithmetic check on one entry. Exceptions raised by a check whose
/// structural precondition fails become NOT-APPLICABLE; data errors FAIL.
inline std::vector<CheckResult> check_entry(const CorpusEntry& e, DegreeWindow window = {-3, 6}) {
  using Fn = std::function<CheckResult()>;
  const std::vector<std::pair<std::string, Fn>> checks{
      {"majoration", [&] { return check_majoration(e); }},
      {"minoration", [&] { return check_minoration(e); }},
      {"sphere_cyclic", [&] { return check_sphere_cyclic(e); }},
      {"cor_calcul", [&] { return cor_calcul(e, window); }},
      {"duality", [&] { return check_duality(e, window); }},
      {"egaltopar", [&] { return check_egaltopar(e); }},
  };
  std::vector<CheckResult> out;
  for (const auto& [name, fn] : checks) {
    try {
      out.push_back(fn());
    } catch (const std::invalid_argument& ex) {
      CheckResult r = detail::base_result(name.c_str(), "", e);
      const std::string msg = ex.what();
      r.verdict = msg.find("missing module data") != std::string::npos ? Verdict::Fail : Verdict::NotApplicable;
      r.note = msg;
      out.push_back(r);
    }
  }
  static const std::map<std::string, const char*> anchors{
      {"majoration", anchor::majoration}, {"minoration", anchor::minoration},
      {"sphere_cyclic", anchor::sphere_cyclic}, {"cor_calcul", anchor::cor_calcul},
      {"duality", anchor::duality}, {"egaltopar", anchor::egaltopar}};
  for (auto& r : out) r.anchor = anchors.at(r.check);
  return out;
}

struct Report {
  std::vector<CheckResult> results;
  std::size_t count(Verdict v) const {
    return std::count_if(results.begin(), results.end(), [&](const auto& r) { return r.verdict == v; });
  }
  bool ok() const { return count(Verdict::Fail) == 0; }
};

inline Report run_arithmetic(const std::vector<CorpusEntry>& corpus, DegreeWindow window = {-3, 6}) {
  Report rep;
  for (const auto& e : corpus)
    for (auto& r : check_entry(e, window)) rep.results.push_back(std::move(r));
  return rep;
}

inline Report run_topology(const std::vector<ComplexEntry>& complexes, DegreeWindow window = {-3, 6}) {
  Report rep;
  for (const auto& c : complexes)
    for (auto& r : check_complex(c, window)) rep.results.push_back(std::move(r));
  return rep;
}

inline nlohmann::json to_json(const Report& rep) {
  nlohmann::json out = nlohmann::json::object();
  out["summary"] = {{"pass", rep.count(Verdict::Pass)},
                    {"fail", rep.count(Verdict::Fail)},
                    {"not_applicable", rep.count(Verdict::NotApplicable)}};
  out["results"] = nlohmann::json::array();
  for (const auto& r : rep.results) {
    nlohmann::json j{{"check", r.check}, {"anchor", r.anchor}, {"subject", r.subject}, {"inputs", r.inputs},
                     {"lhs", r.lhs},     {"rhs", r.rhs},       {"verdict", to_string(r.verdict)}, {"note", r.note}};
    j["slack"] = r.slack ? nlohmann::json(*r.slack) : nlohmann::json(nullptr);
    out["results"].push_back(std::move(j));
  }
  return out;
}

inline std::string to_markdown(const Report& rep) {
  auto esc = [](std::string s) {
    std::string o;
    for (char c : s) o += c == '|' ? std::string("\\|") : std::string(1, c);
    return o;
  };
  std::ostringstream os;
  os << "| subject | check | anchor | lhs | rhs | slack | verdict | note |\n";
  os << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : rep.results)
    os << "| " << esc(r.subject) << " | " << r.check << " | " << r.anchor << " | " << esc(r.lhs) << " | "
       << esc(r.rhs) << " | " << (r.slack ? std::to_string(*r.slack) : "") << " | " << to_string(r.verdict) << " | "
       << esc(r.note) << " |\n";
  os << "\n" << rep.count(Verdict::Pass) << " PASS, " << rep.count(Verdict::Fail) << " FAIL, "
     << rep.count(Verdict::NotApplicable) << " NOT-APPLICABLE\n";
  return os.str();
}

}  // namespace eqtate
