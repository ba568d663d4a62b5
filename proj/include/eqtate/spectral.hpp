#pragma once

#include "eqtate/tate.hpp"

#include <functional>
#include <map>

namespace eqtate {

/// Bounded cochain complex of G-modules C^lo -> ... -> C^hi.
/// differentials[i] maps C^{lo+i} to C^{lo+i+1} on generators.
class GCochainComplex {
 public:
  GCochainComplex(GroupPtr group, int lo, std::vector<GModule> modules,
                  std::vector<IntMatrix> differentials)
      : group_(std::move(group)),
        lo_(lo),
        modules_(std::move(modules)),
        differentials_(std::move(differentials)) {
    validate();
  }

  /// M placed in a single degree.
  static GCochainComplex concentrated(const GModule& m, int degree = 0) {
    return GCochainComplex(m.group_ptr(), degree, {m}, {});
  }

  const GroupPtr& group_ptr() const { return group_; }
  const FiniteGroup& group() const { return *group_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(modules_.size()) - 1; }
  bool in_range(int q) const { return q >= lo_ && q <= hi(); }

  const GModule& module(int q) const { return modules_.at(static_cast<std::size_t>(q - lo_)); }

  std::size_t ngens(int q) const { return in_range(q) ? module(q).ngens() : 0; }

  /// d^q : C^q -> C^{q+1}; an empty-shaped matrix outside the range.
  IntMatrix differential(int q) const {
    if (in_range(q) && in_range(q + 1)) return differentials_[static_cast<std::size_t>(q - lo_)];
    return IntMatrix(ngens(q + 1), ngens(q));
  }

  IntMatrix relations(int q) const {
    return in_range(q) ? module(q).relations() : IntMatrix(0, 0);
  }

  /// H^q(C) with its lattice data (kernel modulo image, relations included).
  Subquotient cohomology_subquotient(int q) const {
    return presented_homology(differential(q - 1), relations(q), differential(q), relations(q + 1));
  }

  FinAbGroup cohomology(int q) const { return cohomology_subquotient(q).group(); }

  /// H^q(C) as a G-module, action transported from C^q.
  GModule cohomology_module(int q) const {
    if (!in_range(q)) return GModule::trivial(group_, FinAbGroup());
    return GModule::transport(group_, cohomology_subquotient(q), module(q).generator_action());
  }

  /// C[k] with C[k]^n = C^{n+k} and differential (-1)^k d.
  GCochainComplex shifted(int k) const {
    std::vector<IntMatrix> d = differentials_;
    if (k % 2 != 0)
      for (auto& m : d) m = Int(-1) * m;
    return GCochainComplex(group_, lo_ - k, modules_, std::move(d));
  }

 private:
  void validate() {
    if (modules_.empty()) throw std::invalid_argument("GCochainComplex: no modules");
    if (differentials_.size() + 1 != modules_.size())
      throw std::invalid_argument("GCochainComplex: need one differential between consecutive modules");
    for (const auto& m : modules_)
      if (m.group().table() != group_->table())
        throw std::invalid_argument("GCochainComplex: module over a different group");
    for (std::size_t i = 0; i < differentials_.size(); ++i) {
      const GModule& src = modules_[i];
      const GModule& dst = modules_[i + 1];
      const IntMatrix& d = differentials_[i];
      if (d.rows() != dst.ngens() || d.cols() != src.ngens())
        throw std::invalid_argument("GCochainComplex: differential has wrong shape");
      LatticeSolver rel(dst.relations());
      if (!rel.contains_columns(d * src.relations()))
        throw std::invalid_argument("GCochainComplex: differential does not respect relations");
      for (std::size_t s = 0; s < group_->generators().size(); ++s)
        if (!rel.contains_columns(d * src.generator_action()[s] - dst.generator_action()[s] * d))
          throw std::invalid_argument("GCochainComplex: differential is not G-equivariant");
      if (i + 1 < differentials_.size()) {
        LatticeSolver rel2(modules_[i + 2].relations());
        if (!rel2.contains_columns(differentials_[i + 1] * d))
          throw std::invalid_argument("GCochainComplex: consecutive differentials do not compose to zero");
      }
    }
  }

  GroupPtr group_;
  int lo_;
  std::vector<GModule> modules_;
  std::vector<IntMatrix> differentials_;
};

/// Total complex Tot^n = ⊕_q T^{n-q}(C^q) of a complete resolution against C.
/// Sign convention: D = δ + (-1)^p d on T^p(C^q), with δ the Tate
/// differential and d the differential of C.
class TotalComplex {
 public:
  TotalComplex(const CompleteResolution& res, const GCochainComplex& c) : res_(res), c_(c) {}

  bool supports(int n) const {
    for (int p = n - 1 - c_.hi(); p <= n - c_.lo(); ++p)
      if (!res_.supports(p)) return false;
    return true;
  }

  /// Generator offset of the block T^{n-q}(C^q) inside Tot^n, and the rank.
  std::size_t offset(int n, int q) const {
    std::size_t o = 0;
    for (int j = c_.lo(); j < q; ++j) o += block_rank(n, j);
    return o;
  }
  std::size_t rank(int n) const { return offset(n, c_.hi() + 1); }

  IntMatrix relations(int n) const {
    IntMatrix r(rank(n), 0);
    for (int q = c_.lo(); q <= c_.hi(); ++q) {
      IntMatrix block = res_.cochain_relations(n - q, c_.module(q));
      IntMatrix placed(rank(n), block.cols());
      placed.put(offset(n, q), 0, block);
      r = hstack(r, placed);
    }
    return r;
  }

  /// D : Tot^n -> Tot^{n+1}.
  IntMatrix differential(int n) const {
    IntMatrix d(rank(n + 1), rank(n));
    for (int q = c_.lo(); q <= c_.hi(); ++q) {
      const int p = n - q;
      const GModule& m = c_.module(q);
      d.put(offset(n + 1, q), offset(n, q), res_.cochain_differential(p, m));
      if (q < c_.hi()) {
        IntMatrix v = block_repeat(c_.differential(q), res_.tate_rank(p));
        if (p % 2 != 0) v = Int(-1) * v;
        d.put(offset(n + 1, q + 1), offset(n, q), v);
      }
    }
    return d;
  }

  FinAbGroup cohomology(int n) const {
    if (!supports(n)) throw std::out_of_range("TotalComplex: degree outside resolution window");
    return presented_homology(differential(n - 1), relations(n), differential(n), relations(n + 1))
        .group();
  }

 private:
  std::size_t block_rank(int n, int q) const {
    return res_.tate_rank(n - q) * c_.module(q).ngens();
  }

  const CompleteResolution& res_;
  const GCochainComplex& c_;
};

/// Resolution adequate for total degrees in `window` of a complex spanning
/// degrees [lo, hi]: periodic for cyclic groups, kernel-built otherwise.
inline CompleteResolution resolution_for(const GroupPtr& g, DegreeWindow window, int lo = 0,
                                         int hi = 0) {
  if (g->is_cyclic()) return CompleteResolution::periodic(g);
  const int need = std::max({window.hi - lo + 1, hi - window.lo + 2, 1});
  return CompleteResolution::from_kernels(g, static_cast<std::size_t>(need));
}

/// Ĥ^n_G(C) via the total complex.
inline FinAbGroup equivariant_cohomology(const GCochainComplex& c, int n, DegreeWindow window = {}) {
  if (!c.group().is_cyclic() && !window.contains(n))
    throw std::out_of_range("equivariant_cohomology: degree outside window");
  const auto res = resolution_for(c.group_ptr(), window, c.lo(), c.hi());
  return TotalComplex(res, c).cohomology(n);
}

/// Ĥ^n_G(C) for every n in `window`, sharing one resolution.
inline std::map<int, FinAbGroup> equivariant_cohomology_range(const GCochainComplex& c,
                                                              DegreeWindow window) {
  const auto res = resolution_for(c.group_ptr(), window, c.lo(), c.hi());
  TotalComplex tot(res, c);
  std::map<int, FinAbGroup> out;
  for (int n = window.lo; n <= window.hi; ++n) out.emplace(n, tot.cohomology(n));
  return out;
}

/// Page E_r^{p,q} on a finite window of columns p and rows q.
class TatePage {
 public:
  TatePage(std::size_t group_order, int r = 2) : group_order_(group_order), r_(r) {}

  void set(int p, int q, FinAbGroup g) {
    if (!g.is_trivial()) {
      const Int e = g.exponent();
      if (sgn(e) == 0 || !mpz_divisible_p(Int(group_order_).get_mpz_t(), e.get_mpz_t()))
        throw std::logic_error("TatePage: entry not annihilated by |G|");
    }
    entries_[{p, q}] = std::move(g);
  }

  bool has(int p, int q) const { return entries_.count({p, q}) != 0; }
  const FinAbGroup& at(int p, int q) const { return entries_.at({p, q}); }
  int r() const { return r_; }
  std::size_t group_order() const { return group_order_; }
  const std::map<std::pair<int, int>, FinAbGroup>& entries() const { return entries_; }

  int p_lo() const { return bound(true, false); }
  int p_hi() const { return bound(true, true); }
  int q_lo() const { return bound(false, false); }
  int q_hi() const { return bound(false, true); }

  /// Rows with at least one nonzero entry.
  std::vector<int> nonzero_rows() const {
    std::set<int> rows;
    for (const auto& [k, g] : entries_)
      if (!g.is_trivial()) rows.insert(k.second);
    return {rows.begin(), rows.end()};
  }

  /// Row q as a map p -> E^{p,q}.
  std::map<int, FinAbGroup> row(int q) const {
    std::map<int, FinAbGroup> out;
    for (const auto& [k, g] : entries_)
      if (k.second == q) out.emplace(k.first, g);
    return out;
  }

 private:
  int bound(bool col, bool upper) const {
    if (entries_.empty()) throw std::logic_error("TatePage: empty page");
    int b = col ? entries_.begin()->first.first : entries_.begin()->first.second;
    for (const auto& [k, g] : entries_) {
      int v = col ? k.first : k.second;
      b = upper ? std::max(b, v) : std::min(b, v);
    }
    return b;
  }

  std::size_t group_order_;
  int r_;
  std::map<std::pair<int, int>, FinAbGroup> entries_;
};

/// Columns needed on the E_2 page to cover total degrees in `window`.
inline DegreeWindow diagonal_columns(const GCochainComplex& c, DegreeWindow window) {
  return {window.lo - c.hi(), window.hi - c.lo()};
}

/// E_2^{p,q} = Ĥ^p(G; H^q(C)) for p in `columns`, every q of C.
inline TatePage e2_page(const GCochainComplex& c, DegreeWindow columns) {
  TatePage page(c.group().order());
  const auto res = resolution_for(c.group_ptr(), columns);
  for (int q = c.lo(); q <= c.hi(); ++q) {
    const GModule h = c.cohomology_module(q);
    for (int p = columns.lo; p <= columns.hi; ++p) page.set(p, q, tate_cohomology(res, h, p));
  }
  return page;
}

struct DiagonalVerdict {
  int n = 0;
  Int product = 1;   // ∏_{p+q=n} |E_2^{p,q}|
  Int abutment = 1;  // |Ĥ^n|
  bool consistent = false;
  bool degenerate = false;
};

struct DiagonalReport {
  std::vector<DiagonalVerdict> diagonals;
  bool all_consistent() const {
    return std::all_of(diagonals.begin(), diagonals.end(), [](auto& d) { return d.consistent; });
  }
  bool all_degenerate() const {
    return std::all_of(diagonals.begin(), diagonals.end(), [](auto& d) { return d.degenerate; });
  }
};

/// Compares ∏|E_2| along each diagonal with the abutment. Every row of the
/// page must have its column n-q present.
inline DiagonalReport diagonal_cardinality_check(const TatePage& page,
                                                 const std::map<int, FinAbGroup>& abutment) {
  DiagonalReport report;
  for (const auto& [n, h] : abutment) {
    DiagonalVerdict v;
    v.n = n;
    for (int q = page.q_lo(); q <= page.q_hi(); ++q) {
      if (!page.has(n - q, q))
        throw std::out_of_range("diagonal_cardinality_check: diagonal " + std::to_string(n) +
                                " leaves the page window");
      auto o = page.at(n - q, q).order();
      if (!o) throw std::domain_error("diagonal_cardinality_check: infinite entry");
      v.product *= *o;
    }
    auto o = h.order();
    if (!o) throw std::domain_error("diagonal_cardinality_check: infinite abutment");
    v.abutment = *o;
    v.consistent = v.product >= v.abutment;
    v.degenerate = v.product == v.abutment;
    report.diagonals.push_back(v);
  }
  return report;
}

/// What consistency forces on a map d : E^{p,gap} -> E^{p+gap+1,0}.
enum class MapConstraint { Zero, Injective, Surjective, Bijective, Undetermined };

inline const char* to_string(MapConstraint c) {
  switch (c) {
    case MapConstraint::Zero: return "zero";
    case MapConstraint::Injective: return "injective";
    case MapConstraint::Surjective: return "surjective";
    case MapConstraint::Bijective: return "bijective";
    case MapConstraint::Undetermined: return "undetermined";
  }
  return "?";
}

struct TwoRowReport {
  int gap = 1;
  bool consistent = false;
  std::map<int, std::vector<Int>> image_orders;  // p -> feasible |im d^p|
  std::map<int, MapConstraint> forced;           // p -> constraint on d^p
  std::vector<int> group_mismatches;             // n where a forced isomorphism fails
};

namespace detail {

inline std::vector<Int> divisors(const Int& n) {
  std::vector<Int> out;
  for (Int d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline Int finite_order(const FinAbGroup& g, const char* what) {
  auto o = g.order();
  if (!o) throw std::domain_error(std::string("two_row_les: infinite ") + what);
  return *o;
}

}  // namespace detail

/// Exact-sequence bookkeeping for a page with two nonzero rows q = 0 and
/// q = gap. For each n the sequence
///   0 -> coker d^{n-gap-1} -> H^n -> ker d^{n-gap} -> 0
/// with d^p : E^{p,gap} -> E^{p+gap+1,0} constrains the image orders
/// i_p = |im d^p|: i_{n-gap-1} i_{n-gap} = |E^{n,0}| |E^{n-gap,gap}| / |H^n|.
/// Abutment degrees must be contiguous; rows must cover every degree used.
inline TwoRowReport two_row_les(const std::map<int, FinAbGroup>& row0,
                                const std::map<int, FinAbGroup>& row1,
                                const std::map<int, FinAbGroup>& abutment, int gap = 1) {
  if (gap < 1) throw std::invalid_argument("two_row_les: gap must be positive");
  if (abutment.empty()) throw std::invalid_argument("two_row_les: empty abutment");
  const int a = abutment.begin()->first, b = abutment.rbegin()->first;
  if (static_cast<int>(abutment.size()) != b - a + 1)
    throw std::invalid_argument("two_row_les: abutment degrees must be contiguous");
  auto need = [](const std::map<int, FinAbGroup>& row, int p, const char* what) {
    auto it = row.find(p);
    if (it == row.end())
      throw std::invalid_argument(std::string("two_row_les: ") + what + " missing degree " +
                                  std::to_string(p));
    return detail::finite_order(it->second, what);
  };

  TwoRowReport rep;
  rep.gap = gap;
  // unknowns p = a-gap-1 .. b-gap; equation n links p = n-gap-1 and p+1
  const int p0 = a - gap - 1, p1 = b - gap;
  std::vector<Int> c;
  for (int n = a; n <= b; ++n) {
    Int num = need(row0, n, "row0") * need(row1, n - gap, "row1");
    Int h = detail::finite_order(abutment.at(n), "abutment");
    if (num % h != 0) return rep;  // |H^n| must divide the product
    c.push_back(num / h);
  }
  auto bound = [&](int p) {
    Int g = 0;
    if (auto it = row1.find(p); it != row1.end()) g = gcd(g, detail::finite_order(it->second, "row1"));
    if (auto it = row0.find(p + gap + 1); it != row0.end())
      g = gcd(g, detail::finite_order(it->second, "row0"));
    return g;  // 0 = no bound
  };
  auto fits = [&](int p, const Int& v) {
    Int g = bound(p);
    return sgn(g) == 0 || g % v == 0;
  };

  std::vector<std::set<Int>> feasible(static_cast<std::size_t>(p1 - p0 + 1));
  for (const Int& start : detail::divisors(c[0])) {
    if (!fits(p0, start)) continue;
    std::vector<Int> chain{start};
    bool ok = true;
    for (std::size_t k = 0; k < c.size() && ok; ++k) {
      if (c[k] % chain.back() != 0) {
        ok = false;
        break;
      }
      Int next = c[k] / chain.back();
      if (!fits(p0 + static_cast<int>(k) + 1, next)) ok = false;
      chain.push_back(next);
    }
    if (!ok) continue;
    rep.consistent = true;
    for (std::size_t k = 0; k < chain.size(); ++k) feasible[k].insert(chain[k]);
  }

  for (int p = p0; p <= p1; ++p) {
    const auto& f = feasible[static_cast<std::size_t>(p - p0)];
    rep.image_orders[p] = {f.begin(), f.end()};
    if (!rep.consistent || f.size() != 1) {
      rep.forced[p] = MapConstraint::Undetermined;
      continue;
    }
    const Int v = *f.begin();
    auto src = row1.find(p);
    auto dst = row0.find(p + gap + 1);
    const bool inj = src != row1.end() && detail::finite_order(src->second, "row1") == v;
    const bool surj = dst != row0.end() && detail::finite_order(dst->second, "row0") == v;
    if (v == 1) rep.forced[p] = MapConstraint::Zero;
    else if (inj && surj) rep.forced[p] = MapConstraint::Bijective;
    else if (inj) rep.forced[p] = MapConstraint::Injective;
    else if (surj) rep.forced[p] = MapConstraint::Surjective;
    else rep.forced[p] = MapConstraint::Undetermined;
  }

  // group-level check where one side of the sequence is forced to vanish
  for (int n = a; n <= b && rep.consistent; ++n) {
    const auto& in = rep.image_orders[n - gap - 1];
    const auto& out = rep.image_orders[n - gap];
    const FinAbGroup& h = abutment.at(n);
    const bool coker_full = in.size() == 1 && in[0] == 1;
    const bool ker_zero = out.size() == 1 && out[0] == need(row1, n - gap, "row1");
    const bool coker_zero = in.size() == 1 && in[0] == need(row0, n, "row0");
    const bool ker_full = out.size() == 1 && out[0] == 1;
    if (coker_full && ker_zero && !(h == row0.at(n))) rep.group_mismatches.push_back(n);
    else if (coker_zero && ker_full && !(h == row1.at(n - gap))) rep.group_mismatches.push_back(n);
  }
  if (!rep.group_mismatches.empty()) rep.consistent = false;
  return rep;
}

/// Same, reading the two rows off a page. A page with a single nonzero row
/// is treated as having a zero row directly above it.
inline TwoRowReport two_row_les(const TatePage& page, const std::map<int, FinAbGroup>& abutment) {
  auto rows = page.nonzero_rows();
  if (rows.size() > 2) throw std::invalid_argument("two_row_les: more than two nonzero rows");
  const int q0 = rows.empty() ? page.q_lo() : rows.front();
  const int q1 = rows.size() == 2 ? rows.back() : q0 + 1;
  auto r0 = page.row(q0);
  auto r1 = page.row(q1);
  if (rows.size() < 2)
    for (int p = page.p_lo(); p <= page.p_hi(); ++p) r1.emplace(p, FinAbGroup());
  // shift so that the bottom row sits at q = 0
  std::map<int, FinAbGroup> shifted;
  for (const auto& [n, g] : abutment) shifted.emplace(n - q0, g);
  return two_row_les(r0, r1, shifted, q1 - q0);
}

}  // namespace eqtate
