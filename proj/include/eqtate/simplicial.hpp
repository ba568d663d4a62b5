#pragma once

#include "eqtate/spectral.hpp"

#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace eqtate {

using Simplex = std::vector<std::size_t>;
using Permutation = std::vector<std::size_t>;

/// Finite simplicial complex of dimension at most 3 with a group acting by
/// vertex permutations, one permutation per generator of the group.
class SimplicialGComplex {
 public:
  static constexpr int max_dim = 3;

  SimplicialGComplex(std::size_t nvertices, std::vector<Simplex> simplices, GroupPtr group,
                     std::vector<Permutation> generator_perms)
      : n_(nvertices), group_(std::move(group)), perms_(std::move(generator_perms)) {
    for (auto& s : simplices) {
      std::sort(s.begin(), s.end());
      if (s.empty()) throw std::invalid_argument("SimplicialGComplex: empty simplex");
      if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("SimplicialGComplex: repeated vertex in a simplex");
      if (s.back() >= n_) throw std::invalid_argument("SimplicialGComplex: vertex out of range");
      if (s.size() > max_dim + 1) throw std::invalid_argument("SimplicialGComplex: dimension above 3");
      index_[s.size() - 1].emplace(s, 0);
    }
    for (int d = 0; d <= max_dim; ++d) {
      for (auto& [s, i] : index_[d]) {
        i = by_dim_[d].size();
        by_dim_[d].push_back(s);
      }
    }
    validate();
  }

  /// Complex generated by the given simplices (all faces added).
  static SimplicialGComplex from_facets(std::size_t nvertices, const std::vector<Simplex>& facets,
                                        GroupPtr group, std::vector<Permutation> generator_perms) {
    std::set<Simplex> all;
    for (Simplex f : facets) {
      std::sort(f.begin(), f.end());
      if (f.size() > max_dim + 1) throw std::invalid_argument("SimplicialGComplex: dimension above 3");
      const std::size_t k = f.size();
      for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        Simplex face;
        for (std::size_t i = 0; i < k; ++i)
          if (mask & (std::size_t{1} << i)) face.push_back(f[i]);
        all.insert(face);
      }
    }
    return SimplicialGComplex(nvertices, {all.begin(), all.end()}, std::move(group),
                              std::move(generator_perms));
  }

  std::size_t nvertices() const { return n_; }
  const GroupPtr& group_ptr() const { return group_; }
  const FiniteGroup& group() const { return *group_; }
  const std::vector<Permutation>& generator_perms() const { return perms_; }

  int dim() const {
    for (int d = max_dim; d >= 0; --d)
      if (!by_dim_[d].empty()) return d;
    return -1;
  }

  const std::vector<Simplex>& simplices(int d) const { return by_dim_.at(static_cast<std::size_t>(d)); }
  std::size_t count(int d) const { return d < 0 || d > max_dim ? 0 : by_dim_[d].size(); }
  std::size_t total_count() const {
    std::size_t t = 0;
    for (int d = 0; d <= max_dim; ++d) t += count(d);
    return t;
  }

  std::optional<std::size_t> index(const Simplex& s) const {
    if (s.empty() || s.size() > max_dim + 1) return std::nullopt;
    auto it = index_[s.size() - 1].find(s);
    if (it == index_[s.size() - 1].end()) return std::nullopt;
    return it->second;
  }

  /// Vertex permutation of a group element.
  const Permutation& perm(FiniteGroup::Element g) const { return element_perms_[g]; }

  /// Image of σ under the permutation, sorted, with the sign of the sort.
  static std::pair<Simplex, int> image(const Permutation& p, const Simplex& s) {
    Simplex t(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) t[i] = p[s[i]];
    int sign = 1;
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = i + 1; j < t.size(); ++j)
        if (t[i] > t[j]) sign = -sign;
    std::sort(t.begin(), t.end());
    return {t, sign};
  }

  /// No group element maps a simplex to itself without fixing it vertexwise.
  bool is_regular() const {
    for (FiniteGroup::Element g = 0; g < group_->order(); ++g)
      for (int d = 1; d <= max_dim; ++d)
        for (const auto& s : by_dim_[d]) {
          auto [t, sign] = image(element_perms_[g], s);
          if (t != s) continue;
          for (auto v : s)
            if (element_perms_[g][v] != v) return false;
        }
    return true;
  }

  /// Signed permutation matrix of a permutation on the d-simplices.
  IntMatrix simplex_action(const Permutation& p, int d) const {
    const std::size_t k = count(d);
    IntMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      auto [t, sign] = image(p, by_dim_[d][i]);
      m(*index(t), i) = sign;
    }
    return m;
  }

  /// Coboundary δ : C^d -> C^{d+1} on the dual bases of sorted simplices.
  IntMatrix coboundary(int d) const {
    IntMatrix m(count(d + 1), count(d));
    if (d < 0 || d + 1 > max_dim) return m;
    for (std::size_t j = 0; j < count(d + 1); ++j) {
      const Simplex& t = by_dim_[d + 1][j];
      for (std::size_t i = 0; i < t.size(); ++i) {
        Simplex face = t;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        m(j, *index(face)) += (i % 2 == 0) ? 1 : -1;
      }
    }
    return m;
  }

 private:
  void validate() {
    if (perms_.size() != group_->generators().size())
      throw std::invalid_argument("SimplicialGComplex: need one permutation per group generator");
    for (const auto& p : perms_) {
      if (p.size() != n_) throw std::invalid_argument("SimplicialGComplex: permutation has wrong size");
      std::vector<bool> seen(n_, false);
      for (auto v : p) {
        if (v >= n_ || seen[v]) throw std::invalid_argument("SimplicialGComplex: not a permutation");
        seen[v] = true;
      }
    }
    // downward closure
    for (int d = 1; d <= max_dim; ++d)
      for (const auto& s : by_dim_[d])
        for (std::size_t i = 0; i < s.size(); ++i) {
          Simplex face = s;
          face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
          if (!index(face)) throw std::invalid_argument("SimplicialGComplex: missing face");
        }
    // element permutations from words, then consistency with the group law
    const auto& G = *group_;
    Permutation id(n_);
    std::iota(id.begin(), id.end(), std::size_t{0});
    element_perms_.assign(G.order(), id);
    for (FiniteGroup::Element g = 0; g < G.order(); ++g)
      for (auto i : G.word(g)) element_perms_[g] = compose(element_perms_[g], perms_[i]);
    for (std::size_t i = 0; i < perms_.size(); ++i)
      for (FiniteGroup::Element g = 0; g < G.order(); ++g)
        if (compose(perms_[i], element_perms_[g]) != element_perms_[G.mul(G.generators()[i], g)])
          throw std::invalid_argument("SimplicialGComplex: permutations violate the group relations");
    for (const auto& p : perms_)
      for (int d = 0; d <= max_dim; ++d)
        for (const auto& s : by_dim_[d])
          if (!index(image(p, s).first))
            throw std::invalid_argument("SimplicialGComplex: action does not permute simplices");
  }

  static Permutation compose(const Permutation& a, const Permutation& b) {
    Permutation c(b.size());
    for (std::size_t v = 0; v < b.size(); ++v) c[v] = a[b[v]];
    return c;
  }

  std::size_t n_;
  GroupPtr group_;
  std::vector<Permutation> perms_;
  std::vector<Permutation> element_perms_;
  std::array<std::vector<Simplex>, max_dim + 1> by_dim_;
  std::array<std::map<Simplex, std::size_t>, max_dim + 1> index_;
};

/// Simplicial cochains with the induced action, degrees 0..dim.
inline GCochainComplex cochain_complex(const SimplicialGComplex& k) {
  if (!k.is_regular()) throw std::invalid_argument("cochain_complex: action is not regular");
  const auto& g = k.group_ptr();
  if (k.dim() < 0) return GCochainComplex::concentrated(GModule(g, IntMatrix(0, 0), std::vector<IntMatrix>(g->generators().size())));
  std::vector<GModule> mods;
  std::vector<IntMatrix> ds;
  for (int d = 0; d <= k.dim(); ++d) {
    std::vector<IntMatrix> act;
    for (const auto& p : k.generator_perms()) act.push_back(k.simplex_action(p, d));
    mods.emplace_back(g, IntMatrix(k.count(d), 0), std::move(act));
    if (d < k.dim()) ds.push_back(k.coboundary(d));
  }
  return GCochainComplex(g, 0, std::move(mods), std::move(ds));
}

/// Simplicial chains placed in degrees -dim..0 (C_j in degree -j), so that
/// cohomology in degree -j is H_j with its G-action.
inline GCochainComplex chain_complex(const SimplicialGComplex& k) {
  if (!k.is_regular()) throw std::invalid_argument("chain_complex: action is not regular");
  const auto& g = k.group_ptr();
  const int top = std::max(k.dim(), 0);
  std::vector<GModule> mods;
  std::vector<IntMatrix> ds;
  for (int j = top; j >= 0; --j) {
    std::vector<IntMatrix> act;
    for (const auto& p : k.generator_perms()) act.push_back(k.simplex_action(p, j));
    mods.emplace_back(g, IntMatrix(k.count(j), 0), std::move(act));
    if (j > 0) ds.push_back(k.coboundary(j - 1).transpose());
  }
  return GCochainComplex(g, -top, std::move(mods), std::move(ds));
}

/// H_j(K; Z) as a G-module.
inline GModule homology_module(const SimplicialGComplex& k, int j) {
  return chain_complex(k).cohomology_module(-j);
}

struct FixedLocus {
  SimplicialGComplex complex;       // full subcomplex on the fixed vertices, trivial action
  std::vector<std::size_t> vertices;  // original labels
  std::size_t components = 0;       // s
};

/// Full subcomplex on vertices fixed by the whole group.
inline FixedLocus fixed_subcomplex(const SimplicialGComplex& k) {
  std::vector<std::size_t> fixed;
  std::vector<std::size_t> local(k.nvertices(), SIZE_MAX);
  for (std::size_t v = 0; v < k.nvertices(); ++v) {
    bool ok = true;
    for (const auto& p : k.generator_perms()) ok = ok && p[v] == v;
    if (ok) {
      local[v] = fixed.size();
      fixed.push_back(v);
    }
  }
  std::vector<Simplex> sub;
  for (int d = 0; d <= k.dim(); ++d)
    for (const auto& s : k.simplices(d)) {
      Simplex t;
      for (auto v : s)
        if (local[v] != SIZE_MAX) t.push_back(local[v]);
      if (t.size() == s.size()) sub.push_back(t);
    }
  // components by union-find over edges
  std::vector<std::size_t> parent(fixed.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& s : sub)
    if (s.size() == 2) parent[find(s[0])] = find(s[1]);
  std::size_t comps = 0;
  for (std::size_t v = 0; v < fixed.size(); ++v) comps += find(v) == v;

  Permutation id(fixed.size());
  std::iota(id.begin(), id.end(), std::size_t{0});
  std::vector<Permutation> perms(k.group().generators().size(), id);
  return {SimplicialGComplex(fixed.size(), std::move(sub), k.group_ptr(), std::move(perms)), fixed, comps};
}

/// Join K1 * K2 with the diagonal action of their common group.
inline SimplicialGComplex join(const SimplicialGComplex& a, const SimplicialGComplex& b) {
  if (a.group().table() != b.group().table())
    throw std::invalid_argument("join: complexes carry different groups");
  if (a.dim() + b.dim() + 1 > SimplicialGComplex::max_dim)
    throw std::invalid_argument("join: dimension overflow");
  const std::size_t na = a.nvertices();
  std::vector<Simplex> simplices;
  std::vector<Simplex> sa{{}}, sb{{}};
  for (int d = 0; d <= a.dim(); ++d)
    for (const auto& s : a.simplices(d)) sa.push_back(s);
  for (int d = 0; d <= b.dim(); ++d)
    for (const auto& s : b.simplices(d)) {
      Simplex t = s;
      for (auto& v : t) v += na;
      sb.push_back(t);
    }
  for (const auto& s : sa)
    for (const auto& t : sb) {
      Simplex u = s;
      u.insert(u.end(), t.begin(), t.end());
      if (!u.empty()) simplices.push_back(std::move(u));
    }
  std::vector<Permutation> perms;
  for (std::size_t i = 0; i < a.generator_perms().size(); ++i) {
    Permutation p = a.generator_perms()[i];
    for (auto v : b.generator_perms()[i]) p.push_back(v + na);
    perms.push_back(std::move(p));
  }
  return SimplicialGComplex(na + b.nvertices(), std::move(simplices), a.group_ptr(), std::move(perms));
}

/// Single vertex with trivial action.
inline SimplicialGComplex point(const GroupPtr& g) {
  return SimplicialGComplex(1, {{0}}, g, std::vector<Permutation>(g->generators().size(), Permutation{0}));
}

/// n-gon whose first group generator rotates by `step` vertices (the other
/// generators act trivially).
inline SimplicialGComplex polygon(const GroupPtr& g, std::size_t n, std::size_t step = 0) {
  if (n < 3) throw std::invalid_argument("polygon: need at least 3 vertices");
  std::vector<Simplex> facets;
  for (std::size_t i = 0; i < n; ++i) facets.push_back({i, (i + 1) % n});
  Permutation id(n);
  std::iota(id.begin(), id.end(), std::size_t{0});
  std::vector<Permutation> perms(g->generators().size(), id);
  if (step % n != 0) {
    if (perms.empty()) throw std::invalid_argument("polygon: rotation needs a group generator");
    for (std::size_t v = 0; v < n; ++v) perms[0][v] = (v + step) % n;
  }
  return SimplicialGComplex::from_facets(n, facets, g, std::move(perms));
}

/// Circle on which C_p rotates freely: a (k p)-gon rotated by k steps, with
/// the smallest k giving at least 3 vertices.
inline SimplicialGComplex free_circle(const GroupPtr& g) {
  const std::size_t p = g->order();
  const std::size_t k = (p + 2) / p;
  return polygon(g, k * p, k);
}

/// S^3 = (free C_p circle) * (fixed m-gon): the fixed m-gon is the branch locus.
inline SimplicialGComplex branched_join(std::size_t p, std::size_t m) {
  auto g = make_group(FiniteGroup::cyclic(p));
  return join(free_circle(g), polygon(g, m, 0));
}

/// S^3 = (free C_p circle) * (free C_p circle) with the diagonal action.
inline SimplicialGComplex free_join(std::size_t p) {
  auto g = make_group(FiniteGroup::cyclic(p));
  return join(free_circle(g), free_circle(g));
}

/// First barycentric subdivision; vertices are the simplices of K.
inline SimplicialGComplex barycentric_subdivision(const SimplicialGComplex& k) {
  std::vector<Simplex> all;
  for (int d = 0; d <= k.dim(); ++d)
    for (const auto& s : k.simplices(d)) all.push_back(s);
  std::map<Simplex, std::size_t> id;
  for (std::size_t i = 0; i < all.size(); ++i) id.emplace(all[i], i);

  // flags σ_0 ⊂ ... ⊂ σ_r, grown from each simplex down through its faces
  std::vector<Simplex> flags;
  std::function<void(const Simplex&, Simplex&)> grow = [&](const Simplex& top, Simplex& chain) {
    flags.push_back(chain);
    if (top.size() == 1) return;
    for (std::size_t i = 0; i < top.size(); ++i) {
      Simplex face = top;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      chain.push_back(id.at(face));
      grow(face, chain);
      chain.pop_back();
    }
  };
  for (const auto& s : all) {
    Simplex chain{id.at(s)};
    grow(s, chain);
  }
  std::vector<Permutation> perms;
  for (const auto& p : k.generator_perms()) {
    Permutation q(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) q[i] = id.at(SimplicialGComplex::image(p, all[i]).first);
    perms.push_back(std::move(q));
  }
  // sub-flags skipping a level are faces of full flags
  return SimplicialGComplex::from_facets(all.size(), flags, k.group_ptr(), std::move(perms));
}

/// K itself if its action is regular, otherwise its barycentric subdivision.
inline SimplicialGComplex regularized(const SimplicialGComplex& k) {
  return k.is_regular() ? k : barycentric_subdivision(k);
}

struct ManifoldCheck {
  bool pseudomanifold = false;         // pure, connected, each ridge in exactly two facets
  bool orientable = false;             // a ±1 fundamental cycle exists
  bool orientation_preserving = false; // every generator fixes that cycle
  IntVector fundamental_cycle;
  bool ok() const { return pseudomanifold && orientable && orientation_preserving; }
};

inline ManifoldCheck check_manifold(const SimplicialGComplex& k) {
  ManifoldCheck r;
  const int d = k.dim();
  if (d < 1) return r;
  std::vector<std::size_t> cofaces(k.count(d - 1), 0);
  const IntMatrix top = k.coboundary(d - 1);  // facets x ridges
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j)
      if (sgn(top(i, j)) != 0) ++cofaces[j];
  bool pm = std::all_of(cofaces.begin(), cofaces.end(), [](std::size_t c) { return c == 2; });
  // purity: every simplex lies in a facet
  std::set<Simplex> covered;
  for (const auto& f : k.simplices(d)) {
    const std::size_t n = f.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      Simplex face;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) face.push_back(f[i]);
      covered.insert(face);
    }
  }
  pm = pm && covered.size() == k.total_count();
  pm = pm && cochain_complex(k).cohomology(0) == FinAbGroup::free(1);
  r.pseudomanifold = pm;
  if (!pm) return r;
  IntMatrix ker = kernel_basis(top.transpose());
  if (ker.cols() != 1) return r;
  IntVector z = ker.column(0);
  r.orientable = std::all_of(z.begin(), z.end(), [](const Int& x) { return abs(x) == 1; });
  if (!r.orientable) return r;
  r.fundamental_cycle = z;
  r.orientation_preserving = true;
  for (const auto& p : k.generator_perms())
    if (k.simplex_action(p, d).apply(z) != z) r.orientation_preserving = false;
  return r;
}

namespace detail {
inline bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}
}  // namespace detail

struct LocalizationReport {
  std::size_t p = 1;
  std::size_t s = 0;
  DegreeWindow window;
  FinAbGroup expected;                     // (Z/p)^s
  std::map<int, FinAbGroup> total;         // Ĥ^n_G(K)
  std::map<int, FinAbGroup> fixed_locus;   // Ĥ^n_G(K^G)
  bool pass = false;
};

/// Computes Ĥ^n_{C_p} of K and of its fixed locus over `window` and compares
/// both with (Z/p)^s, s the number of fixed components.
inline LocalizationReport verify_localization(const SimplicialGComplex& k, DegreeWindow window = {-3, 6}) {
  const std::size_t p = k.group().order();
  if (p != 1 && !detail::is_prime(p))
    throw std::invalid_argument("verify_localization: group order is not prime");
  if (!k.is_regular()) throw std::invalid_argument("verify_localization: action is not regular");
  if (!check_manifold(k).ok())
    throw std::invalid_argument("verify_localization: not a closed oriented manifold with orientation-preserving action");
  LocalizationReport r;
  r.p = p;
  r.window = window;
  const FixedLocus z = fixed_subcomplex(k);
  r.s = z.components;
  r.expected = p == 1 ? FinAbGroup() : FinAbGroup::elementary(Int(p), r.s);
  r.total = equivariant_cohomology_range(cochain_complex(k), window);
  r.fixed_locus = equivariant_cohomology_range(cochain_complex(z.complex), window);
  r.pass = true;
  for (int n = window.lo; n <= window.hi; ++n)
    if (!(r.total.at(n) == r.expected) || !(r.fixed_locus.at(n) == r.expected)) r.pass = false;
  return r;
}

}  // namespace eqtate
