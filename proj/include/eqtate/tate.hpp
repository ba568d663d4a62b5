#pragma once

#include "eqtate/gmodule.hpp"

#include <gmpxx.h>

namespace eqtate {

/// Degree window for groups without a periodic resolution.
struct DegreeWindow {
  int lo = -6;
  int hi = 6;
  bool contains(int n) const { return lo <= n && n <= hi; }
};

/// A free resolution F_L -> ... -> F_1 -> F_0 = Z[G] -> Z, spliced at
/// degree 0 with its dual through the norm, viewed through the functor
/// Hom_G(-, M). Boundaries are matrices over Z[G]: entry (k, j) of ∂_i is
/// the coefficient vector of a_kj with ∂_i(e_j) = Σ_k a_kj e_k.
///
/// Tate degrees: T^p = Hom_G(F_p, M) = M^{r_p} for p >= 0 and
/// T^p = F_{-p-1} ⊗_G M = M^{r_{-p-1}} for p < 0.
class CompleteResolution {
 public:
  using RingElement = IntVector;
  using RingMatrix = std::vector<std::vector<RingElement>>;  // [k][j]

  /// 2-periodic resolution of a cyclic group: ∂_odd = σ - 1, ∂_even = N.
  static CompleteResolution periodic(GroupPtr group) {
    auto sigma = group->cyclic_generator();
    if (!sigma) throw std::invalid_argument("periodic resolution needs a cyclic group");
    CompleteResolution r;
    r.group_ = std::move(group);
    r.periodic_ = true;
    const std::size_t n = r.group_->order();
    r.sigma_minus_one_.assign(n, Int(0));
    r.sigma_minus_one_[*sigma] += 1;
    r.sigma_minus_one_[r.group_->identity()] -= 1;
    r.norm_.assign(n, Int(1));
    return r;
  }

  /// Resolution of length `length` built by iterated kernels: at each step
  /// the Z-kernel of the last boundary is generated as a Z[G]-module by a
  /// greedily chosen subset of a Z-basis.
  static CompleteResolution from_kernels(GroupPtr group, std::size_t length) {
    CompleteResolution r;
    r.group_ = std::move(group);
    const std::size_t n = r.group_->order();
    r.norm_.assign(n, Int(1));
    r.ranks_.push_back(1);
    // augmentation Z[G] -> Z
    IntMatrix last(1, n);
    for (std::size_t h = 0; h < n; ++h) last(0, h) = 1;
    for (std::size_t i = 1; i <= length; ++i) {
      IntMatrix ker = kernel_basis(last);
      const std::size_t prev_rank = r.ranks_.back();
      std::vector<IntVector> chosen;
      IntMatrix span(prev_rank * n, 0);
      std::vector<std::size_t> order(ker.cols());
      std::iota(order.begin(), order.end(), 0);
      // sparse, small columns first
      auto weight = [&](std::size_t c) {
        Int w = 0;
        for (std::size_t k = 0; k < ker.rows(); ++k) w += abs(ker(k, c));
        return w;
      };
      std::vector<Int> weights(ker.cols());
      for (std::size_t c = 0; c < ker.cols(); ++c) weights[c] = weight(c);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return weights[a] < weights[b]; });
      for (std::size_t c : order) {
        IntVector v = ker.column(c);
        if (span.cols() > 0 && LatticeSolver(span).contains(v)) continue;
        chosen.push_back(v);
        IntMatrix orbit(prev_rank * n, n);
        for (std::size_t g = 0; g < n; ++g) orbit.set_column(g, r.translate(v, g, prev_rank));
        span = hstack(span, orbit);
      }
      RingMatrix bd(prev_rank, std::vector<RingElement>(chosen.size(), RingElement(n)));
      for (std::size_t j = 0; j < chosen.size(); ++j)
        for (std::size_t k = 0; k < prev_rank; ++k)
          for (std::size_t h = 0; h < n; ++h) bd[k][j][h] = chosen[j][k * n + h];
      r.boundaries_.push_back(std::move(bd));
      r.ranks_.push_back(chosen.size());
      last = r.z_boundary(i);
    }
    return r;
  }

  const FiniteGroup& group() const { return *group_; }
  bool is_periodic() const { return periodic_; }
  std::size_t length() const { return periodic_ ? SIZE_MAX : boundaries_.size(); }

  /// Tate degrees whose cohomology this resolution can compute.
  bool supports(int p) const {
    if (periodic_) return true;
    const long L = static_cast<long>(boundaries_.size());
    return p >= -L && p <= L - 1;
  }

  std::size_t resolution_rank(std::size_t i) const { return periodic_ ? 1 : ranks_.at(i); }

  std::size_t tate_rank(int p) const {
    return p >= 0 ? resolution_rank(static_cast<std::size_t>(p))
                  : resolution_rank(static_cast<std::size_t>(-p - 1));
  }

  /// ∂_i : F_i -> F_{i-1}, i >= 1.
  RingMatrix boundary(std::size_t i) const {
    if (periodic_) return {{i % 2 == 1 ? sigma_minus_one_ : norm_}};
    return boundaries_.at(i - 1);
  }

  /// ∂_i as an integer matrix on the Z-bases {h e_j}.
  IntMatrix z_boundary(std::size_t i) const {
    const auto bd = boundary(i);
    const std::size_t n = group_->order();
    const std::size_t rows = resolution_rank(i - 1), cols = resolution_rank(i);
    IntMatrix m(rows * n, cols * n);
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t g = 0; g < n; ++g)
        for (std::size_t k = 0; k < rows; ++k)
          for (std::size_t x = 0; x < n; ++x) {
            const Int& c = bd[k][j][x];
            if (sgn(c) != 0) m(k * n + group_->mul(g, x), j * n + g) += c;
          }
    return m;
  }

  /// Differential T^p(M) -> T^{p+1}(M).
  IntMatrix cochain_differential(int p, const GModule& m) const {
    const std::size_t n = m.ngens();
    if (p == -1) return m.norm();
    if (p >= 0) {
      const auto bd = boundary(static_cast<std::size_t>(p) + 1);
      const std::size_t src = tate_rank(p), dst = tate_rank(p + 1);
      IntMatrix d(dst * n, src * n);
      for (std::size_t j = 0; j < dst; ++j)
        for (std::size_t k = 0; k < src; ++k) d.put(j * n, k * n, m.ring_action(bd[k][j]));
      return d;
    }
    // p <= -2: ∂_q ⊗ 1 with q = -p-1, entries act through g -> g^{-1}
    const std::size_t q = static_cast<std::size_t>(-p - 1);
    const auto bd = boundary(q);
    const std::size_t src = resolution_rank(q), dst = resolution_rank(q - 1);
    IntMatrix d(dst * n, src * n);
    for (std::size_t i = 0; i < dst; ++i)
      for (std::size_t j = 0; j < src; ++j) d.put(i * n, j * n, m.ring_action(conjugate(bd[i][j])));
    return d;
  }

  /// Relations of T^p(M).
  IntMatrix cochain_relations(int p, const GModule& m) const {
    return block_repeat(m.relations(), tate_rank(p));
  }

  /// Z-exactness of the resolution part: consecutive boundaries compose to
  /// zero and every kernel equals the next image.
  bool verify_exact(std::size_t upto) const {
    const std::size_t n = group_->order();
    IntMatrix aug(1, n);
    for (std::size_t h = 0; h < n; ++h) aug(0, h) = 1;
    IntMatrix prev = aug;
    for (std::size_t i = 1; i <= upto; ++i) {
      IntMatrix cur = z_boundary(i);
      if (!(prev * cur).is_zero()) return false;
      if (!subquotient(prev, cur).group().is_trivial()) return false;
      prev = std::move(cur);
    }
    return true;
  }

 private:
  RingElement conjugate(const RingElement& a) const {
    RingElement b(a.size());
    for (std::size_t g = 0; g < a.size(); ++g) b[group_->inverse(g)] = a[g];
    return b;
  }

  /// g · v for v in Z[G]^rank written on the basis {h e_k}.
  IntVector translate(const IntVector& v, std::size_t g, std::size_t rank) const {
    const std::size_t n = group_->order();
    IntVector w(v.size());
    for (std::size_t k = 0; k < rank; ++k)
      for (std::size_t h = 0; h < n; ++h) w[k * n + group_->mul(g, h)] = v[k * n + h];
    return w;
  }

  GroupPtr group_;
  bool periodic_ = false;
  std::vector<std::size_t> ranks_;
  std::vector<RingMatrix> boundaries_;
  RingElement sigma_minus_one_;
  RingElement norm_;
};

/// Tate cohomology through an explicit complete resolution.
inline FinAbGroup tate_cohomology(const CompleteResolution& res, const GModule& m, int n) {
  if (!res.supports(n)) throw std::out_of_range("tate_cohomology: degree outside resolution window");
  return presented_homology(res.cochain_differential(n - 1, m), res.cochain_relations(n, m),
                            res.cochain_differential(n, m), res.cochain_relations(n + 1, m))
      .group();
}

/// Cyclic fast path: Ĥ^even = M^G / NM, Ĥ^odd = ker N / (σ-1)M.
inline FinAbGroup tate_cohomology_cyclic(const GModule& m, int n) {
  auto sigma = m.group().cyclic_generator();
  if (!sigma) throw std::invalid_argument("tate_cohomology_cyclic: group is not cyclic");
  const IntMatrix N = m.norm();
  const IntMatrix T = m.action(*sigma) - IntMatrix::identity(m.ngens());
  const IntMatrix& R = m.relations();
  const bool even = n % 2 == 0;
  return presented_homology(even ? N : T, R, even ? T : N, R).group();
}

/// Ĥ^n(G; M) through a resolution built by iterated kernels, valid on `window`.
inline FinAbGroup tate_cohomology_general(const GModule& m, int n, DegreeWindow window = {}) {
  if (!window.contains(n)) throw std::out_of_range("tate_cohomology_general: degree outside window");
  const int need = std::max(window.hi + 1, -window.lo);
  auto res = CompleteResolution::from_kernels(m.group_ptr(), static_cast<std::size_t>(need));
  return tate_cohomology(res, m, n);
}

/// Ĥ^n(G; M): periodic path for cyclic groups, general window otherwise.
inline FinAbGroup tate_cohomology(const GModule& m, int n, DegreeWindow window = {}) {
  if (m.group().is_cyclic()) return tate_cohomology_cyclic(m, n);
  return tate_cohomology_general(m, n, window);
}

/// |Ĥ^0| / |Ĥ^1| for cyclic G.
inline mpq_class herbrand_quotient(const GModule& m) {
  auto h0 = tate_cohomology_cyclic(m, 0).order();
  auto h1 = tate_cohomology_cyclic(m, 1).order();
  if (!h0 || !h1) throw std::domain_error("herbrand_quotient: infinite cohomology");
  mpq_class q(*h0, *h1);
  q.canonicalize();
  return q;
}

/// Ĥ^n(G; Q/Z), computed as Ĥ^{n+1}(G; Z) since Q is cohomologically trivial.
inline FinAbGroup shifted_integral_identity(const GroupPtr& g, int n, DegreeWindow window = {}) {
  return tate_cohomology(GModule::integers(g), n + 1, window);
}

/// Kernel R of the free cover Z[G]^n -> M, e_{j,h} -> h m_j, as a G-lattice.
inline GModule syzygy_lattice(const GModule& m) {
  const auto& G = m.group();
  const std::size_t n = m.ngens(), order = G.order();
  IntMatrix phi(n, n * order);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t h = 0; h < order; ++h) phi.set_column(j * order + h, m.action(h).column(j));
  const IntMatrix joint = kernel_basis(hstack(phi, m.relations()));
  const IntMatrix basis = lattice_basis(joint.row_range(0, n * order));
  const GModule cover = GModule::free(m.group_ptr(), n);
  return GModule::transport(m.group_ptr(), Subquotient(basis, IntMatrix(n * order, 0)), cover.generator_action());
}

/// Ĥ^n(G; Hom(M, Q/Z)) for any finitely presented M. From
/// 0 -> M^D -> (Z[G]^k)^D -> R^D -> 0 with coinduced middle term and R^D a
/// torus, Ĥ^n(M^D) = Ĥ^{n-1}(R^D) = Ĥ^n(Hom(R, Z)).
inline FinAbGroup tate_cohomology_of_dual(const GModule& m, int n, DegreeWindow window = {}) {
  const GModule r = syzygy_lattice(m);
  const auto& G = r.group();
  std::vector<IntMatrix> act;
  for (auto s : G.generators()) act.push_back(r.action(G.inverse(s)).transpose());
  return tate_cohomology(GModule(r.group_ptr(), IntMatrix(r.ngens(), 0), std::move(act)), n, window);
}

}  // namespace eqtate
