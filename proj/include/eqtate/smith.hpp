#pragma once

#include "eqtate/matrix.hpp"

#include <optional>
#include <sstream>

namespace eqtate {

struct SmithOptions {
  bool left = true;           // track U
  bool right = true;          // track V
  bool left_inverse = false;  // track U^{-1}
};

/// U * A * V = diag(d); d has min(rows, cols) entries, nonnegative,
/// each nonzero entry dividing the next, zeros last.
struct SmithForm {
  IntVector d;
  IntMatrix U;
  IntMatrix V;
  IntMatrix U_inv;

  std::size_t rank() const {
    return static_cast<std::size_t>(
        std::count_if(d.begin(), d.end(), [](const Int& x) { return sgn(x) != 0; }));
  }
};

namespace detail {

// Carries a working copy of A together with the requested transforms, and
// applies every elementary operation to all of them consistently.
class SmithWorkspace {
 public:
  SmithWorkspace(IntMatrix a, SmithOptions opt) : A(std::move(a)), opt_(opt) {
    if (opt_.left) U = IntMatrix::identity(A.rows());
    if (opt_.left_inverse) Uinv = IntMatrix::identity(A.rows());
    if (opt_.right) V = IntMatrix::identity(A.cols());
  }

  void row_swap(std::size_t a, std::size_t b) {
    A.swap_rows(a, b);
    if (opt_.left) U.swap_rows(a, b);
    if (opt_.left_inverse) Uinv.swap_cols(a, b);
  }
  void row_add(std::size_t dst, std::size_t src, const Int& c) {
    A.add_row(dst, src, c);
    if (opt_.left) U.add_row(dst, src, c);
    if (opt_.left_inverse) Uinv.add_col(src, dst, -c);
  }
  void row_combine(std::size_t a, std::size_t b, const Int& p, const Int& q, const Int& r,
                   const Int& s) {
    A.combine_rows(a, b, p, q, r, s);
    if (opt_.left) U.combine_rows(a, b, p, q, r, s);
    if (opt_.left_inverse) Uinv.combine_cols(a, b, s, -r, -q, p);
  }
  void row_negate(std::size_t r) {
    A.negate_row(r);
    if (opt_.left) U.negate_row(r);
    if (opt_.left_inverse) Uinv.negate_col(r);
  }
  void col_swap(std::size_t a, std::size_t b) {
    A.swap_cols(a, b);
    if (opt_.right) V.swap_cols(a, b);
  }
  void col_add(std::size_t dst, std::size_t src, const Int& c) {
    A.add_col(dst, src, c);
    if (opt_.right) V.add_col(dst, src, c);
  }
  void col_combine(std::size_t a, std::size_t b, const Int& p, const Int& q, const Int& r,
                   const Int& s) {
    A.combine_cols(a, b, p, q, r, s);
    if (opt_.right) V.combine_cols(a, b, p, q, r, s);
  }

  IntMatrix A, U, Uinv, V;

 private:
  SmithOptions opt_;
};

inline void gcdext(Int& g, Int& s, Int& t, const Int& a, const Int& b) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

}  // namespace detail

/// Smith normal form by gcd-driven row/column elimination. The pivot at
/// each step is the entry of least absolute value in the remaining block,
/// ties broken by the sparsest row+column, which limits coefficient growth
/// and fill-in on the ±1 boundary matrices this library mostly sees.
inline SmithForm smith_normal_form(const IntMatrix& input, SmithOptions opt = {}) {
  detail::SmithWorkspace w(input, opt);
  IntMatrix& A = w.A;
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  const std::size_t steps = std::min(m, n);

  std::vector<std::size_t> row_weight(m), col_weight(n);
  for (std::size_t t = 0; t < steps; ++t) {
    std::fill(row_weight.begin() + t, row_weight.end(), 0);
    std::fill(col_weight.begin() + t, col_weight.end(), 0);
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (sgn(A(i, j)) != 0) {
          ++row_weight[i];
          ++col_weight[j];
        }

    std::size_t bi = m, bj = n;
    Int best;
    std::size_t best_weight = 0;
    for (std::size_t i = t; i < m; ++i) {
      if (row_weight[i] == 0) continue;
      for (std::size_t j = t; j < n; ++j) {
        if (sgn(A(i, j)) == 0) continue;
        Int v = abs(A(i, j));
        std::size_t wgt = row_weight[i] + col_weight[j];
        if (bi == m || v < best || (v == best && wgt < best_weight)) {
          best = v;
          bi = i;
          bj = j;
          best_weight = wgt;
        }
      }
    }
    if (bi == m) break;
    w.row_swap(t, bi);
    w.col_swap(t, bj);

    Int g, s, u, q;
    for (;;) {
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(A(i, t)) == 0) continue;
        const Int a = A(t, t);
        const Int b = A(i, t);
        if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
          q = b / a;
          w.row_add(i, t, -q);
        } else {
          detail::gcdext(g, s, u, a, b);
          w.row_combine(t, i, s, u, Int(-b / g), Int(a / g));
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(A(t, j)) == 0) continue;
        const Int a = A(t, t);
        const Int b = A(t, j);
        if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
          q = b / a;
          w.col_add(j, t, -q);
        } else {
          detail::gcdext(g, s, u, a, b);
          w.col_combine(t, j, s, u, Int(-b / g), Int(a / g));
        }
      }
      bool column_clear = true;
      for (std::size_t i = t + 1; i < m && column_clear; ++i)
        if (sgn(A(i, t)) != 0) column_clear = false;
      if (!column_clear) continue;

      std::size_t bad = m;
      const Int& a = A(t, t);
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (sgn(A(i, j)) != 0 && !mpz_divisible_p(A(i, j).get_mpz_t(), a.get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      w.row_add(t, bad, 1);
    }
    if (sgn(A(t, t)) < 0) w.row_negate(t);
  }

  SmithForm out;
  out.d.resize(steps);
  for (std::size_t t = 0; t < steps; ++t) out.d[t] = A(t, t);
  out.U = std::move(w.U);
  out.V = std::move(w.V);
  out.U_inv = std::move(w.Uinv);
  return out;
}

/// Finitely generated abelian group in invariant-factor normal form:
/// Z/t_1 x ... x Z/t_k x Z^r with 1 < t_1 | t_2 | ... | t_k.
class FinAbGroup {
 public:
  FinAbGroup() = default;

  /// Group Z/d_1 x ... x Z/d_k for arbitrary d_i >= 0 (0 meaning Z).
  static FinAbGroup from_diagonal(const IntVector& d) {
    IntVector finite;
    FinAbGroup g;
    for (const auto& x : d) {
      if (sgn(x) == 0)
        ++g.free_rank_;
      else if (abs(x) != 1)
        finite.push_back(abs(x));
    }
    bool chain = true;
    for (std::size_t i = 1; i < finite.size() && chain; ++i)
      chain = mpz_divisible_p(finite[i].get_mpz_t(), finite[i - 1].get_mpz_t()) != 0;
    if (!chain) {
      auto snf = smith_normal_form(IntMatrix::diagonal(finite), {false, false, false});
      finite.clear();
      for (auto& x : snf.d)
        if (x != 1) finite.push_back(x);
    }
    g.torsion_ = std::move(finite);
    return g;
  }

  static FinAbGroup cyclic(const Int& n) { return from_diagonal({n}); }
  static FinAbGroup free(std::size_t rank) {
    FinAbGroup g;
    g.free_rank_ = rank;
    return g;
  }
  /// (Z/p)^k
  static FinAbGroup elementary(const Int& p, std::size_t k) {
    return from_diagonal(IntVector(k, p));
  }

  const IntVector& torsion() const { return torsion_; }
  std::size_t free_rank() const { return free_rank_; }
  bool is_trivial() const { return torsion_.empty() && free_rank_ == 0; }
  bool is_finite() const { return free_rank_ == 0; }

  /// Cardinality, or nullopt when infinite.
  std::optional<Int> order() const {
    if (!is_finite()) return std::nullopt;
    Int o = 1;
    for (const auto& t : torsion_) o *= t;
    return o;
  }

  /// Exponent; 0 for infinite groups.
  Int exponent() const {
    if (!is_finite()) return 0;
    return torsion_.empty() ? Int(1) : torsion_.back();
  }

  /// dim over F_p of G/pG.
  std::size_t p_rank(const Int& p) const {
    std::size_t k = free_rank_;
    for (const auto& t : torsion_)
      if (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) ++k;
    return k;
  }

  friend FinAbGroup operator+(const FinAbGroup& a, const FinAbGroup& b) {
    IntVector d = a.torsion_;
    d.insert(d.end(), b.torsion_.begin(), b.torsion_.end());
    d.insert(d.end(), a.free_rank_ + b.free_rank_, Int(0));
    return from_diagonal(d);
  }

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }

  std::string to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : torsion_) {
      os << (first ? "" : " x ") << "Z/" << t;
      first = false;
    }
    if (free_rank_ > 0) {
      os << (first ? "" : " x ") << "Z";
      if (free_rank_ > 1) os << '^' << free_rank_;
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const FinAbGroup& g) {
    return os << g.to_string();
  }

 private:
  IntVector torsion_;
  std::size_t free_rank_ = 0;
};

/// Z^rows / column-span(A).
inline FinAbGroup cokernel(const IntMatrix& A) {
  auto snf = smith_normal_form(A, {false, false, false});
  IntVector d = snf.d;
  d.resize(A.rows(), Int(0));
  return FinAbGroup::from_diagonal(d);
}

/// Columns form a Z-basis of {x : A x = 0}.
inline IntMatrix kernel_basis(const IntMatrix& A) {
  if (A.rows() == 0) return IntMatrix::identity(A.cols());
  auto snf = smith_normal_form(A, {false, true, false});
  return snf.V.columns(snf.rank(), A.cols());
}

/// Columns form a Z-basis of the lattice spanned by the columns of G.
inline IntMatrix lattice_basis(const IntMatrix& G) {
  if (G.cols() == 0) return IntMatrix(G.rows(), 0);
  auto snf = smith_normal_form(G, {false, true, false});
  return (G * snf.V).columns(0, snf.rank());
}

/// Solves B c = x over the integers for many right-hand sides.
class LatticeSolver {
 public:
  explicit LatticeSolver(const IntMatrix& B)
      : rows_(B.rows()), cols_(B.cols()), snf_(smith_normal_form(B, {true, true, false})) {}

  std::optional<IntVector> solve(const IntVector& x) const {
    if (x.size() != rows_) throw std::invalid_argument("LatticeSolver: size mismatch");
    IntVector y = snf_.U.apply(x);
    IntVector z(cols_);
    const std::size_t r = snf_.rank();
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i < r) {
        if (!mpz_divisible_p(y[i].get_mpz_t(), snf_.d[i].get_mpz_t())) return std::nullopt;
        z[i] = y[i] / snf_.d[i];
      } else if (sgn(y[i]) != 0) {
        return std::nullopt;
      }
    }
    return snf_.V.apply(z);
  }

  bool contains(const IntVector& x) const { return solve(x).has_value(); }

  /// True when every column of X lies in the lattice.
  bool contains_columns(const IntMatrix& X) const {
    for (std::size_t j = 0; j < X.cols(); ++j)
      if (!contains(X.column(j))) return false;
    return true;
  }

 private:
  std::size_t rows_, cols_;
  SmithForm snf_;
};

/// A subquotient K / S of Z^n (S ⊆ K) with an explicit generator per
/// invariant factor, so that maps on the ambient lattice can be pushed down.
class Subquotient {
 public:
  Subquotient(const IntMatrix& K_basis, const IntMatrix& S_generators)
      : basis_(K_basis), solver_(K_basis) {
    const std::size_t k = K_basis.cols();
    IntMatrix coords(k, S_generators.cols());
    for (std::size_t j = 0; j < S_generators.cols(); ++j) {
      auto c = solver_.solve(S_generators.column(j));
      if (!c) throw std::invalid_argument("subquotient: image not contained in kernel");
      coords.set_column(j, *c);
    }
    auto snf = smith_normal_form(coords, {true, false, true});
    IntVector d = snf.d;
    d.resize(k, Int(0));
    std::vector<std::size_t> idx;
    IntVector mods;
    for (std::size_t i = 0; i < k; ++i)
      if (d[i] != 1) {
        idx.push_back(i);
        mods.push_back(d[i]);
      }
    generators_ = IntMatrix(K_basis.rows(), idx.size());
    const IntMatrix lift = K_basis * snf.U_inv;
    for (std::size_t g = 0; g < idx.size(); ++g) generators_.set_column(g, lift.column(idx[g]));
    U_ = std::move(snf.U);
    factor_index_ = std::move(idx);
    moduli_ = mods;
    group_ = FinAbGroup::from_diagonal(mods);
  }

  const FinAbGroup& group() const { return group_; }
  /// Ambient representatives, one column per factor (torsion then free).
  const IntMatrix& generators() const { return generators_; }
  /// Order of each generator, 0 for free generators.
  const IntVector& moduli() const { return moduli_; }
  std::size_t ngens() const { return moduli_.size(); }
  std::size_t ambient_dim() const { return basis_.rows(); }

  /// Coordinates of x ∈ K in terms of generators(), reduced modulo moduli().
  IntVector coordinates(const IntVector& x) const {
    auto c = solver_.solve(x);
    if (!c) throw std::invalid_argument("Subquotient::coordinates: vector outside kernel");
    IntVector y = U_.apply(*c);
    IntVector out(factor_index_.size());
    for (std::size_t g = 0; g < factor_index_.size(); ++g) {
      out[g] = y[factor_index_[g]];
      if (sgn(moduli_[g]) != 0) mpz_fdiv_r(out[g].get_mpz_t(), out[g].get_mpz_t(),
                                           moduli_[g].get_mpz_t());
    }
    return out;
  }

  bool in_kernel(const IntVector& x) const { return solver_.contains(x); }

 private:
  IntMatrix basis_;
  LatticeSolver solver_;
  IntMatrix U_;
  std::vector<std::size_t> factor_index_;
  IntVector moduli_;
  IntMatrix generators_;
  FinAbGroup group_;
};

/// ker(ker_of) / im(im_of). Requires ker_of * im_of == 0.
inline Subquotient subquotient(const IntMatrix& ker_of, const IntMatrix& im_of) {
  if (ker_of.cols() != im_of.rows())
    throw std::invalid_argument("subquotient: incompatible shapes");
  if (!(ker_of * im_of).is_zero())
    throw std::invalid_argument("subquotient: maps do not compose to zero");
  return Subquotient(kernel_basis(ker_of), im_of);
}

/// Cohomology at the middle term of A --d_in--> B --d_out--> C where
/// B = Z^n / span(relations) and C = Z^m / span(next_relations):
/// {x : d_out x ∈ span(next_relations)} / (span(relations) + im d_in).
inline Subquotient presented_homology(const IntMatrix& d_in, const IntMatrix& relations,
                                      const IntMatrix& d_out,
                                      const IntMatrix& next_relations) {
  const std::size_t n = relations.rows();
  if (d_in.rows() != n || d_out.cols() != n || next_relations.rows() != d_out.rows())
    throw std::invalid_argument("presented_homology: incompatible shapes");
  IntMatrix K;
  if (d_out.rows() == 0) {
    K = IntMatrix::identity(n);
  } else {
    IntMatrix joint = hstack(d_out, next_relations);
    IntMatrix ker = kernel_basis(joint);
    K = lattice_basis(ker.row_range(0, n));
  }
  return Subquotient(K, hstack(relations, d_in));
}

}  // namespace eqtate
