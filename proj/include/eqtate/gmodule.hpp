#pragma once

#include "eqtate/group.hpp"
#include "eqtate/smith.hpp"

namespace eqtate {

/// Finitely presented Z[G]-module: Z^n / span(relations) with one action
/// matrix per generator of G, acting on column vectors.
class GModule {
 public:
  GModule(GroupPtr group, IntMatrix relations, std::vector<IntMatrix> generator_action)
      : group_(std::move(group)),
        relations_(std::move(relations)),
        generator_action_(std::move(generator_action)) {
    validate();
  }

  /// Abelian group A with trivial G-action.
  static GModule trivial(GroupPtr group, const FinAbGroup& a) {
    IntVector mods = a.torsion();
    mods.insert(mods.end(), a.free_rank(), Int(0));
    return with_diagonal_relations(std::move(group), mods, {});
  }

  static GModule integers(GroupPtr group) { return trivial(std::move(group), FinAbGroup::free(1)); }

  /// Z^mods-style module: generators e_i of order mods[i] (0 = free), with
  /// the given generator actions (identity matrices when empty).
  static GModule with_diagonal_relations(GroupPtr group, const IntVector& mods,
                                         std::vector<IntMatrix> action) {
    const std::size_t n = mods.size();
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(mods[i]) != 0) cols.push_back(i);
    IntMatrix rel(n, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) rel(cols[c], c) = mods[cols[c]];
    if (action.empty()) action.assign(group->generators().size(), IntMatrix::identity(n));
    return GModule(std::move(group), std::move(rel), std::move(action));
  }

  /// Z[G]^k with left multiplication; basis e_{j,h} = h e_j at index j*|G| + h.
  static GModule free(GroupPtr group, std::size_t k = 1) {
    const std::size_t n = group->order();
    std::vector<IntMatrix> act;
    for (auto s : group->generators()) {
      IntMatrix m(n * k, n * k);
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t h = 0; h < n; ++h) m(j * n + group->mul(s, h), j * n + h) = 1;
      act.push_back(std::move(m));
    }
    return GModule(std::move(group), IntMatrix(n * k, 0), std::move(act));
  }

  const GroupPtr& group_ptr() const { return group_; }
  const FiniteGroup& group() const { return *group_; }
  std::size_t ngens() const { return relations_.rows(); }
  const IntMatrix& relations() const { return relations_; }
  const std::vector<IntMatrix>& generator_action() const { return generator_action_; }

  /// Matrix of a group element (a representative of its class modulo relations).
  const IntMatrix& action(FiniteGroup::Element g) const { return element_action_[g]; }

  /// Σ c_g ρ(g) for a group ring element given by its coefficient vector.
  IntMatrix ring_action(const IntVector& coeffs) const {
    IntMatrix m(ngens(), ngens());
    for (std::size_t g = 0; g < coeffs.size(); ++g)
      if (sgn(coeffs[g]) != 0) m = m + coeffs[g] * element_action_[g];
    return m;
  }

  IntMatrix norm() const { return ring_action(IntVector(group_->order(), Int(1))); }

  FinAbGroup abelian_group() const { return cokernel(relations_); }
  bool is_finite() const { return abelian_group().is_finite(); }

  /// Same module re-presented on the invariant-factor generators of its
  /// underlying group (trivial generators dropped).
  GModule normalized() const {
    Subquotient sq(IntMatrix::identity(ngens()), relations_);
    return transport(group_, sq, generator_action_);
  }

  /// Pushes ambient generator actions down to a subquotient K/S of Z^n.
  /// Requires each action to preserve K and S.
  static GModule transport(GroupPtr group, const Subquotient& sq,
                           const std::vector<IntMatrix>& ambient_generator_action) {
    const std::size_t k = sq.ngens();
    std::vector<IntMatrix> act;
    for (const auto& a : ambient_generator_action) {
      IntMatrix m(k, k);
      for (std::size_t j = 0; j < k; ++j) m.set_column(j, sq.coordinates(a.apply(sq.generators().column(j))));
      act.push_back(std::move(m));
    }
    return with_diagonal_relations(std::move(group), sq.moduli(), std::move(act));
  }

  friend GModule direct_sum(const GModule& a, const GModule& b) {
    if (a.group_ != b.group_ && a.group_->table() != b.group_->table())
      throw std::invalid_argument("direct_sum: modules over different groups");
    std::vector<IntMatrix> act;
    for (std::size_t i = 0; i < a.generator_action_.size(); ++i)
      act.push_back(eqtate::direct_sum(a.generator_action_[i], b.generator_action_[i]));
    return GModule(a.group_, eqtate::direct_sum(a.relations_, b.relations_), std::move(act));
  }

 private:
  void validate() {
    const std::size_t n = relations_.rows();
    if (generator_action_.size() != group_->generators().size())
      throw std::invalid_argument("GModule: need one action matrix per group generator");
    for (const auto& a : generator_action_)
      if (a.rows() != n || a.cols() != n)
        throw std::invalid_argument("GModule: action matrix has wrong shape");
    LatticeSolver rel(relations_);
    for (const auto& a : generator_action_)
      if (!rel.contains_columns(a * relations_))
        throw std::invalid_argument("GModule: action does not preserve the relation lattice");

    const auto& G = *group_;
    element_action_.assign(G.order(), IntMatrix());
    for (FiniteGroup::Element g = 0; g < G.order(); ++g) {
      IntMatrix m = IntMatrix::identity(n);
      for (auto i : G.word(g)) m = m * generator_action_[i];
      element_action_[g] = std::move(m);
    }
    // ρ(s)ρ(g) ≡ ρ(sg) for all generators s and elements g, modulo relations.
    for (std::size_t i = 0; i < G.generators().size(); ++i) {
      const auto s = G.generators()[i];
      for (FiniteGroup::Element g = 0; g < G.order(); ++g) {
        IntMatrix diff = generator_action_[i] * element_action_[g] - element_action_[G.mul(s, g)];
        if (!rel.contains_columns(diff))
          throw std::invalid_argument("GModule: action violates the group relations");
      }
    }
  }

  GroupPtr group_;
  IntMatrix relations_;
  std::vector<IntMatrix> generator_action_;
  std::vector<IntMatrix> element_action_;
};

/// Sign representation of C_2-like quotients: each group generator acts by
/// `signs[i]` on Z. Validated like any module.
inline GModule sign_module(GroupPtr group, const std::vector<int>& signs) {
  std::vector<IntMatrix> act;
  for (int s : signs) act.push_back(IntMatrix::from_rows({{s}}));
  return GModule(std::move(group), IntMatrix(1, 0), std::move(act));
}

/// M viewed as a module over a subgroup.
inline GModule restrict_module(const GModule& m, const Subgroup& h) {
  std::vector<IntMatrix> act;
  for (auto g : h.group->generators()) act.push_back(m.action(h.embed[g]));
  return GModule(h.group, m.relations(), std::move(act));
}

/// Z[G] ⊗_{Z[H]} M for an H-module M, as the direct sum over left cosets
/// t_i H of copies of M, where g (t_i ⊗ x) = t_j ⊗ h x for g t_i = t_j h.
inline GModule induced_module(GroupPtr g_ptr, const Subgroup& h, const GModule& m) {
  const auto& G = *g_ptr;
  if (m.group().order() != h.group->order() || m.group().table() != h.group->table())
    throw std::invalid_argument("induced_module: module is not over the given subgroup");
  if (!G.is_subgroup(h.embed)) throw std::invalid_argument("induced_module: not a subgroup");
  const auto reps = G.coset_representatives(h.embed);
  const std::size_t idx = reps.size(), n = m.ngens();
  std::vector<FiniteGroup::Element> to_local(G.order(), G.order());
  for (std::size_t i = 0; i < h.embed.size(); ++i) to_local[h.embed[i]] = i;

  std::vector<IntMatrix> act;
  for (auto s : G.generators()) {
    IntMatrix a(idx * n, idx * n);
    for (std::size_t i = 0; i < idx; ++i) {
      auto st = G.mul(s, reps[i]);
      for (std::size_t j = 0; j < idx; ++j) {
        auto hh = G.mul(G.inverse(reps[j]), st);
        if (to_local[hh] == G.order()) continue;
        a.put(j * n, i * n, m.action(to_local[hh]));
        break;
      }
    }
    act.push_back(std::move(a));
  }
  return GModule(std::move(g_ptr), block_repeat(m.relations(), idx), std::move(act));
}

/// Pontryagin dual Hom(M, Q/Z) of a finite module, with (gχ)(x) = χ(g^{-1}x).
/// On the invariant-factor basis x_i (orders d_i) with dual characters
/// χ_j(x_i) = δ_ij / d_j, g χ_j = Σ_i B_ji d_i / d_j χ_i where B = ρ(g^{-1}).
inline GModule dual_module(const GModule& m) {
  if (!m.is_finite()) throw std::domain_error("dual_module: module is infinite");
  GModule nm = m.normalized();
  const std::size_t k = nm.ngens();
  IntVector d(k);
  for (std::size_t i = 0; i < k; ++i) d[i] = nm.relations()(i, i);
  const auto& G = nm.group();
  std::vector<IntMatrix> act;
  for (auto s : G.generators()) {
    const IntMatrix& B = nm.action(G.inverse(s));
    IntMatrix a(k, k);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < k; ++i) {
        Int num = B(j, i) * d[i];
        if (!mpz_divisible_p(num.get_mpz_t(), d[j].get_mpz_t()))
          throw std::logic_error("dual_module: non-integral contragredient entry");
        a(i, j) = num / d[j];
      }
    act.push_back(std::move(a));
  }
  return GModule::with_diagonal_relations(nm.group_ptr(), d, std::move(act));
}

/// Torsion submodule and torsion-free quotient of M.
inline std::pair<GModule, GModule> torsion_split(const GModule& m) {
  GModule nm = m.normalized();
  const std::size_t k = nm.ngens();
  std::vector<bool> tor(k, false);
  for (std::size_t c = 0; c < nm.relations().cols(); ++c)
    for (std::size_t r = 0; r < k; ++r)
      if (sgn(nm.relations()(r, c)) != 0) tor[r] = true;
  std::vector<std::size_t> ti, fi;
  for (std::size_t i = 0; i < k; ++i) (tor[i] ? ti : fi).push_back(i);
  auto block = [](const IntMatrix& a, const std::vector<std::size_t>& idx) {
    IntMatrix b(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = a(idx[i], idx[j]);
    return b;
  };
  std::vector<IntMatrix> ta, fa;
  for (const auto& a : nm.generator_action()) {
    ta.push_back(block(a, ti));
    fa.push_back(block(a, fi));
  }
  // normalized relations are diagonal: one column per torsion generator
  IntVector tmods;
  for (auto i : ti)
    for (std::size_t c = 0; c < nm.relations().cols(); ++c)
      if (sgn(nm.relations()(i, c)) != 0) tmods.push_back(abs(nm.relations()(i, c)));
  return {GModule::with_diagonal_relations(nm.group_ptr(), tmods, std::move(ta)),
          GModule(nm.group_ptr(), IntMatrix(fi.size(), 0), std::move(fa))};
}

/// Fixed points M^G as an abstract group.
inline FinAbGroup invariants(const GModule& m) {
  const std::size_t n = m.ngens(), k = m.generator_action().size();
  IntMatrix d(n * k, n);
  for (std::size_t i = 0; i < k; ++i) d.put(i * n, 0, m.generator_action()[i] - IntMatrix::identity(n));
  return presented_homology(IntMatrix(n, 0), m.relations(), d, block_repeat(m.relations(), k)).group();
}

/// Hom(M, Z) of a lattice module (no relations), with action ρ(g^{-1})^T.
inline GModule integral_dual(const GModule& m) {
  if (m.relations().cols() != 0)
    throw std::invalid_argument("integral_dual: module must be a free Z-module presentation");
  const auto& G = m.group();
  std::vector<IntMatrix> act;
  for (auto s : G.generators()) act.push_back(m.action(G.inverse(s)).transpose());
  return GModule(m.group_ptr(), IntMatrix(m.ngens(), 0), std::move(act));
}

}  // namespace eqtate
