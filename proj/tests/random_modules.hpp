#pragma once

// Random finitely presented Z[G]-modules for property tests: direct sums of
// small building blocks, optionally quotiented by the orbit of a random
// vector, then scrambled by a random change of basis.

#include "eqtate/tate.hpp"

#include <functional>
#include <optional>
#include <random>

namespace eqtate::gen {

inline std::pair<IntMatrix, IntMatrix> random_unimodular(std::mt19937& rng, std::size_t n,
                                                         int steps = 5) {
  IntMatrix p = IntMatrix::identity(n), pinv = IntMatrix::identity(n);
  if (n < 2) return {p, pinv};
  for (int s = 0; s < steps; ++s) {
    std::size_t i = rng() % n, j = rng() % n;
    if (i == j) continue;
    int c = static_cast<int>(rng() % 5) - 2;
    p.add_row(i, j, c);
    pinv.add_col(j, i, -c);
  }
  return {p, pinv};
}

/// ρ'(g) = P ρ(g) P^{-1}, R' = P R.
inline GModule change_basis(const GModule& m, const IntMatrix& p, const IntMatrix& pinv) {
  std::vector<IntMatrix> act;
  for (const auto& a : m.generator_action()) act.push_back(p * a * pinv);
  return GModule(m.group_ptr(), p * m.relations(), std::move(act));
}

/// Permutation module Z[G/H] for the subgroup H.
inline GModule permutation_module(const GroupPtr& g, const std::vector<std::size_t>& h) {
  const auto reps = g->coset_representatives(h);
  const std::size_t k = reps.size();
  auto coset_of = [&](std::size_t x) {
    for (std::size_t i = 0; i < k; ++i)
      for (auto y : h)
        if (g->mul(reps[i], y) == x) return i;
    throw std::logic_error("coset lookup failed");
  };
  std::vector<IntMatrix> act;
  for (auto s : g->generators()) {
    IntMatrix a(k, k);
    for (std::size_t i = 0; i < k; ++i) a(coset_of(g->mul(s, reps[i])), i) = 1;
    act.push_back(std::move(a));
  }
  return GModule(g, IntMatrix(k, 0), std::move(act));
}

/// Adds the G-orbit of v to the relations.
inline GModule quotient_by_orbit(const GModule& m, const IntVector& v) {
  const auto& G = m.group();
  IntMatrix orbit(m.ngens(), G.order());
  for (std::size_t g = 0; g < G.order(); ++g) orbit.set_column(g, m.action(g).apply(v));
  return GModule(m.group_ptr(), hstack(m.relations(), orbit), m.generator_action());
}

/// One building block with at most `max_gens` generators.
inline GModule random_block(std::mt19937& rng, const GroupPtr& g, std::size_t max_gens) {
  std::uniform_int_distribution<int> small(0, 5);
  std::vector<std::function<std::optional<GModule>()>> kinds;
  kinds.push_back([&]() -> std::optional<GModule> {
    int a = small(rng);
    return GModule::trivial(g, FinAbGroup::cyclic(a == 1 ? 0 : a));
  });
  kinds.push_back([&]() -> std::optional<GModule> {
    // G acts through a character of order 2 (needs an index-2 subgroup)
    for (const auto& h : g->subgroups()) {
      if (h.size() * 2 != g->order()) continue;
      std::vector<IntMatrix> act;
      for (auto s : g->generators())
        act.push_back(IntMatrix::from_rows({{std::binary_search(h.begin(), h.end(), s) ? 1 : -1}}));
      int a = small(rng);
      IntMatrix rel = (a <= 1) ? IntMatrix(1, 0) : IntMatrix::from_rows({{a}});
      return GModule(g, rel, std::move(act));
    }
    return std::nullopt;
  });
  kinds.push_back([&]() -> std::optional<GModule> {
    auto subs = g->subgroups();
    std::vector<std::vector<std::size_t>> ok;
    for (auto& h : subs)
      if (g->order() / h.size() <= max_gens) ok.push_back(h);
    if (ok.empty()) return std::nullopt;
    return permutation_module(g, ok[rng() % ok.size()]);
  });
  kinds.push_back([&]() -> std::optional<GModule> {
    // Z[G/H] modulo its norm element or modulo a random orbit
    auto subs = g->subgroups();
    std::vector<std::vector<std::size_t>> ok;
    for (auto& h : subs)
      if (g->order() / h.size() <= max_gens && h.size() < g->order()) ok.push_back(h);
    if (ok.empty()) return std::nullopt;
    GModule perm = permutation_module(g, ok[rng() % ok.size()]);
    IntVector v(perm.ngens());
    if (rng() % 2) {
      std::fill(v.begin(), v.end(), Int(1));
    } else {
      std::uniform_int_distribution<int> e(-5, 5);
      for (auto& x : v) x = e(rng);
    }
    return quotient_by_orbit(perm, v);
  });
  for (;;) {
    auto m = kinds[rng() % kinds.size()]();
    if (m && m->ngens() <= max_gens) return *m;
  }
}

/// Random module with at most `max_gens` generators.
inline GModule random_module(std::mt19937& rng, const GroupPtr& g, std::size_t max_gens = 4) {
  GModule m = random_block(rng, g, max_gens);
  while (m.ngens() < max_gens && rng() % 2) {
    GModule b = random_block(rng, g, max_gens - m.ngens());
    m = direct_sum(m, b);
  }
  if (rng() % 3 == 0) {
    std::uniform_int_distribution<int> e(-5, 5);
    IntVector v(m.ngens());
    for (auto& x : v) x = e(rng);
    m = quotient_by_orbit(m, v);
  }
  auto [p, pinv] = random_unimodular(rng, m.ngens());
  return change_basis(m, p, pinv);
}

/// Random finite module: random module plus a relation killing every
/// generator by a small integer.
inline GModule random_finite_module(std::mt19937& rng, const GroupPtr& g, std::size_t max_gens = 4) {
  GModule m = random_module(rng, g, max_gens);
  if (m.is_finite()) return m;
  Int k = 2 + static_cast<long>(rng() % 5);
  IntMatrix rel = hstack(m.relations(), k * IntMatrix::identity(m.ngens()));
  return GModule(m.group_ptr(), rel, m.generator_action());
}

}  // namespace eqtate::gen
