#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqtate {

/// Finite group given by its multiplication table; elements are 0..order-1.
class FiniteGroup {
 public:
  using Element = std::size_t;
  using Table = std::vector<std::vector<Element>>;

  FiniteGroup(Table table, std::vector<Element> generators)
      : table_(std::move(table)), generators_(std::move(generators)) {
    validate();
    build_words();
  }

  static FiniteGroup trivial() { return cyclic(1); }

  static FiniteGroup cyclic(std::size_t n) {
    if (n == 0) throw std::invalid_argument("cyclic group of order 0");
    Table t(n, std::vector<Element>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return FiniteGroup(std::move(t), n > 1 ? std::vector<Element>{1} : std::vector<Element>{});
  }

  /// Direct product; element (a, b) has index a * |B| + b.
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b) {
    const std::size_t na = a.order(), nb = b.order();
    Table t(na * nb, std::vector<Element>(na * nb));
    for (std::size_t x = 0; x < na * nb; ++x)
      for (std::size_t y = 0; y < na * nb; ++y)
        t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    std::vector<Element> gens;
    for (auto g : a.generators()) gens.push_back(g * nb + b.identity());
    for (auto g : b.generators()) gens.push_back(a.identity() * nb + g);
    return FiniteGroup(std::move(t), std::move(gens));
  }

  /// Symmetric group on 3 letters (smallest non-abelian case).
  static FiniteGroup symmetric3() {
    std::vector<std::vector<int>> perms;
    std::vector<int> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    auto index = [&](const std::vector<int>& q) {
      return static_cast<Element>(std::find(perms.begin(), perms.end(), q) - perms.begin());
    };
    Table t(6, std::vector<Element>(6));
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) {
        std::vector<int> c(3);
        for (int k = 0; k < 3; ++k) c[k] = perms[i][perms[j][k]];
        t[i][j] = index(c);
      }
    return FiniteGroup(std::move(t), {index({1, 0, 2}), index({1, 2, 0})});
  }

  std::size_t order() const { return table_.size(); }
  Element mul(Element a, Element b) const { return table_[a][b]; }
  Element identity() const { return identity_; }
  Element inverse(Element a) const { return inverse_[a]; }
  const std::vector<Element>& generators() const { return generators_; }
  const Table& table() const { return table_; }

  /// Word in generator indices whose product (left to right) is g.
  const std::vector<std::size_t>& word(Element g) const { return words_[g]; }

  std::size_t element_order(Element g) const {
    std::size_t k = 1;
    for (Element x = g; x != identity_; x = mul(x, g)) ++k;
    return k;
  }

  std::optional<Element> cyclic_generator() const {
    for (Element g = 0; g < order(); ++g)
      if (element_order(g) == order()) return g;
    return std::nullopt;
  }
  bool is_cyclic() const { return cyclic_generator().has_value(); }

  bool is_abelian() const {
    for (Element a = 0; a < order(); ++a)
      for (Element b = 0; b < order(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  bool is_subgroup(const std::vector<Element>& h) const {
    if (h.empty()) return false;
    std::set<Element> s(h.begin(), h.end());
    if (s.size() != h.size() || *s.rbegin() >= order() || !s.count(identity_)) return false;
    for (auto a : s)
      for (auto b : s)
        if (!s.count(mul(a, inverse(b)))) return false;
    return true;
  }

  bool is_normal(const std::vector<Element>& h) const {
    std::set<Element> s(h.begin(), h.end());
    for (Element g = 0; g < order(); ++g)
      for (auto x : s)
        if (!s.count(mul(mul(g, x), inverse(g)))) return false;
    return true;
  }

  /// Subgroup generated by the given elements, sorted.
  std::vector<Element> closure(const std::vector<Element>& gens) const {
    std::set<Element> s{identity_};
    std::deque<Element> todo{identity_};
    while (!todo.empty()) {
      Element x = todo.front();
      todo.pop_front();
      for (auto g : gens) {
        Element y = mul(x, g);
        if (s.insert(y).second) todo.push_back(y);
      }
    }
    return {s.begin(), s.end()};
  }

  /// Every subgroup, each as a sorted element list.
  std::vector<std::vector<Element>> subgroups() const {
    std::set<std::vector<Element>> found;
    std::deque<std::vector<Element>> todo;
    for (Element g = 0; g < order(); ++g) {
      auto c = closure({g});
      if (found.insert(c).second) todo.push_back(c);
    }
    while (!todo.empty()) {
      auto h = todo.front();
      todo.pop_front();
      for (Element g = 0; g < order(); ++g) {
        if (std::binary_search(h.begin(), h.end(), g)) continue;
        auto gens = h;
        gens.push_back(g);
        auto c = closure(gens);
        if (found.insert(c).second) todo.push_back(c);
      }
    }
    return {found.begin(), found.end()};
  }

  /// Left coset representatives of h, identity first.
  std::vector<Element> coset_representatives(const std::vector<Element>& h) const {
    std::vector<Element> reps;
    std::vector<bool> seen(order(), false);
    std::vector<Element> order_to_try{identity_};
    for (Element g = 0; g < order(); ++g)
      if (g != identity_) order_to_try.push_back(g);
    for (Element g : order_to_try) {
      if (seen[g]) continue;
      reps.push_back(g);
      for (auto x : h) seen[mul(g, x)] = true;
    }
    return reps;
  }

 private:
  void validate() {
    const std::size_t n = table_.size();
    if (n == 0) throw std::invalid_argument("FiniteGroup: empty table");
    for (const auto& row : table_) {
      if (row.size() != n) throw std::invalid_argument("FiniteGroup: table not square");
      for (auto x : row)
        if (x >= n) throw std::invalid_argument("FiniteGroup: entry out of range");
    }
    std::optional<Element> e;
    for (Element a = 0; a < n && !e; ++a) {
      bool ok = true;
      for (Element x = 0; x < n && ok; ++x) ok = table_[a][x] == x && table_[x][a] == x;
      if (ok) e = a;
    }
    if (!e) throw std::invalid_argument("FiniteGroup: no identity element");
    identity_ = *e;
    inverse_.assign(n, n);
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
    for (Element a = 0; a < n; ++a)
      if (inverse_[a] == n) throw std::invalid_argument("FiniteGroup: element without inverse");
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw std::invalid_argument("FiniteGroup: table is not associative");
    for (auto g : generators_)
      if (g >= n) throw std::invalid_argument("FiniteGroup: generator out of range");
  }

  void build_words() {
    const std::size_t n = order();
    words_.assign(n, {});
    std::vector<bool> seen(n, false);
    seen[identity_] = true;
    std::deque<Element> todo{identity_};
    while (!todo.empty()) {
      Element x = todo.front();
      todo.pop_front();
      for (std::size_t i = 0; i < generators_.size(); ++i) {
        Element y = mul(x, generators_[i]);
        if (seen[y]) continue;
        seen[y] = true;
        words_[y] = words_[x];
        words_[y].push_back(i);
        todo.push_back(y);
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
      throw std::invalid_argument("FiniteGroup: generators do not generate the group");
  }

  Table table_;
  std::vector<Element> generators_;
  Element identity_ = 0;
  std::vector<Element> inverse_;
  std::vector<std::vector<std::size_t>> words_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline GroupPtr make_group(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

/// A subgroup H ≤ G as a group in its own right, with its embedding into G.
struct Subgroup {
  GroupPtr group;                            // H with elements 0..|H|-1
  std::vector<FiniteGroup::Element> embed;   // H element -> G element
};

inline Subgroup make_subgroup(const FiniteGroup& g, std::vector<FiniteGroup::Element> elements) {
  std::sort(elements.begin(), elements.end());
  if (!g.is_subgroup(elements)) throw std::invalid_argument("not a subgroup");
  auto local = [&](FiniteGroup::Element x) {
    return static_cast<FiniteGroup::Element>(
        std::lower_bound(elements.begin(), elements.end(), x) - elements.begin());
  };
  const std::size_t n = elements.size();
  FiniteGroup::Table t(n, std::vector<FiniteGroup::Element>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = local(g.mul(elements[i], elements[j]));
  // generators: greedily add elements until they generate
  std::vector<FiniteGroup::Element> gens;
  std::vector<FiniteGroup::Element> span{g.identity()};
  for (auto x : elements) {
    if (std::binary_search(span.begin(), span.end(), x)) continue;
    gens.push_back(x);
    span = g.closure(gens);
  }
  std::vector<FiniteGroup::Element> local_gens;
  for (auto x : gens) local_gens.push_back(local(x));
  return {make_group(FiniteGroup(std::move(t), std::move(local_gens))), elements};
}

}  // namespace eqtate
