#pragma once

#include "eqtate/group.hpp"
#include "eqtate/smith.hpp"

#include <gmpxx.h>

#include <array>
#include <map>
#include <set>
#include <tuple>

namespace eqtate {

inline bool is_squarefree(const Int& n) {
  Int a = abs(n);
  if (a == 0) return false;
  for (Int p = 2; p * p <= a; ++p)
    if (a % (p * p) == 0) return false;
  return true;
}

inline Int squarefree_part(const Int& n) {
  if (n == 0) throw std::invalid_argument("squarefree_part: zero");
  Int a = abs(n), out = 1;
  for (Int p = 2; p * p <= a; ++p) {
    int e = 0;
    while (a % p == 0) {
      a /= p;
      ++e;
    }
    if (e % 2) out *= p;
  }
  out *= a;
  return sgn(n) < 0 ? Int(-out) : out;
}

inline std::vector<Int> prime_factors(Int n) {
  n = abs(n);
  std::vector<Int> out;
  for (Int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

inline bool is_prime(const Int& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

inline bool is_fundamental_discriminant(const Int& d) {
  if (d == 0 || d == 1) return false;
  Int r = d % 4;
  if (r < 0) r += 4;
  if (r == 1) return is_squarefree(d);
  if (r != 0) return false;
  Int m = d / 4;
  Int r4 = m % 4;
  if (r4 < 0) r4 += 4;
  return (r4 == 2 || r4 == 3) && is_squarefree(m);
}

/// Q(√m) for squarefree m ≠ 0, 1.
class QuadField {
 public:
  explicit QuadField(const Int& m) : m_(m) {
    if (m == 0 || m == 1 || !is_squarefree(m))
      throw std::invalid_argument("QuadField: m must be squarefree and different from 0 and 1");
    Int r = m % 4;
    if (r < 0) r += 4;
    d_ = r == 1 ? m : Int(4 * m);
  }

  const Int& m() const { return m_; }
  const Int& discriminant() const { return d_; }
  bool is_real() const { return sgn(m_) > 0; }
  bool is_imaginary() const { return sgn(m_) < 0; }
  /// (r1, r2)
  std::pair<int, int> signature() const { return is_real() ? std::pair{2, 0} : std::pair{0, 1}; }

  /// Number of roots of unity.
  int roots_of_unity() const {
    if (m_ == -1) return 4;
    if (m_ == -3) return 6;
    return 2;
  }

  bool operator==(const QuadField& o) const { return m_ == o.m_; }

 private:
  Int m_;
  Int d_;
};

/// Primitive positive definite form a x^2 + b xy + c y^2.
struct QuadForm {
  Int a, b, c;
  Int discriminant() const { return b * b - 4 * a * c; }
  bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
  bool operator<(const QuadForm& o) const { return std::tie(a, b, c) < std::tie(o.a, o.b, o.c); }
};

inline bool is_reduced(const QuadForm& f) {
  if (!(abs(f.b) <= f.a && f.a <= f.c)) return false;
  if ((abs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
  return true;
}

/// Reduction of a positive definite form to the unique reduced form in its
/// proper equivalence class.
inline QuadForm reduce(QuadForm f) {
  if (f.a <= 0) throw std::invalid_argument("reduce: form is not positive definite");
  for (;;) {
    // normalize b into (-a, a]
    Int two_a = 2 * f.a;
    Int k;
    mpz_fdiv_q(k.get_mpz_t(), Int(f.a - f.b).get_mpz_t(), two_a.get_mpz_t());
    if (k != 0) {
      const Int d = f.discriminant();
      f.b += k * two_a;
      f.c = (f.b * f.b - d) / (4 * f.a);
    }
    if (f.a > f.c) {
      std::swap(f.a, f.c);
      f.b = -f.b;
      continue;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
  }
}

/// Every reduced primitive form of discriminant d < 0.
inline std::vector<QuadForm> reduced_forms(const Int& d) {
  if (d >= 0) throw std::invalid_argument("reduced_forms: discriminant must be negative");
  std::vector<QuadForm> out;
  const Int n = -d;
  for (Int a = 1; 3 * a * a <= n; ++a)
    for (Int b = -a + 1; b <= a; ++b) {
      Int num = b * b - d;
      if (num % (4 * a) != 0) continue;
      Int c = num / (4 * a);
      QuadForm f{a, b, c};
      if (c < a || !is_reduced(f)) continue;
      Int g = gcd(gcd(a, b), c);
      if (g == 1) out.push_back(f);
    }
  return out;
}

inline QuadForm identity_form(const Int& d) {
  Int r = d % 4;
  if (r < 0) r += 4;
  return r == 0 ? QuadForm{1, 0, -d / 4} : QuadForm{1, 1, (1 - d) / 4};
}

/// Dirichlet composition followed by reduction.
inline QuadForm compose(const QuadForm& f, const QuadForm& g) {
  const Int d = f.discriminant();
  if (g.discriminant() != d) throw std::invalid_argument("compose: discriminants differ");
  const Int h = (f.b + g.b) / 2;
  // u a1 + v a2 + w h = e
  Int e1, s1, t1;
  mpz_gcdext(e1.get_mpz_t(), s1.get_mpz_t(), t1.get_mpz_t(), f.a.get_mpz_t(), g.a.get_mpz_t());
  Int e, s2, t2;
  mpz_gcdext(e.get_mpz_t(), s2.get_mpz_t(), t2.get_mpz_t(), e1.get_mpz_t(), h.get_mpz_t());
  const Int u = s1 * s2, v = t1 * s2, w = t2;
  const Int A = f.a * g.a / (e * e);
  Int B = (u * f.a * g.b + v * g.a * f.b + w * (f.b * g.b + d) / 2) / e;
  Int two_a = 2 * A;
  mpz_fdiv_r(B.get_mpz_t(), B.get_mpz_t(), two_a.get_mpz_t());
  Int num = B * B - d;
  if (num % (4 * A) != 0) throw std::logic_error("compose: non-integral composite");
  return reduce({A, B, num / (4 * A)});
}

inline QuadForm form_power(QuadForm f, Int k) {
  QuadForm r = identity_form(f.discriminant());
  while (k > 0) {
    if (k % 2 == 1) r = compose(r, f);
    f = compose(f, f);
    k /= 2;
  }
  return r;
}

/// Finite abelian group of order h from the counts |A[p^i]| of elements
/// killed by p^i, for each prime p dividing h.
template <class KilledBy>
FinAbGroup abelian_from_counts(const Int& h, KilledBy killed_by) {
  IntVector factors;
  for (const auto& p : prime_factors(h)) {
    Int full = 1;
    for (Int t = h; t % p == 0; t /= p) full *= p;
    std::vector<Int> counts{1};
    Int pk = 1;
    while (counts.back() < full) {
      pk *= p;
      counts.push_back(killed_by(pk));
    }
    // cyclic factors of order >= p^i: log_p(counts[i] / counts[i-1])
    std::vector<int> at_least;
    for (std::size_t i = 1; i < counts.size(); ++i) {
      int r = 0;
      for (Int ratio = counts[i] / counts[i - 1]; ratio > 1; ratio /= p) ++r;
      at_least.push_back(r);
    }
    for (std::size_t i = 0; i < at_least.size(); ++i) {
      const int next = i + 1 < at_least.size() ? at_least[i + 1] : 0;
      Int order;
      mpz_pow_ui(order.get_mpz_t(), p.get_mpz_t(), i + 1);
      for (int k = 0; k < at_least[i] - next; ++k) factors.push_back(order);
    }
  }
  return FinAbGroup::from_diagonal(factors);
}

/// Class group of the imaginary quadratic order of fundamental discriminant
/// d < 0, as an abstract abelian group.
inline FinAbGroup quad_class_group(const Int& d) {
  if (d >= 0 || !is_fundamental_discriminant(d))
    throw std::invalid_argument("quad_class_group: need a negative fundamental discriminant");
  const auto forms = reduced_forms(d);
  const QuadForm one = identity_form(d);
  return abelian_from_counts(Int(forms.size()), [&](const Int& k) {
    Int c = 0;
    for (const auto& f : forms)
      if (form_power(f, k) == one) ++c;
    return c;
  });
}

/// H / [H, H] for a subgroup H of G given by its elements.
inline FinAbGroup abelianization(const FiniteGroup& g, const std::vector<FiniteGroup::Element>& h) {
  if (!g.is_subgroup(h)) throw std::invalid_argument("abelianization: not a subgroup");
  std::vector<FiniteGroup::Element> comm;
  for (auto a : h)
    for (auto b : h) comm.push_back(g.mul(g.mul(a, b), g.mul(g.inverse(a), g.inverse(b))));
  const auto c = g.closure(comm);
  const std::set<FiniteGroup::Element> cset(c.begin(), c.end());
  // one representative per coset xC
  std::vector<FiniteGroup::Element> reps;
  std::set<FiniteGroup::Element> seen;
  for (auto x : h) {
    if (seen.count(x)) continue;
    reps.push_back(x);
    for (auto y : c) seen.insert(g.mul(x, y));
  }
  return abelian_from_counts(Int(reps.size()), [&](const Int& k) {
    Int cnt = 0;
    for (auto x : reps) {
      FiniteGroup::Element y = g.identity();
      for (Int i = 0; i < k; ++i) y = g.mul(y, x);
      if (cset.count(y)) ++cnt;
    }
    return cnt;
  });
}

/// Unit (a + b √m) / den of a real quadratic field, with its norm.
struct QuadUnit {
  Int a, b, den;
  int norm = 0;
};

/// Fundamental unit of Q(√m), m > 1 squarefree, from the continued fraction
/// of the generator ω of the ring of integers: the first convergent p/q with
/// N(p - qω) = ±1 gives ε = p - q ω', ω' the conjugate.
inline QuadUnit fundamental_unit(const Int& m) {
  if (m <= 1 || !is_squarefree(m)) throw std::invalid_argument("fundamental_unit: need squarefree m > 1");
  Int r = m % 4;
  const bool half = r == 1;
  Int s;
  mpz_sqrt(s.get_mpz_t(), m.get_mpz_t());
  // ω = (P + √m) / Q
  Int P = half ? 1 : 0, Q = half ? 2 : 1;
  Int p_prev = 1, p_cur = 0, q_prev = 0, q_cur = 1;  // convergent recursion seeds
  for (int iter = 0; iter < 1000000; ++iter) {
    Int a = (P + s) / Q;
    Int p_next = a * p_prev + p_cur, q_next = a * q_prev + q_cur;
    p_cur = p_prev;
    q_cur = q_prev;
    p_prev = p_next;
    q_prev = q_next;
    const Int& x = p_prev;
    const Int& y = q_prev;
    // N(x - yω)
    Int norm = half ? Int(x * x - x * y - (m - 1) / 4 * y * y) : Int(x * x - m * y * y);
    if (abs(norm) == 1) {
      if (half) return {2 * x - y, y, 2, static_cast<int>(norm.get_si())};
      return {x, y, 1, static_cast<int>(norm.get_si())};
    }
    P = a * Q - P;
    Q = (m - P * P) / Q;
  }
  throw std::runtime_error("fundamental_unit: no unit found");
}

enum class Splitting { Split, Inert, Ramified };

inline const char* to_string(Splitting s) {
  switch (s) {
    case Splitting::Split: return "split";
    case Splitting::Inert: return "inert";
    case Splitting::Ramified: return "ramified";
  }
  return "?";
}

/// Decomposition of the prime p in the quadratic field of discriminant d.
inline Splitting splitting(const Int& d, const Int& p) {
  if (!is_prime(p)) throw std::invalid_argument("splitting: p is not prime");
  if (!is_fundamental_discriminant(d)) throw std::invalid_argument("splitting: d is not fundamental");
  const int k = mpz_kronecker(d.get_mpz_t(), p.get_mpz_t());
  return k == 0 ? Splitting::Ramified : (k > 0 ? Splitting::Split : Splitting::Inert);
}

/// One place of the base field K in a Galois extension L/K.
struct PlaceRecord {
  std::string label;
  Int residue_char = 0;  // 0 for archimedean places
  bool archimedean = false;
  int e = 1, f = 1, g = 1;
  std::vector<FiniteGroup::Element> decomposition;  // G_p
  std::vector<FiniteGroup::Element> inertia;        // I_q
};

/// Places of K relevant to L/K (every ramified place, plus any extra
/// places recorded for reference) and the Galois group.
struct RamificationRecord {
  GroupPtr group;
  std::size_t degree = 1;  // [L:K]
  std::vector<PlaceRecord> places;

  /// Finite places of K ramified in L.
  std::size_t s() const {
    std::size_t c = 0;
    for (const auto& p : places) c += !p.archimedean && p.e > 1;
    return c;
  }
  /// Finite and archimedean places of K ramified in L.
  std::size_t s_bar() const {
    std::size_t c = 0;
    for (const auto& p : places) c += p.e > 1;
    return c;
  }
  /// Finite places of L ramified over K.
  std::size_t s0() const {
    std::size_t c = 0;
    for (const auto& p : places) c += !p.archimedean && p.e > 1 ? p.g : 0;
    return c;
  }

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const {
    if (!group) throw std::invalid_argument("ramification: missing group");
    if (group->order() != degree) throw std::invalid_argument("ramification: |G| != [L:K]");
    for (const auto& p : places) {
      const std::string at = " at place " + p.label;
      if (!p.archimedean && static_cast<std::size_t>(p.e) * p.f * p.g != degree)
        throw std::invalid_argument("ramification: invariant e*f*g = [L:K] violated" + at);
      if (p.archimedean && (p.f != 1 || static_cast<std::size_t>(p.e) * p.g != degree || p.e > 2))
        throw std::invalid_argument("ramification: archimedean place must have f = 1, e*g = [L:K], e <= 2" + at);
      auto dec = p.decomposition, in = p.inertia;
      std::sort(dec.begin(), dec.end());
      std::sort(in.begin(), in.end());
      if (!group->is_subgroup(dec)) throw std::invalid_argument("ramification: decomposition group is not a subgroup" + at);
      if (!group->is_subgroup(in)) throw std::invalid_argument("ramification: inertia group is not a subgroup" + at);
      if (in.size() != static_cast<std::size_t>(p.e))
        throw std::invalid_argument("ramification: invariant |I| = e violated" + at);
      if (dec.size() != static_cast<std::size_t>(p.e * p.f))
        throw std::invalid_argument("ramification: invariant |G_p| = e*f violated" + at);
      if (!std::includes(dec.begin(), dec.end(), in.begin(), in.end()))
        throw std::invalid_argument("ramification: inertia not inside decomposition" + at);
      // I normal in G_p
      for (auto x : dec)
        for (auto y : in)
          if (!std::binary_search(in.begin(), in.end(), group->mul(group->mul(x, y), group->inverse(x))))
            throw std::invalid_argument("ramification: inertia not normal in decomposition" + at);
    }
  }
};

namespace detail {

/// (e, f, g) of a rational prime in the biquadratic field Q(√m1, √m2).
inline std::tuple<int, int, int> biquad_efg(const QuadField& k1, const QuadField& k2, const QuadField& k3,
                                            const Int& p) {
  std::array<Splitting, 3> sp{splitting(k1.discriminant(), p), splitting(k2.discriminant(), p),
                              splitting(k3.discriminant(), p)};
  int ram = 0;
  for (auto x : sp) ram += x == Splitting::Ramified;
  if (ram == 3) return {4, 1, 1};
  if (ram == 2) {
    for (auto x : sp)
      if (x != Splitting::Ramified) return x == Splitting::Inert ? std::tuple{2, 2, 1} : std::tuple{2, 1, 2};
  }
  if (ram == 0) {
    int split = 0;
    for (auto x : sp) split += x == Splitting::Split;
    return split == 3 ? std::tuple{1, 1, 4} : std::tuple{1, 2, 2};
  }
  throw std::logic_error("biquad_efg: impossible splitting pattern");
}

inline std::tuple<int, int, int> quad_efg(const QuadField& k, const Int& p) {
  switch (splitting(k.discriminant(), p)) {
    case Splitting::Split: return {1, 1, 2};
    case Splitting::Inert: return {1, 2, 1};
    case Splitting::Ramified: return {2, 1, 1};
  }
  return {1, 1, 1};
}

}  // namespace detail

/// Ramification of L = K(√m) over K = Q(√k): every finite place of K above
/// a prime dividing the discriminant of L, plus the archimedean places.
/// G = C_2 with element 1 the nontrivial automorphism.
inline RamificationRecord biquad_ramification(const QuadField& k, const Int& m) {
  const Int m2 = squarefree_part(m);
  if (m2 == 1 || m2 == k.m()) throw std::invalid_argument("biquad_ramification: degenerate adjunction, L = K");
  const QuadField k2(m2), k3(squarefree_part(k.m() * m2));
  RamificationRecord rec;
  rec.group = make_group(FiniteGroup::cyclic(2));
  rec.degree = 2;
  std::set<Int> primes;
  for (const auto& q : prime_factors(k.discriminant() * k2.discriminant())) primes.insert(q);
  const std::vector<FiniteGroup::Element> whole{0, 1}, trivial{0};
  for (const auto& p : primes) {
    auto [eL, fL, gL] = detail::biquad_efg(k, k2, k3, p);
    auto [eK, fK, gK] = detail::quad_efg(k, p);
    PlaceRecord pr;
    pr.residue_char = p;
    pr.e = eL / eK;
    pr.f = fL / fK;
    pr.g = gL / gK;
    pr.inertia = pr.e == 2 ? whole : trivial;
    pr.decomposition = pr.e * pr.f == 2 ? whole : trivial;
    for (int i = 0; i < gK; ++i) {
      pr.label = "p" + p.get_str() + (gK > 1 ? "_" + std::to_string(i + 1) : "");
      rec.places.push_back(pr);
    }
  }
  // archimedean places of K
  if (k.is_real()) {
    for (int i = 0; i < 2; ++i) {
      PlaceRecord pr;
      pr.archimedean = true;
      pr.label = "real_" + std::to_string(i + 1);
      const bool ramified = m2 < 0;
      pr.e = ramified ? 2 : 1;
      pr.g = ramified ? 1 : 2;
      pr.inertia = ramified ? whole : trivial;
      pr.decomposition = pr.inertia;
      rec.places.push_back(pr);
    }
  } else {
    PlaceRecord pr;
    pr.archimedean = true;
    pr.label = "complex";
    pr.g = 2;
    pr.inertia = trivial;
    pr.decomposition = trivial;
    rec.places.push_back(pr);
  }
  rec.validate();
  return rec;
}

/// Ramification of a quadratic field Q(√m) over Q.
inline RamificationRecord quad_ramification(const QuadField& l) {
  RamificationRecord rec;
  rec.group = make_group(FiniteGroup::cyclic(2));
  rec.degree = 2;
  const std::vector<FiniteGroup::Element> whole{0, 1}, trivial{0};
  for (const auto& p : prime_factors(l.discriminant())) {
    PlaceRecord pr;
    pr.label = "p" + p.get_str();
    pr.residue_char = p;
    pr.e = 2;
    pr.inertia = whole;
    pr.decomposition = whole;
    rec.places.push_back(pr);
  }
  PlaceRecord inf;
  inf.archimedean = true;
  inf.label = "real";
  inf.e = l.is_imaginary() ? 2 : 1;
  inf.g = l.is_imaginary() ? 1 : 2;
  inf.inertia = l.is_imaginary() ? whole : trivial;
  inf.decomposition = inf.inertia;
  rec.places.push_back(inf);
  rec.validate();
  return rec;
}

}  // namespace eqtate
