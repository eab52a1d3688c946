#pragma once

// Exact univariate polynomial arithmetic over Z and Q: division, gcd,
// Sturm sequences, cyclotomic polynomials, certified real-root brackets.

#include <salem/numeric.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

namespace salem {

// ----------------------------------------------------------------- IPoly
// Integer polynomial, coefficients ascending (c[0] + c[1] t + ...).
struct IPoly {
  std::vector<Int> c;

  IPoly() = default;
  explicit IPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }
  static IPoly zero() { return IPoly(); }
  static IPoly constant(Int k) { return IPoly({std::move(k)}); }
  static IPoly monomial(unsigned d, Int k = Int(1)) {
    std::vector<Int> v(d + 1, Int(0));
    v[d] = std::move(k);
    return IPoly(std::move(v));
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int deg() const { return static_cast<int>(c.size()) - 1; }
  const Int& lead() const { return c.back(); }
  Int coeff(size_t i) const { return i < c.size() ? c[i] : Int(0); }
  bool monic() const { return !c.empty() && c.back() == 1; }

  bool operator==(const IPoly& o) const { return c == o.c; }

  IPoly operator-() const {
    IPoly r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  IPoly operator+(const IPoly& o) const {
    std::vector<Int> r(std::max(c.size(), o.c.size()), Int(0));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return IPoly(std::move(r));
  }
  IPoly operator-(const IPoly& o) const { return *this + (-o); }
  IPoly operator*(const IPoly& o) const {
    if (is_zero() || o.is_zero()) return IPoly();
    std::vector<Int> r(c.size() + o.c.size() - 1, Int(0));
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return IPoly(std::move(r));
  }
  IPoly operator*(const Int& k) const {
    IPoly r = *this;
    for (auto& x : r.c) x *= k;
    r.trim();
    return r;
  }

  IPoly derivative() const {
    if (c.size() <= 1) return IPoly();
    std::vector<Int> r(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * Int(i);
    return IPoly(std::move(r));
  }

  Rat eval_rat(const Rat& x) const {
    Rat r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * x + Rat(c[i]);
    return r;
  }
  Int eval_int(const Int& x) const {
    Int r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
  }
  // Exact sign of the value at x = p/q, via integer Horner on c_i p^i q^(d-i).
  int sign_at(const Rat& x) const {
    if (is_zero()) return 0;
    const Int p = Int(numerator(x)), q = Int(denominator(x));
    Int acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * p + c[i] * pow_int(q, c.size() - 1 - i);
    return sign_of(acc);
  }
  RatInterval eval_interval(const RatInterval& x) const {
    RatInterval r = RatInterval::point(Rat(0));
    for (size_t i = c.size(); i-- > 0;)
      r = r * x + RatInterval::point(Rat(c[i]));
    return r;
  }
  Real eval_real(const Real& x) const {
    Real r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * x + Real(c[i]);
    return r;
  }

  // Reversal t^deg * p(1/t); reciprocal polynomials satisfy p == reversed(p).
  IPoly reversed() const {
    std::vector<Int> r(c.rbegin(), c.rend());
    return IPoly(std::move(r));
  }

  Int content() const {
    Int g = 0;
    for (const auto& x : c) g = boost::multiprecision::gcd(g, x);
    return g;
  }
  // Content removed, leading coefficient made positive.
  IPoly primitive() const {
    if (is_zero()) return *this;
    Int g = content();
    if (lead() < 0) g = -g;
    IPoly r = *this;
    for (auto& x : r.c) x /= g;
    return r;
  }
  // Content removed, sign of every coefficient preserved.
  IPoly primitive_signed() const {
    if (is_zero()) return *this;
    Int g = content();
    IPoly r = *this;
    for (auto& x : r.c) x /= g;
    return r;
  }
};

// Quotient of an exact division; throws if the division leaves a remainder.
inline IPoly div_exact(const IPoly& a, const IPoly& b) {
  if (b.is_zero()) throw domain_error("polynomial division by zero");
  if (a.is_zero()) return IPoly();
  if (a.deg() < b.deg()) throw domain_error("inexact polynomial division");
  std::vector<Int> rem = a.c;
  std::vector<Int> q(a.deg() - b.deg() + 1, Int(0));
  for (int k = a.deg() - b.deg(); k >= 0; --k) {
    Int& top = rem[k + b.deg()];
    if (top % b.lead() != 0) throw domain_error("inexact polynomial division");
    Int f = top / b.lead();
    q[k] = f;
    for (int j = 0; j <= b.deg(); ++j) rem[k + j] -= f * b.c[j];
  }
  for (const auto& x : rem)
    if (x != 0) throw domain_error("inexact polynomial division");
  return IPoly(std::move(q));
}

inline bool divides(const IPoly& b, const IPoly& a) {
  if (a.is_zero()) return true;
  if (b.is_zero() || a.deg() < b.deg()) return false;
  std::vector<Int> rem = a.c;
  for (int k = a.deg() - b.deg(); k >= 0; --k) {
    Int& top = rem[k + b.deg()];
    if (top % b.lead() != 0) return false;
    Int f = top / b.lead();
    for (int j = 0; j <= b.deg(); ++j) rem[k + j] -= f * b.c[j];
  }
  return std::all_of(rem.begin(), rem.end(), [](const Int& x) { return x == 0; });
}

// ----------------------------------------------------------------- RPoly
struct RPoly {
  std::vector<Rat> c;

  RPoly() = default;
  explicit RPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
  explicit RPoly(const IPoly& p) {
    c.reserve(p.c.size());
    for (const auto& x : p.c) c.emplace_back(x);
  }
  static RPoly constant(Rat k) { return RPoly({std::move(k)}); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int deg() const { return static_cast<int>(c.size()) - 1; }
  const Rat& lead() const { return c.back(); }
  Rat coeff(size_t i) const { return i < c.size() ? c[i] : Rat(0); }

  bool operator==(const RPoly& o) const { return c == o.c; }

  RPoly operator-() const {
    RPoly r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  RPoly operator+(const RPoly& o) const {
    std::vector<Rat> r(std::max(c.size(), o.c.size()), Rat(0));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return RPoly(std::move(r));
  }
  RPoly operator-(const RPoly& o) const { return *this + (-o); }
  RPoly operator*(const RPoly& o) const {
    if (is_zero() || o.is_zero()) return RPoly();
    std::vector<Rat> r(c.size() + o.c.size() - 1, Rat(0));
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return RPoly(std::move(r));
  }
  RPoly operator*(const Rat& k) const {
    RPoly r = *this;
    for (auto& x : r.c) x *= k;
    r.trim();
    return r;
  }

  Rat eval(const Rat& x) const {
    Rat r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
  }
  RatInterval eval_interval(const RatInterval& x) const {
    RatInterval r = RatInterval::point(Rat(0));
    for (size_t i = c.size(); i-- > 0;) r = r * x + RatInterval::point(c[i]);
    return r;
  }
  Real eval_real(const Real& x) const {
    Real r = 0;
    for (size_t i = c.size(); i-- > 0;)
      r = r * x + Real(numerator(c[i])) / Real(denominator(c[i]));
    return r;
  }

  // Integer polynomial with the same roots and signs (clears denominators).
  IPoly integerized() const {
    Int den = 1;
    for (const auto& x : c)
      den = boost::multiprecision::lcm(den, Int(denominator(x)));
    std::vector<Int> r;
    r.reserve(c.size());
    for (const auto& x : c)
      r.push_back(Int(numerator(x)) * (den / Int(denominator(x))));
    return IPoly(std::move(r));
  }
};

inline std::pair<RPoly, RPoly> divmod(const RPoly& a, const RPoly& b) {
  if (b.is_zero()) throw domain_error("polynomial division by zero");
  RPoly r = a;
  if (a.deg() < b.deg()) return {RPoly(), r};
  std::vector<Rat> q(a.deg() - b.deg() + 1, Rat(0));
  while (!r.is_zero() && r.deg() >= b.deg()) {
    int k = r.deg() - b.deg();
    Rat f = r.lead() / b.lead();
    q[k] = f;
    std::vector<Rat> rc = r.c;
    for (int j = 0; j <= b.deg(); ++j) rc[k + j] -= f * b.c[j];
    rc[r.deg()] = 0;
    r = RPoly(std::move(rc));
  }
  return {RPoly(std::move(q)), r};
}

// gcd over Q[t], returned as a primitive integer polynomial (positive lead).
inline IPoly gcd_poly(const IPoly& a, const IPoly& b) {
  RPoly f(a), g(b);
  while (!g.is_zero()) {
    RPoly r = divmod(f, g).second;
    f = g;
    g = r;
  }
  if (f.is_zero()) return IPoly();
  return f.integerized().primitive();
}

// ----------------------------------------------------------------- Sturm
struct SturmChain {
  std::vector<IPoly> seq;

  explicit SturmChain(const IPoly& p) {
    IPoly f = p.primitive();
    IPoly g = gcd_poly(f, f.derivative());
    if (g.deg() > 0) f = div_exact(f, g).primitive();  // squarefree part
    seq.push_back(f);
    if (f.deg() >= 1) {
      seq.push_back(f.derivative().primitive_signed());
      while (seq.back().deg() >= 1) {
        RPoly r = divmod(RPoly(seq[seq.size() - 2]), RPoly(seq.back())).second;
        if (r.is_zero()) break;
        seq.push_back((-r.integerized()).primitive_signed());
      }
    }
  }

  const IPoly& squarefree() const { return seq.front(); }

  int variations(const Rat& x) const {
    int v = 0, prev = 0;
    for (const auto& p : seq) {
      int s = p.sign_at(x);
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
    return v;
  }
  int variations_at_pos_inf() const {
    int v = 0, prev = 0;
    for (const auto& p : seq) {
      if (p.is_zero()) continue;
      int s = sign_of(p.lead());
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
    return v;
  }
  int variations_at_neg_inf() const {
    int v = 0, prev = 0;
    for (const auto& p : seq) {
      if (p.is_zero()) continue;
      int s = sign_of(p.lead());
      if (p.deg() % 2 == 1) s = -s;
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
    return v;
  }

  // Number of distinct real roots in (a, b].
  int count(const Rat& a, const Rat& b) const {
    if (a >= b) return 0;
    return variations(a) - variations(b);
  }
  int count_gt(const Rat& a) const { return variations(a) - variations_at_pos_inf(); }
  int count_all() const { return variations_at_neg_inf() - variations_at_pos_inf(); }
};

// ------------------------------------------------------------ cyclotomic
inline const IPoly& cyclotomic(unsigned m) {
  static std::map<unsigned, IPoly> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  IPoly num = IPoly::monomial(m) - IPoly::constant(Int(1));
  for (unsigned d = 1; d < m; ++d)
    if (m % d == 0) num = div_exact(num, cyclotomic(d));
  return cache.emplace(m, std::move(num)).first->second;
}

inline unsigned euler_phi(unsigned m) {
  unsigned r = m;
  for (unsigned p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      r -= r / p;
      while (m % p == 0) m /= p;
    }
  if (m > 1) r -= r / m;
  return r;
}

// ------------------------------------------------------- root bracketing
namespace detail {
inline Rat pick_nonroot(const IPoly& f, const Rat& lo, const Rat& hi) {
  const int tries = f.deg() + 3;
  for (int j = 1; j <= tries; ++j) {
    Rat cand = lo + (hi - lo) * Rat(2 * j - 1, 2 * tries);
    if (f.sign_at(cand) != 0) return cand;
  }
  throw domain_error("no non-root sample point found");
}
}  // namespace detail

// Bracket (lo, hi) around a single simple real root of the squarefree part
// of p: f(lo) * f(hi) < 0 throughout refinement.
struct RootBracket {
  IPoly f;  // squarefree
  Rat lo, hi;

  void bisect_once() {
    Rat mid = (lo + hi) / 2;
    int sm = f.sign_at(mid);
    if (sm == 0) {
      // the bracketed simple root is exactly the dyadic midpoint
      Rat a = (3 * lo + hi) / 4, b = (lo + 3 * hi) / 4;
      lo = a;
      hi = b;
      return;
    }
    if (sm == f.sign_at(lo))
      lo = mid;
    else
      hi = mid;
  }
  void refine_to(const Rat& width) {
    while (hi - lo > width) bisect_once();
  }
  void refine_bits(unsigned bits) {
    refine_to(Rat(1, pow_int(2, bits)));
  }
  RatInterval interval() const { return RatInterval(lo, hi); }
  Real midpoint_real() const { return to_real((lo + hi) / 2); }
};

// Bracket for the largest real root of p; requires that one exists.
inline RootBracket largest_real_root(const IPoly& p) {
  SturmChain st(p);
  if (st.count_all() == 0) throw domain_error("polynomial has no real root");
  const IPoly& f = st.squarefree();
  Int b = 1;
  for (const auto& x : p.c) {
    Int a = abs(x) / abs(p.lead()) + 1;
    if (a > b) b = a;
  }
  Rat hi = Rat(b + 1), lo = -hi;
  while (st.count(lo, hi) > 1) {
    Rat mid = (lo + hi) / 2;
    if (st.count(mid, hi) >= 1)
      lo = mid;
    else
      hi = mid;
  }
  // One root in (lo, hi]; nudge endpoints off roots so the signs differ.
  if (f.sign_at(hi) == 0) hi += (hi - lo) / 2;
  if (f.sign_at(lo) == 0) lo = detail::pick_nonroot(f, lo, (3 * lo + hi) / 4);
  RootBracket br{f, lo, hi};
  if (f.sign_at(lo) == f.sign_at(hi)) throw domain_error("bracketing failed");
  return br;
}

// Exact sign of g at the root isolated by br. Zero iff the root is shared.
inline int sign_at_root(const IPoly& g, RootBracket& br) {
  if (g.is_zero()) return 0;
  IPoly shared = gcd_poly(g, br.f);
  if (shared.deg() >= 1) {
    SturmChain sh(shared);
    if (sh.count(br.lo, br.hi) > 0) return 0;
  }
  SturmChain sg(g);
  while (sg.count(br.lo, br.hi) > 0) br.bisect_once();
  return g.sign_at((br.lo + br.hi) / 2) != 0 ? g.sign_at((br.lo + br.hi) / 2)
                                             : g.sign_at(br.hi);
}

// -------------------------------------------------------- interpolation
// Lagrange interpolation; the result must be an integer polynomial, as for
// characteristic polynomials sampled at integer points.
inline IPoly interpolate_integer(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  const size_t n = xs.size();
  std::vector<Rat> acc(1, Rat(0));
  for (size_t i = 0; i < n; ++i) {
    std::vector<Rat> num(1, Rat(1));
    Rat den = 1;
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<Rat> nn(num.size() + 1, Rat(0));
      for (size_t k = 0; k < num.size(); ++k) {
        nn[k + 1] += num[k];
        nn[k] -= num[k] * xs[j];
      }
      num = std::move(nn);
      den *= xs[i] - xs[j];
    }
    Rat w = ys[i] / den;
    if (acc.size() < num.size()) acc.resize(num.size(), Rat(0));
    for (size_t k = 0; k < num.size(); ++k) acc[k] += num[k] * w;
  }
  std::vector<Int> out;
  out.reserve(acc.size());
  for (const auto& q : acc) {
    if (denominator(q) != 1) throw domain_error("interpolation expected integer result");
    out.push_back(Int(numerator(q)));
  }
  return IPoly(std::move(out));
}

}  // namespace salem
