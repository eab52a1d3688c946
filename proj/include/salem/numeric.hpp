#pragma once

// Arithmetic tiers shared by the whole library:
//   Int / Rat  - exact arbitrary-precision integers and rationals
//   Real       - variable-precision MPFR floating point (precision in bits)
//   RatInterval- exact rational interval arithmetic for certified signs

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace salem {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                            boost::multiprecision::et_off>;

struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct precision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct data_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2;
}

// Sets the MPFR working precision (in bits) for the current scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits)
      : saved_(Real::default_precision()) {
    Real::default_precision(bits_to_digits10(bits));
  }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

inline Real to_real(const Rat& q) {
  return Real(numerator(q)) / Real(denominator(q));
}

inline Int pow_int(const Int& b, unsigned e) {
  Int r = 1, base = b;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline Rat pow_rat(const Rat& b, unsigned e) {
  Rat r = 1, base = b;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline int sign_of(const Int& x) { return x == 0 ? 0 : (x > 0 ? 1 : -1); }
inline int sign_of(const Rat& x) { return x == 0 ? 0 : (x > 0 ? 1 : -1); }

// Fixed-width decimal rendering, deterministic across runs.
inline std::string decimal_string(const Real& x, unsigned digits = 50) {
  return x.str(digits, std::ios_base::fmtflags());
}

// Closed interval with exact rational endpoints.
struct RatInterval {
  Rat lo, hi;

  RatInterval() : lo(0), hi(0) {}
  RatInterval(Rat a, Rat b) : lo(std::move(a)), hi(std::move(b)) {
    if (lo > hi) std::swap(lo, hi);
  }
  static RatInterval point(const Rat& a) { return RatInterval(a, a); }

  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  int sign() const {
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    return 0;  // undecided
  }
  Rat width() const { return hi - lo; }

  RatInterval operator+(const RatInterval& o) const {
    return RatInterval(lo + o.lo, hi + o.hi);
  }
  RatInterval operator-(const RatInterval& o) const {
    return RatInterval(lo - o.hi, hi - o.lo);
  }
  RatInterval operator*(const RatInterval& o) const {
    Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    Rat mn = a, mx = a;
    for (const Rat* v : {&b, &c, &d}) {
      if (*v < mn) mn = *v;
      if (*v > mx) mx = *v;
    }
    RatInterval r;
    r.lo = mn;
    r.hi = mx;
    return r;
  }
  RatInterval operator/(const RatInterval& o) const {
    if (o.contains_zero()) throw domain_error("interval division by zero");
    RatInterval inv(Rat(1) / o.hi, Rat(1) / o.lo);
    return *this * inv;
  }
};

}  // namespace salem
