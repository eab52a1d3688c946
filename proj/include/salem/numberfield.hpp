#pragma once

// Arithmetic in Q[t]/(S(t)) for a monic integer S: exact certification tier
// for kernel solving, eigen-residuals and periodicity tests.

#include <salem/poly.hpp>

#include <memory>
#include <utility>

namespace salem {

class NumberField;

// Element of Q[t]/(S), stored as a rational polynomial of degree < deg S.
struct NFElem {
  std::shared_ptr<const NumberField> field;
  RPoly value;

  bool is_zero() const { return value.is_zero(); }
  bool operator==(const NFElem& o) const { return value == o.value; }

  NFElem operator+(const NFElem& o) const;
  NFElem operator-(const NFElem& o) const;
  NFElem operator*(const NFElem& o) const;
  NFElem operator-() const;
  NFElem inverse() const;

  Real embed_real(const Real& root) const { return value.eval_real(root); }
  RatInterval embed_interval(const RatInterval& root) const {
    return value.eval_interval(root);
  }
};

class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  IPoly modulus;  // monic

  static std::shared_ptr<NumberField> make(IPoly S) {
    if (!S.monic() || S.deg() < 1)
      throw domain_error("number field modulus must be monic of degree >= 1");
    auto f = std::shared_ptr<NumberField>(new NumberField());
    f->modulus = std::move(S);
    return f;
  }

  int degree() const { return modulus.deg(); }

  NFElem element(RPoly v) const {
    return NFElem{shared_from_this(), reduce(std::move(v))};
  }
  NFElem from_rat(const Rat& q) const { return element(RPoly::constant(q)); }
  NFElem zero() const { return element(RPoly()); }
  NFElem one() const { return from_rat(Rat(1)); }
  // The class of t: the distinguished root delta.
  NFElem generator() const { return element(RPoly({Rat(0), Rat(1)})); }
  NFElem generator_pow(unsigned e) const {
    return element(RPoly(IPoly::monomial(e)));
  }

  RPoly reduce(RPoly v) const {
    if (v.deg() < modulus.deg()) return v;
    return divmod(v, RPoly(modulus)).second;
  }

 private:
  NumberField() = default;
};

inline NFElem NFElem::operator+(const NFElem& o) const {
  return NFElem{field, value + o.value};
}
inline NFElem NFElem::operator-(const NFElem& o) const {
  return NFElem{field, value - o.value};
}
inline NFElem NFElem::operator-() const { return NFElem{field, -value}; }
inline NFElem NFElem::operator*(const NFElem& o) const {
  return NFElem{field, field->reduce(value * o.value)};
}

// Extended Euclid against the modulus. Throws if the element is a zero
// divisor, which certifies that the modulus is reducible.
inline NFElem NFElem::inverse() const {
  if (is_zero()) throw domain_error("inverse of zero");
  RPoly r0(field->modulus), r1 = value;
  RPoly s0, s1 = RPoly::constant(Rat(1));
  while (!r1.is_zero()) {
    auto [q, r2] = divmod(r0, r1);
    RPoly s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r0.deg() != 0)
    throw domain_error("zero divisor: reducible modulus detected");
  return NFElem{field, field->reduce(s0 * Rat(Rat(1) / r0.c[0]))};
}

}  // namespace salem
