#pragma once

// The Lorentz lattice Z^{1,N}: exact integer vectors, the signature (1,N)
// inner product, simple roots, reflections, and form-preserving matrices.

#include <salem/poly.hpp>

#include <vector>

namespace salem {

// Coefficient vector over the basis e_0, ..., e_N.
struct LorentzVector {
  std::vector<Int> coeffs;  // size N+1

  LorentzVector() = default;
  explicit LorentzVector(size_t n_plus_1) : coeffs(n_plus_1, Int(0)) {}
  explicit LorentzVector(std::vector<Int> v) : coeffs(std::move(v)) {}

  static LorentzVector basis(int i, int N) {
    LorentzVector v(N + 1);
    v.coeffs[i] = 1;
    return v;
  }

  int N() const { return static_cast<int>(coeffs.size()) - 1; }
  Int& operator[](size_t i) { return coeffs[i]; }
  const Int& operator[](size_t i) const { return coeffs[i]; }
  bool operator==(const LorentzVector& o) const { return coeffs == o.coeffs; }

  LorentzVector operator+(const LorentzVector& o) const {
    LorentzVector r = *this;
    for (size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] += o.coeffs[i];
    return r;
  }
  LorentzVector operator-(const LorentzVector& o) const {
    LorentzVector r = *this;
    for (size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] -= o.coeffs[i];
    return r;
  }
  LorentzVector operator*(const Int& k) const {
    LorentzVector r = *this;
    for (auto& x : r.coeffs) x *= k;
    return r;
  }
  Int max_abs_coeff() const {
    Int m = 0;
    for (const auto& x : coeffs)
      if (abs(x) > m) m = abs(x);
    return m;
  }
};

// (u, v) = u_0 v_0 - sum_{i >= 1} u_i v_i
inline Int inner_product(const LorentzVector& u, const LorentzVector& v) {
  if (u.coeffs.size() != v.coeffs.size())
    throw dimension_error("inner_product: dimension mismatch");
  Int s = u.coeffs[0] * v.coeffs[0];
  for (size_t i = 1; i < u.coeffs.size(); ++i) s -= u.coeffs[i] * v.coeffs[i];
  return s;
}

// alpha_0 = e_0 - e_1 - e_2 - e_3, alpha_i = e_i - e_{i+1} for i >= 1.
inline LorentzVector simple_root(int i, int N) {
  if (N < 3) throw dimension_error("simple_root: N must be >= 3");
  if (i < 0 || i > N - 1) throw domain_error("simple_root: index out of range");
  LorentzVector v(N + 1);
  if (i == 0) {
    v[0] = 1;
    v[1] = v[2] = v[3] = -1;
  } else {
    v[i] = 1;
    v[i + 1] = -1;
  }
  return v;
}

// Square integer matrix acting on column coefficient vectors.
struct LatticeAutomorphism {
  int n = 0;  // matrix dimension N+1
  std::vector<Int> a;  // row-major

  LatticeAutomorphism() = default;
  explicit LatticeAutomorphism(int dim) : n(dim), a(size_t(dim) * dim, Int(0)) {}

  static LatticeAutomorphism identity(int dim) {
    LatticeAutomorphism m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
  }

  Int& at(int r, int c) { return a[size_t(r) * n + c]; }
  const Int& at(int r, int c) const { return a[size_t(r) * n + c]; }
  int N() const { return n - 1; }
  bool operator==(const LatticeAutomorphism& o) const { return n == o.n && a == o.a; }

  LorentzVector apply(const LorentzVector& v) const {
    if (static_cast<int>(v.coeffs.size()) != n)
      throw dimension_error("apply: dimension mismatch");
    LorentzVector r(n);
    for (int i = 0; i < n; ++i) {
      Int s = 0;
      for (int j = 0; j < n; ++j)
        if (at(i, j) != 0) s += at(i, j) * v.coeffs[j];
      r.coeffs[i] = s;
    }
    return r;
  }
};

// compose(a, b)(x) = a(b(x)); matrix product, right factor acts first.
inline LatticeAutomorphism compose(const LatticeAutomorphism& x, const LatticeAutomorphism& y) {
  if (x.n != y.n) throw dimension_error("compose: dimension mismatch");
  LatticeAutomorphism r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      const Int& f = x.at(i, k);
      if (f == 0) continue;
      for (int j = 0; j < x.n; ++j)
        if (y.at(k, j) != 0) r.at(i, j) += f * y.at(k, j);
    }
  return r;
}

// Matrix of x -> x + (x, alpha) alpha for a root alpha with (alpha, alpha) = -2.
inline LatticeAutomorphism reflection_in_root(const LorentzVector& alpha) {
  const int dim = alpha.N() + 1;
  LatticeAutomorphism m = LatticeAutomorphism::identity(dim);
  for (int j = 0; j < dim; ++j) {
    // (e_j, alpha) with the Lorentz signs
    Int pairing = (j == 0) ? alpha[0] : -alpha[j];
    if (pairing == 0) continue;
    for (int i = 0; i < dim; ++i) m.at(i, j) += pairing * alpha[i];
  }
  return m;
}

inline LatticeAutomorphism reflection(int i, int N) {
  return reflection_in_root(simple_root(i, N));
}

// M^T J M == J with J = diag(1, -1, ..., -1).
inline bool preserves_lorentz_form(const LatticeAutomorphism& m) {
  for (int i = 0; i < m.n; ++i)
    for (int j = i; j < m.n; ++j) {
      Int s = m.at(0, i) * m.at(0, j);
      for (int k = 1; k < m.n; ++k) s -= m.at(k, i) * m.at(k, j);
      Int expect = (i != j) ? Int(0) : (i == 0 ? Int(1) : Int(-1));
      if (s != expect) return false;
    }
  return true;
}

// Fraction-free Bareiss determinant.
inline Int determinant(const LatticeAutomorphism& m) {
  int n = m.n;
  std::vector<Int> a = m.a;
  Int denom = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[size_t(k) * n + k] == 0) {
      int p = -1;
      for (int r = k + 1; r < n; ++r)
        if (a[size_t(r) * n + k] != 0) {
          p = r;
          break;
        }
      if (p < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(a[size_t(k) * n + c], a[size_t(p) * n + c]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int v = a[size_t(i) * n + j] * a[size_t(k) * n + k] -
                a[size_t(i) * n + k] * a[size_t(k) * n + j];
        a[size_t(i) * n + j] = v / denom;  // exact by Bareiss
      }
    denom = a[size_t(k) * n + k];
  }
  return sign > 0 ? a[size_t(n - 1) * n + (n - 1)] : -a[size_t(n - 1) * n + (n - 1)];
}

// det(tI - M), exact; sampled at integers and interpolated, each sample a
// fraction-free Bareiss determinant.
inline IPoly char_poly(const LatticeAutomorphism& m) {
  const int n = m.n;
  std::vector<Rat> xs, ys;
  xs.reserve(n + 1);
  ys.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    LatticeAutomorphism tm(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) tm.at(i, j) = (i == j ? Int(k) : Int(0)) - m.at(i, j);
    xs.emplace_back(k);
    ys.emplace_back(determinant(tm));
  }
  return interpolate_integer(xs, ys);
}

}  // namespace salem
