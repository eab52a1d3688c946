#pragma once

// Spectral side of the construction: characteristic polynomials split into
// cyclotomic and Salem parts, the period ell, the small n x n matrix whose
// kernel carries the eigenvector data, exact number-field solving, a scaled
// integer tier for bulk scans, and the closed-form bound functions.

#include <salem/lorentz.hpp>
#include <salem/numberfield.hpp>
#include <salem/orbit_data.hpp>
#include <salem/weyl.hpp>

#include <optional>
#include <string>
#include <vector>

namespace salem {

// ------------------------------------------------------------ Salem split
struct SalemFactorization {
  IPoly chi;  // input
  IPoly R;    // product of cyclotomic factors (with multiplicity)
  IPoly S;    // Salem part; constant 1 when lambda = 1
  Int ell = 1;
  bool pattern_ok = true;  // Salem root pattern of S (vacuous when S trivial)
  std::string pattern_note;
  std::optional<RootBracket> lambda_bracket;

  bool has_salem() const { return S.deg() >= 1; }
  Real lambda(unsigned bits = 256) {
    if (!has_salem()) return Real(1);
    lambda_bracket->refine_bits(bits);
    return lambda_bracket->midpoint_real();
  }
  RatInterval lambda_interval(unsigned bits = 64) {
    if (!has_salem()) return RatInterval::point(Rat(1));
    lambda_bracket->refine_bits(bits);
    return lambda_bracket->interval();
  }
};

// Exact Salem-pattern certificate for a candidate factor: reciprocal, one
// real root in (1,inf), one in (0,1), every other root on the unit circle
// (checked through the trace polynomial, no tolerance needed).
inline std::pair<bool, std::string> salem_pattern(const IPoly& S) {
  if (S.deg() < 2) return {false, "degree too small"};
  if (S.deg() % 2 != 0) return {false, "odd degree"};
  if (!(S == S.reversed())) return {false, "not reciprocal"};
  SturmChain st(S);
  if (st.count_gt(Rat(1)) != 1) return {false, "root count in (1,inf) != 1"};
  if (st.count(Rat(0), Rat(1)) != 1) return {false, "root count in (0,1) != 1"};
  const int h = S.deg() / 2;
  // S(t) / t^h = Q(y), y = t + 1/t, via p_k(y) = t^k + t^-k.
  std::vector<IPoly> p(h + 1);
  p[0] = IPoly::constant(Int(2));
  if (h >= 1) p[1] = IPoly::monomial(1);
  for (int k = 2; k <= h; ++k)
    p[k] = IPoly::monomial(1) * p[k - 1] - p[k - 2];
  IPoly Q = IPoly::constant(S.coeff(h));
  for (int k = 1; k <= h; ++k) Q = Q + p[k] * S.coeff(h + k);
  SturmChain sq(Q);
  if (sq.count(Rat(-2), Rat(2)) != h - 1)
    return {false, "conjugates leave the unit circle"};
  if (sq.count_gt(Rat(2)) != 1) return {false, "trace roots above 2 != 1"};
  return {true, "reciprocal; all conjugates except lambda, 1/lambda on |z|=1"};
}

// Orders m with phi(m) <= D, memoized per bound.
inline const std::vector<unsigned>& cyclotomic_candidates(unsigned D) {
  static std::map<unsigned, std::vector<unsigned>> cache;
  auto it = cache.find(D);
  if (it != cache.end()) return it->second;
  std::vector<unsigned> v;
  for (unsigned m = 1; m <= 2 * D * D + 1; ++m)
    if (euler_phi(m) <= D) v.push_back(m);
  return cache.emplace(D, std::move(v)).first->second;
}

// Strips every cyclotomic factor (with multiplicity); ell is the lcm of the
// stripped orders; lambda is bracketed by certified bisection on S.
inline SalemFactorization split_salem(const IPoly& chi_in) {
  if (!chi_in.monic()) throw domain_error("split_salem expects a monic polynomial");
  SalemFactorization out;
  out.chi = chi_in;
  out.R = IPoly::constant(Int(1));
  IPoly rest = chi_in;
  const unsigned D = static_cast<unsigned>(chi_in.deg());
  Int v2 = rest.eval_int(Int(2)), vm2 = rest.eval_int(Int(-2));
  for (unsigned m : cyclotomic_candidates(D)) {
    if (rest.deg() < 1) break;
    const IPoly& phi = cyclotomic(m);
    // value divisibility pre-filter: phi | rest forces phi(x) | rest(x)
    Int p2 = phi.eval_int(Int(2));
    if (v2 != 0 && p2 != 0 && v2 % p2 != 0) continue;
    Int pm2 = phi.eval_int(Int(-2));
    if (vm2 != 0 && pm2 != 0 && vm2 % pm2 != 0) continue;
    bool stripped = false;
    while (divides(phi, rest)) {
      rest = div_exact(rest, phi);
      out.R = out.R * phi;
      stripped = true;
    }
    if (stripped) {
      out.ell = boost::multiprecision::lcm(out.ell, Int(m));
      v2 = rest.eval_int(Int(2));
      vm2 = rest.eval_int(Int(-2));
    }
  }
  out.S = rest;
  if (out.S.deg() >= 1) {
    auto [ok, note] = salem_pattern(out.S);
    out.pattern_ok = ok;
    out.pattern_note = note;
    out.lambda_bracket = largest_real_root(out.S);
    out.lambda_bracket->refine_bits(64);
  }
  return out;
}

// ------------------------------------------------------------- cycle data
// sigma-cycle bookkeeping behind the coefficient functions: for each index
// pair, its full cycle, the kappa prefix sums and the cycle total E.
struct CycleData {
  const OrbitData& tau;
  std::vector<int> cycle_of;             // kpos -> cycle id
  std::vector<std::vector<int>> cycles;  // members (kpos) in sigma order
  std::vector<int> total;                // cycle id -> E = sum of kappa

  explicit CycleData(const OrbitData& t) : tau(t), cycle_of(t.size(), -1) {
    for (int p = 0; p < t.size(); ++p) {
      if (cycle_of[p] >= 0) continue;
      std::vector<int> cyc;
      int q = p, E = 0;
      do {
        cycle_of[q] = static_cast<int>(cycles.size());
        cyc.push_back(q);
        E += t.kappa[q];
        q = kpos(t.sigma[q]);
      } while (q != p);
      cycles.push_back(std::move(cyc));
      total.push_back(E);
    }
  }

  // Exponents e with coefficient of s_j in v_p equal to -(d-1) d^e / (d^E - 1).
  std::vector<int> cbar_exponents(const IndexPair& p, int j) const {
    std::vector<int> exps;
    const int E = total[cycle_of[kpos(p)]];
    int acc = tau.kap(p);
    IndexPair q = tau.sig(p);
    const size_t L = cycles[cycle_of[kpos(p)]].size();
    for (size_t r = 1; r <= L; ++r) {
      if (q.i == j) exps.push_back(E - acc);
      acc += tau.kap(q);
      q = tau.sig(q);
    }
    return exps;
  }
  int cycle_total(const IndexPair& p) const { return total[cycle_of[kpos(p)]]; }
};

// ------------------------------------------------------- rational tier
// cbar_{p,j}(d) exactly, for rational d with d^E != 1.
inline Rat cbar(const OrbitData& t, const CycleData& cd, const IndexPair& p, int j,
                const Rat& d) {
  const int E = cd.cycle_total(p);
  Rat dE = pow_rat(d, E);
  if (dE == 1) throw domain_error("cbar: d is a root of unity of bad order");
  Rat num = 0;
  for (int e : cd.cbar_exponents(p, j)) num += pow_rat(d, e);
  return -(d - 1) * num / (dE - 1);
}

inline Rat c_entry(const OrbitData& t, const CycleData& cd, int i, int j, const Rat& d) {
  Rat s = 0;
  for (int iota = 1; iota <= 3; ++iota) s += cbar(t, cd, {i, iota}, j, d);
  return -s;
}

// The n x n matrix with entries d-2+x_ii / -1+x_ij / -d+x_ij.
inline std::vector<std::vector<Rat>> matrix_A(int n, const Rat& d,
                                              const std::vector<std::vector<Rat>>& x) {
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat base = (i == j) ? d - 2 : (i > j ? Rat(-1) : -d);
      a[i][j] = base + x[i][j];
    }
  return a;
}

inline Rat det_rat(std::vector<std::vector<Rat>> a) {
  const int n = static_cast<int>(a.size());
  Rat det = 1;
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int r = k; r < n; ++r)
      if (a[r][k] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (int r = k + 1; r < n; ++r) {
      Rat f = a[r][k] / a[k][k];
      for (int c = k; c < n; ++c) a[r][c] -= f * a[k][c];
    }
  }
  return det;
}

inline std::vector<std::vector<Rat>> matrix_A_tau(const OrbitData& t, const Rat& d) {
  CycleData cd(t);
  std::vector<std::vector<Rat>> x(t.n, std::vector<Rat>(t.n));
  for (int i = 1; i <= t.n; ++i)
    for (int j = 1; j <= t.n; ++j) x[i - 1][j - 1] = c_entry(t, cd, i, j, d);
  return matrix_A(t.n, d, x);
}

inline Rat chi_tau(const OrbitData& t, const Rat& d) { return det_rat(matrix_A_tau(t, d)); }

// ------------------------------------------------------- symbolic tier
inline IPoly ipoly_mod(const IPoly& a, const IPoly& s) {
  if (!s.monic()) throw domain_error("ipoly_mod needs a monic modulus");
  if (a.deg() < s.deg()) return a;
  std::vector<Int> r = a.c;
  for (int k = a.deg() - s.deg(); k >= 0; --k) {
    Int f = r[k + s.deg()];
    if (f == 0) continue;
    for (int j = 0; j <= s.deg(); ++j) r[k + j] -= f * s.c[j];
  }
  return IPoly(std::move(r));
}

// The cleared matrix D_i * A_tau(d) with integer polynomial entries, where
// D_i is the product of (d^{E_c} - 1) over the distinct cycles meeting row i.
struct ClearedMatrix {
  int n;
  std::vector<std::vector<IPoly>> entry;
  std::vector<IPoly> row_scale;

  ClearedMatrix(const OrbitData& t, const CycleData& cd) : n(t.n) {
    entry.assign(n, std::vector<IPoly>(n));
    row_scale.assign(n, IPoly::constant(Int(1)));
    for (int i = 1; i <= n; ++i) {
      std::vector<int> cyc_ids;
      for (int iota = 1; iota <= 3; ++iota) {
        int c = cd.cycle_of[kpos({i, iota})];
        if (std::find(cyc_ids.begin(), cyc_ids.end(), c) == cyc_ids.end())
          cyc_ids.push_back(c);
      }
      auto denom_of = [&](int c) {
        return IPoly::monomial(unsigned(cd.total[c])) - IPoly::constant(Int(1));
      };
      IPoly Di = IPoly::constant(Int(1));
      for (int c : cyc_ids) Di = Di * denom_of(c);
      row_scale[i - 1] = Di;
      for (int j = 1; j <= n; ++j) {
        IPoly base = (i == j) ? IPoly({Int(-2), Int(1)})
                              : (i > j ? IPoly::constant(Int(-1))
                                       : IPoly({Int(0), Int(-1)}));
        IPoly acc = base * Di;
        for (int iota = 1; iota <= 3; ++iota) {
          int c = cd.cycle_of[kpos({i, iota})];
          IPoly cofactor = IPoly::constant(Int(1));
          for (int c2 : cyc_ids)
            if (c2 != c) cofactor = cofactor * denom_of(c2);
          IPoly num;  // sum of d^e over the exponent list
          for (int e : cd.cbar_exponents({i, iota}, j))
            num = num + IPoly::monomial(unsigned(e));
          // x_{ij} contribution: -cbar = +(d-1) num / (d^E - 1)
          acc = acc + IPoly({Int(-1), Int(1)}) * num * cofactor;
        }
        entry[i - 1][j - 1] = acc;
      }
    }
  }

  IPoly det() const { return det_rec(*this); }
  // Minor deleting row r and column c (0-based).
  IPoly minor(int r, int c) const {
    ClearedMatrix sub = *this;
    sub.n = n - 1;
    sub.entry.clear();
    for (int i = 0; i < n; ++i) {
      if (i == r) continue;
      std::vector<IPoly> row;
      for (int j = 0; j < n; ++j)
        if (j != c) row.push_back(entry[i][j]);
      sub.entry.push_back(std::move(row));
    }
    return det_rec(sub);
  }

 private:
  static IPoly det_rec(const ClearedMatrix& m) {
    if (m.n == 0) return IPoly::constant(Int(1));
    if (m.n == 1) return m.entry[0][0];
    IPoly acc;
    for (int j = 0; j < m.n; ++j) {
      if (m.entry[0][j].is_zero()) continue;
      ClearedMatrix sub = m;
      sub.n = m.n - 1;
      sub.entry.clear();
      for (int i = 1; i < m.n; ++i) {
        std::vector<IPoly> row;
        for (int c = 0; c < m.n; ++c)
          if (c != j) row.push_back(m.entry[i][c]);
        sub.entry.push_back(std::move(row));
      }
      IPoly term = m.entry[0][j] * det_rec(sub);
      acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
  }
};

// chi_tau with denominators cleared: det(diag(D_i) A_tau) as a polynomial.
inline IPoly cleared_char_numerator(const OrbitData& t) {
  CycleData cd(t);
  return ClearedMatrix(t, cd).det();
}

// Strip cyclotomic factors from p and return what remains.
inline IPoly strip_cyclotomic(const IPoly& p_in) {
  IPoly rest = p_in;
  const unsigned D = static_cast<unsigned>(std::max(rest.deg(), 0));
  Int v2 = rest.eval_int(Int(2)), vm2 = rest.eval_int(Int(-2));
  for (unsigned m : cyclotomic_candidates(D)) {
    if (rest.deg() < 1) break;
    if (euler_phi(m) > static_cast<unsigned>(rest.deg())) continue;
    const IPoly& phi = cyclotomic(m);
    Int p2 = phi.eval_int(Int(2));
    if (v2 != 0 && p2 != 0 && v2 % p2 != 0) continue;
    Int pm2 = phi.eval_int(Int(-2));
    if (vm2 != 0 && pm2 != 0 && vm2 % pm2 != 0) continue;
    bool stripped = false;
    while (divides(phi, rest)) {
      rest = div_exact(rest, phi);
      stripped = true;
    }
    if (stripped) {
      v2 = rest.eval_int(Int(2));
      vm2 = rest.eval_int(Int(-2));
    }
  }
  return rest;
}

// Salem factor of w_tau obtained from the small determinant (fast route,
// no (N+1)x(N+1) characteristic polynomial). Returns the constant 1 when
// lambda = 1.
inline IPoly salem_factor_from_A(const OrbitData& t) {
  IPoly Q = strip_cyclotomic(cleared_char_numerator(t));
  if (Q.deg() < 1) return IPoly::constant(Int(1));
  IPoly g = gcd_poly(Q, Q.derivative());
  IPoly f = g.deg() > 0 ? div_exact(Q, g).primitive() : Q.primitive();
  // Q must be (up to sign) a power of its squarefree part.
  IPoly check = Q.primitive();
  while (check.deg() > 0) check = div_exact(check, f).primitive();
  if (!f.monic()) throw data_error("salem factor not monic");
  return f;
}

// --------------------------------------------------------- field tier
struct EigenData {
  OrbitData tau;
  std::shared_ptr<const NumberField> field;  // Q[t]/(S)
  NFElem delta;
  std::vector<NFElem> s;  // n, first nonzero coordinate = 1
  std::vector<NFElem> v;  // 3n, by canonical position
  NFElem v0;              // = k(s)
};

inline NFElem cbar_nf(const CycleData& cd, const NumberField& F, const IndexPair& p,
                      int j, const std::vector<NFElem>& inv_denoms) {
  NFElem num = F.zero();
  for (int e : cd.cbar_exponents(p, j)) num = num + F.generator_pow(unsigned(e));
  NFElem dm1 = F.generator() - F.one();
  return -(dm1 * num * inv_denoms[cd.cycle_of[kpos(p)]]);
}

// Solves A_tau(delta) s = 0 exactly in Q[t]/(S); the kernel must be
// one-dimensional. Assembles v and v0 and checks the defining relations.
inline EigenData solve_s(const OrbitData& t, const IPoly& S) {
  require_valid(t);
  auto F = NumberField::make(S);
  CycleData cd(t);
  std::vector<NFElem> inv_denoms;
  for (size_t c = 0; c < cd.cycles.size(); ++c)
    inv_denoms.push_back((F->generator_pow(unsigned(cd.total[c])) - F->one()).inverse());

  const int n = t.n;
  std::vector<std::vector<NFElem>> A(n, std::vector<NFElem>(n, F->zero()));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      NFElem x = F->zero();
      for (int iota = 1; iota <= 3; ++iota)
        x = x - cbar_nf(cd, *F, {i, iota}, j, inv_denoms);
      NFElem base = (i == j)   ? F->generator() - F->from_rat(Rat(2))
                    : (i > j) ? F->from_rat(Rat(-1))
                               : -F->generator();
      A[i - 1][j - 1] = base + x;
    }
  auto Asaved = A;

  // Gaussian elimination to row echelon form.
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int piv = -1;
    for (int r = row; r < n; ++r)
      if (!A[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(A[piv], A[row]);
    NFElem inv = A[row][col].inverse();
    for (int c = col; c < n; ++c) A[row][c] = A[row][c] * inv;
    for (int r = 0; r < n; ++r) {
      if (r == row || A[r][col].is_zero()) continue;
      NFElem f = A[r][col];
      for (int c = col; c < n; ++c) A[r][c] = A[r][c] - f * A[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  if (row != n - 1)
    throw data_error("kernel dimension != 1: wrong Salem factor for this data");
  int free_col = 0;
  {
    std::vector<char> is_piv(n, 0);
    for (int c : pivot_col) is_piv[c] = 1;
    for (int c = 0; c < n; ++c)
      if (!is_piv[c]) free_col = c;
  }
  std::vector<NFElem> s(n, F->zero());
  s[free_col] = F->one();
  for (int r = 0; r < row; ++r) s[pivot_col[r]] = -A[r][free_col];
  // Normalize: first nonzero coordinate = 1.
  for (int j2 = 0; j2 < n; ++j2)
    if (!s[j2].is_zero()) {
      NFElem inv = s[j2].inverse();
      for (auto& e : s) e = e * inv;
      break;
    }
  // Verify A s = 0 exactly.
  for (int i = 0; i < n; ++i) {
    NFElem acc = F->zero();
    for (int j2 = 0; j2 < n; ++j2) acc = acc + Asaved[i][j2] * s[j2];
    if (!acc.is_zero()) throw data_error("kernel verification failed");
  }

  EigenData ed;
  ed.tau = t;
  ed.field = F;
  ed.delta = F->generator();
  ed.s = s;
  ed.v.reserve(t.size());
  for (int p = 0; p < t.size(); ++p) {
    NFElem acc = F->zero();
    for (int j2 = 1; j2 <= n; ++j2)
      acc = acc + cbar_nf(cd, *F, kpair(p), j2, inv_denoms) * s[j2 - 1];
    ed.v.push_back(acc);
  }
  ed.v0 = F->zero();
  for (const auto& e : s) ed.v0 = ed.v0 + e;

  // Defining relations, checked exactly in the field.
  for (int i = 1; i <= n; ++i) {
    NFElem lhs = ed.v[kpos({i, 1})] + ed.v[kpos({i, 2})] + ed.v[kpos({i, 3})];
    NFElem rhs = F->zero();
    for (int k = 1; k < i; ++k) rhs = rhs - s[k - 1];
    rhs = rhs + (F->generator() - F->from_rat(Rat(2))) * s[i - 1];
    for (int k = i + 1; k <= n; ++k) rhs = rhs - F->generator() * s[k - 1];
    if (!(lhs - rhs).is_zero()) throw data_error("row relation violated");
  }
  for (int p = 0; p < t.size(); ++p) {
    IndexPair ip = kpair(p), ip1 = t.sig(ip);
    NFElem lhs = ed.v[kpos(ip1)];
    NFElem rhs = F->generator_pow(unsigned(t.kap(ip))) * ed.v[p] +
                 (F->generator() - F->one()) * s[ip1.i - 1];
    if (!(lhs - rhs).is_zero()) throw data_error("cycle relation violated");
  }
  return ed;
}

// v-bar assembled in basis order; w_tau(v) = delta v holds exactly.
inline std::vector<NFElem> eigenvector(const BasisIndexer& B, const EigenData& ed) {
  const auto F = ed.field;
  std::vector<NFElem> vb(B.dim(), F->zero());
  vb[0] = ed.v0;
  for (int p = 0; p < ed.tau.size(); ++p)
    for (int k = 1; k <= ed.tau.kappa[p]; ++k)
      vb[B.index(kpair(p), k)] = F->generator_pow(unsigned(k - 1)) * ed.v[p];
  return vb;
}

// Applies the sparse w_tau action to a field vector.
inline std::vector<NFElem> apply_w_nf(const BasisIndexer& B, const WtauAction& act,
                                      const std::vector<NFElem>& v) {
  auto F = v[0].field;
  std::vector<NFElem> r = v;
  for (const auto& sl : act.slots) {
    NFElem pairing = r[0] + r[sl[0]] + r[sl[1]] + r[sl[2]];
    r[0] = r[0] + pairing;
    r[sl[0]] = r[sl[0]] - pairing;
    r[sl[1]] = r[sl[1]] - pairing;
    r[sl[2]] = r[sl[2]] - pairing;
  }
  std::vector<NFElem> out(r.size(), F->zero());
  for (size_t i = 0; i < r.size(); ++i) out[act.rperm[i]] = r[i];
  return out;
}

// --------------------------------------------------------- scaled tier
// Kernel and v-values as integer polynomials mod S, defined up to one
// global scale: enough for exact zero tests at scan scale.
struct ScaledEigen {
  OrbitData tau;
  IPoly S;
  std::vector<IPoly> s;  // n
  std::vector<IPoly> v;  // 3n, common scale
};

inline ScaledEigen build_scaled_eigen(const OrbitData& t, const IPoly& S) {
  CycleData cd(t);
  ClearedMatrix M(t, cd);
  const int n = t.n;
  ScaledEigen out;
  out.tau = t;
  out.S = S;
  for (int r = 0; r < n; ++r) {
    std::vector<IPoly> cand(n);
    bool nonzero = false;
    for (int j = 0; j < n; ++j) {
      IPoly m = n == 1 ? IPoly::constant(Int(1)) : M.minor(r, j);
      m = ipoly_mod(m, S);
      if ((r + j) % 2 == 1) m = -m;
      cand[j] = m;
      if (!m.is_zero()) nonzero = true;
    }
    if (!nonzero) continue;
    // verify M cand = 0 mod S
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      IPoly acc;
      for (int j = 0; j < n; ++j) acc = acc + M.entry[i][j] * cand[j];
      if (!ipoly_mod(acc, S).is_zero()) ok = false;
    }
    if (!ok) continue;
    out.s = std::move(cand);
    break;
  }
  if (out.s.empty()) throw data_error("scaled kernel not found");

  // v_p = sum_j cbar_{p,j} s_j, scaled by the product of all cycle denominators.
  std::vector<IPoly> denom(cd.cycles.size());
  for (size_t c = 0; c < cd.cycles.size(); ++c)
    denom[c] = IPoly::monomial(unsigned(cd.total[c])) - IPoly::constant(Int(1));
  out.v.resize(t.size());
  for (int p = 0; p < t.size(); ++p) {
    int cp = cd.cycle_of[p];
    IPoly cofactor = IPoly::constant(Int(1));
    for (size_t c = 0; c < denom.size(); ++c)
      if (static_cast<int>(c) != cp) cofactor = cofactor * denom[c];
    IPoly acc;
    for (int j = 1; j <= t.n; ++j) {
      IPoly num;
      for (int e : cd.cbar_exponents(kpair(p), j))
        num = num + IPoly::monomial(unsigned(e));
      if (num.is_zero()) continue;
      acc = acc + num * out.s[j - 1];
    }
    // cbar = -(d-1) num / (d^E - 1); common scale: product of all denominators
    out.v[p] = ipoly_mod(-(IPoly({Int(-1), Int(1)}) * cofactor * acc), S);
  }
  return out;
}

inline bool scaled_s_zero(const ScaledEigen& se, int j) { return se.s[j - 1].is_zero(); }

// t^k v_p - v_q mod S; zero iff the corresponding pair root is periodic.
inline IPoly scaled_pair_value(const ScaledEigen& se, const IndexPair& p,
                               const IndexPair& q, int k) {
  IPoly tk = ipoly_mod(IPoly::monomial(unsigned(k)), se.S);
  return ipoly_mod(tk * se.v[kpos(p)] - se.v[kpos(q)], se.S);
}

// ------------------------------------------------------ certified signs
// Sign of g at the bracketed root: interval fast path, Sturm fallback.
inline int certified_sign(const IPoly& g, RootBracket& br, unsigned max_bits = 96) {
  for (unsigned bits = 16; bits <= max_bits; bits *= 2) {
    br.refine_bits(bits);
    int s = g.eval_interval(br.interval()).sign();
    if (s != 0) return s;
  }
  return sign_at_root(g, br);
}

// --------------------------------------------------------- bound functions
struct BoundFunctions {
  Rat gamma_d, z1, z2, g1, g2;
};

inline BoundFunctions bound_functions(int n, const Rat& d) {
  if (n < 2 || d <= 1) throw domain_error("bound_functions needs n >= 2, d > 1");
  BoundFunctions b;
  b.gamma_d = Rat(3) / (1 + d + d * d);
  Rat p = pow_rat(Rat(2), n), ph = pow_rat(Rat(2), n - 1);
  b.z1 = ph * (p + 2) / (p * p + 2 * p + 6);
  b.z2 = (p * p / 2 + p + 3) / (p * p + 2 * p + 3);
  b.g1 = Rat(1) / (d * d * d - 1) + 1 - d * pow_rat(b.z1, n - 1);
  b.g2 = pow_rat(b.z1, n - 2) - pow_rat(b.z2, n - 1) - Rat(1) / (d * d * d - 1);
  return b;
}

}  // namespace salem
