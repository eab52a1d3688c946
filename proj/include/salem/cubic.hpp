#pragma once

// Geometry on the cuspidal cubic yz^2 = x^3: its smooth locus is the affine
// line t -> [t : t^3 : 1], quadratic maps preserving the curve restrict to
// affine maps of t, and a tentative realization of orbit data is synthesized
// from the eigenvector data and verified by orbit tracking.

#include <salem/realizability.hpp>

#include <array>
#include <optional>
#include <vector>

namespace salem {

struct Cplx {
  Real re{0}, im{0};

  Cplx() = default;
  Cplx(Real r) : re(std::move(r)) {}
  Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  Cplx operator+(const Cplx& o) const { return {re + o.re, im + o.im}; }
  Cplx operator-(const Cplx& o) const { return {re - o.re, im - o.im}; }
  Cplx operator-() const { return {-re, -im}; }
  Cplx operator*(const Cplx& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Cplx operator/(const Cplx& o) const {
    Real n = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
  }
  Real abs() const { return sqrt(re * re + im * im); }
  bool operator==(const Cplx& o) const { return re == o.re && im == o.im; }
};

inline Cplx operator*(const Real& k, const Cplx& z) { return Cplx(k) * z; }

// Point of the smooth locus, tracked by parameter; depth counts the
// infinitesimal level over the proper point with the same parameter.
struct CubicPoint {
  Cplx t;
  int depth = 0;
};

// f_{d,b}: the quadratic map determined by its determinant and the
// parameters of the three inverse indeterminacy points.
struct QuadraticMapData {
  Cplx d;
  std::array<Cplx, 3> b;

  Cplx b_sum() const { return b[0] + b[1] + b[2]; }
  Cplx k_f() const { return -(b_sum()) / Cplx(Real(3)); }
  // restriction to the smooth locus
  Cplx restrict_t(const Cplx& t) const { return d * t + k_f(); }
  // parameters of the forward indeterminacy points
  Cplx a(int iota) const {
    return (b[iota - 1] - Cplx(Real(2)) / Cplx(Real(3)) * b_sum()) / d;
  }
};

struct LinearMapData {
  Cplx d;
  Cplx restrict_t(const Cplx& t) const { return d * t; }
};

inline CubicPoint restrict_map(const QuadraticMapData& f, const CubicPoint& p) {
  return CubicPoint{f.restrict_t(p.t), p.depth};
}
inline CubicPoint restrict_map(const LinearMapData& f, const CubicPoint& p) {
  return CubicPoint{f.restrict_t(p.t), p.depth};
}

// ------------------------------------------------------------- tolerances
struct Tolerance {
  Real tol;
  explicit Tolerance(unsigned precision_bits, int tol_digits = 0)
      : tol(pow(Real(10), tol_digits > 0 ? -tol_digits : -int(precision_bits / 8))) {}

  bool close(const Cplx& x, const Cplx& y) const {
    Real scale = Real(1);
    if (x.abs() > scale) scale = x.abs();
    if (y.abs() > scale) scale = y.abs();
    return (x - y).abs() <= tol * scale;
  }
  // true if the pair falls into the ambiguity band (tol, 10 tol]
  bool ambiguous(const Cplx& x, const Cplx& y) const {
    Real scale = Real(1);
    if (x.abs() > scale) scale = x.abs();
    if (y.abs() > scale) scale = y.abs();
    Real d = (x - y).abs();
    return d > tol * scale && d <= 10 * tol * scale;
  }
};

// Indeterminacy points of f with depths assigned within coincidence
// clusters following the given labeling order of {1,2,3}.
struct IndeterminacySets {
  std::array<CubicPoint, 3> fwd;  // I(f),  parameters a_iota
  std::array<CubicPoint, 3> bwd;  // I(f^-1), parameters b_iota
};

inline IndeterminacySets indeterminacy(const QuadraticMapData& f, const Tolerance& tl,
                                       const std::array<int, 3>& label_order = {1, 2, 3}) {
  IndeterminacySets out;
  // depth of iota = number of labels before it (in label order) within its cluster
  for (int pos = 0; pos < 3; ++pos) {
    int iota = label_order[pos];
    int depth = 0;
    for (int q = 0; q < pos; ++q) {
      int other = label_order[q];
      if (tl.ambiguous(f.b[iota - 1], f.b[other - 1]))
        throw precision_error("ambiguous indeterminacy cluster");
      if (tl.close(f.b[iota - 1], f.b[other - 1])) ++depth;
    }
    out.bwd[iota - 1] = CubicPoint{f.b[iota - 1], depth};
    out.fwd[iota - 1] = CubicPoint{f.a(iota), depth};
  }
  return out;
}

// --------------------------------------------------------- tentative data
struct TentativeRealization {
  OrbitData tau;
  unsigned precision_bits = 256;
  int tol_digits = 0;  // 0: default 10^-(bits/8)
  TotalOrderTuple ord;
  Real lambda;
  std::vector<Real> s;                  // n real embeddings
  std::vector<Real> v;                  // 3n real embeddings (kpos order)
  std::vector<QuadraticMapData> maps;   // maps[i-1], det 1 except the last
  Real ks() const {
    Real k = 0;
    for (const auto& x : s) k += x;
    return k;
  }
};

// Builds the tentative realization from exact eigen data at the requested
// precision. The s entries must all be nonzero (tentative obstruction).
inline TentativeRealization build_tentative(const OrbitData& t, const EigenData& ed,
                                            SalemFactorization& sf,
                                            unsigned precision_bits = 256,
                                            std::optional<TotalOrderTuple> ord = {}) {
  for (int j = 0; j < t.n; ++j)
    if (ed.s[j].is_zero())
      throw domain_error("tentative realization obstructed: s_" +
                         std::to_string(j + 1) + " = 0");
  TentativeRealization tr;
  tr.tau = t;
  tr.precision_bits = precision_bits;
  tr.ord = ord ? *ord : total_orders(t).front();
  sf.lambda_bracket->refine_bits(precision_bits + 32);
  tr.lambda = sf.lambda_bracket->midpoint_real();
  for (int j = 0; j < t.n; ++j) tr.s.push_back(ed.s[j].embed_real(tr.lambda));
  for (int p = 0; p < t.size(); ++p) tr.v.push_back(ed.v[p].embed_real(tr.lambda));

  const Real d = tr.lambda;
  for (int i = 1; i <= t.n; ++i) {
    QuadraticMapData f;
    f.d = Cplx(i == t.n ? d : Real(1));
    Real dcheck = (i == t.n) ? Real(1) : d;  // product of the later determinants
    Real tail = 0;
    for (int r = 1; r <= t.n; ++r) tail += (r <= i ? Real(1) : d) * tr.s[r - 1];
    for (int iota = 1; iota <= 3; ++iota)
      f.b[iota - 1] = Cplx((tr.v[kpos({i, iota})] + tail / 3) / dcheck);
    tr.maps.push_back(f);
  }
  return tr;
}

// The orbit p^0, ..., p^mu of one index pair; index arithmetic follows the
// cyclic convention r = i + m (mod n).
inline std::vector<CubicPoint> orbit(const TentativeRealization& tr, const IndexPair& p) {
  Tolerance tl(tr.precision_bits, tr.tol_digits);
  auto ind = indeterminacy(tr.maps[p.i - 1], tl, tr.ord.order[p.i - 1]);
  std::vector<CubicPoint> pts{ind.bwd[p.iota - 1]};
  const int len = mu(tr.tau, p);
  for (int m = 1; m <= len; ++m) {
    int r = ((p.i + m - 1) % tr.tau.n) + 1;
    pts.push_back(restrict_map(tr.maps[r - 1], pts.back()));
  }
  return pts;
}

// Largest orbit-closure residual |t(p^mu) - t(p+_{sigma})|, relative.
inline Real tentative_residual(const TentativeRealization& tr) {
  Real worst = 0;
  for (int p = 0; p < tr.tau.size(); ++p) {
    IndexPair ip = kpair(p), im = tr.tau.sig(ip);
    auto pts = orbit(tr, ip);
    Cplx target = tr.maps[im.i - 1].a(im.iota);
    Real scale = Real(1);
    if (pts.back().t.abs() > scale) scale = pts.back().t.abs();
    Real res = (pts.back().t - target).abs() / scale;
    if (res > worst) worst = res;
  }
  return worst;
}

// --------------------------------------------------- geometric realization
struct GeometricReport {
  bool passed = false;
  std::vector<IndexPair> witness_order;       // valid elimination order if passed
  std::vector<IndexPair> violating_cycle;     // a cycle of forced precedences
  std::vector<PairTag> coincidence_tags;      // orbit-meets-backward coincidences
};

// Searches for a total order satisfying the four elimination conditions.
// Coincidences are detected by tolerance clustering of parameters.
inline GeometricReport verify_realization(const TentativeRealization& tr) {
  const OrbitData& t = tr.tau;
  Tolerance tl(tr.precision_bits, tr.tol_digits);
  const int sz = t.size();

  std::vector<IndeterminacySets> ind;
  for (int i = 1; i <= t.n; ++i)
    ind.push_back(indeterminacy(tr.maps[i - 1], tl, tr.ord.order[i - 1]));
  std::vector<std::vector<CubicPoint>> orbits(sz);
  for (int p = 0; p < sz; ++p) orbits[p] = orbit(tr, kpair(p));

  auto bwd_point = [&](const IndexPair& q) { return ind[q.i - 1].bwd[q.iota - 1]; };
  auto fwd_point = [&](const IndexPair& q) { return ind[q.i - 1].fwd[q.iota - 1]; };
  auto check_band = [&](const Cplx& x, const Cplx& y) {
    if (tl.ambiguous(x, y)) throw precision_error("ambiguous coincidence cluster");
  };

  GeometricReport rep;
  std::vector<std::vector<char>> edge(sz, std::vector<char>(sz, 0));
  auto add_edge = [&](const IndexPair& before, const IndexPair& after) {
    edge[kpos(before)][kpos(after)] = 1;  // before must be eliminated first
  };

  for (int pa = 0; pa < sz; ++pa) {
    IndexPair a = kpair(pa);
    for (int pb = 0; pb < sz; ++pb) {
      IndexPair b = kpair(pb);
      // (1) coincident backward points in one column: deeper comes later
      if (a.i == b.i && !(a == b)) {
        CubicPoint x = bwd_point(a), y = bwd_point(b);
        check_band(x.t, y.t);
        if (tl.close(x.t, y.t)) {
          rep.coincidence_tags.push_back(PairTag{a, b, 0});
          if (y.depth < x.depth) add_edge(b, a);
        }
      }
      // (2) coincident forward points of the images in one column
      IndexPair a1 = t.sig(a), b1 = t.sig(b);
      if (a1.i == b1.i && !(a == b)) {
        CubicPoint x = fwd_point(a1), y = fwd_point(b1);
        check_band(x.t, y.t);
        if (tl.close(x.t, y.t) && y.depth < x.depth) add_edge(b, a);
      }
      // (3) the a-orbit passes through b's backward point
      const int muA = mu(t, a);
      for (int m = 1; m <= muA; ++m) {
        if (((a.i + m - 1) % t.n) + 1 != b.i) continue;
        check_band(orbits[pa][m].t, bwd_point(b).t);
        if (tl.close(orbits[pa][m].t, bwd_point(b).t)) {
          add_edge(b, a);
          int k = (m - (b.i - a.i)) / t.n;
          rep.coincidence_tags.push_back(PairTag{a, b, k});
        }
      }
      // (4) the a-orbit hits the forward point of b's image early
      for (int m = 0; m < muA; ++m) {
        if (((a.i + m) % t.n) + 1 != b1.i) continue;  // surface of p+ is i1'-1
        check_band(orbits[pa][m].t, fwd_point(b1).t);
        if (tl.close(orbits[pa][m].t, fwd_point(b1).t)) add_edge(b, a);
      }
    }
  }
  for (int p = 0; p < sz; ++p)
    if (edge[p][p]) {
      rep.passed = false;
      rep.violating_cycle = {kpair(p)};
      return rep;
    }

  // topological sort
  std::vector<int> indeg(sz, 0);
  for (int x = 0; x < sz; ++x)
    for (int y = 0; y < sz; ++y)
      if (x != y && edge[x][y]) ++indeg[y];
  std::vector<char> done(sz, 0);
  for (int step = 0; step < sz; ++step) {
    int pick = -1;
    for (int x = 0; x < sz; ++x)
      if (!done[x] && indeg[x] == 0) {
        pick = x;
        break;
      }
    if (pick < 0) break;
    done[pick] = 1;
    rep.witness_order.push_back(kpair(pick));
    for (int y = 0; y < sz; ++y)
      if (!done[y] && edge[pick][y]) --indeg[y];
  }
  if (static_cast<int>(rep.witness_order.size()) == sz) {
    rep.passed = true;
    return rep;
  }
  // extract one cycle among the unresolved vertices
  rep.witness_order.clear();
  int start = 0;
  while (done[start]) ++start;
  std::vector<int> seen(sz, -1);
  int cur = start, step = 0;
  while (seen[cur] < 0) {
    seen[cur] = step++;
    for (int y = 0; y < sz; ++y)
      if (!done[y] && edge[cur][y]) {
        cur = y;
        break;
      }
  }
  for (int x = 0; x < sz; ++x)
    if (seen[x] >= seen[cur]) rep.violating_cycle.push_back(kpair(x));
  rep.passed = false;
  return rep;
}

// ------------------------------------------------------------ blowups
struct BlowupPoint {
  Cplx t;
  int depth = 0;
  int r = 0;  // surface index (0 = the base plane)
  IndexPair origin;
  int m = 0;
};

// The N points on the base surface: orbit entries with m = kn - i.
inline std::vector<BlowupPoint> blowup_points(const TentativeRealization& tr,
                                              const GeometricReport& geo) {
  if (!geo.passed) throw domain_error("blowup_points needs a verified realization");
  const OrbitData& t = tr.tau;
  Tolerance tl(tr.precision_bits, tr.tol_digits);
  std::vector<BlowupPoint> pts;
  for (int p = 0; p < t.size(); ++p) {
    IndexPair ip = kpair(p);
    auto orb = orbit(tr, ip);
    for (int k = 1; k <= t.kap(ip); ++k) {
      int m = k * t.n - ip.i;
      BlowupPoint bp;
      bp.t = orb[m].t;
      bp.r = 0;
      bp.origin = ip;
      bp.m = m;
      pts.push_back(bp);
    }
  }
  // depths: within a parameter cluster, rank by the witness-order position
  // of the originating index pair, then by orbit time
  auto rank_of = [&](const IndexPair& q) {
    for (size_t i = 0; i < geo.witness_order.size(); ++i)
      if (geo.witness_order[i] == q) return static_cast<int>(i);
    return 1 << 20;
  };
  for (size_t x = 0; x < pts.size(); ++x) {
    int depth = 0;
    for (size_t y = 0; y < pts.size(); ++y) {
      if (x == y) continue;
      if (tl.ambiguous(pts[x].t, pts[y].t))
        throw precision_error("ambiguous blowup cluster");
      if (!tl.close(pts[x].t, pts[y].t)) continue;
      auto kx = std::pair<int, int>(rank_of(pts[x].origin), pts[x].m);
      auto ky = std::pair<int, int>(rank_of(pts[y].origin), pts[y].m);
      if (ky < kx) ++depth;
    }
    pts[x].depth = depth;
  }
  // duplicate-free as (cluster, depth): any repeat is an internal error
  for (size_t x = 0; x < pts.size(); ++x)
    for (size_t y = x + 1; y < pts.size(); ++y)
      if (tl.close(pts[x].t, pts[y].t) && pts[x].depth == pts[y].depth)
        throw data_error("duplicate blowup point");
  return pts;
}

// ----------------------------------------------------- full realization
struct Realization {
  TentativeRealization tr;
  GeometricReport geo;
  std::vector<BlowupPoint> points;
  Real max_residual;
  Real entropy;  // log lambda
};

// Builds and verifies at the requested precision, escalating through the
// ambiguity band up to 1024 bits.
inline Realization realize(const OrbitData& t, const EigenData& ed,
                           SalemFactorization& sf, unsigned precision_bits = 256) {
  for (unsigned bits = precision_bits; bits <= 1024; bits *= 2) {
    PrecisionScope ps(bits + 32);
    try {
      Realization out;
      out.tr = build_tentative(t, ed, sf, bits);
      out.geo = verify_realization(out.tr);
      if (out.geo.passed) out.points = blowup_points(out.tr, out.geo);
      out.max_residual = tentative_residual(out.tr);
      out.entropy = log(out.tr.lambda);
      return out;
    } catch (const precision_error&) {
      if (bits * 2 > 1024) throw;
    }
  }
  throw precision_error("ambiguity persists at 1024 bits");
}

// ------------------------------------------------- plane normal forms
// The three elementary quadratic involutions/maps on homogeneous
// coordinates; psi_1 and psi_2 are their own inverses.
template <typename T>
std::array<T, 3> psi_normal_form(int ell, const std::array<T, 3>& p, bool inverse = false) {
  const T& x = p[0];
  const T& y = p[1];
  const T& z = p[2];
  std::array<T, 3> out;
  switch (ell) {
    case 1:
      out = {y * z, z * x, x * y};
      break;
    case 2:
      out = {x * z, y * z, x * x};
      break;
    case 3:
      out = inverse ? std::array<T, 3>{x * x, x * y, -(y * y) + x * z}
                    : std::array<T, 3>{x * x, x * y, y * y + x * z};
      break;
    default:
      throw domain_error("psi index must be 1, 2 or 3");
  }
  bool all_zero = true;
  for (const auto& c : out)
    if (!(c == T(0))) all_zero = false;
  if (all_zero) throw domain_error("point lies in the indeterminacy set");
  return out;
}

// ------------------------------------------- explicit projective maps
// Three homogeneous quadratic forms representing f (monomials ordered
// x^2, xy, xz, y^2, yz, z^2). Requires three distinct proper
// indeterminacy points.
struct QuadraticForms {
  std::array<std::array<Cplx, 6>, 3> rows;

  std::array<Cplx, 3> apply(const std::array<Cplx, 3>& p) const {
    const Cplx &x = p[0], &y = p[1], &z = p[2];
    std::array<Cplx, 6> mon{x * x, x * y, x * z, y * y, y * z, z * z};
    std::array<Cplx, 3> out{Cplx(), Cplx(), Cplx()};
    for (int r = 0; r < 3; ++r)
      for (int k = 0; k < 6; ++k) out[r] = out[r] + rows[r][k] * mon[k];
    return out;
  }
};

namespace detail {
// Solve a square complex system by Gaussian elimination with partial pivot.
inline std::vector<Cplx> solve_cplx(std::vector<std::vector<Cplx>> a,
                                    std::vector<Cplx> rhs) {
  const int n = static_cast<int>(a.size());
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int r = k + 1; r < n; ++r)
      if (a[r][k].abs() > a[piv][k].abs()) piv = r;
    std::swap(a[piv], a[k]);
    std::swap(rhs[piv], rhs[k]);
    if (a[k][k].abs() == 0) throw domain_error("singular system");
    for (int r = k + 1; r < n; ++r) {
      Cplx f = a[r][k] / a[k][k];
      for (int c = k; c < n; ++c) a[r][c] = a[r][c] - f * a[k][c];
      rhs[r] = rhs[r] - f * rhs[k];
    }
  }
  std::vector<Cplx> x(n);
  for (int k = n - 1; k >= 0; --k) {
    Cplx acc = rhs[k];
    for (int c = k + 1; c < n; ++c) acc = acc - a[k][c] * x[c];
    x[k] = acc / a[k][k];
  }
  return x;
}
}  // namespace detail

// f factors as (linear map) . (standard Cremona based at I(f)): the Cremona
// components are products of the lines through point pairs, and the linear
// part is pinned by four curve samples. This is exact up to the linear
// solve, not a fit: a quadratic map with these base points has this shape.
inline QuadraticForms explicit_projective_map(const QuadraticMapData& f,
                                              unsigned precision_bits = 256) {
  Tolerance tl(precision_bits);
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j)
      if (tl.close(f.a(i), f.a(j)))
        throw domain_error("infinitely near indeterminacy is unsupported here");

  auto embed = [](const Cplx& t) {
    return std::array<Cplx, 3>{t, t * t * t, Cplx(Real(1))};
  };
  auto cross = [](const std::array<Cplx, 3>& p, const std::array<Cplx, 3>& q) {
    return std::array<Cplx, 3>{p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2],
                               p[0] * q[1] - p[1] * q[0]};
  };
  std::array<std::array<Cplx, 3>, 3> pt;
  for (int i = 0; i < 3; ++i) pt[i] = embed(f.a(i + 1));
  // line[i] joins the two base points other than pt[i]
  std::array<std::array<Cplx, 3>, 3> line{cross(pt[1], pt[2]), cross(pt[0], pt[2]),
                                          cross(pt[0], pt[1])};
  // conic[i] = product of the two lines through pt[i]; monomial order
  // x^2, xy, xz, y^2, yz, z^2
  auto line_product = [](const std::array<Cplx, 3>& u, const std::array<Cplx, 3>& v) {
    return std::array<Cplx, 6>{u[0] * v[0],
                               u[0] * v[1] + u[1] * v[0],
                               u[0] * v[2] + u[2] * v[0],
                               u[1] * v[1],
                               u[1] * v[2] + u[2] * v[1],
                               u[2] * v[2]};
  };
  std::array<std::array<Cplx, 6>, 3> conic{line_product(line[1], line[2]),
                                           line_product(line[0], line[2]),
                                           line_product(line[0], line[1])};
  auto eval_conic = [&](int c, const std::array<Cplx, 3>& p) {
    const Cplx &x = p[0], &y = p[1], &z = p[2];
    std::array<Cplx, 6> mon{x * x, x * y, x * z, y * y, y * z, z * z};
    Cplx acc;
    for (int k = 0; k < 6; ++k) acc = acc + conic[c][k] * mon[k];
    return acc;
  };

  // Linear part by DLT on four curve samples: M u_k parallel to w_k.
  std::vector<std::vector<Cplx>> A;
  std::vector<Cplx> rhs;
  for (int k = 0; k < 4; ++k) {
    Cplx tk = Cplx(Real(5 + 2 * k) / 3);
    std::array<Cplx, 3> u{eval_conic(0, embed(tk)), eval_conic(1, embed(tk)),
                          eval_conic(2, embed(tk))};
    auto w = embed(f.restrict_t(tk));
    std::vector<Cplx> r1(9, Cplx()), r2(9, Cplx());
    for (int c = 0; c < 3; ++c) {
      r1[0 * 3 + c] = u[c] * w[1];
      r1[1 * 3 + c] = -(u[c] * w[0]);
      r2[1 * 3 + c] = u[c] * w[2];
      r2[2 * 3 + c] = -(u[c] * w[1]);
    }
    A.push_back(r1);
    rhs.push_back(Cplx());
    A.push_back(r2);
    rhs.push_back(Cplx());
  }
  {
    std::vector<Cplx> norm(9, Cplx());
    for (int c = 0; c < 9; ++c) norm[c] = Cplx(Real(1 + (c * 5) % 7));
    A.push_back(norm);
    rhs.push_back(Cplx(Real(1)));
  }
  auto M = detail::solve_cplx(A, rhs);
  QuadraticForms out;
  for (int form = 0; form < 3; ++form)
    for (int k = 0; k < 6; ++k) {
      Cplx acc;
      for (int c = 0; c < 3; ++c) acc = acc + M[form * 3 + c] * conic[c][k];
      out.rows[form][k] = acc;
    }
  return out;
}

}  // namespace salem
