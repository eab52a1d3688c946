#include <catch2/catch_amalgamated.hpp>

#include <salem/cubic.hpp>

#include "support.hpp"

#include <random>
#include <set>

using namespace salem;
using salem::testing::example_tau;
using salem::testing::make_tau;
using salem::testing::random_tau;

static OrbitData r_failing_tau() {
  return salem::testing::make_tau(
      2, {{2, 1}, {2, 2}, {2, 3}, {1, 2}, {1, 1}, {1, 3}}, {3, 3, 3, 3, 3, 3});
}

namespace {
struct Pipeline {
  SalemFactorization sf;
  EigenData ed;
};
Pipeline pipeline(const OrbitData& t) {
  BasisIndexer B(t);
  auto sf = split_salem(char_poly(build_w_tau(B)));
  REQUIRE(sf.has_salem());
  auto ed = solve_s(t, sf.S);
  return Pipeline{std::move(sf), std::move(ed)};
}
}  // namespace

TEST_CASE("restriction formulas") {
  PrecisionScope ps(128);
  LinearMapData idmap{Cplx(Real(1))};
  CubicPoint p{Cplx(Real(5) / 3), 2};
  auto q = restrict_map(idmap, p);
  CHECK(q.t.abs() == p.t.abs());
  CHECK(q.depth == 2);

  QuadraticMapData f;
  f.d = Cplx(Real(2));
  f.b = {Cplx(Real(1)), Cplx(Real(2)), Cplx(Real(3))};
  // t -> d t - (1/3) sum b
  auto r = restrict_map(f, CubicPoint{Cplx(Real(10)), 0});
  CHECK((r.t - Cplx(Real(18))).abs() < Real("1e-30"));
  CHECK((f.k_f() - Cplx(Real(-2))).abs() < Real("1e-30"));
  // a_iota = (b_iota - (2/3) sum b) / d
  CHECK((f.a(1) - Cplx(Real(-3) / 2)).abs() < Real("1e-30"));
  CHECK((f.a(3) - Cplx(Real(-1) / 2)).abs() < Real("1e-30"));
}

TEST_CASE("indeterminacy depths follow the labeling") {
  PrecisionScope ps(256);
  Tolerance tl(256);
  QuadraticMapData f;
  f.d = Cplx(Real(1));
  f.b = {Cplx(Real(1)), Cplx(Real(1)), Cplx(Real(4))};
  auto ind = indeterminacy(f, tl);
  CHECK(ind.bwd[0].depth == 0);
  CHECK(ind.bwd[1].depth == 1);  // b1 = b2: second label sits one level up
  CHECK(ind.bwd[2].depth == 0);
  auto ind2 = indeterminacy(f, tl, {2, 1, 3});
  CHECK(ind2.bwd[1].depth == 0);
  CHECK(ind2.bwd[0].depth == 1);

  std::mt19937 rng(83);
  for (int k = 0; k < 20; ++k) {
    QuadraticMapData g;
    g.d = Cplx(Real(1 + int(rng() % 5)));
    for (int i = 0; i < 3; ++i) g.b[i] = Cplx(Real(int(rng() % 17) - 8), Real(int(rng() % 5)));
    if (g.b_sum().abs() == 0) g.b[0] = g.b[0] + Cplx(Real(1));
    auto in = indeterminacy(g, tl);
    for (int i = 1; i <= 3; ++i) {
      Cplx expect = (g.b[i - 1] - Cplx(Real(2)) / Cplx(Real(3)) * g.b_sum()) / g.d;
      CHECK((in.fwd[i - 1].t - expect).abs() == 0);
    }
  }
}

TEST_CASE("psi normal forms") {
  std::array<Rat, 3> p{Rat(1), Rat(2), Rat(3)};
  auto im = psi_normal_form(1, p);
  CHECK(im == std::array<Rat, 3>{Rat(6), Rat(3), Rat(2)});
  std::mt19937 rng(89);
  for (int k = 0; k < 25; ++k) {
    std::array<Rat, 3> q{Rat(1 + int(rng() % 9)), Rat(1 + int(rng() % 9)),
                         Rat(1 + int(rng() % 9))};
    for (int ell : {1, 2}) {
      auto r = psi_normal_form(ell, psi_normal_form(ell, q));
      // projective equality
      CHECK(r[0] * q[1] == r[1] * q[0]);
      CHECK(r[1] * q[2] == r[2] * q[1]);
    }
    auto r3 = psi_normal_form(3, psi_normal_form(3, q), true);
    CHECK(r3[0] * q[1] == r3[1] * q[0]);
    CHECK(r3[1] * q[2] == r3[2] * q[1]);
  }
  std::array<Rat, 3> bad{Rat(0), Rat(0), Rat(1)};
  CHECK_THROWS_AS(psi_normal_form(2, bad), domain_error);
}

TEST_CASE("tentative realization of the running example") {
  auto t = example_tau();
  auto pl = pipeline(t);
  PrecisionScope ps(300);
  auto tr = build_tentative(t, pl.ed, pl.sf, 256);
  // composition restriction: fixed point k(s)/3 with multiplier lambda
  Real k3 = tr.ks() / 3;
  Cplx z{k3};
  for (int i = 1; i <= t.n; ++i) z = tr.maps[i - 1].restrict_t(z);
  CHECK((z - Cplx(k3)).abs() < Real("1e-60"));
  Cplx one_step{k3 + 1};
  for (int i = 1; i <= t.n; ++i) one_step = tr.maps[i - 1].restrict_t(one_step);
  CHECK((one_step - Cplx(k3 + tr.lambda)).abs() < Real("1e-60"));
  // determinant of the tuple = lambda
  Cplx dprod{Real(1)};
  for (const auto& f : tr.maps) dprod = dprod * f.d;
  CHECK((dprod - Cplx(tr.lambda)).abs() < Real("1e-60"));

  // orbit lengths and the closure residual
  for (int p = 0; p < t.size(); ++p) {
    auto orb = orbit(tr, kpair(p));
    CHECK(static_cast<int>(orb.size()) == mu(t, kpair(p)) + 1);
  }
  Real res = tentative_residual(tr);
  CHECK(res < Real("1e-30"));

  // doubling the precision shrinks the residual
  auto tr512 = build_tentative(t, pl.ed, pl.sf, 512);
  {
    PrecisionScope ps2(560);
    Real res512 = tentative_residual(tr512);
    CHECK(res512 < res);
  }
  // tentative uniqueness: the coarser digits agree
  for (int i = 0; i < t.n; ++i)
    for (int iota = 0; iota < 3; ++iota)
      CHECK((tr.maps[i].b[iota] - tr512.maps[i].b[iota]).abs() < Real("1e-60"));
}

TEST_CASE("tentative build fails loudly when obstructed") {
  auto t = example_tau();
  auto pl = pipeline(t);
  auto ed = pl.ed;
  ed.s[0] = ed.field->zero();  // synthetic obstruction
  CHECK_THROWS_AS(build_tentative(t, ed, pl.sf, 128), domain_error);
}

TEST_CASE("geometric verification and blowup points of the running example") {
  auto t = example_tau();
  auto pl = pipeline(t);
  auto real = realize(t, pl.ed, pl.sf, 256);
  CHECK(real.geo.passed);
  CHECK(real.geo.witness_order.size() == 6);
  REQUIRE(real.points.size() == 21);
  // every point proper-or-infinitely-near on the smooth locus, deduplicated
  std::set<std::pair<std::string, int>> seen;
  Tolerance tl(64);
  for (const auto& bp : real.points) {
    CHECK(bp.t.abs() < Real(1000));
    seen.insert({decimal_string(bp.t.re, 20), bp.depth});
  }
  CHECK(seen.size() == 21);
  // per-surface counts match the multiplicity table
  for (int r = 0; r <= t.n; ++r) {
    int expect = 0;
    for (int p = 0; p < t.size(); ++p) expect += kappa_r(t, r, kpair(p));
    CHECK(expect == 21);
  }
  CHECK(abs(real.entropy - Real("1.35442759")) < Real("1e-7"));
  CHECK(real.max_residual < Real("1e-30"));

  // the dictionary: geometric coincidences = periodic pair tags
  auto rep = check_realizability(t);
  std::set<PairTag> geo_tags(real.geo.coincidence_tags.begin(),
                             real.geo.coincidence_tags.end());
  std::set<PairTag> alg_tags(rep.periodic_pair_tags.begin(),
                             rep.periodic_pair_tags.end());
  CHECK(geo_tags == alg_tags);
}

TEST_CASE("failing data is detected geometrically and matches the algebra") {
  auto t = r_failing_tau();
  auto pl = pipeline(t);
  PrecisionScope ps(300);
  auto tr = build_tentative(t, pl.ed, pl.sf, 256);
  auto geo = verify_realization(tr);
  CHECK_FALSE(geo.passed);
  CHECK_FALSE(geo.violating_cycle.empty());
  auto rep = check_realizability(t);
  CHECK_FALSE(rep.R_ok);
  // every violating tag shows up among the geometric coincidences
  std::set<PairTag> geo_tags(geo.coincidence_tags.begin(), geo.coincidence_tags.end());
  for (const auto& tg : rep.violating_tags) CHECK(geo_tags.count(tg) == 1);
}

TEST_CASE("geometric pass iff algebraic pass on sampled data") {
  std::mt19937 rng(97);
  int agree = 0, fails = 0;
  for (int trial = 0; trial < 120 && agree < 12; ++trial) {
    auto t = random_tau(rng, 1 + int(rng() % 2), 3);
    RealizabilityReport rep;
    try {
      rep = check_realizability(t);
    } catch (const data_error&) {
      continue;
    }
    if (!rep.lambda_gt_one || !rep.TR_ok) continue;
    auto pl = pipeline(t);
    PrecisionScope ps(300);
    auto tr = build_tentative(t, pl.ed, pl.sf, 256);
    auto geo = verify_realization(tr);
    CHECK(geo.passed == rep.R_ok);
    ++agree;
    if (!rep.R_ok) ++fails;
  }
  CHECK(agree == 12);
}

TEST_CASE("explicit quadratic forms represent the map") {
  PrecisionScope ps(300);
  QuadraticMapData f;
  f.d = Cplx(Real(3));
  f.b = {Cplx(Real(1)), Cplx(Real(-2)), Cplx(Real(4))};
  auto forms = explicit_projective_map(f, 256);
  // the components vanish on the forward indeterminacy points
  for (int i = 1; i <= 3; ++i) {
    Cplx a = f.a(i);
    auto im = forms.apply({a, a * a * a, Cplx(Real(1))});
    for (const auto& c : im) CHECK(c.abs() < Real("1e-50"));
  }
  // twenty samples of the curve map to the parametrized image
  for (int k = 1; k <= 20; ++k) {
    Cplx tk{Real(k) / 7 + Real(5)};
    auto im = forms.apply({tk, tk * tk * tk, Cplx(Real(1))});
    Cplx y = f.restrict_t(tk);
    std::array<Cplx, 3> w{y, y * y * y, Cplx(Real(1))};
    // projective comparison
    CHECK((im[0] * w[1] - im[1] * w[0]).abs() < Real("1e-45") * im[0].abs());
    CHECK((im[1] * w[2] - im[2] * w[1]).abs() < Real("1e-45") * (im[1].abs() + 1));
  }
}
