#include <catch2/catch_amalgamated.hpp>

#include <salem/lorentz.hpp>

#include <random>

using namespace salem;

TEST_CASE("inner product on basis vectors") {
  auto e0 = LorentzVector::basis(0, 3);
  auto e1 = LorentzVector::basis(1, 3);
  CHECK(inner_product(e0, e0) == 1);
  CHECK(inner_product(e1, e1) == -1);
  CHECK(inner_product(e0 + e1, e0 - e1) == 2);
  CHECK(inner_product(e0, e1) == 0);
}

TEST_CASE("inner product rejects mismatched dimensions") {
  auto u = LorentzVector::basis(0, 3);
  auto v = LorentzVector::basis(0, 4);
  CHECK_THROWS_AS(inner_product(u, v), dimension_error);
}

TEST_CASE("simple roots") {
  auto a0 = simple_root(0, 3);
  CHECK(a0.coeffs == std::vector<Int>({1, -1, -1, -1}));
  auto a1 = simple_root(1, 3);
  CHECK(a1.coeffs == std::vector<Int>({0, 1, -1, 0}));
  for (int N = 3; N <= 12; ++N)
    for (int i = 0; i < N; ++i) {
      auto a = simple_root(i, N);
      CHECK(inner_product(a, a) == -2);
    }
  CHECK_THROWS_AS(simple_root(3, 3), domain_error);
  CHECK_THROWS_AS(simple_root(-1, 5), domain_error);
  CHECK_THROWS_AS(simple_root(0, 2), dimension_error);
}

TEST_CASE("reflections act as in the defining formulas") {
  auto r0 = reflection(0, 3);
  auto im = r0.apply(LorentzVector::basis(0, 3));
  CHECK(im.coeffs == std::vector<Int>({2, -1, -1, -1}));
  auto r1 = reflection(1, 3);
  CHECK(r1.apply(LorentzVector::basis(1, 3)) == LorentzVector::basis(2, 3));
}

TEST_CASE("reflections are involutions and isometries") {
  for (int N = 3; N <= 12; ++N)
    for (int i = 0; i < N; ++i) {
      auto r = reflection(i, N);
      CHECK(compose(r, r) == LatticeAutomorphism::identity(N + 1));
      CHECK(preserves_lorentz_form(r));
      Int d = determinant(r);
      CHECK((d == 1 || d == -1));
    }
}

TEST_CASE("composition order is right-to-left") {
  auto id = LatticeAutomorphism::identity(5);
  auto r0 = reflection(0, 4);
  CHECK(compose(id, r0) == r0);
  CHECK(compose(r0, r0) == LatticeAutomorphism::identity(5));
  // rho_1(rho_2(e_1)) = rho_1(e_1) = e_2
  auto r1 = reflection(1, 4), r2 = reflection(2, 4);
  auto w = compose(r1, r2);
  CHECK(w.apply(LorentzVector::basis(1, 4)) == LorentzVector::basis(2, 4));
  LatticeAutomorphism small = LatticeAutomorphism::identity(4);
  CHECK_THROWS_AS(compose(r0, small), dimension_error);
}

TEST_CASE("random words preserve the form and the inner product") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 40; ++trial) {
    int N = 3 + int(rng() % 6);
    auto w = LatticeAutomorphism::identity(N + 1);
    int len = 1 + int(rng() % 10);
    for (int k = 0; k < len; ++k) w = compose(w, reflection(int(rng() % N), N));
    REQUIRE(preserves_lorentz_form(w));
    Int d = determinant(w);
    CHECK((d == 1 || d == -1));
    LorentzVector u(N + 1), v(N + 1);
    for (int i = 0; i <= N; ++i) {
      u[i] = int(rng() % 19) - 9;
      v[i] = int(rng() % 19) - 9;
    }
    CHECK(inner_product(w.apply(u), w.apply(v)) == inner_product(u, v));
  }
}

TEST_CASE("char poly basics") {
  auto id = LatticeAutomorphism::identity(4);
  IPoly expect({Int(1), Int(-4), Int(6), Int(-4), Int(1)});  // (t-1)^4
  CHECK(char_poly(id) == expect);

  // companion matrix of t^2 - 3t + 1
  LatticeAutomorphism comp(2);
  comp.at(0, 1) = -1;
  comp.at(1, 0) = 1;
  comp.at(1, 1) = 3;
  CHECK(char_poly(comp) == IPoly({Int(1), Int(-3), Int(1)}));
}
