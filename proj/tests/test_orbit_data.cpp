#include <catch2/catch_amalgamated.hpp>

#include <salem/orbit_data.hpp>

#include "support.hpp"

#include <map>
#include <set>

using namespace salem;
using salem::testing::example_tau;
using salem::testing::make_tau;
using salem::testing::random_tau;

TEST_CASE("validity") {
  CHECK(is_valid(example_tau()));
  // sigma not a permutation
  OrbitData bad = example_tau();
  bad.sigma[0] = bad.sigma[1];
  CHECK_FALSE(is_valid(bad));
  // kappa = 0 where sigma maps backward
  OrbitData b2 = example_tau();
  b2.kappa[0] = 0;  // sigma(1,1) = (1,1), i1 <= i
  CHECK_FALSE(is_valid(b2));
}

TEST_CASE("mu values") {
  auto t = example_tau();
  CHECK(mu(t, {1, 1}) == 5);
  CHECK(mu(t, {2, 1}) == 7);
  auto t1 = make_tau(1, {{1, 1}, {1, 2}, {1, 3}}, {1, 1, 1});
  CHECK(mu(t1, {1, 1}) == 0);
  // residue invariant: mu = i1 - i - 1 (mod n)
  std::mt19937 rng(7);
  for (int k = 0; k < 200; ++k) {
    auto r = random_tau(rng, 1 + int(rng() % 3), 4);
    for (int p = 0; p < r.size(); ++p) {
      int m = mu(r, kpair(p));
      CHECK(m >= 0);
      CHECK((m - (r.sigma[p].i - kpair(p).i - 1)) % r.n == 0);
    }
  }
}

TEST_CASE("theta") {
  CHECK(theta(5, 2, 2, 0) == 0);
  CHECK(theta(2, 1, 2, 1) == 3);
  CHECK(theta(2, 2, 1, 1) == 1);
}

TEST_CASE("sigma_tau skips zero-kappa entries") {
  auto t = example_tau();
  for (int p = 0; p < 6; ++p) CHECK(sigma_tau(t, kpair(p)) == kpair(p));

  // sigma: (1,1)<->(2,1) with kappa(1,1)=0 (the zero entry must map forward)
  auto s = make_tau(2, {{2, 1}, {1, 2}, {1, 3}, {1, 1}, {2, 2}, {2, 3}},
                    {0, 1, 1, 1, 1, 1});
  CHECK(sigma_tau(s, {2, 1}) == IndexPair{2, 1});
  CHECK_THROWS_AS(sigma_tau(s, {1, 1}), domain_error);

  std::mt19937 rng(11);
  for (int k = 0; k < 1000; ++k) {
    auto r = random_tau(rng, 1 + int(rng() % 3), 3);
    std::set<int> images;
    int domain = 0;
    for (int p = 0; p < r.size(); ++p) {
      if (r.kappa[p] < 1) continue;
      ++domain;
      auto q = sigma_tau(r, kpair(p));
      CHECK(r.kap(q) >= 1);
      images.insert(kpos(q));
    }
    CHECK(static_cast<int>(images.size()) == domain);  // bijection on {kappa>=1}
  }
}

TEST_CASE("iota_tau resolution and distinctness") {
  auto t = example_tau();
  for (int p = 0; p < 6; ++p) CHECK(iota_tau(t, kpair(p)) == kpair(p));

  auto s = make_tau(2, {{2, 1}, {1, 2}, {1, 3}, {1, 1}, {2, 2}, {2, 3}},
                    {0, 1, 1, 1, 1, 1});
  CHECK(iota_tau(s, {1, 1}) == IndexPair{2, 1});

  std::mt19937 rng(13);
  for (int k = 0; k < 1000; ++k) {
    auto r = random_tau(rng, 1 + int(rng() % 3), 3);
    for (int j = 1; j <= r.n; ++j) {
      auto a = iota_tau(r, {j, 1});
      auto b = iota_tau(r, {j, 2});
      auto c = iota_tau(r, {j, 3});
      CHECK(a != b);
      CHECK(b != c);
      CHECK(a != c);
    }
  }
}

TEST_CASE("g_tau") {
  CHECK(g_tau(example_tau(), 1) == 3);
  auto t1 = make_tau(1, {{1, 1}, {1, 2}, {1, 3}}, {3, 4, 5});
  CHECK(g_tau(t1, 1) == 1);
  auto t2 = make_tau(1, {{1, 1}, {1, 2}, {1, 3}}, {3, 3, 5});
  CHECK(g_tau(t2, 1) == 2);
}

TEST_CASE("total orders") {
  // all mu distinct -> singleton, sorted by mu
  auto t1 = make_tau(1, {{1, 1}, {1, 2}, {1, 3}}, {1, 2, 3});
  auto T1 = total_orders(t1);
  REQUIRE(T1.size() == 1);
  CHECK(T1[0].order[0] == std::array<int, 3>{1, 2, 3});

  // the running example: all mu equal per column -> full branching
  auto T2 = total_orders(example_tau());
  CHECK(T2.size() == 36);

  std::mt19937 rng(17);
  for (int k = 0; k < 100; ++k) {
    auto r = random_tau(rng, 1 + int(rng() % 2), 3);
    CHECK_FALSE(total_orders(r).empty());
  }
}

TEST_CASE("kappa_r cases and column sums") {
  auto chain = make_tau(2, {{2, 1}, {1, 2}, {1, 3}, {1, 1}, {2, 2}, {2, 3}},
                        {1, 1, 1, 1, 1, 1});
  // (1,1) -> (2,1): i=1 < i1=2, r=1 in between: kappa+1
  CHECK(kappa_r(chain, 1, {1, 1}) == 2);
  // (2,1) -> (1,1): i1 <= i, r strictly between 0 and 2: kappa-1
  CHECK(kappa_r(chain, 1, {2, 1}) == 0);
  CHECK(kappa_r(chain, 2, {1, 1}) == 1);
  CHECK(kappa_r(chain, 0, {1, 1}) == 1);

  auto t = example_tau();
  for (int r = 0; r <= 2; ++r) {
    int sum = 0;
    for (int p = 0; p < 6; ++p) sum += kappa_r(t, r, kpair(p));
    CHECK(sum == 21);
  }
  std::mt19937 rng(19);
  for (int k = 0; k < 200; ++k) {
    auto rt = random_tau(rng, 1 + int(rng() % 3), 4);
    int N = rt.total_kappa();
    for (int r = 0; r <= rt.n; ++r) {
      int sum = 0;
      for (int p = 0; p < rt.size(); ++p) sum += kappa_r(rt, r, kpair(p));
      CHECK(sum == N);
    }
  }
}

TEST_CASE("mu vector round trip") {
  std::mt19937 rng(23);
  for (int k = 0; k < 200; ++k) {
    auto r = random_tau(rng, 1 + int(rng() % 3), 4);
    auto back = from_mu(r.n, r.sigma, mu_vector(r));
    CHECK(back == r);
  }
}

TEST_CASE("canonical form and enumeration") {
  // n=1, bound 1: kappa is forced to 1 everywhere; classes = cycle types of sigma
  std::vector<OrbitData> found;
  enumerate_orbit_data(1, 1, {}, [&](const OrbitData& t) {
    found.push_back(t);
    return true;
  });
  CHECK(found.size() == 3);

  // duplicate-freeness under canonical form (hash-set oracle), n<=2, bound<=2
  std::set<std::string> keys;
  size_t emitted = 0;
  enumerate_orbit_data(2, 2, {}, [&](const OrbitData& t) {
    ++emitted;
    CHECK(is_canonical(t));
    keys.insert(encode(t));
    return true;
  });
  CHECK(keys.size() == emitted);
  CHECK(emitted > 0);

  std::mt19937 rng(29);
  for (int k = 0; k < 50; ++k) {
    auto r = random_tau(rng, 2, 2);
    auto c = canonical_form(r);
    CHECK(is_valid(c));
    CHECK(encode(canonical_form(c)) == encode(c));
  }
}

TEST_CASE("thm3 conditions") {
  CHECK(thm3_conditions(example_tau()));
  auto t1 = make_tau(1, {{1, 1}, {1, 2}, {1, 3}}, {3, 3, 3});
  CHECK_FALSE(thm3_conditions(t1));  // n = 1
  auto t2 = example_tau();
  t2.kappa[0] = 2;
  CHECK_FALSE(thm3_conditions(t2));  // kappa < 3
  // indistinguishable pair on one sigma-orbit: (1,1)->(1,2)->(1,1), equal kappa
  auto t3 = make_tau(2, {{1, 2}, {1, 1}, {1, 3}, {2, 1}, {2, 2}, {2, 3}},
                     {3, 3, 3, 3, 3, 3});
  CHECK_FALSE(thm3_conditions(t3));
  // same 2-cycle but distinguishable kappa: fine
  auto t4 = make_tau(2, {{1, 2}, {1, 1}, {1, 3}, {2, 1}, {2, 2}, {2, 3}},
                     {3, 4, 3, 3, 3, 3});
  CHECK(thm3_conditions(t4));
}

TEST_CASE("single-map data with 21 blowups: counts under plausible equivalences") {
  // raw count: sigma in S_3 x compositions of 21 into three parts >= 1
  int compositions = 0;
  for (int a = 1; a <= 19; ++a)
    for (int b = 1; b + a <= 20; ++b) ++compositions;  // c = 21-a-b >= 1
  CHECK(compositions == 190);
  const int raw = 6 * compositions;
  CHECK(raw == 1140);

  // orbit count under simultaneous relabeling, by explicit canonicalization
  std::set<std::string> classes;
  for (int a = 1; a <= 19; ++a)
    for (int b = 1; a + b <= 20; ++b) {
      int c = 21 - a - b;
      std::vector<int> perm{0, 1, 2};
      do {
        OrbitData t;
        t.n = 1;
        t.sigma = {kpair(perm[0]), kpair(perm[1]), kpair(perm[2])};
        t.kappa = {a, b, c};
        if (!is_valid(t)) continue;
        classes.insert(encode(canonical_form(t)));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  // Burnside: (1140 + 3*20 + 2*3) / 6 = 201
  CHECK(classes.size() == 201);

  // cycle type x ordered composition reproduces the reported 570
  CHECK(3 * compositions == 570);
}
