#pragma once

// Shared test helpers: canned orbit data and a deterministic random-tau
// generator used by the property suites.

#include <salem/orbit_data.hpp>

#include <random>

namespace salem::testing {

// n=2, sigma=id, kappa=(3,3,3,4,4,4): the running example of the catalog.
inline OrbitData example_tau() {
  OrbitData t;
  t.n = 2;
  t.sigma.resize(6);
  t.kappa.resize(6);
  for (int p = 0; p < 6; ++p) {
    t.sigma[p] = kpair(p);
    t.kappa[p] = p < 3 ? 3 : 4;
  }
  return t;
}

inline OrbitData make_tau(int n, std::vector<std::pair<int, int>> images,
                          std::vector<int> kappa) {
  OrbitData t;
  t.n = n;
  for (auto [i, iota] : images) t.sigma.push_back({i, iota});
  t.kappa = std::move(kappa);
  require_valid(t);
  return t;
}

// Uniform-ish valid orbit data with kappa <= kmax; zero entries are repaired
// only where validity forces kappa >= 1.
inline OrbitData random_tau(std::mt19937& rng, int n, int kmax) {
  OrbitData t;
  t.n = n;
  const int sz = 3 * n;
  std::vector<int> perm(sz);
  for (int i = 0; i < sz; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  t.sigma.resize(sz);
  t.kappa.resize(sz);
  for (int p = 0; p < sz; ++p) {
    t.sigma[p] = kpair(perm[p]);
    t.kappa[p] = int(rng() % (kmax + 1));
    if (t.sigma[p].i <= kpair(p).i && t.kappa[p] < 1) t.kappa[p] = 1 + int(rng() % kmax);
  }
  if (!is_valid(t)) {
    // a fully zero cycle can survive the local repair; bump one entry
    for (int p = 0; p < sz && !is_valid(t); ++p)
      if (t.kappa[p] == 0) t.kappa[p] = 1;
  }
  require_valid(t);
  return t;
}

}  // namespace salem::testing
