#pragma once

// The lattice automorphism attached to orbit data: the basis indexing of
// L_tau, the cyclic permutation r_tau, the quadratic involutions q_j, their
// composition w_tau, a sparse applier for fast orbit iteration, and the
// converse direction turning an arbitrary Weyl word into orbit data.

#include <salem/lorentz.hpp>
#include <salem/orbit_data.hpp>

#include <map>
#include <vector>

namespace salem {

// Flat index map {e_0} u {e^k_p : kappa(p) >= 1, 1 <= k <= kappa(p)} -> 0..N.
// e_0 first, then (i, iota, k) lexicographic.
struct BasisIndexer {
  OrbitData tau;
  std::vector<int> offset;  // per canonical position, start of its k-block
  int N = 0;

  explicit BasisIndexer(OrbitData t) : tau(std::move(t)) {
    require_valid(tau);
    offset.resize(tau.size());
    int idx = 1;
    for (int p = 0; p < tau.size(); ++p) {
      offset[p] = idx;
      idx += tau.kappa[p];
    }
    N = idx - 1;
  }

  int dim() const { return N + 1; }
  // Index of e^k_p, 1 <= k <= kappa(p).
  int index(const IndexPair& p, int k) const {
    if (k < 1 || k > tau.kap(p)) throw domain_error("basis index out of range");
    return offset[kpos(p)] + (k - 1);
  }
  // Inverse lookup: flat index (>= 1) to (pair, k).
  std::pair<IndexPair, int> lookup(int flat) const {
    for (int p = tau.size() - 1; p >= 0; --p)
      if (tau.kappa[p] >= 1 && offset[p] <= flat && flat < offset[p] + tau.kappa[p])
        return {kpair(p), flat - offset[p] + 1};
    throw domain_error("flat index out of range");
  }
};

// The three e^1-slots touched by q_j: flat indices of e^1_{(j,iota)_tau}.
inline std::array<int, 3> q_slots(const BasisIndexer& B, int j) {
  std::array<int, 3> s{};
  for (int iota = 1; iota <= 3; ++iota)
    s[iota - 1] = B.index(iota_tau(B.tau, {j, iota}), 1);
  return s;
}

// Reflection in e_0 - sum of the three slots, applied in place.
inline void apply_q_slots(const std::array<int, 3>& s, std::vector<Int>& v) {
  Int pairing = v[0] + v[s[0]] + v[s[1]] + v[s[2]];
  v[0] += pairing;
  v[s[0]] -= pairing;
  v[s[1]] -= pairing;
  v[s[2]] -= pairing;
}

inline LatticeAutomorphism build_q_j(const BasisIndexer& B, int j) {
  if (j < 1 || j > B.tau.n) throw domain_error("q index out of range");
  auto s = q_slots(B, j);
  LorentzVector beta(B.dim());
  beta[0] = 1;
  beta[s[0]] = beta[s[1]] = beta[s[2]] = -1;
  return reflection_in_root(beta);
}

inline LatticeAutomorphism build_r_tau(const BasisIndexer& B) {
  const auto& t = B.tau;
  LatticeAutomorphism m(B.dim());
  m.at(0, 0) = 1;
  for (int p = 0; p < t.size(); ++p) {
    if (t.kappa[p] < 1) continue;
    IndexPair ip = kpair(p);
    // e^1 of sigma_tau(ip) maps to e^kappa of ip
    m.at(B.index(ip, t.kappa[p]), B.index(sigma_tau(t, ip), 1)) = 1;
    for (int k = 2; k <= t.kappa[p]; ++k)
      m.at(B.index(ip, k - 1), B.index(ip, k)) = 1;
  }
  return m;
}

// Permutation form of r_tau: rperm[src] = dst for column vectors.
inline std::vector<int> r_tau_perm(const BasisIndexer& B) {
  const auto& t = B.tau;
  std::vector<int> perm(B.dim());
  perm[0] = 0;
  for (int p = 0; p < t.size(); ++p) {
    if (t.kappa[p] < 1) continue;
    IndexPair ip = kpair(p);
    perm[B.index(sigma_tau(t, ip), 1)] = B.index(ip, t.kappa[p]);
    for (int k = 2; k <= t.kappa[p]; ++k) perm[B.index(ip, k)] = B.index(ip, k - 1);
  }
  return perm;
}

// w_tau = r_tau . q_1 . ... . q_n (rightmost acts first on column vectors).
inline LatticeAutomorphism build_w_tau(const BasisIndexer& B) {
  LatticeAutomorphism w = LatticeAutomorphism::identity(B.dim());
  for (int j = 1; j <= B.tau.n; ++j) w = compose(w, build_q_j(B, j));
  return compose(build_r_tau(B), w);
}

// Sparse applier for w_tau: n O(1) reflections plus one permutation per step.
struct WtauAction {
  std::vector<std::array<int, 3>> slots;  // q_n applied first
  std::vector<int> rperm;
  int dim = 0;

  explicit WtauAction(const BasisIndexer& B) : rperm(r_tau_perm(B)), dim(B.dim()) {
    for (int j = B.tau.n; j >= 1; --j) slots.push_back(q_slots(B, j));
  }

  void apply_in_place(std::vector<Int>& v, std::vector<Int>& scratch) const {
    for (const auto& s : slots) apply_q_slots(s, v);
    scratch.resize(v.size());
    for (size_t i = 0; i < v.size(); ++i) scratch[rperm[i]] = std::move(v[i]);
    v.swap(scratch);
  }
};

// ------------------------------------------------------------- Weyl words
struct WeylWord {
  int N = 3;
  std::vector<int> gens;  // each in 0..N-1
};

inline LatticeAutomorphism word_matrix(const WeylWord& w) {
  if (w.N < 3) throw dimension_error("Weyl word needs N >= 3");
  auto m = LatticeAutomorphism::identity(w.N + 1);
  for (int g : w.gens) {
    if (g < 0 || g >= w.N) throw domain_error("generator index out of range");
    m = compose(m, reflection(g, w.N));
  }
  return m;
}

struct WordConversion {
  OrbitData tau;
  std::vector<int> relabel;  // relabel[flat-1] = original basis index in 1..N
};

// Expresses an arbitrary word as w_tau for explicit orbit data, together
// with the basis identification making the matrices equal on the nose.
inline WordConversion word_to_orbit_data(const WeylWord& word) {
  const int N = word.N;
  if (N < 3) throw dimension_error("word_to_orbit_data needs N >= 3");

  // Split the word into permutation runs separated by the zeroth generator:
  // w = P_0 rho_0 P_1 rho_0 ... rho_0 P_m, each P a permutation of e_1..e_N.
  std::vector<std::vector<int>> runs(1);
  for (int g : word.gens) {
    if (g == 0)
      runs.emplace_back();
    else
      runs.back().push_back(g);
  }
  if (runs.size() == 1) {
    // No quadratic generator: append rho_0 rho_0, which leaves the word's
    // value unchanged but gives the assembly real columns to work with.
    runs.push_back({});
    runs.push_back({});
  }
  const int m = static_cast<int>(runs.size()) - 1;

  // perm[j] = image index of e_j (1-based) under a run, rightmost letter first.
  auto run_perm = [&](const std::vector<int>& run) {
    std::vector<int> p(N + 1);
    for (int i = 1; i <= N; ++i) p[i] = i;
    for (auto it = run.rbegin(); it != run.rend(); ++it) {
      int g = *it;  // transposition (g, g+1)
      for (int i = 1; i <= N; ++i)
        if (p[i] == g)
          p[i] = g + 1;
        else if (p[i] == g + 1)
          p[i] = g;
    }
    return p;
  };
  std::vector<std::vector<int>> P(m + 1);
  for (int k = 0; k <= m; ++k) P[k] = run_perm(runs[k]);

  // suffix[k] = P_k P_{k+1} ... P_m (applied right to left)
  std::vector<std::vector<int>> suffix(m + 2);
  suffix[m + 1].resize(N + 1);
  for (int i = 1; i <= N; ++i) suffix[m + 1][i] = i;
  for (int k = m; k >= 0; --k) {
    suffix[k].resize(N + 1);
    for (int i = 1; i <= N; ++i) suffix[k][i] = P[k][suffix[k + 1][i]];
  }
  const std::vector<int>& wp = suffix[0];  // the full permutation P
  std::vector<int> wp_inv(N + 1);
  for (int i = 1; i <= N; ++i) wp_inv[wp[i]] = i;

  // Marks: b_{k,iota} = (P_k ... P_m)^{-1}(e_iota) for k = 1..m.
  // suffix[k]^{-1}(iota): find j with suffix[k][j] == iota.
  std::vector<std::array<int, 3>> marks(m + 1);
  std::vector<int> inv(N + 1);
  for (int k = 1; k <= m; ++k) {
    for (int i = 1; i <= N; ++i) inv[suffix[k][i]] = i;
    marks[k] = {inv[1], inv[2], inv[3]};
  }

  // Duplicate classes per physical vector, ordered by k.
  std::map<int, std::vector<std::pair<int, int>>> classes;  // vec -> [(k, iota)]
  for (int k = 1; k <= m; ++k)
    for (int iota = 1; iota <= 3; ++iota)
      classes[marks[k][iota - 1]].push_back({k, iota});

  // Free orbits of wp: cycles containing no mark. Count and record them.
  std::vector<char> marked(N + 1, 0);
  for (auto& [vec, cls] : classes) marked[vec] = 1;
  std::vector<char> visited(N + 1, 0);
  std::vector<std::vector<int>> free_orbits;
  for (int i = 1; i <= N; ++i) {
    if (visited[i]) continue;
    std::vector<int> cyc;
    bool has_mark = false;
    int j = i;
    do {
      visited[j] = 1;
      cyc.push_back(j);
      if (marked[j]) has_mark = true;
      j = wp[j];
    } while (j != i);
    if (!has_mark) free_orbits.push_back(cyc);
  }
  const int mhat = static_cast<int>(free_orbits.size());
  const int n = m + 2 * mhat;

  OrbitData tau;
  tau.n = n;
  tau.sigma.assign(3 * n, IndexPair{1, 1});
  tau.kappa.assign(3 * n, 0);

  // Dummy columns 1..2*mhat: iota = 1,2 chain forward; iota = 3 pairs up.
  for (int i = 1; i <= 2 * mhat; ++i) {
    for (int iota = 1; iota <= 2; ++iota) {
      IndexPair next = (i < 2 * mhat) ? IndexPair{i + 1, iota}
                                      : IndexPair{2 * mhat + 1, iota};
      tau.sigma[kpos({i, iota})] = next;  // kappa stays 0
    }
  }
  for (int j = 1; j <= mhat; ++j) {
    tau.sigma[kpos({2 * j - 1, 3})] = {2 * j, 3};
    tau.sigma[kpos({2 * j, 3})] = {2 * j - 1, 3};
    tau.kappa[kpos({2 * j, 3})] = static_cast<int>(free_orbits[j - 1].size());
  }

  // Real columns 2*mhat + k: duplicate chains get kappa = 0 and point at the
  // next duplicate; each physical mark absorbs one wp-arc.
  auto label_min = [&](int vec) {
    const auto& cls = classes.at(vec);
    return IndexPair{2 * mhat + cls.front().first, cls.front().second};
  };
  auto label_max = [&](int vec) {
    const auto& cls = classes.at(vec);
    return IndexPair{2 * mhat + cls.back().first, cls.back().second};
  };
  for (auto& [vec, cls] : classes) {
    for (size_t d = 0; d + 1 < cls.size(); ++d) {
      IndexPair from{2 * mhat + cls[d].first, cls[d].second};
      IndexPair to{2 * mhat + cls[d + 1].first, cls[d + 1].second};
      tau.sigma[kpos(from)] = to;  // kappa 0
    }
  }
  // Walk wp forward from each physical mark to the next mark.
  struct Arc {
    std::vector<int> interior;
    int reached_vec = 0;
  };
  std::map<std::pair<int, int>, Arc> arcs;  // keyed by reached label
  for (auto& [vec, cls] : classes) {
    Arc arc;
    int j = wp[vec];
    int steps = 1;
    while (!marked[j]) {
      arc.interior.push_back(j);
      j = wp[j];
      ++steps;
    }
    arc.reached_vec = j;
    IndexPair reached = label_max(j);
    IndexPair source = label_min(vec);
    tau.sigma[kpos(reached)] = source;
    tau.kappa[kpos(reached)] = steps;
    arcs[{reached.i, reached.iota}] = std::move(arc);
  }
  // Splice: a real image (2*mhat+1, iota in {1,2}) reroutes through the
  // dummy chains when they exist.
  if (mhat > 0 && m > 0) {
    for (int p = 0; p < 3 * n; ++p) {
      if (kpair(p).i <= 2 * mhat) continue;
      IndexPair im = tau.sigma[p];
      if (im.i == 2 * mhat + 1 && im.iota <= 2) tau.sigma[p] = {1, im.iota};
    }
  }
  require_valid(tau);

  // Identification of basis slots with original indices.
  BasisIndexer B(tau);
  std::vector<int> relabel(B.N, 0);
  auto assign = [&](const IndexPair& p, int k, int orig) {
    relabel[B.index(p, k) - 1] = orig;
  };
  for (int j = 1; j <= mhat; ++j) {
    const auto& cyc = free_orbits[j - 1];
    // e^1 = cyc[0], e^k = wp^{1-k}(cyc[0]) walking backward through the cycle
    const int L = static_cast<int>(cyc.size());
    for (int k = 1; k <= L; ++k) assign({2 * j, 3}, k, cyc[(L - (k - 1)) % L]);
  }
  for (auto& [key, arc] : arcs) {
    IndexPair lab{key.first, key.second};
    int kap = tau.kap(lab);
    assign(lab, 1, arc.reached_vec);
    // e^k = wp^{1-k}(e^1): the arc interior, walked backward
    for (int k = 2; k <= kap; ++k)
      assign(lab, k, arc.interior[arc.interior.size() - (k - 1)]);
  }

  return WordConversion{std::move(tau), std::move(relabel)};
}

// Conjugates w_tau by the relabeling; the result must equal word_matrix.
inline LatticeAutomorphism conjugated_w_tau(const WordConversion& wc) {
  BasisIndexer B(wc.tau);
  auto w = build_w_tau(B);
  const int dim = B.dim();
  LatticeAutomorphism out(dim);
  // P maps flat slot j to original index relabel[j-1]; out = P w P^{-1}
  std::vector<int> to_orig(dim);
  to_orig[0] = 0;
  for (int j = 1; j < dim; ++j) to_orig[j] = wc.relabel[j - 1];
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) out.at(to_orig[r], to_orig[c]) = w.at(r, c);
  return out;
}

}  // namespace salem
