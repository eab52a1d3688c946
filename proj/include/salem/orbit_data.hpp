#pragma once

// Orbit data tau = (n, sigma, kappa) and its combinatorial calculus:
// validity, mu, theta, the reduced permutation sigma_tau, coincidence
// counts, admissible total orders, intermediate multiplicities, and
// enumeration up to a canonical labeling.

#include <salem/numeric.hpp>

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace salem {

struct IndexPair {
  int i = 1;     // 1..n
  int iota = 1;  // 1..3

  bool operator==(const IndexPair& o) const { return i == o.i && iota == o.iota; }
  bool operator!=(const IndexPair& o) const { return !(*this == o); }
  bool operator<(const IndexPair& o) const {
    return i != o.i ? i < o.i : iota < o.iota;
  }
};

// Canonical (row-major) position of (i, iota) in K(n).
inline int kpos(const IndexPair& p) { return 3 * (p.i - 1) + (p.iota - 1); }
inline IndexPair kpair(int pos) { return IndexPair{pos / 3 + 1, pos % 3 + 1}; }

struct OrbitData {
  int n = 1;
  std::vector<IndexPair> sigma;  // images in canonical order, size 3n
  std::vector<int> kappa;        // size 3n

  int size() const { return 3 * n; }
  IndexPair sig(const IndexPair& p) const { return sigma[kpos(p)]; }
  int kap(const IndexPair& p) const { return kappa[kpos(p)]; }
  int total_kappa() const {
    int s = 0;
    for (int k : kappa) s += k;
    return s;
  }

  bool operator==(const OrbitData& o) const {
    return n == o.n && sigma == o.sigma && kappa == o.kappa;
  }
  bool operator<(const OrbitData& o) const {
    if (n != o.n) return n < o.n;
    for (int p = 0; p < size(); ++p) {
      if (!(sigma[p] == o.sigma[p])) return sigma[p] < o.sigma[p];
      if (kappa[p] != o.kappa[p]) return kappa[p] < o.kappa[p];
    }
    return false;
  }
};

inline bool is_permutation(const OrbitData& t) {
  if (static_cast<int>(t.sigma.size()) != t.size() ||
      static_cast<int>(t.kappa.size()) != t.size())
    return false;
  std::vector<char> seen(t.size(), 0);
  for (const auto& im : t.sigma) {
    if (im.i < 1 || im.i > t.n || im.iota < 1 || im.iota > 3) return false;
    if (seen[kpos(im)]) return false;
    seen[kpos(im)] = 1;
  }
  return true;
}

// Definition: kappa >= 0, and kappa(p) >= 1 whenever i_1 <= i.
inline bool is_valid(const OrbitData& t) {
  if (t.n < 1 || !is_permutation(t)) return false;
  for (int p = 0; p < t.size(); ++p) {
    if (t.kappa[p] < 0) return false;
    if (t.sigma[p].i <= kpair(p).i && t.kappa[p] < 1) return false;
  }
  // Consequence asserted directly: every sigma-cycle meets {kappa >= 1}.
  std::vector<char> seen(t.size(), 0);
  for (int p = 0; p < t.size(); ++p) {
    if (seen[p]) continue;
    bool pos = false;
    int q = p;
    do {
      seen[q] = 1;
      if (t.kappa[q] >= 1) pos = true;
      q = kpos(t.sigma[q]);
    } while (q != p);
    if (!pos) return false;
  }
  return true;
}

inline void require_valid(const OrbitData& t) {
  if (!is_valid(t)) throw data_error("invalid orbit data");
}

inline int theta(int n, int i, int i1, int k) { return k * n + i1 - i; }

// mu = kappa * n + i_1 - i - 1
inline int mu(const OrbitData& t, const IndexPair& p) {
  return t.kap(p) * t.n + t.sig(p).i - p.i - 1;
}

// First sigma^m(p) with m >= 1 and kappa >= 1.
inline IndexPair next_positive(const OrbitData& t, const IndexPair& p) {
  IndexPair q = t.sig(p);
  for (int guard = 0; guard <= t.size(); ++guard) {
    if (t.kap(q) >= 1) return q;
    q = t.sig(q);
  }
  throw data_error("sigma-cycle without positive kappa");
}

// sigma_tau: the permutation induced on {kappa >= 1}.
inline IndexPair sigma_tau(const OrbitData& t, const IndexPair& p) {
  if (t.kap(p) < 1) throw domain_error("sigma_tau requires kappa >= 1");
  return next_positive(t, p);
}

// (j, iota)_tau: first sigma^m(j, iota) with m >= 0 and kappa >= 1.
inline IndexPair iota_tau(const OrbitData& t, const IndexPair& p) {
  if (t.kap(p) >= 1) return p;
  return next_positive(t, p);
}

// Number of coincidences among the mu values of column i: 1, 2 or 3.
inline int g_tau(const OrbitData& t, int i) {
  int m1 = mu(t, {i, 1}), m2 = mu(t, {i, 2}), m3 = mu(t, {i, 3});
  if (m1 == m2 && m2 == m3) return 3;
  if (m1 == m2 || m2 == m3 || m1 == m3) return 2;
  return 1;
}

// Multiplicity of the p-orbit on the r-th intermediate surface, 0 <= r <= n.
inline int kappa_r(const OrbitData& t, int r, const IndexPair& p) {
  if (r < 0 || r > t.n) throw domain_error("kappa_r: r out of range");
  const int i = p.i, i1 = t.sig(p).i, k = t.kap(p);
  if (i < i1 && i <= r && r <= i1 - 1) return k + 1;
  if (i1 <= i && i1 - 1 < r && r < i) return k - 1;
  return k;
}

// ------------------------------------------------------------ (n,sigma,mu)
// The correspondence (n, sigma, kappa) <-> (n, sigma, mu); mu must satisfy
// mu = i_1 - i - 1 (mod n) and yield kappa >= 0.
inline std::vector<int> mu_vector(const OrbitData& t) {
  std::vector<int> v(t.size());
  for (int p = 0; p < t.size(); ++p) v[p] = mu(t, kpair(p));
  return v;
}

inline OrbitData from_mu(int n, const std::vector<IndexPair>& sigma,
                         const std::vector<int>& muv) {
  OrbitData t;
  t.n = n;
  t.sigma = sigma;
  t.kappa.resize(3 * n);
  for (int p = 0; p < 3 * n; ++p) {
    int residue = sigma[p].i - kpair(p).i - 1;
    int num = muv[p] - residue;
    if (num % n != 0) throw data_error("mu has a wrong residue mod n");
    t.kappa[p] = num / n;
  }
  require_valid(t);
  return t;
}

// ----------------------------------------------------------- total orders
// One strict total order per column; order[i-1] lists iota from smallest to
// largest.
struct TotalOrderTuple {
  std::vector<std::array<int, 3>> order;

  bool less(const IndexPair& a, const IndexPair& b) const {
    if (a.i != b.i) throw domain_error("order compares within one column");
    if (a.iota == b.iota) return false;
    const auto& o = order[a.i - 1];
    for (int x : o) {
      if (x == a.iota) return true;
      if (x == b.iota) return false;
    }
    return false;
  }
  bool operator<(const TotalOrderTuple& o) const { return order < o.order; }
  bool operator==(const TotalOrderTuple& o) const { return order == o.order; }
};

namespace detail {

inline bool mu_sorted(const OrbitData& t, int col, const std::array<int, 3>& ord) {
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      if (mu(t, {col, ord[a]}) > mu(t, {col, ord[b]})) return false;
  return true;
}

inline void total_orders_dfs(const OrbitData& t, std::vector<int>& remaining,
                             int prev_col, TotalOrderTuple& acc,
                             std::set<TotalOrderTuple>& out) {
  if (remaining.empty()) {
    out.insert(acc);
    return;
  }
  // Columns triggered by a mu-tie mapping into the previous column.
  std::vector<int> triggered;
  if (prev_col != 0) {
    for (int c : remaining) {
      bool hit = false;
      for (int a = 1; a <= 3 && !hit; ++a)
        for (int b = a + 1; b <= 3 && !hit; ++b) {
          IndexPair pa{c, a}, pb{c, b};
          if (mu(t, pa) == mu(t, pb) && t.sig(pa).i == prev_col &&
              t.sig(pb).i == prev_col)
            hit = true;
        }
      if (hit) triggered.push_back(c);
    }
  }
  std::vector<int> candidates;
  bool inherited = !triggered.empty();
  if (inherited) {
    candidates = triggered;
  } else {
    int best = remaining.front();
    for (int c : remaining)
      if (g_tau(t, c) < g_tau(t, best) || (g_tau(t, c) == g_tau(t, best) && c < best))
        best = c;
    candidates.push_back(best);
  }
  static const std::array<std::array<int, 3>, 6> perms = {
      {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}}};
  for (int c : candidates) {
    for (const auto& ord : perms) {
      if (!mu_sorted(t, c, ord)) continue;
      if (inherited) {
        // mu-tied pairs whose sigma-images both lie in prev_col inherit the
        // previous column's order.
        bool ok = true;
        for (int x = 0; x < 3 && ok; ++x)
          for (int y = x + 1; y < 3 && ok; ++y) {
            IndexPair pa{c, ord[x]}, pb{c, ord[y]};  // pa before pb here
            if (mu(t, pa) == mu(t, pb) && t.sig(pa).i == prev_col &&
                t.sig(pb).i == prev_col) {
              if (!acc.less(t.sig(pa), t.sig(pb))) ok = false;
            }
          }
        if (!ok) continue;
      }
      acc.order[c - 1] = ord;
      auto rest = remaining;
      rest.erase(std::find(rest.begin(), rest.end(), c));
      total_orders_dfs(t, rest, c, acc, out);
    }
  }
}

}  // namespace detail

// All order tuples admitted by the inductive construction; branches where
// ties leave freedom are enumerated exhaustively.
inline std::vector<TotalOrderTuple> total_orders(const OrbitData& t) {
  require_valid(t);
  std::set<TotalOrderTuple> out;
  TotalOrderTuple acc;
  acc.order.assign(t.n, {1, 2, 3});
  std::vector<int> remaining(t.n);
  for (int i = 0; i < t.n; ++i) remaining[i] = i + 1;
  detail::total_orders_dfs(t, remaining, 0, acc, out);
  return {out.begin(), out.end()};
}

// ------------------------------------------------------- canonical labels
// Encoding of (sigma, kappa) used for canonical-form comparison and as the
// cache key.
inline std::string encode(const OrbitData& t) {
  std::string s = "n=" + std::to_string(t.n) + ";s=";
  for (const auto& im : t.sigma)
    s += std::to_string(im.i) + "." + std::to_string(im.iota) + ",";
  s += ";k=";
  for (int k : t.kappa) s += std::to_string(k) + ",";
  return s;
}

// Relabel iota within each column by g (one permutation of {1,2,3} per
// column); sigma conjugates, kappa transports.
inline OrbitData relabel(const OrbitData& t, const std::vector<std::array<int, 3>>& g) {
  OrbitData r;
  r.n = t.n;
  r.sigma.resize(t.size());
  r.kappa.resize(t.size());
  for (int p = 0; p < t.size(); ++p) {
    IndexPair src = kpair(p);
    IndexPair nsrc{src.i, g[src.i - 1][src.iota - 1]};
    IndexPair im = t.sigma[p];
    IndexPair nim{im.i, g[im.i - 1][im.iota - 1]};
    r.sigma[kpos(nsrc)] = nim;
    r.kappa[kpos(nsrc)] = t.kappa[p];
  }
  return r;
}

// Minimal relabeling representative: prevents trivially relabeled duplicates.
inline OrbitData canonical_form(const OrbitData& t) {
  static const std::array<std::array<int, 3>, 6> perms = {
      {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}}};
  std::vector<std::array<int, 3>> g(t.n, {1, 2, 3});
  OrbitData best = t;
  std::function<void(int)> rec = [&](int col) {
    if (col == t.n) {
      OrbitData cand = relabel(t, g);
      if (cand < best) best = cand;
      return;
    }
    for (const auto& p : perms) {
      g[col] = p;
      rec(col + 1);
    }
  };
  rec(0);
  return best;
}

inline bool is_canonical(const OrbitData& t) { return canonical_form(t) == t; }

// --------------------------------------------------------------- theorem
// The sufficient conditions: n >= 2, kappa >= 3 everywhere, and
// kappa-indistinguishable index pairs never share a sigma-orbit.
inline bool thm3_conditions(const OrbitData& t) {
  if (t.n < 2) return false;
  for (int k : t.kappa)
    if (k < 3) return false;
  auto cycle_len = [&](IndexPair p) {
    int len = 0;
    IndexPair q = p;
    do {
      q = t.sig(q);
      ++len;
    } while (!(q == p));
    return len;
  };
  for (int a = 0; a < t.size(); ++a)
    for (int b = a + 1; b < t.size(); ++b) {
      IndexPair pa = kpair(a), pb = kpair(b);
      int la = cycle_len(pa), lb = cycle_len(pb);
      int L = std::lcm(la, lb);
      bool twins = true;
      bool same_orbit = false;
      IndexPair x = pa, y = pb;
      for (int m = 0; m < L; ++m) {
        if (x == pb) same_orbit = true;
        if (x.i != y.i || t.kap(x) != t.kap(y)) {
          twins = false;
          break;
        }
        x = t.sig(x);
        y = t.sig(y);
      }
      if (twins && same_orbit) return false;
    }
  return true;
}

// ------------------------------------------------------------ enumeration
// Streams every valid canonical representative with kappa <= kappa_bound
// entrywise. The callback returns false to stop early.
struct EnumFilter {
  bool thm3_only = false;
  int kappa_min = 0;
};

inline void enumerate_orbit_data(int n, int kappa_bound, const EnumFilter& filter,
                                 const std::function<bool(const OrbitData&)>& cb) {
  if (n < 1 || kappa_bound < 0) throw domain_error("bad enumeration bounds");
  const int sz = 3 * n;
  std::vector<int> perm(sz);
  for (int i = 0; i < sz; ++i) perm[i] = i;
  const int kmin = std::max(0, filter.kappa_min);
  do {
    OrbitData t;
    t.n = n;
    t.sigma.resize(sz);
    for (int p = 0; p < sz; ++p) t.sigma[p] = kpair(perm[p]);
    t.kappa.assign(sz, kmin);
    // mixed-radix counter over kappa assignments
    while (true) {
      if (is_valid(t) && (!filter.thm3_only || thm3_conditions(t)) && is_canonical(t)) {
        if (!cb(t)) return;
      }
      int pos = 0;
      while (pos < sz && t.kappa[pos] == kappa_bound) {
        t.kappa[pos] = kmin;
        ++pos;
      }
      if (pos == sz) break;
      ++t.kappa[pos];
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace salem
