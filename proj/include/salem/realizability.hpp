#pragma once

// Realizability of orbit data: the root families attached to tau, exact
// periodicity tests (big-integer iteration and field pairing, cross
// validated), the realizability verdict, and the two sibling moves that
// repair failing data without changing the spectral radius.

#include <salem/spectral.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace salem {

struct PairTag {
  IndexPair a, b;
  int k = 0;

  int m(int n) const { return theta(n, a.i, b.i, k); }
  bool degenerate() const { return a == b && k == 0; }
  bool operator==(const PairTag& o) const { return a == o.a && b == o.b && k == o.k; }
  bool operator<(const PairTag& o) const {
    if (!(a == o.a)) return a < o.a;
    if (!(b == o.b)) return b < o.b;
    return k < o.k;
  }
};

struct TaggedRoot {
  LorentzVector vec;
  bool is_c_root = false;
  int j = 0;       // c-root index
  PairTag tag;     // pair-root tag
};

namespace detail {
inline void apply_q_range(const BasisIndexer& B, int j_first, std::vector<Int>& v) {
  for (int j = j_first; j <= B.tau.n; ++j) apply_q_slots(q_slots(B, j), v);
}
}  // namespace detail

// alpha_j^c = q_n ... q_{j+1}(e_0 - sum of the three level-one slots of j).
inline TaggedRoot c_root(const BasisIndexer& B, int j) {
  std::vector<Int> v(B.dim(), Int(0));
  v[0] = 1;
  for (int iota = 1; iota <= 3; ++iota) v[B.index(iota_tau(B.tau, {j, iota}), 1)] -= 1;
  detail::apply_q_range(B, j + 1, v);
  TaggedRoot r;
  r.vec = LorentzVector(std::move(v));
  r.is_c_root = true;
  r.j = j;
  return r;
}

inline std::vector<TaggedRoot> gamma1(const BasisIndexer& B) {
  std::vector<TaggedRoot> out;
  for (int j = 1; j <= B.tau.n; ++j) out.push_back(c_root(B, j));
  return out;
}

// All admissible pair tags: 0 <= theta_{i,i'}(k) <= mu(a).
inline std::vector<PairTag> admissible_pair_tags(const OrbitData& t) {
  std::vector<PairTag> tags;
  for (int pa = 0; pa < t.size(); ++pa)
    for (int pb = 0; pb < t.size(); ++pb) {
      IndexPair a = kpair(pa), b = kpair(pb);
      const int muA = mu(t, a);
      for (int k = -t.n; k * t.n + b.i - a.i <= muA; ++k) {
        int th = theta(t.n, a.i, b.i, k);
        if (th < 0) continue;
        tags.push_back(PairTag{a, b, k});
      }
    }
  return tags;
}

// Lattice vector of a pair root. The level slot for exponent k is e^{k+1}_a
// when k < kappa(a); at k = kappa(a) the cycle has wrapped and the slot is
// the level-one slot of the next kappa-positive iterate. Degenerate tags
// (a = b, k = 0) carry no root.
inline std::optional<LorentzVector> pair_root_vector(const BasisIndexer& B,
                                                     const PairTag& tag) {
  const OrbitData& t = B.tau;
  const int kap = t.kap(tag.a);
  if (tag.k > kap) throw domain_error("pair tag exponent exceeds the block");
  int eslot = tag.k < kap ? B.index(tag.a, tag.k + 1)
                          : B.index(next_positive(t, tag.a), 1);
  int yslot = B.index(iota_tau(t, tag.b), 1);
  if (eslot == yslot) {
    if (!tag.degenerate()) throw data_error("unexpected slot collision");
    return std::nullopt;
  }
  std::vector<Int> v(B.dim(), Int(0));
  v[eslot] = 1;
  v[yslot] = -1;
  detail::apply_q_range(B, tag.b.i + 1, v);
  return LorentzVector(std::move(v));
}

inline std::vector<TaggedRoot> gamma2_bar(const BasisIndexer& B) {
  std::vector<TaggedRoot> out;
  for (const auto& tag : admissible_pair_tags(B.tau)) {
    auto vec = pair_root_vector(B, tag);
    if (!vec) continue;
    TaggedRoot r;
    r.vec = std::move(*vec);
    r.tag = tag;
    out.push_back(std::move(r));
  }
  return out;
}

// Membership in the removed subset, for one admissible order tuple.
inline bool in_gamma2_check(const OrbitData& t, const TotalOrderTuple& ord,
                            const PairTag& tag) {
  const int th = theta(t.n, tag.a.i, tag.b.i, tag.k);
  const int muA = mu(t, tag.a), muB = mu(t, tag.b);
  IndexPair a1 = t.sig(tag.a), b1 = t.sig(tag.b);
  if (th > 0) {
    if (muA > muB + th) return true;
    if (muA == muB + th) {
      if (a1.i != b1.i) throw data_error("image columns must agree on ties");
      return ord.less(b1, a1);
    }
    return false;
  }
  // th == 0 forces the same column and k = 0
  bool lhs = ord.less(tag.b, tag.a);
  bool rhs = muA > muB || (muA == muB && !(a1 == b1) && ord.less(b1, a1));
  return lhs == rhs;
}

// Tags of Gamma^(2) = Gamma-bar minus Gamma-check (degenerate tags always
// land in the removed part and never reach here).
inline std::vector<PairTag> gamma2_tags(const OrbitData& t, const TotalOrderTuple& ord) {
  std::vector<PairTag> out;
  for (const auto& tag : admissible_pair_tags(t))
    if (!in_gamma2_check(t, ord, tag)) {
      if (tag.degenerate()) throw data_error("degenerate tag escaped the check set");
      out.push_back(tag);
    }
  return out;
}

// --------------------------------------------------------- periodicity
// Exact iteration with early exit. A bounded return to alpha certifies
// periodicity with period dividing ell; blow-up past the guard certifies a
// nonzero component along the expanding direction.
inline bool is_periodic_iteration(const WtauAction& act, const LorentzVector& alpha,
                                  double log2_lambda, const Int& ell,
                                  int step_cap = 4096) {
  Int guard = alpha.max_abs_coeff() + 1;
  double bits = log2_lambda * std::min<double>(64.0, double(ell));
  unsigned shift = static_cast<unsigned>(std::min(64.0, std::max(8.0, bits))) + 2;
  guard <<= shift;  // (max initial coordinate) * min(lambda^ell, 2^64) * 4
  std::vector<Int> v = alpha.coeffs, scratch;
  for (int step = 1; step <= step_cap; ++step) {
    act.apply_in_place(v, scratch);
    if (v == alpha.coeffs) return true;
    Int mx = 0;
    for (const auto& x : v)
      if (abs(x) > mx) mx = abs(x);
    if (mx > guard) return false;
  }
  throw precision_error("periodicity iteration undecided within the step cap");
}

// (alpha, v-bar) in the field; zero iff alpha is periodic.
inline bool is_periodic_field(const std::vector<NFElem>& vbar, const LorentzVector& alpha) {
  auto F = vbar[0].field;
  NFElem acc = vbar[0] * F->from_rat(Rat(alpha[0]));
  for (size_t i = 1; i < alpha.coeffs.size(); ++i) {
    if (alpha[i] == 0) continue;
    acc = acc - vbar[i] * F->from_rat(Rat(alpha[i]));
  }
  return acc.is_zero();
}

// Both methods, which must agree.
inline bool is_periodic(const WtauAction& act, const LorentzVector& alpha,
                        double log2_lambda, const Int& ell,
                        const std::vector<NFElem>* vbar = nullptr) {
  bool it = is_periodic_iteration(act, alpha, log2_lambda, ell);
  if (vbar) {
    bool fd = is_periodic_field(*vbar, alpha);
    if (fd != it) throw data_error("periodicity methods disagree");
  }
  return it;
}

// delta^k v_a - v_b: the pairing of the tagged root against the eigenvector.
inline NFElem pair_root_inner(const EigenData& ed, const PairTag& tag) {
  auto F = ed.field;
  return F->generator_pow(unsigned(tag.k)) * ed.v[kpos(tag.a)] - ed.v[kpos(tag.b)];
}

// Scaled eigenvector in basis order (integer polynomials mod S, one common
// nonzero scale): enough for exact pairing tests at scan scale.
inline std::vector<IPoly> scaled_eigenvector(const BasisIndexer& B, const ScaledEigen& se) {
  CycleData cd(se.tau);
  IPoly dall = IPoly::constant(Int(1));
  for (size_t c = 0; c < cd.cycles.size(); ++c)
    dall = ipoly_mod(
        dall * (IPoly::monomial(unsigned(cd.total[c])) - IPoly::constant(Int(1))), se.S);
  std::vector<IPoly> vb(B.dim());
  IPoly ssum;
  for (const auto& sj : se.s) ssum = ssum + sj;
  vb[0] = ipoly_mod(ssum * dall, se.S);
  for (int p = 0; p < se.tau.size(); ++p)
    for (int k = 1; k <= se.tau.kappa[p]; ++k)
      vb[B.index(kpair(p), k)] =
          ipoly_mod(IPoly::monomial(unsigned(k - 1)) * se.v[p], se.S);
  return vb;
}

inline bool scaled_periodic(const std::vector<IPoly>& vbar, const LorentzVector& alpha,
                            const IPoly& S) {
  IPoly acc = vbar[0] * Int(alpha[0]);
  for (size_t i = 1; i < alpha.coeffs.size(); ++i)
    if (alpha[i] != 0) acc = acc - vbar[i] * Int(alpha[i]);
  return ipoly_mod(acc, S).is_zero();
}

// ------------------------------------------------------------- верdict
struct RealizabilityReport {
  OrbitData tau;
  bool lambda_gt_one = false;
  IPoly salem;  // constant 1 when lambda = 1
  Int ell = 1;
  std::string lambda_decimal = "1";
  bool TR_ok = false;
  bool R_ok = false;
  bool thm3 = false;
  std::vector<int> vanishing_s;             // 1-based j with s_j = 0
  std::vector<PairTag> periodic_pair_tags;  // periodic members of gamma2_bar
  std::vector<PairTag> violating_tags;      // periodic members of gamma2
  std::vector<TotalOrderTuple> orders;
  // Tag-level dependence of the removed subset on the order tuple. Observed
  // only on data violating the orbit-separation condition; the verdict itself
  // never depends on the tuple (asserted below).
  bool tags_order_dependent = false;

  bool realizable() const { return lambda_gt_one && TR_ok && R_ok; }
  std::string reason() const {
    if (!lambda_gt_one) return "lambda <= 1";
    if (!TR_ok) return "tentative realization obstructed: vanishing s entries";
    if (!R_ok) return "periodic roots meet the obstruction set";
    return "realizable";
  }
};

// Full verdict. cross_validate re-runs every periodicity decision through
// the iteration method and checks order-tuple independence.
inline RealizabilityReport check_realizability(const OrbitData& t,
                                               unsigned precision_bits = 256,
                                               bool cross_validate = true) {
  require_valid(t);
  RealizabilityReport rep;
  rep.tau = t;
  rep.thm3 = thm3_conditions(t);

  BasisIndexer B(t);
  auto w = build_w_tau(B);
  auto sf = split_salem(char_poly(w));
  rep.ell = sf.ell;
  rep.salem = sf.S;
  if (!sf.has_salem()) return rep;  // lambda = 1: rejected, not an error
  rep.lambda_gt_one = true;
  if (!sf.pattern_ok) throw data_error("Salem pattern failed: " + sf.pattern_note);
  {
    PrecisionScope ps(precision_bits + 16);
    rep.lambda_decimal = decimal_string(sf.lambda(precision_bits));
  }
  const double log2l = std::log2(std::max(1.01, sf.lambda_bracket->midpoint_real().convert_to<double>()));

  auto ed = solve_s(t, sf.S);
  auto vbar = eigenvector(B, ed);
  WtauAction act(B);

  for (int j = 1; j <= t.n; ++j)
    if (ed.s[j - 1].is_zero()) rep.vanishing_s.push_back(j);
  rep.TR_ok = rep.vanishing_s.empty();

  // Lemma-level consistency: alpha_j^c is periodic iff s_j vanishes.
  if (cross_validate) {
    for (int j = 1; j <= t.n; ++j) {
      bool per = is_periodic(act, c_root(B, j).vec, log2l, sf.ell, &vbar);
      if (per != ed.s[j - 1].is_zero())
        throw data_error("c-root periodicity contradicts the kernel");
    }
  }

  rep.orders = total_orders(t);
  std::set<PairTag> periodic_set;
  for (const auto& tag : admissible_pair_tags(t)) {
    bool per = pair_root_inner(ed, tag).is_zero();
    if (cross_validate && !tag.degenerate()) {
      auto vec = pair_root_vector(B, tag);
      bool per2 = is_periodic(act, *vec, log2l, sf.ell, &vbar);
      if (per2 != per) throw data_error("pair-root periodicity mismatch");
      if (inner_product(*vec, *vec) != -2) throw data_error("root norm violated");
    }
    if (per) {
      periodic_set.insert(tag);
      if (!tag.degenerate()) rep.periodic_pair_tags.push_back(tag);
    }
  }

  auto g2 = gamma2_tags(t, rep.orders.front());
  for (const auto& tag : g2)
    if (periodic_set.count(tag)) rep.violating_tags.push_back(tag);
  rep.R_ok = rep.violating_tags.empty();
  if (cross_validate) {
    for (size_t i = 1; i < rep.orders.size(); ++i) {
      auto g2i = gamma2_tags(t, rep.orders[i]);
      if (g2i != g2) rep.tags_order_dependent = true;
      bool ok = true;
      for (const auto& tag : g2i)
        if (periodic_set.count(tag)) {
          ok = false;
          break;
        }
      if (ok != rep.R_ok) throw data_error("verdict depends on the order tuple");
    }
  }
  return rep;
}

// --------------------------------------------------------------- siblings
// Deletes one column whose kernel entry vanishes; the orbit chains through
// the deleted column accumulate their kappa.
inline OrbitData sibling_shrink(const OrbitData& t, const EigenData& ed) {
  int j = 0;
  for (int c = 1; c <= t.n; ++c)
    if (ed.s[c - 1].is_zero()) {
      j = c;
      break;
    }
  if (j == 0) throw domain_error("sibling_shrink: no vanishing kernel entry");
  if (t.n < 2) throw domain_error("sibling_shrink: nothing left to delete");
  const int nn = t.n - 1;
  auto newcol = [&](int i) { return i > j ? i - 1 : i; };
  OrbitData out;
  out.n = nn;
  out.sigma.assign(3 * nn, IndexPair{1, 1});
  out.kappa.assign(3 * nn, 0);
  for (int i = 1; i <= t.n; ++i) {
    if (i == j) continue;
    for (int iota = 1; iota <= 3; ++iota) {
      IndexPair src{i, iota};
      int acc = t.kap(src);
      IndexPair q = t.sig(src);
      while (q.i == j) {
        acc += t.kap(q);
        q = t.sig(q);
      }
      IndexPair nsrc{newcol(i), iota};
      out.sigma[kpos(nsrc)] = IndexPair{newcol(q.i), q.iota};
      out.kappa[kpos(nsrc)] = acc;
    }
  }
  require_valid(out);
  return out;
}

// Swaps the sigma-targets of the minimal periodic coincidence (or truncates
// a self-coincidence), transferring mu along the proof's bookkeeping.
inline OrbitData sibling_swap(const OrbitData& t, const EigenData& ed,
                              const RealizabilityReport& rep) {
  if (rep.violating_tags.empty()) throw domain_error("sibling_swap: nothing to repair");
  const auto& ord = rep.orders.front();
  // rank within a column under the order tuple
  auto rank = [&](const IndexPair& p) {
    const auto& o = ord.order[p.i - 1];
    for (int r = 0; r < 3; ++r)
      if (o[r] == p.iota) return r;
    return 3;
  };
  PairTag best = rep.violating_tags.front();
  auto key = [&](const PairTag& tg) {
    return std::tuple<int, int, int, int, int, int, int>(
        mu(t, tg.a) - tg.m(t.n), rank(tg.b), rank(t.sig(tg.a)), tg.a.i, tg.a.iota,
        tg.b.i, tg.b.iota);
  };
  for (const auto& tg : rep.violating_tags)
    if (key(tg) < key(best)) best = tg;

  const int mprime = best.m(t.n);
  auto muv = mu_vector(t);
  auto sigma = t.sigma;
  if (!(best.a == best.b)) {
    // exchange targets: check(b) gets sigma(a) and length mu(a) - m',
    // check(a) gets sigma(b) and length mu(b) + m'
    sigma[kpos(best.b)] = t.sig(best.a);
    sigma[kpos(best.a)] = t.sig(best.b);
    muv[kpos(best.b)] = mu(t, best.a) - mprime;
    muv[kpos(best.a)] = mu(t, best.b) + mprime;
  } else {
    if (mprime <= 0) throw domain_error("sibling_swap: degenerate tag");
    if (!ed.v[kpos(best.a)].is_zero())
      throw data_error("self-coincidence requires a vanishing v entry");
    muv[kpos(best.a)] = mu(t, best.a) - mprime;
  }
  return from_mu(t.n, sigma, muv);
}

struct SiblingChain {
  std::vector<OrbitData> chain;  // starts at tau, ends realizable
  RealizabilityReport final_report;
};

// Applies shrink/swap until the verdict is realizable. The Salem factor is
// asserted unchanged at every step.
inline SiblingChain repair_to_realizable(const OrbitData& t, unsigned precision_bits = 256,
                                         int max_steps = 64) {
  SiblingChain sc;
  sc.chain.push_back(t);
  OrbitData cur = t;
  RealizabilityReport rep = check_realizability(cur, precision_bits);
  if (!rep.lambda_gt_one) throw domain_error("repair needs lambda > 1");
  const IPoly S0 = rep.salem;
  for (int step = 0; step < max_steps; ++step) {
    if (rep.realizable()) {
      sc.final_report = rep;
      return sc;
    }
    auto ed = solve_s(cur, rep.salem);
    cur = rep.TR_ok ? sibling_swap(cur, ed, rep) : sibling_shrink(cur, ed);
    rep = check_realizability(cur, precision_bits);
    if (!(rep.salem == S0)) throw data_error("sibling changed the Salem factor");
    sc.chain.push_back(cur);
  }
  throw data_error("sibling repair did not terminate");
}

}  // namespace salem
