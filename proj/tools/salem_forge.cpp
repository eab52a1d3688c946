// salem-forge: orbit data in, spectral data and realizations out.
//
// Subcommands
//   spectrum   Salem factor, spectral radius and entropy of the lattice map
//   check      realizability verdict with witnesses
//   realize    synthesize and verify the maps on the cuspidal cubic
//   word2data  express an arbitrary Weyl word as orbit data
//   enumerate  stream a catalog of orbit data with cached results

#include <salem/io.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace salem;

namespace {

struct CommonOpts {
  std::string input;
  std::string inline_tau;
  unsigned precision = 256;
  std::string tol;
  std::string format = "json";
};

OrbitData load_tau(const CommonOpts& opt) {
  json j;
  if (!opt.inline_tau.empty()) {
    j = json::parse(opt.inline_tau);
  } else if (!opt.input.empty()) {
    std::ifstream in(opt.input);
    if (!in) throw data_error("cannot open input file: " + opt.input);
    in >> j;
  } else {
    std::cin >> j;
  }
  return tau_from_json(j);
}

int tol_digits_of(const std::string& tol) {
  if (tol.empty()) return 0;
  auto pos = tol.find_first_of("eE");  // accepts 1e-30
  if (pos == std::string::npos) throw data_error("tolerance must look like 1e-30");
  int exp = std::stoi(tol.substr(pos + 1));
  if (exp >= 0) throw data_error("tolerance must be below 1");
  return -exp;
}

void add_common(CLI::App* cmd, CommonOpts& opt, bool with_format = true) {
  cmd->add_option("--input", opt.input, "orbit data JSON file (default: stdin)");
  cmd->add_option("--tau", opt.inline_tau, "inline orbit data JSON");
  cmd->add_option("--precision", opt.precision, "working precision in bits")
      ->default_val(256);
  cmd->add_option("--tol", opt.tol, "coincidence tolerance, e.g. 1e-30");
  if (with_format)
    cmd->add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->default_val("json");
}

int cmd_spectrum(const CommonOpts& opt) {
  auto t = load_tau(opt);
  BasisIndexer B(t);
  auto sf = split_salem(char_poly(build_w_tau(B)));
  PrecisionScope ps(opt.precision + 16);
  std::string lambda = "1", entropy = "0";
  if (sf.has_salem()) {
    Real lam = sf.lambda(opt.precision);
    lambda = real_str(lam);
    entropy = real_str(log(lam));
  }
  if (opt.format == "csv") {
    std::cout << "N,lambda,entropy,ell\n"
              << t.total_kappa() << "," << lambda << "," << entropy << ","
              << sf.ell.str() << "\n";
  } else {
    json j;
    j["tau"] = tau_to_json(t);
    j["N"] = t.total_kappa();
    j["salem"] = poly_to_json(sf.S);
    j["cyclotomic_part"] = poly_to_json(sf.R);
    j["lambda"] = lambda;
    j["entropy"] = entropy;
    j["ell"] = sf.ell.str();
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_check(const CommonOpts& opt) {
  auto t = load_tau(opt);
  auto rep = check_realizability(t, opt.precision);
  std::cout << report_to_json(rep).dump(2) << "\n";
  return rep.realizable() ? 0 : 1;
}

int cmd_realize(const CommonOpts& opt, bool sibling) {
  auto t = load_tau(opt);
  auto rep = check_realizability(t, opt.precision);
  json out;
  if (!rep.realizable()) {
    if (!sibling || !rep.lambda_gt_one) {
      out["realizable"] = false;
      out["reason"] = rep.reason();
      out["report"] = report_to_json(rep);
      std::cout << out.dump(2) << "\n";
      return 1;
    }
    auto chain = repair_to_realizable(t, opt.precision);
    json enc = json::array();
    for (const auto& step : chain.chain) enc.push_back(encode(step));
    out["sibling_chain"] = enc;
    t = chain.chain.back();
    rep = chain.final_report;
  }
  BasisIndexer B(t);
  auto sf = split_salem(char_poly(build_w_tau(B)));
  auto ed = solve_s(t, sf.S);
  auto real = realize(t, ed, sf, opt.precision);
  real.tr.tol_digits = tol_digits_of(opt.tol);
  out["realization"] = realization_to_json(real);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_word2data(const CommonOpts& opt, bool verify) {
  WeylWord w;
  if (!opt.input.empty()) {
    std::ifstream in(opt.input);
    if (!in) throw data_error("cannot open input file: " + opt.input);
    w = parse_word(in);
  } else {
    w = parse_word(std::cin);
  }
  auto conv = word_to_orbit_data(w);
  json j;
  j["N"] = w.N;
  j["tau"] = tau_to_json(conv.tau);
  j["key"] = encode(conv.tau);
  j["relabel"] = conv.relabel;
  if (verify) {
    bool ok = conjugated_w_tau(conv) == word_matrix(w);
    j["verified"] = ok;
    if (!ok) throw data_error("round-trip verification failed");
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_enumerate(const CommonOpts& opt, int n, int kappa_max, bool thm3_only,
                  bool sibling, long limit) {
  CacheStore cache(CacheStore::default_path());
  EnumFilter filter;
  filter.thm3_only = thm3_only;
  filter.kappa_min = thm3_only ? 3 : 0;

  struct Range {
    Real lo, hi;
    bool any = false;
  } range;
  long emitted = 0;
  PrecisionScope ps(opt.precision + 16);

  enumerate_orbit_data(n, kappa_max, filter, [&](const OrbitData& t) {
    std::string key = encode(t);
    CatalogEntry entry;
    if (auto hit = cache.find(key)) {
      entry = *hit;
    } else {
      auto start = std::chrono::steady_clock::now();
      entry.key = key;
      entry.n = t.n;
      entry.N = t.total_kappa();
      entry.thm3 = thm3_conditions(t);
      auto rep = check_realizability(t, opt.precision, /*cross_validate=*/false);
      entry.salem = rep.salem;
      entry.lambda = rep.lambda_decimal;
      entry.ell = rep.ell.str();
      entry.realizable = rep.realizable();
      if (rep.lambda_gt_one) {
        Real lam{rep.lambda_decimal};
        entry.entropy = real_str(log(lam));
      }
      if (sibling && rep.lambda_gt_one && !rep.realizable()) {
        auto chain = repair_to_realizable(t, opt.precision);
        for (const auto& step : chain.chain)
          entry.sibling_chain.push_back(encode(step));
      }
      entry.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
      cache.append(entry);
    }
    if (opt.format == "csv") {
      std::cout << entry.key << ";" << entry.N << ";" << entry.lambda << ";"
                << entry.entropy << ";" << entry.ell << ";" << entry.realizable
                << ";" << entry.thm3 << "\n";
    } else {
      std::cout << entry_to_json(entry).dump() << "\n";
    }
    if (entry.thm3 && entry.lambda != "1") {
      Real lam{entry.lambda};
      if (!range.any) {
        range.lo = lam;
        range.hi = lam;
        range.any = true;
      } else {
        if (lam < range.lo) range.lo = lam;
        if (lam > range.hi) range.hi = lam;
      }
    }
    ++emitted;
    return limit == 0 || emitted < limit;
  });
  if (range.any) {
    Real lo_bound = pow(Real(2), n) - 1, hi_bound = pow(Real(2), n);
    std::cerr << "summary: " << emitted
              << " data; lambda range of the qualifying set ["
              << decimal_string(range.lo, 12) << ", " << decimal_string(range.hi, 12)
              << "] inside (" << decimal_string(lo_bound, 6) << ", "
              << decimal_string(hi_bound, 6) << "): "
              << (range.lo > lo_bound && range.hi < hi_bound ? "yes" : "NO") << "\n";
  } else {
    std::cerr << "summary: " << emitted << " data\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbit data -> Weyl spectra -> cuspidal-cubic realizations"};
  app.require_subcommand(1);

  CommonOpts opt;
  bool sibling = false, verify = false, thm3_only = false;
  int en_n = 2, en_kmax = 3;
  long limit = 0;

  auto* sp = app.add_subcommand("spectrum", "Salem factor, lambda, entropy, period");
  add_common(sp, opt);
  auto* ck = app.add_subcommand("check", "realizability verdict");
  add_common(ck, opt);
  auto* re = app.add_subcommand("realize", "synthesize and verify the quadratic maps");
  add_common(re, opt);
  re->add_flag("--sibling", sibling, "repair failing data through sibling moves");
  auto* wd = app.add_subcommand("word2data", "orbit data for an arbitrary Weyl word");
  add_common(wd, opt, false);
  wd->add_flag("--verify", verify, "re-check the matrix identity");
  auto* en = app.add_subcommand("enumerate", "stream a catalog with caching");
  add_common(en, opt);
  en->add_option("--n", en_n, "number of quadratic maps")->required();
  en->add_option("--kappa-max", en_kmax, "entrywise kappa bound")->required();
  en->add_flag("--thm3-only", thm3_only,
               "keep only data meeting the entropy-bound conditions");
  en->add_flag("--sibling", sibling, "attach repair chains for failing data");
  en->add_option("--limit", limit, "stop after this many entries (0 = no limit)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sp->parsed()) return cmd_spectrum(opt);
    if (ck->parsed()) return cmd_check(opt);
    if (re->parsed()) return cmd_realize(opt, sibling);
    if (wd->parsed()) return cmd_word2data(opt, verify);
    if (en->parsed())
      return cmd_enumerate(opt, en_n, en_kmax, thm3_only, sibling, limit);
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const data_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
