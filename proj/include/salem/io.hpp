#pragma once

// JSON serialization of orbit data, reports and catalog entries, plus the
// append-only result cache. All reals are printed as fixed 50-digit decimal
// strings so output is byte-identical across runs.

#include <salem/cubic.hpp>
#include <salem/realizability.hpp>

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace salem {

using json = nlohmann::json;

inline json tau_to_json(const OrbitData& t) {
  json sig = json::array(), kap = json::array();
  for (const auto& im : t.sigma) sig.push_back(json::array({im.i, im.iota}));
  for (int k : t.kappa) kap.push_back(k);
  return json{{"n", t.n}, {"sigma", sig}, {"kappa", kap}};
}

inline OrbitData tau_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("sigma") || !j.contains("kappa"))
    throw data_error("orbit data JSON needs n, sigma, kappa");
  OrbitData t;
  t.n = j.at("n").get<int>();
  if (t.n < 1) throw data_error("n must be positive");
  for (const auto& e : j.at("sigma")) {
    if (!e.is_array() || e.size() != 2) throw data_error("sigma entries are pairs");
    t.sigma.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  for (const auto& e : j.at("kappa")) t.kappa.push_back(e.get<int>());
  if (static_cast<int>(t.sigma.size()) != 3 * t.n ||
      static_cast<int>(t.kappa.size()) != 3 * t.n)
    throw data_error("sigma and kappa must have 3n entries");
  require_valid(t);
  return t;
}

inline json poly_to_json(const IPoly& p) {
  json arr = json::array();
  for (const auto& c : p.c) arr.push_back(c.str());
  return arr;
}

inline json tag_to_json(const PairTag& tg) {
  return json{{"a", {tg.a.i, tg.a.iota}}, {"b", {tg.b.i, tg.b.iota}}, {"k", tg.k}};
}

inline std::string real_str(const Real& x) { return decimal_string(x, 50); }

inline json report_to_json(const RealizabilityReport& rep) {
  json j;
  j["tau"] = tau_to_json(rep.tau);
  j["N"] = rep.tau.total_kappa();
  j["lambda_gt_one"] = rep.lambda_gt_one;
  j["lambda"] = rep.lambda_decimal;
  j["salem"] = poly_to_json(rep.salem);
  j["ell"] = rep.ell.str();
  j["TR_ok"] = rep.TR_ok;
  j["R_ok"] = rep.R_ok;
  j["thm3"] = rep.thm3;
  j["realizable"] = rep.realizable();
  j["reason"] = rep.reason();
  j["vanishing_s"] = rep.vanishing_s;
  json per = json::array(), vio = json::array();
  for (const auto& tg : rep.periodic_pair_tags) per.push_back(tag_to_json(tg));
  for (const auto& tg : rep.violating_tags) vio.push_back(tag_to_json(tg));
  j["periodic_pair_tags"] = per;
  j["violating_tags"] = vio;
  return j;
}

inline json cplx_to_json(const Cplx& z) {
  return json{{"re", real_str(z.re)}, {"im", real_str(z.im)}};
}

inline json realization_to_json(const Realization& r) {
  json maps = json::array();
  for (const auto& f : r.tr.maps) {
    json b = json::array();
    for (const auto& x : f.b) b.push_back(cplx_to_json(x));
    maps.push_back(json{{"d", cplx_to_json(f.d)}, {"b", b}});
  }
  json pts = json::array();
  for (const auto& p : r.points)
    pts.push_back(json{{"t", cplx_to_json(p.t)},
                       {"depth", p.depth},
                       {"r", p.r},
                       {"origin", {p.origin.i, p.origin.iota}},
                       {"m", p.m}});
  json j;
  j["tau"] = tau_to_json(r.tr.tau);
  j["precision_bits"] = r.tr.precision_bits;
  j["lambda"] = real_str(r.tr.lambda);
  j["entropy"] = real_str(r.entropy);
  j["maps"] = maps;
  j["blowup_points"] = pts;
  j["max_residual"] = real_str(r.max_residual);
  j["verified"] = r.geo.passed;
  return j;
}

// --------------------------------------------------------------- catalog
struct CatalogEntry {
  std::string key;  // canonical encoding
  int n = 1;
  int N = 0;
  IPoly salem;
  std::string lambda = "1";
  std::string entropy = "0";
  std::string ell = "1";
  bool realizable = false;
  bool thm3 = false;
  std::vector<std::string> sibling_chain;
  long timing_ms = -1;  // excluded from serialized output unless requested
};

inline json entry_to_json(const CatalogEntry& e, bool with_timing = false) {
  json j;
  j["tau"] = e.key;
  j["n"] = e.n;
  j["N"] = e.N;
  j["salem"] = poly_to_json(e.salem);
  j["lambda"] = e.lambda;
  j["entropy"] = e.entropy;
  j["ell"] = e.ell;
  j["realizable"] = e.realizable;
  j["thm3"] = e.thm3;
  j["sibling_chain"] = e.sibling_chain;
  if (with_timing && e.timing_ms >= 0) j["ms"] = e.timing_ms;
  return j;
}

inline CatalogEntry entry_from_json(const json& j) {
  CatalogEntry e;
  e.key = j.at("tau").get<std::string>();
  e.n = j.at("n").get<int>();
  e.N = j.at("N").get<int>();
  std::vector<Int> coeffs;
  for (const auto& c : j.at("salem")) coeffs.emplace_back(c.get<std::string>());
  e.salem = IPoly(std::move(coeffs));
  e.lambda = j.at("lambda").get<std::string>();
  e.entropy = j.at("entropy").get<std::string>();
  e.ell = j.at("ell").get<std::string>();
  e.realizable = j.at("realizable").get<bool>();
  e.thm3 = j.at("thm3").get<bool>();
  for (const auto& s : j.at("sibling_chain")) e.sibling_chain.push_back(s.get<std::string>());
  return e;
}

// Append-only JSON-lines store with a versioned header; corrupt rows are
// skipped with a warning, never misparsed.
class CacheStore {
 public:
  explicit CacheStore(std::string path) : path_(std::move(path)) { load(); }

  static std::string default_path() {
    if (const char* env = std::getenv("SALEM_FORGE_CACHE")) return env;
    return ".salem-cache";
  }

  std::optional<CatalogEntry> find(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void append(const CatalogEntry& e) {
    entries_[e.key] = e;
    std::ofstream out(path_, std::ios::app);
    if (!fresh_) {
      out << R"({"version":1})" << "\n";
      fresh_ = true;
    }
    out << entry_to_json(e).dump() << "\n";
  }

  size_t size() const { return entries_.size(); }

 private:
  void load() {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (first) {
        first = false;
        fresh_ = true;
        try {
          auto h = json::parse(line);
          if (h.value("version", 0) != 1)
            std::cerr << "cache: unknown header version, reading anyway\n";
          continue;
        } catch (...) {
          std::cerr << "cache: missing header line, reading anyway\n";
        }
      }
      try {
        auto e = entry_from_json(json::parse(line));
        entries_[e.key] = e;
      } catch (...) {
        std::cerr << "cache: skipping corrupt row\n";
      }
    }
  }

  std::string path_;
  std::map<std::string, CatalogEntry> entries_;
  bool fresh_ = false;
};

// ------------------------------------------------------------ Weyl words
// Text format: a header line "N=5" followed by whitespace-separated
// generator indices.
inline WeylWord parse_word(std::istream& in) {
  WeylWord w;
  std::string head;
  if (!(in >> head) || head.rfind("N=", 0) != 0)
    throw data_error("word file must start with N=<dim>");
  w.N = std::stoi(head.substr(2));
  if (w.N < 3) throw data_error("word needs N >= 3");
  int g;
  while (in >> g) {
    if (g < 0 || g >= w.N) throw data_error("generator index out of range");
    w.gens.push_back(g);
  }
  return w;
}

}  // namespace salem
