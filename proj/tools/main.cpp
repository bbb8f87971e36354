// botoc command-line driver: config-driven runs of the correlator toolkit,
// serialized as JSON (canonical) or CSV (flattened view).

#include <botoc.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using ordered_json = nlohmann::ordered_json;

namespace {

// exit codes: 0 success, 1 validation problem, 2 numerical failure
struct CliError {
  int exit_code;
  std::string message;
};

int exit_code_for(botoc_status st) {
  return (st == BOTOC_ERR_NUMERICAL || st == BOTOC_ERR_INTERNAL) ? 2 : 1;
}

void check(botoc_status st, const std::string& context) {
  if (st != BOTOC_OK) {
    throw CliError{exit_code_for(st), context + ": " + botoc_last_error()};
  }
}

struct MatHandle {
  botoc_matrix* m = nullptr;
  MatHandle() = default;
  explicit MatHandle(botoc_matrix* p) : m(p) {}
  MatHandle(const MatHandle&) = delete;
  MatHandle& operator=(const MatHandle&) = delete;
  MatHandle(MatHandle&& o) noexcept : m(o.m) { o.m = nullptr; }
  MatHandle& operator=(MatHandle&& o) noexcept {
    if (this != &o) {
      botoc_matrix_free(m);
      m = o.m;
      o.m = nullptr;
    }
    return *this;
  }
  ~MatHandle() { botoc_matrix_free(m); }
};

struct SpecHandle {
  botoc_spectral* s = nullptr;
  ~SpecHandle() { botoc_spectral_free(s); }
};

struct ChanHandle {
  botoc_channel* c = nullptr;
  ~ChanHandle() { botoc_channel_free(c); }
};

struct TimesSpec {
  bool given = false;
  bool explicit_list = false;
  std::vector<double> list;
  double t_min = 0.0;
  double t_max = 20.0;
  int n_points = 201;
};

struct RunConfig {
  std::string command;
  // model
  std::string model_kind = "tfim";
  int n_sites = 0;
  std::map<std::string, double> params;
  std::string custom_path;
  // cut
  int d_a = 0;       // 0 = unset
  int n_sites_a = 0; // 0 = unset
  TimesSpec times;
  // ensemble
  std::string ensemble = "haar-local";
  int ens_sites_a = 0;
  int ens_sites_b = 0;
  std::uint64_t n_samples = 10000;
  std::uint64_t seed = 0;
  // tolerances (0 = library default for the spectral pair)
  double tol_level = 0.0;
  double tol_gap = 0.0;
  double eq_tol = 1e-8;
  // output
  std::string out_path;
  std::string format = "json";
};

[[noreturn]] void bad_config(const std::string& msg) {
  throw CliError{1, "config: " + msg};
}

void require_keys(const ordered_json& j, const char* where,
                  std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) bad_config(std::string("unknown key '") + it.key() + "' in " + where);
  }
}

template <typename T>
T field_or(const ordered_json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const std::exception& e) {
    bad_config(std::string("bad value for '") + key + "': " + e.what());
  }
}

void parse_times(const ordered_json& j, TimesSpec* out) {
  out->given = true;
  if (j.is_array()) {
    out->explicit_list = true;
    out->list = j.get<std::vector<double>>();
    if (out->list.empty()) bad_config("times list is empty");
    for (size_t k = 1; k < out->list.size(); ++k) {
      if (!(out->list[k] > out->list[k - 1])) {
        bad_config("times list must be strictly increasing");
      }
    }
    return;
  }
  if (!j.is_object()) bad_config("times must be a list or a grid object");
  require_keys(j, "times", {"t_min", "t_max", "n_points"});
  out->t_min = field_or(j, "t_min", 0.0);
  out->t_max = field_or(j, "t_max", 20.0);
  out->n_points = field_or(j, "n_points", 201);
  if (out->n_points < 1) bad_config("n_points must be at least 1");
  if (out->n_points > 1 && !(out->t_max > out->t_min)) {
    bad_config("t_max must exceed t_min");
  }
}

RunConfig load_config(const std::string& path) {
  RunConfig cfg;
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw CliError{1, "cannot open config file " + path};
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw CliError{1, std::string("config: ") + e.what()};
  }
  if (!j.is_object()) bad_config("top level must be an object");
  require_keys(j, "config", {"command", "model", "cut", "times", "ensemble",
                             "n_samples", "seed", "tolerances", "output"});
  cfg.command = field_or<std::string>(j, "command", "");
  if (j.contains("model")) {
    const auto& m = j.at("model");
    require_keys(m, "model", {"kind", "n_sites", "params", "custom_path"});
    cfg.model_kind = field_or<std::string>(m, "kind", "tfim");
    cfg.n_sites = field_or(m, "n_sites", 0);
    cfg.custom_path = field_or<std::string>(m, "custom_path", "");
    if (m.contains("params")) {
      for (auto it = m.at("params").begin(); it != m.at("params").end(); ++it) {
        if (!it.value().is_number()) bad_config("model params must be numbers");
        cfg.params[it.key()] = it.value().get<double>();
      }
    }
  }
  if (j.contains("cut")) {
    const auto& c = j.at("cut");
    require_keys(c, "cut", {"d_a", "n_sites_a"});
    cfg.d_a = field_or(c, "d_a", 0);
    cfg.n_sites_a = field_or(c, "n_sites_a", 0);
    if (cfg.d_a != 0 && cfg.n_sites_a != 0) {
      bad_config("give the cut as d_a or n_sites_a, not both");
    }
  }
  if (j.contains("times")) parse_times(j.at("times"), &cfg.times);
  if (j.contains("ensemble")) {
    const auto& e = j.at("ensemble");
    require_keys(e, "ensemble", {"kind", "n_sites_a", "n_sites_b"});
    cfg.ensemble = field_or<std::string>(e, "kind", "haar-local");
    cfg.ens_sites_a = field_or(e, "n_sites_a", 0);
    cfg.ens_sites_b = field_or(e, "n_sites_b", 0);
  }
  cfg.n_samples = field_or<std::uint64_t>(j, "n_samples", 10000);
  cfg.seed = field_or<std::uint64_t>(j, "seed", 0);
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    require_keys(t, "tolerances", {"tol_level", "tol_gap", "eq_tol"});
    cfg.tol_level = field_or(t, "tol_level", 0.0);
    cfg.tol_gap = field_or(t, "tol_gap", 0.0);
    cfg.eq_tol = field_or(t, "eq_tol", 1e-8);
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    require_keys(o, "output", {"path", "format"});
    cfg.out_path = field_or<std::string>(o, "path", "");
    cfg.format = field_or<std::string>(o, "format", "json");
  }
  return cfg;
}

ordered_json echo_config(const RunConfig& cfg) {
  ordered_json j;
  j["command"] = cfg.command;
  ordered_json model;
  model["kind"] = cfg.model_kind;
  model["n_sites"] = cfg.n_sites;
  model["params"] = ordered_json::object();
  for (const auto& [k, v] : cfg.params) model["params"][k] = v;
  if (!cfg.custom_path.empty()) model["custom_path"] = cfg.custom_path;
  j["model"] = model;
  ordered_json cut;
  if (cfg.n_sites_a != 0) {
    cut["n_sites_a"] = cfg.n_sites_a;
  } else {
    cut["d_a"] = cfg.d_a == 0 ? 2 : cfg.d_a;
  }
  j["cut"] = cut;
  if (cfg.times.explicit_list) {
    j["times"] = cfg.times.list;
  } else {
    j["times"] = {{"t_min", cfg.times.t_min},
                  {"t_max", cfg.times.t_max},
                  {"n_points", cfg.times.n_points}};
  }
  j["ensemble"] = {{"kind", cfg.ensemble},
                   {"n_sites_a", cfg.ens_sites_a},
                   {"n_sites_b", cfg.ens_sites_b}};
  j["n_samples"] = cfg.n_samples;
  j["seed"] = cfg.seed;
  j["tolerances"] = {{"tol_level", cfg.tol_level},
                     {"tol_gap", cfg.tol_gap},
                     {"eq_tol", cfg.eq_tol}};
  j["output"] = {{"path", cfg.out_path}, {"format", cfg.format}};
  return j;
}

// ---- model assembly -------------------------------------------------------

MatHandle build_model(const RunConfig& cfg) {
  MatHandle h;
  if (cfg.model_kind == "custom") {
    if (cfg.custom_path.empty()) bad_config("custom model needs custom_path");
    check(botoc_matrix_load(cfg.custom_path.c_str(), &h.m), "loading model");
    return h;
  }
  std::vector<const char*> names;
  std::vector<double> values;
  names.reserve(cfg.params.size());
  for (const auto& [k, v] : cfg.params) {
    names.push_back(k.c_str());
    values.push_back(v);
  }
  check(botoc_hamiltonian(cfg.model_kind.c_str(), cfg.n_sites, names.data(),
                          values.data(), static_cast<int>(names.size()), &h.m),
        "building the model");
  return h;
}

int resolve_d_a(const RunConfig& cfg, int d) {
  int da = cfg.d_a;
  if (cfg.n_sites_a > 0) {
    if (cfg.n_sites_a > 30) bad_config("n_sites_a out of range");
    da = 1 << cfg.n_sites_a;
  }
  if (da == 0) da = 2;
  if (da < 1 || d % da != 0) {
    bad_config("cut " + std::to_string(da) + " does not divide dimension " +
               std::to_string(d));
  }
  return da;
}

std::vector<double> resolve_times(const RunConfig& cfg) {
  if (cfg.times.explicit_list) return cfg.times.list;
  std::vector<double> ts(static_cast<size_t>(cfg.times.n_points));
  if (cfg.times.n_points == 1) {
    ts[0] = cfg.times.t_min;
    return ts;
  }
  const double step =
      (cfg.times.t_max - cfg.times.t_min) / (cfg.times.n_points - 1);
  for (int k = 0; k < cfg.times.n_points; ++k) {
    ts[static_cast<size_t>(k)] = cfg.times.t_min + step * k;
  }
  return ts;
}

double resolve_single_time(const RunConfig& cfg) {
  if (!cfg.times.given) return 1.0;
  const std::vector<double> ts = resolve_times(cfg);
  if (ts.size() != 1) {
    bad_config("this command evaluates one time; give a single-entry list or "
               "n_points = 1");
  }
  return ts[0];
}

int log2_exact(int d) {
  int k = 0;
  while ((1 << k) < d && k < 30) ++k;
  return (1 << k) == d ? k : -1;
}

int ensemble_enum(const std::string& kind) {
  if (kind == "haar-local") return BOTOC_ENSEMBLE_HAAR_LOCAL;
  if (kind == "pauli-factorized") return BOTOC_ENSEMBLE_PAULI_FACTORIZED;
  if (kind == "haar-global") return BOTOC_ENSEMBLE_HAAR_GLOBAL;
  bad_config("unknown ensemble kind '" + kind + "'");
}

const std::vector<double> kEpsilonGrid{0.25, 0.5, 1.0};

// ---- command payloads ------------------------------------------------------

ordered_json run_otoc_curve(const RunConfig& cfg, int threads) {
  (void)threads;
  const MatHandle h = build_model(cfg);
  SpecHandle spec;
  check(botoc_spectral_create(h.m, cfg.tol_level, cfg.tol_gap, &spec.s),
        "diagonalizing the model");
  const int d = botoc_spectral_dim(spec.s);
  const int da = resolve_d_a(cfg, d);
  const int db = d / da;
  ordered_json payload;
  payload["d_a"] = da;
  payload["d_b"] = db;
  payload["columns"] = {"t", "g"};
  ordered_json rows = ordered_json::array();
  for (double t : resolve_times(cfg)) {
    MatHandle u;
    check(botoc_spectral_evolution(spec.s, t, &u.m), "building the evolution");
    double g = 0.0;
    check(botoc_g_exact(u.m, da, db, BOTOC_SIDE_AUTO, &g),
          "evaluating the correlator");
    rows.push_back({t, g});
  }
  payload["rows"] = rows;
  return payload;
}

ordered_json hierarchy_block(botoc_spectral* s, int da, int db) {
  double vals[4] = {0, 0, 0, 0};
  int ok = 0;
  check(botoc_hierarchy(s, da, db, vals, &ok), "evaluating the estimates");
  ordered_json j;
  j["haar"] = vals[0];
  j["nrc"] = vals[1];
  j["nrc_plus"] = vals[2];
  j["exact"] = vals[3];
  j["hierarchy_ok"] = ok == 1;
  return j;
}

ordered_json run_estimates(const RunConfig& cfg, int threads) {
  (void)threads;
  const MatHandle h = build_model(cfg);
  SpecHandle spec;
  check(botoc_spectral_create(h.m, cfg.tol_level, cfg.tol_gap, &spec.s),
        "diagonalizing the model");
  const int d = botoc_spectral_dim(spec.s);
  const int da = resolve_d_a(cfg, d);
  const int db = d / da;

  ordered_json payload;
  payload["model"] = cfg.model_kind;
  payload["n_sites"] = cfg.n_sites;
  payload["d_a"] = da;
  payload["d_b"] = db;
  const ordered_json hier = hierarchy_block(spec.s, da, db);
  for (auto it = hier.begin(); it != hier.end(); ++it) {
    payload[it.key()] = it.value();
  }
  double asym = 0.0;
  check(botoc_haar_estimate_asymptote(da, &asym), "asymptote");
  payload["haar_asymptote"] = asym;

  int nrc = 0, nrc_plus = 0, n_level = 0, n_gap = 0;
  check(botoc_spectral_nrc_flags(spec.s, &nrc, &nrc_plus, &n_level, &n_gap),
        "degeneracy flags");
  payload["flags"] = {{"nrc", nrc == 1},
                      {"nrc_plus", nrc_plus == 1},
                      {"n_level_classes", n_level},
                      {"n_gap_classes", n_gap}};

  // entanglement-profile bound at fixed deficit percentiles
  std::vector<double> profile(static_cast<size_t>(d));
  check(botoc_entanglement_profile(spec.s, da, db, profile.data()),
        "entanglement profile");
  const double e_max = 1.0 - 1.0 / std::max(da, db);
  std::vector<double> deficit(profile.size());
  for (size_t k = 0; k < profile.size(); ++k) deficit[k] = e_max - profile[k];
  std::sort(deficit.begin(), deficit.end());
  const double nrc_value = hier["nrc"].get<double>();
  ordered_json bounds = ordered_json::array();
  for (int pct : {50, 90, 99}) {
    size_t idx = static_cast<size_t>(
        std::ceil(pct / 100.0 * static_cast<double>(deficit.size())));
    idx = std::min(deficit.size() - 1, idx == 0 ? 0 : idx - 1);
    const double eps = std::max(0.0, deficit[idx]);
    double alpha = 0, jt = 0, kt = 0, bound = 0, dev = 0;
    check(botoc_profile_bound(profile.data(), d, da, db, eps, &nrc_value,
                              &alpha, &jt, &kt, &bound, &dev),
          "profile bound");
    bounds.push_back({{"percentile", pct},
                      {"epsilon", eps},
                      {"alpha", alpha},
                      {"j_term", jt},
                      {"k_term", kt},
                      {"bound", bound},
                      {"nrc_deviation", dev}});
  }
  payload["profile_bound"] = bounds;
  return payload;
}

ordered_json stats_block(const botoc_sample_stats& st,
                         const std::vector<std::uint64_t>& counts) {
  ordered_json j;
  j["n_samples"] = st.n_samples;
  j["mean"] = st.mean;
  j["variance"] = st.variance;
  j["reference"] = st.reference;
  j["histogram"] = {{"lo", 0.0}, {"hi", 2.0}, {"counts", counts}};
  return j;
}

ordered_json run_sample(const RunConfig& cfg, int threads) {
  const MatHandle h = build_model(cfg);
  SpecHandle spec;
  check(botoc_spectral_create(h.m, cfg.tol_level, cfg.tol_gap, &spec.s),
        "diagonalizing the model");
  const int d = botoc_spectral_dim(spec.s);
  const int da = resolve_d_a(cfg, d);
  const int db = d / da;
  const double t = resolve_single_time(cfg);
  MatHandle u;
  check(botoc_spectral_evolution(spec.s, t, &u.m), "building the evolution");

  const int kind = ensemble_enum(cfg.ensemble);
  int sa = cfg.ens_sites_a, sb = cfg.ens_sites_b;
  if (kind == BOTOC_ENSEMBLE_PAULI_FACTORIZED && sa == 0 && sb == 0) {
    sa = log2_exact(da);
    sb = log2_exact(db);
    if (sa < 0 || sb < 0) {
      bad_config("factorized ensemble needs power-of-two factors");
    }
  }

  botoc_sample_stats st{};
  std::vector<std::uint64_t> counts(BOTOC_HISTOGRAM_BINS, 0);
  check(botoc_sample_otoc(u.m, kind, da, db, sa, sb, cfg.n_samples, cfg.seed,
                          0, threads, &st, counts.data()),
        "sampling");
  ordered_json payload;
  payload["ensemble"] = cfg.ensemble;
  payload["t"] = t;
  payload["d_a"] = da;
  payload["d_b"] = db;
  payload["seed"] = cfg.seed;
  const ordered_json stats = stats_block(st, counts);
  for (auto it = stats.begin(); it != stats.end(); ++it) {
    payload[it.key()] = it.value();
  }
  if (kind == BOTOC_ENSEMBLE_HAAR_LOCAL) {
    std::vector<double> emp(kEpsilonGrid.size()), bnd(kEpsilonGrid.size());
    check(botoc_concentration(u.m, BOTOC_CONCENTRATION_OTOC, da, db,
                              cfg.n_samples, kEpsilonGrid.data(),
                              static_cast<int>(kEpsilonGrid.size()), cfg.seed,
                              0, threads, emp.data(), bnd.data()),
          "concentration");
    ordered_json rows = ordered_json::array();
    for (size_t k = 0; k < kEpsilonGrid.size(); ++k) {
      rows.push_back({{"epsilon", kEpsilonGrid[k]},
                      {"empirical_p", emp[k]},
                      {"bound", bnd[k]},
                      {"vacuous", bnd[k] > 1.0}});
    }
    payload["concentration"] = rows;
  }
  return payload;
}

ordered_json run_entropy(const RunConfig& cfg, int threads) {
  const MatHandle h = build_model(cfg);
  SpecHandle spec;
  check(botoc_spectral_create(h.m, cfg.tol_level, cfg.tol_gap, &spec.s),
        "diagonalizing the model");
  const int d = botoc_spectral_dim(spec.s);
  const int da = resolve_d_a(cfg, d);
  const int db = d / da;
  const double t = resolve_single_time(cfg);
  MatHandle u;
  check(botoc_spectral_evolution(spec.s, t, &u.m), "building the evolution");
  const int keep = da <= db ? BOTOC_FACTOR_A : BOTOC_FACTOR_B;
  botoc_sample_stats st{};
  std::vector<std::uint64_t> counts(BOTOC_HISTOGRAM_BINS, 0);
  check(botoc_entropy_production(u.m, da, db, keep, cfg.n_samples, cfg.seed, 0,
                                 threads, &st, counts.data()),
        "sampling entropies");
  ordered_json payload;
  payload["t"] = t;
  payload["d_a"] = da;
  payload["d_b"] = db;
  payload["keep"] = keep == BOTOC_FACTOR_A ? "A" : "B";
  payload["seed"] = cfg.seed;
  const ordered_json stats = stats_block(st, counts);
  for (auto it = stats.begin(); it != stats.end(); ++it) {
    payload[it.key()] = it.value();
  }
  return payload;
}

ordered_json run_channel(const RunConfig& cfg, int threads) {
  (void)threads;
  const MatHandle h = build_model(cfg);
  SpecHandle spec;
  check(botoc_spectral_create(h.m, cfg.tol_level, cfg.tol_gap, &spec.s),
        "diagonalizing the model");
  const int d = botoc_spectral_dim(spec.s);
  const int da = resolve_d_a(cfg, d);
  const int db = d / da;
  const double t = resolve_single_time(cfg);
  MatHandle u;
  check(botoc_spectral_evolution(spec.s, t, &u.m), "building the evolution");
  const int keep = da <= db ? BOTOC_FACTOR_A : BOTOC_FACTOR_B;

  double g = 0, g_max = 0, dist = 0;
  check(botoc_choi_distance_check(u.m, da, db, keep, &g, &g_max, &dist),
        "choi distance");
  ChanHandle ch;
  check(botoc_channel_create(u.m, da, db, keep, &ch.c), "reducing the channel");
  const botoc_status cert = botoc_channel_certify(ch.c, 0.0);
  if (cert != BOTOC_OK && cert != BOTOC_ERR_NUMERICAL) {
    check(cert, "certifying the channel");
  }
  double lo = 0, hi = 0;
  check(botoc_diamond_bounds(u.m, da, db, keep, &lo, &hi), "diamond bounds");

  double haar = 0, exact = 0;
  check(botoc_haar_estimate(da, db, &haar), "haar estimate");
  check(botoc_exact_time_average(spec.s, da, db, &exact), "exact average");

  ordered_json payload;
  payload["t"] = t;
  payload["d_a"] = da;
  payload["d_b"] = db;
  payload["keep"] = keep == BOTOC_FACTOR_A ? "A" : "B";
  payload["g"] = g;
  payload["g_max"] = g_max;
  payload["choi_distance_sq"] = dist;
  const double residual = std::abs((g_max - g) - dist);
  payload["identity_residual"] = residual;
  payload["identity_ok"] = residual <= cfg.eq_tol;
  payload["certified"] = cert == BOTOC_OK;
  payload["diamond_lower"] = lo;
  payload["diamond_upper"] = hi;
  payload["haar_average"] = haar;
  payload["exact_average"] = exact;
  // empirical fraction of a finite window where even the lower diamond
  // witness sqrt(g_max - g(t)) clears epsilon; small systems only
  std::vector<double> witness_frac(kEpsilonGrid.size(), -1.0);
  const bool with_empirical = d <= 64;
  if (with_empirical) {
    const double window = 100.0;
    const int n_grid = 201;
    std::fill(witness_frac.begin(), witness_frac.end(), 0.0);
    for (int k = 0; k < n_grid; ++k) {
      MatHandle ut;
      check(botoc_spectral_evolution(spec.s, window * k / (n_grid - 1), &ut.m),
            "building the evolution");
      double gt = 0.0;
      check(botoc_g_exact(ut.m, da, db, BOTOC_SIDE_AUTO, &gt),
            "evaluating the correlator");
      const double witness = std::sqrt(std::max(0.0, g_max - gt));
      for (size_t e = 0; e < kEpsilonGrid.size(); ++e) {
        if (witness >= kEpsilonGrid[e]) witness_frac[e] += 1.0;
      }
    }
    for (double& f : witness_frac) f /= n_grid;
  }

  ordered_json markov = ordered_json::array();
  for (size_t e = 0; e < kEpsilonGrid.size(); ++e) {
    double frac = 0.0;
    check(botoc_markov_fraction_bound(haar, exact, da, db, keep,
                                      kEpsilonGrid[e], &frac),
          "markov bound");
    ordered_json row = {{"epsilon", kEpsilonGrid[e]},
                        {"bound", frac},
                        {"vacuous", frac > 1.0}};
    if (with_empirical) row["empirical_fraction"] = witness_frac[e];
    markov.push_back(row);
  }
  payload["markov"] = markov;
  return payload;
}

ordered_json run_figure1(const RunConfig& cfg, int threads) {
  (void)threads;
  struct Variant {
    const char* tag;
    const char* kind;
    std::vector<std::pair<const char*, double>> params;
  };
  const std::vector<Variant> variants{
      {"tfim-chaotic", "tfim", {{"g", -1.05}, {"h", 0.5}}},
      {"tfim-integrable", "tfim", {{"g", -1.05}, {"h", 0.0}}},
      {"xxz", "xxz", {{"J", 0.4}, {"delta", 2.5}}},
  };
  std::vector<int> ns{4, 6, 8};
  if (cfg.n_sites > 0) ns = {cfg.n_sites};
  const int da = cfg.d_a == 0 && cfg.n_sites_a == 0
                     ? 2
                     : resolve_d_a(cfg, 1 << (ns.front()));

  ordered_json payload;
  payload["d_a"] = da;
  payload["columns"] = {"model", "n", "estimator", "value"};
  ordered_json rows = ordered_json::array();
  ordered_json checks = ordered_json::array();
  for (const Variant& v : variants) {
    for (int n : ns) {
      std::vector<const char*> names;
      std::vector<double> values;
      for (const auto& [k, x] : v.params) {
        names.push_back(k);
        values.push_back(x);
      }
      const std::string where =
          std::string(v.tag) + " at n=" + std::to_string(n);
      MatHandle h;
      check(botoc_hamiltonian(v.kind, n, names.data(), values.data(),
                              static_cast<int>(names.size()), &h.m),
            "building " + where);
      SpecHandle spec;
      check(botoc_spectral_create(h.m, cfg.tol_level, cfg.tol_gap, &spec.s),
            "diagonalizing " + where);
      const int d = botoc_spectral_dim(spec.s);
      if (d % da != 0) bad_config("cut does not divide the chain dimension");
      const ordered_json hier = hierarchy_block(spec.s, da, d / da);
      for (const char* est : {"haar", "nrc", "nrc_plus", "exact"}) {
        rows.push_back({v.tag, n, est, hier[est].get<double>()});
      }
      checks.push_back(
          {{"model", v.tag}, {"n", n}, {"ok", hier["hierarchy_ok"]}});
    }
  }
  double asym = 0.0;
  check(botoc_haar_estimate_asymptote(da, &asym), "asymptote");
  rows.push_back({"haar", 0, "asymptote", asym});
  payload["rows"] = rows;
  payload["hierarchy_ok"] = checks;
  return payload;
}

// ---- serialization ---------------------------------------------------------

std::string fmt_number(const ordered_json& v) {
  char buf[64];
  if (v.is_number_integer()) {
    std::snprintf(buf, sizeof(buf), "%lld",
                  static_cast<long long>(v.get<std::int64_t>()));
  } else if (v.is_number_unsigned()) {
    std::snprintf(buf, sizeof(buf), "%llu",
                  static_cast<unsigned long long>(v.get<std::uint64_t>()));
  } else {
    std::snprintf(buf, sizeof(buf), "%.17g", v.get<double>());
  }
  return buf;
}

std::string csv_cell(const ordered_json& v) {
  if (v.is_number()) return fmt_number(v);
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

void flatten(const ordered_json& v, const std::string& prefix,
             std::ostream& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(),
              out);
    }
  } else if (v.is_array()) {
    for (size_t k = 0; k < v.size(); ++k) {
      flatten(v[k], prefix + "[" + std::to_string(k) + "]", out);
    }
  } else {
    out << prefix << "," << csv_cell(v) << "\n";
  }
}

std::string to_csv(const ordered_json& payload) {
  std::ostringstream out;
  if (payload.contains("columns") && payload.contains("rows")) {
    const auto& cols = payload.at("columns");
    for (size_t k = 0; k < cols.size(); ++k) {
      out << (k ? "," : "") << cols[k].get<std::string>();
    }
    out << "\n";
    for (const auto& row : payload.at("rows")) {
      for (size_t k = 0; k < row.size(); ++k) {
        out << (k ? "," : "") << csv_cell(row[k]);
      }
      out << "\n";
    }
    return out.str();
  }
  out << "key,value\n";
  flatten(payload, "", out);
  return out.str();
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty() || cfg.out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw CliError{1, "cannot open output file " + cfg.out_path};
  out << text;
  if (!out) throw CliError{1, "failed writing " + cfg.out_path};
}

int run(RunConfig cfg, int threads) {
  // single-time commands: normalize times so the echoed config resolves to
  // the same run when fed back through --config
  if (cfg.command == "sample" || cfg.command == "entropy" ||
      cfg.command == "channel") {
    const double t = resolve_single_time(cfg);
    cfg.times.given = true;
    cfg.times.explicit_list = true;
    cfg.times.list = {t};
  }
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  ordered_json payload;
  if (cfg.command == "otoc-curve") {
    payload = run_otoc_curve(cfg, threads);
  } else if (cfg.command == "estimates") {
    payload = run_estimates(cfg, threads);
  } else if (cfg.command == "sample") {
    payload = run_sample(cfg, threads);
  } else if (cfg.command == "entropy") {
    payload = run_entropy(cfg, threads);
  } else if (cfg.command == "channel") {
    payload = run_channel(cfg, threads);
  } else if (cfg.command == "figure1") {
    payload = run_figure1(cfg, threads);
  } else {
    bad_config("unknown command '" + cfg.command + "'");
  }
  const double elapsed =
      std::chrono::duration<double>(clock::now() - start).count();

  ordered_json record;
  record["schema_version"] = "1.0";
  record["config_echo"] = echo_config(cfg);
  record["payload"] = payload;
  record["wall_time_seconds"] = elapsed;

  if (cfg.format == "json") {
    write_output(cfg, record.dump(2) + "\n");
  } else if (cfg.format == "csv") {
    write_output(cfg, to_csv(payload));
  } else {
    bad_config("unknown format '" + cfg.format + "' (json or csv)");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bipartite correlator toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed_flag;
  std::optional<std::string> output_flag, format_flag;
  std::optional<int> threads_flag;

  const std::vector<std::string> commands{"otoc-curve", "estimates", "sample",
                                          "entropy",    "channel",   "figure1"};
  const std::map<std::string, std::string> blurbs{
      {"otoc-curve", "correlator of the model evolution on a time grid"},
      {"estimates", "long-time averages, degeneracy flags, profile bounds"},
      {"sample", "Monte Carlo commutator correlators over an ensemble"},
      {"entropy", "entropy produced by the reduced channel on random inputs"},
      {"channel", "reduced-channel distances and time-fraction bounds"},
      {"figure1", "estimate hierarchy for the three reference chains"},
  };
  for (const std::string& name : commands) {
    CLI::App* sub = app.add_subcommand(name, blurbs.at(name));
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--seed", seed_flag, "RNG seed (overrides the config)");
    sub->add_option("--output", output_flag, "output path ('-' for stdout)");
    sub->add_option("--format", format_flag, "json or csv");
    sub->add_option("--threads", threads_flag, "worker threads");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = load_config(config_path);
    const std::string invoked = app.get_subcommands().front()->get_name();
    if (!cfg.command.empty() && cfg.command != invoked) {
      bad_config("config names command '" + cfg.command +
                 "' but '" + invoked + "' was invoked");
    }
    cfg.command = invoked;
    if (seed_flag) cfg.seed = *seed_flag;
    if (output_flag) cfg.out_path = *output_flag;
    if (format_flag) cfg.format = *format_flag;

    int threads = 1;
    if (const char* env = std::getenv("BOTOC_THREADS")) {
      try {
        threads = std::stoi(env);
      } catch (const std::exception&) {
        throw CliError{1, "BOTOC_THREADS is not a number"};
      }
    }
    if (threads_flag) threads = *threads_flag;
    if (threads < 1) throw CliError{1, "thread count must be positive"};

    return run(cfg, threads);
  } catch (const CliError& e) {
    std::cerr << "botoc: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "botoc: " << e.what() << "\n";
    return 2;
  }
}
