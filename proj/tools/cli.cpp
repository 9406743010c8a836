#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "lpball/closed_forms.hpp"
#include "lpball/errors.hpp"
#include "lpball/limits.hpp"
#include "lpball/pnorm.hpp"
#include "lpball/rng.hpp"

#ifndef LPBALL_VERSION
#define LPBALL_VERSION "unknown"
#endif

namespace lpball::cli {

using nlohmann::ordered_json;

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

// Values are rounded to 15 significant digits before serialisation so that
// the printed digits do not depend on the last-bit behaviour of libm.
ordered_json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return std::strtod(buf, nullptr);
}

std::string csv_num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw DomainError("cannot parse number '" + s + "'");
  }
  while (used < s.size() && s[used] == ' ') ++used;
  if (used != s.size()) throw DomainError("cannot parse number '" + s + "'");
  return v;
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> v;
  for (const auto& part : split(text, ',')) v.push_back(parse_double(part));
  if (v.empty()) throw DomainError("empty vector '" + text + "'");
  return v;
}

std::vector<std::vector<double>> parse_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  for (const auto& part : split(text, ';')) rows.push_back(parse_vector(part));
  return rows;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> v;
  for (double x : parse_vector(text)) {
    if (!(x >= 1.0) || x != std::floor(x)) throw DomainError("expected positive integers in '" + text + "'");
    v.push_back(static_cast<std::size_t>(x));
  }
  return v;
}

// Projections are parametrised by q on the figure axis; the p with
// conjugate q.
PNorm p_from_q(double q) {
  if (!(q >= 1.0)) throw DomainError("q must be >= 1");
  return q == 1.0 ? PNorm::infinity() : PNorm::finite(q / (q - 1.0));
}

struct Common {
  std::string format = "json";
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  std::string manifest;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sub->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads (0: all hardware threads)")->capture_default_str();
  sub->add_option("--manifest", c.manifest, "Write a run manifest (JSON) to this file");
}

struct Result {
  std::string data;
  int code = kExitOk;
};

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- constants

struct ConstantsArgs {
  std::string mode = "projection";
  std::string p = "inf";
  int m = 1;
};

Result cmd_constants(const ConstantsArgs& a, const Common& c) {
  if (a.m < 1) throw DomainError("m must be positive");
  const BodySpec body = BodySpec::make(parse_body_mode(a.mode), PNorm::parse(a.p));
  const double mu = closed_forms::asymptotic_mean(body, a.m);
  const double sigma_sq = closed_forms::asymptotic_variance(body, a.m);
  const double radius = closed_forms::limit_radius(body);
  if (c.format == "csv") {
    return {"mode,p,m,mu,sigma_sq,radius\n" + std::string(to_string(body.mode())) + "," + body.p().to_string() + "," +
            std::to_string(a.m) + "," + csv_num(mu) + "," + csv_num(sigma_sq) + "," + csv_num(radius) + "\n"};
  }
  ordered_json j;
  j["mode"] = to_string(body.mode());
  j["p"] = body.p().to_string();
  j["m"] = a.m;
  j["mu"] = num(mu);
  j["sigma_sq"] = num(sigma_sq);
  j["radius"] = num(radius);
  return {dump(j)};
}

// -------------------------------------------------------------- figure-data

struct FigureArgs {
  std::string mode = "projection";
  std::string m_list = "1,2,3";
  std::optional<double> lo;
  std::optional<double> hi;
  std::size_t points = 201;
  std::string right = "auto";
};

Result cmd_figure_data(const FigureArgs& a, const Common& c) {
  const BodyMode mode = parse_body_mode(a.mode);
  const bool projection = mode == BodyMode::projection;
  const double lo = a.lo.value_or(1.0);
  const double hi = a.hi.value_or(projection ? 3.0 : 2.0);
  const bool open_right = a.right == "auto" ? !projection : a.right == "open";
  if (!(hi > lo)) throw DomainError("grid needs hi > lo");
  if (a.points < 2) throw DomainError("grid needs at least two points");
  const std::vector<std::size_t> ms = parse_sizes(a.m_list);

  const std::size_t divisions = open_right ? a.points : a.points - 1;
  std::vector<double> grid(a.points);
  for (std::size_t i = 0; i < a.points; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(divisions);
  }

  std::string csv = "param,m,sigma_sq\n";
  ordered_json rows = ordered_json::array();
  for (std::size_t m : ms) {
    for (double x : grid) {
      const PNorm p = projection ? p_from_q(x) : PNorm::finite(x);
      const double s = closed_forms::asymptotic_variance(BodySpec::make(mode, p), static_cast<int>(m));
      csv += csv_num(x) + "," + std::to_string(m) + "," + csv_num(s) + "\n";
      rows.push_back({{"param", num(x)}, {"m", m}, {"sigma_sq", num(s)}});
    }
  }
  if (c.format == "csv") return {csv};
  ordered_json j;
  j["mode"] = to_string(mode);
  j["param"] = projection ? "q" : "p";
  j["rows"] = rows;
  return {dump(j)};
}

// ----------------------------------------------------------------- simulate

struct Gate {
  std::string name;
  double value;
  double threshold;
  bool evaluated;
  bool pass;
};

ordered_json gates_json(const std::vector<Gate>& gates) {
  ordered_json j = ordered_json::object();
  for (const auto& g : gates) {
    j[g.name] = {{"value", num(g.value)}, {"threshold", num(g.threshold)}, {"evaluated", g.evaluated}, {"pass", g.pass}};
  }
  return j;
}

bool all_pass(const std::vector<Gate>& gates) {
  for (const auto& g : gates)
    if (g.evaluated && !g.pass) return false;
  return true;
}

std::string gates_csv(const std::vector<Gate>& gates) {
  std::string s = "gate,value,threshold,evaluated,pass\n";
  for (const auto& g : gates) {
    s += g.name + "," + csv_num(g.value) + "," + csv_num(g.threshold) + "," + (g.evaluated ? "true" : "false") + "," +
         (g.pass ? "true" : "false") + "\n";
  }
  return s;
}

struct CltArgs {
  std::string mode = "projection";
  std::string p = "inf";
  std::size_t m = 1;
  std::size_t n = 4096;
  std::size_t replicates = 20000;
  std::size_t grid = 0;
  std::string centering = "asymptotic";
  std::string samples;
  double gate_mean = 0.05;
  double gate_var = 0.1;
  double gate_skew = 0.1;
  double gate_ks_p = 0.01;
};

Result cmd_clt(const CltArgs& a, const Common& c) {
  limits::ExperimentConfig cfg;
  cfg.mode = parse_body_mode(a.mode);
  cfg.p = PNorm::parse(a.p);
  cfg.m = a.m;
  cfg.n = a.n;
  cfg.replicates = a.replicates;
  cfg.grid_resolution = a.grid;
  cfg.seed = {c.seed, 0};
  cfg.centering = limits::parse_centering(a.centering);
  cfg.threads = c.threads;
  const auto r = limits::clt_experiment(cfg);

  // A negative threshold switches the gate off.
  std::vector<Gate> gates;
  auto upper = [&](const char* name, double value, double thr) {
    gates.push_back({name, value, thr, thr >= 0.0, thr < 0.0 || value <= thr});
  };
  upper("abs_mean", std::abs(r.sample_mean), a.gate_mean);
  upper("abs_variance_minus_one", std::abs(r.sample_variance - 1.0), a.gate_var);
  upper("abs_skewness", std::abs(r.sample_skewness), a.gate_skew);
  const bool have_p = r.ks_p_value.has_value() && a.gate_ks_p >= 0.0;
  gates.push_back({"ks_p_value", r.ks_p_value.value_or(std::nan("")), a.gate_ks_p, have_p,
                   !have_p || *r.ks_p_value > a.gate_ks_p});
  const bool pass = all_pass(gates);

  if (!a.samples.empty()) {
    std::ofstream f(a.samples, std::ios::binary);
    if (!f) throw DomainError("cannot open samples file '" + a.samples + "'");
    f << "replicate,standardized\n";
    for (std::size_t i = 0; i < r.standardized.size(); ++i) f << i << "," << csv_num(r.standardized[i]) << "\n";
  }

  if (c.format == "csv") {
    std::string s = "statistic,value\n";
    auto row = [&](const char* k, double v) { s += std::string(k) + "," + csv_num(v) + "\n"; };
    row("mu", r.mu);
    row("sigma_sq", r.sigma_sq);
    row("centre", r.centre);
    row("sample_mean", r.sample_mean);
    row("sample_variance", r.sample_variance);
    row("sample_skewness", r.sample_skewness);
    row("ks_statistic", r.ks_statistic);
    row("ks_p_value", r.ks_p_value.value_or(std::nan("")));
    for (const auto& q : r.quantiles) {
      char key[32];
      std::snprintf(key, sizeof(key), "quantile_%g", q.level);
      row(key, q.value);
    }
    return {s + "\n" + gates_csv(gates), pass ? kExitOk : kExitGate};
  }
  ordered_json j;
  j["experiment"] = "clt";
  j["config"] = {{"mode", to_string(cfg.mode)},
                 {"p", cfg.p.to_string()},
                 {"m", cfg.m},
                 {"n", cfg.n},
                 {"replicates", cfg.replicates},
                 {"grid_resolution", cfg.m == 1 ? 2 : (cfg.grid_resolution ? cfg.grid_resolution : default_grid_resolution(cfg.m))},
                 {"seed", cfg.seed.master_seed},
                 {"centering", limits::to_string(cfg.centering)}};
  j["mu"] = num(r.mu);
  j["sigma_sq"] = num(r.sigma_sq);
  j["centre"] = num(r.centre);
  j["sample_mean"] = num(r.sample_mean);
  j["sample_variance"] = num(r.sample_variance);
  j["sample_skewness"] = num(r.sample_skewness);
  j["ks_statistic"] = num(r.ks_statistic);
  j["ks_p_value"] = r.ks_p_value ? num(*r.ks_p_value) : ordered_json(nullptr);
  ordered_json qs = ordered_json::array();
  for (const auto& q : r.quantiles) qs.push_back({{"level", num(q.level)}, {"value", num(q.value)}});
  j["quantiles"] = qs;
  j["gates"] = gates_json(gates);
  j["pass"] = pass;
  return {dump(j), pass ? kExitOk : kExitGate};
}

struct HausdorffArgs {
  std::string mode = "projection";
  std::string p = "inf";
  std::size_t m = 2;
  std::string ladder = "256,1024,4096";
  std::size_t replicates = 50;
  std::size_t grid = 0;
  double gate_control = 1e-8;
  double ratio_lo = 2.0;
  double ratio_hi = 8.0;
};

Result cmd_hausdorff(const HausdorffArgs& a, const Common& c) {
  limits::ExperimentConfig cfg;
  cfg.mode = parse_body_mode(a.mode);
  cfg.p = PNorm::parse(a.p);
  cfg.m = a.m;
  cfg.replicates = a.replicates;
  cfg.grid_resolution = a.grid;
  cfg.seed = {c.seed, 0};
  cfg.threads = c.threads;
  const std::vector<std::size_t> ladder = parse_sizes(a.ladder);
  const auto r = limits::hausdorff_experiment(cfg, ladder);
  const bool euclidean = BodySpec::make(cfg.mode, cfg.p).is_euclidean();

  std::vector<Gate> gates;
  ordered_json ratios = ordered_json::array();
  std::string ratio_csv;
  if (euclidean) {
    for (const auto& row : r.rows) {
      gates.push_back({"control_median_n" + std::to_string(row.n), row.median, a.gate_control, true,
                       row.median <= a.gate_control});
    }
  } else {
    for (std::size_t k = 1; k < r.rows.size(); ++k) {
      const auto& prev = r.rows[k - 1];
      const auto& cur = r.rows[k];
      gates.push_back({"decreasing_n" + std::to_string(prev.n) + "_n" + std::to_string(cur.n), cur.median - prev.median,
                       0.0, true, cur.median < prev.median});
    }
    for (const auto& small : r.rows)
      for (const auto& large : r.rows) {
        if (large.n != 16 * small.n) continue;
        const double ratio = small.median / large.median;
        const std::string name = "ratio_n" + std::to_string(small.n) + "_n" + std::to_string(large.n);
        gates.push_back({name + "_lo", ratio, a.ratio_lo, true, ratio >= a.ratio_lo});
        gates.push_back({name + "_hi", ratio, a.ratio_hi, true, ratio <= a.ratio_hi});
        ratios.push_back({{"n", small.n}, {"n_times_16", large.n}, {"ratio", num(ratio)}});
      }
  }
  const bool pass = all_pass(gates);

  if (c.format == "csv") {
    std::string s = "n,median_hausdorff\n";
    for (const auto& row : r.rows) s += std::to_string(row.n) + "," + csv_num(row.median) + "\n";
    return {s + "\n" + gates_csv(gates), pass ? kExitOk : kExitGate};
  }
  ordered_json j;
  j["experiment"] = "hausdorff";
  j["config"] = {{"mode", to_string(cfg.mode)},
                 {"p", cfg.p.to_string()},
                 {"m", cfg.m},
                 {"replicates", cfg.replicates},
                 {"grid_resolution", cfg.m == 1 ? 2 : (cfg.grid_resolution ? cfg.grid_resolution : default_grid_resolution(cfg.m))},
                 {"seed", cfg.seed.master_seed}};
  j["radius"] = num(r.radius);
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows) rows.push_back({{"n", row.n}, {"median", num(row.median)}});
  j["rows"] = rows;
  j["ratios"] = ratios;
  j["gates"] = gates_json(gates);
  j["pass"] = pass;
  return {dump(j), pass ? kExitOk : kExitGate};
}

struct CovarianceArgs {
  double q = 1.0;
  std::string u = "1,0";
  std::string v = "0,1";
  std::size_t n = 1024;
  std::size_t replicates = 100000;
  std::string centering = "asymptotic";
  double gate_se = 4.0;
};

Result cmd_covariance(const CovarianceArgs& a, const Common& c) {
  const auto u = parse_vector(a.u);
  const auto v = parse_vector(a.v);
  const auto r = limits::covariance_experiment(a.q, u, v, a.n, a.replicates, {c.seed, 0},
                                               limits::parse_centering(a.centering), c.threads);
  const double z = (r.empirical - r.analytic) / r.standard_error;
  std::vector<Gate> gates{{"abs_z_score", std::abs(z), a.gate_se, a.gate_se >= 0.0, a.gate_se < 0.0 || std::abs(z) <= a.gate_se}};
  const bool pass = all_pass(gates);
  if (c.format == "csv") {
    return {"empirical,analytic,standard_error,z_score\n" + csv_num(r.empirical) + "," + csv_num(r.analytic) + "," +
                csv_num(r.standard_error) + "," + csv_num(z) + "\n\n" + gates_csv(gates),
            pass ? kExitOk : kExitGate};
  }
  ordered_json j;
  j["experiment"] = "covariance";
  ordered_json uj = ordered_json::array();
  ordered_json vj = ordered_json::array();
  for (double x : u) uj.push_back(num(x));
  for (double x : v) vj.push_back(num(x));
  j["config"] = {{"q", num(a.q)}, {"u", uj}, {"v", vj}, {"n", a.n}, {"replicates", a.replicates},
                 {"seed", c.seed}, {"centering", a.centering}};
  j["empirical"] = num(r.empirical);
  j["analytic"] = num(r.analytic);
  j["standard_error"] = num(r.standard_error);
  j["z_score"] = num(z);
  j["gates"] = gates_json(gates);
  j["pass"] = pass;
  return {dump(j), pass ? kExitOk : kExitGate};
}

// --------------------------------------------------------------------- rate

struct MdpArgs {
  double q = 1.5;
  std::size_t m = 2;
  std::string points = "1,0;0,1";
  std::string uhat;
};

Result cmd_rate_mdp(const MdpArgs& a, const Common& c) {
  const auto points = parse_rows(a.points);
  const auto cov = limits::mdp_covariance_matrix(a.q, points, a.m);
  std::vector<double> uhat = a.uhat.empty() ? std::vector<double>(cov.rows, 0.0) : parse_vector(a.uhat);
  if (uhat.size() != cov.rows) {
    throw DomainError("--uhat needs " + std::to_string(cov.rows) + " entries (k + m(m+1)/2)");
  }
  const auto rate = limits::mdp_rate_quadratic(cov, uhat);
  if (c.format == "csv") {
    return {"rate,condition_number,dimension\n" + csv_num(rate.value) + "," + csv_num(rate.condition_number) + "," +
            std::to_string(cov.rows) + "\n"};
  }
  ordered_json j;
  j["rate_function"] = "mdp";
  j["rate"] = num(rate.value);
  j["condition_number"] = num(rate.condition_number);
  j["dimension"] = cov.rows;
  return {dump(j)};
}

struct StiefelArgs {
  std::size_t m = 2;
  std::optional<double> sigma;
  std::string covariance;
};

Result cmd_rate_stiefel(const StiefelArgs& a, const Common& c) {
  limits::GaussianMeasure nu;
  if (!a.covariance.empty()) {
    const auto rows = parse_rows(a.covariance);
    nu.covariance = linalg::Matrix(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw DomainError("--covariance must be a square matrix");
      for (std::size_t j = 0; j < rows.size(); ++j) nu.covariance(i, j) = rows[i][j];
    }
  } else {
    if (a.m < 1) throw DomainError("m must be positive");
    const double s = a.sigma.value_or(1.0);
    nu.covariance = linalg::Matrix(a.m, a.m);
    for (std::size_t i = 0; i < a.m; ++i) nu.covariance(i, i) = s * s;
  }
  const auto rate = limits::stiefel_rate_gaussian(nu);
  if (c.format == "csv") {
    return {"rate,feasible\n" + csv_num(rate.value) + "," + (rate.feasible ? "true" : "false") + "\n"};
  }
  ordered_json j;
  j["rate_function"] = "stiefel";
  j["rate"] = num(rate.value);
  j["feasible"] = rate.feasible;
  return {dump(j)};
}

ordered_json option_values(const CLI::App* sub) {
  ordered_json params = ordered_json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "manifest") continue;
    if (opt->count() > 0) {
      params[name] = opt->as<std::string>();
    } else {
      params[name] = opt->get_default_str();
    }
  }
  return params;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random projections and sections of l_p balls: constants, figure data, experiments, rates", "lpball"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(LPBALL_VERSION));
  Common common;

  ConstantsArgs constants;
  auto* sc = app.add_subcommand("constants", "Asymptotic mean, variance and limit radius");
  sc->add_option("--mode", constants.mode, "projection | section")->capture_default_str();
  sc->add_option("--p", constants.p, "p as a decimal or 'inf'")->capture_default_str();
  sc->add_option("--m", constants.m, "Subspace dimension")->capture_default_str();
  add_common(sc, common);

  FigureArgs figure;
  auto* sf = app.add_subcommand("figure-data", "Asymptotic variance curves (param, m, sigma_sq)");
  sf->add_option("--mode", figure.mode, "projection (axis q) | section (axis p)")->capture_default_str();
  sf->add_option("--m", figure.m_list, "Comma-separated list of m")->capture_default_str();
  sf->add_option("--lo", figure.lo, "Left end of the axis (default 1)");
  sf->add_option("--hi", figure.hi, "Right end of the axis (default 3 for projections, 2 for sections)");
  sf->add_option("--points", figure.points, "Grid points per curve")->capture_default_str();
  sf->add_option("--right", figure.right, "Right end closed | open | auto (open for sections)")
      ->check(CLI::IsMember({"auto", "open", "closed"}))
      ->capture_default_str();
  add_common(sf, common);

  auto* sim = app.add_subcommand("simulate", "Monte Carlo experiments");
  sim->require_subcommand(1);

  CltArgs clt;
  auto* s_clt = sim->add_subcommand("clt", "Volume central limit theorem");
  s_clt->add_option("--mode", clt.mode)->capture_default_str();
  s_clt->add_option("--p", clt.p)->capture_default_str();
  s_clt->add_option("--m", clt.m)->capture_default_str();
  s_clt->add_option("--N", clt.n, "Ambient dimension")->capture_default_str();
  s_clt->add_option("--M", clt.replicates, "Replicates")->capture_default_str();
  s_clt->add_option("--grid", clt.grid, "Sphere grid resolution (0: default for m)")->capture_default_str();
  s_clt->add_option("--centering", clt.centering, "asymptotic | exact")->capture_default_str();
  s_clt->add_option("--samples", clt.samples, "Write standardized samples as CSV to this file");
  s_clt->add_option("--gate-mean", clt.gate_mean, "Max |mean| (negative disables)")->capture_default_str();
  s_clt->add_option("--gate-var", clt.gate_var, "Max |variance - 1|")->capture_default_str();
  s_clt->add_option("--gate-skew", clt.gate_skew, "Max |skewness|")->capture_default_str();
  s_clt->add_option("--gate-ks-p", clt.gate_ks_p, "Min KS p-value")->capture_default_str();
  add_common(s_clt, common);

  HausdorffArgs haus;
  auto* s_h = sim->add_subcommand("hausdorff", "Hausdorff distance to the limit ball along an N ladder");
  s_h->add_option("--mode", haus.mode)->capture_default_str();
  s_h->add_option("--p", haus.p)->capture_default_str();
  s_h->add_option("--m", haus.m)->capture_default_str();
  s_h->add_option("--ladder", haus.ladder, "Comma-separated N values")->capture_default_str();
  s_h->add_option("--M", haus.replicates, "Replicates per N")->capture_default_str();
  s_h->add_option("--grid", haus.grid)->capture_default_str();
  s_h->add_option("--gate-control", haus.gate_control, "Max median at p = 2")->capture_default_str();
  s_h->add_option("--ratio-lo", haus.ratio_lo, "Min d(N)/d(16N)")->capture_default_str();
  s_h->add_option("--ratio-hi", haus.ratio_hi, "Max d(N)/d(16N)")->capture_default_str();
  add_common(s_h, common);

  CovarianceArgs cov;
  auto* s_cov = sim->add_subcommand("covariance", "E[Z(u)Z(v)] of the empirical process vs its limit");
  s_cov->add_option("--q", cov.q)->capture_default_str();
  s_cov->add_option("--u", cov.u, "Unit vector, comma-separated")->capture_default_str();
  s_cov->add_option("--v", cov.v, "Unit vector, comma-separated")->capture_default_str();
  s_cov->add_option("--N", cov.n)->capture_default_str();
  s_cov->add_option("--M", cov.replicates)->capture_default_str();
  s_cov->add_option("--centering", cov.centering)->capture_default_str();
  s_cov->add_option("--gate-se", cov.gate_se, "Max |z| in standard errors")->capture_default_str();
  add_common(s_cov, common);

  auto* rate = app.add_subcommand("rate", "Rate function evaluators");
  rate->require_subcommand(1);

  MdpArgs mdp;
  auto* r_mdp = rate->add_subcommand("mdp", "Quadratic moderate-deviation rate <u, C^-1 u>/2");
  r_mdp->add_option("--q", mdp.q)->capture_default_str();
  r_mdp->add_option("--m", mdp.m)->capture_default_str();
  r_mdp->add_option("--points", mdp.points, "Unit vectors, ';'-separated rows")->capture_default_str();
  r_mdp->add_option("--uhat", mdp.uhat, "k + m(m+1)/2 values (default zero)");
  add_common(r_mdp, common);

  StiefelArgs st;
  auto* r_st = rate->add_subcommand("stiefel", "Stiefel entropy rate of a centred Gaussian measure");
  r_st->add_option("--m", st.m)->capture_default_str();
  auto* sigma_opt = r_st->add_option("--sigma", st.sigma, "Covariance sigma^2 Id");
  r_st->add_option("--covariance", st.covariance, "Covariance matrix, ';'-separated rows")->excludes(sigma_opt);
  add_common(r_st, common);

  std::vector<const char*> argv{"lpball"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const auto start = std::chrono::steady_clock::now();
  Result result;
  CLI::App* leaf = nullptr;
  std::string command;
  try {
    if (*sc) {
      leaf = sc;
      command = "constants";
      result = cmd_constants(constants, common);
    } else if (*sf) {
      leaf = sf;
      command = "figure-data";
      result = cmd_figure_data(figure, common);
    } else if (*s_clt) {
      leaf = s_clt;
      command = "simulate clt";
      result = cmd_clt(clt, common);
    } else if (*s_h) {
      leaf = s_h;
      command = "simulate hausdorff";
      result = cmd_hausdorff(haus, common);
    } else if (*s_cov) {
      leaf = s_cov;
      command = "simulate covariance";
      result = cmd_covariance(cov, common);
    } else if (*r_mdp) {
      leaf = r_mdp;
      command = "rate mdp";
      result = cmd_rate_mdp(mdp, common);
    } else if (*r_st) {
      leaf = r_st;
      command = "rate stiefel";
      result = cmd_rate_stiefel(st, common);
    }
  } catch (const std::exception& e) {
    err << "lpball: " << e.what() << "\n";
    return kExitConfig;
  }
  out << result.data;

  if (!common.manifest.empty()) {
    ordered_json m;
    m["command"] = command;
    m["parameters"] = option_values(leaf);
    m["seed"] = common.seed;
    m["version"] = LPBALL_VERSION;
    m["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    m["output_checksum"] = "fnv1a64:" + fnv1a_hex(result.data);
    std::ofstream f(common.manifest, std::ios::binary);
    if (!f) {
      err << "lpball: cannot write manifest '" << common.manifest << "'\n";
      return kExitConfig;
    }
    f << m.dump(2) << "\n";
  }
  if (result.code == kExitGate) err << "lpball: statistical gate failed\n";
  return result.code;
}

}  // namespace lpball::cli
