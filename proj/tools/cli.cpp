#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gmrfinfo/corrmap.hpp"
#include "gmrfinfo/error.hpp"
#include "gmrfinfo/gmrf_mc.hpp"
#include "gmrfinfo/inforates.hpp"
#include "gmrfinfo/kernels.hpp"
#include "gmrfinfo/network.hpp"
#include "gmrfinfo/parallel.hpp"
#include "gmrfinfo/plotdata.hpp"

#ifndef GMRFINFO_VERSION
#define GMRFINFO_VERSION "unknown"
#endif

namespace gmrfinfo::cli {

namespace {

using json = nlohmann::ordered_json;

struct Outcome {
  Table table;
  json results = json::object();
  std::string summary;
};

struct Common {
  std::size_t grid = kDefaultRateGrid;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  std::string output;
};

// SNR given in dB (default) or, with the explicit suffix, as a ratio.
struct SnrOption {
  double db;
  double linear = 0.0;
  CLI::Option* linear_opt = nullptr;

  void attach(CLI::App* sub, double default_db) {
    db = default_db;
    auto* d = sub->add_option("--snr-db", db, "Measurement SNR in dB");
    linear_opt = sub->add_option("--snr-linear", linear, "Measurement SNR as a linear ratio")
                     ->check(CLI::NonNegativeNumber);
    d->excludes(linear_opt);
  }
  double value() const { return linear_opt->count() > 0 ? linear : std::pow(10.0, db / 10.0); }
};

double to_db(double snr) { return 10.0 * std::log10(snr); }

const std::map<std::string, Measure> kMeasures{{"kli", Measure::kli}, {"mi", Measure::mi}};

void add_measure(CLI::App* sub, Measure& m) {
  sub->add_option("--measure", m, "Information measure: kli or mi")
      ->transform(CLI::CheckedTransformer(kMeasures, CLI::ignore_case));
}

std::string measure_name(Measure m) { return m == Measure::kli ? "kli" : "mi"; }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json fit_json(const LinearFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}, {"points", f.points}};
}

// Local maxima of a sampled curve, endpoints included when they beat their
// only neighbour.
std::vector<std::size_t> modes(const std::vector<double>& v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const bool left = i == 0 || v[i] > v[i - 1];
    const bool right = i + 1 == v.size() || v[i] >= v[i + 1];
    if (left && right && v.size() > 1) out.push_back(i);
  }
  return out;
}

unsigned pool(const Common& c) { return c.threads == 0 ? default_threads() : c.threads; }

// --- commands ---------------------------------------------------------------

struct RatesCmd {
  SnrOption snr;
  double zeta = 0.1;

  void attach(CLI::App* sub) {
    snr.attach(sub, 10.0);
    sub->add_option("--zeta", zeta, "Edge dependence factor in [0, 1/4]")
        ->check(CLI::Range(0.0, 0.25));
  }
  Outcome run(const Common& c) const {
    const double s = snr.value();
    const auto edge = EdgeDependence::from_zeta(zeta);
    const InfoRateResult r = sfcar_rates(s, edge, c.grid, c.threads);
    Outcome o;
    o.table.columns = {"snr_db", "snr", "zeta", "rho", "kli", "mi", "grid", "quad_error_estimate"};
    o.table.add({to_db(s), s, zeta, rho_from_zeta(edge), r.kli, r.mi,
                 static_cast<std::int64_t>(r.grid), r.quad_error_estimate});
    o.results = {{"kli", r.kli}, {"mi", r.mi}, {"quad_error_estimate", r.quad_error_estimate}};
    o.summary = "KLI rate   " + fmt(r.kli) + " nats/node\nMI rate    " + fmt(r.mi) +
                " nats/node\nquadrature error estimate " + fmt(r.quad_error_estimate) +
                " (grid " + std::to_string(c.grid) + " vs " + std::to_string(2 * c.grid) + ")\n";
    return o;
  }
};

struct SweepZetaCmd {
  SnrOption snr;
  int points = 101;

  void attach(CLI::App* sub) {
    snr.attach(sub, -5.0);
    sub->add_option("--points", points, "Evenly spaced zeta values over [0, 1/4]")
        ->check(CLI::Range(2, 100000));
  }
  Outcome run(const Common& c) const {
    const double s = snr.value();
    std::vector<double> zeta(points), kli(points), mi(points), rho(points);
    parallel_for(zeta.size(), pool(c), [&](std::size_t i) {
      zeta[i] = 0.25 * static_cast<double>(i) / (points - 1);
      const auto edge = EdgeDependence::from_zeta(zeta[i]);
      kli[i] = kli_rate_sfcar(s, edge, c.grid, 1);
      mi[i] = mi_rate_sfcar(s, edge, c.grid, 1);
      rho[i] = rho_from_zeta(edge);
    });
    Outcome o;
    o.table.columns = {"zeta", "rho", "kli", "mi"};
    for (int i = 0; i < points; ++i) o.table.add({zeta[i], rho[i], kli[i], mi[i]});
    json m = json::array();
    o.summary = "KLI modes over zeta:";
    for (std::size_t i : modes(kli)) {
      m.push_back({{"zeta", zeta[i]}, {"kli", kli[i]}});
      o.summary += " zeta=" + fmt(zeta[i]) + " (" + fmt(kli[i]) + ")";
    }
    o.summary += "\n";
    o.results = {{"snr", s}, {"kli_local_maxima", m}};
    return o;
  }
};

struct SweepSnrCmd {
  double db_min = -10.0, db_max = 10.0, db_step = 0.5;
  int coarse = 101;
  double tol = 1e-6;

  void attach(CLI::App* sub) {
    sub->add_option("--db-min", db_min, "Lowest SNR in dB");
    sub->add_option("--db-max", db_max, "Highest SNR in dB");
    sub->add_option("--db-step", db_step, "SNR step in dB")->check(CLI::PositiveNumber);
    sub->add_option("--coarse", coarse, "Coarse zeta grid size")->check(CLI::Range(101, 100000));
    sub->add_option("--tol", tol, "Golden-section tolerance in zeta")->check(CLI::PositiveNumber);
  }
  Outcome run(const Common& c) const {
    if (!(db_max >= db_min)) throw DomainError("--db-max must not be below --db-min");
    const auto count = static_cast<std::size_t>(std::floor((db_max - db_min) / db_step + 1e-9)) + 1;
    std::vector<std::vector<Cell>> rows(count);
    parallel_for(count, pool(c), [&](std::size_t i) {
      const double db = db_min + db_step * static_cast<double>(i);
      const double s = std::pow(10.0, db / 10.0);
      const OptimalZeta z = optimal_zeta(s, coarse, tol, c.grid, 1);
      rows[i] = {db, s, z.zeta_star, z.kli_star, stein_kli(s), 0.5 * std::log1p(s)};
    });
    Outcome o;
    o.table.columns = {"snr_db", "snr", "zeta_star", "kli_star", "kli_iid", "mi_iid"};
    for (auto& r : rows) o.table.add(std::move(r));
    o.summary = "optimal zeta over " + std::to_string(count) + " SNR values written\n";
    return o;
  }
};

struct McVerifyCmd {
  SnrOption snr;
  double zeta = 0.1;
  double sigma2 = 1.0;
  std::vector<std::size_t> n_list{64, 128};
  std::size_t trials = 500;
  bool dense = false;
  std::vector<std::size_t> dense_n{8, 16, 32};
  std::size_t quadform_n = 16;
  std::size_t quadform_trials = 300;

  void attach(CLI::App* sub) {
    snr.attach(sub, 10.0);
    sub->add_option("--zeta", zeta, "Edge dependence factor")->check(CLI::Range(0.0, 0.2499));
    sub->add_option("--sigma2", sigma2, "Noise variance")->check(CLI::PositiveNumber);
    sub->add_option("--n", n_list, "Torus sides for the LLR Monte Carlo");
    sub->add_option("--trials", trials, "Monte Carlo trials")->check(CLI::Range(30, 100000000));
    sub->add_flag("--dense", dense, "Also run the dense log-det, trace-norm and quadratic-form checks");
    sub->add_option("--dense-n", dense_n, "Lattice sides for the dense checks");
    sub->add_option("--quadform-n", quadform_n, "Lattice side for the quadratic-form check");
    sub->add_option("--quadform-trials", quadform_trials, "Trials for the quadratic-form check")
        ->check(CLI::Range(2, 100000000));
  }
  Outcome run(const Common& c) const {
    const double s = snr.value();
    const auto edge = EdgeDependence::from_zeta(zeta);
    const SfcarModel model = SfcarModel::with_snr(s, sigma2, edge);
    const double target = kli_rate_sfcar(s, edge, c.grid, c.threads);
    Outcome o;
    o.table.columns = {"check", "n", "trials", "value", "std_error", "target", "abs_gap"};
    json llr = json::array();
    for (std::size_t n : n_list) {
      const McReport r = mc_kli_estimate(model, sigma2, n, trials, c.seed, c.threads);
      o.table.add({std::string("llr"), static_cast<std::int64_t>(n),
                   static_cast<std::int64_t>(r.trials), r.mean, r.std_error, target,
                   std::abs(r.mean - target)});
      llr.push_back({{"n", n}, {"mean", r.mean}, {"std_error", r.std_error}});
      o.summary += "LLR n=" + std::to_string(n) + ": " + fmt(r.mean) + " +- " + fmt(r.std_error) +
                   " (quadrature " + fmt(target) + ")\n";
    }
    o.results = {{"kli_quadrature", target}, {"llr", llr}};
    if (!dense) return o;

    for (const auto& p : logdet_convergence(model, sigma2, dense_n)) {
      o.table.add({std::string("logdet"), static_cast<std::int64_t>(p.n), std::int64_t{0}, p.value,
                   0.0, p.target, p.gap});
      o.summary += "log-det n=" + std::to_string(p.n) + ": gap " + fmt(p.gap) + "\n";
    }
    for (const auto& p : toeplitz_circulant_gap(model, sigma2, dense_n)) {
      o.table.add({std::string("trace_norm"), static_cast<std::int64_t>(p.n), std::int64_t{0},
                   p.per_node_trace_norm, 0.0, 0.0, p.per_node_trace_norm});
      o.summary += "trace norm n=" + std::to_string(p.n) + ": " + fmt(p.per_node_trace_norm) + "\n";
    }
    const QuadformCheck q = quadform_limit_check(model, sigma2, quadform_n, quadform_trials, c.seed);
    for (const auto& [name, r] : {std::pair{"quadform_dense", q.dense},
                                  std::pair{"quadform_circulant", q.circulant}}) {
      o.table.add({std::string(name), static_cast<std::int64_t>(r.n),
                   static_cast<std::int64_t>(r.trials), r.mean, r.std_error, q.target,
                   std::abs(r.mean - q.target)});
      o.summary += std::string(name) + ": " + fmt(r.mean) + " +- " + fmt(r.std_error) +
                   " (limit " + fmt(q.target) + ")\n";
    }
    return o;
  }
};

struct NetworkOptions {
  NetworkConfig cfg;
  Measure measure = Measure::kli;
  bool fusion = false;

  void attach(CLI::App* sub, const NetworkConfig& defaults) {
    cfg = defaults;
    sub->add_option("--dn", cfg.dn, "Sensor spacing in metres")->check(CLI::PositiveNumber);
    sub->add_option("--Es", cfg.Es, "Sensing energy per node in joules")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--E0", cfg.E0, "Radio constant in J/m^nu")->check(CLI::PositiveNumber);
    sub->add_option("--nu", cfg.nu, "Propagation loss factor")->check(CLI::Range(2.0, 1e9));
    sub->add_option("--alpha", cfg.alpha, "Diffusion rate in 1/m")->check(CLI::PositiveNumber);
    sub->add_option("--beta", cfg.beta, "SNR per joule of sensing energy")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--fusion", fusion, "In-network fusion: one transmission per node");
    add_measure(sub, measure);
  }
  NetworkConfig resolved() const {
    NetworkConfig r = cfg;
    r.energy_model = fusion ? EnergyModel::fusion : EnergyModel::min_hop;
    return r;
  }
};

struct ScalingCmd {
  NetworkOptions net;
  std::vector<std::size_t> n_list{33, 65, 129, 257};

  void attach(CLI::App* sub) {
    NetworkConfig d;
    d.dn = 1.0;
    d.Es = 0.01;
    d.E0 = 1.0;
    d.alpha = 1.0;
    d.beta = 1000.0;
    net.attach(sub, d);
    sub->add_option("--n-list", n_list, "Nodes per side");
  }
  Outcome run(const Common& c) const {
    const NetworkConfig cfg = net.resolved();
    const FixedDensitySweep s = sweep_fixed_density(cfg, n_list, net.measure, c.grid, c.threads);
    const PerNodeEnergySweep pn = sweep_fixed_per_node_energy(cfg, n_list, net.measure, c.grid);
    Outcome o;
    o.table.columns = {"n", "area", "total_energy", "total_info", "efficiency",
                       "per_node_info", "fixed_budget_per_node_info", "snr", "zeta"};
    for (std::size_t i = 0; i < s.reports.size(); ++i) {
      const auto& r = s.reports[i];
      const double side = static_cast<double>(r.n) * r.dn;
      o.table.add({static_cast<std::int64_t>(r.n), side * side, r.total_energy, r.total_info,
                   r.efficiency, r.per_node_info, pn.points[i].per_node_info, r.snr, r.zeta});
    }
    o.results = {{"efficiency_vs_area", fit_json(s.efficiency_vs_area)},
                 {"info_vs_energy", fit_json(s.info_vs_energy)},
                 {"fixed_budget_per_node_energy", pn.per_node_energy},
                 {"fixed_budget_info_vs_nodes", fit_json(pn.info_vs_nodes)}};
    o.summary = "efficiency vs area slope      " + fmt(s.efficiency_vs_area.slope) +
                "\ntotal info vs energy slope    " + fmt(s.info_vs_energy.slope) +
                "\nper-node info vs nodes slope  " + fmt(pn.info_vs_nodes.slope) +
                " (fixed per-node energy)\n";
    return o;
  }
};

struct SpacingCmd {
  SnrOption snr;
  double alpha = 1.0;
  double dn_min = 3.0, dn_max = 8.0;
  int points = 11;
  Measure measure = Measure::kli;

  void attach(CLI::App* sub) {
    snr.attach(sub, 10.0);
    sub->add_option("--alpha", alpha, "Diffusion rate in 1/m")->check(CLI::PositiveNumber);
    sub->add_option("--dn-min", dn_min, "Smallest spacing")->check(CLI::PositiveNumber);
    sub->add_option("--dn-max", dn_max, "Largest spacing")->check(CLI::PositiveNumber);
    sub->add_option("--points", points, "Evenly spaced spacings")->check(CLI::Range(2, 100000));
    add_measure(sub, measure);
  }
  Outcome run(const Common& c) const {
    NetworkConfig cfg;
    cfg.alpha = alpha;
    cfg.beta = 1.0;
    cfg.Es = snr.value();
    std::vector<double> dn(points);
    for (int i = 0; i < points; ++i) dn[i] = dn_min + (dn_max - dn_min) * i / (points - 1);
    const SpacingSweep s = sweep_spacing(cfg, dn, measure, c.grid, c.threads);
    Outcome o;
    o.table.columns = {"dn", "rho", "rate", "gap_to_limit"};
    for (const auto& p : s.points) o.table.add({p.dn, p.rho, p.rate, p.gap_to_limit});
    o.results = {{"limit", s.limit}, {"gap_fit", fit_json(s.gap_fit)},
                 {"alpha_estimate", -s.gap_fit.slope}};
    o.summary = "decorrelated limit " + fmt(s.limit) + "\nalpha estimate from gap fit " +
                fmt(-s.gap_fit.slope) + " (true " + fmt(alpha) + ")\n";
    return o;
  }
};

struct DensityCmd {
  SnrOption snr;
  double L = 4.0, alpha = 1.0, mu_min = 1.0, mu_max = 100.0;
  int points = 21;
  Measure measure = Measure::kli;

  void attach(CLI::App* sub) {
    snr.attach(sub, 0.0);
    sub->add_option("--L", L, "Side of the square area in metres")->check(CLI::PositiveNumber);
    sub->add_option("--alpha", alpha, "Diffusion rate in 1/m")->check(CLI::PositiveNumber);
    sub->add_option("--mu-min", mu_min, "Lowest density, nodes/m^2")->check(CLI::PositiveNumber);
    sub->add_option("--mu-max", mu_max, "Highest density, nodes/m^2")->check(CLI::PositiveNumber);
    sub->add_option("--points", points, "Log-spaced densities")->check(CLI::Range(2, 100000));
    add_measure(sub, measure);
  }
  Outcome run(const Common& c) const {
    const auto mu = log_space(mu_min, mu_max, static_cast<std::size_t>(points));
    const DensitySweep s = sweep_infinite_density(L, mu, measure, snr.value(), alpha, c.grid,
                                                  c.threads);
    Outcome o;
    o.table.columns = {"mu", "dn", "rho", "rate", "mu_rate", "total_info"};
    for (const auto& p : s.points) o.table.add({p.mu, p.dn, p.rho, p.rate, p.mu_rate, L * L * p.mu_rate});
    o.results = {{"top_decade_variation", s.top_decade_variation}};
    o.summary = "relative variation of mu*rate over the top decade " +
                fmt(s.top_decade_variation) + "\n";
    return o;
  }
};

struct OptimalDensityCmd {
  DensityProblem p;
  double mu_min = 1.0, mu_max = 1e4;
  int points = 400;

  void attach(CLI::App* sub) {
    sub->add_option("--L", p.L, "Side of the square area in metres")->check(CLI::PositiveNumber);
    sub->add_option("--Et", p.Et, "Total energy budget in joules")->check(CLI::PositiveNumber);
    sub->add_option("--alpha", p.alpha, "Diffusion rate in 1/m")->check(CLI::PositiveNumber);
    sub->add_option("--beta", p.beta, "SNR per joule")->check(CLI::PositiveNumber);
    sub->add_option("--E0", p.E0, "Radio constant in J/m^nu")->check(CLI::PositiveNumber);
    sub->add_option("--nu", p.nu, "Propagation loss factor")->check(CLI::Range(2.0, 1e9));
    sub->add_option("--mu-min", mu_min, "Lowest density")->check(CLI::PositiveNumber);
    sub->add_option("--mu-max", mu_max, "Highest density")->check(CLI::PositiveNumber);
    sub->add_option("--points", points, "Log-spaced densities")->check(CLI::Range(3, 1000000));
    add_measure(sub, p.measure);
  }
  Outcome run(const Common& c) const {
    const auto grid = log_space(mu_min, mu_max, static_cast<std::size_t>(points));
    const OptimalDensity r = optimal_density(p, grid, c.grid, c.threads);
    Outcome o;
    o.table.columns = {"mu", "n", "dn", "Es", "snr", "rho", "total_info"};
    std::size_t infeasible = 0;
    for (const auto& q : r.curve) {
      if (!q.feasible) {
        ++infeasible;
        continue;
      }
      o.table.add({q.mu, q.n, q.dn, q.Es, q.snr, q.rho, q.total_info});
    }
    json maxima = json::array();
    o.summary = "optimal density " + fmt(r.mu_star) + " nodes/m^2, total " +
                measure_name(p.measure) + " " + fmt(r.info_star) + " nats\nlocal maxima:";
    for (const auto& m : r.local_maxima) {
      maxima.push_back({{"mu", m.x}, {"total_info", m.value}});
      o.summary += " " + fmt(m.x);
    }
    o.summary += "\n";
    o.results = {{"mu_star", r.mu_star}, {"info_star", r.info_star}, {"local_maxima", maxima},
                 {"infeasible_points", infeasible}};
    return o;
  }
};

struct EnergyCmd {
  NetworkOptions net;
  std::size_t n = 21;
  std::vector<double> Et{1e4, 1e5, 1e6, 1e7, 1e8};

  void attach(CLI::App* sub) {
    NetworkConfig d;
    d.dn = 0.1;
    d.E0 = 0.1;
    d.alpha = 100.0;
    d.beta = 1.0;
    net.attach(sub, d);
    sub->add_option("--n", n, "Nodes per side")->check(CLI::Range(2, 1000000));
    sub->add_option("--Et", Et, "Total energy budgets in joules");
  }
  Outcome run(const Common& c) const {
    NetworkConfig cfg = net.resolved();
    cfg.n = n;
    const EnergySweep s = sweep_energy_fixed_all(cfg, Et, net.measure, c.grid, c.threads);
    const auto growth = compare_growth(cfg, Et, net.measure, c.grid);
    Outcome o;
    o.table.columns = {"total_energy", "Es", "snr", "total_info", "fixed_density_info",
                       "fixed_density_side"};
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      const auto& p = s.points[i];
      o.table.add({p.total_energy, p.Es, p.snr, p.total_info, growth[i].fixed_density_info,
                   growth[i].fixed_density_side});
    }
    o.results = {{"communication_floor", s.communication_floor}, {"increments", s.increments}};
    o.summary = "communication floor " + fmt(s.communication_floor) + " J\nincrements:";
    for (double v : s.increments) o.summary += " " + fmt(v);
    o.summary += "\n";
    return o;
  }
};

// Every option of the selected subcommand and the global options, as given
// or defaulted, keyed by name.
json config_of(const CLI::App& app, const CLI::App* sub) {
  json cfg = json::object();
  auto collect = [&](const CLI::App& a) {
    for (const CLI::Option* opt : a.get_options()) {
      if (opt->get_lnames().empty()) continue;
      const std::string key = opt->get_lnames().front();
      if (key == "help" || key == "version" || key == "config") continue;
      if (opt->count() > 0) {
        const auto res = opt->results();
        if (opt->get_expected_max() > 1) {
          cfg[key] = res;
        } else {
          cfg[key] = res.empty() ? "true" : res.back();
        }
      } else {
        cfg[key] = opt->get_default_str();
      }
    }
  };
  collect(app);
  if (sub != nullptr) collect(*sub);
  return cfg;
}

void write_outputs(const Outcome& o, const Common& common, const json& meta,
                   std::ostream& out, std::ostream& err) {
  if (common.output == "-") {
    emit_plotdata(o.table, out);
    err << o.summary;
    return;
  }
  const std::filesystem::path csv(common.output);
  emit_plotdata(o.table, csv);
  const std::filesystem::path sidecar(common.output + ".meta.json");
  std::ofstream f(sidecar);
  if (!f) throw std::ios_base::failure("cannot open " + sidecar.string());
  f << meta.dump(2) << "\n";
  if (!f) throw std::ios_base::failure("write to " + sidecar.string() + " failed");
  out << o.summary << "wrote " << csv.string() << " and " << sidecar.string() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Information rates of hidden Gauss-Markov fields and sensor-network scaling",
               "gmrfinfo"};
  app.option_defaults()->always_capture_default();
  app.set_version_flag("--version", GMRFINFO_VERSION);
  app.set_config("--config", "", "Read options from a TOML or INI file");
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--grid", common.grid, "Quadrature grid side (even, >= 4)")
      ->check(CLI::Range(4, 1 << 14));
  app.add_option("--seed", common.seed, "Monte Carlo seed");
  app.add_option("--threads", common.threads, "Worker threads (default: GMRFINFO_THREADS or all)")
      ->envname("GMRFINFO_THREADS");
  app.add_option("--output,-o", common.output,
                 "CSV path; a .meta.json sidecar is written next to it. '-' writes CSV to stdout");

  RatesCmd rates;
  SweepZetaCmd sweep_zeta;
  SweepSnrCmd sweep_snr;
  McVerifyCmd mc;
  ScalingCmd scaling;
  SpacingCmd spacing;
  DensityCmd density;
  OptimalDensityCmd optimal;
  EnergyCmd energy;

  std::vector<std::pair<CLI::App*, std::function<Outcome(const Common&)>>> commands;
  auto add = [&](const char* name, const char* help, auto& cmd) {
    CLI::App* sub = app.add_subcommand(name, help);
    cmd.attach(sub);
    commands.emplace_back(sub, [&cmd](const Common& c) { return cmd.run(c); });
  };
  add("rates", "Per-node KLI and MI rates of the hidden SFCAR field", rates);
  add("sweep-zeta", "Rates against edge dependence at one SNR", sweep_zeta);
  add("sweep-snr", "KLI-maximising edge dependence against SNR", sweep_snr);
  add("mc-verify", "Monte Carlo and dense-matrix checks of the rate limits", mc);
  add("scaling", "Fixed-density network growth: efficiency and energy scaling", scaling);
  add("spacing", "Per-node rate against sensor spacing", spacing);
  add("density", "Fixed area with growing node density", density);
  add("optimal-density", "Density maximising total information under an energy budget", optimal);
  add("energy", "Fixed network with growing energy budget", energy);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  if (common.grid % 2 != 0) {
    err << "error: --grid must be even\n";
    return 1;
  }

  for (auto& [sub, fn] : commands) {
    if (!sub->parsed()) continue;
    const std::string name = sub->get_name();
    if (common.output.empty()) common.output = name + ".csv";
    Outcome o;
    try {
      o = fn(common);
    } catch (const std::exception& e) {
      err << "error: " << name << ": " << e.what() << "\n";
      return 2;
    }
    json meta = {{"tool", "gmrfinfo"},
                 {"version", GMRFINFO_VERSION},
                 {"command", name},
                 {"seed", common.seed},
                 {"grid", common.grid},
                 {"rate_grid_check", 2 * common.grid},
                 {"threads", pool(common)},
                 {"kernels", std::string(kernels::active().name)},
                 {"columns", o.table.columns},
                 {"config", config_of(app, sub)},
                 {"results", o.results}};
    try {
      write_outputs(o, common, meta, out, err);
    } catch (const DomainError& e) {
      err << "error: " << name << ": " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      err << "error: " << name << ": " << e.what() << "\n";
      return 3;
    }
    return 0;
  }
  return 1;
}

}  // namespace gmrfinfo::cli
