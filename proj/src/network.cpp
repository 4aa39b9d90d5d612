#include "gmrfinfo/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gmrfinfo/corrmap.hpp"
#include "gmrfinfo/error.hpp"
#include "gmrfinfo/optimize.hpp"
#include "gmrfinfo/parallel.hpp"

namespace gmrfinfo {

namespace {

unsigned resolve(unsigned threads) { return threads == 0 ? default_threads() : threads; }

double link_energy(double E0, double dn, double nu) { return E0 * std::pow(dn, nu); }

// Energy of a fixed-density network with real side n.
double continuous_energy(double n, double Es, double link, EnergyModel model) {
  const double comm = model == EnergyModel::fusion ? n * n : hop_factor_continuous(n);
  return n * n * Es + comm * link;
}

// Real side n >= 1 whose continuous energy equals Et.
double side_for_energy(double Et, double Es, double link, EnergyModel model) {
  if (!(Et >= continuous_energy(1.0, Es, link, model))) {
    throw InfeasibleError("energy budget " + std::to_string(Et) + " J cannot power one node");
  }
  double lo = 1.0, hi = 2.0;
  while (continuous_energy(hi, Es, link, model) < Et) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (continuous_energy(mid, Es, link, model) < Et ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void NetworkConfig::validate() const {
  if (n < 2) throw DomainError("network needs at least 2 nodes per side");
  if (!(dn > 0.0)) throw DomainError("sensor spacing must be positive");
  if (!(Es >= 0.0)) throw DomainError("sensing energy must be non-negative");
  if (!(E0 > 0.0)) throw DomainError("radio constant E0 must be positive");
  if (!(nu >= 2.0)) throw DomainError("propagation loss factor must be >= 2");
  if (!(alpha > 0.0)) throw DomainError("diffusion rate must be positive");
  if (!(beta > 0.0)) throw DomainError("SNR gain beta must be positive");
}

std::uint64_t hop_sum(std::size_t n) {
  if (n < 1) throw DomainError("hop_sum needs n >= 1");
  const auto c = static_cast<std::int64_t>(n / 2);
  std::uint64_t total = 0;
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j) {
      total += static_cast<std::uint64_t>(std::abs(i - c) + std::abs(j - c));
    }
  }
  const std::uint64_t m = n;
  const std::uint64_t closed = (m % 2 == 1) ? m * (m - 1) * (m + 1) / 2 : m * m * m / 2;
  if (total != closed) {
    throw std::logic_error("hop_sum: enumeration disagrees with the closed form at n = " +
                           std::to_string(n));
  }
  return total;
}

double total_energy(const NetworkConfig& cfg) {
  cfg.validate();
  const double n2 = static_cast<double>(cfg.n * cfg.n);
  const double transmissions = cfg.energy_model == EnergyModel::fusion
                                   ? n2
                                   : static_cast<double>(hop_sum(cfg.n));
  return n2 * cfg.Es + transmissions * link_energy(cfg.E0, cfg.dn, cfg.nu);
}

double per_node_rate(Measure measure, double snr, EdgeDependence edge, std::size_t grid) {
  // One worker: sweeps parallelise over their points instead.
  return measure == Measure::kli ? kli_rate_sfcar(snr, edge, grid, 1)
                                 : mi_rate_sfcar(snr, edge, grid, 1);
}

NetworkReport network_report(const NetworkConfig& cfg, Measure measure, std::size_t grid) {
  cfg.validate();
  const PhysicalField field(cfg.alpha);
  const EdgeDependence edge = zeta_from_spacing(field, cfg.dn);
  NetworkReport r;
  r.n = cfg.n;
  r.dn = cfg.dn;
  r.snr = cfg.beta * cfg.Es;
  r.zeta = edge.zeta();
  r.rho = rho_from_spacing(field, cfg.dn);
  r.per_node_info = per_node_rate(measure, r.snr, edge, grid);
  r.total_info = static_cast<double>(cfg.n * cfg.n) * r.per_node_info;
  r.total_energy = total_energy(cfg);
  r.efficiency = r.total_info / r.total_energy;
  return r;
}

FixedDensitySweep sweep_fixed_density(const NetworkConfig& base,
                                      std::span<const std::size_t> n_list, Measure measure,
                                      std::size_t grid, unsigned threads) {
  FixedDensitySweep out;
  out.reports.resize(n_list.size());
  parallel_for(n_list.size(), resolve(threads), [&](std::size_t i) {
    NetworkConfig cfg = base;
    cfg.n = n_list[i];
    out.reports[i] = network_report(cfg, measure, grid);
  });
  std::vector<double> area, eta, energy, info;
  for (const auto& r : out.reports) {
    const double side = static_cast<double>(r.n) * r.dn;
    area.push_back(side * side);
    eta.push_back(r.efficiency);
    energy.push_back(r.total_energy);
    info.push_back(r.total_info);
  }
  out.efficiency_vs_area = fit_loglog_tail(area, eta);
  out.info_vs_energy = fit_loglog_tail(energy, info);
  return out;
}

PerNodeEnergySweep sweep_fixed_per_node_energy(const NetworkConfig& base,
                                               std::span<const std::size_t> n_list,
                                               Measure measure, std::size_t grid) {
  base.validate();
  if (n_list.empty()) throw DomainError("empty lattice-size list");
  const double link = link_energy(base.E0, base.dn, base.nu);
  const double n0 = static_cast<double>(*std::min_element(n_list.begin(), n_list.end()));
  const double comm0 = continuous_energy(n0, 0.0, link, base.energy_model);

  PerNodeEnergySweep out;
  out.per_node_energy = base.Es + comm0 / (n0 * n0);
  const double rate = per_node_rate(measure, base.beta * base.Es,
                                    zeta_from_spacing(PhysicalField(base.alpha), base.dn), grid);
  std::vector<double> nodes, per_node;
  for (std::size_t n : n_list) {
    PerNodeEnergyPoint p;
    p.nodes = static_cast<double>(n * n);
    p.total_energy = p.nodes * out.per_node_energy;
    p.n_effective = side_for_energy(p.total_energy, base.Es, link, base.energy_model);
    p.per_node_info = p.n_effective * p.n_effective * rate / p.nodes;
    out.points.push_back(p);
    nodes.push_back(p.nodes);
    per_node.push_back(p.per_node_info);
  }
  out.info_vs_nodes = fit_loglog_tail(nodes, per_node);
  return out;
}

SpacingSweep sweep_spacing(const NetworkConfig& base, std::span<const double> dn_list,
                           Measure measure, std::size_t grid, unsigned threads) {
  base.validate();
  const PhysicalField field(base.alpha);
  const double snr = base.beta * base.Es;
  SpacingSweep out;
  out.limit = per_node_rate(measure, snr, EdgeDependence::from_zeta(0.0), grid);
  out.points.resize(dn_list.size());
  parallel_for(dn_list.size(), resolve(threads), [&](std::size_t i) {
    const double dn = dn_list[i];
    const double rate = per_node_rate(measure, snr, zeta_from_spacing(field, dn), grid);
    out.points[i] = {dn, rho_from_spacing(field, dn), rate, out.limit - rate};
  });
  std::vector<double> x, y;
  for (const auto& p : out.points) {
    if (p.gap_to_limit > 0.0) {
      x.push_back(p.dn);
      y.push_back(std::log(p.gap_to_limit / std::sqrt(p.dn)));
    }
  }
  if (x.size() >= 2) out.gap_fit = fit_line(x, y);
  return out;
}

DensitySweep sweep_infinite_density(double L, std::span<const double> mu_list, Measure measure,
                                    double snr, double alpha, std::size_t grid,
                                    unsigned threads) {
  if (!(L > 0.0)) throw DomainError("side length must be positive");
  if (mu_list.empty()) throw DomainError("empty density list");
  const PhysicalField field(alpha);
  DensitySweep out;
  out.points.resize(mu_list.size());
  parallel_for(mu_list.size(), resolve(threads), [&](std::size_t i) {
    const double mu = mu_list[i];
    if (!(mu > 0.0)) throw DomainError("densities must be positive");
    const double dn = 1.0 / std::sqrt(mu);
    const double rate = per_node_rate(measure, snr, zeta_from_spacing(field, dn), grid);
    out.points[i] = {mu, dn, rho_from_spacing(field, dn), rate, mu * rate};
  });
  const double top = std::max_element(mu_list.begin(), mu_list.end())[0] / 10.0;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
  int count = 0;
  for (const auto& p : out.points) {
    if (p.mu < top) continue;
    lo = std::min(lo, p.mu_rate);
    hi = std::max(hi, p.mu_rate);
    sum += p.mu_rate;
    ++count;
  }
  out.top_decade_variation = (hi - lo) / (sum / count);
  return out;
}

EnergySweep sweep_energy_fixed_all(const NetworkConfig& base, std::span<const double> Et_list,
                                   Measure measure, std::size_t grid, unsigned threads) {
  NetworkConfig silent = base;
  silent.Es = 0.0;
  EnergySweep out;
  out.communication_floor = total_energy(silent);
  const double n2 = static_cast<double>(base.n * base.n);
  for (double Et : Et_list) {
    if (!(Et >= out.communication_floor)) {
      throw InfeasibleError("energy budget " + std::to_string(Et) +
                            " J is below the communication floor of " +
                            std::to_string(out.communication_floor) + " J");
    }
  }
  const EdgeDependence edge = zeta_from_spacing(PhysicalField(base.alpha), base.dn);
  out.points.resize(Et_list.size());
  parallel_for(Et_list.size(), resolve(threads), [&](std::size_t i) {
    EnergyPoint p;
    p.total_energy = Et_list[i];
    p.Es = (p.total_energy - out.communication_floor) / n2;
    p.snr = base.beta * p.Es;
    p.total_info = n2 * per_node_rate(measure, p.snr, edge, grid);
    out.points[i] = p;
  });
  for (std::size_t i = 1; i < out.points.size(); ++i) {
    out.increments.push_back(out.points[i].total_info - out.points[i - 1].total_info);
  }
  return out;
}

std::vector<GrowthComparisonPoint> compare_growth(const NetworkConfig& base,
                                                  std::span<const double> Et_list,
                                                  Measure measure, std::size_t grid) {
  if (Et_list.empty()) throw DomainError("empty energy list");
  const EnergySweep fixed_area = sweep_energy_fixed_all(base, Et_list, measure, grid, 1);
  const double n2 = static_cast<double>(base.n * base.n);
  const double Et0 = *std::min_element(Et_list.begin(), Et_list.end());
  const double Es0 = (Et0 - fixed_area.communication_floor) / n2;
  const double link = link_energy(base.E0, base.dn, base.nu);
  const double rate = per_node_rate(measure, base.beta * Es0,
                                    zeta_from_spacing(PhysicalField(base.alpha), base.dn), grid);
  std::vector<GrowthComparisonPoint> out;
  for (const auto& p : fixed_area.points) {
    const double side = side_for_energy(p.total_energy, Es0, link, base.energy_model);
    out.push_back({p.total_energy, p.total_info, side * side * rate, side});
  }
  return out;
}

DensityCurvePoint density_point(const DensityProblem& p, double mu, std::size_t grid) {
  if (!(mu > 0.0)) throw DomainError("density must be positive");
  DensityCurvePoint c{};
  c.mu = mu;
  c.n = p.L * std::sqrt(mu);
  c.dn = p.L / c.n;
  const double comm = hop_factor_continuous(c.n) * link_energy(p.E0, c.dn, p.nu);
  c.Es = (p.Et - comm) / (c.n * c.n);
  const PhysicalField field(p.alpha);
  c.rho = rho_from_spacing(field, c.dn);
  c.feasible = c.Es >= 0.0;
  if (!c.feasible) return c;
  c.snr = p.beta * c.Es;
  c.total_info = c.n * c.n * per_node_rate(p.measure, c.snr, zeta_from_spacing(field, c.dn), grid);
  return c;
}

OptimalDensity optimal_density(const DensityProblem& p, std::span<const double> mu_grid,
                               std::size_t grid, unsigned threads) {
  if (mu_grid.size() < 3) throw DomainError("density grid needs at least three points");
  if (!std::is_sorted(mu_grid.begin(), mu_grid.end())) {
    throw DomainError("density grid must be increasing");
  }
  OptimalDensity out;
  out.curve.resize(mu_grid.size());
  parallel_for(mu_grid.size(), resolve(threads),
               [&](std::size_t i) { out.curve[i] = density_point(p, mu_grid[i], grid); });

  const auto& c = out.curve;
  std::size_t best = c.size();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].feasible && (best == c.size() || c[i].total_info > c[best].total_info)) best = i;
  }
  if (best == c.size()) {
    throw InfeasibleError("no density on the grid fits the energy budget");
  }
  out.mu_star = c[best].mu;
  out.info_star = c[best].total_info;

  const auto objective = [&](double log_mu) {
    const DensityCurvePoint q = density_point(p, std::exp(log_mu), grid);
    return q.feasible ? q.total_info : -std::numeric_limits<double>::infinity();
  };
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    if (!(c[i - 1].feasible && c[i].feasible && c[i + 1].feasible)) continue;
    if (!(c[i].total_info > c[i - 1].total_info && c[i].total_info >= c[i + 1].total_info)) {
      continue;
    }
    Maximum m = golden_section_max(objective, std::log(c[i - 1].mu), std::log(c[i + 1].mu), 1e-7);
    if (m.value < c[i].total_info) m = {std::log(c[i].mu), c[i].total_info};
    m.x = std::exp(m.x);
    out.local_maxima.push_back(m);
    if (m.value > out.info_star) {
      out.mu_star = m.x;
      out.info_star = m.value;
    }
  }
  return out;
}

std::vector<double> log_space(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw DomainError("log_space needs 0 < lo < hi, n >= 2");
  std::vector<double> v(n);
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::exp(a + step * static_cast<double>(i));
  v.front() = lo;
  v.back() = hi;
  return v;
}

}  // namespace gmrfinfo
