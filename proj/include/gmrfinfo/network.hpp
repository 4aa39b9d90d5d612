#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gmrfinfo/fit.hpp"
#include "gmrfinfo/inforates.hpp"
#include "gmrfinfo/optimize.hpp"

namespace gmrfinfo {

enum class Measure { kli, mi };

enum class EnergyModel {
  min_hop,  ///< every reading is relayed hop by hop to the central node
  fusion,   ///< in-network fusion: one transmission per node
};

/// An n x n sensor lattice with spacing dn, routed to a central fusion node.
struct NetworkConfig {
  std::size_t n = 2;
  double dn = 1.0;     ///< metres
  double Es = 0.0;     ///< sensing energy per node, joules
  double E0 = 1.0;     ///< radio constant, joules per metre^nu
  double nu = 2.0;     ///< propagation loss exponent
  double alpha = 1.0;  ///< diffusion rate, 1/metres
  double beta = 1.0;   ///< SNR per joule of sensing energy
  EnergyModel energy_model = EnergyModel::min_hop;

  /// Throws DomainError when an invariant is violated.
  void validate() const;
};

struct NetworkReport {
  std::size_t n = 0;
  double dn = 0.0;
  double total_info = 0.0;    ///< nats
  double total_energy = 0.0;  ///< joules
  double efficiency = 0.0;    ///< nats per joule
  double per_node_info = 0.0;
  double snr = 0.0;
  double zeta = 0.0;
  double rho = 0.0;
};

/// Total hop count of minimum-hop routing to node (n/2, n/2), by
/// enumeration; checked against n(n-1)(n+1)/2 (odd) and n^3/2 (even).
std::uint64_t hop_sum(std::size_t n);

/// Energy of one reading per node plus its delivery to the fusion node.
double total_energy(const NetworkConfig& cfg);

/// Hop factor as a real function of n (odd-n closed form), for densities
/// where n is not rounded.
inline double hop_factor_continuous(double n) { return 0.5 * n * (n - 1.0) * (n + 1.0); }

double per_node_rate(Measure measure, double snr, EdgeDependence edge,
                     std::size_t grid = kDefaultRateGrid);

NetworkReport network_report(const NetworkConfig& cfg, Measure measure,
                             std::size_t grid = kDefaultRateGrid);

// --- fixed density, growing area ----------------------------------------

struct FixedDensitySweep {
  std::vector<NetworkReport> reports;
  LinearFit efficiency_vs_area;  ///< log eta against log (n dn)^2
  LinearFit info_vs_energy;      ///< log I_t against log E_t
};

/// One report per n at fixed dn and Es.
FixedDensitySweep sweep_fixed_density(const NetworkConfig& base, std::span<const std::size_t> n_list,
                                      Measure measure, std::size_t grid = kDefaultRateGrid,
                                      unsigned threads = 0);

struct PerNodeEnergyPoint {
  double nodes;          ///< N_t
  double total_energy;   ///< N_t * per-node energy
  double n_effective;    ///< side of the fixed-density network that spends it
  double per_node_info;  ///< its total information divided by N_t
};

struct PerNodeEnergySweep {
  double per_node_energy;
  std::vector<PerNodeEnergyPoint> points;
  LinearFit info_vs_nodes;  ///< log per-node info against log N_t
};

/// Fixed per-node energy: N_t = n^2 nodes bring E_t = N_t * Ebar, with Ebar
/// the sensing energy plus the per-node communication share at the
/// smallest n. The energy buys the fixed-density network whose total
/// energy equals E_t (side solved as a real number); its information is
/// shared over N_t.
PerNodeEnergySweep sweep_fixed_per_node_energy(const NetworkConfig& base,
                                               std::span<const std::size_t> n_list,
                                               Measure measure,
                                               std::size_t grid = kDefaultRateGrid);

// --- spacing -------------------------------------------------------------

struct SpacingPoint {
  double dn;
  double rho;
  double rate;
  double gap_to_limit;  ///< D - rate
};

struct SpacingSweep {
  double limit;  ///< decorrelated per-node rate D
  std::vector<SpacingPoint> points;
  /// log((D - rate) / sqrt(dn)) against dn; the slope estimates -alpha.
  LinearFit gap_fit;
};

SpacingSweep sweep_spacing(const NetworkConfig& base, std::span<const double> dn_list,
                           Measure measure, std::size_t grid = kDefaultRateGrid,
                           unsigned threads = 0);

// --- fixed area, growing density ----------------------------------------

struct DensityPoint {
  double mu;  ///< nodes per square metre
  double dn;
  double rho;
  double rate;
  double mu_rate;  ///< mu * per-node rate: total information per unit area
};

struct DensitySweep {
  std::vector<DensityPoint> points;
  /// (max - min) / mean of mu * rate over the top density decade.
  double top_decade_variation;
};

DensitySweep sweep_infinite_density(double L, std::span<const double> mu_list, Measure measure,
                                    double snr, double alpha, std::size_t grid = kDefaultRateGrid,
                                    unsigned threads = 0);

// --- fixed network, growing energy ---------------------------------------

struct EnergyPoint {
  double total_energy;
  double Es;
  double snr;
  double total_info;
};

struct EnergySweep {
  std::vector<EnergyPoint> points;
  double communication_floor;
  /// I_t(E_{k+1}) - I_t(E_k) for consecutive budgets.
  std::vector<double> increments;
};

/// Fixed n and dn; every joule above the communication floor goes to
/// sensing. Throws InfeasibleError for a budget below the floor.
EnergySweep sweep_energy_fixed_all(const NetworkConfig& base, std::span<const double> Et_list,
                                   Measure measure, std::size_t grid = kDefaultRateGrid,
                                   unsigned threads = 0);

struct GrowthComparisonPoint {
  double total_energy;
  double fixed_area_info;
  double fixed_density_info;
  double fixed_density_side;  ///< real-valued n of the grown network
};

/// At each budget, the fixed-area network (all surplus to sensing) against
/// a fixed-density network grown until it spends the budget, both starting
/// from the same per-node sensing energy at the smallest budget.
std::vector<GrowthComparisonPoint> compare_growth(const NetworkConfig& base,
                                                  std::span<const double> Et_list,
                                                  Measure measure,
                                                  std::size_t grid = kDefaultRateGrid);

// --- optimal density -----------------------------------------------------

struct DensityProblem {
  double L = 2.0;
  double Et = 50.0;
  double alpha = 100.0;
  double beta = 1.0;
  double E0 = 0.1;
  double nu = 2.0;
  Measure measure = Measure::kli;
};

struct DensityCurvePoint {
  double mu;
  bool feasible;
  double n;  ///< L sqrt(mu), not rounded
  double dn;
  double Es;
  double snr;
  double rho;
  double total_info;
};

struct OptimalDensity {
  double mu_star;
  double info_star;
  std::vector<DensityCurvePoint> curve;
  std::vector<Maximum> local_maxima;  ///< refined, in increasing mu
};

/// Total information at density mu under the energy budget, or a point
/// marked infeasible when communication alone exceeds it.
DensityCurvePoint density_point(const DensityProblem& p, double mu,
                                std::size_t grid = kDefaultRateGrid);

/// Evaluates the curve on mu_grid, lists interior local maxima refined by
/// golden section on log mu, and returns the best. Throws InfeasibleError
/// when no grid density fits the budget.
OptimalDensity optimal_density(const DensityProblem& p, std::span<const double> mu_grid,
                               std::size_t grid = kDefaultRateGrid, unsigned threads = 0);

/// n points evenly spaced in log between lo and hi inclusive.
std::vector<double> log_space(double lo, double hi, std::size_t n);

}  // namespace gmrfinfo
