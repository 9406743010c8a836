#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lpball/linalg.hpp"
#include "lpball/pnorm.hpp"
#include "lpball/rng.hpp"
#include "lpball/sampling.hpp"

// Monte Carlo experiments for the volume limit theorems and the evaluable
// pieces of the deviation rate functions.
namespace lpball::limits {

/// What is subtracted from |<sqrt(N) v_i, u>|^q: its exact finite-N mean or
/// the Gaussian limit E|g|^q.
enum class Centering { exact_finite_n, asymptotic };

Centering parse_centering(std::string_view text);
std::string_view to_string(Centering c);

struct ExperimentConfig {
  BodyMode mode = BodyMode::projection;
  PNorm p = PNorm::infinity();
  std::size_t m = 1;
  std::size_t n = 1024;
  std::size_t replicates = 1000;
  std::size_t grid_resolution = 0;  // 0: default_grid_resolution(m)
  SeedSpec seed{kDefaultSeed, 0};   // replicate r uses stream seed.stream + r
  Centering centering = Centering::asymptotic;
  unsigned threads = 0;  // 0: one per hardware thread
};

struct QuantilePoint {
  double level;
  double value;
};

struct ExperimentReport {
  ExperimentConfig config;
  double mu = 0.0;        // asymptotic mean of the volume
  double sigma_sq = 0.0;  // asymptotic variance
  double centre = 0.0;    // value actually subtracted from the volumes
  double sample_mean = 0.0;
  double sample_variance = 0.0;
  double sample_skewness = 0.0;
  double ks_statistic = 0.0;
  std::optional<double> ks_p_value;  // empty below 1000 replicates
  std::vector<QuantilePoint> quantiles;
  std::vector<double> standardized;  // sqrt(N)(vol - centre)/sigma, by replicate
  double wall_time = 0.0;            // seconds
};

/// Z_N(u) = N^{-1/2} sum_i (|<sqrt(N) v_i, u>|^q - centre) on every grid
/// direction.
std::vector<double> empirical_process(const StiefelFrame& v, double q, const SphereGrid& grid, Centering centering);

/// Draws `replicates` frames, standardises the rescaled volumes with the
/// asymptotic mean and variance and tests them against N(0, 1). p = 2 is
/// rejected because the limit is degenerate.
ExperimentReport clt_experiment(const ExperimentConfig& config);

struct HausdorffRow {
  std::size_t n;
  double median;
  std::vector<double> distances;  // by replicate
};

struct HausdorffReport {
  ExperimentConfig config;  // n unused; the ladder is in rows
  double radius = 0.0;
  std::vector<HausdorffRow> rows;
  double wall_time = 0.0;
};

/// Median Hausdorff distance between the rescaled body and the limit ball
/// for every N in the ladder. Rung k, replicate r uses stream
/// seed.stream + (k << 32) + r.
HausdorffReport hausdorff_experiment(const ExperimentConfig& config, std::span<const std::size_t> ladder);

struct CovarianceReport {
  double empirical;       // sample covariance of Z_N(u), Z_N(v) over replicates
  double analytic;        // process_covariance(q, u, v)
  double standard_error;  // of the sample covariance
  double wall_time = 0.0;
};

/// Monte Carlo estimate of E[Z(u) Z(v)] from `replicates` frames of size
/// m x N, m = u.size(). Replicate r uses stream seed.stream + r.
CovarianceReport covariance_experiment(double q, std::span<const double> u, std::span<const double> v, std::size_t n,
                                       std::size_t replicates, SeedSpec seed, Centering centering,
                                       unsigned threads = 0);

/// Covariance of (|<g,u_1>|^q - E|g|^q, ..., |<g,u_k>|^q - E|g|^q, gg^T - Id)
/// with gg^T - Id vectorised over its upper triangle in row-major order
/// (0,0), (0,1), ..., (0,m-1), (1,1), ... Requires q in [1, 2) and pairwise
/// distinct, non-antipodal unit points.
linalg::Matrix mdp_covariance_matrix(double q, std::span<const std::vector<double>> points, std::size_t m);

/// Index of entry (s, t), s <= t, in the upper-triangle vectorisation.
std::size_t upper_index(std::size_t s, std::size_t t, std::size_t m);

struct MdpRate {
  double value;
  double condition_number;  // lambda_max / lambda_min of C
};

/// <u, C^{-1} u> / 2 through a Cholesky factorisation. Throws
/// DegenerateMatrix if C is singular to working precision.
MdpRate mdp_rate_quadratic(const linalg::Matrix& c, std::span<const double> uhat);

struct GaussianMeasure {
  linalg::Matrix covariance;  // mean zero
};

struct StiefelRate {
  double value;   // +inf when infeasible
  bool feasible;  // Id - covariance is positive semidefinite
};

/// H(nu | gamma^m) + Tr(Id - Sigma)/2 for centred Gaussian nu. Rejects
/// covariances that are not positive semidefinite.
StiefelRate stiefel_rate_gaussian(const GaussianMeasure& nu);

struct KsResult {
  double statistic;
  std::optional<double> p_value;  // empty below 1000 samples
};

/// Two-sided Kolmogorov-Smirnov test; the p-value is the asymptotic
/// Kolmogorov tail at sqrt(n) D. Needs at least 10 samples.
KsResult ks_statistic(std::span<const double> samples, const std::function<double(double)>& target_cdf);

/// P(K > t) for the Kolmogorov distribution.
double kolmogorov_survival(double t);

}  // namespace lpball::limits
