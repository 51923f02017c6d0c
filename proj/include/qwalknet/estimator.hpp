#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwalknet/common.hpp"
#include "qwalknet/network.hpp"

namespace qwalknet {

/// Largest standard deviation of a variable on [0, 0.5] with the given mean.
double sigma_max(double mean_alpha);

struct InhomogeneousSampler {
  double mean_alpha = 0.25;
  double sigma_fraction = 0.0;  // of sigma_max(mean_alpha)
  std::uint64_t seed = 0;

  double target_sigma() const { return sigma_fraction * sigma_max(mean_alpha); }
};

/// Edge values from a Beta law on [0, 0.5] with the requested mean and
/// standard deviation, clamped, then mapped x -> mean + l (x - xbar). The
/// scale l brings the sample spread to the target unless that would leave
/// [0, 0.5], so the realized mean is always exactly mean_alpha.
NetworkSpec sample_inhomogeneous(const InhomogeneousSampler& sampler, int n_vertices);

struct MeasurementRecord {
  std::vector<int> times;
  std::int64_t shots_per_time = 0;
  std::vector<std::int64_t> counts_at_origin;
  std::uint64_t seed = 0;

  std::int64_t total_measurements() const {
    return shots_per_time * static_cast<std::int64_t>(times.size());
  }
  /// (sum of counts) / (T m_w).
  double pi0_hat() const;
  /// Binomial standard error of pi0_hat.
  double standard_error() const;

  nlohmann::json to_json() const;
  static MeasurementRecord from_json(const nlohmann::json& j);
};

/// One Binomial(m_w, p0(t)) draw per time t = 1..T.
MeasurementRecord simulate_shots(std::span<const double> p0_series, std::int64_t shots_per_time,
                                 std::uint64_t seed);

struct ReferenceCurve {
  int n_vertices = 0;
  CoinState coin;
  int start_position = 0;
  std::vector<double> alpha;
  std::vector<double> pi0;
  bool monotone = false;  // strictly increasing in alpha

  /// CSV "alpha,pi0" preceded by a "# {json}" header line.
  std::string to_csv() const;
  static ReferenceCurve from_csv(const std::string& text);
  nlohmann::json header() const;
};

/// pi_0(alpha) for homogeneous rings from the conditional stationary method.
ReferenceCurve build_reference_curve(int n_vertices, std::span<const double> alpha_grid,
                                     const CoinState& coin0 = CoinState::symmetric(), int n0 = 0);

struct AlphaEstimate {
  double alpha_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double pi0_hat = 0.0;
  double pi0_standard_error = 0.0;
  bool out_of_range = false;

  nlohmann::json to_json() const;
};

/// Inverts pi0_hat through the curve by linear interpolation; the 95% interval
/// comes from the binomial error of pi0_hat divided by the local slope.
AlphaEstimate estimate_alpha(const MeasurementRecord& record, const ReferenceCurve& curve);
AlphaEstimate estimate_alpha(double pi0_hat, double pi0_standard_error, const ReferenceCurve& curve);

inline constexpr double kDefaultTomographyCost = 1e5;
inline constexpr double kHeterogeneityWarning = 0.2;

struct BudgetReport {
  std::int64_t walk_measurements;  // m_w T
  double direct_measurements;      // m_e N

  nlohmann::json to_json() const;
};

BudgetReport measurement_budget(const MeasurementRecord& record, int n_vertices,
                                double tomography_cost = kDefaultTomographyCost);

/// Start-site probabilities p_{n0}(t), t = 1..steps.
std::vector<double> origin_series(const NetworkSpec& spec, const CoinState& coin0, int n0, int steps);

}  // namespace qwalknet
