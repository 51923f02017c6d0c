#include "qwalknet/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "qwalknet/conditional_engine.hpp"
#include "qwalknet/io.hpp"
#include "qwalknet/spectral.hpp"

namespace qwalknet {

double sigma_max(double mean_alpha) { return std::sqrt(mean_alpha * (0.5 - mean_alpha)); }

NetworkSpec sample_inhomogeneous(const InhomogeneousSampler& sampler, int n_vertices) {
  const double m = sampler.mean_alpha;
  if (!(m > 0.0 && m < 0.5)) throw Error("mean_alpha must lie in (0, 0.5)");
  if (!(sampler.sigma_fraction >= 0.0 && sampler.sigma_fraction < 1.0)) {
    throw Error("infeasible sigma: sigma_fraction must lie in [0, 1); at 1 the law degenerates to two points");
  }
  if (sampler.sigma_fraction == 0.0) return NetworkSpec::homogeneous(n_vertices, m);

  // Beta(a, b) on [0, 1], scaled by 0.5.
  const double mu = 2.0 * m;
  const double sd = sampler.target_sigma();
  const double var = 4.0 * sd * sd;
  const double kappa = mu * (1.0 - mu) / var - 1.0;
  std::mt19937_64 rng(sampler.seed);
  std::gamma_distribution<double> ga(mu * kappa, 1.0);
  std::gamma_distribution<double> gb((1.0 - mu) * kappa, 1.0);

  std::vector<double> x(static_cast<std::size_t>(n_vertices));
  for (double& v : x) {
    const double a = ga(rng);
    const double b = gb(rng);
    v = std::clamp(0.5 * a / (a + b), 0.0, 0.5);
  }
  const double xbar = std::accumulate(x.begin(), x.end(), 0.0) / n_vertices;
  double ss = 0.0;
  for (double v : x) ss += (v - xbar) * (v - xbar);
  const double spread = std::sqrt(ss / n_vertices);
  double lambda = spread > 0.0 ? sd / spread : 0.0;
  for (double v : x) {
    const double dev = v - xbar;
    if (dev > 0.0) lambda = std::min(lambda, (0.5 - m) / dev);
    if (dev < 0.0) lambda = std::min(lambda, m / -dev);
  }
  for (double& v : x) v = std::clamp(m + lambda * (v - xbar), 0.0, 0.5);
  return NetworkSpec::make(n_vertices, std::move(x));
}

double MeasurementRecord::pi0_hat() const {
  if (times.empty() || shots_per_time <= 0) throw Error("empty measurement record");
  const double total = std::accumulate(counts_at_origin.begin(), counts_at_origin.end(), 0.0);
  return total / static_cast<double>(total_measurements());
}

double MeasurementRecord::standard_error() const {
  const double p = pi0_hat();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(total_measurements()));
}

nlohmann::json MeasurementRecord::to_json() const {
  return {{"times", times},
          {"shots_per_time", shots_per_time},
          {"counts_at_origin", counts_at_origin},
          {"seed", seed},
          {"total_measurements", total_measurements()}};
}

MeasurementRecord MeasurementRecord::from_json(const nlohmann::json& j) {
  MeasurementRecord r;
  r.times = j.at("times").get<std::vector<int>>();
  r.shots_per_time = j.at("shots_per_time").get<std::int64_t>();
  r.counts_at_origin = j.at("counts_at_origin").get<std::vector<std::int64_t>>();
  r.seed = j.value("seed", std::uint64_t{0});
  if (r.times.size() != r.counts_at_origin.size()) throw Error("times and counts_at_origin differ in length");
  for (auto c : r.counts_at_origin) {
    if (c < 0 || c > r.shots_per_time) throw Error("count outside [0, shots_per_time]");
  }
  return r;
}

MeasurementRecord simulate_shots(std::span<const double> p0_series, std::int64_t shots_per_time,
                                 std::uint64_t seed) {
  if (shots_per_time < 1) throw Error("shots_per_time must be positive");
  MeasurementRecord r;
  r.shots_per_time = shots_per_time;
  r.seed = seed;
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < p0_series.size(); ++k) {
    const double p = p0_series[k];
    if (!(p >= -1e-12 && p <= 1.0 + 1e-12)) throw Error("probability outside [0, 1]");
    std::binomial_distribution<std::int64_t> draw(shots_per_time, std::clamp(p, 0.0, 1.0));
    r.times.push_back(static_cast<int>(k) + 1);
    r.counts_at_origin.push_back(draw(rng));
  }
  return r;
}

nlohmann::json ReferenceCurve::header() const {
  return {{"n_vertices", n_vertices},
          {"coin", {{"c0", {coin.c0.real(), coin.c0.imag()}}, {"c1", {coin.c1.real(), coin.c1.imag()}}}},
          {"start_position", start_position},
          {"horizon", "infinite"},
          {"monotone", monotone}};
}

std::string ReferenceCurve::to_csv() const {
  std::string out = "# " + header().dump() + "\nalpha,pi0\n";
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    out += io::format_double(alpha[k]) + "," + io::format_double(pi0[k]) + "\n";
  }
  return out;
}

ReferenceCurve ReferenceCurve::from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  ReferenceCurve c;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw Error("reference curve: missing JSON header");
  const auto h = nlohmann::json::parse(line.substr(2));
  c.n_vertices = h.at("n_vertices").get<int>();
  c.start_position = h.value("start_position", 0);
  const auto& coin = h.at("coin");
  c.coin = {cplx(coin.at("c0")[0].get<double>(), coin.at("c0")[1].get<double>()),
            cplx(coin.at("c1")[0].get<double>(), coin.at("c1")[1].get<double>())};
  if (!std::getline(in, line) || line != "alpha,pi0") throw Error("reference curve: expected header alpha,pi0");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error("reference curve: malformed row '" + line + "'");
    c.alpha.push_back(std::stod(line.substr(0, comma)));
    c.pi0.push_back(std::stod(line.substr(comma + 1)));
  }
  c.monotone = !c.alpha.empty();
  for (std::size_t k = 1; k < c.alpha.size(); ++k) {
    if (!(c.alpha[k] > c.alpha[k - 1] && c.pi0[k] > c.pi0[k - 1])) c.monotone = false;
  }
  return c;
}

ReferenceCurve build_reference_curve(int n_vertices, std::span<const double> alpha_grid, const CoinState& coin0,
                                     int n0) {
  if (alpha_grid.empty()) throw Error("empty alpha grid");
  ReferenceCurve c;
  c.n_vertices = n_vertices;
  c.coin = coin0;
  c.start_position = n0;
  c.alpha.assign(alpha_grid.begin(), alpha_grid.end());
  std::sort(c.alpha.begin(), c.alpha.end());
  const WalkStationaryTable table(n_vertices, coin0, n0);
  for (double a : c.alpha) {
    if (a < 0.0 || a > 0.5) throw Error("alpha grid must lie in [0, 0.5]");
    c.pi0.push_back(table.combine(NetworkSpec::homogeneous(n_vertices, a)).pi.at_label(0));
  }
  c.monotone = true;
  for (std::size_t k = 1; k < c.alpha.size(); ++k) {
    if (!(c.alpha[k] > c.alpha[k - 1] && c.pi0[k] > c.pi0[k - 1])) c.monotone = false;
  }
  return c;
}

nlohmann::json AlphaEstimate::to_json() const {
  return {{"alpha_hat", alpha_hat},
          {"ci_low", ci_low},
          {"ci_high", ci_high},
          {"pi0_hat", pi0_hat},
          {"pi0_standard_error", pi0_standard_error},
          {"out_of_range", out_of_range}};
}

AlphaEstimate estimate_alpha(double pi0_hat, double pi0_standard_error, const ReferenceCurve& curve) {
  if (curve.alpha.size() < 2) throw Error("reference curve needs at least two points");
  if (!curve.monotone) throw Error("reference curve is not strictly increasing; cannot invert");
  AlphaEstimate e;
  e.pi0_hat = pi0_hat;
  e.pi0_standard_error = pi0_standard_error;
  const auto& xs = curve.alpha;
  const auto& ys = curve.pi0;
  std::size_t seg = 0;
  if (pi0_hat <= ys.front()) {
    e.out_of_range = pi0_hat < ys.front();
    e.alpha_hat = xs.front();
  } else if (pi0_hat >= ys.back()) {
    e.out_of_range = pi0_hat > ys.back();
    e.alpha_hat = xs.back();
    seg = ys.size() - 2;
  } else {
    seg = static_cast<std::size_t>(std::upper_bound(ys.begin(), ys.end(), pi0_hat) - ys.begin()) - 1;
    const double w = (pi0_hat - ys[seg]) / (ys[seg + 1] - ys[seg]);
    e.alpha_hat = xs[seg] + w * (xs[seg + 1] - xs[seg]);
  }
  const double slope = (ys[seg + 1] - ys[seg]) / (xs[seg + 1] - xs[seg]);
  const double half = 1.96 * pi0_standard_error / slope;
  e.ci_low = std::max(xs.front(), e.alpha_hat - half);
  e.ci_high = std::min(xs.back(), e.alpha_hat + half);
  return e;
}

AlphaEstimate estimate_alpha(const MeasurementRecord& record, const ReferenceCurve& curve) {
  return estimate_alpha(record.pi0_hat(), record.standard_error(), curve);
}

nlohmann::json BudgetReport::to_json() const {
  return {{"walk_measurements", walk_measurements},
          {"direct_measurements", direct_measurements},
          {"ratio", direct_measurements / static_cast<double>(walk_measurements)}};
}

BudgetReport measurement_budget(const MeasurementRecord& record, int n_vertices, double tomography_cost) {
  return {record.total_measurements(), tomography_cost * n_vertices};
}

std::vector<double> origin_series(const NetworkSpec& spec, const CoinState& coin0, int n0, int steps) {
  const auto series = distribution_series(spec, coin0, n0, steps);
  std::vector<double> p0;
  p0.reserve(series.size());
  for (const auto& p : series) p0.push_back(p[static_cast<std::size_t>(n0)]);
  return p0;
}

}  // namespace qwalknet
