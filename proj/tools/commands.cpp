#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <set>

#include "qwalknet/conditional_engine.hpp"
#include "qwalknet/estimator.hpp"
#include "qwalknet/exact_engine.hpp"
#include "qwalknet/io.hpp"
#include "qwalknet/observables.hpp"
#include "qwalknet/spectral.hpp"
#include "qwalknet/walker.hpp"

namespace qwalknet::cli {

namespace fs = std::filesystem;
using io::format_double;

namespace {

constexpr int kNegativityMaxConditional = 12;
constexpr int kNegativityMaxExact = 5;

std::string label_for(double alpha) {
  std::string s = format_double(alpha);
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

void emit(const CommandContext& ctx, const std::string& name, const std::string& content,
          nlohmann::json extra = nlohmann::json::object()) {
  nlohmann::json meta = {{"command_config", ctx.config.echo()}};
  meta.update(extra);
  io::write_with_meta(ctx.out_dir / name, content, meta);
}

void print_warnings(const ExperimentConfig& c) {
  for (const auto& w : c.warnings) std::cerr << "warning: " << w << "\n";
}

void append_series_row(std::string& out, int t, double value) {
  out += std::to_string(t) + "," + format_double(value) + "\n";
}

void append_distribution(std::string& out, int t, const Distribution& d) {
  for (std::size_t k = 0; k < d.size(); ++k) {
    out += std::to_string(t) + "," + std::to_string(d.labels[k]) + "," + format_double(d.probs[k]) + "\n";
  }
}

double saturation_mean(const std::vector<double>& values) {
  const std::size_t from = values.size() / 2;
  double s = 0.0;
  for (std::size_t k = from; k < values.size(); ++k) s += values[k];
  return values.size() > from ? s / static_cast<double>(values.size() - from) : 0.0;
}

}  // namespace

int cmd_simulate(const CommandContext& ctx) {
  const auto& cfg = ctx.config;
  print_warnings(cfg);
  const NetworkSpec spec = cfg.network();
  const int n = spec.n_vertices();
  const bool exact = cfg.engine == "exact";
  if (!exact && cfg.engine != "conditional") throw Error("unknown engine '" + cfg.engine + "'");
  if (cfg.t_max < 0) throw Error("t_max must be non-negative");
  if (exact && n > kDefaultExactCap) {
    throw CapacityError("dimension cap: exact engine limited to N <= " + std::to_string(kDefaultExactCap) +
                        " (requested N = " + std::to_string(n) + "); use the conditional engine");
  }
  const Bipartition cut = cfg.bipartition();
  const bool want_negativity =
      cfg.negativity && n <= (exact ? kNegativityMaxExact : kNegativityMaxConditional);
  if (cfg.negativity && !want_negativity) {
    std::cerr << "warning: negativity skipped for N=" << n << " with the " << cfg.engine << " engine\n";
  }
  if (cfg.gram_dump && (exact || n > 8)) throw Error("gram_dump needs the conditional engine and N <= 8");

  std::optional<Distribution> pi;
  if (n <= WalkStationaryTable::kMaxVertices) pi = stationary_conditional(spec, cfg.coin0, cfg.n0).pi;

  std::string dist_csv = "t,n,p\n", ent_csv = "t,value\n", neg_csv = "t,value\n", dist_d = "t,value\n";
  std::string gram_csv = "t,i,j,re,im\n";
  std::vector<double> entropy, negativity_series, distance;
  std::optional<RunningAverage> avg;
  Distribution last;

  auto record = [&](int t, const std::vector<double>& probs, double ee, std::optional<double> neg) {
    last = make_distribution(probs, cfg.n0);
    append_distribution(dist_csv, t, last);
    append_series_row(ent_csv, t, ee);
    entropy.push_back(ee);
    if (neg) {
      append_series_row(neg_csv, t, *neg);
      negativity_series.push_back(*neg);
    }
    if (t >= 1 && pi) {
      if (!avg) avg.emplace(last.labels);
      avg->add(last.probs);
      const double d = tv_distance(avg->current(), *pi);
      append_series_row(dist_d, t, d);
      distance.push_back(d);
    }
  };

  if (exact) {
    FullState state = init_full(spec, cfg.coin0, cfg.n0);
    const std::uint64_t qmask = physical_qubit_mask(cut);
    for (int t = 0; t <= cfg.t_max; ++t) {
      if (t > 0) state = step_full(state);
      std::optional<double> neg;
      if (want_negativity) neg = negativity_qubits(reduce_full(state, Subsystem::network).entries, qmask);
      record(t, position_distribution_full(state), von_neumann_entropy(reduce_full(state, Subsystem::walker)), neg);
    }
  } else {
    ConditionalEnsemble ens = init_ensemble(spec, cfg.coin0, cfg.n0);
    for (int t = 0; t <= cfg.t_max; ++t) {
      if (t > 0) ens.advance();
      std::optional<double> neg;
      if (want_negativity) neg = negativity(network_density(ens), cut);
      record(t, ensemble_distribution(ens), von_neumann_entropy(walker_density(ens)), neg);
      if (cfg.gram_dump) {
        const CMatrix g = gram(ens);
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
          for (Eigen::Index i = 0; i < g.rows(); ++i) {
            gram_csv += std::to_string(t) + "," + std::to_string(i) + "," + std::to_string(j) + "," +
                        format_double(g(i, j).real()) + "," + format_double(g(i, j).imag()) + "\n";
          }
        }
      }
    }
  }

  const nlohmann::json net = spec.to_json();
  emit(ctx, "distribution.csv", dist_csv, {{"network", net}});
  emit(ctx, "entropy.csv", ent_csv, {{"network", net}});
  if (want_negativity) emit(ctx, "negativity.csv", neg_csv, {{"network", net}});
  if (pi) emit(ctx, "distance.csv", dist_d, {{"network", net}});
  if (cfg.gram_dump) emit(ctx, "gram.csv", gram_csv, {{"network", net}});

  nlohmann::json summary = {{"engine", cfg.engine},
                            {"n_vertices", n},
                            {"t_max", cfg.t_max},
                            {"initial_network_entanglement", initial_network_entanglement(spec)},
                            {"entropy_saturation_mean", saturation_mean(entropy)}};
  if (want_negativity) {
    summary["negativity_saturation_mean"] = saturation_mean(negativity_series);
    summary["negativity_max"] = *std::max_element(negativity_series.begin(), negativity_series.end());
  }
  if (!distance.empty()) {
    summary["final_distance"] = distance.back();
    const auto t_pi = settling_time(distance, cfg.epsilon, cfg.window.value_or(n));
    summary["t_pi"] = t_pi ? nlohmann::json(*t_pi) : nlohmann::json(nullptr);
  }
  const auto peak = std::max_element(last.probs.begin(), last.probs.end()) - last.probs.begin();
  summary["final_peak_label"] = last.labels[static_cast<std::size_t>(peak)];
  emit(ctx, "summary.json", summary.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_stationary(const CommandContext& ctx) {
  const auto& cfg = ctx.config;
  print_warnings(cfg);
  const auto n_values = cfg.raw.value("n_values", std::vector<int>{cfg.n_vertices});
  const bool homogeneous_sweep = cfg.edge_alphas.empty() && !cfg.sampler;
  const auto alphas = homogeneous_sweep
                          ? cfg.raw.value("alphas", std::vector<double>{cfg.alpha.value_or(0.5)})
                          : std::vector<double>{};
  const std::string method = cfg.raw.value("method", std::string("conditional"));
  if (method != "conditional" && method != "full") throw Error("stationary method must be 'conditional' or 'full'");

  nlohmann::json moments_out = nlohmann::json::array();
  std::map<double, std::vector<std::pair<int, double>>> by_alpha;

  auto solve = [&](const NetworkSpec& spec, const WalkStationaryTable* table) {
    return method == "full" ? stationary_full(spec, cfg.coin0, cfg.n0) : table->combine(spec);
  };
  auto store = [&](const NetworkSpec& spec, const StationaryResult& r, const std::string& tag) {
    std::string csv = "n,pi\n";
    for (std::size_t k = 0; k < r.pi.size(); ++k) {
      csv += std::to_string(r.pi.labels[k]) + "," + format_double(r.pi.probs[k]) + "\n";
    }
    const std::string name = "stationary_N" + std::to_string(spec.n_vertices()) + "_" + tag + ".csv";
    emit(ctx, name, csv, {{"network", spec.to_json()}, {"method", method}});
    const MomentSummary m = moments(r.pi);
    moments_out.push_back({{"file", name},
                           {"n_vertices", spec.n_vertices()},
                           {"initial_network_entanglement", initial_network_entanglement(spec)},
                           {"mean", m.mean},
                           {"variance", m.variance},
                           {"second_moment", m.second_moment},
                           {"pi0", r.pi.at_label(0)},
                           {"degeneracy", r.degeneracy.to_json()}});
    return m;
  };

  for (int n : n_values) {
    std::optional<WalkStationaryTable> table;
    if (method == "conditional") table.emplace(n, cfg.coin0, cfg.n0);
    const WalkStationaryTable* tp = table ? &*table : nullptr;
    if (homogeneous_sweep) {
      for (double a : alphas) {
        const NetworkSpec spec = NetworkSpec::homogeneous(n, a);
        const MomentSummary m = store(spec, solve(spec, tp), "a" + label_for(a));
        by_alpha[a].push_back({n, m.variance});
      }
    } else {
      const NetworkSpec spec = cfg.network(n);
      store(spec, solve(spec, tp), "edges");
    }
  }
  emit(ctx, "moments.json", moments_out.dump(2) + "\n");

  std::set<int> distinct(n_values.begin(), n_values.end());
  if (homogeneous_sweep && distinct.size() >= 3) {
    nlohmann::json fits = nlohmann::json::array();
    for (const auto& [a, points] : by_alpha) {
      const ScalingFit f = variance_scaling_fit(points);
      fits.push_back({{"alpha", a}, {"a", f.a}, {"b", f.b}, {"residual", f.residual}});
    }
    emit(ctx, "fit.json", fits.dump(2) + "\n");
    std::cout << fits.dump(2) << "\n";
  } else {
    std::cout << moments_out.dump(2) << "\n";
  }
  return 0;
}

int cmd_estimate(const CommandContext& ctx) {
  const auto& cfg = ctx.config;
  print_warnings(cfg);
  const int n = cfg.n_vertices;
  nlohmann::json warnings = nlohmann::json::array();
  for (const auto& w : cfg.warnings) warnings.push_back(w);

  ReferenceCurve curve;
  if (cfg.raw.contains("curve")) {
    const std::string path = cfg.raw.at("curve").get<std::string>();
    if (!fs::exists(path)) throw Error("missing curve: " + path);
    curve = ReferenceCurve::from_csv(io::read_file(path));
    if (curve.n_vertices != n) throw Error("curve was built for N=" + std::to_string(curve.n_vertices));
  } else {
    std::vector<double> grid;
    for (int k = 0; k <= 50; ++k) grid.push_back(0.01 * k);
    grid = cfg.raw.value("alpha_grid", grid);
    curve = build_reference_curve(n, grid, cfg.coin0, cfg.n0);
  }
  emit(ctx, "reference_curve.csv", curve.to_csv());
  if (!curve.monotone) throw Error("reference curve is not strictly increasing; cannot invert");

  MeasurementRecord record;
  nlohmann::json truth = nullptr;
  if (cfg.raw.contains("record")) {
    record = MeasurementRecord::from_json(nlohmann::json::parse(io::read_file(cfg.raw.at("record").get<std::string>())));
  } else {
    const NetworkSpec spec = cfg.network();
    const int horizon = cfg.raw.value("horizon", 20 * n);
    const auto shots = cfg.raw.value("shots_per_time", std::int64_t{10000});
    record = simulate_shots(origin_series(spec, cfg.coin0, cfg.n0, horizon), shots, cfg.seed);
    truth = {{"initial_network_entanglement", initial_network_entanglement(spec)}, {"network", spec.to_json()}};
  }
  emit(ctx, "record.json", record.to_json().dump(2) + "\n");

  if (cfg.sampler && cfg.sampler->sigma_fraction > kHeterogeneityWarning) {
    warnings.push_back("heterogeneous network (sigma_fraction " + format_double(cfg.sampler->sigma_fraction) +
                       " > 0.2): the reference curve ignores edge spread and the estimate may be biased");
  }
  const AlphaEstimate est = estimate_alpha(record, curve);
  if (est.out_of_range) warnings.push_back("pi0_hat outside the reference curve range; estimate clamped");
  const double cost = cfg.raw.value("tomography_cost", kDefaultTomographyCost);
  nlohmann::json out = {{"estimate", est.to_json()},
                        {"budget", measurement_budget(record, n, cost).to_json()},
                        {"truth", truth},
                        {"warnings", warnings}};
  for (const auto& w : warnings) std::cerr << "warning: " << w.get<std::string>() << "\n";
  emit(ctx, "estimate.json", out.dump(2) + "\n");
  std::cout << out.dump(2) << "\n";
  return 0;
}

namespace {

struct Check {
  std::string name;
  double observed;
  double expected;
  double tolerance;
  bool pass() const { return std::abs(observed - expected) <= tolerance; }
};

Coin faulty_coin() {
  Coin c = hadamard_coin();
  c(1, 1) = -c(1, 1);
  return c;
}

}  // namespace

nlohmann::json run_verify_suite(bool inject_fault) {
  EnsembleOptions options;
  if (inject_fault) options.coin = faulty_coin();
  std::vector<Check> checks;
  const CoinState coin0 = CoinState::symmetric();

  {
    double worst = 0.0, spectra = 0.0;
    for (int n : {3, 5}) {
      const NetworkSpec spec = NetworkSpec::homogeneous(n, 0.3);
      FullState full = init_full(spec, coin0, 0);
      ConditionalEnsemble ens = init_ensemble(spec, coin0, 0, options);
      for (int t = 1; t <= 30; ++t) {
        full = step_full(full);
        ens.advance();
        const auto a = position_distribution_full(full);
        const auto b = ensemble_distribution(ens);
        for (int p = 0; p < n; ++p) worst = std::max(worst, std::abs(a[p] - b[p]));
      }
      const Eigen::VectorXd sa = Eigen::SelfAdjointEigenSolver<CMatrix>(reduce_full(full, Subsystem::walker).entries).eigenvalues();
      const Eigen::VectorXd sb = Eigen::SelfAdjointEigenSolver<CMatrix>(walker_density(ens).entries).eigenvalues();
      spectra = std::max(spectra, (sa - sb).cwiseAbs().maxCoeff());
    }
    checks.push_back({"oracle_equivalence_max_dp", worst, 0.0, 1e-10});
    checks.push_back({"walker_density_spectra", spectra, 0.0, 1e-9});
  }
  {
    double worst = 0.0;
    for (double a : {0.0, 0.1, 0.25, 0.5}) {
      const FullState s = init_full(NetworkSpec::homogeneous(4, a), coin0, 0);
      const auto [even, odd] = parity_probs_full(s, 0);
      worst = std::max({worst, std::abs(odd - 2 * a * (1 - a)), std::abs(even - (a * a + (1 - a) * (1 - a)))});
    }
    checks.push_back({"first_step_parity_law", worst, 0.0, 1e-12});
  }
  {
    const NetworkSpec spec = NetworkSpec::homogeneous(6, 0.3);
    ConditionalEnsemble ens = init_ensemble(spec, coin0, 0, options);
    const auto f = ens.weights();
    double worst = 0.0, norm = 0.0;
    for (int t = 1; t <= 100; ++t) {
      ens.advance();
      const CMatrix rho = network_density(ens).entries;
      for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        worst = std::max(worst, std::abs(rho(i, i).real() - f[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(i)]));
      }
      norm = std::max(norm, (ens.walks().colwise().norm().array() - 1.0).abs().maxCoeff());
    }
    checks.push_back({"network_diagonal_invariance", worst, 0.0, 1e-12});
    checks.push_back({"walk_norm_conservation", norm, 0.0, 1e-12});
  }
  {
    const std::uint64_t alternating = 0b010101;
    WalkState w = WalkState::localized(6, coin0, 0);
    const std::uint64_t mask = odd_vertex_mask(EdgeBasisIndex(alternating, 6));
    std::vector<cplx> scratch(12);
    step_walk_in_place({w.amplitudes().data(), 12}, 6, mask, options.coin, scratch);
    const double dev = std::max(std::abs(w.amplitude(0, 1) - cplx(0.5, 0.5)), std::abs(w.amplitude(1, 5) - cplx(0.5, -0.5)));
    checks.push_back({"interference_fixture_t1", dev, 0.0, 1e-12});
  }
  {
    double worst = 0.0;
    for (int n : {3, 4}) {
      const NetworkSpec spec = NetworkSpec::homogeneous(n, 0.3);
      const auto a = stationary_full(spec, coin0, 0).pi;
      const auto b = stationary_conditional(spec, coin0, 0).pi;
      for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a.probs[k] - b.probs[k]));
    }
    checks.push_back({"stationary_method_agreement", worst, 0.0, 1e-8});
  }

  nlohmann::json report = {{"fault_injected", inject_fault}, {"checks", nlohmann::json::array()}};
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass();
    report["checks"].push_back({{"name", c.name},
                                {"observed", c.observed},
                                {"expected", c.expected},
                                {"tolerance", c.tolerance},
                                {"pass", c.pass()}});
  }
  report["pass"] = all;
  return report;
}

int cmd_verify(const CommandContext& ctx) {
  const nlohmann::json report = run_verify_suite(ctx.inject_fault);
  emit(ctx, "verify.json", report.dump(2) + "\n");
  for (const auto& c : report["checks"]) {
    std::cout << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>()
              << " observed=" << format_double(c["observed"].get<double>())
              << " expected=" << format_double(c["expected"].get<double>())
              << " tol=" << format_double(c["tolerance"].get<double>()) << "\n";
  }
  return report["pass"].get<bool>() ? 0 : 1;
}

int cmd_dcqw(const CommandContext& ctx) {
  const auto& cfg = ctx.config;
  print_warnings(cfg);
  const std::string geometry = cfg.raw.value("geometry", std::string("line"));
  if (geometry != "line" && geometry != "ring") throw Error("geometry must be 'line' or 'ring'");
  const DcqwRun run = dcqw_run(geometry == "line" ? Geometry::line : Geometry::ring, cfg.n_vertices, cfg.coin0,
                               geometry == "line" ? 0 : cfg.n0, cfg.t_max);
  std::string csv = "t,n,p\n";
  for (std::size_t t = 0; t < run.distribution.size(); ++t) {
    for (std::size_t k = 0; k < run.labels.size(); ++k) {
      csv += std::to_string(t) + "," + std::to_string(run.labels[k]) + "," + format_double(run.distribution[t][k]) + "\n";
    }
  }
  emit(ctx, "dcqw.csv", csv, {{"geometry", geometry}});
  const auto& last = run.distribution.back();
  double mean = 0.0, second = 0.0;
  for (std::size_t k = 0; k < last.size(); ++k) {
    mean += last[k] * run.labels[k];
    second += last[k] * run.labels[k] * run.labels[k];
  }
  const nlohmann::json summary = {{"geometry", geometry}, {"steps", cfg.t_max}, {"mean", mean},
                                  {"sigma", std::sqrt(std::max(0.0, second - mean * mean))}};
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_fourier(const CommandContext& ctx) {
  const auto& cfg = ctx.config;
  const int n = cfg.n_vertices;
  const auto index = cfg.raw.value("index", std::uint64_t{1});
  const MomentumCoupling ring = momentum_coupling(dcqw_ring_step(n), n);
  const MomentumCoupling walk = momentum_coupling(EdgeBasisIndex(index, n));
  const nlohmann::json out = {
      {"n_vertices", n},
      {"dcqw_ring", {{"off_block_norm", ring.off_block_norm}, {"total_norm", ring.total_norm}, {"normalized", ring.normalized()}}},
      {"conditional_walk",
       {{"index", index}, {"basis", basis_string(index, n)}, {"off_block_norm", walk.off_block_norm},
        {"total_norm", walk.total_norm}, {"normalized", walk.normalized()}}}};
  emit(ctx, "fourier.json", out.dump(2) + "\n");
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace qwalknet::cli
