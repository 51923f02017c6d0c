#include "qwalknet/conditional_engine.hpp"

#include <cmath>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>

namespace qwalknet {

ConditionalEnsemble::ConditionalEnsemble(NetworkSpec spec, std::vector<double> weights, CMatrix walks, Coin coin,
                                         int time)
    : spec_(std::move(spec)), weights_(std::move(weights)), walks_(std::move(walks)), coin_(coin), t_(time) {
  const int n = spec_.n_vertices();
  if (walks_.rows() != 2 * n || static_cast<std::uint64_t>(walks_.cols()) != spec_.basis_size() ||
      weights_.size() != spec_.basis_size()) {
    throw Error("ensemble dimensions do not match the network");
  }
  odd_masks_.resize(spec_.basis_size());
  for (std::uint64_t i = 0; i < spec_.basis_size(); ++i) odd_masks_[i] = odd_vertex_mask(EdgeBasisIndex(i, n));
}

WalkState ConditionalEnsemble::walk(std::uint64_t i) const {
  return WalkState(n_vertices(), walks_.col(static_cast<Eigen::Index>(i)));
}

void ConditionalEnsemble::advance() {
  const int n = n_vertices();
  tbb::parallel_for(tbb::blocked_range<std::uint64_t>(0, n_walks(), 256),
                    [&](const tbb::blocked_range<std::uint64_t>& r) {
                      std::vector<cplx> scratch(static_cast<std::size_t>(2 * n));
                      for (std::uint64_t i = r.begin(); i != r.end(); ++i) {
                        cplx* col = walks_.col(static_cast<Eigen::Index>(i)).data();
                        step_walk_in_place({col, static_cast<std::size_t>(2 * n)}, n, odd_masks_[i], coin_, scratch);
                      }
                    });
  ++t_;
}

ConditionalEnsemble init_ensemble(const NetworkSpec& spec, const CoinState& coin0, int n0,
                                  const EnsembleOptions& options) {
  const int n = spec.n_vertices();
  if (n0 < 0 || n0 >= n) throw Error("start position out of range");
  if (std::abs(coin0.norm() - 1.0) > 1e-9) throw Error("initial coin state is not normalized");
  std::vector<double> f = weights(spec);
  if (options.weight_cutoff > 0.0) {
    double kept = 0.0;
    for (double& w : f) {
      if (w * w < options.weight_cutoff) w = 0.0;
      kept += w * w;
    }
    if (kept <= 0.0) throw Error("weight cutoff removed every walk");
    for (double& w : f) w /= std::sqrt(kept);
  }
  CMatrix walks = CMatrix::Zero(2 * n, static_cast<Eigen::Index>(spec.basis_size()));
  walks.row(n0).setConstant(coin0.c0);
  walks.row(n + n0).setConstant(coin0.c1);
  return ConditionalEnsemble(spec, std::move(f), std::move(walks), options.coin, 0);
}

ConditionalEnsemble step_ensemble(const ConditionalEnsemble& ensemble) {
  ConditionalEnsemble next = ensemble;
  next.advance();
  return next;
}

std::vector<double> ensemble_distribution(const ConditionalEnsemble& ensemble) {
  const int n = ensemble.n_vertices();
  const CMatrix& w = ensemble.walks();
  std::vector<double> p(static_cast<std::size_t>(n), 0.0);
  // fixed order: walks outer, positions inner
  for (Eigen::Index i = 0; i < w.cols(); ++i) {
    const double f2 = ensemble.weights()[static_cast<std::size_t>(i)] * ensemble.weights()[static_cast<std::size_t>(i)];
    if (f2 == 0.0) continue;
    for (int pos = 0; pos < n; ++pos) {
      p[static_cast<std::size_t>(pos)] += f2 * (std::norm(w(pos, i)) + std::norm(w(n + pos, i)));
    }
  }
  return p;
}

CMatrix gram(const ConditionalEnsemble& ensemble) {
  // (W^dagger W)(j, i) = <W_j|W_i>
  return ensemble.walks().adjoint() * ensemble.walks();
}

DensityMatrix walker_density(const ConditionalEnsemble& ensemble) {
  const int n = ensemble.n_vertices();
  Eigen::VectorXd f = Eigen::Map<const Eigen::VectorXd>(ensemble.weights().data(),
                                                        static_cast<Eigen::Index>(ensemble.weights().size()));
  const CMatrix scaled = ensemble.walks() * f.cast<cplx>().asDiagonal();
  DensityMatrix rho{scaled * scaled.adjoint(), {}};
  for (int c = 0; c < 2; ++c) {
    for (int p = 0; p < n; ++p) rho.basis_labels.push_back("c" + std::to_string(c) + ",n" + std::to_string(p));
  }
  return rho;
}

DensityMatrix network_density(const ConditionalEnsemble& ensemble) {
  const int n = ensemble.n_vertices();
  Eigen::VectorXd f = Eigen::Map<const Eigen::VectorXd>(ensemble.weights().data(),
                                                        static_cast<Eigen::Index>(ensemble.weights().size()));
  // B(i, k) = f_i W_i(k); rho_G = B B^dagger
  const CMatrix b = f.cast<cplx>().asDiagonal() * ensemble.walks().transpose();
  DensityMatrix rho{b * b.adjoint(), {}};
  for (std::uint64_t i = 0; i < ensemble.n_walks(); ++i) rho.basis_labels.push_back(basis_string(i, n));
  return rho;
}

std::vector<std::vector<double>> distribution_series(const NetworkSpec& spec, const CoinState& coin0, int n0,
                                                     int steps) {
  ConditionalEnsemble ens = init_ensemble(spec, coin0, n0);
  std::vector<std::vector<double>> series;
  series.reserve(static_cast<std::size_t>(std::max(steps, 0)));
  for (int t = 1; t <= steps; ++t) {
    ens.advance();
    series.push_back(ensemble_distribution(ens));
  }
  return series;
}

}  // namespace qwalknet
