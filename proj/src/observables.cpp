#include "qwalknet/observables.hpp"

#include "qwalknet/walker.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qwalknet {

Eigen::VectorXd density_spectrum(const CMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) throw Error("density matrix must be square and non-empty");
  const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) throw Error("density matrix is not Hermitian (deviation " + std::to_string(asym) + ")");
  const double trace = rho.trace().real();
  if (std::abs(trace - 1.0) > 1e-8) throw Error("density matrix trace " + std::to_string(trace) + " != 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  Eigen::VectorXd w = es.eigenvalues();
  if (w.minCoeff() < -kNegativeEigenTolerance) {
    throw Error("density matrix has eigenvalue " + std::to_string(w.minCoeff()));
  }
  return w.cwiseMax(0.0);
}

double von_neumann_entropy(const CMatrix& rho) {
  const Eigen::VectorXd w = density_spectrum(rho);
  double s = 0.0;
  for (double l : w) {
    if (l > kEigenFloor) s -= l * std::log2(l);
  }
  return std::max(s, 0.0);
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.entries); }

double binary_entropy(double a) {
  double s = 0.0;
  if (a > 0.0) s -= a * std::log2(a);
  if (a < 1.0) s -= (1.0 - a) * std::log2(1.0 - a);
  return s;
}

EntropyBounds entropy_bounds(const NetworkSpec& spec) {
  double concavity = 0.0;
  for (double a : spec.edge_alphas()) concavity += binary_entropy(a);
  const int n = spec.n_vertices();
  const double dim = std::min(2.0 * n, std::exp2(n));
  return {0.0, concavity, std::log2(dim)};
}

CMatrix partial_transpose(const CMatrix& rho, std::uint64_t mask_a) {
  const Eigen::Index d = rho.rows();
  CMatrix out(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const auto uj = static_cast<std::uint64_t>(j);
    for (Eigen::Index i = 0; i < d; ++i) {
      const auto ui = static_cast<std::uint64_t>(i);
      const auto ip = static_cast<Eigen::Index>((ui & ~mask_a) | (uj & mask_a));
      const auto jp = static_cast<Eigen::Index>((uj & ~mask_a) | (ui & mask_a));
      out(ip, jp) = rho(i, j);
    }
  }
  return out;
}

double negativity_from_partial_transpose(const CMatrix& rho_pt) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_pt, Eigen::EigenvaluesOnly);
  double neg = 0.0;
  for (double l : es.eigenvalues()) {
    if (l < -kEigenFloor) neg -= l;
  }
  return neg;
}

double negativity(const DensityMatrix& rho_g, const Bipartition& cut) {
  if (cut.kind != CutKind::l1) {
    throw Error("reduced-basis negativity needs an l1 cut of whole edges; use pure_edge_negativity at t=0 "
                "or negativity_qubits on the full state for l3 cuts");
  }
  const int n = cut.n_edges();
  if (rho_g.dim() != static_cast<Eigen::Index>(std::uint64_t{1} << n)) {
    throw Error("rho_G dimension does not match the bipartition");
  }
  std::set<int> seen(cut.part_a_edges.begin(), cut.part_a_edges.end());
  for (int e : cut.part_b_edges) {
    if (!seen.insert(e).second) throw Error("bipartition parts overlap");
  }
  if (static_cast<int>(seen.size()) != n || *seen.begin() != 0 || *seen.rbegin() != n - 1) {
    throw Error("bipartition does not cover every edge");
  }
  return negativity_from_partial_transpose(partial_transpose(rho_g.entries, cut.part_a_mask()));
}

double negativity_qubits(const CMatrix& rho, std::uint64_t qubit_mask_a) {
  return negativity_from_partial_transpose(partial_transpose(rho, qubit_mask_a));
}

std::uint64_t physical_qubit_mask(const Bipartition& cut) {
  std::uint64_t m = 0;
  for (int e : cut.part_a_edges) m |= std::uint64_t{3} << (2 * e);
  return m;
}

double pure_edge_negativity(double alpha) {
  if (alpha < 0.0 || alpha > 1.0) throw Error("alpha outside [0, 1]");
  return std::sqrt(alpha * (1.0 - alpha));
}

double Distribution::at_label(int label) const {
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k] == label) return probs[k];
  }
  throw Error("label " + std::to_string(label) + " not in distribution");
}

Distribution make_distribution(std::vector<double> probs, int n0) {
  const int n = static_cast<int>(probs.size());
  if (n0 < 0 || n0 >= n) throw Error("start position out of range");
  Distribution d{std::move(probs), {}};
  for (int p = 0; p < n; ++p) d.labels.push_back(position_label(p, n0, n));
  return d;
}

MomentSummary moments(const Distribution& dist) {
  MomentSummary m;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    m.mean += dist.probs[k] * dist.labels[k];
    m.second_moment += dist.probs[k] * dist.labels[k] * dist.labels[k];
  }
  m.variance = std::max(0.0, m.second_moment - m.mean * m.mean);
  return m;
}

ScalingFit variance_scaling_fit(std::span<const std::pair<int, double>> points) {
  std::set<int> distinct;
  for (const auto& [n, v] : points) distinct.insert(n);
  if (distinct.size() < 3) throw Error("degenerate design: scaling fit needs at least three distinct N values");
  const auto m = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd design(m, 2);
  Eigen::VectorXd y(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double n = points[static_cast<std::size_t>(k)].first;
    design(k, 0) = n * n;
    design(k, 1) = 1.0;
    y[k] = points[static_cast<std::size_t>(k)].second;
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(y);
  return {coef[0], coef[1], (design * coef - y).norm()};
}

double tv_distance(const Distribution& p, const Distribution& q) {
  if (p.labels != q.labels) throw Error("distributions have different label sets");
  double d = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) d += std::abs(p.probs[k] - q.probs[k]);
  return d / 2.0;
}

Distribution running_time_average(std::span<const Distribution> series) {
  if (series.empty()) throw Error("running average of an empty series");
  RunningAverage avg(series.front().labels);
  for (const auto& d : series) {
    if (d.labels != series.front().labels) throw Error("series mixes label sets");
    avg.add(d.probs);
  }
  return avg.current();
}

void RunningAverage::add(std::span<const double> probs) {
  if (probs.size() != sum_.size()) throw Error("distribution size mismatch");
  for (std::size_t k = 0; k < sum_.size(); ++k) sum_[k] += probs[k];
  ++count_;
}

Distribution RunningAverage::current() const {
  if (count_ == 0) throw Error("running average has no samples");
  Distribution d{sum_, labels_};
  for (double& p : d.probs) p /= count_;
  return d;
}

}  // namespace qwalknet
