#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qwalknet/common.hpp"
#include "qwalknet/network.hpp"

namespace qwalknet {

// All entropies are in bits.

/// Eigenvalues below this are dropped from entropy sums.
inline constexpr double kEigenFloor = 1e-12;
/// Eigenvalues more negative than this reject the input as not a state.
inline constexpr double kNegativeEigenTolerance = 1e-10;

/// Spectrum of a density matrix, ascending. Validates Hermiticity and trace,
/// clamps small negative eigenvalues to zero.
Eigen::VectorXd density_spectrum(const CMatrix& rho);

double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const CMatrix& rho);

/// -a log2 a - (1-a) log2(1-a).
double binary_entropy(double a);

struct EntropyBounds {
  double lower;            // 0
  double concavity_upper;  // sum_e S(|alpha_e>) = H(f_i^2)
  double dimension_upper;  // log2(min(2N, 2^N))

  double tightest() const { return std::min(concavity_upper, dimension_upper); }
};

EntropyBounds entropy_bounds(const NetworkSpec& spec);

/// Partial transpose over the bits in `mask_a` of a matrix whose basis index
/// is a bit string: (i, j) -> (i', j') with the A bits of i and j exchanged.
CMatrix partial_transpose(const CMatrix& rho, std::uint64_t mask_a);

/// Sum of |l| over negative eigenvalues l of the partial transpose; values
/// above -kEigenFloor count as zero.
double negativity_from_partial_transpose(const CMatrix& rho_pt);

/// Negativity of rho_G in the parity-reduced edge basis across an l1 cut.
/// Equal to the physical-qubit negativity since |x> -> |xx> is local to each side.
double negativity(const DensityMatrix& rho_g, const Bipartition& cut);

/// Negativity of a density matrix on `n_qubits` qubits, part A given by qubit mask.
double negativity_qubits(const CMatrix& rho, std::uint64_t qubit_mask_a);

/// Qubit mask (edge-major qubit order) covering the edges of side A.
std::uint64_t physical_qubit_mask(const Bipartition& cut);

/// Negativity of one pure edge state cut through the middle: sqrt(a (1 - a)).
double pure_edge_negativity(double alpha);

/// Position distribution with symmetric labels.
struct Distribution {
  std::vector<double> probs;
  std::vector<int> labels;

  std::size_t size() const { return probs.size(); }
  double at_label(int label) const;
};

/// Labels internal positions relative to the start site n0.
Distribution make_distribution(std::vector<double> probs, int n0);

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;
  double second_moment = 0.0;
};

MomentSummary moments(const Distribution& dist);

struct ScalingFit {
  double a;
  double b;
  double residual;  // Euclidean norm of residuals
};

/// Least squares variance = a N^2 + b.
ScalingFit variance_scaling_fit(std::span<const std::pair<int, double>> points);

/// (1/2) sum |p - q|.
double tv_distance(const Distribution& p, const Distribution& q);

Distribution running_time_average(std::span<const Distribution> series);

/// Streaming form of running_time_average.
class RunningAverage {
 public:
  explicit RunningAverage(std::vector<int> labels) : labels_(std::move(labels)), sum_(labels_.size(), 0.0) {}
  void add(std::span<const double> probs);
  Distribution current() const;
  int count() const { return count_; }

 private:
  std::vector<int> labels_;
  std::vector<double> sum_;
  int count_ = 0;
};

}  // namespace qwalknet
