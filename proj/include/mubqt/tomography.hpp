#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mubqt/measurement.hpp"
#include "mubqt/mub.hpp"
#include "mubqt/types.hpp"

namespace mubqt {

/// D x D Hermitian operator. `raw()` marks linear-inversion output, which may
/// have negative eigenvalues.
class DensityOperator {
 public:
  DensityOperator() = default;
  explicit DensityOperator(ComplexMatrix m, bool raw = false);

  static DensityOperator pure(const QuditVector& psi);
  static DensityOperator maximally_mixed(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  bool raw() const { return raw_; }
  double trace() const { return matrix_.trace().real(); }
  double hermiticity_error() const { return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff(); }
  /// Ascending eigenvalues.
  RealVector eigenvalues() const;

 private:
  ComplexMatrix matrix_;
  bool raw_ = false;
};

/// rho = sum_alpha sum_m p_m^(alpha) Pi_m^(alpha) - I. Exact inverse of
/// ideal_probabilities when the family is a complete set of D+1 MUBs.
DensityOperator linear_reconstruct(const ProbabilityTable& p, const MubFamily& family);

/// Clip negative eigenvalues to zero and rescale the rest to unit sum.
DensityOperator force_physical(const DensityOperator& raw);

struct ForcedPurity {
  QuditVector state;
  double top_eigenvalue = 0.0;
  bool degenerate = false;  // top eigenvalue within 1e-10 of the next one
};

/// Dominant eigenvector, phase fixed so its largest-magnitude entry is real
/// positive (earliest index wins among equal magnitudes).
ForcedPurity force_purity(const DensityOperator& rho);

/// <psi|rho|psi>, clamped to [0, 1].
double fidelity(const QuditVector& psi, const DensityOperator& rho);

/// Tr(rho^2).
double purity(const DensityOperator& rho);

struct ReconstructionResult {
  DensityOperator raw;
  DensityOperator physical;
  QuditVector pure_forced;
  double min_raw_eigenvalue = 0.0;
  RealVector physical_eigenvalues;
  std::string diagnostics;
};

ReconstructionResult reconstruct(const ProbabilityTable& p, const MubFamily& family);

/// Which estimate the bootstrap scores against the expected state.
enum class Estimator { physical, forced_purity };

struct FidelityEstimate {
  double value = 0.0;
  double sigma = 0.0;
  int n_trials = 0;
};

double estimate_fidelity(const ProbabilityTable& p, const MubFamily& family, const QuditVector& expected,
                         Estimator estimator);

/// Parametric bootstrap: every trial redraws each count as Poisson(observed),
/// then normalize -> linear inversion -> physical correction -> fidelity.
/// Trial t uses derive_seed(seed, t). Returns the trial mean and standard
/// deviation.
FidelityEstimate fidelity_with_errors(const CountTable& counts, const MubFamily& family, const QuditVector& expected,
                                      int n_trials, std::uint64_t seed, Estimator estimator = Estimator::physical);

}  // namespace mubqt
