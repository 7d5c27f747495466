#include "mubqt/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace mubqt {

namespace {

constexpr double kDegeneracyTol = 1e-10;

Eigen::SelfAdjointEigenSolver<ComplexMatrix> eigensolve(const ComplexMatrix& m) {
  // symmetrize so tiny anti-Hermitian round-off never reaches the solver
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigendecomposition did not converge");
  return es;
}

void require_same_dim(int a, int b, const char* what) {
  if (a != b) throw InvalidArgument(std::string(what) + ": dimension mismatch");
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix m, bool raw) : matrix_(std::move(m)), raw_(raw) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) {
    throw InvalidArgument("DensityOperator: matrix must be square and non-empty");
  }
}

DensityOperator DensityOperator::pure(const QuditVector& psi) {
  return DensityOperator(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  return DensityOperator(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

RealVector DensityOperator::eigenvalues() const { return eigensolve(matrix_).eigenvalues(); }

DensityOperator linear_reconstruct(const ProbabilityTable& p, const MubFamily& family) {
  require_same_dim(p.dim, family.dim, "linear_reconstruct");
  if (p.rows() != static_cast<int>(family.bases.size()) || p.values.cols() != family.dim) {
    throw InvalidArgument("linear_reconstruct: table shape does not match the family");
  }
  const int d = family.dim;
  ComplexMatrix rho = -ComplexMatrix::Identity(d, d);
  for (int r = 0; r < p.rows(); ++r) {
    const ComplexMatrix& u = family.bases[r].vectors;
    // sum_m p_m |u_m><u_m| = U diag(p) U^dag
    rho.noalias() += u * p.values.row(r).transpose().cast<Complex>().asDiagonal() * u.adjoint();
  }
  return DensityOperator(std::move(rho), true);
}

DensityOperator force_physical(const DensityOperator& raw) {
  const auto es = eigensolve(raw.matrix());
  RealVector lambda = es.eigenvalues().cwiseMax(0.0);
  const double total = lambda.sum();
  if (!(total > 0.0)) throw NumericalError("force_physical: no positive eigenvalue to keep");
  lambda /= total;
  const ComplexMatrix& v = es.eigenvectors();
  ComplexMatrix rho = v * lambda.cast<Complex>().asDiagonal() * v.adjoint();
  return DensityOperator(0.5 * (rho + rho.adjoint()));
}

ForcedPurity force_purity(const DensityOperator& rho) {
  const auto es = eigensolve(rho.matrix());
  const int d = rho.dim();
  ComplexVector top = es.eigenvectors().col(d - 1);

  Eigen::Index pivot = 0;
  double best = -1.0;
  for (Eigen::Index j = 0; j < top.size(); ++j) {
    if (std::abs(top(j)) > best + 1e-12) {
      best = std::abs(top(j));
      pivot = j;
    }
  }
  top *= std::polar(1.0, -std::arg(top(pivot)));
  top(pivot) = std::abs(top(pivot));

  ForcedPurity out;
  out.state = QuditVector(top / top.norm());
  out.top_eigenvalue = es.eigenvalues()(d - 1);
  out.degenerate = d > 1 && out.top_eigenvalue - es.eigenvalues()(d - 2) < kDegeneracyTol;
  return out;
}

double fidelity(const QuditVector& psi, const DensityOperator& rho) {
  require_same_dim(psi.dim(), rho.dim(), "fidelity");
  const Complex f = psi.amplitudes().dot(rho.matrix() * psi.amplitudes());
  return std::clamp(f.real(), 0.0, 1.0);
}

double purity(const DensityOperator& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
  return rho.matrix().cwiseAbs2().sum();
}

ReconstructionResult reconstruct(const ProbabilityTable& p, const MubFamily& family) {
  ReconstructionResult res;
  res.raw = linear_reconstruct(p, family);
  const RealVector raw_eigs = res.raw.eigenvalues();
  res.min_raw_eigenvalue = raw_eigs.minCoeff();
  res.physical = force_physical(res.raw);
  res.physical_eigenvalues = res.physical.eigenvalues();
  const ForcedPurity fp = force_purity(res.physical);
  res.pure_forced = fp.state;

  std::ostringstream diag;
  diag << "min raw eigenvalue " << res.min_raw_eigenvalue;
  const auto negative = (raw_eigs.array() < 0.0).count();
  diag << "; clipped " << negative << " negative eigenvalue" << (negative == 1 ? "" : "s");
  diag << "; purity " << purity(res.physical);
  if (fp.degenerate) diag << "; warning: dominant eigenvalue is degenerate, forced-purity state chosen by tie-break";
  res.diagnostics = diag.str();
  return res;
}

double estimate_fidelity(const ProbabilityTable& p, const MubFamily& family, const QuditVector& expected,
                         Estimator estimator) {
  const DensityOperator phys = force_physical(linear_reconstruct(p, family));
  if (estimator == Estimator::physical) return fidelity(expected, phys);
  return fidelity(expected, DensityOperator::pure(force_purity(phys).state));
}

FidelityEstimate fidelity_with_errors(const CountTable& counts, const MubFamily& family, const QuditVector& expected,
                                      int n_trials, std::uint64_t seed, Estimator estimator) {
  if (n_trials < 100) throw InvalidArgument("fidelity_with_errors: need at least 100 trials");
  // surfaces zero-total rows before any resampling
  (void)normalize_counts(counts);

  std::vector<double> f(n_trials);
  CountTable trial = counts;
  for (int t = 0; t < n_trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    for (Eigen::Index r = 0; r < counts.counts.rows(); ++r) {
      for (Eigen::Index m = 0; m < counts.counts.cols(); ++m) {
        const auto observed = counts.counts(r, m);
        if (observed <= 0) {
          trial.counts(r, m) = 0;
          continue;
        }
        std::poisson_distribution<std::int64_t> draw(static_cast<double>(observed));
        trial.counts(r, m) = draw(rng);
      }
      // a resampled row can come back empty at tiny budgets; keep the observed row then
      if (trial.counts.row(r).sum() == 0) trial.counts.row(r) = counts.counts.row(r);
    }
    f[t] = estimate_fidelity(normalize_counts(trial), family, expected, estimator);
  }

  FidelityEstimate est;
  est.n_trials = n_trials;
  double mean = 0.0;
  for (double v : f) mean += v;
  mean /= n_trials;
  double var = 0.0;
  for (double v : f) var += (v - mean) * (v - mean);
  est.value = mean;
  est.sigma = std::sqrt(var / (n_trials - 1));
  return est;
}

}  // namespace mubqt
