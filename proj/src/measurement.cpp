#include "mubqt/measurement.hpp"

#include <cmath>
#include <random>
#include <string>

#include "mubqt/tomography.hpp"

namespace mubqt {

namespace {

void require_dim(int a, int b, const char* what) {
  if (a != b) {
    throw InvalidArgument(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                          std::to_string(b) + ")");
  }
}

ProbabilityTable empty_table(const MubFamily& family) {
  ProbabilityTable t;
  t.dim = family.dim;
  t.values.resize(static_cast<Eigen::Index>(family.bases.size()), family.dim);
  for (const auto& b : family.bases) t.alphas.push_back(b.alpha);
  return t;
}

}  // namespace

double ProbabilityTable::max_row_sum_error() const {
  if (values.rows() == 0) return 0.0;
  return (values.rowwise().sum().array() - 1.0).abs().maxCoeff();
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ProbabilityTable ideal_probabilities(const QuditVector& state, const MubFamily& family) {
  require_dim(state.dim(), family.dim, "ideal_probabilities");
  if (state.order() != LabelOrder::source) throw InvalidArgument("ideal_probabilities: state must be in source labeling");
  ProbabilityTable t = empty_table(family);
  for (std::size_t r = 0; r < family.bases.size(); ++r) {
    const ComplexVector amps = family.bases[r].vectors.adjoint() * state.amplitudes();
    t.values.row(static_cast<Eigen::Index>(r)) = amps.cwiseAbs2().transpose();
  }
  return t;
}

ProbabilityTable ideal_probabilities(const DensityOperator& rho, const MubFamily& family) {
  require_dim(rho.dim(), family.dim, "ideal_probabilities");
  ProbabilityTable t = empty_table(family);
  for (std::size_t r = 0; r < family.bases.size(); ++r) {
    const ComplexMatrix& u = family.bases[r].vectors;
    // diagonal of U^dag rho U
    const ComplexMatrix rotated = u.adjoint() * rho.matrix() * u;
    t.values.row(static_cast<Eigen::Index>(r)) = rotated.diagonal().real().transpose();
  }
  return t;
}

ProbabilityTable optical_probabilities(const QuditVector& state, const MubFamily& family,
                                       const ApertureGeometry& geom, const DetectorConfig& det) {
  require_dim(state.dim(), family.dim, "optical_probabilities");
  require_dim(geom.dim, family.dim, "optical_probabilities");
  ProbabilityTable t = empty_table(family);
  for (std::size_t r = 0; r < family.bases.size(); ++r) {
    for (int m = 0; m < family.dim; ++m) {
      t.values(static_cast<Eigen::Index>(r), m) = projection_rate(state, family.bases[r].vector(m), geom, det);
    }
    const double total = t.values.row(static_cast<Eigen::Index>(r)).sum();
    if (total <= 0.0) throw NumericalError("optical_probabilities: zero total rate for a basis");
    t.values.row(static_cast<Eigen::Index>(r)) /= total;
  }
  return t;
}

CountTable simulate_counts(const ProbabilityTable& p, double mean_peak_rate, double integration_time,
                           const NoiseModel& noise) {
  if (!(mean_peak_rate > 0.0 && integration_time > 0.0)) {
    throw InvalidArgument("simulate_counts: rate and integration time must be positive");
  }
  CountTable c;
  c.dim = p.dim;
  c.alphas = p.alphas;
  c.mean_peak_rate = mean_peak_rate;
  c.integration_time = integration_time;
  c.seed = noise.seed;
  c.counts.resize(p.values.rows(), p.values.cols());
  std::mt19937_64 rng(derive_seed(noise.seed, 0));
  for (Eigen::Index r = 0; r < p.values.rows(); ++r) {
    for (Eigen::Index m = 0; m < p.values.cols(); ++m) {
      const double mean = std::max(p.values(r, m), 0.0) * mean_peak_rate * integration_time;
      if (noise.kind == NoiseKind::none || mean == 0.0) {
        c.counts(r, m) = std::llround(mean);
      } else {
        std::poisson_distribution<std::int64_t> draw(mean);
        c.counts(r, m) = draw(rng);
      }
    }
  }
  return c;
}

ProbabilityTable normalize_counts(const CountTable& c) {
  ProbabilityTable t;
  t.dim = c.dim;
  t.alphas = c.alphas;
  t.values.resize(c.counts.rows(), c.counts.cols());
  for (Eigen::Index r = 0; r < c.counts.rows(); ++r) {
    const std::int64_t total = c.counts.row(r).sum();
    if (total <= 0) {
      const int alpha = r < static_cast<Eigen::Index>(c.alphas.size()) ? c.alphas[r] : static_cast<int>(r);
      throw InvalidArgument("normalize_counts: basis alpha = " + std::to_string(alpha) + " has no counts");
    }
    for (Eigen::Index m = 0; m < c.counts.cols(); ++m) {
      t.values(r, m) = static_cast<double>(c.counts(r, m)) / static_cast<double>(total);
    }
  }
  return t;
}

std::vector<double> single_pattern_positions(const ApertureGeometry& geom) {
  const int half = (geom.dim - 1) / 2;
  std::vector<double> xs;
  for (int m = -half; m <= half; ++m) xs.push_back(m * geom.fringe_period() / geom.dim);
  return xs;
}

std::vector<double> single_pattern_probabilities(const QuditVector& state, int alpha, const ApertureGeometry& geom) {
  const int dim = state.dim();
  if (dim % 2 == 0 || !is_prime(dim)) {
    throw InvalidArgument("single_pattern_probabilities: needs an odd prime dimension, got " + std::to_string(dim));
  }
  require_dim(dim, geom.dim, "single_pattern_probabilities");
  if (alpha < 1 || alpha > dim) throw InvalidArgument("single_pattern_probabilities: alpha out of range");

  const int half = (dim - 1) / 2;
  std::vector<double> thetas(dim);
  for (int j = 0; j < dim; ++j) thetas[j] = prime_mub_phase(dim, alpha, 0, j - half);
  const QuditVector modulated = apply_phase(state, thetas, true);

  const double k = geom.wavenumber();
  std::vector<double> row;
  double total = 0.0;
  for (double x : single_pattern_positions(geom)) {
    const double env = sinc(k * x * geom.half_width / geom.focal_length);
    const double p = count_rate(modulated, x, geom) / (env * env);
    row.push_back(p);
    total += p;
  }
  if (total <= 0.0) throw NumericalError("single_pattern_probabilities: pattern carries no signal");
  for (double& p : row) p /= total;
  return row;
}

}  // namespace mubqt
