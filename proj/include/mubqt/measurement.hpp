#pragma once

#include <cstdint>
#include <vector>

#include "mubqt/mub.hpp"
#include "mubqt/optics.hpp"
#include "mubqt/types.hpp"

namespace mubqt {

class DensityOperator;

/// Projection probabilities p_m^(alpha): one row per basis of the family (in
/// family order), one column per basis vector.
struct ProbabilityTable {
  int dim = 0;
  std::vector<int> alphas;
  RealMatrix values;

  int rows() const { return static_cast<int>(values.rows()); }
  /// Largest |row sum - 1|.
  double max_row_sum_error() const;
};

struct CountTable {
  int dim = 0;
  std::vector<int> alphas;
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;
  double mean_peak_rate = 0.0;  // counts/s at unit probability
  double integration_time = 0.0;
  std::uint64_t seed = 0;

  int rows() const { return static_cast<int>(counts.rows()); }
};

enum class NoiseKind { none, poisson };

struct NoiseModel {
  NoiseKind kind = NoiseKind::poisson;
  std::uint64_t seed = 0;
};

/// Stateless counter-based seed derivation (splitmix64 of master + stream).
/// Every random stream in the library is seeded through this.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

ProbabilityTable ideal_probabilities(const QuditVector& state, const MubFamily& family);
ProbabilityTable ideal_probabilities(const DensityOperator& rho, const MubFamily& family);

/// Same table as ideal_probabilities(state), but every entry is obtained from
/// the simulated optics (modulators + point detector at x = 0), then each row
/// is normalized.
ProbabilityTable optical_probabilities(const QuditVector& state, const MubFamily& family,
                                       const ApertureGeometry& geom, const DetectorConfig& det = {});

/// One Poisson draw per projector with mean p * rate * time; NoiseKind::none
/// returns the rounded means.
CountTable simulate_counts(const ProbabilityTable& p, double mean_peak_rate, double integration_time,
                           const NoiseModel& noise);

/// Per-basis normalization: each row divided by its total.
ProbabilityTable normalize_counts(const CountTable& c);

/// All probabilities of basis alpha (odd prime D) from one far-field pattern.
///
/// The source state passes the phase modulator programmed with phi_{0,l}^(alpha)
/// (with image inversion). Vector m is read at x_m = m lambda f3 / (D d), where
/// the inter-slit phase is 2 pi m / D; the sinc^2 envelope is divided out and
/// the row normalized. Entry order matches m = -(D-1)/2 .. (D-1)/2.
std::vector<double> single_pattern_probabilities(const QuditVector& state, int alpha, const ApertureGeometry& geom);

/// Detector positions used by single_pattern_probabilities.
std::vector<double> single_pattern_positions(const ApertureGeometry& geom);

}  // namespace mubqt
