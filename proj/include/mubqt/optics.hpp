#pragma once

#include <vector>

#include "mubqt/mub.hpp"
#include "mubqt/types.hpp"

namespace mubqt {

/// Multi-slit aperture addressed on the first modulator, plus the Fourier lens.
/// All lengths in meters.
struct ApertureGeometry {
  int dim = 7;
  double half_width = 52e-6;   // a; slit width is 2a
  double spacing = 208e-6;     // d, center-to-center
  double wavelength = 670e-9;
  double focal_length = 1.0;   // f3

  double wavenumber() const { return kTwoPi / wavelength; }
  /// Transverse center of slit position j.
  double slit_center(int j) const { return QuditVector::label(dim, j) * spacing; }
  /// Far-field distance between principal interference maxima, lambda f3 / d.
  double fringe_period() const { return wavelength * focal_length / spacing; }
  /// First zero of the single-slit envelope, lambda f3 / (2a).
  double envelope_first_zero() const { return wavelength * focal_length / (2.0 * half_width); }

  void validate() const;
};

enum class BeamKind { uniform, gaussian };

struct BeamProfile {
  BeamKind kind = BeamKind::uniform;
  double waist = 0.0;  // 1/e^2 intensity radius, gaussian only
  double center_offset = 0.0;

  void validate() const;
};

struct SlmModulation {
  std::vector<double> lambdas;  // sqrt of slit transmissions, in [0, 1]
  std::vector<double> thetas;   // image-plane phases

  static SlmModulation identity(int dim);
  static SlmModulation from_setting(const ModulationSetting& s);
  void validate(int dim) const;
};

enum class DetectorMode { point, integrated };

struct DetectorConfig {
  DetectorMode mode = DetectorMode::point;
  double slit_width = 20e-6;
  int samples = 64;  // midpoint quadrature nodes in integrated mode

  void validate() const;
};

/// Real nonnegative slit amplitudes of a collimated beam: square root of the
/// intensity integrated over each open slit, normalized.
QuditVector beam_amplitudes(const BeamProfile& profile, const ApertureGeometry& geom);

/// Gaussian waist (center offset held fixed) whose slit amplitudes best match
/// `target` in least squares. Returns the waist; `max_deviation` receives the
/// largest residual when non-null.
double fit_gaussian_waist(const QuditVector& target, const ApertureGeometry& geom, double center_offset = 0.0,
                          double* max_deviation = nullptr);

/// Field transmitted by the amplitude modulator: lambda_l beta_l, unnormalized.
/// Its squared norm is the transmission probability N.
QuditVector transmitted_field(const QuditVector& beta, const std::vector<double>& lambdas);

/// Post-selected state after amplitude modulation, lambda_l beta_l / sqrt(N).
/// Throws InvalidArgument when nothing is transmitted.
QuditVector prepare_state(const QuditVector& beta, const std::vector<double>& lambdas);

/// Image-plane phase modulation: c_l -> c_l exp(i theta_l). With `invert_labels`
/// the result is stored in the opposite label order (amplitude of l sits on -l).
/// Norm is preserved; only multiplication by unit phases happens.
QuditVector apply_phase(const QuditVector& state, const std::vector<double>& thetas, bool invert_labels);

/// Reverse the label order (l <-> -l) and toggle the order tag. An involution.
QuditVector invert_labels(const QuditVector& state);

/// sin(u)/u with sinc(0) = 1.
double sinc(double u);

/// Far-field single-count rate at transverse position x behind the Fourier lens:
///   sinc^2(k x a / f3) |sum_l c_l exp(i l d k x / f3)|^2
/// with c in source labeling (a mirrored vector is read back accordingly).
/// One fully open slit gives 1 at x = 0. The input is not renormalized, so a
/// transmitted_field() vector yields rates that include modulator losses.
double count_rate(const QuditVector& state, double x, const ApertureGeometry& geom,
                  const DetectorConfig& det = {});

struct PatternPoint {
  double x = 0.0;
  double rate = 0.0;
};

/// count_rate sampled at n_points uniform positions spanning [x_min, x_max].
std::vector<PatternPoint> pattern(const QuditVector& state, double x_min, double x_max, int n_points,
                                  const ApertureGeometry& geom, const DetectorConfig& det = {});

/// Full optical projection of `state` onto one basis vector: amplitude SLM set
/// to epsilon, phase SLM to phi (with image inversion), rate read at x = 0.
/// Equals |<psi|state>|^2 for the point detector.
double projection_rate(const QuditVector& state, const QuditVector& basis_vector, const ApertureGeometry& geom,
                       const DetectorConfig& det = {});

}  // namespace mubqt
