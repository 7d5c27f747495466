#include "mubqt/optics.hpp"

#include <cmath>
#include <string>

#include <boost/math/tools/minima.hpp>

namespace mubqt {

void ApertureGeometry::validate() const {
  if (dim < 2) throw InvalidArgument("geometry: dim must be at least 2");
  if (!(half_width > 0.0 && spacing > 0.0 && wavelength > 0.0 && focal_length > 0.0)) {
    throw InvalidArgument("geometry: all lengths must be strictly positive");
  }
  if (2.0 * half_width > spacing) throw InvalidArgument("geometry: slits overlap (2a > d)");
}

void BeamProfile::validate() const {
  if (kind == BeamKind::gaussian && !(waist > 0.0)) throw InvalidArgument("beam: gaussian waist must be positive");
}

SlmModulation SlmModulation::identity(int dim) {
  return {std::vector<double>(dim, 1.0), std::vector<double>(dim, 0.0)};
}

SlmModulation SlmModulation::from_setting(const ModulationSetting& s) { return {s.epsilons, s.phases}; }

void SlmModulation::validate(int dim) const {
  if (static_cast<int>(lambdas.size()) != dim || static_cast<int>(thetas.size()) != dim) {
    throw InvalidArgument("modulation: expected " + std::to_string(dim) + " lambdas and thetas");
  }
  for (double l : lambdas) {
    if (!(l >= 0.0 && l <= 1.0 + 1e-12)) throw InvalidArgument("modulation: lambda outside [0, 1]");
  }
}

void DetectorConfig::validate() const {
  if (mode == DetectorMode::integrated && !(slit_width > 0.0)) {
    throw InvalidArgument("detector: slit width must be positive in integrated mode");
  }
  if (samples < 32) throw InvalidArgument("detector: need at least 32 quadrature samples");
}

QuditVector beam_amplitudes(const BeamProfile& profile, const ApertureGeometry& geom) {
  geom.validate();
  profile.validate();
  ComplexVector beta(geom.dim);
  if (profile.kind == BeamKind::uniform) {
    beta.setConstant(1.0 / std::sqrt(static_cast<double>(geom.dim)));
    return QuditVector(std::move(beta));
  }
  // I(x) = exp(-2 (x - x0)^2 / w^2); the slit integral is a difference of erfs,
  // the common prefactor w sqrt(pi/8) cancels in the normalization.
  const double s = std::sqrt(2.0) / profile.waist;
  for (int j = 0; j < geom.dim; ++j) {
    const double c = geom.slit_center(j) - profile.center_offset;
    const double power = std::erf(s * (c + geom.half_width)) - std::erf(s * (c - geom.half_width));
    beta(j) = std::sqrt(std::max(power, 0.0));
  }
  if (beta.norm() == 0.0) throw InvalidArgument("beam: no power falls on the aperture");
  return QuditVector(beta / beta.norm());
}

double fit_gaussian_waist(const QuditVector& target, const ApertureGeometry& geom, double center_offset,
                          double* max_deviation) {
  if (target.dim() != geom.dim) throw InvalidArgument("fit_gaussian_waist: dimension mismatch");
  const RealVector t = target.amplitudes().cwiseAbs();
  auto residual = [&](double log_w) {
    const BeamProfile p{BeamKind::gaussian, std::exp(log_w), center_offset};
    const RealVector b = beam_amplitudes(p, geom).amplitudes().real();
    return (b - t).squaredNorm();
  };
  // search over log-waist from a tenth of a slit to a thousand apertures wide
  const double lo = std::log(0.1 * geom.half_width);
  const double hi = std::log(1000.0 * geom.spacing * geom.dim);
  const auto [log_w, _] = boost::math::tools::brent_find_minima(residual, lo, hi, 40);
  const double w = std::exp(log_w);
  if (max_deviation != nullptr) {
    const RealVector b = beam_amplitudes({BeamKind::gaussian, w, center_offset}, geom).amplitudes().real();
    *max_deviation = (b - t).cwiseAbs().maxCoeff();
  }
  return w;
}

QuditVector transmitted_field(const QuditVector& beta, const std::vector<double>& lambdas) {
  if (static_cast<int>(lambdas.size()) != beta.dim()) {
    throw InvalidArgument("transmitted_field: expected " + std::to_string(beta.dim()) + " lambdas");
  }
  ComplexVector c = beta.amplitudes();
  for (int j = 0; j < beta.dim(); ++j) {
    const double l = lambdas[j];
    if (!(l >= 0.0 && l <= 1.0 + 1e-12)) throw InvalidArgument("transmitted_field: lambda outside [0, 1]");
    c(j) *= l;
  }
  return QuditVector(std::move(c), beta.order());
}

QuditVector prepare_state(const QuditVector& beta, const std::vector<double>& lambdas) {
  if (!beta.is_normalized(1e-9)) throw InvalidArgument("prepare_state: beam amplitudes are not normalized");
  const QuditVector field = transmitted_field(beta, lambdas);
  const double n = field.amplitudes().squaredNorm();
  if (n <= 0.0) throw InvalidArgument("prepare_state: zero transmission, no photon passes the aperture");
  return QuditVector(field.amplitudes() / std::sqrt(n), field.order());
}

QuditVector invert_labels(const QuditVector& state) {
  const LabelOrder flipped = state.order() == LabelOrder::source ? LabelOrder::mirrored : LabelOrder::source;
  return QuditVector(state.amplitudes().reverse(), flipped);
}

QuditVector apply_phase(const QuditVector& state, const std::vector<double>& thetas, bool invert) {
  if (static_cast<int>(thetas.size()) != state.dim()) {
    throw InvalidArgument("apply_phase: expected " + std::to_string(state.dim()) + " phases");
  }
  ComplexVector c = state.amplitudes();
  for (int j = 0; j < state.dim(); ++j) c(j) *= std::polar(1.0, thetas[j]);
  QuditVector out(std::move(c), state.order());
  return invert ? invert_labels(out) : out;
}

double sinc(double u) { return u == 0.0 ? 1.0 : std::sin(u) / u; }

namespace {

double point_rate(const QuditVector& state, double x, const ApertureGeometry& geom) {
  const double k = geom.wavenumber();
  const double u = k * x / geom.focal_length;
  // a mirrored vector holds source slit l at label -l
  const double sign = state.order() == LabelOrder::source ? 1.0 : -1.0;
  Complex field{0.0, 0.0};
  for (int j = 0; j < state.dim(); ++j) {
    field += state[j] * std::polar(1.0, sign * geom.slit_center(j) * u);
  }
  const double env = sinc(u * geom.half_width);
  return env * env * std::norm(field);
}

}  // namespace

double count_rate(const QuditVector& state, double x, const ApertureGeometry& geom, const DetectorConfig& det) {
  if (state.dim() != geom.dim) throw InvalidArgument("count_rate: state and geometry dimensions differ");
  if (det.mode == DetectorMode::point) return point_rate(state, x, geom);
  det.validate();
  const double h = det.slit_width / det.samples;
  double acc = 0.0;
  for (int s = 0; s < det.samples; ++s) {
    acc += point_rate(state, x - 0.5 * det.slit_width + (s + 0.5) * h, geom);
  }
  return acc / det.samples;
}

std::vector<PatternPoint> pattern(const QuditVector& state, double x_min, double x_max, int n_points,
                                  const ApertureGeometry& geom, const DetectorConfig& det) {
  if (n_points < 2) throw InvalidArgument("pattern: need at least 2 points");
  if (!(x_max > x_min)) throw InvalidArgument("pattern: empty range");
  std::vector<PatternPoint> out(n_points);
  const double step = (x_max - x_min) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    const double x = i + 1 == n_points ? x_max : x_min + i * step;
    out[i] = {x, count_rate(state, x, geom, det)};
  }
  return out;
}

double projection_rate(const QuditVector& state, const QuditVector& basis_vector, const ApertureGeometry& geom,
                       const DetectorConfig& det) {
  const ModulationSetting s = vector_to_modulation(basis_vector);
  const QuditVector field = transmitted_field(state, s.epsilons);
  return count_rate(apply_phase(field, s.phases, true), 0.0, geom, det);
}

}  // namespace mubqt
