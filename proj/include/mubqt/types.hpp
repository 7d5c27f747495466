#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mubqt {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Error hierarchy. The CLI maps each kind onto a distinct exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: malformed config, wrong dimension, violated precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A measurement design failed its unbiasedness/orthonormality audit.
class CertificationError : public Error {
 public:
  using Error::Error;
};

// Numerical breakdown, e.g. a density operator with no positive eigenvalue.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Which labeling of the slit states the amplitudes are stored in.
///
/// `source` is the labeling of the slits at the first modulator. The 4f
/// imaging onto the second modulator inverts the image, so after the phase
/// stage amplitude of source slit l sits on label -l (`mirrored`).
enum class LabelOrder { source, mirrored };

/// Amplitude vector of a D-level spatial qudit.
///
/// Position j (0-based) carries the slit label l = j - (D-1)/2, i.e. the
/// integers -l_D..l_D for odd D and the half-integers -7/2..7/2 for D = 8.
class QuditVector {
 public:
  QuditVector() = default;
  explicit QuditVector(ComplexVector amplitudes, LabelOrder order = LabelOrder::source)
      : amplitudes_(std::move(amplitudes)), order_(order) {
    if (amplitudes_.size() < 1) throw InvalidArgument("QuditVector: dimension must be positive");
  }

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex operator[](int j) const { return amplitudes_(j); }
  LabelOrder order() const { return order_; }

  double norm() const { return amplitudes_.norm(); }
  bool is_normalized(double tol = 1e-12) const { return std::abs(amplitudes_.squaredNorm() - 1.0) <= tol; }

  QuditVector normalized() const {
    const double n = norm();
    if (n == 0.0) throw InvalidArgument("QuditVector: cannot normalize the zero vector");
    return QuditVector(amplitudes_ / n, order_);
  }

  /// Slit label of position j: j - (D-1)/2.
  static double label(int dim, int j) { return j - 0.5 * (dim - 1); }
  double label(int j) const { return label(dim(), j); }

 private:
  ComplexVector amplitudes_;
  LabelOrder order_ = LabelOrder::source;
};

/// |<a|b>|^2 for two vectors of equal dimension.
inline double overlap_squared(const ComplexVector& a, const ComplexVector& b) {
  return std::norm(a.dot(b));
}

}  // namespace mubqt
