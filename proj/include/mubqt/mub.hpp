#pragma once

#include <string>
#include <vector>

#include "mubqt/types.hpp"

namespace mubqt {

/// One orthonormal measurement basis; vectors are the columns of `vectors`.
struct MubBasis {
  int alpha = 0;  // 0 is reserved for the computational (logical slit) basis
  ComplexMatrix vectors;

  int dim() const { return static_cast<int>(vectors.rows()); }
  QuditVector vector(int m) const { return QuditVector(vectors.col(m)); }
  /// Projector |psi_m><psi_m|.
  ComplexMatrix projector(int m) const { return vectors.col(m) * vectors.col(m).adjoint(); }
};

enum class FamilyProvenance { prime_formula, appendix_tables };

std::string to_string(FamilyProvenance p);

struct MubFamily {
  int dim = 0;
  std::vector<MubBasis> bases;
  FamilyProvenance provenance = FamilyProvenance::prime_formula;

  int projector_count() const { return dim * static_cast<int>(bases.size()); }
  /// Row of the basis with the given alpha; throws if absent.
  int row_of_alpha(int alpha) const;
};

/// Amplitude/phase programming of the two modulators for one basis vector.
struct ModulationSetting {
  std::vector<double> epsilons;  // SLM1 amplitude transmissions
  std::vector<double> phases;    // SLM2 phases in [0, 2pi)
};

struct PairCheck {
  int row_a = 0;
  int row_b = 0;
  double max_deviation = 0.0;  // max | |<a_m|b_n>|^2 - 1/D |
  bool pass = false;
};

struct CertificationReport {
  int dim = 0;
  int basis_count = 0;
  int projector_count = 0;
  double tolerance = 0.0;
  double max_orthonormality_deviation = 0.0;  // max over bases of ||U^dag U - I||_max
  double max_unbiasedness_deviation = 0.0;
  std::vector<double> orthonormality;  // per basis
  std::vector<PairCheck> pairs;
  bool pass = false;

  std::string to_text() const;
};

bool is_prime(int n);

/// m-th vector of the alpha-th quadratic-phase basis for odd prime D.
///
/// Coefficient at slit l is D^{-1/2} exp(-i phi), phi = 2 pi (alpha l^2 + m l) / D
/// reduced mod 2 pi. alpha in 1..D, m and l in -(D-1)/2..(D-1)/2.
QuditVector prime_mub_vector(int dim, int alpha, int m);

/// Phase phi_{m,l} of the quadratic-phase construction, reduced to [0, 2pi).
double prime_mub_phase(int dim, int alpha, int m, int l);

/// Computational basis (alpha = 0) followed by the D quadratic-phase bases.
MubFamily prime_mub_family(int dim);

/// The nine D = 8 bases obtained from the embedded appendix unitaries.
MubFamily dim8_mub_family();

/// The raw appendix unitaries U^(1..9), in table order.
std::vector<ComplexMatrix> dim8_appendix_unitaries();

/// Outcome of searching {I, U^(1..9)} for a mutually unbiased 9-subset.
struct Dim8Audit {
  // candidates[0] is the identity, candidates[k] is U^(k).
  std::vector<double> unitarity_deviation;
  // unbiased[a][b]: candidate a and b (column reading) are mutually unbiased.
  std::vector<std::vector<bool>> unbiased;
  // Every 9-subset of candidate indices that is pairwise unbiased.
  std::vector<std::vector<int>> complete_sets;
  bool columns_certify = false;
  bool rows_certify = false;

  std::string to_text() const;
};

Dim8Audit audit_dim8_tables(double tol = 1e-12);

/// Build a family for any dimension with an available construction.
/// Odd primes use the formula, D = 8 the tables. Others throw InvalidArgument.
MubFamily make_family(int dim, FamilyProvenance source);

CertificationReport verify_family(const MubFamily& family, double tol);

/// epsilon_l = |c_l|, phi_l = -arg(c_l) mod 2 pi. Requires a unit-norm vector.
ModulationSetting vector_to_modulation(const QuditVector& v);

/// Inverse of vector_to_modulation: c_l = epsilon_l exp(-i phi_l).
QuditVector modulation_to_vector(const ModulationSetting& s);

/// Three-qubit label of a D = 8 slit label (-7/2 -> "000", ..., 7/2 -> "111").
std::string qubit_labels(double label);

}  // namespace mubqt
