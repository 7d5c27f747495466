#include "mubqt/mub.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string_view>

namespace mubqt {

namespace {

enum class Scale { inv_sqrt8, inv_sqrt2, half };

struct SymbolicUnitary {
  Scale scale;
  std::array<std::string_view, 8> rows;
};

// Appendix unitaries U^(1)..U^(9) for the three-qubit-like D = 8 family.
// Entries are {0, 1, -1, i, -i} times the common scale; rows as printed.
constexpr std::array<SymbolicUnitary, 9> kDim8Tables{{
    {Scale::inv_sqrt8,
     {
         " 1 -i -1  i -1  i  1 -i",
         "-i  1  i -1  i -1 -i  1",
         "-i  1 -i  1  i -1  i -1",
         " 1 -i  1 -i -1  i -1  i",
         " 1 -i -1  i  1 -i -1  i",
         "-i  1  i -1 -i  1  i -1",
         "-i  1 -i  1 -i  1 -i  1",
         " 1 -i  1 -i  1 -i  1 -i",
     }},
    {Scale::inv_sqrt8,
     {
         " 1 -1 -1  1 -i  i  i -i",
         " 1  1 -1 -1 -i -i  i  i",
         "-1  1 -1  1  i -i  i -i",
         " 1  1  1  1 -i -i -i -i",
         "-i  i  i -i  1 -1 -1  1",
         "-i -i  i  i  1  1 -1 -1",
         " i -i  i -i -1  1 -1  1",
         "-i -i -i -i  1  1  1  1",
     }},
    {Scale::inv_sqrt2,
     {
         " 1  0 -1  0  0  0  0  0",
         " 0  i  0 -i  0  0  0  0",
         " 0  1  0  1  0  0  0  0",
         " i  0  i  0  0  0  0  0",
         " 0  0  0  0  1  0 -1  0",
         " 0  0  0  0  0  i  0 -i",
         " 0  0  0  0  0  1  0  1",
         " 0  0  0  0  i  0  i  0",
     }},
    {Scale::half,
     {
         " 1 -1  0  0 -1 -1  0  0",
         "-1  1  0  0 -1 -1  0  0",
         " 0  0  1 -1  0  0 -1 -1",
         " 0  0 -1  1  0  0 -1 -1",
         " 1  1  0  0 -1  1  0  0",
         " 1  1  0  0  1 -1  0  0",
         " 0  0  1  1  0  0 -1  1",
         " 0  0  1  1  0  0  1 -1",
     }},
    {Scale::inv_sqrt8,
     {
         " 1 -i -i -1 -1 -i  i -1",
         "-i  1 -1 -i -i -1 -1  i",
         "-i -1  1 -i  i -1 -1 -i",
         "-1 -i -i  1 -1  i -i -1",
         "-i  1 -1 -i  i  1  1 -i",
         " 1 -i -i -1  1  i -i  1",
         "-1 -i -i  1  1 -i  i  1",
         "-i -1  1 -i -i  1  1  i",
     }},
    {Scale::half,
     {
         " 1  0 -1  0 -1  0  1  0",
         " 0  i  0 -i  0 -i  0  i",
         " 1  0  1  0 -1  0 -1  0",
         " 0  i  0  i  0 -i  0 -i",
         " 0  1  0 -1  0  1  0 -1",
         " i  0 -i  0  i  0 -i  0",
         " 0  1  0  1  0  1  0  1",
         " i  0  i  0  i  0  i  0",
     }},
    {Scale::half,
     {
         " 1 -i  0  0 -1  i  0  0",
         "-i  1  0  0  i -1  0  0",
         " 0  0  1 -i  0  0 -1  i",
         " 0  0 -i  1  0  0  i -1",
         " 0  0  i  1  0  0  i  1",
         " 0  0  1  i  0  0  1  i",
         " i  1  0  0  i  1  0  0",
         " 1  i  0  0  1  i  0  0",
     }},
    {Scale::inv_sqrt8,
     {
         " 1 -1 -1  1 -1  1 -1  1",
         " 1  1 -1 -1 -1 -1 -1 -1",
         "-1  1  1 -1 -1  1 -1  1",
         "-1 -1  1  1 -1 -1 -1 -1",
         " 1 -1  1 -1 -1  1  1 -1",
         " 1  1  1  1 -1 -1  1  1",
         " 1 -1  1 -1  1 -1 -1  1",
         " 1  1  1  1  1  1 -1 -1",
     }},
    {Scale::half,
     {
         " 1  0 -i  0 -1  0  i  0",
         " 0  1  0 -i  0 -1  0  i",
         "-i  0  1  0  i  0 -1  0",
         " 0 -i  0  1  0  i  0 -1",
         "-i  0  1  0 -i  0  1  0",
         " 0 -i  0  1  0 -i  0  1",
         " 1  0 -i  0  1  0 -i  0",
         " 0  1  0 -i  0  1  0 -i",
     }},
}};

double scale_value(Scale s) {
  switch (s) {
    case Scale::inv_sqrt8: return 1.0 / std::sqrt(8.0);
    case Scale::inv_sqrt2: return 1.0 / std::sqrt(2.0);
    case Scale::half: return 0.5;
  }
  return 0.0;
}

Complex parse_unit_entry(std::string_view tok) {
  if (tok == "0") return {0.0, 0.0};
  if (tok == "1") return {1.0, 0.0};
  if (tok == "-1") return {-1.0, 0.0};
  if (tok == "i") return {0.0, 1.0};
  if (tok == "-i") return {0.0, -1.0};
  throw CertificationError("dim8 tables: unrecognized entry '" + std::string(tok) + "'");
}

ComplexMatrix load_table(const SymbolicUnitary& t) {
  ComplexMatrix u(8, 8);
  const double s = scale_value(t.scale);
  for (int r = 0; r < 8; ++r) {
    std::istringstream in{std::string(t.rows[r])};
    std::string tok;
    int c = 0;
    while (in >> tok) {
      if (c >= 8) throw CertificationError("dim8 tables: row with more than 8 entries");
      u(r, c++) = s * parse_unit_entry(tok);
    }
    if (c != 8) throw CertificationError("dim8 tables: row with fewer than 8 entries");
  }
  return u;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

double unitarity_deviation(const ComplexMatrix& u) {
  const auto n = u.cols();
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(n, n));
}

// max over all (m, n) of | |<a_m|b_n>|^2 - 1/D |
double unbiasedness_deviation(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double target = 1.0 / static_cast<double>(a.rows());
  const ComplexMatrix g = a.adjoint() * b;
  return (g.cwiseAbs2().array() - target).abs().maxCoeff();
}

double wrap_phase(double phi) {
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0.0) phi += kTwoPi;
  // fmod can land exactly on 2pi after the shift for tiny negative inputs
  if (phi >= kTwoPi) phi -= kTwoPi;
  return phi == 0.0 ? 0.0 : phi;  // no -0 in exported tables
}

void require_odd_prime(int dim) {
  if (dim % 2 == 0 || !is_prime(dim)) {
    throw InvalidArgument("quadratic-phase construction needs an odd prime dimension, got " +
                          std::to_string(dim));
  }
}

}  // namespace

std::string to_string(FamilyProvenance p) {
  return p == FamilyProvenance::prime_formula ? "prime_formula" : "appendix_tables";
}

int MubFamily::row_of_alpha(int alpha) const {
  for (std::size_t r = 0; r < bases.size(); ++r) {
    if (bases[r].alpha == alpha) return static_cast<int>(r);
  }
  throw InvalidArgument("family has no basis with alpha = " + std::to_string(alpha));
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

double prime_mub_phase(int dim, int alpha, int m, int l) {
  // integer arithmetic keeps the reduction exact before scaling by 2pi/D
  const long long num = static_cast<long long>(alpha) * l * l + static_cast<long long>(m) * l;
  const long long reduced = ((num % dim) + dim) % dim;
  return wrap_phase(kTwoPi * static_cast<double>(reduced) / dim);
}

QuditVector prime_mub_vector(int dim, int alpha, int m) {
  require_odd_prime(dim);
  const int half = (dim - 1) / 2;
  if (alpha < 1 || alpha > dim) {
    throw InvalidArgument("alpha must lie in 1.." + std::to_string(dim));
  }
  if (m < -half || m > half) {
    throw InvalidArgument("m must lie in -" + std::to_string(half) + ".." + std::to_string(half));
  }
  const double eps = 1.0 / std::sqrt(static_cast<double>(dim));
  ComplexVector c(dim);
  for (int j = 0; j < dim; ++j) {
    const int l = j - half;
    c(j) = std::polar(eps, -prime_mub_phase(dim, alpha, m, l));
  }
  return QuditVector(std::move(c));
}

MubFamily prime_mub_family(int dim) {
  require_odd_prime(dim);
  const int half = (dim - 1) / 2;
  MubFamily fam;
  fam.dim = dim;
  fam.provenance = FamilyProvenance::prime_formula;
  fam.bases.push_back({0, ComplexMatrix::Identity(dim, dim)});
  for (int alpha = 1; alpha <= dim; ++alpha) {
    ComplexMatrix u(dim, dim);
    for (int m = -half; m <= half; ++m) {
      u.col(m + half) = prime_mub_vector(dim, alpha, m).amplitudes();
    }
    fam.bases.push_back({alpha, std::move(u)});
  }
  return fam;
}

std::vector<ComplexMatrix> dim8_appendix_unitaries() {
  std::vector<ComplexMatrix> out;
  out.reserve(kDim8Tables.size());
  for (const auto& t : kDim8Tables) out.push_back(load_table(t));
  return out;
}

Dim8Audit audit_dim8_tables(double tol) {
  std::vector<ComplexMatrix> cand;
  cand.push_back(ComplexMatrix::Identity(8, 8));
  for (auto& u : dim8_appendix_unitaries()) cand.push_back(std::move(u));
  const int n = static_cast<int>(cand.size());

  Dim8Audit audit;
  for (const auto& u : cand) audit.unitarity_deviation.push_back(unitarity_deviation(u));

  auto pairwise = [&](bool transpose) {
    std::vector<std::vector<bool>> ok(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        const ComplexMatrix ua = transpose ? ComplexMatrix(cand[a].transpose()) : cand[a];
        const ComplexMatrix ub = transpose ? ComplexMatrix(cand[b].transpose()) : cand[b];
        ok[a][b] = unbiasedness_deviation(ua, ub) < tol;
      }
    }
    return ok;
  };
  auto complete_sets = [&](const std::vector<std::vector<bool>>& ok) {
    // a 9-subset of 10 candidates is determined by the one left out
    std::vector<std::vector<int>> sets;
    for (int skip = 0; skip < n; ++skip) {
      std::vector<int> s;
      for (int k = 0; k < n; ++k) {
        if (k != skip) s.push_back(k);
      }
      bool all = true;
      for (int a : s) {
        for (int b : s) {
          if (a != b && !ok[a][b]) all = false;
        }
      }
      if (all) sets.push_back(std::move(s));
    }
    return sets;
  };

  audit.unbiased = pairwise(false);
  audit.complete_sets = complete_sets(audit.unbiased);
  audit.columns_certify = !audit.complete_sets.empty();
  audit.rows_certify = !complete_sets(pairwise(true)).empty();
  return audit;
}

std::string Dim8Audit::to_text() const {
  std::ostringstream os;
  os << "D=8 appendix table audit (candidate 0 = identity, k = U^(k))\n";
  for (std::size_t k = 0; k < unitarity_deviation.size(); ++k) {
    os << "  candidate " << k << " max|U^dag U - I| = " << unitarity_deviation[k] << "\n";
  }
  os << "  pairwise unbiased (column reading):\n";
  for (const auto& row : unbiased) {
    os << "    ";
    for (bool b : row) os << (b ? '1' : '.');
    os << "\n";
  }
  os << "  column reading certifies: " << (columns_certify ? "yes" : "no") << "\n";
  os << "  row reading certifies: " << (rows_certify ? "yes" : "no") << "\n";
  for (const auto& s : complete_sets) {
    os << "  mutually unbiased 9-set: {";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << (s[i] == 0 ? std::string("I") : "U" + std::to_string(s[i]));
    os << "}\n";
  }
  return os.str();
}

MubFamily dim8_mub_family() {
  const Dim8Audit audit = audit_dim8_tables(1e-12);
  if (audit.complete_sets.size() != 1) {
    throw CertificationError("dim8 tables do not contain a unique mutually unbiased 9-set:\n" +
                             audit.to_text());
  }
  const auto unitaries = dim8_appendix_unitaries();
  MubFamily fam;
  fam.dim = 8;
  fam.provenance = FamilyProvenance::appendix_tables;
  for (int k : audit.complete_sets.front()) {
    if (k == 0) {
      fam.bases.push_back({0, ComplexMatrix::Identity(8, 8)});
    } else {
      fam.bases.push_back({k, unitaries[k - 1]});
    }
  }
  return fam;
}

MubFamily make_family(int dim, FamilyProvenance source) {
  if (source == FamilyProvenance::appendix_tables) {
    if (dim != 8) throw InvalidArgument("no construction available: appendix tables exist only for D = 8");
    return dim8_mub_family();
  }
  if (dim >= 3 && dim % 2 == 1 && is_prime(dim)) return prime_mub_family(dim);
  if (dim == 8) return dim8_mub_family();
  throw InvalidArgument("no construction available for D = " + std::to_string(dim) +
                        " (supported: odd primes, 8)");
}

CertificationReport verify_family(const MubFamily& family, double tol) {
  CertificationReport rep;
  rep.dim = family.dim;
  rep.basis_count = static_cast<int>(family.bases.size());
  rep.projector_count = family.projector_count();
  rep.tolerance = tol;
  bool ok = true;
  for (const auto& b : family.bases) {
    const double dev = unitarity_deviation(b.vectors);
    rep.orthonormality.push_back(dev);
    rep.max_orthonormality_deviation = std::max(rep.max_orthonormality_deviation, dev);
    ok = ok && dev < tol;
  }
  for (int a = 0; a < rep.basis_count; ++a) {
    for (int b = a + 1; b < rep.basis_count; ++b) {
      PairCheck pc;
      pc.row_a = a;
      pc.row_b = b;
      pc.max_deviation = unbiasedness_deviation(family.bases[a].vectors, family.bases[b].vectors);
      pc.pass = pc.max_deviation < tol;
      ok = ok && pc.pass;
      rep.max_unbiasedness_deviation = std::max(rep.max_unbiasedness_deviation, pc.max_deviation);
      rep.pairs.push_back(pc);
    }
  }
  rep.pass = ok;
  return rep;
}

std::string CertificationReport::to_text() const {
  std::ostringstream os;
  os.precision(3);
  os << "MUB certification: D=" << dim << ", bases=" << basis_count << ", projectors=" << projector_count
     << ", tol=" << tolerance << "\n";
  os << "max orthonormality deviation: " << max_orthonormality_deviation << "\n";
  os << "max |overlap^2 - 1/D|: " << max_unbiasedness_deviation << "\n";
  for (const auto& p : pairs) {
    if (!p.pass) {
      os << "FAIL pair (" << p.row_a << ", " << p.row_b << "): deviation " << p.max_deviation << "\n";
    }
  }
  os << "result: " << (pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

ModulationSetting vector_to_modulation(const QuditVector& v) {
  if (!v.is_normalized(1e-10)) throw InvalidArgument("vector_to_modulation: input vector is not normalized");
  ModulationSetting s;
  s.epsilons.reserve(v.dim());
  s.phases.reserve(v.dim());
  for (int j = 0; j < v.dim(); ++j) {
    const Complex c = v[j];
    s.epsilons.push_back(std::abs(c));
    s.phases.push_back(std::abs(c) == 0.0 ? 0.0 : wrap_phase(-std::arg(c)));
  }
  return s;
}

QuditVector modulation_to_vector(const ModulationSetting& s) {
  if (s.epsilons.size() != s.phases.size() || s.epsilons.empty()) {
    throw InvalidArgument("modulation_to_vector: epsilons and phases must have equal nonzero length");
  }
  ComplexVector c(static_cast<Eigen::Index>(s.epsilons.size()));
  for (std::size_t j = 0; j < s.epsilons.size(); ++j) c(j) = std::polar(s.epsilons[j], -s.phases[j]);
  return QuditVector(std::move(c));
}

std::string qubit_labels(double label) {
  const double shifted = label + 3.5;
  const double idx = std::round(shifted);
  if (std::abs(shifted - idx) > 1e-9 || idx < 0.0 || idx > 7.0) {
    throw InvalidArgument("qubit_labels: label must be one of -7/2, -5/2, ..., 7/2");
  }
  const int k = static_cast<int>(idx);
  std::string bits(3, '0');
  for (int b = 0; b < 3; ++b) {
    if (k & (1 << (2 - b))) bits[b] = '1';
  }
  return bits;
}

}  // namespace mubqt
