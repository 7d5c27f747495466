#include "mubqt/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mubqt::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_label(double label) {
  if (label == std::round(label)) return std::to_string(static_cast<long long>(std::llround(label)));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", label);
  return buf;
}

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

namespace {

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidArgument("expected a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_rows(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string table_csv(int dim, const std::vector<int>& alphas, Eigen::Index rows, Eigen::Index cols,
                      const auto& value) {
  std::ostringstream os;
  os << "alpha,m,value\n";
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index m = 0; m < cols; ++m) {
      os << alphas.at(r) << ',' << format_label(QuditVector::label(dim, static_cast<int>(m))) << ',' << value(r, m)
         << '\n';
    }
  }
  return os.str();
}

}  // namespace

json family_to_json(const MubFamily& family) {
  json bases = json::array();
  for (const auto& b : family.bases) {
    // vectors are columns of the basis matrix
    bases.push_back({{"alpha", b.alpha}, {"vectors", matrix_rows(b.vectors.transpose())}});
  }
  return {{"dim", family.dim}, {"provenance", to_string(family.provenance)}, {"bases", bases}};
}

MubFamily family_from_json(const json& j) {
  MubFamily f;
  f.dim = j.at("dim").get<int>();
  if (f.dim < 2) throw InvalidArgument("family json: dim must be at least 2");
  f.provenance = j.value("provenance", std::string("prime_formula")) == "appendix_tables"
                     ? FamilyProvenance::appendix_tables
                     : FamilyProvenance::prime_formula;
  for (const auto& jb : j.at("bases")) {
    MubBasis b;
    b.alpha = jb.at("alpha").get<int>();
    const auto& vecs = jb.at("vectors");
    if (static_cast<int>(vecs.size()) != f.dim) throw InvalidArgument("family json: basis needs dim vectors");
    b.vectors.resize(f.dim, f.dim);
    for (int m = 0; m < f.dim; ++m) {
      if (static_cast<int>(vecs[m].size()) != f.dim) throw InvalidArgument("family json: vector length != dim");
      for (int l = 0; l < f.dim; ++l) b.vectors(l, m) = complex_from_json(vecs[m][l]);
    }
    f.bases.push_back(std::move(b));
  }
  return f;
}

std::string modulation_csv(const MubFamily& family) {
  std::ostringstream os;
  os << "alpha,m,l,epsilon,phi_rad\n";
  for (const auto& b : family.bases) {
    for (int m = 0; m < family.dim; ++m) {
      const ModulationSetting s = vector_to_modulation(b.vector(m));
      for (int l = 0; l < family.dim; ++l) {
        os << b.alpha << ',' << format_label(QuditVector::label(family.dim, m)) << ','
           << format_label(QuditVector::label(family.dim, l)) << ',' << format_double(s.epsilons[l]) << ','
           << format_double(s.phases[l]) << '\n';
      }
    }
  }
  return os.str();
}

std::string probability_csv(const ProbabilityTable& p) {
  return table_csv(p.dim, p.alphas, p.values.rows(), p.values.cols(),
                   [&](Eigen::Index r, Eigen::Index m) { return format_double(p.values(r, m)); });
}

std::string count_csv(const CountTable& c) {
  return table_csv(c.dim, c.alphas, c.counts.rows(), c.counts.cols(),
                   [&](Eigen::Index r, Eigen::Index m) { return std::to_string(c.counts(r, m)); });
}

json counts_to_json(const CountTable& c) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < c.counts.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index m = 0; m < c.counts.cols(); ++m) row.push_back(c.counts(r, m));
    rows.push_back(std::move(row));
  }
  return {{"dim", c.dim},
          {"alphas", c.alphas},
          {"seed", c.seed},
          {"mean_peak_rate", c.mean_peak_rate},
          {"integration_time", c.integration_time},
          {"counts", rows}};
}

CountTable counts_from_json(const json& j) {
  CountTable c;
  c.dim = j.at("dim").get<int>();
  c.alphas = j.at("alphas").get<std::vector<int>>();
  c.seed = j.value("seed", std::uint64_t{0});
  c.mean_peak_rate = j.value("mean_peak_rate", 0.0);
  c.integration_time = j.value("integration_time", 0.0);
  const auto& rows = j.at("counts");
  if (rows.size() != c.alphas.size()) throw InvalidArgument("counts json: row count differs from alphas");
  c.counts.resize(static_cast<Eigen::Index>(rows.size()), c.dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != c.dim) throw InvalidArgument("counts json: row length != dim");
    for (int m = 0; m < c.dim; ++m) {
      const auto v = rows[r][m].get<std::int64_t>();
      if (v < 0) throw InvalidArgument("counts json: negative count");
      c.counts(static_cast<Eigen::Index>(r), m) = v;
    }
  }
  return c;
}

json density_to_json(const DensityOperator& rho) {
  return {{"dim", rho.dim()}, {"matrix", matrix_rows(rho.matrix())}};
}

DensityOperator density_from_json(const json& j) {
  const int d = j.at("dim").get<int>();
  const auto& rows = j.at("matrix");
  if (static_cast<int>(rows.size()) != d) throw InvalidArgument("density json: row count != dim");
  ComplexMatrix m(d, d);
  for (int r = 0; r < d; ++r) {
    if (static_cast<int>(rows[r].size()) != d) throw InvalidArgument("density json: row length != dim");
    for (int c = 0; c < d; ++c) m(r, c) = complex_from_json(rows[r][c]);
  }
  return DensityOperator(std::move(m));
}

json vector_to_json(const QuditVector& v) {
  json amps = json::array();
  for (int j = 0; j < v.dim(); ++j) amps.push_back(complex_to_json(v[j]));
  return {{"dim", v.dim()}, {"amplitudes", amps}};
}

json reconstruction_to_json(const ReconstructionResult& r) {
  std::vector<double> eig(r.physical_eigenvalues.data(), r.physical_eigenvalues.data() + r.physical_eigenvalues.size());
  return {{"raw", density_to_json(r.raw)},
          {"physical", density_to_json(r.physical)},
          {"pure_forced", vector_to_json(r.pure_forced)},
          {"min_raw_eigenvalue", r.min_raw_eigenvalue},
          {"eigenvalues", eig},
          {"diagnostics", r.diagnostics}};
}

std::string pattern_csv(const std::vector<PatternPoint>& pts) {
  std::ostringstream os;
  os << "x_meters,relative_rate\n";
  for (const auto& p : pts) os << format_double(p.x) << ',' << format_double(p.rate) << '\n';
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw InvalidArgument("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace mubqt::io
