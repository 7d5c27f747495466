#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "mubqt/mub.hpp"
#include "oracles.hpp"

namespace test {

/// Qubit MUBs Z, X, Y written out by hand.
inline mubqt::MubFamily qubit_family() {
  using mubqt::Complex;
  const double s = 1.0 / std::sqrt(2.0);
  mubqt::MubFamily f;
  f.dim = 2;
  mubqt::ComplexMatrix z = mubqt::ComplexMatrix::Identity(2, 2);
  mubqt::ComplexMatrix x(2, 2), y(2, 2);
  x << s, s, s, -s;
  y << s, s, Complex(0, s), Complex(0, -s);
  f.bases = {{0, z}, {1, x}, {2, y}};
  return f;
}

inline std::vector<std::vector<oracle::Vec>> as_vectors(const mubqt::MubFamily& fam) {
  std::vector<std::vector<oracle::Vec>> out;
  for (const auto& b : fam.bases) {
    std::vector<oracle::Vec> vs;
    for (int m = 0; m < fam.dim; ++m) vs.push_back(oracle::to_vec(b.vectors.col(m)));
    out.push_back(std::move(vs));
  }
  return out;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("mubqt_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace test
