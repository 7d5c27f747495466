#include "mubqt/fixtures.hpp"

#include <cmath>

namespace mubqt {

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all{
      {"psi7", {0.256, 0.362, 0.443, 0.473, 0.439, 0.352, 0.254}},
      {"psi8_1", {0.217, 0.308, 0.399, 0.456, 0.453, 0.393, 0.297, 0.202}},
      {"psi8_2", {0.343, 0.350, 0.355, 0.358, 0.359, 0.357, 0.354, 0.348}},
  };
  return all;
}

const Fixture& find_fixture(std::string_view name) {
  for (const auto& f : fixtures()) {
    if (f.name == name) return f;
  }
  throw InvalidArgument("unknown fixture '" + std::string(name) + "' (known: psi7, psi8_1, psi8_2)");
}

QuditVector fixture_state(std::string_view name) {
  const Fixture& f = find_fixture(name);
  ComplexVector c(static_cast<Eigen::Index>(f.amplitudes.size()));
  for (std::size_t j = 0; j < f.amplitudes.size(); ++j) c(static_cast<Eigen::Index>(j)) = f.amplitudes[j];
  const double norm = c.norm();
  if (std::abs(norm - 1.0) > kFixtureNormTolerance) {
    throw InvalidArgument("fixture '" + f.name + "' norm " + std::to_string(norm) + " is not within rounding of 1");
  }
  return QuditVector(c / norm);
}

}  // namespace mubqt
