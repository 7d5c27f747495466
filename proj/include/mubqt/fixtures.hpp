#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mubqt/types.hpp"

namespace mubqt {

/// Expected experimental states, amplitudes as published (three decimals).
struct Fixture {
  std::string name;
  std::vector<double> amplitudes;  // source labeling, lowest slit first
};

// Rounding to three decimals leaves the norm off by up to ~1.5e-3.
inline constexpr double kFixtureNormTolerance = 2e-3;

const std::vector<Fixture>& fixtures();

/// Throws InvalidArgument for unknown names.
const Fixture& find_fixture(std::string_view name);

/// Normalized state of a fixture; throws if the published norm is off by more
/// than kFixtureNormTolerance.
QuditVector fixture_state(std::string_view name);

}  // namespace mubqt
