#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mubqt/measurement.hpp"
#include "mubqt/mub.hpp"
#include "mubqt/optics.hpp"

namespace mubqt {

/// Config problem; the message carries the JSON path and, when it can be
/// located, the line in the source document.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// One experiment, read from a single JSON document.
///
///   {
///     "dim": 7,
///     "geometry": {"half_width": 52e-6, "spacing": 208e-6,
///                  "wavelength": 670e-9, "focal_length": 1.0},
///     "beam": {"kind": "gaussian", "waist": 8e-4, "center_offset": 0}
///             | {"kind": "uniform"} | {"fixture": "psi7"}
///             | {"amplitudes": [0.25, ...]}     (reals or [re, im] pairs),
///     "family": "prime" | "tables",
///     "noise": {"kind": "poisson", "seed": 42,
///               "mean_peak_rate": 10000, "integration_time": 1},
///     "detector": {"mode": "point", "slit_width": 20e-6},
///     "expected_state": "psi7" | [amplitudes],   (defaults to the prepared state)
///     "output": {"dir": "out"}
///   }
///
/// Every section except "dim" is optional; the defaults are the two-SLM
/// setup (a = 52 um, d = 208 um, 670 nm, f3 = 1 m) with Poisson noise at
/// 10^4 counts/s for 1 s.
struct ExperimentConfig {
  int dim = 0;
  ApertureGeometry geometry;
  BeamProfile beam;
  std::optional<QuditVector> explicit_state;  // from "fixture" or "amplitudes"
  FamilyProvenance family = FamilyProvenance::prime_formula;
  NoiseModel noise;
  double mean_peak_rate = 1e4;
  double integration_time = 1.0;
  DetectorConfig detector;
  std::optional<QuditVector> expected_state;
  std::filesystem::path output_dir = "out";
  std::vector<std::string> warnings;

  /// Source state entering the modulators (explicit amplitudes or beam profile).
  QuditVector source_state() const;
  /// Expected state for fidelity; the source state when none was given.
  QuditVector expected() const;
  MubFamily make_family() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace mubqt
