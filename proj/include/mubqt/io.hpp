#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mubqt/measurement.hpp"
#include "mubqt/mub.hpp"
#include "mubqt/optics.hpp"
#include "mubqt/tomography.hpp"

namespace mubqt::io {

using nlohmann::json;

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

/// Slit/basis label as text: "-3", "0", "-3.5", "0.5".
std::string format_label(double label);

json complex_to_json(Complex c);

// {dim, provenance, bases: [{alpha, vectors: [[[re, im], ...], ...]}]}
json family_to_json(const MubFamily& family);
MubFamily family_from_json(const json& j);

// alpha,m,l,epsilon,phi_rad
std::string modulation_csv(const MubFamily& family);

// alpha,m,value
std::string probability_csv(const ProbabilityTable& p);
std::string count_csv(const CountTable& c);

json counts_to_json(const CountTable& c);
CountTable counts_from_json(const json& j);

// {dim, matrix: [[[re, im], ...], ...]} row-major
json density_to_json(const DensityOperator& rho);
DensityOperator density_from_json(const json& j);
json vector_to_json(const QuditVector& v);

json reconstruction_to_json(const ReconstructionResult& r);

// x_meters,relative_rate
std::string pattern_csv(const std::vector<PatternPoint>& pts);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace mubqt::io
