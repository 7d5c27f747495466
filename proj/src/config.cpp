#include "mubqt/config.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "mubqt/fixtures.hpp"
#include "mubqt/io.hpp"

namespace mubqt {

using nlohmann::json;

namespace {

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Best-effort source line of a key: first occurrence of "key" in the text.
std::string where(const std::string& text, const std::string& path) {
  const auto slash = path.find_last_of('/');
  const std::string key = path.substr(slash == std::string::npos ? 0 : slash + 1);
  const auto pos = text.find('"' + key + '"');
  std::string out = "at " + path;
  if (!key.empty() && pos != std::string::npos) out += " (line " + std::to_string(line_of_offset(text, pos)) + ")";
  return out;
}

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    throw ConfigError("config error " + where(text_, path) + ": " + msg);
  }

  double positive(const json& obj, const std::string& key, const std::string& path, double fallback) const {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(path + "/" + key, "expected a number");
    const double x = v.get<double>();
    if (!(x > 0.0) || !std::isfinite(x)) fail(path + "/" + key, "must be a positive finite number");
    return x;
  }

  QuditVector amplitudes(const json& arr, const std::string& path, std::vector<std::string>& warnings) const {
    if (!arr.is_array() || arr.empty()) fail(path, "expected a non-empty amplitude list");
    ComplexVector c(static_cast<Eigen::Index>(arr.size()));
    for (std::size_t j = 0; j < arr.size(); ++j) {
      const auto& e = arr[j];
      if (e.is_number()) {
        c(static_cast<Eigen::Index>(j)) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        c(static_cast<Eigen::Index>(j)) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        fail(path + "/" + std::to_string(j), "amplitude must be a number or [re, im]");
      }
    }
    const double n = c.norm();
    if (n == 0.0) fail(path, "amplitudes are all zero");
    if (std::abs(n - 1.0) > 1e-3) {
      warnings.push_back("amplitudes " + path + " have norm " + io::format_double(n) + "; renormalized");
    }
    return QuditVector(c / n);
  }

  QuditVector state_spec(const json& v, const std::string& path, std::vector<std::string>& warnings) const {
    if (v.is_string()) {
      try {
        return fixture_state(v.get<std::string>());
      } catch (const InvalidArgument& e) {
        fail(path, e.what());
      }
    }
    return amplitudes(v, path, warnings);
  }

 private:
  const std::string& text_;
};

}  // namespace

QuditVector ExperimentConfig::source_state() const {
  if (explicit_state) return *explicit_state;
  return beam_amplitudes(beam, geometry);
}

QuditVector ExperimentConfig::expected() const { return expected_state ? *expected_state : source_state(); }

MubFamily ExperimentConfig::make_family() const { return mubqt::make_family(dim, family); }

ExperimentConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error (line " + std::to_string(line_of_offset(text, e.byte)) + "): " + e.what());
  }
  const Reader rd(text);
  if (!root.is_object()) rd.fail("/", "top level must be an object");

  ExperimentConfig cfg;
  try {
    if (!root.contains("dim") || !root["dim"].is_number_integer()) rd.fail("/dim", "required integer");
    cfg.dim = root["dim"].get<int>();
    if (cfg.dim < 2) rd.fail("/dim", "must be at least 2");

    cfg.geometry.dim = cfg.dim;
    if (root.contains("geometry")) {
      const auto& g = root["geometry"];
      if (!g.is_object()) rd.fail("/geometry", "expected an object");
      cfg.geometry.half_width = rd.positive(g, "half_width", "/geometry", cfg.geometry.half_width);
      cfg.geometry.spacing = rd.positive(g, "spacing", "/geometry", cfg.geometry.spacing);
      cfg.geometry.wavelength = rd.positive(g, "wavelength", "/geometry", cfg.geometry.wavelength);
      cfg.geometry.focal_length = rd.positive(g, "focal_length", "/geometry", cfg.geometry.focal_length);
    }
    try {
      cfg.geometry.validate();
    } catch (const InvalidArgument& e) {
      rd.fail("/geometry", e.what());
    }

    if (root.contains("beam")) {
      const auto& b = root["beam"];
      if (!b.is_object()) rd.fail("/beam", "expected an object");
      if (b.contains("fixture")) {
        cfg.explicit_state = rd.state_spec(b["fixture"], "/beam/fixture", cfg.warnings);
      } else if (b.contains("amplitudes")) {
        cfg.explicit_state = rd.state_spec(b["amplitudes"], "/beam/amplitudes", cfg.warnings);
      } else {
        const std::string kind = b.value("kind", std::string("uniform"));
        if (kind == "uniform") {
          cfg.beam.kind = BeamKind::uniform;
        } else if (kind == "gaussian") {
          cfg.beam.kind = BeamKind::gaussian;
          if (!b.contains("waist")) rd.fail("/beam/waist", "required for a gaussian beam");
          cfg.beam.waist = rd.positive(b, "waist", "/beam", 0.0);
          if (b.contains("center_offset")) {
            if (!b["center_offset"].is_number()) rd.fail("/beam/center_offset", "expected a number");
            cfg.beam.center_offset = b["center_offset"].get<double>();
          }
        } else {
          rd.fail("/beam/kind", "must be \"uniform\" or \"gaussian\"");
        }
      }
      if (cfg.explicit_state && cfg.explicit_state->dim() != cfg.dim) {
        rd.fail("/beam", "state has " + std::to_string(cfg.explicit_state->dim()) + " amplitudes but dim is " +
                             std::to_string(cfg.dim));
      }
    }

    if (root.contains("family")) {
      const auto& f = root["family"];
      const std::string s = f.is_string() ? f.get<std::string>() : "";
      if (s == "prime") {
        cfg.family = FamilyProvenance::prime_formula;
      } else if (s == "tables") {
        cfg.family = FamilyProvenance::appendix_tables;
      } else {
        rd.fail("/family", "must be \"prime\" or \"tables\"");
      }
    } else if (cfg.dim == 8) {
      cfg.family = FamilyProvenance::appendix_tables;
    }

    if (root.contains("noise")) {
      const auto& n = root["noise"];
      if (!n.is_object()) rd.fail("/noise", "expected an object");
      const std::string kind = n.value("kind", std::string("poisson"));
      if (kind == "poisson") {
        cfg.noise.kind = NoiseKind::poisson;
      } else if (kind == "none") {
        cfg.noise.kind = NoiseKind::none;
      } else {
        rd.fail("/noise/kind", "must be \"poisson\" or \"none\"");
      }
      if (n.contains("seed")) {
        if (!n["seed"].is_number_unsigned()) rd.fail("/noise/seed", "expected a nonnegative integer");
        cfg.noise.seed = n["seed"].get<std::uint64_t>();
      }
      cfg.mean_peak_rate = rd.positive(n, "mean_peak_rate", "/noise", cfg.mean_peak_rate);
      cfg.integration_time = rd.positive(n, "integration_time", "/noise", cfg.integration_time);
    }

    if (root.contains("detector")) {
      const auto& d = root["detector"];
      if (!d.is_object()) rd.fail("/detector", "expected an object");
      const std::string mode = d.value("mode", std::string("point"));
      if (mode == "point") {
        cfg.detector.mode = DetectorMode::point;
      } else if (mode == "integrated") {
        cfg.detector.mode = DetectorMode::integrated;
      } else {
        rd.fail("/detector/mode", "must be \"point\" or \"integrated\"");
      }
      cfg.detector.slit_width = rd.positive(d, "slit_width", "/detector", cfg.detector.slit_width);
    }

    if (root.contains("expected_state")) {
      cfg.expected_state = rd.state_spec(root["expected_state"], "/expected_state", cfg.warnings);
      if (cfg.expected_state->dim() != cfg.dim) rd.fail("/expected_state", "dimension differs from dim");
    }

    if (root.contains("output")) {
      const auto& o = root["output"];
      if (!o.is_object() || (o.contains("dir") && !o["dir"].is_string())) rd.fail("/output/dir", "expected a string");
      cfg.output_dir = o.value("dir", std::string("out"));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config error: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text);
}

}  // namespace mubqt
