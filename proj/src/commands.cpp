#include "mubqt/commands.hpp"

#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "mubqt/config.hpp"
#include "mubqt/io.hpp"
#include "mubqt/measurement.hpp"
#include "mubqt/mub.hpp"
#include "mubqt/optics.hpp"
#include "mubqt/tomography.hpp"

namespace mubqt {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kAcquisitionStream = 0;
constexpr std::uint64_t kBootstrapStream = 1;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  int dim = 0;
  std::string source;
  int trials = 1000;
  std::string counts;
  std::optional<int> alpha;
  double m = 0.0;
  std::optional<double> x_min;
  std::optional<double> x_max;
  int points = 1001;
  std::string estimator = "physical";
};

ExperimentConfig load(const Options& o, std::ostream& err) {
  if (o.config.empty()) throw ConfigError("--config is required");
  ExperimentConfig cfg = load_config(o.config);
  if (o.seed) cfg.noise.seed = *o.seed;
  if (!o.out.empty()) cfg.output_dir = o.out;
  for (const auto& w : cfg.warnings) err << "warning: " << w << "\n";
  return cfg;
}

CountTable load_counts(const Options& o, const ExperimentConfig& cfg) {
  const fs::path path = o.counts.empty() ? cfg.output_dir / "counts.json" : fs::path(o.counts);
  io::json j;
  try {
    j = io::json::parse(io::read_file(path));
  } catch (const io::json::exception& e) {
    throw ConfigError("cannot parse counts file " + path.string() + ": " + e.what());
  }
  CountTable c = io::counts_from_json(j);
  if (c.dim != cfg.dim) throw ConfigError("counts file dimension differs from config dim");
  return c;
}

Estimator parse_estimator(const std::string& s) {
  if (s == "physical") return Estimator::physical;
  if (s == "pure") return Estimator::forced_purity;
  throw ConfigError("--estimator must be 'physical' or 'pure'");
}

void check_alphas(const CountTable& c, const MubFamily& fam) {
  if (static_cast<int>(c.alphas.size()) != static_cast<int>(fam.bases.size())) {
    throw ConfigError("counts file has a different number of bases than the family");
  }
  for (std::size_t r = 0; r < c.alphas.size(); ++r) {
    if (c.alphas[r] != fam.bases[r].alpha) throw ConfigError("counts file basis order differs from the family");
  }
}

int cmd_mub(const Options& o, std::ostream& out) {
  FamilyProvenance source = FamilyProvenance::prime_formula;
  if (o.source == "tables" || (o.source.empty() && o.dim == 8)) {
    source = FamilyProvenance::appendix_tables;
  } else if (!o.source.empty() && o.source != "prime") {
    throw ConfigError("--source must be 'prime' or 'tables'");
  }
  const MubFamily fam = make_family(o.dim, source);
  const CertificationReport rep = verify_family(fam, 1e-10);
  std::string text = rep.to_text();
  if (fam.provenance == FamilyProvenance::appendix_tables) text += audit_dim8_tables().to_text();

  const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  io::write_file(dir / "family.json", io::family_to_json(fam).dump(2) + "\n");
  io::write_file(dir / "modulation.csv", io::modulation_csv(fam));
  io::write_file(dir / "certification.txt", text);
  out << text;
  return rep.pass ? kExitOk : kExitCertification;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = load(o, err);
  const MubFamily fam = cfg.make_family();
  const QuditVector state = cfg.source_state();
  const ProbabilityTable p = optical_probabilities(state, fam, cfg.geometry, cfg.detector);
  const CountTable c = simulate_counts(p, cfg.mean_peak_rate, cfg.integration_time, cfg.noise);

  io::write_file(cfg.output_dir / "probabilities.csv", io::probability_csv(p));
  io::write_file(cfg.output_dir / "counts.csv", io::count_csv(c));
  io::write_file(cfg.output_dir / "counts.json", io::counts_to_json(c).dump(2) + "\n");
  out << "simulated " << c.rows() << " bases x " << c.dim << " projectors, total counts " << c.counts.sum()
      << ", peak " << c.counts.maxCoeff() << " -> " << (cfg.output_dir / "counts.json").string() << "\n";
  return kExitOk;
}

io::json fidelity_json(const FidelityEstimate& e, const std::string& estimator, double point) {
  return {{"estimator", estimator}, {"point", point}, {"value", e.value}, {"sigma", e.sigma}, {"n_trials", e.n_trials}};
}

int cmd_reconstruct(const Options& o, std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = load(o, err);
  const MubFamily fam = cfg.make_family();
  const CountTable c = load_counts(o, cfg);
  check_alphas(c, fam);
  const QuditVector expected = cfg.expected();

  const ProbabilityTable p = normalize_counts(c);
  const ReconstructionResult res = reconstruct(p, fam);
  const std::uint64_t boot_seed = derive_seed(cfg.noise.seed, kBootstrapStream);
  const FidelityEstimate phys = fidelity_with_errors(c, fam, expected, o.trials, boot_seed, Estimator::physical);
  const FidelityEstimate pure = fidelity_with_errors(c, fam, expected, o.trials, boot_seed, Estimator::forced_purity);
  const double f_phys = fidelity(expected, res.physical);
  const double f_pure = fidelity(expected, DensityOperator::pure(res.pure_forced));

  io::json report = io::reconstruction_to_json(res);
  report["purity"] = purity(res.physical);
  report["fidelity"] = {fidelity_json(phys, "physical", f_phys), fidelity_json(pure, "pure", f_pure)};
  io::write_file(cfg.output_dir / "reconstruction.json", report.dump(2) + "\n");

  out << "physical estimate: F = " << f_phys << " (bootstrap " << phys.value << " +/- " << phys.sigma << ")\n";
  out << "forced purity:     F = " << f_pure << " (bootstrap " << pure.value << " +/- " << pure.sigma << ")\n";
  out << res.diagnostics << "\n";
  return kExitOk;
}

int cmd_fidelity(const Options& o, std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = load(o, err);
  const MubFamily fam = cfg.make_family();
  const CountTable c = load_counts(o, cfg);
  check_alphas(c, fam);
  const Estimator est = parse_estimator(o.estimator);
  const QuditVector expected = cfg.expected();
  const double point = estimate_fidelity(normalize_counts(c), fam, expected, est);
  const FidelityEstimate e =
      fidelity_with_errors(c, fam, expected, o.trials, derive_seed(cfg.noise.seed, kBootstrapStream), est);
  io::write_file(cfg.output_dir / "fidelity.json", fidelity_json(e, o.estimator, point).dump(2) + "\n");
  out << "F = " << point << " (bootstrap " << e.value << " +/- " << e.sigma << ", " << e.n_trials << " trials)\n";
  return kExitOk;
}

int cmd_pattern(const Options& o, std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = load(o, err);
  QuditVector field = cfg.source_state();
  if (o.alpha) {
    const MubFamily fam = cfg.make_family();
    const int row = fam.row_of_alpha(*o.alpha);
    const double j = o.m + 0.5 * (cfg.dim - 1);
    if (std::abs(j - std::round(j)) > 1e-9 || j < 0 || j > cfg.dim - 1) {
      throw ConfigError("--m is not a valid label for dim " + std::to_string(cfg.dim));
    }
    const ModulationSetting s = vector_to_modulation(fam.bases[row].vector(static_cast<int>(std::lround(j))));
    field = apply_phase(transmitted_field(field, s.epsilons), s.phases, true);
  }
  const double span = cfg.geometry.envelope_first_zero();
  const double lo = o.x_min.value_or(-span);
  const double hi = o.x_max.value_or(span);
  const auto pts = pattern(field, lo, hi, o.points, cfg.geometry, cfg.detector);
  io::write_file(cfg.output_dir / "pattern.csv", io::pattern_csv(pts));
  out << "wrote " << pts.size() << " points to " << (cfg.output_dir / "pattern.csv").string() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mutually-unbiased-basis tomography of spatial qudits", "mubqt"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Experiment config (JSON)");
    sub->add_option("--seed", o.seed, "Master seed, overrides the config");
    sub->add_option("--out", o.out, "Output directory");
  };

  auto* mub = app.add_subcommand("mub", "Build, certify and export a MUB family");
  mub->add_option("--dim", o.dim, "Dimension")->required();
  mub->add_option("--source", o.source, "prime or tables");
  mub->add_option("--out", o.out, "Output directory");

  auto* sim = app.add_subcommand("simulate", "Simulate the optical count acquisition");
  add_common(sim);

  auto* rec = app.add_subcommand("reconstruct", "Reconstruct the state from counts");
  add_common(rec);
  rec->add_option("--counts", o.counts, "counts.json (default <out>/counts.json)");
  rec->add_option("--trials", o.trials, "Bootstrap trials");

  auto* fid = app.add_subcommand("fidelity", "Fidelity with bootstrap error bar");
  add_common(fid);
  fid->add_option("--counts", o.counts, "counts.json (default <out>/counts.json)");
  fid->add_option("--trials", o.trials, "Bootstrap trials");
  fid->add_option("--estimator", o.estimator, "physical or pure");

  auto* pat = app.add_subcommand("pattern", "Far-field interference pattern");
  add_common(pat);
  pat->add_option("--alpha", o.alpha, "Project onto basis alpha (omit for the bare state)");
  pat->add_option("--m", o.m, "Basis vector label, e.g. -3..3 or -3.5..3.5");
  pat->add_option("--xmin", o.x_min, "Start position [m]");
  pat->add_option("--xmax", o.x_max, "End position [m]");
  pat->add_option("--points", o.points, "Number of samples");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (mub->parsed()) return cmd_mub(o, out);
    if (sim->parsed()) return cmd_simulate(o, out, err);
    if (rec->parsed()) return cmd_reconstruct(o, out, err);
    if (fid->parsed()) return cmd_fidelity(o, out, err);
    if (pat->parsed()) return cmd_pattern(o, out, err);
  } catch (const CertificationError& e) {
    err << "certification failure: " << e.what() << "\n";
    return kExitCertification;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace mubqt
