// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mubqt/fixtures.hpp"
#include "mubqt/measurement.hpp"
#include "mubqt/mub.hpp"
#include "mubqt/optics.hpp"
#include "mubqt/tomography.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace mubqt;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. D = 7 certification.
Outcome mub_certification_d7() {
  const auto t0 = Clock::now();
  const auto fam = prime_mub_family(7);
  const auto rep = verify_family(fam, 1e-10);
  const double secs = seconds_since(t0);
  const auto cross = rep.pairs.size() * 49;
  const bool ok = rep.pass && rep.basis_count == 8 && rep.max_unbiasedness_deviation < 1e-10 &&
                  rep.max_orthonormality_deviation < 1e-10 && cross == 8 * 7 / 2 * 49 && secs < 1.0;
  return {ok, fmt("8 bases, %zu cross pairs, max|ov^2-1/7|=%.2e, max orthonormality dev=%.2e, %.3fs", cross,
                  rep.max_unbiasedness_deviation, rep.max_orthonormality_deviation, secs)};
}

// 2. D = 8 appendix audit.
Outcome appendix_audit_d8() {
  const auto t0 = Clock::now();
  const auto audit = audit_dim8_tables(1e-12);
  const auto fam = dim8_mub_family();
  const auto rep = verify_family(fam, 1e-12);
  const double secs = seconds_since(t0);
  double worst_unitary = 0.0;
  for (std::size_t k = 1; k < audit.unitarity_deviation.size(); ++k) {
    worst_unitary = std::max(worst_unitary, audit.unitarity_deviation[k]);
  }
  std::string set = "none";
  if (audit.complete_sets.size() == 1) {
    set.clear();
    for (int k : audit.complete_sets[0]) set += (set.empty() ? "" : ",") + (k == 0 ? std::string("I") : "U" + std::to_string(k));
  }
  const bool ok = worst_unitary < 1e-12 && audit.complete_sets.size() == 1 && rep.pass &&
                  fam.projector_count() == 72 && 72 == 8 * (8 + 1) && secs < 1.0;
  return {ok, fmt("max|U^dag U - I|=%.2e, unbiased 9-set {%s}, projectors=%d, %.3fs", worst_unitary, set.c_str(),
                  fam.projector_count(), secs)};
}

// 3. Exact inversion for D in {2, 3, 5, 7, 8}.
Outcome exact_inversion() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  double worst = 0.0, worst_fid = 0.0;
  for (const auto& fam : {test::qubit_family(), prime_mub_family(3), prime_mub_family(5), prime_mub_family(7),
                          dim8_mub_family()}) {
    for (int t = 0; t < 100; ++t) {
      const QuditVector psi(oracle::random_pure(fam.dim, rng));
      const auto rho = linear_reconstruct(ideal_probabilities(psi, fam), fam);
      worst = std::max(worst, (rho.matrix() - DensityOperator::pure(psi).matrix()).cwiseAbs().maxCoeff());
      worst_fid = std::max(worst_fid, std::abs(1.0 - fidelity(psi, rho)));

      const DensityOperator mixed(oracle::random_mixed(fam.dim, rng));
      const auto back = linear_reconstruct(ideal_probabilities(mixed, fam), fam);
      worst = std::max(worst, (back.matrix() - mixed.matrix()).cwiseAbs().maxCoeff());
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-10 && worst_fid < 1e-9 && secs < 10.0,
          fmt("max elementwise error %.2e, max |1-F| %.2e over 1000 states, %.3fs", worst, worst_fid, secs)};
}

// 4. Uniform probabilities give I/D.
Outcome maximally_mixed_identity() {
  double worst = 0.0;
  for (const auto& fam : {test::qubit_family(), prime_mub_family(3), prime_mub_family(5), prime_mub_family(7),
                          dim8_mub_family()}) {
    ProbabilityTable p;
    p.dim = fam.dim;
    p.values = RealMatrix::Constant(static_cast<Eigen::Index>(fam.bases.size()), fam.dim, 1.0 / fam.dim);
    const auto rho = linear_reconstruct(p, fam);
    worst = std::max(worst, (rho.matrix() - DensityOperator::maximally_mixed(fam.dim).matrix()).cwiseAbs().maxCoeff());
  }
  return {worst < 1e-14, fmt("max |rho - I/D| = %.2e", worst)};
}

// 5. Interference rate at x = 0 is proportional to the projection probability.
Outcome projection_vs_interference() {
  ApertureGeometry geom;  // D = 7 default setup
  const auto fam = prime_mub_family(7);
  std::mt19937_64 rng(5);
  double constant = 0.0, worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const QuditVector psi(oracle::random_pure(7, rng));
    for (const auto& b : fam.bases) {
      for (int m = 0; m < 7; ++m) {
        const auto s = vector_to_modulation(b.vector(m));
        const auto field = apply_phase(transmitted_field(psi, s.epsilons), s.phases, true);
        const double rate = count_rate(field, 0.0, geom);
        const double ov = std::norm(oracle::inner(oracle::to_vec(b.vectors.col(m)), oracle::to_vec(psi.amplitudes())));
        if (constant == 0.0) constant = rate / ov;
        worst = std::max(worst, std::abs(rate - constant * ov) / (constant * ov));
      }
    }
  }
  return {worst < 1e-10, fmt("constant %.15f, max relative error %.2e over 100 states x 56 projectors", constant, worst)};
}

// 6. Single-pattern shortcut for prime D.
Outcome single_pattern_shortcut() {
  std::mt19937_64 rng(6);
  double worst = 0.0;
  for (int d : {3, 5, 7}) {
    ApertureGeometry geom;
    geom.dim = d;
    const auto fam = prime_mub_family(d);
    for (int t = 0; t < 100; ++t) {
      const QuditVector psi(oracle::random_pure(d, rng));
      const auto ideal = ideal_probabilities(psi, fam);
      for (int alpha = 1; alpha <= d; ++alpha) {
        const auto row = single_pattern_probabilities(psi, alpha, geom);
        for (int m = 0; m < d; ++m) worst = std::max(worst, std::abs(row[m] - ideal.values(alpha, m)));
      }
    }
  }
  return {worst < 1e-8, fmt("max deviation %.2e (D = 3, 5, 7; 100 states each; all alpha)", worst)};
}

// 7. Noise behavior of the Psi7 fixture.
Outcome noise_behavior() {
  const auto t0 = Clock::now();
  const auto fam = prime_mub_family(7);
  const auto psi = fixture_state("psi7");
  ApertureGeometry geom;
  const auto p = optical_probabilities(psi, fam, geom);
  const int seeds = 200;
  const std::vector<double> budgets{1e4, 1e3, 1e2};
  std::vector<double> mean(3), se(3);
  for (std::size_t b = 0; b < budgets.size(); ++b) {
    double s = 0.0, s2 = 0.0;
    for (int k = 0; k < seeds; ++k) {
      const auto c = simulate_counts(p, budgets[b], 1.0, {NoiseKind::poisson, derive_seed(700 + b, k)});
      const double f = estimate_fidelity(normalize_counts(c), fam, psi, Estimator::forced_purity);
      s += f;
      s2 += f * f;
    }
    mean[b] = s / seeds;
    se[b] = std::sqrt((s2 / seeds - mean[b] * mean[b]) / (seeds - 1));
  }
  bool monotone = true;
  for (int b = 0; b + 1 < 3; ++b) {
    // non-increasing as the budget drops, allowing 3 sigma of the difference
    monotone = monotone && mean[b + 1] <= mean[b] + 3.0 * std::hypot(se[b], se[b + 1]);
  }
  const auto c = simulate_counts(p, 1e4, 1.0, {NoiseKind::poisson, 42});
  const auto boot = fidelity_with_errors(c, fam, psi, 1000, derive_seed(42, 1), Estimator::forced_purity);
  const double secs = seconds_since(t0);
  const bool ok = mean[0] >= 0.99 && monotone && boot.sigma < 0.01 && secs < 60.0;
  return {ok, fmt("mean F (forced purity, %d seeds) 1e4: %.5f, 1e3: %.5f, 1e2: %.5f; bootstrap at 1e4: %.5f +/- %.5f; "
                  "%.2fs",
                  seeds, mean[0], mean[1], mean[2], boot.value, boot.sigma, secs)};
}

// 8. Published fixture states.
Outcome fixture_integrity() {
  std::string detail;
  bool ok = true;
  for (const auto& f : fixtures()) {
    double n2 = 0.0;
    for (double a : f.amplitudes) n2 += a * a;
    const double dev = std::abs(std::sqrt(n2) - 1.0);
    ok = ok && dev < 2e-3;
    detail += fmt("%s |norm-1|=%.2e; ", f.name.c_str(), dev);
    QuditVector s;
    try {
      s = fixture_state(f.name);
    } catch (const Error&) {
      ok = false;
      continue;
    }
    ok = ok && s.is_normalized(1e-12);
  }
  const auto psi7 = fixture_state("psi7");
  const double f = fidelity(psi7, DensityOperator::pure(psi7));
  ok = ok && std::abs(f - 1.0) < 1e-12;
  return {ok, detail + fmt("F(psi7, |psi7><psi7|)=%.15f", f)};
}

// 9. Fringe period and envelope zero of the uniform D = 7 pattern.
Outcome fringe_geometry() {
  ApertureGeometry geom;
  const QuditVector uniform(ComplexVector::Constant(7, 1.0 / std::sqrt(7.0)));
  const double period = 670e-9 * 1.0 / 208e-6;
  const double zero = 670e-9 * 1.0 / 104e-6;

  // first principal maximum beyond the central one: densest sample near lambda f3 / d
  const auto pts = pattern(uniform, 0.5 * period, 1.5 * period, 100001, geom);
  double x_peak = pts.front().x, best = -1.0;
  for (const auto& p : pts) {
    if (p.rate > best) {
      best = p.rate;
      x_peak = p.x;
    }
  }
  const double spacing = x_peak - 0.0;  // central maximum sits at x = 0 by symmetry

  // envelope zero: single open slit pattern, minimum between 0.5 and 1.5 of the expected zero
  ComplexVector e = ComplexVector::Zero(7);
  e(3) = 1.0;
  const auto env = pattern(QuditVector(e), 0.5 * zero, 1.5 * zero, 100001, geom);
  double x_zero = env.front().x, lowest = 1e300;
  for (const auto& p : env) {
    if (p.rate < lowest) {
      lowest = p.rate;
      x_zero = p.x;
    }
  }
  // the uniform pattern must also vanish there (missing second order)
  const double missing = count_rate(uniform, x_zero, geom);

  const double e1 = std::abs(spacing - period) / period;
  const double e2 = std::abs(x_zero - zero) / zero;
  return {e1 < 0.01 && e2 < 0.01 && missing < 1e-6,
          fmt("maxima spacing %.4f mm (expected %.4f, rel err %.2e); envelope zero %.4f mm (expected %.4f, rel err "
              "%.2e); rate at zero %.1e",
              spacing * 1e3, period * 1e3, e1, x_zero * 1e3, zero * 1e3, e2, missing)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 MUB certification D=7", mub_certification_d7},
      {"AC2 appendix audit D=8", appendix_audit_d8},
      {"AC3 exact-inversion oracle", exact_inversion},
      {"AC4 maximally mixed identity", maximally_mixed_identity},
      {"AC5 projection-vs-interference", projection_vs_interference},
      {"AC6 single-pattern shortcut", single_pattern_shortcut},
      {"AC7 noise behavior", noise_behavior},
      {"AC8 fixture integrity", fixture_integrity},
      {"AC9 fringe geometry", fringe_geometry},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
