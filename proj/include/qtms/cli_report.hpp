#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qtms/detection.hpp"
#include "qtms/oracle_mc.hpp"
#include "qtms/scenarios.hpp"

namespace qtms::report {

enum class SweepVariable { n_s, p_fa, rho, snr_min, n_channels };

std::string_view to_string(SweepVariable v);

struct SweepSpec {
  SweepVariable variable = SweepVariable::n_s;
  double start = 0.0;
  double stop = 1.0;
  int points = 2;
  bool log_scale = false;

  // Evenly spaced (or log-spaced) values; the endpoints are exact.
  std::vector<double> grid() const;
  std::string describe() const;
};

// Parses "<var>:<start>:<stop>:<points>:<lin|log>". Throws std::invalid_argument
// unless start < stop, points >= 2 and log grids start above zero.
SweepSpec parse_sweep(std::string_view text);

// Default grids per command.
SweepSpec default_snr_sweep();        // n_s, [0.01, 1], 50 log points
SweepSpec default_roc_sweep();        // p_fa, [1e-7, 1], 70 log points
SweepSpec default_rho_sweep();        // rho, [0.01, 0.99], 99 linear points
SweepSpec default_range_sweep();      // snr_min (dB), [-20, 0], 41 linear points
SweepSpec default_channels_sweep();   // n_channels, [1, 1e6], 61 log points

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  // Throws std::logic_error unless rectangular and finite.
  void validate() const;
  // Comma separated, LF endings, 12 significant digits.
  std::string to_csv() const;
  // Column by header name; throws std::out_of_range if absent.
  std::vector<double> column(std::string_view name) const;
};

struct Report {
  CsvTable table;
  std::vector<std::string> summary;  // plain-text lines, written to stderr by the CLI
};

// Quantum SNR (dB) against n_s, one column per scenario.
Report snr_report(const std::vector<scenarios::Scenario>& scenarios, const SweepSpec& sweep);

struct RocCurveSpec {
  std::string label;
  double rho = 0.0;
  detection::RocVariant variant = detection::RocVariant::as_printed;
};

// Effective correlation of a scenario at its n_s: effective_rho(rho0, SNR).
RocCurveSpec roc_spec_for(const scenarios::Scenario& s);

// p_fa sweep: a (p_fa, p_d) column pair per (curve, N).
// n_channels sweep: p_d per curve at fixed p_fa.
Report roc_report(const std::vector<RocCurveSpec>& curves, const std::vector<long long>& channels,
                  const SweepSpec& sweep, double p_fa_fixed = 1e-3);

// SNR that yields each rho through effective_rho; throws on rho >= rho0.
Report snr_vs_rho_report(double rho0, const SweepSpec& sweep);

// Maximum range against SNR_min (dB), one column per scenario.
Report range_report(const std::vector<scenarios::Scenario>& scenarios, const SweepSpec& sweep);

struct ValidateOptions {
  mc::RngSeed seed{20240611};
  std::size_t pearson_samples = 1000000;
  std::size_t marcum_samples = 1000000;
  unsigned shards = 4;
  double z_limit = 5.0;
  // Test hook: compare the Marcum draws against Q1(a, 1.05 b) so the gate must fail.
  bool corrupt_marcum = false;
};

struct ValidationResult {
  Report report;
  bool passed = true;
  std::vector<std::string> failures;
};

// Pearson correlation for r in {0.1, 0.5, 1.0} on the (X_s, X_i), (P_s, P_i)
// and (X_s, P_s) pairs, then Marcum Q on a {0, 0.5, 1, 2, 3}^2 grid.
ValidationResult run_validation(const ValidateOptions& opts);

// Full command line (without the program name). Returns the process exit code:
// 0 success, 1 validation or statistical failure, 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qtms::report
