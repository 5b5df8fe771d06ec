#include "qtms/cli_report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qtms/format.hpp"
#include "qtms/quantum_gaussian.hpp"
#include "qtms/radar_range.hpp"
#include "qtms/special_functions.hpp"

namespace qtms::report {

namespace {

constexpr double kFootnoteNs = 0.1;
constexpr double kRocTargetPd = 0.99;
constexpr double kRocTargetPfa = 1e-3;

std::string column_label(std::string_view name) {
  std::string out;
  for (char c : name) out += std::isalnum(static_cast<unsigned char>(c)) || c == '-' ? c : '_';
  return out;
}

std::string db_string(double linear) {
  return linear > 0.0 ? format_number(scenarios::linear_to_db(linear)) : "-inf";
}

std::string defaults_footer(const scenarios::Scenario& s) {
  const auto in = scenarios::derive_receiver_inputs(s);
  std::ostringstream out;
  out << "# " << s.name << ": M = " << in.illumination.m_modes << " (tau_s = " << format_number(s.tau_s)
      << "), eta = " << format_number(s.eta_linear) << ", T_amp/T_det/T_env = " << format_number(s.amp_k)
      << "/" << format_number(s.det_k) << "/" << format_number(s.env_k)
      << " K, N_v = " << format_number(s.n_v) << " [model defaults, not published values]";
  return out.str();
}

scenarios::Scenario with_n_s(scenarios::Scenario s, double n_s) {
  s.n_s = n_s;
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sweeps and tables

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::n_s: return "n_s";
    case SweepVariable::p_fa: return "p_fa";
    case SweepVariable::rho: return "rho";
    case SweepVariable::snr_min: return "snr_min";
    case SweepVariable::n_channels: return "n_channels";
  }
  return "?";
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    const double t = static_cast<double>(k) / (points - 1);
    if (log_scale)
      g[k] = std::exp(std::log(start) + t * (std::log(stop) - std::log(start)));
    else
      g[k] = start + t * (stop - start);
  }
  g.front() = start;
  g.back() = stop;
  return g;
}

std::string SweepSpec::describe() const {
  return std::string(to_string(variable)) + ":" + format_number(start) + ":" + format_number(stop) + ":" +
         std::to_string(points) + ":" + (log_scale ? "log" : "lin");
}

SweepSpec parse_sweep(std::string_view text) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  if (parts.size() != 5)
    throw std::invalid_argument("sweep must look like <var>:<start>:<stop>:<points>:<lin|log>");

  SweepSpec s;
  const std::string& var = parts[0];
  if (var == "n_s")
    s.variable = SweepVariable::n_s;
  else if (var == "p_fa")
    s.variable = SweepVariable::p_fa;
  else if (var == "rho")
    s.variable = SweepVariable::rho;
  else if (var == "snr_min")
    s.variable = SweepVariable::snr_min;
  else if (var == "n_channels")
    s.variable = SweepVariable::n_channels;
  else
    throw std::invalid_argument("unknown sweep variable '" + var + "'");

  const auto number = [](const std::string& p) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(p, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != p.size() || p.empty() || !std::isfinite(v)) throw std::invalid_argument("bad sweep number '" + p + "'");
    return v;
  };
  s.start = number(parts[1]);
  s.stop = number(parts[2]);
  const double pts = number(parts[3]);
  if (pts != std::floor(pts) || pts < 2 || pts > 1e6) throw std::invalid_argument("sweep points must be an integer >= 2");
  s.points = static_cast<int>(pts);
  if (parts[4] == "log")
    s.log_scale = true;
  else if (parts[4] != "lin")
    throw std::invalid_argument("sweep scale must be lin or log");

  if (!(s.start < s.stop)) throw std::invalid_argument("sweep start must be below stop");
  if (s.log_scale && !(s.start > 0.0)) throw std::invalid_argument("log sweep requires start > 0");
  return s;
}

SweepSpec default_snr_sweep() { return {SweepVariable::n_s, 0.01, 1.0, 50, true}; }
SweepSpec default_roc_sweep() { return {SweepVariable::p_fa, 1e-7, 1.0, 70, true}; }
SweepSpec default_rho_sweep() { return {SweepVariable::rho, 0.01, 0.99, 99, false}; }
SweepSpec default_range_sweep() { return {SweepVariable::snr_min, -20.0, 0.0, 41, false}; }
SweepSpec default_channels_sweep() { return {SweepVariable::n_channels, 1.0, 1e6, 61, true}; }

void CsvTable::validate() const {
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw std::logic_error("csv table is not rectangular");
    for (double v : row)
      if (!std::isfinite(v)) throw std::logic_error("csv table holds a non-finite value");
  }
}

std::string CsvTable::to_csv() const {
  validate();
  std::string out;
  for (std::size_t c = 0; c < header.size(); ++c) out += (c ? "," : "") + header[c];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + format_number(row[c]);
    out += '\n';
  }
  return out;
}

std::vector<double> CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::out_of_range("no column '" + std::string(name) + "'");
  const auto idx = static_cast<std::size_t>(it - header.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[idx]);
  return out;
}

// ---------------------------------------------------------------------------
// Commands

Report snr_report(const std::vector<scenarios::Scenario>& list, const SweepSpec& sweep) {
  if (sweep.variable != SweepVariable::n_s) throw std::invalid_argument("snr sweeps n_s only");
  if (!(sweep.start >= 0.0)) throw std::invalid_argument("n_s must be >= 0");

  Report r;
  r.table.header.push_back("n_s");
  for (const auto& s : list) r.table.header.push_back("snr_db_" + column_label(s.name));
  for (double ns : sweep.grid()) {
    std::vector<double> row{ns};
    for (const auto& s : list) row.push_back(scenarios::linear_to_db(scenarios::scenario_snr(with_n_s(s, ns))));
    r.table.rows.push_back(std::move(row));
  }

  r.summary.push_back("# quantum SNR (dB) versus n_s, grid " + sweep.describe());
  for (const auto& s : list) r.summary.push_back(defaults_footer(s));

  const auto find = [&](std::string_view name) -> const scenarios::Scenario* {
    for (const auto& s : list)
      if (s.name == name) return &s;
    return nullptr;
  };
  const auto* ejpa = find("EJPA");
  const auto* jpa = find("JPA");
  if (ejpa && jpa && sweep.start <= kFootnoteNs && kFootnoteNs <= sweep.stop) {
    const double gap = scenarios::linear_to_db(scenarios::scenario_snr(with_n_s(*ejpa, kFootnoteNs))) -
                       scenarios::linear_to_db(scenarios::scenario_snr(with_n_s(*jpa, kFootnoteNs)));
    r.summary.push_back("# SNR gap EJPA - JPA at n_s = 0.1: " + format_number(gap) + " dB");
  }
  return r;
}

RocCurveSpec roc_spec_for(const scenarios::Scenario& s) {
  const double snr = scenarios::scenario_snr(s);
  return {column_label(s.name), detection::effective_rho(s.rho0, snr), s.roc_variant};
}

Report roc_report(const std::vector<RocCurveSpec>& curves, const std::vector<long long>& channels,
                  const SweepSpec& sweep, double p_fa_fixed) {
  if (curves.empty()) throw std::invalid_argument("roc needs at least one curve");
  Report r;

  if (sweep.variable == SweepVariable::p_fa) {
    if (channels.empty()) throw std::invalid_argument("roc needs at least one channel count");
    const std::vector<double> grid = sweep.grid();
    std::vector<detection::RocCurve> computed;
    for (const auto& c : curves) {
      for (long long n : channels) {
        const std::string tag = c.label + "_N" + std::to_string(n);
        r.table.header.push_back("p_fa_" + tag);
        r.table.header.push_back("p_d_" + tag);
        computed.push_back(detection::roc_curve(c.rho, n, grid, c.variant));
      }
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
      std::vector<double> row;
      for (const auto& curve : computed) {
        row.push_back(curve.points[k].p_fa);
        row.push_back(curve.points[k].p_d);
      }
      r.table.rows.push_back(std::move(row));
    }
    r.summary.push_back("# ROC, p_fa grid " + sweep.describe());
  } else if (sweep.variable == SweepVariable::n_channels) {
    if (!(sweep.start >= 1.0)) throw std::invalid_argument("n_channels sweep must start at >= 1");
    std::vector<long long> ns;
    for (double v : sweep.grid()) {
      const long long n = std::llround(v);
      if (ns.empty() || n > ns.back()) ns.push_back(n);
    }
    r.table.header.push_back("n_channels");
    for (const auto& c : curves) r.table.header.push_back("p_d_" + c.label);
    for (long long n : ns) {
      std::vector<double> row{static_cast<double>(n)};
      for (const auto& c : curves)
        row.push_back(detection::detection_probability({c.rho, 1.0, n, p_fa_fixed}, c.variant));
      r.table.rows.push_back(std::move(row));
    }
    r.summary.push_back("# detection probability versus N at p_fa = " + format_number(p_fa_fixed) + ", grid " +
                        sweep.describe());
  } else {
    throw std::invalid_argument("roc sweeps p_fa or n_channels only");
  }

  for (const auto& c : curves) {
    const long long n_min = detection::min_channels(c.rho, kRocTargetPfa, kRocTargetPd, c.variant);
    r.summary.push_back("# " + c.label + ": rho = " + format_number(c.rho) + " (" +
                        std::string(detection::to_string(c.variant)) + "), smallest N with P_D >= 0.99 at P_FA = 1e-3: " +
                        (n_min > 0 ? std::to_string(n_min) : std::string("none below 2^60")));
  }
  return r;
}

Report snr_vs_rho_report(double rho0, const SweepSpec& sweep) {
  if (sweep.variable != SweepVariable::rho) throw std::invalid_argument("snr-vs-rho sweeps rho only");
  if (!(sweep.start > 0.0) || !(sweep.stop < rho0))
    throw std::invalid_argument("rho grid must lie inside (0, rho0 = " + format_number(rho0) + ")");

  Report r;
  r.table.header = {"rho", "snr_linear", "snr_db"};
  for (double rho : sweep.grid()) {
    const double snr = detection::snr_from_rho(rho0, rho);
    r.table.rows.push_back({rho, snr, scenarios::linear_to_db(snr)});
  }
  r.summary.push_back("# SNR implied by the effective correlation, rho0 = " + format_number(rho0) + ", grid " +
                      sweep.describe());
  return r;
}

Report range_report(const std::vector<scenarios::Scenario>& list, const SweepSpec& sweep) {
  if (sweep.variable != SweepVariable::snr_min) throw std::invalid_argument("range sweeps snr_min only");
  Report r;
  r.table.header.push_back("snr_min_db");
  std::vector<radar::RangeParams> params;
  for (const auto& s : list) {
    r.table.header.push_back(list.size() == 1 ? "range_m" : "range_m_" + column_label(s.name));
    params.push_back(scenarios::derive_range_params(s));
  }
  for (double snr_db : sweep.grid()) {
    std::vector<double> row{snr_db};
    for (auto p : params) {
      p.snr_min = scenarios::db_to_linear(snr_db);
      row.push_back(radar::max_range(p));
    }
    r.table.rows.push_back(std::move(row));
  }
  r.summary.push_back("# maximum range (m) versus SNR_min (dB), grid " + sweep.describe());
  for (std::size_t k = 0; k < list.size(); ++k) {
    if (!list[k].snr_db) continue;
    r.summary.push_back("# " + list[k].name + ": range at tabulated SNR " + format_number(*list[k].snr_db) +
                        " dB = " + format_number(radar::max_range(params[k])) + " m");
  }
  return r;
}

ValidationResult run_validation(const ValidateOptions& opts) {
  ValidationResult v;
  auto& table = v.report.table;
  table.header = {"check_id", "param_a", "param_b", "estimate", "std_error", "n_samples", "target", "z_score", "pass"};

  const auto record = [&](int check_id, const std::string& name, double pa, double pb, const mc::McReport& rep) {
    const bool ok = std::abs(rep.z_score) < opts.z_limit;
    table.rows.push_back({static_cast<double>(check_id), pa, pb, rep.estimate, rep.std_error,
                          static_cast<double>(rep.n_samples), rep.target, std::isfinite(rep.z_score) ? rep.z_score : 1e300,
                          ok ? 1.0 : 0.0});
    if (!ok) {
      v.passed = false;
      v.failures.push_back(name + "(" + format_number(pa) + ", " + format_number(pb) + "): z = " +
                           format_number(rep.z_score));
    }
  };

  // check_id 1..3: Pearson on (X_s, X_i), (P_s, P_i), (X_s, P_s); param_a = r.
  const double rs[] = {0.1, 0.5, 1.0};
  for (std::size_t k = 0; k < std::size(rs); ++k) {
    const double r = rs[k];
    const auto cov = gaussian::covariance_closed_form(gaussian::SqueezeParams(r, 0.0));
    const auto samples = mc::sample_gaussian(cov, opts.pearson_samples, mc::shard_seed(opts.seed, 100 + k));
    const double rho = gaussian::pearson_rho(r);
    record(1, "pearson_xs_xi", r, 0.0, mc::empirical_pearson(samples, 0, 2, rho));
    record(2, "pearson_ps_pi", r, 0.0, mc::empirical_pearson(samples, 1, 3, -rho));
    record(3, "pearson_xs_ps", r, 0.0, mc::empirical_pearson(samples, 0, 1, 0.0));
  }

  // check_id 4: Marcum Q1(a, b).
  const double grid[] = {0.0, 0.5, 1.0, 2.0, 3.0};
  std::uint64_t stream = 200;
  for (double a : grid) {
    for (double b : grid) {
      const double target = special::marcum_q1(a, opts.corrupt_marcum ? 1.05 * b : b);
      record(4, "marcum_q1", a, b,
             mc::marcum_oracle(a, b, target, opts.marcum_samples, mc::shard_seed(opts.seed, stream++), opts.shards));
    }
  }

  v.report.summary.push_back("# check_id: 1 Pearson(X_s,X_i)  2 Pearson(P_s,P_i)  3 Pearson(X_s,P_s)  4 Marcum Q1(a,b)");
  v.report.summary.push_back("# seed " + std::to_string(opts.seed.value) + ", " + std::to_string(opts.shards) +
                             " shards, gate |z| < " + format_number(opts.z_limit));
  v.report.summary.push_back(v.passed ? "# all checks passed" : "# FAILED: " + std::to_string(v.failures.size()) + " check(s)");
  for (const auto& f : v.failures) v.report.summary.push_back("#   " + f);
  return v;
}

// ---------------------------------------------------------------------------
// Command line

namespace {

struct CliState {
  std::vector<std::string> scenarios;
  std::string sweep;
  std::string out_path = "-";
  std::uint64_t seed = ValidateOptions{}.seed.value;

  std::vector<double> rhos;
  std::vector<long long> channels;
  std::optional<double> n_s;
  std::optional<double> rho0;
  std::optional<std::string> roc_variant;
  double p_fa_fixed = kRocTargetPfa;

  std::size_t pearson_samples = ValidateOptions{}.pearson_samples;
  std::size_t marcum_samples = ValidateOptions{}.marcum_samples;
  unsigned shards = ValidateOptions{}.shards;
  bool corrupt_marcum = false;

  std::string scenario_action;
  std::string scenario_target;
};

class ValidationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const CliState& st, const std::string& text, std::ostream& out) {
  if (st.out_path == "-") {
    out << text;
    return;
  }
  std::ofstream f(st.out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write '" + st.out_path + "'");
  f << text;
}

void emit_report(const CliState& st, const Report& r, std::ostream& out, std::ostream& err) {
  emit(st, r.table.to_csv(), out);
  for (const auto& line : r.summary) err << line << '\n';
}

std::vector<scenarios::Scenario> load_all(const std::vector<std::string>& names,
                                          const std::vector<std::string>& fallback) {
  std::vector<scenarios::Scenario> list;
  for (const auto& n : names.empty() ? fallback : names) list.push_back(scenarios::load_scenario(n));
  return list;
}

SweepSpec sweep_or(const CliState& st, SweepSpec fallback) {
  return st.sweep.empty() ? fallback : parse_sweep(st.sweep);
}

std::string provenance(const std::string& key, bool given, bool from_preset) {
  if (given) return from_preset ? "table" : "file";
  (void)key;
  return "default";
}

std::string show_scenario(const std::string& target) {
  std::set<std::string> given;
  const auto s = scenarios::load_scenario(target, &given);
  const bool from_preset = scenarios::is_preset(target);
  const auto in = scenarios::derive_receiver_inputs(s);
  const auto range = scenarios::derive_range_params(s);

  // Resolved values for keys whose absence means "computed".
  std::map<std::string, double> derived = {
      {"effective_area_m2", range.effective_area},
      {"idler_gain_db", s.idler_gain_db.value_or(s.signal_gain_db)},
      {"idler_detection_gain_db", s.idler_detection_gain_db.value_or(s.detection_gain_db)},
      {"signal_power_dbm", s.signal_power_dbm.value_or(s.pump_power_dbm)},
      {"n_i", in.illumination.n_i},
      {"cross_corr", in.illumination.cross_corr},
      {"n_a_s", in.noise.n_a_s},
      {"n_a_i", in.noise.n_a_i},
      {"n_d_s", in.noise.n_d_s},
      {"n_d_i", in.noise.n_d_i},
      {"n_e", in.noise.n_e},
      {"n_add_i", in.noise.n_add_i},
  };

  // Reuse the canonical writer for the raw values, then annotate each line.
  std::istringstream written(scenarios::write_scenario(s));
  std::map<std::string, std::string> values;
  for (std::string line; std::getline(written, line);) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find(" = ");
    values[line.substr(0, eq)] = line.substr(eq + 3);
  }

  std::ostringstream out;
  out << "# scenario " << s.name << " (" << (from_preset ? "preset" : "file " + target) << ")\n";
  for (const auto& key : scenarios::scenario_keys()) {
    if (const auto it = values.find(key); it != values.end()) {
      const bool is_derived_default = derived.contains(key) && !given.contains(key);
      out << key << " = " << it->second << " ("
          << (is_derived_default ? "derived" : provenance(key, given.contains(key), from_preset)) << ")\n";
    } else if (const auto d = derived.find(key); d != derived.end()) {
      out << key << " = " << format_number(d->second) << " (derived)\n";
    }
  }
  const double snr = receiver::snr_quantum(in.gains, in.noise, in.illumination, in.options);
  out << "wavelength_m = " << format_number(radar::wavelength(s.signal_freq_hz)) << " (derived)\n";
  out << "m_modes = " << in.illumination.m_modes << " (derived)\n";
  out << "g_s_linear = " << format_number(in.gains.g_s_total) << " (derived)\n";
  out << "g_i_linear = " << format_number(in.gains.g_i_total) << " (derived)\n";
  out << "model_snr_db = " << db_string(snr) << " (derived)\n";
  out << "model_rho = " << format_number(detection::effective_rho(s.rho0, snr)) << " (derived)\n";
  out << "model_range_m = " << format_number(radar::max_range(range)) << " (derived)\n";
  return out.str();
}

int dispatch(const std::string& command, const CliState& st, std::ostream& out, std::ostream& err) {
  const std::vector<std::string> all_presets = scenarios::preset_names();

  if (command == "snr") {
    emit_report(st, snr_report(load_all(st.scenarios, all_presets), sweep_or(st, default_snr_sweep())), out, err);
    return 0;
  }
  if (command == "roc") {
    std::vector<RocCurveSpec> curves;
    std::optional<detection::RocVariant> variant_override;
    if (st.roc_variant) variant_override = detection::parse_roc_variant(*st.roc_variant);
    for (double rho : st.rhos) {
      if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("--rho must lie in [0, 1)");
      curves.push_back({"rho" + format_number(rho), rho, variant_override.value_or(detection::RocVariant::as_printed)});
    }
    if (st.rhos.empty() || !st.scenarios.empty()) {
      for (auto s : load_all(st.scenarios, all_presets)) {
        if (st.n_s) s.n_s = *st.n_s;
        if (st.rho0) s.rho0 = *st.rho0;
        if (variant_override) s.roc_variant = *variant_override;
        scenarios::validate(s);
        curves.push_back(roc_spec_for(s));
      }
    }
    const std::vector<long long> channels = st.channels.empty() ? std::vector<long long>{150} : st.channels;
    for (long long n : channels)
      if (n < 1) throw std::invalid_argument("--channels must be >= 1");
    if (!(st.p_fa_fixed > 0.0 && st.p_fa_fixed <= 1.0)) throw std::invalid_argument("--p-fa must lie in (0, 1]");
    emit_report(st, roc_report(curves, channels, sweep_or(st, default_roc_sweep()), st.p_fa_fixed), out, err);
    return 0;
  }
  if (command == "snr-vs-rho") {
    emit_report(st, snr_vs_rho_report(st.rho0.value_or(1.0), sweep_or(st, default_rho_sweep())), out, err);
    return 0;
  }
  if (command == "range") {
    emit_report(st, range_report(load_all(st.scenarios, {"EJPA"}), sweep_or(st, default_range_sweep())), out, err);
    return 0;
  }
  if (command == "validate") {
    ValidateOptions opts;
    opts.seed = {st.seed};
    opts.pearson_samples = st.pearson_samples;
    opts.marcum_samples = st.marcum_samples;
    opts.shards = st.shards;
    opts.corrupt_marcum = st.corrupt_marcum;
    const ValidationResult v = run_validation(opts);
    emit_report(st, v.report, out, err);
    return v.passed ? 0 : 1;
  }
  if (command == "scenario") {
    std::string target = st.scenario_target;
    if (target.empty() && st.scenarios.size() == 1) target = st.scenarios.front();
    if (target.empty()) throw CLI::ValidationError("scenario: a preset name or file path is required");
    if (st.scenario_action == "show") {
      emit(st, show_scenario(target), out);
      return 0;
    }
    if (st.scenario_action == "dump") {
      emit(st, scenarios::write_scenario(scenarios::load_scenario(target)), out);
      return 0;
    }
    // check
    try {
      const auto s = scenarios::load_scenario(target);
      scenarios::derive_receiver_inputs(s);
      scenarios::derive_range_params(s);
      out << "ok: " << s.name << '\n';
      return 0;
    } catch (const scenarios::ScenarioError& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }
  }
  throw CLI::ValidationError("unknown command " + command);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliState st;
  CLI::App app{"Quantum two-mode squeezed radar performance model"};
  app.name("qtms");
  app.require_subcommand(1, 1);

  const auto add_common = [&](CLI::App* sub, bool with_sweep) {
    sub->add_option("--scenario", st.scenarios, "Preset name (EJPA, JRM, JPA) or scenario file; repeatable");
    if (with_sweep) sub->add_option("--sweep", st.sweep, "<var>:<start>:<stop>:<points>:<lin|log>");
    sub->add_option("--out", st.out_path, "Output path, '-' for stdout");
  };

  auto* snr = app.add_subcommand("snr", "Quantum SNR (dB) versus n_s");
  add_common(snr, true);

  auto* roc = app.add_subcommand("roc", "ROC curves or P_D versus channel count");
  add_common(roc, true);
  roc->add_option("--rho", st.rhos, "Explicit correlation coefficient; repeatable");
  roc->add_option("--channels", st.channels, "Channel count N; repeatable (default 150)");
  roc->add_option("--n-s", st.n_s, "Override n_s of every scenario");
  roc->add_option("--rho0", st.rho0, "Override rho0 of every scenario");
  roc->add_option("--roc-variant", st.roc_variant, "as_printed or sqrt_denominator");
  roc->add_option("--p-fa", st.p_fa_fixed, "False-alarm probability for n_channels sweeps");

  auto* svr = app.add_subcommand("snr-vs-rho", "SNR implied by the effective correlation");
  add_common(svr, true);
  svr->add_option("--rho0", st.rho0, "Correlation ceiling (default 1)");

  auto* range = app.add_subcommand("range", "Maximum detection range versus SNR_min");
  add_common(range, true);

  auto* validate = app.add_subcommand("validate", "Monte Carlo checks of the analytic formulas");
  validate->add_option("--seed", st.seed, "RNG seed");
  validate->add_option("--out", st.out_path, "Output path, '-' for stdout");
  validate->add_option("--pearson-samples", st.pearson_samples, "Gaussian draws per squeezing value")
      ->check(CLI::Range(std::size_t{mc::kMinPearsonSamples}, std::size_t{100000000}));
  validate->add_option("--marcum-samples", st.marcum_samples, "Draws per Marcum grid point")
      ->check(CLI::Range(std::size_t{mc::kMinMarcumSamples}, std::size_t{1000000000}));
  validate->add_option("--shards", st.shards, "Independent RNG streams (threads)")->check(CLI::Range(1u, 256u));
  validate->add_flag("--corrupt-marcum", st.corrupt_marcum, "Test hook: skew the Marcum targets")
      ->group("");

  auto* scen = app.add_subcommand("scenario", "Show, dump or check a scenario");
  scen->add_option("action", st.scenario_action, "show | dump | check")
      ->required()
      ->check(CLI::IsMember({"show", "dump", "check"}));
  scen->add_option("target", st.scenario_target, "Preset name or scenario file");
  scen->add_option("--scenario", st.scenarios, "Preset name or scenario file");
  scen->add_option("--out", st.out_path, "Output path, '-' for stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(command, st, out, err);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const scenarios::ScenarioError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qtms::report
