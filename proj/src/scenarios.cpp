#include "qtms/scenarios.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qtms/format.hpp"

namespace qtms::scenarios {

// ---------------------------------------------------------------------------
// Units

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }
double linear_to_db(double x_linear) {
  if (!(x_linear > 0.0)) throw std::invalid_argument("linear_to_db: value must be > 0");
  return 10.0 * std::log10(x_linear);
}
double dbm_to_watts(double x_dbm) { return std::pow(10.0, (x_dbm - 30.0) / 10.0); }
double watts_to_dbm(double x_watts) {
  if (!(x_watts > 0.0)) throw std::invalid_argument("watts_to_dbm: power must be > 0");
  return 10.0 * std::log10(x_watts) + 30.0;
}

UnitValue convert(const UnitValue& v, Unit target) {
  if (v.unit == target) return v;
  if (v.unit == Unit::dB && target == Unit::linear) return {db_to_linear(v.magnitude), target};
  if (v.unit == Unit::linear && target == Unit::dB) return {linear_to_db(v.magnitude), target};
  if (v.unit == Unit::dBm && target == Unit::W) return {dbm_to_watts(v.magnitude), target};
  if (v.unit == Unit::W && target == Unit::dBm) return {watts_to_dbm(v.magnitude), target};
  throw std::invalid_argument("convert: incompatible units");
}

double thermal_photons(double freq_hz, double temp_k) {
  if (!(freq_hz > 0.0)) throw std::invalid_argument("thermal_photons: frequency must be > 0");
  if (!(temp_k >= 0.0)) throw std::invalid_argument("thermal_photons: temperature must be >= 0");
  if (temp_k == 0.0) return 0.0;
  return 1.0 / std::expm1(kPlanck * freq_hz / (kBoltzmann * temp_k));
}

// ---------------------------------------------------------------------------
// Errors

namespace {

std::string error_text(ScenarioError::Kind kind, const std::string& key, int line,
                       const std::string& detail) {
  std::ostringstream out;
  if (line > 0) out << "line " << line << ": ";
  switch (kind) {
    case ScenarioError::Kind::syntax: out << "syntax error"; break;
    case ScenarioError::Kind::unknown_key: out << "unknown key"; break;
    case ScenarioError::Kind::missing_key: out << "missing required key"; break;
    case ScenarioError::Kind::duplicate_key: out << "duplicate key"; break;
    case ScenarioError::Kind::unit_mismatch: out << "unit suffix mismatch"; break;
    case ScenarioError::Kind::invalid_value: out << "invalid value"; break;
    case ScenarioError::Kind::invariant: out << "invariant violated"; break;
  }
  if (!key.empty()) out << " '" << key << "'";
  if (!detail.empty()) out << ": " << detail;
  return out.str();
}

}  // namespace

ScenarioError::ScenarioError(Kind kind, std::string key, int line, const std::string& detail)
    : std::runtime_error(error_text(kind, key, line, detail)), kind_(kind), key_(std::move(key)), line_(line) {}

// ---------------------------------------------------------------------------
// Field registry

namespace {

struct Field {
  enum class Type { number, optional_number, text, flag, roc_variant };

  std::string key;
  Type type;
  bool required = false;
  double Scenario::*number = nullptr;
  std::optional<double> Scenario::*optional_number = nullptr;
  std::string Scenario::*text = nullptr;
  bool Scenario::*flag = nullptr;
};

Field num(std::string key, double Scenario::*m, bool required = false) {
  return {std::move(key), Field::Type::number, required, m};
}
Field opt(std::string key, std::optional<double> Scenario::*m) {
  Field f{std::move(key), Field::Type::optional_number};
  f.optional_number = m;
  return f;
}
Field txt(std::string key, std::string Scenario::*m, bool required = false) {
  Field f{std::move(key), Field::Type::text, required};
  f.text = m;
  return f;
}
Field flg(std::string key, bool Scenario::*m) {
  Field f{std::move(key), Field::Type::flag};
  f.flag = m;
  return f;
}

const std::vector<Field>& fields() {
  static const std::vector<Field> all = {
      txt("name", &Scenario::name, true),
      txt("antenna_band", &Scenario::antenna_band),
      num("antenna_gain_db", &Scenario::antenna_gain_db, true),
      opt("effective_area_m2", &Scenario::effective_area_m2),
      num("rcs_m2", &Scenario::rcs_m2, true),
      num("bandwidth_hz", &Scenario::bandwidth_hz, true),
      opt("jpa_gain_db", &Scenario::jpa_gain_db),
      opt("hemt_gain_db", &Scenario::hemt_gain_db),
      num("signal_gain_db", &Scenario::signal_gain_db, true),
      num("detection_gain_db", &Scenario::detection_gain_db, true),
      num("amplifier_gain_db", &Scenario::amplifier_gain_db, true),
      opt("idler_gain_db", &Scenario::idler_gain_db),
      opt("idler_detection_gain_db", &Scenario::idler_detection_gain_db),
      num("pump_power_dbm", &Scenario::pump_power_dbm, true),
      opt("signal_power_dbm", &Scenario::signal_power_dbm),
      num("noise_power_dbm", &Scenario::noise_power_dbm, true),
      num("pump_freq_hz", &Scenario::pump_freq_hz, true),
      num("signal_freq_hz", &Scenario::signal_freq_hz, true),
      num("idler_freq_hz", &Scenario::idler_freq_hz, true),
      opt("snr_db", &Scenario::snr_db),
      opt("range_m", &Scenario::range_m),
      num("tau_s", &Scenario::tau_s),
      num("eta_linear", &Scenario::eta_linear),
      num("n_s", &Scenario::n_s),
      opt("n_i", &Scenario::n_i),
      opt("cross_corr", &Scenario::cross_corr),
      num("amp_k", &Scenario::amp_k),
      num("det_k", &Scenario::det_k),
      num("env_k", &Scenario::env_k),
      opt("n_a_s", &Scenario::n_a_s),
      opt("n_a_i", &Scenario::n_a_i),
      opt("n_d_s", &Scenario::n_d_s),
      opt("n_d_i", &Scenario::n_d_i),
      opt("n_e", &Scenario::n_e),
      opt("n_add_i", &Scenario::n_add_i),
      num("n_v", &Scenario::n_v),
      num("rho0", &Scenario::rho0),
      flg("h0_intensity_gain_fix", &Scenario::h0_intensity_gain_fix),
      Field{"roc_variant", Field::Type::roc_variant},
  };
  return all;
}

const Field* find_field(std::string_view key) {
  for (const auto& f : fields())
    if (f.key == key) return &f;
  return nullptr;
}

constexpr std::string_view kUnitSuffixes[] = {"_dbm", "_db", "_hz", "_khz", "_mhz", "_ghz", "_m2",
                                               "_m",   "_km", "_k",  "_s",   "_ms",  "_us",  "_w",
                                               "_mw",  "_linear"};

// Key with its unit suffix removed, or the key itself when it has none.
std::string_view unit_base(std::string_view key) {
  for (auto suffix : kUnitSuffixes)
    if (key.size() > suffix.size() && key.ends_with(suffix)) return key.substr(0, key.size() - suffix.size());
  return key;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

int line_of(const std::map<std::string, int>& lines, const std::string& key) {
  const auto it = lines.find(key);
  return it == lines.end() ? 0 : it->second;
}

}  // namespace

const std::vector<std::string>& scenario_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& f : fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

// ---------------------------------------------------------------------------
// Validation

void validate(const Scenario& s, const std::map<std::string, int>& lines) {
  const auto fail = [&](const std::string& key, const std::string& detail) {
    throw ScenarioError(ScenarioError::Kind::invariant, key, line_of(lines, key), detail);
  };
  const auto positive = [&](const std::string& key, double v) {
    if (!(std::isfinite(v) && v > 0.0)) fail(key, "must be > 0");
  };
  const auto non_negative = [&](const std::string& key, double v) {
    if (!(std::isfinite(v) && v >= 0.0)) fail(key, "must be >= 0");
  };

  if (s.name.empty()) fail("name", "must not be empty");
  positive("bandwidth_hz", s.bandwidth_hz);
  positive("pump_freq_hz", s.pump_freq_hz);
  positive("signal_freq_hz", s.signal_freq_hz);
  positive("idler_freq_hz", s.idler_freq_hz);
  positive("rcs_m2", s.rcs_m2);
  positive("tau_s", s.tau_s);
  positive("amp_k", s.amp_k);
  positive("det_k", s.det_k);
  positive("env_k", s.env_k);
  if (s.effective_area_m2) positive("effective_area_m2", *s.effective_area_m2);

  const std::pair<const char*, double> finite_db[] = {{"antenna_gain_db", s.antenna_gain_db},
                                                      {"pump_power_dbm", s.pump_power_dbm},
                                                      {"noise_power_dbm", s.noise_power_dbm}};
  for (const auto& [key, v] : finite_db)
    if (!std::isfinite(v)) fail(key, "must be finite");

  const std::pair<const char*, double> gains_db[] = {{"signal_gain_db", s.signal_gain_db},
                                                     {"detection_gain_db", s.detection_gain_db},
                                                     {"amplifier_gain_db", s.amplifier_gain_db}};
  for (const auto& [key, v] : gains_db) non_negative(key, v);
  if (s.idler_gain_db) non_negative("idler_gain_db", *s.idler_gain_db);
  if (s.idler_detection_gain_db) non_negative("idler_detection_gain_db", *s.idler_detection_gain_db);

  if (!(s.eta_linear >= 0.0 && s.eta_linear <= 1.0))
    fail(line_of(lines, "eta_db") > 0 ? "eta_db" : "eta_linear", "eta must lie in [0, 1] (linear)");

  non_negative("n_s", s.n_s);
  if (s.n_i) non_negative("n_i", *s.n_i);
  if (s.cross_corr) {
    non_negative("cross_corr", *s.cross_corr);
    if (*s.cross_corr > std::sqrt(s.n_s * (s.n_s + 1.0)) + 1e-12)
      fail("cross_corr", "exceeds sqrt(n_s (n_s + 1))");
  }
  non_negative("n_v", s.n_v);
  const std::pair<const char*, const std::optional<double>*> overrides[] = {
      {"n_a_s", &s.n_a_s}, {"n_a_i", &s.n_a_i}, {"n_d_s", &s.n_d_s},
      {"n_d_i", &s.n_d_i}, {"n_e", &s.n_e},     {"n_add_i", &s.n_add_i}};
  for (const auto& [key, v] : overrides)
    if (v->has_value()) non_negative(key, **v);
  if (!(s.rho0 > 0.0 && s.rho0 <= 1.0)) fail("rho0", "must lie in (0, 1]");

  const double sum = s.signal_freq_hz + s.idler_freq_hz;
  if (std::abs(s.pump_freq_hz - sum) > 1e-6 * s.pump_freq_hz) {
    const std::string detail = "pump_freq_hz (" + format_number(s.pump_freq_hz) +
                               ") must equal signal_freq_hz + idler_freq_hz (" + format_number(sum) + ")";
    throw ScenarioError(ScenarioError::Kind::invariant, "pump_freq_hz", line_of(lines, "pump_freq_hz"), detail);
  }
}

// ---------------------------------------------------------------------------
// Presets
//
// Published parameter table, with these documented defaults for the rows it
// does not give: tau = 1 us, eta = 1, n_s = 0.1, amplifier chain at 4 K,
// detection chain and environment at 290 K, N_v = 0, rho0 = 1, idler chain
// gains equal to the signal chain. Signal power defaults to the pump power.
//
// Notes carried with the table:
//  - eta is annotated "1 dB" on the range row; 1 dB is above unity, so the
//    preset uses eta = 1 (lossless).
//  - JRM noise power +4 dBm is stored verbatim although it is far above the
//    other two columns.
//  - JPA signal gain is printed as "~96" and stored as 96.

namespace {

struct PresetRow {
  const char* name;
  const char* band;
  double antenna_gain_db;
  std::optional<double> effective_area_m2;
  double bandwidth_hz;
  double jpa_gain_db;
  double hemt_gain_db;
  double signal_gain_db;
  double detection_gain_db;
  double amplifier_gain_db;
  double pump_power_dbm;
  double noise_power_dbm;
  double pump_freq_hz;
  double signal_freq_hz;
  double idler_freq_hz;
  double snr_db;
  double range_m;
};

const PresetRow kPresets[] = {
    {"EJPA", "C-band", 6.4, 8.8e-5, 300e6, 20, 38, 83.98, 16.82, 67.16, 5, -145, 10.62e9, 5.31e9, 5.31e9,
     -13.48, 482},
    {"JRM", "X-band", 15, std::nullopt, 20e6, 30, 36, 93.98, 16.82, 77.16, -97, 4, 16.89e9, 10.09e9, 6.8e9,
     -18, 1.0},
    {"JPA", "X-band", 15, std::nullopt, 1.0e6, 20, 36, 96.0, 16.82, 79.18, -82, -94, 13.6821e9, 6.1445e9,
     7.5376e9, -19, 0.5},
};

const PresetRow* find_preset(std::string_view name) {
  const std::string key = upper(name);
  for (const auto& row : kPresets)
    if (key == row.name) return &row;
  return nullptr;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& row : kPresets) out.emplace_back(row.name);
  return out;
}

bool is_preset(std::string_view name) { return find_preset(name) != nullptr; }

Scenario preset(std::string_view name) {
  const PresetRow* row = find_preset(name);
  if (!row) throw std::invalid_argument("unknown preset '" + std::string(name) + "' (expected EJPA, JRM or JPA)");
  Scenario s;
  s.name = row->name;
  s.antenna_band = row->band;
  s.antenna_gain_db = row->antenna_gain_db;
  s.effective_area_m2 = row->effective_area_m2;
  s.rcs_m2 = 1.0;
  s.bandwidth_hz = row->bandwidth_hz;
  s.jpa_gain_db = row->jpa_gain_db;
  s.hemt_gain_db = row->hemt_gain_db;
  s.signal_gain_db = row->signal_gain_db;
  s.detection_gain_db = row->detection_gain_db;
  s.amplifier_gain_db = row->amplifier_gain_db;
  s.pump_power_dbm = row->pump_power_dbm;
  s.noise_power_dbm = row->noise_power_dbm;
  s.pump_freq_hz = row->pump_freq_hz;
  s.signal_freq_hz = row->signal_freq_hz;
  s.idler_freq_hz = row->idler_freq_hz;
  s.snr_db = row->snr_db;
  s.range_m = row->range_m;
  return s;
}

std::set<std::string> preset_table_keys(std::string_view name) {
  const PresetRow* row = find_preset(name);
  if (!row) throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  std::set<std::string> keys = {"name",           "antenna_band",      "antenna_gain_db",   "rcs_m2",
                                "bandwidth_hz",   "jpa_gain_db",       "hemt_gain_db",      "signal_gain_db",
                                "detection_gain_db", "amplifier_gain_db", "pump_power_dbm", "noise_power_dbm",
                                "pump_freq_hz",   "signal_freq_hz",    "idler_freq_hz",     "snr_db",
                                "range_m"};
  if (row->effective_area_m2) keys.insert("effective_area_m2");
  return keys;
}

// ---------------------------------------------------------------------------
// Text format

Scenario parse_scenario(std::string_view text, std::set<std::string>* given_keys) {
  using Kind = ScenarioError::Kind;
  Scenario s;
  std::map<std::string, int> lines;
  std::optional<double> eta_db;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view raw = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ScenarioError(Kind::syntax, "", line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ScenarioError(Kind::syntax, "", line_no, "empty key");
    if (lines.contains(key)) throw ScenarioError(Kind::duplicate_key, key, line_no, "first given on line " + std::to_string(lines[key]));

    const Field* field = find_field(key);
    if (!field && key != "eta_db") {
      const std::string_view base = unit_base(key);
      for (const auto& f : fields())
        if (unit_base(f.key) == base && f.key != key)
          throw ScenarioError(Kind::unit_mismatch, key, line_no, "expected '" + f.key + "'");
      throw ScenarioError(Kind::unknown_key, key, line_no, "");
    }
    lines[key] = line_no;

    const auto number = [&]() {
      const auto v = parse_double(value);
      if (!v) throw ScenarioError(Kind::invalid_value, key, line_no, "not a finite number: '" + std::string(value) + "'");
      return *v;
    };

    if (key == "eta_db") {
      eta_db = number();
      continue;
    }
    switch (field->type) {
      case Field::Type::number:
        s.*(field->number) = number();
        break;
      case Field::Type::optional_number:
        s.*(field->optional_number) = number();
        break;
      case Field::Type::text:
        if (value.empty()) throw ScenarioError(Kind::invalid_value, key, line_no, "empty value");
        s.*(field->text) = std::string(value);
        break;
      case Field::Type::flag:
        if (value == "true")
          s.*(field->flag) = true;
        else if (value == "false")
          s.*(field->flag) = false;
        else
          throw ScenarioError(Kind::invalid_value, key, line_no, "expected true or false");
        break;
      case Field::Type::roc_variant:
        try {
          s.roc_variant = detection::parse_roc_variant(value);
        } catch (const std::invalid_argument&) {
          throw ScenarioError(Kind::invalid_value, key, line_no, "expected as_printed or sqrt_denominator");
        }
        break;
    }
  }

  if (eta_db) {
    if (lines.contains("eta_linear"))
      throw ScenarioError(Kind::duplicate_key, "eta_db", lines["eta_db"], "eta_linear is also given");
    s.eta_linear = db_to_linear(*eta_db);
  }
  for (const auto& f : fields())
    if (f.required && !lines.contains(f.key)) throw ScenarioError(Kind::missing_key, f.key, 0, "");

  validate(s, lines);
  if (given_keys) {
    given_keys->clear();
    for (const auto& [k, _] : lines) given_keys->insert(k == "eta_db" ? "eta_linear" : k);
  }
  return s;
}

std::string write_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "# QTMS radar scenario\n";
  for (const auto& f : fields()) {
    switch (f.type) {
      case Field::Type::number:
        out << f.key << " = " << format_number(s.*(f.number)) << '\n';
        break;
      case Field::Type::optional_number:
        if (const auto& v = s.*(f.optional_number)) out << f.key << " = " << format_number(*v) << '\n';
        break;
      case Field::Type::text:
        out << f.key << " = " << s.*(f.text) << '\n';
        break;
      case Field::Type::flag:
        out << f.key << " = " << (s.*(f.flag) ? "true" : "false") << '\n';
        break;
      case Field::Type::roc_variant:
        out << f.key << " = " << detection::to_string(s.roc_variant) << '\n';
        break;
    }
  }
  return out.str();
}

Scenario load_scenario(const std::string& name_or_path, std::set<std::string>* given_keys) {
  if (is_preset(name_or_path)) {
    if (given_keys) *given_keys = preset_table_keys(name_or_path);
    return preset(name_or_path);
  }
  std::ifstream in(name_or_path, std::ios::binary);
  if (!in) throw std::invalid_argument("no preset or readable scenario file named '" + name_or_path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), given_keys);
}

// ---------------------------------------------------------------------------
// Bridges

ReceiverInputs derive_receiver_inputs(const Scenario& s) {
  validate(s);
  const double gap = std::abs(s.signal_gain_db - (s.detection_gain_db + s.amplifier_gain_db));
  if (gap > kGainConsistencyDb)
    throw ScenarioError(ScenarioError::Kind::invariant, "signal_gain_db", 0,
                        "differs from detection_gain_db + amplifier_gain_db by " + format_number(gap) + " dB");

  ReceiverInputs r;
  auto& g = r.gains;
  g.g_s_total = db_to_linear(s.signal_gain_db);
  g.g_d_s = db_to_linear(s.detection_gain_db);
  g.g_a_s = g.g_s_total / g.g_d_s;
  g.g_i_total = db_to_linear(s.idler_gain_db.value_or(s.signal_gain_db));
  g.g_d_i = db_to_linear(s.idler_detection_gain_db.value_or(s.detection_gain_db));
  g.g_a_i = g.g_i_total / g.g_d_i;
  if (g.g_a_s < 1.0 || g.g_a_i < 1.0)
    throw ScenarioError(ScenarioError::Kind::invariant, "detection_gain_db", 0,
                        "detection gain exceeds the total chain gain");

  auto& n = r.noise;
  n.n_a_s = s.n_a_s.value_or(thermal_photons(s.signal_freq_hz, s.amp_k));
  n.n_a_i = s.n_a_i.value_or(thermal_photons(s.idler_freq_hz, s.amp_k));
  n.n_d_s = s.n_d_s.value_or(thermal_photons(s.signal_freq_hz, s.det_k));
  n.n_d_i = s.n_d_i.value_or(thermal_photons(s.idler_freq_hz, s.det_k));
  n.n_e = s.n_e.value_or(thermal_photons(s.signal_freq_hz, s.env_k));
  // Input-referred added noise of the two-stage idler chain.
  n.n_add_i = s.n_add_i.value_or(n.n_a_i + n.n_d_i / g.g_a_i);
  n.n_v = s.n_v;

  auto& i = r.illumination;
  i.n_s = s.n_s;
  i.n_i = s.n_i.value_or(s.n_s);
  i.eta = s.eta_linear;
  i.m_modes = std::llround(s.bandwidth_hz * s.tau_s);
  if (i.m_modes < 1)
    throw ScenarioError(ScenarioError::Kind::invariant, "tau_s", 0, "bandwidth_hz * tau_s rounds to zero modes");
  i.cross_corr = s.cross_corr.value_or(std::sqrt(s.n_s * (s.n_s + 1.0)));

  r.options.h0_intensity_gain_fix = s.h0_intensity_gain_fix;
  return r;
}

radar::RangeParams derive_range_params(const Scenario& s) {
  validate(s);
  radar::RangeParams p;
  p.antenna_gain = db_to_linear(s.antenna_gain_db);
  p.effective_area = s.effective_area_m2.value_or(
      radar::effective_area(p.antenna_gain, radar::wavelength(s.signal_freq_hz)));
  p.rcs = s.rcs_m2;
  p.p_signal = dbm_to_watts(s.signal_power_dbm.value_or(s.pump_power_dbm));
  p.p_noise = dbm_to_watts(s.noise_power_dbm);
  p.snr_min = s.snr_db ? db_to_linear(*s.snr_db) : 1.0;
  return p;
}

double scenario_snr(const Scenario& s) {
  const ReceiverInputs r = derive_receiver_inputs(s);
  return receiver::snr_quantum(r.gains, r.noise, r.illumination, r.options);
}

}  // namespace qtms::scenarios
