#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qtms/detection.hpp"
#include "qtms/radar_range.hpp"
#include "qtms/receiver_model.hpp"

namespace qtms::scenarios {

// ---------------------------------------------------------------------------
// Units

double db_to_linear(double x_db);
double linear_to_db(double x_linear);
double dbm_to_watts(double x_dbm);
double watts_to_dbm(double x_watts);

enum class Unit { dB, linear, dBm, W, Hz, m, m2, K, s };

struct UnitValue {
  double magnitude = 0.0;
  Unit unit = Unit::linear;
};

// dB <-> linear and dBm <-> W; any other pair must already match.
// Throws std::invalid_argument for incompatible units.
UnitValue convert(const UnitValue& v, Unit target);

inline constexpr double kPlanck = 6.62607015e-34;     // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J/K

// Planck occupancy 1 / (exp(h f / k T) - 1); 0 at T = 0.
double thermal_photons(double freq_hz, double temp_k);

// ---------------------------------------------------------------------------
// Scenario

struct Scenario {
  std::string name;
  std::string antenna_band = "unspecified";
  double antenna_gain_db = 0.0;
  std::optional<double> effective_area_m2;  // computed from gain and wavelength if absent
  double rcs_m2 = 1.0;
  double bandwidth_hz = 0.0;
  std::optional<double> jpa_gain_db;
  std::optional<double> hemt_gain_db;
  double signal_gain_db = 0.0;
  double detection_gain_db = 0.0;
  double amplifier_gain_db = 0.0;
  std::optional<double> idler_gain_db;            // defaults to signal_gain_db
  std::optional<double> idler_detection_gain_db;  // defaults to detection_gain_db
  double pump_power_dbm = 0.0;
  std::optional<double> signal_power_dbm;  // defaults to pump_power_dbm
  double noise_power_dbm = 0.0;
  double pump_freq_hz = 0.0;
  double signal_freq_hz = 0.0;
  double idler_freq_hz = 0.0;
  std::optional<double> snr_db;   // reference value only
  std::optional<double> range_m;  // reference value only
  double tau_s = 1e-6;
  double eta_linear = 1.0;
  double n_s = 0.1;
  std::optional<double> n_i;         // defaults to n_s
  std::optional<double> cross_corr;  // defaults to sqrt(n_s (n_s + 1))
  double amp_k = 4.0;
  double det_k = 290.0;
  double env_k = 290.0;
  std::optional<double> n_a_s;
  std::optional<double> n_a_i;
  std::optional<double> n_d_s;
  std::optional<double> n_d_i;
  std::optional<double> n_e;
  std::optional<double> n_add_i;
  double n_v = 0.0;
  double rho0 = 1.0;
  bool h0_intensity_gain_fix = false;
  detection::RocVariant roc_variant = detection::RocVariant::as_printed;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

class ScenarioError : public std::runtime_error {
 public:
  enum class Kind { syntax, unknown_key, missing_key, duplicate_key, unit_mismatch, invalid_value, invariant };

  ScenarioError(Kind kind, std::string key, int line, const std::string& detail);

  Kind kind() const { return kind_; }
  const std::string& key() const { return key_; }
  int line() const { return line_; }  // 0 when no source line applies

 private:
  Kind kind_;
  std::string key_;
  int line_;
};

// Checks every Scenario invariant. `lines` maps keys to source lines for messages.
void validate(const Scenario& s, const std::map<std::string, int>& lines = {});

// Preset names: "EJPA", "JRM", "JPA" (case-insensitive).
std::vector<std::string> preset_names();
bool is_preset(std::string_view name);
// Throws std::invalid_argument for an unknown name.
Scenario preset(std::string_view name);
// Keys whose preset values come straight from the published parameter table.
std::set<std::string> preset_table_keys(std::string_view name);

// Flat `key = value` text, '#' comments, unit suffix in the key name.
// `eta_db` is accepted in place of `eta_linear`. Throws ScenarioError.
Scenario parse_scenario(std::string_view text, std::set<std::string>* given_keys = nullptr);
// Canonical key order, 12 significant digits, LF line endings.
std::string write_scenario(const Scenario& s);

// Resolves `name_or_path` as a preset name first, then as a file path.
Scenario load_scenario(const std::string& name_or_path, std::set<std::string>* given_keys = nullptr);

// Canonical keys in file order.
const std::vector<std::string>& scenario_keys();

// ---------------------------------------------------------------------------
// Bridges into the model modules

inline constexpr double kGainConsistencyDb = 0.5;

struct ReceiverInputs {
  receiver::GainSet gains;
  receiver::NoiseSet noise;
  receiver::IlluminationParams illumination;
  receiver::ReceiverOptions options;
};

// Throws ScenarioError when G_s disagrees with G^D + G^A by more than 0.5 dB,
// or when B * tau rounds to zero modes.
ReceiverInputs derive_receiver_inputs(const Scenario& s);

// Range parameters; snr_min is taken from snr_db when present, else 1.
radar::RangeParams derive_range_params(const Scenario& s);

// Quantum SNR (linear) of the scenario at its own n_s.
double scenario_snr(const Scenario& s);

}  // namespace qtms::scenarios
