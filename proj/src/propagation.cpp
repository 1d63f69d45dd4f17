#include "tvws/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tvws::prop {

namespace {

constexpr double kMinFreqMhz = 150.0;
constexpr double kMaxFreqMhz = 1500.0;
constexpr double kMinTxHeightM = 30.0;
constexpr double kMaxTxHeightM = 200.0;
constexpr double kMinRxHeightM = 1.0;
constexpr double kMaxRxHeightM = 10.0;
constexpr double kMinDistKm = 1.0;
constexpr double kMaxDistKm = 20.0;
constexpr double kInverseFloorKm = 0.01;
constexpr double kInverseCeilKm = 500.0;

double sq(double x) { return x * x; }

// Mobile-antenna correction a(hm) for medium/small cities.
double mobile_correction_medium(double f_mhz, double rx_height_m) {
  const double lf = std::log10(f_mhz);
  return (1.1 * lf - 0.7) * rx_height_m - (1.56 * lf - 0.8);
}

// Large-city a(hm); the UHF form applies from 400 MHz up.
double mobile_correction_large(double f_mhz, double rx_height_m) {
  if (f_mhz >= 400.0) {
    return 3.2 * sq(std::log10(11.75 * rx_height_m)) - 4.97;
  }
  return 8.29 * sq(std::log10(1.54 * rx_height_m)) - 1.1;
}

double clamp_checked(double value, double lo, double hi, const char* what, bool extrapolate,
                     bool* flagged) {
  if (value >= lo && value <= hi) return value;
  if (!extrapolate) {
    std::ostringstream msg;
    msg << "Hata model: " << what << " = " << value << " outside [" << lo << ", " << hi << "]";
    throw std::domain_error(msg.str());
  }
  *flagged = true;
  return std::clamp(value, lo, hi);
}

struct LogDistanceCurve {
  double fixed_db = 0.0;             // loss at d = 1 km
  double slope_db_per_decade = 0.0;  // 44.9 - 6.55 log10(hb)
  bool params_clamped = false;
};

LogDistanceCurve make_curve(double f_mhz, double tx_height_m, double rx_height_m,
                            Environment env, bool extrapolate) {
  LogDistanceCurve c;
  const double f = clamp_checked(f_mhz, kMinFreqMhz, kMaxFreqMhz, "frequency (MHz)", extrapolate,
                                 &c.params_clamped);
  const double hb = clamp_checked(tx_height_m, kMinTxHeightM, kMaxTxHeightM,
                                  "tx antenna height (m)", extrapolate, &c.params_clamped);
  const double hm = clamp_checked(rx_height_m, kMinRxHeightM, kMaxRxHeightM,
                                  "rx antenna height (m)", extrapolate, &c.params_clamped);

  const double lf = std::log10(f);
  const double lhb = std::log10(hb);

  double a_hm = 0.0;
  double env_offset = 0.0;
  switch (env) {
    case Environment::UrbanLarge:
      a_hm = mobile_correction_large(f, hm);
      break;
    case Environment::UrbanMedium:
      a_hm = mobile_correction_medium(f, hm);
      break;
    case Environment::Suburban:
      a_hm = mobile_correction_medium(f, hm);
      env_offset = -(2.0 * sq(std::log10(f / 28.0)) + 5.4);
      break;
    case Environment::Open:
      a_hm = mobile_correction_medium(f, hm);
      env_offset = -(4.78 * sq(lf) - 18.33 * lf + 40.94);
      break;
  }

  c.fixed_db = 69.55 + 26.16 * lf - 13.82 * lhb - a_hm + env_offset;
  c.slope_db_per_decade = 44.9 - 6.55 * lhb;
  return c;
}

}  // namespace

Environment environment_from_string(std::string_view s) {
  if (s == "urban-large") return Environment::UrbanLarge;
  if (s == "urban-medium") return Environment::UrbanMedium;
  if (s == "suburban") return Environment::Suburban;
  if (s == "open") return Environment::Open;
  throw std::invalid_argument("unknown environment '" + std::string(s) +
                              "' (expected urban-large, urban-medium, suburban or open)");
}

std::string_view to_string(Environment env) {
  switch (env) {
    case Environment::UrbanLarge: return "urban-large";
    case Environment::UrbanMedium: return "urban-medium";
    case Environment::Suburban: return "suburban";
    case Environment::Open: return "open";
  }
  return "unknown";
}

ChannelBounds channel_bounds(int channel, const BandPlan& plan) {
  if (!plan.contains(channel)) {
    std::ostringstream msg;
    msg << "channel " << channel << " outside band plan [" << plan.first_channel << ", "
        << plan.last_channel() << "]";
    throw std::invalid_argument(msg.str());
  }
  const double low = plan.band_start_mhz + (channel - plan.first_channel) * plan.channel_width_mhz;
  return ChannelBounds{low, low + plan.channel_width_mhz};
}

double noise_floor_dbm(double bandwidth_hz) {
  if (!(bandwidth_hz > 0.0)) {
    throw std::invalid_argument("noise_floor_dbm: bandwidth must be positive");
  }
  return -174.0 + 10.0 * std::log10(bandwidth_hz);
}

PathLoss hata_path_loss(double f_mhz, double tx_height_m, double rx_height_m,
                        double distance_km, Environment env, bool extrapolate) {
  if (!(distance_km > 0.0)) {
    throw std::invalid_argument("hata_path_loss: distance must be positive");
  }
  const LogDistanceCurve c = make_curve(f_mhz, tx_height_m, rx_height_m, env, extrapolate);
  bool dist_out = distance_km < kMinDistKm || distance_km > kMaxDistKm;
  if (dist_out && !extrapolate) {
    std::ostringstream msg;
    msg << "Hata model: distance (km) = " << distance_km << " outside [" << kMinDistKm << ", "
        << kMaxDistKm << "]";
    throw std::domain_error(msg.str());
  }
  return PathLoss{c.fixed_db + c.slope_db_per_decade * std::log10(distance_km),
                  c.params_clamped || dist_out};
}

InverseDistance hata_inverse_distance(double f_mhz, double tx_height_m, double rx_height_m,
                                      double path_loss_db, Environment env, bool extrapolate) {
  if (!std::isfinite(path_loss_db)) {
    throw std::invalid_argument("hata_inverse_distance: path loss must be finite");
  }
  const LogDistanceCurve c = make_curve(f_mhz, tx_height_m, rx_height_m, env, extrapolate);
  const double d = std::pow(10.0, (path_loss_db - c.fixed_db) / c.slope_db_per_decade);
  if (!extrapolate && (d < kMinDistKm || d > kMaxDistKm)) {
    std::ostringstream msg;
    msg << "Hata model: inverse distance (km) = " << d << " outside [" << kMinDistKm << ", "
        << kMaxDistKm << "]";
    throw std::domain_error(msg.str());
  }

  InverseDistance out;
  out.distance_km = std::clamp(d, kInverseFloorKm, kInverseCeilKm);
  out.clamped = d < kInverseFloorKm || d > kInverseCeilKm;
  out.extrapolated = c.params_clamped || out.clamped || out.distance_km < kMinDistKm ||
                     out.distance_km > kMaxDistKm;
  return out;
}

double dbu_to_dbm(double e_dbu, double f_low_mhz, double f_high_mhz) {
  if (!(f_low_mhz > 0.0) || !(f_high_mhz > f_low_mhz)) {
    throw std::invalid_argument("dbu_to_dbm: need f_high > f_low > 0");
  }
  return e_dbu - 130.8 + 20.0 * std::log10(1230.0 / (f_high_mhz + f_low_mhz));
}

}  // namespace tvws::prop
