#pragma once

#include <string>
#include <string_view>

namespace tvws::prop {

/// Radio environment class selecting the Hata mobile-antenna correction and
/// the suburban / open-area offsets.
enum class Environment { UrbanLarge, UrbanMedium, Suburban, Open };

Environment environment_from_string(std::string_view s);
std::string_view to_string(Environment env);

/// UHF band-IV plan: 15 channels of 8 MHz, channels 21-35 in 470-590 MHz.
struct BandPlan {
  int first_channel = 21;
  int n_channels = 15;
  double band_start_mhz = 470.0;
  double channel_width_mhz = 8.0;

  int last_channel() const { return first_channel + n_channels - 1; }
  bool contains(int channel) const {
    return channel >= first_channel && channel <= last_channel();
  }
};

struct ChannelBounds {
  double low_mhz = 0.0;
  double high_mhz = 0.0;

  double center_mhz() const { return 0.5 * (low_mhz + high_mhz); }
};

/// Frequency bounds of a channel. Throws std::invalid_argument outside the plan.
ChannelBounds channel_bounds(int channel, const BandPlan& plan = {});

/// Thermal noise floor at 290 K: -174 + 10 log10(B) dBm.
double noise_floor_dbm(double bandwidth_hz);

struct PathLoss {
  double loss_db = 0.0;
  /// True when any model parameter was clamped into the Hata validity box or
  /// the distance lies outside the nominal 1-20 km range.
  bool extrapolated = false;
};

struct InverseDistance {
  double distance_km = 0.0;
  /// True when the result hit the [0.01, 500] km clamp.
  bool clamped = false;
  bool extrapolated = false;
};

/// Okumura-Hata median path loss in dB.
///
/// Validity box: f in [150, 1500] MHz, tx height in [30, 200] m, rx height in
/// [1, 10] m, distance in [1, 20] km. With extrapolate=true (the default) the
/// closed form is evaluated for any distance > 0 and out-of-box parameters are
/// clamped, with the result flagged; with extrapolate=false out-of-box inputs
/// throw std::domain_error.
PathLoss hata_path_loss(double f_mhz, double tx_height_m, double rx_height_m,
                        double distance_km, Environment env, bool extrapolate = true);

/// Closed-form inverse of hata_path_loss in the distance term: the unique d
/// with PL(d) = path_loss_db, clamped to [0.01, 500] km.
InverseDistance hata_inverse_distance(double f_mhz, double tx_height_m, double rx_height_m,
                                      double path_loss_db, Environment env,
                                      bool extrapolate = true);

/// Field strength (dBu) to received power (dBm) for a channel spanning
/// [f_low, f_high] MHz: E - 130.8 + 20 log10(1230 / (f_high + f_low)).
double dbu_to_dbm(double e_dbu, double f_low_mhz, double f_high_mhz);

}  // namespace tvws::prop
