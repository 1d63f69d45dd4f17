#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tvws/geo.hpp"
#include "tvws/propagation.hpp"

namespace tvws::reg {

/// One terrestrial TV transmitter.
struct Transmitter {
  std::string id;
  geo::GeoPoint location;
  double power_dbm = 0.0;       // P_t
  int channel = 0;              // band-plan index
  double antenna_height_m = 0;  // HAAT
  prop::Environment env = prop::Environment::UrbanMedium;
  std::string zone;
};

/// Throws std::invalid_argument when a field violates its contract.
void validate(const Transmitter& tx, const prop::BandPlan& plan = {});

/// Regulatory knobs for the pollution / protection / FCC computations.
struct RegulatoryParams {
  double gamma_co_db = 15.0;       // co-channel interference tolerable by secondary
  double gamma_adj_db = 45.0;      // adjacent-channel tolerance
  double psi_db = 1.0;             // fading margin
  double psi_adj_extra_db = 27.0;  // extra margin in adjacent channels
  double delta_db = 45.0;          // required SINR at the primary receiver
  double secondary_power_dbm = 36.0;
  double secondary_haat_m = 30.0;
  double grade_b_dbu = 41.0;       // UHF Grade-B contour field strength
  double noise_dbm = -104.97;      // N0 in an 8 MHz channel
  double rx_height_m = 1.5;        // receive antenna height for path loss
  bool extrapolate = true;         // evaluate Hata outside its nominal box
};

void validate(const RegulatoryParams& p);

/// Named presets for the standard parameter rows. Selects gamma_co_db for
/// "pollution-5/10/15" and psi_db for "protection-0.1/1"; "fcc" keeps the
/// defaults. Unknown names throw.
RegulatoryParams preset(std::string_view name);
const std::vector<std::string>& preset_names();

enum class ZoneKind { PollutionCo, PollutionAdj, NoTalkCo, NoTalkAdj, FccNoTalk };
std::string_view to_string(ZoneKind kind);

enum class Method { Pollution, Protection, Fcc, Intersection };
Method method_from_string(std::string_view s);
std::string_view to_string(Method m);

/// A disk around a tower where a channel is barred or polluted.
struct ExclusionZone {
  std::string tower_id;
  geo::GeoPoint center;
  int channel = 0;  // affected channel
  double radius_km = 0.0;
  ZoneKind kind = ZoneKind::PollutionCo;
  bool extrapolated = false;
};

struct Radius {
  double km = 0.0;
  bool clamped = false;
  bool extrapolated = false;
};

/// Distance within which the primary's signal exceeds the secondary
/// receiver's interference tolerance: PL(r) = P_t - N0 - gamma.
Radius pollution_radius(const Transmitter& tx, const RegulatoryParams& p, bool adjacent);

/// Distance out to which primary receivers must be protected:
/// PL(r) = P_t - N0 - delta - psi.
Radius protection_radius(const Transmitter& tx, const RegulatoryParams& p);

/// Extra distance a secondary must keep beyond the protection radius:
/// PL(d) = P_s - psi_eff over the secondary link (secondary HAAT to
/// rx_height_m), with psi_eff = psi + psi_adj_extra in adjacent channels.
/// f_mhz/env fix the propagation curve (callers pass the tower's).
Radius separation_distance(const RegulatoryParams& p, bool adjacent, double f_mhz,
                           prop::Environment env);

/// protection_radius + separation_distance.
Radius no_talk_radius(const Transmitter& tx, const RegulatoryParams& p, bool adjacent);

/// FCC Grade-B contour: distance where field strength falls to grade_b_dbu.
Radius fcc_grade_b_radius(const Transmitter& tx, const RegulatoryParams& p);

/// Grade-B contour plus the FCC separation distance (secondary signal down to
/// grade_b_dbu - 23 dBu at the contour receiver).
Radius fcc_no_talk_radius(const Transmitter& tx, const RegulatoryParams& p);

/// Exclusion disk set for one tower under a method. For `Intersection` the
/// pollution and protection lists are concatenated: a point is white space
/// only when outside every disk.
std::vector<ExclusionZone> exclusion_zones(const Transmitter& tx, const RegulatoryParams& p,
                                           Method method, const prop::BandPlan& plan = {});

/// In-band neighbors of a channel (channel +/- 1, truncated at band edges).
std::vector<int> adjacent_channels(int channel, const prop::BandPlan& plan = {});

}  // namespace tvws::reg
