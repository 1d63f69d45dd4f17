#include "tvws/regulatory.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tvws::reg {

namespace {

double center_freq_mhz(int channel, const prop::BandPlan& plan = {}) {
  return prop::channel_bounds(channel, plan).center_mhz();
}

Radius invert(double target_loss_db, double f_mhz, double tx_height_m, double rx_height_m,
              prop::Environment env, bool extrapolate) {
  const prop::InverseDistance inv =
      prop::hata_inverse_distance(f_mhz, tx_height_m, rx_height_m, target_loss_db, env,
                                  extrapolate);
  return Radius{inv.distance_km, inv.clamped, inv.extrapolated};
}

}  // namespace

void validate(const Transmitter& tx, const prop::BandPlan& plan) {
  if (tx.id.empty()) throw std::invalid_argument("transmitter id must not be empty");
  geo::validate(tx.location);
  if (!(tx.power_dbm >= 30.0 && tx.power_dbm <= 90.0)) {
    std::ostringstream msg;
    msg << "transmitter '" << tx.id << "': power " << tx.power_dbm
        << " dBm outside [30, 90]";
    throw std::invalid_argument(msg.str());
  }
  if (!(tx.antenna_height_m > 0.0)) {
    throw std::invalid_argument("transmitter '" + tx.id + "': antenna height must be positive");
  }
  if (!plan.contains(tx.channel)) {
    std::ostringstream msg;
    msg << "transmitter '" << tx.id << "': channel " << tx.channel << " outside band plan ["
        << plan.first_channel << ", " << plan.last_channel() << "]";
    throw std::invalid_argument(msg.str());
  }
}

void validate(const RegulatoryParams& p) {
  const double fields[] = {p.gamma_co_db,          p.gamma_adj_db,    p.psi_db,
                           p.psi_adj_extra_db,     p.delta_db,        p.secondary_power_dbm,
                           p.secondary_haat_m,     p.grade_b_dbu,     p.noise_dbm,
                           p.rx_height_m};
  for (double f : fields) {
    if (!std::isfinite(f)) throw std::invalid_argument("regulatory parameter is not finite");
  }
  if (p.gamma_adj_db < p.gamma_co_db) {
    throw std::invalid_argument("gamma_adj_db must be >= gamma_co_db");
  }
  if (p.psi_adj_extra_db < 0.0) {
    throw std::invalid_argument("psi_adj_extra_db must be >= 0");
  }
}

RegulatoryParams preset(std::string_view name) {
  RegulatoryParams p;
  if (name == "pollution-5") {
    p.gamma_co_db = 5.0;
  } else if (name == "pollution-10") {
    p.gamma_co_db = 10.0;
  } else if (name == "pollution-15") {
    p.gamma_co_db = 15.0;
  } else if (name == "protection-0.1") {
    p.psi_db = 0.1;
  } else if (name == "protection-1") {
    p.psi_db = 1.0;
  } else if (name == "fcc") {
    // defaults
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  }
  return p;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"pollution-5",    "pollution-10", "pollution-15",
                                                 "protection-0.1", "protection-1", "fcc"};
  return names;
}

std::string_view to_string(ZoneKind kind) {
  switch (kind) {
    case ZoneKind::PollutionCo: return "pollution-co";
    case ZoneKind::PollutionAdj: return "pollution-adj";
    case ZoneKind::NoTalkCo: return "notalk-co";
    case ZoneKind::NoTalkAdj: return "notalk-adj";
    case ZoneKind::FccNoTalk: return "fcc-notalk";
  }
  return "unknown";
}

Method method_from_string(std::string_view s) {
  if (s == "pollution") return Method::Pollution;
  if (s == "protection") return Method::Protection;
  if (s == "fcc") return Method::Fcc;
  if (s == "intersection") return Method::Intersection;
  throw std::invalid_argument("unknown method '" + std::string(s) +
                              "' (expected pollution, protection, fcc or intersection)");
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Pollution: return "pollution";
    case Method::Protection: return "protection";
    case Method::Fcc: return "fcc";
    case Method::Intersection: return "intersection";
  }
  return "unknown";
}

Radius pollution_radius(const Transmitter& tx, const RegulatoryParams& p, bool adjacent) {
  const double gamma = adjacent ? p.gamma_adj_db : p.gamma_co_db;
  const double target = tx.power_dbm - p.noise_dbm - gamma;
  return invert(target, center_freq_mhz(tx.channel), tx.antenna_height_m, p.rx_height_m, tx.env,
                p.extrapolate);
}

Radius protection_radius(const Transmitter& tx, const RegulatoryParams& p) {
  const double target = tx.power_dbm - p.noise_dbm - p.delta_db - p.psi_db;
  return invert(target, center_freq_mhz(tx.channel), tx.antenna_height_m, p.rx_height_m, tx.env,
                p.extrapolate);
}

Radius separation_distance(const RegulatoryParams& p, bool adjacent, double f_mhz,
                           prop::Environment env) {
  const double psi_eff = adjacent ? p.psi_db + p.psi_adj_extra_db : p.psi_db;
  const double target = p.secondary_power_dbm - psi_eff;
  return invert(target, f_mhz, p.secondary_haat_m, p.rx_height_m, env, p.extrapolate);
}

Radius no_talk_radius(const Transmitter& tx, const RegulatoryParams& p, bool adjacent) {
  const Radius rp = protection_radius(tx, p);
  const Radius sep = separation_distance(p, adjacent, center_freq_mhz(tx.channel), tx.env);
  return Radius{rp.km + sep.km, rp.clamped || sep.clamped, rp.extrapolated || sep.extrapolated};
}

Radius fcc_grade_b_radius(const Transmitter& tx, const RegulatoryParams& p) {
  const prop::ChannelBounds bounds = prop::channel_bounds(tx.channel);
  const double threshold_dbm = prop::dbu_to_dbm(p.grade_b_dbu, bounds.low_mhz, bounds.high_mhz);
  const double target = tx.power_dbm - threshold_dbm;
  return invert(target, bounds.center_mhz(), tx.antenna_height_m, p.rx_height_m, tx.env,
                p.extrapolate);
}

Radius fcc_no_talk_radius(const Transmitter& tx, const RegulatoryParams& p) {
  const Radius rb = fcc_grade_b_radius(tx, p);
  const prop::ChannelBounds bounds = prop::channel_bounds(tx.channel);
  // Secondary signal must fall to grade_b_dbu - 23 dBu at the contour receiver.
  const double limit_dbm =
      prop::dbu_to_dbm(p.grade_b_dbu - 23.0, bounds.low_mhz, bounds.high_mhz);
  const double target = p.secondary_power_dbm - limit_dbm;
  const Radius sep = invert(target, bounds.center_mhz(), p.secondary_haat_m, p.rx_height_m,
                            tx.env, p.extrapolate);
  return Radius{rb.km + sep.km, rb.clamped || sep.clamped, rb.extrapolated || sep.extrapolated};
}

std::vector<int> adjacent_channels(int channel, const prop::BandPlan& plan) {
  std::vector<int> out;
  if (plan.contains(channel - 1)) out.push_back(channel - 1);
  if (plan.contains(channel + 1)) out.push_back(channel + 1);
  return out;
}

std::vector<ExclusionZone> exclusion_zones(const Transmitter& tx, const RegulatoryParams& p,
                                           Method method, const prop::BandPlan& plan) {
  validate(tx, plan);
  validate(p);

  std::vector<ExclusionZone> zones;
  const auto add = [&](int channel, const Radius& r, ZoneKind kind) {
    zones.push_back(ExclusionZone{tx.id, tx.location, channel, r.km, kind, r.extrapolated});
  };

  if (method == Method::Pollution || method == Method::Intersection) {
    add(tx.channel, pollution_radius(tx, p, /*adjacent=*/false), ZoneKind::PollutionCo);
    for (int c : adjacent_channels(tx.channel, plan)) {
      add(c, pollution_radius(tx, p, /*adjacent=*/true), ZoneKind::PollutionAdj);
    }
  }
  if (method == Method::Protection || method == Method::Intersection) {
    add(tx.channel, no_talk_radius(tx, p, /*adjacent=*/false), ZoneKind::NoTalkCo);
    for (int c : adjacent_channels(tx.channel, plan)) {
      add(c, no_talk_radius(tx, p, /*adjacent=*/true), ZoneKind::NoTalkAdj);
    }
  }
  if (method == Method::Fcc) {
    add(tx.channel, fcc_no_talk_radius(tx, p), ZoneKind::FccNoTalk);
  }
  return zones;
}

}  // namespace tvws::reg
