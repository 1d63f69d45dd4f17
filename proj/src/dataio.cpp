#include "tvws/dataio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "tvws/format.hpp"

namespace tvws::dataio {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::string_view source, int lineno, const std::string& what) {
  throw std::runtime_error(std::string(source) + ":" + std::to_string(lineno) + ": " + what);
}

double parse_double(const std::string& field, std::string_view name, std::string_view source,
                    int lineno) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    fail(source, lineno, "bad " + std::string(name) + " '" + field + "'");
  }
}

int parse_int(const std::string& field, std::string_view name, std::string_view source,
              int lineno) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(field, &used);
    if (used != field.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    fail(source, lineno, "bad " + std::string(name) + " '" + field + "'");
  }
}

}  // namespace

double kw_to_dbm(double kw) {
  if (!(kw > 0.0)) throw std::invalid_argument("power in kW must be positive");
  return 10.0 * std::log10(kw * 1e6);
}

std::vector<reg::Transmitter> parse_tower_csv(const std::filesystem::path& path,
                                              const prop::BandPlan& plan) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open tower file '" + path.string() + "'");
  return parse_tower_csv_text(in, path.filename().string(), plan);
}

std::vector<reg::Transmitter> parse_tower_csv_text(std::istream& is, std::string_view source,
                                                   const prop::BandPlan& plan) {
  std::vector<reg::Transmitter> towers;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!header_seen) {
      if (t != kTowerCsvHeader) {
        fail(source, lineno,
             "expected header '" + std::string(kTowerCsvHeader) + "', got '" + t + "'");
      }
      header_seen = true;
      continue;
    }

    std::vector<std::string> f;
    std::stringstream ss(t);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(trim(field));
    if (f.size() != 9) {
      fail(source, lineno, "expected 9 fields, got " + std::to_string(f.size()));
    }

    reg::Transmitter tx;
    tx.id = f[0];
    if (tx.id.empty()) fail(source, lineno, "empty tower id");
    tx.location.lat_deg = parse_double(f[1], "lat", source, lineno);
    tx.location.lon_deg = parse_double(f[2], "lon", source, lineno);

    const double power = parse_double(f[3], "power", source, lineno);
    const std::string unit = lower(f[4]);
    if (unit == "kw") {
      if (!(power > 0.0)) fail(source, lineno, "power in kW must be positive");
      tx.power_dbm = kw_to_dbm(power);
    } else if (unit == "dbm") {
      tx.power_dbm = power;
    } else {
      fail(source, lineno, "unknown power unit '" + f[4] + "' (expected kW or dBm)");
    }

    tx.channel = parse_int(f[5], "channel", source, lineno);
    if (!plan.contains(tx.channel)) {
      fail(source, lineno,
           "channel " + std::to_string(tx.channel) + " outside band " +
               std::to_string(plan.first_channel) + ".." + std::to_string(plan.last_channel()));
    }
    tx.antenna_height_m = parse_double(f[6], "haat_m", source, lineno);
    try {
      tx.env = prop::environment_from_string(f[7]);
    } catch (const std::exception& e) {
      fail(source, lineno, e.what());
    }
    tx.zone = f[8];
    try {
      reg::validate(tx, plan);
    } catch (const std::exception& e) {
      fail(source, lineno, e.what());
    }
    towers.push_back(std::move(tx));
  }
  if (!header_seen) throw std::runtime_error(std::string(source) + ": empty tower file");
  return towers;
}

void write_tower_csv(std::ostream& os, const std::vector<reg::Transmitter>& towers) {
  os << kTowerCsvHeader << "\n";
  for (const reg::Transmitter& tx : towers) {
    os << tx.id << ',' << fixed4(tx.location.lat_deg) << ',' << fixed4(tx.location.lon_deg)
       << ',' << fixed4(tx.power_dbm) << ",dBm," << tx.channel << ','
       << fixed4(tx.antenna_height_m) << ',' << prop::to_string(tx.env) << ',' << tx.zone
       << "\n";
  }
}

namespace {

// Fixed uniform-double mapping so every standard library produces the same
// stream for a given seed.
double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

std::size_t weighted_pick(std::mt19937_64& rng, const std::vector<double>& weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double r = u01(rng) * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    r -= weights[i];
    if (r < 0.0) return i;
  }
  return weights.size() - 1;
}

std::vector<double> resolve_weights(const std::vector<double>& given, std::size_t n,
                                    std::string_view what) {
  if (given.empty()) return std::vector<double>(n, 1.0);
  if (given.size() != n) {
    throw std::invalid_argument(std::string(what) + " weights must have " + std::to_string(n) +
                                " entries");
  }
  for (double w : given) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument(std::string(what) + " weights must be finite and >= 0");
    }
  }
  if (std::accumulate(given.begin(), given.end(), 0.0) <= 0.0) {
    throw std::invalid_argument(std::string(what) + " weights must not all be zero");
  }
  return given;
}

}  // namespace

std::vector<reg::Transmitter> gen_sample_towers(std::uint64_t seed,
                                                const std::vector<geo::ZoneRegion>& zones,
                                                int count, const DensityProfile& profile) {
  if (count <= 0) throw std::invalid_argument("count must be positive");
  if (zones.empty()) throw std::invalid_argument("no zones to place towers in");

  const std::vector<double> zone_w = resolve_weights(profile.zone_weights, zones.size(), "zone");
  const std::vector<double> power_w =
      resolve_weights(profile.power_weights, kSamplePowersKw.size(), "power");

  constexpr std::array<prop::Environment, 4> envs{
      prop::Environment::UrbanLarge, prop::Environment::UrbanMedium,
      prop::Environment::Suburban, prop::Environment::Open};
  constexpr std::array<double, 4> haats{30.0, 60.0, 100.0, 150.0};

  std::mt19937_64 rng(seed);
  std::vector<reg::Transmitter> towers;
  towers.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    reg::Transmitter tx;
    char id[16];
    std::snprintf(id, sizeof(id), "t%03d", i + 1);
    tx.id = id;

    const std::size_t zi = weighted_pick(rng, zone_w);
    const geo::ZoneRegion& zone = zones[zi];
    const geo::BoundingBox& bb = zone.bbox();
    bool placed = false;
    for (int attempt = 0; attempt < 100000; ++attempt) {
      const geo::GeoPoint p{bb.min_lat + u01(rng) * (bb.max_lat - bb.min_lat),
                            bb.min_lon + u01(rng) * (bb.max_lon - bb.min_lon)};
      if (geo::point_in_region(p, zone)) {
        tx.location = p;
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw std::runtime_error("could not place a tower inside zone '" + zone.name() +
                               "' (vanishing area?)");
    }

    tx.power_dbm = kw_to_dbm(kSamplePowersKw[weighted_pick(rng, power_w)]);
    tx.channel = 21 + static_cast<int>(u01(rng) * 14.0);  // 21..34; 35 stays unused
    if (tx.channel > 34) tx.channel = 34;
    tx.antenna_height_m = haats[static_cast<std::size_t>(u01(rng) * haats.size()) % haats.size()];
    tx.env = envs[static_cast<std::size_t>(u01(rng) * envs.size()) % envs.size()];
    tx.zone = zone.name();
    towers.push_back(std::move(tx));
  }
  return towers;
}

}  // namespace tvws::dataio
