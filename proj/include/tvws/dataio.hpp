#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "tvws/geo.hpp"
#include "tvws/regulatory.hpp"

namespace tvws::dataio {

inline constexpr std::string_view kTowerCsvHeader =
    "id,lat,lon,power,power_unit,channel,haat_m,env,zone";

/// 10 * log10(kW * 1e6): 10 kW -> 70 dBm, 1 kW -> 60 dBm.
double kw_to_dbm(double kw);

/// Reads the tower database. Expects the exact header line above; rows give
/// power in kW or dBm per their unit tag. Lines starting with '#' and blank
/// lines are skipped. Errors carry the offending line number.
std::vector<reg::Transmitter> parse_tower_csv(const std::filesystem::path& path,
                                              const prop::BandPlan& plan = {});
std::vector<reg::Transmitter> parse_tower_csv_text(std::istream& is, std::string_view source,
                                                   const prop::BandPlan& plan = {});

/// Writes towers back out in the same schema, power always in dBm.
void write_tower_csv(std::ostream& os, const std::vector<reg::Transmitter>& towers);

/// Transmit power levels the sample generator draws from, in kW.
inline constexpr std::array<double, 3> kSamplePowersKw{0.05, 1.0, 10.0};

/// Draw weights for the sample generator. Empty weight lists mean uniform;
/// lengths must otherwise match the zone list / kSamplePowersKw.
struct DensityProfile {
  std::vector<double> zone_weights;
  std::vector<double> power_weights;
};

/// Seeded synthetic tower database: positions rejection-sampled inside the
/// zone polygons, powers from kSamplePowersKw, channels 21..34. The same
/// seed always yields the same list.
std::vector<reg::Transmitter> gen_sample_towers(std::uint64_t seed,
                                                const std::vector<geo::ZoneRegion>& zones,
                                                int count,
                                                const DensityProfile& profile = {});

}  // namespace tvws::dataio
