#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tvws/geo.hpp"
#include "tvws/regulatory.hpp"

namespace tvws::wsmap {

/// Per-cell channel availability over a zone-masked grid. Bit (c - 21) of a
/// cell's mask is set when channel c is free there; cells outside every zone
/// carry mask 0 and are skipped by all statistics.
struct AvailabilityRaster {
  geo::RasterGrid grid;
  reg::Method method = reg::Method::Intersection;
  reg::RegulatoryParams params;
  prop::BandPlan plan;
  std::vector<std::uint16_t> channel_mask;

  std::uint16_t mask_at(int row, int col) const;
  int available_count(int row, int col) const;
  bool channel_free(int row, int col, int channel) const;
};

/// True unless some exclusion disk on this channel covers the point.
bool channel_available(const geo::GeoPoint& pt, int channel,
                       const std::vector<reg::ExclusionZone>& zones);

/// Rasterizes availability at cell centers. Rows are processed in parallel
/// when n_threads != 1 (0 = hardware default); the result is deterministic
/// either way. An empty tower list leaves every channel free.
AvailabilityRaster availability_raster(const geo::RasterGrid& grid,
                                       const std::vector<reg::Transmitter>& towers,
                                       const reg::RegulatoryParams& params, reg::Method method,
                                       const prop::BandPlan& plan = {}, int n_threads = 0);

/// Percent of masked area with at least k channels free, k = 0..n_channels.
struct CcdfTable {
  std::vector<double> percent_at_least;  // index k

  int max_k() const { return static_cast<int>(percent_at_least.size()) - 1; }
};

/// Area-weighted CCDF over all masked cells. Throws when the masked area is zero.
CcdfTable ccdf(const AvailabilityRaster& raster);

/// Area-weighted mean available-channel count over one zone's cells.
double zone_average(const AvailabilityRaster& raster, std::string_view zone_name);

/// Area-weighted mean over every masked cell (the all-zones aggregate).
double overall_average(const AvailabilityRaster& raster);

/// Single CCDF row; k must lie in [0, n_channels].
double percent_area_with_at_least(const AvailabilityRaster& raster, int k);

// --- exports ---------------------------------------------------------------

/// Masked cells as CSV rows (row, col, lat, lon, zone, bitmask-hex, count)
/// behind a provenance comment line.
void write_raster_csv(std::ostream& os, const AvailabilityRaster& raster,
                      std::string_view preset_label);

struct RasterCsvRow {
  int row = 0;
  int col = 0;
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  std::string zone;
  std::uint16_t mask = 0;
  int count = 0;
};

std::vector<RasterCsvRow> read_raster_csv(std::istream& is);

/// Masked cells as a GeoJSON FeatureCollection of cell polygons with
/// zone / channel properties.
void write_raster_geojson(std::ostream& os, const AvailabilityRaster& raster,
                          std::string_view preset_label);

void write_ccdf_csv(std::ostream& os, const CcdfTable& table, const AvailabilityRaster& raster,
                    std::string_view preset_label);

/// Per-zone averages plus the all-zones "india" aggregate row.
void write_zone_averages_csv(std::ostream& os, const AvailabilityRaster& raster,
                             std::string_view preset_label);

/// Percent-area rows for 10 / 12 / 15 channels free.
void write_percent_area_csv(std::ostream& os, const AvailabilityRaster& raster,
                            std::string_view preset_label);

/// Grayscale map: intensity scales with available-channel count, black
/// outside the zone mask. One pixel per cell, north up.
void render_png(const std::filesystem::path& path, const AvailabilityRaster& raster);

}  // namespace tvws::wsmap
