#include "tvws/wsmap.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "tvws/format.hpp"
#include "tvws/png.hpp"

namespace tvws::wsmap {

namespace {

// Exclusion disks regrouped per tower so the rasterizer pays one haversine
// per (cell, tower) instead of one per disk.
struct TowerDisks {
  geo::GeoPoint center;
  geo::BoundingBox reach;  // degree-space box containing every disk
  std::vector<std::pair<int, double>> radii_by_channel;
};

std::vector<TowerDisks> group_by_tower(const std::vector<reg::Transmitter>& towers,
                                       const reg::RegulatoryParams& params, reg::Method method,
                                       const prop::BandPlan& plan) {
  std::vector<TowerDisks> grouped;
  grouped.reserve(towers.size());
  for (const reg::Transmitter& tx : towers) {
    TowerDisks td;
    td.center = tx.location;
    double max_radius = 0.0;
    for (const reg::ExclusionZone& z : reg::exclusion_zones(tx, params, method, plan)) {
      td.radii_by_channel.emplace_back(z.channel, z.radius_km);
      max_radius = std::max(max_radius, z.radius_km);
    }
    const double margin_deg = max_radius / geo::kKmPerDegree * 1.05 + 1e-6;
    const double coslat =
        std::max(0.05, std::cos(tx.location.lat_deg * std::numbers::pi / 180.0));
    td.reach = geo::BoundingBox{tx.location.lat_deg - margin_deg,
                                tx.location.lon_deg - margin_deg / coslat,
                                tx.location.lat_deg + margin_deg,
                                tx.location.lon_deg + margin_deg / coslat};
    grouped.push_back(std::move(td));
  }
  return grouped;
}

std::uint16_t full_mask(const prop::BandPlan& plan) {
  return static_cast<std::uint16_t>((1u << plan.n_channels) - 1u);
}

// Area accumulated per available-channel count over all masked cells.
std::vector<double> area_by_count(const AvailabilityRaster& r) {
  std::vector<double> area(static_cast<std::size_t>(r.plan.n_channels) + 1, 0.0);
  for (int row = 0; row < r.grid.n_rows(); ++row) {
    for (int col = 0; col < r.grid.n_cols(); ++col) {
      if (r.grid.zone_index(row, col) < 0) continue;
      area[static_cast<std::size_t>(r.available_count(row, col))] +=
          r.grid.cell_area_km2(row, col);
    }
  }
  return area;
}

double round4(double v) { return std::round(v * 1e4) / 1e4; }

std::string mask_hex(std::uint16_t mask) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%04x", mask);
  return buf;
}

}  // namespace

std::uint16_t AvailabilityRaster::mask_at(int row, int col) const {
  if (!grid.in_bounds(row, col)) throw std::out_of_range("raster cell index out of range");
  return channel_mask[static_cast<std::size_t>(row) * grid.n_cols() + col];
}

int AvailabilityRaster::available_count(int row, int col) const {
  return std::popcount(mask_at(row, col));
}

bool AvailabilityRaster::channel_free(int row, int col, int channel) const {
  if (!plan.contains(channel)) throw std::invalid_argument("channel outside band plan");
  return (mask_at(row, col) >> (channel - plan.first_channel)) & 1u;
}

bool channel_available(const geo::GeoPoint& pt, int channel,
                       const std::vector<reg::ExclusionZone>& zones) {
  for (const reg::ExclusionZone& z : zones) {
    if (z.channel != channel) continue;
    if (geo::haversine_distance(pt, z.center) <= z.radius_km) return false;
  }
  return true;
}

AvailabilityRaster availability_raster(const geo::RasterGrid& grid,
                                       const std::vector<reg::Transmitter>& towers,
                                       const reg::RegulatoryParams& params, reg::Method method,
                                       const prop::BandPlan& plan, int n_threads) {
  AvailabilityRaster out;
  out.grid = grid;
  out.method = method;
  out.params = params;
  out.plan = plan;
  out.channel_mask.assign(grid.n_cells(), 0);

  const std::vector<TowerDisks> grouped = group_by_tower(towers, params, method, plan);
  const std::uint16_t all_free = full_mask(plan);

  const auto process_rows = [&](int row_begin, int row_end) {
    for (int row = row_begin; row < row_end; ++row) {
      for (int col = 0; col < grid.n_cols(); ++col) {
        if (grid.zone_index(row, col) < 0) continue;
        const geo::GeoPoint center = grid.cell_center(row, col);
        std::uint16_t mask = all_free;
        for (const TowerDisks& td : grouped) {
          if (!td.reach.contains(center)) continue;
          const double d = geo::haversine_distance(center, td.center);
          for (const auto& [channel, radius] : td.radii_by_channel) {
            if (d <= radius) mask &= static_cast<std::uint16_t>(
                                 ~(1u << (channel - plan.first_channel)));
          }
        }
        out.channel_mask[static_cast<std::size_t>(row) * grid.n_cols() + col] = mask;
      }
    }
  };

  int workers = n_threads > 0 ? n_threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max(1, grid.n_rows()));
  if (workers == 1) {
    process_rows(0, grid.n_rows());
  } else {
    std::vector<std::thread> pool;
    const int chunk = (grid.n_rows() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int begin = w * chunk;
      const int end = std::min(grid.n_rows(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(process_rows, begin, end);
    }
    for (std::thread& t : pool) t.join();
  }
  return out;
}

CcdfTable ccdf(const AvailabilityRaster& raster) {
  const std::vector<double> area = area_by_count(raster);
  const double total = std::accumulate(area.begin(), area.end(), 0.0);
  if (!(total > 0.0)) throw std::runtime_error("ccdf: raster has no masked area");

  CcdfTable table;
  table.percent_at_least.resize(area.size());
  double tail = 0.0;
  for (int k = static_cast<int>(area.size()) - 1; k >= 0; --k) {
    tail += area[static_cast<std::size_t>(k)];
    table.percent_at_least[static_cast<std::size_t>(k)] = 100.0 * tail / total;
  }
  return table;
}

double zone_average(const AvailabilityRaster& raster, std::string_view zone_name) {
  const auto& names = raster.grid.zone_names();
  const auto it = std::find(names.begin(), names.end(), zone_name);
  if (it == names.end()) {
    throw std::invalid_argument("unknown zone '" + std::string(zone_name) + "'");
  }
  const int want = static_cast<int>(it - names.begin());

  double weighted = 0.0;
  double total = 0.0;
  for (int row = 0; row < raster.grid.n_rows(); ++row) {
    for (int col = 0; col < raster.grid.n_cols(); ++col) {
      if (raster.grid.zone_index(row, col) != want) continue;
      const double a = raster.grid.cell_area_km2(row, col);
      weighted += a * raster.available_count(row, col);
      total += a;
    }
  }
  if (!(total > 0.0)) {
    throw std::runtime_error("zone '" + std::string(zone_name) +
                             "' has no cells at this resolution");
  }
  return weighted / total;
}

double overall_average(const AvailabilityRaster& raster) {
  double weighted = 0.0;
  double total = 0.0;
  for (int row = 0; row < raster.grid.n_rows(); ++row) {
    for (int col = 0; col < raster.grid.n_cols(); ++col) {
      if (raster.grid.zone_index(row, col) < 0) continue;
      const double a = raster.grid.cell_area_km2(row, col);
      weighted += a * raster.available_count(row, col);
      total += a;
    }
  }
  if (!(total > 0.0)) throw std::runtime_error("raster has no masked area");
  return weighted / total;
}

double percent_area_with_at_least(const AvailabilityRaster& raster, int k) {
  if (k < 0 || k > raster.plan.n_channels) {
    throw std::invalid_argument("k outside [0, n_channels]");
  }
  const std::vector<double> area = area_by_count(raster);
  const double total = std::accumulate(area.begin(), area.end(), 0.0);
  if (!(total > 0.0)) throw std::runtime_error("raster has no masked area");
  double tail = 0.0;
  for (std::size_t j = static_cast<std::size_t>(k); j < area.size(); ++j) tail += area[j];
  return 100.0 * tail / total;
}

void write_raster_csv(std::ostream& os, const AvailabilityRaster& raster,
                      std::string_view preset_label) {
  os << "# tvws raster method=" << reg::to_string(raster.method) << " preset=" << preset_label
     << " resolution=" << fixed4(raster.grid.resolution_deg()) << "\n";
  os << "row,col,lat,lon,zone,bitmask_hex,count\n";
  for (int row = 0; row < raster.grid.n_rows(); ++row) {
    for (int col = 0; col < raster.grid.n_cols(); ++col) {
      if (raster.grid.zone_index(row, col) < 0) continue;
      const geo::GeoPoint c = raster.grid.cell_center(row, col);
      os << row << ',' << col << ',' << fixed4(c.lat_deg) << ',' << fixed4(c.lon_deg) << ','
         << raster.grid.zone_name_at(row, col) << ',' << mask_hex(raster.mask_at(row, col))
         << ',' << raster.available_count(row, col) << "\n";
    }
  }
}

std::vector<RasterCsvRow> read_raster_csv(std::istream& is) {
  std::vector<RasterCsvRow> rows;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {  // column header
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 7) {
      throw std::runtime_error("raster csv line " + std::to_string(lineno) +
                               ": expected 7 fields");
    }
    RasterCsvRow r;
    r.row = std::stoi(fields[0]);
    r.col = std::stoi(fields[1]);
    r.lat_deg = std::stod(fields[2]);
    r.lon_deg = std::stod(fields[3]);
    r.zone = fields[4];
    r.mask = static_cast<std::uint16_t>(std::stoul(fields[5], nullptr, 16));
    r.count = std::stoi(fields[6]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_raster_geojson(std::ostream& os, const AvailabilityRaster& raster,
                          std::string_view preset_label) {
  nlohmann::ordered_json doc;
  doc["type"] = "FeatureCollection";
  doc["properties"] = {{"tool", "tvws"},
                       {"method", std::string(reg::to_string(raster.method))},
                       {"preset", std::string(preset_label)},
                       {"resolution_deg", round4(raster.grid.resolution_deg())}};
  auto& features = doc["features"];
  features = nlohmann::ordered_json::array();

  const double res = raster.grid.resolution_deg();
  for (int row = 0; row < raster.grid.n_rows(); ++row) {
    for (int col = 0; col < raster.grid.n_cols(); ++col) {
      if (raster.grid.zone_index(row, col) < 0) continue;
      const geo::GeoPoint o = raster.grid.origin();
      const double lat0 = round4(o.lat_deg + row * res);
      const double lon0 = round4(o.lon_deg + col * res);
      const double lat1 = round4(o.lat_deg + (row + 1) * res);
      const double lon1 = round4(o.lon_deg + (col + 1) * res);

      nlohmann::ordered_json feature;
      feature["type"] = "Feature";
      feature["geometry"] = {{"type", "Polygon"},
                             {"coordinates",
                              {{{lon0, lat0}, {lon1, lat0}, {lon1, lat1}, {lon0, lat1},
                                {lon0, lat0}}}}};
      std::vector<int> free_channels;
      for (int c = raster.plan.first_channel; c <= raster.plan.last_channel(); ++c) {
        if (raster.channel_free(row, col, c)) free_channels.push_back(c);
      }
      feature["properties"] = {{"row", row},
                               {"col", col},
                               {"zone", raster.grid.zone_name_at(row, col)},
                               {"channels", raster.available_count(row, col)},
                               {"free_channels", free_channels}};
      features.push_back(std::move(feature));
    }
  }
  os << doc.dump() << "\n";
}

void write_ccdf_csv(std::ostream& os, const CcdfTable& table, const AvailabilityRaster& raster,
                    std::string_view preset_label) {
  os << "# tvws ccdf method=" << reg::to_string(raster.method) << " preset=" << preset_label
     << " resolution=" << fixed4(raster.grid.resolution_deg()) << "\n";
  os << "k,percent_area_with_at_least_k\n";
  for (int k = 0; k <= table.max_k(); ++k) {
    os << k << ',' << fixed4(table.percent_at_least[static_cast<std::size_t>(k)]) << "\n";
  }
}

void write_zone_averages_csv(std::ostream& os, const AvailabilityRaster& raster,
                             std::string_view preset_label) {
  os << "# tvws zone averages method=" << reg::to_string(raster.method)
     << " preset=" << preset_label << " resolution=" << fixed4(raster.grid.resolution_deg())
     << "\n";
  os << "zone,avg_channels\n";
  for (const std::string& name : raster.grid.zone_names()) {
    os << name << ',' << fixed4(zone_average(raster, name)) << "\n";
  }
  os << "india," << fixed4(overall_average(raster)) << "\n";
}

void write_percent_area_csv(std::ostream& os, const AvailabilityRaster& raster,
                            std::string_view preset_label) {
  os << "# tvws percent area method=" << reg::to_string(raster.method)
     << " preset=" << preset_label << " resolution=" << fixed4(raster.grid.resolution_deg())
     << "\n";
  os << "channels_free,percent_area\n";
  for (int k : {10, 12, 15}) {
    if (k > raster.plan.n_channels) continue;
    os << k << ',' << fixed4(percent_area_with_at_least(raster, k)) << "\n";
  }
}

void render_png(const std::filesystem::path& path, const AvailabilityRaster& raster) {
  const int w = raster.grid.n_cols();
  const int h = raster.grid.n_rows();
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(w) * h, 0);
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      if (raster.grid.zone_index(row, col) < 0) continue;
      const int count = raster.available_count(row, col);
      const int intensity = 255 * count / raster.plan.n_channels;
      // north up: row 0 of the grid is the southernmost row
      pixels[static_cast<std::size_t>(h - 1 - row) * w + col] =
          static_cast<std::uint8_t>(intensity);
    }
  }
  png::write_grayscale(path, w, h, pixels);
}

}  // namespace tvws::wsmap
