#include "tvws/geo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace tvws::geo {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

double shoelace_area_deg2(const std::vector<GeoPoint>& ring) {
  double acc = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const GeoPoint& a = ring[i];
    const GeoPoint& b = ring[(i + 1) % n];
    acc += a.lon_deg * b.lat_deg - b.lon_deg * a.lat_deg;
  }
  return 0.5 * acc;
}

double cross(const GeoPoint& o, const GeoPoint& a, const GeoPoint& b) {
  return (a.lon_deg - o.lon_deg) * (b.lat_deg - o.lat_deg) -
         (a.lat_deg - o.lat_deg) * (b.lon_deg - o.lon_deg);
}

bool on_segment(const GeoPoint& p, const GeoPoint& a, const GeoPoint& b) {
  constexpr double kEps = 1e-12;
  if (std::abs(cross(a, b, p)) > kEps) return false;
  return p.lon_deg >= std::min(a.lon_deg, b.lon_deg) - kEps &&
         p.lon_deg <= std::max(a.lon_deg, b.lon_deg) + kEps &&
         p.lat_deg >= std::min(a.lat_deg, b.lat_deg) - kEps &&
         p.lat_deg <= std::max(a.lat_deg, b.lat_deg) + kEps;
}

bool proper_intersection(const GeoPoint& a, const GeoPoint& b, const GeoPoint& c,
                         const GeoPoint& d) {
  const double d1 = cross(a, b, c);
  const double d2 = cross(a, b, d);
  const double d3 = cross(c, d, a);
  const double d4 = cross(c, d, b);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
         ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace

bool is_valid(const GeoPoint& p) {
  return std::isfinite(p.lat_deg) && std::isfinite(p.lon_deg) && p.lat_deg >= -90.0 &&
         p.lat_deg <= 90.0 && p.lon_deg >= -180.0 && p.lon_deg <= 180.0;
}

void validate(const GeoPoint& p) {
  if (!is_valid(p)) {
    std::ostringstream msg;
    msg << "invalid geographic point (lat=" << p.lat_deg << ", lon=" << p.lon_deg << ")";
    throw std::invalid_argument(msg.str());
  }
}

double haversine_distance(const GeoPoint& a, const GeoPoint& b) {
  const double lat1 = a.lat_deg * kDegToRad;
  const double lat2 = b.lat_deg * kDegToRad;
  const double dlat = (b.lat_deg - a.lat_deg) * kDegToRad;
  const double dlon = (b.lon_deg - a.lon_deg) * kDegToRad;
  const double s1 = std::sin(0.5 * dlat);
  const double s2 = std::sin(0.5 * dlon);
  const double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

ZoneRegion::ZoneRegion(std::string name, std::vector<GeoPoint> boundary)
    : name_(std::move(name)), boundary_(std::move(boundary)) {
  if (name_.empty()) throw std::invalid_argument("zone name must not be empty");

  // Accept closed rings; store open.
  if (boundary_.size() >= 2) {
    const GeoPoint& first = boundary_.front();
    const GeoPoint& last = boundary_.back();
    if (first.lat_deg == last.lat_deg && first.lon_deg == last.lon_deg) {
      boundary_.pop_back();
    }
  }
  if (boundary_.size() < 3) {
    throw std::invalid_argument("zone '" + name_ + "': polygon needs at least 3 vertices");
  }
  for (const GeoPoint& p : boundary_) validate(p);
  if (std::abs(shoelace_area_deg2(boundary_)) <= 0.0) {
    throw std::invalid_argument("zone '" + name_ + "': polygon has zero area");
  }

  const std::size_t n = boundary_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Skip edges that share a vertex.
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (proper_intersection(boundary_[i], boundary_[(i + 1) % n], boundary_[j],
                              boundary_[(j + 1) % n])) {
        throw std::invalid_argument("zone '" + name_ + "': polygon is self-intersecting");
      }
    }
  }

  bbox_.min_lat = bbox_.max_lat = boundary_.front().lat_deg;
  bbox_.min_lon = bbox_.max_lon = boundary_.front().lon_deg;
  for (const GeoPoint& p : boundary_) {
    bbox_.min_lat = std::min(bbox_.min_lat, p.lat_deg);
    bbox_.max_lat = std::max(bbox_.max_lat, p.lat_deg);
    bbox_.min_lon = std::min(bbox_.min_lon, p.lon_deg);
    bbox_.max_lon = std::max(bbox_.max_lon, p.lon_deg);
  }
}

bool point_in_region(const GeoPoint& p, const ZoneRegion& zone) {
  if (!zone.bbox().contains(p)) return false;
  const std::vector<GeoPoint>& ring = zone.boundary();
  const std::size_t n = ring.size();
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const GeoPoint& a = ring[i];
    const GeoPoint& b = ring[(i + 1) % n];
    if (on_segment(p, a, b)) return true;  // boundary counts as inside
    if ((a.lat_deg > p.lat_deg) != (b.lat_deg > p.lat_deg)) {
      const double x =
          a.lon_deg + (p.lat_deg - a.lat_deg) * (b.lon_deg - a.lon_deg) / (b.lat_deg - a.lat_deg);
      if (x > p.lon_deg) inside = !inside;
    }
  }
  return inside;
}

GeoPoint RasterGrid::cell_center(int row, int col) const {
  return GeoPoint{origin_.lat_deg + (row + 0.5) * resolution_deg_,
                  origin_.lon_deg + (col + 0.5) * resolution_deg_};
}

int RasterGrid::zone_index(int row, int col) const {
  if (!in_bounds(row, col)) {
    throw std::out_of_range("raster cell index out of range");
  }
  return mask_[static_cast<std::size_t>(row) * n_cols_ + col];
}

const std::string& RasterGrid::zone_name_at(int row, int col) const {
  static const std::string kOutside = "outside";
  const int zi = zone_index(row, col);
  return zi < 0 ? kOutside : zone_names_[zi];
}

double RasterGrid::cell_area_km2(int row, int col) const {
  if (!in_bounds(row, col)) {
    throw std::out_of_range("raster cell index out of range");
  }
  const double side = resolution_deg_ * kKmPerDegree;
  return side * side * std::cos(cell_center(row, col).lat_deg * kDegToRad);
}

std::size_t RasterGrid::masked_cell_count() const {
  return static_cast<std::size_t>(std::count_if(mask_.begin(), mask_.end(),
                                                [](int16_t zi) { return zi >= 0; }));
}

RasterGrid make_grid(const std::vector<ZoneRegion>& zones, double resolution_deg) {
  if (zones.empty()) throw std::invalid_argument("make_grid: zone list is empty");
  if (!(resolution_deg > 0.0) || resolution_deg > 1.0) {
    throw std::invalid_argument("make_grid: resolution must be in (0, 1] degrees");
  }

  BoundingBox box = zones.front().bbox();
  for (const ZoneRegion& z : zones) {
    box.min_lat = std::min(box.min_lat, z.bbox().min_lat);
    box.max_lat = std::max(box.max_lat, z.bbox().max_lat);
    box.min_lon = std::min(box.min_lon, z.bbox().min_lon);
    box.max_lon = std::max(box.max_lon, z.bbox().max_lon);
  }

  RasterGrid grid;
  grid.origin_ = GeoPoint{box.min_lat, box.min_lon};
  grid.resolution_deg_ = resolution_deg;
  // Epsilon keeps exact spans (1.0 / 0.5) from picking up a spurious row.
  grid.n_rows_ = std::max(1, static_cast<int>(std::ceil((box.max_lat - box.min_lat) / resolution_deg - 1e-9)));
  grid.n_cols_ = std::max(1, static_cast<int>(std::ceil((box.max_lon - box.min_lon) / resolution_deg - 1e-9)));
  grid.zone_names_.reserve(zones.size());
  for (const ZoneRegion& z : zones) grid.zone_names_.push_back(z.name());

  grid.mask_.assign(grid.n_cells(), int16_t{-1});
  for (int row = 0; row < grid.n_rows_; ++row) {
    for (int col = 0; col < grid.n_cols_; ++col) {
      const GeoPoint center = grid.cell_center(row, col);
      for (std::size_t zi = 0; zi < zones.size(); ++zi) {
        if (point_in_region(center, zones[zi])) {
          grid.mask_[static_cast<std::size_t>(row) * grid.n_cols_ + col] =
              static_cast<int16_t>(zi);
          break;  // first zone wins on overlap
        }
      }
    }
  }
  return grid;
}

std::vector<ZoneRegion> load_zones_geojson_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("GeoJSON parse error: ") + e.what());
  }

  if (doc.value("type", "") != "FeatureCollection") {
    throw std::runtime_error("GeoJSON root must be a FeatureCollection");
  }
  std::vector<ZoneRegion> zones;
  for (const auto& feature : doc.at("features")) {
    const auto& geometry = feature.at("geometry");
    if (geometry.value("type", "") != "Polygon") {
      throw std::runtime_error("GeoJSON feature geometry must be a Polygon");
    }
    const auto& props = feature.at("properties");
    if (!props.contains("name") || !props["name"].is_string()) {
      throw std::runtime_error("GeoJSON feature needs a string \"name\" property");
    }
    const auto& rings = geometry.at("coordinates");
    if (rings.empty()) throw std::runtime_error("GeoJSON polygon has no rings");
    if (rings.size() > 1) {
      throw std::runtime_error("GeoJSON polygon '" + props["name"].get<std::string>() +
                               "' has interior rings (holes are not supported)");
    }
    std::vector<GeoPoint> boundary;
    for (const auto& coord : rings[0]) {
      if (!coord.is_array() || coord.size() < 2) {
        throw std::runtime_error("GeoJSON coordinate must be [lon, lat]");
      }
      boundary.push_back(GeoPoint{coord[1].get<double>(), coord[0].get<double>()});
    }
    zones.emplace_back(props["name"].get<std::string>(), std::move(boundary));
  }
  if (zones.empty()) throw std::runtime_error("GeoJSON contains no zone polygons");
  return zones;
}

std::vector<ZoneRegion> load_zones_geojson(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open zone file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_zones_geojson_text(buf.str());
}

}  // namespace tvws::geo
