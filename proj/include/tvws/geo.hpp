#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace tvws::geo {

/// Mean earth radius used for all great-circle math, in kilometers.
inline constexpr double kEarthRadiusKm = 6371.0;

/// Kilometers per degree of latitude used by the raster area metric.
inline constexpr double kKmPerDegree = 111.19;

struct GeoPoint {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
};

bool is_valid(const GeoPoint& p);

/// Throws std::invalid_argument if lat/lon are non-finite or out of range.
void validate(const GeoPoint& p);

/// Great-circle distance in km on a sphere of radius kEarthRadiusKm.
double haversine_distance(const GeoPoint& a, const GeoPoint& b);

struct BoundingBox {
  double min_lat = 0.0;
  double min_lon = 0.0;
  double max_lat = 0.0;
  double max_lon = 0.0;

  bool contains(const GeoPoint& p) const {
    return p.lat_deg >= min_lat && p.lat_deg <= max_lat && p.lon_deg >= min_lon &&
           p.lon_deg <= max_lon;
  }
};

/// Named zone polygon. The boundary is stored as an open ring (no repeated
/// closing vertex); construction rejects degenerate, self-intersecting or
/// zero-area rings.
class ZoneRegion {
 public:
  ZoneRegion(std::string name, std::vector<GeoPoint> boundary);

  const std::string& name() const { return name_; }
  const std::vector<GeoPoint>& boundary() const { return boundary_; }
  const BoundingBox& bbox() const { return bbox_; }

 private:
  std::string name_;
  std::vector<GeoPoint> boundary_;
  BoundingBox bbox_;
};

/// Ray-casting containment test. Points on the boundary count as inside.
bool point_in_region(const GeoPoint& p, const ZoneRegion& zone);

/// Equirectangular cell grid over the union bounding box of a zone set.
/// Each cell is tagged with the first zone (in input order) containing its
/// center, or left unmasked.
class RasterGrid {
 public:
  GeoPoint origin() const { return origin_; }
  double resolution_deg() const { return resolution_deg_; }
  int n_rows() const { return n_rows_; }
  int n_cols() const { return n_cols_; }
  std::size_t n_cells() const { return static_cast<std::size_t>(n_rows_) * n_cols_; }

  bool in_bounds(int row, int col) const {
    return row >= 0 && row < n_rows_ && col >= 0 && col < n_cols_;
  }

  GeoPoint cell_center(int row, int col) const;

  /// Zone index for a cell, or -1 for cells outside every zone.
  int zone_index(int row, int col) const;

  /// Zone name for a cell, or "outside".
  const std::string& zone_name_at(int row, int col) const;

  const std::vector<std::string>& zone_names() const { return zone_names_; }

  /// Cos-latitude weighted cell area in km^2. Throws on out-of-range indices.
  double cell_area_km2(int row, int col) const;

  std::size_t masked_cell_count() const;

 private:
  friend RasterGrid make_grid(const std::vector<ZoneRegion>& zones, double resolution_deg);

  GeoPoint origin_;
  double resolution_deg_ = 0.0;
  int n_rows_ = 0;
  int n_cols_ = 0;
  std::vector<std::string> zone_names_;
  std::vector<int16_t> mask_;  // per cell, zone index or -1
};

/// Builds a grid covering the zones at the given resolution (degrees per
/// cell, in (0, 1]). Throws on an empty zone list.
RasterGrid make_grid(const std::vector<ZoneRegion>& zones, double resolution_deg);

/// Loads zone polygons from a GeoJSON FeatureCollection. Each feature must be
/// a Polygon with a "name" property; interior rings (holes) are rejected.
std::vector<ZoneRegion> load_zones_geojson(const std::filesystem::path& path);
std::vector<ZoneRegion> load_zones_geojson_text(const std::string& text);

}  // namespace tvws::geo
