#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "tvws/wsmap.hpp"

using namespace tvws;

namespace {

geo::ZoneRegion equator_zone() {
  return geo::ZoneRegion("eq", {{-1.5, 0}, {-1.5, 3}, {1.5, 3}, {1.5, 0}});
}

reg::Transmitter tower(const std::string& id, double lat, double lon, int channel) {
  reg::Transmitter tx;
  tx.id = id;
  tx.location = {lat, lon};
  tx.power_dbm = 70.0;
  tx.channel = channel;
  tx.antenna_height_m = 100.0;
  tx.env = prop::Environment::UrbanLarge;
  tx.zone = "eq";
  return tx;
}

double total_masked_area(const geo::RasterGrid& grid) {
  double area = 0.0;
  for (int r = 0; r < grid.n_rows(); ++r) {
    for (int c = 0; c < grid.n_cols(); ++c) {
      if (grid.zone_index(r, c) >= 0) area += grid.cell_area_km2(r, c);
    }
  }
  return area;
}

// Channel-hit area removed by one tower's disks under the pollution method:
// the co-channel disk plus both adjacent-channel disks.
double analytic_lost_area(const reg::Transmitter& tx, const reg::RegulatoryParams& p) {
  const double r_co = reg::pollution_radius(tx, p, false).km;
  const double r_adj = reg::pollution_radius(tx, p, true).km;
  const auto n_adj = reg::adjacent_channels(tx.channel).size();
  return std::numbers::pi * (r_co * r_co + static_cast<double>(n_adj) * r_adj * r_adj);
}

// Re-derives every cell's mask with a plain per-disk distance scan.
void check_against_bruteforce(const wsmap::AvailabilityRaster& raster,
                              const std::vector<reg::Transmitter>& towers,
                              const reg::RegulatoryParams& p, reg::Method method) {
  std::vector<reg::ExclusionZone> disks;
  for (const reg::Transmitter& tx : towers) {
    for (const reg::ExclusionZone& z : reg::exclusion_zones(tx, p, method)) {
      disks.push_back(z);
    }
  }
  for (int r = 0; r < raster.grid.n_rows(); ++r) {
    for (int c = 0; c < raster.grid.n_cols(); ++c) {
      if (raster.grid.zone_index(r, c) < 0) {
        REQUIRE(raster.mask_at(r, c) == 0);
        continue;
      }
      const geo::GeoPoint center = raster.grid.cell_center(r, c);
      for (int ch = 21; ch <= 35; ++ch) {
        REQUIRE(raster.channel_free(r, c, ch) == wsmap::channel_available(center, ch, disks));
      }
    }
  }
}

}  // namespace

TEST_CASE("channel availability against explicit disks") {
  const reg::Transmitter tx = tower("t", 0, 0, 29);
  const reg::RegulatoryParams p;
  const auto disks = reg::exclusion_zones(tx, p, reg::Method::Pollution);
  const double r_co = reg::pollution_radius(tx, p, false).km;

  CHECK_FALSE(wsmap::channel_available({0, 0}, 29, disks));
  CHECK(wsmap::channel_available({0, 0}, 33, disks));
  // just outside the co-channel disk (0.3 degrees ~ 33 km at the equator)
  CHECK(wsmap::channel_available({0, r_co / 111.0 * 1.1}, 29, disks));
  // adjacent channels are blocked only near the tower
  CHECK_FALSE(wsmap::channel_available({0, 0.01}, 28, disks));
  CHECK(wsmap::channel_available({0, 0.2}, 28, disks));
}

TEST_CASE("empty tower list leaves the whole band free") {
  const geo::RasterGrid grid = geo::make_grid({equator_zone()}, 0.05);
  REQUIRE(grid.masked_cell_count() == 3600);
  const wsmap::AvailabilityRaster raster =
      wsmap::availability_raster(grid, {}, {}, reg::Method::Intersection);
  for (int r = 0; r < grid.n_rows(); ++r) {
    for (int c = 0; c < grid.n_cols(); ++c) {
      CHECK(raster.mask_at(r, c) == 0x7fff);
      CHECK(raster.available_count(r, c) == 15);
    }
  }
  CHECK(wsmap::zone_average(raster, "eq") == doctest::Approx(15.0));
  CHECK(wsmap::overall_average(raster) == doctest::Approx(15.0));
  const wsmap::CcdfTable table = wsmap::ccdf(raster);
  CHECK(table.percent_at_least[15] == doctest::Approx(100.0));
  CHECK(wsmap::percent_area_with_at_least(raster, 15) == doctest::Approx(100.0));
}

TEST_CASE("single-tower raster matches the brute-force scan and disk areas") {
  const geo::RasterGrid grid = geo::make_grid({equator_zone()}, 0.05);
  const std::vector<reg::Transmitter> towers = {tower("t", 0, 1.5, 29)};
  const reg::RegulatoryParams p;
  const wsmap::AvailabilityRaster raster =
      wsmap::availability_raster(grid, towers, p, reg::Method::Pollution);

  check_against_bruteforce(raster, towers, p, reg::Method::Pollution);

  const double area = total_masked_area(grid);
  CHECK(area == doctest::Approx(111256.2384437551).epsilon(1e-9));
  const double analytic = 15.0 - analytic_lost_area(towers[0], p) / area;
  CHECK(wsmap::zone_average(raster, "eq") == doctest::Approx(analytic).epsilon(0.02));
  CHECK(wsmap::overall_average(raster) ==
        doctest::Approx(wsmap::zone_average(raster, "eq")));

  // the tower cell itself loses the co-channel
  CHECK_FALSE(raster.channel_free(30, 30, 29));
  CHECK(raster.channel_free(30, 30, 33));
}

TEST_CASE("three disjoint towers remove area additively") {
  const geo::RasterGrid grid = geo::make_grid({equator_zone()}, 0.05);
  const std::vector<reg::Transmitter> towers = {
      tower("a", 0, 0.6, 25), tower("b", 0, 1.5, 29), tower("c", 0, 2.4, 33)};
  const reg::RegulatoryParams p;
  const wsmap::AvailabilityRaster raster =
      wsmap::availability_raster(grid, towers, p, reg::Method::Pollution);

  check_against_bruteforce(raster, towers, p, reg::Method::Pollution);

  const double area = total_masked_area(grid);
  double lost = 0.0;
  for (const reg::Transmitter& tx : towers) lost += analytic_lost_area(tx, p);
  CHECK(wsmap::zone_average(raster, "eq") ==
        doctest::Approx(15.0 - lost / area).epsilon(0.02));
}

TEST_CASE("raster is identical across thread counts") {
  const geo::RasterGrid grid = geo::make_grid({equator_zone()}, 0.1);
  const std::vector<reg::Transmitter> towers = {tower("a", 0.4, 0.8, 24),
                                                tower("b", -0.7, 2.0, 31)};
  const reg::RegulatoryParams p;
  const auto serial =
      wsmap::availability_raster(grid, towers, p, reg::Method::Intersection, {}, 1);
  const auto parallel =
      wsmap::availability_raster(grid, towers, p, reg::Method::Intersection, {}, 4);
  REQUIRE(serial.channel_mask.size() == parallel.channel_mask.size());
  CHECK(serial.channel_mask == parallel.channel_mask);
}

TEST_CASE("ccdf is a valid complementary distribution") {
  const geo::RasterGrid grid = geo::make_grid({equator_zone()}, 0.05);
  const std::vector<reg::Transmitter> towers = {tower("t", 0, 1.5, 29)};
  const wsmap::AvailabilityRaster raster =
      wsmap::availability_raster(grid, towers, {}, reg::Method::Intersection);
  const wsmap::CcdfTable table = wsmap::ccdf(raster);

  REQUIRE(table.max_k() == 15);
  CHECK(table.percent_at_least[0] == doctest::Approx(100.0));
  for (int k = 1; k <= 15; ++k) {
    CHECK(table.percent_at_least[k] <= table.percent_at_least[k - 1] + 1e-12);
  }
  for (int k = 0; k <= 15; ++k) {
    CHECK(wsmap::percent_area_with_at_least(raster, k) ==
          doctest::Approx(table.percent_at_least[k]));
  }
  CHECK_THROWS_AS(wsmap::percent_area_with_at_least(raster, -1), std::invalid_argument);
  CHECK_THROWS_AS(wsmap::percent_area_with_at_least(raster, 16), std::invalid_argument);
  CHECK_THROWS_AS(wsmap::zone_average(raster, "nowhere"), std::invalid_argument);
}

TEST_CASE("ccdf requires a nonempty mask") {
  // sliver zone that captures no cell center at this resolution
  const geo::ZoneRegion sliver("s", {{0.8, 0.8}, {0.9, 0.8}, {0.85, 0.9}});
  const geo::RasterGrid grid = geo::make_grid({sliver}, 1.0);
  REQUIRE(grid.masked_cell_count() == 0);
  const wsmap::AvailabilityRaster raster =
      wsmap::availability_raster(grid, {}, {}, reg::Method::Intersection);
  CHECK_THROWS(wsmap::ccdf(raster));
  CHECK_THROWS(wsmap::overall_average(raster));
}

TEST_CASE("intersection removes at least what pollution removes") {
  const geo::RasterGrid grid = geo::make_grid({equator_zone()}, 0.05);
  const std::vector<reg::Transmitter> towers = {tower("t", 0, 1.5, 29)};
  reg::RegulatoryParams p;
  p.delta_db = 5.0;  // weak primary-protection demand -> huge no-talk disks
  const auto pol = wsmap::availability_raster(grid, towers, p, reg::Method::Pollution);
  const auto both = wsmap::availability_raster(grid, towers, p, reg::Method::Intersection);

  bool strictly_smaller = false;
  for (std::size_t i = 0; i < pol.channel_mask.size(); ++i) {
    // intersection mask must be a subset of the pollution mask
    CHECK((both.channel_mask[i] & ~pol.channel_mask[i]) == 0);
    if (both.channel_mask[i] != pol.channel_mask[i]) strictly_smaller = true;
  }
  CHECK(strictly_smaller);
}

TEST_CASE("raster csv round-trips exactly") {
  const geo::RasterGrid grid = geo::make_grid({equator_zone()}, 0.25);
  const std::vector<reg::Transmitter> towers = {tower("t", 0, 1.5, 29)};
  const wsmap::AvailabilityRaster raster =
      wsmap::availability_raster(grid, towers, {}, reg::Method::Intersection);

  std::ostringstream os;
  wsmap::write_raster_csv(os, raster, "defaults");
  const std::string text = os.str();
  CHECK(text.rfind("# tvws raster method=intersection preset=defaults resolution=0.2500",
                   0) == 0);

  std::istringstream is(text);
  const std::vector<wsmap::RasterCsvRow> rows = wsmap::read_raster_csv(is);
  REQUIRE(rows.size() == raster.grid.masked_cell_count());
  for (const wsmap::RasterCsvRow& row : rows) {
    CHECK(row.mask == raster.mask_at(row.row, row.col));
    CHECK(row.count == raster.available_count(row.row, row.col));
    CHECK(row.zone == "eq");
  }

  // identical bytes on a second write
  std::ostringstream again;
  wsmap::write_raster_csv(again, raster, "defaults");
  CHECK(again.str() == text);
}

TEST_CASE("table writers emit labeled, fixed-precision output") {
  const geo::RasterGrid grid = geo::make_grid({equator_zone()}, 0.25);
  const std::vector<reg::Transmitter> towers = {tower("t", 0, 1.5, 29)};
  const wsmap::AvailabilityRaster raster =
      wsmap::availability_raster(grid, towers, {}, reg::Method::Pollution);

  std::ostringstream ccdf_os;
  wsmap::write_ccdf_csv(ccdf_os, wsmap::ccdf(raster), raster, "defaults");
  const std::string ccdf_text = ccdf_os.str();
  CHECK(ccdf_text.find("method=pollution") != std::string::npos);
  CHECK(ccdf_text.find("k,percent_area_with_at_least_k") != std::string::npos);
  CHECK(ccdf_text.find("0,100.0000") != std::string::npos);

  std::ostringstream zones_os;
  wsmap::write_zone_averages_csv(zones_os, raster, "defaults");
  CHECK(zones_os.str().find("eq,") != std::string::npos);
  CHECK(zones_os.str().find("india,") != std::string::npos);

  std::ostringstream pct_os;
  wsmap::write_percent_area_csv(pct_os, raster, "defaults");
  CHECK(pct_os.str().find("channels_free,percent_area") != std::string::npos);
  CHECK(pct_os.str().find("\n10,") != std::string::npos);
  CHECK(pct_os.str().find("\n12,") != std::string::npos);
  CHECK(pct_os.str().find("\n15,") != std::string::npos);
}

TEST_CASE("geojson export mirrors the masked cells") {
  const geo::RasterGrid grid = geo::make_grid({equator_zone()}, 0.25);
  const std::vector<reg::Transmitter> towers = {tower("t", 0, 1.5, 29)};
  const wsmap::AvailabilityRaster raster =
      wsmap::availability_raster(grid, towers, {}, reg::Method::Intersection);

  std::ostringstream os;
  wsmap::write_raster_geojson(os, raster, "defaults");
  const nlohmann::json doc = nlohmann::json::parse(os.str());
  CHECK(doc["type"] == "FeatureCollection");
  REQUIRE(doc["features"].size() == raster.grid.masked_cell_count());
  const auto& first = doc["features"][0];
  CHECK(first["geometry"]["type"] == "Polygon");
  CHECK(first["properties"].contains("zone"));
  CHECK(first["properties"].contains("channels"));
  CHECK(first["properties"]["free_channels"].is_array());
}

TEST_CASE("png render writes a decodable grayscale image") {
  const geo::RasterGrid grid = geo::make_grid({equator_zone()}, 0.25);
  const std::vector<reg::Transmitter> towers = {tower("t", 0, 1.5, 29)};
  const wsmap::AvailabilityRaster raster =
      wsmap::availability_raster(grid, towers, {}, reg::Method::Intersection);

  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "tvws_test_render.png";
  wsmap::render_png(path, raster);

  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  unsigned char header[24] = {};
  in.read(reinterpret_cast<char*>(header), sizeof(header));
  REQUIRE(in.gcount() == 24);
  const unsigned char signature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  CHECK(std::equal(signature, signature + 8, header));
  const auto be32 = [&](int off) {
    return (header[off] << 24) | (header[off + 1] << 16) | (header[off + 2] << 8) |
           header[off + 3];
  };
  CHECK(be32(16) == raster.grid.n_cols());
  CHECK(be32(20) == raster.grid.n_rows());
  std::filesystem::remove(path);
}
