#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <utility>
#include <vector>

#include "tvws/dataio.hpp"
#include "tvws/geo.hpp"
#include "tvws/propagation.hpp"
#include "tvws/reassign.hpp"
#include "tvws/regulatory.hpp"
#include "tvws/wsmap.hpp"

namespace py = pybind11;
using namespace tvws;

namespace {

prop::Environment env_arg(const std::string& s) { return prop::environment_from_string(s); }

}  // namespace

PYBIND11_MODULE(_tvws, m) {
  m.doc() = "TV white space quantification: propagation, exclusion radii, availability "
            "rasters and channel reassignment";

  // propagation
  py::class_<prop::BandPlan>(m, "BandPlan")
      .def(py::init<>())
      .def_readwrite("first_channel", &prop::BandPlan::first_channel)
      .def_readwrite("n_channels", &prop::BandPlan::n_channels)
      .def_readwrite("band_start_mhz", &prop::BandPlan::band_start_mhz)
      .def_readwrite("channel_width_mhz", &prop::BandPlan::channel_width_mhz)
      .def("last_channel", &prop::BandPlan::last_channel)
      .def("contains", &prop::BandPlan::contains, py::arg("channel"));

  m.def(
      "channel_bounds",
      [](int channel) {
        const prop::ChannelBounds b = prop::channel_bounds(channel);
        return py::make_tuple(b.low_mhz, b.high_mhz);
      },
      py::arg("channel"), "(low, high) frequency bounds of a channel in MHz.");
  m.def("noise_floor_dbm", &prop::noise_floor_dbm, py::arg("bandwidth_hz"),
        "Thermal noise floor at 290 K in dBm.");
  m.def("dbu_to_dbm", &prop::dbu_to_dbm, py::arg("e_dbu"), py::arg("f_low_mhz"),
        py::arg("f_high_mhz"), "Field strength to received power for one channel.");
  m.def(
      "hata_path_loss",
      [](double f_mhz, double tx_height_m, double rx_height_m, double distance_km,
         const std::string& env, bool extrapolate) {
        return prop::hata_path_loss(f_mhz, tx_height_m, rx_height_m, distance_km,
                                    env_arg(env), extrapolate)
            .loss_db;
      },
      py::arg("f_mhz"), py::arg("tx_height_m"), py::arg("rx_height_m"),
      py::arg("distance_km"), py::arg("env") = "urban-medium",
      py::arg("extrapolate") = true, "Okumura-Hata median path loss in dB.");
  m.def(
      "hata_inverse_distance",
      [](double f_mhz, double tx_height_m, double rx_height_m, double path_loss_db,
         const std::string& env, bool extrapolate) {
        return prop::hata_inverse_distance(f_mhz, tx_height_m, rx_height_m, path_loss_db,
                                           env_arg(env), extrapolate)
            .distance_km;
      },
      py::arg("f_mhz"), py::arg("tx_height_m"), py::arg("rx_height_m"),
      py::arg("path_loss_db"), py::arg("env") = "urban-medium",
      py::arg("extrapolate") = true,
      "Distance in km at which the path loss reaches the given value.");

  // geography
  py::class_<geo::GeoPoint>(m, "GeoPoint")
      .def(py::init([](double lat, double lon) {
             geo::GeoPoint p{lat, lon};
             geo::validate(p);
             return p;
           }),
           py::arg("lat"), py::arg("lon"))
      .def_readwrite("lat", &geo::GeoPoint::lat_deg)
      .def_readwrite("lon", &geo::GeoPoint::lon_deg)
      .def("__repr__", [](const geo::GeoPoint& p) {
        return "GeoPoint(lat=" + std::to_string(p.lat_deg) +
               ", lon=" + std::to_string(p.lon_deg) + ")";
      });

  m.def("haversine_km", &geo::haversine_distance, py::arg("a"), py::arg("b"),
        "Great-circle distance in km.");

  py::class_<geo::ZoneRegion>(m, "ZoneRegion")
      .def(py::init<std::string, std::vector<geo::GeoPoint>>(), py::arg("name"),
           py::arg("boundary"))
      .def_property_readonly("name", &geo::ZoneRegion::name)
      .def_property_readonly("boundary", &geo::ZoneRegion::boundary)
      .def("contains",
           [](const geo::ZoneRegion& z, const geo::GeoPoint& p) {
             return geo::point_in_region(p, z);
           },
           py::arg("point"));

  m.def(
      "load_zones_geojson",
      [](const std::filesystem::path& path) { return geo::load_zones_geojson(path); },
      py::arg("path"), "Zone polygons from a GeoJSON FeatureCollection.");

  py::class_<geo::RasterGrid>(m, "RasterGrid")
      .def_property_readonly("n_rows", &geo::RasterGrid::n_rows)
      .def_property_readonly("n_cols", &geo::RasterGrid::n_cols)
      .def_property_readonly("resolution_deg", &geo::RasterGrid::resolution_deg)
      .def_property_readonly("zone_names", &geo::RasterGrid::zone_names)
      .def("cell_center", &geo::RasterGrid::cell_center, py::arg("row"), py::arg("col"))
      .def("zone_name_at", &geo::RasterGrid::zone_name_at, py::arg("row"), py::arg("col"))
      .def("cell_area_km2", &geo::RasterGrid::cell_area_km2, py::arg("row"), py::arg("col"))
      .def("masked_cell_count", &geo::RasterGrid::masked_cell_count);

  m.def("make_grid", &geo::make_grid, py::arg("zones"), py::arg("resolution_deg"),
        "Zone-masked grid over the zones' bounding box.");

  // transmitters and regulatory parameters
  py::class_<reg::Transmitter>(m, "Transmitter")
      .def(py::init([](std::string id, double lat, double lon, double power_dbm, int channel,
                       double haat_m, const std::string& env, std::string zone) {
             reg::Transmitter t;
             t.id = std::move(id);
             t.location = {lat, lon};
             t.power_dbm = power_dbm;
             t.channel = channel;
             t.antenna_height_m = haat_m;
             t.env = env_arg(env);
             t.zone = std::move(zone);
             reg::validate(t);
             return t;
           }),
           py::arg("id"), py::arg("lat"), py::arg("lon"), py::arg("power_dbm"),
           py::arg("channel"), py::arg("haat_m"), py::arg("env") = "urban-medium",
           py::arg("zone") = "")
      .def_readwrite("id", &reg::Transmitter::id)
      .def_readwrite("location", &reg::Transmitter::location)
      .def_readwrite("power_dbm", &reg::Transmitter::power_dbm)
      .def_readwrite("channel", &reg::Transmitter::channel)
      .def_readwrite("haat_m", &reg::Transmitter::antenna_height_m)
      .def_readwrite("zone", &reg::Transmitter::zone)
      .def_property(
          "env",
          [](const reg::Transmitter& t) { return std::string(prop::to_string(t.env)); },
          [](reg::Transmitter& t, const std::string& s) { t.env = env_arg(s); })
      .def("__repr__", [](const reg::Transmitter& t) {
        return "Transmitter(id='" + t.id + "', channel=" + std::to_string(t.channel) + ")";
      });

  py::class_<reg::RegulatoryParams>(m, "RegulatoryParams")
      .def(py::init<>())
      .def_readwrite("gamma_co_db", &reg::RegulatoryParams::gamma_co_db)
      .def_readwrite("gamma_adj_db", &reg::RegulatoryParams::gamma_adj_db)
      .def_readwrite("psi_db", &reg::RegulatoryParams::psi_db)
      .def_readwrite("psi_adj_extra_db", &reg::RegulatoryParams::psi_adj_extra_db)
      .def_readwrite("delta_db", &reg::RegulatoryParams::delta_db)
      .def_readwrite("secondary_power_dbm", &reg::RegulatoryParams::secondary_power_dbm)
      .def_readwrite("secondary_haat_m", &reg::RegulatoryParams::secondary_haat_m)
      .def_readwrite("grade_b_dbu", &reg::RegulatoryParams::grade_b_dbu)
      .def_readwrite("noise_dbm", &reg::RegulatoryParams::noise_dbm)
      .def_readwrite("rx_height_m", &reg::RegulatoryParams::rx_height_m)
      .def_readwrite("extrapolate", &reg::RegulatoryParams::extrapolate);

  m.def(
      "preset", [](const std::string& name) { return reg::preset(name); }, py::arg("name"),
      "Named regulatory parameter preset.");
  m.def("preset_names", [] { return reg::preset_names(); });

  m.def(
      "pollution_radius_km",
      [](const reg::Transmitter& tx, const reg::RegulatoryParams& p, bool adjacent) {
        return reg::pollution_radius(tx, p, adjacent).km;
      },
      py::arg("tx"), py::arg("params") = reg::RegulatoryParams{},
      py::arg("adjacent") = false);
  m.def(
      "protection_radius_km",
      [](const reg::Transmitter& tx, const reg::RegulatoryParams& p) {
        return reg::protection_radius(tx, p).km;
      },
      py::arg("tx"), py::arg("params") = reg::RegulatoryParams{});
  m.def(
      "no_talk_radius_km",
      [](const reg::Transmitter& tx, const reg::RegulatoryParams& p, bool adjacent) {
        return reg::no_talk_radius(tx, p, adjacent).km;
      },
      py::arg("tx"), py::arg("params") = reg::RegulatoryParams{},
      py::arg("adjacent") = false);
  m.def(
      "fcc_grade_b_radius_km",
      [](const reg::Transmitter& tx, const reg::RegulatoryParams& p) {
        return reg::fcc_grade_b_radius(tx, p).km;
      },
      py::arg("tx"), py::arg("params") = reg::RegulatoryParams{});
  m.def(
      "fcc_no_talk_radius_km",
      [](const reg::Transmitter& tx, const reg::RegulatoryParams& p) {
        return reg::fcc_no_talk_radius(tx, p).km;
      },
      py::arg("tx"), py::arg("params") = reg::RegulatoryParams{});

  py::class_<reg::ExclusionZone>(m, "ExclusionZone")
      .def_readonly("tower_id", &reg::ExclusionZone::tower_id)
      .def_readonly("center", &reg::ExclusionZone::center)
      .def_readonly("channel", &reg::ExclusionZone::channel)
      .def_readonly("radius_km", &reg::ExclusionZone::radius_km)
      .def_property_readonly("kind", [](const reg::ExclusionZone& z) {
        return std::string(reg::to_string(z.kind));
      });

  m.def(
      "exclusion_zones",
      [](const reg::Transmitter& tx, const reg::RegulatoryParams& p,
         const std::string& method) {
        return reg::exclusion_zones(tx, p, reg::method_from_string(method));
      },
      py::arg("tx"), py::arg("params") = reg::RegulatoryParams{},
      py::arg("method") = "intersection", "Per-tower exclusion disks under a method.");

  // tower database input / output
  m.def("kw_to_dbm", &dataio::kw_to_dbm, py::arg("kw"));
  m.def(
      "parse_tower_csv",
      [](const std::filesystem::path& path) { return dataio::parse_tower_csv(path); },
      py::arg("path"), "Validated transmitters from a tower CSV.");
  m.def(
      "gen_sample_towers",
      [](std::uint64_t seed, const std::vector<geo::ZoneRegion>& zones, int count) {
        return dataio::gen_sample_towers(seed, zones, count);
      },
      py::arg("seed"), py::arg("zones"), py::arg("count"),
      "Seeded synthetic tower database inside the zone polygons.");

  // availability rasters and statistics
  py::class_<wsmap::AvailabilityRaster>(m, "AvailabilityRaster")
      .def_readonly("grid", &wsmap::AvailabilityRaster::grid)
      .def("mask_at", &wsmap::AvailabilityRaster::mask_at, py::arg("row"), py::arg("col"))
      .def("available_count", &wsmap::AvailabilityRaster::available_count, py::arg("row"),
           py::arg("col"))
      .def("channel_free", &wsmap::AvailabilityRaster::channel_free, py::arg("row"),
           py::arg("col"), py::arg("channel"));

  m.def(
      "availability_raster",
      [](const geo::RasterGrid& grid, const std::vector<reg::Transmitter>& towers,
         const reg::RegulatoryParams& p, const std::string& method, int n_threads) {
        return wsmap::availability_raster(grid, towers, p, reg::method_from_string(method),
                                          {}, n_threads);
      },
      py::arg("grid"), py::arg("towers"), py::arg("params") = reg::RegulatoryParams{},
      py::arg("method") = "intersection", py::arg("n_threads") = 0,
      "Per-cell channel availability over the grid.");

  m.def(
      "ccdf", [](const wsmap::AvailabilityRaster& r) { return wsmap::ccdf(r).percent_at_least; },
      py::arg("raster"),
      "Percent of masked area with at least k channels free, index k = 0..n_channels.");
  m.def(
      "zone_average",
      [](const wsmap::AvailabilityRaster& r, const std::string& zone) {
        return wsmap::zone_average(r, zone);
      },
      py::arg("raster"), py::arg("zone"));
  m.def("overall_average", &wsmap::overall_average, py::arg("raster"));
  m.def("render_png", &wsmap::render_png, py::arg("path"), py::arg("raster"),
        "Grayscale availability map, one pixel per cell.");

  // channel reassignment
  py::class_<reassign::InterferenceGraph>(m, "InterferenceGraph")
      .def_readonly("nodes", &reassign::InterferenceGraph::nodes)
      .def_readonly("edges", &reassign::InterferenceGraph::edges)
      .def("n", &reassign::InterferenceGraph::n);

  py::class_<reassign::ChannelAssignment>(m, "ChannelAssignment")
      .def_readonly("channels", &reassign::ChannelAssignment::channels)
      .def_readonly("distinct_channels_used",
                    &reassign::ChannelAssignment::distinct_channels_used)
      .def_readonly("min_separation", &reassign::ChannelAssignment::min_separation)
      .def_readonly("violations", &reassign::ChannelAssignment::violations)
      .def("valid", &reassign::ChannelAssignment::valid);

  m.def(
      "build_interference_graph",
      [](const std::vector<reg::Transmitter>& towers, const reg::RegulatoryParams& p,
         const std::string& basis) {
        return reassign::build_interference_graph(towers, p,
                                                  reassign::coverage_basis_from_string(basis));
      },
      py::arg("towers"), py::arg("params") = reg::RegulatoryParams{},
      py::arg("basis") = "fcc", "Coverage-overlap graph over the towers.");
  m.def(
      "greedy_reassign",
      [](const reassign::InterferenceGraph& g, int min_separation) {
        return reassign::greedy_reassign(g, {}, min_separation);
      },
      py::arg("graph"), py::arg("min_separation") = 2);
  m.def(
      "optimal_reassign",
      [](const reassign::InterferenceGraph& g, int min_separation) {
        return reassign::optimal_reassign_bruteforce(g, {}, min_separation);
      },
      py::arg("graph"), py::arg("min_separation") = 2,
      "Exhaustive minimum-channel assignment; capped at 12 towers.");
}
