#include "tvws/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "tvws/dataio.hpp"
#include "tvws/format.hpp"
#include "tvws/png.hpp"
#include "tvws/reassign.hpp"
#include "tvws/wsmap.hpp"

namespace tvws::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string towers;
  std::string zones;
  std::string method = "intersection";
  std::string preset;
  std::string basis = "fcc";
  double resolution = 0.05;
  std::string out_dir = "out";
  int threads = 0;
  bool no_extrapolate = false;
  int min_separation = 2;
  bool optimal = false;
  std::uint64_t seed = 42;
  int count = 254;
  std::string output = "sample.csv";
  std::string config;
};

/// One subcommand's options plus the handles needed to tell which regulatory
/// knobs were set explicitly.
struct SubState {
  CLI::App* cmd = nullptr;
  Options o;
  reg::RegulatoryParams flags;  // receives explicit knob values during parse
  std::vector<std::pair<CLI::Option*, double reg::RegulatoryParams::*>> knobs;

  reg::RegulatoryParams resolve_params(std::string& label) const {
    reg::RegulatoryParams p;
    label = "defaults";
    if (!o.preset.empty()) {
      p = reg::preset(o.preset);
      label = o.preset;
    }
    bool custom = false;
    for (const auto& [option, field] : knobs) {
      if (option->count() > 0) {
        p.*field = flags.*field;
        custom = true;
      }
    }
    if (custom) label = "custom";
    p.extrapolate = !o.no_extrapolate;
    reg::validate(p);
    return p;
  }
};

void add_regulatory_knobs(SubState& s) {
  CLI::App* c = s.cmd;
  c->add_option("--preset", s.o.preset, "named parameter preset")
      ->check(CLI::IsMember(reg::preset_names()));
  const auto knob = [&](const std::string& name, double reg::RegulatoryParams::*field,
                        const std::string& help) {
    s.knobs.emplace_back(c->add_option(name, s.flags.*field, help), field);
  };
  knob("--gamma-co", &reg::RegulatoryParams::gamma_co_db,
       "co-channel pollution tolerance, dB");
  knob("--gamma-adj", &reg::RegulatoryParams::gamma_adj_db,
       "adjacent-channel pollution tolerance, dB");
  knob("--psi", &reg::RegulatoryParams::psi_db, "fading margin, dB");
  knob("--psi-adj-extra", &reg::RegulatoryParams::psi_adj_extra_db,
       "extra adjacent-channel margin, dB");
  knob("--delta", &reg::RegulatoryParams::delta_db, "required SINR at the primary, dB");
  knob("--secondary-power", &reg::RegulatoryParams::secondary_power_dbm,
       "secondary transmit power, dBm");
  knob("--secondary-haat", &reg::RegulatoryParams::secondary_haat_m,
       "secondary antenna height, m");
  knob("--grade-b", &reg::RegulatoryParams::grade_b_dbu, "Grade-B field strength, dBu");
  c->add_flag("--no-extrapolate", s.o.no_extrapolate,
              "error instead of clamping outside the path-loss validity box");
}

void add_method(SubState& s) {
  s.cmd->add_option("--method", s.o.method, "regulatory viewpoint")
      ->check(CLI::IsMember({"pollution", "protection", "fcc", "intersection"}));
}

void add_towers(SubState& s) {
  s.cmd->add_option("--towers", s.o.towers, "tower database CSV")
      ->required()
      ->check(CLI::ExistingFile);
}

void add_zones(SubState& s) {
  s.cmd->add_option("--zones", s.o.zones, "zone polygons GeoJSON")
      ->required()
      ->check(CLI::ExistingFile);
}

void add_raster(SubState& s) {
  s.cmd->add_option("--resolution", s.o.resolution, "grid cell size, degrees")
      ->check(CLI::Range(1e-4, 1.0));
  s.cmd->add_option("--threads", s.o.threads, "raster worker threads (0 = auto)")
      ->check(CLI::Range(0, 256));
}

void add_out_dir(SubState& s) {
  s.cmd->add_option("--out", s.o.out_dir, "output directory");
}

void add_config(SubState& s) {
  s.cmd->add_option("--config", s.o.config, "key=value file; command-line flags win")
      ->check(CLI::ExistingFile);
}

std::string trim_copy(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

/// Applies flat key=value lines to every option the command line left unset.
/// Values go through the option's own conversion and validators.
void apply_config(SubState& s) {
  if (s.o.config.empty()) return;
  std::ifstream in(s.o.config);
  if (!in) throw std::runtime_error("cannot read config '" + s.o.config + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim_copy(line);
    if (t.empty() || t[0] == '#') continue;
    const auto at = [&] { return s.o.config + ":" + std::to_string(lineno) + ": "; };
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw std::runtime_error(at() + "expected key=value");
    const std::string key = trim_copy(t.substr(0, eq));
    const std::string value = trim_copy(t.substr(eq + 1));
    CLI::Option* opt = key == "config" ? nullptr : s.cmd->get_option_no_throw("--" + key);
    if (opt == nullptr) throw std::runtime_error(at() + "unknown key '" + key + "'");
    if (opt->count() > 0) continue;  // explicit flag wins
    opt->add_result(value);
    opt->run_callback();
  }
}

void write_text_atomic(const fs::path& path,
                       const std::function<void(std::ostream&)>& writer) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    writer(os);
    os.flush();
    if (!os) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

wsmap::AvailabilityRaster build_raster(const SubState& s, const reg::RegulatoryParams& p) {
  const std::vector<geo::ZoneRegion> zones = geo::load_zones_geojson(s.o.zones);
  const geo::RasterGrid grid = geo::make_grid(zones, s.o.resolution);
  const std::vector<reg::Transmitter> towers = dataio::parse_tower_csv(s.o.towers);
  return wsmap::availability_raster(grid, towers, p, reg::method_from_string(s.o.method), {},
                                    s.o.threads);
}

int run_radii(const SubState& s, std::ostream& out) {
  const std::vector<reg::Transmitter> towers = dataio::parse_tower_csv(s.o.towers);
  std::string label;
  const reg::RegulatoryParams p = s.resolve_params(label);
  const reg::Method method = reg::method_from_string(s.o.method);
  out << "# tvws radii method=" << reg::to_string(method) << " preset=" << label << "\n";
  out << "tower,channel,kind,radius_km\n";
  for (const reg::Transmitter& tx : towers) {
    for (const reg::ExclusionZone& z : reg::exclusion_zones(tx, p, method)) {
      out << z.tower_id << ',' << z.channel << ',' << reg::to_string(z.kind) << ','
          << fixed4(z.radius_km) << "\n";
    }
  }
  return 0;
}

int run_rasterize(const SubState& s, std::ostream& out) {
  std::string label;
  const reg::RegulatoryParams p = s.resolve_params(label);
  const wsmap::AvailabilityRaster raster = build_raster(s, p);
  const fs::path dir(s.o.out_dir);
  write_text_atomic(dir / "raster.csv",
                    [&](std::ostream& os) { wsmap::write_raster_csv(os, raster, label); });
  write_text_atomic(dir / "raster.geojson",
                    [&](std::ostream& os) { wsmap::write_raster_geojson(os, raster, label); });
  out << "wrote " << (dir / "raster.csv").string() << "\n";
  out << "wrote " << (dir / "raster.geojson").string() << "\n";
  return 0;
}

int run_stats(const SubState& s, std::ostream& out) {
  std::string label;
  const reg::RegulatoryParams p = s.resolve_params(label);
  const wsmap::AvailabilityRaster raster = build_raster(s, p);
  const fs::path dir(s.o.out_dir);
  write_text_atomic(dir / "zone_averages.csv", [&](std::ostream& os) {
    wsmap::write_zone_averages_csv(os, raster, label);
  });
  write_text_atomic(dir / "percent_area.csv", [&](std::ostream& os) {
    wsmap::write_percent_area_csv(os, raster, label);
  });
  for (const std::string& name : raster.grid.zone_names()) {
    out << name << ": " << fixed4(wsmap::zone_average(raster, name)) << "\n";
  }
  out << "india: " << fixed4(wsmap::overall_average(raster)) << "\n";
  out << "wrote " << (dir / "zone_averages.csv").string() << "\n";
  out << "wrote " << (dir / "percent_area.csv").string() << "\n";
  return 0;
}

int run_ccdf(const SubState& s, std::ostream& out) {
  std::string label;
  const reg::RegulatoryParams p = s.resolve_params(label);
  const wsmap::AvailabilityRaster raster = build_raster(s, p);
  const wsmap::CcdfTable table = wsmap::ccdf(raster);
  const fs::path dir(s.o.out_dir);
  write_text_atomic(dir / "ccdf.csv",
                    [&](std::ostream& os) { wsmap::write_ccdf_csv(os, table, raster, label); });
  out << "wrote " << (dir / "ccdf.csv").string() << "\n";
  return 0;
}

int run_reassign(const SubState& s, std::ostream& out) {
  const std::vector<reg::Transmitter> towers = dataio::parse_tower_csv(s.o.towers);
  std::string label;
  const reg::RegulatoryParams p = s.resolve_params(label);
  const reassign::CoverageBasis basis = reassign::coverage_basis_from_string(s.o.basis);
  const reassign::InterferenceGraph g = reassign::build_interference_graph(towers, p, basis);
  const reassign::ChannelAssignment a =
      s.o.optimal ? reassign::optimal_reassign_bruteforce(g, {}, s.o.min_separation)
                  : reassign::greedy_reassign(g, {}, s.o.min_separation);

  std::map<std::string, int> old_channel;
  std::map<std::string, std::set<int>> zone_before;
  std::map<std::string, std::set<int>> zone_after;
  std::set<int> before_all;
  for (const reg::Transmitter& tx : towers) {
    old_channel[tx.id] = tx.channel;
    zone_before[tx.zone].insert(tx.channel);
    zone_after[tx.zone].insert(a.channels.at(tx.id));
    before_all.insert(tx.channel);
  }

  const fs::path dir(s.o.out_dir);
  write_text_atomic(dir / "assignment.csv", [&](std::ostream& os) {
    os << "# tvws reassign basis=" << reassign::to_string(basis) << " preset=" << label
       << " min_separation=" << a.min_separation << "\n";
    os << "tower,zone,old_channel,new_channel\n";
    for (const reg::Transmitter& tx : towers) {
      os << tx.id << ',' << tx.zone << ',' << tx.channel << ',' << a.channels.at(tx.id)
         << "\n";
    }
  });

  nlohmann::ordered_json doc;
  doc["basis"] = std::string(reassign::to_string(basis));
  doc["preset"] = label;
  doc["solver"] = s.o.optimal ? "bruteforce" : "greedy";
  doc["min_separation"] = a.min_separation;
  doc["towers"] = towers.size();
  doc["edges"] = g.edges.size();
  doc["distinct_channels_before"] = before_all.size();
  doc["distinct_channels_after"] = a.distinct_channels_used;
  doc["violations"] = nlohmann::ordered_json::array();
  for (const auto& [u, v] : a.violations) doc["violations"].push_back({u, v});
  doc["zones"] = nlohmann::ordered_json::object();
  for (const auto& [zone, before] : zone_before) {
    doc["zones"][zone] = {{"before", before.size()}, {"after", zone_after[zone].size()}};
  }
  write_text_atomic(dir / "summary.json",
                    [&](std::ostream& os) { os << doc.dump(2) << "\n"; });

  out << "towers: " << towers.size() << ", edges: " << g.edges.size() << "\n";
  out << "distinct channels: " << a.distinct_channels_used << "\n";
  out << "wrote " << (dir / "assignment.csv").string() << "\n";
  out << "wrote " << (dir / "summary.json").string() << "\n";
  return 0;
}

int run_render(const SubState& s, std::ostream& out) {
  std::string label;
  const reg::RegulatoryParams p = s.resolve_params(label);
  const wsmap::AvailabilityRaster raster = build_raster(s, p);
  const fs::path dir(s.o.out_dir);
  fs::create_directories(dir);
  const fs::path path = dir / "availability.png";
  fs::path tmp = path;
  tmp += ".tmp";
  wsmap::render_png(tmp, raster);
  fs::rename(tmp, path);
  out << "wrote " << path.string() << "\n";
  return 0;
}

int run_gen_sample(const SubState& s, std::ostream& out) {
  const std::vector<geo::ZoneRegion> zones = geo::load_zones_geojson(s.o.zones);
  const std::vector<reg::Transmitter> towers =
      dataio::gen_sample_towers(s.o.seed, zones, s.o.count);
  write_text_atomic(s.o.output,
                    [&](std::ostream& os) { dataio::write_tower_csv(os, towers); });
  out << "wrote " << s.o.output << " (" << towers.size() << " towers)\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"TV white space mapper: exclusion radii, availability rasters and channel "
               "reassignment for a TV-transmitter database"};
  app.require_subcommand(1);

  SubState radii;
  radii.cmd = app.add_subcommand("radii", "print per-tower exclusion radii");
  add_towers(radii);
  add_method(radii);
  add_regulatory_knobs(radii);
  add_config(radii);

  SubState rasterize;
  rasterize.cmd = app.add_subcommand("rasterize", "write the availability raster (CSV, GeoJSON)");
  add_towers(rasterize);
  add_zones(rasterize);
  add_method(rasterize);
  add_regulatory_knobs(rasterize);
  add_raster(rasterize);
  add_out_dir(rasterize);
  add_config(rasterize);

  SubState stats;
  stats.cmd = app.add_subcommand("stats", "write zone averages and percent-area tables");
  add_towers(stats);
  add_zones(stats);
  add_method(stats);
  add_regulatory_knobs(stats);
  add_raster(stats);
  add_out_dir(stats);
  add_config(stats);

  SubState ccdf;
  ccdf.cmd = app.add_subcommand("ccdf", "write the channels-free CCDF table");
  add_towers(ccdf);
  add_zones(ccdf);
  add_method(ccdf);
  add_regulatory_knobs(ccdf);
  add_raster(ccdf);
  add_out_dir(ccdf);
  add_config(ccdf);

  SubState reassign_cmd;
  reassign_cmd.cmd = app.add_subcommand("reassign", "recolor towers with the fewest channels");
  add_towers(reassign_cmd);
  add_regulatory_knobs(reassign_cmd);
  add_out_dir(reassign_cmd);
  add_config(reassign_cmd);
  reassign_cmd.cmd->add_option("--basis", reassign_cmd.o.basis, "coverage contour for overlap")
      ->check(CLI::IsMember({"protection", "fcc"}));
  reassign_cmd.cmd
      ->add_option("--min-separation", reassign_cmd.o.min_separation,
                   "required channel-index gap on overlapping towers")
      ->check(CLI::Range(1, 14));
  reassign_cmd.cmd->add_flag("--optimal", reassign_cmd.o.optimal,
                             "exhaustive minimum instead of greedy (<= 12 towers)");

  SubState render;
  render.cmd = app.add_subcommand("render", "write a grayscale availability map PNG");
  add_towers(render);
  add_zones(render);
  add_method(render);
  add_regulatory_knobs(render);
  add_raster(render);
  add_out_dir(render);
  add_config(render);

  SubState gen;
  gen.cmd = app.add_subcommand("gen-sample", "write a seeded synthetic tower database");
  add_zones(gen);
  add_config(gen);
  gen.cmd->add_option("--seed", gen.o.seed, "random seed");
  gen.cmd->add_option("--count", gen.o.count, "towers to generate")->check(CLI::Range(1, 100000));
  gen.cmd->add_option("--output", gen.o.output, "output CSV path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    for (SubState* s : {&radii, &rasterize, &stats, &ccdf, &reassign_cmd, &render, &gen}) {
      if (s->cmd->parsed()) apply_config(*s);
    }
    if (radii.cmd->parsed()) return run_radii(radii, out);
    if (rasterize.cmd->parsed()) return run_rasterize(rasterize, out);
    if (stats.cmd->parsed()) return run_stats(stats, out);
    if (ccdf.cmd->parsed()) return run_ccdf(ccdf, out);
    if (reassign_cmd.cmd->parsed()) return run_reassign(reassign_cmd, out);
    if (render.cmd->parsed()) return run_render(render, out);
    if (gen.cmd->parsed()) return run_gen_sample(gen, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace tvws::cli
