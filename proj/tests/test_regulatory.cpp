#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>

#include "tvws/regulatory.hpp"

using namespace tvws;

namespace {

reg::Transmitter pune_tower() {
  reg::Transmitter tx;
  tx.id = "pune";
  tx.location = {18.366, 73.755};
  tx.power_dbm = 70.0;
  tx.channel = 29;
  tx.antenna_height_m = 100.0;
  tx.env = prop::Environment::UrbanLarge;
  tx.zone = "west";
  return tx;
}

}  // namespace

TEST_CASE("transmitter validation") {
  reg::Transmitter tx = pune_tower();
  CHECK_NOTHROW(reg::validate(tx));

  tx = pune_tower();
  tx.id = "";
  CHECK_THROWS_AS(reg::validate(tx), std::invalid_argument);

  tx = pune_tower();
  tx.power_dbm = 20.0;
  CHECK_THROWS_AS(reg::validate(tx), std::invalid_argument);
  tx.power_dbm = 95.0;
  CHECK_THROWS_AS(reg::validate(tx), std::invalid_argument);

  tx = pune_tower();
  tx.antenna_height_m = 0.0;
  CHECK_THROWS_AS(reg::validate(tx), std::invalid_argument);

  tx = pune_tower();
  tx.channel = 36;
  CHECK_THROWS_AS(reg::validate(tx), std::invalid_argument);

  tx = pune_tower();
  tx.location = {95.0, 0.0};
  CHECK_THROWS_AS(reg::validate(tx), std::invalid_argument);
}

TEST_CASE("parameter presets") {
  CHECK(reg::preset("pollution-5").gamma_co_db == doctest::Approx(5.0));
  CHECK(reg::preset("pollution-10").gamma_co_db == doctest::Approx(10.0));
  CHECK(reg::preset("pollution-15").gamma_co_db == doctest::Approx(15.0));
  CHECK(reg::preset("protection-0.1").psi_db == doctest::Approx(0.1));
  CHECK(reg::preset("protection-1").psi_db == doctest::Approx(1.0));

  const reg::RegulatoryParams fcc = reg::preset("fcc");
  const reg::RegulatoryParams defaults;
  CHECK(fcc.grade_b_dbu == doctest::Approx(defaults.grade_b_dbu));
  CHECK(fcc.secondary_power_dbm == doctest::Approx(defaults.secondary_power_dbm));

  CHECK(reg::preset_names().size() == 6);
  CHECK_THROWS_AS(reg::preset("pollution-20"), std::invalid_argument);

  reg::RegulatoryParams bad;
  bad.gamma_adj_db = bad.gamma_co_db - 1.0;
  CHECK_THROWS_AS(reg::validate(bad), std::invalid_argument);
}

// Radii below were hand-evaluated from the closed-form inverse with the
// default parameter table (noise figure -104.97 dBm, 538 MHz, HAAT 100 m).
TEST_CASE("worked-example radii") {
  const reg::Transmitter tx = pune_tower();
  const reg::RegulatoryParams p;  // gamma 15, psi 1, delta 45

  CHECK(reg::pollution_radius(tx, p, false).km ==
        doctest::Approx(29.2479116598).epsilon(1e-9));
  CHECK(reg::pollution_radius(tx, p, true).km ==
        doctest::Approx(3.3319512294).epsilon(1e-9));
  CHECK(reg::protection_radius(tx, p).km == doctest::Approx(3.0992177809).epsilon(1e-9));
  CHECK(reg::no_talk_radius(tx, p, false).km ==
        doctest::Approx(3.1092177809).epsilon(1e-9));
  CHECK(reg::fcc_grade_b_radius(tx, p).km == doctest::Approx(26.5590522258).epsilon(1e-9));
  CHECK(reg::fcc_no_talk_radius(tx, p).km == doctest::Approx(32.4246831106).epsilon(1e-9));

  CHECK(reg::pollution_radius(tx, reg::preset("pollution-5"), false).km ==
        doctest::Approx(60.3337432913).epsilon(1e-9));
  CHECK(reg::pollution_radius(tx, reg::preset("pollution-10"), false).km ==
        doctest::Approx(42.0075706735).epsilon(1e-9));
  CHECK(reg::protection_radius(tx, reg::preset("protection-0.1")).km ==
        doctest::Approx(3.3079122610).epsilon(1e-9));
}

TEST_CASE("separation distance floors at the inverse clamp") {
  const reg::RegulatoryParams p;
  // P_s - psi = 35 dB: far below any loss the secondary curve can produce,
  // so the separation collapses to the 0.01 km floor, as does the adjacent
  // case where the target is another 27 dB lower.
  const reg::Radius co = reg::separation_distance(p, false, 538.0,
                                                  prop::Environment::UrbanLarge);
  CHECK(co.km == doctest::Approx(0.01));
  CHECK(co.clamped);
  const reg::Radius adj = reg::separation_distance(p, true, 538.0,
                                                   prop::Environment::UrbanLarge);
  CHECK(adj.km == doctest::Approx(0.01));
  CHECK(adj.clamped);

  // no-talk is the exact sum of protection and separation, flags included
  const reg::Transmitter tx = pune_tower();
  const reg::Radius nt = reg::no_talk_radius(tx, p, false);
  CHECK(nt.km == doctest::Approx(reg::protection_radius(tx, p).km + co.km));
  CHECK(nt.clamped);
}

TEST_CASE("fcc contour sits between pollution and protection scales") {
  const reg::Transmitter tx = pune_tower();
  const reg::RegulatoryParams p;
  const double grade_b = reg::fcc_grade_b_radius(tx, p).km;
  const double fcc_nt = reg::fcc_no_talk_radius(tx, p).km;
  CHECK(fcc_nt > grade_b);
  // FCC no-talk exceeds the protection-viewpoint no-talk here
  CHECK(fcc_nt > reg::no_talk_radius(tx, p, false).km);
}

TEST_CASE("radii monotonicity over randomized towers") {
  std::mt19937_64 rng(7041);
  const auto uniform = [&](double lo, double hi) {
    return lo + static_cast<double>(rng() >> 11) * 0x1p-53 * (hi - lo);
  };
  for (int i = 0; i < 100; ++i) {
    reg::Transmitter tx;
    tx.id = "t";
    tx.location = {uniform(8, 30), uniform(69, 96)};
    tx.power_dbm = uniform(47, 80);
    tx.channel = 21 + static_cast<int>(uniform(0, 15));
    if (tx.channel > 35) tx.channel = 35;
    tx.antenna_height_m = uniform(30, 200);
    tx.env = prop::Environment::UrbanLarge;

    reg::RegulatoryParams p;

    // pollution radius strictly decreasing in gamma
    double prev = 1e9;
    for (double gamma : {5.0, 10.0, 15.0, 25.0}) {
      p = reg::RegulatoryParams{};
      p.gamma_co_db = gamma;
      const double r = reg::pollution_radius(tx, p, false).km;
      CHECK(r < prev);
      prev = r;
    }

    // protection radius increasing in transmit power
    p = reg::RegulatoryParams{};
    reg::Transmitter strong = tx;
    strong.power_dbm = tx.power_dbm + 5.0;
    CHECK(reg::protection_radius(strong, p).km > reg::protection_radius(tx, p).km);

    // protection radius decreasing in psi
    reg::RegulatoryParams tight;
    tight.psi_db = 3.0;
    CHECK(reg::protection_radius(tx, tight).km < reg::protection_radius(tx, p).km);

    // grade-b radius decreasing in the field-strength threshold
    reg::RegulatoryParams high;
    high.grade_b_dbu = 47.0;
    CHECK(reg::fcc_grade_b_radius(tx, high).km < reg::fcc_grade_b_radius(tx, p).km);
  }
}

TEST_CASE("adjacent channels truncate at the band edges") {
  CHECK(reg::adjacent_channels(21) == std::vector<int>{22});
  CHECK(reg::adjacent_channels(29) == std::vector<int>{28, 30});
  CHECK(reg::adjacent_channels(35) == std::vector<int>{34});
}

TEST_CASE("exclusion zone composition per method") {
  const reg::Transmitter tx = pune_tower();
  const reg::RegulatoryParams p;

  const auto pollution = reg::exclusion_zones(tx, p, reg::Method::Pollution);
  REQUIRE(pollution.size() == 3);
  CHECK(pollution[0].kind == reg::ZoneKind::PollutionCo);
  CHECK(pollution[0].channel == 29);
  CHECK(pollution[1].kind == reg::ZoneKind::PollutionAdj);
  CHECK(pollution[1].channel == 28);
  CHECK(pollution[2].channel == 30);
  CHECK(pollution[1].radius_km == doctest::Approx(pollution[2].radius_km));
  CHECK(pollution[0].radius_km > pollution[1].radius_km);

  const auto protection = reg::exclusion_zones(tx, p, reg::Method::Protection);
  REQUIRE(protection.size() == 3);
  CHECK(protection[0].kind == reg::ZoneKind::NoTalkCo);
  CHECK(protection[1].kind == reg::ZoneKind::NoTalkAdj);

  const auto fcc = reg::exclusion_zones(tx, p, reg::Method::Fcc);
  REQUIRE(fcc.size() == 1);
  CHECK(fcc[0].kind == reg::ZoneKind::FccNoTalk);
  CHECK(fcc[0].channel == 29);

  const auto both = reg::exclusion_zones(tx, p, reg::Method::Intersection);
  REQUIRE(both.size() == 6);
  CHECK(both[0].kind == reg::ZoneKind::PollutionCo);
  CHECK(both[3].kind == reg::ZoneKind::NoTalkCo);

  // band-edge channel: only one adjacent disk
  reg::Transmitter edge = tx;
  edge.channel = 21;
  CHECK(reg::exclusion_zones(edge, p, reg::Method::Pollution).size() == 2);
  edge.channel = 35;
  CHECK(reg::exclusion_zones(edge, p, reg::Method::Pollution).size() == 2);

  // invalid tower is rejected up front
  reg::Transmitter bad = tx;
  bad.channel = 40;
  CHECK_THROWS_AS(reg::exclusion_zones(bad, p, reg::Method::Pollution),
                  std::invalid_argument);
}

TEST_CASE("strict mode propagates through the radii") {
  reg::Transmitter tx = pune_tower();
  reg::RegulatoryParams p;
  p.extrapolate = false;
  // the defaults' separation distance lies far outside the validity range
  CHECK_THROWS_AS(reg::no_talk_radius(tx, p, false), std::domain_error);
  // extrapolating flags instead of throwing
  p.extrapolate = true;
  CHECK(reg::no_talk_radius(tx, p, false).extrapolated);
}
