#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "tvws/propagation.hpp"

using namespace tvws;

TEST_CASE("band plan frequencies") {
  prop::BandPlan plan;
  CHECK(plan.last_channel() == 35);
  CHECK(plan.contains(21));
  CHECK(plan.contains(35));
  CHECK_FALSE(plan.contains(20));
  CHECK_FALSE(plan.contains(36));

  const prop::ChannelBounds c21 = prop::channel_bounds(21);
  CHECK(c21.low_mhz == doctest::Approx(470.0));
  CHECK(c21.high_mhz == doctest::Approx(478.0));
  CHECK(c21.center_mhz() == doctest::Approx(474.0));

  const prop::ChannelBounds c29 = prop::channel_bounds(29);
  CHECK(c29.low_mhz == doctest::Approx(534.0));
  CHECK(c29.high_mhz == doctest::Approx(542.0));
  CHECK(c29.center_mhz() == doctest::Approx(538.0));

  CHECK(prop::channel_bounds(35).center_mhz() == doctest::Approx(586.0));
  CHECK_THROWS_AS(prop::channel_bounds(20), std::invalid_argument);
  CHECK_THROWS_AS(prop::channel_bounds(36), std::invalid_argument);
}

TEST_CASE("environment names round-trip") {
  for (auto env : {prop::Environment::UrbanLarge, prop::Environment::UrbanMedium,
                   prop::Environment::Suburban, prop::Environment::Open}) {
    CHECK(prop::environment_from_string(prop::to_string(env)) == env);
  }
  CHECK(prop::to_string(prop::Environment::UrbanLarge) == "urban-large");
  CHECK_THROWS_AS(prop::environment_from_string("rural"), std::invalid_argument);
}

TEST_CASE("noise floor") {
  CHECK(prop::noise_floor_dbm(8e6) == doctest::Approx(-104.9691001301).epsilon(1e-9));
  CHECK(prop::noise_floor_dbm(6e6) == doctest::Approx(-106.2184874962).epsilon(1e-9));
  CHECK_THROWS_AS(prop::noise_floor_dbm(0.0), std::invalid_argument);
  CHECK_THROWS_AS(prop::noise_floor_dbm(-1.0), std::invalid_argument);
}

TEST_CASE("field strength conversion") {
  CHECK(prop::dbu_to_dbm(41, 534, 542) == doctest::Approx(-88.6381431978).epsilon(1e-9));
  CHECK(prop::dbu_to_dbm(41, 470, 478) == doctest::Approx(-87.5380645180).epsilon(1e-9));
  CHECK(prop::dbu_to_dbm(18, 534, 542) == doctest::Approx(-111.6381431978).epsilon(1e-9));
}

// Reference values computed independently from the published formulas.
TEST_CASE("path loss matches hand-evaluated references") {
  const auto pl = [](double f, double hb, double hm, double d, prop::Environment env) {
    return prop::hata_path_loss(f, hb, hm, d, env).loss_db;
  };
  CHECK(pl(538, 100, 1.5, 10, prop::Environment::UrbanLarge) ==
        doctest::Approx(145.1481833784).epsilon(1e-9));
  CHECK(pl(538, 100, 1.5, 10, prop::Environment::UrbanMedium) ==
        doctest::Approx(145.1514939266).epsilon(1e-9));
  CHECK(pl(538, 100, 1.5, 10, prop::Environment::Suburban) ==
        doctest::Approx(136.4561115254).epsilon(1e-9));
  CHECK(pl(538, 100, 1.5, 10, prop::Environment::Open) ==
        doctest::Approx(118.6214516583).epsilon(1e-9));
  CHECK(pl(900, 50, 2, 5, prop::Environment::UrbanMedium) ==
        doctest::Approx(145.6679411587).epsilon(1e-9));
  // below 400 MHz the large-city correction switches branch
  CHECK(pl(200, 150, 4, 3, prop::Environment::UrbanLarge) ==
        doctest::Approx(110.2252102649).epsilon(1e-9));
}

TEST_CASE("path loss grows with distance and frequency") {
  double prev = 0.0;
  for (double d : {1.0, 2.0, 5.0, 10.0, 20.0}) {
    const double cur =
        prop::hata_path_loss(538, 100, 1.5, d, prop::Environment::UrbanLarge).loss_db;
    CHECK(cur > prev);
    prev = cur;
  }
  const double lo = prop::hata_path_loss(474, 100, 1.5, 10, prop::Environment::UrbanLarge).loss_db;
  const double hi = prop::hata_path_loss(586, 100, 1.5, 10, prop::Environment::UrbanLarge).loss_db;
  CHECK(hi > lo);
}

TEST_CASE("environment ordering: urban exceeds suburban exceeds open") {
  const double u = prop::hata_path_loss(538, 100, 1.5, 10, prop::Environment::UrbanMedium).loss_db;
  const double s = prop::hata_path_loss(538, 100, 1.5, 10, prop::Environment::Suburban).loss_db;
  const double o = prop::hata_path_loss(538, 100, 1.5, 10, prop::Environment::Open).loss_db;
  CHECK(u > s);
  CHECK(s > o);
}

TEST_CASE("extrapolation flags and strict mode") {
  // inside the validity box: no flag
  CHECK_FALSE(prop::hata_path_loss(538, 100, 1.5, 10, prop::Environment::UrbanLarge).extrapolated);

  // distance outside 1-20 km flags but still evaluates the closed form
  const auto near = prop::hata_path_loss(538, 100, 1.5, 0.5, prop::Environment::UrbanLarge);
  CHECK(near.extrapolated);
  const auto far = prop::hata_path_loss(538, 100, 1.5, 60, prop::Environment::UrbanLarge);
  CHECK(far.extrapolated);

  // parameters outside the box are clamped and flagged
  const auto tall = prop::hata_path_loss(538, 300, 1.5, 10, prop::Environment::UrbanLarge);
  CHECK(tall.extrapolated);
  CHECK(tall.loss_db ==
        doctest::Approx(prop::hata_path_loss(538, 200, 1.5, 10, prop::Environment::UrbanLarge)
                            .loss_db));

  // strict mode turns the same inputs into errors
  CHECK_THROWS_AS(prop::hata_path_loss(538, 300, 1.5, 10, prop::Environment::UrbanLarge, false),
                  std::domain_error);
  CHECK_THROWS_AS(prop::hata_path_loss(538, 100, 1.5, 0.5, prop::Environment::UrbanLarge, false),
                  std::domain_error);
  CHECK_THROWS_AS(prop::hata_path_loss(100, 100, 1.5, 10, prop::Environment::UrbanLarge, false),
                  std::domain_error);

  // nonpositive distance is an error in both modes
  CHECK_THROWS_AS(prop::hata_path_loss(538, 100, 1.5, 0, prop::Environment::UrbanLarge),
                  std::invalid_argument);
  CHECK_THROWS_AS(prop::hata_path_loss(538, 100, 1.5, -1, prop::Environment::UrbanLarge, false),
                  std::invalid_argument);
}

TEST_CASE("inverse distance round-trips the forward model") {
  std::mt19937_64 rng(20240811);
  const auto uniform = [&](double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
    return lo + u * (hi - lo);
  };
  const prop::Environment envs[] = {prop::Environment::UrbanLarge,
                                    prop::Environment::UrbanMedium,
                                    prop::Environment::Suburban, prop::Environment::Open};
  for (int i = 0; i < 1000; ++i) {
    const double f = uniform(150, 1500);
    const double hb = uniform(30, 200);
    const double hm = uniform(1, 10);
    const double d = uniform(1, 20);
    const prop::Environment env = envs[rng() % 4];
    const double pl = prop::hata_path_loss(f, hb, hm, d, env).loss_db;
    const auto inv = prop::hata_inverse_distance(f, hb, hm, pl, env);
    CHECK(std::abs(inv.distance_km - d) < 1e-6);
    CHECK_FALSE(inv.clamped);
  }
}

TEST_CASE("inverse distance clamps to its range") {
  // absurdly small target loss -> distance floors at 0.01 km
  const auto lo = prop::hata_inverse_distance(538, 100, 1.5, 10, prop::Environment::UrbanLarge);
  CHECK(lo.distance_km == doctest::Approx(0.01));
  CHECK(lo.clamped);

  // absurdly large target loss -> 500 km ceiling
  const auto hi = prop::hata_inverse_distance(538, 100, 1.5, 250, prop::Environment::UrbanLarge);
  CHECK(hi.distance_km == doctest::Approx(500.0));
  CHECK(hi.clamped);

  // in strict mode a clamped (hence out-of-box) distance is an error
  CHECK_THROWS_AS(prop::hata_inverse_distance(538, 100, 1.5, 10, prop::Environment::UrbanLarge,
                                              false),
                  std::domain_error);
}
