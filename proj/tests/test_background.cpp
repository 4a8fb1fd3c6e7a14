#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "coulombium/background.hpp"
#include "coulombium/error.hpp"
#include "coulombium/kernel.hpp"
#include "coulombium/random_fields.hpp"

using namespace coulombium;

namespace {

BackgroundCharge gaussian_background(const Grid& g, double centre, double width, double charge) {
  Samples rho = Samples::from_function(g, [=](double x) {
    const double t = (x - centre) / width;
    return -std::exp(-0.5 * t * t);
  });
  const double mass = -integrate(rho);
  for (auto& v : rho.values()) v *= charge / mass;
  return BackgroundCharge::sampled(rho);
}

}  // namespace

TEST_CASE("point background") {
  const auto bg = BackgroundCharge::point(1.0);
  CHECK(total_charge(bg) == -1.0);
  CHECK(abs_moment(BackgroundCharge::point(3.0)) == 0.0);
  CHECK(recenter_shift(bg) == 0.0);
  const Grid g(7.0, 141);
  const Samples v = background_potential(BackgroundCharge::point(2.0), g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(v[i] == std::fabs(g.x(i)));
  CHECK_THROWS_AS(BackgroundCharge::point(0.0), Error);
  CHECK_THROWS_AS(BackgroundCharge::point(-1.0), Error);
}

TEST_CASE("point potential carries the kink mass") {
  const Grid g(5.0, 101);
  const double z = 1.3;
  const Samples v = background_potential(BackgroundCharge::point(z), g);
  const double h = g.spacing();
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    const double second = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
    if (i == g.center()) {
      CHECK(-second * h == doctest::Approx(-z));  // -V'' = rho = -z delta
    } else {
      CHECK(std::fabs(second) < 1e-9);
    }
  }
}

TEST_CASE("sampled backgrounds") {
  const Grid g(10.0, 2001);
  CHECK(total_charge(BackgroundCharge::sampled(Samples(g))) == 0.0);
  const auto bump = gaussian_background(g, 0.0, 0.7, 1.5);
  CHECK(total_charge(bump) == doctest::Approx(-1.5).epsilon(1e-8));
  CHECK(std::fabs(recenter_shift(bump)) < 1e-10);

  const Samples uniform = Samples::from_function(g, [](double x) { return std::fabs(x) <= 1.0 ? -0.5 : 0.0; });
  CHECK(abs_moment(BackgroundCharge::sampled(uniform)) == doctest::Approx(0.5).epsilon(2e-2));

  Samples spike(g);
  const std::size_t at2 = g.center() + 200;  // x = 2
  spike[at2] = -1.0 / g.weight(at2);
  CHECK(abs_moment(BackgroundCharge::sampled(spike)) == doctest::Approx(2.0));
  CHECK(recenter_shift(BackgroundCharge::sampled(spike)) == doctest::Approx(2.0));

  const auto shifted = gaussian_background(g, 3.0, 0.2, 1.0);
  CHECK(recenter_shift(shifted) == doctest::Approx(3.0).epsilon(1e-8));

  Samples positive(g);
  positive[5] = 1e-3;
  CHECK_THROWS_AS(BackgroundCharge::sampled(positive), Error);
}

TEST_CASE("recentering follows a one-node shift") {
  const Grid g(10.0, 801);
  Rng rng(21);
  Samples rho = random_smooth_density(g, rng, 0.5);
  for (auto& v : rho.values()) v = -v;
  Samples moved(g);
  for (std::size_t i = 1; i < g.size(); ++i) moved[i] = rho[i - 1];
  const double p0 = recenter_shift(BackgroundCharge::sampled(rho));
  const double p1 = recenter_shift(BackgroundCharge::sampled(moved));
  CHECK(p1 - p0 == doctest::Approx(g.spacing()).epsilon(1e-9));
}

TEST_CASE("background potential bounds") {
  const Grid g(10.0, 1001);
  Rng rng(13);
  for (int k = 0; k < 20; ++k) {
    Samples rho = random_nonnegative(g, rng);
    for (auto& v : rho.values()) v = -v;
    const auto bg = BackgroundCharge::sampled(rho);
    const double z = bg.charge_ratio();
    CHECK(jensen_lower_bound_check(bg, g) <= 1e-8);
    const Samples v = background_potential(bg, g);
    double sup = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      sup = std::max(sup, std::fabs(v[i] - 0.5 * z * std::fabs(g.x(i))));
    }
    CHECK(sup <= 0.5 * abs_moment(bg) + 1e-10);
  }

  // two masses of 0.75 at x = +-4: the bound is an equality outside them and
  // strict between them
  Samples pair(g);
  const std::size_t a = 200;
  pair[g.center() - a] = -0.75 / g.spacing();
  pair[g.center() + a] = -0.75 / g.spacing();
  const auto bg = BackgroundCharge::sampled(pair);
  CHECK(jensen_lower_bound_check(bg, g) <= 1e-8);
  const Samples v = background_potential(bg, g);
  CHECK(v[g.center()] == doctest::Approx(3.0));
  CHECK(v[g.size() - 1] == doctest::Approx(0.75 * 10.0));
  CHECK(v[g.center() + 100] - 0.75 * 2.0 > 1.0);

  Samples single(g);
  single[g.center()] = -1.2 / g.weight(g.center());
  CHECK(jensen_lower_bound_check(BackgroundCharge::sampled(single), g) <= 1e-12);
}

TEST_CASE("delta approximants") {
  const Grid g(5.0, 1001);
  for (int n : {1, 2, 4}) {
    const Samples d = delta_approximant(n, g);
    CHECK(integrate(d) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (std::fabs(g.x(i)) >= 1.0 / n) CHECK(d[i] == 0.0);
    }
  }
  try {
    (void)delta_approximant(40, g);
    FAIL("expected UnderResolved");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnderResolved);
  }
}

TEST_CASE("background files") {
  const Grid g(4.0, 81);
  const auto path = std::filesystem::temp_directory_path() / "coulombium_bg_test.dat";
  {
    std::ofstream out(path);
    out << "# x rho\n1 -0.5\n-1 -0.5  # left end\n\n0 -0.5\n";
  }
  const auto bg = load_background(path, g);
  const Samples& rho = bg.as_sampled().rho;
  CHECK(rho[g.center()] == doctest::Approx(-0.5));
  CHECK(rho[0] == 0.0);
  CHECK(total_charge(bg) == doctest::Approx(-1.0).epsilon(0.05));

  {
    std::ofstream out(path);
    out << "0 -1 7\n1 -1\n";
  }
  try {
    (void)load_background(path, g);
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
  {
    std::ofstream out(path);
    out << "zero -1\n1 -1\n";
  }
  CHECK_THROWS_AS(load_background(path, g), Error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_background(path, g), Error);
}
