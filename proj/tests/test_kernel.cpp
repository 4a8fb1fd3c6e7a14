#include "doctest.h"

#include <array>
#include <cmath>

#include "coulombium/error.hpp"
#include "coulombium/kernel.hpp"
#include "coulombium/random_fields.hpp"
#include "oracles.hpp"

using namespace coulombium;

namespace {

Samples positive_part(const Samples& f) {
  Samples out = f;
  for (std::size_t i = 0; i < f.grid().center(); ++i) out[i] = 0.0;
  return out;
}

}  // namespace

TEST_CASE("potential of a point mass is the exact cone") {
  const Grid g(5.0, 201);
  Samples f(g);
  const double z = 1.7;
  f[g.center()] = -z / g.weight(g.center());
  const Samples v = potential_from_density(f);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(v[i] == doctest::Approx(0.5 * z * std::fabs(g.x(i))).epsilon(1e-13));
  }
  const Samples zero = potential_from_density(Samples(g));
  for (double x : zero.values()) CHECK(x == 0.0);
}

TEST_CASE("fast kernels match dense quadrature") {
  const Grid g(4.0, 201);
  Rng rng(3);
  for (int k = 0; k < 5; ++k) {
    const Samples f = random_signed(g, rng);
    const Samples h = random_signed(g, rng);
    const Samples fast = potential_from_density(f);
    const Samples slow = oracle::potential(f);
    double scale = 0.0;
    for (double x : slow.values()) scale = std::max(scale, std::fabs(x));
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::fabs(fast[i] - slow[i]) <= 1e-12 * scale);
    CHECK(oracle::relative(coulomb_pair_energy(f, h), oracle::pair_energy(f, h)) <= 1e-12);
    CHECK(oracle::relative(coulomb_pair_energy(f, h), coulomb_pair_energy(h, f)) <= 1e-12);

    const Samples d = random_smooth_density(g, rng);
    CHECK(oracle::relative(c_functional(d, 2.0), oracle::c_functional(d, 2.0)) <= 1e-10);
    CHECK(oracle::relative(c_functional(d, 0.5), oracle::c_functional(d, 0.5)) <= 1e-10);
    CHECK(oracle::relative(g_bilinear(f, h), oracle::g_bilinear(f, h)) <= 1e-10);
  }
}

TEST_CASE("kernel values") {
  CHECK(min_kernel(1.0, -2.0) == 0.0);
  CHECK(min_kernel(3.0, 2.0) == 2.0);
  CHECK(min_kernel(-3.0, -0.5) == 0.5);
  CHECK(min_kernel(0.0, 4.0) == 0.0);
  for (double x : {-2.0, -0.3, 0.0, 1.1, 4.0}) {
    for (double y : {-1.5, 0.0, 0.7, 3.0}) {
      CHECK(g_kernel(x, y, 1.0) == doctest::Approx(min_kernel(x, y)));
      CHECK(g_kernel(x, y, 2.5) ==
            doctest::Approx(0.75 * (std::fabs(x) + std::fabs(y)) + min_kernel(x, y)));
    }
  }
}

TEST_CASE("four C+ forms agree") {
  const Grid g(5.0, 401);
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    const Samples f = random_nonnegative(g, rng);
    const std::array<double, 4> v = {c_plus(f, CPlusForm::A), c_plus(f, CPlusForm::B),
                                     c_plus(f, CPlusForm::C), c_plus(f, CPlusForm::D)};
    for (double a : v) {
      for (double b : v) CHECK(oracle::relative(a, b) <= 1e-9);
    }
    CHECK(oracle::relative(v[2], oracle::c_plus(f)) <= 1e-12);
  }
  const Samples zero(g);
  for (auto form : {CPlusForm::A, CPlusForm::B, CPlusForm::C, CPlusForm::D}) {
    CHECK(c_plus(zero, form) == 0.0);
  }
}

TEST_CASE("C+ of the unit block approaches one third") {
  double previous = 1.0;
  for (std::size_t n : {201, 401, 801, 1601}) {
    const Grid g(2.0, n);
    const Samples block =
        Samples::from_function(g, [](double x) { return (x > 0.0 && x <= 1.0) ? 1.0 : 0.0; });
    const double err = std::fabs(c_plus(block, CPlusForm::C) - 1.0 / 3.0);
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 2e-3);
}

TEST_CASE("decoupling and the neutral functional") {
  const Grid g(5.0, 301);
  Rng rng(8);
  for (int k = 0; k < 10; ++k) {
    const Samples f = random_smooth_density(g, rng);
    const double split = c_plus(f, CPlusForm::C) + c_plus(reflect(f), CPlusForm::C);
    CHECK(c_functional(f, 1.0) == doctest::Approx(split).epsilon(1e-13));
    CHECK(c_g(f) == doctest::Approx(split).epsilon(1e-13));

    // one-sided density: the negative half does not contribute
    const Samples right = positive_part(f);
    CHECK(c_functional(right, 1.0) == doctest::Approx(c_plus(right, CPlusForm::A)).epsilon(1e-12));
  }
}

TEST_CASE("mass warning of the C functional") {
  const Grid g(5.0, 301);
  Rng rng(2);
  Samples f = random_smooth_density(g, rng);
  CHECK_FALSE(c_functional_checked(f, 2.0).mass_warning);
  for (auto& v : f.values()) v *= 1.1;
  CHECK(c_functional_checked(f, 2.0).mass_warning);
  CHECK(c_functional(Samples(g), 2.0) == 0.0);
}

TEST_CASE("B norm basics") {
  const Grid g(4.0, 101);
  Rng rng(4);
  CHECK(b_norm(Samples(g)) == 0.0);
  const Samples u = random_signed(g, rng);
  for (double lambda : {-2.0, 0.5, 3.0}) {
    Samples s = u;
    for (auto& v : s.values()) v *= lambda;
    CHECK(b_norm(s) == doctest::Approx(std::fabs(lambda) * b_norm(u)).epsilon(1e-13));
  }
}

TEST_CASE("negative-kernel inner product") {
  const Grid g(5.0, 401);
  Samples dipole(g);
  dipole[150] = 1.0;
  dipole[260] = -1.0;
  CHECK(neg_kernel_inner_product(dipole, dipole) > 0.0);

  Samples biased(g);
  biased[200] = 0.3 / g.spacing();
  try {
    (void)neg_kernel_inner_product(biased, biased);
    FAIL("expected NonZeroMean");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonZeroMean);
  }

  Rng rng(9);
  for (int k = 0; k < 20; ++k) {
    const Samples f = random_zero_mean_compact(g, rng);
    const double value = neg_kernel_inner_product(f, f);
    CHECK(value > 0.0);
    // field energy of the solution of -u'' = f
    CHECK(oracle::relative(value, 2.0 * kinetic_energy(potential_from_density(f))) <= 1e-6);
  }
}
