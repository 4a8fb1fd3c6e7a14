// Exercises the shared library through its C header only.
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "coulombium/coulombium.h"
#include "json.hpp"

namespace {

cb_solver_config small_config() {
  cb_solver_config cfg;
  cb_solver_config_init(&cfg);
  cfg.half_width = 20.0;
  cfg.n_points = 2001;
  return cfg;
}

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::strlen(cb_version()) > 0);
  CHECK(std::string(cb_status_string(CB_OK)) != std::string(cb_status_string(CB_ERR_IO)));
  CHECK(cb_last_error() != nullptr);
}

TEST_CASE("defaults") {
  cb_solver_config cfg;
  cb_solver_config_init(&cfg);
  CHECK(cfg.half_width == 30.0);
  CHECK(cfg.n_points == 6001);
  CHECK(cfg.preconditioner == CB_PRECOND_HAMILTONIAN);
  CHECK(cfg.include_background_self == 0);
}

TEST_CASE("solve through handles") {
  cb_background* bg = nullptr;
  REQUIRE(cb_background_point(2.0, &bg) == CB_OK);
  double ratio = 0.0, shift = 1.0;
  CHECK(cb_background_describe(bg, &ratio, nullptr, &shift) == CB_OK);
  CHECK(ratio == 2.0);
  CHECK(shift == 0.0);

  const cb_solver_config cfg = small_config();
  cb_ground_state* scf = nullptr;
  cb_ground_state* gd = nullptr;
  REQUIRE(cb_solve(bg, &cfg, CB_METHOD_SCF, &scf) == CB_OK);
  REQUIRE(cb_solve(bg, &cfg, CB_METHOD_GRADIENT, &gd) == CB_OK);
  cb_summary a{}, b{};
  CHECK(cb_ground_state_summary(scf, &a) == CB_OK);
  CHECK(cb_ground_state_summary(gd, &b) == CB_OK);
  CHECK(a.converged == 1);
  CHECK(std::fabs(a.total - b.total) < 1e-8);
  CHECK(a.total == doctest::Approx(a.kinetic + a.coulomb));
  CHECK(a.n_points == 2001);
  CHECK(a.residual <= cfg.tol_residual);

  std::vector<double> x(2001), u(2001), d(2001), v(2001);
  CHECK(cb_ground_state_table(scf, 2001, x.data(), u.data(), d.data(), v.data()) == CB_OK);
  CHECK(x[1000] == 0.0);
  CHECK(d[1000] == doctest::Approx(u[1000] * u[1000]));
  CHECK(cb_ground_state_table(scf, 10, x.data(), nullptr, nullptr, nullptr) == CB_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(cb_last_error()) > 0);

  const std::size_t n = cb_ground_state_history_length(scf);
  REQUIRE(n > 0);
  std::vector<double> e(n), r(n);
  CHECK(cb_ground_state_history(scf, n, e.data(), r.data()) == CB_OK);
  CHECK(e.back() == doctest::Approx(a.total));
  CHECK(cb_ground_state_warning_count(scf) == 0);
  CHECK(cb_ground_state_warning(scf, 0) == nullptr);

  cb_ground_state_free(scf);
  cb_ground_state_free(gd);
  cb_background_free(bg);
}

TEST_CASE("failures keep the state and the message") {
  cb_background* bg = nullptr;
  REQUIRE(cb_background_point(0.5, &bg) == CB_OK);
  const cb_solver_config cfg = small_config();
  cb_ground_state* st = nullptr;
  CHECK(cb_solve(bg, &cfg, CB_METHOD_SCF, &st) == CB_ERR_DIVERGING_ENERGY);
  REQUIRE(st != nullptr);
  cb_summary s{};
  CHECK(cb_ground_state_summary(st, &s) == CB_OK);
  CHECK(s.converged == 0);
  CHECK(std::strlen(cb_last_error()) > 0);
  cb_ground_state_free(st);
  cb_background_free(bg);

  cb_solver_config bad = small_config();
  bad.n_points = 2000;
  REQUIRE(cb_background_point(1.0, &bg) == CB_OK);
  st = nullptr;
  CHECK(cb_solve(bg, &bad, CB_METHOD_SCF, &st) == CB_ERR_INVALID_ARGUMENT);
  CHECK(st == nullptr);
  CHECK(cb_solve(bg, nullptr, CB_METHOD_SCF, &st) == CB_ERR_INVALID_ARGUMENT);
  cb_background_free(bg);

  CHECK(cb_background_point(-1.0, &bg) == CB_ERR_INVALID_ARGUMENT);
  CHECK(cb_background_from_file("/nonexistent/rho.txt", 10.0, 101, &bg) == CB_ERR_IO);
  cb_background_free(nullptr);
  cb_ground_state_free(nullptr);
}

TEST_CASE("sampled backgrounds") {
  const std::size_t n = 2001;
  const double half = 20.0, h = half / 1000.0;
  std::vector<double> rho(n, 0.0);
  rho[1000] = -1.5 / h;
  cb_background* bg = nullptr;
  REQUIRE(cb_background_from_samples(half, n, rho.data(), &bg) == CB_OK);
  double ratio = 0.0, moment = 1.0;
  CHECK(cb_background_describe(bg, &ratio, &moment, nullptr) == CB_OK);
  CHECK(ratio == doctest::Approx(1.5));
  CHECK(moment == doctest::Approx(0.0));
  cb_background_free(bg);

  const auto path = std::filesystem::temp_directory_path() / "cb_capi_rho.txt";
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs("-1 0\n0 -2\n1 0\n", f);
    std::fclose(f);
  }
  CHECK(cb_background_from_file(path.c_str(), 1.0, 3, &bg) == CB_OK);
  CHECK(cb_background_describe(bg, &ratio, nullptr, nullptr) == CB_OK);
  CHECK(ratio == doctest::Approx(2.0));
  cb_background_free(bg);
  std::filesystem::remove(path);
}

TEST_CASE("verify report") {
  int passed = 0;
  char* text = nullptr;
  REQUIRE(cb_verify("innerprod", 3, 0.5, &passed, &text) == CB_OK);
  CHECK(passed == 1);
  REQUIRE(text != nullptr);
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc["suite"] == "innerprod");
  CHECK(doc["seed"] == 3);
  CHECK(doc["checks"].size() > 0);
  cb_string_free(text);
  CHECK(cb_verify("unknown", 1, 0.5, &passed, nullptr) == CB_ERR_INVALID_ARGUMENT);
}
