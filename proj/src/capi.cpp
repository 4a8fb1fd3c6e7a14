#include "coulombium/coulombium.h"

#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "json.hpp"

#include "coulombium/background.hpp"
#include "coulombium/diagnostics.hpp"
#include "coulombium/energy.hpp"
#include "coulombium/error.hpp"
#include "coulombium/solver.hpp"
#include "coulombium/verify.hpp"

using namespace coulombium;

struct cb_background {
  BackgroundCharge model;
};

struct cb_ground_state {
  GroundState state;
  BackgroundCharge background;
};

namespace {

thread_local std::string last_error;

cb_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return CB_ERR_INVALID_ARGUMENT;
    case ErrorCode::NotNormalized: return CB_ERR_NOT_NORMALIZED;
    case ErrorCode::NonZeroMean: return CB_ERR_NON_ZERO_MEAN;
    case ErrorCode::NegativeInput: return CB_ERR_NEGATIVE_INPUT;
    case ErrorCode::UnderResolved: return CB_ERR_UNDER_RESOLVED;
    case ErrorCode::GridTooSmall: return CB_ERR_GRID_TOO_SMALL;
    case ErrorCode::NoConvergence: return CB_ERR_NO_CONVERGENCE;
    case ErrorCode::MaxIterExceeded: return CB_ERR_MAX_ITER_EXCEEDED;
    case ErrorCode::DivergingEnergy: return CB_ERR_DIVERGING_ENERGY;
    case ErrorCode::LineSearchStalled: return CB_ERR_LINE_SEARCH_STALLED;
    case ErrorCode::Io: return CB_ERR_IO;
  }
  return CB_ERR_INTERNAL;
}

cb_status fail(cb_status status, const char* message) {
  last_error = message;
  return status;
}

template <class Fn>
cb_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CB_ERR_INTERNAL, e.what());
  }
}

SolverConfig to_config(const cb_solver_config& c) {
  SolverConfig cfg;
  cfg.half_width = c.half_width;
  cfg.n_points = c.n_points;
  cfg.scf_damping = c.scf_damping;
  cfg.tol_energy = c.tol_energy;
  cfg.tol_residual = c.tol_residual;
  cfg.max_iter = c.max_iter;
  cfg.gd_step = c.gd_step;
  cfg.seed = c.seed;
  cfg.preconditioner =
      c.preconditioner == CB_PRECOND_NONE ? Preconditioner::None : Preconditioner::Hamiltonian;
  cfg.initial_guess =
      c.initial_guess == CB_GUESS_RANDOM ? InitialGuess::Random : InitialGuess::Gaussian;
  cfg.include_background_self = c.include_background_self != 0;
  return cfg;
}

}  // namespace

extern "C" {

const char* cb_version(void) { return "0.1.0"; }

const char* cb_status_string(cb_status status) {
  switch (status) {
    case CB_OK: return "ok";
    case CB_ERR_INVALID_ARGUMENT: return to_string(ErrorCode::InvalidArgument);
    case CB_ERR_NOT_NORMALIZED: return to_string(ErrorCode::NotNormalized);
    case CB_ERR_NON_ZERO_MEAN: return to_string(ErrorCode::NonZeroMean);
    case CB_ERR_NEGATIVE_INPUT: return to_string(ErrorCode::NegativeInput);
    case CB_ERR_UNDER_RESOLVED: return to_string(ErrorCode::UnderResolved);
    case CB_ERR_GRID_TOO_SMALL: return to_string(ErrorCode::GridTooSmall);
    case CB_ERR_NO_CONVERGENCE: return to_string(ErrorCode::NoConvergence);
    case CB_ERR_MAX_ITER_EXCEEDED: return to_string(ErrorCode::MaxIterExceeded);
    case CB_ERR_DIVERGING_ENERGY: return to_string(ErrorCode::DivergingEnergy);
    case CB_ERR_LINE_SEARCH_STALLED: return to_string(ErrorCode::LineSearchStalled);
    case CB_ERR_IO: return to_string(ErrorCode::Io);
    case CB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* cb_last_error(void) { return last_error.c_str(); }

void cb_solver_config_init(cb_solver_config* cfg) {
  if (cfg == nullptr) return;
  const SolverConfig d;
  cfg->half_width = d.half_width;
  cfg->n_points = d.n_points;
  cfg->scf_damping = d.scf_damping;
  cfg->tol_energy = d.tol_energy;
  cfg->tol_residual = d.tol_residual;
  cfg->max_iter = d.max_iter;
  cfg->gd_step = d.gd_step;
  cfg->seed = d.seed;
  cfg->preconditioner = CB_PRECOND_HAMILTONIAN;
  cfg->initial_guess = CB_GUESS_GAUSSIAN;
  cfg->include_background_self = 0;
}

cb_status cb_background_point(double z, cb_background** out) {
  if (out == nullptr) return fail(CB_ERR_INVALID_ARGUMENT, "null output pointer");
  *out = nullptr;
  return guarded([&] {
    *out = new cb_background{BackgroundCharge::point(z)};
    return CB_OK;
  });
}

cb_status cb_background_from_samples(double half_width, size_t n_points, const double* rho,
                                     cb_background** out) {
  if (out == nullptr || rho == nullptr) return fail(CB_ERR_INVALID_ARGUMENT, "null pointer");
  *out = nullptr;
  return guarded([&] {
    const Grid grid(half_width, n_points);
    Samples samples(grid, std::vector<double>(rho, rho + n_points));
    *out = new cb_background{BackgroundCharge::sampled(std::move(samples))};
    return CB_OK;
  });
}

cb_status cb_background_from_file(const char* path, double half_width, size_t n_points,
                                  cb_background** out) {
  if (out == nullptr || path == nullptr) return fail(CB_ERR_INVALID_ARGUMENT, "null pointer");
  *out = nullptr;
  return guarded([&] {
    *out = new cb_background{load_background(path, Grid(half_width, n_points))};
    return CB_OK;
  });
}

void cb_background_free(cb_background* bg) { delete bg; }

cb_status cb_background_describe(const cb_background* bg, double* charge_ratio,
                                 double* abs_moment_out, double* recenter) {
  if (bg == nullptr) return fail(CB_ERR_INVALID_ARGUMENT, "null background");
  return guarded([&] {
    const double z = bg->model.charge_ratio();
    if (charge_ratio) *charge_ratio = z;
    if (abs_moment_out) *abs_moment_out = abs_moment(bg->model);
    if (recenter) *recenter = z > 0.0 ? recenter_shift(bg->model) : 0.0;
    return CB_OK;
  });
}

cb_status cb_solve(const cb_background* bg, const cb_solver_config* cfg, cb_method method,
                   cb_ground_state** out) {
  if (bg == nullptr || cfg == nullptr || out == nullptr) {
    return fail(CB_ERR_INVALID_ARGUMENT, "null pointer");
  }
  *out = nullptr;
  return guarded([&] {
    const SolverConfig config = to_config(*cfg);
    try {
      GroundState state = method == CB_METHOD_GRADIENT ? gradient_solve(bg->model, config)
                                                       : scf_solve(bg->model, config);
      *out = new cb_ground_state{std::move(state), bg->model};
      return CB_OK;
    } catch (const SolverError& e) {
      *out = new cb_ground_state{e.state(), bg->model};
      return fail(status_of(e.code()), e.what());
    }
  });
}

void cb_ground_state_free(cb_ground_state* state) { delete state; }

cb_status cb_ground_state_summary(const cb_ground_state* gs, cb_summary* out) {
  if (gs == nullptr || out == nullptr) return fail(CB_ERR_INVALID_ARGUMENT, "null pointer");
  return guarded([&] {
    const GroundState& s = gs->state;
    const Samples density = pointwise_square(s.u);
    out->epsilon = s.epsilon;
    out->kinetic = s.energy.kinetic;
    out->coulomb = s.energy.coulomb;
    out->background_const = s.energy.background_const;
    out->total = s.energy.total;
    out->residual = s.residual;
    out->moment1 = moment(density, 1.0);
    out->tail_mass = tail_mass(density, 0.9 * s.u.grid().half_width());
    out->boundary_flux = boundary_flux_term(effective_potential(s.u, gs->background));
    out->iterations = s.iterations;
    out->converged = s.converged ? 1 : 0;
    out->n_points = s.u.size();
    return CB_OK;
  });
}

cb_status cb_ground_state_table(const cb_ground_state* gs, size_t capacity, double* x, double* u,
                                double* density, double* potential) {
  if (gs == nullptr) return fail(CB_ERR_INVALID_ARGUMENT, "null state");
  const Samples& wf = gs->state.u;
  if (capacity < wf.size()) return fail(CB_ERR_INVALID_ARGUMENT, "table capacity too small");
  return guarded([&] {
    const Grid& grid = wf.grid();
    std::optional<Samples> v;
    if (potential) v = effective_potential(wf, gs->background);
    for (std::size_t i = 0; i < wf.size(); ++i) {
      if (x) x[i] = grid.x(i);
      if (u) u[i] = wf[i];
      if (density) density[i] = wf[i] * wf[i];
      if (potential) potential[i] = (*v)[i];
    }
    return CB_OK;
  });
}

size_t cb_ground_state_history_length(const cb_ground_state* gs) {
  return gs == nullptr ? 0 : gs->state.history.size();
}

cb_status cb_ground_state_history(const cb_ground_state* gs, size_t capacity, double* energy,
                                  double* residual) {
  if (gs == nullptr) return fail(CB_ERR_INVALID_ARGUMENT, "null state");
  const auto& h = gs->state.history;
  if (capacity < h.size()) return fail(CB_ERR_INVALID_ARGUMENT, "history capacity too small");
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (energy) energy[i] = h[i].energy;
    if (residual) residual[i] = h[i].residual;
  }
  return CB_OK;
}

size_t cb_ground_state_warning_count(const cb_ground_state* gs) {
  return gs == nullptr ? 0 : gs->state.warnings.size();
}

const char* cb_ground_state_warning(const cb_ground_state* gs, size_t index) {
  if (gs == nullptr || index >= gs->state.warnings.size()) return nullptr;
  return gs->state.warnings[index].c_str();
}

cb_status cb_verify(const char* suite, uint64_t seed, double z, int* passed, char** report_json) {
  if (suite == nullptr || passed == nullptr) return fail(CB_ERR_INVALID_ARGUMENT, "null pointer");
  return guarded([&] {
    const VerifyReport report = run_verify_suite(suite, VerifyOptions{seed, z});
    *passed = report.passed() ? 1 : 0;
    if (report_json) {
      nlohmann::ordered_json doc;
      doc["suite"] = report.suite;
      doc["seed"] = report.seed;
      doc["z"] = z;
      doc["passed"] = report.passed();
      auto& checks = doc["checks"] = nlohmann::ordered_json::array();
      for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"measured", c.measured},
                          {"threshold", c.threshold},
                          {"passed", c.passed},
                          {"detail", c.detail}});
      }
      const std::string text = doc.dump(2);
      char* buffer = new char[text.size() + 1];
      std::memcpy(buffer, text.c_str(), text.size() + 1);
      *report_json = buffer;
    }
    return CB_OK;
  });
}

void cb_string_free(char* str) { delete[] str; }

}  // extern "C"
