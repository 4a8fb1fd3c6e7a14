#include "coulombium/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "coulombium/diagnostics.hpp"
#include "coulombium/random_fields.hpp"

namespace coulombium {
namespace {

constexpr double kMinDamping = 1e-3;
constexpr double kTailWarnFraction = 0.9;
constexpr double kTailWarnMass = 1e-10;
// Subcritical runs push the excess charge against the walls.
constexpr double kDivergeFraction = 0.8;
constexpr double kDivergeMass = 1e-4;

double energy_slack(double e) { return 1e-13 * std::max(1.0, std::fabs(e)); }

Samples starting_point(const BackgroundCharge& bg, const SolverConfig& cfg,
                       const std::optional<Samples>& u0) {
  if (!u0) return initial_guess(bg, cfg);
  if (!(u0->grid() == cfg.grid())) {
    throw Error(ErrorCode::InvalidArgument, "initial guess lives on a different grid");
  }
  const double mass = integrate(pointwise_square(*u0));
  if (std::fabs(mass - 1.0) > 1e-8) {
    throw Error(ErrorCode::NotNormalized, "initial guess is not normalised");
  }
  Samples u = *u0;
  u[0] = 0.0;
  u[u.size() - 1] = 0.0;
  return normalized(u);
}

void check_background(const BackgroundCharge& bg, const SolverConfig& cfg) {
  cfg.validate();
  if (!bg.is_point() && !(bg.as_sampled().rho.grid() == cfg.grid())) {
    throw Error(ErrorCode::InvalidArgument, "background grid does not match solver grid");
  }
}

bool escaping(const Samples& u, double z, double half_width) {
  return z < 1.0 && tail_mass(pointwise_square(u), kDivergeFraction * half_width) > kDivergeMass;
}

// Fills warnings and raises for divergent or unconverged runs.
GroundState finish(GroundState state, const BackgroundCharge& bg, const SolverConfig& cfg,
                   const char* method) {
  const Samples density = pointwise_square(state.u);
  const double L = cfg.half_width;
  const double outer = tail_mass(density, kTailWarnFraction * L);
  if (outer > kTailWarnMass) {
    std::ostringstream msg;
    msg << "tail mass " << outer << " beyond |x| = " << kTailWarnFraction * L
        << " exceeds " << kTailWarnMass << "; consider a larger half-width";
    state.warnings.push_back(msg.str());
  }
  const double z = bg.charge_ratio();
  const double edge = tail_mass(density, kDivergeFraction * L);
  if (escaping(state.u, z, L)) {
    std::ostringstream msg;
    msg << method << ": charge ratio " << z << " < 1 and mass " << edge
        << " has drifted to the Dirichlet walls; the energy is unbounded below";
    state.converged = false;
    throw SolverError(ErrorCode::DivergingEnergy, msg.str(), std::move(state));
  }
  if (!state.converged) {
    std::ostringstream msg;
    msg << method << ": no convergence after " << state.iterations << " iterations (residual "
        << state.residual << ")";
    throw SolverError(ErrorCode::MaxIterExceeded, msg.str(), std::move(state));
  }
  return state;
}

// (-D2 + shift + diag) d = g on interior nodes, Thomas algorithm; ends of d are 0.
Samples preconditioned(const Samples& g, const Samples& potential) {
  const Grid& grid = g.grid();
  const std::size_t n = grid.size() - 2;
  const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
  double wmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) wmin = std::min(wmin, potential[i]);

  std::vector<double> c(n), d(n);
  const double off = -inv_h2;
  double pivot = 2.0 * inv_h2 + potential[1] - wmin + 1.0;
  c[0] = off / pivot;
  d[0] = g[1] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = 2.0 * inv_h2 + potential[i + 1] - wmin + 1.0 - off * c[i - 1];
    c[i] = off / pivot;
    d[i] = (g[i + 1] - off * d[i - 1]) / pivot;
  }
  Samples out(grid);
  out[n] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) out[i + 1] = d[i] - c[i] * out[i + 2];
  return out;
}

}  // namespace

void SolverConfig::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (!(tol_energy > 0.0) || !(tol_residual > 0.0)) bad("tolerances must be positive");
  if (!(scf_damping > 0.0 && scf_damping <= 1.0)) bad("scf_damping must lie in (0, 1]");
  if (!(gd_step > 0.0) || !std::isfinite(gd_step)) bad("gd_step must be positive");
  if (max_iter <= 0) bad("max_iter must be positive");
  (void)grid();
}

Samples initial_guess(const BackgroundCharge& bg, const SolverConfig& cfg) {
  const Grid grid = cfg.grid();
  const double z = bg.charge_ratio();
  const double centre = (z > 0.0) ? recenter_shift(bg) : 0.0;
  Samples u(grid);
  if (cfg.initial_guess == InitialGuess::Gaussian) {
    u = Samples::from_function(grid, [centre](double x) {
      const double t = x - centre;
      return std::exp(-0.5 * t * t);
    });
  } else {
    Rng rng(derive_seed(cfg.seed, 0));
    const Samples density = random_smooth_density(grid, rng);
    for (std::size_t i = 0; i < grid.size(); ++i) u[i] = std::sqrt(std::max(density[i], 0.0));
  }
  u[0] = 0.0;
  u[grid.size() - 1] = 0.0;
  return normalized(u);
}

GroundState scf_solve(const BackgroundCharge& bg, const SolverConfig& cfg,
                      const std::optional<Samples>& u0) {
  check_background(bg, cfg);
  GroundState state(starting_point(bg, cfg, u0));
  Samples density = pointwise_square(state.u);
  double energy = total_energy(state.u, bg, cfg.include_background_self).total;
  double change = std::numeric_limits<double>::infinity();
  double damping = cfg.scf_damping;
  bool damping_floor_hit = false;
  const double z = bg.charge_ratio();

  for (int it = 1; it <= cfg.max_iter; ++it) {
    state.iterations = it;
    const Samples w = mean_field_potential(state.u, bg);
    Eigenpair eig = ground_eigenpair(w);
    state.epsilon = eig.epsilon;
    state.residual = hamiltonian_residual(state.u, eig.epsilon, w);
    state.history.push_back({energy, state.residual});
    if (std::fabs(change) <= cfg.tol_energy && state.residual <= cfg.tol_residual) {
      state.converged = true;
      break;
    }

    const Samples target = pointwise_square(eig.u);
    for (;;) {
      Samples trial(density.grid());
      for (std::size_t i = 0; i < trial.size(); ++i) {
        trial[i] = std::sqrt(std::max((1.0 - damping) * density[i] + damping * target[i], 0.0));
      }
      trial = normalized(trial);
      const double e_trial = total_energy(trial, bg, cfg.include_background_self).total;
      const bool accept = e_trial <= energy + energy_slack(energy);
      if (accept || damping <= kMinDamping) {
        if (!accept) damping_floor_hit = true;
        change = e_trial - energy;
        energy = e_trial;
        state.u = std::move(trial);
        density = pointwise_square(state.u);
        break;
      }
      damping = std::max(0.5 * damping, kMinDamping);
    }
    if (escaping(state.u, z, cfg.half_width)) break;
  }
  if (damping_floor_hit) {
    state.warnings.push_back("energy increased at the minimum damping " +
                             std::to_string(kMinDamping));
  }
  state.energy = total_energy(state.u, bg, cfg.include_background_self);
  return finish(std::move(state), bg, cfg, "scf");
}

GroundState gradient_solve(const BackgroundCharge& bg, const SolverConfig& cfg,
                           const std::optional<Samples>& u0) {
  check_background(bg, cfg);
  GroundState state(starting_point(bg, cfg, u0));
  const Grid& grid = state.u.grid();
  const double h = grid.spacing();
  double energy = total_energy(state.u, bg, cfg.include_background_self).total;
  double change = std::numeric_limits<double>::infinity();
  double step = cfg.gd_step;
  const double z = bg.charge_ratio();

  for (int it = 1; it <= cfg.max_iter; ++it) {
    state.iterations = it;
    const Samples w = mean_field_potential(state.u, bg);
    const Samples hu = apply_hamiltonian(state.u, w);
    double rq = 0.0;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) rq += h * state.u[i] * hu[i];
    state.epsilon = rq;

    // Tangential gradient of E on the sphere, 2 (H u - eps u).
    Samples grad(grid);
    double res2 = 0.0;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      const double r = hu[i] - rq * state.u[i];
      res2 += h * r * r;
      grad[i] = 2.0 * r;
    }
    state.residual = std::sqrt(res2);
    state.history.push_back({energy, state.residual});
    if (std::fabs(change) <= cfg.tol_energy && state.residual <= cfg.tol_residual) {
      state.converged = true;
      break;
    }

    // The preconditioned direction is P^{-1} r, so that a unit step removes
    // the high-frequency error instead of flipping its sign.
    Samples dir = grad;
    double cap = cfg.gd_step;
    if (cfg.preconditioner == Preconditioner::Hamiltonian) {
      dir = preconditioned(grad, w);
      for (auto& v : dir.values()) v *= 0.5;
    } else {
      // keep 1 - 2 s (lambda - eps) >= 0 on the Gershgorin range of H
      double spread = 0.0;
      for (std::size_t i = 1; i + 1 < grid.size(); ++i) spread = std::max(spread, std::fabs(w[i] - rq));
      cap = std::min(cap, 0.5 / (4.0 / (h * h) + spread));
    }
    double slope = 0.0;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) slope += h * grad[i] * dir[i];

    bool accepted = false;
    double trial_step = std::min(step, cap);
    for (int k = 0; k < 60; ++k, trial_step *= 0.5) {
      Samples trial = linear_combination(1.0, state.u, -trial_step, dir);
      trial = normalized(trial);
      const double e_trial = total_energy(trial, bg, cfg.include_background_self).total;
      if (e_trial <= energy - 1e-4 * trial_step * slope + energy_slack(energy)) {
        change = e_trial - energy;
        energy = e_trial;
        state.u = std::move(trial);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (state.residual <= cfg.tol_residual) {
        state.converged = true;
        break;
      }
      state.energy = total_energy(state.u, bg, cfg.include_background_self);
      std::ostringstream msg;
      msg << "gd: line search stalled at iteration " << it << " (residual " << state.residual
          << ")";
      throw SolverError(ErrorCode::LineSearchStalled, msg.str(), std::move(state));
    }
    step = std::min(2.0 * trial_step, cfg.gd_step);
    if (escaping(state.u, z, cfg.half_width)) break;
  }
  state.energy = total_energy(state.u, bg, cfg.include_background_self);
  return finish(std::move(state), bg, cfg, "gd");
}

CoupledSolution rescale_to_coupled_system(const GroundState& state) {
  // -u'' + 2 V u = eps u with -V'' = u^2 - z delta becomes the unit-coefficient
  // system under x -> x / a once a^3 = 1/2.
  const double a = std::cbrt(0.5);
  const Grid& grid = state.u.grid();
  const Grid scaled(grid.half_width() / a, grid.size());
  Samples u(scaled);
  const double amp = std::sqrt(a);
  for (std::size_t i = 0; i < grid.size(); ++i) u[i] = amp * state.u[i];
  return {std::move(u), a * a * state.epsilon};
}

}  // namespace coulombium
