#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coulombium/background.hpp"
#include "coulombium/energy.hpp"
#include "coulombium/error.hpp"
#include "coulombium/grid.hpp"

namespace coulombium {

enum class Preconditioner {
  None,         ///< plain L2 gradient; step must be O(h^2)
  Hamiltonian,  ///< (-D2 + W - min W + 1)^{-1} applied to the gradient
};

enum class InitialGuess {
  Gaussian,  ///< unit-width Gaussian centred at recenter_shift(bg)
  Random,    ///< smooth random positive profile drawn from `seed`
};

struct SolverConfig {
  double half_width = 30.0;
  std::size_t n_points = 6001;
  double scf_damping = 0.5;
  double tol_energy = 1e-10;
  double tol_residual = 1e-7;
  int max_iter = 5000;
  double gd_step = 1.0;
  std::uint64_t seed = 0;
  Preconditioner preconditioner = Preconditioner::Hamiltonian;
  InitialGuess initial_guess = InitialGuess::Gaussian;
  bool include_background_self = false;

  /// Throws Error(InvalidArgument) on nonpositive tolerances, damping outside
  /// (0, 1], nonpositive step or max_iter, or an invalid grid.
  void validate() const;
  Grid grid() const { return Grid(half_width, n_points); }
};

struct IterationRecord {
  double energy;
  double residual;
};

struct GroundState {
  explicit GroundState(Samples wave) : u(std::move(wave)) {}

  Samples u;
  double epsilon = 0.0;
  EnergyBreakdown energy;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;
  std::vector<IterationRecord> history;
  std::vector<std::string> warnings;
};

/// Raised by the solvers; carries the last iterate and its trace.
class SolverError : public Error {
 public:
  SolverError(ErrorCode code, const std::string& what, GroundState state)
      : Error(code, what), state_(std::move(state)) {}

  const GroundState& state() const noexcept { return state_; }

 private:
  GroundState state_;
};

struct Eigenpair {
  double epsilon;
  Samples u;
};

/// Lowest eigenpair of the Dirichlet operator -D2 + V on the interior nodes:
/// eigenvalue by Sturm-count bisection, eigenvector by inverse iteration,
/// normalised with u(0) >= 0. Throws Error(NoConvergence).
Eigenpair ground_eigenpair(const Samples& potential);

/// Damped density-mixing self-consistent iteration.
GroundState scf_solve(const BackgroundCharge& bg, const SolverConfig& cfg,
                      const std::optional<Samples>& u0 = std::nullopt);

/// Projected gradient descent on the unit sphere with backtracking on E.
GroundState gradient_solve(const BackgroundCharge& bg, const SolverConfig& cfg,
                           const std::optional<Samples>& u0 = std::nullopt);

Samples initial_guess(const BackgroundCharge& bg, const SolverConfig& cfg);

/// Image of a ground state of E under x -> x / a, a = 2^{-1/3}: a solution of
/// the coupled system -u'' + V u = eps u, -V'' = u^2 + rho on the scaled grid.
/// Point backgrounds only (a sampled rho would need to be rescaled as well).
struct CoupledSolution {
  Samples u;
  double epsilon;
};
CoupledSolution rescale_to_coupled_system(const GroundState& state);

}  // namespace coulombium
