// Lowest eigenpair of the Dirichlet finite-difference operator -D2 + V.
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "coulombium/error.hpp"
#include "coulombium/solver.hpp"

namespace coulombium {
namespace {

struct Tridiagonal {
  std::vector<double> diag;
  double off;  // constant off-diagonal -1/h^2
};

// Number of eigenvalues strictly below sigma (Sturm sequence of LDL^T pivots).
std::size_t sturm_count(const Tridiagonal& t, double sigma) {
  const double off2 = t.off * t.off;
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  std::size_t count = 0;
  double q = 0.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    q = (i == 0) ? t.diag[0] - sigma : t.diag[i] - sigma - off2 / q;
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

// Solves (T - sigma I) x = b in place. sigma lies below the spectrum, so every
// pivot of the LDL^T factorisation is positive; pivots that round to (almost)
// zero are lifted to `floor`, which only perturbs the shift.
void shifted_solve(const Tridiagonal& t, double sigma, double floor, std::vector<double>& b) {
  const std::size_t n = t.diag.size();
  std::vector<double> pivot(n), mult(n, 0.0);
  pivot[0] = std::max(t.diag[0] - sigma, floor);
  for (std::size_t i = 1; i < n; ++i) {
    mult[i] = t.off / pivot[i - 1];
    pivot[i] = t.diag[i] - sigma - mult[i] * t.off;
    if (pivot[i] < floor) pivot[i] = floor;
  }
  for (std::size_t i = 1; i < n; ++i) b[i] -= mult[i] * b[i - 1];
  for (std::size_t i = 0; i < n; ++i) b[i] /= pivot[i];
  for (std::size_t i = n - 1; i-- > 0;) b[i] -= mult[i + 1] * b[i + 1];
}

double scale_to_unit(std::vector<double>& x) {
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::fabs(v));
  for (double& v : x) v /= peak;
  double norm = 0.0;
  for (double v : x) norm += v * v;
  norm = std::sqrt(norm);
  for (double& v : x) v /= norm;
  return norm;
}

// ||T x - lambda x|| and the Rayleigh quotient lambda, for unit x.
std::pair<double, double> residual_of(const Tridiagonal& t, const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> tx(n);
  for (std::size_t i = 0; i < n; ++i) {
    tx[i] = t.diag[i] * x[i];
    if (i > 0) tx[i] += t.off * x[i - 1];
    if (i + 1 < n) tx[i] += t.off * x[i + 1];
  }
  double lambda = 0.0;
  for (std::size_t i = 0; i < n; ++i) lambda += x[i] * tx[i];
  double r2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = tx[i] - lambda * x[i];
    r2 += r * r;
  }
  return {std::sqrt(r2), lambda};
}

}  // namespace

Eigenpair ground_eigenpair(const Samples& potential) {
  const Grid& grid = potential.grid();
  const std::size_t n = grid.size() - 2;
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);

  Tridiagonal t{std::vector<double>(n), -inv_h2};
  for (std::size_t i = 0; i < n; ++i) {
    t.diag[i] = 2.0 * inv_h2 + potential[i + 1];
    if (!std::isfinite(t.diag[i])) {
      throw Error(ErrorCode::InvalidArgument, "potential has a non-finite sample");
    }
  }

  // Gershgorin below, the smallest diagonal entry (a Rayleigh quotient) above.
  const auto [dmin_it, dmax_it] = std::minmax_element(t.diag.begin(), t.diag.end());
  const double norm_t = std::max(std::fabs(*dmin_it), std::fabs(*dmax_it)) + 2.0 * inv_h2;
  double lo = *dmin_it - 2.0 * inv_h2 - 1e-12 * norm_t - 1.0;
  double hi = *dmin_it + 1e-12 * norm_t + 1.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 256 && hi - lo > 2.0 * eps * (std::fabs(lo) + std::fabs(hi)); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(t, mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double lambda = 0.5 * (lo + hi);

  const double tolerance = 1e3 * eps * norm_t;
  std::vector<double> x;
  bool converged = false;
  double shift_gap = 0.0;
  for (int restart = 0; restart < 4 && !converged; ++restart) {
    const double sigma = lo - shift_gap;
    x.assign(n, 1.0);
    if (restart > 0) {
      // alternate the start vector in case the previous one was deficient
      for (std::size_t i = 0; i < n; ++i) x[i] += 0.5 * std::sin(0.37 * static_cast<double>(i * (restart + 1)));
    }
    scale_to_unit(x);
    for (int iter = 0; iter < 40; ++iter) {
      shifted_solve(t, sigma, eps * norm_t, x);
      scale_to_unit(x);
      if (residual_of(t, x).first <= tolerance) {
        converged = true;
        break;
      }
    }
    shift_gap = (shift_gap == 0.0) ? 1e-8 * norm_t : 100.0 * shift_gap;
  }
  if (!converged) {
    throw Error(ErrorCode::NoConvergence,
                "inverse iteration did not converge for eigenvalue " + std::to_string(lambda));
  }

  Samples u(grid);
  for (std::size_t i = 0; i < n; ++i) u[i + 1] = x[i];
  const std::size_t c = grid.center();
  double sign = (u[c] != 0.0) ? u[c] : 0.0;
  if (sign == 0.0) {
    for (std::size_t i = 0; i < n; ++i) sign += x[i];
  }
  const double scale = (sign < 0.0 ? -1.0 : 1.0) / std::sqrt(h);  // h sum x^2 = 1
  for (auto& v : u.values()) v *= scale;
  return {lambda, std::move(u)};
}

}  // namespace coulombium
