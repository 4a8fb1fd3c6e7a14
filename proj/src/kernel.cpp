#include "coulombium/kernel.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "coulombium/error.hpp"

namespace coulombium {
namespace {

void require_same_grid(const Samples& f, const Samples& g) {
  if (!(f.grid() == g.grid())) {
    throw Error(ErrorCode::InvalidArgument, "samples live on different grids");
  }
}

// Node masses w_k f_k on the half-line x >= 0, origin first. The origin
// carries half its weight on each side; since min(0, y) = 0 it never
// contributes to C+.
std::vector<double> half_line_masses(const Samples& f) {
  const Grid& grid = f.grid();
  const std::size_t c = grid.center();
  std::vector<double> m(grid.size() - c);
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = grid.weight(c + k) * f[c + k];
  m[0] *= 0.5;
  return m;
}

// tails[k] = sum_{j > k} m_j
std::vector<double> strict_tails(const std::vector<double>& m) {
  std::vector<double> tails(m.size(), 0.0);
  double acc = 0.0;
  for (std::size_t k = m.size(); k-- > 0;) {
    tails[k] = acc;
    acc += m[k];
  }
  return tails;
}

double half_line_bilinear(const Samples& f, const Samples& g) {
  const double h = f.grid().spacing();
  const auto tf = strict_tails(half_line_masses(f));
  const auto tg = strict_tails(half_line_masses(g));
  double sum = 0.0;
  for (std::size_t k = 0; k < tf.size(); ++k) sum += tf[k] * tg[k];
  return h * sum;
}

}  // namespace

Samples potential_from_density(const Samples& f) {
  const Grid& grid = f.grid();
  const std::size_t n = grid.size();
  std::vector<double> m(n), xm(n);
  for (std::size_t j = 0; j < n; ++j) {
    m[j] = grid.weight(j) * f[j];
    xm[j] = grid.x(j) * m[j];
  }
  // left[i] = sum_{j<i}, right[i] = sum_{j>i}
  std::vector<double> left0(n), left1(n), right0(n), right1(n);
  double a0 = 0.0, a1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    left0[i] = a0;
    left1[i] = a1;
    a0 += m[i];
    a1 += xm[i];
  }
  a0 = a1 = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    right0[i] = a0;
    right1[i] = a1;
    a0 += m[i];
    a1 += xm[i];
  }
  Samples v(grid);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.x(i);
    const double abs_conv = (x * left0[i] - left1[i]) + (right1[i] - x * right0[i]);
    v[i] = -0.5 * abs_conv;
  }
  return v;
}

double coulomb_pair_energy(const Samples& f, const Samples& g) {
  require_same_grid(f, g);
  const Samples vg = potential_from_density(g);
  const Grid& grid = f.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) sum += grid.weight(i) * f[i] * vg[i];
  return 2.0 * sum;
}

double min_kernel(double x, double y) noexcept {
  if (x * y <= 0.0) return 0.0;
  return std::fmin(std::fabs(x), std::fabs(y));
}

double g_kernel(double x, double y, double z) noexcept {
  return 0.5 * (z * (std::fabs(x) + std::fabs(y)) - std::fabs(x - y));
}

double c_plus(const Samples& f, CPlusForm form) {
  const auto m = half_line_masses(f);
  const double h = f.grid().spacing();
  const std::size_t count = m.size();
  auto pos = [h](std::size_t k) { return static_cast<double>(k) * h; };

  switch (form) {
    case CPlusForm::A: {
      // inner integral int_0^x y f(y) dy with half weight on the endpoint
      double below = 0.0, sum = 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        const double xm = pos(i) * m[i];
        sum += m[i] * (below + 0.5 * xm);
        below += xm;
      }
      return 2.0 * sum;
    }
    case CPlusForm::B: {
      double above = 0.0, sum = 0.0;
      for (std::size_t i = count; i-- > 0;) {
        sum += pos(i) * m[i] * (above + 0.5 * m[i]);
        above += m[i];
      }
      return 2.0 * sum;
    }
    case CPlusForm::C: {
      // the tail int_z^inf f is constant on each cell (x_k, x_{k+1})
      const auto tails = strict_tails(m);
      double sum = 0.0;
      for (double t : tails) sum += t * t;
      return h * sum;
    }
    case CPlusForm::D: {
      const auto tails = strict_tails(m);
      double running = 0.0, sum = 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        sum += m[i] * running;
        running += h * tails[i];
      }
      return sum;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown C+ form");
}

double c_g(const Samples& f) {
  return c_plus(f, CPlusForm::C) + c_plus(reflect(f), CPlusForm::C);
}

CFunctional c_functional_checked(const Samples& f, double z) {
  const double mass = integrate(f);
  Samples weighted(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) weighted[i] = std::fabs(f.grid().x(i)) * f[i];
  const double first_moment = integrate(weighted);
  const double value = (z - 1.0) * mass * first_moment + c_g(f);
  return {value, std::fabs(mass - 1.0) > 1e-8};
}

double c_functional(const Samples& f, double z) { return c_functional_checked(f, z).value; }

double g_bilinear(const Samples& f, const Samples& g) {
  require_same_grid(f, g);
  return half_line_bilinear(f, g) + half_line_bilinear(reflect(f), reflect(g));
}

double b_norm(const Samples& u) {
  const double quartic = c_g(pointwise_square(u));
  return std::pow(std::fmax(quartic, 0.0), 0.25);
}

double neg_kernel_inner_product(const Samples& f, const Samples& g) {
  require_same_grid(f, g);
  constexpr double kMeanTolerance = 1e-8;
  const double mf = integrate(f);
  const double mg = integrate(g);
  if (std::fabs(mf) > kMeanTolerance || std::fabs(mg) > kMeanTolerance) {
    throw Error(ErrorCode::NonZeroMean,
                "inner product needs zero-mean arguments, got means " + std::to_string(mf) +
                    " and " + std::to_string(mg));
  }
  return coulomb_pair_energy(f, g);
}

}  // namespace coulombium
