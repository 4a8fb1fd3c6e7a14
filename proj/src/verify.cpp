#include "coulombium/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "coulombium/background.hpp"
#include "coulombium/diagnostics.hpp"
#include "coulombium/error.hpp"
#include "coulombium/kernel.hpp"
#include "coulombium/random_fields.hpp"
#include "coulombium/rearrange.hpp"

namespace coulombium {
namespace {

constexpr std::array<std::string_view, 6> kSuites = {"forms",          "bnorm", "rearrange",
                                                     "counterexample", "delta", "innerprod"};

double relative_gap(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

// Tracks the worst value of a quantity that must stay at or below a threshold.
struct Worst {
  double value = -std::numeric_limits<double>::infinity();
  void update(double v) { value = std::max(value, v); }
};

VerifyCheck at_most(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured, threshold, measured <= threshold, std::move(detail)};
}

VerifyCheck at_least(std::string name, double measured, double threshold,
                     std::string detail = {}) {
  return {std::move(name), measured, threshold, measured >= threshold, std::move(detail)};
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

Samples random_density(const Grid& grid, Rng& rng, int index) {
  if (index % 2 == 0) return random_smooth_density(grid, rng);
  Samples f = random_nonnegative(grid, rng);
  const double mass = integrate(f);
  for (auto& v : f.values()) v /= mass;
  return f;
}

double dense_c_functional(const Samples& f, double z) {
  const Grid& grid = f.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      sum += grid.weight(i) * grid.weight(j) * g_kernel(grid.x(i), grid.x(j), z) * f[i] * f[j];
    }
  }
  return sum;
}

VerifyReport forms_suite(const VerifyOptions& opt) {
  VerifyReport report{"forms", opt.seed, {}};
  const Grid grid(5.0, 401);
  Rng rng(derive_seed(opt.seed, 1));
  Worst deviation, upper_bound, dense_gap;
  double min_c = std::numeric_limits<double>::infinity();
  constexpr int kCases = 100;
  for (int k = 0; k < kCases; ++k) {
    const Samples f = random_density(grid, rng, k);
    const std::array<double, 4> v = {c_plus(f, CPlusForm::A), c_plus(f, CPlusForm::B),
                                     c_plus(f, CPlusForm::C), c_plus(f, CPlusForm::D)};
    for (std::size_t a = 0; a < v.size(); ++a) {
      for (std::size_t b = a + 1; b < v.size(); ++b) deviation.update(relative_gap(v[a], v[b]));
    }
    min_c = std::min(min_c, v[2]);
    upper_bound.update(c_functional(f, 1.0) - moment(f, 1.0));
    if (k < 10) dense_gap.update(relative_gap(c_functional(f, 2.0), dense_c_functional(f, 2.0)));
  }
  report.checks.push_back(at_most("four_form_max_relative_deviation", deviation.value, 1e-9,
                                  std::to_string(kCases) + " random densities, N=401"));
  report.checks.push_back(at_least("c_plus_min_value", min_c, 0.0));
  report.checks.push_back(
      at_most("c_neutral_minus_first_moment_max", upper_bound.value, 1e-12, "C at z=1 <= int |x| f"));
  report.checks.push_back(at_most("c_functional_vs_dense_relative", dense_gap.value, 1e-10,
                                  "z=2, 10 densities"));

  const Samples block =
      Samples::from_function(grid, [](double x) { return (x > 0.0 && x <= 1.0) ? 1.0 : 0.0; });
  report.checks.push_back(at_most("indicator_form_c_error", std::fabs(c_plus(block, CPlusForm::C) - 1.0 / 3.0),
                                  5e-2, "C+ of 1_[0,1] against 1/3"));
  return report;
}

VerifyReport bnorm_suite(const VerifyOptions& opt) {
  VerifyReport report{"bnorm", opt.seed, {}};
  const Grid grid(5.0, 101);
  Rng rng(derive_seed(opt.seed, 2));
  int homogeneity = 0, triangle = 0, cauchy = 0, convexity = 0;
  Worst triangle_gap, cauchy_gap, convexity_gap;
  constexpr int kPairs = 1000;
  for (int k = 0; k < kPairs; ++k) {
    const Samples u = random_signed(grid, rng);
    const Samples v = random_signed(grid, rng);
    const double bu = b_norm(u), bv = b_norm(v);
    for (double lambda : {-2.0, 0.5, 3.0}) {
      Samples scaled = u;
      for (auto& x : scaled.values()) x *= lambda;
      if (relative_gap(b_norm(scaled), std::fabs(lambda) * bu) > 1e-12) ++homogeneity;
    }
    const double tri = b_norm(linear_combination(1.0, u, 1.0, v)) - bu - bv;
    triangle_gap.update(tri);
    if (tri > 1e-12) ++triangle;

    const Samples u2 = pointwise_square(u), v2 = pointwise_square(v);
    const double cs = g_bilinear(u2, v2) - std::sqrt(c_g(u2) * c_g(v2));
    cauchy_gap.update(cs);
    if (cs > 1e-12) ++cauchy;

    const double sum4 = std::pow(b_norm(linear_combination(1.0, u, 1.0, v)), 4);
    const double diff4 = std::pow(b_norm(linear_combination(1.0, u, -1.0, v)), 4);
    const double rhs = 4.0 * std::pow(bu * bu + bv * bv, 2);
    const double uc = sum4 + diff4 - rhs;
    convexity_gap.update(uc);
    if (uc > 1e-10) ++convexity;
  }
  const std::string pairs = std::to_string(kPairs) + " random pairs";
  report.checks.push_back(at_most("homogeneity_violations", homogeneity, 0, pairs));
  report.checks.push_back(
      at_most("triangle_violations", triangle, 0, pairs + ", worst excess " + fmt(triangle_gap.value)));
  report.checks.push_back(
      at_most("cauchy_schwarz_violations", cauchy, 0, pairs + ", worst excess " + fmt(cauchy_gap.value)));
  report.checks.push_back(at_most("uniform_convexity_violations", convexity, 0,
                                  pairs + ", worst excess " + fmt(convexity_gap.value)));
  return report;
}

VerifyReport rearrange_suite(const VerifyOptions& opt) {
  VerifyReport report{"rearrange", opt.seed, {}};
  const Grid grid(10.0, 401);
  Rng rng(derive_seed(opt.seed, 3));
  Worst hl, mass, c_neutral, c_ion, kinetic, equimeasure;
  double strict_margin = std::numeric_limits<double>::infinity();
  const auto abs_profile = [](double r) { return r; };
  constexpr int kCases = 200;
  for (int k = 0; k < kCases; ++k) {
    const Samples f = random_density(grid, rng, k);
    const Samples star = symmetric_decreasing_rearrangement(f);

    std::vector<double> a(f.values().begin(), f.values().end());
    std::vector<double> b(star.values().begin(), star.values().end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    equimeasure.update(a == b ? 0.0 : 1.0);

    const auto [lhs, rhs] = hardy_littlewood_check(f, abs_profile);
    hl.update(rhs - lhs);
    if (k % 2 == 1) strict_margin = std::min(strict_margin, lhs - rhs);
    mass.update(std::fabs(integrate(star) - integrate(f)));

    const RearrangementReport neutral = double_rearrangement_check(f, 1.0);
    c_neutral.update(neutral.coulomb_after - neutral.coulomb_before);
    const RearrangementReport ion = double_rearrangement_check(f, 1.5);
    c_ion.update(ion.coulomb_after - ion.coulomb_before);
    if (k % 2 == 0) kinetic.update(neutral.kinetic_after - neutral.kinetic_before);
  }
  const std::string cases = std::to_string(kCases) + " random densities";
  report.checks.push_back(at_most("equimeasurability_failures", equimeasure.value, 0.0, cases));
  report.checks.push_back(at_most("hardy_littlewood_max_violation", hl.value, 1e-10, cases));
  report.checks.push_back(at_least("hardy_littlewood_min_strict_margin", strict_margin, 1e-10,
                                   "rough densities, g=|x|"));
  report.checks.push_back(at_most("mass_change_max", mass.value, 1e-12, cases));
  report.checks.push_back(at_most("c_increase_max_z1", c_neutral.value, 1e-10, cases));
  report.checks.push_back(at_most("c_increase_max_z1.5", c_ion.value, 1e-10, cases));
  report.checks.push_back(
      at_most("kinetic_increase_max_smooth", kinetic.value, 1e-8, "smooth densities only"));
  return report;
}

VerifyReport counterexample_suite(const VerifyOptions& opt) {
  VerifyReport report{"counterexample", opt.seed, {}};
  const double z = opt.z;
  const std::array<int, 4> ns = {10, 20, 40, 80};
  const UnboundednessScan scan = unboundedness_scan(z, ns, 0.01);

  std::ostringstream rows;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& r : scan.rows) {
    rows << "n=" << r.n << " C=" << fmt(r.c_value) << " K=" << fmt(r.kinetic) << "; ";
    const double remainder = r.c_value - (z - 1.0) * std::log(r.n + 1.0);
    lo = std::min(lo, remainder);
    hi = std::max(hi, remainder);
  }
  report.checks.push_back(at_most("slope_minus_expected", std::fabs(scan.slope - (z - 1.0)), 0.03,
                                  "fitted slope " + fmt(scan.slope) + " against " +
                                      fmt(z - 1.0) + "; " + rows.str()));
  report.checks.push_back(at_most("remainder_spread", hi - lo, 1.0,
                                  "C - (z-1) log(n+1) over the scan"));

  bool decreasing = true;
  for (std::size_t i = 2; i < scan.rows.size(); ++i) {
    if (!(scan.rows[i].total < scan.rows[i - 1].total)) decreasing = false;
  }
  if (z < 1.0) {
    report.checks.push_back(at_most("totals_not_decreasing_from_n20", decreasing ? 0.0 : 1.0, 0.0));
  }

  const CounterexampleMetrics m100 = counterexample_metrics(100, counterexample_grid(100, 0.01), z);
  const double rel = std::fabs(m100.kinetic - 1.0 / 6.0) / (1.0 / 6.0);
  report.checks.push_back(at_most("kinetic_n100_relative_error", rel, 0.01,
                                  "kinetic " + fmt(m100.kinetic) + " against 1/6"));

  Worst norm_gap;
  for (int n : {5, 10, 20}) {
    norm_gap.update(std::fabs(counterexample_metrics(n, counterexample_grid(n, 0.01), z).raw_norm - 1.0));
  }
  report.checks.push_back(at_most("norm_error_max", norm_gap.value, 1e-4, "n in {5, 10, 20}"));
  return report;
}

VerifyReport delta_suite(const VerifyOptions& opt) {
  VerifyReport report{"delta", opt.seed, {}};
  const Grid grid(5.0, 1001);
  Worst mass_gap, support, jensen, uniform;
  std::vector<double> logs, energies;
  for (int n : {1, 2, 4, 8}) {
    const Samples d = delta_approximant(n, grid);
    mass_gap.update(std::fabs(integrate(d) - 1.0));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (d[i] != 0.0) support.update(std::fabs(grid.x(i)) - 1.0 / n);
    }
    const double self = -coulomb_pair_energy(d, d);  // iint |x-y| d d
    logs.push_back(std::log(static_cast<double>(n)));
    energies.push_back(std::log(self));

    Samples rho = d;
    for (auto& v : rho.values()) v *= -1.5;
    const BackgroundCharge bg = BackgroundCharge::sampled(rho);
    jensen.update(jensen_lower_bound_check(bg, grid));
    const Samples v = background_potential(bg, grid);
    const double z = bg.charge_ratio();
    double sup = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      sup = std::max(sup, std::fabs(v[i] - 0.5 * z * std::fabs(grid.x(i))));
    }
    uniform.update(sup - 0.5 * abs_moment(bg));
  }
  const double slope = least_squares_line(logs, energies).first;
  report.checks.push_back(at_most("mass_error_max", mass_gap.value, 1e-8));
  report.checks.push_back(at_most("support_excess_max", support.value, 1e-12));
  report.checks.push_back(at_most("self_energy_slope_minus_expected", std::fabs(slope + 1.0), 0.1,
                                  "log-log slope " + fmt(slope)));
  report.checks.push_back(at_most("jensen_max_violation", jensen.value, 1e-8));
  report.checks.push_back(at_most("uniform_bound_max_excess", uniform.value, 1e-8));
  return report;
}

VerifyReport innerprod_suite(const VerifyOptions& opt) {
  VerifyReport report{"innerprod", opt.seed, {}};
  const Grid grid(5.0, 401);
  Rng rng(derive_seed(opt.seed, 6));
  double min_value = std::numeric_limits<double>::infinity();
  Worst identity;
  constexpr int kCases = 500;
  for (int k = 0; k < kCases; ++k) {
    const Samples f = random_zero_mean_compact(grid, rng);
    const double value = neg_kernel_inner_product(f, f);
    min_value = std::min(min_value, value);
    const double field = 2.0 * kinetic_energy(potential_from_density(f));
    identity.update(relative_gap(value, field));
  }
  const std::string cases = std::to_string(kCases) + " random zero-mean f";
  report.checks.push_back(at_least("min_self_product", min_value, 0.0, cases));
  report.checks.push_back(at_most("poisson_identity_relative", identity.value, 1e-6, cases));

  Samples f(grid);
  f[100] = 0.3 / grid.spacing();
  bool rejected = false;
  try {
    (void)neg_kernel_inner_product(f, f);
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::NonZeroMean;
  }
  report.checks.push_back(at_most("nonzero_mean_accepted", rejected ? 0.0 : 1.0, 0.0));
  return report;
}

}  // namespace

bool VerifyReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

std::span<const std::string_view> verify_suite_names() noexcept { return kSuites; }

VerifyReport run_verify_suite(std::string_view suite, const VerifyOptions& options) {
  if (suite == "forms") return forms_suite(options);
  if (suite == "bnorm") return bnorm_suite(options);
  if (suite == "rearrange") return rearrange_suite(options);
  if (suite == "counterexample") return counterexample_suite(options);
  if (suite == "delta") return delta_suite(options);
  if (suite == "innerprod") return innerprod_suite(options);
  throw Error(ErrorCode::InvalidArgument, "unknown verify suite '" + std::string(suite) + "'");
}

}  // namespace coulombium
