#include "sfhp/frackernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "sfhp/errors.hpp"
#include "sfhp/special_functions.hpp"

namespace sfhp {

AlphaValue alpha_eval(const AlphaProfile& profile, double z) {
  AlphaValue out{profile.alpha0, 0.0};
  if (profile.kind == AlphaProfile::Kind::affine) {
    out.value = profile.alpha0 + profile.alpha1 * z;
    out.derivative = profile.alpha1;
  }
  if (!(out.value > 0.0 && out.value <= 1.0)) {
    std::ostringstream msg;
    msg << "alpha(z) = " << out.value << " at z = " << z << " is outside (0, 1]";
    throw RangeError(msg.str(), z, out.value);
  }
  return out;
}

namespace {

void guard(const FracWeight& w, double s, const char* who) {
  if (!(std::abs(s - w.t_obs) > w.sing_eps)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << who << ": s = " << s << " lies within " << w.sing_eps << " of the observer time "
        << w.t_obs;
    throw SingularityError(msg.str(), s, w.t_obs);
  }
}

}  // namespace

double g_weight(const FracWeight& w, double s) {
  guard(w, s, "g_weight");
  const double z = s - w.t_obs;
  const AlphaValue a = alpha_eval(w.profile, z);
  return std::exp((a.value - 1.0) * std::log(std::abs(z)) + w.rho * z) / gamma(a.value);
}

double h_weight(const FracWeight& w, double s) {
  guard(w, s, "h_weight");
  const double z = s - w.t_obs;
  const AlphaValue a = alpha_eval(w.profile, z);
  if (w.profile.kind == AlphaProfile::Kind::constant) {
    return (a.value - 1.0) / z + w.rho;
  }
  // d Gamma(alpha(z)) / ds / Gamma(alpha(z)) = psi(alpha) alpha'
  return a.derivative * std::log(std::abs(z)) + (a.value - 1.0) / z + w.rho -
         digamma(a.value) * a.derivative;
}

namespace {

// One pass of the product-midpoint rule with `sub` subcells per graded cell.
double graded_sum(const std::function<double(double)>& f, const FracWeight& w, double t,
                  const std::vector<double>& breaks, int sub, long& cells, double& magnitude) {
  double sum = 0.0;
  magnitude = 0.0;
  cells = 0;
  // breaks[k] are distances u = t - s, decreasing from t - t0 towards 0.
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double outer = breaks[k];
    const double inner = breaks[k + 1];
    const double width = (outer - inner) / sub;
    for (int j = 0; j < sub; ++j) {
      const double u_lo = inner + j * width;
      const double u_hi = (j + 1 == sub) ? outer : inner + (j + 1) * width;
      const double u_mid = 0.5 * (u_lo + u_hi);
      const double s = t - u_mid;
      const AlphaValue a = alpha_eval(w.profile, -u_mid);
      // exact integral of u^(alpha-1) over [u_lo, u_hi]
      const double kernel = (std::pow(u_hi, a.value) - std::pow(u_lo, a.value)) / a.value;
      const double term = f(s) * std::exp(-w.rho * u_mid) / gamma(a.value) * kernel;
      sum += term;
      magnitude += std::abs(term);
      ++cells;
    }
  }
  // Innermost cell [0, breaks.back()], everything but u^(alpha-1) frozen.
  const double u_last = breaks.back();
  const double u_mid = 0.5 * u_last;
  const AlphaValue a = alpha_eval(w.profile, -u_mid);
  const double term = f(t - u_mid) * std::exp(-w.rho * u_mid) / gamma(a.value) *
                      std::pow(u_last, a.value) / a.value;
  sum += term;
  magnitude += std::abs(term);
  ++cells;
  return sum;
}

}  // namespace

IntegralResult frl_integral(const std::function<double(double)>& f, const FracWeight& w, double t,
                            const QuadratureOptions& options) {
  if (!(t > w.t0)) {
    throw DomainError("frl_integral: upper limit must exceed t0");
  }
  if (!(options.grading > 0.0 && options.grading < 1.0)) {
    throw DomainError("frl_integral: grading ratio must lie in (0, 1)");
  }
  const double length = t - w.t0;
  // Grade down to 1e-15 of the interval; below that the frozen innermost cell is exact enough.
  const int levels = std::max(
      options.min_cells,
      static_cast<int>(std::ceil(std::log(1e-15) / std::log(options.grading))));
  std::vector<double> breaks(static_cast<std::size_t>(levels) + 1);
  for (int k = 0; k <= levels; ++k) {
    breaks[static_cast<std::size_t>(k)] = length * std::pow(options.grading, k);
  }

  long cells = 0;
  int sub = 1;
  double magnitude = 0.0;
  double previous = graded_sum(f, w, t, breaks, sub, cells, magnitude);
  double previous_extrapolated = previous;
  double estimate = 0.0;
  for (int r = 0; r < options.max_refinements; ++r) {
    sub *= 2;
    const double current = graded_sum(f, w, t, breaks, sub, cells, magnitude);
    if (!std::isfinite(current)) {
      throw QuadratureError("frl_integral: non-finite quadrature sum", std::abs(current - previous));
    }
    // leading error term is quadratic in the subcell width
    const double extrapolated = current + (current - previous) / 3.0;
    estimate = r == 0 ? std::abs(current - previous) : std::abs(extrapolated - previous_extrapolated);
    // magnitude (sum of |terms|) is the scale when the integral itself cancels to ~0
    if (r > 0 &&
        estimate <= options.rel_tol * std::max(std::abs(extrapolated), 1e-12 * magnitude)) {
      return {extrapolated, estimate, cells};
    }
    previous = current;
    previous_extrapolated = extrapolated;
  }
  std::ostringstream msg;
  msg << "frl_integral: no convergence after " << options.max_refinements
      << " refinements, error estimate " << estimate;
  throw QuadratureError(msg.str(), estimate);
}

}  // namespace sfhp
