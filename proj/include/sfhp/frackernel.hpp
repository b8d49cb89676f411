#pragma once

#include <functional>

namespace sfhp {

/// Exponent function alpha(z), z = s - t, of the generalized fractional weight.
struct AlphaProfile {
  enum class Kind { constant, affine };

  Kind kind = Kind::constant;
  double alpha0 = 1.0;
  double alpha1 = 0.0;  ///< slope per unit time, affine profiles only

  static AlphaProfile constant(double a) { return {Kind::constant, a, 0.0}; }
  static AlphaProfile affine(double a0, double a1) { return {Kind::affine, a0, a1}; }
};

struct AlphaValue {
  double value;
  double derivative;
};

/// Returns (alpha(z), alpha'(z)). Throws RangeError when alpha(z) is not in (0, 1].
AlphaValue alpha_eval(const AlphaProfile& profile, double z);

/// Weight of the generalized fractional integral observed at time t_obs.
struct FracWeight {
  AlphaProfile profile;
  double rho = 0.0;       ///< discount rate
  double t_obs = 0.0;     ///< observer time t
  double t0 = 0.0;        ///< lower integration limit
  double sing_eps = 1e-8;  ///< radius of the forbidden ball around t_obs
};

/// g_t(s) = exp((alpha(s-t) - 1) ln|t-s| + rho (s-t)) / Gamma(alpha(s-t)).
double g_weight(const FracWeight& w, double s);

/// h(s,t) = alpha'(s-t) ln|t-s| + (alpha(s-t) - 1)/(s-t) + rho - psi(alpha(s-t)) alpha'(s-t),
/// the logarithmic derivative of g_t in s. Constant profiles skip the alpha' terms.
double h_weight(const FracWeight& w, double s);

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double grading = 0.7;      ///< ratio between consecutive graded cells
  int min_cells = 64;
  int max_refinements = 12;  ///< each refinement doubles the subcells per graded cell
};

struct IntegralResult {
  double value;
  double error_estimate;
  long cells;
};

/// Generalized left fractional Riemann-Liouville integral of f over [w.t0, t],
/// with the weight observed at t (w.t_obs is ignored).
///
/// The mesh is graded geometrically toward the singular endpoint s = t. On each
/// cell alpha and the smooth factor f(s) e^{rho(s-t)} / Gamma(alpha) are frozen at
/// the midpoint while (t-s)^{alpha-1} is integrated exactly. Subcells are doubled
/// until two successive sums agree to rel_tol; otherwise QuadratureError is thrown
/// carrying the last difference as the error estimate.
IntegralResult frl_integral(const std::function<double(double)>& f, const FracWeight& w, double t,
                            const QuadratureOptions& options = {});

}  // namespace sfhp
