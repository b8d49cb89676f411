#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace sfhp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

using ScalarField = std::function<double(const Vector&)>;
using VectorField = std::function<Vector(const Vector&)>;
using TimeLagrangian = std::function<double(double s, const Vector& q, const Vector& v)>;
using TimeVectorField = std::function<Vector(double s, const Vector& q, const Vector& v)>;
using TimeMatrixField = std::function<Matrix(double s, const Vector& q, const Vector& v)>;

/// Noise potential gamma(q) and its gradient. The diffusion coefficient on p is dgamma.
struct NoisePotential {
  std::string name;
  ScalarField gamma;
  VectorField dgamma;

  static NoisePotential zero(int n);
  /// lambda * |q|^2 / 2
  static NoisePotential half_square(int n, double lambda = 1.0);
  /// lambda * sum_i sin(q_i)
  static NoisePotential sine(int n, double lambda = 1.0);
};

/// Scalar potential V(q) of a natural Lagrangian.
struct Potential {
  std::string name;
  int n = 1;
  ScalarField value;
  VectorField gradient;

  static Potential zero(int n);
  /// sum_i cos(q_i)
  static Potential cosine(int n);
  /// k |q|^2 / 2
  static Potential quadratic(int n, double k = 1.0);
};

struct MetricModel;

/// A (possibly time-dependent) Lagrangian system on R^n with a noise potential.
///
/// Optional members are empty std::functions. dH_dq/dH_dp are analytic Hamiltonian
/// partials supplied by builtins that have them; everything else falls back on the
/// inverse Legendre map.
struct SystemModel {
  std::string name;
  int n = 1;
  TimeLagrangian lagrangian;
  TimeVectorField dL_dq;
  TimeVectorField dL_dv;
  ScalarField gamma;
  VectorField dgamma_dq;
  TimeMatrixField hess_L_vv;
  TimeVectorField v_of_p;  ///< (s, q, p) -> v
  TimeVectorField dH_dq;   ///< (s, q, p)
  TimeVectorField dH_dp;   ///< (s, q, p)
  std::shared_ptr<const MetricModel> metric;
  bool numeric_partials = false;
};

/// Riemannian metric on a chart of R^n. dg_dq(q)[i] holds the partial d g_kl / d q^i.
struct MetricModel {
  std::string name;
  int n = 1;
  std::function<Matrix(const Vector&)> g;
  std::function<std::vector<Matrix>(const Vector&)> dg_dq;
  ScalarField gamma;
  VectorField dgamma_dq;

  static MetricModel euclidean(int n, NoisePotential noise);
  /// c * identity
  static MetricModel constant(int n, double c, NoisePotential noise);
  /// dr^2 + r^2 dtheta^2 on (r, theta)
  static MetricModel polar(NoisePotential noise);
};

/// A time-independent Lagrangian, the input of builtin_discounted.
struct AutonomousLagrangian {
  std::string name;
  int n = 1;
  std::function<double(const Vector&, const Vector&)> lagrangian;
  std::function<Vector(const Vector&, const Vector&)> dL_dq;
  std::function<Vector(const Vector&, const Vector&)> dL_dv;
  std::function<Matrix(const Vector&, const Vector&)> hess_L_vv;
  std::function<Vector(const Vector&, const Vector&)> v_of_p;  ///< (q, p) -> v

  /// |v|^2 / 2 - V(q)
  static AutonomousLagrangian natural(const Potential& V);
};

// Legendre transform --------------------------------------------------------

Vector legendre_p(const SystemModel& model, double s, const Vector& q, const Vector& v);

/// v with dL_dv(s, q, v) = p. Uses the analytic inverse when present, otherwise damped
/// Newton on hess_L_vv from v = p (tolerance 1e-12, 50 iterations).
Vector inverse_legendre(const SystemModel& model, double s, const Vector& q, const Vector& p);

/// H = <p, v*> - L(s, q, v*) with v* the inverse Legendre image of p.
double hamiltonian(const SystemModel& model, double s, const Vector& q, const Vector& p);

/// Throws HyperregularityError when det(hess_L_vv) vanishes (relative to the Hessian scale).
void require_hyperregular(const SystemModel& model, double s, const Vector& q, const Vector& v);

// Metric geometry -------------------------------------------------------------

/// christoffel(m, q)[i](j, k) = Gamma^i_{jk}; symmetric in (j, k) by construction.
using Christoffel = std::vector<Matrix>;

Christoffel christoffel(const MetricModel& m, const Vector& q);

/// Inverse metric; throws SingularMetricError when g(q) is not invertible.
Matrix inverse_metric(const MetricModel& m, const Vector& q);

/// Checks symmetry (1e-12) and positive definiteness of g(q).
void check_metric(const MetricModel& m, const Vector& q);

// Builtins -------------------------------------------------------------------

/// L = -e^{-rho s} (v^2 + 2 a v q + q^2) / 2 on R. Requires a in (-1, 1), rho in [0, 1).
SystemModel builtin_samuelson(double rho, double a, NoisePotential noise = NoisePotential::half_square(1));

/// L = |v|^2 / 2 - V(q); p = v.
SystemModel builtin_natural(const Potential& V, NoisePotential noise);

/// L = e^{-rho s} L0(q, v).
SystemModel builtin_discounted(const AutonomousLagrangian& L0, double rho, NoisePotential noise);

/// L = v^T g(q) v / 2.
SystemModel builtin_metric(const MetricModel& m);

/// Model built from L and gamma alone with centered-difference partials
/// (step 1e-6 max(1, |x|); the Hessian uses 1e-4 max(1, |x|)).
SystemModel finite_diff_partials(std::string name, int n, TimeLagrangian L, ScalarField gamma);

}  // namespace sfhp
