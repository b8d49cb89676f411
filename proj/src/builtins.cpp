#include <cmath>
#include <sstream>
#include <utility>

#include "sfhp/errors.hpp"
#include "sfhp/systems.hpp"

namespace sfhp {

SystemModel builtin_samuelson(double rho, double a, NoisePotential noise) {
  if (!(a > -1.0 && a < 1.0)) {
    throw ConfigError("system.a", "Samuelson coupling must lie in (-1, 1)");
  }
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw ConfigError("system.rho", "Samuelson discount rate must lie in [0, 1)");
  }
  SystemModel m;
  m.name = "samuelson";
  m.n = 1;
  m.lagrangian = [rho, a](double s, const Vector& q, const Vector& v) {
    return -0.5 * std::exp(-rho * s) * (v(0) * v(0) + 2.0 * a * v(0) * q(0) + q(0) * q(0));
  };
  m.dL_dq = [rho, a](double s, const Vector& q, const Vector& v) -> Vector {
    return Vector::Constant(1, -std::exp(-rho * s) * (a * v(0) + q(0)));
  };
  m.dL_dv = [rho, a](double s, const Vector& q, const Vector& v) -> Vector {
    return Vector::Constant(1, -std::exp(-rho * s) * (v(0) + a * q(0)));
  };
  m.hess_L_vv = [rho](double s, const Vector&, const Vector&) -> Matrix {
    return Matrix::Constant(1, 1, -std::exp(-rho * s));
  };
  m.v_of_p = [rho, a](double s, const Vector& q, const Vector& p) -> Vector {
    return Vector::Constant(1, -std::exp(rho * s) * p(0) - a * q(0));
  };
  m.dH_dp = [rho, a](double s, const Vector& q, const Vector& p) -> Vector {
    return Vector::Constant(1, -(a * q(0) + std::exp(rho * s) * p(0)));
  };
  m.dH_dq = [rho, a](double s, const Vector& q, const Vector& p) -> Vector {
    return Vector::Constant(1, -((a * a - 1.0) * std::exp(-rho * s) * q(0) + a * p(0)));
  };
  m.gamma = std::move(noise.gamma);
  m.dgamma_dq = std::move(noise.dgamma);
  return m;
}

SystemModel builtin_natural(const Potential& V, NoisePotential noise) {
  SystemModel m;
  m.name = "natural";
  m.n = V.n;
  m.lagrangian = [V](double, const Vector& q, const Vector& v) {
    return 0.5 * v.squaredNorm() - V.value(q);
  };
  m.dL_dq = [V](double, const Vector& q, const Vector&) -> Vector { return -V.gradient(q); };
  m.dL_dv = [](double, const Vector&, const Vector& v) -> Vector { return v; };
  m.hess_L_vv = [](double, const Vector&, const Vector& v) -> Matrix {
    return Matrix::Identity(v.size(), v.size());
  };
  m.v_of_p = [](double, const Vector&, const Vector& p) -> Vector { return p; };
  m.dH_dp = [](double, const Vector&, const Vector& p) -> Vector { return p; };
  m.dH_dq = [V](double, const Vector& q, const Vector&) -> Vector { return V.gradient(q); };
  m.gamma = std::move(noise.gamma);
  m.dgamma_dq = std::move(noise.dgamma);
  return m;
}

SystemModel builtin_discounted(const AutonomousLagrangian& L0, double rho, NoisePotential noise) {
  SystemModel m;
  m.name = "discounted";
  m.n = L0.n;
  m.lagrangian = [L0, rho](double s, const Vector& q, const Vector& v) {
    return std::exp(-rho * s) * L0.lagrangian(q, v);
  };
  m.dL_dq = [L0, rho](double s, const Vector& q, const Vector& v) -> Vector {
    return std::exp(-rho * s) * L0.dL_dq(q, v);
  };
  m.dL_dv = [L0, rho](double s, const Vector& q, const Vector& v) -> Vector {
    return std::exp(-rho * s) * L0.dL_dv(q, v);
  };
  if (L0.hess_L_vv) {
    m.hess_L_vv = [L0, rho](double s, const Vector& q, const Vector& v) -> Matrix {
      return std::exp(-rho * s) * L0.hess_L_vv(q, v);
    };
  }
  if (L0.v_of_p) {
    // p = e^{-rho s} dL0/dv  =>  v = v0(q, e^{rho s} p)
    m.v_of_p = [L0, rho](double s, const Vector& q, const Vector& p) -> Vector {
      return L0.v_of_p(q, std::exp(rho * s) * p);
    };
  }
  m.gamma = std::move(noise.gamma);
  m.dgamma_dq = std::move(noise.dgamma);
  return m;
}

SystemModel builtin_metric(const MetricModel& metric) {
  auto shared = std::make_shared<const MetricModel>(metric);
  SystemModel m;
  m.name = "metric(" + metric.name + ")";
  m.n = metric.n;
  m.metric = shared;
  m.lagrangian = [shared](double, const Vector& q, const Vector& v) {
    return 0.5 * v.dot(shared->g(q) * v);
  };
  m.dL_dq = [shared](double, const Vector& q, const Vector& v) -> Vector {
    const auto dg = shared->dg_dq(q);
    Vector out(shared->n);
    for (int i = 0; i < shared->n; ++i) {
      out(i) = 0.5 * v.dot(dg[static_cast<std::size_t>(i)] * v);
    }
    return out;
  };
  m.dL_dv = [shared](double, const Vector& q, const Vector& v) -> Vector { return shared->g(q) * v; };
  m.hess_L_vv = [shared](double, const Vector& q, const Vector&) -> Matrix { return shared->g(q); };
  m.v_of_p = [shared](double, const Vector& q, const Vector& p) -> Vector {
    return inverse_metric(*shared, q) * p;
  };
  m.dH_dp = m.v_of_p;
  // -dH/dq_i = (1/2) dg_kl/dq^i p^k p^l with p^k = g^{kl} p_l
  m.dH_dq = [shared](double, const Vector& q, const Vector& p) -> Vector {
    const Vector raised = inverse_metric(*shared, q) * p;
    const auto dg = shared->dg_dq(q);
    Vector out(shared->n);
    for (int i = 0; i < shared->n; ++i) {
      out(i) = -0.5 * raised.dot(dg[static_cast<std::size_t>(i)] * raised);
    }
    return out;
  };
  m.gamma = metric.gamma;
  m.dgamma_dq = metric.dgamma_dq;
  return m;
}

namespace {

double fd_step(double x, double base) { return base * std::max(1.0, std::abs(x)); }

Vector central_gradient(const std::function<double(const Vector&)>& f, const Vector& x,
                        double base) {
  Vector out(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double step = fd_step(x(i), base);
    probe(i) = x(i) + step;
    const double up = f(probe);
    probe(i) = x(i) - step;
    const double down = f(probe);
    probe(i) = x(i);
    out(i) = (up - down) / (2.0 * step);
  }
  return out;
}

}  // namespace

SystemModel finite_diff_partials(std::string name, int n, TimeLagrangian L, ScalarField gamma) {
  constexpr double kFirst = 1e-6;
  constexpr double kSecond = 1e-4;
  SystemModel m;
  m.name = std::move(name);
  m.n = n;
  m.numeric_partials = true;
  m.lagrangian = L;
  m.dL_dq = [L](double s, const Vector& q, const Vector& v) -> Vector {
    return central_gradient([&](const Vector& x) { return L(s, x, v); }, q, kFirst);
  };
  m.dL_dv = [L](double s, const Vector& q, const Vector& v) -> Vector {
    return central_gradient([&](const Vector& x) { return L(s, q, x); }, v, kFirst);
  };
  m.hess_L_vv = [L](double s, const Vector& q, const Vector& v) -> Matrix {
    const Eigen::Index dim = v.size();
    Matrix hess(dim, dim);
    Vector probe = v;
    auto eval = [&](Eigen::Index i, double di, Eigen::Index j, double dj) {
      probe = v;
      probe(i) += di;
      probe(j) += dj;
      return L(s, q, probe);
    };
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double hi = fd_step(v(i), kSecond);
      for (Eigen::Index j = i; j < dim; ++j) {
        const double hj = fd_step(v(j), kSecond);
        hess(i, j) = (eval(i, hi, j, hj) - eval(i, hi, j, -hj) - eval(i, -hi, j, hj) +
                      eval(i, -hi, j, -hj)) /
                     (4.0 * hi * hj);
        hess(j, i) = hess(i, j);
      }
    }
    return hess;
  };
  m.gamma = gamma;
  m.dgamma_dq = [gamma](const Vector& q) -> Vector { return central_gradient(gamma, q, kFirst); };
  return m;
}

}  // namespace sfhp
