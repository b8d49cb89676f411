#include "sfhp/systems.hpp"

#include <cmath>
#include <sstream>

#include "sfhp/errors.hpp"

namespace sfhp {

// Noise potentials and scalar potentials -------------------------------------

NoisePotential NoisePotential::zero(int n) {
  return {"zero", [](const Vector&) { return 0.0; },
          [n](const Vector&) -> Vector { return Vector::Zero(n); }};
}

NoisePotential NoisePotential::half_square(int n, double lambda) {
  (void)n;
  return {"half_square", [lambda](const Vector& q) { return 0.5 * lambda * q.squaredNorm(); },
          [lambda](const Vector& q) -> Vector { return lambda * q; }};
}

NoisePotential NoisePotential::sine(int n, double lambda) {
  (void)n;
  return {"sine", [lambda](const Vector& q) { return lambda * q.array().sin().sum(); },
          [lambda](const Vector& q) -> Vector { return lambda * q.array().cos().matrix(); }};
}

Potential Potential::zero(int n) {
  return {"zero", n, [](const Vector&) { return 0.0; },
          [n](const Vector&) -> Vector { return Vector::Zero(n); }};
}

Potential Potential::cosine(int n) {
  return {"cos", n, [](const Vector& q) { return q.array().cos().sum(); },
          [](const Vector& q) -> Vector { return -q.array().sin().matrix(); }};
}

Potential Potential::quadratic(int n, double k) {
  return {"quadratic", n, [k](const Vector& q) { return 0.5 * k * q.squaredNorm(); },
          [k](const Vector& q) -> Vector { return k * q; }};
}

AutonomousLagrangian AutonomousLagrangian::natural(const Potential& V) {
  AutonomousLagrangian L;
  L.name = "natural(" + V.name + ")";
  L.n = V.n;
  L.lagrangian = [V](const Vector& q, const Vector& v) { return 0.5 * v.squaredNorm() - V.value(q); };
  L.dL_dq = [V](const Vector& q, const Vector&) -> Vector { return -V.gradient(q); };
  L.dL_dv = [](const Vector&, const Vector& v) -> Vector { return v; };
  L.hess_L_vv = [](const Vector&, const Vector& v) -> Matrix {
    return Matrix::Identity(v.size(), v.size());
  };
  L.v_of_p = [](const Vector&, const Vector& p) -> Vector { return p; };
  return L;
}

// Legendre transform ---------------------------------------------------------

Vector legendre_p(const SystemModel& model, double s, const Vector& q, const Vector& v) {
  return model.dL_dv(s, q, v);
}

namespace {

Vector newton_inverse(const SystemModel& model, double s, const Vector& q, const Vector& p,
                      double tol) {
  if (!model.hess_L_vv) {
    throw HyperregularityError(model.name + ": no inverse Legendre map and no velocity Hessian");
  }
  constexpr int kMaxIterations = 50;
  const double scale = std::max(1.0, p.lpNorm<Eigen::Infinity>());
  Vector v = p;
  Vector residual = model.dL_dv(s, q, v) - p;
  for (int it = 0; it < kMaxIterations; ++it) {
    const double rnorm = residual.lpNorm<Eigen::Infinity>();
    if (rnorm <= tol * scale) {
      return v;
    }
    const Eigen::FullPivLU<Matrix> lu(model.hess_L_vv(s, q, v));
    if (!lu.isInvertible()) {
      break;
    }
    const Vector step = lu.solve(residual);
    double damping = 1.0;
    Vector trial = v - step;
    Vector trial_residual = model.dL_dv(s, q, trial) - p;
    while (trial_residual.lpNorm<Eigen::Infinity>() > rnorm && damping > 1e-4) {
      damping *= 0.5;
      trial = v - damping * step;
      trial_residual = model.dL_dv(s, q, trial) - p;
    }
    v = trial;
    residual = trial_residual;
  }
  std::ostringstream msg;
  msg << model.name << ": Legendre inversion did not converge (residual "
      << residual.lpNorm<Eigen::Infinity>() << ")";
  throw HyperregularityError(msg.str());
}

}  // namespace

Vector inverse_legendre(const SystemModel& model, double s, const Vector& q, const Vector& p) {
  if (model.v_of_p) {
    return model.v_of_p(s, q, p);
  }
  // Numeric partials carry ~1e-10 noise, which a 1e-12 residual target cannot resolve.
  return newton_inverse(model, s, q, p, model.numeric_partials ? 1e-8 : 1e-12);
}

double hamiltonian(const SystemModel& model, double s, const Vector& q, const Vector& p) {
  const Vector v = inverse_legendre(model, s, q, p);
  return p.dot(v) - model.lagrangian(s, q, v);
}

void require_hyperregular(const SystemModel& model, double s, const Vector& q, const Vector& v) {
  if (!model.hess_L_vv) {
    throw HyperregularityError(model.name + ": no velocity Hessian to check");
  }
  const Matrix hess = model.hess_L_vv(s, q, v);
  const double det = hess.determinant();
  if (!(std::abs(det) > 1e-8)) {
    std::ostringstream msg;
    msg << model.name << ": det(d2L/dv2) = " << det << " (Lagrangian is not hyperregular)";
    throw HyperregularityError(msg.str());
  }
}

// Metric geometry -------------------------------------------------------------

Matrix inverse_metric(const MetricModel& m, const Vector& q) {
  const Eigen::FullPivLU<Matrix> lu(m.g(q));
  if (!lu.isInvertible()) {
    throw SingularMetricError(m.name + ": metric is singular at the queried point");
  }
  return lu.inverse();
}

void check_metric(const MetricModel& m, const Vector& q) {
  const Matrix g = m.g(q);
  if ((g - g.transpose()).lpNorm<Eigen::Infinity>() > 1e-12) {
    throw SingularMetricError(m.name + ": metric is not symmetric");
  }
  const Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) {
    throw SingularMetricError(m.name + ": metric is not positive definite");
  }
}

Christoffel christoffel(const MetricModel& m, const Vector& q) {
  const int n = m.n;
  const Matrix ginv = inverse_metric(m, q);
  const std::vector<Matrix> dg = m.dg_dq(q);
  Christoffel out(static_cast<std::size_t>(n), Matrix::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = j; k < n; ++k) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) {
          acc += ginv(i, l) * (dg[j](l, k) + dg[k](j, l) - dg[l](j, k));
        }
        out[i](j, k) = 0.5 * acc;
        out[i](k, j) = out[i](j, k);
      }
    }
  }
  return out;
}

MetricModel MetricModel::euclidean(int n, NoisePotential noise) {
  return {"euclidean", n, [n](const Vector&) -> Matrix { return Matrix::Identity(n, n); },
          [n](const Vector&) { return std::vector<Matrix>(n, Matrix::Zero(n, n)); },
          std::move(noise.gamma), std::move(noise.dgamma)};
}

MetricModel MetricModel::constant(int n, double c, NoisePotential noise) {
  return {"constant", n, [n, c](const Vector&) -> Matrix { return c * Matrix::Identity(n, n); },
          [n](const Vector&) { return std::vector<Matrix>(n, Matrix::Zero(n, n)); },
          std::move(noise.gamma), std::move(noise.dgamma)};
}

MetricModel MetricModel::polar(NoisePotential noise) {
  return {"polar", 2,
          [](const Vector& q) -> Matrix {
            Matrix g = Matrix::Zero(2, 2);
            g(0, 0) = 1.0;
            g(1, 1) = q(0) * q(0);
            return g;
          },
          [](const Vector& q) {
            std::vector<Matrix> dg(2, Matrix::Zero(2, 2));
            dg[0](1, 1) = 2.0 * q(0);
            return dg;
          },
          std::move(noise.gamma), std::move(noise.dgamma)};
}

}  // namespace sfhp
