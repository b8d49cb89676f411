#pragma once

namespace sfhp {

/// Euler Gamma function for x > 0 (Lanczos, g = 7, nine coefficients).
/// Throws DomainError for x <= 0 and OverflowError for x > 170.
double gamma(double x);

/// Digamma psi(x) = Gamma'(x) / Gamma(x) for x > 0.
/// Shifts the argument above 6 by recurrence, then sums the asymptotic series.
double digamma(double x);

}  // namespace sfhp
