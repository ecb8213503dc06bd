#pragma once

namespace nbcrit {

/// Digamma psi(x) for x > 0: upward recurrence to x >= 10, then the
/// asymptotic (Stirling) series. Absolute error <= 1e-12 for x >= 1e-3,
/// relative error ~1e-15 below that (psi ~ -1/x).
double digamma(double x);

/// zeta(s) for real s > 1, Euler-Maclaurin summation with N = 16 and eight
/// Bernoulli correction terms. Absolute error <= 1e-10.
double zeta_real(double s);

} // namespace nbcrit
