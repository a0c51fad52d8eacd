#pragma once

namespace graphon_lab::core {

/// Pointwise graphon entropy H(u) = -1/2 (u ln u + (1-u) ln(1-u)).
/// Extended by continuity to H(0) = H(1) = 0. Throws Domain outside [0,1].
double entropy_H(double u);

/// H'(u) = 1/2 ln((1-u)/u). Infinite at the endpoints.
double entropy_H_prime(double u);

/// H''(u) = -1/2 (1/u + 1/(1-u)).
double entropy_H_second(double u);

/// n-th derivative of H at u for n >= 2:
///   H^(n)(u) = -1/2 (n-2)! ((-1)^n u^(1-n) + (1-u)^(1-n)).
double entropy_H_derivative(int n, double u);

/// Even derivative H^(2k)(1/2), k >= 0. k = 0 returns H(1/2) = ln 2 / 2.
/// Uses H''(1/2) = -2 and H^(2k+2)(1/2) = 8k(2k-1) H^(2k)(1/2).
double entropy_H_even_derivative_at_half(int k);

/// Taylor coefficient H^(2k)(1/2) / (2k)! = -4^k / (4k(2k-1)) for k >= 1,
/// evaluated without forming the factorials.
double entropy_series_coefficient(int k);

}  // namespace graphon_lab::core
