#include "graphon_lab/core/entropy.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "graphon_lab/errors.hpp"

namespace graphon_lab::core {

namespace {

void require_unit(double u, const char* what) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw Error(ErrorCode::Domain, std::string(what) + ": argument " + std::to_string(u) +
                                       " outside [0,1]");
  }
}

// x ln x with the 0 ln 0 = 0 convention.
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

double entropy_H(double u) {
  require_unit(u, "entropy_H");
  return -0.5 * (xlogx(u) + xlogx(1.0 - u));
}

double entropy_H_prime(double u) {
  require_unit(u, "entropy_H_prime");
  return 0.5 * (std::log1p(-u) - std::log(u));
}

double entropy_H_second(double u) {
  require_unit(u, "entropy_H_second");
  return -0.5 * (1.0 / u + 1.0 / (1.0 - u));
}

double entropy_H_derivative(int n, double u) {
  require_unit(u, "entropy_H_derivative");
  if (n == 0) return entropy_H(u);
  if (n == 1) return entropy_H_prime(u);
  double fact = 1.0;
  for (int i = 2; i <= n - 2; ++i) fact *= i;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return -0.5 * fact * (sign * std::pow(u, 1 - n) + std::pow(1.0 - u, 1 - n));
}

double entropy_H_even_derivative_at_half(int k) {
  if (k < 0) throw Error(ErrorCode::Domain, "derivative order must be >= 0");
  if (k == 0) return 0.5 * std::numbers::ln2;
  double h = -2.0;
  for (int j = 1; j < k; ++j) h *= 8.0 * j * (2.0 * j - 1.0);
  return h;
}

double entropy_series_coefficient(int k) {
  if (k < 0) throw Error(ErrorCode::Domain, "series index must be >= 0");
  if (k == 0) return 0.5 * std::numbers::ln2;
  return -std::ldexp(1.0, 2 * k) / (4.0 * k * (2.0 * k - 1.0));
}

}  // namespace graphon_lab::core
