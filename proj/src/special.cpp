#include "steklov/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace steklov {

double unit_ball_volume(int n) {
  if (n < 0) throw std::invalid_argument("unit_ball_volume: negative dimension");
  // B_0 = 1, B_1 = 2, B_n = 2*pi/n * B_{n-2}
  double v = (n % 2 == 0) ? 1.0 : 2.0;
  for (int k = (n % 2 == 0) ? 2 : 3; k <= n; k += 2) v *= 2.0 * std::numbers::pi / k;
  return v;
}

double factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double scaled_upper_incomplete_gamma(int n, double x) {
  if (n < 1) throw std::invalid_argument("upper_incomplete_gamma: order must be >= 1");
  if (x < 0) throw std::invalid_argument("upper_incomplete_gamma: x must be >= 0");
  // (n-1)! sum_{k<n} x^k/k!, Horner from the top term down
  double sum = 1.0;
  for (int k = n - 1; k >= 1; --k) sum = 1.0 + sum * x / k;
  return factorial(n - 1) * sum;
}

double upper_incomplete_gamma(int n, double x) {
  return std::exp(-x) * scaled_upper_incomplete_gamma(n, x);
}

}  // namespace steklov
