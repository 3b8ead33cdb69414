#pragma once

namespace steklov {

/// Volume of the unit ball in R^N, pi^{N/2} / Gamma(1 + N/2).
double unit_ball_volume(int n);

/// n! for n >= 0, as a double.
double factorial(int n);

/// Upper incomplete gamma Gamma(n, x) for integer order n >= 1 and x >= 0,
/// via (n-1)! e^{-x} sum_{k<n} x^k / k!.
double upper_incomplete_gamma(int n, double x);

/// e^{x} Gamma(n, x), evaluated without overflow for large x.
double scaled_upper_incomplete_gamma(int n, double x);

}  // namespace steklov
