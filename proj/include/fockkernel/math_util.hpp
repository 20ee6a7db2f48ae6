#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace fockkernel {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// log(n!) with an exact table for small n and lgamma above it. (2n)! blows
// past double-precision integer range near n = 86, and we need level 40+
// factorial ratios, so ratios are formed in the log domain.
inline double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  static const double table[21] = {
      0.0,
      0.0,
      0.6931471805599453,    // log 2!
      1.791759469228055,
      3.1780538303479458,
      4.787491742782046,
      6.579251212010101,
      8.525161361065415,
      10.60460290274525,
      12.801827480081469,
      15.104412573075516,
      17.502307845873887,
      19.987214495661885,
      22.552163853123425,
      25.191221182738683,
      27.899271383840894,
      30.671860106080672,
      33.50507345013689,
      36.39544520803305,
      39.339884187199495,
      42.335616460753485,    // log 20!
  };
  if (n <= 20) return table[n];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

inline double factorial(int n) {
  if (n < 0 || n > 170) throw std::invalid_argument("factorial: out of double range");
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

inline bool nearly_equal(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace fockkernel
