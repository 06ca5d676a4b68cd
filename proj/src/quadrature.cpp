#include "dkra/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dkra {

// Newton iteration on the orthonormal Hermite recurrence (weight exp(-x^2)).
// Roots are found from asymptotic initial guesses, largest first, each
// polished to machine precision; weights follow from the derivative.
GaussHermite gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
  constexpr double kPiQuarterInv = 0.7511255444649425;  // pi^{-1/4}
  constexpr int kMaxIter = 64;

  std::vector<double> x(n), w(n);
  const int half = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    // initial guesses (Stroud/Secrest asymptotics)
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) -
          1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(n, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }
    double pp = 0.0;
    for (int iter = 0;; ++iter) {
      double p1 = kPiQuarterInv;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 -
             std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;  // d/dx of the orthonormal H_n
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
      if (iter >= kMaxIter)
        throw std::runtime_error("gauss_hermite: Newton did not converge");
    }
    x[i] = z;                  // positive roots, descending
    x[n - 1 - i] = -z;
    w[i] = 2.0 / (pp * pp);
    w[n - 1 - i] = w[i];
  }
  // odd n: center the middle node exactly
  if (n % 2 == 1) x[half - 1] = 0.0;

  // ascending node order
  std::reverse(x.begin(), x.end());
  std::reverse(w.begin(), w.end());
  return {std::move(x), std::move(w)};
}

}  // namespace dkra
