#pragma once

#include <vector>

namespace dkra {

// Gauss-Hermite rule for integral f(x) exp(-x^2) dx: nodes ascending,
// sum of weights = sqrt(pi).
struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussHermite gauss_hermite(int n);

}  // namespace dkra
