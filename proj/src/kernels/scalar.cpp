#include "paoi/kernels.hpp"

#include <cmath>

namespace paoi::kernels {

double interference_sum_scalar(const double* weights, const double* uniforms,
                               std::size_t n, double beta) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (uniforms[i] < beta) acc += -std::log(uniforms[i] / beta) * weights[i];
  }
  return acc;
}

}  // namespace paoi::kernels
