#pragma once

#include <cstddef>
#include <string>

namespace paoi::kernels {

// Aggregate interference for one slot:
//   sum_i [u_i < beta] * (-log(u_i / beta)) * w_i
// where u_i is a uniform(0,1) draw folded into both the activity coin and,
// conditionally, an Exp(1) fade, and w_i = P * x_i^{-alpha} is the
// precomputed pathloss weight of interferer i. Arrays must have equal
// length n.
double interference_sum(const double* weights, const double* uniforms,
                        std::size_t n, double beta);

double interference_sum_scalar(const double* weights, const double* uniforms,
                               std::size_t n, double beta);
#if defined(__x86_64__) || defined(_M_X64)
double interference_sum_avx2(const double* weights, const double* uniforms,
                             std::size_t n, double beta);
#endif

// Name of the backend interference_sum currently dispatches to
// ("avx2" or "scalar").
std::string active_backend();

// Pin the scalar path regardless of CPU support (equivalence tests);
// force_scalar(false) restores runtime detection.
void force_scalar(bool on);

}  // namespace paoi::kernels
