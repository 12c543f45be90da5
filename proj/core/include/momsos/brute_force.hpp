#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "momsos/instance.hpp"

namespace momsos {

struct OracleResult {
  double value = 0.0;
  std::vector<double> argmin;  // original coordinates
  int samples_used = 0;
  bool polish_converged = false;
};

/// Independent brute-force ground truth: quasi-uniform (Halton) sampling of
/// the unit ball, rejection on the constraints, projected-gradient polish of
/// the per-block best candidates. Shares no code path with the hierarchy.
///
/// Samples are consumed in fixed blocks of 10000 Halton indices with one
/// polish candidate per block, so growing `samples` under a fixed seed only
/// extends the sequence: the reported value can never get worse (the 10^5
/// default polishes the 10 block winners). `seed` offsets the Halton stream.
///
/// Requires a preprocessed instance, dimension <= 4, samples >= 1000.
/// Throws std::runtime_error when no feasible sample exists, with the least
/// constraint violation seen as evidence.
OracleResult brute_force_min(const Instance& inst, int samples, int polish_steps = 500,
                             unsigned seed = 0);

/// Halton radical-inverse u_i in base `base` for 1-based index i.
double halton(std::uint64_t index, unsigned base);

/// Inverse standard normal CDF (Acklam's rational approximation, refined by
/// one Halley step). Domain (0, 1).
double inverse_normal_cdf(double p);

}  // namespace momsos
