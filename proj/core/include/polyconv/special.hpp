#pragma once

#include <cstddef>
#include <vector>

#include "polyconv/errors.hpp"

namespace polyconv::special {

/// lambda(z) = Gamma(z + 1/2) / Gamma(z + 1) for z >= 0.
///
/// Good to a couple of ulps over the whole range and never overflows: the
/// ratio itself lives in (0, sqrt(pi)] and decays like z^{-1/2}.  Throws
/// ContractViolation for negative or non-finite z.
double lambda(double z);

/// {lambda(0), lambda(1/2), lambda(1), ...}, count entries.
///
/// Element i equals lambda(i / 2.0) bit-for-bit; this is just the batched
/// form used by symbol fills.
std::vector<double> lambda_sequence(std::size_t count);

/// Product of Gamma(base + u) over the numerator shifts u, divided by the
/// same product over the denominator shifts.  Empty lists are allowed and
/// contribute a factor of 1.
struct GammaRatioSpec {
  std::vector<double> numerator;
  std::vector<double> denominator;
  double base = 0.0;
};

/// A signed magnitude kept in log form so huge intermediate Gamma values
/// never overflow.  sign is +1 or -1 (Gamma has no zeros).
struct SignedLogValue {
  int sign = 1;
  double log_abs = 0.0;

  double value() const;
};

/// Evaluate a GammaRatioSpec in (sign, log-magnitude) form.
///
/// Large arguments (>= 12) from the two sides are paired off and each pair is
/// evaluated with a cancellation-free log-ratio, so a ratio like
/// Gamma(z + 1/4) / Gamma(z + 3/4) at z = 1e7 keeps close to full precision
/// instead of losing ~eps * lgamma(z) to differencing.  Negative noninteger
/// arguments go through the reflection formula.  Throws PoleError when any
/// argument is a nonpositive integer.
SignedLogValue gamma_ratio_parts(const GammaRatioSpec& spec);

/// gamma_ratio_parts(spec).value()
double gamma_ratio(const GammaRatioSpec& spec);

}  // namespace polyconv::special
