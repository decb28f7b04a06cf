#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "polyconv/errors.hpp"

namespace polyconv::toeplitz {

/// n x n Toeplitz operator applied in O(n log n) via circulant embedding.
///
/// Construction runs one forward FFT of the embedded generator (length m =
/// smallest power of two >= 2n-1) and caches the frequency-domain symbol;
/// every apply afterwards costs one forward and one inverse transform.
/// Immutable after construction; concurrent applies on the same operator are
/// safe, each call owns its scratch.
class ToeplitzOperator {
 public:
  /// first_column holds T(i,0) top to bottom, first_row holds T(0,j) left to
  /// right.  Lengths must match and the shared corner entry must be equal.
  ToeplitzOperator(std::vector<double> first_column,
                   std::vector<double> first_row);

  std::size_t size() const { return n_; }
  std::size_t fft_size() const { return m_; }
  const std::vector<std::complex<double>>& cached_symbol() const {
    return symbol_;
  }

  /// y = T x.  The inverse transform's imaginary residue is checked against
  /// 1e-10 of the result scale before being discarded.
  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  double gen_max_ = 0.0;  // max |generator entry|, scale floor for checks
  std::vector<std::complex<double>> symbol_;
};

}  // namespace polyconv::toeplitz
