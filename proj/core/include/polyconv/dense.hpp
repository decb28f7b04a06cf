#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "polyconv/errors.hpp"

namespace polyconv::dense {

/// The five structured conversion legs with explicit entry formulas.  Integer
/// parameter gaps never reach this module; they are handled exactly by the
/// banded factors in the conversions layer.
enum class Leg {
  leg2cheb,   // Legendre -> Chebyshev
  cheb2leg,   // Chebyshev -> Legendre
  ultra,      // ultraspherical lambda1 -> lambda2, 0 < |gap| < 1
  jacobi,     // (alpha, beta) -> (gamma, beta), 0 < |alpha - gamma| < 1
  laguerre,   // alpha1 -> alpha2, any noninteger gap
};

/// One conversion leg evaluated entry-by-entry.
///
/// Parameter slots by leg:
///   ultra:    p1 = source lambda1, p2 = target lambda2
///   jacobi:   p1 = source alpha, p2 = shared beta, p3 = target gamma
///   laguerre: p1 = source alpha1, p2 = target alpha2
struct DenseConversionSpec {
  Leg leg = Leg::leg2cheb;
  std::size_t n = 0;  // matrix dimension, N+1
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
};

/// Row j of the conversion matrix, written into out (length n).  Entries
/// come from per-row anchors (one lambda or gamma_ratio evaluation) advanced
/// by exact rational ratio recurrences, so a row costs O(n) with O(1)
/// arithmetic per entry.  Rows are upper-triangular; parity-structured
/// families are zero on odd diagonals.
void dense_row(const DenseConversionSpec& spec, std::size_t j,
               std::span<double> out);
std::vector<double> dense_row(const DenseConversionSpec& spec, std::size_t j);

/// Streamed row-by-row matvec with compensated dot products; O(n) memory.
/// This is the reference the fast path is judged against, so it never touches
/// the lowrank/toeplitz machinery.
std::vector<double> direct_apply(const DenseConversionSpec& spec,
                                 std::span<const double> v);

}  // namespace polyconv::dense
