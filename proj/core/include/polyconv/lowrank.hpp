#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polyconv/errors.hpp"

namespace polyconv::lowrank {

/// A real symmetric positive semidefinite matrix given implicitly.  The
/// factorization only ever asks for the full diagonal once and one column per
/// accepted pivot, which is what keeps the whole thing O(K^2 n).
struct PsdMatrixOracle {
  std::size_t size = 0;
  std::function<std::vector<double>()> diag;
  std::function<std::vector<double>(std::size_t)> column;
};

/// Rank-K factor: H ~= sum_r weights[r] * col(r) col(r)^T.
///
/// Columns are the raw residual columns at the accepted pivots (not
/// normalized); weights[r] is 1 over the pivot value, so all weights are
/// positive and pivot indices are distinct.  achieved_tol is the max updated
/// diagonal magnitude at termination, which for a PSD input equals the
/// max-norm of the reconstruction residual.
struct LowRankFactor {
  std::size_t n = 0;
  std::vector<double> columns;  // rank() * n, column r contiguous
  std::vector<double> weights;
  std::vector<std::size_t> pivots;
  double achieved_tol = 0.0;

  std::size_t rank() const { return weights.size(); }
  std::span<const double> column(std::size_t r) const {
    return {columns.data() + r * n, n};
  }
};

/// The running pivot (max of the updated diagonal) dropped below minus the
/// termination tolerance: the matrix is not numerically PSD.
class NotPsd : public Error {
 public:
  using Error::Error;
};

/// The rank cap was hit before the diagonal converged.  Carries the partial
/// factor built so far; callers wanting an exactly-K approximation set
/// max_rank = K with a tiny eps and use this payload.
class RankCapExceeded : public Error {
 public:
  RankCapExceeded(const std::string& msg, LowRankFactor partial_factor)
      : Error(msg), partial(std::move(partial_factor)) {}

  LowRankFactor partial;
};

/// Cap used when max_rank = 0 is passed: min(n, 8 ceil(log2(n+2)) + 40).
/// Generous against the observed O(log n) ranks, so hitting it means the
/// input was not the kind of matrix this library expects.
std::size_t default_max_rank(std::size_t n);

/// Default termination tolerance factor: 100 machine epsilons (relative to
/// the initial max diagonal).
double default_eps();

/// Diagonally pivoted Cholesky with deferred column updates.
///
/// Terminates when the max updated diagonal is <= eps * (initial max
/// diagonal).  Ties in the pivot search resolve to the lowest index.  Small
/// negative diagonal entries within tolerance are clamped to zero; entries
/// below -tol are tolerated (factorization rounding can push a stray entry
/// slightly past tol at large n) but never become pivots, and NotPsd is
/// raised only if the running max itself falls below -tol.
LowRankFactor pivoted_cholesky(const PsdMatrixOracle& oracle, double eps,
                               std::size_t max_rank = 0);

/// Wrap a Hankel matrix H_jk = symbol[j+k] as an oracle.  symbol.size() must
/// be odd (2n-1 values for an n x n matrix).
PsdMatrixOracle hankel_oracle(std::vector<double> symbol);

}  // namespace polyconv::lowrank
