#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "polyconv/errors.hpp"
#include "polyconv/lowrank.hpp"
#include "polyconv/toeplitz.hpp"

namespace polyconv::thop {

/// Everything needed to assemble A = D1 (T o H) D2, where o is the entrywise
/// product, T is Toeplitz with generator t_{j-k} and H is Hankel (delivered
/// as a PSD oracle, usually over a symbol h_{j+k}).
///
/// With split_first_row set, row 0 of A is stored explicitly in
/// first_row_entries (length n) and the structured block covers indices
/// 1..n-1 only; the hankel oracle must then have size n-1 and describe the
/// shifted submatrix (H_jk)_{1<=j,k}.  d1/d2 and the Toeplitz generator are
/// always full length n; split mode reads them from index 1 and 0..n-2
/// respectively.
struct PlanInputs {
  std::size_t n = 0;
  std::vector<double> d1;
  std::vector<double> d2;
  std::vector<double> toeplitz_column;  // T(i,0), i = 0..n-1
  std::vector<double> toeplitz_row;     // T(0,j), j = 0..n-1
  lowrank::PsdMatrixOracle hankel;
  bool split_first_row = false;
  std::vector<double> first_row_entries;
};

/// Compiled form of one conversion: the low-rank Hankel factor, the cached
/// Toeplitz symbol and the diagonal scalings.  Immutable after build; apply
/// is reentrant with per-call scratch.
class ConversionPlan {
 public:
  std::size_t size() const { return n_; }
  std::size_t rank() const { return factor_.rank(); }
  bool split_first_row() const { return split_; }
  const lowrank::LowRankFactor& hankel_factor() const { return factor_; }
  const std::vector<double>& first_row_entries() const { return row0_; }

  /// out = A in, at the cost of rank() Toeplitz applies.
  void apply(std::span<const double> in, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> in) const;

 private:
  friend ConversionPlan plan_build(PlanInputs inputs, double eps,
                                   std::size_t max_rank);

  std::size_t n_ = 0;
  bool split_ = false;
  std::vector<double> d1_;    // block scaling, length block_size()
  std::vector<double> d2_;
  std::vector<double> row0_;  // explicit first row when split
  std::optional<toeplitz::ToeplitzOperator> toeplitz_;
  lowrank::LowRankFactor factor_;

  std::size_t block_size() const { return split_ ? n_ - 1 : n_; }
};

/// Factor the Hankel oracle at tolerance eps (max_rank = 0 uses the lowrank
/// default cap) and cache the Toeplitz symbol.  Propagates NotPsd and
/// RankCapExceeded from the factorization.
ConversionPlan plan_build(PlanInputs inputs, double eps,
                          std::size_t max_rank = 0);

/// Free-function spelling of ConversionPlan::apply.
std::vector<double> plan_apply(const ConversionPlan& plan,
                               std::span<const double> v);

}  // namespace polyconv::thop
