#include "polyconv/thop.hpp"

#include <algorithm>
#include <cmath>

namespace polyconv::thop {

ConversionPlan plan_build(PlanInputs inputs, double eps,
                          std::size_t max_rank) {
  const std::size_t n = inputs.n;
  if (n == 0) throw ContractViolation("plan_build: n must be positive");
  if (inputs.d1.size() != n || inputs.d2.size() != n ||
      inputs.toeplitz_column.size() != n || inputs.toeplitz_row.size() != n) {
    throw ContractViolation("plan_build: diagonal/generator length mismatch");
  }
  const std::size_t nb = inputs.split_first_row ? n - 1 : n;
  if (inputs.split_first_row) {
    if (inputs.first_row_entries.size() != n) {
      throw ContractViolation(
          "plan_build: split plan needs an explicit first row of length n");
    }
  } else if (!inputs.first_row_entries.empty()) {
    throw ContractViolation(
        "plan_build: first_row_entries given without split_first_row");
  }
  if (nb > 0 && inputs.hankel.size != nb) {
    throw ContractViolation("plan_build: hankel oracle size mismatch");
  }

  ConversionPlan plan;
  plan.n_ = n;
  plan.split_ = inputs.split_first_row;
  plan.row0_ = std::move(inputs.first_row_entries);

  if (nb > 0) {
    plan.factor_ = lowrank::pivoted_cholesky(inputs.hankel, eps, max_rank);
    // The structured block's Toeplitz part shares the full generator: for
    // block indices the diagonal offset k-j is unchanged by the row-0 split.
    std::vector<double> col(inputs.toeplitz_column.begin(),
                            inputs.toeplitz_column.begin() + nb);
    std::vector<double> row(inputs.toeplitz_row.begin(),
                            inputs.toeplitz_row.begin() + nb);
    plan.toeplitz_.emplace(std::move(col), std::move(row));

    const std::size_t off = plan.split_ ? 1 : 0;
    plan.d1_.assign(inputs.d1.begin() + off, inputs.d1.begin() + off + nb);
    plan.d2_.assign(inputs.d2.begin() + off, inputs.d2.begin() + off + nb);
  }
  return plan;
}

void ConversionPlan::apply(std::span<const double> in,
                           std::span<double> out) const {
  if (in.size() != n_ || out.size() != n_) {
    throw ContractViolation("plan_apply: length mismatch");
  }
  const std::size_t nb = block_size();
  const std::size_t off = split_ ? 1 : 0;

  if (split_) {
    // Compensated dot for the explicit first row: its entries decay slowly,
    // so a plain sum would be the accuracy bottleneck of the whole apply.
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
      const double term = row0_[k] * in[k] - comp;
      const double next = sum + term;
      comp = (next - sum) - term;
      sum = next;
    }
    out[0] = sum;
  }
  if (nb == 0) return;

  std::vector<double> w(nb);
  for (std::size_t i = 0; i < nb; ++i) w[i] = d2_[i] * in[off + i];

  std::vector<double> acc(nb, 0.0);
  std::vector<double> u(nb);
  std::vector<double> t(nb);
  for (std::size_t r = 0; r < factor_.rank(); ++r) {
    const auto l = factor_.column(r);
    const double a = factor_.weights[r];
    for (std::size_t i = 0; i < nb; ++i) u[i] = l[i] * w[i];
    toeplitz_->apply(u, t);
    for (std::size_t i = 0; i < nb; ++i) acc[i] += a * l[i] * t[i];
  }
  for (std::size_t i = 0; i < nb; ++i) out[off + i] = d1_[i] * acc[i];
}

std::vector<double> ConversionPlan::apply(std::span<const double> in) const {
  std::vector<double> out(n_);
  apply(in, out);
  return out;
}

std::vector<double> plan_apply(const ConversionPlan& plan,
                               std::span<const double> v) {
  return plan.apply(v);
}

}  // namespace polyconv::thop
