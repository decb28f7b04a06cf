#include "polyconv/lowrank.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace polyconv::lowrank {

std::size_t default_max_rank(std::size_t n) {
  // ceil(log2(n+2)) == bit_width(n+1) for n >= 0
  const std::size_t cap =
      8 * std::bit_width(static_cast<std::size_t>(n + 1)) + 40;
  return std::min(n, cap);
}

double default_eps() {
  return 100.0 * std::numeric_limits<double>::epsilon();
}

LowRankFactor pivoted_cholesky(const PsdMatrixOracle& oracle, double eps,
                               std::size_t max_rank) {
  const std::size_t n = oracle.size;
  if (n == 0 || !oracle.diag || !oracle.column) {
    throw ContractViolation("pivoted_cholesky: oracle incomplete");
  }
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw ContractViolation("pivoted_cholesky: eps must be positive");
  }
  if (max_rank == 0) max_rank = default_max_rank(n);

  std::vector<double> d = oracle.diag();
  if (d.size() != n) {
    throw ContractViolation("pivoted_cholesky: diag() size mismatch");
  }

  LowRankFactor f;
  f.n = n;

  double dmax0 = d[0];
  for (double v : d) dmax0 = std::max(dmax0, v);
  if (dmax0 < 0.0) {
    std::ostringstream msg;
    msg << "pivoted_cholesky: max diagonal " << dmax0 << " is negative";
    throw NotPsd(msg.str());
  }
  const double tol = eps * dmax0;

  while (true) {
    std::size_t p = 0;
    double dp = d[0];
    for (std::size_t i = 1; i < n; ++i) {
      if (d[i] > dp) {
        dp = d[i];
        p = i;
      }
    }
    if (dp < -tol) {
      // With pivot entries zeroed after each step the max cannot drop below
      // -tol in practice; the check documents the contract and guards
      // oracles whose diag() and column() disagree.
      std::ostringstream msg;
      msg << "pivoted_cholesky: pivot " << dp << " below -" << tol
          << " at rank " << f.rank();
      throw NotPsd(msg.str());
    }
    if (dp <= tol) break;
    if (f.rank() == max_rank) {
      std::ostringstream msg;
      msg << "pivoted_cholesky: rank cap " << max_rank
          << " hit with pivot residual " << dp << " > " << tol;
      double worst = 0.0;
      for (double v : d) worst = std::max(worst, std::fabs(v));
      f.achieved_tol = worst;
      throw RankCapExceeded(msg.str(), std::move(f));
    }

    std::vector<double> col = oracle.column(p);
    if (col.size() != n) {
      throw ContractViolation("pivoted_cholesky: column() size mismatch");
    }
    // Deferred update: subtract the contribution of all accepted columns at
    // once, so each matrix column is touched exactly once overall.
    for (std::size_t r = 0; r < f.rank(); ++r) {
      const double* lr = f.columns.data() + r * n;
      const double c = f.weights[r] * lr[p];
      for (std::size_t i = 0; i < n; ++i) col[i] -= c * lr[i];
    }
    if (!(col[p] > 0.0)) {
      std::ostringstream msg;
      msg << "pivoted_cholesky: residual pivot entry " << col[p]
          << " inconsistent with diagonal " << dp;
      throw NotPsd(msg.str());
    }
    const double a = 1.0 / col[p];

    for (std::size_t i = 0; i < n; ++i) {
      d[i] -= col[i] * col[i] * a;
      if (d[i] < 0.0 && d[i] >= -tol) d[i] = 0.0;
    }
    d[p] = 0.0;

    f.columns.insert(f.columns.end(), col.begin(), col.end());
    f.weights.push_back(a);
    f.pivots.push_back(p);
  }

  double worst = 0.0;
  for (double v : d) worst = std::max(worst, std::fabs(v));
  f.achieved_tol = worst;
  return f;
}

PsdMatrixOracle hankel_oracle(std::vector<double> symbol) {
  if (symbol.empty() || symbol.size() % 2 == 0) {
    throw ContractViolation("hankel_oracle: symbol size must be odd (2n-1)");
  }
  const std::size_t n = (symbol.size() + 1) / 2;
  auto sym = std::make_shared<const std::vector<double>>(std::move(symbol));

  PsdMatrixOracle oracle;
  oracle.size = n;
  oracle.diag = [sym, n] {
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = (*sym)[2 * i];
    return d;
  };
  oracle.column = [sym, n](std::size_t j) {
    if (j >= n) throw ContractViolation("hankel_oracle: column out of range");
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = (*sym)[i + j];
    return c;
  };
  return oracle;
}

}  // namespace polyconv::lowrank
