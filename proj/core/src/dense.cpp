#include "polyconv/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "polyconv/special.hpp"

namespace polyconv::dense {

namespace {

constexpr double kSqrtPi = 1.7724538509055160272981674833;

bool is_integer(double x) { return std::floor(x) == x; }

void validate(const DenseConversionSpec& spec) {
  if (spec.n == 0) {
    throw ContractViolation("dense: spec size must be positive");
  }
  switch (spec.leg) {
    case Leg::leg2cheb:
    case Leg::cheb2leg:
      return;
    case Leg::ultra: {
      if (!(spec.p1 > 0.0) || !(spec.p2 > 0.0)) {
        throw InvalidParameter("ultraspherical parameters must be positive");
      }
      const double gap = spec.p1 - spec.p2;
      if (gap == 0.0 || std::fabs(gap) >= 1.0 || is_integer(gap)) {
        throw InvalidParameter(
            "ultraspherical dense leg needs 0 < |lambda1 - lambda2| < 1");
      }
      return;
    }
    case Leg::jacobi: {
      if (!(spec.p1 > -1.0) || !(spec.p2 > -1.0) || !(spec.p3 > -1.0)) {
        throw InvalidParameter("jacobi parameters must exceed -1");
      }
      const double gap = spec.p1 - spec.p3;
      if (gap == 0.0 || std::fabs(gap) >= 1.0 || is_integer(gap)) {
        throw InvalidParameter(
            "jacobi dense leg needs 0 < |alpha - gamma| < 1");
      }
      return;
    }
    case Leg::laguerre: {
      if (!(spec.p1 > -1.0) || !(spec.p2 > -1.0)) {
        throw InvalidParameter("laguerre parameters must exceed -1");
      }
      if (is_integer(spec.p1 - spec.p2)) {
        throw InvalidParameter(
            "laguerre dense leg needs a noninteger parameter gap");
      }
      return;
    }
  }
  throw ContractViolation("dense: unknown leg");
}

// Row fills: one anchor per row, then exact rational ratios entry to entry.

void row_leg2cheb(std::size_t n, std::size_t j, std::span<double> out) {
  // M_00 = 1; M_jj = (2/sqrt(pi)) lambda(j); step ratio for k -> k+2 is
  // (k-j+1)(k+j+1) / ((k-j+2)(k+j+2)).
  double a = (j == 0)
                 ? 1.0
                 : (2.0 / kSqrtPi) * special::lambda(static_cast<double>(j));
  for (std::size_t k = j; k < n; k += 2) {
    out[k] = a;
    const double d = static_cast<double>(k - j);
    const double s = static_cast<double>(k + j);
    a *= ((d + 1.0) * (s + 1.0)) / ((d + 2.0) * (s + 2.0));
  }
}

void row_cheb2leg(std::size_t n, std::size_t j, std::span<double> out) {
  const double dj = static_cast<double>(j);
  out[j] = (j == 0) ? 1.0 : kSqrtPi / (2.0 * special::lambda(dj));
  if (j + 2 >= n) return;
  // First superdiagonal entry, then ratio
  // (k+2)/k * (k-j-1)/(k-j+2) * (j+k)/(j+k+3) for k -> k+2.
  double a = -(dj + 2.0) * (dj + 0.5) * kSqrtPi * special::lambda(dj + 0.5) /
             (2.0 * (2.0 * dj + 3.0));
  for (std::size_t k = j + 2; k < n; k += 2) {
    out[k] = a;
    const double dk = static_cast<double>(k);
    a *= (dk + 2.0) / dk * (dk - dj - 1.0) / (dk - dj + 2.0) * (dj + dk) /
         (dj + dk + 3.0);
  }
}

void row_ultra(const DenseConversionSpec& spec, std::size_t j,
               std::span<double> out) {
  const double l1 = spec.p1;
  const double l2 = spec.p2;
  const double g = l1 - l2;
  const double dj = static_cast<double>(j);
  double a = 1.0;
  if (j > 0) {
    a = (dj + l2) *
        special::gamma_ratio({.numerator = {l2, dj + l1},
                              .denominator = {l1, dj + l2 + 1.0}});
  }
  for (std::size_t k = j; k < spec.n; k += 2) {
    out[k] = a;
    const double dh = 0.5 * static_cast<double>(k - j);
    const double sh = 0.5 * static_cast<double>(k + j);
    a *= (dh + g) / (dh + 1.0) * (sh + l1) / (sh + l2 + 1.0);
  }
}

void row_jacobi(const DenseConversionSpec& spec, std::size_t j,
                std::span<double> out) {
  const double al = spec.p1;
  const double be = spec.p2;
  const double ga = spec.p3;
  const double dj = static_cast<double>(j);
  if (j == 0) {
    // Row 0 uses the cancelled ratio so alpha+beta = -1 stays regular.
    double a = 1.0;
    for (std::size_t k = 0; k < spec.n; ++k) {
      out[k] = a;
      const double dk = static_cast<double>(k);
      a *= (dk + be + 1.0) * (dk + al - ga) /
           ((dk + 1.0) * (dk + ga + be + 2.0));
    }
    return;
  }
  double a = (2.0 * dj + ga + be + 1.0) *
             special::gamma_ratio(
                 {.numerator = {dj + ga + be + 1.0, 2.0 * dj + al + be + 1.0},
                  .denominator = {dj + al + be + 1.0, 2.0 * dj + ga + be + 2.0}});
  for (std::size_t k = j; k < spec.n; ++k) {
    out[k] = a;
    const double dk = static_cast<double>(k);
    a *= (dk + be + 1.0) / (dk + al + be + 1.0) * (dk - dj + al - ga) /
         (dk - dj + 1.0) * (dk + dj + al + be + 1.0) /
         (dk + dj + ga + be + 2.0);
  }
}

void row_laguerre(const DenseConversionSpec& spec, std::size_t j,
                  std::span<double> out) {
  // A_{jk} = (g)_{k-j} / (k-j)! with g the parameter gap: entries depend on
  // the diagonal only, and the Pochhammer ratio is pole-free for noninteger g.
  const double g = spec.p1 - spec.p2;
  double a = 1.0;
  for (std::size_t k = j; k < spec.n; ++k) {
    out[k] = a;
    const double d = static_cast<double>(k - j);
    a *= (d + g) / (d + 1.0);
  }
}

}  // namespace

void dense_row(const DenseConversionSpec& spec, std::size_t j,
               std::span<double> out) {
  validate(spec);
  if (j >= spec.n || out.size() != spec.n) {
    throw ContractViolation("dense_row: index or output length out of range");
  }
  std::fill(out.begin(), out.end(), 0.0);
  switch (spec.leg) {
    case Leg::leg2cheb:
      row_leg2cheb(spec.n, j, out);
      return;
    case Leg::cheb2leg:
      row_cheb2leg(spec.n, j, out);
      return;
    case Leg::ultra:
      row_ultra(spec, j, out);
      return;
    case Leg::jacobi:
      row_jacobi(spec, j, out);
      return;
    case Leg::laguerre:
      row_laguerre(spec, j, out);
      return;
  }
}

std::vector<double> dense_row(const DenseConversionSpec& spec, std::size_t j) {
  std::vector<double> out(spec.n);
  dense_row(spec, j, out);
  return out;
}

std::vector<double> direct_apply(const DenseConversionSpec& spec,
                                 std::span<const double> v) {
  validate(spec);
  if (v.size() != spec.n) {
    throw ContractViolation("direct_apply: vector length mismatch");
  }
  std::vector<double> row(spec.n);
  std::vector<double> out(spec.n);
  for (std::size_t j = 0; j < spec.n; ++j) {
    dense_row(spec, j, row);
    // Compensated dot over the row support [j, n).
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t k = j; k < spec.n; ++k) {
      const double term = row[k] * v[k] - comp;
      const double next = sum + term;
      comp = (next - sum) - term;
      sum = next;
    }
    out[j] = sum;
  }
  return out;
}

}  // namespace polyconv::dense
