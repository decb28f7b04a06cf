#include "polyconv/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace polyconv::special {

namespace {

// Asymptotic expansion about the midpoint v = z + 1/4:
//   lambda(z) = v^{-1/2} (c0 + c1 v^{-2} + c2 v^{-4} + ...)
// The coefficients are exact rationals with dyadic denominators, so the long
// double literals below are exact.  Truncating after c9 leaves a relative
// error under 5e-20 for z >= 10.
constexpr int kSeriesTerms = 10;
constexpr long double kSeriesCoeff[kSeriesTerms] = {
    1.0L,
    -1.0L / 64.0L,
    21.0L / 8192.0L,
    -671.0L / 524288.0L,
    180323.0L / 134217728.0L,
    -20898423.0L / 8589934592.0L,
    7426362705.0L / 1099511627776.0L,
    -1874409467055.0L / 70368744177664.0L,
    5099063967524835.0L / 36028797018963968.0L,
    -2246777786836681835.0L / 2305843009213693952.0L,
};

constexpr double kSeriesThreshold = 10.0;

long double lambda_series(long double z) {
  const long double v = z + 0.25L;
  const long double t = 1.0L / (v * v);
  long double s = kSeriesCoeff[kSeriesTerms - 1];
  for (int k = kSeriesTerms - 2; k >= 0; --k) s = s * t + kSeriesCoeff[k];
  return s / sqrtl(v);
}

}  // namespace

double lambda(double z) {
  if (!(std::isfinite(z) && z >= 0.0)) {
    throw ContractViolation("lambda: z must be finite and >= 0");
  }
  if (z >= kSeriesThreshold) {
    return static_cast<double>(lambda_series(static_cast<long double>(z)));
  }
  // Evaluate the series at z + m >= 10 and walk down with
  //   lambda(z) = lambda(z + 1) (z + 1) / (z + 1/2).
  // The handful of long double steps costs well under an ulp, and it makes
  // the downward recurrence hold essentially exactly across the threshold.
  const int m = static_cast<int>(std::ceil(kSeriesThreshold - z));
  long double acc = lambda_series(static_cast<long double>(z) + m);
  for (int i = m; i >= 1; --i) {
    const long double zi = static_cast<long double>(z) + i;
    acc *= zi / (zi - 0.5L);
  }
  return static_cast<double>(acc);
}

std::vector<double> lambda_sequence(std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = lambda(0.5 * static_cast<double>(i));
  }
  return out;
}

namespace {

// Stirling tail phi(x) = lgamma(x) - [(x - 1/2) ln x - x + ln(2 pi) / 2].
// Eight Bernoulli terms; below 2e-18 absolute for x >= 12.
double stirling_tail(double x) {
  constexpr double kPhi[8] = {
      1.0 / 12.0,      -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
  };
  const double t = 1.0 / (x * x);
  double s = kPhi[7];
  for (int k = 6; k >= 0; --k) s = s * t + kPhi[k];
  return s / x;
}

constexpr double kLargeArg = 12.0;

// ln(Gamma(x) / Gamma(y)) for x, y >= 12 without forming either lgamma, so
// nearby arguments don't cancel away ~eps * lgamma worth of precision.
double paired_log_ratio(double x, double y) {
  const double delta = x - y;
  return (y - 0.5) * std::log1p(delta / y) + delta * std::log(x) - delta +
         stirling_tail(x) - stirling_tail(y);
}

// Contribution of one small (< 12) argument.  dir is +1 for numerator
// factors, -1 for denominator factors.
void accumulate_small(double x, int dir, int& sign, double& log_abs) {
  if (x > 0.0) {
    log_abs += dir * std::lgamma(x);
    return;
  }
  // Negative noninteger: reflect.  With x = m + r, r in (0,1),
  // |sin(pi x)| = sin(pi r) and the sign of Gamma(x) alternates with m.
  const double m = std::floor(x);
  const double r = x - m;
  const double log_mag = std::log(std::numbers::pi) -
                         std::log(std::sin(std::numbers::pi * r)) -
                         std::lgamma(1.0 - x);
  log_abs += dir * log_mag;
  if (static_cast<long long>(m) % 2 != 0) sign = -sign;
}

}  // namespace

double SignedLogValue::value() const { return sign * std::exp(log_abs); }

SignedLogValue gamma_ratio_parts(const GammaRatioSpec& spec) {
  int sign = 1;
  double log_abs = 0.0;
  std::vector<double> big_num;
  std::vector<double> big_den;

  auto feed = [&](const std::vector<double>& shifts, int dir,
                  std::vector<double>& big) {
    for (double shift : shifts) {
      const double x = spec.base + shift;
      if (!std::isfinite(x)) {
        throw ContractViolation("gamma_ratio: non-finite argument");
      }
      if (x <= 0.0 && x == std::floor(x)) {
        std::ostringstream msg;
        msg << "gamma_ratio: Gamma(" << x << ") is a pole";
        throw PoleError(msg.str());
      }
      if (x >= kLargeArg) {
        big.push_back(x);
      } else {
        accumulate_small(x, dir, sign, log_abs);
      }
    }
  };
  feed(spec.numerator, +1, big_num);
  feed(spec.denominator, -1, big_den);

  // Pair large numerator and denominator arguments by rank so each pair is a
  // cancellation-free ratio; leftovers fall back to plain lgamma (their
  // magnitude is genuinely astronomical, nothing to cancel against).
  std::sort(big_num.begin(), big_num.end());
  std::sort(big_den.begin(), big_den.end());
  const std::size_t paired = std::min(big_num.size(), big_den.size());
  for (std::size_t i = 0; i < paired; ++i) {
    log_abs += paired_log_ratio(big_num[i], big_den[i]);
  }
  for (std::size_t i = paired; i < big_num.size(); ++i) {
    log_abs += std::lgamma(big_num[i]);
  }
  for (std::size_t i = paired; i < big_den.size(); ++i) {
    log_abs -= std::lgamma(big_den[i]);
  }
  return SignedLogValue{sign, log_abs};
}

double gamma_ratio(const GammaRatioSpec& spec) {
  return gamma_ratio_parts(spec).value();
}

}  // namespace polyconv::special
