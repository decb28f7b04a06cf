#include "polyconv/conversions.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

#include "polyconv/dense.hpp"
#include "polyconv/special.hpp"
#include "polyconv/thop.hpp"

namespace polyconv {
namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kSqrtPi = 1.77245385090551602729816748334;

// Parameter gaps within this tolerance of an integer ride the exact banded
// chain; everything else is a genuine fractional leg.
constexpr double kGapTol = 1e-12;

// Jacobi fractional legs split off the first row once alpha+beta is at or
// below -1; the margin keeps the non-split formulas away from the
// Gamma(alpha+beta+1) pole.
constexpr double kSplitMargin = 1e-8;

bool near_equal(double x, double y) { return std::abs(x - y) <= kGapTol; }

bool near_integer(double g) { return std::abs(g - std::round(g)) <= kGapTol; }

double ratio(std::vector<double> num, std::vector<double> den) {
  return special::gamma_ratio({std::move(num), std::move(den)});
}

struct Step {
  enum class Kind {
    negate_odd,
    ultra_raise,     // p1 = lambda of the source basis
    ultra_lower,     // p1 = lambda of the source basis
    jac_raise,       // p1 = alpha of the source basis, p2 = beta
    jac_lower,
    lag_raise,
    lag_lower,
    scale_jac2cheb,  // multiply by P_k^(-1/2,-1/2)(1)
    scale_cheb2jac,  // divide by it
    scale_ultra2jac, // p1 = lambda; multiply by the proportionality diagonal
    scale_jac2ultra, // p1 = lambda; divide by it
    fractional,
  };

  Kind kind;
  dense::Leg leg = dense::Leg::leg2cheb;
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
};

Step frac_step(dense::Leg leg, double p1 = 0.0, double p2 = 0.0,
               double p3 = 0.0) {
  return {Step::Kind::fractional, leg, p1, p2, p3};
}

// ----- symbol generators ---------------------------------------------------

std::vector<double> gen_leg2cheb(std::size_t n) {
  return special::lambda_sequence(2 * n - 1);
}

std::vector<double> gen_cheb2leg_block(std::size_t nb) {
  const auto lam = special::lambda_sequence(2 * nb);  // up to lambda((2nb-1)/2)
  std::vector<double> h(2 * nb - 1);
  for (std::size_t s = 0; s < h.size(); ++s) {
    h[s] = 2.0 * lam[s + 1] / static_cast<double>(s + 3);
  }
  return h;
}

std::vector<double> gen_ultra(double l1, double l2, std::size_t n) {
  std::vector<double> h(2 * n - 1);
  for (std::size_t s = 0; s < h.size(); ++s) {
    const double sh = static_cast<double>(s) / 2.0;
    h[s] = ratio({l2, sh + l1}, {l1, sh + l2 + 1.0});
  }
  return h;
}

std::vector<double> gen_jacobi(double a, double b, double g, std::size_t n,
                               std::size_t shift) {
  std::vector<double> h(2 * n - 1);
  for (std::size_t s = 0; s < h.size(); ++s) {
    const double sd = static_cast<double>(s + shift);
    h[s] = ratio({sd + a + b + 1.0}, {sd + g + b + 2.0});
  }
  return h;
}

// ----- structured-plan inputs ----------------------------------------------

thop::PlanInputs make_leg2cheb_inputs(std::size_t n) {
  thop::PlanInputs in;
  in.n = n;
  in.d1.assign(n, 2.0 / kPi);
  in.d1[0] = 1.0 / kPi;
  in.d2.assign(n, 1.0);
  auto lam = gen_leg2cheb(n);  // lam[i] = lambda(i/2)
  in.toeplitz_column.assign(n, 0.0);
  in.toeplitz_column[0] = lam[0];
  in.toeplitz_row.assign(n, 0.0);
  for (std::size_t d = 0; d < n; d += 2) in.toeplitz_row[d] = lam[d];
  in.hankel = lowrank::hankel_oracle(std::move(lam));
  return in;
}

thop::PlanInputs make_cheb2leg_inputs(std::size_t n) {
  thop::PlanInputs in;
  in.n = n;
  in.split_first_row = true;
  in.first_row_entries.assign(n, 0.0);
  in.first_row_entries[0] = 1.0;
  for (std::size_t k = 2; k < n; k += 2) {
    in.first_row_entries[k] = 1.0 / (1.0 - static_cast<double>(k * k));
  }
  in.d1.resize(n);
  in.d2.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    in.d1[j] = static_cast<double>(j) + 0.5;
    in.d2[j] = -0.25 * static_cast<double>(j);
  }
  in.d2[0] = -1.0 / kSqrtPi;
  in.toeplitz_column.assign(n, 0.0);
  in.toeplitz_row.assign(n, 0.0);
  in.toeplitz_column[0] = in.toeplitz_row[0] = -2.0 * kSqrtPi;
  if (n > 1) {
    const auto lam = special::lambda_sequence(2 * n - 2);
    for (std::size_t d = 2; d < n; d += 2) {
      in.toeplitz_row[d] = 2.0 * lam[d - 2] / static_cast<double>(d);
    }
    in.hankel = lowrank::hankel_oracle(gen_cheb2leg_block(n - 1));
  }
  return in;
}

thop::PlanInputs make_ultra_inputs(double l1, double l2, std::size_t n) {
  thop::PlanInputs in;
  in.n = n;
  const double g = l1 - l2;
  in.d1.resize(n);
  for (std::size_t j = 0; j < n; ++j) in.d1[j] = l2 + static_cast<double>(j);
  in.d2.assign(n, 1.0);
  in.toeplitz_column.assign(n, 0.0);
  in.toeplitz_column[0] = 1.0;
  in.toeplitz_row.assign(n, 0.0);
  for (std::size_t d = 0; d < n; d += 2) {
    const double dh = static_cast<double>(d) / 2.0;
    in.toeplitz_row[d] = ratio({dh + g}, {g, dh + 1.0});
  }
  in.hankel = lowrank::hankel_oracle(gen_ultra(l1, l2, n));
  return in;
}

thop::PlanInputs make_jacobi_inputs(double a, double b, double g,
                                    std::size_t n) {
  thop::PlanInputs in;
  in.n = n;
  in.split_first_row = a + b <= -1.0 + kSplitMargin;
  const double gap = a - g;
  in.d1.resize(n);
  in.d2.resize(n);
  for (std::size_t j = 1; j < n; ++j) {
    const double jd = static_cast<double>(j);
    in.d1[j] = (2.0 * jd + g + b + 1.0) * ratio({jd + g + b + 1.0},
                                                {jd + b + 1.0});
    in.d2[j] = ratio({jd + b + 1.0}, {jd + a + b + 1.0});
  }
  if (in.split_first_row) {
    // Row 0 is applied directly; its scalings are never read and their
    // closed forms would sit on the Gamma pole at a+b = -1.
    in.d1[0] = in.d2[0] = 0.0;
    in.first_row_entries.resize(n);
    in.first_row_entries[0] = 1.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const double kd = static_cast<double>(k);
      in.first_row_entries[k + 1] = in.first_row_entries[k] *
                                    ((kd + b + 1.0) * (kd + gap)) /
                                    ((kd + 1.0) * (kd + g + b + 2.0));
    }
    if (n > 1) {
      in.hankel = lowrank::hankel_oracle(gen_jacobi(a, b, g, n - 1, 2));
    }
  } else {
    in.d1[0] = ratio({g + b + 2.0}, {b + 1.0});
    in.d2[0] = ratio({b + 1.0}, {a + b + 1.0});
    in.hankel = lowrank::hankel_oracle(gen_jacobi(a, b, g, n, 0));
  }
  in.toeplitz_column.assign(n, 0.0);
  in.toeplitz_column[0] = 1.0;
  in.toeplitz_row.resize(n);
  for (std::size_t d = 0; d < n; ++d) {
    const double dd = static_cast<double>(d);
    in.toeplitz_row[d] = ratio({dd + gap}, {gap, dd + 1.0});
  }
  return in;
}

thop::PlanInputs make_laguerre_inputs(double a1, double a2, std::size_t n) {
  thop::PlanInputs in;
  in.n = n;
  const double g = a1 - a2;
  in.d1.assign(n, 1.0);
  in.d2.assign(n, 1.0);
  in.toeplitz_column.assign(n, 0.0);
  in.toeplitz_column[0] = 1.0;
  in.toeplitz_row.resize(n);
  for (std::size_t d = 0; d < n; ++d) {
    const double dd = static_cast<double>(d);
    in.toeplitz_row[d] = ratio({dd + g}, {g, dd + 1.0});
  }
  // The Hankel part is identically one: the plan reduces to a single
  // Toeplitz application through the rank-1 factor.
  in.hankel = lowrank::hankel_oracle(std::vector<double>(2 * n - 1, 1.0));
  return in;
}

thop::PlanInputs make_plan_inputs(const Step& s, std::size_t n) {
  switch (s.leg) {
    case dense::Leg::leg2cheb:
      return make_leg2cheb_inputs(n);
    case dense::Leg::cheb2leg:
      return make_cheb2leg_inputs(n);
    case dense::Leg::ultra:
      return make_ultra_inputs(s.p1, s.p2, n);
    case dense::Leg::jacobi:
      return make_jacobi_inputs(s.p1, s.p2, s.p3, n);
    case dense::Leg::laguerre:
      return make_laguerre_inputs(s.p1, s.p2, n);
  }
  throw ContractViolation("make_plan_inputs: unknown leg");
}

// ----- plan cache ----------------------------------------------------------

using PlanPtr = std::shared_ptr<const thop::ConversionPlan>;

struct PlanKey {
  int leg;
  double p1, p2, p3;
  std::size_t n;
  double eps;
  std::size_t max_rank;

  bool operator<(const PlanKey& o) const {
    return std::tie(leg, p1, p2, p3, n, eps, max_rank) <
           std::tie(o.leg, o.p1, o.p2, o.p3, o.n, o.eps, o.max_rank);
  }
};

std::mutex g_plan_mu;
std::map<PlanKey, std::shared_future<PlanPtr>>& plan_map() {
  static std::map<PlanKey, std::shared_future<PlanPtr>> m;
  return m;
}

// First caller for a key builds outside the lock; concurrent callers wait on
// the shared future. Failed builds are evicted so a later call can retry.
PlanPtr plan_for(const Step& s, std::size_t n, const ConvertOptions& opts,
                 double* build_seconds) {
  const PlanKey key{static_cast<int>(s.leg), s.p1, s.p2, s.p3,
                    n,                       opts.eps, opts.max_rank};
  std::promise<PlanPtr> prom;
  std::shared_future<PlanPtr> fut;
  bool builder = false;
  {
    std::lock_guard<std::mutex> lk(g_plan_mu);
    auto& m = plan_map();
    auto it = m.find(key);
    if (it == m.end()) {
      builder = true;
      fut = prom.get_future().share();
      m.emplace(key, fut);
    } else {
      fut = it->second;
    }
  }
  if (!builder) return fut.get();
  try {
    const auto t0 = std::chrono::steady_clock::now();
    PlanPtr plan = std::make_shared<const thop::ConversionPlan>(
        thop::plan_build(make_plan_inputs(s, n), opts.eps, opts.max_rank));
    if (build_seconds) {
      *build_seconds +=
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
    }
    prom.set_value(plan);
    return plan;
  } catch (...) {
    {
      std::lock_guard<std::mutex> lk(g_plan_mu);
      plan_map().erase(key);
    }
    prom.set_exception(std::current_exception());
    throw;
  }
}

// ----- route construction --------------------------------------------------

void append_ultra_route(std::vector<Step>& steps, double l1, double l2) {
  const double gap = l2 - l1;
  if (std::abs(gap) <= kGapTol) return;
  if (near_integer(gap)) {
    const long m = std::lround(gap);
    for (long i = 0; i < std::labs(m); ++i) {
      const double li = l1 + static_cast<double>(m > 0 ? i : -i);
      steps.push_back(m > 0 ? Step{Step::Kind::ultra_raise, {}, li}
                            : Step{Step::Kind::ultra_lower, {}, li});
    }
    return;
  }
  const long m = static_cast<long>(std::floor(std::abs(gap)));
  const double dir = gap > 0 ? 1.0 : -1.0;
  for (long i = 0; i < m; ++i) {
    const double li = l1 + dir * static_cast<double>(i);
    steps.push_back(gap > 0 ? Step{Step::Kind::ultra_raise, {}, li}
                            : Step{Step::Kind::ultra_lower, {}, li});
  }
  steps.push_back(
      frac_step(dense::Leg::ultra, l1 + dir * static_cast<double>(m), l2));
}

// (a, b) -> (g, b): integer chain first, fractional remainder last.
void append_jac_first_route(std::vector<Step>& steps, double a, double b,
                            double g) {
  const double gap = g - a;
  if (std::abs(gap) <= kGapTol) return;
  if (near_integer(gap)) {
    const long m = std::lround(gap);
    for (long i = 0; i < std::labs(m); ++i) {
      const double ai = a + static_cast<double>(m > 0 ? i : -i);
      steps.push_back(m > 0 ? Step{Step::Kind::jac_raise, {}, ai, b}
                            : Step{Step::Kind::jac_lower, {}, ai, b});
    }
    return;
  }
  const long m = static_cast<long>(std::floor(std::abs(gap)));
  const double dir = gap > 0 ? 1.0 : -1.0;
  for (long i = 0; i < m; ++i) {
    const double ai = a + dir * static_cast<double>(i);
    steps.push_back(gap > 0 ? Step{Step::Kind::jac_raise, {}, ai, b}
                            : Step{Step::Kind::jac_lower, {}, ai, b});
  }
  steps.push_back(frac_step(dense::Leg::jacobi,
                            a + dir * static_cast<double>(m), b, g));
}

void append_jac_route(std::vector<Step>& steps, double a, double b, double g,
                      double d) {
  if (near_equal(b, d)) {
    append_jac_first_route(steps, a, b, g);
    return;
  }
  // Mirror x -> -x swaps the parameter roles and flips odd coefficients,
  // reducing the second-parameter move to two first-parameter routes.
  steps.push_back({Step::Kind::negate_odd});
  append_jac_first_route(steps, b, a, d);
  steps.push_back({Step::Kind::negate_odd});
  append_jac_first_route(steps, a, d, g);
}

void append_lag_route(std::vector<Step>& steps, double a1, double a2) {
  const double gap = a2 - a1;
  if (std::abs(gap) <= kGapTol) return;
  if (near_integer(gap)) {
    const long m = std::lround(gap);
    for (long i = 0; i < std::labs(m); ++i) {
      steps.push_back({m > 0 ? Step::Kind::lag_raise : Step::Kind::lag_lower});
    }
    return;
  }
  // The Toeplitz diagonal formula is pole-free for every noninteger gap
  // above -2, so no integer pre-steps are needed.
  steps.push_back(frac_step(dense::Leg::laguerre, a1, a2));
}

// ----- parameter validation ------------------------------------------------

void require_ultra(double lam, const char* who) {
  if (!(lam > 0.0) || !std::isfinite(lam)) {
    throw InvalidParameter(std::string(who) +
                           ": ultraspherical parameter must be positive");
  }
}

void require_jacobi(double v, const char* who) {
  if (!(v > -1.0) || !std::isfinite(v)) {
    throw InvalidParameter(std::string(who) +
                           ": jacobi parameters must exceed -1");
  }
}

void require_laguerre(double v, const char* who) {
  if (!(v > -1.0) || !std::isfinite(v)) {
    throw InvalidParameter(std::string(who) +
                           ": laguerre parameter must exceed -1");
  }
}

void validate_basis(const Basis& basis, const char* who) {
  switch (basis.family) {
    case Family::chebyshev:
    case Family::legendre:
      return;
    case Family::ultraspherical:
      require_ultra(basis.alpha, who);
      return;
    case Family::jacobi:
      require_jacobi(basis.alpha, who);
      require_jacobi(basis.beta, who);
      return;
    case Family::laguerre:
      require_laguerre(basis.alpha, who);
      return;
  }
  throw InvalidParameter(std::string(who) + ": unknown family");
}

// ----- route execution -----------------------------------------------------

struct RouteStats {
  std::size_t max_rank = 0;
  double plan_seconds = 0.0;
  bool used_fast = false;
};

void scale_by_cheb_diagonal(std::vector<double>& c, bool multiply) {
  // P_k^(-1/2,-1/2)(1) = lambda(k)/sqrt(pi).
  const auto lam = special::lambda_sequence(2 * c.size() - 1);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double phi = lam[2 * k] / kSqrtPi;
    c[k] = multiply ? c[k] * phi : c[k] / phi;
  }
}

void scale_by_ultra_diagonal(std::vector<double>& c, double lam,
                             bool multiply) {
  // C_k^(lam) = r_k P_k^(lam-1/2,lam-1/2) with r_0 = 1 and
  // r_{k+1}/r_k = (2 lam + k)/(lam + 1/2 + k).
  double r = 1.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = multiply ? c[k] * r : c[k] / r;
    r *= (2.0 * lam + static_cast<double>(k)) /
         (lam + 0.5 + static_cast<double>(k));
  }
}

void apply_step(const Step& s, std::vector<double>& c,
                const ConvertOptions& opts, RouteStats& rs) {
  const std::size_t n = c.size();
  switch (s.kind) {
    case Step::Kind::negate_odd:
      for (std::size_t i = 1; i < n; i += 2) c[i] = -c[i];
      return;
    case Step::Kind::ultra_raise:
      ultra_step_factor(s.p1, n).apply(c);
      return;
    case Step::Kind::ultra_lower:
      ultra_step_factor(s.p1 - 1.0, n).solve(c);
      return;
    case Step::Kind::jac_raise:
      jacobi_step_factor(s.p1, s.p2, n).apply(c);
      return;
    case Step::Kind::jac_lower:
      jacobi_step_factor(s.p1 - 1.0, s.p2, n).solve(c);
      return;
    case Step::Kind::lag_raise:
      laguerre_step_factor(n).apply(c);
      return;
    case Step::Kind::lag_lower:
      laguerre_step_factor(n).solve(c);
      return;
    case Step::Kind::scale_jac2cheb:
      scale_by_cheb_diagonal(c, true);
      return;
    case Step::Kind::scale_cheb2jac:
      scale_by_cheb_diagonal(c, false);
      return;
    case Step::Kind::scale_ultra2jac:
      scale_by_ultra_diagonal(c, s.p1, true);
      return;
    case Step::Kind::scale_jac2ultra:
      scale_by_ultra_diagonal(c, s.p1, false);
      return;
    case Step::Kind::fractional: {
      const bool direct = opts.path == PathMode::dense ||
                          (opts.path == PathMode::automatic && n <= 513);
      if (direct) {
        dense::DenseConversionSpec spec{s.leg, n, s.p1, s.p2, s.p3};
        c = dense::direct_apply(spec, c);
      } else {
        PlanPtr plan = plan_for(s, n, opts, &rs.plan_seconds);
        c = plan->apply(c);
        rs.max_rank = std::max(rs.max_rank, plan->rank());
        rs.used_fast = true;
      }
      return;
    }
  }
  throw ContractViolation("apply_step: unknown step kind");
}

std::vector<double> run_route(std::span<const double> c,
                              const std::vector<Step>& steps,
                              const ConvertOptions& opts,
                              ConvertStats* stats) {
  if (c.empty()) {
    throw ContractViolation("conversion input must have at least one entry");
  }
  const auto t0 = std::chrono::steady_clock::now();
  RouteStats rs;
  std::vector<double> cur(c.begin(), c.end());
  for (const Step& s : steps) apply_step(s, cur, opts, rs);
  if (stats) {
    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    stats->rank = rs.max_rank;
    stats->plan_seconds = rs.plan_seconds;
    stats->apply_seconds = std::max(0.0, total - rs.plan_seconds);
    stats->used_fast = rs.used_fast;
  }
  return cur;
}

void append_cross_route(std::vector<Step>& steps, const Basis& from,
                        const Basis& to) {
  const Family ff = from.family;
  const Family tf = to.family;
  if (ff == Family::laguerre || tf == Family::laguerre) {
    if (ff != tf) {
      throw InvalidParameter(
          "convert: laguerre expansions live on a different domain; only "
          "laguerre-to-laguerre conversions are defined");
    }
    append_lag_route(steps, from.alpha, to.alpha);
    return;
  }
  if (ff == tf) {
    switch (ff) {
      case Family::chebyshev:
      case Family::legendre:
        return;
      case Family::ultraspherical:
        append_ultra_route(steps, from.alpha, to.alpha);
        return;
      case Family::jacobi:
        append_jac_route(steps, from.alpha, from.beta, to.alpha, to.beta);
        return;
      default:
        break;
    }
  }
  if (ff == Family::legendre && tf == Family::chebyshev) {
    steps.push_back(frac_step(dense::Leg::leg2cheb));
    return;
  }
  if (ff == Family::chebyshev && tf == Family::legendre) {
    steps.push_back(frac_step(dense::Leg::cheb2leg));
    return;
  }
  if (ff == Family::legendre && tf == Family::ultraspherical) {
    append_ultra_route(steps, 0.5, to.alpha);
    return;
  }
  if (ff == Family::ultraspherical && tf == Family::legendre) {
    append_ultra_route(steps, from.alpha, 0.5);
    return;
  }
  if (ff == Family::legendre && tf == Family::jacobi) {
    append_jac_route(steps, 0.0, 0.0, to.alpha, to.beta);
    return;
  }
  if (ff == Family::jacobi && tf == Family::legendre) {
    append_jac_route(steps, from.alpha, from.beta, 0.0, 0.0);
    return;
  }
  if (ff == Family::chebyshev && tf == Family::jacobi) {
    steps.push_back({Step::Kind::scale_cheb2jac});
    append_jac_route(steps, -0.5, -0.5, to.alpha, to.beta);
    return;
  }
  if (ff == Family::jacobi && tf == Family::chebyshev) {
    append_jac_route(steps, from.alpha, from.beta, -0.5, -0.5);
    steps.push_back({Step::Kind::scale_jac2cheb});
    return;
  }
  if (ff == Family::chebyshev && tf == Family::ultraspherical) {
    steps.push_back({Step::Kind::scale_cheb2jac});
    append_jac_route(steps, -0.5, -0.5, to.alpha - 0.5, to.alpha - 0.5);
    steps.push_back({Step::Kind::scale_jac2ultra, {}, to.alpha});
    return;
  }
  if (ff == Family::ultraspherical && tf == Family::chebyshev) {
    steps.push_back({Step::Kind::scale_ultra2jac, {}, from.alpha});
    append_jac_route(steps, from.alpha - 0.5, from.alpha - 0.5, -0.5, -0.5);
    steps.push_back({Step::Kind::scale_jac2cheb});
    return;
  }
  if (ff == Family::ultraspherical && tf == Family::jacobi) {
    steps.push_back({Step::Kind::scale_ultra2jac, {}, from.alpha});
    append_jac_route(steps, from.alpha - 0.5, from.alpha - 0.5, to.alpha,
                     to.beta);
    return;
  }
  if (ff == Family::jacobi && tf == Family::ultraspherical) {
    append_jac_route(steps, from.alpha, from.beta, to.alpha - 0.5,
                     to.alpha - 0.5);
    steps.push_back({Step::Kind::scale_jac2ultra, {}, to.alpha});
    return;
  }
  throw InvalidParameter("convert: unsupported basis pair");
}

}  // namespace

// ----- public surface ------------------------------------------------------

bool operator==(const Basis& x, const Basis& y) {
  return x.family == y.family && x.alpha == y.alpha && x.beta == y.beta;
}

std::vector<double> leg2cheb(std::span<const double> c,
                             const ConvertOptions& opts, ConvertStats* stats) {
  return run_route(c, {frac_step(dense::Leg::leg2cheb)}, opts, stats);
}

std::vector<double> cheb2leg(std::span<const double> c,
                             const ConvertOptions& opts, ConvertStats* stats) {
  return run_route(c, {frac_step(dense::Leg::cheb2leg)}, opts, stats);
}

std::vector<double> ultra2ultra(std::span<const double> c, double lam1,
                                double lam2, const ConvertOptions& opts,
                                ConvertStats* stats) {
  require_ultra(lam1, "ultra2ultra");
  require_ultra(lam2, "ultra2ultra");
  std::vector<Step> steps;
  append_ultra_route(steps, lam1, lam2);
  return run_route(c, steps, opts, stats);
}

std::vector<double> jac2jac(std::span<const double> c, double alpha,
                            double beta, double gamma, double delta,
                            const ConvertOptions& opts, ConvertStats* stats) {
  require_jacobi(alpha, "jac2jac");
  require_jacobi(beta, "jac2jac");
  require_jacobi(gamma, "jac2jac");
  require_jacobi(delta, "jac2jac");
  std::vector<Step> steps;
  append_jac_route(steps, alpha, beta, gamma, delta);
  return run_route(c, steps, opts, stats);
}

std::vector<double> jac2cheb(std::span<const double> c, double alpha,
                             double beta, const ConvertOptions& opts,
                             ConvertStats* stats) {
  require_jacobi(alpha, "jac2cheb");
  require_jacobi(beta, "jac2cheb");
  std::vector<Step> steps;
  append_jac_route(steps, alpha, beta, -0.5, -0.5);
  steps.push_back({Step::Kind::scale_jac2cheb});
  return run_route(c, steps, opts, stats);
}

std::vector<double> cheb2jac(std::span<const double> c, double alpha,
                             double beta, const ConvertOptions& opts,
                             ConvertStats* stats) {
  require_jacobi(alpha, "cheb2jac");
  require_jacobi(beta, "cheb2jac");
  std::vector<Step> steps;
  steps.push_back({Step::Kind::scale_cheb2jac});
  append_jac_route(steps, -0.5, -0.5, alpha, beta);
  return run_route(c, steps, opts, stats);
}

std::vector<double> lag2lag(std::span<const double> c, double alpha1,
                            double alpha2, const ConvertOptions& opts,
                            ConvertStats* stats) {
  require_laguerre(alpha1, "lag2lag");
  require_laguerre(alpha2, "lag2lag");
  std::vector<Step> steps;
  append_lag_route(steps, alpha1, alpha2);
  return run_route(c, steps, opts, stats);
}

CoefficientVector convert(const CoefficientVector& in, const Basis& to,
                          const ConvertOptions& opts, ConvertStats* stats) {
  validate_basis(in.basis, "convert");
  validate_basis(to, "convert");
  std::vector<Step> steps;
  append_cross_route(steps, in.basis, to);
  return {run_route(in.values, steps, opts, stats), to};
}

void BandedUpperFactor::apply(std::span<double> c) const {
  if (c.size() != n) {
    throw ContractViolation("BandedUpperFactor::apply: size mismatch");
  }
  for (std::size_t j = 0; j < n; ++j) {
    double v = diag[j] * c[j];
    if (j + offset < n) v += super[j] * c[j + offset];
    c[j] = v;
  }
}

void BandedUpperFactor::solve(std::span<double> c) const {
  if (c.size() != n) {
    throw ContractViolation("BandedUpperFactor::solve: size mismatch");
  }
  for (std::size_t j = n; j-- > 0;) {
    double v = c[j];
    if (j + offset < n) v -= super[j] * c[j + offset];
    c[j] = v / diag[j];
  }
}

BandedUpperFactor ultra_step_factor(double lam, std::size_t n) {
  require_ultra(lam, "ultra_step_factor");
  BandedUpperFactor f;
  f.n = n;
  f.offset = 2;
  f.diag.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    f.diag[j] = lam / (lam + static_cast<double>(j));
  }
  f.super.resize(n > 2 ? n - 2 : 0);
  for (std::size_t j = 0; j + 2 < n; ++j) {
    f.super[j] = -lam / (lam + static_cast<double>(j + 2));
  }
  return f;
}

BandedUpperFactor jacobi_step_factor(double alpha, double beta,
                                     std::size_t n) {
  require_jacobi(alpha, "jacobi_step_factor");
  require_jacobi(beta, "jacobi_step_factor");
  BandedUpperFactor f;
  f.n = n;
  f.offset = 1;
  f.diag.resize(n);
  f.diag[0] = 1.0;
  for (std::size_t j = 1; j < n; ++j) {
    const double jd = static_cast<double>(j);
    f.diag[j] = (alpha + beta + jd + 1.0) / (alpha + beta + 2.0 * jd + 1.0);
  }
  f.super.resize(n > 1 ? n - 1 : 0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double jd = static_cast<double>(j);
    f.super[j] = -(beta + jd + 1.0) / (alpha + beta + 2.0 * jd + 3.0);
  }
  return f;
}

BandedUpperFactor laguerre_step_factor(std::size_t n) {
  BandedUpperFactor f;
  f.n = n;
  f.offset = 1;
  f.diag.assign(n, 1.0);
  f.super.assign(n > 1 ? n - 1 : 0, -1.0);
  return f;
}

std::vector<double> hankel_generator(HankelKind kind, double p1, double p2,
                                     double p3, std::size_t n) {
  if (n == 0) throw ContractViolation("hankel_generator: empty block");
  switch (kind) {
    case HankelKind::leg2cheb:
      return gen_leg2cheb(n);
    case HankelKind::cheb2leg_block:
      return gen_cheb2leg_block(n);
    case HankelKind::ultraspherical:
      require_ultra(p1, "hankel_generator");
      require_ultra(p2, "hankel_generator");
      return gen_ultra(p1, p2, n);
    case HankelKind::jacobi:
      require_jacobi(p1, "hankel_generator");
      require_jacobi(p2, "hankel_generator");
      require_jacobi(p3, "hankel_generator");
      return gen_jacobi(p1, p2, p3, n, 0);
    case HankelKind::jacobi_block:
      require_jacobi(p1, "hankel_generator");
      require_jacobi(p2, "hankel_generator");
      require_jacobi(p3, "hankel_generator");
      return gen_jacobi(p1, p2, p3, n, 2);
    case HankelKind::laguerre:
      return std::vector<double>(2 * n - 1, 1.0);
  }
  throw ContractViolation("hankel_generator: unknown kind");
}

lowrank::PsdMatrixOracle hankel_symbol(HankelKind kind, double p1, double p2,
                                       double p3, std::size_t n) {
  return lowrank::hankel_oracle(hankel_generator(kind, p1, p2, p3, n));
}

std::vector<RankProfile> rank_profiles(const Basis& from, const Basis& to,
                                       std::size_t n,
                                       const ConvertOptions& opts) {
  if (n == 0) throw ContractViolation("rank_profiles: empty expansion");
  validate_basis(from, "rank_profiles");
  validate_basis(to, "rank_profiles");
  std::vector<Step> steps;
  append_cross_route(steps, from, to);
  std::vector<RankProfile> out;
  for (const Step& s : steps) {
    if (s.kind != Step::Kind::fractional) continue;
    PlanPtr plan = plan_for(s, n, opts, nullptr);
    const auto& factor = plan->hankel_factor();
    out.push_back(
        {factor.n, factor.rank(), factor.achieved_tol, factor.pivots});
  }
  return out;
}

std::size_t plan_cache_size() {
  std::lock_guard<std::mutex> lk(g_plan_mu);
  return plan_map().size();
}

void plan_cache_clear() {
  std::lock_guard<std::mutex> lk(g_plan_mu);
  plan_map().clear();
}

}  // namespace polyconv
