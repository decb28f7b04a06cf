// Acceptance gate for the conversion library.  Each numbered check prints
// exactly one PASS/FAIL line with the measured quantity next to its bound;
// the exit status is the number of failed checks.
#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "polyconv/conversions.hpp"
#include "polyconv/lowrank.hpp"
#include "polyconv/rng.hpp"
#include "polyconv/toeplitz.hpp"

namespace {

using namespace polyconv;
using Clock = std::chrono::steady_clock;

constexpr double kEps = std::numeric_limits<double>::epsilon();

int g_failures = 0;

void report(int idx, const char* name, bool ok, const std::string& detail) {
  std::printf("%s  %2d  %s: %s\n", ok ? "PASS" : "FAIL", idx, name,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::fabs(a[i] - b[i]));
  }
  return m;
}

using Conversion =
    std::function<std::vector<double>(std::span<const double>, const ConvertOptions&)>;

struct NamedConversion {
  const char* name;
  Conversion run;
};

const std::vector<NamedConversion>& conversions() {
  static const std::vector<NamedConversion> v = {
      {"leg2cheb",
       [](std::span<const double> c, const ConvertOptions& o) {
         return leg2cheb(c, o);
       }},
      {"cheb2leg",
       [](std::span<const double> c, const ConvertOptions& o) {
         return cheb2leg(c, o);
       }},
      {"ultra 0.25->0.75",
       [](std::span<const double> c, const ConvertOptions& o) {
         return ultra2ultra(c, 0.25, 0.75, o);
       }},
      {"jacobi (0,0.7071..)->(-0.25,0.7071..)",
       [](std::span<const double> c, const ConvertOptions& o) {
         const double b = std::sqrt(2.0) / 2.0;
         return jac2jac(c, 0.0, b, -0.25, b, o);
       }},
      {"laguerre 0.7->0.2",
       [](std::span<const double> c, const ConvertOptions& o) {
         return lag2lag(c, 0.7, 0.2, o);
       }},
  };
  return v;
}

ConvertOptions fast_opts() {
  ConvertOptions o;
  o.path = PathMode::fast;
  return o;
}

ConvertOptions dense_opts() {
  ConvertOptions o;
  o.path = PathMode::dense;
  return o;
}

// 1. Fast path vs dense oracle across all five families and a size sweep.
void criterion1() {
  double worst_err = 0.0, worst_time = 0.0;
  std::string worst_case = "-";
  int seed = 100;
  for (const auto& conv : conversions()) {
    for (std::size_t n : {16u, 64u, 256u, 1024u, 4096u}) {
      const std::vector<double> c = rng::decay_vector(n, 1.5, ++seed);
      plan_cache_clear();
      const auto t0 = Clock::now();
      const std::vector<double> fast = conv.run(c, fast_opts());
      const std::vector<double> dense = conv.run(c, dense_opts());
      const double dt = seconds_since(t0);
      const double err = max_abs_diff(fast, dense);
      if (err > worst_err) {
        worst_err = err;
        worst_case = std::string(conv.name) + " N=" + std::to_string(n);
      }
      worst_time = std::max(worst_time, dt);
    }
  }
  report(1, "fast path matches dense oracle, 5 families x 5 sizes",
         worst_err <= 1e-10 && worst_time <= 5.0,
         "worst err " + num(worst_err) + " (bound 1e-10) at " + worst_case +
             ", slowest case " + num(worst_time) + " s (bound 5)");
}

double leg2cheb_error(std::size_t n, double decay, int seeds) {
  double worst = 0.0;
  for (int s = 0; s < seeds; ++s) {
    const std::vector<double> c = rng::decay_vector(n, decay, 500 + s);
    worst = std::max(worst, max_abs_diff(leg2cheb(c, fast_opts()),
                                         leg2cheb(c, dense_opts())));
  }
  return worst;
}

// 2. Error growth: flat for decaying coefficients, sub-linear otherwise.
void criterion2() {
  const double e2 = leg2cheb_error(100, 1.5, 5);
  const double e4 = leg2cheb_error(10000, 1.5, 5);
  const bool flat = e4 <= 3.0 * e2;

  const std::size_t sizes[] = {100, 1000, 10000};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t n : sizes) {
    const double x = std::log(double(n));
    const double y = std::log(leg2cheb_error(n, 0.0, 3));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  report(2, "error growth regimes",
         flat && slope <= 0.9,
         "decay 1.5: err(1e4)=" + num(e4) + " vs 3*err(1e2)=" + num(3 * e2) +
             "; decay 0 fit exponent " + num(slope) + " (bound 0.9)");
}

// 3. Compression rank at N=300 and logarithmic growth to N=10^4.
void criterion3() {
  ConvertOptions opts;
  opts.eps = 100 * kEps;
  auto rank_at = [&](std::size_t n) {
    plan_cache_clear();
    return rank_profiles(Basis::legendre(), Basis::chebyshev(), n, opts)
        .at(0)
        .rank;
  };
  const std::size_t k2 = rank_at(100);
  const std::size_t k300 = rank_at(300);
  const std::size_t k4 = rank_at(10000);
  report(3, "pivoted Cholesky rank profile",
         k300 >= 19 && k300 <= 35 && k4 <= k2 + 20,
         "K(300)=" + std::to_string(k300) + " (accept 27+-8), K(1e4)=" +
             std::to_string(k4) + " <= K(1e2)+20=" + std::to_string(k2 + 20));
}

// 4. The compressed blocks really are PSD: dense eigensolve at N=12.
void criterion4() {
  struct Case {
    const char* name;
    HankelKind kind;
    double p1, p2, p3;
  };
  const Case cases[] = {
      {"leg2cheb", HankelKind::leg2cheb, 0, 0, 0},
      {"cheb2leg block", HankelKind::cheb2leg_block, 0, 0, 0},
      {"ultra 0.25->0.75", HankelKind::ultraspherical, 0.25, 0.75, 0},
      {"jacobi (0,0.3)->(0.4,0.3)", HankelKind::jacobi, 0.0, 0.3, 0.4},
  };
  double worst = std::numeric_limits<double>::infinity();
  std::string worst_name = "-";
  for (const Case& c : cases) {
    const std::size_t n = 12;
    const std::vector<double> sym = hankel_generator(c.kind, c.p1, c.p2, c.p3, n);
    Eigen::MatrixXd h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) h(i, j) = sym[i + j];
    }
    const double lo = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h)
                          .eigenvalues()
                          .minCoeff();
    if (lo < worst) {
      worst = lo;
      worst_name = c.name;
    }
  }
  report(4, "Hankel blocks PSD at N=12", worst >= -1e-12,
         "min eigenvalue " + num(worst) + " (bound -1e-12) at " + worst_name);
}

// 5. Round trips at N=4096.
void criterion5() {
  const std::size_t n = 4096;
  const std::vector<double> c = rng::decay_vector(n, 1.5, 77);
  const double e1 = max_abs_diff(cheb2leg(leg2cheb(c, fast_opts()), fast_opts()), c);
  const double e2 = max_abs_diff(
      cheb2jac(jac2cheb(c, 0.1, 0.3, fast_opts()), 0.1, 0.3, fast_opts()), c);
  report(5, "round trips at N=4096", e1 <= 1e-10 && e2 <= 1e-10,
         "cheb2leg o leg2cheb " + num(e1) + ", cheb2jac o jac2cheb " + num(e2) +
             " (bound 1e-10)");
}

// 6. Structural invariants: triangularity, parity, linearity.
void criterion6() {
  const std::size_t n = 256;
  double tri = 0.0;
  for (const auto& conv : conversions()) {
    for (std::size_t k : {0u, 3u, 17u, 100u, 255u}) {
      std::vector<double> e(n, 0.0);
      e[k] = 1.0;
      for (const ConvertOptions& o : {dense_opts(), fast_opts()}) {
        const std::vector<double> out = conv.run(e, o);
        for (std::size_t i = k + 1; i < n; ++i) {
          tri = std::max(tri, std::fabs(out[i]));
        }
      }
    }
  }

  // Symmetric-weight families map even polynomials to even polynomials.
  const std::vector<NamedConversion> symmetric = {
      conversions()[0],
      conversions()[1],
      conversions()[2],
      {"jacobi (0,0)->(0.5,0.5)",
       [](std::span<const double> c, const ConvertOptions& o) {
         return jac2jac(c, 0.0, 0.0, 0.5, 0.5, o);
       }},
  };
  double par = 0.0;
  for (const auto& conv : symmetric) {
    for (std::size_t k : {4u, 31u, 100u, 255u}) {
      std::vector<double> e(n, 0.0);
      e[k] = 1.0;
      for (const ConvertOptions& o : {dense_opts(), fast_opts()}) {
        const std::vector<double> out = conv.run(e, o);
        for (std::size_t i = 1 - (k % 2); i < n; i += 2) {
          par = std::max(par, std::fabs(out[i]));
        }
      }
    }
  }

  // Linearity, measured against the output magnitude (norm-relative).
  double lin = 0.0;
  for (const auto& conv : conversions()) {
    for (std::size_t m : {17u, 64u, 130u, 256u}) {
      for (int s = 0; s < 3; ++s) {
        const std::vector<double> x = rng::decay_vector(m, 1.5, 900 + s);
        const std::vector<double> y = rng::decay_vector(m, 1.5, 950 + s);
        const double a = 0.7, b = -1.3;
        std::vector<double> mix(m);
        for (std::size_t i = 0; i < m; ++i) mix[i] = a * x[i] + b * y[i];
        for (const ConvertOptions& o : {dense_opts(), fast_opts()}) {
          const std::vector<double> fx = conv.run(x, o);
          const std::vector<double> fy = conv.run(y, o);
          const std::vector<double> fm = conv.run(mix, o);
          double numv = 0.0, den = 0.0;
          for (std::size_t i = 0; i < m; ++i) {
            numv = std::max(numv, std::fabs(fm[i] - (a * fx[i] + b * fy[i])));
            den = std::max(den, std::fabs(a * fx[i]) + std::fabs(b * fy[i]));
          }
          lin = std::max(lin, numv / den);
        }
      }
    }
  }

  report(6, "structural invariants at N<=256",
         tri <= 1e-13 && par <= 1e-12 && lin <= 10 * kEps,
         "triangular leakage " + num(tri) + " (1e-13), parity leakage " +
             num(par) + " (1e-12), linearity defect " + num(lin / kEps) +
             " eps (10 eps)");
}

// 7. Toeplitz FFT matvec against the dense triple loop.
void criterion7() {
  rng::Xoshiro256 gen(4242);
  auto unit = [&] { return 2.0 * gen.uniform01() - 1.0; };
  double worst_ratio = 0.0;
  for (std::size_t n : {1u, 2u, 3u, 5u, 64u, 257u, 1000u}) {
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<double> col(n), row(n), v(n);
      for (auto& t : col) t = unit();
      for (auto& t : row) t = unit();
      row[0] = col[0];
      for (auto& t : v) t = unit();

      double tmax = 0.0, vmax = 0.0;
      for (double t : col) tmax = std::max(tmax, std::fabs(t));
      for (double t : row) tmax = std::max(tmax, std::fabs(t));
      for (double t : v) vmax = std::max(vmax, std::fabs(t));

      std::vector<double> ref(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          ref[i] += (i >= j ? col[i - j] : row[j - i]) * v[j];
        }
      }
      const toeplitz::ToeplitzOperator op(col, row);
      const double err = max_abs_diff(op.apply(v), ref);
      const double bound = 50.0 * double(n) * kEps * tmax * vmax;
      worst_ratio = std::max(worst_ratio, err / bound);
    }
  }
  report(7, "Toeplitz FFT matvec error bound", worst_ratio <= 1.0,
         "worst err/bound " + num(worst_ratio) + " over 7 sizes x 100 cases");
}

// 8. Integer-step conversions match their banded factors.
void criterion8() {
  const std::size_t n = 128;
  double factor_err = 0.0;
  {
    const BandedUpperFactor s = ultra_step_factor(1.0, n);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> e(n, 0.0);
      e[k] = 1.0;
      std::vector<double> viaf(e);
      s.apply(viaf);
      factor_err =
          std::max(factor_err, max_abs_diff(ultra2ultra(e, 1.0, 2.0), viaf));
    }
  }
  {
    const BandedUpperFactor s = jacobi_step_factor(0.0, 0.0, n);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> e(n, 0.0);
      e[k] = 1.0;
      std::vector<double> viaf(e);
      s.apply(viaf);
      factor_err = std::max(factor_err,
                            max_abs_diff(jac2jac(e, 0.0, 0.0, 1.0, 0.0), viaf));
    }
  }

  const std::vector<double> c = rng::decay_vector(n, 1.5, 303);
  const double inv1 = max_abs_diff(ultra2ultra(ultra2ultra(c, 1.0, 2.0), 2.0, 1.0), c);
  const double inv2 = max_abs_diff(
      jac2jac(jac2jac(c, 0.0, 0.0, 1.0, 0.0), 1.0, 0.0, 0.0, 0.0), c);
  report(8, "banded factor agreement at N=128",
         factor_err <= 1e-13 && inv1 <= 1e-11 && inv2 <= 1e-11,
         "factor mismatch " + num(factor_err) + " (1e-13), inversions " +
             num(inv1) + ", " + num(inv2) + " (1e-11)");
}

// 9. Quasi-linear runtime, plan construction included.
void criterion9() {
  auto cold_time = [](std::size_t n) {
    const std::vector<double> c = rng::decay_vector(n, 1.5, 11);
    double best = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 5; ++rep) {
      plan_cache_clear();
      const auto t0 = Clock::now();
      leg2cheb(c, fast_opts());
      best = std::min(best, seconds_since(t0));
    }
    return best;
  };
  const double t1e5 = cold_time(100000);

  const double t14 = cold_time(1 << 14);
  const double t15 = cold_time(1 << 15);
  const double t16 = cold_time(1 << 16);
  const double t17 = cold_time(1 << 17);
  const double r1 = t15 / t14, r2 = t16 / t15, r3 = t17 / t16;
  report(9, "performance scaling",
         t1e5 <= 1.0 && r1 <= 3.0 && r2 <= 3.0 && r3 <= 3.0,
         "leg2cheb N=1e5 in " + num(t1e5) + " s (bound 1), doubling ratios " +
             num(r1) + ", " + num(r2) + ", " + num(r3) + " (bound 3)");
}

// 10. Pivoted Cholesky residual vs the eigendecomposition optimum.
void criterion10() {
  const std::size_t n = 200;
  const std::vector<double> sym =
      hankel_generator(HankelKind::leg2cheb, 0, 0, 0, n);
  Eigen::MatrixXd h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) h(i, j) = sym[i + j];
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);

  const lowrank::PsdMatrixOracle oracle = hankel_symbol(
      HankelKind::leg2cheb, 0, 0, 0, n);

  bool ok = true;
  std::string detail;
  for (std::size_t cap : {5u, 10u, 15u}) {
    lowrank::LowRankFactor f;
    try {
      f = lowrank::pivoted_cholesky(oracle, 1e-300, cap);
    } catch (const lowrank::RankCapExceeded& e) {
      f = e.partial;
    }

    Eigen::MatrixXd hk = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t r = 0; r < f.rank(); ++r) {
      const auto col = f.column(r);
      Eigen::Map<const Eigen::VectorXd> l(col.data(), n);
      hk += f.weights[r] * (l * l.transpose());
    }
    const double chol_resid = (h - hk).cwiseAbs().maxCoeff();

    // Best rank-cap approximation keeps the top eigenpairs.
    Eigen::MatrixXd best = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t r = 0; r < cap; ++r) {
      const std::size_t idx = n - 1 - r;
      best += eig.eigenvalues()(idx) * eig.eigenvectors().col(idx) *
              eig.eigenvectors().col(idx).transpose();
    }
    const double eig_resid = (h - best).cwiseAbs().maxCoeff();

    if (chol_resid > 100.0 * eig_resid) ok = false;
    if (!detail.empty()) detail += "; ";
    detail += "K=" + std::to_string(cap) + ": " + num(chol_resid) + " vs 100x" +
              num(eig_resid);
  }
  report(10, "Cholesky residual near-best at n=200", ok, detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (g_failures == 0) {
    std::printf("All acceptance checks passed.\n");
  } else {
    std::printf("%d acceptance check(s) FAILED.\n", g_failures);
  }
  return g_failures;
}
