#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "polyconv/errors.hpp"
#include "polyconv/lowrank.hpp"

namespace polyconv {

enum class Family { chebyshev, legendre, ultraspherical, jacobi, laguerre };

/// Basis tag plus its parameters.  alpha holds the ultraspherical lambda,
/// the Jacobi alpha, or the Laguerre alpha; beta is Jacobi-only.
struct Basis {
  Family family = Family::chebyshev;
  double alpha = 0.0;
  double beta = 0.0;

  static Basis chebyshev() { return {Family::chebyshev, 0.0, 0.0}; }
  static Basis legendre() { return {Family::legendre, 0.0, 0.0}; }
  static Basis ultraspherical(double lam) {
    return {Family::ultraspherical, lam, 0.0};
  }
  static Basis jacobi(double a, double b) { return {Family::jacobi, a, b}; }
  static Basis laguerre(double a) { return {Family::laguerre, a, 0.0}; }
};

bool operator==(const Basis& x, const Basis& y);

struct CoefficientVector {
  std::vector<double> values;  // degree N polynomial has N+1 entries
  Basis basis;
};

/// automatic: direct row evaluation up to degree 512, structured plans above.
enum class PathMode { automatic, dense, fast };

struct ConvertOptions {
  double eps = lowrank::default_eps();
  PathMode path = PathMode::automatic;
  std::size_t max_rank = 0;  // 0: size-based default cap
};

struct ConvertStats {
  std::size_t rank = 0;       // largest Hankel factor rank used, 0 if none
  double plan_seconds = 0.0;  // plan construction paid inside this call
  double apply_seconds = 0.0;
  bool used_fast = false;
};

std::vector<double> leg2cheb(std::span<const double> c,
                             const ConvertOptions& opts = {},
                             ConvertStats* stats = nullptr);
std::vector<double> cheb2leg(std::span<const double> c,
                             const ConvertOptions& opts = {},
                             ConvertStats* stats = nullptr);
std::vector<double> ultra2ultra(std::span<const double> c, double lam1,
                                double lam2, const ConvertOptions& opts = {},
                                ConvertStats* stats = nullptr);
std::vector<double> jac2jac(std::span<const double> c, double alpha,
                            double beta, double gamma, double delta,
                            const ConvertOptions& opts = {},
                            ConvertStats* stats = nullptr);
std::vector<double> jac2cheb(std::span<const double> c, double alpha,
                             double beta, const ConvertOptions& opts = {},
                             ConvertStats* stats = nullptr);
std::vector<double> cheb2jac(std::span<const double> c, double alpha,
                             double beta, const ConvertOptions& opts = {},
                             ConvertStats* stats = nullptr);
std::vector<double> lag2lag(std::span<const double> c, double alpha1,
                            double alpha2, const ConvertOptions& opts = {},
                            ConvertStats* stats = nullptr);

/// Router over the entry points above.  Chebyshev, Legendre, ultraspherical
/// and Jacobi interconvert freely (Legendre rides as Jacobi(0,0) or
/// ultraspherical 1/2, ultraspherical bridges through Jacobi with a diagonal
/// rescale); Laguerre converts only within its own family.
CoefficientVector convert(const CoefficientVector& in, const Basis& to,
                          const ConvertOptions& opts = {},
                          ConvertStats* stats = nullptr);

/// One integer-parameter step, upper banded: diagonal plus one
/// superdiagonal at +offset.  apply computes the raising direction; solve
/// runs backward substitution for the lowering direction.
struct BandedUpperFactor {
  std::size_t n = 0;
  std::size_t offset = 1;
  std::vector<double> diag;   // n entries, all nonzero
  std::vector<double> super;  // n - offset entries, entry j sits at (j, j+offset)

  void apply(std::span<double> c) const;
  void solve(std::span<double> c) const;
};

/// Maps ultraspherical(lam) coefficients to ultraspherical(lam+1).
BandedUpperFactor ultra_step_factor(double lam, std::size_t n);
/// Maps Jacobi(alpha, beta) coefficients to Jacobi(alpha+1, beta).
BandedUpperFactor jacobi_step_factor(double alpha, double beta, std::size_t n);
/// Maps Laguerre(alpha) coefficients to Laguerre(alpha+1), any alpha.
BandedUpperFactor laguerre_step_factor(std::size_t n);

/// Hankel symbol families behind the structured plans.  Block kinds describe
/// the trailing submatrix used when the first row is applied directly.
enum class HankelKind {
  leg2cheb,        // no parameters
  cheb2leg_block,  // no parameters; indices shifted by one
  ultraspherical,  // p1 = lam1, p2 = lam2
  jacobi,          // p1 = alpha, p2 = beta, p3 = gamma
  jacobi_block,    // same parameters; indices shifted by one
  laguerre,        // all ones
};

/// Anti-diagonal generator h_0..h_{2n-2} for an n x n Hankel block.
std::vector<double> hankel_generator(HankelKind kind, double p1, double p2,
                                     double p3, std::size_t n);

/// The same symbol wrapped for the pivoted factorization.
lowrank::PsdMatrixOracle hankel_symbol(HankelKind kind, double p1, double p2,
                                       double p3, std::size_t n);

/// Compression summary of one structured leg in a conversion route.
struct RankProfile {
  std::size_t block = 0;  // Hankel block dimension
  std::size_t rank = 0;
  double achieved_tol = 0.0;
  std::vector<std::size_t> pivots;
};

/// Builds (or fetches) the plans a from->to conversion of n coefficients
/// would use and reports one profile per structured leg, route order.
/// Empty when the route is banded or identity only.
std::vector<RankProfile> rank_profiles(const Basis& from, const Basis& to,
                                       std::size_t n,
                                       const ConvertOptions& opts = {});

std::size_t plan_cache_size();
void plan_cache_clear();

}  // namespace polyconv
