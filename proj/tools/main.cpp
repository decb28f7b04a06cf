// polyconv command line tool.
//
// Subcommands:
//   convert       read a coefficient file, change basis, write the result
//   bench         time the direct and structured paths over a size sweep
//   rank-profile  report Hankel compression ranks along a conversion route
//
// Exit codes: 0 success, 1 unreadable input, 2 invalid parameters,
// 3 compression rank cap exceeded.

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "polyconv/coeff_file.hpp"
#include "polyconv/conversions.hpp"
#include "polyconv/errors.hpp"
#include "polyconv/lowrank.hpp"
#include "polyconv/rng.hpp"

namespace {

using namespace polyconv;

constexpr double kEpsMach = std::numeric_limits<double>::epsilon();

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Writes to the named file, or to stdout when the name is empty or "-".
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw io::ParseError("cannot open output file: " + path);
      use_file_ = true;
    }
  }
  std::ostream& stream() { return use_file_ ? file_ : std::cout; }

 private:
  std::ofstream file_;
  bool use_file_ = false;
};

struct ConvertArgs {
  std::string input;
  std::string from_spec;
  std::string to_spec;
  std::string output;
  double eps = kEpsMach;
  bool binary_out = false;
};

int run_convert(const ConvertArgs& a) {
  std::ifstream in(a.input, std::ios::binary);
  if (!in) throw io::ParseError("cannot open input file: " + a.input);

  CoefficientVector cv;
  if (io::looks_binary(in)) {
    if (a.from_spec.empty()) {
      throw io::ParseError("binary input carries no basis; pass --from");
    }
    cv.values = io::read_binary(in);
    cv.basis = io::parse_basis_spec(a.from_spec);
  } else {
    cv = io::read_text(in);
    if (!a.from_spec.empty()) cv.basis = io::parse_basis_spec(a.from_spec);
  }

  const Basis to = io::parse_basis_spec(a.to_spec);
  ConvertOptions opts;
  opts.eps = a.eps;
  ConvertStats stats;
  const CoefficientVector out = convert(cv, to, opts, &stats);

  OutputTarget target(a.output);
  if (a.binary_out) {
    io::write_binary(target.stream(), out.values);
  } else {
    io::write_text(target.stream(), out);
  }
  if (!target.stream()) throw io::ParseError("write failed");

  std::cerr << "N=" << out.values.size();
  if (stats.used_fast) std::cerr << " K=" << stats.rank;
  std::cerr << " wall-seconds="
            << fmt(stats.plan_seconds + stats.apply_seconds) << "\n";
  return 0;
}

struct SweepArgs {
  std::string from_spec;
  std::string to_spec;
  std::string output;
  std::vector<std::size_t> sizes;
  double eps = kEpsMach;
  double decay = 1.5;
  std::uint64_t seed = 1234;
};

int run_bench(const SweepArgs& a) {
  if (a.sizes.empty()) throw InvalidParameter("bench: need at least one size");
  for (std::size_t n : a.sizes) {
    if (n < 1) throw InvalidParameter("bench: sizes must be >= 1");
  }
  const Basis from = io::parse_basis_spec(a.from_spec);
  const Basis to = io::parse_basis_spec(a.to_spec);

  OutputTarget target(a.output);
  std::ostream& out = target.stream();
  out << "N,method,wall-time-seconds,plan-seconds,max-abs-error-vs-oracle\n";

  for (std::size_t n : a.sizes) {
    CoefficientVector cv{rng::decay_vector(n, a.decay, a.seed), from};

    ConvertOptions direct;
    direct.eps = a.eps;
    direct.path = PathMode::dense;
    auto t0 = std::chrono::steady_clock::now();
    const CoefficientVector ref = convert(cv, to, direct);
    const double direct_seconds = seconds_since(t0);
    out << n << ",direct," << fmt(direct_seconds) << ",0,0\n";

    // Fresh cache so the plan column reflects a cold build at this size.
    plan_cache_clear();
    ConvertOptions fast;
    fast.eps = a.eps;
    fast.path = PathMode::fast;
    ConvertStats stats;
    t0 = std::chrono::steady_clock::now();
    const CoefficientVector got = convert(cv, to, fast, &stats);
    const double fast_seconds = seconds_since(t0);

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      err = std::max(err, std::abs(got.values[i] - ref.values[i]));
    }
    out << n << ",fast," << fmt(fast_seconds) << ","
        << fmt(stats.plan_seconds) << "," << fmt(err) << "\n";
  }
  if (!out) throw io::ParseError("write failed");
  return 0;
}

int run_rank_profile(const SweepArgs& a) {
  if (a.sizes.empty()) {
    throw InvalidParameter("rank-profile: need at least one size");
  }
  for (std::size_t n : a.sizes) {
    if (n < 2) throw InvalidParameter("rank-profile: sizes must be >= 2");
  }
  const Basis from = io::parse_basis_spec(a.from_spec);
  const Basis to = io::parse_basis_spec(a.to_spec);

  OutputTarget target(a.output);
  std::ostream& out = target.stream();
  out << "N,K,residual-tolerance-achieved,pivot-index-list\n";

  ConvertOptions opts;
  opts.eps = a.eps;
  for (std::size_t n : a.sizes) {
    plan_cache_clear();
    // One row per compressed Hankel block along the route.
    for (const RankProfile& p : rank_profiles(from, to, n, opts)) {
      out << n << "," << p.rank << "," << fmt(p.achieved_tol) << ",";
      for (std::size_t i = 0; i < p.pivots.size(); ++i) {
        if (i) out << ";";
        out << p.pivots[i];
      }
      out << "\n";
    }
  }
  if (!out) throw io::ParseError("write failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convert polynomial coefficients between orthogonal bases"};
  app.require_subcommand(1);

  const std::string basis_help =
      "Basis spec: chebyshev | legendre | ultraspherical:<lam> | "
      "jacobi:<a>,<b> | laguerre:<a>";

  ConvertArgs conv;
  CLI::App* c = app.add_subcommand("convert", "Convert a coefficient file");
  c->add_option("input", conv.input, "Input coefficient file")->required();
  c->add_option("--from", conv.from_spec,
                basis_help + "; overrides the file header, required for "
                             "binary input");
  c->add_option("--to", conv.to_spec, "Target basis")->required();
  c->add_option("--eps", conv.eps, "Hankel compression tolerance");
  c->add_option("--output", conv.output, "Output file (default stdout)");
  c->add_flag("--binary", conv.binary_out, "Write the binary format");

  SweepArgs bench;
  CLI::App* b = app.add_subcommand("bench", "Time direct vs fast conversion");
  b->add_option("--from", bench.from_spec, basis_help)->required();
  b->add_option("--to", bench.to_spec, "Target basis")->required();
  b->add_option("--sizes", bench.sizes, "Coefficient counts to sweep")
      ->delimiter(',')
      ->default_val(std::vector<std::size_t>{256, 1024, 4096});
  b->add_option("--decay", bench.decay,
                "Coefficient envelope exponent: |c_i| ~ (i+1)^-decay");
  b->add_option("--seed", bench.seed, "Random generator seed");
  b->add_option("--eps", bench.eps, "Hankel compression tolerance");
  b->add_option("--output", bench.output, "CSV output file (default stdout)");

  SweepArgs prof;
  CLI::App* r =
      app.add_subcommand("rank-profile", "Report Hankel compression ranks");
  r->add_option("--from", prof.from_spec, basis_help)->required();
  r->add_option("--to", prof.to_spec, "Target basis")->required();
  r->add_option("--sizes", prof.sizes, "Coefficient counts to sweep")
      ->delimiter(',')
      ->default_val(std::vector<std::size_t>{100, 300, 1000});
  r->add_option("--eps", prof.eps, "Hankel compression tolerance");
  r->add_option("--output", prof.output, "CSV output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (c->parsed()) return run_convert(conv);
    if (b->parsed()) return run_bench(bench);
    return run_rank_profile(prof);
  } catch (const lowrank::RankCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
