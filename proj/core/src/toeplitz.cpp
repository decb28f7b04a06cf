#include "polyconv/toeplitz.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <unordered_map>

namespace polyconv::toeplitz {

namespace {

struct PlanPair {
  fftw_plan forward;
  fftw_plan backward;
};

// FFTW plan creation is not thread-safe; execution on distinct arrays is.
// One ESTIMATE plan pair per transform size, kept for the process lifetime.
// FFTW_UNALIGNED lets the plans run on plain std::vector storage.
PlanPair plans_for(std::size_t m) {
  static std::mutex mu;
  static std::unordered_map<std::size_t, PlanPair> cache;

  std::scoped_lock lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;

  std::vector<std::complex<double>> a(m), b(m);
  auto* pa = reinterpret_cast<fftw_complex*>(a.data());
  auto* pb = reinterpret_cast<fftw_complex*>(b.data());
  PlanPair p;
  p.forward = fftw_plan_dft_1d(static_cast<int>(m), pa, pb, FFTW_FORWARD,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.backward = fftw_plan_dft_1d(static_cast<int>(m), pa, pb, FFTW_BACKWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(m, p);
  return p;
}

void run(fftw_plan plan, std::complex<double>* in, std::complex<double>* out) {
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

ToeplitzOperator::ToeplitzOperator(std::vector<double> first_column,
                                   std::vector<double> first_row) {
  if (first_column.empty() || first_column.size() != first_row.size()) {
    throw ContractViolation(
        "toeplitz_build: column/row must be nonempty and the same length");
  }
  if (first_column[0] != first_row[0]) {
    throw ContractViolation("toeplitz_build: corner entries disagree");
  }
  n_ = first_column.size();
  m_ = std::bit_ceil(2 * n_ - 1);
  for (double v : first_column) gen_max_ = std::max(gen_max_, std::fabs(v));
  for (double v : first_row) gen_max_ = std::max(gen_max_, std::fabs(v));

  // Circulant first column: generator diagonals g(0..n-1) up front, the
  // negative diagonals g(-1..-(n-1)) wrapped at the back, zeros between.
  std::vector<std::complex<double>> emb(m_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) emb[i] = first_column[i];
  for (std::size_t j = 1; j < n_; ++j) emb[m_ - j] = first_row[j];

  symbol_.resize(m_);
  run(plans_for(m_).forward, emb.data(), symbol_.data());
}

void ToeplitzOperator::apply(std::span<const double> x,
                             std::span<double> y) const {
  if (x.size() != n_ || y.size() != n_) {
    throw ContractViolation("toeplitz_apply: length mismatch");
  }
  std::vector<std::complex<double>> buf(m_, 0.0);
  std::vector<std::complex<double>> freq(m_);
  double xmax = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    buf[i] = x[i];
    xmax = std::max(xmax, std::fabs(x[i]));
  }

  const auto plans = plans_for(m_);
  run(plans.forward, buf.data(), freq.data());
  const double scale = 1.0 / static_cast<double>(m_);
  for (std::size_t k = 0; k < m_; ++k) freq[k] *= symbol_[k] * scale;
  run(plans.backward, freq.data(), buf.data());

  double max_re = 0.0;
  double max_im = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    max_re = std::max(max_re, std::fabs(buf[i].real()));
    max_im = std::max(max_im, std::fabs(buf[i].imag()));
  }
  // Real input, real generator: the imaginary part is pure rounding noise.
  // The gen_max * xmax floor keeps near-cancelling results from tripping it.
  if (max_im > 1e-10 * std::max(max_re, gen_max_ * xmax)) {
    throw Error("toeplitz_apply: imaginary residue above sanity bound");
  }
  for (std::size_t i = 0; i < n_; ++i) y[i] = buf[i].real();
}

std::vector<double> ToeplitzOperator::apply(std::span<const double> x) const {
  std::vector<double> y(n_);
  apply(x, y);
  return y;
}

}  // namespace polyconv::toeplitz
