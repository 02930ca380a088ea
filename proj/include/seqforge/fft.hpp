#ifndef SEQFORGE_FFT_HPP_
#define SEQFORGE_FFT_HPP_

// Self-contained complex DFT used by every transform in the library.
// Power-of-two lengths run an iterative radix-2 kernel; every other
// length goes through Bluestein's chirp-z convolution, so any positive
// size is supported. The forward direction is unnormalized
// (X_k = sum_n x_n e^{-2*pi*i*k*n/N}); the inverse carries the 1/N factor.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "seqforge/errors.hpp"

namespace seqforge {

using cdouble = std::complex<double>;
using cvector = std::vector<cdouble>;

namespace fft {

namespace detail {

inline std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place radix-2 transform. `roots` holds e^{-2*pi*i*k/n} for k < n/2;
// the inverse direction conjugates on the fly and does NOT normalize.
inline void radix2(cvector& a, const std::vector<std::uint32_t>& rev,
                   const cvector& roots, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i < rev[i]) std::swap(a[i], a[rev[i]]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t step = n / len;
    for (std::size_t base = 0; base < n; base += len) {
      for (std::size_t j = 0; j < half; ++j) {
        cdouble w = roots[j * step];
        if (inverse) w = std::conj(w);
        const cdouble t = a[base + j + half] * w;
        a[base + j + half] = a[base + j] - t;
        a[base + j] += t;
      }
    }
  }
}

}  // namespace detail

/// Precomputed transform of one fixed size. Immutable after construction.
class Plan {
 public:
  explicit Plan(std::size_t n) : n_(n) {
    if (n == 0) throw InvalidLengthError("fft: size must be positive");
    if (detail::is_pow2(n)) {
      kernel_size_ = n;
      build_kernel_tables();
    } else {
      kernel_size_ = detail::next_pow2(2 * n - 1);
      build_kernel_tables();
      build_chirp();
    }
  }

  std::size_t size() const { return n_; }

  /// Unnormalized forward DFT.
  cvector forward(cvector x) const {
    check_size(x.size());
    if (kernel_size_ == n_) {
      detail::radix2(x, rev_, roots_, false);
      return x;
    }
    return bluestein(std::move(x));
  }

  /// Inverse DFT including the 1/N factor; exact inverse of forward().
  cvector inverse(cvector x) const {
    check_size(x.size());
    for (auto& v : x) v = std::conj(v);
    x = forward(std::move(x));
    const double scale = 1.0 / static_cast<double>(n_);
    for (auto& v : x) v = std::conj(v) * scale;
    return x;
  }

 private:
  void check_size(std::size_t got) const {
    if (got != n_)
      throw DimensionError("fft: vector length does not match plan size");
  }

  void build_kernel_tables() {
    const std::size_t m = kernel_size_;
    rev_.assign(m, 0);
    std::uint32_t bits = 0;
    while ((std::size_t{1} << bits) < m) ++bits;
    for (std::size_t i = 0; i < m; ++i) {
      std::uint32_t r = 0;
      for (std::uint32_t b = 0; b < bits; ++b) {
        if (i & (std::size_t{1} << b)) r |= std::uint32_t{1} << (bits - 1 - b);
      }
      rev_[i] = r;
    }
    roots_.resize(m / 2);
    const double base = -2.0 * kPi / static_cast<double>(m);
    for (std::size_t k = 0; k < m / 2; ++k) {
      const double ang = base * static_cast<double>(k);
      roots_[k] = cdouble(std::cos(ang), std::sin(ang));
    }
  }

  void build_chirp() {
    // chirp_[k] = e^{-i*pi*k^2/n}; k^2 is reduced mod 2n exactly in
    // integers so the angle stays small for large sizes.
    chirp_.resize(n_);
    const std::uint64_t period = 2 * static_cast<std::uint64_t>(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      const std::uint64_t k2 =
          (static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k)) %
          period;
      const double ang = -kPi * static_cast<double>(k2) / static_cast<double>(n_);
      chirp_[k] = cdouble(std::cos(ang), std::sin(ang));
    }
    cvector b(kernel_size_, cdouble(0.0, 0.0));
    b[0] = cdouble(1.0, 0.0);
    for (std::size_t k = 1; k < n_; ++k) {
      const cdouble v = std::conj(chirp_[k]);
      b[k] = v;
      b[kernel_size_ - k] = v;
    }
    detail::radix2(b, rev_, roots_, false);
    chirp_spectrum_ = std::move(b);
  }

  cvector bluestein(cvector x) const {
    cvector y(kernel_size_, cdouble(0.0, 0.0));
    for (std::size_t k = 0; k < n_; ++k) y[k] = x[k] * chirp_[k];
    detail::radix2(y, rev_, roots_, false);
    for (std::size_t k = 0; k < kernel_size_; ++k) y[k] *= chirp_spectrum_[k];
    detail::radix2(y, rev_, roots_, true);
    const double scale = 1.0 / static_cast<double>(kernel_size_);
    for (std::size_t k = 0; k < n_; ++k) x[k] = y[k] * scale * chirp_[k];
    return x;
  }

  static constexpr double kPi = 3.141592653589793238462643383279502884;

  std::size_t n_;
  std::size_t kernel_size_;
  std::vector<std::uint32_t> rev_;
  cvector roots_;
  cvector chirp_;
  cvector chirp_spectrum_;
};

}  // namespace fft

/// Running tally of logical transform invocations.
struct TransformCounts {
  std::uint64_t forward = 0;
  std::uint64_t inverse = 0;
};

/// Plan cache plus instrumentation. Engines are cheap to create and are
/// not thread-safe; use one per thread (thread_default()) or per solve.
class TransformEngine {
 public:
  cvector forward(cvector x) {
    ++counts_.forward;
    return plan_for(x.size()).forward(std::move(x));
  }

  cvector inverse(cvector x) {
    ++counts_.inverse;
    return plan_for(x.size()).inverse(std::move(x));
  }

  const TransformCounts& counts() const { return counts_; }
  void reset_counts() { counts_ = TransformCounts{}; }

  static TransformEngine& thread_default() {
    thread_local TransformEngine engine;
    return engine;
  }

 private:
  const fft::Plan& plan_for(std::size_t n) {
    auto it = plans_.find(n);
    if (it == plans_.end()) {
      it = plans_.emplace(n, std::make_unique<fft::Plan>(n)).first;
    }
    return *it->second;
  }

  std::unordered_map<std::size_t, std::unique_ptr<fft::Plan>> plans_;
  TransformCounts counts_;
};

}  // namespace seqforge

#endif  // SEQFORGE_FFT_HPP_
