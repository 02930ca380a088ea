#ifndef SEQFORGE_METRICS_HPP_
#define SEQFORGE_METRICS_HPP_

// Aperiodic autocorrelation (direct oracle and fast spectral path) and the
// sidelobe metrics computed from it.

#include <algorithm>
#include <cmath>
#include <ostream>
#include <utility>
#include <vector>

#include "seqforge/core.hpp"
#include "seqforge/errors.hpp"

namespace seqforge {

/// One-sided aperiodic autocorrelation r(0..P-1). Negative lags are
/// implied by conjugate symmetry, r(-l) = conj(r(l)), and never stored.
struct CorrelationProfile {
  cvector values;

  std::size_t length() const { return values.size(); }
};

/// Literal double-loop evaluation of r(l) = sum_{n=1}^{P-l} z_{n+l} z_n^*.
/// O(P^2); serves as the oracle for the spectral path.
inline CorrelationProfile autocorrelation_direct(const Sequence& z) {
  const std::size_t P = z.length();
  CorrelationProfile r;
  r.values.resize(P);
  for (std::size_t l = 0; l < P; ++l) {
    cdouble acc(0.0, 0.0);
    for (std::size_t n = 0; n + l < P; ++n) acc += z[n + l] * std::conj(z[n]);
    r.values[l] = acc;
  }
  return r;
}

/// Spectral evaluation: the inverse 2P-transform of the elementwise
/// squared magnitude of the forward 2P-transform, truncated to lags
/// 0..P-1. The 1/(2P) normalization carried by the inverse transform
/// makes r(0) equal P for unimodular inputs.
inline CorrelationProfile autocorrelation_fft(
    const Sequence& z, TransformEngine& engine = TransformEngine::thread_default()) {
  Spectrum s = forward_transform_2p(z, engine);
  for (auto& b : s.bins) b = cdouble(std::norm(b), 0.0);
  cvector c = inverse_transform_2p(s, engine);
  CorrelationProfile r;
  r.values.assign(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(z.length()));
  return r;
}

/// Integrated sidelobe level: sum of |r(l)|^2 over lags 1..P-1.
inline double isl(const CorrelationProfile& r) {
  double acc = 0.0;
  for (std::size_t l = 1; l < r.length(); ++l) acc += std::norm(r.values[l]);
  return acc;
}

/// Peak sidelobe level: max |r(l)| over lags 1..P-1. Undefined for P = 1.
inline double psl(const CorrelationProfile& r) {
  if (r.length() < 2)
    throw UndefinedMetricError("psl: undefined for length-1 sequences");
  double peak = 0.0;
  for (std::size_t l = 1; l < r.length(); ++l)
    peak = std::max(peak, std::abs(r.values[l]));
  return peak;
}

/// Frequency-domain ISL over the 2P-point grid,
/// (1/4P) * sum_k [ |Z_k|^2 - P ]^2, which equals the lag-domain ISL.
inline double isl_frequency(
    const Sequence& z, TransformEngine& engine = TransformEngine::thread_default()) {
  const Spectrum s = forward_transform_2p(z, engine);
  const double P = static_cast<double>(z.length());
  double acc = 0.0;
  for (const auto& b : s.bins) {
    const double d = std::norm(b) - P;
    acc += d * d;
  }
  return acc / (4.0 * P);
}

/// Two-sided objective over all lags -(P-1)..P-1: 2*ISL + |r(0)|^2.
/// This is the quadratic-form value z^H R(z) z the solvers minimize.
inline double two_sided_objective(const CorrelationProfile& r) {
  return 2.0 * isl(r) + std::norm(r.values[0]);
}

/// dB floor used for exact-zero sidelobes so exports stay finite.
inline constexpr double kDbFloor = -320.0;

/// Sidelobe levels in dB relative to the main lobe:
/// 20*log10(|r(l)|/|r(0)|), floored at kDbFloor.
inline std::vector<double> autocorrelation_db(const CorrelationProfile& r) {
  const double r0 = std::abs(r.values[0]);
  if (r0 == 0.0)
    throw InvalidProfileError("autocorrelation_db: zero main lobe");
  std::vector<double> db(r.length());
  for (std::size_t l = 0; l < r.length(); ++l) {
    const double mag = std::abs(r.values[l]);
    db[l] = mag == 0.0 ? kDbFloor
                       : std::max(kDbFloor, 20.0 * std::log10(mag / r0));
  }
  return db;
}

/// CSV export: header "lag,re,im,abs,db", one row per lag 0..P-1.
inline void write_profile_csv(std::ostream& out, const CorrelationProfile& r) {
  const std::vector<double> db = autocorrelation_db(r);
  out << "lag,re,im,abs,db\n";
  for (std::size_t l = 0; l < r.length(); ++l) {
    out << l << "," << detail::format_g17(r.values[l].real()) << ","
        << detail::format_g17(r.values[l].imag()) << ","
        << detail::format_g17(std::abs(r.values[l])) << ","
        << detail::format_g17(db[l]) << "\n";
  }
  if (!out) throw IoError("write_profile_csv: stream failure");
}

}  // namespace seqforge

#endif  // SEQFORGE_METRICS_HPP_
