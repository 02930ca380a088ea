#ifndef SEQFORGE_MAJORIZER_HPP_
#define SEQFORGE_MAJORIZER_HPP_

// The Hermitian Toeplitz autocorrelation operator R applied matrix-free
// through a 2P-point circulant embedding, and four strategies for the
// scalar majorizer constant M such that M*I dominates 8R.
//
// For a profile r(0..P-1), R is the P x P Hermitian Toeplitz matrix with
// first column [r(0), ..., r(P-1)]. Embedding its first column as
// d = [r(0), ..., r(P-1), 0, r*(P-1), ..., r*(1)] gives a 2P circulant
// whose top-left block is R, so R*x is one forward and one inverse
// transform around an elementwise product with s = DFT(d). When r is a
// genuine autocorrelation, s is the (real, nonnegative) 2P-point power
// spectrum of the underlying sequence.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>

#include "seqforge/errors.hpp"
#include "seqforge/metrics.hpp"

namespace seqforge {

enum class BoundStrategy { TR, EI, BEI, BEFFT };

inline const char* to_string(BoundStrategy s) {
  switch (s) {
    case BoundStrategy::TR: return "tr";
    case BoundStrategy::EI: return "ei";
    case BoundStrategy::BEI: return "bei";
    case BoundStrategy::BEFFT: return "befft";
  }
  return "?";
}

inline BoundStrategy bound_strategy_from_string(const std::string& name) {
  if (name == "tr") return BoundStrategy::TR;
  if (name == "ei") return BoundStrategy::EI;
  if (name == "bei") return BoundStrategy::BEI;
  if (name == "befft") return BoundStrategy::BEFFT;
  throw PreconditionError("unknown bound strategy: " + name);
}

/// Scalar m so that m*I dominates the Hessian 8R of the two-sided
/// objective, tagged with the strategy that produced it.
struct BoundValue {
  double m_scalar = 0.0;
  BoundStrategy strategy = BoundStrategy::TR;
  /// EI only: false when power iteration hit its iteration cap before the
  /// Rayleigh quotient settled; the returned value is the inflated last
  /// estimate.
  bool converged = true;
  /// BEI only: true when rounding produced a negative variance that was
  /// clamped to zero.
  bool variance_clamped = false;
};

/// Matrix-free R. Never materializes the P x P matrix; construction costs
/// one forward transform, application one forward plus one inverse.
class ToeplitzOperator {
 public:
  ToeplitzOperator(CorrelationProfile profile, TransformEngine& engine)
      : profile_(std::move(profile)) {
    const std::size_t P = profile_.length();
    if (P == 0) throw InvalidLengthError("ToeplitzOperator: empty profile");
    cvector d(2 * P, cdouble(0.0, 0.0));
    for (std::size_t l = 0; l < P; ++l) d[l] = profile_.values[l];
    for (std::size_t l = 1; l < P; ++l)
      d[2 * P - l] = std::conj(profile_.values[l]);
    spectrum_ = engine.forward(std::move(d));
  }

  std::size_t dimension() const { return profile_.length(); }
  const CorrelationProfile& profile() const { return profile_; }

  /// DFT of the embedded first column; real up to rounding for genuine
  /// autocorrelation profiles.
  const cvector& padded_spectrum() const { return spectrum_; }

  /// R*x via the circulant embedding; matches the dense product to
  /// rounding.
  cvector apply(std::span<const cdouble> x, TransformEngine& engine) const {
    const std::size_t P = dimension();
    if (x.size() != P)
      throw DimensionError("ToeplitzOperator::apply: length mismatch");
    cvector padded(2 * P, cdouble(0.0, 0.0));
    std::copy(x.begin(), x.end(), padded.begin());
    cvector freq = engine.forward(std::move(padded));
    for (std::size_t k = 0; k < 2 * P; ++k) freq[k] *= spectrum_[k];
    cvector full = engine.inverse(std::move(freq));
    full.resize(P);
    return full;
  }

 private:
  CorrelationProfile profile_;
  cvector spectrum_;
};

inline ToeplitzOperator build_operator(
    CorrelationProfile r,
    TransformEngine& engine = TransformEngine::thread_default()) {
  return ToeplitzOperator(std::move(r), engine);
}

/// Trace bound: m = Tr(8R) = 8P^2 for unimodular sequences. Independent
/// of the profile; the loosest of the four strategies.
inline BoundValue bound_tr(std::size_t P) {
  if (P == 0) throw InvalidLengthError("bound_tr: P must be positive");
  const double p = static_cast<double>(P);
  return BoundValue{8.0 * p * p, BoundStrategy::TR};
}

/// Exact maximum eigenvalue, estimated by power iteration on the
/// matrix-free operator. The start vector is the normalized all-ones
/// vector plus a fixed seeded perturbation; iteration stops when the
/// Rayleigh quotient changes by at most tol*max(1,|q|) or after max_iters
/// steps (default 10P). The result 8*q is inflated by (1 + 10*tol) to
/// keep the domination guarantee under the stopping error.
inline BoundValue bound_ei(const ToeplitzOperator& op, double tol = 1e-8,
                           std::size_t max_iters = 0,
                           TransformEngine& engine = TransformEngine::thread_default()) {
  if (tol <= 0.0) throw PreconditionError("bound_ei: tol must be positive");
  const std::size_t P = op.dimension();
  if (max_iters == 0) max_iters = 10 * P;

  cvector v(P, cdouble(1.0, 0.0));
  std::mt19937_64 rng(0x5eafc0defeedULL);
  for (auto& x : v) {
    x += cdouble(1e-8 * (detail::uniform01(rng) - 0.5),
                 1e-8 * (detail::uniform01(rng) - 0.5));
  }
  auto norm2 = [](const cvector& a) {
    double s = 0.0;
    for (const auto& x : a) s += std::norm(x);
    return std::sqrt(s);
  };
  {
    const double nv = norm2(v);
    for (auto& x : v) x /= nv;
  }

  double q_prev = 0.0;
  double q = 0.0;
  bool converged = false;
  for (std::size_t it = 0; it < max_iters; ++it) {
    cvector w = op.apply(v, engine);
    double dot = 0.0;  // v^H w is real for Hermitian R
    for (std::size_t n = 0; n < P; ++n)
      dot += v[n].real() * w[n].real() + v[n].imag() * w[n].imag();
    q = dot;
    if (it > 0 && std::abs(q - q_prev) <= tol * std::max(1.0, std::abs(q))) {
      converged = true;
      break;
    }
    q_prev = q;
    const double nw = norm2(w);
    if (nw == 0.0) {  // zero operator: every eigenvalue is 0
      q = 0.0;
      converged = true;
      break;
    }
    for (auto& x : w) x /= nw;
    v = std::move(w);
  }

  BoundValue b;
  b.m_scalar = 8.0 * q * (1.0 + 10.0 * tol);
  b.strategy = BoundStrategy::EI;
  b.converged = converged;
  return b;
}

/// Trace/variance eigenvalue bound: m + s*sqrt(P-1) with
/// m = 8*r(0) and s^2 = (64/P)*Tr(R^2) - m^2, where Tr(R^2) uses the
/// Toeplitz closed form P*|r(0)|^2 + 2*sum_l (P-l)*|r(l)|^2 so the whole
/// bound is O(P). Falls back to 8*r(0) for P = 1.
inline BoundValue bound_bei(const ToeplitzOperator& op) {
  const CorrelationProfile& r = op.profile();
  const std::size_t P = op.dimension();
  const double p = static_cast<double>(P);
  const double m = 8.0 * r.values[0].real();
  BoundValue b;
  b.strategy = BoundStrategy::BEI;
  if (P == 1) {
    b.m_scalar = m;
    return b;
  }
  double tr_r2 = p * std::norm(r.values[0]);
  for (std::size_t l = 1; l < P; ++l)
    tr_r2 += 2.0 * static_cast<double>(P - l) * std::norm(r.values[l]);
  double s2 = (64.0 / p) * tr_r2 - m * m;
  if (s2 < 0.0) {  // cancellation; mathematically s^2 >= 0
    s2 = 0.0;
    b.variance_clamped = true;
  }
  b.m_scalar = m + std::sqrt(s2) * std::sqrt(p - 1.0);
  return b;
}

/// DFT-grid Toeplitz eigenvalue bound: 4 * (max of the cached spectrum
/// over even bins + max over odd bins). Verifies that the cached spectrum
/// is real to within 1e-9*P before using it.
inline BoundValue bound_befft(const ToeplitzOperator& op) {
  const cvector& s = op.padded_spectrum();
  const std::size_t P = op.dimension();
  double max_imag = 0.0;
  for (const auto& x : s) max_imag = std::max(max_imag, std::abs(x.imag()));
  if (max_imag > 1e-9 * static_cast<double>(P))
    throw InternalConsistencyError(
        "bound_befft: embedded spectrum is not real; transform convention bug");
  double max_even = s[0].real();
  double max_odd = s[1].real();
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double v = s[k].real();
    if (k % 2 == 0)
      max_even = std::max(max_even, v);
    else
      max_odd = std::max(max_odd, v);
  }
  return BoundValue{4.0 * (max_even + max_odd), BoundStrategy::BEFFT};
}

/// Dispatch by strategy tag.
inline BoundValue compute_bound(
    const ToeplitzOperator& op, BoundStrategy strategy,
    TransformEngine& engine = TransformEngine::thread_default()) {
  switch (strategy) {
    case BoundStrategy::TR: return bound_tr(op.dimension());
    case BoundStrategy::EI: return bound_ei(op, 1e-8, 0, engine);
    case BoundStrategy::BEI: return bound_bei(op);
    case BoundStrategy::BEFFT: return bound_befft(op);
  }
  throw PreconditionError("compute_bound: unknown strategy");
}

}  // namespace seqforge

#endif  // SEQFORGE_MAJORIZER_HPP_
