#ifndef SEQFORGE_TESTS_ORACLES_HPP_
#define SEQFORGE_TESTS_ORACLES_HPP_

// Test-only reference implementations, kept deliberately independent of
// the library's fast paths: a naive O(n^2) DFT, a dense Toeplitz
// matrix-vector product written straight from the definition, and Eigen
// wrappers for eigenvalue ground truth.

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "seqforge/core.hpp"
#include "seqforge/metrics.hpp"

namespace oracles {

using seqforge::cdouble;
using seqforge::cvector;

/// Naive forward DFT: X_k = sum_n x_n e^{-2*pi*i*k*n/N}.
inline cvector naive_dft(const cvector& x) {
  const std::size_t n = x.size();
  cvector out(n, cdouble(0.0, 0.0));
  const double base = -2.0 * seqforge::kPi / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    cdouble acc(0.0, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
      const double ang = base * static_cast<double>(k) * static_cast<double>(m);
      acc += x[m] * cdouble(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

/// Dense Hermitian Toeplitz multiply from the matrix definition:
/// A(i,j) = r(i-j) for i >= j, conj(r(j-i)) otherwise.
inline cvector dense_toeplitz_multiply(const seqforge::CorrelationProfile& r,
                                       const cvector& x) {
  const std::size_t P = r.length();
  cvector y(P, cdouble(0.0, 0.0));
  for (std::size_t i = 0; i < P; ++i) {
    cdouble acc(0.0, 0.0);
    for (std::size_t j = 0; j < P; ++j) {
      const cdouble a =
          i >= j ? r.values[i - j] : std::conj(r.values[j - i]);
      acc += a * x[j];
    }
    y[i] = acc;
  }
  return y;
}

inline Eigen::MatrixXcd toeplitz_matrix(const seqforge::CorrelationProfile& r) {
  const auto P = static_cast<Eigen::Index>(r.length());
  Eigen::MatrixXcd m(P, P);
  for (Eigen::Index i = 0; i < P; ++i) {
    for (Eigen::Index j = 0; j < P; ++j) {
      m(i, j) = i >= j ? r.values[static_cast<std::size_t>(i - j)]
                       : std::conj(r.values[static_cast<std::size_t>(j - i)]);
    }
  }
  return m;
}

inline double eigen_lambda_max(const seqforge::CorrelationProfile& r) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(toeplitz_matrix(r),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

inline double eigen_lambda_min(const seqforge::CorrelationProfile& r) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(toeplitz_matrix(r),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Random complex vector with components uniform in [-1, 1]^2.
inline cvector random_complex_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto u = [&rng]() {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  };
  cvector v(n);
  for (auto& x : v) x = cdouble(u(), u());
  return v;
}

inline double max_abs_diff(const cvector& a, const cvector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace oracles

#endif  // SEQFORGE_TESTS_ORACLES_HPP_
