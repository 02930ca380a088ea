#ifndef SEQFORGE_DENSE_HPP_
#define SEQFORGE_DENSE_HPP_

// Dense reference routines for small problems: materializing the
// Hermitian Toeplitz matrix behind a correlation profile and a cyclic
// Jacobi eigensolver. These back the `bounds` diagnostic; the matrix-free
// paths never touch them.

#include <algorithm>
#include <cmath>
#include <vector>

#include "seqforge/errors.hpp"
#include "seqforge/metrics.hpp"

namespace seqforge {

/// Row-major dense Hermitian matrix.
struct DenseHermitian {
  std::size_t n = 0;
  cvector a;

  cdouble& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const cdouble& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

/// Materializes R: Toeplitz with first column [r(0), ..., r(P-1)] and
/// first row its conjugate.
inline DenseHermitian dense_toeplitz(const CorrelationProfile& r) {
  const std::size_t P = r.length();
  DenseHermitian m;
  m.n = P;
  m.a.assign(P * P, cdouble(0.0, 0.0));
  for (std::size_t i = 0; i < P; ++i) {
    for (std::size_t j = 0; j < P; ++j) {
      m.at(i, j) = i >= j ? r.values[i - j] : std::conj(r.values[j - i]);
    }
  }
  return m;
}

/// Dense matrix-vector product; O(P^2) oracle for the spectral apply.
inline cvector dense_apply(const CorrelationProfile& r, const cvector& x) {
  const DenseHermitian m = dense_toeplitz(r);
  if (x.size() != m.n) throw DimensionError("dense_apply: length mismatch");
  cvector y(m.n, cdouble(0.0, 0.0));
  for (std::size_t i = 0; i < m.n; ++i) {
    cdouble acc(0.0, 0.0);
    for (std::size_t j = 0; j < m.n; ++j) acc += m.at(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi sweeps with complex
/// rotations. Destroys its argument. Suitable for the small dimensions
/// the diagnostics run at.
inline std::vector<double> jacobi_eigenvalues(DenseHermitian m,
                                              std::size_t max_sweeps = 64) {
  const std::size_t n = m.n;
  if (n == 0) throw InvalidLengthError("jacobi_eigenvalues: empty matrix");
  if (n == 1) return {m.at(0, 0).real()};

  double scale = 0.0;
  for (const auto& v : m.a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return std::vector<double>(n, 0.0);
  const double stop = 1e-14 * scale;

  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        off = std::max(off, std::abs(m.at(p, q)));
    if (off <= stop) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cdouble apq = m.at(p, q);
        const double beta = std::abs(apq);
        if (beta <= stop) continue;
        const double app = m.at(p, p).real();
        const double aqq = m.at(q, q).real();
        // Unitary rotation U = [[c, -s*phi],[s*conj(phi), c]] with
        // phi = apq/|apq|; the angle is the classic small-tangent root,
        // which zeroes the (p,q) entry and keeps |theta| <= pi/4.
        const cdouble phi = apq / beta;
        const double tau = (app - aqq) / (2.0 * beta);
        const double t = tau >= 0.0
                             ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                             : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const cdouble mkp = m.at(k, p);
          const cdouble mkq = m.at(k, q);
          m.at(k, p) = c * mkp + s * std::conj(phi) * mkq;
          m.at(k, q) = -s * phi * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cdouble mpk = m.at(p, k);
          const cdouble mqk = m.at(q, k);
          m.at(p, k) = c * mpk + s * phi * mqk;
          m.at(q, k) = -s * std::conj(phi) * mpk + c * mqk;
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = m.at(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

/// Largest eigenvalue of the dense matrix behind a profile.
inline double dense_lambda_max(const CorrelationProfile& r) {
  const std::vector<double> eig = jacobi_eigenvalues(dense_toeplitz(r));
  return eig.back();
}

}  // namespace seqforge

#endif  // SEQFORGE_DENSE_HPP_
