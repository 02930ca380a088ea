#ifndef SEQFORGE_CORE_HPP_
#define SEQFORGE_CORE_HPP_

// Value types shared by the whole library: unit-modulus sequences, their
// phase representation, and the zero-padded length-2P spectral transform
// every fast path is built on.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seqforge/errors.hpp"
#include "seqforge/fft.hpp"

namespace seqforge {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Tolerance used when validating that samples are unit modulus.
inline constexpr double kUnitModulusTol = 1e-12;

/// Immutable phase-only sequence: every sample has magnitude 1 and the
/// length is fixed for the life of the value.
class Sequence {
 public:
  /// Validates |s_n| = 1 within kUnitModulusTol.
  static Sequence from_samples(cvector samples) {
    if (samples.empty())
      throw InvalidLengthError("Sequence: length must be at least 1");
    for (const auto& s : samples) {
      if (std::abs(std::abs(s) - 1.0) > kUnitModulusTol)
        throw UnitModulusError("Sequence: sample is not unit modulus");
    }
    return Sequence(std::move(samples));
  }

  static Sequence from_phases(std::span<const double> phases) {
    if (phases.empty())
      throw InvalidLengthError("Sequence: length must be at least 1");
    cvector s(phases.size());
    for (std::size_t n = 0; n < phases.size(); ++n)
      s[n] = cdouble(std::cos(phases[n]), std::sin(phases[n]));
    return Sequence(std::move(s));
  }

  std::size_t length() const { return samples_.size(); }
  const cvector& samples() const { return samples_; }
  const cdouble& operator[](std::size_t n) const { return samples_[n]; }

  bool operator==(const Sequence& other) const {
    return samples_ == other.samples_;
  }

 private:
  explicit Sequence(cvector s) : samples_(std::move(s)) {}
  cvector samples_;
};

/// Length-2P frequency-domain vector produced by forward_transform_2p.
struct Spectrum {
  cvector bins;

  std::size_t size() const { return bins.size(); }
  std::size_t sequence_length() const { return bins.size() / 2; }
};

/// Phases in [0, 2*pi); converts to and from Sequence losslessly within
/// 1e-12 per element.
struct PhaseVector {
  std::vector<double> phases;

  static PhaseVector from_sequence(const Sequence& z) {
    PhaseVector pv;
    pv.phases.resize(z.length());
    for (std::size_t n = 0; n < z.length(); ++n) {
      double a = std::arg(z[n]);
      if (a < 0.0) a += kTwoPi;
      if (a >= kTwoPi) a -= kTwoPi;
      pv.phases[n] = a;
    }
    return pv;
  }

  Sequence to_sequence() const { return Sequence::from_phases(phases); }
};

namespace detail {

/// 53-bit uniform draw in [0, 1). Built directly from mt19937_64 output
/// so the stream is identical on every platform, which
/// std::uniform_real_distribution does not guarantee.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Random phase-only sequence: phases 2*pi*theta with theta ~ U[0,1)
/// drawn from std::mt19937_64 seeded with `seed` (53-bit draws, stable
/// across platforms). Deterministic for a fixed (P, seed).
inline Sequence random_sequence(std::size_t P, std::uint64_t seed) {
  if (P == 0) throw InvalidLengthError("random_sequence: P must be positive");
  std::mt19937_64 rng(seed);
  std::vector<double> phases(P);
  for (std::size_t i = 0; i < P; ++i) phases[i] = kTwoPi * detail::uniform01(rng);
  return Sequence::from_phases(phases);
}

/// Golomb polyphase sequence: z_n = e^{j*pi*(n-1)*n/P}, n = 1..P.
/// The phase index (n-1)*n is reduced mod 2P in exact integer arithmetic
/// before the trig evaluation.
inline Sequence golomb_sequence(std::size_t P) {
  if (P == 0) throw InvalidLengthError("golomb_sequence: P must be positive");
  std::vector<double> phases(P);
  const std::uint64_t period = 2 * static_cast<std::uint64_t>(P);
  for (std::size_t n = 1; n <= P; ++n) {
    const std::uint64_t idx =
        (static_cast<std::uint64_t>(n - 1) * static_cast<std::uint64_t>(n)) %
        period;
    phases[n - 1] = kPi * static_cast<double>(idx) / static_cast<double>(P);
  }
  return Sequence::from_phases(phases);
}

/// Frank sequence for P = M^2: with n = (p-1)M + q, p,q = 1..M, the
/// sample phase is (2*pi/M)*(p-1)*(q-1).
inline Sequence frank_sequence(std::size_t P) {
  if (P == 0) throw InvalidLengthError("frank_sequence: P must be positive");
  const auto M = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(P))));
  if (M * M != P)
    throw UnsupportedLengthError(
        "frank_sequence: length must be a perfect square, got " +
        std::to_string(P));
  std::vector<double> phases(P);
  for (std::size_t p = 1; p <= M; ++p) {
    for (std::size_t q = 1; q <= M; ++q) {
      const std::size_t idx = ((p - 1) * (q - 1)) % M;
      phases[(p - 1) * M + (q - 1)] =
          kTwoPi * static_cast<double>(idx) / static_cast<double>(M);
    }
  }
  return Sequence::from_phases(phases);
}

/// Zero-pads z to length 2P and applies the unnormalized forward DFT,
/// s_k = sum_n zhat_n e^{-j*2*pi*k*n/(2P)}, k = 0..2P-1.
inline Spectrum forward_transform_2p(
    const Sequence& z, TransformEngine& engine = TransformEngine::thread_default()) {
  cvector padded(2 * z.length(), cdouble(0.0, 0.0));
  std::copy(z.samples().begin(), z.samples().end(), padded.begin());
  return Spectrum{engine.forward(std::move(padded))};
}

/// Exact inverse of forward_transform_2p; carries the 1/(2P) factor.
inline cvector inverse_transform_2p(
    const Spectrum& s, TransformEngine& engine = TransformEngine::thread_default()) {
  if (s.bins.size() < 2 || s.bins.size() % 2 != 0)
    throw InvalidLengthError("inverse_transform_2p: length must be even and >= 2");
  return engine.inverse(s.bins);
}

// ---------------------------------------------------------------------------
// Sequence text format
//
//   # seqforge sequence P=<P>
//   <re> <im>                 (one sample per line, 17 significant digits)
//
// and the phase-only variant
//
//   # seqforge phases P=<P>
//   <radians>                 (one value per line)
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

inline void write_sequence(std::ostream& out, const Sequence& z) {
  out << "# seqforge sequence P=" << z.length() << "\n";
  for (const auto& s : z.samples())
    out << detail::format_g17(s.real()) << " " << detail::format_g17(s.imag())
        << "\n";
  if (!out) throw IoError("write_sequence: stream failure");
}

inline void write_phases(std::ostream& out, const Sequence& z) {
  const PhaseVector pv = PhaseVector::from_sequence(z);
  out << "# seqforge phases P=" << z.length() << "\n";
  for (double p : pv.phases) out << detail::format_g17(p) << "\n";
  if (!out) throw IoError("write_phases: stream failure");
}

inline Sequence read_sequence(std::istream& in) {
  std::string header;
  if (!std::getline(in, header))
    throw IoError("read_sequence: missing header line");
  bool phases_variant = false;
  std::size_t P = 0;
  if (std::sscanf(header.c_str(), "# seqforge sequence P=%zu", &P) == 1) {
    phases_variant = false;
  } else if (std::sscanf(header.c_str(), "# seqforge phases P=%zu", &P) == 1) {
    phases_variant = true;
  } else {
    throw IoError("read_sequence: unrecognized header: " + header);
  }
  if (P == 0) throw InvalidLengthError("read_sequence: P must be positive");
  if (phases_variant) {
    std::vector<double> phases(P);
    for (std::size_t n = 0; n < P; ++n) {
      if (!(in >> phases[n]))
        throw IoError("read_sequence: truncated phase data");
    }
    return Sequence::from_phases(phases);
  }
  cvector samples(P);
  for (std::size_t n = 0; n < P; ++n) {
    double re = 0.0, im = 0.0;
    if (!(in >> re >> im)) throw IoError("read_sequence: truncated sample data");
    samples[n] = cdouble(re, im);
  }
  return Sequence::from_samples(std::move(samples));
}

inline void save_sequence(const std::string& path, const Sequence& z) {
  std::ofstream out(path);
  if (!out) throw IoError("save_sequence: cannot open " + path);
  write_sequence(out, z);
}

inline Sequence load_sequence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_sequence: cannot open " + path);
  return read_sequence(in);
}

}  // namespace seqforge

#endif  // SEQFORGE_CORE_HPP_
