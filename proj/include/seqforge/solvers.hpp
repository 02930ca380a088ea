#ifndef SEQFORGE_SOLVERS_HPP_
#define SEQFORGE_SOLVERS_HPP_

// Iterative phase-only sequence designers: the FISL update (majorize the
// two-sided objective with a diagonal constant, then project phases),
// the CAN / MISL / ISL-NEW baselines, and a SQUAREM acceleration wrapper
// with a monotonicity safeguard.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "seqforge/core.hpp"
#include "seqforge/errors.hpp"
#include "seqforge/majorizer.hpp"
#include "seqforge/metrics.hpp"

namespace seqforge {

enum class Algorithm { FISL, CAN, MISL, ISL_NEW };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::FISL: return "fisl";
    case Algorithm::CAN: return "can";
    case Algorithm::MISL: return "misl";
    case Algorithm::ISL_NEW: return "islnew";
  }
  return "?";
}

inline Algorithm algorithm_from_string(const std::string& name) {
  if (name == "fisl") return Algorithm::FISL;
  if (name == "can") return Algorithm::CAN;
  if (name == "misl") return Algorithm::MISL;
  if (name == "islnew") return Algorithm::ISL_NEW;
  throw PreconditionError("unknown algorithm: " + name);
}

struct SolverConfig {
  Algorithm algorithm = Algorithm::FISL;
  /// Majorizer strategy; used by FISL only.
  BoundStrategy bound_strategy = BoundStrategy::BEFFT;
  /// SQUAREM acceleration; used by MISL and ISL_NEW only.
  bool accelerate = false;
  double tolerance = 1e-5;
  std::size_t max_iterations = 100000;
  std::uint64_t seed = 0;
};

enum class StopReason { Converged, MaxIterations };

inline const char* to_string(StopReason r) {
  return r == StopReason::Converged ? "converged" : "max_iterations";
}

struct TraceRecord {
  std::size_t iteration = 0;
  double isl = 0.0;
  double elapsed_seconds = 0.0;
  /// Majorizer constant used for the step taken at this iteration;
  /// absent for non-FISL solvers and for the final (not stepped) record.
  std::optional<double> bound_m;
};

struct IterationTrace {
  std::vector<TraceRecord> records;
  StopReason stop_reason = StopReason::Converged;
  /// Times a zero coefficient kept its previous phase in a projection.
  std::size_t zero_phase_holds = 0;

  /// Steps actually taken (one less than the number of records).
  std::size_t iterations() const {
    return records.empty() ? 0 : records.size() - 1;
  }
};

struct SolverResult {
  Sequence sequence;
  IterationTrace trace;
  double final_isl = 0.0;
  /// 0 for P = 1, where PSL is undefined.
  double final_psl = 0.0;
};

/// Convergence test on successive ISL values:
/// |curr - prev| / max(1, prev) <= tolerance, boundary inclusive.
/// The epsilon slack keeps inputs that sit exactly on the boundary in
/// decimal arithmetic (and so are off by one rounding in binary) inside
/// the inclusive region.
inline bool stop_check(double prev_isl, double curr_isl, double tolerance) {
  if (tolerance <= 0.0)
    throw PreconditionError("stop_check: tolerance must be positive");
  const double slack = std::numeric_limits<double>::epsilon() *
                       (std::abs(prev_isl) + std::abs(curr_isl));
  return std::abs(curr_isl - prev_isl) <=
         tolerance * std::max(1.0, std::abs(prev_isl)) + slack;
}

namespace detail {

/// Elementwise phase projection a_n -> a_n/|a_n|, the exact minimizer of
/// ||z - a||^2 under per-element unit modulus. Zero coefficients keep the
/// fallback's phase (any phase is optimal there; reusing the previous one
/// keeps the map deterministic).
inline std::pair<Sequence, std::size_t> phase_project(const cvector& a,
                                                      const Sequence& fallback) {
  cvector out(a.size());
  std::size_t holds = 0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    const double mag = std::abs(a[n]);
    if (mag == 0.0) {
      out[n] = fallback[n];
      ++holds;
    } else {
      out[n] = a[n] / mag;
    }
  }
  return {Sequence::from_samples(std::move(out)), holds};
}

inline cvector padded_samples(const Sequence& z) {
  cvector p(2 * z.length(), cdouble(0.0, 0.0));
  std::copy(z.samples().begin(), z.samples().end(), p.begin());
  return p;
}

/// Frequency-domain ISL evaluated from an already computed 2P spectrum.
inline double isl_from_spectrum(const cvector& v, std::size_t P) {
  const double p = static_cast<double>(P);
  double acc = 0.0;
  for (const auto& b : v) {
    const double d = std::norm(b) - p;
    acc += d * d;
  }
  return acc / (4.0 * p);
}

struct FislFinish {
  Sequence next;
  double bound_m;
  std::size_t zero_phase_holds;
};

/// The update half of a FISL step, reusing the profile computed for the
/// stopping rule: build the operator, pick the majorizer constant, form
/// a = 0.25*m*z - R*z and project phases.
inline FislFinish fisl_finish(const Sequence& z, const CorrelationProfile& r,
                              BoundStrategy strategy, TransformEngine& engine) {
  const ToeplitzOperator op = build_operator(r, engine);
  const BoundValue bound = compute_bound(op, strategy, engine);
  cvector a = op.apply(z.samples(), engine);
  const double quarter_m = 0.25 * bound.m_scalar;
  for (std::size_t n = 0; n < a.size(); ++n) a[n] = quarter_m * z[n] - a[n];
  auto [next, holds] = phase_project(a, z);
  return {std::move(next), bound.m_scalar, holds};
}

/// CAN update from an already computed spectrum v of the padded iterate.
inline Sequence can_update(const cvector& v, const Sequence& z,
                           TransformEngine& engine, std::size_t* holds) {
  cvector y(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double mag = std::abs(v[k]);
    if (mag == 0.0) {
      y[k] = cdouble(1.0, 0.0);
      if (holds) ++*holds;
    } else {
      y[k] = v[k] / mag;
    }
  }
  cvector b = engine.inverse(std::move(y));
  b.resize(z.length());
  auto [next, h] = phase_project(b, z);
  if (holds) *holds += h;
  return next;
}

/// Shared MISL / ISL-NEW update: weight each spectrum bin by
/// |v|^2 - cmax*max|v|^2 - cp*P^2, invert, negate, project. MISL uses
/// cmax = cp = 1; ISL-NEW uses 0.5 for both.
inline Sequence misl_family_update(const cvector& v, const Sequence& z,
                                   double cmax, double cp,
                                   TransformEngine& engine, std::size_t* holds) {
  const double P = static_cast<double>(z.length());
  double bmax = 0.0;
  for (const auto& b : v) bmax = std::max(bmax, std::norm(b));
  cvector w(v.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    w[k] = (std::norm(v[k]) - cmax * bmax - cp * P * P) * v[k];
  cvector d = engine.inverse(std::move(w));
  d.resize(z.length());
  for (auto& x : d) x = -x;
  auto [next, h] = phase_project(d, z);
  if (holds) *holds += h;
  return next;
}

class SolveClock {
 public:
  SolveClock() : start_(std::chrono::steady_clock::now()) {}
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline void validate_config(const SolverConfig& cfg) {
  if (cfg.tolerance <= 0.0)
    throw PreconditionError("SolverConfig: tolerance must be positive");
  if (cfg.max_iterations < 1)
    throw PreconditionError("SolverConfig: max_iterations must be >= 1");
}

}  // namespace detail

struct FislStepResult {
  Sequence next;
  double bound_m = 0.0;
  std::size_t zero_phase_holds = 0;
};

/// One FISL iteration z -> z'. Costs exactly 3 forward and 2 inverse
/// 2P-point transforms for the TR, BEI and BEFFT strategies; EI adds the
/// transforms of its internal power iteration.
inline FislStepResult fisl_step(
    const Sequence& z, BoundStrategy strategy,
    TransformEngine& engine = TransformEngine::thread_default()) {
  const CorrelationProfile r = autocorrelation_fft(z, engine);
  auto fin = detail::fisl_finish(z, r, strategy, engine);
  return {std::move(fin.next), fin.bound_m, fin.zero_phase_holds};
}

/// One CAN iteration.
inline Sequence can_step(const Sequence& z,
                         TransformEngine& engine = TransformEngine::thread_default()) {
  const cvector v = engine.forward(detail::padded_samples(z));
  return detail::can_update(v, z, engine, nullptr);
}

/// One MISL iteration.
inline Sequence misl_step(const Sequence& z,
                          TransformEngine& engine = TransformEngine::thread_default()) {
  const cvector v = engine.forward(detail::padded_samples(z));
  return detail::misl_family_update(v, z, 1.0, 1.0, engine, nullptr);
}

/// One ISL-NEW iteration.
inline Sequence islnew_step(const Sequence& z,
                            TransformEngine& engine = TransformEngine::thread_default()) {
  const cvector v = engine.forward(detail::padded_samples(z));
  return detail::misl_family_update(v, z, 0.5, 0.5, engine, nullptr);
}

/// SQUAREM extrapolation around a fixed-point map with an objective
/// safeguard: two base steps, extrapolate with alpha = -||q||/||v||
/// (clamped to <= -1), project phases, take one more base step, and fall
/// back to the unaccelerated second iterate whenever the accelerated
/// candidate has a larger two-sided objective.
inline Sequence squarem_wrap(
    const std::function<Sequence(const Sequence&)>& base_step, const Sequence& z,
    TransformEngine& engine = TransformEngine::thread_default()) {
  const Sequence z1 = base_step(z);
  const Sequence z2 = base_step(z1);
  const std::size_t P = z.length();

  double nq2 = 0.0, nv2 = 0.0;
  cvector q(P), vv(P);
  for (std::size_t n = 0; n < P; ++n) {
    q[n] = z1[n] - z[n];
    vv[n] = z2[n] - 2.0 * z1[n] + z[n];
    nq2 += std::norm(q[n]);
    nv2 += std::norm(vv[n]);
  }
  if (nv2 == 0.0) return z2;  // already at a fixed point

  double alpha = -std::sqrt(nq2) / std::sqrt(nv2);
  if (alpha > -1.0) alpha = -1.0;

  cvector extrap(P);
  for (std::size_t n = 0; n < P; ++n)
    extrap[n] = z[n] - 2.0 * alpha * q[n] + alpha * alpha * vv[n];
  auto [projected, holds] = detail::phase_project(extrap, z2);
  (void)holds;
  const Sequence candidate = base_step(projected);

  const double g_candidate =
      two_sided_objective(autocorrelation_fft(candidate, engine));
  const double g_plain = two_sided_objective(autocorrelation_fft(z2, engine));
  return g_candidate > g_plain ? z2 : candidate;
}

/// FISL driver. Records one trace entry per iteration; the stopping rule
/// reuses the profile already computed inside the step, so each completed
/// iteration costs exactly the step's transform budget.
inline SolverResult solve_fisl(
    const Sequence& z0, const SolverConfig& cfg,
    TransformEngine& engine = TransformEngine::thread_default()) {
  detail::validate_config(cfg);
  if (cfg.algorithm != Algorithm::FISL)
    throw PreconditionError("solve_fisl: config.algorithm must be FISL");

  IterationTrace trace;
  Sequence z = z0;
  std::optional<double> prev;
  std::size_t steps = 0;
  const detail::SolveClock clock;
  CorrelationProfile r;

  for (std::size_t k = 0;; ++k) {
    r = autocorrelation_fft(z, engine);
    const double isl_k = isl(r);
    const double el = clock.elapsed();
    const bool converged = prev && stop_check(*prev, isl_k, cfg.tolerance);
    if (converged || steps >= cfg.max_iterations) {
      trace.records.push_back({k, isl_k, el, std::nullopt});
      trace.stop_reason =
          converged ? StopReason::Converged : StopReason::MaxIterations;
      break;
    }
    auto fin = detail::fisl_finish(z, r, cfg.bound_strategy, engine);
    trace.records.push_back({k, isl_k, el, fin.bound_m});
    trace.zero_phase_holds += fin.zero_phase_holds;
    prev = isl_k;
    z = std::move(fin.next);
    ++steps;
  }

  SolverResult res{std::move(z), std::move(trace), isl(r),
                   r.length() >= 2 ? psl(r) : 0.0};
  return res;
}

namespace detail {

enum class BaselineKind { Can, Misl, IslNew };

inline SolverResult solve_baseline_plain(const Sequence& z0,
                                         const SolverConfig& cfg,
                                         BaselineKind kind,
                                         TransformEngine& engine) {
  IterationTrace trace;
  Sequence z = z0;
  std::optional<double> prev;
  std::size_t steps = 0;
  const SolveClock clock;

  for (std::size_t k = 0;; ++k) {
    const cvector v = engine.forward(padded_samples(z));
    const double isl_k = isl_from_spectrum(v, z.length());
    const double el = clock.elapsed();
    const bool converged = prev && stop_check(*prev, isl_k, cfg.tolerance);
    if (converged || steps >= cfg.max_iterations) {
      trace.records.push_back({k, isl_k, el, std::nullopt});
      trace.stop_reason =
          converged ? StopReason::Converged : StopReason::MaxIterations;
      break;
    }
    trace.records.push_back({k, isl_k, el, std::nullopt});
    switch (kind) {
      case BaselineKind::Can:
        z = can_update(v, z, engine, &trace.zero_phase_holds);
        break;
      case BaselineKind::Misl:
        z = misl_family_update(v, z, 1.0, 1.0, engine, &trace.zero_phase_holds);
        break;
      case BaselineKind::IslNew:
        z = misl_family_update(v, z, 0.5, 0.5, engine, &trace.zero_phase_holds);
        break;
    }
    prev = isl_k;
    ++steps;
  }

  const CorrelationProfile r = autocorrelation_fft(z, engine);
  SolverResult res{std::move(z), std::move(trace), isl(r),
                   r.length() >= 2 ? psl(r) : 0.0};
  return res;
}

inline SolverResult solve_baseline_accelerated(const Sequence& z0,
                                               const SolverConfig& cfg,
                                               BaselineKind kind,
                                               TransformEngine& engine) {
  std::function<Sequence(const Sequence&)> base;
  if (kind == BaselineKind::Misl) {
    base = [&engine](const Sequence& s) { return misl_step(s, engine); };
  } else {
    base = [&engine](const Sequence& s) { return islnew_step(s, engine); };
  }

  IterationTrace trace;
  Sequence z = z0;
  std::optional<double> prev;
  std::size_t steps = 0;
  const SolveClock clock;

  for (std::size_t k = 0;; ++k) {
    const double isl_k = isl_frequency(z, engine);
    const double el = clock.elapsed();
    const bool converged = prev && stop_check(*prev, isl_k, cfg.tolerance);
    if (converged || steps >= cfg.max_iterations) {
      trace.records.push_back({k, isl_k, el, std::nullopt});
      trace.stop_reason =
          converged ? StopReason::Converged : StopReason::MaxIterations;
      break;
    }
    trace.records.push_back({k, isl_k, el, std::nullopt});
    z = squarem_wrap(base, z, engine);
    prev = isl_k;
    ++steps;
  }

  const CorrelationProfile r = autocorrelation_fft(z, engine);
  SolverResult res{std::move(z), std::move(trace), isl(r),
                   r.length() >= 2 ? psl(r) : 0.0};
  return res;
}

}  // namespace detail

/// CAN driver. ISL is recorded every iteration but is not monotone for
/// CAN; the stopping rule is still applied to it.
inline SolverResult solve_can(
    const Sequence& z0, const SolverConfig& cfg,
    TransformEngine& engine = TransformEngine::thread_default()) {
  detail::validate_config(cfg);
  return detail::solve_baseline_plain(z0, cfg, detail::BaselineKind::Can, engine);
}

inline SolverResult solve_misl(
    const Sequence& z0, const SolverConfig& cfg,
    TransformEngine& engine = TransformEngine::thread_default()) {
  detail::validate_config(cfg);
  if (cfg.accelerate)
    return detail::solve_baseline_accelerated(z0, cfg, detail::BaselineKind::Misl,
                                              engine);
  return detail::solve_baseline_plain(z0, cfg, detail::BaselineKind::Misl, engine);
}

inline SolverResult solve_islnew(
    const Sequence& z0, const SolverConfig& cfg,
    TransformEngine& engine = TransformEngine::thread_default()) {
  detail::validate_config(cfg);
  if (cfg.accelerate)
    return detail::solve_baseline_accelerated(z0, cfg,
                                              detail::BaselineKind::IslNew, engine);
  return detail::solve_baseline_plain(z0, cfg, detail::BaselineKind::IslNew,
                                      engine);
}

/// Dispatch on config.algorithm.
inline SolverResult solve(
    const Sequence& z0, const SolverConfig& cfg,
    TransformEngine& engine = TransformEngine::thread_default()) {
  switch (cfg.algorithm) {
    case Algorithm::FISL: return solve_fisl(z0, cfg, engine);
    case Algorithm::CAN: return solve_can(z0, cfg, engine);
    case Algorithm::MISL: return solve_misl(z0, cfg, engine);
    case Algorithm::ISL_NEW: return solve_islnew(z0, cfg, engine);
  }
  throw PreconditionError("solve: unknown algorithm");
}

/// Trace CSV: "iter,isl,elapsed_s,bound_m" rows followed by a
/// "# stop_reason=..." comment line. bound_m is empty where absent.
inline void write_trace_csv(std::ostream& out, const IterationTrace& trace) {
  out << "iter,isl,elapsed_s,bound_m\n";
  for (const auto& rec : trace.records) {
    out << rec.iteration << "," << detail::format_g17(rec.isl) << ","
        << detail::format_g17(rec.elapsed_seconds) << ",";
    if (rec.bound_m) out << detail::format_g17(*rec.bound_m);
    out << "\n";
  }
  out << "# stop_reason=" << to_string(trace.stop_reason) << "\n";
  if (!out) throw IoError("write_trace_csv: stream failure");
}

}  // namespace seqforge

#endif  // SEQFORGE_SOLVERS_HPP_
