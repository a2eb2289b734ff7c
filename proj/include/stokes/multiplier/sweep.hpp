#pragma once

#include <algorithm>
#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "stokes/core/errors.hpp"
#include "stokes/core/eval_point.hpp"
#include "stokes/core/precision.hpp"
#include "stokes/expansion/truncation.hpp"
#include "stokes/multiplier/approx.hpp"
#include "stokes/multiplier/exact.hpp"

namespace stokes {

/// Which error class stopped a sweep point.
enum class FailureKind { none, domain, convergence, precision, other };

struct StokesSample {
  mpq_class theta_over_pi;
  Complex s_exact;
  Complex s_approx;
  Real erf_law;
  std::optional<ApproxParams> params;
  FailureKind failure = FailureKind::none;
  std::string error;

  bool ok() const { return failure == FailureKind::none; }
};

inline StokesSample stokes_sample(const mpq_class& modulus, const mpq_class& theta_over_pi,
                                  const PrecisionContext& ctx) {
  const Bits p = ctx.working_bits();
  StokesSample s{theta_over_pi, Complex(p), Complex(p), Real(p), std::nullopt, FailureKind::none, {}};
  try {
    if (theta_over_pi <= mpq_class(1, 4) || theta_over_pi >= mpq_class(17, 20))
      throw DomainError("stokes_sweep: theta/pi must lie in (0.25, 0.85)");
    EvalPoint point(modulus, theta_over_pi);
    const long n_opt = optimal_truncation(modulus);
    s.s_exact = stokes_exact(point, ctx);
    s.params = approx_params(point, n_opt, ctx);
    s.s_approx = stokes_approx(point, n_opt, ctx);
    s.erf_law = erf_law(point, ctx);
  } catch (const DomainError& e) {
    s.failure = FailureKind::domain;
    s.error = e.what();
  } catch (const ConvergenceError& e) {
    s.failure = FailureKind::convergence;
    s.error = e.what();
  } catch (const PrecisionError& e) {
    s.failure = FailureKind::precision;
    s.error = e.what();
  } catch (const std::exception& e) {
    s.failure = FailureKind::other;
    s.error = e.what();
  }
  return s;
}

/// Exact and approximate multipliers over a theta/pi grid, in grid order.
/// Points run on up to `threads` workers (0: hardware concurrency); a failed
/// point is kept with its error.
inline std::vector<StokesSample> stokes_sweep(const mpq_class& modulus, const std::vector<mpq_class>& grid,
                                              const PrecisionContext& ctx, unsigned threads = 0) {
  std::vector<std::optional<StokesSample>> slots(grid.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, grid.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) slots[i] = stokes_sample(modulus, grid[i], ctx);
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<StokesSample> out;
  out.reserve(grid.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace stokes
