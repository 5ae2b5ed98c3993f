#include "denseflock/analytic.hpp"

#include "denseflock/errors.hpp"

#include <cmath>
#include <algorithm>
#include <functional>
#include <limits>

namespace denseflock {

ReducedSolution reduced_solution(std::size_t n, double v_c) {
  if (n < 2) throw InputError("reduced system needs N >= 2");
  const auto nn = static_cast<double>(n);
  ReducedSolution sol;
  sol.n = n;
  sol.v_c = v_c;
  // (N+1)^2 - 4 factored to avoid cancellation
  const double disc = std::sqrt((nn - 1.0) * (nn + 3.0));
  sol.r1 = (-(nn + 1.0) - disc) / 2.0;
  sol.r2 = 1.0 / sol.r1;
  const double gap = sol.r2 - sol.r1;
  sol.a = -v_c * (1.0 + sol.r2) / gap;
  sol.b = v_c * (1.0 + sol.r1) / gap;
  return sol;
}

double eval_v_b(const ReducedSolution& sol, double t) {
  return sol.v_c + sol.a * std::exp(sol.r1 * t) + sol.b * std::exp(sol.r2 * t);
}

double eval_v_b_minus_v_a(const ReducedSolution& sol, double t) {
  const auto nn = static_cast<double>(sol.n);
  const double tail = std::exp(-nn * t);
  return -(sol.a * (std::exp(sol.r1 * t) - tail) / (nn + sol.r1) + sol.b * (std::exp(sol.r2 * t) - tail) / (nn + sol.r2));
}

Derivatives eval_V_b_derivatives(const ReducedSolution& sol, double t) {
  const double e1 = sol.a * std::exp(sol.r1 * t);
  const double e2 = sol.b * std::exp(sol.r2 * t);
  return {e1 + e2, sol.r1 * e1 + sol.r2 * e2, sol.r1 * sol.r1 * e1 + sol.r2 * sol.r2 * e2};
}

double gap_growth_bc(const ReducedSolution& sol, double t) {
  return -(sol.a * std::expm1(sol.r1 * t) / sol.r1 + sol.b * std::expm1(sol.r2 * t) / sol.r2);
}

double gap_growth_ab(const ReducedSolution& sol, double t) {
  const auto nn = static_cast<double>(sol.n);
  const double tail = std::expm1(-nn * t) / nn;
  return -(sol.a / (nn + sol.r1) * (std::expm1(sol.r1 * t) / sol.r1 + tail) +
           sol.b / (nn + sol.r2) * (std::expm1(sol.r2 * t) / sol.r2 + tail));
}

double leading_order_V_b(const ReducedSolution& sol, double t) {
  return -sol.v_c * std::exp(-t / (static_cast<double>(sol.n) + 1.0));
}

namespace {

// Smallest T in [0, horizon] with f(T) >= 0 for nondecreasing f, by bisection.
std::optional<double> first_crossing(const std::function<double(double)>& f, double horizon) {
  if (f(0.0) >= 0.0) return 0.0;
  if (f(horizon) < 0.0) return std::nullopt;
  double lo = 0.0, hi = horizon;
  while (hi - lo > 1e-9 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) >= 0.0 ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

DetachTimes detach_times(const ReducedSolution& sol, double beta, double gamma, double delta, double horizon) {
  const double speed = std::abs(sol.v_c);
  const auto nn = static_cast<double>(sol.n);
  DetachTimes out;
  if (speed == 0.0) {
    out.approx_c = out.approx_b = std::numeric_limits<double>::infinity();
    return out;
  }
  out.approx_c = (delta - std::abs(gamma - beta)) / speed;
  out.approx_b = nn * (delta - std::abs(beta)) / speed;
  out.exact_c = first_crossing([&](double t) { return std::abs(gamma - beta) + std::abs(gap_growth_bc(sol, t)) - delta; },
                               horizon);
  out.exact_b = first_crossing([&](double t) { return std::abs(beta) + std::abs(gap_growth_ab(sol, t)) - delta; }, horizon);
  return out;
}

}  // namespace denseflock
