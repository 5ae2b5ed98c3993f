#pragma once

#include <cstddef>
#include <optional>

namespace denseflock {

/// Exact solution of the reduced cluster/edge/singleton system with M = 1:
///
///   v_a' = v_b - v_a
///   v_b' = (N - 1)(v_a - v_b) + (v_c - v_b),   v_a(0) = v_b(0) = 0, v_c constant.
///
/// V_b = v_b - v_c solves V'' + (N + 1) V' + V = 0 with V(0) = -v_c, V'(0) = v_c, so
/// V_b(t) = A e^{r1 t} + B e^{r2 t} with r1 < r2 < 0 the roots of r^2 + (N + 1) r + 1.
struct ReducedSolution {
  std::size_t n = 0;  // cluster size N (a particles plus b)
  double v_c = 0.0;
  double r1 = 0.0;  // fast root, ~ -(N + 1)
  double r2 = 0.0;  // slow root, ~ -1 / (N + 1)
  double a = 0.0;   // coefficient of e^{r1 t}
  double b = 0.0;   // coefficient of e^{r2 t}
};

/// Requires N >= 2. The slow root is taken as 1 / r1 so it stays accurate for large N.
ReducedSolution reduced_solution(std::size_t n, double v_c);

double eval_v_b(const ReducedSolution& sol, double t);
double eval_v_b_minus_v_a(const ReducedSolution& sol, double t);
inline double eval_v_a(const ReducedSolution& sol, double t) { return eval_v_b(sol, t) - eval_v_b_minus_v_a(sol, t); }

/// V_b and its first two derivatives, analytically.
struct Derivatives {
  double value, first, second;
};
Derivatives eval_V_b_derivatives(const ReducedSolution& sol, double t);

/// int_0^t (v_c - v_b) ds: how far c has pulled ahead of b.
double gap_growth_bc(const ReducedSolution& sol, double t);
/// int_0^t (v_b - v_a) ds: how far b has drifted from a.
double gap_growth_ab(const ReducedSolution& sol, double t);

/// Leading-order large-N profile V_b(t) ~ -v_c e^{-t / (N + 1)}.
double leading_order_V_b(const ReducedSolution& sol, double t);

struct DetachTimes {
  double approx_c = 0.0;  // (delta - (gamma - beta)) / |v_c|
  double approx_b = 0.0;  // N (delta - beta) / |v_c|
  std::optional<double> exact_c;  // root of |gamma - beta| + gap_growth_bc(T) = delta
  std::optional<double> exact_b;  // root of |beta| + gap_growth_ab(T) = delta
};

/// Detachment times of c from b and of b from a, while the reduced topology holds.
/// Exact roots are bracketed on [0, horizon] and bisected to 1e-9; absent when none exists.
DetachTimes detach_times(const ReducedSolution& sol, double beta, double gamma, double delta,
                         double horizon = 1e6);

}  // namespace denseflock
