#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

namespace denseflock {

enum class ModelKind { DI, CS, CSDelta, CSQ };

std::string_view to_string(ModelKind kind);
ModelKind model_from_string(std::string_view text);

/// The prefactor M(N, i, #N_i) in front of each interaction term.
///
/// Flat is the Cucker-Smale choice kappa/N, PerNeighbor the Motsch-Tadmor choice
/// kappa/#N_i (self counted when it belongs to the set), Constant is kappa.
struct NormalizationPolicy {
  enum class Kind { Flat, PerNeighbor, Constant };

  Kind kind = Kind::PerNeighbor;
  double kappa = 1.0;

  /// M for particle `i` of an `n`-particle ensemble with `set_size` neighbours.
  /// PerNeighbor with an empty set has no value and throws PreconditionError.
  double value(std::size_t n, std::size_t i, std::size_t set_size) const;

  /// Infimum / supremum of M over every feasible set size 1..n.
  double analytic_infimum(std::size_t n) const;
  double analytic_supremum(std::size_t n) const;

  bool operator==(const NormalizationPolicy&) const = default;
};

std::string_view to_string(NormalizationPolicy::Kind kind);
NormalizationPolicy::Kind policy_from_string(std::string_view text);

/// psi(s) = (1 + s)^(-alpha), the Cucker-Smale communication weight.
struct CommunicationWeight {
  double alpha = 0.5;

  double operator()(double s) const { return std::pow(1.0 + s, -alpha); }
  bool operator==(const CommunicationWeight&) const = default;
};

struct ModelParams {
  ModelKind model = ModelKind::DI;
  std::size_t n = 0;         // particle count
  std::size_t m = 3;         // density threshold (DI)
  double delta = 2.0;        // interaction radius (DI, CS_delta)
  std::size_t q = 0;         // neighbour count (CS_q)
  NormalizationPolicy policy{};
  CommunicationWeight weight{};
  std::size_t h_steps = 1;   // topology delay in integrator steps

  /// Throws ConfigError naming the field when an invariant fails.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

}  // namespace denseflock
