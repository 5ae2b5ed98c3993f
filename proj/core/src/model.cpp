#include "denseflock/model.hpp"

#include "denseflock/errors.hpp"

#include <string>

namespace denseflock {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::DI: return "di";
    case ModelKind::CS: return "cs";
    case ModelKind::CSDelta: return "cs_delta";
    case ModelKind::CSQ: return "cs_q";
  }
  return "?";
}

ModelKind model_from_string(std::string_view text) {
  if (text == "di") return ModelKind::DI;
  if (text == "cs") return ModelKind::CS;
  if (text == "cs_delta") return ModelKind::CSDelta;
  if (text == "cs_q") return ModelKind::CSQ;
  throw ConfigError("unknown model '" + std::string(text) + "' (expected di|cs|cs_delta|cs_q)", "model");
}

std::string_view to_string(NormalizationPolicy::Kind kind) {
  switch (kind) {
    case NormalizationPolicy::Kind::Flat: return "flat";
    case NormalizationPolicy::Kind::PerNeighbor: return "per_neighbor";
    case NormalizationPolicy::Kind::Constant: return "constant";
  }
  return "?";
}

NormalizationPolicy::Kind policy_from_string(std::string_view text) {
  if (text == "flat") return NormalizationPolicy::Kind::Flat;
  if (text == "per_neighbor") return NormalizationPolicy::Kind::PerNeighbor;
  if (text == "constant") return NormalizationPolicy::Kind::Constant;
  throw ConfigError("unknown m_policy '" + std::string(text) + "' (expected flat|per_neighbor|constant)", "m_policy");
}

double NormalizationPolicy::value(std::size_t n, std::size_t /*i*/, std::size_t set_size) const {
  switch (kind) {
    case Kind::Flat: return kappa / static_cast<double>(n);
    case Kind::PerNeighbor:
      if (set_size == 0) throw PreconditionError("per-neighbour normalisation queried for an empty neighbour set");
      return kappa / static_cast<double>(set_size);
    case Kind::Constant: return kappa;
  }
  return kappa;
}

double NormalizationPolicy::analytic_infimum(std::size_t n) const {
  switch (kind) {
    case Kind::Flat:
    case Kind::PerNeighbor: return kappa / static_cast<double>(n);
    case Kind::Constant: return kappa;
  }
  return kappa;
}

double NormalizationPolicy::analytic_supremum(std::size_t n) const {
  switch (kind) {
    case Kind::Flat: return kappa / static_cast<double>(n);
    case Kind::PerNeighbor:
    case Kind::Constant: return kappa;
  }
  return kappa;
}

void ModelParams::validate() const {
  if (n < 1) throw ConfigError("particle count must be at least 1", "n");
  if (!(policy.kappa > 0.0) || !std::isfinite(policy.kappa)) throw ConfigError("kappa must be positive", "kappa");
  if (!(weight.alpha >= 0.0) || !std::isfinite(weight.alpha)) throw ConfigError("alpha must be nonnegative", "alpha");
  if (h_steps < 1) throw ConfigError("h_steps must be at least 1", "h_steps");
  if (model == ModelKind::DI || model == ModelKind::CSDelta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw ConfigError("delta must be positive", "delta");
  }
  if (model == ModelKind::DI && m < 1) throw ConfigError("m must be at least 1", "m");
  if (model == ModelKind::CSQ && (q < 1 || q + 1 > n)) {
    throw ConfigError("q must lie in [1, N-1] (q=" + std::to_string(q) + ", N=" + std::to_string(n) + ")", "q");
  }
}

}  // namespace denseflock
