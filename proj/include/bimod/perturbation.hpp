#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bimod/fusion_system.hpp"
#include "bimod/weight_solver.hpp"

namespace bimod {

/// Left/right dimensions of each depth-1 constituent s of the generator.
struct ConstituentDims {
  std::string id;
  double left = 1.0;
  double right = 1.0;
  int mult = 1;

  bool operator==(const ConstituentDims&) const = default;
};

struct DimensionData {
  std::vector<ConstituentDims> constituents;

  bool operator==(const DimensionData&) const = default;
};

/// Loop values of the two oriented closed loops.
struct Modulus {
  double delta_minus = 1.0;
  double delta_plus = 1.0;

  double index() const { return delta_minus * delta_plus; }
};

inline constexpr double kSphericalTolerance = 1e-9;

/// δ₋ = Σ mult·left, δ₊ = Σ mult·right. Throws InvalidArgument when empty.
Modulus modulus_of(const DimensionData& dims);

/// right' = w·right, left' = left/w. This is the single place where the
/// direction of a perturbation is fixed.
DimensionData perturb_dims(const DimensionData& dims, const WeightFunction& w);

/// (δ₋/λ, λ·δ₊). Throws NonPositiveScalar.
Modulus scalar_perturb(const Modulus& m, double lambda);

struct Normalization {
  double lambda = 1.0;
  Modulus unimodular;
};
Normalization normalize(const Modulus& m);

bool is_spherical(const DimensionData& dims, double tolerance = kSphericalTolerance);

/// w(s) = √(left/right) on the constituents. With a system attached the
/// candidate is matched against the full weight space and returned on every
/// object; NotAWeight if no weight function restricts to it.
WeightFunction sphericalizing_weight(const DimensionData& dims, const FusionSystem* system = nullptr);

/// (Σ mult·√(left·right))², the lowest index in the perturbation class.
double min_index(const DimensionData& dims);

struct PerturbationReport {
  DimensionData perturbed;
  Modulus modulus;
  double index = 0.0;
  bool spherical = false;
  /// Unset when no weight function of the attached system restricts to it.
  std::optional<WeightFunction> sphericalizing;
  double min_index = 0.0;
};

PerturbationReport perturbation_report(const DimensionData& dims, const WeightFunction& w,
                                       const FusionSystem* system = nullptr);

/// Constant weight λ on every constituent.
WeightFunction scalar_weight(const DimensionData& dims, double lambda);

/// Extremal dims from Perron–Frobenius data of the system's principal graph.
DimensionData dims_from_graph(const FusionSystem& system);

}  // namespace bimod
