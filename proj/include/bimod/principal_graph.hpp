#pragma once

#include <map>
#include <string>
#include <vector>

#include "bimod/fusion_system.hpp"

namespace bimod {

enum class Side { plus, minus };

struct GraphEdge {
  std::string even;
  std::string odd;
  int mult = 1;

  bool operator==(const GraphEdge&) const = default;
};

/// Principal graph (plus side) and dual principal graph (minus side) of a
/// bimodule A-H-B, sharing the odd vertices.
///
/// Plus edges join x in V(A,A) to y in V(A,B) with multiplicity [y : x ⊗ H].
/// Minus edges join u in V(B,B) to y in V(A,B) with multiplicity [ȳ : u ⊗ H̄].
/// Even vertices are self-dual unless `even_duals` says otherwise.
struct PrincipalGraphPair {
  std::vector<std::string> even_plus;
  std::vector<std::string> even_minus;
  std::vector<std::string> odd;
  std::vector<GraphEdge> edges_plus;
  std::vector<GraphEdge> edges_minus;
  std::string base;
  std::string base_minus;
  std::map<std::string, std::string> even_duals;

  bool operator==(const PrincipalGraphPair&) const = default;
};

/// Perron–Frobenius data of one side of the pair.
struct DimensionVector {
  std::map<std::string, double> values;
  double norm = 0.0;
  long iterations = 0;

  double index() const { return norm * norm; }
};

inline constexpr double kDefaultPfTolerance = 1e-12;
inline constexpr long kPfIterationCap = 1'000'000;

/// Power iteration on A + I from the all-ones vector. Throws NoConvergence on a
/// disconnected graph or when the iteration cap is reached.
DimensionVector pf_dimensions(const PrincipalGraphPair& graphs, Side side,
                              double tolerance = kDefaultPfTolerance);

/// Dual of an odd vertex in generated systems.
std::string dual_odd_id(const std::string& odd);

/// Truncated fusion system whose objects are the vertices within `depth` of
/// the bases and whose table records every product with the generator and its
/// dual. Algebra labels are A (plus) and B (minus). Throws DepthZero.
FusionSystem generate_from_graph(const PrincipalGraphPair& graphs, int depth);

/// Reads the principal graph pair back off a system with a generator. Edge
/// multiplicities are those of x ⊗ H and u ⊗ H̄; support-only entries count 1.
PrincipalGraphPair principal_graph_of(const FusionSystem& system);

}  // namespace bimod
