#include "bimod/perturbation.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "bimod/error.hpp"
#include "bimod/principal_graph.hpp"

namespace bimod {

Modulus modulus_of(const DimensionData& dims) {
  if (dims.constituents.empty()) throw Error(ErrorKind::InvalidArgument, "no constituents");
  Modulus m{0.0, 0.0};
  for (const auto& s : dims.constituents) {
    m.delta_minus += s.mult * s.left;
    m.delta_plus += s.mult * s.right;
  }
  return m;
}

DimensionData perturb_dims(const DimensionData& dims, const WeightFunction& w) {
  DimensionData out = dims;
  for (auto& s : out.constituents) {
    const double ws = w.at(s.id);
    s.right *= ws;
    s.left /= ws;
  }
  return out;
}

Modulus scalar_perturb(const Modulus& m, double lambda) {
  if (!(lambda > 0)) throw Error(ErrorKind::NonPositiveScalar, "scalar must be positive");
  return {m.delta_minus / lambda, m.delta_plus * lambda};
}

Normalization normalize(const Modulus& m) {
  const double root = std::sqrt(m.delta_minus * m.delta_plus);
  return {std::sqrt(m.delta_minus / m.delta_plus), {root, root}};
}

// Compared after normalization: left/delta_minus against right/delta_plus.
bool is_spherical(const DimensionData& dims, double tolerance) {
  const Modulus m = modulus_of(dims);
  for (const auto& s : dims.constituents) {
    const double l = s.left / m.delta_minus, r = s.right / m.delta_plus;
    if (std::abs(l - r) > tolerance * std::max(l, r)) return false;
  }
  return true;
}

WeightFunction scalar_weight(const DimensionData& dims, double lambda) {
  if (!(lambda > 0)) throw Error(ErrorKind::NonPositiveScalar, "scalar must be positive");
  WeightFunction w;
  for (const auto& s : dims.constituents) w.values[s.id] = lambda;
  return w;
}

WeightFunction sphericalizing_weight(const DimensionData& dims, const FusionSystem* system) {
  WeightFunction candidate;
  for (const auto& s : dims.constituents) {
    if (!(s.left > 0) || !(s.right > 0))
      throw Error(ErrorKind::InvalidArgument, "dimensions of '" + s.id + "' must be positive");
    candidate.values[s.id] = std::sqrt(s.left / s.right);
  }
  if (!system) return candidate;

  const WeightSpaceBasis full = solve_weight_space(*system, Scope::full());
  const std::size_t dim = full.dimension();
  const auto rows = static_cast<Eigen::Index>(dims.constituents.size());
  const auto cols = static_cast<Eigen::Index>(dim);
  Eigen::VectorXd t = Eigen::VectorXd::Zero(cols);
  Eigen::MatrixXd C(rows, cols);
  Eigen::VectorXd r(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& s = dims.constituents[static_cast<std::size_t>(i)];
    const ObjectIndex v = system->index_of(s.id);
    for (Eigen::Index j = 0; j < cols; ++j)
      C(i, j) = full.exponent(static_cast<std::size_t>(j), v).convert_to<double>();
    r(i) = std::log(candidate.values.at(s.id));
  }
  if (dim > 0) t = C.completeOrthogonalDecomposition().solve(r);
  const Eigen::VectorXd fit = C * t;
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (std::abs(fit(i) - r(i)) > kSphericalTolerance * std::max(1.0, std::abs(r(i))))
      throw Error(ErrorKind::NotAWeight, "√(left/right) at '" + dims.constituents[static_cast<std::size_t>(i)].id +
                                             "' is not the restriction of a weight function");
  }
  WeightFunction out;
  for (ObjectIndex v = 0; v < system->size(); ++v) {
    double log_w = 0.0;
    for (Eigen::Index j = 0; j < cols; ++j) log_w += full.exponent(static_cast<std::size_t>(j), v).convert_to<double>() * t(j);
    out.values[system->id(v)] = std::exp(log_w);
  }
  return out;
}

double min_index(const DimensionData& dims) {
  double sum = 0.0;
  for (const auto& s : dims.constituents) sum += s.mult * std::sqrt(s.left * s.right);
  return sum * sum;
}

PerturbationReport perturbation_report(const DimensionData& dims, const WeightFunction& w,
                                       const FusionSystem* system) {
  PerturbationReport out;
  out.perturbed = perturb_dims(dims, w);
  out.modulus = modulus_of(out.perturbed);
  out.index = out.modulus.index();
  out.spherical = is_spherical(out.perturbed);
  try {
    out.sphericalizing = sphericalizing_weight(out.perturbed, system);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotAWeight) throw;
  }
  out.min_index = min_index(dims);
  return out;
}

DimensionData dims_from_graph(const FusionSystem& system) {
  const PrincipalGraphPair graphs = principal_graph_of(system);
  const DimensionVector plus = pf_dimensions(graphs, Side::plus);
  const bool folded = system.object(system.generator().front().object).left ==
                      system.object(system.generator().front().object).right;
  DimensionData out;
  for (const auto& g : system.generator()) {
    const std::string vertex = folded ? system.id(g.object) + "@odd" : system.id(g.object);
    const double d = plus.values.at(vertex);
    out.constituents.push_back({system.id(g.object), d, d, g.mult.value_or(1)});
  }
  return out;
}

}  // namespace bimod
