#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bimod/composition.hpp"
#include "bimod/fusion_system.hpp"
#include "bimod/perturbation.hpp"
#include "bimod/principal_graph.hpp"

namespace bimod {

/// Multiplication table of a finite group on elements 0..n-1.
struct GroupTable {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> mul;

  std::size_t order() const { return names.size(); }
};

/// Throws NotAGroup naming the failed axiom.
void check_group(const GroupTable& g);
std::size_t identity_of(const GroupTable& g);
std::size_t inverse_of(const GroupTable& g, std::size_t x);

GroupTable cyclic_group(std::size_t n);
/// S_n on {1..n} acting on the left; elements named in cycle notation.
GroupTable symmetric_group(std::size_t n);
GroupTable direct_product(const GroupTable& a, const GroupTable& b);

/// Subgroup generated by the named elements.
std::vector<std::size_t> subgroup_generated(const GroupTable& g, const std::vector<std::string>& generators);
std::size_t element_named(const GroupTable& g, const std::string& name);

/// a^n for |n| ≤ range, a^m ⊗ a^n = a^{m+n}, truncated past the range.
/// Objects are ordered 1, a^1, a^-1, a^2, a^-2, ...
FusionSystem make_integer_fusion(int range);

/// One object per element, dual = inverse, complete table.
FusionSystem make_group_fusion(const GroupTable& group);
FusionSystem make_cyclic_fusion(std::size_t n);

/// Words in a (= α) and b (= β = ᾱ) of length ≤ max_length; the dual of a
/// word is its reverse with letters swapped.
FusionSystem make_free_monoid_fusion(int max_length);
std::string free_monoid_dual(const std::string& word);

struct TlPath {
  PrincipalGraphPair graphs;
  FusionSystem system;
  DimensionData dims;
};

/// The A_n subfactor: principal graph A_n, the complete bicategory of the
/// truncated SU(2) fusion rules at level n-1, and the Perron–Frobenius dims of
/// its generator.
TlPath make_tl_path(int n);

/// Support-only double-coset bicategory over three algebras A, B, C attached
/// to subgroups S_A, S_B, S_C of G. Sector (X,Y) holds S_X\G/S_Y.
Bicategory3 make_double_coset(const GroupTable& group, const std::vector<std::size_t>& sub_a,
                              const std::vector<std::size_t>& sub_b, const std::vector<std::size_t>& sub_c);
/// The A-B-A instance (S_A, S_B, S_C) = (H, K, H).
Bicategory3 make_double_coset(const GroupTable& group, const std::vector<std::size_t>& h,
                              const std::vector<std::size_t>& k);

/// Z/n1 and Z/n2 glued over a middle algebra: G = Z/n1 × Z/n2 with
/// (S_A, S_B, S_C) = (Z/n1 × 0, {e}, 0 × Z/n2).
Bicategory3 make_glued_cyclic(std::size_t n1, std::size_t n2);

enum class ExampleKind { integer_fusion, cyclic_group, finite_group, free_monoid, tl_path, double_coset, glued_cyclic };

const char* to_string(ExampleKind kind) noexcept;
std::optional<ExampleKind> example_kind_from_string(const std::string& name);

/// Kind plus its integer/string parameters, as echoed into document metadata.
struct ExampleDescriptor {
  ExampleKind kind = ExampleKind::integer_fusion;
  std::map<std::string, std::string> parameters;

  bool operator==(const ExampleDescriptor&) const = default;
};

struct ExampleOutput {
  FusionSystem system;
  std::optional<DimensionData> dims;
  std::optional<std::pair<ObjectIndex, ObjectIndex>> bicategory_generators;
};

/// Builds any example from its descriptor, enforcing the desk-scale bounds.
/// Throws InvalidArgument on unknown or out-of-range parameters.
ExampleOutput make_example(const ExampleDescriptor& descriptor);

}  // namespace bimod
