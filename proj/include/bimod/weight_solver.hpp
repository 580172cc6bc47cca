#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bimod/exact.hpp"
#include "bimod/fusion_system.hpp"

namespace bimod {

inline constexpr std::size_t kMaxObjects = 10'000;
inline constexpr std::size_t kMaxConstraintRows = 200'000;

/// Which objects a weight function lives on: the whole bicategory, or the
/// tensor category of L-L bimodules.
struct Scope {
  enum class Kind { full, even_only };
  Kind kind = Kind::full;
  std::string algebra;

  static Scope full() { return {}; }
  static Scope even_only(std::string algebra) { return {Kind::even_only, std::move(algebra)}; }
  bool contains(const FusionObject& v) const {
    return kind == Kind::full || (v.left == algebra && v.right == algebra);
  }
  std::string describe() const { return kind == Kind::full ? "full" : "even-only(" + algebra + ")"; }
  bool operator==(const Scope&) const = default;
};

/// One log-linear relation x_a + x_b - x_c = 0 with units removed and equal
/// variables merged. `terms` holds (variable, coefficient), sorted.
struct ConstraintRow {
  std::vector<std::pair<std::size_t, int>> terms;
  ObjectIndex a = 0, b = 0, c = 0;
};

struct SkippedEntry {
  ObjectIndex a = 0, b = 0;
  bool missing = false;  // no entry at all, as opposed to a truncated one
};

struct LogConstraintSystem {
  Scope scope;
  std::vector<ObjectIndex> variables;
  std::vector<ConstraintRow> rows;
  std::vector<SkippedEntry> skipped;

  std::optional<std::size_t> variable_of(ObjectIndex v) const;
};

/// Rows come from every known containment c ≤ a ⊗ b inside the scope, known
/// constituents of truncated entries included, plus x_v + x_v̄ = 0 from the
/// unit inside v ⊗ v̄. Throws LimitExceeded past the desk-scale guards.
LogConstraintSystem assemble_constraints(const FusionSystem& system, const Scope& scope);

/// Integer row space kept in reduced echelon form by fraction-free updates.
class IntegerEchelon {
 public:
  explicit IntegerEchelon(std::size_t columns) : columns_(columns) {}

  /// Returns false when the row was already in the span.
  bool insert(IntVector row);
  std::size_t rank() const { return rows_.size(); }
  std::size_t columns() const { return columns_; }

  /// Primitive integer basis of the right kernel: one vector per free column,
  /// leading entry positive, sorted lexicographically.
  std::vector<IntVector> kernel() const;

 private:
  std::size_t columns_;
  std::vector<IntVector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Exact basis of the log-solution space of the tensor homomorphism property.
struct WeightSpaceBasis {
  Scope scope;
  std::vector<ObjectIndex> variables;
  std::vector<IntVector> basis;
  std::size_t rows = 0;
  std::vector<SkippedEntry> skipped;

  std::size_t dimension() const { return basis.size(); }
  /// Exponent of object v in basis vector i; units and out-of-scope objects
  /// give 0.
  BigInt exponent(std::size_t i, ObjectIndex v) const;
};

WeightSpaceBasis solve_weight_space(const FusionSystem& system, const Scope& scope);

/// Exact residual check: every row vanishes on every basis vector.
bool satisfies_all_rows(const LogConstraintSystem& constraints, const IntVector& x);

/// w(v) = Π_i λ_i^{e_i(v)} with exact integer exponents.
struct ExactLog {
  std::vector<double> parameters;
  std::map<std::string, IntVector> exponents;
};

struct WeightFunction {
  std::map<std::string, double> values;
  std::optional<ExactLog> exact_log;

  /// Throws MissingWeight.
  double at(const std::string& id) const;
  bool covers(const std::string& id) const { return values.contains(id); }
};

WeightFunction trivial_weight(const FusionSystem& system);

/// Weight function exp(Σ_i log λ_i · basis_i) over every object of the system.
WeightFunction weight_from_basis(const FusionSystem& system, const WeightSpaceBasis& basis,
                                 std::span<const double> parameters);

/// Largest |log w(a) + log w(b) - log w(c)| over the rows of the scope, plus
/// the unit and duality conditions. Exact weights are checked exactly and
/// report 0 or +inf.
double weight_defect(const FusionSystem& system, const WeightFunction& w, const Scope& scope);

struct TpcVerdict {
  bool tpc = false;
  /// A negative verdict that skipped constraints could still overturn.
  bool provisional = false;
  /// Truncated and not certified: "trivial at this depth" rather than proved.
  bool depth_conditional = false;
  std::map<std::string, std::size_t> even_dimensions;
  std::size_t skipped = 0;
  std::optional<WeightSpaceBasis> witness_space;
  std::optional<IntVector> witness;

  /// Throws AmbiguousTruncation when provisional.
  const TpcVerdict& definite() const;
};

/// Decides TPC from the even-only weight spaces of both algebras of the
/// generator's sector. Throws Validation when complete data disagree.
TpcVerdict is_tpc(const FusionSystem& system);

/// Extends a weight function on the L-L objects to the whole system, taking
/// the value odd_scale on the leading generator constituent. Throws
/// NoExtension or MissingWeight.
WeightFunction extend_even_weight(const FusionSystem& system, const WeightFunction& even_weight,
                                  const std::string& algebra, double odd_scale);

enum class Sign { plus, minus };

/// Π_i w(s_i)^{±1}, alternating and starting with +1 for Sign::plus, -1 for
/// Sign::minus.
double weight_of_word(const WeightFunction& w, Sign start, std::span<const std::string> word);

/// The tensor word s1 ⊗ s̄2 ⊗ s3 ⊗ ... (plus) or s̄1 ⊗ s2 ⊗ ... (minus).
std::vector<ObjectIndex> alternating_word(const FusionSystem& system, Sign start,
                                          std::span<const ObjectIndex> word);

/// Coefficients of the central positive element at level (sign, depth).
struct CentralElementCoefficients {
  Sign sign = Sign::plus;
  int depth = 0;
  std::map<std::string, double> coeffs;
  std::optional<std::map<std::string, IntVector>> exact_exponents;
  std::size_t checks = 0;
  bool truncated = false;
};

/// Walks the alternating levels up to `depth` and verifies
/// coeff(v3) = coeff(v1)·w(v2) for each v3 ≤ v1 ⊗ v2 on the way. Throws
/// InconsistentWeight, MissingWeight, or TruncationExhausted.
CentralElementCoefficients central_element_coeffs(const FusionSystem& system, const WeightFunction& w,
                                                  Sign sign, int depth);

}  // namespace bimod
