#pragma once

#include <span>
#include <string>
#include <vector>

#include "bimod/fusion_system.hpp"
#include "bimod/weight_solver.hpp"

namespace bimod {

/// A fusion system over three algebras A, B, C with generators in the (A,B)
/// and (B,C) sectors. The labels are read off the generators. A reducible
/// generator lists its further simple summands; repeats add multiplicity.
struct Bicategory3 {
  FusionSystem system;
  ObjectIndex gen_ab = 0;
  ObjectIndex gen_bc = 0;
  std::vector<ObjectIndex> summands_ab;
  std::vector<ObjectIndex> summands_bc;
};

ValidationReport validate(const Bicategory3& b);

/// gen plus its summands, as generator constituents.
std::vector<Constituent> generator_ab(const Bicategory3& b);
std::vector<Constituent> generator_bc(const Bicategory3& b);

inline constexpr int kDefaultClosureDepth = 6;

/// Closure of the units under ⊗s and ⊗s̄ for the generator constituents s,
/// words of length ≤ depth, with the induced table. The result is complete
/// when one more step adds no objects and nothing truncated was met.
FusionSystem generated_subsystem(const FusionSystem& system, std::span<const Constituent> generator, int depth);
FusionSystem generated_subsystem(const FusionSystem& system, ObjectIndex generator, int depth);

/// The system over {A, C} generated by the constituents of the product of
/// the two generators.
/// Throws TruncationExhausted when the closure runs into unknown products.
FusionSystem compose(const Bicategory3& b, int depth = kDefaultClosureDepth);

struct TheoremReport {
  TpcVerdict first;      // generated by gen_ab
  TpcVerdict second;     // generated by gen_bc
  TpcVerdict composite;  // generated by gen_ab ⊗ gen_bc
  bool hypothesis = false;
  bool conclusion = false;
  bool pass = true;
  /// Some verdict rests on a truncation the generator did not certify.
  bool provisional = false;
  std::string note;

  /// Throws TheoremViolation on FAIL.
  const TheoremReport& require_pass() const;
};

/// If both factors have TPC, so must the composite. Runs the three decisions
/// concurrently.
TheoremReport verify_tpc_closure(const Bicategory3& b, int depth = kDefaultClosureDepth);

/// Generated subsystem of the length-k cable g ⊗ ḡ ⊗ g ⊗ ... of the generator.
/// When the generator is an L-L bimodule the cable is the tensor power g^{⊗k}.
FusionSystem cable(const FusionSystem& system, int k, int depth = kDefaultClosureDepth);

}  // namespace bimod
