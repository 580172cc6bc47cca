#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bimod {

using ObjectIndex = std::size_t;

/// An isomorphism class of simple bimodules. The same class keeps its id at
/// every depth where it recurs.
struct FusionObject {
  std::string id;
  std::string left;
  std::string right;
  ObjectIndex dual = 0;
  bool is_unit = false;

  bool operator==(const FusionObject&) const = default;
};

/// One constituent of a tensor product or of the generator. An empty
/// multiplicity is the support-only marker: the constituent is known to occur,
/// its multiplicity is not.
struct Constituent {
  ObjectIndex object = 0;
  std::optional<int> mult;

  bool operator==(const Constituent&) const = default;
};

/// Known constituents of a ⊗ b, sorted by object index. `truncated` means the
/// full list runs past the object set and only the listed part is known.
struct TensorEntry {
  std::vector<Constituent> constituents;
  bool truncated = false;

  bool operator==(const TensorEntry&) const = default;
  bool contains(ObjectIndex c) const;
};

using TensorTable = std::map<std::pair<ObjectIndex, ObjectIndex>, TensorEntry>;

/// `certified` is set by generators that know the truncated table already has
/// the weight space of the infinite system it was cut from.
struct Completeness {
  bool truncated = false;
  int depth = 0;
  bool certified = false;

  static Completeness complete() { return {}; }
  static Completeness truncated_at(int depth, bool certified = false) {
    return {true, depth, certified};
  }
  bool operator==(const Completeness&) const = default;
};

class FusionSystem {
 public:
  FusionSystem() = default;
  FusionSystem(std::vector<std::string> algebras, std::vector<FusionObject> objects, TensorTable tensor,
               std::vector<Constituent> generator, Completeness completeness);

  const std::vector<std::string>& algebras() const { return algebras_; }
  const std::vector<FusionObject>& objects() const { return objects_; }
  std::size_t size() const { return objects_.size(); }
  const FusionObject& object(ObjectIndex i) const { return objects_.at(i); }
  const std::string& id(ObjectIndex i) const { return objects_.at(i).id; }
  ObjectIndex dual(ObjectIndex i) const { return objects_.at(i).dual; }

  std::optional<ObjectIndex> find(std::string_view id) const;
  /// Throws Error(InvalidArgument) for unknown ids.
  ObjectIndex index_of(std::string_view id) const;
  std::optional<ObjectIndex> unit_of(std::string_view algebra) const;

  const TensorTable& tensor() const { return tensor_; }
  const TensorEntry* entry(ObjectIndex a, ObjectIndex b) const;
  bool composable(ObjectIndex a, ObjectIndex b) const { return objects_.at(a).right == objects_.at(b).left; }

  /// Simple constituents of the generating bimodule; empty when unset.
  const std::vector<Constituent>& generator() const { return generator_; }
  bool has_generator() const { return !generator_.empty(); }

  const Completeness& completeness() const { return completeness_; }

  bool operator==(const FusionSystem&) const = default;

 private:
  std::vector<std::string> algebras_;
  std::vector<FusionObject> objects_;
  TensorTable tensor_;
  std::vector<Constituent> generator_;
  Completeness completeness_;
  std::map<std::string, ObjectIndex, std::less<>> index_;
};

/// Collects a system by string ids and resolves them in build(). Used by the
/// example generators and the document parser.
class FusionSystemBuilder {
 public:
  FusionSystemBuilder& algebra(std::string label);
  FusionSystemBuilder& object(std::string id, std::string left, std::string right, std::string dual,
                              bool is_unit = false);
  FusionSystemBuilder& product(std::string a, std::string b,
                               std::vector<std::pair<std::string, std::optional<int>>> constituents,
                               bool truncated = false);
  FusionSystemBuilder& generator(std::string id, std::optional<int> mult = 1);
  FusionSystemBuilder& completeness(Completeness c);

  bool has_object(std::string_view id) const;

  /// Throws Error(Schema) naming the offending id on duplicates or dangling
  /// references.
  FusionSystem build() const;

 private:
  struct PendingObject {
    std::string id, left, right, dual;
    bool is_unit;
  };
  struct PendingProduct {
    std::string a, b;
    std::vector<std::pair<std::string, std::optional<int>>> constituents;
    bool truncated;
  };
  std::vector<std::string> algebras_;
  std::vector<PendingObject> objects_;
  std::set<std::string, std::less<>> ids_;
  std::vector<PendingProduct> products_;
  std::vector<std::pair<std::string, std::optional<int>>> generator_;
  Completeness completeness_;
};

struct Violation {
  std::string rule;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every structural invariant of the system. Associativity is checked
/// only on triples whose table entries are numeric and fully known.
ValidationReport validate(const FusionSystem& system);

enum class Tri { no, yes, unknown };
const char* to_string(Tri t) noexcept;

/// Constituent set of a composable word, expanded left to right through the
/// table. `truncated` is set when some product on the way was not fully known.
struct WordExpansion {
  std::set<ObjectIndex> constituents;
  bool truncated = false;
};

/// Throws Error(IncomposableWord) when adjacent algebra labels mismatch.
WordExpansion expand_word(const FusionSystem& system, std::span<const ObjectIndex> word);

/// Whether the two tensor words share a simple constituent.
Tri hom_nonzero(const FusionSystem& system, std::span<const ObjectIndex> word1,
                std::span<const ObjectIndex> word2);

/// Multiplicities of x ⊗ H where H is the generator with its multiplicities.
/// An empty optional marks a support-only contribution.
struct GeneratorProduct {
  std::map<ObjectIndex, std::optional<long long>> constituents;
  bool truncated = false;
  bool missing = false;
};
GeneratorProduct generator_product(const FusionSystem& system, ObjectIndex x, bool use_dual);

std::vector<ObjectIndex> objects_in_sector(const FusionSystem& system, std::string_view left,
                                           std::string_view right);

}  // namespace bimod
