#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "bimod/composition.hpp"
#include "bimod/examples.hpp"
#include "bimod/fusion_system.hpp"
#include "bimod/perturbation.hpp"
#include "bimod/principal_graph.hpp"
#include "bimod/weight_solver.hpp"

namespace bimod {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct BicategoryIds {
  std::string gen_ab, gen_bc;
  std::vector<std::string> summands_ab, summands_bc;

  bool operator==(const BicategoryIds&) const = default;
};

/// Everything a system file can carry. The system is built but not validated.
struct SystemDocument {
  FusionSystem system;
  std::optional<DimensionData> dims;
  std::optional<BicategoryIds> bicategory;
  std::optional<ExampleDescriptor> metadata;

  bool operator==(const SystemDocument&) const = default;
};

/// Sorted keys, two-space indent, LF, 15 significant digits, trailing newline.
std::string canonical_dump(const Json& value);

/// Throws Schema with a line:column position or a JSON-pointer path.
Json parse_json_text(const std::string& text);

SystemDocument parse_system(const std::string& text);
SystemDocument system_document_from_json(const Json& doc);
Json to_json(const SystemDocument& doc);
std::string serialize_system(const SystemDocument& doc);

/// Parses and validates; throws Validation listing every violation.
SystemDocument load_system(const std::string& text);

/// Bicategory3 from a document carrying a bicategory field.
Bicategory3 bicategory_of(const SystemDocument& doc);

SystemDocument document_of(const ExampleOutput& example, const ExampleDescriptor& descriptor);

/// {"schema_version": 1, "weight": {"id": value, ...}}
WeightFunction parse_weight(const std::string& text);

// Result fragments.
Json to_json(const Completeness& c);
Json to_json(const DimensionData& dims);
Json to_json(const Modulus& m);
Json to_json(const WeightFunction& w);
Json to_json(const ValidationReport& report);
Json to_json(const FusionSystem& system, const WeightSpaceBasis& basis);
Json to_json(const FusionSystem& system, const TpcVerdict& verdict);
Json to_json(const PrincipalGraphPair& graphs);
Json to_json(const DimensionVector& dims);
Json to_json(const PerturbationReport& report);
Json to_json(const TheoremReport& report);
Json exact_integer(const BigInt& x);

/// Reads a file, or standard input for "-". Throws Schema when unreadable.
std::string read_input(const std::string& path, std::istream& stdin_stream);

}  // namespace bimod
