#include "bimod/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

#include "bimod/error.hpp"

namespace bimod {

// ---------------------------------------------------------------------------
// Canonical text

namespace {

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

void write(const Json& v, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        write(it.value(), indent + 2, out);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& x : v) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write(x, indent + 2, out);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    default:
      out += v.dump();
  }
}

}  // namespace

std::string canonical_dump(const Json& value) {
  std::string out;
  write(value, 0, out);
  out += "\n";
  return out;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
    throw Error(ErrorKind::Schema, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }
}

// ---------------------------------------------------------------------------
// Strict reading

namespace {

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char ch : key) {
    if (ch == '~')
      out += "~0";
    else if (ch == '/')
      out += "~1";
    else
      out += ch;
  }
  return out;
}

class Node {
 public:
  Node(const Json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const Json& json() const { return j_; }
  std::string where() const { return path_.empty() ? "/" : path_; }

  [[noreturn]] void fail(const std::string& msg) const { throw Error(ErrorKind::Schema, where() + ": " + msg); }

  const Node& object(std::initializer_list<const char*> allowed) const {
    if (!j_.is_object()) fail("expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!ok.contains(it.key())) Node(it.value(), path_ + "/" + escape_pointer(it.key())).fail("unknown field");
    return *this;
  }

  bool has(const char* key) const { return j_.contains(key); }

  Node at(const std::string& key) const {
    if (!j_.contains(key)) fail("missing field '" + key + "'");
    return {j_.at(key), path_ + "/" + escape_pointer(key)};
  }

  std::vector<Node> array() const {
    if (!j_.is_array()) fail("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < j_.size(); ++i) out.emplace_back(j_[i], path_ + "/" + std::to_string(i));
    return out;
  }

  std::vector<std::pair<std::string, Node>> members() const {
    if (!j_.is_object()) fail("expected an object");
    std::vector<std::pair<std::string, Node>> out;
    for (auto it = j_.begin(); it != j_.end(); ++it)
      out.emplace_back(it.key(), Node(it.value(), path_ + "/" + escape_pointer(it.key())));
    return out;
  }

  std::string str() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }

  bool boolean() const {
    if (!j_.is_boolean()) fail("expected true or false");
    return j_.get<bool>();
  }

  long long integer() const {
    if (!j_.is_number_integer()) fail("expected an integer");
    return j_.get<long long>();
  }

  int positive_int() const {
    const long long v = integer();
    if (v < 1 || v > std::numeric_limits<int>::max()) fail("expected a positive integer");
    return static_cast<int>(v);
  }

  double number() const {
    if (!j_.is_number()) fail("expected a number");
    return j_.get<double>();
  }

  std::optional<int> multiplicity() const {
    if (j_.is_string()) {
      if (j_.get<std::string>() != "?") fail("multiplicity must be a positive integer or \"?\"");
      return std::nullopt;
    }
    return positive_int();
  }

 private:
  const Json& j_;
  std::string path_;
};

Json mult_json(const std::optional<int>& m) { return m ? Json(*m) : Json("?"); }

}  // namespace

Json exact_integer(const BigInt& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return Json(x.convert_to<long long>());
  return Json(x.str());
}

// ---------------------------------------------------------------------------
// System documents

SystemDocument system_document_from_json(const Json& json) {
  const Node root(json, "");
  root.object({"schema_version", "algebras", "objects", "tensor", "generator", "completeness", "dims", "bicategory",
               "metadata"});
  const Node version = root.at("schema_version");
  if (version.integer() != kSchemaVersion) version.fail("unsupported schema version");

  FusionSystemBuilder b;
  for (const auto& a : root.at("algebras").array()) b.algebra(a.str());
  for (const auto& o : root.at("objects").array()) {
    o.object({"id", "left", "right", "dual", "unit"});
    b.object(o.at("id").str(), o.at("left").str(), o.at("right").str(), o.at("dual").str(),
             o.has("unit") && o.at("unit").boolean());
  }
  for (const auto& t : root.at("tensor").array()) {
    t.object({"a", "b", "contains", "truncated"});
    std::vector<std::pair<std::string, std::optional<int>>> list;
    for (const auto& c : t.at("contains").array()) {
      c.object({"c", "mult"});
      list.emplace_back(c.at("c").str(), c.at("mult").multiplicity());
    }
    b.product(t.at("a").str(), t.at("b").str(), std::move(list), t.has("truncated") && t.at("truncated").boolean());
  }
  if (root.has("generator")) {
    for (const auto& g : root.at("generator").array()) {
      g.object({"id", "mult"});
      b.generator(g.at("id").str(), g.has("mult") ? g.at("mult").multiplicity() : std::optional<int>(1));
    }
  }
  if (root.has("completeness")) {
    const Node c = root.at("completeness");
    c.object({"kind", "depth", "certified"});
    const std::string kind = c.at("kind").str();
    if (kind == "complete") {
      if (c.has("depth") || c.has("certified")) c.fail("a complete system takes no depth or certification");
      b.completeness(Completeness::complete());
    } else if (kind == "truncated") {
      const long long depth = c.at("depth").integer();
      if (depth < 0 || depth > std::numeric_limits<int>::max()) c.at("depth").fail("depth out of range");
      b.completeness(Completeness::truncated_at(static_cast<int>(depth), c.has("certified") && c.at("certified").boolean()));
    } else {
      c.at("kind").fail("expected \"complete\" or \"truncated\"");
    }
  }

  SystemDocument doc;
  doc.system = b.build();
  if (root.has("dims")) {
    DimensionData dims;
    for (const auto& d : root.at("dims").array()) {
      d.object({"id", "left", "right", "mult"});
      ConstituentDims c;
      c.id = d.at("id").str();
      if (!doc.system.find(c.id)) d.at("id").fail("references unknown object id '" + c.id + "'");
      c.left = d.at("left").number();
      c.right = d.at("right").number();
      if (!(c.left > 0) || !(c.right > 0)) d.fail("dimensions must be positive");
      c.mult = d.has("mult") ? d.at("mult").positive_int() : 1;
      dims.constituents.push_back(std::move(c));
    }
    doc.dims = std::move(dims);
  }
  if (root.has("bicategory")) {
    const Node bc = root.at("bicategory");
    bc.object({"gen_ab", "gen_bc", "summands_ab", "summands_bc"});
    auto id_at = [&](const Node& n) {
      std::string id = n.str();
      if (!doc.system.find(id)) n.fail("references unknown object id '" + id + "'");
      return id;
    };
    BicategoryIds ids{id_at(bc.at("gen_ab")), id_at(bc.at("gen_bc")), {}, {}};
    if (bc.has("summands_ab"))
      for (const auto& n : bc.at("summands_ab").array()) ids.summands_ab.push_back(id_at(n));
    if (bc.has("summands_bc"))
      for (const auto& n : bc.at("summands_bc").array()) ids.summands_bc.push_back(id_at(n));
    doc.bicategory = std::move(ids);
  }
  if (root.has("metadata")) {
    const Node m = root.at("metadata");
    m.object({"example", "parameters"});
    ExampleDescriptor d;
    const std::string kind = m.at("example").str();
    auto k = example_kind_from_string(kind);
    if (!k) m.at("example").fail("unknown example kind '" + kind + "'");
    d.kind = *k;
    if (m.has("parameters"))
      for (const auto& [key, value] : m.at("parameters").members()) d.parameters[key] = value.str();
    doc.metadata = std::move(d);
  }
  return doc;
}

SystemDocument parse_system(const std::string& text) { return system_document_from_json(parse_json_text(text)); }

Json to_json(const Completeness& c) {
  if (!c.truncated) return {{"kind", "complete"}};
  return {{"kind", "truncated"}, {"depth", c.depth}, {"certified", c.certified}};
}

Json to_json(const DimensionData& dims) {
  Json out = Json::array();
  for (const auto& c : dims.constituents)
    out.push_back({{"id", c.id}, {"left", c.left}, {"right", c.right}, {"mult", c.mult}});
  return out;
}

Json to_json(const SystemDocument& doc) {
  const FusionSystem& s = doc.system;
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["algebras"] = s.algebras();
  out["objects"] = Json::array();
  for (const auto& o : s.objects())
    out["objects"].push_back(
        {{"id", o.id}, {"left", o.left}, {"right", o.right}, {"dual", s.id(o.dual)}, {"unit", o.is_unit}});
  out["tensor"] = Json::array();
  for (const auto& [key, entry] : s.tensor()) {
    Json contains = Json::array();
    for (const auto& c : entry.constituents) contains.push_back({{"c", s.id(c.object)}, {"mult", mult_json(c.mult)}});
    out["tensor"].push_back(
        {{"a", s.id(key.first)}, {"b", s.id(key.second)}, {"contains", contains}, {"truncated", entry.truncated}});
  }
  out["generator"] = Json::array();
  for (const auto& g : s.generator()) out["generator"].push_back({{"id", s.id(g.object)}, {"mult", mult_json(g.mult)}});
  out["completeness"] = to_json(s.completeness());
  if (doc.dims) out["dims"] = to_json(*doc.dims);
  if (doc.bicategory) {
    const auto& bc = *doc.bicategory;
    out["bicategory"] = {{"gen_ab", bc.gen_ab}, {"gen_bc", bc.gen_bc}};
    if (!bc.summands_ab.empty()) out["bicategory"]["summands_ab"] = bc.summands_ab;
    if (!bc.summands_bc.empty()) out["bicategory"]["summands_bc"] = bc.summands_bc;
  }
  if (doc.metadata) {
    out["metadata"] = {{"example", to_string(doc.metadata->kind)}, {"parameters", Json::object()}};
    for (const auto& [k, v] : doc.metadata->parameters) out["metadata"]["parameters"][k] = v;
  }
  return out;
}

std::string serialize_system(const SystemDocument& doc) { return canonical_dump(to_json(doc)); }

SystemDocument load_system(const std::string& text) {
  SystemDocument doc = parse_system(text);
  const ValidationReport report = validate(doc.system);
  if (!report.ok()) {
    std::string msg = std::to_string(report.violations.size()) + " violation(s)";
    for (const auto& v : report.violations) msg += "\n  " + v.rule + ": " + v.message;
    throw Error(ErrorKind::Validation, msg);
  }
  return doc;
}

Bicategory3 bicategory_of(const SystemDocument& doc) {
  if (!doc.bicategory) throw Error(ErrorKind::Schema, "/bicategory: missing field 'bicategory'");
  const auto& ids = *doc.bicategory;
  Bicategory3 b{doc.system, doc.system.index_of(ids.gen_ab), doc.system.index_of(ids.gen_bc), {}, {}};
  for (const auto& id : ids.summands_ab) b.summands_ab.push_back(doc.system.index_of(id));
  for (const auto& id : ids.summands_bc) b.summands_bc.push_back(doc.system.index_of(id));
  const ValidationReport report = validate(b);
  if (!report.ok()) {
    std::string msg;
    for (const auto& v : report.violations) msg += (msg.empty() ? "" : "; ") + v.rule + ": " + v.message;
    throw Error(ErrorKind::Validation, msg);
  }
  return b;
}

SystemDocument document_of(const ExampleOutput& example, const ExampleDescriptor& descriptor) {
  SystemDocument doc;
  doc.system = example.system;
  doc.dims = example.dims;
  if (example.bicategory_generators)
    doc.bicategory = BicategoryIds{example.system.id(example.bicategory_generators->first),
                                   example.system.id(example.bicategory_generators->second), {}, {}};
  doc.metadata = descriptor;
  return doc;
}

WeightFunction parse_weight(const std::string& text) {
  const Json json = parse_json_text(text);
  const Node root(json, "");
  root.object({"schema_version", "weight"});
  const Node version = root.at("schema_version");
  if (version.integer() != kSchemaVersion) version.fail("unsupported schema version");
  WeightFunction w;
  for (const auto& [id, value] : root.at("weight").members()) {
    const double x = value.number();
    if (!(x > 0) || !std::isfinite(x)) value.fail("weights must be positive and finite");
    w.values[id] = x;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Result fragments

Json to_json(const Modulus& m) { return {{"delta_minus", m.delta_minus}, {"delta_plus", m.delta_plus}}; }

Json to_json(const WeightFunction& w) {
  Json out = Json::object();
  for (const auto& [id, v] : w.values) out[id] = v;
  return out;
}

Json to_json(const ValidationReport& report) {
  Json out = Json::array();
  for (const auto& v : report.violations) out.push_back({{"rule", v.rule}, {"message", v.message}});
  return out;
}

namespace {

Json skipped_json(const FusionSystem& s, const std::vector<SkippedEntry>& skipped) {
  Json out = Json::array();
  for (const auto& k : skipped)
    out.push_back({{"a", s.id(k.a)}, {"b", s.id(k.b)}, {"reason", k.missing ? "missing" : "truncated"}});
  return out;
}

Json ids_json(const FusionSystem& s, const std::vector<ObjectIndex>& vars) {
  Json out = Json::array();
  for (auto v : vars) out.push_back(s.id(v));
  return out;
}

Json vector_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(exact_integer(x));
  return out;
}

Json verdict_summary(const TpcVerdict& v) {
  return {{"tpc", v.tpc},
          {"provisional", v.provisional},
          {"depth_conditional", v.depth_conditional},
          {"even_dimensions", v.even_dimensions},
          {"skipped_constraints", v.skipped}};
}

}  // namespace

Json to_json(const FusionSystem& s, const WeightSpaceBasis& basis) {
  Json out;
  out["scope"] = basis.scope.describe();
  out["dimension"] = basis.dimension();
  out["variables"] = ids_json(s, basis.variables);
  out["basis"] = Json::array();
  for (const auto& v : basis.basis) out["basis"].push_back(vector_json(v));
  out["constraint_rows"] = basis.rows;
  out["skipped"] = skipped_json(s, basis.skipped);
  return out;
}

Json to_json(const FusionSystem& s, const TpcVerdict& v) {
  Json out = verdict_summary(v);
  if (v.witness && v.witness_space) {
    out["witness"] = {{"scope", v.witness_space->scope.describe()},
                      {"variables", ids_json(s, v.witness_space->variables)},
                      {"exponents", vector_json(*v.witness)}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json to_json(const PrincipalGraphPair& g) {
  auto edges = [](const std::vector<GraphEdge>& es) {
    Json out = Json::array();
    for (const auto& e : es) out.push_back({{"even", e.even}, {"odd", e.odd}, {"mult", e.mult}});
    return out;
  };
  Json out{{"base", g.base},         {"base_minus", g.base_minus}, {"even_plus", g.even_plus},
           {"even_minus", g.even_minus}, {"odd", g.odd},           {"edges_plus", edges(g.edges_plus)},
           {"edges_minus", edges(g.edges_minus)}};
  if (!g.even_duals.empty()) out["even_duals"] = g.even_duals;
  return out;
}

Json to_json(const DimensionVector& d) {
  return {{"dimensions", d.values}, {"norm", d.norm}, {"index", d.index()}};
}

Json to_json(const PerturbationReport& r) {
  Json out{{"perturbed_dims", to_json(r.perturbed)},
           {"modulus", to_json(r.modulus)},
           {"index", r.index},
           {"spherical", r.spherical},
           {"min_index", r.min_index}};
  out["sphericalizing_weight"] = r.sphericalizing ? to_json(*r.sphericalizing) : Json(nullptr);
  return out;
}

Json to_json(const TheoremReport& r) {
  return {{"result", r.pass ? "PASS" : "FAIL"},
          {"hypothesis", r.hypothesis},
          {"conclusion", r.conclusion},
          {"provisional", r.provisional},
          {"note", r.note},
          {"first", verdict_summary(r.first)},
          {"second", verdict_summary(r.second)},
          {"composite", verdict_summary(r.composite)}};
}

std::string read_input(const std::string& path, std::istream& stdin_stream) {
  std::ostringstream buf;
  if (path == "-") {
    buf << stdin_stream.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Schema, "cannot open '" + path + "'");
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace bimod
