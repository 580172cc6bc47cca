#include "bimod/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "bimod/composition.hpp"
#include "bimod/examples.hpp"
#include "bimod/io.hpp"
#include "bimod/perturbation.hpp"
#include "bimod/principal_graph.hpp"
#include "bimod/weight_solver.hpp"

namespace bimod::cli {

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Schema:
    case ErrorKind::Validation:
    case ErrorKind::LimitExceeded:
    case ErrorKind::MissingWeight:
    case ErrorKind::TruncationExhausted:
      return kExitInput;
    case ErrorKind::InvalidArgument:
    case ErrorKind::NonPositiveScalar:
    case ErrorKind::DepthZero:
    case ErrorKind::NotAGroup:
    case ErrorKind::NotASubgroup:
      return kExitUsage;
    case ErrorKind::AmbiguousTruncation:
      return kExitProvisional;
    default:
      return kExitInternal;
  }
}

namespace {

struct Options {
  std::string input;
  std::string even_only;
  bool graph = false;
  std::string weight_file;
  std::optional<double> scalar;
  int depth = kDefaultClosureDepth;
  int k = 1;
  std::string kind;
  std::map<std::string, std::string> params;
  std::string output;
};

std::string input_name(const std::string& path) {
  return path == "-" ? path : std::filesystem::path(path).filename().string();
}

Json echo(const std::string& name, const Options& o, Json options = Json::object()) {
  return {{"name", name}, {"input", input_name(o.input)}, {"options", std::move(options)}};
}

Json result(Json command) { return {{"schema_version", kSchemaVersion}, {"command", std::move(command)}}; }

int tpc_exit(const TpcVerdict& v) {
  if (v.tpc) return kExitOk;
  return v.provisional ? kExitProvisional : kExitNotTpc;
}

struct Dims {
  DimensionData dims;
  std::string source;
};

Dims dims_for(const SystemDocument& doc, bool force_graph) {
  if (doc.dims && !force_graph) return {*doc.dims, "document"};
  if (!doc.system.has_generator())
    throw Error(ErrorKind::Validation, "document has neither dims nor a generator to read them from");
  return {dims_from_graph(doc.system), "principal-graph"};
}

Json dims_block(const DimensionData& dims) {
  const Modulus m = modulus_of(dims);
  return {{"dims", to_json(dims)}, {"modulus", to_json(m)}, {"index", m.index()}, {"spherical", is_spherical(dims)}};
}

int cmd_validate(const Options& o, std::istream& in, std::ostream& out) {
  const SystemDocument doc = parse_system(read_input(o.input, in));
  const ValidationReport report = validate(doc.system);
  Json r = result(echo("validate", o));
  r["valid"] = report.ok();
  r["violations"] = to_json(report);
  r["objects"] = doc.system.size();
  r["completeness"] = to_json(doc.system.completeness());
  out << canonical_dump(r);
  return report.ok() ? kExitOk : kExitInput;
}

int cmd_weights(const Options& o, std::istream& in, std::ostream& out) {
  const SystemDocument doc = load_system(read_input(o.input, in));
  const Scope scope = o.even_only.empty() ? Scope::full() : Scope::even_only(o.even_only);
  if (!o.even_only.empty() &&
      std::find(doc.system.algebras().begin(), doc.system.algebras().end(), o.even_only) == doc.system.algebras().end())
    throw Error(ErrorKind::InvalidArgument, "unknown algebra '" + o.even_only + "'");
  const WeightSpaceBasis basis = solve_weight_space(doc.system, scope);
  Json options = Json::object();
  if (!o.even_only.empty()) options["even_only"] = o.even_only;
  Json r = result(echo("weights", o, options));
  r["weights"] = to_json(doc.system, basis);
  r["completeness"] = to_json(doc.system.completeness());
  out << canonical_dump(r);
  return kExitOk;
}

int cmd_tpc(const Options& o, std::istream& in, std::ostream& out) {
  const SystemDocument doc = load_system(read_input(o.input, in));
  const TpcVerdict v = is_tpc(doc.system);
  Json r = result(echo("tpc", o));
  r["verdict"] = to_json(doc.system, v);
  r["completeness"] = to_json(doc.system.completeness());
  out << canonical_dump(r);
  return tpc_exit(v);
}

int cmd_dims(const Options& o, std::istream& in, std::ostream& out) {
  const SystemDocument doc = load_system(read_input(o.input, in));
  const Dims d = dims_for(doc, o.graph);
  Json options = Json::object();
  if (o.graph) options["graph"] = true;
  Json r = result(echo("dims", o, options));
  r["source"] = d.source;
  r.update(dims_block(d.dims));
  if (o.graph) {
    const PrincipalGraphPair graphs = principal_graph_of(doc.system);
    r["graph"] = to_json(graphs);
    r["perron_frobenius"] = {{"plus", to_json(pf_dimensions(graphs, Side::plus))},
                             {"minus", to_json(pf_dimensions(graphs, Side::minus))}};
  }
  out << canonical_dump(r);
  return kExitOk;
}

int cmd_perturb(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  if (o.scalar.has_value() == !o.weight_file.empty())
    throw Error(ErrorKind::InvalidArgument, "give exactly one of --weight and --scalar");
  const SystemDocument doc = load_system(read_input(o.input, in));
  const Dims d = dims_for(doc, false);
  Json options = Json::object();
  WeightFunction w;
  if (o.scalar) {
    w = scalar_weight(d.dims, *o.scalar);
    options["scalar"] = *o.scalar;
  } else {
    w = parse_weight(read_input(o.weight_file, in));
    options["weight"] = input_name(o.weight_file);
  }
  const PerturbationReport report = perturbation_report(d.dims, w, &doc.system);
  Json r = result(echo("perturb", o, options));
  r["source"] = d.source;
  r["original"] = dims_block(d.dims);
  r["weight"] = to_json(w);
  const bool total = std::all_of(doc.system.objects().begin(), doc.system.objects().end(),
                                 [&](const FusionObject& v) { return w.covers(v.id); });
  r["weight_defect"] = total ? Json(weight_defect(doc.system, w, Scope::full())) : Json(nullptr);
  r["report"] = to_json(report);
  if (!report.sphericalizing) err << "note: no weight function of the system sphericalizes the perturbed dims\n";
  out << canonical_dump(r);
  return kExitOk;
}

int cmd_spherical(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const SystemDocument doc = load_system(read_input(o.input, in));
  const Dims d = dims_for(doc, false);
  Json r = result(echo("spherical", o));
  r["source"] = d.source;
  r.update(dims_block(d.dims));
  r["min_index"] = min_index(d.dims);
  try {
    const WeightFunction w = sphericalizing_weight(d.dims, &doc.system);
    const DimensionData fixed = perturb_dims(d.dims, w);
    r["sphericalizing_weight"] = to_json(w);
    r["sphericalized"] = dims_block(fixed);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotAWeight) throw;
    err << "note: " << e.what() << "\n";
    r["sphericalizing_weight"] = nullptr;
    r["sphericalized"] = nullptr;
  }
  out << canonical_dump(r);
  return kExitOk;
}

int cmd_fuse(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const SystemDocument doc = load_system(read_input(o.input, in));
  const Bicategory3 b = bicategory_of(doc);
  const FusionSystem composite = compose(b, o.depth);
  const TheoremReport report = verify_tpc_closure(b, o.depth);
  Json r = result(echo("fuse", o, {{"depth", o.depth}}));
  SystemDocument composite_doc;
  composite_doc.system = composite;
  r["composite"] = to_json(composite_doc);
  r["theorem"] = to_json(report);
  out << canonical_dump(r);
  if (!report.pass) {
    err << "TheoremViolation: " << report.note << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

int cmd_cable(const Options& o, std::istream& in, std::ostream& out) {
  const SystemDocument doc = load_system(read_input(o.input, in));
  const FusionSystem cabled = cable(doc.system, o.k, o.depth);
  const TpcVerdict v = is_tpc(cabled);
  Json r = result(echo("cable", o, {{"k", o.k}, {"depth", o.depth}}));
  SystemDocument cabled_doc;
  cabled_doc.system = cabled;
  r["cabled"] = to_json(cabled_doc);
  r["verdict"] = to_json(cabled, v);
  out << canonical_dump(r);
  return tpc_exit(v);
}

const std::map<ExampleKind, std::vector<std::string>>& example_parameters() {
  static const std::map<ExampleKind, std::vector<std::string>> table{
      {ExampleKind::integer_fusion, {"range"}},   {ExampleKind::cyclic_group, {"n"}},
      {ExampleKind::finite_group, {"group"}},     {ExampleKind::free_monoid, {"length"}},
      {ExampleKind::tl_path, {"n"}},              {ExampleKind::double_coset, {"group", "h", "k"}},
      {ExampleKind::glued_cyclic, {"n1", "n2"}},
  };
  return table;
}

int cmd_example(const Options& o, std::ostream& out) {
  const auto kind = example_kind_from_string(o.kind);
  if (!kind) throw Error(ErrorKind::InvalidArgument, "unknown example kind '" + o.kind + "'");
  const auto& allowed = example_parameters().at(*kind);
  ExampleDescriptor d{*kind, {}};
  for (const auto& [key, value] : o.params) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw Error(ErrorKind::InvalidArgument, "parameter '" + key + "' does not apply to example '" + o.kind + "'");
    d.parameters[key] = value;
  }
  const std::string text = serialize_system(document_of(make_example(d), d));
  if (o.output.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write '" + o.output + "'");
  file << text;
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weights, perturbations and TPC for bimodule fusion systems", "bimod"};
  app.require_subcommand(1);
  Options o;

  auto input = [&](CLI::App* sub) { sub->add_option("file", o.input, "System document, or - for stdin")->required(); };

  auto* validate_cmd = app.add_subcommand("validate", "Check structural invariants");
  input(validate_cmd);

  auto* weights_cmd = app.add_subcommand("weights", "Exact basis of the weight-function space");
  input(weights_cmd);
  weights_cmd->add_option("--even-only", o.even_only, "Restrict to the L-L objects of this algebra");

  auto* tpc_cmd = app.add_subcommand("tpc", "Decide trivial perturbation class");
  input(tpc_cmd);

  auto* dims_cmd = app.add_subcommand("dims", "Dimensions and modulus");
  input(dims_cmd);
  dims_cmd->add_flag("--graph", o.graph, "Use Perron-Frobenius data of the principal graph");

  auto* perturb_cmd = app.add_subcommand("perturb", "Perturb dims by a weight");
  input(perturb_cmd);
  auto* weight_opt = perturb_cmd->add_option("--weight", o.weight_file, "Weight document");
  auto* scalar_opt = perturb_cmd->add_option("--scalar", o.scalar, "Constant weight on the generator");
  weight_opt->excludes(scalar_opt);

  auto* spherical_cmd = app.add_subcommand("spherical", "Sphericality and the lowest-index member");
  input(spherical_cmd);

  auto* fuse_cmd = app.add_subcommand("fuse", "Compose a three-algebra system and check TPC closure");
  input(fuse_cmd);
  fuse_cmd->add_option("--depth", o.depth, "Closure depth")->check(CLI::Range(1, 64));

  auto* cable_cmd = app.add_subcommand("cable", "Cable the generator and decide TPC");
  input(cable_cmd);
  cable_cmd->add_option("-k", o.k, "Cable length")->required()->check(CLI::Range(1, 16));
  cable_cmd->add_option("--depth", o.depth, "Closure depth")->check(CLI::Range(1, 64));

  auto* example_cmd = app.add_subcommand("example", "Emit a built-in example system");
  example_cmd->add_option("kind", o.kind, "integer | zn | group | free-monoid | tl | double-coset | glued-cyclic")
      ->required();
  std::map<std::string, std::string> raw;
  // --h would collide with -h, so the subgroups take longer flags.
  const std::map<std::string, std::string> flag_of{{"range", "--range"}, {"n", "--n"},         {"group", "--group"},
                                                   {"length", "--length"}, {"h", "--subgroup-h"}, {"k", "--subgroup-k"},
                                                   {"n1", "--n1"},       {"n2", "--n2"}};
  for (const auto& [key, flag] : flag_of) example_cmd->add_option(flag, raw[key]);
  example_cmd->add_option("-o,--output", o.output, "Write to this file instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  }
  for (const auto& [key, value] : raw) {
    if (example_cmd->count(flag_of.at(key)) > 0) o.params[key] = value;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, in, out);
    if (weights_cmd->parsed()) return cmd_weights(o, in, out);
    if (tpc_cmd->parsed()) return cmd_tpc(o, in, out);
    if (dims_cmd->parsed()) return cmd_dims(o, in, out);
    if (perturb_cmd->parsed()) return cmd_perturb(o, in, out, err);
    if (spherical_cmd->parsed()) return cmd_spherical(o, in, out, err);
    if (fuse_cmd->parsed()) return cmd_fuse(o, in, out, err);
    if (cable_cmd->parsed()) return cmd_cable(o, in, out);
    if (example_cmd->parsed()) return cmd_example(o, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace bimod::cli
