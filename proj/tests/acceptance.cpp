// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bimod/cli.hpp"
#include "bimod/composition.hpp"
#include "bimod/error.hpp"
#include "bimod/examples.hpp"
#include "bimod/io.hpp"
#include "bimod/perturbation.hpp"
#include "bimod/principal_graph.hpp"
#include "bimod/weight_solver.hpp"
#include "oracles.hpp"

using namespace bimod;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = BIMOD_FIXTURE_DIR;
const fs::path kGolden = BIMOD_GOLDEN_DIR;

// Collects the reasons a criterion failed.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const GroupTable& s3() {
  static const GroupTable g = symmetric_group(3);
  return g;
}

std::vector<std::size_t> all_of(const GroupTable& g) {
  std::vector<std::size_t> out(g.order());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

std::vector<std::pair<std::string, Bicategory3>> bicategory_fixtures() {
  return {
      {"S3 <(12)>,<(123)>", make_double_coset(s3(), subgroup_generated(s3(), {"(12)"}),
                                              subgroup_generated(s3(), {"(123)"}))},
      {"S3 {e},{e}", make_double_coset(s3(), {identity_of(s3())}, {identity_of(s3())})},
      {"S3 S3,S3", make_double_coset(s3(), all_of(s3()), all_of(s3()))},
      {"glued Z/2,Z/2", make_glued_cyclic(2, 2)},
      {"glued Z/2,Z/3", make_glued_cyclic(2, 3)},
  };
}

// Systems with a generator: every example plus the two-algebra factors of
// the bicategory fixtures.
std::vector<std::pair<std::string, FusionSystem>> generated_fixtures() {
  std::vector<std::pair<std::string, FusionSystem>> out{
      {"integer(6)", make_integer_fusion(6)},   {"free monoid(2)", make_free_monoid_fusion(2)},
      {"free monoid(3)", make_free_monoid_fusion(3)}, {"Z/2", make_cyclic_fusion(2)},
      {"Z/5", make_cyclic_fusion(5)},           {"S3", make_group_fusion(s3())},
  };
  for (int n = 2; n <= 6; ++n) out.emplace_back("TL A_" + std::to_string(n), make_tl_path(n).system);
  for (const auto& [name, b] : bicategory_fixtures()) {
    out.emplace_back(name + " (A,B)", generated_subsystem(b.system, b.gen_ab, kDefaultClosureDepth));
    out.emplace_back(name + " (B,C)", generated_subsystem(b.system, b.gen_bc, kDefaultClosureDepth));
    out.emplace_back(name + " composite", compose(b));
  }
  for (const char* f : {"graded_dims.json", "modulus32.json"})
    out.emplace_back(f, load_system(slurp(kFixtures / f)).system);
  return out;
}

// ---------------------------------------------------------------------------

Check weight_dimensions() {
  Check c;
  auto timed_dim = [&](const std::string& name, const FusionSystem& s, const Scope& scope) {
    const auto t0 = Clock::now();
    const std::size_t d = solve_weight_space(s, scope).dimension();
    const double t = seconds_since(t0);
    c.expect(t < 1.0, name + " took " + std::to_string(t) + " s");
    return d;
  };
  c.expect(timed_dim("integer(3)", make_integer_fusion(3), Scope::full()) == 1, "integer(3) dimension != 1");
  for (int L : {2, 3}) {
    const auto s = make_free_monoid_fusion(L);
    const auto t0 = Clock::now();
    const auto basis = solve_weight_space(s, Scope::full());
    c.expect(seconds_since(t0) < 1.0, "free monoid too slow");
    c.expect(basis.dimension() == 1, "free monoid(" + std::to_string(L) + ") dimension != 1");
    if (basis.dimension() != 1) continue;
    for (ObjectIndex v = 0; v < s.size(); ++v) {
      const std::string w = s.object(v).is_unit ? "" : s.id(v);
      const long expected = oracle::count_letter(w, 'a') - oracle::count_letter(w, 'b');
      c.expect(basis.exponent(0, v) == expected, "free monoid exponent of " + s.id(v));
    }
  }
  for (int n = 2; n <= 6; ++n)
    c.expect(timed_dim("Z/" + std::to_string(n), make_cyclic_fusion(n), Scope::full()) == 0,
             "Z/" + std::to_string(n) + " dimension != 0");
  c.expect(timed_dim("S3", make_group_fusion(s3()), Scope::full()) == 0, "S3 dimension != 0");
  for (int n = 2; n <= 6; ++n) {
    const auto s = make_tl_path(n).system;
    for (const char* side : {"A", "B"})
      c.expect(timed_dim("TL", s, Scope::even_only(side)) == 0,
               "TL A_" + std::to_string(n) + " even-" + side + " dimension != 0");
  }
  return c;
}

Check central_elements() {
  Check c;
  for (const auto& [name, s] : generated_fixtures()) {
    if (!s.has_generator()) continue;
    const auto basis = solve_weight_space(s, Scope::full());
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
      std::vector<double> p(basis.dimension(), 1.0);
      p[i] = 2.0;
      const auto w = weight_from_basis(s, basis, p);
      c.expect(w.exact_log.has_value(), name + ": basis weight lacks exact exponents");
      for (ObjectIndex v = 0; v < s.size(); ++v) {
        c.expect(basis.exponent(i, v) + basis.exponent(i, s.dual(v)) == 0, name + ": w(v)w(v̄) != 1 at " + s.id(v));
        if (s.object(v).is_unit) c.expect(basis.exponent(i, v) == 0, name + ": w(unit) != 1");
      }
      for (auto sign : {Sign::plus, Sign::minus})
        for (int k = 0; k <= 4; ++k) {
          try {
            const auto coeffs = central_element_coeffs(s, w, sign, k);
            c.expect(coeffs.exact_exponents.has_value(), name + ": inexact check");
          } catch (const Error& e) {
            c.expect(false, name + " depth " + std::to_string(k) + ": " + e.what());
          }
        }
    }
  }
  return c;
}

Check extension_law() {
  Check c;
  std::size_t tested = 0;
  for (const auto& [name, s] : generated_fixtures()) {
    if (s.algebras().size() != 2) continue;
    bool odd = false;
    for (const auto& o : s.objects()) odd = odd || o.left != o.right;
    if (!odd) continue;
    ++tested;
    const std::size_t full = solve_weight_space(s, Scope::full()).dimension();
    const std::size_t ea = solve_weight_space(s, Scope::even_only(s.algebras()[0])).dimension();
    const std::size_t eb = solve_weight_space(s, Scope::even_only(s.algebras()[1])).dimension();
    c.expect(full == ea + 1 && full == eb + 1,
             name + ": full " + std::to_string(full) + ", even " + std::to_string(ea) + "/" + std::to_string(eb));
  }
  c.expect(tested >= 10, "too few two-algebra fixtures");
  return c;
}

Check scalar_perturbation() {
  Check c;
  const Modulus m{3, 2};
  for (double lambda : {0.5, 2.0, std::sqrt(2.0)}) {
    const auto p = scalar_perturb(m, lambda);
    c.expect(std::abs(p.delta_minus - 3.0 / lambda) <= 1e-12, "delta_minus");
    c.expect(std::abs(p.delta_plus - 2.0 * lambda) <= 1e-12, "delta_plus");
    c.expect(std::abs(p.index() - 6.0) <= 1e-12, "index not invariant");
    DimensionData d;
    d.constituents.push_back({"h", 3, 2, 1});
    const auto viaw = modulus_of(perturb_dims(d, scalar_weight(d, lambda)));
    c.expect(std::abs(viaw.delta_minus - p.delta_minus) <= 1e-12 && std::abs(viaw.delta_plus - p.delta_plus) <= 1e-12,
             "perturb_dims disagrees with scalar_perturb");
  }
  const auto n = normalize(m);
  c.expect(std::abs(n.unimodular.delta_minus - std::sqrt(6.0)) <= 1e-12, "normalize delta_minus");
  c.expect(std::abs(n.unimodular.delta_plus - std::sqrt(6.0)) <= 1e-12, "normalize delta_plus");
  return c;
}

Check lowest_index() {
  Check c;
  DimensionData d;
  d.constituents = {{"s", 1, 1, 1}, {"t", 4, 1, 1}};
  const auto w = sphericalizing_weight(d);
  c.expect(std::abs(w.at("s") - 1.0) <= 1e-9 && std::abs(w.at("t") - 2.0) <= 1e-9, "sphericalizing weight");
  const auto m = modulus_of(perturb_dims(d, w));
  c.expect(std::abs(m.delta_minus - 3.0) <= 1e-9 && std::abs(m.delta_plus - 3.0) <= 1e-9, "perturbed modulus");
  const double lo = min_index(d);
  c.expect(std::abs(lo - 9.0) <= 1e-9 && lo < modulus_of(d).index(), "min_index");

  double best = INFINITY;
  for (int k = -64; k <= 64; ++k) {
    WeightFunction g;
    g.values = {{"s", 1.0}, {"t", std::exp2(k / 16.0)}};
    best = std::min(best, modulus_of(perturb_dims(d, g)).index());
  }
  c.expect(best >= lo - 1e-9, "grid found an index below min_index");

  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> logu(-2.0, 2.0);
  std::uniform_int_distribution<int> count(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    DimensionData r;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) r.constituents.push_back({"s" + std::to_string(i), std::exp(logu(rng)), std::exp(logu(rng)), 1});
    WeightFunction rw;
    for (const auto& s : r.constituents) rw.values[s.id] = std::exp(logu(rng));
    // Every other trial uses the sphericalizing weight, so both sides of the iff are exercised.
    if (trial % 2 == 1) rw = sphericalizing_weight(r);
    const auto p = perturb_dims(r, rw);
    const double index = modulus_of(p).index(), bound = min_index(r);
    c.expect(index >= bound - 1e-9, "random index below min_index");
    c.expect((std::abs(index - bound) <= 1e-9) == is_spherical(p), "equality iff spherical");
  }
  return c;
}

Check tpc_closure() {
  Check c;
  const auto t0 = Clock::now();
  for (const auto& [name, b] : bicategory_fixtures()) {
    const auto r = verify_tpc_closure(b);
    c.expect(r.pass, name + ": " + r.note);
    c.expect(r.first.tpc && r.second.tpc && r.composite.tpc, name + ": a verdict is not TPC");
  }
  std::vector<std::pair<std::string, FusionSystem>> tpc_systems;
  for (auto& [name, s] : generated_fixtures())
    if (is_tpc(s).tpc) tpc_systems.emplace_back(name, s);
  for (const auto& [name, s] : tpc_systems)
    for (int k = 1; k <= 4; ++k) {
      try {
        c.expect(is_tpc(cable(s, k)).tpc, name + " cabled k=" + std::to_string(k) + " lost TPC");
      } catch (const Error& e) {
        c.expect(false, name + " cable k=" + std::to_string(k) + ": " + e.what());
      }
    }
  for (int k = 1; k <= 4; ++k)
    c.expect(!is_tpc(cable(make_integer_fusion(16), k)).tpc, "cabled Z became TPC at k=" + std::to_string(k));
  const double t = seconds_since(t0);
  c.expect(t < 10.0, "took " + std::to_string(t) + " s");
  return c;
}

Check perron_frobenius() {
  Check c;
  for (int n = 2; n <= 8; ++n) {
    const auto tl = make_tl_path(n);
    const auto d = pf_dimensions(tl.graphs, Side::plus);
    const double closed = 2.0 * std::cos(std::numbers::pi / (n + 1));
    c.expect(std::abs(d.norm - closed) <= 1e-10, "A_" + std::to_string(n) + " norm");
    c.expect(std::abs(d.index() - closed * closed) <= 1e-9, "A_" + std::to_string(n) + " index");
    c.expect(std::abs(modulus_of(tl.dims).index() - closed * closed) <= 1e-9, "TL dims index");
  }
  return c;
}

// Perturbation of spherical dims on the even objects by a weight, viewed
// through sphericality of the result.
bool stays_spherical(const FusionSystem& s, const WeightFunction& w, const std::string& algebra) {
  DimensionData d;
  for (const auto& o : s.objects())
    if (o.left == algebra && o.right == algebra && !o.is_unit) d.constituents.push_back({o.id, 1.0, 1.0, 1});
  if (d.constituents.empty()) return true;
  return is_spherical(perturb_dims(d, w));
}

Check cross_module() {
  Check c;
  for (const auto& [name, s] : generated_fixtures()) {
    const auto verdict = is_tpc(s);
    const std::string even = s.object(s.generator().front().object).left;
    if (verdict.tpc) {
      const auto basis = solve_weight_space(s, Scope::full());
      for (std::size_t i = 0; i < basis.dimension(); ++i) {
        std::vector<double> p(basis.dimension(), 1.0);
        p[i] = 2.0;
        c.expect(stays_spherical(s, weight_from_basis(s, basis, p), even), name + ": TPC but a weight broke sphericality");
      }
    } else {
      const auto& space = *verdict.witness_space;
      std::vector<double> p(space.dimension(), 1.0);
      for (std::size_t i = 0; i < space.dimension(); ++i)
        if (space.basis[i] == *verdict.witness) p[i] = 2.0;
      c.expect(!stays_spherical(s, weight_from_basis(s, space, p), space.scope.algebra),
               name + ": witness weight left the dims spherical");
    }
  }
  return c;
}

Check cli_goldens() {
  Check c;
  std::ifstream cases(kGolden / "cases.txt");
  std::string line;
  std::size_t ran = 0;
  while (std::getline(cases, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto p1 = line.find('|'), p2 = line.find('|', p1 + 1);
    const std::string name = line.substr(0, p1);
    const int expect = std::stoi(line.substr(p1 + 1, p2 - p1 - 1));
    std::vector<std::string> args;
    std::istringstream words(line.substr(p2 + 1));
    for (std::string w; words >> w;) args.push_back(fs::exists(kFixtures / w) ? (kFixtures / w).string() : w);
    std::istringstream in;
    std::ostringstream out, err;
    const int code = cli::run(args, in, out, err);
    c.expect(code == expect, name + ": exit " + std::to_string(code));
    c.expect(out.str() == slurp(kGolden / (name + ".json")), name + ": output differs from golden");
    ++ran;
  }
  c.expect(ran >= 9, "golden table too small");

  for (const auto& entry : fs::directory_iterator(kFixtures)) {
    const auto name = entry.path().filename().string();
    if (name.rfind("weight_", 0) == 0) continue;
    const auto once = serialize_system(parse_system(slurp(entry.path())));
    c.expect(serialize_system(parse_system(once)) == once, name + ": round trip");
  }

  auto run = [](std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    return cli::run(args, in, out, err);
  };
  std::ostringstream zn, integer, discard;
  std::istringstream none;
  cli::run({"example", "zn", "--n", "2"}, none, zn, discard);
  cli::run({"example", "integer", "--range", "3"}, none, integer, discard);
  c.expect(run({"tpc", "-"}, zn.str()) == 0, "zn | tpc exit");
  c.expect(run({"tpc", "-"}, integer.str()) == 3, "integer | tpc exit");
  c.expect(run({}) == 1, "usage exit");
  c.expect(run({"tpc", "-"}, "[") == 2, "parse exit");
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"1 weight-space dimensions", weight_dimensions},
      {"2 central elements and weight functions", central_elements},
      {"3 extension law", extension_law},
      {"4 scalar perturbation", scalar_perturbation},
      {"5 sphericality and lowest index", lowest_index},
      {"6 TPC closure and cabling", tpc_closure},
      {"7 Perron-Frobenius", perron_frobenius},
      {"8 cross-module consistency", cross_module},
      {"9 CLI goldens, round trip, exit codes", cli_goldens},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Check c;
    try {
      c = run();
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("threw: ") + e.what());
    }
    std::cout << (c.failures.empty() ? "PASS " : "FAIL ") << name << "\n";
    for (const auto& f : c.failures) std::cout << "     " << f << "\n";
    failed += !c.failures.empty();
  }
  return failed;
}
