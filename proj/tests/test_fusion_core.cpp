#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bimod/error.hpp"
#include "bimod/examples.hpp"
#include "bimod/fusion_system.hpp"
#include "bimod/principal_graph.hpp"
#include "oracles.hpp"

using namespace bimod;

namespace {

FusionSystem z2() {
  FusionSystemBuilder b;
  b.algebra("A");
  b.object("1", "A", "A", "1", true).object("g", "A", "A", "g");
  b.product("1", "1", {{"1", 1}}).product("1", "g", {{"g", 1}}).product("g", "1", {{"g", 1}});
  b.product("g", "g", {{"1", 1}});
  b.generator("g");
  return b.build();
}

bool has_rule(const ValidationReport& r, const std::string& rule, const std::string& fragment = "") {
  for (const auto& v : r.violations)
    if (v.rule == rule && v.message.find(fragment) != std::string::npos) return true;
  return false;
}

PrincipalGraphPair path_graph(int n) { return make_tl_path(n).graphs; }

}  // namespace

TEST_CASE("Z/2 group fusion is valid") {
  const auto s = z2();
  CHECK(validate(s).ok());
  CHECK(s.size() == 2);
  CHECK(s.completeness() == Completeness::complete());
}

TEST_CASE("a dual that keeps unequal labels is reported") {
  FusionSystemBuilder b;
  b.algebra("A").algebra("B");
  b.object("1A", "A", "A", "1A", true).object("1B", "B", "B", "1B", true).object("g", "A", "B", "g");
  b.product("1A", "g", {{"g", 1}}).product("g", "1B", {{"g", 1}});
  b.generator("g");
  const auto r = validate(b.build());
  CHECK_FALSE(r.ok());
  CHECK(has_rule(r, "dual-sector", "dual must swap algebra labels"));
}

TEST_CASE("builder rejects dangling references") {
  FusionSystemBuilder b;
  b.algebra("A");
  b.object("1", "A", "A", "ghost", true);
  try {
    (void)b.build();
    FAIL("expected a schema error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Schema);
    CHECK(std::string(e.what()).find("ghost") != std::string::npos);
  }

  FusionSystemBuilder dup;
  dup.algebra("A").object("1", "A", "A", "1", true).object("1", "A", "A", "1", true);
  CHECK_THROWS_AS((void)dup.build(), Error);
}

TEST_CASE("unit absorption and missing products are caught") {
  FusionSystemBuilder b;
  b.algebra("A");
  b.object("1", "A", "A", "1", true).object("g", "A", "A", "g");
  b.product("1", "1", {{"1", 1}}).product("1", "g", {{"1", 1}}).product("g", "1", {{"g", 1}});
  b.product("g", "g", {{"1", 1}});
  CHECK(has_rule(validate(b.build()), "unit-absorption"));

  FusionSystemBuilder gap;
  gap.algebra("A");
  gap.object("1", "A", "A", "1", true).object("g", "A", "A", "g");
  gap.product("1", "1", {{"1", 1}}).product("1", "g", {{"g", 1}}).product("g", "1", {{"g", 1}});
  CHECK_FALSE(validate(gap.build()).ok());
}

TEST_CASE("associativity is checked on numeric entries") {
  // Z/3 table with one product deliberately wrong.
  FusionSystemBuilder b;
  b.algebra("A");
  b.object("e", "A", "A", "e", true).object("g", "A", "A", "h").object("h", "A", "A", "g");
  for (const char* x : {"e", "g", "h"}) {
    b.product("e", x, {{x, 1}});
    if (std::string(x) != "e") b.product(x, "e", {{x, 1}});
  }
  b.product("g", "g", {{"h", 1}}).product("g", "h", {{"e", 1}}).product("h", "g", {{"e", 1}});
  b.product("h", "h", {{"h", 1}});  // should be g
  b.generator("g");
  CHECK(has_rule(validate(b.build()), "associativity"));
}

TEST_CASE("free monoid truncated at length 2 is valid and matches brute force") {
  const auto s = make_free_monoid_fusion(2);
  CHECK(validate(s).ok());
  CHECK(s.completeness() == Completeness::truncated_at(2, true));
  const auto expected = oracle::free_monoid_products(2);
  auto word = [&](ObjectIndex v) { return s.id(v) == "1" ? std::string() : s.id(v); };
  for (ObjectIndex a = 0; a < s.size(); ++a)
    for (ObjectIndex b = 0; b < s.size(); ++b) {
      const TensorEntry* e = s.entry(a, b);
      REQUIRE(e != nullptr);
      std::set<std::string> got;
      for (const auto& c : e->constituents) {
        CHECK(c.mult == std::optional<int>(1));
        got.insert(word(c.object));
      }
      auto it = expected.find({word(a), word(b)});
      const std::set<std::string> want = it == expected.end() ? std::set<std::string>{} : it->second;
      CHECK_MESSAGE(got == want, s.id(a), " ⊗ ", s.id(b));
    }
}

TEST_CASE("hom_nonzero on words") {
  const auto s = make_integer_fusion(3);
  const auto a1 = s.index_of("a^1"), a2 = s.index_of("a^2");
  const std::vector<ObjectIndex> g{a1}, aa{a1, a1}, two{a2};
  CHECK(hom_nonzero(s, g, g) == Tri::yes);
  CHECK(hom_nonzero(s, aa, two) == Tri::yes);
  CHECK(hom_nonzero(s, g, two) == Tri::no);

  const auto a3 = s.index_of("a^3");
  const std::vector<ObjectIndex> far{a3, a1};
  CHECK(hom_nonzero(s, far, two) == Tri::unknown);

  const auto tl = make_tl_path(3).system;
  const std::vector<ObjectIndex> bad{tl.index_of("h1"), tl.index_of("h1")};
  CHECK_THROWS_AS((void)hom_nonzero(tl, bad, bad), Error);
  try {
    (void)expand_word(tl, bad);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IncomposableWord);
  }
}

TEST_CASE("generate_from_graph on paths") {
  CHECK_THROWS_AS((void)generate_from_graph(path_graph(3), 0), Error);

  const auto a3 = generate_from_graph(path_graph(3), 2);
  CHECK(validate(a3).ok());
  CHECK(a3.completeness() == Completeness::truncated_at(2));
  // p0 —h1— p2: the A-A objects within depth 2 are p0 and p2.
  CHECK(a3.find("p0"));
  CHECK(a3.find("h1"));
  CHECK(a3.find("p2"));
  const auto* e = a3.entry(a3.index_of("h1"), a3.index_of("h1*"));
  REQUIRE(e != nullptr);
  CHECK(e->contains(a3.index_of("p0")));
  CHECK(e->contains(a3.index_of("p2")));

  const auto a4 = generate_from_graph(path_graph(4), 3);
  std::size_t plus_side = 0;
  for (const auto& o : a4.objects()) plus_side += o.left == "A";
  CHECK(plus_side == 4);  // p0, h1, p2, h3
  for (const auto& [key, entry] : a4.tensor())
    for (const auto& c : entry.constituents) CHECK(c.mult == std::optional<int>(1));
}

TEST_CASE("double edge out of the base records multiplicity 2") {
  PrincipalGraphPair g;
  g.even_plus = {"*", "x"};
  g.even_minus = {"o"};
  g.odd = {"v"};
  g.edges_plus = {{"*", "v", 2}, {"x", "v", 2}};
  g.edges_minus = {{"o", "v", 2}};
  g.base = "*";
  g.base_minus = "o";
  const auto s = generate_from_graph(g, 1);
  REQUIRE(s.has_generator());
  CHECK(s.id(s.generator().front().object) == "v");
  CHECK(s.generator().front().mult == std::optional<int>(2));
  const auto prod = generator_product(s, s.index_of("*"), false);
  CHECK(prod.constituents.at(s.index_of("v")) == std::optional<long long>(2));
}

TEST_CASE("Perron-Frobenius norms of A_n against the characteristic polynomial") {
  for (int n = 2; n <= 8; ++n) {
    const auto d = pf_dimensions(path_graph(n), Side::plus);
    const double closed = 2.0 * std::cos(std::numbers::pi / (n + 1));
    CHECK(d.norm == doctest::Approx(closed).epsilon(1e-10));
    CHECK(std::abs(d.norm - oracle::path_norm(n)) < 1e-10);
    CHECK(d.values.at("p0") == doctest::Approx(1.0));
    CHECK(d.index() == doctest::Approx(closed * closed).epsilon(1e-9));
    const auto m = pf_dimensions(path_graph(n), Side::minus);
    CHECK(m.norm == doctest::Approx(closed).epsilon(1e-10));
  }
  const auto a2 = pf_dimensions(path_graph(2), Side::plus);
  CHECK(a2.values.at("h1") == doctest::Approx(1.0));
}

TEST_CASE("disconnected graph does not converge") {
  PrincipalGraphPair g;
  g.even_plus = {"*", "y"};
  g.odd = {"v", "w"};
  g.even_minus = {"o"};
  g.edges_plus = {{"*", "v", 1}, {"y", "w", 1}};
  g.edges_minus = {{"o", "v", 1}};
  g.base = "*";
  g.base_minus = "o";
  try {
    (void)pf_dimensions(g, Side::plus);
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoConvergence);
  }
}

TEST_CASE("principal graph round trip through a TL system") {
  for (int n = 2; n <= 6; ++n) {
    const auto tl = make_tl_path(n);
    const auto g = principal_graph_of(tl.system);
    CHECK(g.base == "p0");
    CHECK(pf_dimensions(g, Side::plus).norm == doctest::Approx(pf_dimensions(tl.graphs, Side::plus).norm));
  }
}

TEST_CASE("property: every example system validates and duals are involutions") {
  std::vector<FusionSystem> systems{make_integer_fusion(4), make_free_monoid_fusion(3), make_cyclic_fusion(6),
                                    make_group_fusion(symmetric_group(3)), make_tl_path(5).system,
                                    make_glued_cyclic(2, 3).system};
  for (const auto& s : systems) {
    CHECK(validate(s).ok());
    for (ObjectIndex v = 0; v < s.size(); ++v) {
      CHECK(s.dual(s.dual(v)) == v);
      CHECK(s.object(s.dual(v)).left == s.object(v).right);
      if (s.object(v).is_unit) CHECK(s.dual(v) == v);
    }
  }
}
