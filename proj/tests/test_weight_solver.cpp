#include <doctest.h>

#include <cmath>

#include "bimod/composition.hpp"
#include "bimod/error.hpp"
#include "bimod/examples.hpp"
#include "bimod/weight_solver.hpp"
#include "oracles.hpp"

using namespace bimod;

namespace {

FusionSystem unit_only() {
  FusionSystemBuilder b;
  b.algebra("A").object("1", "A", "A", "1", true).product("1", "1", {{"1", 1}});
  return b.build();
}

BigInt exponent_of(const FusionSystem& s, const WeightSpaceBasis& basis, const std::string& id) {
  return basis.exponent(0, s.index_of(id));
}

}  // namespace

TEST_CASE("integer fusion has the one-parameter family a^n -> lambda^n") {
  const auto s = make_integer_fusion(3);
  const auto basis = solve_weight_space(s, Scope::full());
  REQUIRE(basis.dimension() == 1);
  for (int n = -3; n <= 3; ++n) {
    const std::string id = n == 0 ? "1" : "a^" + std::to_string(n);
    CHECK(exponent_of(s, basis, id) == n);
  }
}

TEST_CASE("unit-only system has no weights") {
  CHECK(solve_weight_space(unit_only(), Scope::full()).dimension() == 0);
  CHECK(is_tpc(unit_only()).tpc);
}

TEST_CASE("free monoid basis counts letters") {
  for (int L : {2, 3}) {
    const auto s = make_free_monoid_fusion(L);
    const auto basis = solve_weight_space(s, Scope::full());
    REQUIRE(basis.dimension() == 1);
    for (const auto& o : s.objects()) {
      const std::string w = o.is_unit ? "" : o.id;
      CHECK(exponent_of(s, basis, o.id) == oracle::count_letter(w, 'a') - oracle::count_letter(w, 'b'));
    }
  }
}

TEST_CASE("dimensions agree with an independent rational elimination") {
  std::vector<FusionSystem> systems{make_integer_fusion(3),      make_free_monoid_fusion(2),
                                    make_free_monoid_fusion(3),  make_cyclic_fusion(4),
                                    make_group_fusion(symmetric_group(3)), make_tl_path(4).system,
                                    make_double_coset(symmetric_group(3),
                                                      subgroup_generated(symmetric_group(3), {"(12)"}),
                                                      subgroup_generated(symmetric_group(3), {"(123)"}))
                                        .system,
                                    make_glued_cyclic(2, 2).system};
  for (const auto& s : systems) {
    const auto full = solve_weight_space(s, Scope::full());
    CHECK(full.dimension() == oracle::nullity_full(s));
    const auto rows = assemble_constraints(s, Scope::full());
    for (const auto& v : full.basis) CHECK(satisfies_all_rows(rows, v));
    for (const auto& a : s.algebras()) {
      CHECK(solve_weight_space(s, Scope::even_only(a)).dimension() == oracle::nullity_even(s, a));
    }
  }
}

TEST_CASE("canonical basis is primitive with a positive leading entry") {
  const auto s = make_double_coset(symmetric_group(3), {0}, {0}).system;
  const auto basis = solve_weight_space(s, Scope::full());
  for (const auto& v : basis.basis) {
    CHECK(content(v) == 1);
    for (const auto& x : v) {
      if (x == 0) continue;
      CHECK(x > 0);
      break;
    }
  }
  CHECK(std::is_sorted(basis.basis.begin(), basis.basis.end()));
}

TEST_CASE("IntegerEchelon kernel") {
  IntegerEchelon e(3);
  CHECK(e.insert({1, 1, 0}));
  CHECK_FALSE(e.insert({2, 2, 0}));
  CHECK(e.rank() == 1);
  const auto k = e.kernel();
  REQUIRE(k.size() == 2);
  for (const auto& v : k) CHECK(v[0] + v[1] == 0);
}

TEST_CASE("TPC verdicts") {
  CHECK(is_tpc(make_cyclic_fusion(2)).tpc);
  CHECK(is_tpc(make_cyclic_fusion(5)).tpc);
  CHECK(is_tpc(make_group_fusion(symmetric_group(3))).tpc);
  CHECK(is_tpc(make_tl_path(3).system).tpc);

  const auto z = is_tpc(make_integer_fusion(3));
  CHECK_FALSE(z.tpc);
  CHECK_FALSE(z.provisional);
  REQUIRE(z.witness);
  const auto& vars = z.witness_space->variables;
  const auto s = make_integer_fusion(3);
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (s.id(vars[i]) == "a^1") CHECK((*z.witness)[i] == 1);
}

TEST_CASE("folded A_3: f self-dual with 1 in f⊗f is TPC") {
  FusionSystemBuilder b;
  b.algebra("A");
  b.object("1", "A", "A", "1", true).object("f", "A", "A", "f");
  b.product("1", "1", {{"1", 1}}).product("1", "f", {{"f", 1}}).product("f", "1", {{"f", 1}});
  b.product("f", "f", {{"1", 1}});
  b.generator("f");
  CHECK(is_tpc(b.build()).tpc);
}

TEST_CASE("uncertified truncation leaves a negative verdict provisional") {
  auto g = make_tl_path(4).graphs;
  const auto s = generate_from_graph(g, 2);
  const auto v = is_tpc(s);
  if (!v.tpc) {
    CHECK(v.provisional);
    CHECK_THROWS_AS((void)v.definite(), Error);
  } else {
    CHECK(v.depth_conditional);
  }
}

TEST_CASE("trivial weight and defects") {
  const auto s = make_tl_path(3).system;
  const auto w = trivial_weight(s);
  CHECK(weight_defect(s, w, Scope::full()) == 0.0);
  WeightFunction bad = w;
  bad.values["h1"] = 2.0;
  bad.values["h1*"] = 2.0;
  CHECK(weight_defect(s, bad, Scope::full()) > 0.5);
}

TEST_CASE("extend_even_weight on A_3") {
  const auto s = make_tl_path(3).system;
  const auto one = extend_even_weight(s, trivial_weight(s), "A", 1.0);
  for (const auto& [id, v] : one.values) CHECK(v == doctest::Approx(1.0));

  const auto w = extend_even_weight(s, trivial_weight(s), "A", 2.0);
  for (const auto& o : s.objects()) {
    const double expected = o.left == o.right ? 1.0 : (o.left == "A" ? 2.0 : 0.5);
    CHECK(w.at(o.id) == doctest::Approx(expected));
  }
  CHECK(weight_defect(s, w, Scope::full()) < 1e-12);
}

TEST_CASE("extension of a Z-type even weight: any two differ by an odd scalar") {
  // Z-graded two-object groupoid: g^n (A-A), x^n (A-B), y^n (B-A), k^n (B-B).
  const int R = 3;
  FusionSystemBuilder b;
  b.algebra("A").algebra("B");
  auto name = [](const std::string& s, int n) {
    return std::string(s == "AA" ? "g" : s == "AB" ? "x" : s == "BA" ? "y" : "k") + "^" + std::to_string(n);
  };
  const std::vector<std::string> sectors{"AA", "AB", "BA", "BB"};
  for (const auto& sec : sectors)
    for (int n = -R; n <= R; ++n)
      b.object(name(sec, n), sec.substr(0, 1), sec.substr(1, 1), name(std::string{sec[1], sec[0]}, -n),
               sec[0] == sec[1] && n == 0);
  for (const auto& s1 : sectors)
    for (const auto& s2 : sectors) {
      if (s1[1] != s2[0]) continue;
      for (int m = -R; m <= R; ++m)
        for (int n = -R; n <= R; ++n) {
          if (std::abs(m + n) <= R)
            b.product(name(s1, m), name(s2, n), {{name(std::string{s1[0], s2[1]}, m + n), 1}});
          else
            b.product(name(s1, m), name(s2, n), {}, true);
        }
    }
  b.generator("x^0").generator("x^-1");
  b.completeness(Completeness::truncated_at(R, true));
  const auto s = b.build();
  REQUIRE(validate(s).ok());

  const auto even = solve_weight_space(s, Scope::even_only("A"));
  REQUIRE(even.dimension() == 1);
  const double lambda = 3.0;
  const std::vector<double> p{lambda};
  const auto even_w = weight_from_basis(s, even, p);
  const auto w1 = extend_even_weight(s, even_w, "A", 1.0);
  const auto w2 = extend_even_weight(s, even_w, "A", 5.0);
  CHECK(weight_defect(s, w1, Scope::full()) < 1e-9);
  CHECK(weight_defect(s, w2, Scope::full()) < 1e-9);
  for (const auto& o : s.objects()) {
    const double ratio = w2.at(o.id) / w1.at(o.id);
    if (o.left == o.right)
      CHECK(ratio == doctest::Approx(1.0));
    else
      CHECK(ratio == doctest::Approx(o.left == "A" ? 5.0 : 0.2));
  }
  CHECK(solve_weight_space(s, Scope::full()).dimension() == even.dimension() + 1);
}

TEST_CASE("extend_even_weight rejects a non-weight") {
  const auto s = make_tl_path(3).system;
  WeightFunction w = trivial_weight(s);
  w.values["p2"] = 3.0;
  CHECK_THROWS_AS((void)extend_even_weight(s, w, "A", 1.0), Error);
}

TEST_CASE("weight_of_word") {
  WeightFunction w;
  w.values = {{"s", 3.0}, {"t", 5.0}, {"a", 2.0}};
  const std::vector<std::string> one{"s"}, two{"s", "t"}, aaa{"a", "a", "a"};
  CHECK(weight_of_word(w, Sign::plus, one) == doctest::Approx(3.0));
  CHECK(weight_of_word(w, Sign::plus, two) == doctest::Approx(3.0 / 5.0));
  CHECK(weight_of_word(w, Sign::minus, one) == doctest::Approx(1.0 / 3.0));
  CHECK(weight_of_word(w, Sign::plus, aaa) == doctest::Approx(2.0));
}

TEST_CASE("central element coefficients") {
  const auto s = make_tl_path(5).system;
  const auto trivial = trivial_weight(s);
  for (int k = 0; k <= 4; ++k)
    for (auto sign : {Sign::plus, Sign::minus}) {
      const auto c = central_element_coeffs(s, trivial, sign, k);
      for (const auto& [id, v] : c.coeffs) CHECK(v == 1.0);
    }

  const auto z = make_integer_fusion(6);
  const auto basis = solve_weight_space(z, Scope::full());
  const std::vector<double> p{2.0};
  const auto w = weight_from_basis(z, basis, p);
  const auto c = central_element_coeffs(z, w, Sign::plus, 3);
  REQUIRE(c.exact_exponents);
  for (const auto& [id, e] : *c.exact_exponents) {
    const int n = id == "1" ? 0 : std::stoi(id.substr(2));
    CHECK(e.at(0) == n);
    CHECK(c.coeffs.at(id) == doctest::Approx(std::pow(2.0, n)));
  }

  WeightFunction bogus = trivial_weight(z);
  bogus.values["a^1"] = 2.0;
  CHECK_THROWS_AS((void)central_element_coeffs(z, bogus, Sign::plus, 2), Error);
}

TEST_CASE("desk-scale guard") {
  // One object past the cap trips the guard before any rows are built.
  FusionSystemBuilder b;
  b.algebra("A").object("1", "A", "A", "1", true).product("1", "1", {{"1", 1}});
  for (int i = 0; i < 10001; ++i) {
    const std::string id = "g" + std::to_string(i);
    b.object(id, "A", "A", id);
  }
  const auto s = b.build();
  try {
    (void)assemble_constraints(s, Scope::full());
    FAIL("expected LimitExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LimitExceeded);
  }
}

TEST_CASE("property: basis vectors restrict to genuine weights with exact duality") {
  std::vector<FusionSystem> systems{make_integer_fusion(5), make_free_monoid_fusion(3), make_tl_path(6).system,
                                    make_glued_cyclic(2, 3).system};
  for (const auto& s : systems) {
    const auto basis = solve_weight_space(s, Scope::full());
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
      for (ObjectIndex v = 0; v < s.size(); ++v) {
        CHECK(basis.exponent(i, v) + basis.exponent(i, s.dual(v)) == 0);
        if (s.object(v).is_unit) CHECK(basis.exponent(i, v) == 0);
      }
    }
  }
}
