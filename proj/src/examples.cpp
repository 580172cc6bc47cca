#include "bimod/examples.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

#include "bimod/error.hpp"

namespace bimod {

// ---------------------------------------------------------------------------
// Groups

void check_group(const GroupTable& g) {
  const std::size_t n = g.order();
  if (n == 0) throw Error(ErrorKind::NotAGroup, "empty table");
  if (g.mul.size() != n) throw Error(ErrorKind::NotAGroup, "closure: table has the wrong number of rows");
  for (const auto& row : g.mul) {
    if (row.size() != n) throw Error(ErrorKind::NotAGroup, "closure: table has a row of the wrong length");
    for (auto x : row)
      if (x >= n) throw Error(ErrorKind::NotAGroup, "closure: product outside the element set");
  }
  std::optional<std::size_t> e;
  for (std::size_t x = 0; x < n && !e; ++x) {
    bool ok = true;
    for (std::size_t y = 0; y < n && ok; ++y) ok = g.mul[x][y] == y && g.mul[y][x] == y;
    if (ok) e = x;
  }
  if (!e) throw Error(ErrorKind::NotAGroup, "identity: no two-sided identity element");
  for (std::size_t x = 0; x < n; ++x) {
    bool found = false;
    for (std::size_t y = 0; y < n && !found; ++y) found = g.mul[x][y] == *e && g.mul[y][x] == *e;
    if (!found) throw Error(ErrorKind::NotAGroup, "inverses: '" + g.names[x] + "' has no inverse");
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (g.mul[g.mul[x][y]][z] != g.mul[x][g.mul[y][z]])
          throw Error(ErrorKind::NotAGroup, "associativity fails at (" + g.names[x] + ", " + g.names[y] + ", " +
                                                g.names[z] + ")");
}

std::size_t identity_of(const GroupTable& g) {
  for (std::size_t x = 0; x < g.order(); ++x)
    if (g.mul[x][x] == x) return x;
  throw Error(ErrorKind::NotAGroup, "identity: no idempotent element");
}

std::size_t inverse_of(const GroupTable& g, std::size_t x) {
  const std::size_t e = identity_of(g);
  for (std::size_t y = 0; y < g.order(); ++y)
    if (g.mul[x][y] == e) return y;
  throw Error(ErrorKind::NotAGroup, "inverses: '" + g.names[x] + "' has no inverse");
}

GroupTable cyclic_group(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "cyclic group order must be positive");
  GroupTable g;
  for (std::size_t i = 0; i < n; ++i) g.names.push_back(i == 0 ? "e" : i == 1 ? "g" : "g^" + std::to_string(i));
  g.mul.assign(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g.mul[i][j] = (i + j) % n;
  return g;
}

namespace {

std::string cycle_name(const std::vector<std::size_t>& perm) {
  std::string out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i] || perm[i] == i) continue;
    out += "(";
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      out += std::to_string(j + 1);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

}  // namespace

GroupTable symmetric_group(std::size_t n) {
  if (n == 0 || n > 5) throw Error(ErrorKind::InvalidArgument, "symmetric group degree must be in 1..5");
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  GroupTable g;
  for (const auto& q : perms) g.names.push_back(cycle_name(q));
  g.mul.assign(perms.size(), std::vector<std::size_t>(perms.size()));
  for (std::size_t i = 0; i < perms.size(); ++i)
    for (std::size_t j = 0; j < perms.size(); ++j) {
      std::vector<std::size_t> c(n);
      for (std::size_t x = 0; x < n; ++x) c[x] = perms[i][perms[j][x]];  // (στ)(x) = σ(τ(x))
      g.mul[i][j] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return g;
}

GroupTable direct_product(const GroupTable& a, const GroupTable& b) {
  GroupTable g;
  const std::size_t n = a.order(), m = b.order();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) g.names.push_back("(" + a.names[i] + "," + b.names[j] + ")");
  g.mul.assign(n * m, std::vector<std::size_t>(n * m));
  for (std::size_t x = 0; x < n * m; ++x)
    for (std::size_t y = 0; y < n * m; ++y)
      g.mul[x][y] = a.mul[x / m][y / m] * m + b.mul[x % m][y % m];
  return g;
}

std::size_t element_named(const GroupTable& g, const std::string& name) {
  auto it = std::find(g.names.begin(), g.names.end(), name);
  if (it == g.names.end()) throw Error(ErrorKind::InvalidArgument, "no group element named '" + name + "'");
  return static_cast<std::size_t>(it - g.names.begin());
}

std::vector<std::size_t> subgroup_generated(const GroupTable& g, const std::vector<std::string>& generators) {
  std::set<std::size_t> sub{identity_of(g)};
  std::vector<std::size_t> gens;
  for (const auto& name : generators) gens.push_back(element_named(g, name));
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t x : std::vector<std::size_t>(sub.begin(), sub.end()))
      for (std::size_t y : gens) grew = sub.insert(g.mul[x][y]).second || grew;
  }
  return {sub.begin(), sub.end()};
}

// ---------------------------------------------------------------------------
// Fusion systems

namespace {

std::string power_id(int n) { return n == 0 ? "1" : "a^" + std::to_string(n); }

void check_subgroup(const GroupTable& g, const std::vector<std::size_t>& s, const std::string& name) {
  if (s.empty()) throw Error(ErrorKind::NotASubgroup, name + " is empty");
  std::set<std::size_t> set(s.begin(), s.end());
  for (auto x : s)
    if (x >= g.order()) throw Error(ErrorKind::NotASubgroup, name + " has an element outside the group");
  if (!set.contains(identity_of(g))) throw Error(ErrorKind::NotASubgroup, name + " lacks the identity");
  for (auto x : set) {
    if (!set.contains(inverse_of(g, x)))
      throw Error(ErrorKind::NotASubgroup, name + " is not closed under inverses at '" + g.names[x] + "'");
    for (auto y : set)
      if (!set.contains(g.mul[x][y]))
        throw Error(ErrorKind::NotASubgroup, name + " is not closed under products at ('" + g.names[x] + "', '" +
                                                 g.names[y] + "')");
  }
}

}  // namespace

FusionSystem make_integer_fusion(int range) {
  if (range < 1) throw Error(ErrorKind::InvalidArgument, "range must be at least 1");
  std::vector<int> order{0};
  for (int n = 1; n <= range; ++n) {
    order.push_back(n);
    order.push_back(-n);
  }
  FusionSystemBuilder b;
  b.algebra("A");
  for (int n : order) b.object(power_id(n), "A", "A", power_id(-n), n == 0);
  for (int m : order)
    for (int n : order) {
      if (std::abs(m + n) <= range)
        b.product(power_id(m), power_id(n), {{power_id(m + n), 1}});
      else
        b.product(power_id(m), power_id(n), {}, true);
    }
  b.generator(power_id(1), 1);
  // a^n ↦ λ^n already spans every weight on Z, so the cut loses none.
  b.completeness(Completeness::truncated_at(range, true));
  return b.build();
}

FusionSystem make_group_fusion(const GroupTable& group) {
  check_group(group);
  const std::size_t n = group.order();
  const std::size_t e = identity_of(group);
  FusionSystemBuilder b;
  b.algebra("A");
  for (std::size_t x = 0; x < n; ++x) b.object(group.names[x], "A", "A", group.names[inverse_of(group, x)], x == e);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) b.product(group.names[x], group.names[y], {{group.names[group.mul[x][y]], 1}});

  // Greedy generating set in element order.
  std::set<std::size_t> reached{e};
  for (std::size_t x = 0; x < n && reached.size() < n; ++x) {
    if (reached.contains(x)) continue;
    b.generator(group.names[x], 1);
    bool grew = true;
    reached.insert(x);
    while (grew) {
      grew = false;
      for (std::size_t p : std::vector<std::size_t>(reached.begin(), reached.end()))
        for (std::size_t q : std::vector<std::size_t>(reached.begin(), reached.end()))
          grew = reached.insert(group.mul[p][q]).second || grew;
    }
  }
  b.completeness(Completeness::complete());
  return b.build();
}

FusionSystem make_cyclic_fusion(std::size_t n) { return make_group_fusion(cyclic_group(n)); }

std::string free_monoid_dual(const std::string& word) {
  std::string out(word.rbegin(), word.rend());
  for (auto& ch : out) ch = ch == 'a' ? 'b' : 'a';
  return out;
}

FusionSystem make_free_monoid_fusion(int max_length) {
  if (max_length < 1) throw Error(ErrorKind::InvalidArgument, "max word length must be at least 1");
  std::vector<std::string> words{""};
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t first = words.size();
    for (std::size_t i = 0; i < first; ++i) {
      if (static_cast<int>(words[i].size()) != len - 1) continue;
      words.push_back(words[i] + "a");
      words.push_back(words[i] + "b");
    }
  }
  auto id = [](const std::string& w) { return w.empty() ? std::string("1") : w; };

  FusionSystemBuilder b;
  b.algebra("A");
  for (const auto& w : words) b.object(id(w), "A", "A", id(free_monoid_dual(w)), w.empty());
  for (const auto& w1 : words) {
    for (const auto& w2 : words) {
      // c ∈ w1 ⊗ w2 iff w1 = x·d and w2 = d̄·y with c = x·y.
      std::set<std::string> found;
      bool truncated = false;
      for (std::size_t cut = 0; cut <= w1.size(); ++cut) {
        const std::string x = w1.substr(0, w1.size() - cut);
        const std::string d = w1.substr(w1.size() - cut);
        const std::string dbar = free_monoid_dual(d);
        if (w2.compare(0, dbar.size(), dbar) != 0 || dbar.size() > w2.size()) continue;
        const std::string c = x + w2.substr(dbar.size());
        if (static_cast<int>(c.size()) > max_length)
          truncated = true;
        else
          found.insert(c);
      }
      std::vector<std::pair<std::string, std::optional<int>>> list;
      for (const auto& c : found) list.emplace_back(id(c), 1);
      b.product(id(w1), id(w2), std::move(list), truncated);
    }
  }
  b.generator("a", 1);
  // λ^{#a − #b} restricts to a spanning vector on every truncation.
  b.completeness(Completeness::truncated_at(max_length, true));
  return b.build();
}

TlPath make_tl_path(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "path length must be at least 2");
  const int level = n - 1;
  auto name = [](char left, char right, int spin) {
    if (left == 'A' && right == 'A') return "p" + std::to_string(spin);
    if (left == 'B' && right == 'B') return "m" + std::to_string(spin);
    if (left == 'A') return "h" + std::to_string(spin);
    return dual_odd_id("h" + std::to_string(spin));
  };
  auto sector_of = [](char left, int spin) { return spin % 2 == 0 ? left : (left == 'A' ? 'B' : 'A'); };

  TlPath out;
  auto& g = out.graphs;
  for (int j = 0; j < n; ++j) {
    if (j % 2 == 0) {
      g.even_plus.push_back(name('A', 'A', j));
      g.even_minus.push_back(name('B', 'B', j));
    } else {
      g.odd.push_back(name('A', 'B', j));
    }
  }
  for (int j = 0; j + 1 < n; ++j) {
    const int even = j % 2 == 0 ? j : j + 1;
    const int odd = j % 2 == 0 ? j + 1 : j;
    g.edges_plus.push_back({name('A', 'A', even), name('A', 'B', odd), 1});
    g.edges_minus.push_back({name('B', 'B', even), name('A', 'B', odd), 1});
  }
  g.base = name('A', 'A', 0);
  g.base_minus = name('B', 'B', 0);

  FusionSystemBuilder b;
  b.algebra("A").algebra("B");
  struct Obj {
    char left, right;
    int spin;
  };
  std::vector<Obj> objs;
  for (char left : {'A', 'B'})
    for (int j = 0; j < n; ++j) objs.push_back({left, sector_of(left, j), j});
  for (const auto& o : objs) {
    b.object(name(o.left, o.right, o.spin), std::string(1, o.left), std::string(1, o.right),
             name(o.right, o.left, o.spin), o.spin == 0);
  }
  // Truncated SU(2) rule: i ⊗ j = ⊕ l, |i-j| ≤ l ≤ min(i+j, 2k-i-j), step 2.
  for (const auto& x : objs)
    for (const auto& y : objs) {
      if (x.right != y.left) continue;
      std::vector<std::pair<std::string, std::optional<int>>> list;
      for (int l = std::abs(x.spin - y.spin); l <= std::min(x.spin + y.spin, 2 * level - x.spin - y.spin); l += 2)
        list.emplace_back(name(x.left, y.right, l), 1);
      b.product(name(x.left, x.right, x.spin), name(y.left, y.right, y.spin), std::move(list));
    }
  b.generator(name('A', 'B', 1), 1);
  b.completeness(Completeness::complete());
  out.system = b.build();

  const DimensionVector pf = pf_dimensions(g, Side::plus);
  const std::string gen = name('A', 'B', 1);
  out.dims.constituents.push_back({gen, pf.values.at(gen), pf.values.at(gen), 1});
  return out;
}

Bicategory3 make_double_coset(const GroupTable& group, const std::vector<std::size_t>& sub_a,
                              const std::vector<std::size_t>& sub_b, const std::vector<std::size_t>& sub_c) {
  check_group(group);
  check_subgroup(group, sub_a, "S_A");
  check_subgroup(group, sub_b, "S_B");
  check_subgroup(group, sub_c, "S_C");
  const std::size_t n = group.order();
  const std::size_t e = identity_of(group);
  const std::vector<std::string> labels{"A", "B", "C"};
  const std::vector<std::set<std::size_t>> subs{{sub_a.begin(), sub_a.end()},
                                                {sub_b.begin(), sub_b.end()},
                                                {sub_c.begin(), sub_c.end()}};

  struct Coset {
    std::size_t left, right;
    std::set<std::size_t> elements;
    std::string id;
  };
  std::vector<Coset> cosets;
  // coset_of[X][Y][g] = index into cosets
  std::vector<std::vector<std::vector<std::size_t>>> coset_of(3, std::vector<std::vector<std::size_t>>(3));
  for (std::size_t X = 0; X < 3; ++X)
    for (std::size_t Y = 0; Y < 3; ++Y) {
      coset_of[X][Y].assign(n, SIZE_MAX);
      for (std::size_t g = 0; g < n; ++g) {
        if (coset_of[X][Y][g] != SIZE_MAX) continue;
        Coset c{X, Y, {}, labels[X] + labels[Y] + ":" + group.names[g]};
        for (auto s : subs[X])
          for (auto t : subs[Y]) c.elements.insert(group.mul[group.mul[s][g]][t]);
        for (auto x : c.elements) coset_of[X][Y][x] = cosets.size();
        cosets.push_back(std::move(c));
      }
    }

  FusionSystemBuilder b;
  for (const auto& l : labels) b.algebra(l);
  for (const auto& c : cosets) {
    const std::size_t rep = *c.elements.begin();
    const auto& dual = cosets[coset_of[c.right][c.left][inverse_of(group, rep)]];
    b.object(c.id, labels[c.left], labels[c.right], dual.id, c.left == c.right && c.elements.contains(e));
  }
  for (const auto& x : cosets)
    for (const auto& y : cosets) {
      if (x.right != y.left) continue;
      std::set<std::size_t> hit;
      for (auto p : x.elements)
        for (auto q : y.elements) hit.insert(coset_of[x.left][y.right][group.mul[p][q]]);
      std::vector<std::pair<std::string, std::optional<int>>> list;
      for (auto h : hit) list.emplace_back(cosets[h].id, std::nullopt);
      b.product(x.id, y.id, std::move(list));
    }
  b.completeness(Completeness::complete());
  Bicategory3 out;
  out.system = b.build();
  out.gen_ab = out.system.index_of(cosets[coset_of[0][1][e]].id);
  out.gen_bc = out.system.index_of(cosets[coset_of[1][2][e]].id);
  return out;
}

Bicategory3 make_double_coset(const GroupTable& group, const std::vector<std::size_t>& h,
                              const std::vector<std::size_t>& k) {
  return make_double_coset(group, h, k, h);
}

Bicategory3 make_glued_cyclic(std::size_t n1, std::size_t n2) {
  const GroupTable g = direct_product(cyclic_group(n1), cyclic_group(n2));
  std::vector<std::size_t> first, second;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (x % n2 == 0) first.push_back(x);
    if (x / n2 == 0) second.push_back(x);
  }
  return make_double_coset(g, first, {identity_of(g)}, second);
}

// ---------------------------------------------------------------------------
// Descriptors

const char* to_string(ExampleKind kind) noexcept {
  switch (kind) {
    case ExampleKind::integer_fusion: return "integer";
    case ExampleKind::cyclic_group: return "zn";
    case ExampleKind::finite_group: return "group";
    case ExampleKind::free_monoid: return "free-monoid";
    case ExampleKind::tl_path: return "tl";
    case ExampleKind::double_coset: return "double-coset";
    case ExampleKind::glued_cyclic: return "glued-cyclic";
  }
  return "?";
}

std::optional<ExampleKind> example_kind_from_string(const std::string& name) {
  for (auto k : {ExampleKind::integer_fusion, ExampleKind::cyclic_group, ExampleKind::finite_group,
                 ExampleKind::free_monoid, ExampleKind::tl_path, ExampleKind::double_coset,
                 ExampleKind::glued_cyclic})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

namespace {

int int_param(const ExampleDescriptor& d, const std::string& key, int fallback, int lo, int hi) {
  auto it = d.parameters.find(key);
  int value = fallback;
  if (it != d.parameters.end()) {
    const auto& s = it->second;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw Error(ErrorKind::InvalidArgument, "parameter '" + key + "' is not an integer: '" + s + "'");
  }
  if (value < lo || value > hi)
    throw Error(ErrorKind::InvalidArgument, "parameter '" + key + "' must lie in [" + std::to_string(lo) + ", " +
                                                std::to_string(hi) + "]");
  return value;
}

std::string str_param(const ExampleDescriptor& d, const std::string& key, const std::string& fallback) {
  auto it = d.parameters.find(key);
  return it == d.parameters.end() ? fallback : it->second;
}

GroupTable group_by_name(const std::string& name) {
  auto number = [&](std::size_t from) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(name.data() + from, name.data() + name.size(), v);
    if (ec != std::errc() || ptr != name.data() + name.size() || v < 1)
      throw Error(ErrorKind::InvalidArgument, "unknown group '" + name + "'");
    return static_cast<std::size_t>(v);
  };
  if (name.size() > 1 && name[0] == 's') return symmetric_group(number(1));
  if (name.size() > 1 && name[0] == 'z') {
    const std::size_t n = number(1);
    if (n > 64) throw Error(ErrorKind::InvalidArgument, "cyclic group order must be at most 64");
    return cyclic_group(n);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown group '" + name + "' (expected sN or zN)");
}

// "e" for the trivial subgroup, "all" for G, else comma-separated generators.
std::vector<std::size_t> subgroup_by_spec(const GroupTable& g, const std::string& spec) {
  if (spec == "all") {
    std::vector<std::size_t> out(g.order());
    std::iota(out.begin(), out.end(), 0);
    return out;
  }
  std::vector<std::string> names;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = spec.find(',', start);
    const std::string part = spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!part.empty()) names.push_back(part);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return subgroup_generated(g, names);
}

}  // namespace

ExampleOutput make_example(const ExampleDescriptor& d) {
  ExampleOutput out;
  switch (d.kind) {
    case ExampleKind::integer_fusion:
      out.system = make_integer_fusion(int_param(d, "range", 3, 1, 1000));
      break;
    case ExampleKind::cyclic_group:
      out.system = make_cyclic_fusion(static_cast<std::size_t>(int_param(d, "n", 2, 1, 64)));
      break;
    case ExampleKind::finite_group:
      out.system = make_group_fusion(group_by_name(str_param(d, "group", "s3")));
      break;
    case ExampleKind::free_monoid:
      out.system = make_free_monoid_fusion(int_param(d, "length", 2, 1, 8));
      break;
    case ExampleKind::tl_path: {
      auto tl = make_tl_path(int_param(d, "n", 3, 2, 64));
      out.system = std::move(tl.system);
      out.dims = std::move(tl.dims);
      break;
    }
    case ExampleKind::double_coset: {
      const GroupTable g = group_by_name(str_param(d, "group", "s3"));
      auto b = make_double_coset(g, subgroup_by_spec(g, str_param(d, "h", "(12)")),
                                 subgroup_by_spec(g, str_param(d, "k", "(123)")));
      out.system = std::move(b.system);
      out.bicategory_generators = {b.gen_ab, b.gen_bc};
      break;
    }
    case ExampleKind::glued_cyclic: {
      auto b = make_glued_cyclic(static_cast<std::size_t>(int_param(d, "n1", 2, 1, 16)),
                                 static_cast<std::size_t>(int_param(d, "n2", 2, 1, 16)));
      out.system = std::move(b.system);
      out.bicategory_generators = {b.gen_ab, b.gen_bc};
      break;
    }
  }
  return out;
}

}  // namespace bimod
