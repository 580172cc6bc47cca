#include "bimod/principal_graph.hpp"

#include <cmath>
#include <deque>
#include <set>

#include "bimod/error.hpp"

namespace bimod {

std::string dual_odd_id(const std::string& odd) { return odd + "*"; }

namespace {

using Adjacency = std::map<std::string, std::map<std::string, long long>>;

struct SideGraph {
  std::vector<std::string> vertices;  // even first, then odd
  Adjacency adj;
  std::string base;
};

SideGraph side_graph(const PrincipalGraphPair& g, Side side) {
  SideGraph out;
  const auto& evens = side == Side::plus ? g.even_plus : g.even_minus;
  const auto& edges = side == Side::plus ? g.edges_plus : g.edges_minus;
  out.base = side == Side::plus ? g.base : g.base_minus;
  std::set<std::string> even_set(evens.begin(), evens.end());
  std::set<std::string> odd_set(g.odd.begin(), g.odd.end());
  for (const auto& e : edges) {
    if (!even_set.contains(e.even) || !odd_set.contains(e.odd))
      throw Error(ErrorKind::InvalidArgument, "edge " + e.even + "—" + e.odd + " references an unknown vertex");
    if (e.mult <= 0) throw Error(ErrorKind::InvalidArgument, "edge " + e.even + "—" + e.odd + " has multiplicity < 1");
    out.adj[e.even][e.odd] += e.mult;
    out.adj[e.odd][e.even] += e.mult;
  }
  if (!even_set.contains(out.base))
    throw Error(ErrorKind::InvalidArgument, "base vertex '" + out.base + "' is not an even vertex");
  out.vertices.assign(evens.begin(), evens.end());
  out.vertices.insert(out.vertices.end(), g.odd.begin(), g.odd.end());
  return out;
}

std::map<std::string, int> distances(const SideGraph& g) {
  std::map<std::string, int> dist{{g.base, 0}};
  std::deque<std::string> queue{g.base};
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    auto it = g.adj.find(v);
    if (it == g.adj.end()) continue;
    for (const auto& [w, m] : it->second) {
      if (dist.contains(w)) continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

}  // namespace

DimensionVector pf_dimensions(const PrincipalGraphPair& graphs, Side side, double tolerance) {
  if (!(tolerance > 0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  const SideGraph g = side_graph(graphs, side);
  const auto dist = distances(g);
  for (const auto& v : g.vertices)
    if (!dist.contains(v)) throw Error(ErrorKind::NoConvergence, "graph is disconnected at vertex '" + v + "'");

  const std::size_t n = g.vertices.size();
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) pos[g.vertices[i]] = i;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& [v, row] : g.adj)
    for (const auto& [w, m] : row) adj[pos.at(v)].emplace_back(pos.at(w), static_cast<double>(m));

  auto apply = [&](const std::vector<double>& x) {
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [j, m] : adj[i]) y[i] += m * x[j];
    return y;
  };

  // A + I has a simple dominant eigenvalue δ + 1 on a connected bipartite
  // graph, so the shift removes the ±δ oscillation of plain power iteration.
  std::vector<double> d(n, 1.0);
  double previous = -1.0;
  for (long it = 1; it <= kPfIterationCap; ++it) {
    auto ad = apply(d);
    std::vector<double> next(n);
    double top = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = d[i] + ad[i];
      top = std::max(top, next[i]);
    }
    for (auto& x : next) x /= top;
    const double estimate = top - 1.0;

    auto an = apply(next);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num += next[i] * an[i];
      den += next[i] * next[i];
    }
    const double rayleigh = num / den;
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(an[i] - rayleigh * next[i]));
    d = std::move(next);

    if (std::abs(estimate - previous) < tolerance && residual <= tolerance) {
      DimensionVector out;
      const double scale = d[pos.at(g.base)];
      for (std::size_t i = 0; i < n; ++i) out.values[g.vertices[i]] = d[i] / scale;
      out.norm = rayleigh;
      out.iterations = it;
      return out;
    }
    previous = estimate;
  }
  throw Error(ErrorKind::NoConvergence, "power iteration hit the cap of " + std::to_string(kPfIterationCap));
}

FusionSystem generate_from_graph(const PrincipalGraphPair& graphs, int depth) {
  if (depth < 1) throw Error(ErrorKind::DepthZero, "depth must be at least 1");
  {
    std::set<std::string> names;
    for (const auto* list : {&graphs.even_plus, &graphs.even_minus, &graphs.odd})
      for (const auto& v : *list)
        if (!names.insert(v).second) throw Error(ErrorKind::InvalidArgument, "vertex name '" + v + "' is repeated");
    for (const auto& v : graphs.odd)
      if (names.contains(dual_odd_id(v)))
        throw Error(ErrorKind::InvalidArgument, "vertex name '" + dual_odd_id(v) + "' collides with a dual");
  }
  const SideGraph plus = side_graph(graphs, Side::plus);
  const SideGraph minus = side_graph(graphs, Side::minus);
  const auto dplus = distances(plus);
  const auto dminus = distances(minus);
  for (const auto* g : {&plus, &minus})
    for (const auto& v : g->vertices)
      if (!(g == &plus ? dplus : dminus).contains(v))
        throw Error(ErrorKind::InvalidArgument, "graph is disconnected at vertex '" + v + "'");

  // The generator is the unique odd neighbour of the base, possibly with a
  // multiplicity; every other edge count is then a multiple of it.
  const auto& base_row = plus.adj.count(graphs.base) ? plus.adj.at(graphs.base) : std::map<std::string, long long>{};
  if (base_row.size() != 1)
    throw Error(ErrorKind::InvalidArgument,
                "base must have exactly one odd neighbour; a generator with several distinct constituents is "
                "not determined by the graph");
  const std::string gen = base_row.begin()->first;
  const long long gen_mult = base_row.begin()->second;
  const auto& minus_base_row =
      minus.adj.count(graphs.base_minus) ? minus.adj.at(graphs.base_minus) : std::map<std::string, long long>{};
  if (minus_base_row.size() != 1 || minus_base_row.begin()->first != gen || minus_base_row.begin()->second != gen_mult)
    throw Error(ErrorKind::InvalidArgument, "minus base must be joined to the generator exactly as the plus base");
  auto per_constituent = [&](long long edge, const std::string& a, const std::string& b) {
    if (edge % gen_mult != 0)
      throw Error(ErrorKind::InvalidArgument, "edge " + a + "—" + b + " is not a multiple of the generator multiplicity");
    return static_cast<int>(edge / gen_mult);
  };

  auto within = [&](const std::map<std::string, int>& dist, const std::string& v) {
    auto it = dist.find(v);
    return it != dist.end() && it->second <= depth;
  };
  std::set<std::string> keep_plus, keep_minus, keep_odd;
  for (const auto& x : graphs.even_plus)
    if (within(dplus, x)) keep_plus.insert(x);
  for (const auto& u : graphs.even_minus)
    if (within(dminus, u)) keep_minus.insert(u);
  for (const auto& y : graphs.odd)
    if (within(dplus, y) || within(dminus, y)) keep_odd.insert(y);

  auto dual_even = [&](const std::string& v) {
    auto it = graphs.even_duals.find(v);
    return it == graphs.even_duals.end() ? v : it->second;
  };

  FusionSystemBuilder b;
  b.algebra("A").algebra("B");
  for (const auto& x : graphs.even_plus)
    if (keep_plus.contains(x)) b.object(x, "A", "A", dual_even(x), x == graphs.base);
  for (const auto& y : graphs.odd)
    if (keep_odd.contains(y)) b.object(y, "A", "B", dual_odd_id(y));
  for (const auto& y : graphs.odd)
    if (keep_odd.contains(y)) b.object(dual_odd_id(y), "B", "A", y);
  for (const auto& u : graphs.even_minus)
    if (keep_minus.contains(u)) b.object(u, "B", "B", dual_even(u), u == graphs.base_minus);

  const std::string gen_dual = dual_odd_id(gen);
  using List = std::vector<std::pair<std::string, std::optional<int>>>;
  // Products of kept vertices with H (resp. H̄) read off the neighbours.
  auto emit = [&](const SideGraph& g, const std::set<std::string>& from, const std::set<std::string>& to,
                  const std::string& factor, bool to_is_dual_odd, bool from_is_dual_odd) {
    for (const auto& v : from) {
      List list;
      bool truncated = false;
      auto it = g.adj.find(v);
      if (it != g.adj.end()) {
        for (const auto& [w, m] : it->second) {
          if (!to.contains(w)) {
            truncated = true;
            continue;
          }
          list.emplace_back(to_is_dual_odd ? dual_odd_id(w) : w, per_constituent(m, v, w));
        }
      }
      b.product(from_is_dual_odd ? dual_odd_id(v) : v, factor, std::move(list), truncated);
    }
  };
  emit(plus, keep_plus, keep_odd, gen, false, false);        // x ⊗ H ∋ y
  emit(plus, keep_odd, keep_plus, gen_dual, false, false);   // y ⊗ H̄ ∋ x
  emit(minus, keep_minus, keep_odd, gen_dual, true, false);  // u ⊗ H̄ ∋ ȳ
  emit(minus, keep_odd, keep_minus, gen, false, true);       // ȳ ⊗ H ∋ u

  b.generator(gen, static_cast<int>(gen_mult));
  b.completeness(Completeness::truncated_at(depth));
  return b.build();
}

PrincipalGraphPair principal_graph_of(const FusionSystem& s) {
  if (!s.has_generator()) throw Error(ErrorKind::InvalidArgument, "system has no generator");
  const auto& g0 = s.object(s.generator().front().object);
  const std::string L = g0.left, R = g0.right;
  const bool folded = L == R;
  auto unit_l = s.unit_of(L);
  auto unit_r = s.unit_of(R);
  if (!unit_l || !unit_r) throw Error(ErrorKind::InvalidArgument, "generator sector lacks a unit");

  auto odd_name = [&](ObjectIndex y) { return folded ? s.id(y) + "@odd" : s.id(y); };
  auto minus_name = [&](ObjectIndex u) { return folded ? s.id(u) + "@minus" : s.id(u); };

  PrincipalGraphPair out;
  out.base = s.id(*unit_l);
  out.base_minus = minus_name(*unit_r);

  auto mult_of = [](const std::optional<long long>& m) { return static_cast<int>(m.value_or(1)); };

  // Alternate x ⊗ H and y ⊗ H̄ from the unit; `dual_side` walks u ⊗ H̄, ȳ ⊗ H.
  auto walk = [&](ObjectIndex start, bool dual_side, std::vector<std::string>& evens,
                  std::vector<GraphEdge>& edges, std::set<ObjectIndex>& odd_seen) {
    std::set<ObjectIndex> even_seen{start};
    std::deque<std::pair<ObjectIndex, bool>> queue{{start, true}};
    evens.push_back(dual_side ? minus_name(start) : s.id(start));
    std::set<ObjectIndex> visited_odd;
    while (!queue.empty()) {
      auto [v, is_even] = queue.front();
      queue.pop_front();
      const bool use_dual = (is_even == dual_side);
      auto prod = generator_product(s, v, use_dual);
      for (const auto& [c, m] : prod.constituents) {
        if (is_even) {
          ObjectIndex y = dual_side ? s.dual(c) : c;
          edges.push_back({dual_side ? minus_name(v) : s.id(v), odd_name(y), mult_of(m)});
          odd_seen.insert(y);
          if (visited_odd.insert(c).second) queue.emplace_back(c, false);
        } else if (even_seen.insert(c).second) {
          evens.push_back(dual_side ? minus_name(c) : s.id(c));
          queue.emplace_back(c, true);
        }
      }
    }
  };
  std::set<ObjectIndex> odd_plus, odd_minus;
  walk(*unit_l, false, out.even_plus, out.edges_plus, odd_plus);
  walk(*unit_r, true, out.even_minus, out.edges_minus, odd_minus);
  odd_plus.insert(odd_minus.begin(), odd_minus.end());
  for (ObjectIndex y : odd_plus) out.odd.push_back(odd_name(y));

  for (const auto& x : out.even_plus) {
    ObjectIndex i = s.index_of(x);
    if (s.dual(i) != i) out.even_duals[x] = s.id(s.dual(i));
  }
  for (const auto& u : out.even_minus) {
    ObjectIndex i = s.index_of(folded ? u.substr(0, u.size() - 6) : u);
    if (s.dual(i) != i) out.even_duals[u] = minus_name(s.dual(i));
  }
  return out;
}

}  // namespace bimod
