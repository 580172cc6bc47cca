#include "bimod/composition.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>

#include "bimod/error.hpp"

namespace bimod {

namespace {

std::vector<Constituent> summed(ObjectIndex first, const std::vector<ObjectIndex>& rest) {
  std::map<ObjectIndex, int> count{{first, 1}};
  for (ObjectIndex v : rest) ++count[v];
  std::vector<Constituent> out;
  for (auto [v, m] : count) out.push_back({v, m});
  return out;
}

}  // namespace

std::vector<Constituent> generator_ab(const Bicategory3& b) { return summed(b.gen_ab, b.summands_ab); }
std::vector<Constituent> generator_bc(const Bicategory3& b) { return summed(b.gen_bc, b.summands_bc); }

ValidationReport validate(const Bicategory3& b) {
  ValidationReport out = validate(b.system);
  const auto& s = b.system;
  auto in_range = [&](ObjectIndex v) { return v < s.size(); };
  if (!in_range(b.gen_ab) || !in_range(b.gen_bc) || !std::all_of(b.summands_ab.begin(), b.summands_ab.end(), in_range) ||
      !std::all_of(b.summands_bc.begin(), b.summands_bc.end(), in_range)) {
    out.violations.push_back({"bicategory-generator", "generator index out of range"});
    return out;
  }
  const auto& ab = s.object(b.gen_ab);
  const auto& bc = s.object(b.gen_bc);
  if (ab.is_unit || bc.is_unit) out.violations.push_back({"bicategory-generator", "generators must not be units"});
  if (ab.right != bc.left)
    out.violations.push_back({"bicategory-generator", "'" + ab.id + "' and '" + bc.id + "' do not share a middle algebra"});
  if (ab.left == ab.right || bc.left == bc.right)
    out.violations.push_back({"bicategory-generator", "generators must connect distinct algebras"});
  auto same_sector = [&](const FusionObject& head, const std::vector<ObjectIndex>& rest) {
    for (ObjectIndex v : rest)
      if (s.object(v).left != head.left || s.object(v).right != head.right)
        out.violations.push_back({"bicategory-generator", "summand '" + s.id(v) + "' is not in the sector of '" + head.id + "'"});
  };
  same_sector(ab, b.summands_ab);
  same_sector(bc, b.summands_bc);
  return out;
}

namespace {

struct Closure {
  std::set<ObjectIndex> objects;
  bool exhausted = false;
  bool closed = false;
};

Closure close_under(const FusionSystem& s, std::span<const Constituent> generator, int depth) {
  Closure out;
  if (generator.empty()) throw Error(ErrorKind::InvalidArgument, "empty generator");
  std::set<ObjectIndex> letters;
  for (const auto& g : generator) {
    letters.insert(g.object);
    letters.insert(s.dual(g.object));
  }
  const auto& g0 = s.object(generator.front().object);
  std::set<ObjectIndex> frontier;
  for (const auto& label : {g0.left, g0.right}) {
    auto unit = s.unit_of(label);
    if (!unit) throw Error(ErrorKind::InvalidArgument, "algebra '" + label + "' has no unit");
    frontier.insert(*unit);
  }
  out.objects = frontier;
  for (int step = 1; step <= depth + 1; ++step) {
    std::set<ObjectIndex> next;
    bool hit_unknown = false;
    for (ObjectIndex x : frontier) {
      for (ObjectIndex h : letters) {
        if (!s.composable(x, h)) continue;
        const TensorEntry* e = s.entry(x, h);
        if (!e) {
          hit_unknown = true;
          continue;
        }
        hit_unknown = hit_unknown || e->truncated;
        for (const auto& c : e->constituents)
          if (!out.objects.contains(c.object)) next.insert(c.object);
      }
    }
    if (step == depth + 1) {
      // The probe step: certifies closure, contributes nothing.
      out.closed = next.empty() && !hit_unknown && !out.exhausted;
      break;
    }
    out.exhausted = out.exhausted || hit_unknown;
    if (next.empty() && !out.exhausted) {
      out.closed = true;
      break;
    }
    out.objects.insert(next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

FusionSystem induced(const FusionSystem& s, const Closure& closure, std::span<const Constituent> generator, int depth) {
  std::vector<ObjectIndex> kept(closure.objects.begin(), closure.objects.end());
  std::set<std::string> labels;
  for (ObjectIndex v : kept) {
    labels.insert(s.object(v).left);
    labels.insert(s.object(v).right);
  }
  FusionSystemBuilder b;
  for (const auto& label : s.algebras())
    if (labels.contains(label)) b.algebra(label);
  for (ObjectIndex v : kept) {
    const auto& o = s.object(v);
    if (!closure.objects.contains(o.dual))
      throw Error(ErrorKind::InvalidArgument, "closure lost the dual of '" + o.id + "'");
    b.object(o.id, o.left, o.right, s.id(o.dual), o.is_unit);
  }
  bool any_gap = false;
  for (ObjectIndex a : kept) {
    for (ObjectIndex c : kept) {
      if (!s.composable(a, c)) continue;
      const TensorEntry* e = s.entry(a, c);
      if (!e) {
        any_gap = true;
        continue;
      }
      std::vector<std::pair<std::string, std::optional<int>>> list;
      bool truncated = e->truncated;
      for (const auto& k : e->constituents) {
        if (closure.objects.contains(k.object))
          list.emplace_back(s.id(k.object), k.mult);
        else
          truncated = true;
      }
      any_gap = any_gap || truncated;
      b.product(s.id(a), s.id(c), std::move(list), truncated);
    }
  }
  // A generator made of units only generates nothing and is not recorded.
  if (!std::all_of(generator.begin(), generator.end(),
                   [&](const Constituent& g) { return s.object(g.object).is_unit; }))
    for (const auto& g : generator) b.generator(s.id(g.object), g.mult);
  if (closure.closed && !closure.exhausted && !any_gap) {
    b.completeness(Completeness::complete());
  } else {
    const bool certified = s.completeness().certified && kept.size() == s.size();
    b.completeness(Completeness::truncated_at(depth, certified));
  }
  return b.build();
}

}  // namespace

FusionSystem generated_subsystem(const FusionSystem& s, std::span<const Constituent> generator, int depth) {
  if (depth < 1) throw Error(ErrorKind::DepthZero, "depth must be at least 1");
  return induced(s, close_under(s, generator, depth), generator, depth);
}

FusionSystem generated_subsystem(const FusionSystem& s, ObjectIndex generator, int depth) {
  const Constituent g{generator, 1};
  return generated_subsystem(s, std::span<const Constituent>(&g, 1), depth);
}

FusionSystem compose(const Bicategory3& b, int depth) {
  if (depth < 1) throw Error(ErrorKind::DepthZero, "depth must be at least 1");
  const auto& s = b.system;
  std::map<ObjectIndex, std::optional<int>> product;
  for (const auto& x : generator_ab(b))
    for (const auto& y : generator_bc(b)) {
      const TensorEntry* e = s.entry(x.object, y.object);
      if (!e || e->truncated)
        throw Error(ErrorKind::TruncationExhausted,
                    "product of '" + s.id(x.object) + "' and '" + s.id(y.object) + "' is not fully known");
      for (const auto& c : e->constituents) {
        std::optional<int> add;
        if (c.mult && x.mult && y.mult) add = *c.mult * *x.mult * *y.mult;
        auto [it, fresh] = product.emplace(c.object, add);
        if (!fresh) it->second = it->second && add ? std::optional<int>(*it->second + *add) : std::nullopt;
      }
    }
  std::vector<Constituent> generator;
  for (const auto& [v, m] : product) generator.push_back({v, m});
  const Closure closure = close_under(s, generator, depth);
  if (closure.exhausted)
    throw Error(ErrorKind::TruncationExhausted, "composite closure left the known object set before depth " +
                                                    std::to_string(depth));
  return induced(s, closure, generator, depth);
}

const TheoremReport& TheoremReport::require_pass() const {
  if (!pass) throw Error(ErrorKind::TheoremViolation, note);
  return *this;
}

TheoremReport verify_tpc_closure(const Bicategory3& b, int depth) {
  const FusionSystem first = generated_subsystem(b.system, generator_ab(b), depth);
  const FusionSystem second = generated_subsystem(b.system, generator_bc(b), depth);
  const FusionSystem composite = compose(b, depth);

  auto f1 = std::async(std::launch::async, [&] { return is_tpc(first); });
  auto f2 = std::async(std::launch::async, [&] { return is_tpc(second); });
  TheoremReport out;
  out.composite = is_tpc(composite);
  out.first = f1.get();
  out.second = f2.get();

  out.hypothesis = out.first.tpc && out.second.tpc;
  out.conclusion = out.composite.tpc;
  const bool counterexample = out.hypothesis && !out.conclusion;
  out.provisional = (counterexample && out.composite.provisional) ||
                    (!out.hypothesis && (out.first.provisional || out.second.provisional));
  out.pass = !counterexample || out.composite.provisional;
  if (!out.hypothesis)
    out.note = "hypothesis not satisfied";
  else if (out.conclusion)
    out.note = "both factors and the composite have TPC";
  else if (out.pass)
    out.note = "composite verdict is provisional at this depth";
  else
    out.note = "factors have TPC but the composite admits a nontrivial weight";
  return out;
}

FusionSystem cable(const FusionSystem& s, int k, int depth) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  if (!s.has_generator()) throw Error(ErrorKind::InvalidArgument, "system has no generator");
  const auto& gen = s.generator();
  const bool folded = s.object(gen.front().object).left == s.object(gen.front().object).right;

  std::map<ObjectIndex, std::optional<long long>> word;
  for (const auto& g : gen) word[g.object] = g.mult;
  for (int i = 2; i <= k; ++i) {
    const bool use_dual = !folded && i % 2 == 0;
    std::map<ObjectIndex, std::optional<long long>> next;
    for (const auto& [x, mx] : word) {
      for (const auto& g : gen) {
        const ObjectIndex h = use_dual ? s.dual(g.object) : g.object;
        const TensorEntry* e = s.entry(x, h);
        if (!e || e->truncated)
          throw Error(ErrorKind::TruncationExhausted,
                      "cable word needs the unknown product (" + s.id(x) + ", " + s.id(h) + ")");
        for (const auto& c : e->constituents) {
          std::optional<long long> add;
          if (mx && g.mult && c.mult) add = *mx * *g.mult * *c.mult;
          auto [it, fresh] = next.emplace(c.object, add);
          if (!fresh) {
            if (it->second && add)
              *it->second += *add;
            else
              it->second.reset();
          }
        }
      }
    }
    word = std::move(next);
  }
  std::vector<Constituent> generator;
  for (const auto& [x, m] : word)
    generator.push_back({x, m ? std::optional<int>(static_cast<int>(*m)) : std::nullopt});
  return generated_subsystem(s, generator, depth);
}

}  // namespace bimod
