#include "bimod/fusion_system.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "bimod/error.hpp"

namespace bimod {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::DepthZero: return "DepthZero";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::IncomposableWord: return "IncomposableWord";
    case ErrorKind::AmbiguousTruncation: return "AmbiguousTruncation";
    case ErrorKind::NoExtension: return "NoExtension";
    case ErrorKind::InconsistentWeight: return "InconsistentWeight";
    case ErrorKind::MissingWeight: return "MissingWeight";
    case ErrorKind::NonPositiveScalar: return "NonPositiveScalar";
    case ErrorKind::NotAWeight: return "NotAWeight";
    case ErrorKind::TruncationExhausted: return "TruncationExhausted";
    case ErrorKind::TheoremViolation: return "TheoremViolation";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::LimitExceeded: return "LimitExceeded";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

const char* to_string(Tri t) noexcept {
  switch (t) {
    case Tri::no: return "no";
    case Tri::yes: return "yes";
    case Tri::unknown: return "unknown-truncated";
  }
  return "?";
}

bool TensorEntry::contains(ObjectIndex c) const {
  return std::any_of(constituents.begin(), constituents.end(),
                     [c](const Constituent& k) { return k.object == c; });
}

FusionSystem::FusionSystem(std::vector<std::string> algebras, std::vector<FusionObject> objects,
                           TensorTable tensor, std::vector<Constituent> generator,
                           Completeness completeness)
    : algebras_(std::move(algebras)),
      objects_(std::move(objects)),
      tensor_(std::move(tensor)),
      generator_(std::move(generator)),
      completeness_(completeness) {
  for (ObjectIndex i = 0; i < objects_.size(); ++i) index_.emplace(objects_[i].id, i);
}

std::optional<ObjectIndex> FusionSystem::find(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ObjectIndex FusionSystem::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error(ErrorKind::InvalidArgument, "unknown object id '" + std::string(id) + "'");
}

std::optional<ObjectIndex> FusionSystem::unit_of(std::string_view algebra) const {
  for (ObjectIndex i = 0; i < objects_.size(); ++i)
    if (objects_[i].is_unit && objects_[i].left == algebra) return i;
  return std::nullopt;
}

const TensorEntry* FusionSystem::entry(ObjectIndex a, ObjectIndex b) const {
  auto it = tensor_.find({a, b});
  return it == tensor_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Builder

FusionSystemBuilder& FusionSystemBuilder::algebra(std::string label) {
  algebras_.push_back(std::move(label));
  return *this;
}

FusionSystemBuilder& FusionSystemBuilder::object(std::string id, std::string left, std::string right,
                                                 std::string dual, bool is_unit) {
  ids_.insert(id);
  objects_.push_back({std::move(id), std::move(left), std::move(right), std::move(dual), is_unit});
  return *this;
}

FusionSystemBuilder& FusionSystemBuilder::product(
    std::string a, std::string b, std::vector<std::pair<std::string, std::optional<int>>> constituents,
    bool truncated) {
  products_.push_back({std::move(a), std::move(b), std::move(constituents), truncated});
  return *this;
}

FusionSystemBuilder& FusionSystemBuilder::generator(std::string id, std::optional<int> mult) {
  generator_.emplace_back(std::move(id), mult);
  return *this;
}

FusionSystemBuilder& FusionSystemBuilder::completeness(Completeness c) {
  completeness_ = c;
  return *this;
}

bool FusionSystemBuilder::has_object(std::string_view id) const { return ids_.contains(id); }

namespace {

void merge_constituent(std::vector<Constituent>& list, ObjectIndex c, std::optional<int> mult) {
  auto it = std::find_if(list.begin(), list.end(), [c](const Constituent& k) { return k.object == c; });
  if (it == list.end()) {
    list.push_back({c, mult});
  } else if (it->mult && mult) {
    *it->mult += *mult;
  } else {
    it->mult.reset();
  }
}

void sort_constituents(std::vector<Constituent>& list) {
  std::sort(list.begin(), list.end(),
            [](const Constituent& x, const Constituent& y) { return x.object < y.object; });
}

}  // namespace

FusionSystem FusionSystemBuilder::build() const {
  std::map<std::string, ObjectIndex, std::less<>> index;
  for (const auto& label : algebras_) {
    if (std::count(algebras_.begin(), algebras_.end(), label) > 1)
      throw Error(ErrorKind::Schema, "duplicate algebra label '" + label + "'");
  }
  for (ObjectIndex i = 0; i < objects_.size(); ++i) {
    if (!index.emplace(objects_[i].id, i).second)
      throw Error(ErrorKind::Schema, "duplicate object id '" + objects_[i].id + "'");
  }
  auto resolve = [&](const std::string& id, const std::string& where) {
    auto it = index.find(id);
    if (it == index.end()) throw Error(ErrorKind::Schema, where + " references unknown object id '" + id + "'");
    return it->second;
  };
  auto known_algebra = [&](const std::string& label, const std::string& where) {
    if (std::find(algebras_.begin(), algebras_.end(), label) == algebras_.end())
      throw Error(ErrorKind::Schema, where + " references unknown algebra '" + label + "'");
  };

  std::vector<FusionObject> objects;
  objects.reserve(objects_.size());
  for (const auto& p : objects_) {
    known_algebra(p.left, "object '" + p.id + "'");
    known_algebra(p.right, "object '" + p.id + "'");
    objects.push_back({p.id, p.left, p.right, resolve(p.dual, "dual of object '" + p.id + "'"), p.is_unit});
  }

  TensorTable table;
  for (const auto& p : products_) {
    const std::string where = "tensor entry (" + p.a + ", " + p.b + ")";
    auto key = std::make_pair(resolve(p.a, where), resolve(p.b, where));
    if (table.contains(key)) throw Error(ErrorKind::Schema, "duplicate " + where);
    TensorEntry e;
    e.truncated = p.truncated;
    for (const auto& [c, mult] : p.constituents) {
      if (mult && *mult <= 0) throw Error(ErrorKind::Schema, where + " has non-positive multiplicity");
      merge_constituent(e.constituents, resolve(c, where), mult);
    }
    sort_constituents(e.constituents);
    table.emplace(key, std::move(e));
  }

  std::vector<Constituent> generator;
  for (const auto& [id, mult] : generator_) {
    if (mult && *mult <= 0) throw Error(ErrorKind::Schema, "generator has non-positive multiplicity");
    merge_constituent(generator, resolve(id, "generator"), mult);
  }
  sort_constituents(generator);

  return FusionSystem(algebras_, std::move(objects), std::move(table), std::move(generator), completeness_);
}

// ---------------------------------------------------------------------------
// Validation

namespace {

class Reporter {
 public:
  explicit Reporter(ValidationReport& r) : report_(r) {}
  void operator()(std::string rule, std::string message) {
    report_.violations.push_back({std::move(rule), std::move(message)});
  }

 private:
  ValidationReport& report_;
};

bool fully_numeric(const TensorEntry& e) {
  return !e.truncated && std::all_of(e.constituents.begin(), e.constituents.end(),
                                     [](const Constituent& c) { return c.mult.has_value(); });
}

void check_associativity(const FusionSystem& s, Reporter& report) {
  const std::size_t n = s.size();
  // N(a,b) as a dense row over objects, or empty when not fully numeric.
  auto coeffs = [&](ObjectIndex a, ObjectIndex b) -> std::optional<std::vector<long long>> {
    const TensorEntry* e = s.entry(a, b);
    if (!e || !fully_numeric(*e)) return std::nullopt;
    std::vector<long long> row(n, 0);
    for (const auto& c : e->constituents) row[c.object] = *c.mult;
    return row;
  };
  for (const auto& [ab, eab] : s.tensor()) {
    const auto [a, b] = ab;
    auto nab = coeffs(a, b);
    if (!nab) continue;
    for (ObjectIndex c = 0; c < n; ++c) {
      if (!s.composable(b, c)) continue;
      auto nbc = coeffs(b, c);
      if (!nbc) continue;
      std::vector<long long> lhs(n, 0), rhs(n, 0);
      bool known = true;
      for (ObjectIndex e = 0; e < n && known; ++e) {
        if ((*nab)[e] == 0) continue;
        auto nec = coeffs(e, c);
        if (!nec) { known = false; break; }
        for (ObjectIndex d = 0; d < n; ++d) lhs[d] += (*nab)[e] * (*nec)[d];
      }
      for (ObjectIndex f = 0; f < n && known; ++f) {
        if ((*nbc)[f] == 0) continue;
        auto naf = coeffs(a, f);
        if (!naf) { known = false; break; }
        for (ObjectIndex d = 0; d < n; ++d) rhs[d] += (*nbc)[f] * (*naf)[d];
      }
      if (known && lhs != rhs)
        report("associativity", "(" + s.id(a) + " ⊗ " + s.id(b) + ") ⊗ " + s.id(c) + " differs from " +
                                    s.id(a) + " ⊗ (" + s.id(b) + " ⊗ " + s.id(c) + ")");
    }
  }
}

}  // namespace

ValidationReport validate(const FusionSystem& s) {
  ValidationReport out;
  Reporter report(out);
  const auto& objs = s.objects();

  {
    std::set<std::string> seen;
    for (const auto& a : s.algebras())
      if (!seen.insert(a).second) report("distinct-labels", "algebra label '" + a + "' is repeated");
  }

  for (ObjectIndex i = 0; i < objs.size(); ++i) {
    const auto& v = objs[i];
    if (v.dual >= objs.size()) {
      report("dual-exists", "dual of '" + v.id + "' is out of range");
      continue;
    }
    const auto& d = objs[v.dual];
    if (d.dual != i) report("dual-involution", "dual(dual(" + v.id + ")) is '" + objs[d.dual].id + "'");
    if (d.left != v.right || d.right != v.left)
      report("dual-sector", "dual must swap algebra labels: '" + v.id + "' and '" + d.id + "'");
  }

  for (const auto& label : s.algebras()) {
    int units = 0;
    for (ObjectIndex i = 0; i < objs.size(); ++i) {
      const auto& v = objs[i];
      if (!v.is_unit || v.left != label) continue;
      ++units;
      if (v.dual != i) report("unit-self-dual", "unit '" + v.id + "' must be self-dual");
    }
    if (units != 1)
      report("unit-count", "algebra '" + label + "' has " + std::to_string(units) + " unit objects");
  }
  for (const auto& v : objs)
    if (v.is_unit && v.left != v.right) report("unit-sector", "unit '" + v.id + "' must have left = right");

  for (const auto& [ab, e] : s.tensor()) {
    const auto [a, b] = ab;
    const auto& oa = objs[a];
    const auto& ob = objs[b];
    const std::string name = "(" + oa.id + ", " + ob.id + ")";
    if (oa.right != ob.left) {
      report("entry-sector", "entry " + name + " pairs incomposable objects");
      continue;
    }
    for (const auto& c : e.constituents) {
      const auto& oc = objs[c.object];
      if (oc.left != oa.left || oc.right != ob.right)
        report("constituent-sector", "constituent '" + oc.id + "' of " + name + " lies in the wrong sector");
      if (c.mult && *c.mult <= 0) report("multiplicity", "non-positive multiplicity in " + name);
    }
    auto absorbs = [&](ObjectIndex other) {
      return !e.truncated && e.constituents.size() == 1 && e.constituents[0].object == other &&
             (!e.constituents[0].mult || *e.constituents[0].mult == 1);
    };
    if (oa.is_unit && !absorbs(b)) report("unit-absorption", "entry " + name + " must be exactly [" + ob.id + "]");
    if (ob.is_unit && !absorbs(a)) report("unit-absorption", "entry " + name + " must be exactly [" + oa.id + "]");
    if (b == oa.dual) {
      auto unit = s.unit_of(oa.left);
      if (unit && !e.contains(*unit))
        report("duality-witness", "entry " + name + " must contain the unit '" + objs[*unit].id + "'");
    }
    if (e.truncated && !s.completeness().truncated)
      report("completeness", "entry " + name + " is truncated in a system declared complete");
  }

  if (!s.completeness().truncated) {
    for (ObjectIndex a = 0; a < objs.size(); ++a)
      for (ObjectIndex b = 0; b < objs.size(); ++b)
        if (s.composable(a, b) && !s.entry(a, b))
          report("completeness", "complete system lacks entry (" + objs[a].id + ", " + objs[b].id + ")");
  } else if (s.completeness().depth < 1) {
    report("completeness", "truncated system must record a positive depth");
  }

  if (s.has_generator()) {
    const auto& gen = s.generator();
    const auto& g0 = objs[gen.front().object];
    if (std::all_of(gen.begin(), gen.end(), [&](const Constituent& g) { return objs[g.object].is_unit; }))
      report("generator", "generator consists of units only");
    for (const auto& g : gen) {
      const auto& og = objs[g.object];
      if (og.left != g0.left || og.right != g0.right)
        report("generator", "generator constituents span several sectors");
    }
    // Connectedness: everything reachable from the units through ⊗H and ⊗H̄.
    std::vector<bool> seen(objs.size(), false);
    std::deque<ObjectIndex> queue;
    for (ObjectIndex i = 0; i < objs.size(); ++i)
      if (objs[i].is_unit) { seen[i] = true; queue.push_back(i); }
    while (!queue.empty()) {
      ObjectIndex x = queue.front();
      queue.pop_front();
      for (const auto& g : gen) {
        for (ObjectIndex h : {g.object, objs[g.object].dual}) {
          const TensorEntry* e = s.entry(x, h);
          if (!e) continue;
          for (const auto& c : e->constituents)
            if (!seen[c.object]) { seen[c.object] = true; queue.push_back(c.object); }
        }
      }
    }
    for (ObjectIndex i = 0; i < objs.size(); ++i)
      if (!seen[i]) report("connected", "object '" + objs[i].id + "' is not reachable from the units");
  }

  check_associativity(s, report);
  return out;
}

// ---------------------------------------------------------------------------
// Words

WordExpansion expand_word(const FusionSystem& s, std::span<const ObjectIndex> word) {
  WordExpansion out;
  if (word.empty()) return out;
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    if (!s.composable(word[i], word[i + 1]))
      throw Error(ErrorKind::IncomposableWord, "'" + s.id(word[i]) + "' cannot be followed by '" +
                                                   s.id(word[i + 1]) + "'");
  }
  out.constituents.insert(word[0]);
  for (std::size_t i = 1; i < word.size(); ++i) {
    std::set<ObjectIndex> next;
    for (ObjectIndex x : out.constituents) {
      const TensorEntry* e = s.entry(x, word[i]);
      if (!e) {
        out.truncated = true;
        continue;
      }
      out.truncated = out.truncated || e->truncated;
      for (const auto& c : e->constituents) next.insert(c.object);
    }
    out.constituents = std::move(next);
  }
  return out;
}

Tri hom_nonzero(const FusionSystem& s, std::span<const ObjectIndex> word1, std::span<const ObjectIndex> word2) {
  auto lhs = expand_word(s, word1);
  auto rhs = expand_word(s, word2);
  if (word1.empty() || word2.empty()) return Tri::no;
  const auto& f1 = s.object(word1.front());
  const auto& l1 = s.object(word1.back());
  const auto& f2 = s.object(word2.front());
  const auto& l2 = s.object(word2.back());
  if (f1.left != f2.left || l1.right != l2.right) return Tri::no;
  for (ObjectIndex c : lhs.constituents)
    if (rhs.constituents.contains(c)) return Tri::yes;
  return (lhs.truncated || rhs.truncated) ? Tri::unknown : Tri::no;
}

GeneratorProduct generator_product(const FusionSystem& s, ObjectIndex x, bool use_dual) {
  GeneratorProduct out;
  for (const auto& g : s.generator()) {
    ObjectIndex h = use_dual ? s.dual(g.object) : g.object;
    if (!s.composable(x, h)) continue;
    const TensorEntry* e = s.entry(x, h);
    if (!e) {
      out.missing = true;
      continue;
    }
    out.truncated = out.truncated || e->truncated;
    for (const auto& c : e->constituents) {
      std::optional<long long> add;
      if (c.mult && g.mult) add = static_cast<long long>(*c.mult) * *g.mult;
      auto [it, fresh] = out.constituents.emplace(c.object, add);
      if (!fresh) {
        if (it->second && add)
          *it->second += *add;
        else
          it->second.reset();
      }
    }
  }
  return out;
}

std::vector<ObjectIndex> objects_in_sector(const FusionSystem& s, std::string_view left, std::string_view right) {
  std::vector<ObjectIndex> out;
  for (ObjectIndex i = 0; i < s.size(); ++i)
    if (s.object(i).left == left && s.object(i).right == right) out.push_back(i);
  return out;
}

}  // namespace bimod
