#include "bimod/weight_solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "bimod/error.hpp"

namespace bimod {

std::optional<std::size_t> LogConstraintSystem::variable_of(ObjectIndex v) const {
  auto it = std::lower_bound(variables.begin(), variables.end(), v);
  if (it == variables.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - variables.begin());
}

LogConstraintSystem assemble_constraints(const FusionSystem& s, const Scope& scope) {
  if (s.size() > kMaxObjects)
    throw Error(ErrorKind::LimitExceeded, std::to_string(s.size()) + " objects exceed the limit of " +
                                              std::to_string(kMaxObjects));
  LogConstraintSystem out;
  out.scope = scope;
  std::vector<bool> in_scope(s.size(), false);
  for (ObjectIndex v = 0; v < s.size(); ++v) {
    in_scope[v] = scope.contains(s.object(v));
    if (in_scope[v] && !s.object(v).is_unit) out.variables.push_back(v);
  }

  std::set<std::vector<std::pair<std::size_t, int>>> seen;
  auto add_row = [&](ObjectIndex a, ObjectIndex b, ObjectIndex c, int sign_c) {
    std::map<std::size_t, int> merged;
    for (auto [obj, coeff] : {std::pair{a, 1}, std::pair{b, 1}, std::pair{c, sign_c}}) {
      if (coeff == 0) continue;
      if (auto var = out.variable_of(obj)) merged[*var] += coeff;
    }
    std::vector<std::pair<std::size_t, int>> terms;
    for (auto [var, coeff] : merged)
      if (coeff != 0) terms.emplace_back(var, coeff);
    if (terms.empty() || !seen.insert(terms).second) return;
    if (out.rows.size() >= kMaxConstraintRows)
      throw Error(ErrorKind::LimitExceeded, "constraint rows exceed the limit of " + std::to_string(kMaxConstraintRows));
    out.rows.push_back({std::move(terms), a, b, c});
  };

  for (ObjectIndex a = 0; a < s.size(); ++a) {
    if (!in_scope[a]) continue;
    for (ObjectIndex b = 0; b < s.size(); ++b) {
      if (!in_scope[b] || !s.composable(a, b)) continue;
      const TensorEntry* e = s.entry(a, b);
      if (!e) {
        out.skipped.push_back({a, b, true});
        continue;
      }
      if (e->truncated) out.skipped.push_back({a, b, false});
      for (const auto& c : e->constituents)
        if (in_scope[c.object]) add_row(a, b, c.object, -1);
    }
  }
  // The unit always sits inside v ⊗ v̄, whether or not the table lists it.
  for (ObjectIndex v : std::vector<ObjectIndex>(out.variables)) {
    auto unit = s.unit_of(s.object(v).left);
    add_row(v, s.dual(v), unit.value_or(v), unit ? -1 : 0);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void reduce_content(IntVector& v) {
  BigInt g = content(v);
  if (g > 1)
    for (auto& x : v) x /= g;
}

// a := p·a − f·b
void combine(IntVector& a, const BigInt& p, const BigInt& f, const IntVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] == 0) {
      if (a[i] != 0) a[i] *= p;
    } else {
      a[i] = p * a[i] - f * b[i];
    }
  }
}

}  // namespace

bool IntegerEchelon::insert(IntVector r) {
  if (r.size() != columns_) throw Error(ErrorKind::InvalidArgument, "row width mismatch");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t c = pivots_[i];
    if (r[c] == 0) continue;
    const BigInt f = r[c];
    combine(r, rows_[i][c], f, rows_[i]);
    reduce_content(r);
  }
  auto lead = std::find_if(r.begin(), r.end(), [](const BigInt& x) { return x != 0; });
  if (lead == r.end()) return false;
  const std::size_t c = static_cast<std::size_t>(lead - r.begin());
  if (r[c] < 0)
    for (auto& x : r) x = -x;
  reduce_content(r);
  for (auto& row : rows_) {
    if (row[c] == 0) continue;
    const BigInt f = row[c];
    combine(row, r[c], f, r);
    reduce_content(row);
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(c);
  return true;
}

std::vector<IntVector> IntegerEchelon::kernel() const {
  std::vector<bool> is_pivot(columns_, false);
  for (auto c : pivots_) is_pivot[c] = true;
  std::vector<IntVector> out;
  for (std::size_t f = 0; f < columns_; ++f) {
    if (is_pivot[f]) continue;
    BigInt scale = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (rows_[i][f] != 0) scale = boost::multiprecision::lcm(scale, rows_[i][pivots_[i]]);
    IntVector v(columns_, 0);
    v[f] = scale;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (rows_[i][f] != 0) v[pivots_[i]] = -rows_[i][f] * (scale / rows_[i][pivots_[i]]);
    make_primitive(v);
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

BigInt WeightSpaceBasis::exponent(std::size_t i, ObjectIndex v) const {
  auto it = std::lower_bound(variables.begin(), variables.end(), v);
  if (it == variables.end() || *it != v) return 0;
  return basis.at(i)[static_cast<std::size_t>(it - variables.begin())];
}

bool satisfies_all_rows(const LogConstraintSystem& constraints, const IntVector& x) {
  for (const auto& row : constraints.rows) {
    BigInt sum = 0;
    for (auto [var, coeff] : row.terms) sum += coeff * x.at(var);
    if (sum != 0) return false;
  }
  return true;
}

WeightSpaceBasis solve_weight_space(const FusionSystem& s, const Scope& scope) {
  const LogConstraintSystem constraints = assemble_constraints(s, scope);
  IntegerEchelon echelon(constraints.variables.size());
  for (const auto& row : constraints.rows) {
    IntVector dense(constraints.variables.size(), 0);
    for (auto [var, coeff] : row.terms) dense[var] = coeff;
    echelon.insert(std::move(dense));
    if (echelon.rank() == echelon.columns()) break;
  }
  WeightSpaceBasis out;
  out.scope = scope;
  out.variables = constraints.variables;
  out.basis = echelon.kernel();
  out.rows = constraints.rows.size();
  out.skipped = constraints.skipped;
  return out;
}

// ---------------------------------------------------------------------------

double WeightFunction::at(const std::string& id) const {
  auto it = values.find(id);
  if (it == values.end()) throw Error(ErrorKind::MissingWeight, "no weight for object '" + id + "'");
  return it->second;
}

WeightFunction trivial_weight(const FusionSystem& s) {
  WeightFunction w;
  ExactLog exact;
  for (const auto& v : s.objects()) {
    w.values[v.id] = 1.0;
    exact.exponents[v.id] = {};
  }
  w.exact_log = std::move(exact);
  return w;
}

WeightFunction weight_from_basis(const FusionSystem& s, const WeightSpaceBasis& basis,
                                 std::span<const double> parameters) {
  if (parameters.size() != basis.dimension())
    throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(basis.dimension()) + " parameters");
  WeightFunction w;
  ExactLog exact;
  exact.parameters.assign(parameters.begin(), parameters.end());
  for (double p : parameters)
    if (!(p > 0)) throw Error(ErrorKind::NonPositiveScalar, "weight parameters must be positive");
  for (ObjectIndex v = 0; v < s.size(); ++v) {
    if (!basis.scope.contains(s.object(v))) continue;
    IntVector e(parameters.size());
    double log_w = 0.0;
    for (std::size_t i = 0; i < parameters.size(); ++i) {
      e[i] = basis.exponent(i, v);
      log_w += e[i].convert_to<double>() * std::log(parameters[i]);
    }
    w.values[s.id(v)] = std::exp(log_w);
    exact.exponents[s.id(v)] = std::move(e);
  }
  w.exact_log = std::move(exact);
  return w;
}

namespace {

// Exact exponent vector of v, padded to `width`.
IntVector exact_exponent(const ExactLog& e, const std::string& id, std::size_t width) {
  auto it = e.exponents.find(id);
  if (it == e.exponents.end()) throw Error(ErrorKind::MissingWeight, "no exact weight for object '" + id + "'");
  IntVector out = it->second;
  out.resize(width, 0);
  return out;
}

// Exact exponents are only trusted while they still reproduce the values.
bool exact_is_current(const WeightFunction& w) {
  if (!w.exact_log) return false;
  const auto& e = *w.exact_log;
  for (const auto& [id, value] : w.values) {
    auto it = e.exponents.find(id);
    if (it == e.exponents.end()) return false;
    double log_value = 0.0;
    for (std::size_t i = 0; i < it->second.size() && i < e.parameters.size(); ++i)
      log_value += it->second[i].convert_to<double>() * std::log(e.parameters[i]);
    if (std::abs(log_value - std::log(value)) > 1e-9 * std::max(1.0, std::abs(log_value))) return false;
  }
  return true;
}

}  // namespace

double weight_defect(const FusionSystem& s, const WeightFunction& w, const Scope& scope) {
  const LogConstraintSystem constraints = assemble_constraints(s, scope);
  const bool exact = exact_is_current(w);
  const std::size_t width = exact ? w.exact_log->parameters.size() : 0;
  double worst = 0.0;
  auto log_of = [&](ObjectIndex v) { return std::log(w.at(s.id(v))); };
  for (ObjectIndex v = 0; v < s.size(); ++v) {
    if (!scope.contains(s.object(v))) continue;
    if (s.object(v).is_unit) {
      if (exact) {
        for (const auto& x : exact_exponent(*w.exact_log, s.id(v), width))
          if (x != 0) return std::numeric_limits<double>::infinity();
      } else {
        worst = std::max(worst, std::abs(log_of(v)));
      }
    }
  }
  for (const auto& row : constraints.rows) {
    if (exact) {
      IntVector sum(width, 0);
      for (auto [var, coeff] : row.terms) {
        auto e = exact_exponent(*w.exact_log, s.id(constraints.variables[var]), width);
        for (std::size_t i = 0; i < width; ++i) sum[i] += coeff * e[i];
      }
      for (const auto& x : sum)
        if (x != 0) return std::numeric_limits<double>::infinity();
    } else {
      double sum = 0.0;
      for (auto [var, coeff] : row.terms) sum += coeff * log_of(constraints.variables[var]);
      worst = std::max(worst, std::abs(sum));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------

const TpcVerdict& TpcVerdict::definite() const {
  if (provisional)
    throw Error(ErrorKind::AmbiguousTruncation,
                "nontrivial weights survive, but " + std::to_string(skipped) + " truncated products were skipped");
  return *this;
}

namespace {

std::vector<std::string> even_algebras(const FusionSystem& s) {
  std::vector<std::string> out;
  if (s.has_generator()) {
    const auto& g = s.object(s.generator().front().object);
    out.push_back(g.left);
    if (g.right != g.left) out.push_back(g.right);
  } else {
    out = s.algebras();
  }
  return out;
}

}  // namespace

TpcVerdict is_tpc(const FusionSystem& s) {
  const auto algebras = even_algebras(s);
  if (algebras.empty()) throw Error(ErrorKind::InvalidArgument, "system has no algebras");
  const bool certified = !s.completeness().truncated || s.completeness().certified;

  TpcVerdict out;
  std::vector<WeightSpaceBasis> spaces;
  for (const auto& label : algebras) {
    spaces.push_back(solve_weight_space(s, Scope::even_only(label)));
    out.even_dimensions[label] = spaces.back().dimension();
    out.skipped += spaces.back().skipped.size();
  }
  std::size_t lowest = spaces.front().dimension(), highest = lowest;
  for (const auto& sp : spaces) {
    lowest = std::min(lowest, sp.dimension());
    highest = std::max(highest, sp.dimension());
  }
  if (lowest != highest && out.skipped == 0)
    throw Error(ErrorKind::Validation, "even-only weight spaces of a complete system disagree in dimension");

  // A zero-dimensional space found from known rows is final: more rows can
  // only shrink it.
  out.tpc = lowest == 0;
  out.depth_conditional = !certified;
  out.provisional = !out.tpc && out.skipped > 0 && !certified;
  if (!out.tpc) {
    for (auto& sp : spaces) {
      if (sp.dimension() == 0) continue;
      out.witness = sp.basis.front();
      out.witness_space = std::move(sp);
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

WeightFunction extend_even_weight(const FusionSystem& s, const WeightFunction& even_weight,
                                  const std::string& algebra, double odd_scale) {
  if (!(odd_scale > 0)) throw Error(ErrorKind::NonPositiveScalar, "odd_scale must be positive");
  const Scope even = Scope::even_only(algebra);
  for (ObjectIndex v = 0; v < s.size(); ++v)
    if (even.contains(s.object(v))) (void)even_weight.at(s.id(v));
  if (weight_defect(s, even_weight, even) > 1e-9)
    throw Error(ErrorKind::NoExtension, "the given weight does not satisfy the even constraints");

  // Distinguished odd object: the leading generator constituent if its sector
  // touches the algebra, else the first non-unit object leaving it.
  std::optional<ObjectIndex> odd;
  if (s.has_generator()) {
    ObjectIndex g = s.generator().front().object;
    const auto& og = s.object(g);
    if (og.left != og.right) {
      if (og.left == algebra) odd = g;
      else if (og.right == algebra) odd = s.dual(g);
    }
  }
  if (!odd) {
    for (ObjectIndex v = 0; v < s.size(); ++v)
      if (s.object(v).left == algebra && s.object(v).right != algebra) {
        odd = v;
        break;
      }
  }

  const WeightSpaceBasis full = solve_weight_space(s, Scope::full());
  const std::size_t dim = full.dimension();
  std::vector<std::pair<ObjectIndex, double>> targets;
  for (ObjectIndex v = 0; v < s.size(); ++v)
    if (even.contains(s.object(v)) && !s.object(v).is_unit)
      targets.emplace_back(v, std::log(even_weight.at(s.id(v))));
  if (odd) targets.emplace_back(*odd, std::log(odd_scale));

  Eigen::VectorXd t = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  if (dim > 0 && !targets.empty()) {
    Eigen::MatrixXd C(static_cast<Eigen::Index>(targets.size()), static_cast<Eigen::Index>(dim));
    Eigen::VectorXd r(static_cast<Eigen::Index>(targets.size()));
    for (std::size_t i = 0; i < targets.size(); ++i) {
      for (std::size_t j = 0; j < dim; ++j)
        C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            full.exponent(j, targets[i].first).convert_to<double>();
      r(static_cast<Eigen::Index>(i)) = targets[i].second;
    }
    t = C.completeOrthogonalDecomposition().solve(r);
  }
  WeightFunction out;
  for (ObjectIndex v = 0; v < s.size(); ++v) {
    double log_w = 0.0;
    for (std::size_t j = 0; j < dim; ++j)
      log_w += full.exponent(j, v).convert_to<double>() * t(static_cast<Eigen::Index>(j));
    out.values[s.id(v)] = std::exp(log_w);
  }
  for (const auto& [v, target] : targets) {
    const double got = std::log(out.values.at(s.id(v)));
    if (std::abs(got - target) > 1e-9 * std::max(1.0, std::abs(target)))
      throw Error(ErrorKind::NoExtension, "no full weight function restricts to the given values at '" + s.id(v) + "'");
  }
  return out;
}

double weight_of_word(const WeightFunction& w, Sign start, std::span<const std::string> word) {
  double log_w = 0.0;
  bool positive = start == Sign::plus;
  for (const auto& id : word) {
    log_w += (positive ? 1.0 : -1.0) * std::log(w.at(id));
    positive = !positive;
  }
  return std::exp(log_w);
}

std::vector<ObjectIndex> alternating_word(const FusionSystem& s, Sign start, std::span<const ObjectIndex> word) {
  std::vector<ObjectIndex> out;
  bool plain = start == Sign::plus;
  for (ObjectIndex v : word) {
    out.push_back(plain ? v : s.dual(v));
    plain = !plain;
  }
  return out;
}

CentralElementCoefficients central_element_coeffs(const FusionSystem& s, const WeightFunction& w, Sign sign,
                                                  int depth) {
  if (depth < 0) throw Error(ErrorKind::InvalidArgument, "depth must be non-negative");
  if (!s.has_generator()) throw Error(ErrorKind::InvalidArgument, "system has no generator");
  const auto& g0 = s.object(s.generator().front().object);
  auto unit = s.unit_of(sign == Sign::plus ? g0.left : g0.right);
  if (!unit) throw Error(ErrorKind::InvalidArgument, "generator sector lacks a unit");

  const bool exact = exact_is_current(w);
  const std::size_t width = exact ? w.exact_log->parameters.size() : 0;
  CentralElementCoefficients out;
  out.sign = sign;
  out.depth = depth;

  std::set<ObjectIndex> level{*unit};
  bool use_dual = sign == Sign::minus;
  for (int k = 1; k <= depth; ++k) {
    std::set<ObjectIndex> next;
    for (ObjectIndex v1 : level) {
      for (const auto& g : s.generator()) {
        const ObjectIndex v2 = use_dual ? s.dual(g.object) : g.object;
        const TensorEntry* e = s.entry(v1, v2);
        if (!e)
          throw Error(ErrorKind::TruncationExhausted,
                      "product (" + s.id(v1) + ", " + s.id(v2) + ") is not in the table");
        out.truncated = out.truncated || e->truncated;
        for (const auto& c : e->constituents) {
          const ObjectIndex v3 = c.object;
          next.insert(v3);
          ++out.checks;
          bool ok;
          if (exact) {
            auto lhs = exact_exponent(*w.exact_log, s.id(v3), width);
            auto a = exact_exponent(*w.exact_log, s.id(v1), width);
            auto b = exact_exponent(*w.exact_log, s.id(v2), width);
            ok = true;
            for (std::size_t i = 0; i < width; ++i) ok = ok && lhs[i] == a[i] + b[i];
          } else {
            const double lhs = w.at(s.id(v3));
            const double rhs = w.at(s.id(v1)) * w.at(s.id(v2));
            ok = std::abs(lhs - rhs) <= 1e-9 * std::max(lhs, rhs);
          }
          if (!ok)
            throw Error(ErrorKind::InconsistentWeight, "coefficient of '" + s.id(v3) + "' is not coeff('" +
                                                           s.id(v1) + "')·w('" + s.id(v2) + "')");
        }
      }
    }
    level = std::move(next);
    use_dual = !use_dual;
  }
  if (exact) out.exact_exponents.emplace();
  for (ObjectIndex v : level) {
    const double c = w.at(s.id(v));
    if (!(c > 0)) throw Error(ErrorKind::InconsistentWeight, "coefficient of '" + s.id(v) + "' is not positive");
    out.coeffs[s.id(v)] = c;
    if (exact) (*out.exact_exponents)[s.id(v)] = exact_exponent(*w.exact_log, s.id(v), width);
  }
  return out;
}

}  // namespace bimod
