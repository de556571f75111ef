#include "cloudlab/states.hpp"

#include <algorithm>
#include <cctype>
#include <random>

namespace cloudlab {

using Value = TwoValuedState::Value;

TwoValuedState TwoValuedState::parse(std::string_view text) {
  std::vector<Value> values;
  values.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '0': values.push_back(Value::False); break;
      case '1': values.push_back(Value::True); break;
      case '-': values.push_back(Value::Undefined); break;
      default: throw std::invalid_argument(std::string("bad state character '") + c + "'");
    }
  }
  return TwoValuedState(std::move(values));
}

TwoValuedState TwoValuedState::parse_seed(const Cloud& cloud, std::string_view text) {
  TwoValuedState seed(cloud.vertex_count());
  std::string item;
  auto flush = [&] {
    if (item.empty()) return;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq + 2 != item.size() ||
        (item[eq + 1] != '0' && item[eq + 1] != '1')) {
      throw CloudError("seed item '" + item + "' is not of the form vertex=0|1");
    }
    seed.set(cloud.index_of(item.substr(0, eq)), item[eq + 1] == '1');
    item.clear();
  };
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
      flush();
    else
      item.push_back(c);
  }
  flush();
  return seed;
}

bool TwoValuedState::is_total() const noexcept {
  return std::none_of(values_.begin(), values_.end(), [](Value v) { return v == Value::Undefined; });
}

std::size_t TwoValuedState::defined_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](Value v) { return v != Value::Undefined; }));
}

std::vector<VertexIndex> TwoValuedState::true_vertices() const {
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < values_.size(); ++v)
    if (values_[v] == Value::True) out.push_back(v);
  return out;
}

std::string TwoValuedState::to_string() const {
  std::string s;
  s.reserve(values_.size());
  for (Value v : values_) s.push_back(v == Value::True ? '1' : (v == Value::False ? '0' : '-'));
  return s;
}

std::string to_string(StateKind kind) {
  switch (kind) {
    case StateKind::I: return "I";
    case StateKind::II: return "II";
    case StateKind::III: return "III";
  }
  return "?";
}

StateKind parse_state_kind(std::string_view text) {
  if (text == "I" || text == "1") return StateKind::I;
  if (text == "II" || text == "2") return StateKind::II;
  if (text == "III" || text == "3") return StateKind::III;
  throw std::invalid_argument("unknown state type '" + std::string(text) + "'");
}

bool is_type_ii(const Cloud& cloud, const TwoValuedState& state) {
  if (state.size() != cloud.vertex_count() || !state.is_total()) return false;
  for (const auto& ctx : cloud.contexts()) {
    const auto ones = std::count_if(ctx.begin(), ctx.end(), [&](VertexIndex v) { return state.is_true(v); });
    if (ones != 1) return false;
  }
  return true;
}

bool is_admissible_partial(const Cloud& cloud, const TwoValuedState& state) {
  if (state.size() != cloud.vertex_count()) return false;
  for (const auto& ctx : cloud.contexts()) {
    std::size_t ones = 0;
    std::size_t zeros = 0;
    for (VertexIndex v : ctx) {
      ones += state.is_true(v);
      zeros += state.is_false(v);
    }
    if (ones > 1 || zeros == ctx.size()) return false;
  }
  return true;
}

std::string to_string(PropagationRule rule) {
  switch (rule) {
    case PropagationRule::TrueExcludesMates: return "true-excludes-mates";
    case PropagationRule::LastMemberTrue: return "last-member-true";
  }
  return "?";
}

namespace {

void require_seed_shape(const Cloud& cloud, const TwoValuedState& seed) {
  if (seed.size() != cloud.vertex_count())
    throw CloudError("seed has " + std::to_string(seed.size()) + " entries, cloud has " +
                     std::to_string(cloud.vertex_count()) + " vertices");
}

std::optional<Contradiction> find_contradiction(const Cloud& cloud, const TwoValuedState& s) {
  for (std::size_t c = 0; c < cloud.context_count(); ++c) {
    const auto& ctx = cloud.contexts()[c];
    std::vector<VertexIndex> ones;
    std::size_t zeros = 0;
    for (VertexIndex v : ctx) {
      if (s.is_true(v)) ones.push_back(v);
      zeros += s.is_false(v);
    }
    if (ones.size() >= 2)
      return Contradiction{Contradiction::Kind::TwoTrue, c, {ones[0], ones[1]}};
    if (zeros == ctx.size()) return Contradiction{Contradiction::Kind::AllFalse, c, {}};
  }
  return std::nullopt;
}

// Consequences of one rule applied to one context of a contradiction-free
// assignment.
void derive_from_context(const Cloud& cloud, const TwoValuedState& s, std::size_t c,
                         std::vector<DerivationStep>& out, std::size_t round) {
  const auto& ctx = cloud.contexts()[c];
  std::optional<VertexIndex> one;
  std::size_t zeros = 0;
  std::optional<VertexIndex> open;
  std::size_t open_count = 0;
  for (VertexIndex v : ctx) {
    if (s.is_true(v)) one = v;
    else if (s.is_false(v)) ++zeros;
    else {
      open = v;
      ++open_count;
    }
  }
  if (one) {
    for (VertexIndex v : ctx)
      if (!s.is_defined(v)) out.push_back({v, false, PropagationRule::TrueExcludesMates, c, round});
  } else if (open_count == 1 && zeros + 1 == ctx.size()) {
    out.push_back({*open, true, PropagationRule::LastMemberTrue, c, round});
  }
}

}  // namespace

PropagationResult propagate(const Cloud& cloud, const TwoValuedState& seed) {
  require_seed_shape(cloud, seed);
  PropagationResult result{seed, {}, std::nullopt};
  for (std::size_t round = 1;; ++round) {
    if ((result.contradiction = find_contradiction(cloud, result.state))) return result;
    std::vector<DerivationStep> pending;
    for (std::size_t c = 0; c < cloud.context_count(); ++c)
      derive_from_context(cloud, result.state, c, pending, round);
    bool changed = false;
    for (const auto& step : pending) {
      if (result.state.is_defined(step.vertex)) continue;
      result.state.set(step.vertex, step.value);
      result.derivation.push_back(step);
      changed = true;
    }
    if (!changed) return result;
  }
}

PropagationResult propagate_randomized(const Cloud& cloud, const TwoValuedState& seed,
                                       std::uint64_t shuffle_seed) {
  require_seed_shape(cloud, seed);
  std::mt19937_64 rng(shuffle_seed);
  PropagationResult result{seed, {}, std::nullopt};
  for (std::size_t step_index = 1;; ++step_index) {
    if ((result.contradiction = find_contradiction(cloud, result.state))) return result;
    std::vector<DerivationStep> options;
    for (std::size_t c = 0; c < cloud.context_count(); ++c)
      derive_from_context(cloud, result.state, c, options, step_index);
    if (options.empty()) return result;
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    const DerivationStep step = options[pick(rng)];
    result.state.set(step.vertex, step.value);
    result.derivation.push_back(step);
  }
}

bool replay_derivation(const Cloud& cloud, const TwoValuedState& seed,
                       const PropagationResult& result) {
  if (seed.size() != cloud.vertex_count()) return false;
  TwoValuedState s = seed;
  for (const auto& step : result.derivation) {
    if (step.context >= cloud.context_count() || step.vertex >= s.size()) return false;
    if (s.is_defined(step.vertex)) return false;
    const auto& ctx = cloud.contexts()[step.context];
    if (std::find(ctx.begin(), ctx.end(), step.vertex) == ctx.end()) return false;
    bool justified = false;
    if (step.rule == PropagationRule::TrueExcludesMates) {
      justified = !step.value && std::any_of(ctx.begin(), ctx.end(), [&](VertexIndex v) {
        return v != step.vertex && s.is_true(v);
      });
    } else {
      justified = step.value && std::all_of(ctx.begin(), ctx.end(), [&](VertexIndex v) {
        return v == step.vertex || s.is_false(v);
      });
    }
    if (!justified) return false;
    s.set(step.vertex, step.value);
  }
  if (s != result.state) return false;
  const auto found = find_contradiction(cloud, s);
  if (result.contradiction) {
    if (!found) return false;
    const auto& c = cloud.contexts()[result.contradiction->context];
    std::size_t ones = 0;
    std::size_t zeros = 0;
    for (VertexIndex v : c) {
      ones += s.is_true(v);
      zeros += s.is_false(v);
    }
    return result.contradiction->kind == Contradiction::Kind::TwoTrue ? ones >= 2 : zeros == c.size();
  }
  if (found) return false;
  std::vector<DerivationStep> more;
  for (std::size_t c = 0; c < cloud.context_count(); ++c) derive_from_context(cloud, s, c, more, 0);
  return more.empty();
}

BigInt count_type_I(const Cloud& cloud) {
  BigInt one = 1;
  return one << cloud.vertex_count();
}

PropertyReport state_properties(const Cloud& cloud, const StateSet& states) {
  PropertyReport r;
  r.count = states.size();
  r.empty = states.empty();
  const std::size_t n = cloud.vertex_count();
  for (const auto& s : states.states)
    if (s.size() != n) throw PreconditionError("state set does not match the cloud");

  std::vector<std::size_t> ones(n, 0);
  for (const auto& s : states.states)
    for (VertexIndex v = 0; v < n; ++v) ones[v] += s.is_true(v);
  for (VertexIndex v = 0; v < n; ++v) {
    if (ones[v] == 0) r.never_true.push_back(v);
    if (!r.empty && ones[v] == 0) r.forced_zero.push_back(v);
    if (!r.empty && ones[v] == states.size()) r.forced_one.push_back(v);
  }

  for (const auto& [x, y] : skeleton_graph(cloud).nonadjacent_pairs()) {
    bool separated = false;
    bool joint = false;
    for (const auto& s : states.states) {
      separated = separated || s.is_true(x) != s.is_true(y);
      joint = joint || (s.is_true(x) && s.is_true(y));
      if (separated && joint) break;
    }
    if (!separated) r.unseparated.emplace_back(x, y);
    if (!joint) r.never_jointly_true.emplace_back(x, y);
  }
  r.unital = !r.empty && r.never_true.empty();
  r.separating = r.unital && r.unseparated.empty();
  r.full = r.separating && r.never_jointly_true.empty();
  return r;
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::NoStateWithATrue: return "NO_STATE_WITH_A_TRUE";
    case Relation::Tifs: return "TIFS";
    case Relation::Tits: return "TITS";
    case Relation::Equivalent: return "EQUIVALENT";
    case Relation::Opposite: return "OPPOSITE";
    case Relation::Independent: return "INDEPENDENT";
    case Relation::ValueIndefinite: return "VALUE_INDEFINITE";
  }
  return "?";
}

Relation classify_pair(const StateSet& states, VertexIndex a, VertexIndex b) {
  if (a == b) throw PreconditionError("classify_pair needs two distinct vertices");
  if (!states.empty()) {
    const bool equal = std::all_of(states.states.begin(), states.states.end(),
                                   [&](const TwoValuedState& s) { return s.is_true(a) == s.is_true(b); });
    if (equal) return Relation::Equivalent;
    const bool differ = std::all_of(states.states.begin(), states.states.end(),
                                    [&](const TwoValuedState& s) { return s.is_true(a) != s.is_true(b); });
    if (differ) return Relation::Opposite;
  }
  bool any_a = false;
  bool b_true = false;
  bool b_false = false;
  for (const auto& s : states.states) {
    if (!s.is_true(a)) continue;
    any_a = true;
    (s.is_true(b) ? b_true : b_false) = true;
  }
  if (!any_a) return Relation::NoStateWithATrue;
  if (b_true && b_false) return Relation::Independent;
  return b_true ? Relation::Tits : Relation::Tifs;
}

namespace {

Relation classify_by_propagation(const Cloud& cloud, VertexIndex a, VertexIndex b) {
  TwoValuedState seed(cloud.vertex_count());
  seed.set(a, true);
  if (!propagate(cloud, seed).consistent()) return Relation::NoStateWithATrue;
  seed.set(b, true);
  const bool both_true = propagate(cloud, seed).consistent();
  seed.set(b, false);
  const bool b_false = propagate(cloud, seed).consistent();
  if (both_true && b_false) return Relation::Independent;
  if (both_true) return Relation::Tits;
  if (b_false) return Relation::Tifs;
  return Relation::ValueIndefinite;
}

void require_vertex(const Cloud& cloud, VertexIndex v) {
  if (v >= cloud.vertex_count()) throw CloudError("vertex index out of range");
}

}  // namespace

Relation classify_pair(const Cloud& cloud, VertexIndex a, VertexIndex b, StateKind kind,
                       const EnumerationOptions& options) {
  require_vertex(cloud, a);
  require_vertex(cloud, b);
  if (a == b) throw PreconditionError("classify_pair needs two distinct vertices");
  switch (kind) {
    case StateKind::II: return classify_pair(enumerate_states(cloud, options), a, b);
    case StateKind::III: return classify_by_propagation(cloud, a, b);
    case StateKind::I: break;
  }
  throw PreconditionError("classification is defined for state types II and III");
}

KsResult ks_check(const Cloud& cloud, const EnumerationOptions& options) {
  EnumerationOptions first = options;
  first.stop_after = 1;
  first.jobs = 1;
  StateSet s = enumerate_states(cloud, first);
  if (s.empty()) return {true, std::nullopt};
  return {false, s.states.front()};
}

std::vector<VertexPair> relation_pairs(const Cloud& cloud, StateKind kind, Relation relation,
                                       const EnumerationOptions& options) {
  const std::size_t n = cloud.vertex_count();
  std::vector<VertexPair> out;
  if (kind == StateKind::II) {
    const StateSet states = enumerate_states(cloud, options);
    for (VertexIndex x = 0; x < n; ++x)
      for (VertexIndex y = 0; y < n; ++y)
        if (x != y && classify_pair(states, x, y) == relation) out.emplace_back(x, y);
    return out;
  }
  if (kind != StateKind::III) throw PreconditionError("relations are defined for state types II and III");
  for (VertexIndex x = 0; x < n; ++x)
    for (VertexIndex y = 0; y < n; ++y)
      if (x != y && classify_by_propagation(cloud, x, y) == relation) out.emplace_back(x, y);
  return out;
}

std::vector<VertexPair> tits_pairs(const Cloud& cloud, StateKind kind, const EnumerationOptions& options) {
  return relation_pairs(cloud, kind, Relation::Tits, options);
}

std::vector<VertexPair> tifs_pairs(const Cloud& cloud, StateKind kind, const EnumerationOptions& options) {
  const SkeletonGraph g = skeleton_graph(cloud);
  std::vector<VertexPair> out;
  for (const auto& [x, y] : relation_pairs(cloud, kind, Relation::Tifs, options)) {
    if (g.adjacent(x, y)) continue;
    out.emplace_back(std::min(x, y), std::max(x, y));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace cloudlab
