#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cloudlab/cloud.hpp"
#include "cloudlab/qsqrt2.hpp"

namespace cloudlab {

/// A total or partial 0/1 assignment over a cloud's vertex order.
class TwoValuedState {
 public:
  enum class Value : std::int8_t { Undefined = -1, False = 0, True = 1 };

  TwoValuedState() = default;
  explicit TwoValuedState(std::size_t vertex_count) : values_(vertex_count, Value::Undefined) {}
  explicit TwoValuedState(std::vector<Value> values) : values_(std::move(values)) {}

  /// Reads a string of '0', '1' and '-' characters.
  static TwoValuedState parse(std::string_view text);
  /// Partial assignment from `name=0|1` items separated by commas or blanks.
  /// Throws CloudError for unknown vertices.
  static TwoValuedState parse_seed(const Cloud& cloud, std::string_view text);

  std::size_t size() const noexcept { return values_.size(); }
  Value operator[](VertexIndex v) const { return values_.at(v); }
  void set(VertexIndex v, bool value) { values_.at(v) = value ? Value::True : Value::False; }
  void clear(VertexIndex v) { values_.at(v) = Value::Undefined; }

  bool is_true(VertexIndex v) const { return values_.at(v) == Value::True; }
  bool is_false(VertexIndex v) const { return values_.at(v) == Value::False; }
  bool is_defined(VertexIndex v) const { return values_.at(v) != Value::Undefined; }
  bool is_total() const noexcept;
  std::size_t defined_count() const noexcept;
  std::vector<VertexIndex> true_vertices() const;

  const std::vector<Value>& values() const noexcept { return values_; }
  std::string to_string() const;

  friend auto operator<=>(const TwoValuedState&, const TwoValuedState&) = default;

 private:
  std::vector<Value> values_;
};

enum class StateKind { I, II, III };
std::string to_string(StateKind kind);
/// Accepts "I", "II", "III" and "1", "2", "3".
StateKind parse_state_kind(std::string_view text);

struct StateSet {
  StateKind kind = StateKind::II;
  /// Canonically ordered, duplicate-free.
  std::vector<TwoValuedState> states;

  std::size_t size() const noexcept { return states.size(); }
  bool empty() const noexcept { return states.empty(); }
};

/// Exactly one true vertex in every context.
bool is_type_ii(const Cloud& cloud, const TwoValuedState& state);
/// No context with two true vertices and no fully false context.
bool is_admissible_partial(const Cloud& cloud, const TwoValuedState& state);

// --- propagation -----------------------------------------------------------

enum class PropagationRule {
  /// A true vertex forces its context-mates false.
  TrueExcludesMates,
  /// d-1 false members of a size-d context force the last one true.
  LastMemberTrue,
};
std::string to_string(PropagationRule rule);

struct DerivationStep {
  VertexIndex vertex;
  bool value;
  PropagationRule rule;
  std::size_t context;
  /// 1-based synchronous round (or step index for asynchronous runs).
  std::size_t round;

  bool operator==(const DerivationStep&) const = default;
};

struct Contradiction {
  enum class Kind { TwoTrue, AllFalse };
  Kind kind;
  std::size_t context;
  /// The two true members for TwoTrue; empty for AllFalse.
  std::vector<VertexIndex> witnesses;
};

struct PropagationResult {
  /// The fixpoint, or the assignment reached when the contradiction surfaced.
  TwoValuedState state;
  std::vector<DerivationStep> derivation;
  std::optional<Contradiction> contradiction;

  bool consistent() const noexcept { return !contradiction.has_value(); }
};

/// Least fixpoint of the two rules extending `seed`, computed in synchronous
/// rounds. The seed must have one entry per cloud vertex.
PropagationResult propagate(const Cloud& cloud, const TwoValuedState& seed);

/// The same closure computed one rule application at a time in an order
/// drawn from `shuffle_seed`. Used to cross-check confluence.
PropagationResult propagate_randomized(const Cloud& cloud, const TwoValuedState& seed,
                                       std::uint64_t shuffle_seed);

/// Replays a derivation from the seed and checks that each step follows
/// from the assignment before it and that the final assignment exhibits the
/// reported contradiction, if any.
bool replay_derivation(const Cloud& cloud, const TwoValuedState& seed,
                       const PropagationResult& result);

// --- enumeration -----------------------------------------------------------

struct EnumerationOptions {
  std::size_t vertex_cap = 128;
  std::size_t state_cap = 1'000'000;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned jobs = 1;
  /// Stop after this many states (0 = all). The result is then the
  /// canonically smallest states found by the search, not a global prefix.
  std::size_t stop_after = 0;
};

/// All type-II states, canonically ordered. Throws ResourceLimitError when a
/// cap is exceeded.
StateSet enumerate_states(const Cloud& cloud, const EnumerationOptions& options = {});

/// 2^(vertex count).
BigInt count_type_I(const Cloud& cloud);

// --- analysis --------------------------------------------------------------

/// Richness of a state set over the nonadjacent pairs of the skeleton.
///
/// The flags are graded so that full implies separating implies unital:
/// separating requires unital, full requires separating. The lists record
/// the raw findings for each condition on its own.
struct PropertyReport {
  std::size_t count = 0;
  bool empty = true;

  bool unital = false;
  std::vector<VertexIndex> never_true;

  bool separating = false;
  std::vector<VertexPair> unseparated;

  bool full = false;
  std::vector<VertexPair> never_jointly_true;

  std::vector<VertexIndex> forced_zero;
  std::vector<VertexIndex> forced_one;
};

PropertyReport state_properties(const Cloud& cloud, const StateSet& states);

enum class Relation {
  NoStateWithATrue,
  Tifs,
  Tits,
  Equivalent,
  Opposite,
  Independent,
  ValueIndefinite,
};
std::string to_string(Relation r);

/// Relation of b to a over the type-II states of `states`.
Relation classify_pair(const StateSet& states, VertexIndex a, VertexIndex b);
/// Kind II enumerates; kind III decides by propagation consistency.
Relation classify_pair(const Cloud& cloud, VertexIndex a, VertexIndex b, StateKind kind,
                       const EnumerationOptions& options = {});

struct KsResult {
  bool kochen_specker = false;
  std::optional<TwoValuedState> witness;
};

/// True iff the cloud admits no type-II state.
KsResult ks_check(const Cloud& cloud, const EnumerationOptions& options = {});

/// Ordered pairs (x, y), x != y, related by `relation`, sorted.
std::vector<VertexPair> relation_pairs(const Cloud& cloud, StateKind kind, Relation relation,
                                       const EnumerationOptions& options = {});
std::vector<VertexPair> tits_pairs(const Cloud& cloud, StateKind kind,
                                   const EnumerationOptions& options = {});
/// Nonadjacent pairs (x, y), x < y, classified TIFS in at least one
/// direction.
std::vector<VertexPair> tifs_pairs(const Cloud& cloud, StateKind kind,
                                   const EnumerationOptions& options = {});

}  // namespace cloudlab
