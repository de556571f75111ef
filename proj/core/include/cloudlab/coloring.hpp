#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cloudlab/cloud.hpp"
#include "cloudlab/states.hpp"

namespace cloudlab {

/// Vertex -> color in 1..palette.
struct Coloring {
  std::vector<std::size_t> colors;
  std::size_t palette = 0;

  /// Number of distinct colors actually used.
  std::size_t used() const;
  bool operator==(const Coloring&) const = default;
};

bool is_proper(const SkeletonGraph& graph, const Coloring& coloring);

/// A proper coloring with at most t colors, or nullopt. Exact; the witness
/// is deterministic.
std::optional<Coloring> t_coloring(const SkeletonGraph& graph, std::size_t t);

struct ChromaticResult {
  std::size_t chromatic_number = 0;
  Coloring witness;
};

/// Throws PreconditionError on the empty graph.
ChromaticResult chromatic_number(const SkeletonGraph& graph);

/// Maps `true_color` to 1 and every other color to 0. Requires all contexts
/// to have one size d and the coloring to be proper with exactly d colors;
/// throws PreconditionError otherwise.
TwoValuedState coloring_to_state(const Cloud& cloud, const Coloring& coloring, std::size_t true_color);

/// Color 1 on the true vertices of a type-II state, greedy colors on the
/// rest in vertex order. Only properness is guaranteed.
Coloring state_to_coloring(const Cloud& cloud, const TwoValuedState& state);

struct PairSeparation {
  VertexPair pair;
  /// Whether a proper chi-coloring separates the pair.
  bool separable_at_chi = false;
  /// A proper coloring with c(x) != c(y), using chi colors when
  /// separable_at_chi holds and chi + 1 otherwise.
  Coloring witness;
};

struct SeparableChromaticResult {
  std::size_t value = 0;
  std::size_t chromatic_number = 0;
  Coloring chromatic_witness;
  /// One entry per nonadjacent pair, in pair order.
  std::vector<PairSeparation> certificate;
};

/// max over nonadjacent pairs (x, y) of chi(G + xy); chi(G) when every pair
/// is adjacent. `jobs` = 0 picks the hardware concurrency.
SeparableChromaticResult separable_chromatic_number(const SkeletonGraph& graph, unsigned jobs = 1);

}  // namespace cloudlab
