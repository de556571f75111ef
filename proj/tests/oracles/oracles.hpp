#pragma once

// Slow reference implementations used to check the library. They share no
// code with it beyond the Cloud container and the state type.

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "cloudlab/cloud.hpp"
#include "cloudlab/states.hpp"

namespace oracle {

using cloudlab::Cloud;
using cloudlab::TwoValuedState;
using cloudlab::VertexIndex;
using cloudlab::VertexPair;

using Adjacency = std::vector<std::vector<bool>>;

/// Pairs sharing a context, computed directly from the contexts.
Adjacency adjacency(const Cloud& cloud);
Adjacency with_edge(Adjacency adj, VertexIndex x, VertexIndex y);

/// Every 0/1 vector filtered by "exactly one true per context". n <= 20.
std::vector<TwoValuedState> brute_force_states(const Cloud& cloud);
/// Vertex-by-vertex backtracking that checks a context once all of its
/// members are set.
std::vector<TwoValuedState> backtrack_states(const Cloud& cloud);

/// Exhaustive t^n search, optionally requiring c(x) != c(y). n <= 8.
bool colorable(const Adjacency& adj, std::size_t t, std::optional<VertexPair> separate = std::nullopt);
std::size_t chromatic(const Adjacency& adj);
/// Largest clique by subset enumeration. n <= 16.
std::size_t clique(const Adjacency& adj);

struct Properties {
  bool unital = false;
  bool separating = false;
  bool full = false;
  std::vector<VertexPair> unseparated;
  std::vector<VertexIndex> forced_zero;
};

/// Graded flags straight from the definitions.
Properties properties(const Cloud& cloud, const std::vector<TwoValuedState>& states);

/// Repeats single rule applications until nothing changes. Returns nullopt
/// when a context ends with two true members or all members false.
std::optional<TwoValuedState> closure(const Cloud& cloud, TwoValuedState state);

/// Random cloud with `vertices` vertices and contexts of size 2..max_size.
Cloud random_cloud(std::mt19937_64& rng, std::size_t vertices, std::size_t contexts, std::size_t max_size = 4);
/// Random partial assignment setting each vertex with probability 1/4.
TwoValuedState random_seed(std::mt19937_64& rng, std::size_t vertices);

}  // namespace oracle
