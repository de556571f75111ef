#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cloudlab/errors.hpp"

namespace cloudlab {

using VertexIndex = std::size_t;
using VertexPair = std::pair<VertexIndex, VertexIndex>;

/// Vertex names are non-empty runs of letters, digits and underscores,
/// optionally followed by primes (a', b'').
bool is_vertex_token(std::string_view token) noexcept;

/// A collection of intertwined contexts over named vertices.
///
/// Vertices are addressed by their position in the cloud's vertex order.
/// Construction checks the per-context invariants (members distinct and in
/// range, size >= 2) and the terminals; cloud-wide findings such as duplicate
/// contexts or isolated vertices are left to validate().
class Cloud {
 public:
  Cloud() = default;
  Cloud(std::string name, std::vector<std::string> vertices,
        std::vector<std::vector<VertexIndex>> contexts,
        std::optional<VertexPair> terminals = std::nullopt,
        std::map<VertexIndex, std::string> labels = {});

  const std::string& name() const noexcept { return name_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t context_count() const noexcept { return contexts_.size(); }

  const std::vector<std::string>& vertex_names() const noexcept { return vertices_; }
  const std::string& vertex_name(VertexIndex v) const { return vertices_.at(v); }
  std::optional<VertexIndex> find(std::string_view name) const;
  /// Throws CloudError for names that are not vertices of this cloud.
  VertexIndex index_of(std::string_view name) const;

  const std::vector<std::vector<VertexIndex>>& contexts() const noexcept { return contexts_; }
  std::span<const VertexIndex> context(std::size_t c) const { return contexts_.at(c); }
  /// Indices of the contexts containing v, ascending.
  std::span<const std::size_t> contexts_of(VertexIndex v) const { return incidence_.at(v); }
  std::size_t max_context_size() const noexcept;

  const std::optional<VertexPair>& terminals() const noexcept { return terminals_; }
  const std::map<VertexIndex, std::string>& labels() const noexcept { return labels_; }

  Cloud with_name(std::string name) const;
  Cloud with_terminals(std::optional<VertexPair> terminals) const;

  bool operator==(const Cloud& other) const;

 private:
  std::string name_;
  std::vector<std::string> vertices_;
  std::vector<std::vector<VertexIndex>> contexts_;
  std::optional<VertexPair> terminals_;
  std::map<VertexIndex, std::string> labels_;
  std::unordered_map<std::string, VertexIndex> index_;
  std::vector<std::vector<std::size_t>> incidence_;
};

/// Incremental construction by vertex name; vertices are declared on first
/// mention.
class CloudBuilder {
 public:
  explicit CloudBuilder(std::string name = "cloud") : name_(std::move(name)) {}

  VertexIndex vertex(std::string_view name);
  CloudBuilder& label(std::string_view vertex_name, std::string text);
  CloudBuilder& context(const std::vector<std::string>& members);
  CloudBuilder& terminals(std::string_view a, std::string_view b);
  CloudBuilder& name(std::string name);

  Cloud build() const;

 private:
  std::string name_;
  std::vector<std::string> vertices_;
  std::unordered_map<std::string, VertexIndex> index_;
  std::vector<std::vector<VertexIndex>> contexts_;
  std::map<VertexIndex, std::string> labels_;
  std::optional<std::pair<std::string, std::string>> terminals_;
};

/// The graph on the cloud's vertices in which two vertices are adjacent iff
/// some context contains both.
class SkeletonGraph {
 public:
  SkeletonGraph() = default;
  explicit SkeletonGraph(std::size_t vertex_count, std::vector<std::string> names = {});

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool adjacent(VertexIndex u, VertexIndex v) const { return u != v && adj_[u * n_ + v] != 0; }
  const std::vector<VertexIndex>& neighbors(VertexIndex v) const { return neighbors_.at(v); }
  std::size_t degree(VertexIndex v) const { return neighbors_.at(v).size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::string name(VertexIndex v) const;

  /// Adds the undirected edge {u, v}; self-loops are rejected.
  void add_edge(VertexIndex u, VertexIndex v);
  SkeletonGraph with_edge(VertexIndex u, VertexIndex v) const;

  /// Edges as (u, v) with u < v, sorted.
  std::vector<VertexPair> edges() const;
  /// Distinct nonadjacent pairs (u, v) with u < v, sorted.
  std::vector<VertexPair> nonadjacent_pairs() const;

  bool operator==(const SkeletonGraph& other) const;

 private:
  std::size_t n_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<char> adj_;
  std::vector<std::vector<VertexIndex>> neighbors_;
  std::vector<std::string> names_;
};

SkeletonGraph skeleton_graph(const Cloud& cloud);

struct ValidationReport {
  std::vector<VertexIndex> isolated_vertices;
  /// Pairs (i, j), i < j, of contexts with equal member sets.
  std::vector<std::pair<std::size_t, std::size_t>> duplicate_contexts;
  /// Pairs of distinct contexts sharing two or more vertices. Informational.
  std::vector<std::pair<std::size_t, std::size_t>> multi_vertex_intersections;
  /// Pairs (inner, outer) where inner is a proper subset of outer. Informational.
  std::vector<std::pair<std::size_t, std::size_t>> nested_contexts;
  std::map<std::size_t, std::size_t> size_histogram;

  /// No isolated vertices and no duplicate contexts.
  bool clean() const noexcept { return isolated_vertices.empty() && duplicate_contexts.empty(); }
};

ValidationReport validate(const Cloud& cloud);

/// Maximum clique of a graph, as ascending vertex indices. Deterministic.
std::vector<VertexIndex> maximum_clique(const SkeletonGraph& graph);
std::size_t clique_number(const SkeletonGraph& graph);
std::size_t clique_number(const Cloud& cloud);

}  // namespace cloudlab
