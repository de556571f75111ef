#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cloudlab/cloud.hpp"
#include "cloudlab/states.hpp"

namespace cloudlab {

/// Set representation over the ground set {0, ..., ground_size - 1} of
/// state indices: vertex v maps to the states that make v true.
struct PartitionLogic {
  std::size_t ground_size = 0;
  /// Per vertex, ascending ground indices.
  std::vector<std::vector<std::size_t>> atoms;
};

/// Throws PreconditionError for an empty set, a set of another kind, or
/// states that are not type-II states of the cloud.
PartitionLogic build_partition_logic(const Cloud& cloud, const StateSet& states);

struct PartitionReport {
  /// Contexts whose atoms do not partition the ground set.
  std::vector<std::size_t> non_partitioning_contexts;
  std::vector<VertexIndex> empty_atoms;
  /// Vertex pairs (x, y), x < y, with equal atoms.
  std::vector<VertexPair> collisions;

  bool partitions() const noexcept { return non_partitioning_contexts.empty(); }
  bool injective() const noexcept { return collisions.empty(); }
  /// Contexts partition the ground set into nonempty, pairwise distinct blocks.
  bool set_representable() const noexcept {
    return partitions() && empty_atoms.empty() && injective();
  }
};

PartitionReport verify_set_representation(const PartitionLogic& logic, const Cloud& cloud);

/// Reads the states back off the logic: state i makes v true iff i is in
/// the atom of v.
StateSet states_from_partition_logic(const PartitionLogic& logic, const Cloud& cloud);

/// `vertex: {i,j,...}` lines.
std::string format_partition_logic(const PartitionLogic& logic, const Cloud& cloud);
/// Generalized urn table: one row per ball type (ground index), one column
/// per context, each cell the member of that context printed on the ball.
std::string urn_table(const PartitionLogic& logic, const Cloud& cloud);

}  // namespace cloudlab
