#include "cloudlab/partition.hpp"

#include <algorithm>
#include <sstream>

namespace cloudlab {

PartitionLogic build_partition_logic(const Cloud& cloud, const StateSet& states) {
  if (states.kind != StateKind::II) throw PreconditionError("partition logics need type-II states");
  if (states.empty()) throw PreconditionError("partition logic of an empty state set");
  PartitionLogic logic{states.size(), std::vector<std::vector<std::size_t>>(cloud.vertex_count())};
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states.states[i];
    if (!is_type_ii(cloud, s)) throw PreconditionError("state " + std::to_string(i) + " is not a type-II state");
    for (VertexIndex v : s.true_vertices()) logic.atoms[v].push_back(i);
  }
  return logic;
}

PartitionReport verify_set_representation(const PartitionLogic& logic, const Cloud& cloud) {
  if (logic.atoms.size() != cloud.vertex_count()) throw PreconditionError("partition logic does not match the cloud");
  PartitionReport report;
  for (std::size_t c = 0; c < cloud.context_count(); ++c) {
    std::vector<std::size_t> hits(logic.ground_size, 0);
    for (VertexIndex v : cloud.contexts()[c])
      for (std::size_t i : logic.atoms[v]) ++hits[i];
    if (std::any_of(hits.begin(), hits.end(), [](std::size_t h) { return h != 1; }))
      report.non_partitioning_contexts.push_back(c);
  }
  for (VertexIndex v = 0; v < cloud.vertex_count(); ++v)
    if (logic.atoms[v].empty()) report.empty_atoms.push_back(v);
  for (VertexIndex x = 0; x < cloud.vertex_count(); ++x)
    for (VertexIndex y = x + 1; y < cloud.vertex_count(); ++y)
      if (logic.atoms[x] == logic.atoms[y]) report.collisions.emplace_back(x, y);
  return report;
}

StateSet states_from_partition_logic(const PartitionLogic& logic, const Cloud& cloud) {
  StateSet out{StateKind::II, {}};
  for (std::size_t i = 0; i < logic.ground_size; ++i) {
    TwoValuedState s(cloud.vertex_count());
    for (VertexIndex v = 0; v < cloud.vertex_count(); ++v) {
      const auto& atom = logic.atoms[v];
      s.set(v, std::binary_search(atom.begin(), atom.end(), i));
    }
    out.states.push_back(std::move(s));
  }
  return out;
}

std::string format_partition_logic(const PartitionLogic& logic, const Cloud& cloud) {
  std::ostringstream os;
  for (VertexIndex v = 0; v < cloud.vertex_count(); ++v) {
    os << cloud.vertex_name(v) << ": {";
    for (std::size_t k = 0; k < logic.atoms[v].size(); ++k) os << (k ? "," : "") << logic.atoms[v][k];
    os << "}\n";
  }
  return os.str();
}

std::string urn_table(const PartitionLogic& logic, const Cloud& cloud) {
  std::vector<std::vector<std::string>> rows(logic.ground_size + 1);
  rows[0].push_back("ball");
  for (std::size_t c = 0; c < cloud.context_count(); ++c) rows[0].push_back("C" + std::to_string(c + 1));
  for (std::size_t i = 0; i < logic.ground_size; ++i) {
    rows[i + 1].push_back(std::to_string(i));
    for (const auto& ctx : cloud.contexts()) {
      std::string cell = "?";
      for (VertexIndex v : ctx)
        if (std::binary_search(logic.atoms[v].begin(), logic.atoms[v].end(), i)) cell = cloud.vertex_name(v);
      rows[i + 1].push_back(cell);
    }
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& r : rows)
    for (std::size_t k = 0; k < r.size(); ++k) width[k] = std::max(width[k], r[k].size());
  std::ostringstream os;
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) {
      os << r[k];
      if (k + 1 < r.size()) os << std::string(width[k] - r[k].size() + 1, ' ');
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace cloudlab
