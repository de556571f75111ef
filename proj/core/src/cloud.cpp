#include "cloudlab/cloud.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace cloudlab {

bool is_vertex_token(std::string_view token) noexcept {
  std::size_t i = 0;
  while (i < token.size()) {
    const auto ch = static_cast<unsigned char>(token[i]);
    if (!(std::isalnum(ch) || ch == '_')) break;
    ++i;
  }
  if (i == 0) return false;
  while (i < token.size() && token[i] == '\'') ++i;
  return i == token.size();
}

Cloud::Cloud(std::string name, std::vector<std::string> vertices,
             std::vector<std::vector<VertexIndex>> contexts, std::optional<VertexPair> terminals,
             std::map<VertexIndex, std::string> labels)
    : name_(std::move(name)),
      vertices_(std::move(vertices)),
      contexts_(std::move(contexts)),
      terminals_(terminals),
      labels_(std::move(labels)) {
  for (VertexIndex v = 0; v < vertices_.size(); ++v) {
    if (!is_vertex_token(vertices_[v])) {
      throw CloudError("invalid vertex name '" + vertices_[v] + "'");
    }
    if (!index_.emplace(vertices_[v], v).second) {
      throw CloudError("duplicate vertex '" + vertices_[v] + "'");
    }
  }
  incidence_.assign(vertices_.size(), {});
  for (std::size_t c = 0; c < contexts_.size(); ++c) {
    const auto& members = contexts_[c];
    if (members.size() < 2) {
      throw CloudError("context " + std::to_string(c + 1) + " has fewer than 2 members");
    }
    std::set<VertexIndex> seen;
    for (VertexIndex v : members) {
      if (v >= vertices_.size()) {
        throw CloudError("context " + std::to_string(c + 1) + " references a missing vertex");
      }
      if (!seen.insert(v).second) {
        throw CloudError("context " + std::to_string(c + 1) + " repeats vertex '" + vertices_[v] +
                         "'");
      }
      incidence_[v].push_back(c);
    }
  }
  if (terminals_) {
    const auto [a, b] = *terminals_;
    if (a >= vertices_.size() || b >= vertices_.size()) {
      throw CloudError("terminal is not a vertex of the cloud");
    }
    if (a == b) throw CloudError("terminals must be distinct vertices");
  }
  for (const auto& [v, text] : labels_) {
    if (v >= vertices_.size()) throw CloudError("label attached to a missing vertex");
  }
}

std::optional<VertexIndex> Cloud::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexIndex Cloud::index_of(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw CloudError("unknown vertex '" + std::string(name) + "'");
}

std::size_t Cloud::max_context_size() const noexcept {
  std::size_t best = 0;
  for (const auto& c : contexts_) best = std::max(best, c.size());
  return best;
}

Cloud Cloud::with_name(std::string name) const {
  Cloud copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

Cloud Cloud::with_terminals(std::optional<VertexPair> terminals) const {
  return Cloud(name_, vertices_, contexts_, terminals, labels_);
}

bool Cloud::operator==(const Cloud& other) const {
  return name_ == other.name_ && vertices_ == other.vertices_ && contexts_ == other.contexts_ &&
         terminals_ == other.terminals_ && labels_ == other.labels_;
}

VertexIndex CloudBuilder::vertex(std::string_view name) {
  std::string key(name);
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  if (!is_vertex_token(key)) throw CloudError("invalid vertex name '" + key + "'");
  const VertexIndex v = vertices_.size();
  vertices_.push_back(key);
  index_.emplace(std::move(key), v);
  return v;
}

CloudBuilder& CloudBuilder::label(std::string_view vertex_name, std::string text) {
  labels_[vertex(vertex_name)] = std::move(text);
  return *this;
}

CloudBuilder& CloudBuilder::context(const std::vector<std::string>& members) {
  std::vector<VertexIndex> ids;
  ids.reserve(members.size());
  for (const auto& m : members) ids.push_back(vertex(m));
  contexts_.push_back(std::move(ids));
  return *this;
}

CloudBuilder& CloudBuilder::terminals(std::string_view a, std::string_view b) {
  terminals_ = std::make_pair(std::string(a), std::string(b));
  return *this;
}

CloudBuilder& CloudBuilder::name(std::string name) {
  name_ = std::move(name);
  return *this;
}

Cloud CloudBuilder::build() const {
  std::optional<VertexPair> terms;
  if (terminals_) {
    auto lookup = [&](const std::string& n) {
      auto it = index_.find(n);
      if (it == index_.end()) throw CloudError("unknown vertex '" + n + "' in terminals");
      return it->second;
    };
    terms = VertexPair{lookup(terminals_->first), lookup(terminals_->second)};
  }
  return Cloud(name_, vertices_, contexts_, terms, labels_);
}

SkeletonGraph::SkeletonGraph(std::size_t vertex_count, std::vector<std::string> names)
    : n_(vertex_count), adj_(vertex_count * vertex_count, 0), neighbors_(vertex_count),
      names_(std::move(names)) {
  if (!names_.empty() && names_.size() != n_) {
    throw CloudError("skeleton graph: name list does not match vertex count");
  }
}

std::string SkeletonGraph::name(VertexIndex v) const {
  if (v < names_.size()) return names_[v];
  return std::to_string(v);
}

void SkeletonGraph::add_edge(VertexIndex u, VertexIndex v) {
  if (u >= n_ || v >= n_) throw CloudError("skeleton graph: vertex out of range");
  if (u == v) throw CloudError("skeleton graph: self-loops are not allowed");
  if (adj_[u * n_ + v]) return;
  adj_[u * n_ + v] = 1;
  adj_[v * n_ + u] = 1;
  auto insert_sorted = [](std::vector<VertexIndex>& list, VertexIndex x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
  };
  insert_sorted(neighbors_[u], v);
  insert_sorted(neighbors_[v], u);
  ++edge_count_;
}

SkeletonGraph SkeletonGraph::with_edge(VertexIndex u, VertexIndex v) const {
  SkeletonGraph copy = *this;
  copy.add_edge(u, v);
  return copy;
}

std::vector<VertexPair> SkeletonGraph::edges() const {
  std::vector<VertexPair> out;
  out.reserve(edge_count_);
  for (VertexIndex u = 0; u < n_; ++u)
    for (VertexIndex v : neighbors_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::vector<VertexPair> SkeletonGraph::nonadjacent_pairs() const {
  std::vector<VertexPair> out;
  for (VertexIndex u = 0; u < n_; ++u)
    for (VertexIndex v = u + 1; v < n_; ++v)
      if (!adj_[u * n_ + v]) out.emplace_back(u, v);
  return out;
}

bool SkeletonGraph::operator==(const SkeletonGraph& other) const {
  return n_ == other.n_ && adj_ == other.adj_;
}

SkeletonGraph skeleton_graph(const Cloud& cloud) {
  SkeletonGraph g(cloud.vertex_count(), cloud.vertex_names());
  for (const auto& ctx : cloud.contexts())
    for (std::size_t i = 0; i < ctx.size(); ++i)
      for (std::size_t j = i + 1; j < ctx.size(); ++j) g.add_edge(ctx[i], ctx[j]);
  return g;
}

ValidationReport validate(const Cloud& cloud) {
  ValidationReport report;
  for (VertexIndex v = 0; v < cloud.vertex_count(); ++v)
    if (cloud.contexts_of(v).empty()) report.isolated_vertices.push_back(v);

  std::vector<std::vector<VertexIndex>> sorted;
  sorted.reserve(cloud.context_count());
  for (const auto& ctx : cloud.contexts()) {
    auto s = ctx;
    std::sort(s.begin(), s.end());
    sorted.push_back(std::move(s));
    ++report.size_histogram[ctx.size()];
  }
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if (sorted[i] == sorted[j]) {
        report.duplicate_contexts.emplace_back(i, j);
        continue;
      }
      std::vector<VertexIndex> common;
      std::set_intersection(sorted[i].begin(), sorted[i].end(), sorted[j].begin(),
                            sorted[j].end(), std::back_inserter(common));
      if (common.size() >= 2) report.multi_vertex_intersections.emplace_back(i, j);
      if (common.size() == sorted[i].size()) report.nested_contexts.emplace_back(i, j);
      if (common.size() == sorted[j].size()) report.nested_contexts.emplace_back(j, i);
    }
  }
  std::sort(report.nested_contexts.begin(), report.nested_contexts.end());
  return report;
}

namespace {

// Branch and bound over candidate sets in ascending vertex order; keeps the
// first maximum clique found, which makes the result deterministic.
class CliqueSearch {
 public:
  explicit CliqueSearch(const SkeletonGraph& g) : g_(g) {}

  std::vector<VertexIndex> run() {
    std::vector<VertexIndex> all(g_.vertex_count());
    for (VertexIndex v = 0; v < all.size(); ++v) all[v] = v;
    std::vector<VertexIndex> current;
    expand(current, all);
    return best_;
  }

 private:
  void expand(std::vector<VertexIndex>& current, const std::vector<VertexIndex>& candidates) {
    if (candidates.empty()) {
      if (current.size() > best_.size()) best_ = current;
      return;
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (current.size() + (candidates.size() - i) <= best_.size()) return;
      const VertexIndex v = candidates[i];
      std::vector<VertexIndex> next;
      for (std::size_t j = i + 1; j < candidates.size(); ++j)
        if (g_.adjacent(v, candidates[j])) next.push_back(candidates[j]);
      current.push_back(v);
      expand(current, next);
      current.pop_back();
    }
  }

  const SkeletonGraph& g_;
  std::vector<VertexIndex> best_;
};

}  // namespace

std::vector<VertexIndex> maximum_clique(const SkeletonGraph& graph) {
  return CliqueSearch(graph).run();
}

std::size_t clique_number(const SkeletonGraph& graph) { return maximum_clique(graph).size(); }

std::size_t clique_number(const Cloud& cloud) { return clique_number(skeleton_graph(cloud)); }

}  // namespace cloudlab
