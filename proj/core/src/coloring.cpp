#include "cloudlab/coloring.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace cloudlab {

std::size_t Coloring::used() const {
  return std::set<std::size_t>(colors.begin(), colors.end()).size();
}

bool is_proper(const SkeletonGraph& graph, const Coloring& coloring) {
  if (coloring.colors.size() != graph.vertex_count()) return false;
  for (std::size_t c : coloring.colors)
    if (c == 0 || c > coloring.palette) return false;
  for (const auto& [u, v] : graph.edges())
    if (coloring.colors[u] == coloring.colors[v]) return false;
  return true;
}

namespace {

// DSATUR branch and bound for a fixed palette. The maximum clique is
// precolored; a fresh color is only ever max-used + 1, which removes color
// permutation symmetry.
class Dsatur {
 public:
  Dsatur(const SkeletonGraph& g, std::size_t t)
      : g_(g), t_(t), color_(g.vertex_count(), 0), seen_(g.vertex_count() * (t + 2), 0),
        saturation_(g.vertex_count(), 0) {}

  std::optional<Coloring> run() {
    const auto clique = maximum_clique(g_);
    if (clique.size() > t_) return std::nullopt;
    std::size_t next = 1;
    for (VertexIndex v : clique) paint(v, next++);
    if (!search(clique.size())) return std::nullopt;
    return Coloring{color_, t_};
  }

 private:
  std::size_t& seen(VertexIndex v, std::size_t c) { return seen_[v * (t_ + 2) + c]; }

  void paint(VertexIndex v, std::size_t c) {
    color_[v] = c;
    for (VertexIndex w : g_.neighbors(v))
      if (seen(w, c)++ == 0) ++saturation_[w];
  }

  void unpaint(VertexIndex v) {
    const std::size_t c = color_[v];
    for (VertexIndex w : g_.neighbors(v))
      if (--seen(w, c) == 0) --saturation_[w];
    color_[v] = 0;
  }

  std::optional<VertexIndex> select() const {
    std::optional<VertexIndex> best;
    for (VertexIndex v = 0; v < color_.size(); ++v) {
      if (color_[v] != 0) continue;
      if (!best || saturation_[v] > saturation_[*best] ||
          (saturation_[v] == saturation_[*best] && g_.degree(v) > g_.degree(*best)))
        best = v;
    }
    return best;
  }

  bool search(std::size_t max_used) {
    const auto v = select();
    if (!v) return true;
    if (saturation_[*v] >= t_) return false;
    const std::size_t limit = std::min(t_, max_used + 1);
    for (std::size_t c = 1; c <= limit; ++c) {
      if (seen(*v, c) != 0) continue;
      paint(*v, c);
      if (search(std::max(max_used, c))) return true;
      unpaint(*v);
    }
    return false;
  }

  const SkeletonGraph& g_;
  std::size_t t_;
  std::vector<std::size_t> color_;
  std::vector<std::size_t> seen_;
  std::vector<std::size_t> saturation_;
};

}  // namespace

std::optional<Coloring> t_coloring(const SkeletonGraph& graph, std::size_t t) {
  if (t == 0) return graph.vertex_count() == 0 ? std::optional<Coloring>(Coloring{{}, 0}) : std::nullopt;
  return Dsatur(graph, t).run();
}

ChromaticResult chromatic_number(const SkeletonGraph& graph) {
  if (graph.vertex_count() == 0) throw PreconditionError("chromatic number of the empty graph");
  for (std::size_t t = std::max<std::size_t>(1, clique_number(graph));; ++t) {
    if (auto c = t_coloring(graph, t)) return {t, std::move(*c)};
  }
}

TwoValuedState coloring_to_state(const Cloud& cloud, const Coloring& coloring, std::size_t true_color) {
  if (cloud.context_count() == 0) throw PreconditionError("cloud has no contexts");
  const std::size_t d = cloud.contexts().front().size();
  for (const auto& ctx : cloud.contexts())
    if (ctx.size() != d) throw PreconditionError("contexts have different sizes");
  const SkeletonGraph g = skeleton_graph(cloud);
  if (!is_proper(g, coloring)) throw PreconditionError("coloring is not proper");
  const std::size_t used = coloring.used();
  if (used != d) {
    throw PreconditionError("coloring uses " + std::to_string(used) + " colors but contexts have size " +
                            std::to_string(d));
  }
  TwoValuedState s(cloud.vertex_count());
  for (VertexIndex v = 0; v < cloud.vertex_count(); ++v) s.set(v, coloring.colors[v] == true_color);
  for (std::size_t c = 0; c < cloud.context_count(); ++c) {
    const auto& ctx = cloud.contexts()[c];
    if (std::none_of(ctx.begin(), ctx.end(), [&](VertexIndex v) { return s.is_true(v); }))
      throw PreconditionError("context " + std::to_string(c + 1) + " lacks color " +
                              std::to_string(true_color));
  }
  return s;
}

Coloring state_to_coloring(const Cloud& cloud, const TwoValuedState& state) {
  if (state.size() != cloud.vertex_count()) throw PreconditionError("state does not match the cloud");
  const SkeletonGraph g = skeleton_graph(cloud);
  Coloring out{std::vector<std::size_t>(g.vertex_count(), 0), 0};
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    bool clash = false;
    if (state.is_true(v)) {
      for (VertexIndex w : g.neighbors(v)) clash = clash || out.colors[w] == 1;
      if (!clash) {
        out.colors[v] = 1;
        continue;
      }
    }
    std::set<std::size_t> taken;
    for (VertexIndex w : g.neighbors(v)) taken.insert(out.colors[w]);
    std::size_t c = 2;
    while (taken.count(c)) ++c;
    out.colors[v] = c;
  }
  for (std::size_t c : out.colors) out.palette = std::max(out.palette, c);
  return out;
}

SeparableChromaticResult separable_chromatic_number(const SkeletonGraph& graph, unsigned jobs) {
  SeparableChromaticResult result;
  auto chi = chromatic_number(graph);
  result.chromatic_number = chi.chromatic_number;
  result.chromatic_witness = std::move(chi.witness);
  const std::size_t t = result.chromatic_number;

  const auto pairs = graph.nonadjacent_pairs();
  result.certificate.resize(pairs.size());
  auto solve = [&](std::size_t i) {
    const auto [x, y] = pairs[i];
    PairSeparation& entry = result.certificate[i];
    entry.pair = pairs[i];
    if (auto c = t_coloring(graph.with_edge(x, y), t)) {
      entry.separable_at_chi = true;
      entry.witness = std::move(*c);
      return;
    }
    // chi(G + xy) <= chi(G) + 1: recolor y with a fresh color.
    Coloring c = result.chromatic_witness;
    c.colors[y] = t + 1;
    c.palette = t + 1;
    entry.witness = std::move(c);
  };

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  if (jobs <= 1 || pairs.size() < 2) {
    for (std::size_t i = 0; i < pairs.size(); ++i) solve(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(jobs, pairs.size()); ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < pairs.size(); i = next++) solve(i);
      });
  }
  result.value = t;
  for (const auto& e : result.certificate)
    if (!e.separable_at_chi) result.value = t + 1;
  return result;
}

}  // namespace cloudlab
