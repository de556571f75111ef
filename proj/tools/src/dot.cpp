#include <array>
#include <sstream>
#include <stdexcept>

#include "cloudlab/cli.hpp"
#include "cloudlab/errors.hpp"

namespace cloudlab::cli {
namespace {

constexpr std::array<const char*, 12> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939",
};

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + '"';
}

std::string node_attributes(const DotOverlay& overlay, VertexIndex v) {
  if (const auto* state = std::get_if<TwoValuedState>(&overlay)) {
    if (state->is_true(v)) return "shape=box, style=filled, fillcolor=red";
    if (state->is_false(v)) return "shape=circle, style=filled, fillcolor=black, fontcolor=white";
    return "shape=circle";
  }
  if (const auto* coloring = std::get_if<Coloring>(&overlay)) {
    const std::size_t c = coloring->colors[v];
    return "shape=circle, style=filled, fillcolor=" + quoted(kPalette[(c - 1) % kPalette.size()]) +
           ", xlabel=" + quoted(std::to_string(c));
  }
  return {};
}

}  // namespace

std::string export_dot(const Cloud& cloud, const DotOverlay& overlay) {
  const std::size_t n = cloud.vertex_count();
  if (const auto* state = std::get_if<TwoValuedState>(&overlay); state && state->size() != n)
    throw PreconditionError("state overlay has " + std::to_string(state->size()) + " entries for " +
                            std::to_string(n) + " vertices");
  if (const auto* coloring = std::get_if<Coloring>(&overlay); coloring && coloring->colors.size() != n)
    throw PreconditionError("coloring overlay does not match the cloud");

  std::ostringstream os;
  os << "graph " << quoted(cloud.name()) << " {\n";
  os << "  node [shape=circle];\n";
  for (VertexIndex v = 0; v < n; ++v) {
    os << "  " << quoted(cloud.vertex_name(v));
    if (const auto attrs = node_attributes(overlay, v); !attrs.empty()) os << " [" << attrs << "]";
    os << ";\n";
  }
  std::vector<std::vector<bool>> drawn(n, std::vector<bool>(n, false));
  for (std::size_t c = 0; c < cloud.context_count(); ++c) {
    const auto ctx = cloud.context(c);
    const char* color = kPalette[c % kPalette.size()];
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      for (std::size_t j = i + 1; j < ctx.size(); ++j) {
        const VertexIndex u = std::min(ctx[i], ctx[j]);
        const VertexIndex w = std::max(ctx[i], ctx[j]);
        if (drawn[u][w]) continue;
        drawn[u][w] = true;
        os << "  " << quoted(cloud.vertex_name(ctx[i])) << " -- " << quoted(cloud.vertex_name(ctx[j]))
           << " [color=" << quoted(color) << "];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace cloudlab::cli
