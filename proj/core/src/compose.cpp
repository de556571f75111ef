#include "cloudlab/compose.hpp"

#include <algorithm>
#include <set>

namespace cloudlab {

Identification Identification::parse(std::string_view text) {
  Identification out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string item;
    for (char c : text.substr(pos, comma - pos))
      if (c != ' ' && c != '\t') item.push_back(c);
    pos = comma + 1;
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw CloudError("identification item '" + item + "' is not of the form b_vertex=a_vertex");
    out.pairs.emplace_back(item.substr(0, eq), item.substr(eq + 1));
  }
  return out;
}

PasteResult paste_with_report(const Cloud& a, const Cloud& b, const Identification& ident,
                              const PasteOptions& options) {
  std::map<std::string, std::string> renaming;
  std::set<std::string> images;
  for (const auto& [from, to] : ident.pairs) {
    if (!b.find(from)) throw CloudError("identification: '" + from + "' is not a vertex of the second cloud");
    if (!a.find(to)) throw CloudError("identification: '" + to + "' is not a vertex of the first cloud");
    if (!renaming.emplace(from, to).second)
      throw CloudError("identification: '" + from + "' is identified twice");
    if (!images.insert(to).second) throw CloudError("identification: '" + to + "' is used twice");
  }

  CloudBuilder builder(options.name.empty() ? a.name() : options.name);
  std::set<std::string> taken(a.vertex_names().begin(), a.vertex_names().end());
  for (const auto& v : a.vertex_names()) builder.vertex(v);
  for (const auto& [v, text] : a.labels()) builder.label(a.vertex_name(v), text);
  for (const auto& name : b.vertex_names()) {
    if (renaming.count(name)) continue;
    std::string fresh = name + options.suffix;
    while (taken.count(fresh) || b.find(fresh)) fresh += options.suffix.empty() ? "_" : options.suffix;
    taken.insert(fresh);
    renaming.emplace(name, fresh);
  }
  for (const auto& name : b.vertex_names()) builder.vertex(renaming.at(name));

  std::set<std::vector<std::string>> seen;
  auto key_of = [](std::vector<std::string> members) {
    std::sort(members.begin(), members.end());
    return members;
  };
  for (const auto& ctx : a.contexts()) {
    std::vector<std::string> members;
    for (VertexIndex v : ctx) members.push_back(a.vertex_name(v));
    seen.insert(key_of(members));
    builder.context(members);
  }
  PasteResult result;
  for (std::size_t c = 0; c < b.context_count(); ++c) {
    std::vector<std::string> members;
    for (VertexIndex v : b.contexts()[c]) members.push_back(renaming.at(b.vertex_name(v)));
    const auto key = key_of(members);
    if (std::adjacent_find(key.begin(), key.end()) != key.end())
      throw CloudError("identification collapses two members of a context");
    if (!seen.insert(key).second) {
      result.merged_contexts.push_back(c);
      continue;
    }
    builder.context(members);
  }
  if (const auto& t = a.terminals()) builder.terminals(a.vertex_name(t->first), a.vertex_name(t->second));
  for (const auto& [v, text] : b.labels()) {
    const auto& name = renaming.at(b.vertex_name(v));
    const auto idx = a.find(name);
    if (!idx || !a.labels().count(*idx)) builder.label(name, text);
  }
  result.cloud = builder.build();
  result.renaming = std::move(renaming);
  return result;
}

Cloud paste(const Cloud& a, const Cloud& b, const Identification& ident, const PasteOptions& options) {
  return paste_with_report(a, b, ident, options).cloud;
}

Representation paste_representations(const Representation& a, const Representation& b,
                                     const PasteResult& pasted) {
  if (a.mode() != b.mode()) throw GeometryError("mixing exact and float representations");
  Representation out(a.mode(), std::max(a.tolerance(), b.tolerance()));
  for (const auto& [name, ray] : a.rays()) out.set(name, ray);
  for (const auto& [name, ray] : b.rays()) {
    auto it = pasted.renaming.find(name);
    if (it == pasted.renaming.end() || out.find(it->second)) continue;
    out.set(it->second, ray);
  }
  return out;
}

Extension extend_to_tits(const Cloud& cloud, const Representation& rep, const std::string& a,
                         const std::string& b, const ExtensionOptions& options) {
  cloud.index_of(a);
  cloud.index_of(b);
  const Ray& ra = rep.at(a);
  const Ray& rb = rep.at(b);
  const StandardConstruction sc = standard_construction(ra, rb, rep.tolerance());
  if (sc.degenerate) throw GeometryError("terminals '" + a + "' and '" + b + "' are orthogonal");

  Extension out{cloud, rep, {}, {}, {}, {}};
  CloudBuilder builder(cloud.name());
  for (const auto& v : cloud.vertex_names()) builder.vertex(v);
  for (const auto& [v, text] : cloud.labels()) builder.label(cloud.vertex_name(v), text);
  std::set<std::vector<std::string>> seen;
  for (const auto& ctx : cloud.contexts()) {
    std::vector<std::string> members;
    for (VertexIndex v : ctx) members.push_back(cloud.vertex_name(v));
    builder.context(members);
    std::sort(members.begin(), members.end());
    seen.insert(members);
  }

  auto place = [&](const std::string& role, const std::string& base, const Ray& ray) {
    const auto hits = out.representation.matching(ray);
    if (!hits.empty()) {
      out.report.collided_vertices.emplace_back(role, hits.front());
      return hits.front();
    }
    std::string name = base;
    for (int k = 2; cloud.find(name) || out.representation.find(name); ++k) name = base + "_" + std::to_string(k);
    out.representation.set(name, ray);
    out.report.new_vertices.push_back(name);
    builder.vertex(name);
    return name;
  };
  out.c = place("c", options.c_name, sc.c);
  out.d = place("d", options.d_name, sc.d);
  out.e = place("e", options.e_name, sc.e);

  for (std::vector<std::string> ctx : {std::vector<std::string>{b, out.c, out.d},
                                       std::vector<std::string>{a, out.e, out.c}}) {
    auto key = ctx;
    std::sort(key.begin(), key.end());
    if (std::adjacent_find(key.begin(), key.end()) != key.end())
      throw GeometryError("standard construction collapses a context onto fewer than 3 vertices");
    if (!seen.insert(key).second) {
      out.report.existing_contexts.push_back(ctx);
      continue;
    }
    builder.context(ctx);
    out.report.new_contexts.push_back(std::move(ctx));
  }
  builder.terminals(a, out.d);
  out.cloud = builder.build();
  return out;
}

}  // namespace cloudlab
