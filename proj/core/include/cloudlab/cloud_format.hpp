#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cloudlab/cloud.hpp"
#include "cloudlab/geometry.hpp"

namespace cloudlab {

/// A `#! keyword args...` comment line. Ordinary `#` comments are dropped.
struct Directive {
  std::size_t line = 0;
  std::string keyword;
  std::vector<std::string> args;
};

struct CloudDocument {
  Cloud cloud;
  /// Present when the document has at least one `vector` line.
  std::optional<Representation> representation;
  std::vector<Directive> directives;
};

/// Parses the line-oriented cloud format. Throws ParseError with the line
/// and column of the offending token.
///
///   cloud <name>
///   vertex <id> [label "<text>"]
///   context <id> <id> ...
///   terminals <id> <id>
///   vector <id> = (<scalar>, <scalar>, <scalar>)
///
/// `#! tolerance <t>` sets the float-mode tolerance.
CloudDocument parse_document(std::string_view text, const std::string& default_name = "cloud");
Cloud parse_cloud(std::string_view text);
CloudDocument read_document(const std::filesystem::path& path);

/// Canonical text of the hypergraph: header, the vertex lines needed to
/// reproduce order, labels and isolated vertices, contexts, terminals.
std::string serialize_cloud(const Cloud& cloud);
/// serialize_cloud plus `vector` lines in vertex order and the directives.
std::string serialize_document(const CloudDocument& doc);
std::string format_vector_line(const std::string& vertex, const Ray& ray);

std::uint64_t fnv1a64(std::string_view bytes) noexcept;
/// "fnv1a64:<16 hex digits>" over serialize_cloud.
std::string cloud_checksum(const Cloud& cloud);

}  // namespace cloudlab
