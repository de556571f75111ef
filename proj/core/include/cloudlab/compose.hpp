#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cloudlab/cloud.hpp"
#include "cloudlab/geometry.hpp"

namespace cloudlab {

/// Vertex of cloud B -> vertex of cloud A.
struct Identification {
  std::vector<std::pair<std::string, std::string>> pairs;

  /// Reads `b_vertex=a_vertex` items separated by commas.
  static Identification parse(std::string_view text);
};

struct PasteOptions {
  /// Appended to B's unidentified vertices (repeated until the name is free).
  std::string suffix = "'";
  /// Name of the result; empty keeps A's name.
  std::string name;
};

struct PasteResult {
  Cloud cloud;
  /// B vertex name -> name in the result.
  std::map<std::string, std::string> renaming;
  /// Indices of B's contexts dropped because they coincide with an
  /// existing context after identification.
  std::vector<std::size_t> merged_contexts;
};

/// Contexts of A followed by B's renamed contexts; terminals are A's.
/// Throws CloudError for identifications that are not injective or that
/// name missing vertices.
PasteResult paste_with_report(const Cloud& a, const Cloud& b, const Identification& ident,
                              const PasteOptions& options = {});
Cloud paste(const Cloud& a, const Cloud& b, const Identification& ident, const PasteOptions& options = {});

/// Carries B's rays over to the pasted cloud's names. Identified vertices
/// keep A's ray.
Representation paste_representations(const Representation& a, const Representation& b,
                                     const PasteResult& pasted);

struct DegeneracyReport {
  /// (role, existing vertex) for constructed rays that already occur.
  std::vector<std::pair<std::string, std::string>> collided_vertices;
  std::vector<std::string> new_vertices;
  std::vector<std::vector<std::string>> new_contexts;
  /// Constructed contexts that were already present.
  std::vector<std::vector<std::string>> existing_contexts;
};

struct ExtensionOptions {
  std::string c_name = "c";
  std::string d_name = "d";
  std::string e_name = "e";
};

struct Extension {
  Cloud cloud;
  Representation representation;
  DegeneracyReport report;
  /// Names used in the result for the constructed rays.
  std::string c;
  std::string d;
  std::string e;
};

/// Adds c = a x b, d = b x c, e = a x c and the contexts {b, c, d} and
/// {a, e, c}, reusing any vertex whose ray already occurs. The result's
/// terminals are (a, d). Throws GeometryError for orthogonal or collinear
/// terminals and CloudError when a or b has no ray.
Extension extend_to_tits(const Cloud& cloud, const Representation& rep, const std::string& a,
                         const std::string& b, const ExtensionOptions& options = {});

}  // namespace cloudlab
