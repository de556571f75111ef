#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cloudlab/cloud.hpp"
#include "cloudlab/geometry.hpp"
#include "cloudlab/qsqrt2.hpp"
#include "cloudlab/states.hpp"

namespace cloudlab {

/// One `#! expect <claim> <args...> [origin=<where>]` line.
struct Expectation {
  std::string claim;
  std::vector<std::string> args;
  /// figure, text, enumeration or definition; empty when not given.
  std::string origin;
  std::size_t line = 0;

  std::string to_string() const;
};

/// `#! param <name> <interval> <default>`, e.g. `#! param x (0,1] 1/2`.
struct Parameter {
  std::string name;
  Rational low;
  bool low_open = false;
  Rational high;
  bool high_open = false;
  Rational default_value;

  bool contains(const Rational& value) const;
  std::string interval() const;
};

using ParameterValues = std::map<std::string, Rational>;

struct DatasetEntry {
  std::string name;
  Cloud cloud;
  std::optional<Representation> representation;
  std::vector<Expectation> expected;
  /// From `#! checksum`; compared against cloud_checksum(cloud).
  std::optional<std::string> checksum;
  std::vector<Parameter> parameters;
  /// Values the entry was instantiated with, defaults included.
  ParameterValues values;
};

/// Built-in names, sorted. Includes the generated family `single`.
std::vector<std::string> dataset_names();

/// Raw file text of a built-in, before parameter substitution. Files in the
/// directory named by CLOUDLAB_DATASET_DIR take precedence over the copies
/// embedded at build time.
std::string dataset_source(std::string_view name);

/// Throws CloudError for unknown names, unknown parameters and values
/// outside the declared range.
DatasetEntry dataset(std::string_view name, const ParameterValues& values = {});

/// `name` or `name?x=1/4&y=1`.
DatasetEntry dataset_from_uri(std::string_view uri);

/// Instantiates cloud-format text that may carry `#! param` and `#! expect`
/// directives. `{name}` placeholders are replaced by the parameter values.
DatasetEntry instantiate_dataset(std::string_view text, const std::string& name,
                                 const ParameterValues& values = {});

/// One context {v1, ..., vd}.
DatasetEntry single_context(std::size_t d);

/// Parses `x=1/2` items separated by commas or ampersands.
ParameterValues parse_parameter_values(std::string_view text);

struct ClaimResult {
  Expectation expectation;
  bool ok = false;
  /// What the analysis found, in the claim's own vocabulary.
  std::string actual;
};

/// Evaluates every expectation plus the checksum line, if any.
std::vector<ClaimResult> check_expectations(const DatasetEntry& entry,
                                            const EnumerationOptions& options = {});

}  // namespace cloudlab
