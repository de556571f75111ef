#include "cloudlab/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "cloudlab/cloud_format.hpp"
#include "cloudlab/coloring.hpp"
#include "cloudlab/errors.hpp"

namespace cloudlab {
namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_datasets();
}

namespace {

constexpr std::string_view kSingle = "single";
constexpr std::size_t kSingleMax = 64;

struct ClaimShape {
  std::string_view name;
  std::size_t arity;
};

constexpr ClaimShape kClaims[] = {
    {"vertices", 1},       {"contexts", 1},      {"states", 1},
    {"unital", 1},         {"separating", 1},    {"full", 1},
    {"relation", 4},       {"forced-zero", 1},   {"forced-one", 1},
    {"true-count", 2},     {"unseparated", 2},   {"clique", 1},
    {"chromatic", 1},      {"separable-exceeds-clique", 0},
    {"ks", 1},             {"representation-ok", 0},
    {"contradiction", 1},  {"derives", 2},       {"transition", 3},
};

Rational parse_rational(const std::string& text) {
  try {
    const QSqrt2 q = QSqrt2::parse(text);
    if (q.is_rational()) return q.rational_part();
  } catch (const std::invalid_argument&) {
  }
  throw CloudError("'" + text + "' is not a rational number");
}

Parameter parse_parameter(const Directive& d) {
  if (d.args.size() != 3) throw CloudError("line " + std::to_string(d.line) + ": param needs a name, an interval and a default");
  const std::string& iv = d.args[1];
  const auto comma = iv.find(',');
  if (iv.size() < 5 || (iv.front() != '(' && iv.front() != '[') || (iv.back() != ')' && iv.back() != ']') ||
      comma == std::string::npos)
    throw CloudError("line " + std::to_string(d.line) + ": malformed interval '" + iv + "'");
  Parameter p;
  p.name = d.args[0];
  p.low_open = iv.front() == '(';
  p.high_open = iv.back() == ')';
  p.low = parse_rational(iv.substr(1, comma - 1));
  p.high = parse_rational(iv.substr(comma + 1, iv.size() - comma - 2));
  p.default_value = parse_rational(d.args[2]);
  if (!p.contains(p.default_value))
    throw CloudError("line " + std::to_string(d.line) + ": default of '" + p.name + "' lies outside " + iv);
  return p;
}

Expectation parse_expectation(const Directive& d) {
  Expectation e;
  e.line = d.line;
  if (d.args.empty()) throw CloudError("line " + std::to_string(d.line) + ": expect needs a claim");
  e.claim = d.args[0];
  for (std::size_t i = 1; i < d.args.size(); ++i) {
    if (d.args[i].rfind("origin=", 0) == 0)
      e.origin = d.args[i].substr(7);
    else
      e.args.push_back(d.args[i]);
  }
  const auto shape = std::find_if(std::begin(kClaims), std::end(kClaims),
                                  [&](const ClaimShape& c) { return c.name == e.claim; });
  if (shape == std::end(kClaims)) throw CloudError("line " + std::to_string(d.line) + ": unknown claim '" + e.claim + "'");
  if (shape->arity != e.args.size())
    throw CloudError("line " + std::to_string(d.line) + ": claim '" + e.claim + "' takes " +
                     std::to_string(shape->arity) + " argument(s)");
  return e;
}

// Directives are read before substitution so that `#! param` lines can
// supply the values.
std::vector<Directive> raw_directives(std::string_view text) {
  std::vector<Directive> out;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line.compare(first, 2, "#!") != 0) continue;
    std::istringstream is(line.substr(first + 2));
    Directive d;
    d.line = line_no;
    is >> d.keyword;
    for (std::string arg; is >> arg;) d.args.push_back(arg);
    out.push_back(std::move(d));
  }
  return out;
}

std::string substitute(std::string text, const ParameterValues& values) {
  for (const auto& [name, value] : values) {
    const std::string key = "{" + name + "}";
    const std::string repl = rational_to_string(value);
    for (auto pos = text.find(key); pos != std::string::npos; pos = text.find(key, pos + repl.size()))
      text.replace(pos, key.size(), repl);
  }
  return text;
}

std::optional<std::filesystem::path> override_file(std::string_view name) {
  const char* dir = std::getenv("CLOUDLAB_DATASET_DIR");
  if (!dir || !*dir) return std::nullopt;
  auto path = std::filesystem::path(dir) / (std::string(name) + ".cloud");
  if (std::filesystem::is_regular_file(path)) return path;
  return std::nullopt;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw CloudError("expected true or false, got '" + s + "'");
}

std::size_t parse_count(const std::string& s) {
  std::size_t pos = 0;
  const unsigned long long v = std::stoull(s, &pos);
  if (pos != s.size()) throw CloudError("'" + s + "' is not a count");
  return static_cast<std::size_t>(v);
}

// Lazily computed analyses shared by the claims of one entry.
class ClaimContext {
 public:
  ClaimContext(const DatasetEntry& entry, const EnumerationOptions& options)
      : entry_(entry), options_(options) {}

  const Cloud& cloud() const { return entry_.cloud; }
  const EnumerationOptions& options() const { return options_; }

  const StateSet& states() {
    if (!states_) states_ = enumerate_states(cloud(), options_);
    return *states_;
  }
  const PropertyReport& properties() {
    if (!properties_) properties_ = state_properties(cloud(), states());
    return *properties_;
  }
  const SkeletonGraph& graph() {
    if (!graph_) graph_ = skeleton_graph(cloud());
    return *graph_;
  }
  const Representation& representation() const {
    if (!entry_.representation) throw CloudError("dataset '" + entry_.name + "' has no vectors");
    return *entry_.representation;
  }

 private:
  const DatasetEntry& entry_;
  EnumerationOptions options_;
  std::optional<StateSet> states_;
  std::optional<PropertyReport> properties_;
  std::optional<SkeletonGraph> graph_;
};

std::string join_names(const Cloud& cloud, const std::vector<VertexIndex>& vs) {
  std::string out;
  for (VertexIndex v : vs) out += (out.empty() ? "" : ",") + cloud.vertex_name(v);
  return out.empty() ? "-" : out;
}

ClaimResult evaluate(const Expectation& e, ClaimContext& ctx) {
  ClaimResult r{e, false, {}};
  const Cloud& cloud = ctx.cloud();
  const auto& a = e.args;
  auto count_claim = [&](std::size_t actual) {
    r.actual = std::to_string(actual);
    r.ok = actual == parse_count(a[0]);
  };
  auto flag_claim = [&](bool actual) {
    r.actual = yes_no(actual);
    r.ok = actual == parse_bool(a[0]);
  };
  auto membership = [&](const std::vector<VertexIndex>& list) {
    r.actual = join_names(cloud, list);
    r.ok = std::count(list.begin(), list.end(), cloud.index_of(a[0])) > 0;
  };

  if (e.claim == "vertices") {
    count_claim(cloud.vertex_count());
  } else if (e.claim == "contexts") {
    count_claim(cloud.context_count());
  } else if (e.claim == "states") {
    count_claim(ctx.states().size());
  } else if (e.claim == "unital") {
    flag_claim(ctx.properties().unital);
  } else if (e.claim == "separating") {
    flag_claim(ctx.properties().separating);
  } else if (e.claim == "full") {
    flag_claim(ctx.properties().full);
  } else if (e.claim == "relation") {
    const Relation rel = classify_pair(cloud, cloud.index_of(a[0]), cloud.index_of(a[1]),
                                       parse_state_kind(a[2]), ctx.options());
    r.actual = to_string(rel);
    r.ok = r.actual == a[3];
  } else if (e.claim == "forced-zero") {
    membership(ctx.properties().forced_zero);
  } else if (e.claim == "forced-one") {
    membership(ctx.properties().forced_one);
  } else if (e.claim == "true-count") {
    const VertexIndex v = cloud.index_of(a[0]);
    const auto& states = ctx.states().states;
    const auto n = static_cast<std::size_t>(
        std::count_if(states.begin(), states.end(), [&](const TwoValuedState& s) { return s.is_true(v); }));
    r.actual = std::to_string(n);
    r.ok = n == parse_count(a[1]);
  } else if (e.claim == "unseparated") {
    VertexPair p{cloud.index_of(a[0]), cloud.index_of(a[1])};
    if (p.first > p.second) std::swap(p.first, p.second);
    const auto& list = ctx.properties().unseparated;
    r.ok = std::find(list.begin(), list.end(), p) != list.end();
    r.actual = std::to_string(list.size()) + " unseparated pair(s)";
  } else if (e.claim == "clique") {
    count_claim(clique_number(ctx.graph()));
  } else if (e.claim == "chromatic") {
    count_claim(chromatic_number(ctx.graph()).chromatic_number);
  } else if (e.claim == "separable-exceeds-clique") {
    const std::size_t omega = clique_number(ctx.graph());
    const std::size_t sep = separable_chromatic_number(ctx.graph(), ctx.options().jobs).value;
    r.actual = "separable " + std::to_string(sep) + ", clique " + std::to_string(omega);
    r.ok = sep > omega;
  } else if (e.claim == "ks") {
    flag_claim(ctx.states().empty());
  } else if (e.claim == "representation-ok") {
    const auto report = verify_representation(cloud, ctx.representation());
    r.actual = std::to_string(report.violations.size()) + " violation(s)";
    r.ok = report.ok();
  } else if (e.claim == "contradiction") {
    const auto result = propagate(cloud, TwoValuedState::parse_seed(cloud, a[0]));
    r.actual = result.consistent() ? "consistent" : "contradiction";
    r.ok = !result.consistent();
  } else if (e.claim == "derives") {
    const auto result = propagate(cloud, TwoValuedState::parse_seed(cloud, a[0]));
    const TwoValuedState wanted = TwoValuedState::parse_seed(cloud, a[1]);
    std::vector<VertexIndex> missing;
    for (VertexIndex v = 0; v < cloud.vertex_count(); ++v) {
      if (!wanted.is_defined(v)) continue;
      const bool found = std::any_of(result.derivation.begin(), result.derivation.end(), [&](const DerivationStep& s) {
        return s.vertex == v && s.value == wanted.is_true(v);
      });
      if (!found) missing.push_back(v);
    }
    r.ok = missing.empty();
    r.actual = missing.empty() ? "all derived" : "missing " + join_names(cloud, missing);
  } else if (e.claim == "transition") {
    const Representation& rep = ctx.representation();
    const double p = transition_probability(rep.at(a[0]), rep.at(a[1]));
    const Rational want = parse_rational(a[2]);
    std::ostringstream os;
    os.precision(15);
    os << p;
    r.actual = os.str();
    r.ok = std::abs(p - want.convert_to<double>()) <= 1e-12;
  }
  return r;
}

}  // namespace

std::string Expectation::to_string() const {
  std::string out = claim;
  for (const auto& a : args) out += " " + a;
  return out;
}

bool Parameter::contains(const Rational& value) const {
  const bool above = low_open ? value > low : value >= low;
  const bool below = high_open ? value < high : value <= high;
  return above && below;
}

std::string Parameter::interval() const {
  return std::string(low_open ? "(" : "[") + rational_to_string(low) + "," + rational_to_string(high) +
         (high_open ? ")" : "]");
}

std::vector<std::string> dataset_names() {
  std::set<std::string> names{std::string(kSingle)};
  for (const auto& [stem, text] : detail::embedded_datasets()) names.emplace(stem);
  if (const char* dir = std::getenv("CLOUDLAB_DATASET_DIR"); dir && *dir && std::filesystem::is_directory(dir))
    for (const auto& f : std::filesystem::directory_iterator(dir))
      if (f.path().extension() == ".cloud") names.insert(f.path().stem().string());
  return {names.begin(), names.end()};
}

std::string dataset_source(std::string_view name) {
  if (const auto path = override_file(name)) {
    std::ifstream in(*path, std::ios::binary);
    if (!in) throw CloudError("cannot read " + path->string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }
  for (const auto& [stem, text] : detail::embedded_datasets())
    if (stem == name) return std::string(text);
  throw CloudError("unknown dataset '" + std::string(name) + "'");
}

DatasetEntry instantiate_dataset(std::string_view text, const std::string& name, const ParameterValues& values) {
  DatasetEntry entry{name, Cloud{}, std::nullopt, {}, std::nullopt, {}, {}};
  for (const auto& d : raw_directives(text))
    if (d.keyword == "param") entry.parameters.push_back(parse_parameter(d));

  for (const auto& [key, value] : values) {
    const auto p = std::find_if(entry.parameters.begin(), entry.parameters.end(),
                                [&](const Parameter& q) { return q.name == key; });
    if (p == entry.parameters.end()) throw CloudError("dataset '" + name + "' has no parameter '" + key + "'");
    if (!p->contains(value))
      throw CloudError("parameter " + key + "=" + rational_to_string(value) + " lies outside " + p->interval());
  }
  for (const auto& p : entry.parameters) {
    const auto it = values.find(p.name);
    entry.values[p.name] = it == values.end() ? p.default_value : it->second;
  }

  CloudDocument doc = parse_document(substitute(std::string(text), entry.values), name);
  entry.cloud = std::move(doc.cloud);
  entry.representation = std::move(doc.representation);
  for (const auto& d : doc.directives) {
    if (d.keyword == "expect") {
      entry.expected.push_back(parse_expectation(d));
    } else if (d.keyword == "checksum") {
      if (d.args.size() != 1) throw CloudError("line " + std::to_string(d.line) + ": checksum needs one value");
      entry.checksum = d.args[0];
    }
  }
  return entry;
}

DatasetEntry single_context(std::size_t d) {
  if (d < 2 || d > kSingleMax)
    throw CloudError("single: d must lie in [2," + std::to_string(kSingleMax) + "]");
  CloudBuilder builder("single");
  std::vector<std::string> members;
  for (std::size_t i = 1; i <= d; ++i) members.push_back("v" + std::to_string(i));
  builder.context(members);
  DatasetEntry entry{"single", builder.build(), std::nullopt, {}, std::nullopt, {}, {}};
  entry.parameters.push_back(Parameter{"d", 2, false, kSingleMax, false, 3});
  entry.values["d"] = static_cast<long long>(d);
  entry.expected.push_back({"contexts", {"1"}, "definition", 0});
  entry.expected.push_back({"states", {std::to_string(d)}, "definition", 0});
  entry.expected.push_back({"separating", {"true"}, "definition", 0});
  return entry;
}

DatasetEntry dataset(std::string_view name, const ParameterValues& values) {
  if (name == kSingle && !override_file(name)) {
    for (const auto& [key, v] : values)
      if (key != "d") throw CloudError("dataset 'single' has no parameter '" + key + "'");
    std::size_t d = 3;
    if (auto it = values.find("d"); it != values.end()) {
      if (boost::multiprecision::denominator(it->second) != 1 || it->second < 2 || it->second > kSingleMax)
        throw CloudError("parameter d=" + rational_to_string(it->second) + " lies outside [2," +
                         std::to_string(kSingleMax) + "] or is not an integer");
      d = static_cast<std::size_t>(boost::multiprecision::numerator(it->second).convert_to<unsigned long long>());
    }
    return single_context(d);
  }
  return instantiate_dataset(dataset_source(name), std::string(name), values);
}

ParameterValues parse_parameter_values(std::string_view text) {
  ParameterValues out;
  std::string item;
  auto flush = [&] {
    if (item.empty()) return;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw CloudError("parameter '" + item + "' is not of the form name=value");
    out[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
    item.clear();
  };
  for (char c : text) {
    if (c == ',' || c == '&') flush();
    else if (c != ' ' && c != '\t') item.push_back(c);
  }
  flush();
  return out;
}

DatasetEntry dataset_from_uri(std::string_view uri) {
  const auto q = uri.find('?');
  if (q == std::string_view::npos) return dataset(uri);
  return dataset(uri.substr(0, q), parse_parameter_values(uri.substr(q + 1)));
}

std::vector<ClaimResult> check_expectations(const DatasetEntry& entry, const EnumerationOptions& options) {
  ClaimContext ctx(entry, options);
  std::vector<ClaimResult> out;
  if (entry.checksum) {
    const std::string actual = cloud_checksum(entry.cloud);
    out.push_back({Expectation{"checksum", {*entry.checksum}, "", 0}, actual == *entry.checksum, actual});
  }
  for (const auto& e : entry.expected) out.push_back(evaluate(e, ctx));
  return out;
}

}  // namespace cloudlab
