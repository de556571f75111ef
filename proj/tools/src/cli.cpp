#include "cloudlab/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "cloudlab/cloud_format.hpp"
#include "cloudlab/compose.hpp"
#include "cloudlab/datasets.hpp"
#include "cloudlab/errors.hpp"
#include "cloudlab/partition.hpp"

namespace cloudlab::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::string_view kDatasetScheme = "dataset:";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) throw UsageError("cannot write '" + path + "'");
}

std::optional<double> env_tolerance() {
  const char* text = std::getenv("CLOUDLAB_TOL");
  if (!text || !*text) return std::nullopt;
  double t = 0.0;
  const std::string_view sv(text);
  const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), t);
  if (ec != std::errc() || ptr != sv.data() + sv.size() || !(t > 0.0))
    throw UsageError("CLOUDLAB_TOL must be a positive number");
  return t;
}

Representation with_tolerance(const Representation& rep, double tol) {
  Representation out(rep.mode(), tol);
  for (const auto& [name, ray] : rep.rays()) out.set(name, ray);
  return out;
}

// Shared flags and environment applied to every input.
struct Settings {
  unsigned jobs = 1;
  std::optional<double> tolerance;
  std::size_t state_cap = EnumerationOptions{}.state_cap;

  EnumerationOptions enumeration() const {
    EnumerationOptions o;
    o.jobs = jobs;
    o.state_cap = state_cap;
    return o;
  }
};

DatasetEntry load(const std::string& spec, const Settings& settings) {
  DatasetEntry entry = spec.rfind(kDatasetScheme, 0) == 0
                           ? dataset_from_uri(std::string_view(spec).substr(kDatasetScheme.size()))
                           : instantiate_dataset(read_file(spec), std::filesystem::path(spec).stem().string());
  if (settings.tolerance && entry.representation)
    entry.representation = with_tolerance(*entry.representation, *settings.tolerance);
  return entry;
}

const Representation& require_representation(const DatasetEntry& entry) {
  if (!entry.representation) throw UsageError("'" + entry.name + "' has no vector lines");
  return *entry.representation;
}

std::string pair_list(const Cloud& cloud, const std::vector<VertexPair>& pairs) {
  if (pairs.empty()) return "-";
  std::string out;
  for (const auto& [x, y] : pairs)
    out += (out.empty() ? "" : ", ") + cloud.vertex_name(x) + " " + cloud.vertex_name(y);
  return out;
}

std::string vertex_list(const Cloud& cloud, const std::vector<VertexIndex>& vs) {
  if (vs.empty()) return "-";
  std::string out;
  for (VertexIndex v : vs) out += (out.empty() ? "" : ",") + cloud.vertex_name(v);
  return out;
}

std::string coloring_line(const Cloud& cloud, const Coloring& c) {
  std::string out;
  for (VertexIndex v = 0; v < cloud.vertex_count(); ++v)
    out += (v ? " " : "") + cloud.vertex_name(v) + "=" + std::to_string(c.colors[v]);
  return out;
}

std::string step_line(const Cloud& cloud, const DerivationStep& s) {
  std::ostringstream os;
  os << "round " << s.round << ": " << cloud.vertex_name(s.vertex) << "=" << (s.value ? 1 : 0) << " by "
     << to_string(s.rule) << " in context " << s.context + 1;
  return os.str();
}

std::string contradiction_line(const Cloud& cloud, const Contradiction& c) {
  std::ostringstream os;
  os << "contradiction in context " << c.context + 1 << ": ";
  if (c.kind == Contradiction::Kind::TwoTrue)
    os << vertex_list(cloud, c.witnesses) << " both true";
  else
    os << "all members false";
  return os.str();
}

// --- subcommands -------------------------------------------------------------

int cmd_states(const DatasetEntry& e, const Settings& s, const std::string& type, bool count,
               const std::string& seed, std::ostream& out) {
  const Cloud& cloud = e.cloud;
  const StateKind kind = parse_state_kind(type);
  if (kind == StateKind::I) {
    if (!count && cloud.vertex_count() > 20) throw UsageError("listing type-I states needs --count above 20 vertices");
    if (count) {
      out << count_type_I(cloud).str() << '\n';
      return kOk;
    }
    const std::size_t n = cloud.vertex_count();
    for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
      TwoValuedState st(n);
      for (VertexIndex v = 0; v < n; ++v) st.set(v, (bits >> (n - 1 - v)) & 1U);
      out << st.to_string() << '\n';
    }
    return kOk;
  }
  if (kind == StateKind::II) {
    const StateSet set = enumerate_states(cloud, s.enumeration());
    if (count) {
      out << set.size() << '\n';
      return kOk;
    }
    for (const auto& st : set.states) out << st.to_string() << '\n';
    return kOk;
  }
  if (!seed.empty()) {
    const TwoValuedState start = TwoValuedState::parse_seed(cloud, seed);
    const PropagationResult r = propagate(cloud, start);
    out << r.state.to_string() << '\n';
    for (const auto& step : r.derivation) out << step_line(cloud, step) << '\n';
    if (r.contradiction) out << contradiction_line(cloud, *r.contradiction) << '\n';
    return kOk;
  }
  std::size_t consistent = 0;
  std::ostringstream lines;
  for (VertexIndex v = 0; v < cloud.vertex_count(); ++v) {
    TwoValuedState start(cloud.vertex_count());
    start.set(v, true);
    const PropagationResult r = propagate(cloud, start);
    consistent += r.consistent();
    lines << cloud.vertex_name(v) << "=1: " << r.state.to_string() << (r.consistent() ? "" : " contradiction")
          << '\n';
  }
  if (count)
    out << consistent << '\n';
  else
    out << lines.str();
  return kOk;
}

int cmd_props(const DatasetEntry& e, const Settings& s, std::ostream& out) {
  const Cloud& cloud = e.cloud;
  const StateSet set = enumerate_states(cloud, s.enumeration());
  const PropertyReport r = state_properties(cloud, set);
  auto flag = [](bool b) { return b ? "true" : "false"; };
  out << "states: " << r.count << '\n'
      << "unital: " << flag(r.unital) << '\n'
      << "separating: " << flag(r.separating) << '\n'
      << "full: " << flag(r.full) << '\n'
      << "never-true: " << vertex_list(cloud, r.never_true) << '\n'
      << "unseparated: " << pair_list(cloud, r.unseparated) << '\n'
      << "never-jointly-true: " << pair_list(cloud, r.never_jointly_true) << '\n'
      << "forced-zero: " << vertex_list(cloud, r.forced_zero) << '\n'
      << "forced-one: " << vertex_list(cloud, r.forced_one) << '\n';
  return kOk;
}

int cmd_pairs(const DatasetEntry& e, const Settings& s, const std::string& type, bool tifs, std::ostream& out) {
  const StateKind kind = parse_state_kind(type);
  const auto pairs = tifs ? tifs_pairs(e.cloud, kind, s.enumeration()) : tits_pairs(e.cloud, kind, s.enumeration());
  for (const auto& [x, y] : pairs) out << e.cloud.vertex_name(x) << ' ' << e.cloud.vertex_name(y) << '\n';
  return kOk;
}

int cmd_ks(const DatasetEntry& e, const Settings& s, std::ostream& out) {
  const KsResult r = ks_check(e.cloud, s.enumeration());
  if (r.kochen_specker) {
    out << "kochen-specker: yes\n";
    return kOk;
  }
  out << "kochen-specker: no\n";
  if (r.witness) out << "witness: " << r.witness->to_string() << '\n';
  return kClaimFails;
}

int cmd_color(const DatasetEntry& e, const Settings& s, bool separable, std::size_t t, std::ostream& out) {
  const Cloud& cloud = e.cloud;
  const SkeletonGraph g = skeleton_graph(cloud);
  if (t > 0) {
    const auto c = t_coloring(g, t);
    if (!c) {
      out << "no proper " << t << "-coloring\n";
      return kClaimFails;
    }
    out << coloring_line(cloud, *c) << '\n';
    return kOk;
  }
  if (separable) {
    const auto r = separable_chromatic_number(g, s.jobs);
    out << "clique: " << clique_number(g) << '\n'
        << "chromatic: " << r.chromatic_number << '\n'
        << "separable-chromatic: " << r.value << '\n';
    for (const auto& p : r.certificate)
      out << cloud.vertex_name(p.pair.first) << ' ' << cloud.vertex_name(p.pair.second) << ": "
          << (p.separable_at_chi ? "chi" : "chi+1") << " | " << coloring_line(cloud, p.witness) << '\n';
    return kOk;
  }
  const auto r = chromatic_number(g);
  out << "clique: " << clique_number(g) << '\n'
      << "chromatic: " << r.chromatic_number << '\n'
      << "witness: " << coloring_line(cloud, r.witness) << '\n';
  return kOk;
}

int cmd_verify(const DatasetEntry& e, std::ostream& out) {
  const Cloud& cloud = e.cloud;
  const auto report = verify_representation(cloud, require_representation(e));
  for (const auto& v : report.violations)
    out << to_string(v.kind) << ": " << cloud.vertex_name(v.u) << ' ' << cloud.vertex_name(v.v)
        << " inner product " << scalar_to_string(v.inner_product) << '\n';
  if (report.partial()) out << "unassigned: " << vertex_list(cloud, report.unassigned) << '\n';
  out << (report.ok() ? "ok" : "violations: " + std::to_string(report.violations.size())) << '\n';
  return report.ok() ? kOk : kClaimFails;
}

int cmd_paste(const DatasetEntry& a, const DatasetEntry& b, const std::string& identify, const std::string& suffix,
              const std::string& name, const std::string& output, std::ostream& out) {
  PasteOptions opts;
  opts.suffix = suffix;
  opts.name = name;
  const PasteResult r = paste_with_report(a.cloud, b.cloud, Identification::parse(identify), opts);
  CloudDocument doc{r.cloud, std::nullopt, {}};
  if (a.representation && b.representation)
    doc.representation = paste_representations(*a.representation, *b.representation, r);
  const std::string text = serialize_document(doc);
  write_output(output, text, out);
  if (!output.empty() && output != "-")
    out << "pasted " << r.cloud.vertex_count() << " vertices, " << r.cloud.context_count() << " contexts ("
        << r.merged_contexts.size() << " merged)\n";
  return kOk;
}

int cmd_extend(const DatasetEntry& e, const std::string& a, const std::string& b, const std::string& output,
               std::ostream& out) {
  const Extension x = extend_to_tits(e.cloud, require_representation(e), a, b);
  for (const auto& [role, existing] : x.report.collided_vertices)
    out << "collision: " << role << " = " << existing << '\n';
  for (const auto& v : x.report.new_vertices)
    out << "new vertex: " << v << " = " << x.representation.at(v).to_string() << '\n';
  auto ctx_text = [](const std::vector<std::string>& c) {
    std::string s;
    for (const auto& m : c) s += (s.empty() ? "" : " ") + m;
    return s;
  };
  for (const auto& c : x.report.new_contexts) out << "new context: " << ctx_text(c) << '\n';
  for (const auto& c : x.report.existing_contexts) out << "existing context: " << ctx_text(c) << '\n';
  out << "terminals: " << a << ' ' << x.d << '\n';
  if (!output.empty()) write_output(output, serialize_document({x.cloud, x.representation, {}}), out);
  return kOk;
}

int cmd_partition(const DatasetEntry& e, const Settings& s, bool urn, std::ostream& out) {
  const StateSet set = enumerate_states(e.cloud, s.enumeration());
  if (set.empty()) {
    out << "no type-II states\n";
    return kClaimFails;
  }
  const PartitionLogic logic = build_partition_logic(e.cloud, set);
  const PartitionReport report = verify_set_representation(logic, e.cloud);
  out << (urn ? urn_table(logic, e.cloud) : format_partition_logic(logic, e.cloud));
  if (!report.injective()) out << "collisions: " << pair_list(e.cloud, report.collisions) << '\n';
  if (!report.empty_atoms.empty()) out << "empty atoms: " << vertex_list(e.cloud, report.empty_atoms) << '\n';
  out << (report.set_representable() ? "set-representable" : "not set-representable") << '\n';
  return report.set_representable() ? kOk : kClaimFails;
}

int cmd_dataset(const std::string& name, const std::vector<std::string>& params, bool list, bool check,
                const Settings& s, const std::string& output, std::ostream& out) {
  if (list) {
    for (const auto& n : dataset_names()) out << n << '\n';
    return kOk;
  }
  if (name.empty()) throw UsageError("dataset needs a name or --list");
  ParameterValues values;
  for (const auto& p : params)
    for (auto& [k, v] : parse_parameter_values(p)) values[k] = v;
  const DatasetEntry entry = dataset(name, values);
  if (check) {
    bool all = true;
    for (const auto& r : check_expectations(entry, s.enumeration())) {
      all = all && r.ok;
      out << (r.ok ? "ok   " : "FAIL ") << r.expectation.to_string() << " (actual: " << r.actual << ")\n";
    }
    return all ? kOk : kClaimFails;
  }
  if (name == "single" || !entry.parameters.empty()) {
    CloudDocument doc{entry.cloud, entry.representation, {}};
    write_output(output, serialize_document(doc), out);
  } else {
    write_output(output, dataset_source(name), out);
  }
  return kOk;
}

int cmd_dot(const DatasetEntry& e, const Settings& s, std::optional<std::size_t> state, bool color,
            const std::string& output, std::ostream& out) {
  DotOverlay overlay;
  if (state && color) throw UsageError("--state and --color are exclusive");
  if (state) {
    const StateSet set = enumerate_states(e.cloud, s.enumeration());
    if (*state >= set.size())
      throw UsageError("state index " + std::to_string(*state) + " out of range (" + std::to_string(set.size()) +
                       " states)");
    overlay = set.states[*state];
  } else if (color) {
    overlay = chromatic_number(skeleton_graph(e.cloud)).witness;
  }
  write_output(output, export_dot(e.cloud, overlay), out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analysis of quantum clouds: two-valued states, colorings and vector representations", "cloudlab"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings settings;
  std::optional<double> tol_flag;
  app.add_option("--jobs,-j", settings.jobs, "Worker threads (0 = all cores)")->capture_default_str();

  std::string input, input_b, type = "II", a, b, output, seed, identify, suffix = "'", name;
  std::vector<std::string> params;
  bool list = false, count = false, tifs = false, separable = false, chromatic = false, check = false, urn = false,
       color_overlay = false;
  std::size_t t = 0;
  std::optional<std::size_t> state_index;

  auto input_arg = [&](CLI::App* sub) { sub->add_option("input", input, "Cloud file or dataset:<name>")->required(); };
  auto type_opt = [&](CLI::App* sub) {
    sub->add_option("--type", type, "State type: I, II or III")->capture_default_str();
  };

  auto* states = app.add_subcommand("states", "List or count two-valued states");
  input_arg(states);
  type_opt(states);
  auto* list_flag = states->add_flag("--list", list, "Print one state per line");
  states->add_flag("--count", count, "Print the number of states")->excludes(list_flag);
  states->add_option("--seed", seed, "Type III: propagate from this partial assignment, e.g. a=1,b=0");

  auto* props = app.add_subcommand("props", "Unital, separating and full properties of the type-II states");
  input_arg(props);

  auto* classify = app.add_subcommand("classify", "Relation of terminal b to terminal a");
  input_arg(classify);
  classify->add_option("--a", a, "First vertex")->required();
  classify->add_option("--b", b, "Second vertex")->required();
  type_opt(classify);

  auto* pairs = app.add_subcommand("tits-pairs", "Ordered pairs forced true-implies-true");
  input_arg(pairs);
  type_opt(pairs);
  pairs->add_flag("--tifs", tifs, "List nonadjacent true-implies-false pairs instead");

  auto* ks = app.add_subcommand("ks-check", "Exit 0 iff the cloud admits no type-II state");
  input_arg(ks);

  auto* color = app.add_subcommand("color", "Chromatic and separable chromatic numbers of the skeleton");
  input_arg(color);
  auto* chrom_flag = color->add_flag("--chromatic", chromatic, "Chromatic number with a witness (default)");
  color->add_flag("--separable", separable, "Separable chromatic number with per-pair certificate")
      ->excludes(chrom_flag);
  color->add_option("-t", t, "Look for a proper coloring with at most t colors");

  auto* verify = app.add_subcommand("verify-rep", "Check the vector lines against the skeleton");
  input_arg(verify);
  verify->add_option("--tol", tol_flag, "Float tolerance on rescaled inner products");

  auto* paste_cmd = app.add_subcommand("paste", "Paste cloud B onto cloud A");
  paste_cmd->add_option("a", input, "Cloud A")->required();
  paste_cmd->add_option("b", input_b, "Cloud B")->required();
  paste_cmd->add_option("--identify,-m", identify, "b_vertex=a_vertex,...")->required();
  paste_cmd->add_option("--suffix", suffix, "Suffix for B's remaining vertices")->capture_default_str();
  paste_cmd->add_option("--name", name, "Name of the result");
  paste_cmd->add_option("-o,--output", output, "Output file (default stdout)");

  auto* extend = app.add_subcommand("extend", "Add the standard construction on terminals a, b");
  input_arg(extend);
  extend->add_option("--a", a, "Vertex a")->required();
  extend->add_option("--b", b, "Vertex b")->required();
  extend->add_option("-o,--output", output, "Write the extended cloud here");

  auto* partition = app.add_subcommand("partition", "Partition logic of the type-II states");
  input_arg(partition);
  partition->add_flag("--urn", urn, "Print the urn table instead");

  auto* dataset_cmd = app.add_subcommand("dataset", "Export or check a built-in dataset");
  dataset_cmd->add_option("name", name, "Dataset name");
  dataset_cmd->add_option("--param,-p", params, "Parameter value, e.g. x=1/4");
  dataset_cmd->add_flag("--list", list, "List built-in names");
  dataset_cmd->add_flag("--check", check, "Evaluate the recorded expectations");
  dataset_cmd->add_option("-o,--output", output, "Output file (default stdout)");

  auto* dot = app.add_subcommand("dot", "Graphviz export of the skeleton");
  input_arg(dot);
  dot->add_option("--state", state_index, "Overlay the i-th type-II state (0-based)");
  dot->add_flag("--color", color_overlay, "Overlay a minimum coloring");
  dot->add_option("-o,--output", output, "Output file (default stdout)");

  auto* checksum = app.add_subcommand("checksum", "FNV-1a checksum of the canonical hypergraph text");
  input_arg(checksum);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    settings.tolerance = tol_flag ? tol_flag : env_tolerance();
    if (const char* cap = std::getenv("CLOUDLAB_STATE_CAP"); cap && *cap) {
      try {
        settings.state_cap = std::stoull(cap);
      } catch (const std::exception&) {
        throw UsageError("CLOUDLAB_STATE_CAP must be a count");
      }
    }
    if (settings.jobs == 0) settings.jobs = std::max(1U, std::thread::hardware_concurrency());

    if (*dataset_cmd) return cmd_dataset(name, params, list, check, settings, output, out);
    const DatasetEntry entry = load(input, settings);
    if (*states) return cmd_states(entry, settings, type, count, seed, out);
    if (*props) return cmd_props(entry, settings, out);
    if (*classify) {
      const Relation r = classify_pair(entry.cloud, entry.cloud.index_of(a), entry.cloud.index_of(b),
                                       parse_state_kind(type), settings.enumeration());
      out << to_string(r) << '\n';
      return kOk;
    }
    if (*pairs) return cmd_pairs(entry, settings, type, tifs, out);
    if (*ks) return cmd_ks(entry, settings, out);
    if (*color) return cmd_color(entry, settings, separable, t, out);
    if (*verify) return cmd_verify(entry, out);
    if (*paste_cmd) return cmd_paste(entry, load(input_b, settings), identify, suffix, name, output, out);
    if (*extend) return cmd_extend(entry, a, b, output, out);
    if (*partition) return cmd_partition(entry, settings, urn, out);
    if (*dot) return cmd_dot(entry, settings, state_index, color_overlay, output, out);
    if (*checksum) {
      out << cloud_checksum(entry.cloud) << '\n';
      return kOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace cloudlab::cli
