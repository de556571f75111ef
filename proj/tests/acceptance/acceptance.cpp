// Prints one PASS/FAIL/SKIPPED line per acceptance criterion. With a
// criterion number as argument only that one runs. Exit status is 1 when
// any criterion that ran failed.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cloudlab/cloud_format.hpp"
#include "cloudlab/coloring.hpp"
#include "cloudlab/compose.hpp"
#include "cloudlab/datasets.hpp"
#include "cloudlab/errors.hpp"
#include "cloudlab/geometry.hpp"
#include "oracles.hpp"
#include "suites.hpp"

using namespace cloudlab;

namespace {

enum class Outcome { Pass, Fail, Skipped };

// Collects named checks; the criterion passes iff all of them hold.
class Checks {
 public:
  void check(bool ok, const std::string& what) {
    all_ = all_ && ok;
    notes_.push_back((ok ? "" : "NOT ") + what);
  }
  void note(const std::string& text) { notes_.push_back(text); }
  bool ok() const { return all_; }
  std::string summary() const {
    std::string out;
    for (const auto& n : notes_) out += (out.empty() ? "" : "; ") + n;
    return out;
  }

 private:
  bool all_ = true;
  std::vector<std::string> notes_;
};

struct Result {
  Outcome outcome;
  std::string detail;
};

Result from(const Checks& c) { return {c.ok() ? Outcome::Pass : Outcome::Fail, c.summary()}; }

std::string pairs_text(const std::set<std::pair<std::string, std::string>>& pairs) {
  std::string out;
  for (const auto& [x, y] : pairs) out += (out.empty() ? "" : " ") + x + "-" + y;
  return "{" + out + "}";
}

bool is_u_vertex(const std::string& name) { return name.size() > 1 && name[0] == 'u'; }

// Unordered pairs among u-named vertices, first component the smaller name
// by number.
std::set<std::pair<std::string, std::string>> u_pairs(const Cloud& cloud, const std::vector<VertexPair>& pairs) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [x, y] : pairs) {
    std::string a = cloud.vertex_name(x);
    std::string b = cloud.vertex_name(y);
    if (!is_u_vertex(a) || !is_u_vertex(b)) continue;
    if (std::stoi(a.substr(1)) > std::stoi(b.substr(1))) std::swap(a, b);
    out.emplace(a, b);
  }
  return out;
}

Ray exact_ray(const std::string& x, const std::string& y, const std::string& z) {
  return Ray::exact({QSqrt2::parse(x), QSqrt2::parse(y), QSqrt2::parse(z)});
}

Result criterion_1() {
  Checks c;
  const DatasetEntry e = dataset("firefly");
  const StateSet states = enumerate_states(e.cloud);
  c.check(states.size() == 5, "5 type-II states (got " + std::to_string(states.size()) + ")");
  c.check(oracle::brute_force_states(e.cloud) == states.states, "state list equals the 2^n filter");
  c.check(state_properties(e.cloud, states).separating, "separating");
  const Relation r = classify_pair(states, e.cloud.index_of("a"), e.cloud.index_of("b"));
  c.check(r == Relation::Independent, "classify(a,b,II) = " + to_string(r));
  c.check(verify_representation(e.cloud, *e.representation).ok(), "vectors verify");
  const double p = transition_probability(e.representation->at("a"), e.representation->at("b"));
  c.check(std::abs(p - 0.5) <= 1e-12, "transition probability " + std::to_string(p));
  return from(c);
}

Result criterion_2_or_3(const std::string& name, Relation expected) {
  Checks c;
  const DatasetEntry e = dataset(name);
  const StateSet states = enumerate_states(e.cloud);
  c.check(states.size() == 13, "13 type-II states (got " + std::to_string(states.size()) + ")");
  c.check(oracle::backtrack_states(e.cloud) == states.states, "state list equals naive backtracking");
  const VertexIndex a = e.cloud.index_of("a");
  std::size_t a_true = 0;
  for (const auto& s : states.states) a_true += s.is_true(a);
  const PropertyReport props = state_properties(e.cloud, states);
  const VertexIndex p16 = e.cloud.index_of("p16");
  c.check(std::count(props.forced_zero.begin(), props.forced_zero.end(), p16) == 1, "p16 forced to 0");
  c.check(!props.unital, "nonunital");
  if (expected == Relation::Tifs) {
    c.check(a_true == 1, "one state with a=1 (got " + std::to_string(a_true) + ")");
    c.check(!props.separating, "not separating");
  }
  const Relation r = classify_pair(e.cloud, a, e.cloud.index_of("b"), StateKind::III);
  c.check(r == expected, "classify(a,b,III) = " + to_string(r));
  return from(c);
}

Result criterion_4() {
  Checks c;
  const DatasetEntry e = dataset("hh10", {{"x", Rational(1, 2)}});
  const Cloud& cloud = e.cloud;
  const StateSet states = enumerate_states(cloud);
  c.check(states.size() == 89, "89 type-II states (got " + std::to_string(states.size()) + ")");
  c.check(oracle::backtrack_states(cloud) == states.states, "state list equals naive backtracking");
  c.check(state_properties(cloud, states).separating, "separating");
  const Relation r = classify_pair(cloud, cloud.index_of("u1"), cloud.index_of("u22"), StateKind::III);
  c.check(r == Relation::Tifs, "classify(u1,u22,III) = " + to_string(r));

  const PropagationResult run = propagate(cloud, TwoValuedState::parse_seed(cloud, "u1=1,u22=1"));
  c.check(!run.consistent(), "propagate(u1=1,u22=1) contradicts");
  std::vector<std::string> missing;
  for (const char* v : {"u5", "u18", "u7", "u16", "u9", "u14", "u11", "u12"}) {
    const VertexIndex idx = cloud.index_of(v);
    const bool found = std::any_of(run.derivation.begin(), run.derivation.end(),
                                   [&](const DerivationStep& s) { return s.vertex == idx && s.value; });
    if (!found) missing.emplace_back(v);
  }
  c.check(missing.empty(), "derivation sets u5,u18,u7,u16,u9,u14,u11,u12 to 1");

  const std::set<std::pair<std::string, std::string>> listed = {
      {"u1", "u8"},   {"u1", "u9"},   {"u1", "u12"},  {"u1", "u13"},  {"u1", "u16"},  {"u1", "u17"},
      {"u1", "u22"},  {"u6", "u22"},  {"u7", "u12"},  {"u7", "u16"},  {"u7", "u22"},  {"u9", "u14"},
      {"u10", "u22"}, {"u11", "u16"}, {"u11", "u22"}, {"u14", "u22"}, {"u15", "u22"}};
  const auto tits = u_pairs(cloud, tits_pairs(cloud, StateKind::II));
  c.check(tits == listed, "tits_pairs among u-vertices equals the 17 listed pairs (got " + pairs_text(tits) + ")");
  const auto tifs = u_pairs(cloud, tifs_pairs(cloud, StateKind::II));
  c.note(std::string("the listed pairs ") + (tifs == listed ? "are exactly" : "differ from") +
         " the nonadjacent true-implies-false pairs among u-vertices");
  return from(c);
}

Result criterion_5() {
  Checks c;
  for (const Rational x : {Rational(1, 4), Rational(1, 2), Rational(1)}) {
    const std::string tag = "x=" + rational_to_string(x) + ": ";
    const DatasetEntry e = dataset("hh10_open", {{"x", x}});
    const Extension ext = extend_to_tits(e.cloud, *e.representation, "u1", "u22");
    const auto& col = ext.report.collided_vertices;
    c.check(std::count(col.begin(), col.end(), std::pair<std::string, std::string>{"d", "u20"}) == 1,
            tag + "d collides with u20");
    c.check(ext.report.new_vertices == std::vector<std::string>{"c"} &&
                same_ray(ext.representation.at("c"), exact_ray("0", "0", "1")),
            tag + "c = (0,0,1) is the only new vertex");
    const Cloud& cloud = ext.cloud;
    const Relation r = classify_pair(cloud, cloud.index_of("u1"), cloud.index_of("u20"), StateKind::II);
    c.check(r == Relation::Tits, tag + "classify(u1,u20,II) = " + to_string(r));
    const double want = std::acos(1.0 / std::sqrt(1.0 + std::pow(x.convert_to<double>(), 2)));
    const double got = ray_angle(ext.representation.at("u1"), ext.representation.at("u20"));
    c.check(std::abs(got - want) <= 1e-9, tag + "angle(u1,u20) = " + std::to_string(got));
  }
  return from(c);
}

Result criterion_6() {
  Checks c;
  const DatasetEntry e = dataset("tiffts");
  const Cloud& cloud = e.cloud;
  const StateSet states = enumerate_states(cloud);
  const VertexIndex a = cloud.index_of("a");
  const VertexIndex b = cloud.index_of("b");
  const Relation r = classify_pair(states, a, b);
  c.check(r == Relation::Equivalent, "classify(a,b,II) = " + to_string(r));
  const auto unsep = state_properties(cloud, states).unseparated;
  c.check(std::count(unsep.begin(), unsep.end(), VertexPair{std::min(a, b), std::max(a, b)}) == 1,
          "(a,b) unseparated");
  const SkeletonGraph g = skeleton_graph(cloud);
  const std::size_t omega = clique_number(g);
  const std::size_t sep = separable_chromatic_number(g, 0).value;
  c.check(sep > omega, "separable chromatic number " + std::to_string(sep) + " > clique number " + std::to_string(omega));
  return from(c);
}

Result criterion_7() {
  Checks c;
  const DatasetEntry e = dataset("bug");
  const StateSet states = enumerate_states(e.cloud);
  const auto brute = oracle::brute_force_states(e.cloud);
  c.check(brute.size() == 14, "2^13 filter finds the recorded 14 states (got " + std::to_string(brute.size()) + ")");
  c.check(states.states == brute, "enumeration equals the filter");
  const Relation r = classify_pair(states, e.cloud.index_of("a"), e.cloud.index_of("b"));
  c.check(r == Relation::Tifs, "classify(a,b,II) = " + to_string(r));
  return from(c);
}

Result criterion_8() {
  Checks c;
  const StandardConstruction sc = standard_construction(exact_ray("1", "0", "0"), exact_ray("r2", "1", "1"));
  c.check(sc.c.mode() == CoordinateMode::Exact && sc.d.mode() == CoordinateMode::Exact, "exact mode");
  c.check(same_ray(sc.c, exact_ray("0", "-1", "1")), "c = " + sc.c.to_string());
  c.check(same_ray(sc.d, exact_ray("r2", "-1", "-1")), "d = " + sc.d.to_string());
  c.check(sc.d.canonical() == exact_ray("r2", "-1", "-1").canonical(), "canonical forms agree");
  return from(c);
}

Result criterion_9() {
  Checks c;
  const DatasetEntry e = dataset("triangle");
  const StateSet states = enumerate_states(e.cloud);
  c.check(states.empty() && oracle::brute_force_states(e.cloud).empty(), "no type-II states");
  c.check(ks_check(e.cloud).kochen_specker, "ks_check = true");
  const SkeletonGraph g = skeleton_graph(e.cloud);
  const ChromaticResult chi = chromatic_number(g);
  c.check(chi.chromatic_number == 3 && oracle::chromatic(oracle::adjacency(e.cloud)) == 3, "chromatic number 3");
  c.check(chi.chromatic_number > e.cloud.max_context_size(), "exceeds the context size 2");
  bool refused = false;
  try {
    coloring_to_state(e.cloud, chi.witness, 1);
  } catch (const PreconditionError& err) {
    refused = true;
    c.note(std::string("coloring_to_state: ") + err.what());
  }
  c.check(refused, "coloring_to_state reports a precondition failure");
  return from(c);
}

Result criterion_10() {
  Checks c;
  for (const auto& r : suites::run_all(20240611)) {
    c.check(r.ok() && r.cases >= suites::kDefaultCases,
            r.name + " (" + std::to_string(r.cases) + " cases" +
                (r.failures ? ", " + std::to_string(r.failures) + " failed: " + r.first_failure : "") + ")");
  }
  return from(c);
}

std::filesystem::path external_table() {
  if (const char* p = std::getenv("CLOUDLAB_TABLE38"); p && *p) return p;
  return std::filesystem::path(CLOUDLAB_EXTERNAL_DIR) / "table38.vectors";
}

// The table holds `vector` lines for the union of both clouds' vertices.
Representation table_representation(const Cloud& cloud, const std::string& table) {
  std::istringstream in(table);
  std::string text = serialize_cloud(cloud);
  for (std::string line; std::getline(in, line);) {
    std::istringstream words(line);
    std::string keyword, vertex;
    words >> keyword >> vertex;
    if (keyword == "vector" && cloud.find(vertex)) text += line + "\n";
  }
  auto doc = parse_document(text, cloud.name());
  if (!doc.representation) throw CloudError("table has no vectors for " + cloud.name());
  return *doc.representation;
}

Result criterion_11() {
  const auto path = external_table();
  if (!std::filesystem::is_regular_file(path)) return {Outcome::Skipped, "no table at " + path.string()};
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  Checks c;
  for (const char* name : {"tifs38", "tits38"}) {
    const DatasetEntry e = dataset(name);
    const Representation rep = table_representation(e.cloud, buffer.str());
    const auto report = verify_representation(e.cloud, rep);
    c.check(report.ok() && !report.partial(), std::string(name) + " verifies against the table");
  }
  const DatasetEntry e = dataset("tifs38");
  const Representation rep = to_float(table_representation(e.cloud, buffer.str()));
  auto unit = [](const Ray& r) {
    auto v = r.to_doubles();
    double n = 0;
    for (double x : v) n += x * x;
    for (double& x : v) x /= std::sqrt(n);
    return v;
  };
  const auto a = unit(rep.at("a"));
  const auto b = unit(rep.at("b"));
  const Ray axis = Ray::approx({b[0] - a[0], b[1] - a[1], b[2] - a[2]});
  const Representation turned = rotate(rep, axis, std::numbers::pi / 4);
  const auto collisions = collision_report(rep, turned);
  const double h = std::sqrt(0.5);
  for (const auto& target : {std::vector<double>{h, 0.5, 0.5}, std::vector<double>{0, 1, 1},
                             std::vector<double>{0, 1, -1}, std::vector<double>{1, 0, 0}}) {
    const Ray t = Ray::approx(target);
    const bool hit = std::any_of(collisions.begin(), collisions.end(),
                                 [&](const auto& p) { return same_ray(rep.at(p.first), t); });
    c.check(hit, "rotation collision at " + t.to_string());
  }
  return from(c);
}

const std::vector<std::function<Result()>>& criteria() {
  static const std::vector<std::function<Result()>> list = {
      criterion_1,
      [] { return criterion_2_or_3("tifs38", Relation::Tifs); },
      [] { return criterion_2_or_3("tits38", Relation::Tits); },
      criterion_4,
      criterion_5,
      criterion_6,
      criterion_7,
      criterion_8,
      criterion_9,
      criterion_10,
      criterion_11,
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> which;
  if (argc > 1) {
    which.push_back(std::stoul(argv[1]));
  } else {
    for (std::size_t i = 1; i <= criteria().size(); ++i) which.push_back(i);
  }
  bool failed = false;
  for (std::size_t n : which) {
    if (n < 1 || n > criteria().size()) {
      std::cerr << "no criterion " << n << '\n';
      return 2;
    }
    Result r;
    try {
      r = criteria()[n - 1]();
    } catch (const std::exception& e) {
      r = {Outcome::Fail, std::string("exception: ") + e.what()};
    }
    const char* label = r.outcome == Outcome::Pass ? "PASS" : r.outcome == Outcome::Fail ? "FAIL" : "SKIPPED";
    failed = failed || r.outcome == Outcome::Fail;
    std::cout << label << " criterion " << n << ": " << r.detail << '\n';
  }
  return failed ? 1 : 0;
}
