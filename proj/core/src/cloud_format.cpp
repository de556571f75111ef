#include "cloudlab/cloud_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace cloudlab {

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

struct PendingVector {
  std::string vertex;
  std::size_t line;
  std::size_t column;
  std::vector<Token> scalars;
};

bool is_blank(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Splits a line into whitespace-separated tokens; a double-quoted string
// is one token with its escapes resolved. Stops at an unquoted '#'.
std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (is_blank(line[i])) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    const std::size_t start = i;
    if (line[i] == '"') {
      std::string text = "\"";
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '\\' && i + 1 < line.size()) {
          text.push_back(line[i + 1]);
          i += 2;
          continue;
        }
        if (line[i] == '"') {
          closed = true;
          ++i;
          break;
        }
        text.push_back(line[i++]);
      }
      if (!closed) throw ParseError(line_no, start + 1, "unterminated string");
      out.push_back({std::move(text), start + 1});
      continue;
    }
    while (i < line.size() && !is_blank(line[i]) && line[i] != '#') ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

bool looks_float(std::string_view s) {
  return s.find_first_of(".eE") != std::string_view::npos || s == "inf" || s == "nan";
}

bool looks_exact_only(std::string_view s) {
  return s.find("r2") != std::string_view::npos || s.find('/') != std::string_view::npos;
}

double parse_double(const Token& t, std::size_t line) {
  std::string s;
  for (char c : t.text)
    if (!is_blank(c)) s.push_back(c);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line, t.column, "malformed float scalar '" + t.text + "'");
  }
  return value;
}

void require_vertex_token(const Token& t, std::size_t line) {
  if (!is_vertex_token(t.text)) throw ParseError(line, t.column, "invalid vertex name '" + t.text + "'");
}

}  // namespace

CloudDocument parse_document(std::string_view text, const std::string& default_name) {
  std::optional<std::string> name;
  std::vector<std::string> vertices;
  std::unordered_map<std::string, VertexIndex> index;
  std::map<VertexIndex, std::string> labels;
  std::set<VertexIndex> declared;
  std::vector<std::vector<VertexIndex>> contexts;
  std::map<std::vector<VertexIndex>, std::size_t> context_lines;
  std::optional<std::pair<Token, Token>> terminals;
  std::size_t terminals_line = 0;
  std::vector<PendingVector> vectors;
  std::vector<Directive> directives;
  std::optional<double> tolerance;

  auto mention = [&](const std::string& id) {
    auto [it, inserted] = index.emplace(id, vertices.size());
    if (inserted) vertices.push_back(id);
    return it->second;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t first = 0;
    while (first < line.size() && is_blank(line[first])) ++first;
    if (line.substr(first).rfind("#!", 0) == 0) {
      std::istringstream is{std::string(line.substr(first + 2))};
      Directive d;
      d.line = line_no;
      is >> d.keyword;
      for (std::string arg; is >> arg;) d.args.push_back(arg);
      if (d.keyword == "tolerance") {
        double t = 0.0;
        if (d.args.size() != 1) throw ParseError(line_no, first + 1, "tolerance needs one value");
        const auto& a = d.args[0];
        const auto [ptr, ec] = std::from_chars(a.data(), a.data() + a.size(), t);
        if (ec != std::errc() || ptr != a.data() + a.size() || !(t > 0.0))
          throw ParseError(line_no, first + 1, "tolerance must be a positive number");
        tolerance = t;
      }
      if (!d.keyword.empty()) directives.push_back(std::move(d));
      continue;
    }

    if (line.substr(first).rfind("vector", 0) == 0 &&
        (line.size() == first + 6 || is_blank(line[first + 6]))) {
      // vector <id> = (s, s, s); the tuple is split on commas, not blanks.
      const std::size_t comment = line.find('#');
      const std::string_view body = line.substr(0, comment);
      const auto eq = body.find('=');
      const auto head = tokenize(body.substr(0, eq == std::string_view::npos ? body.size() : eq), line_no);
      if (head.size() != 2) throw ParseError(line_no, first + 1, "expected 'vector <id> = (...)'");
      require_vertex_token(head[1], line_no);
      if (eq == std::string_view::npos) throw ParseError(line_no, body.size() + 1, "expected '='");
      const auto open = body.find('(', eq);
      const auto close = body.rfind(')');
      if (open == std::string_view::npos || close == std::string_view::npos || close < open)
        throw ParseError(line_no, eq + 2, "expected a parenthesized tuple");
      for (std::size_t k = eq + 1; k < open; ++k)
        if (!is_blank(body[k])) throw ParseError(line_no, k + 1, "unexpected text before '('");
      for (std::size_t k = close + 1; k < body.size(); ++k)
        if (!is_blank(body[k])) throw ParseError(line_no, k + 1, "unexpected text after ')'");
      PendingVector pv{head[1].text, line_no, head[1].column, {}};
      std::size_t s = open + 1;
      while (true) {
        const std::size_t comma = std::min(body.find(',', s), close);
        std::size_t a = s;
        std::size_t b = comma;
        while (a < b && is_blank(body[a])) ++a;
        while (b > a && is_blank(body[b - 1])) --b;
        if (a == b) throw ParseError(line_no, s + 1, "empty scalar");
        pv.scalars.push_back({std::string(body.substr(a, b - a)), a + 1});
        if (comma == close) break;
        s = comma + 1;
      }
      vectors.push_back(std::move(pv));
      continue;
    }

    const auto tokens = tokenize(line, line_no);
    if (tokens.empty()) continue;
    const std::string& kw = tokens[0].text;
    if (kw == "cloud") {
      if (tokens.size() != 2) throw ParseError(line_no, tokens[0].column, "expected 'cloud <name>'");
      if (name) throw ParseError(line_no, tokens[0].column, "second 'cloud' header");
      name = tokens[1].text;
    } else if (kw == "vertex") {
      if (tokens.size() != 2 && tokens.size() != 4)
        throw ParseError(line_no, tokens[0].column, "expected 'vertex <id> [label \"text\"]'");
      require_vertex_token(tokens[1], line_no);
      const VertexIndex v = mention(tokens[1].text);
      if (!declared.insert(v).second)
        throw ParseError(line_no, tokens[1].column, "vertex '" + tokens[1].text + "' declared twice");
      if (tokens.size() == 4) {
        if (tokens[2].text != "label") throw ParseError(line_no, tokens[2].column, "expected 'label'");
        if (tokens[3].text.empty() || tokens[3].text.front() != '"')
          throw ParseError(line_no, tokens[3].column, "label text must be quoted");
        labels[v] = tokens[3].text.substr(1);
      }
    } else if (kw == "context") {
      if (tokens.size() < 3) throw ParseError(line_no, tokens[0].column, "a context needs at least 2 vertices");
      std::vector<VertexIndex> members;
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        require_vertex_token(tokens[k], line_no);
        const VertexIndex v = mention(tokens[k].text);
        if (std::find(members.begin(), members.end(), v) != members.end())
          throw ParseError(line_no, tokens[k].column, "vertex '" + tokens[k].text + "' repeated in context");
        members.push_back(v);
      }
      auto key = members;
      std::sort(key.begin(), key.end());
      if (auto it = context_lines.find(key); it != context_lines.end()) {
        throw ParseError(line_no, tokens[0].column,
                         "duplicate context (same members as line " + std::to_string(it->second) + ")");
      }
      context_lines.emplace(std::move(key), line_no);
      contexts.push_back(std::move(members));
    } else if (kw == "terminals") {
      if (tokens.size() != 3) throw ParseError(line_no, tokens[0].column, "expected 'terminals <id> <id>'");
      if (terminals) throw ParseError(line_no, tokens[0].column, "second 'terminals' line");
      require_vertex_token(tokens[1], line_no);
      require_vertex_token(tokens[2], line_no);
      terminals = std::make_pair(tokens[1], tokens[2]);
      terminals_line = line_no;
    } else {
      throw ParseError(line_no, tokens[0].column, "unknown keyword '" + kw + "'");
    }
  }

  std::optional<VertexPair> terms;
  if (terminals) {
    auto resolve = [&](const Token& t) {
      auto it = index.find(t.text);
      if (it == index.end())
        throw ParseError(terminals_line, t.column, "unknown vertex '" + t.text + "' in terminals");
      return it->second;
    };
    terms = VertexPair{resolve(terminals->first), resolve(terminals->second)};
    if (terms->first == terms->second)
      throw ParseError(terminals_line, terminals->second.column, "terminals must be distinct");
  }

  CloudDocument doc;
  try {
    doc.cloud = Cloud(name.value_or(default_name), std::move(vertices), std::move(contexts), terms, std::move(labels));
  } catch (const CloudError& e) {
    throw ParseError(line_no, 0, e.what());
  }
  doc.directives = std::move(directives);

  if (!vectors.empty()) {
    bool float_mode = false;
    for (const auto& pv : vectors)
      for (const auto& s : pv.scalars) float_mode = float_mode || looks_float(s.text);
    Representation rep(float_mode ? CoordinateMode::Float : CoordinateMode::Exact,
                       tolerance.value_or(kDefaultTolerance));
    std::optional<std::size_t> dim;
    for (const auto& pv : vectors) {
      if (!doc.cloud.find(pv.vertex))
        throw ParseError(pv.line, pv.column, "vector for unknown vertex '" + pv.vertex + "'");
      if (rep.find(pv.vertex)) throw ParseError(pv.line, pv.column, "second vector for '" + pv.vertex + "'");
      try {
        if (float_mode) {
          std::vector<double> xs;
          for (const auto& s : pv.scalars) {
            if (looks_exact_only(s.text))
              throw ParseError(pv.line, s.column, "mixing exact and float scalars ('" + s.text + "')");
            xs.push_back(parse_double(s, pv.line));
          }
          if (dim && *dim != xs.size())
            throw ParseError(pv.line, pv.column, "vectors have different dimensions");
          dim = xs.size();
          rep.set(pv.vertex, Ray::approx(std::move(xs)));
        } else {
          if (pv.scalars.size() != 3)
            throw ParseError(pv.line, pv.column, "exact vectors need exactly 3 components");
          std::vector<QSqrt2> xs;
          for (const auto& s : pv.scalars) {
            try {
              xs.push_back(QSqrt2::parse(s.text));
            } catch (const std::invalid_argument& e) {
              throw ParseError(pv.line, s.column, e.what());
            }
          }
          rep.set(pv.vertex, Ray::exact(std::move(xs)));
        }
      } catch (const GeometryError& e) {
        throw ParseError(pv.line, pv.column, e.what());
      }
    }
    doc.representation = std::move(rep);
  }
  return doc;
}

Cloud parse_cloud(std::string_view text) { return parse_document(text).cloud; }

CloudDocument read_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path.stem().string());
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// Smallest prefix of the vertex order whose explicit declaration, followed
// by first mentions in contexts, reproduces the order and covers every
// labeled or isolated vertex.
std::size_t declared_prefix(const Cloud& cloud) {
  const std::size_t n = cloud.vertex_count();
  std::size_t must = 0;
  for (VertexIndex v = 0; v < n; ++v)
    if (cloud.labels().count(v) || cloud.contexts_of(v).empty()) must = v + 1;
  for (std::size_t k = must; k <= n; ++k) {
    std::vector<char> seen(n, 0);
    std::vector<VertexIndex> order;
    for (VertexIndex v = 0; v < k; ++v) {
      seen[v] = 1;
      order.push_back(v);
    }
    for (const auto& ctx : cloud.contexts())
      for (VertexIndex v : ctx)
        if (!seen[v]) {
          seen[v] = 1;
          order.push_back(v);
        }
    bool ok = order.size() == n;
    for (std::size_t i = 0; ok && i < n; ++i) ok = order[i] == i;
    if (ok) return k;
  }
  return n;
}

}  // namespace

std::string serialize_cloud(const Cloud& cloud) {
  std::ostringstream os;
  os << "cloud " << cloud.name() << '\n';
  const std::size_t k = declared_prefix(cloud);
  for (VertexIndex v = 0; v < k; ++v) {
    os << "vertex " << cloud.vertex_name(v);
    if (auto it = cloud.labels().find(v); it != cloud.labels().end()) os << " label " << quote(it->second);
    os << '\n';
  }
  for (const auto& ctx : cloud.contexts()) {
    os << "context";
    for (VertexIndex v : ctx) os << ' ' << cloud.vertex_name(v);
    os << '\n';
  }
  if (const auto& t = cloud.terminals())
    os << "terminals " << cloud.vertex_name(t->first) << ' ' << cloud.vertex_name(t->second) << '\n';
  return os.str();
}

std::string format_vector_line(const std::string& vertex, const Ray& ray) {
  return "vector " + vertex + " = " + ray.to_string();
}

std::string serialize_document(const CloudDocument& doc) {
  std::ostringstream os;
  for (const auto& d : doc.directives) {
    os << "#! " << d.keyword;
    for (const auto& a : d.args) os << ' ' << a;
    os << '\n';
  }
  os << serialize_cloud(doc.cloud);
  if (doc.representation) {
    const auto& rep = *doc.representation;
    const bool has_tolerance = std::any_of(doc.directives.begin(), doc.directives.end(),
                                           [](const Directive& d) { return d.keyword == "tolerance"; });
    if (rep.mode() == CoordinateMode::Float && !has_tolerance && rep.tolerance() != kDefaultTolerance) {
      std::ostringstream t;
      t.precision(17);
      t << rep.tolerance();
      os << "#! tolerance " << t.str() << '\n';
    }
    for (const auto& name : doc.cloud.vertex_names())
      if (const Ray* r = rep.find(name)) {
        std::string line = format_vector_line(name, *r);
        // Keep float-mode files recognizable when every component is integral.
        if (rep.mode() == CoordinateMode::Float && line.find_first_of(".eE", line.find('=')) == std::string::npos) {
          std::ostringstream fs;
          fs.precision(17);
          fs << "vector " << name << " = (";
          const auto& xs = r->float_components();
          for (std::size_t i = 0; i < xs.size(); ++i) fs << (i ? ", " : "") << std::showpoint << xs[i];
          fs << ')';
          line = fs.str();
        }
        os << line << '\n';
      }
  }
  return os.str();
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string cloud_checksum(const Cloud& cloud) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::uint64_t h = fnv1a64(serialize_cloud(cloud));
  std::string digits(16, '0');
  for (int i = 15; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = kHex[h & 0xF];
    h >>= 4;
  }
  return "fnv1a64:" + digits;
}

}  // namespace cloudlab
