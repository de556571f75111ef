#include "cloudlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cloudlab {

namespace {

void require_same_mode(const Ray& u, const Ray& v) {
  if (u.mode() != v.mode()) throw GeometryError("mixing exact and float rays");
  if (u.dimension() != v.dimension()) throw GeometryError("rays of different dimension");
}

// Max-norm-1 rescaling; tolerances apply to rescaled vectors.
std::vector<double> rescaled(const std::vector<double>& x) {
  double m = 0.0;
  for (double c : x) m = std::max(m, std::abs(c));
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] / m;
  return out;
}

double float_dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

std::vector<double> float_cross(const std::vector<double>& u, const std::vector<double>& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

std::vector<QSqrt2> exact_cross(const std::vector<QSqrt2>& u, const std::vector<QSqrt2>& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

void require_3d(const Ray& r) {
  if (r.dimension() != 3) throw GeometryError("operation needs 3-dimensional rays");
}

}  // namespace

Ray Ray::exact(std::vector<QSqrt2> components) {
  if (components.size() != 3) throw GeometryError("exact rays must have 3 components");
  if (std::all_of(components.begin(), components.end(),
                  [](const QSqrt2& c) { return c.is_zero(); })) {
    throw GeometryError("zero vector is not a ray");
  }
  Ray r;
  r.mode_ = CoordinateMode::Exact;
  r.exact_ = std::move(components);
  return r;
}

Ray Ray::approx(std::vector<double> components) {
  if (components.size() < 3) throw GeometryError("float rays need dimension >= 3");
  if (std::any_of(components.begin(), components.end(), [](double c) { return !std::isfinite(c); }))
    throw GeometryError("non-finite ray component");
  if (std::all_of(components.begin(), components.end(), [](double c) { return c == 0.0; }))
    throw GeometryError("zero vector is not a ray");
  Ray r;
  r.mode_ = CoordinateMode::Float;
  r.approx_ = std::move(components);
  return r;
}

std::size_t Ray::dimension() const noexcept {
  return mode_ == CoordinateMode::Exact ? exact_.size() : approx_.size();
}

const std::vector<QSqrt2>& Ray::exact_components() const {
  if (mode_ != CoordinateMode::Exact) throw GeometryError("ray is not exact");
  return exact_;
}

const std::vector<double>& Ray::float_components() const {
  if (mode_ != CoordinateMode::Float) throw GeometryError("ray is not in float mode");
  return approx_;
}

std::vector<double> Ray::to_doubles() const {
  if (mode_ == CoordinateMode::Float) return approx_;
  std::vector<double> out;
  out.reserve(exact_.size());
  for (const auto& c : exact_) out.push_back(c.to_double());
  return out;
}

Ray Ray::canonical(double tolerance) const {
  if (mode_ == CoordinateMode::Float) {
    auto x = rescaled(approx_);
    for (double c : x) {
      if (std::abs(c) > tolerance) {
        if (c < 0)
          for (double& y : x) y = -y;
        break;
      }
    }
    for (double& y : x)
      if (y == 0.0) y = 0.0;  // drop negative zero
    return approx(std::move(x));
  }
  auto first = std::find_if(exact_.begin(), exact_.end(), [](const QSqrt2& c) { return !c.is_zero(); });
  QSqrt2 factor = first->conjugate();
  if ((*first * factor).sign() < 0) factor = -factor;
  std::vector<QSqrt2> y;
  y.reserve(exact_.size());
  for (const auto& c : exact_) y.push_back(c * factor);

  BigInt den_lcm = 1;
  for (const auto& c : y) {
    den_lcm = boost::multiprecision::lcm(den_lcm, boost::multiprecision::denominator(c.rational_part()));
    den_lcm = boost::multiprecision::lcm(den_lcm, boost::multiprecision::denominator(c.sqrt2_part()));
  }
  BigInt num_gcd = 0;
  for (auto& c : y) {
    c = QSqrt2(c.rational_part() * den_lcm, c.sqrt2_part() * den_lcm);
    num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::numerator(c.rational_part()));
    num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::numerator(c.sqrt2_part()));
  }
  if (num_gcd < 0) num_gcd = -num_gcd;
  for (auto& c : y) c = QSqrt2(c.rational_part() / num_gcd, c.sqrt2_part() / num_gcd);
  return exact(std::move(y));
}

std::string Ray::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < dimension(); ++i) {
    if (i) os << ", ";
    if (mode_ == CoordinateMode::Exact) {
      os << exact_[i].to_string();
    } else {
      os.precision(17);
      os << approx_[i];
    }
  }
  os << ')';
  return os.str();
}

bool Ray::operator==(const Ray& other) const {
  return mode_ == other.mode_ && exact_ == other.exact_ && approx_ == other.approx_;
}

std::string scalar_to_string(const Scalar& s) {
  if (const auto* q = std::get_if<QSqrt2>(&s)) return q->to_string();
  std::ostringstream os;
  os.precision(17);
  os << std::get<double>(s);
  return os.str();
}

QSqrt2 dot_exact(const Ray& u, const Ray& v) {
  require_same_mode(u, v);
  const auto& x = u.exact_components();
  const auto& y = v.exact_components();
  QSqrt2 s;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

Scalar dot(const Ray& u, const Ray& v) {
  require_same_mode(u, v);
  if (u.mode() == CoordinateMode::Exact) return dot_exact(u, v);
  return float_dot(u.float_components(), v.float_components());
}

Ray cross(const Ray& u, const Ray& v, double tolerance) {
  require_same_mode(u, v);
  require_3d(u);
  if (u.mode() == CoordinateMode::Exact) {
    auto w = exact_cross(u.exact_components(), v.exact_components());
    if (std::all_of(w.begin(), w.end(), [](const QSqrt2& c) { return c.is_zero(); }))
      throw GeometryError("cross product of collinear rays");
    return Ray::exact(std::move(w)).canonical();
  }
  auto w = float_cross(rescaled(u.float_components()), rescaled(v.float_components()));
  if (std::all_of(w.begin(), w.end(), [&](double c) { return std::abs(c) <= tolerance; }))
    throw GeometryError("cross product of collinear rays");
  return Ray::approx(std::move(w)).canonical(tolerance);
}

bool orthogonal(const Ray& u, const Ray& v, double tolerance) {
  require_same_mode(u, v);
  if (u.mode() == CoordinateMode::Exact) return dot_exact(u, v).is_zero();
  return std::abs(float_dot(rescaled(u.float_components()), rescaled(v.float_components()))) <=
         tolerance;
}

bool same_ray(const Ray& u, const Ray& v, double tolerance) {
  require_same_mode(u, v);
  if (u.mode() == CoordinateMode::Exact) return u.canonical() == v.canonical();
  const auto x = u.canonical(tolerance).float_components();
  const auto y = v.canonical(tolerance).float_components();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::abs(x[i] - y[i]) > tolerance) return false;
  return true;
}

double transition_probability(const Ray& u, const Ray& v) {
  require_same_mode(u, v);
  if (u.mode() == CoordinateMode::Exact) {
    const QSqrt2 uv = dot_exact(u, v);
    return (uv * uv / (dot_exact(u, u) * dot_exact(v, v))).to_double();
  }
  const auto x = rescaled(u.float_components());
  const auto y = rescaled(v.float_components());
  const double uv = float_dot(x, y);
  return std::clamp(uv * uv / (float_dot(x, x) * float_dot(y, y)), 0.0, 1.0);
}

double ray_angle(const Ray& u, const Ray& v) {
  return std::acos(std::clamp(std::sqrt(transition_probability(u, v)), 0.0, 1.0));
}

Representation::Representation(CoordinateMode mode, double tolerance)
    : mode_(mode), tolerance_(tolerance) {
  if (!(tolerance > 0.0)) throw GeometryError("tolerance must be positive");
}

void Representation::set(const std::string& vertex, Ray ray) {
  if (ray.mode() != mode_) throw GeometryError("ray for '" + vertex + "' has the wrong mode");
  rays_.insert_or_assign(vertex, std::move(ray));
}

const Ray* Representation::find(const std::string& vertex) const {
  auto it = rays_.find(vertex);
  return it == rays_.end() ? nullptr : &it->second;
}

const Ray& Representation::at(const std::string& vertex) const {
  if (const Ray* r = find(vertex)) return *r;
  throw CloudError("no ray for vertex '" + vertex + "'");
}

std::vector<std::string> Representation::matching(const Ray& ray) const {
  std::vector<std::string> out;
  for (const auto& [name, r] : rays_)
    if (same_ray(r, ray, tolerance_)) out.push_back(name);
  return out;
}

std::string to_string(RepresentationViolation::Kind kind) {
  switch (kind) {
    case RepresentationViolation::Kind::AdjacentNotOrthogonal: return "adjacent-not-orthogonal";
    case RepresentationViolation::Kind::NonadjacentOrthogonal: return "nonadjacent-orthogonal";
    case RepresentationViolation::Kind::Collinear: return "collinear";
  }
  return "unknown";
}

VerificationReport verify_representation(const Cloud& cloud, const Representation& rep) {
  for (const auto& [name, ray] : rep.rays()) {
    if (!cloud.find(name)) throw CloudError("representation names unknown vertex '" + name + "'");
  }
  VerificationReport report;
  std::vector<std::pair<VertexIndex, const Ray*>> assigned;
  for (VertexIndex v = 0; v < cloud.vertex_count(); ++v) {
    if (const Ray* r = rep.find(cloud.vertex_name(v)))
      assigned.emplace_back(v, r);
    else
      report.unassigned.push_back(v);
  }
  const SkeletonGraph g = skeleton_graph(cloud);
  const double tol = rep.tolerance();
  using Kind = RepresentationViolation::Kind;
  for (std::size_t i = 0; i < assigned.size(); ++i) {
    for (std::size_t j = i + 1; j < assigned.size(); ++j) {
      const auto [u, ru] = assigned[i];
      const auto [v, rv] = assigned[j];
      const bool orth = orthogonal(*ru, *rv, tol);
      if (g.adjacent(u, v)) {
        if (!orth) report.violations.push_back({Kind::AdjacentNotOrthogonal, u, v, dot(*ru, *rv)});
        continue;
      }
      if (orth) report.violations.push_back({Kind::NonadjacentOrthogonal, u, v, dot(*ru, *rv)});
      if (same_ray(*ru, *rv, tol)) report.violations.push_back({Kind::Collinear, u, v, dot(*ru, *rv)});
    }
  }
  return report;
}

StandardConstruction standard_construction(const Ray& a, const Ray& b, double tolerance) {
  require_same_mode(a, b);
  require_3d(a);
  Ray c = cross(a, b, tolerance);
  Ray d = cross(b, c, tolerance);
  Ray e = cross(a, c, tolerance);
  return StandardConstruction{std::move(c), std::move(d), std::move(e), orthogonal(a, b, tolerance)};
}

StandardConstruction standard_construction(const Representation& rep, const std::string& a,
                                           const std::string& b) {
  return standard_construction(rep.at(a), rep.at(b), rep.tolerance());
}

std::vector<std::pair<std::string, std::string>> collision_report(const Representation& a,
                                                                   const Representation& b) {
  if (a.mode() != b.mode()) throw GeometryError("mixing exact and float representations");
  const double tol = std::max(a.tolerance(), b.tolerance());
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [na, ra] : a.rays())
    for (const auto& [nb, rb] : b.rays())
      if (ra.dimension() == rb.dimension() && same_ray(ra, rb, tol)) out.emplace_back(na, nb);
  return out;
}

Ray rotate(const Ray& ray, const Ray& axis, double angle) {
  if (ray.mode() != CoordinateMode::Float || axis.mode() != CoordinateMode::Float)
    throw GeometryError("rotation needs float-mode rays");
  require_3d(ray);
  require_3d(axis);
  auto k = axis.float_components();
  const double norm = std::sqrt(float_dot(k, k));
  for (double& c : k) c /= norm;
  const auto& v = ray.float_components();
  const auto kv = float_cross(k, v);
  const double kdotv = float_dot(k, v);
  const double cs = std::cos(angle);
  const double sn = std::sin(angle);
  std::vector<double> out(3);
  for (std::size_t i = 0; i < 3; ++i) out[i] = v[i] * cs + kv[i] * sn + k[i] * kdotv * (1 - cs);
  return Ray::approx(std::move(out));
}

Representation rotate(const Representation& rep, const Ray& axis, double angle) {
  if (rep.mode() != CoordinateMode::Float) throw GeometryError("rotation needs a float representation");
  Representation out(CoordinateMode::Float, rep.tolerance());
  for (const auto& [name, ray] : rep.rays()) out.set(name, rotate(ray, axis, angle).canonical(rep.tolerance()));
  return out;
}

Representation to_float(const Representation& rep, double tolerance) {
  Representation out(CoordinateMode::Float, tolerance);
  for (const auto& [name, ray] : rep.rays()) out.set(name, Ray::approx(ray.to_doubles()));
  return out;
}

}  // namespace cloudlab
