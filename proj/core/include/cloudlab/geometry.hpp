#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cloudlab/cloud.hpp"
#include "cloudlab/qsqrt2.hpp"

namespace cloudlab {

enum class CoordinateMode { Exact, Float };

inline constexpr double kDefaultTolerance = 1e-9;

/// A nonzero vector standing for the ray it spans. Components are kept as
/// given; canonical() yields the scale-free normal form.
///
/// Exact rays live in Q(sqrt 2)^3. Float rays may have any dimension >= 3.
class Ray {
 public:
  static Ray exact(std::vector<QSqrt2> components);
  static Ray approx(std::vector<double> components);

  CoordinateMode mode() const noexcept { return mode_; }
  std::size_t dimension() const noexcept;
  /// Throws GeometryError on a float ray.
  const std::vector<QSqrt2>& exact_components() const;
  /// Throws GeometryError on an exact ray.
  const std::vector<double>& float_components() const;
  std::vector<double> to_doubles() const;

  /// Exact: first nonzero component a positive rational and all rational
  /// and sqrt2 coefficients coprime integers. Float: max-norm 1 with the
  /// first significant component positive.
  Ray canonical(double tolerance = kDefaultTolerance) const;

  std::string to_string() const;

  /// Component-wise equality of the stored vectors (not ray equality).
  bool operator==(const Ray& other) const;

 private:
  Ray() = default;
  CoordinateMode mode_ = CoordinateMode::Exact;
  std::vector<QSqrt2> exact_;
  std::vector<double> approx_;
};

using Scalar = std::variant<QSqrt2, double>;
std::string scalar_to_string(const Scalar& s);

/// Inner product of the stored components. Throws GeometryError on mode or
/// dimension mismatch.
Scalar dot(const Ray& u, const Ray& v);
QSqrt2 dot_exact(const Ray& u, const Ray& v);

/// u x v, canonicalized. Throws GeometryError for collinear inputs or
/// non-3-dimensional rays.
Ray cross(const Ray& u, const Ray& v, double tolerance = kDefaultTolerance);

bool orthogonal(const Ray& u, const Ray& v, double tolerance = kDefaultTolerance);
/// Ray equality: u is a nonzero multiple of v.
bool same_ray(const Ray& u, const Ray& v, double tolerance = kDefaultTolerance);

/// (u.v)^2 / ((u.u)(v.v)). Exact inputs are evaluated exactly, then converted.
double transition_probability(const Ray& u, const Ray& v);
/// The angle in [0, pi/2] between the two rays.
double ray_angle(const Ray& u, const Ray& v);

/// Vertex name -> ray, all in one coordinate mode.
class Representation {
 public:
  explicit Representation(CoordinateMode mode = CoordinateMode::Exact,
                          double tolerance = kDefaultTolerance);

  CoordinateMode mode() const noexcept { return mode_; }
  double tolerance() const noexcept { return tolerance_; }
  std::size_t size() const noexcept { return rays_.size(); }
  bool empty() const noexcept { return rays_.empty(); }

  /// Throws GeometryError on mode mismatch.
  void set(const std::string& vertex, Ray ray);
  const Ray* find(const std::string& vertex) const;
  /// Throws CloudError when the vertex has no ray.
  const Ray& at(const std::string& vertex) const;
  const std::map<std::string, Ray>& rays() const noexcept { return rays_; }

  /// Vertex names whose ray equals `ray`, in name order.
  std::vector<std::string> matching(const Ray& ray) const;

  bool operator==(const Representation& other) const = default;

 private:
  CoordinateMode mode_;
  double tolerance_;
  std::map<std::string, Ray> rays_;
};

struct RepresentationViolation {
  enum class Kind { AdjacentNotOrthogonal, NonadjacentOrthogonal, Collinear };
  Kind kind;
  VertexIndex u;
  VertexIndex v;
  Scalar inner_product;
};

std::string to_string(RepresentationViolation::Kind kind);

struct VerificationReport {
  /// Cloud vertices without a ray; nonempty means the check covered only
  /// the assigned subset.
  std::vector<VertexIndex> unassigned;
  std::vector<RepresentationViolation> violations;

  bool partial() const noexcept { return !unassigned.empty(); }
  bool ok() const noexcept { return violations.empty(); }
};

/// Orthogonality on edges, non-orthogonality off edges, and pairwise
/// distinct rays. Throws CloudError for rays naming unknown vertices.
VerificationReport verify_representation(const Cloud& cloud, const Representation& rep);

struct StandardConstruction {
  Ray c;  // a x b
  Ray d;  // b x c, lies in span(a, b)
  Ray e;  // a x c, completes {a, e, c}
  /// a and b orthogonal: d collapses onto a.
  bool degenerate;
};

/// Throws GeometryError for collinear terminals.
StandardConstruction standard_construction(const Ray& a, const Ray& b,
                                           double tolerance = kDefaultTolerance);
StandardConstruction standard_construction(const Representation& rep, const std::string& a,
                                           const std::string& b);

/// Pairs (vertex of A, vertex of B) carrying the same ray.
std::vector<std::pair<std::string, std::string>> collision_report(const Representation& a,
                                                                   const Representation& b);

/// Rotation by `angle` radians about `axis` (right-hand rule). Float mode
/// only; throws GeometryError otherwise.
Ray rotate(const Ray& ray, const Ray& axis, double angle);
Representation rotate(const Representation& rep, const Ray& axis, double angle);

/// Same rays in float mode.
Representation to_float(const Representation& rep, double tolerance = kDefaultTolerance);

}  // namespace cloudlab
