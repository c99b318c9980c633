#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace pinnc {

enum class BoundaryKind { Dirichlet, Neumann, Contact, Symmetry };

/// Boundary tag: kind plus a 1-based edge index for Dirichlet/Neumann
/// edges ("DBC_1", "NBC_2", ...). Contact and symmetry edges carry no index.
struct BoundaryTag {
  BoundaryKind kind = BoundaryKind::Neumann;
  int index = 0;

  bool operator==(const BoundaryTag&) const = default;
};

std::string tag_to_string(const BoundaryTag& tag);
BoundaryTag tag_from_string(const std::string& text);

/// Collocation, boundary, and test points of one benchmark domain, all in
/// the reference configuration.
///
/// Boundary points carry unit outward normals; the tangent is the normal
/// rotated by +90 degrees. Contact points additionally carry `yref`, the
/// reference height above the rigid plane used by the gap evaluation.
/// Test points lie at the centers of a structured quadrilateral mesh and
/// carry their cell measure in `test_weight` (not serialized).
struct PointSet {
  Eigen::Matrix2Xd interior;

  Eigen::Matrix2Xd boundary;
  Eigen::Matrix2Xd normal;
  std::vector<BoundaryTag> tag;
  Eigen::VectorXd yref;  // meaningful for Contact points only, else NaN

  Eigen::Matrix2Xd test;
  Eigen::VectorXd test_weight;

  Eigen::Index interior_count() const { return interior.cols(); }
  Eigen::Index boundary_count() const { return boundary.cols(); }
  Eigen::Index test_count() const { return test.cols(); }

  Eigen::Vector2d tangent(Eigen::Index i) const {
    return {-normal(1, i), normal(0, i)};
  }

  /// Indices of boundary points whose tag matches `kind` (any index).
  std::vector<Eigen::Index> boundary_with(BoundaryKind kind) const;
  std::vector<Eigen::Index> boundary_with(const BoundaryTag& tag) const;

  /// Throws if a normal is not unit length, a tag list is inconsistent, or
  /// two points coincide within 1e-12.
  void validate() const;
};

struct SampleCounts {
  int interior = 0;
  int boundary = 0;
  int test_n1 = 0;  // first structured-mesh direction (radial / x)
  int test_n2 = 0;  // second direction (angular / y)
};

/// Quarter annulus {R_i <= r <= R_o, x >= 0, y >= 0}.
/// Edges: x = 0 (SYMMETRY), y = 0 (SYMMETRY), inner arc (NBC_1),
/// outer arc (NBC_2). Test mesh is a polar grid of cell centers.
PointSet sample_quarter_annulus(double r_inner, double r_outer,
                                const SampleCounts& counts, std::uint64_t seed);

/// Unit-side square [0, l]^2 resting on the rigid plane y = 0.
/// Edges: left (SYMMETRY), top (NBC_1), right (NBC_2), bottom (CONTACT).
PointSet sample_unit_square(double edge_length, const SampleCounts& counts,
                            std::uint64_t seed);

struct HalfCylinderOptions {
  double radius = 1.0;
  double alpha_deg = 15.0;   // half-angle of the potential contact arc
  bool symmetric_half = false;  // model x >= 0 only, with a symmetry edge
  double contact_boost = 4.0;   // boundary-point density factor on the contact arc
};

/// Lower half-disk {x^2 + y^2 <= R^2, y <= 0} with its flat edge on top at
/// y = 0 and the rigid plane tangent at y = -R. Edges: top (NBC_1), curved
/// traction-free arcs (NBC_2), contact arc of half-angle alpha (CONTACT),
/// and, for the symmetric half, x = 0 (SYMMETRY).
PointSet sample_half_cylinder(const HalfCylinderOptions& opt,
                              const SampleCounts& counts, std::uint64_t seed);

/// CSV schema: `x,y,kind,tag,nx,ny,Yref` with kind in {interior, boundary,
/// test}; 17 significant digits, LF line endings, header required.
void save_points(const PointSet& set, const std::string& path);
PointSet load_points(const std::string& path);

}  // namespace pinnc
