#include "pinnc/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace pinnc;

namespace {

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("quarter annulus sampling") {
  const SampleCounts counts{262, 68, 74, 96};
  const PointSet pts = sample_quarter_annulus(1.0, 2.0, counts, 7);

  CHECK(pts.interior_count() == 262);
  CHECK(pts.test_count() == 7104);

  for (Eigen::Index i = 0; i < pts.interior_count(); ++i) {
    const double x = pts.interior(0, i);
    const double y = pts.interior(1, i);
    const double r = std::hypot(x, y);
    CHECK(x >= 0.0);
    CHECK(y >= 0.0);
    CHECK(r >= 1.0);
    CHECK(r <= 2.0);
  }

  // Inner-arc normals point toward the origin.
  for (Eigen::Index i = 0; i < pts.boundary_count(); ++i) {
    const auto& tag = pts.tag[static_cast<std::size_t>(i)];
    if (tag.kind == BoundaryKind::Neumann && tag.index == 1) {
      const Eigen::Vector2d p = pts.boundary.col(i);
      const Eigen::Vector2d n = pts.normal.col(i);
      CHECK((n + p / p.norm()).norm() == doctest::Approx(0.0).epsilon(1e-12));
    }
  }

  // Same seed reproduces, different seed varies.
  const PointSet again = sample_quarter_annulus(1.0, 2.0, counts, 7);
  CHECK(again.interior == pts.interior);
  const PointSet other = sample_quarter_annulus(1.0, 2.0, counts, 8);
  CHECK(other.interior != pts.interior);

  CHECK_THROWS(sample_quarter_annulus(2.0, 1.0, counts, 7));
}

TEST_CASE("unit square sampling") {
  const SampleCounts counts{434, 80, 20, 20};
  const PointSet pts = sample_unit_square(1.0, counts, 3);
  CHECK(pts.interior_count() == 434);
  CHECK(pts.boundary_count() == 80);

  int contact_points = 0;
  for (Eigen::Index i = 0; i < pts.boundary_count(); ++i) {
    const auto& tag = pts.tag[static_cast<std::size_t>(i)];
    if (tag.kind == BoundaryKind::Contact) {
      ++contact_points;
      CHECK(pts.boundary(1, i) == 0.0);
      CHECK(pts.normal(0, i) == 0.0);
      CHECK(pts.normal(1, i) == -1.0);
      CHECK(pts.tangent(i) == Eigen::Vector2d{1.0, 0.0});
      CHECK(pts.yref[i] == 0.0);  // gap reduces to u_y / |n_y|
    }
  }
  CHECK(contact_points == 20);
}

TEST_CASE("half cylinder sampling") {
  HalfCylinderOptions opt;
  const SampleCounts counts{500, 200, 20, 40};
  const PointSet pts = sample_half_cylinder(opt, counts, 5);

  const double b_pot = std::sin(15.0 * std::numbers::pi / 180.0);
  double min_y_normal = 1.0;
  for (Eigen::Index i = 0; i < pts.boundary_count(); ++i) {
    CHECK(pts.normal.col(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
    const auto& tag = pts.tag[static_cast<std::size_t>(i)];
    if (tag.kind == BoundaryKind::Contact) {
      CHECK(std::abs(pts.boundary(0, i)) <= b_pot + 1e-12);
      CHECK(pts.yref[i] == doctest::Approx(pts.boundary(1, i) + 1.0).epsilon(1e-12));
      min_y_normal = std::min(min_y_normal, pts.normal(1, i));
    }
  }
  CHECK(min_y_normal <= -0.99);  // lowest sampled arc point faces straight down

  for (Eigen::Index i = 0; i < pts.interior_count(); ++i) {
    CHECK(pts.interior.col(i).norm() <= 1.0);
    CHECK(pts.interior(1, i) <= 0.0);
  }

  SUBCASE("symmetric half variant") {
    HalfCylinderOptions half = opt;
    half.symmetric_half = true;
    const PointSet hp = sample_half_cylinder(half, counts, 5);
    bool has_symmetry = false;
    for (Eigen::Index i = 0; i < hp.boundary_count(); ++i) {
      if (hp.tag[static_cast<std::size_t>(i)].kind == BoundaryKind::Symmetry) {
        has_symmetry = true;
        CHECK(hp.boundary(0, i) == 0.0);
      }
      CHECK(hp.boundary(0, i) >= 0.0);
    }
    CHECK(has_symmetry);
  }

  CHECK_THROWS(sample_half_cylinder(HalfCylinderOptions{1.0, 95.0}, counts, 5));
}

TEST_CASE("point CSV round trip is lossless") {
  const PointSet pts = sample_half_cylinder(HalfCylinderOptions{}, {60, 40, 6, 8}, 17);
  const std::string path = temp_path("pinnc_points_roundtrip.csv");
  save_points(pts, path);
  const PointSet back = load_points(path);

  CHECK(back.interior == pts.interior);
  CHECK(back.boundary == pts.boundary);
  CHECK(back.normal == pts.normal);
  CHECK(back.test == pts.test);
  REQUIRE(back.tag.size() == pts.tag.size());
  for (std::size_t i = 0; i < pts.tag.size(); ++i) CHECK(back.tag[i] == pts.tag[i]);
  for (Eigen::Index i = 0; i < pts.boundary_count(); ++i) {
    if (pts.tag[static_cast<std::size_t>(i)].kind == BoundaryKind::Contact) {
      CHECK(back.yref[i] == pts.yref[i]);
    }
  }
  std::filesystem::remove(path);
}

TEST_CASE("point CSV schema violations are rejected") {
  const std::string path = temp_path("pinnc_points_bad.csv");

  SUBCASE("empty file") {
    std::ofstream(path) << "";
    CHECK_THROWS_WITH_AS(load_points(path), doctest::Contains("no points"),
                         std::runtime_error);
  }
  SUBCASE("header only") {
    std::ofstream(path) << "x,y,kind,tag,nx,ny,Yref\n";
    CHECK_THROWS_WITH_AS(load_points(path), doctest::Contains("no points"),
                         std::runtime_error);
  }
  SUBCASE("missing normal on contact row") {
    std::ofstream(path) << "x,y,kind,tag,nx,ny,Yref\n0,0,boundary,CONTACT,,,0\n";
    CHECK_THROWS_WITH_AS(load_points(path), doctest::Contains("missing normal"),
                         std::runtime_error);
  }
  SUBCASE("missing yref on contact row") {
    std::ofstream(path) << "x,y,kind,tag,nx,ny,Yref\n0,0,boundary,CONTACT,0,-1,\n";
    CHECK_THROWS_WITH_AS(load_points(path), doctest::Contains("missing Yref"),
                         std::runtime_error);
  }
  SUBCASE("unknown tag") {
    std::ofstream(path) << "x,y,kind,tag,nx,ny,Yref\n0,0,boundary,WEIRD,0,-1,0\n";
    CHECK_THROWS(load_points(path));
  }
  SUBCASE("malformed number") {
    std::ofstream(path) << "x,y,kind,tag,nx,ny,Yref\nzzz,0,interior,,,,\n";
    CHECK_THROWS_WITH_AS(load_points(path), doctest::Contains("malformed"),
                         std::runtime_error);
  }
  SUBCASE("duplicate points") {
    std::ofstream(path)
        << "x,y,kind,tag,nx,ny,Yref\n0.5,0.5,interior,,,,\n0.5,0.5,interior,,,,\n";
    CHECK_THROWS_WITH_AS(load_points(path), doctest::Contains("duplicate"),
                         std::runtime_error);
  }
  std::filesystem::remove(path);
}

TEST_CASE("test meshes carry positive cell measures covering the domain") {
  const PointSet pts = sample_quarter_annulus(1.0, 2.0, {50, 20, 74, 96}, 7);
  CHECK(pts.test_weight.minCoeff() > 0.0);
  // Total measure equals the quarter-annulus area exactly (polar cells).
  const double area = pts.test_weight.sum();
  CHECK(area == doctest::Approx(std::numbers::pi / 4.0 * (4.0 - 1.0)).epsilon(1e-12));
}
