#include "pinnc/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace pinnc {

namespace {

constexpr double kPi = std::numbers::pi;

// Uniform in [0,1) from the top 53 bits of the engine output; kept explicit
// so that sampled points do not depend on the standard library's
// distribution internals.
double next_uniform(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

double next_symmetric(std::mt19937_64& eng) {
  return 2.0 * next_uniform(eng) - 1.0;
}

// Deterministic stride subsample keeping `target` of `total` indices.
std::vector<Eigen::Index> stride_select(Eigen::Index total, Eigen::Index target) {
  std::vector<Eigen::Index> keep;
  keep.reserve(static_cast<std::size_t>(target));
  for (Eigen::Index i = 0; i < target; ++i) {
    keep.push_back(i * total / target);
  }
  return keep;
}

// Jittered structured grid over [x0,x1]x[y0,y1] clipped by `inside`,
// thinned to exactly `target` points.
Eigen::Matrix2Xd jittered_grid(double x0, double x1, double y0, double y1,
                               int target, double fill_ratio,
                               const std::function<bool(double, double)>& inside,
                               std::uint64_t seed) {
  if (target <= 0) return Eigen::Matrix2Xd(2, 0);
  const double aspect = (y1 - y0) / (x1 - x0);
  int nx = std::max(2, static_cast<int>(std::ceil(
                           std::sqrt(static_cast<double>(target) /
                                     (std::max(fill_ratio, 0.05) * aspect)))));
  for (int attempt = 0; attempt < 64; ++attempt) {
    const int ny = std::max(2, static_cast<int>(std::ceil(nx * aspect)));
    const double dx = (x1 - x0) / nx;
    const double dy = (y1 - y0) / ny;
    std::mt19937_64 eng(seed + 0x9e3779b97f4a7c15ull * (attempt + 1));
    std::vector<double> xs, ys;
    xs.reserve(static_cast<std::size_t>(nx) * ny);
    ys.reserve(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        // Draw per cell regardless of acceptance so point positions only
        // depend on the grid resolution and seed.
        const double jx = next_symmetric(eng) * 0.45;
        const double jy = next_symmetric(eng) * 0.45;
        const double px = x0 + (i + 0.5 + jx) * dx;
        const double py = y0 + (j + 0.5 + jy) * dy;
        if (inside(px, py)) {
          xs.push_back(px);
          ys.push_back(py);
        }
      }
    }
    if (static_cast<int>(xs.size()) >= target) {
      const auto keep = stride_select(static_cast<Eigen::Index>(xs.size()), target);
      Eigen::Matrix2Xd pts(2, target);
      for (int k = 0; k < target; ++k) {
        pts(0, k) = xs[static_cast<std::size_t>(keep[k])];
        pts(1, k) = ys[static_cast<std::size_t>(keep[k])];
      }
      return pts;
    }
    nx = std::max(nx + 1, static_cast<int>(std::ceil(nx * 1.15)));
  }
  throw std::runtime_error("interior sampler failed to reach requested count");
}

struct EdgeSpec {
  double length = 0.0;
  double weight = 1.0;  // density multiplier for point allocation
  BoundaryTag tag;
  // Maps arc parameter t in (0,1) to position and unit outward normal.
  std::function<void(double, Eigen::Vector2d&, Eigen::Vector2d&)> eval;
  // Reference height above the rigid plane; NaN when not a contact edge.
  std::function<double(const Eigen::Vector2d&)> yref;
};

// Midpoint sampling along each edge: t_i = (i + 0.5)/n. Corners are never
// emitted, so edge tags partition the boundary and normals stay well
// defined.
void sample_edges(const std::vector<EdgeSpec>& edges, int total, PointSet& out) {
  double weighted = 0.0;
  for (const auto& e : edges) weighted += e.length * e.weight;
  std::vector<int> counts(edges.size(), 0);
  // Largest-remainder apportionment of `total` points.
  std::vector<double> exact(edges.size());
  int assigned = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    exact[i] = total * edges[i].length * edges[i].weight / weighted;
    counts[i] = static_cast<int>(std::floor(exact[i]));
    assigned += counts[i];
  }
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return exact[a] - std::floor(exact[a]) > exact[b] - std::floor(exact[b]);
  });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) {
    counts[order[k % order.size()]] += 1;
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    counts[i] = std::max(counts[i], 2);
  }

  int n_total = 0;
  for (int c : counts) n_total += c;
  out.boundary.resize(2, n_total);
  out.normal.resize(2, n_total);
  out.yref.resize(n_total);
  out.tag.assign(static_cast<std::size_t>(n_total), BoundaryTag{});
  Eigen::Index col = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    for (int k = 0; k < counts[i]; ++k) {
      const double t = (k + 0.5) / counts[i];
      Eigen::Vector2d p, n;
      e.eval(t, p, n);
      out.boundary.col(col) = p;
      out.normal.col(col) = n;
      out.tag[static_cast<std::size_t>(col)] = e.tag;
      out.yref[col] = e.yref ? e.yref(p) : std::numeric_limits<double>::quiet_NaN();
      ++col;
    }
  }
}

void polar_test_mesh(double r0, double r1, double a0, double a1, int nr, int na,
                     PointSet& out) {
  const double dr = (r1 - r0) / nr;
  const double da = (a1 - a0) / na;
  out.test.resize(2, static_cast<Eigen::Index>(nr) * na);
  out.test_weight.resize(static_cast<Eigen::Index>(nr) * na);
  Eigen::Index col = 0;
  for (int i = 0; i < nr; ++i) {
    const double r = r0 + (i + 0.5) * dr;
    for (int j = 0; j < na; ++j) {
      const double a = a0 + (j + 0.5) * da;
      out.test(0, col) = r * std::cos(a);
      out.test(1, col) = r * std::sin(a);
      out.test_weight(col) = r * dr * da;  // exact polar cell area
      ++col;
    }
  }
}

}  // namespace

std::string tag_to_string(const BoundaryTag& tag) {
  switch (tag.kind) {
    case BoundaryKind::Dirichlet: return "DBC_" + std::to_string(tag.index);
    case BoundaryKind::Neumann: return "NBC_" + std::to_string(tag.index);
    case BoundaryKind::Contact: return "CONTACT";
    case BoundaryKind::Symmetry: return "SYMMETRY";
  }
  throw std::logic_error("unreachable tag kind");
}

BoundaryTag tag_from_string(const std::string& text) {
  if (text == "CONTACT") return {BoundaryKind::Contact, 0};
  if (text == "SYMMETRY") return {BoundaryKind::Symmetry, 0};
  const auto parse_index = [&](std::size_t prefix) {
    int idx = 0;
    const char* begin = text.data() + prefix;
    const char* end = text.data() + text.size();
    auto res = std::from_chars(begin, end, idx);
    if (res.ec != std::errc{} || res.ptr != end || idx < 1) {
      throw std::runtime_error("malformed boundary tag: " + text);
    }
    return idx;
  };
  if (text.rfind("DBC_", 0) == 0) return {BoundaryKind::Dirichlet, parse_index(4)};
  if (text.rfind("NBC_", 0) == 0) return {BoundaryKind::Neumann, parse_index(4)};
  throw std::runtime_error("unknown boundary tag: " + text);
}

std::vector<Eigen::Index> PointSet::boundary_with(BoundaryKind kind) const {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < boundary_count(); ++i) {
    if (tag[static_cast<std::size_t>(i)].kind == kind) idx.push_back(i);
  }
  return idx;
}

std::vector<Eigen::Index> PointSet::boundary_with(const BoundaryTag& t) const {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < boundary_count(); ++i) {
    if (tag[static_cast<std::size_t>(i)] == t) idx.push_back(i);
  }
  return idx;
}

void PointSet::validate() const {
  if (static_cast<Eigen::Index>(tag.size()) != boundary_count() ||
      normal.cols() != boundary_count() || yref.size() != boundary_count()) {
    throw std::runtime_error("boundary arrays out of sync");
  }
  for (Eigen::Index i = 0; i < boundary_count(); ++i) {
    if (std::abs(normal.col(i).norm() - 1.0) > 1e-12) {
      throw std::runtime_error("boundary normal is not unit length");
    }
    if (tag[static_cast<std::size_t>(i)].kind == BoundaryKind::Contact &&
        !std::isfinite(yref[i])) {
      throw std::runtime_error("contact point without reference height");
    }
  }
  // Duplicate detection across all stored points (exact collisions and
  // near-collisions within 1e-12).
  std::vector<std::pair<double, double>> all;
  all.reserve(static_cast<std::size_t>(interior_count() + boundary_count() + test_count()));
  for (Eigen::Index i = 0; i < interior_count(); ++i) all.emplace_back(interior(0, i), interior(1, i));
  for (Eigen::Index i = 0; i < boundary_count(); ++i) all.emplace_back(boundary(0, i), boundary(1, i));
  for (Eigen::Index i = 0; i < test_count(); ++i) all.emplace_back(test(0, i), test(1, i));
  std::sort(all.begin(), all.end());
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (std::abs(all[i].first - all[i - 1].first) <= 1e-12 &&
        std::abs(all[i].second - all[i - 1].second) <= 1e-12) {
      throw std::runtime_error("duplicate point within 1e-12");
    }
  }
}

PointSet sample_quarter_annulus(double r_inner, double r_outer,
                                const SampleCounts& counts, std::uint64_t seed) {
  if (!(r_inner > 0.0) || !(r_outer > r_inner)) {
    throw std::invalid_argument("degenerate annulus radii");
  }
  PointSet out;
  const double margin = 1e-9 * r_outer;
  out.interior = jittered_grid(
      0.0, r_outer, 0.0, r_outer, counts.interior,
      kPi / 4.0 * (1.0 - (r_inner * r_inner) / (r_outer * r_outer)),
      [&](double x, double y) {
        const double r = std::hypot(x, y);
        return x > margin && y > margin && r > r_inner + margin && r < r_outer - margin;
      },
      seed);

  std::vector<EdgeSpec> edges;
  // Edge 1: x = 0, r_inner..r_outer.
  edges.push_back({r_outer - r_inner, 1.0, {BoundaryKind::Symmetry, 0},
                   [=](double t, Eigen::Vector2d& p, Eigen::Vector2d& n) {
                     p = {0.0, r_inner + t * (r_outer - r_inner)};
                     n = {-1.0, 0.0};
                   },
                   nullptr});
  // Edge 2: inner arc under pressure.
  edges.push_back({r_inner * kPi / 2.0, 1.0, {BoundaryKind::Neumann, 1},
                   [=](double t, Eigen::Vector2d& p, Eigen::Vector2d& n) {
                     const double a = t * kPi / 2.0;
                     p = {r_inner * std::cos(a), r_inner * std::sin(a)};
                     n = {-std::cos(a), -std::sin(a)};
                   },
                   nullptr});
  // Edge 3: y = 0.
  edges.push_back({r_outer - r_inner, 1.0, {BoundaryKind::Symmetry, 0},
                   [=](double t, Eigen::Vector2d& p, Eigen::Vector2d& n) {
                     p = {r_inner + t * (r_outer - r_inner), 0.0};
                     n = {0.0, -1.0};
                   },
                   nullptr});
  // Edge 4: traction-free outer arc.
  edges.push_back({r_outer * kPi / 2.0, 1.0, {BoundaryKind::Neumann, 2},
                   [=](double t, Eigen::Vector2d& p, Eigen::Vector2d& n) {
                     const double a = t * kPi / 2.0;
                     p = {r_outer * std::cos(a), r_outer * std::sin(a)};
                     n = {std::cos(a), std::sin(a)};
                   },
                   nullptr});
  sample_edges(edges, counts.boundary, out);

  polar_test_mesh(r_inner, r_outer, 0.0, kPi / 2.0, counts.test_n1, counts.test_n2, out);
  out.validate();
  return out;
}

PointSet sample_unit_square(double edge_length, const SampleCounts& counts,
                            std::uint64_t seed) {
  if (!(edge_length > 0.0)) throw std::invalid_argument("edge length must be positive");
  const double l = edge_length;
  PointSet out;
  const double margin = 1e-9 * l;
  out.interior = jittered_grid(
      0.0, l, 0.0, l, counts.interior, 1.0,
      [&](double x, double y) {
        return x > margin && x < l - margin && y > margin && y < l - margin;
      },
      seed);

  std::vector<EdgeSpec> edges;
  edges.push_back({l, 1.0, {BoundaryKind::Symmetry, 0},
                   [=](double t, Eigen::Vector2d& p, Eigen::Vector2d& n) {
                     p = {0.0, t * l};
                     n = {-1.0, 0.0};
                   },
                   nullptr});
  edges.push_back({l, 1.0, {BoundaryKind::Neumann, 1},
                   [=](double t, Eigen::Vector2d& p, Eigen::Vector2d& n) {
                     p = {t * l, l};
                     n = {0.0, 1.0};
                   },
                   nullptr});
  edges.push_back({l, 1.0, {BoundaryKind::Neumann, 2},
                   [=](double t, Eigen::Vector2d& p, Eigen::Vector2d& n) {
                     p = {l, l - t * l};
                     n = {1.0, 0.0};
                   },
                   nullptr});
  // Bottom edge rests on the rigid plane y = 0, so yref = 0.
  edges.push_back({l, 1.0, {BoundaryKind::Contact, 0},
                   [=](double t, Eigen::Vector2d& p, Eigen::Vector2d& n) {
                     p = {l - t * l, 0.0};
                     n = {0.0, -1.0};
                   },
                   [](const Eigen::Vector2d& p) { return p.y(); }});
  sample_edges(edges, counts.boundary, out);

  const int nx = counts.test_n1;
  const int ny = counts.test_n2;
  out.test.resize(2, static_cast<Eigen::Index>(nx) * ny);
  out.test_weight.resize(static_cast<Eigen::Index>(nx) * ny);
  Eigen::Index col = 0;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      out.test(0, col) = (i + 0.5) * l / nx;
      out.test(1, col) = (j + 0.5) * l / ny;
      out.test_weight(col) = (l / nx) * (l / ny);
      ++col;
    }
  }
  out.validate();
  return out;
}

PointSet sample_half_cylinder(const HalfCylinderOptions& opt,
                              const SampleCounts& counts, std::uint64_t seed) {
  if (!(opt.radius > 0.0)) throw std::invalid_argument("radius must be positive");
  if (!(opt.alpha_deg > 0.0) || !(opt.alpha_deg < 90.0)) {
    throw std::invalid_argument("contact half-angle must lie in (0, 90) degrees");
  }
  const double r = opt.radius;
  const double alpha = opt.alpha_deg * kPi / 180.0;
  const double xmin = opt.symmetric_half ? 0.0 : -r;
  PointSet out;
  const double margin = 1e-9 * r;
  const double area_ratio = opt.symmetric_half ? kPi / 8.0 : kPi / 8.0;  // vs bbox
  out.interior = jittered_grid(
      xmin, r, -r, 0.0, counts.interior, area_ratio * 2.0,
      [&](double x, double y) {
        return y < -margin && x > xmin + margin &&
               std::hypot(x, y) < r - margin;
      },
      seed);

  // Reference height above the rigid plane y = -R.
  const auto height = [r](const Eigen::Vector2d& p) { return p.y() + r; };
  // Angle measured from the downward vertical; contact arc is |phi| <= alpha.
  const auto arc_point = [=](double phi, Eigen::Vector2d& p, Eigen::Vector2d& n) {
    p = {r * std::sin(phi), -r * std::cos(phi)};
    n = p / r;
  };

  std::vector<EdgeSpec> edges;
  // Top edge (flat side of the half-cylinder) under uniform pressure.
  edges.push_back({r - xmin, 1.0, {BoundaryKind::Neumann, 1},
                   [=](double t, Eigen::Vector2d& p, Eigen::Vector2d& n) {
                     p = {xmin + t * (r - xmin), 0.0};
                     n = {0.0, 1.0};
                   },
                   nullptr});
  if (opt.symmetric_half) {
    edges.push_back({r, 1.0, {BoundaryKind::Symmetry, 0},
                     [=](double t, Eigen::Vector2d& p, Eigen::Vector2d& n) {
                       p = {0.0, -t * r};
                       n = {-1.0, 0.0};
                     },
                     nullptr});
  } else {
    // Traction-free arc, negative-x side: phi in (-pi/2, -alpha).
    edges.push_back({r * (kPi / 2.0 - alpha), 1.0, {BoundaryKind::Neumann, 2},
                     [=](double t, Eigen::Vector2d& p, Eigen::Vector2d& n) {
                       arc_point(-kPi / 2.0 + t * (kPi / 2.0 - alpha), p, n);
                     },
                     nullptr});
  }
  // Potential contact arc |phi| <= alpha, densified by contact_boost.
  const double phi0 = opt.symmetric_half ? 0.0 : -alpha;
  edges.push_back({r * (alpha - phi0), opt.contact_boost, {BoundaryKind::Contact, 0},
                   [=](double t, Eigen::Vector2d& p, Eigen::Vector2d& n) {
                     arc_point(phi0 + t * (alpha - phi0), p, n);
                   },
                   height});
  // Traction-free arc, positive-x side: phi in (alpha, pi/2).
  edges.push_back({r * (kPi / 2.0 - alpha), 1.0, {BoundaryKind::Neumann, 2},
                   [=](double t, Eigen::Vector2d& p, Eigen::Vector2d& n) {
                     arc_point(alpha + t * (kPi / 2.0 - alpha), p, n);
                   },
                   nullptr});
  sample_edges(edges, counts.boundary, out);

  const double a0 = opt.symmetric_half ? 1.5 * kPi : kPi;
  polar_test_mesh(0.0, r, a0, 2.0 * kPi, counts.test_n1, counts.test_n2, out);
  out.validate();
  return out;
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double_field(const std::string& s, int line_no) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("line " + std::to_string(line_no) +
                             ": malformed number '" + s + "'");
  }
  return v;
}

}  // namespace

void save_points(const PointSet& set, const std::string& path) {
  std::ostringstream os;
  os << "x,y,kind,tag,nx,ny,Yref\n";
  const auto row = [&](double x, double y, const char* kind, const std::string& tag,
                       const std::string& nx, const std::string& ny,
                       const std::string& yref) {
    os << format_double(x) << ',' << format_double(y) << ',' << kind << ',' << tag
       << ',' << nx << ',' << ny << ',' << yref << '\n';
  };
  for (Eigen::Index i = 0; i < set.interior_count(); ++i) {
    row(set.interior(0, i), set.interior(1, i), "interior", "", "", "", "");
  }
  for (Eigen::Index i = 0; i < set.boundary_count(); ++i) {
    const auto& t = set.tag[static_cast<std::size_t>(i)];
    row(set.boundary(0, i), set.boundary(1, i), "boundary", tag_to_string(t),
        format_double(set.normal(0, i)), format_double(set.normal(1, i)),
        t.kind == BoundaryKind::Contact ? format_double(set.yref[i]) : "");
  }
  for (Eigen::Index i = 0; i < set.test_count(); ++i) {
    row(set.test(0, i), set.test(1, i), "test", "", "", "", "");
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << os.str();
  if (!f) throw std::runtime_error("write failed: " + path);
}

PointSet load_points(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error("no points: empty file");
  {
    auto header = split_csv_line(line);
    const std::vector<std::string> want = {"x", "y", "kind", "tag", "nx", "ny", "Yref"};
    if (std::vector<std::string>(header.begin(), header.end()) != want) {
      throw std::runtime_error("bad header, expected x,y,kind,tag,nx,ny,Yref");
    }
  }
  std::vector<double> ix, iy, bx, by, bnx, bny, byr, tx, ty;
  std::vector<BoundaryTag> tags;
  int line_no = 1;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 7) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": expected 7 fields, got " + std::to_string(fields.size()));
    }
    const double x = parse_double_field(fields[0], line_no);
    const double y = parse_double_field(fields[1], line_no);
    const std::string& kind = fields[2];
    if (kind == "interior") {
      ix.push_back(x);
      iy.push_back(y);
    } else if (kind == "test") {
      tx.push_back(x);
      ty.push_back(y);
    } else if (kind == "boundary") {
      BoundaryTag t = tag_from_string(fields[3]);
      if (fields[4].empty() || fields[5].empty()) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": boundary row missing normal");
      }
      bx.push_back(x);
      by.push_back(y);
      bnx.push_back(parse_double_field(fields[4], line_no));
      bny.push_back(parse_double_field(fields[5], line_no));
      if (t.kind == BoundaryKind::Contact) {
        if (fields[6].empty()) {
          throw std::runtime_error("line " + std::to_string(line_no) +
                                   ": contact row missing Yref");
        }
        byr.push_back(parse_double_field(fields[6], line_no));
      } else {
        byr.push_back(std::numeric_limits<double>::quiet_NaN());
      }
      tags.push_back(t);
    } else {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": unknown kind '" + kind + "'");
    }
  }
  if (ix.empty() && bx.empty() && tx.empty()) {
    throw std::runtime_error("no points");
  }
  PointSet out;
  out.interior.resize(2, static_cast<Eigen::Index>(ix.size()));
  for (std::size_t i = 0; i < ix.size(); ++i) {
    out.interior(0, static_cast<Eigen::Index>(i)) = ix[i];
    out.interior(1, static_cast<Eigen::Index>(i)) = iy[i];
  }
  out.boundary.resize(2, static_cast<Eigen::Index>(bx.size()));
  out.normal.resize(2, static_cast<Eigen::Index>(bx.size()));
  out.yref.resize(static_cast<Eigen::Index>(bx.size()));
  for (std::size_t i = 0; i < bx.size(); ++i) {
    out.boundary(0, static_cast<Eigen::Index>(i)) = bx[i];
    out.boundary(1, static_cast<Eigen::Index>(i)) = by[i];
    out.normal(0, static_cast<Eigen::Index>(i)) = bnx[i];
    out.normal(1, static_cast<Eigen::Index>(i)) = bny[i];
    out.yref[static_cast<Eigen::Index>(i)] = byr[i];
  }
  out.tag = std::move(tags);
  out.test.resize(2, static_cast<Eigen::Index>(tx.size()));
  for (std::size_t i = 0; i < tx.size(); ++i) {
    out.test(0, static_cast<Eigen::Index>(i)) = tx[i];
    out.test(1, static_cast<Eigen::Index>(i)) = ty[i];
  }
  out.test_weight = Eigen::VectorXd::Zero(out.test_count());
  out.validate();
  return out;
}

}  // namespace pinnc
