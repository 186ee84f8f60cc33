// SPDX-License-Identifier: Apache-2.0

#include "accrete/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "accrete/errors.hpp"

namespace accrete {

namespace {

double segment_distance(const Vec2& a, const Vec2& b, const Vec2& x) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double s = len2 > 0.0 ? (x - a).dot(ab) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return (a + s * ab - x).norm();
}

double polygon_boundary_distance(const Polygon& poly, const Vec2& x) {
  const auto& v = poly.vertices;
  double best = std::numeric_limits<double>::infinity();
  for (size_t e = 0; e < v.size(); ++e)
    best = std::min(best, segment_distance(v[e], v[(e + 1) % v.size()], x));
  return best;
}

}  // namespace

bool contains(const Polygon& poly, const Vec2& x) {
  const auto& v = poly.vertices;
  if (v.size() < 3)
    return false;
  bool inside = false;
  for (size_t a = 0, b = v.size() - 1; a < v.size(); b = a++) {
    if ((v[a].y() > x.y()) != (v[b].y() > x.y())) {
      const double cross = (v[b].x() - v[a].x()) * (x.y() - v[a].y()) /
                               (v[b].y() - v[a].y()) +
                           v[a].x();
      if (x.x() < cross)
        inside = !inside;
    }
  }
  return inside || polygon_boundary_distance(poly, x) == 0.0;
}

double distance(const Polygon& poly, const Vec2& x) {
  if (contains(poly, x))
    return 0.0;
  return polygon_boundary_distance(poly, x);
}

bool Region::contains(const Vec2& x) const {
  for (const auto& s : shapes) {
    if (const auto* d = std::get_if<Disk>(&s)) {
      if ((x - d->center).norm() <= d->radius)
        return true;
    } else if (accrete::contains(std::get<Polygon>(s), x)) {
      return true;
    }
  }
  return false;
}

double Region::distance(const Vec2& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : shapes) {
    if (const auto* d = std::get_if<Disk>(&s))
      best = std::min(best, std::max(0.0, (x - d->center).norm() - d->radius));
    else
      best = std::min(best, accrete::distance(std::get<Polygon>(s), x));
  }
  return best;
}

double Region::depth(const Vec2& x) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& s : shapes) {
    if (const auto* d = std::get_if<Disk>(&s)) {
      best = std::max(best, d->radius - (x - d->center).norm());
    } else {
      const auto& poly = std::get<Polygon>(s);
      const double b = polygon_boundary_distance(poly, x);
      best = std::max(best, accrete::contains(poly, x) ? b : -b);
    }
  }
  return best;
}

std::vector<Vec2> Region::boundary_samples(double spacing) const {
  std::vector<Vec2> out;
  for (const auto& s : shapes) {
    if (const auto* d = std::get_if<Disk>(&s)) {
      const int n = std::max(
          16, static_cast<int>(std::ceil(2.0 * std::numbers::pi * d->radius /
                                         spacing)));
      for (int k = 0; k < n; ++k) {
        const double a = 2.0 * std::numbers::pi * k / n;
        out.emplace_back(d->center + d->radius * Vec2(std::cos(a), std::sin(a)));
      }
      out.push_back(d->center);
    } else {
      const auto& v = std::get<Polygon>(s).vertices;
      for (size_t e = 0; e < v.size(); ++e) {
        const Vec2& a = v[e];
        const Vec2& b = v[(e + 1) % v.size()];
        const int n =
            std::max(1, static_cast<int>(std::ceil((b - a).norm() / spacing)));
        for (int k = 0; k < n; ++k)
          out.emplace_back(a + (b - a) * (static_cast<double>(k) / n));
      }
    }
  }
  return out;
}

double Region::distance_to_box_boundary(double lx, double ly) const {
  double best = std::numeric_limits<double>::infinity();
  auto box = [&](double x, double y) {
    return std::min({x, lx - x, y, ly - y});
  };
  for (const auto& s : shapes) {
    if (const auto* d = std::get_if<Disk>(&s)) {
      best = std::min(best, box(d->center.x(), d->center.y()) - d->radius);
    } else {
      for (const auto& v : std::get<Polygon>(s).vertices)
        best = std::min(best, box(v.x(), v.y()));
    }
  }
  return best;
}

namespace {

std::string shortest(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace

std::string Region::describe() const {
  std::string out;
  for (const auto& s : shapes) {
    if (!out.empty())
      out += ' ';
    if (const auto* d = std::get_if<Disk>(&s)) {
      out += "disk(" + shortest(d->center.x()) + ", " +
             shortest(d->center.y()) + ", " + shortest(d->radius) + ")";
    } else {
      out += "polygon(";
      const auto& v = std::get<Polygon>(s).vertices;
      for (size_t k = 0; k < v.size(); ++k)
        out += (k ? ", " : "") + shortest(v[k].x()) + ' ' + shortest(v[k].y());
      out += ")";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Grid::Grid(DomainSpec spec, int nx, int ny, double h)
    : spec_(std::move(spec)), nx_(nx), ny_(ny), h_(h),
      flags_(static_cast<size_t>(nx) * ny, 0) {
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      const int n = index(i, j);
      std::uint8_t f = 0;
      if (i == 0 || j == 0 || i == nx_ - 1 || j == ny_ - 1)
        f |= kBoundary;
      const Vec2 p = point(n);
      if (!(f & kBoundary) && spec_.omega0.contains(p)) {
        f |= kOmega0;
        if (spec_.anchor.contains(p))
          f |= kAnchor;
      }
      flags_[n] = f;
    }
  }
}

NodeMask Grid::mask(NodeFlag flag) const {
  NodeMask m(flags_.size());
  for (size_t n = 0; n < flags_.size(); ++n)
    m[n] = (flags_[n] & flag) ? 1 : 0;
  return m;
}

int Grid::count(NodeFlag flag) const {
  return static_cast<int>(std::count_if(flags_.begin(), flags_.end(),
                                        [&](auto f) { return f & flag; }));
}

double Grid::quadrature_weight(int n) const {
  const int i = col(n);
  const int j = row(n);
  const double wx = (i == 0 || i == nx_ - 1) ? 0.5 : 1.0;
  const double wy = (j == 0 || j == ny_ - 1) ? 0.5 : 1.0;
  return wx * wy;
}

void validate_domain(const DomainSpec& spec, double h) {
  if (!(spec.lx > 0.0) || !(spec.ly > 0.0))
    throw ConfigError("hypothesis (H1) violated: container must have positive "
                      "side lengths");
  if (!(spec.final_time > 0.0))
    throw ConfigError("final time T must be positive");
  if (!(spec.c_gamma > 0.0) || !(spec.c_gamma <= spec.C_gamma))
    throw ConfigError(
        "hypothesis (H14) violated: speed bounds must satisfy "
        "0 < c_gamma <= C_gamma");
  if (spec.omega0.empty())
    throw ConfigError("hypothesis (H1) violated: initial body is empty");
  if (spec.anchor.empty())
    throw ConfigError("hypothesis (H1) violated: anchoring set is empty");

  const double margin = 2.0 * h;
  const double gap = spec.omega0.distance_to_box_boundary(spec.lx, spec.ly);
  if (!(gap > margin))
    throw ConfigError(
        "hypothesis (H1) violated: initial body not strictly inside the "
        "container (gap " +
        std::to_string(gap) + ", required > " + std::to_string(margin) + ")");

  for (const Vec2& z : spec.anchor.boundary_samples(h / 4.0)) {
    if (!(spec.omega0.depth(z) > margin))
      throw ConfigError(
          "hypothesis (H1) violated: anchor not inside initial body (with a "
          "safety band of 2h)");
  }

  const double reach = spec.C_gamma * spec.final_time + margin;
  if (!(gap > reach))
    throw ConfigError(
        "hypothesis (H15) violated: initial body dilated by C_gamma*T reaches "
        "the container boundary (gap " +
        std::to_string(gap) + ", required > C_gamma*T + 2h = " +
        std::to_string(reach) + ")");
}

Grid build_grid(const DomainSpec& spec, int resolution) {
  if (resolution < 17)
    throw ConfigError("grid resolution must be at least 17 nodes per axis");
  if (!(spec.lx > 0.0) || !(spec.ly > 0.0))
    throw ConfigError("hypothesis (H1) violated: container must have positive "
                      "side lengths");
  const double h = spec.lx / (resolution - 1);
  const int ny = static_cast<int>(std::lround(spec.ly / h)) + 1;
  if (std::abs((ny - 1) * h - spec.ly) > 1e-9 * spec.ly)
    throw ConfigError(
        "container aspect ratio is incompatible with square cells at this "
        "resolution");
  if (ny < 17)
    throw ConfigError("grid resolution must be at least 17 nodes per axis");

  validate_domain(spec, h);
  Grid grid(spec, resolution, ny, h);
  if (grid.count(kOmega0) == 0)
    throw ConfigError(
        "hypothesis (H1) violated: initial body contains no grid node");
  if (grid.count(kAnchor) == 0)
    throw ConfigError(
        "hypothesis (H1) violated: anchoring set contains no grid node");
  return grid;
}

// ---------------------------------------------------------------------------

namespace {

struct Stencil1D {
  int count = 0;
  std::array<int, 4> offset{};
  std::array<double, 4> coeff{};

  void add(int off, double c) {
    offset[count] = off;
    coeff[count] = c;
    ++count;
  }
};

Stencil1D first_1d(int i, int n, double inv_h, BoundaryClosure closure) {
  Stencil1D s;
  const double half = 0.5 * inv_h;
  if (i > 0 && i < n - 1) {
    s.add(i - 1, -half);
    s.add(i + 1, half);
  } else if (closure == BoundaryClosure::kSummationByParts) {
    if (i == 0) {
      s.add(0, -inv_h);
      s.add(1, inv_h);
    } else {
      s.add(n - 2, -inv_h);
      s.add(n - 1, inv_h);
    }
  } else if (i == 0) {
    s.add(0, -3.0 * half);
    s.add(1, 4.0 * half);
    s.add(2, -half);
  } else {
    s.add(n - 3, half);
    s.add(n - 2, -4.0 * half);
    s.add(n - 1, 3.0 * half);
  }
  return s;
}

Stencil1D second_1d(int i, int n, double inv_h2) {
  Stencil1D s;
  if (i > 0 && i < n - 1) {
    s.add(i - 1, inv_h2);
    s.add(i, -2.0 * inv_h2);
    s.add(i + 1, inv_h2);
  } else if (i == 0) {
    s.add(0, 2.0 * inv_h2);
    s.add(1, -5.0 * inv_h2);
    s.add(2, 4.0 * inv_h2);
    s.add(3, -1.0 * inv_h2);
  } else {
    s.add(n - 4, -1.0 * inv_h2);
    s.add(n - 3, 4.0 * inv_h2);
    s.add(n - 2, -5.0 * inv_h2);
    s.add(n - 1, 2.0 * inv_h2);
  }
  return s;
}

}  // namespace

DifferenceOperators::DifferenceOperators(const Grid& grid,
                                         BoundaryClosure closure)
    : size_(grid.size()), closure_(closure) {
  const int nx = grid.nx();
  const int ny = grid.ny();
  const double inv_h = 1.0 / grid.h();
  const double inv_h2 = inv_h * inv_h;

  for (int n = 0; n < size_; ++n) {
    const int i = grid.col(n);
    const int j = grid.row(n);
    const Stencil1D dx = first_1d(i, nx, inv_h, closure);
    const Stencil1D dy = first_1d(j, ny, inv_h, closure);
    for (int a = 0; a < dx.count; ++a)
      first_.entries.push_back({grid.index(dx.offset[a], j), dx.coeff[a]});
    first_.offsets.push_back(static_cast<int>(first_.entries.size()));
    for (int a = 0; a < dy.count; ++a)
      first_.entries.push_back({grid.index(i, dy.offset[a]), dy.coeff[a]});
    first_.offsets.push_back(static_cast<int>(first_.entries.size()));

    const Stencil1D dxx = second_1d(i, nx, inv_h2);
    const Stencil1D dyy = second_1d(j, ny, inv_h2);
    const Stencil1D mx = first_1d(i, nx, inv_h, BoundaryClosure::kSecondOrder);
    const Stencil1D my = first_1d(j, ny, inv_h, BoundaryClosure::kSecondOrder);
    std::vector<StencilEntry> mixed;
    for (int a = 0; a < mx.count; ++a)
      for (int b = 0; b < my.count; ++b)
        mixed.push_back({grid.index(mx.offset[a], my.offset[b]),
                         mx.coeff[a] * my.coeff[b]});

    for (int a = 0; a < dxx.count; ++a)
      second_.entries.push_back({grid.index(dxx.offset[a], j), dxx.coeff[a]});
    second_.offsets.push_back(static_cast<int>(second_.entries.size()));
    second_.entries.insert(second_.entries.end(), mixed.begin(), mixed.end());
    second_.offsets.push_back(static_cast<int>(second_.entries.size()));
    second_.entries.insert(second_.entries.end(), mixed.begin(), mixed.end());
    second_.offsets.push_back(static_cast<int>(second_.entries.size()));
    for (int a = 0; a < dyy.count; ++a)
      second_.entries.push_back({grid.index(i, dyy.offset[a]), dyy.coeff[a]});
    second_.offsets.push_back(static_cast<int>(second_.entries.size()));
  }
}

Mat2 DifferenceOperators::gradient_at(std::span<const Vec2> field,
                                      int n) const {
  Mat2 f = Mat2::Zero();
  for (int d = 0; d < 2; ++d)
    for (const auto& e : first(n, d))
      f.col(d) += e.coeff * field[e.node];
  return f;
}

Tensor3 DifferenceOperators::hessian_at(std::span<const Vec2> field,
                                        int n) const {
  Tensor3 g;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      Vec2 v = Vec2::Zero();
      for (const auto& e : second(n, j, k))
        v += e.coeff * field[e.node];
      g(0, j, k) = v.x();
      g(1, j, k) = v.y();
    }
  }
  return g;
}

std::vector<Mat2> gradient(std::span<const Vec2> field, const Grid& grid,
                           BoundaryClosure closure) {
  const DifferenceOperators ops(grid, closure);
  std::vector<Mat2> out(grid.size());
  for (int n = 0; n < grid.size(); ++n)
    out[n] = ops.gradient_at(field, n);
  return out;
}

std::vector<Tensor3> hessian(std::span<const Vec2> field, const Grid& grid) {
  const DifferenceOperators ops(grid, BoundaryClosure::kSecondOrder);
  std::vector<Tensor3> out(grid.size());
  for (int n = 0; n < grid.size(); ++n)
    out[n] = ops.hessian_at(field, n);
  return out;
}

VectorField identity_field(const Grid& grid) {
  VectorField y(grid.size());
  for (int n = 0; n < grid.size(); ++n)
    y[n] = grid.point(n);
  return y;
}

double dist_to_region(const Vec2& x, const NodeMask& mask, const Grid& grid) {
  if (std::none_of(mask.begin(), mask.end(), [](auto v) { return v != 0; }))
    throw std::invalid_argument("dist_to_region: empty region");

  const int i = std::clamp(static_cast<int>(std::lround(x.x() / grid.h())), 0,
                           grid.nx() - 1);
  const int j = std::clamp(static_cast<int>(std::lround(x.y() / grid.h())), 0,
                           grid.ny() - 1);
  if (mask[grid.index(i, j)])
    return 0.0;

  auto outside = [&](int ii, int jj) {
    if (ii < 0 || jj < 0 || ii >= grid.nx() || jj >= grid.ny())
      return true;
    return mask[grid.index(ii, jj)] == 0;
  };
  double best = std::numeric_limits<double>::infinity();
  for (int n = 0; n < grid.size(); ++n) {
    if (!mask[n])
      continue;
    const int a = grid.col(n);
    const int b = grid.row(n);
    if (outside(a - 1, b) || outside(a + 1, b) || outside(a, b - 1) ||
        outside(a, b + 1))
      best = std::min(best, (grid.point(n) - x).norm());
  }
  return best;
}

double dist_to_region(const Vec2& x, const Region& region) {
  if (region.empty())
    throw std::invalid_argument("dist_to_region: empty region");
  return region.distance(x);
}

}  // namespace accrete
