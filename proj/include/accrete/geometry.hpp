// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "accrete/tensor.hpp"

namespace accrete {

struct Disk {
  Vec2 center;
  double radius = 0.0;
};

/// Simple polygon, vertices in order (either orientation), implicitly closed.
struct Polygon {
  std::vector<Vec2> vertices;
};

using Shape = std::variant<Disk, Polygon>;

/// Union of shapes.
struct Region {
  std::vector<Shape> shapes;

  bool empty() const { return shapes.empty(); }
  /// Closed membership.
  bool contains(const Vec2& x) const;
  /// Euclidean distance from x to the region (0 inside).
  double distance(const Vec2& x) const;
  /// Lower bound on the distance from x to the complement of the region;
  /// nonpositive outside. Exact for a single shape.
  double depth(const Vec2& x) const;
  /// Points on the boundaries of all shapes, at most `spacing` apart.
  std::vector<Vec2> boundary_samples(double spacing) const;
  /// Distance from the region to the boundary of [0,lx]x[0,ly].
  double distance_to_box_boundary(double lx, double ly) const;

  std::string describe() const;
};

double distance(const Polygon& poly, const Vec2& x);
bool contains(const Polygon& poly, const Vec2& x);

/// Container [0,Lx]x[0,Ly], initial body, anchoring set, final time, and the
/// growth speed bounds.
struct DomainSpec {
  double lx = 1.0;
  double ly = 1.0;
  Region omega0;
  Region anchor;
  double final_time = 0.25;
  double c_gamma = 1.0;
  double C_gamma = 1.0;
};

enum NodeFlag : std::uint8_t {
  kBoundary = 1u << 0,
  kOmega0 = 1u << 1,
  kAnchor = 1u << 2,
};

using NodeMask = std::vector<std::uint8_t>;

/// Uniform node grid over the container with square cells. Node (i,j) has
/// flat index j*nx + i and position (i*h, j*h).
class Grid {
public:
  Grid(DomainSpec spec, int nx, int ny, double h);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int size() const { return nx_ * ny_; }
  double h() const { return h_; }
  const DomainSpec& spec() const { return spec_; }

  int index(int i, int j) const { return j * nx_ + i; }
  int col(int n) const { return n % nx_; }
  int row(int n) const { return n / nx_; }
  Vec2 point(int n) const { return {col(n) * h_, row(n) * h_}; }

  std::uint8_t flags(int n) const { return flags_[n]; }
  bool is_boundary(int n) const { return flags_[n] & kBoundary; }
  bool in_omega0(int n) const { return flags_[n] & kOmega0; }
  bool in_anchor(int n) const { return flags_[n] & kAnchor; }
  /// Dirichlet node: y = id is imposed.
  bool is_fixed(int n) const { return flags_[n] & (kBoundary | kAnchor); }

  NodeMask mask(NodeFlag flag) const;
  int count(NodeFlag flag) const;
  /// Nodal trapezoidal quadrature weight (1, 1/2 on edges, 1/4 at corners),
  /// to be multiplied by h^2.
  double quadrature_weight(int n) const;

private:
  DomainSpec spec_;
  int nx_;
  int ny_;
  double h_;
  std::vector<std::uint8_t> flags_;
};

/// Checks the inclusion chain anchor ⊂⊂ omega0 ⊂⊂ container, speed bounds and
/// the containment of the grown body, using a safety band of 2h. Throws
/// ConfigError naming the failed hypothesis.
void validate_domain(const DomainSpec& spec, double h);

/// Builds the grid with `resolution` nodes along x (and the matching count
/// along y). Throws ConfigError if the domain is invalid.
Grid build_grid(const DomainSpec& spec, int resolution);

// ---------------------------------------------------------------------------
// Difference stencils

enum class BoundaryClosure {
  /// Second-order one-sided differences at boundary nodes.
  kSecondOrder,
  /// First-order one-sided differences at boundary nodes. Together with the
  /// trapezoidal weights this is a summation-by-parts pair: the weighted sum
  /// of a discrete derivative only involves boundary values.
  kSummationByParts,
};

struct StencilEntry {
  int node;
  double coeff;
};

/// Precomputed first- and second-derivative stencils for every node.
class DifferenceOperators {
public:
  DifferenceOperators(const Grid& grid, BoundaryClosure closure);

  /// Stencil of d/dx_d at node n.
  std::span<const StencilEntry> first(int n, int d) const {
    return row(first_, n * 2 + d);
  }
  /// Stencil of d^2/dx_j dx_k at node n.
  std::span<const StencilEntry> second(int n, int j, int k) const {
    return row(second_, n * 4 + j * 2 + k);
  }

  Mat2 gradient_at(std::span<const Vec2> field, int n) const;
  Tensor3 hessian_at(std::span<const Vec2> field, int n) const;

  int size() const { return size_; }
  BoundaryClosure closure() const { return closure_; }

private:
  struct Csr {
    std::vector<int> offsets{0};
    std::vector<StencilEntry> entries;
  };
  static std::span<const StencilEntry> row(const Csr& m, int r) {
    return {m.entries.data() + m.offsets[r],
            static_cast<size_t>(m.offsets[r + 1] - m.offsets[r])};
  }

  int size_;
  BoundaryClosure closure_;
  Csr first_;
  Csr second_;
};

using VectorField = std::vector<Vec2>;

std::vector<Mat2> gradient(std::span<const Vec2> field, const Grid& grid,
                           BoundaryClosure closure =
                               BoundaryClosure::kSecondOrder);

std::vector<Tensor3> hessian(std::span<const Vec2> field, const Grid& grid);

/// Identity deformation y(x) = x sampled at the nodes.
VectorField identity_field(const Grid& grid);

/// Distance from x to a region given as a node mask: 0 if the node nearest to
/// x lies in the mask, otherwise the minimum over the mask's boundary nodes.
/// Throws std::invalid_argument for an empty mask.
double dist_to_region(const Vec2& x, const NodeMask& mask, const Grid& grid);

/// Exact distance when the continuous descriptor is known.
double dist_to_region(const Vec2& x, const Region& region);

}  // namespace accrete
