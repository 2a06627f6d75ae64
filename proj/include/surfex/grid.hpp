#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace surfex {

struct Rect {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
};

// Integer lattice coordinates: i runs along x (image column), j along y
// (image row).
struct LatticePoint {
  int i = 0;
  int j = 0;

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  LatticePoint operator+(const LatticePoint& o) const { return {i + o.i, j + o.j}; }
};

// Uniform lattice with square cells of side h over a rectangle. The lattice
// has (nx + 1) x (ny + 1) points stored row-major (j outer, i inner).
class Grid2D {
 public:
  Grid2D(const Rect& rect, int nx, int ny);

  // Pixel lattice of an image: x in [0, width-1], y in [0, height-1], h = 1.
  static Grid2D for_image(int width, int height);

  const Rect& rect() const { return rect_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double h() const { return h_; }

  int points_x() const { return nx_ + 1; }
  int points_y() const { return ny_ + 1; }
  int num_points() const { return points_x() * points_y(); }

  double x(int i) const { return rect_.x_min + i * h_; }
  double y(int j) const { return rect_.y_min + j * h_; }

  bool contains(LatticePoint p) const {
    return p.i >= 0 && p.j >= 0 && p.i <= nx_ && p.j <= ny_;
  }
  int linear(LatticePoint p) const { return p.j * points_x() + p.i; }
  LatticePoint point(int linear_index) const {
    return {linear_index % points_x(), linear_index / points_x()};
  }

 private:
  Rect rect_;
  int nx_;
  int ny_;
  double h_;
};

// Square lattice with n subdivisions per side. Throws InvalidArgument when
// the rectangle is not a square or n < 2.
Grid2D build_grid(const Rect& rect, int n);

enum class CellRole : std::uint8_t { UnknownInterior, Boundary, KnownExterior };

// Bijection between unknown lattice points and 0..n_unknown-1, row-major.
class IndexMap {
 public:
  IndexMap() = default;
  IndexMap(int width, int height, std::span<const CellRole> roles);

  int size() const { return static_cast<int>(points_.size()); }
  // -1 when p is not an unknown.
  int index_of(LatticePoint p) const;
  LatticePoint point(int index) const { return points_.at(index); }
  std::span<const LatticePoint> points() const { return points_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<int> index_;
  std::vector<LatticePoint> points_;
};

// Role of each lattice point relative to the missing region D. Boundary
// points carry a ring number: 1 for axis neighbours of an unknown, 2 for
// points two steps away along an axis (reached only by the 13-point stencil).
class CellClassification {
 public:
  CellClassification(int width, int height, std::vector<CellRole> roles,
                     std::vector<std::uint8_t> rings);

  int width() const { return width_; }
  int height() const { return height_; }

  bool contains(LatticePoint p) const {
    return p.i >= 0 && p.j >= 0 && p.i < width_ && p.j < height_;
  }
  int linear(LatticePoint p) const { return p.j * width_ + p.i; }

  CellRole role(LatticePoint p) const { return roles_[linear(p)]; }
  // 0 for non-boundary points.
  int ring(LatticePoint p) const { return rings_[linear(p)]; }
  bool is_unknown(LatticePoint p) const {
    return contains(p) && role(p) == CellRole::UnknownInterior;
  }
  bool is_known(LatticePoint p) const {
    return contains(p) && role(p) != CellRole::UnknownInterior;
  }

  std::span<const CellRole> roles() const { return roles_; }
  int n_unknown() const { return index_map_.size(); }
  int n_boundary() const { return n_ring1_ + n_ring2_; }
  int n_ring1() const { return n_ring1_; }
  int n_ring2() const { return n_ring2_; }
  const IndexMap& index_map() const { return index_map_; }

 private:
  int width_;
  int height_;
  std::vector<CellRole> roles_;
  std::vector<std::uint8_t> rings_;
  IndexMap index_map_;
  int n_ring1_ = 0;
  int n_ring2_ = 0;
};

// Rectangular hole filling the lattice interior.
//
// collar == 0: every strictly interior point is unknown and every lattice-edge
// point (corners included) is a ring-1 boundary point.
// collar >= 1: the hole is the interior of the square inset by `collar` cells;
// rings are then derived from the hole exactly as classify_mask does, so a
// collar of 1 provides the ring-2 values the 13-point stencil reads.
CellClassification classify_rect_hole(const Grid2D& grid, int collar = 0);

// Per-pixel missing flags, row-major, nonzero = missing.
using Mask = std::vector<std::uint8_t>;

// Missing pixels become unknowns. Throws InvalidArgument when a missing pixel
// lies within 2 pixels of the image edge or the mask has the wrong size.
CellClassification classify_mask(int width, int height, std::span<const std::uint8_t> mask);

}  // namespace surfex
