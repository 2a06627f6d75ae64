#include "surfex/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "surfex/errors.hpp"

namespace surfex {

namespace {

constexpr double kSquareCellTol = 1e-12;

constexpr std::array<LatticePoint, 4> kAxisSteps = {{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

// Derives both boundary rings from the unknown set and validates the result.
CellClassification classify_from_unknowns(int width, int height, std::vector<CellRole> roles) {
  std::vector<std::uint8_t> rings(roles.size(), 0);
  auto at = [width](LatticePoint p) { return p.j * width + p.i; };
  auto inside = [&](LatticePoint p) { return p.i >= 0 && p.j >= 0 && p.i < width && p.j < height; };

  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      const LatticePoint p{i, j};
      if (roles[at(p)] != CellRole::UnknownInterior) continue;
      for (const auto& s : kAxisSteps) {
        const LatticePoint q1 = p + s;
        if (inside(q1) && roles[at(q1)] != CellRole::UnknownInterior) rings[at(q1)] = 1;
      }
    }
  }
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      const LatticePoint p{i, j};
      if (roles[at(p)] != CellRole::UnknownInterior) continue;
      for (const auto& s : kAxisSteps) {
        const LatticePoint q2{p.i + 2 * s.i, p.j + 2 * s.j};
        if (inside(q2) && roles[at(q2)] != CellRole::UnknownInterior && rings[at(q2)] == 0) {
          rings[at(q2)] = 2;
        }
      }
    }
  }
  for (std::size_t k = 0; k < roles.size(); ++k) {
    if (roles[k] != CellRole::UnknownInterior) {
      roles[k] = rings[k] != 0 ? CellRole::Boundary : CellRole::KnownExterior;
    }
  }
  return CellClassification(width, height, std::move(roles), std::move(rings));
}

}  // namespace

Grid2D::Grid2D(const Rect& rect, int nx, int ny) : rect_(rect), nx_(nx), ny_(ny) {
  if (!(rect.x_max > rect.x_min) || !(rect.y_max > rect.y_min)) {
    throw InvalidArgument("grid: empty rectangle");
  }
  if (nx < 2 || ny < 2) throw InvalidArgument("grid: need at least 2 subdivisions per side");
  const double hx = (rect.x_max - rect.x_min) / nx;
  const double hy = (rect.y_max - rect.y_min) / ny;
  if (std::abs(hx - hy) > kSquareCellTol * std::max(hx, hy)) {
    throw InvalidArgument("grid: cells are not square");
  }
  h_ = hx;
}

Grid2D Grid2D::for_image(int width, int height) {
  if (width < 3 || height < 3) throw InvalidArgument("grid: image must be at least 3x3");
  return Grid2D(Rect{0.0, double(width - 1), 0.0, double(height - 1)}, width - 1, height - 1);
}

Grid2D build_grid(const Rect& rect, int n) {
  if (n < 2) throw InvalidArgument("build_grid: n must be >= 2, got " + std::to_string(n));
  const double wx = rect.x_max - rect.x_min;
  const double wy = rect.y_max - rect.y_min;
  if (!(wx > 0) || !(wy > 0) || std::abs(wx - wy) > kSquareCellTol * std::max(wx, wy)) {
    throw InvalidArgument("build_grid: rectangle is not a square");
  }
  return Grid2D(rect, n, n);
}

IndexMap::IndexMap(int width, int height, std::span<const CellRole> roles)
    : width_(width), height_(height), index_(roles.size(), -1) {
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      const int k = j * width + i;
      if (roles[k] == CellRole::UnknownInterior) {
        index_[k] = static_cast<int>(points_.size());
        points_.push_back({i, j});
      }
    }
  }
}

int IndexMap::index_of(LatticePoint p) const {
  if (p.i < 0 || p.j < 0 || p.i >= width_ || p.j >= height_) return -1;
  return index_[p.j * width_ + p.i];
}

CellClassification::CellClassification(int width, int height, std::vector<CellRole> roles,
                                       std::vector<std::uint8_t> rings)
    : width_(width), height_(height), roles_(std::move(roles)), rings_(std::move(rings)) {
  if (width < 1 || height < 1 || roles_.size() != std::size_t(width) * height ||
      rings_.size() != roles_.size()) {
    throw InvalidArgument("classification: size mismatch");
  }
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      const LatticePoint p{i, j};
      const CellRole r = role(p);
      if (r == CellRole::Boundary) {
        if (rings_[linear(p)] == 1) ++n_ring1_;
        else if (rings_[linear(p)] == 2) ++n_ring2_;
        else throw InvalidArgument("classification: boundary point without a ring");
      }
      if (r != CellRole::UnknownInterior) continue;
      for (const auto& s : kAxisSteps) {
        const LatticePoint q = p + s;
        if (!contains(q)) throw InvalidArgument("classification: unknown touches the lattice edge");
        if (role(q) == CellRole::KnownExterior) {
          throw InvalidArgument("classification: unknown adjacent to a non-boundary point");
        }
      }
    }
  }
  index_map_ = IndexMap(width_, height_, roles_);
}

CellClassification classify_rect_hole(const Grid2D& grid, int collar) {
  const int width = grid.points_x();
  const int height = grid.points_y();
  if (collar < 0 || grid.nx() - 2 * collar < 2 || grid.ny() - 2 * collar < 2) {
    throw InvalidArgument("classify_rect_hole: collar leaves no interior");
  }
  std::vector<CellRole> roles(std::size_t(width) * height, CellRole::KnownExterior);
  for (int j = collar + 1; j < height - 1 - collar; ++j) {
    for (int i = collar + 1; i < width - 1 - collar; ++i) {
      roles[j * width + i] = CellRole::UnknownInterior;
    }
  }
  if (collar > 0) return classify_from_unknowns(width, height, std::move(roles));

  std::vector<std::uint8_t> rings(roles.size(), 0);
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      if (i == 0 || j == 0 || i == width - 1 || j == height - 1) {
        roles[j * width + i] = CellRole::Boundary;
        rings[j * width + i] = 1;
      }
    }
  }
  return CellClassification(width, height, std::move(roles), std::move(rings));
}

CellClassification classify_mask(int width, int height, std::span<const std::uint8_t> mask) {
  if (width < 1 || height < 1 || mask.size() != std::size_t(width) * height) {
    throw InvalidArgument("classify_mask: mask size does not match the image");
  }
  std::vector<CellRole> roles(mask.size(), CellRole::KnownExterior);
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      if (!mask[j * width + i]) continue;
      if (i < 2 || j < 2 || i > width - 3 || j > height - 3) {
        throw InvalidArgument("classify_mask: missing pixel (" + std::to_string(i) + ", " +
                              std::to_string(j) + ") is within 2 pixels of the image edge");
      }
      roles[j * width + i] = CellRole::UnknownInterior;
    }
  }
  return classify_from_unknowns(width, height, std::move(roles));
}

}  // namespace surfex
