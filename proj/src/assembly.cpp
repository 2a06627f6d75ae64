#include "surfex/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include "surfex/errors.hpp"

namespace surfex {

namespace {

std::string describe(LatticePoint p) {
  return "(" + std::to_string(p.i) + ", " + std::to_string(p.j) + ")";
}

void check_shapes(const CellClassification& cls, const Grid2D& grid) {
  if (cls.width() != grid.points_x() || cls.height() != grid.points_y()) {
    throw InvalidArgument("assembly: classification and grid have different shapes");
  }
}

double known_value(std::span<const double> field, const CellClassification& cls, LatticePoint p,
                   const char* what) {
  const double v = field[cls.linear(p)];
  if (!std::isfinite(v)) {
    throw InvalidArgument(std::string("assembly: missing ") + what + " at " + describe(p));
  }
  return v;
}

Direction direction_of(int di, int dj) {
  if (di > 0) return Direction::East;
  if (di < 0) return Direction::West;
  if (dj > 0) return Direction::North;
  return Direction::South;
}

}  // namespace

SparseSystem::SparseSystem(int size, std::vector<Entry> triplets, std::vector<double> rhs)
    : size_(size), rhs_(std::move(rhs)) {
  if (size < 0 || rhs_.size() != std::size_t(size)) {
    throw InvalidArgument("SparseSystem: right-hand side length does not match size");
  }
  for (const auto& e : triplets) {
    if (e.row < 0 || e.col < 0 || e.row >= size || e.col >= size) {
      throw InvalidArgument("SparseSystem: entry index out of range");
    }
  }
  std::stable_sort(triplets.begin(), triplets.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  row_offsets_.assign(std::size_t(size) + 1, 0);
  for (std::size_t k = 0; k < triplets.size();) {
    const Entry& first = triplets[k];
    double sum = 0.0;
    std::size_t m = k;
    for (; m < triplets.size() && triplets[m].row == first.row && triplets[m].col == first.col; ++m) {
      sum += triplets[m].value;
    }
    cols_.push_back(first.col);
    values_.push_back(sum);
    ++row_offsets_[first.row + 1];
    k = m;
  }
  for (int r = 0; r < size; ++r) row_offsets_[r + 1] += row_offsets_[r];
}

std::vector<SparseSystem::Entry> SparseSystem::entries() const {
  std::vector<Entry> out;
  out.reserve(values_.size());
  for (int r = 0; r < size_; ++r) {
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) out.push_back({r, cols_[k], values_[k]});
  }
  return out;
}

double SparseSystem::coefficient(int row, int col) const {
  if (row < 0 || row >= size_) return 0.0;
  const auto first = cols_.begin() + row_offsets_[row];
  const auto last = cols_.begin() + row_offsets_[row + 1];
  const auto it = std::lower_bound(first, last, col);
  return (it != last && *it == col) ? values_[it - cols_.begin()] : 0.0;
}

void SparseSystem::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != std::size_t(size_) || y.size() != std::size_t(size_)) {
    throw InvalidArgument("SparseSystem::multiply: length mismatch");
  }
  for (int r = 0; r < size_; ++r) {
    double acc = 0.0;
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) acc += values_[k] * x[cols_[k]];
    y[r] = acc;
  }
}

bool SparseSystem::is_symmetric(double rel_tol) const {
  for (int r = 0; r < size_; ++r) {
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      const double a = values_[k];
      const double b = coefficient(cols_[k], r);
      if (std::abs(a - b) > rel_tol * std::max(std::abs(a), std::abs(b))) return false;
    }
  }
  return true;
}

SparseSystem SparseSystem::negated() const {
  SparseSystem out = *this;
  for (double& v : out.values_) v = -v;
  for (double& v : out.rhs_) v = -v;
  return out;
}

LatticePoint offset(Direction d) {
  switch (d) {
    case Direction::East: return {1, 0};
    case Direction::West: return {-1, 0};
    case Direction::North: return {0, 1};
    case Direction::South: return {0, -1};
  }
  return {0, 0};
}

void validate_boundary_data(const BoundaryData& data, const CellClassification& cls) {
  const std::size_t n = std::size_t(cls.width()) * cls.height();
  auto check = [&](const LatticeField& field, const char* name) {
    if (field.size() != n) throw InvalidArgument(std::string("boundary data: ") + name + " has wrong size");
    for (int j = 0; j < cls.height(); ++j) {
      for (int i = 0; i < cls.width(); ++i) {
        const LatticePoint p{i, j};
        if (cls.ring(p) == 1 && !std::isfinite(field[cls.linear(p)])) {
          throw InvalidArgument(std::string("boundary data: ") + name + " missing at ring-1 point " +
                                describe(p));
        }
      }
    }
  };
  check(data.g, "g");
  if (data.f) check(*data.f, "f");
  if (data.q) {
    for (const auto& field : *data.q) {
      if (field.size() != n) throw InvalidArgument("boundary data: q has wrong size");
    }
  }
}

double laplacian_5pt_apply(std::span<const double> values, const Grid2D& grid, LatticePoint p) {
  if (values.size() != std::size_t(grid.num_points())) {
    throw InvalidArgument("laplacian_5pt_apply: field size does not match the grid");
  }
  if (p.i < 1 || p.j < 1 || p.i >= grid.nx() || p.j >= grid.ny()) {
    throw InvalidArgument("laplacian_5pt_apply: point " + describe(p) + " is on the lattice edge");
  }
  const double h2 = grid.h() * grid.h();
  const auto u = [&](int di, int dj) { return values[grid.linear({p.i + di, p.j + dj})]; };
  return (u(1, 0) + u(-1, 0) + u(0, 1) + u(0, -1) - 4.0 * u(0, 0)) / h2;
}

SparseSystem assemble_poisson(const CellClassification& cls, const Grid2D& grid,
                              std::span<const double> rhs, std::span<const double> dirichlet) {
  check_shapes(cls, grid);
  const IndexMap& map = cls.index_map();
  if (rhs.size() != std::size_t(map.size())) {
    throw InvalidArgument("assemble_poisson: rhs needs one value per unknown");
  }
  if (dirichlet.size() != std::size_t(grid.num_points())) {
    throw InvalidArgument("assemble_poisson: Dirichlet field size does not match the grid");
  }
  const double inv_h2 = 1.0 / (grid.h() * grid.h());

  std::vector<SparseSystem::Entry> triplets;
  triplets.reserve(std::size_t(map.size()) * 5);
  std::vector<double> b(rhs.begin(), rhs.end());
  for (int row = 0; row < map.size(); ++row) {
    const LatticePoint p = map.point(row);
    triplets.push_back({row, row, -4.0 * inv_h2});
    for (Direction d : kDirections) {
      const LatticePoint q = p + offset(d);
      const int col = map.index_of(q);
      if (col >= 0) {
        triplets.push_back({row, col, inv_h2});
      } else {
        b[row] -= known_value(dirichlet, cls, q, "boundary value") * inv_h2;
      }
    }
  }
  return SparseSystem(map.size(), std::move(triplets), std::move(b));
}

const std::array<StencilTap, 13> kBilaplacian13 = {{
    {0, 0, 20.0},
    {1, 0, -8.0}, {-1, 0, -8.0}, {0, 1, -8.0}, {0, -1, -8.0},
    {1, 1, 2.0}, {1, -1, 2.0}, {-1, 1, 2.0}, {-1, -1, 2.0},
    {2, 0, 1.0}, {-2, 0, 1.0}, {0, 2, 1.0}, {0, -2, 1.0},
}};

SparseSystem assemble_biharmonic_13pt(const CellClassification& cls, const Grid2D& grid,
                                      const BoundaryData& data, const BiharmonicOptions& options) {
  check_shapes(cls, grid);
  const IndexMap& map = cls.index_map();
  if (data.g.size() != std::size_t(grid.num_points())) {
    throw InvalidArgument("assemble_biharmonic_13pt: g size does not match the grid");
  }
  const double h = grid.h();
  const double inv_h4 = 1.0 / (h * h * h * h);

  std::vector<SparseSystem::Entry> triplets;
  triplets.reserve(std::size_t(map.size()) * 13);
  std::vector<double> b(map.size(), 0.0);
  for (int row = 0; row < map.size(); ++row) {
    const LatticePoint p = map.point(row);
    for (const StencilTap& tap : kBilaplacian13) {
      const LatticePoint t{p.i + tap.di, p.j + tap.dj};
      const double w = tap.weight * inv_h4;
      const int col = map.index_of(t);
      if (col >= 0) {
        triplets.push_back({row, col, w});
        continue;
      }
      const bool far_axis = (tap.di == 0) != (tap.dj == 0) && std::abs(tap.di + tap.dj) == 2;
      bool ghost = false;
      LatticePoint q{};
      if (far_axis) {
        q = {p.i + tap.di / 2, p.j + tap.dj / 2};
        ghost = !cls.contains(t) || (options.strict_paper_stencil && cls.is_known(q));
      }
      if (!ghost) {
        if (!cls.contains(t)) {
          throw InvalidArgument("assemble_biharmonic_13pt: stencil leaves the lattice at " +
                                describe(p));
        }
        b[row] -= w * known_value(data.g, cls, t, "value g");
        continue;
      }
      if (!data.q) {
        throw InvalidArgument("assemble_biharmonic_13pt: normal derivative q required at " +
                              describe(q));
      }
      const Direction dir = direction_of(tap.di, tap.dj);
      const double gq = known_value(data.g, cls, q, "value g");
      const double qq = known_value((*data.q)[int(dir)], cls, q, "normal derivative q");
      b[row] -= w * (gq + h * qq);
    }
  }
  return SparseSystem(map.size(), std::move(triplets), std::move(b));
}

void write_matrix_market(std::ostream& out, const SparseSystem& system) {
  std::ostringstream s;
  s.precision(17);
  s << "%%MatrixMarket matrix coordinate real general\n";
  s << system.size() << ' ' << system.size() << ' ' << system.nonzeros() << '\n';
  for (const auto& e : system.entries()) s << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value << '\n';
  out << s.str();
}

void write_matrix_market_rhs(std::ostream& out, const SparseSystem& system) {
  std::ostringstream s;
  s.precision(17);
  s << "%%MatrixMarket matrix array real general\n";
  s << system.size() << " 1\n";
  for (double v : system.rhs()) s << v << '\n';
  out << s.str();
}

}  // namespace surfex
