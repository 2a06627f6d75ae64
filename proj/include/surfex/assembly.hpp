#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surfex/grid.hpp"

namespace surfex {

// Linear system A u = b over the unknowns of a classification. The matrix is
// stored row-compressed, column-sorted within each row, without duplicates.
class SparseSystem {
 public:
  struct Entry {
    int row = 0;
    int col = 0;
    double value = 0.0;
  };

  SparseSystem() = default;
  // Duplicate (row, col) triplets are summed.
  SparseSystem(int size, std::vector<Entry> triplets, std::vector<double> rhs);

  int size() const { return size_; }
  std::size_t nonzeros() const { return values_.size(); }

  std::span<const int> row_offsets() const { return row_offsets_; }
  std::span<const int> cols() const { return cols_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> rhs() const { return rhs_; }

  std::vector<Entry> entries() const;
  // Zero when the entry is not stored.
  double coefficient(int row, int col) const;
  double diagonal(int row) const { return coefficient(row, row); }

  // y = A x, accumulating each row left to right.
  void multiply(std::span<const double> x, std::span<double> y) const;

  bool is_symmetric(double rel_tol = 0.0) const;

  SparseSystem negated() const;

 private:
  int size_ = 0;
  std::vector<int> row_offsets_{0};
  std::vector<int> cols_;
  std::vector<double> values_;
  std::vector<double> rhs_;
};

// Axis directions. North is +j.
enum class Direction { East, West, North, South };
inline constexpr std::array<Direction, 4> kDirections = {Direction::East, Direction::West,
                                                         Direction::North, Direction::South};
LatticePoint offset(Direction d);

// One value per lattice point, row-major. Entries at unknown points are
// ignored; NaN marks "not provided".
using LatticeField = std::vector<double>;

// q[d][p] is the derivative at p along direction d, where d points from the
// adjacent unknown towards p (the outward normal of an axis-aligned edge).
using DirectionalField = std::array<LatticeField, 4>;

// Data supplied at known points.
//   g: values of u0 (ring 1 and ring 2, plus any known point a stencil
//      reaches diagonally);
//   f: Laplacian trace of u0 at ring-1 points;
//   q: outward normal derivative of u0 at ring-1 points.
struct BoundaryData {
  LatticeField g;
  std::optional<LatticeField> f;
  std::optional<DirectionalField> q;
};

// Throws InvalidArgument if a present field has the wrong size, or if g or f
// is not finite at some ring-1 point. q is checked lazily by the assembler,
// which reads it only on ghost taps.
void validate_boundary_data(const BoundaryData& data, const CellClassification& cls);

// (u_E + u_W + u_N + u_S - 4 u_P) / h^2 on a full lattice field.
double laplacian_5pt_apply(std::span<const double> values, const Grid2D& grid, LatticePoint p);

// Rows encode the 5-point Laplacian at each unknown; known neighbours are
// moved to the right-hand side: b = rhs - g~/h^2. `rhs` has one entry per
// unknown, `dirichlet` one per lattice point.
SparseSystem assemble_poisson(const CellClassification& cls, const Grid2D& grid,
                              std::span<const double> rhs, std::span<const double> dirichlet);

struct StencilTap {
  int di;
  int dj;
  double weight;  // multiplied by 1/h^4
};

// Bilaplacian weights {20, -8, 2, 1}.
extern const std::array<StencilTap, 13> kBilaplacian13;

struct BiharmonicOptions {
  // Apply the ghost correction u(Q) + h q(Q) for the far axis tap of every
  // row with a ring-1 neighbour Q, even when that tap is a known point.
  bool strict_paper_stencil = false;
};

// 13-point bilaplacian system with zero right-hand side. Taps on known points
// move to b. A far axis tap that leaves the lattice (or every such tap behind
// a known neighbour Q, in strict mode) is replaced by the ghost value
// g(Q) + h q(Q), contributing -(q(Q)/h^3 + g(Q)/h^4) to b.
SparseSystem assemble_biharmonic_13pt(const CellClassification& cls, const Grid2D& grid,
                                      const BoundaryData& data,
                                      const BiharmonicOptions& options = {});

// MatrixMarket coordinate dump of A (1-based indices, full precision).
void write_matrix_market(std::ostream& out, const SparseSystem& system);
// MatrixMarket array dump of b.
void write_matrix_market_rhs(std::ostream& out, const SparseSystem& system);

}  // namespace surfex
