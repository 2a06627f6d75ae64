#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "surfex/assembly.hpp"
#include "surfex/grid.hpp"
#include "surfex/solver.hpp"

namespace surfex {

enum class SchemeKind { Harmonic, BiharmonicL, BiharmonicN, PolyharmonicL };

struct SchemeTag {
  SchemeKind kind = SchemeKind::Harmonic;
  int order = 1;  // polyharmonic order n (Delta^n u = 0)

  friend bool operator==(const SchemeTag&, const SchemeTag&) = default;
};

std::string_view to_string(SchemeKind kind);

// Lattice values after completion: known points keep their input value,
// unknowns hold the scheme's solution.
struct CompletedField {
  Grid2D grid;
  std::vector<double> values;
  SchemeTag scheme;
  std::vector<SolveStats> stats;  // one per linear solve

  int total_iterations() const;
};

// Delta u = 0 in D, u = g on the boundary.
CompletedField complete_harmonic(const CellClassification& cls, const Grid2D& grid,
                                 std::span<const double> g, const SolverOptions& solver = {});

// Two-stage cascade: Delta v = 0, v = f on S; then Delta u = v, u = g on S.
CompletedField complete_biharmonic_laplacian(const CellClassification& cls, const Grid2D& grid,
                                             std::span<const double> g, std::span<const double> f,
                                             const SolverOptions& solver = {});

// traces[k] holds Delta^(n-1-k) u0 on the boundary, so the last entry is u0
// itself. Solves v_0 = 0, Delta v_i = v_{i-1} with v_i = traces[i-1] on S.
CompletedField complete_polyharmonic_laplacian(const CellClassification& cls, const Grid2D& grid,
                                               std::span<const LatticeField> traces,
                                               const SolverOptions& solver = {});

// 13-point bilaplacian with values g and outward normal derivatives q.
CompletedField complete_biharmonic_normal(const CellClassification& cls, const Grid2D& grid,
                                          const BoundaryData& data,
                                          const SolverOptions& solver = {},
                                          const BiharmonicOptions& stencil = {});

// max |values - exact| over the unknowns of cls.
double sup_error(const CompletedField& field, const CellClassification& cls,
                 std::span<const double> exact);

}  // namespace surfex
