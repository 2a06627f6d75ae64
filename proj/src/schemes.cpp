#include "surfex/schemes.hpp"

#include <algorithm>
#include <cmath>

#include "surfex/errors.hpp"

namespace surfex {

namespace {

void scatter_unknowns(const CellClassification& cls, std::span<const double> x,
                      std::vector<double>& values) {
  const IndexMap& map = cls.index_map();
  for (int k = 0; k < map.size(); ++k) values[cls.linear(map.point(k))] = x[k];
}

// v_0 = 0; Delta v_i = v_{i-1}, v_i = traces[i-1] on S; the result is v_n.
CompletedField poisson_cascade(const CellClassification& cls, const Grid2D& grid,
                               const std::vector<std::span<const double>>& traces,
                               const SolverOptions& solver, SchemeTag tag) {
  if (traces.empty()) throw InvalidArgument("cascade: at least one trace is required");
  std::vector<double> v(cls.n_unknown(), 0.0);
  CompletedField out{grid, {}, tag, {}};
  for (const auto& trace : traces) {
    const SparseSystem system = assemble_poisson(cls, grid, v, trace);
    Solution stage = solve(system, solver);
    out.stats.push_back(stage.stats);
    v = std::move(stage.x);
  }
  out.values.assign(traces.back().begin(), traces.back().end());
  scatter_unknowns(cls, v, out.values);
  return out;
}

}  // namespace

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Harmonic: return "harmonic";
    case SchemeKind::BiharmonicL: return "biharmonic-l";
    case SchemeKind::BiharmonicN: return "biharmonic-n";
    case SchemeKind::PolyharmonicL: return "polyharmonic-l";
  }
  return "unknown";
}

int CompletedField::total_iterations() const {
  int total = 0;
  for (const auto& s : stats) total += s.iterations;
  return total;
}

CompletedField complete_harmonic(const CellClassification& cls, const Grid2D& grid,
                                 std::span<const double> g, const SolverOptions& solver) {
  return poisson_cascade(cls, grid, {g}, solver, {SchemeKind::Harmonic, 1});
}

CompletedField complete_biharmonic_laplacian(const CellClassification& cls, const Grid2D& grid,
                                             std::span<const double> g, std::span<const double> f,
                                             const SolverOptions& solver) {
  return poisson_cascade(cls, grid, {f, g}, solver, {SchemeKind::BiharmonicL, 2});
}

CompletedField complete_polyharmonic_laplacian(const CellClassification& cls, const Grid2D& grid,
                                               std::span<const LatticeField> traces,
                                               const SolverOptions& solver) {
  std::vector<std::span<const double>> views(traces.begin(), traces.end());
  const int order = static_cast<int>(traces.size());
  return poisson_cascade(cls, grid, views, solver, {SchemeKind::PolyharmonicL, order});
}

CompletedField complete_biharmonic_normal(const CellClassification& cls, const Grid2D& grid,
                                          const BoundaryData& data, const SolverOptions& solver,
                                          const BiharmonicOptions& stencil) {
  const SparseSystem system = assemble_biharmonic_13pt(cls, grid, data, stencil);
  Solution sol = solve(system, solver);
  CompletedField out{grid, data.g, {SchemeKind::BiharmonicN, 2}, {sol.stats}};
  scatter_unknowns(cls, sol.x, out.values);
  return out;
}

double sup_error(const CompletedField& field, const CellClassification& cls,
                 std::span<const double> exact) {
  if (exact.size() != field.values.size()) throw InvalidArgument("sup_error: size mismatch");
  double worst = 0.0;
  for (const LatticePoint& p : cls.index_map().points()) {
    const int k = cls.linear(p);
    worst = std::max(worst, std::abs(field.values[k] - exact[k]));
  }
  return worst;
}

}  // namespace surfex
