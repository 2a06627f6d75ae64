#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "surfex/assembly.hpp"
#include "surfex/grid.hpp"
#include "surfex/schemes.hpp"
#include "surfex/solver.hpp"

namespace surfex {

// Closed-form test surfaces. Plane (x + y) is harmonic and used as a control.
enum class TestFunction { Cubic, Cosine, Plane };

std::string_view to_string(TestFunction fn);

struct SurfaceSample {
  double value = 0.0;
  double laplacian = 0.0;
  double dx = 0.0;
  double dy = 0.0;
};

// Cubic: xy + x^2 (y + 1).  Cosine: (1 + cos x)(1 + cos y) / 4.
SurfaceSample test_function(TestFunction fn, double x, double y);

// Smooth function with closed-form iterated Laplacians.
class Surface {
 public:
  virtual ~Surface() = default;
  virtual double value(double x, double y) const = 0;
  // Delta^k u at (x, y); k = 0 is the value.
  virtual double laplacian_power(int k, double x, double y) const = 0;
  virtual std::array<double, 2> gradient(double x, double y) const = 0;
};

std::unique_ptr<Surface> make_surface(TestFunction fn);

// Square hole D = [-r, r]^2 with n subdivisions, embedded in a lattice one
// cell wider on each side so the ring-2 values exist. Boundary data is
// sampled from the surface at every known lattice point.
struct RectProblem {
  Rect domain;
  Grid2D grid;
  CellClassification cls;
  BoundaryData data;
  std::vector<double> exact;  // u0 at every lattice point
};

RectProblem make_rect_problem(const Surface& surface, double half_width, int n);

// Traces Delta^(order-1) u0, ..., Delta u0, u0 at the known points of the
// problem, in the order complete_polyharmonic_laplacian expects.
std::vector<LatticeField> laplacian_traces(const Surface& surface, const RectProblem& problem,
                                           int order);

struct StudyOptions {
  SolverOptions solver;
  BiharmonicOptions stencil;
};

// Runs one scheme on a rectangle problem; order is used by PolyharmonicL only.
CompletedField complete_rect_problem(const Surface& surface, const RectProblem& problem,
                                     SchemeKind kind, int order, const StudyOptions& options);

struct OrderEstimate {
  std::vector<double> pairwise;  // log2 e_i - log2 e_{i+1}
  double least_squares = 0.0;    // -slope of the fit of log2 e against i
};

// Throws InvalidArgument on fewer than two errors or a non-positive error.
OrderEstimate estimate_order(std::span<const double> errors);

inline constexpr int kColumns = 3;  // u_H, u_L, u_N

struct ConvergenceRow {
  int i = 0;
  double half_width = 0.0;
  double d = 0.0;  // 2^(1-i), the side length of D_i
  std::array<double, kColumns> error{};
  std::array<double, kColumns> log2_error{};
  std::array<bool, kColumns> floor{};
};

struct ConvergenceReport {
  TestFunction function = TestFunction::Cosine;
  int n = 0;
  double floor_threshold = 0.0;
  std::vector<ConvergenceRow> rows;
  // Fitted over the rows that are not at the solver floor; empty pairwise
  // list when fewer than two such rows exist.
  std::array<OrderEstimate, kColumns> orders;
};

inline constexpr int kMaxStudyLevel = 12;

// D_i = [-2^-i, 2^-i]^2 for i = 0..i_max, fixed n. Rows run concurrently.
ConvergenceReport run_convergence_study(TestFunction fn, int i_max, int n,
                                        const StudyOptions& options = {});

// Header `i,d,log2_err_uh,log2_err_ul,log2_err_un`, one row per level, then
// `#` footer lines.
void write_convergence_csv(std::ostream& out, const ConvergenceReport& report);

// `x,y,value,known` for every lattice point inside `region`.
void write_field_csv(std::ostream& out, const CompletedField& field,
                     const CellClassification& cls, const Rect& region);

}  // namespace surfex
