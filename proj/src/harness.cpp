#include "surfex/harness.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <ostream>
#include <string>

#include "surfex/errors.hpp"

namespace surfex {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class CubicSurface final : public Surface {
 public:
  double value(double x, double y) const override { return x * y + x * x * (y + 1.0); }
  double laplacian_power(int k, double x, double y) const override {
    if (k == 0) return value(x, y);
    return k == 1 ? 2.0 * (y + 1.0) : 0.0;
  }
  std::array<double, 2> gradient(double x, double y) const override {
    return {y + 2.0 * x * (y + 1.0), x + x * x};
  }
};

// (1 + cos x + cos y + cos x cos y) / 4; each cosine is an eigenfunction of
// the Laplacian, so Delta^k has a closed form.
class CosineSurface final : public Surface {
 public:
  double value(double x, double y) const override {
    return (1.0 + std::cos(x)) * (1.0 + std::cos(y)) / 4.0;
  }
  double laplacian_power(int k, double x, double y) const override {
    if (k == 0) return value(x, y);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const double cx = std::cos(x);
    const double cy = std::cos(y);
    return (sign * (cx + cy) + std::pow(-2.0, k) * cx * cy) / 4.0;
  }
  std::array<double, 2> gradient(double x, double y) const override {
    return {-std::sin(x) * (1.0 + std::cos(y)) / 4.0, -(1.0 + std::cos(x)) * std::sin(y) / 4.0};
  }
};

class PlaneSurface final : public Surface {
 public:
  double value(double x, double y) const override { return x + y; }
  double laplacian_power(int k, double x, double y) const override { return k == 0 ? x + y : 0.0; }
  std::array<double, 2> gradient(double, double) const override { return {1.0, 1.0}; }
};

LatticeField sample_known(const RectProblem& problem, const auto& fn) {
  LatticeField out(problem.grid.num_points(), kNaN);
  for (int j = 0; j < problem.grid.points_y(); ++j) {
    for (int i = 0; i < problem.grid.points_x(); ++i) {
      const LatticePoint p{i, j};
      if (problem.cls.is_known(p)) out[problem.grid.linear(p)] = fn(problem.grid.x(i), problem.grid.y(j));
    }
  }
  return out;
}

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

std::string_view to_string(TestFunction fn) {
  switch (fn) {
    case TestFunction::Cubic: return "cubic";
    case TestFunction::Cosine: return "cosine";
    case TestFunction::Plane: return "plane";
  }
  return "unknown";
}

std::unique_ptr<Surface> make_surface(TestFunction fn) {
  switch (fn) {
    case TestFunction::Cubic: return std::make_unique<CubicSurface>();
    case TestFunction::Cosine: return std::make_unique<CosineSurface>();
    case TestFunction::Plane: return std::make_unique<PlaneSurface>();
  }
  throw InvalidArgument("unknown test function");
}

SurfaceSample test_function(TestFunction fn, double x, double y) {
  const auto surface = make_surface(fn);
  const auto grad = surface->gradient(x, y);
  return {surface->value(x, y), surface->laplacian_power(1, x, y), grad[0], grad[1]};
}

RectProblem make_rect_problem(const Surface& surface, double half_width, int n) {
  if (!(half_width > 0.0)) throw InvalidArgument("make_rect_problem: half-width must be positive");
  if (n < 2) throw InvalidArgument("make_rect_problem: n must be >= 2");
  const double h = 2.0 * half_width / n;
  const Rect domain{-half_width, half_width, -half_width, half_width};
  const double outer = half_width + h;
  Grid2D grid = build_grid(Rect{-outer, outer, -outer, outer}, n + 2);
  CellClassification cls = classify_rect_hole(grid, 1);
  RectProblem problem{domain, std::move(grid), std::move(cls), {}, {}};

  problem.exact.resize(problem.grid.num_points());
  for (int k = 0; k < problem.grid.num_points(); ++k) {
    const LatticePoint p = problem.grid.point(k);
    problem.exact[k] = surface.value(problem.grid.x(p.i), problem.grid.y(p.j));
  }
  problem.data.g = sample_known(problem, [&](double x, double y) { return surface.value(x, y); });
  problem.data.f =
      sample_known(problem, [&](double x, double y) { return surface.laplacian_power(1, x, y); });
  DirectionalField q;
  for (Direction d : kDirections) {
    const LatticePoint o = offset(d);
    q[int(d)] = sample_known(problem, [&](double x, double y) {
      const auto grad = surface.gradient(x, y);
      return grad[0] * o.i + grad[1] * o.j;
    });
  }
  problem.data.q = std::move(q);
  return problem;
}

std::vector<LatticeField> laplacian_traces(const Surface& surface, const RectProblem& problem,
                                           int order) {
  if (order < 1) throw InvalidArgument("laplacian_traces: order must be >= 1");
  std::vector<LatticeField> traces;
  for (int k = order - 1; k >= 0; --k) {
    traces.push_back(
        sample_known(problem, [&](double x, double y) { return surface.laplacian_power(k, x, y); }));
  }
  return traces;
}

CompletedField complete_rect_problem(const Surface& surface, const RectProblem& problem,
                                     SchemeKind kind, int order, const StudyOptions& options) {
  const auto& [domain, grid, cls, data, exact] = problem;
  switch (kind) {
    case SchemeKind::Harmonic:
      return complete_harmonic(cls, grid, data.g, options.solver);
    case SchemeKind::BiharmonicL:
      return complete_biharmonic_laplacian(cls, grid, data.g, *data.f, options.solver);
    case SchemeKind::BiharmonicN:
      return complete_biharmonic_normal(cls, grid, data, options.solver, options.stencil);
    case SchemeKind::PolyharmonicL:
      return complete_polyharmonic_laplacian(cls, grid, laplacian_traces(surface, problem, order),
                                             options.solver);
  }
  throw InvalidArgument("complete_rect_problem: unknown scheme");
}

OrderEstimate estimate_order(std::span<const double> errors) {
  if (errors.size() < 2) throw InvalidArgument("estimate_order: need at least two errors");
  std::vector<double> logs;
  for (double e : errors) {
    if (!(e > 0.0) || !std::isfinite(e)) {
      throw InvalidArgument("estimate_order: errors must be finite and positive");
    }
    logs.push_back(std::log2(e));
  }
  OrderEstimate out;
  for (std::size_t k = 0; k + 1 < logs.size(); ++k) out.pairwise.push_back(logs[k] - logs[k + 1]);

  const double m = double(logs.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t k = 0; k < logs.size(); ++k) {
    mean_x += double(k) / m;
    mean_y += logs[k] / m;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < logs.size(); ++k) {
    sxy += (double(k) - mean_x) * (logs[k] - mean_y);
    sxx += (double(k) - mean_x) * (double(k) - mean_x);
  }
  out.least_squares = -sxy / sxx;
  return out;
}

ConvergenceReport run_convergence_study(TestFunction fn, int i_max, int n,
                                        const StudyOptions& options) {
  if (i_max < 0 || i_max > kMaxStudyLevel) {
    throw InvalidArgument("run_convergence_study: i_max must be in 0.." + std::to_string(kMaxStudyLevel));
  }
  if (n < 10) throw InvalidArgument("run_convergence_study: n must be >= 10");

  ConvergenceReport report;
  report.function = fn;
  report.n = n;
  report.floor_threshold = 10.0 * options.solver.tol;

  constexpr std::array<SchemeKind, kColumns> kSchemes = {SchemeKind::Harmonic, SchemeKind::BiharmonicL,
                                                         SchemeKind::BiharmonicN};
  std::vector<std::future<ConvergenceRow>> pending;
  for (int i = 0; i <= i_max; ++i) {
    pending.push_back(std::async(std::launch::async, [=, &options, &report] {
      const auto surface = make_surface(fn);
      ConvergenceRow row;
      row.i = i;
      row.half_width = std::ldexp(1.0, -i);
      row.d = std::ldexp(1.0, 1 - i);
      const RectProblem problem = make_rect_problem(*surface, row.half_width, n);
      for (int c = 0; c < kColumns; ++c) {
        const CompletedField field = complete_rect_problem(*surface, problem, kSchemes[c], 2, options);
        const double e = sup_error(field, problem.cls, problem.exact);
        row.error[c] = e;
        row.log2_error[c] = std::log2(std::max(e, std::numeric_limits<double>::denorm_min()));
        row.floor[c] = e < report.floor_threshold;
      }
      return row;
    }));
  }
  for (auto& f : pending) report.rows.push_back(f.get());

  for (int c = 0; c < kColumns; ++c) {
    std::vector<double> usable;
    for (const auto& row : report.rows) {
      if (!row.floor[c]) usable.push_back(row.error[c]);
    }
    if (usable.size() >= 2) report.orders[c] = estimate_order(usable);
  }
  return report;
}

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report) {
  static constexpr std::array<const char*, kColumns> kNames = {"u_H", "u_L", "u_N"};
  std::string s = "i,d,log2_err_uh,log2_err_ul,log2_err_un\n";
  for (const auto& row : report.rows) {
    s += std::to_string(row.i) + "," + format("%.10g", row.d);
    for (double v : row.log2_error) s += "," + format("%.4f", v);
    s += "\n";
  }
  s += "# function=" + std::string(to_string(report.function)) + " n=" + std::to_string(report.n) +
       " error=sup over unknowns floor_threshold=" + format("%.3g", report.floor_threshold) + "\n";
  s += "# d = 2^(1-i) is the side length of D_i = [-2^-i, 2^-i]^2; its Euclidean diameter is "
       "sqrt(2)*d\n";
  for (int c = 0; c < kColumns; ++c) {
    const OrderEstimate& o = report.orders[c];
    s += std::string("# order ") + kNames[c] + ":";
    if (o.pairwise.empty()) {
      s += " n/a (fewer than two rows above the solver floor)\n";
      continue;
    }
    s += " pairwise";
    for (double v : o.pairwise) s += " " + format("%.3f", v);
    s += " least_squares " + format("%.3f", o.least_squares) + "\n";
    std::string floors;
    for (const auto& row : report.rows) {
      if (row.floor[c]) floors += " " + std::to_string(row.i);
    }
    if (!floors.empty()) s += std::string("# floor ") + kNames[c] + ": i =" + floors + "\n";
  }
  out << s;
}

void write_field_csv(std::ostream& out, const CompletedField& field, const CellClassification& cls,
                     const Rect& region) {
  const Grid2D& grid = field.grid;
  const double slack = 1e-9 * grid.h();
  std::string s = "x,y,value,known\n";
  char buf[128];
  for (int j = 0; j < grid.points_y(); ++j) {
    const double y = grid.y(j);
    if (y < region.y_min - slack || y > region.y_max + slack) continue;
    for (int i = 0; i < grid.points_x(); ++i) {
      const double x = grid.x(i);
      if (x < region.x_min - slack || x > region.x_max + slack) continue;
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d\n", x, y, field.values[grid.linear({i, j})],
                    cls.is_known({i, j}) ? 1 : 0);
      s += buf;
    }
  }
  out << s;
}

}  // namespace surfex
