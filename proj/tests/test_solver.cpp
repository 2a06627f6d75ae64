#include <doctest.h>

#include <cmath>
#include <random>

#include "surfex/assembly.hpp"
#include "surfex/errors.hpp"
#include "surfex/grid.hpp"
#include "surfex/solver.hpp"

using namespace surfex;

namespace {

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

SparseSystem poisson_system(int n, double (*g)(double, double)) {
  const Grid2D grid = build_grid({-1, 1, -1, 1}, n);
  const auto cls = classify_rect_hole(grid);
  std::vector<double> field(grid.num_points());
  for (int k = 0; k < grid.num_points(); ++k) {
    const auto p = grid.point(k);
    field[k] = g(grid.x(p.i), grid.y(p.j));
  }
  return assemble_poisson(cls, grid, std::vector<double>(cls.n_unknown(), 0.0), field);
}

SparseSystem biharmonic_system(int n) {
  const Grid2D grid = build_grid({-1, 1, -1, 1}, n + 2);
  const auto cls = classify_rect_hole(grid, 1);
  BoundaryData data;
  data.g.resize(grid.num_points());
  for (int k = 0; k < grid.num_points(); ++k) {
    const auto p = grid.point(k);
    data.g[k] = std::cos(grid.x(p.i)) * std::exp(grid.y(p.j));
  }
  return assemble_biharmonic_13pt(cls, grid, data);
}

double plane(double x, double y) { return x + y; }
double wavy(double x, double y) { return std::sin(3 * x) * std::cosh(y); }

}  // namespace

TEST_CASE("scalar system") {
  const double h = 0.5;
  const SparseSystem s(1, {{0, 0, -4.0 / (h * h)}}, {3.0});
  const auto dense = solve_dense(s);
  CHECK(dense.x[0] == doctest::Approx(-3.0 * h * h / 4.0));
  CHECK(dense.stats.iterations == 0);
  CHECK(dense.stats.method == SolveMethod::DenseDirect);
  const auto cg = solve_cg(s, 1e-12, 0);
  CHECK(cg.x[0] == doctest::Approx(-3.0 * h * h / 4.0));
}

TEST_CASE("linear boundary data is reproduced exactly") {
  const auto sys = poisson_system(4, plane);
  const Grid2D grid = build_grid({-1, 1, -1, 1}, 4);
  const auto cls = classify_rect_hole(grid);
  for (const auto& sol : {solve_dense(sys), solve_cg(sys, 1e-12, 0)}) {
    for (int k = 0; k < cls.n_unknown(); ++k) {
      const auto p = cls.index_map().point(k);
      CHECK(std::abs(sol.x[k] - plane(grid.x(p.i), grid.y(p.j))) <= 1e-10);
    }
  }
}

TEST_CASE("dense solve of a random SPD system") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 50;
  std::vector<std::vector<double>> b(n, std::vector<double>(n));
  for (auto& row : b) for (double& v : row) v = u(rng);
  std::vector<SparseSystem::Entry> triplets;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      double acc = r == c ? 1.0 : 0.0;
      for (int k = 0; k < n; ++k) acc += b[k][r] * b[k][c];
      triplets.push_back({r, c, acc});
    }
  }
  std::vector<double> rhs(n);
  for (double& v : rhs) v = u(rng);
  const SparseSystem s(n, triplets, rhs);
  const auto sol = solve_dense(s);
  CHECK(sol.stats.relative_residual <= 1e-10);
  CHECK(residual_norm(s, sol.x) <= 1e-10);
  const auto cg = solve_cg(s, 1e-12, 0);
  CHECK(sup_diff(cg.x, sol.x) <= 1e-8);
}

TEST_CASE("dense solver errors") {
  const SparseSystem singular(2, {{0, 0, 1.0}, {0, 1, 2.0}, {1, 0, 2.0}, {1, 1, 4.0}}, {1.0, 2.0});
  CHECK_THROWS_AS(solve_dense(singular), SolverError);

  std::vector<SparseSystem::Entry> diag;
  for (int k = 0; k <= kDenseSizeLimit; ++k) diag.push_back({k, k, 1.0});
  const SparseSystem huge(kDenseSizeLimit + 1, diag, std::vector<double>(kDenseSizeLimit + 1, 1.0));
  CHECK_THROWS_AS(solve_dense(huge), SolverError);
  // CG handles it.
  CHECK(solve_cg(huge, 1e-12, 0).stats.iterations == 1);
}

TEST_CASE("CG on the identity takes one iteration") {
  const SparseSystem s(4, {{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1.0}, {3, 3, 1.0}}, {1.5, -2.0, 0.25, 8.0});
  const auto sol = solve_cg(s, 1e-12, 0);
  CHECK(sol.stats.iterations == 1);
  CHECK(sol.x == std::vector<double>{1.5, -2.0, 0.25, 8.0});
}

TEST_CASE("CG agrees with the dense oracle") {
  const auto p = poisson_system(10, wavy);
  CHECK(sup_diff(solve_cg(p, 1e-12, 0).x, solve_dense(p).x) <= 1e-8);
  const auto b = biharmonic_system(10);
  CHECK(sup_diff(solve_cg(b, 1e-12, 0).x, solve_dense(b).x) <= 1e-8);
  const auto jacobi = solve_cg(b, 1e-12, 0, Preconditioner::Jacobi);
  CHECK(sup_diff(jacobi.x, solve_dense(b).x) <= 1e-8);
}

TEST_CASE("CG normalizes the sign and is deterministic") {
  const auto p = poisson_system(12, wavy);
  const auto a = solve_cg(p, 1e-12, 0);
  const auto b = solve_cg(p, 1e-12, 0);
  CHECK(a.x == b.x);
  CHECK(a.stats.iterations == b.stats.iterations);
  const auto neg = solve_cg(p.negated(), 1e-12, 0);
  CHECK(neg.x == a.x);
  CHECK(a.stats.iterations <= std::max(10 * p.size(), 1000));
  CHECK(a.stats.relative_residual <= 1e-12);
}

TEST_CASE("CG rejects unsuitable systems") {
  const SparseSystem nonsym(2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 1, 2.0}}, {1.0, 1.0});
  CHECK_THROWS_AS(solve_cg(nonsym, 1e-12, 0), SolverError);
  const SparseSystem mixed(2, {{0, 0, 2.0}, {1, 1, -2.0}}, {1.0, 1.0});
  CHECK_THROWS_AS(solve_cg(mixed, 1e-12, 0), SolverError);
}

TEST_CASE("CG reports MaxIterations with its best iterate") {
  const auto p = poisson_system(10, wavy);
  try {
    solve_cg(p, 1e-12, 2);
    FAIL("expected MaxIterationsError");
  } catch (const MaxIterationsError& e) {
    CHECK(e.best().x.size() == std::size_t(p.size()));
    CHECK(e.best().stats.relative_residual > 1e-12);
    CHECK(e.best().stats.relative_residual < 1.0);
  }
}

TEST_CASE("residual_norm") {
  const auto p = poisson_system(6, wavy);
  const auto x = solve_dense(p).x;
  CHECK(residual_norm(p, x) <= 1e-10);

  const SparseSystem s(2, {{0, 0, 2.0}, {1, 1, 3.0}}, {3.0, 4.0});
  CHECK(residual_norm(s, std::vector<double>{0.0, 0.0}) == doctest::Approx(1.0));

  // x + eps e_1: residual is eps * ||A e_1|| / max(||b||, 1).
  std::vector<double> bumped = x;
  const double eps = 1e-3;
  bumped[0] += eps;
  double col_norm = 0.0, b_norm = 0.0;
  for (int r = 0; r < p.size(); ++r) {
    col_norm += p.coefficient(r, 0) * p.coefficient(r, 0);
    b_norm += p.rhs()[r] * p.rhs()[r];
  }
  const double expected = eps * std::sqrt(col_norm) / std::max(std::sqrt(b_norm), 1.0);
  CHECK(residual_norm(p, bumped) == doctest::Approx(expected).epsilon(1e-6));

  CHECK_THROWS_AS(residual_norm(s, std::vector<double>{1.0}), InvalidArgument);
}
