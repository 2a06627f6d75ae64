#include "surfex/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace surfex {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

std::string_view to_string(SolveMethod method) {
  return method == SolveMethod::DenseDirect ? "dense" : "cg";
}

double residual_norm(const SparseSystem& system, std::span<const double> x) {
  if (x.size() != std::size_t(system.size())) {
    throw InvalidArgument("residual_norm: solution length " + std::to_string(x.size()) +
                          " does not match system size " + std::to_string(system.size()));
  }
  std::vector<double> r(x.size());
  system.multiply(x, r);
  const auto b = system.rhs();
  for (std::size_t k = 0; k < r.size(); ++k) r[k] -= b[k];
  return norm2(r) / std::max(norm2(b), 1.0);
}

Solution solve_dense(const SparseSystem& system) {
  const auto start = Clock::now();
  const int n = system.size();
  if (n > kDenseSizeLimit) {
    throw SolverError("solve_dense: " + std::to_string(n) + " unknowns exceeds the dense limit of " +
                      std::to_string(kDenseSizeLimit));
  }
  Solution out;
  out.stats.method = SolveMethod::DenseDirect;
  if (n == 0) return out;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : system.entries()) a(e.row, e.col) = e.value;
  const auto rhs = system.rhs();
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(rhs.data(), n);

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
  const double largest = pivots.maxCoeff();
  if (!(largest > 0.0) || pivots.minCoeff() <= n * std::numeric_limits<double>::epsilon() * largest) {
    throw SolverError("solve_dense: matrix is singular to working precision");
  }
  Eigen::VectorXd x = lu.solve(b);
  // One step of iterative refinement.
  const Eigen::VectorXd r = b - a * x;
  x += lu.solve(r);

  out.x.assign(x.data(), x.data() + n);
  out.stats.relative_residual = residual_norm(system, out.x);
  out.stats.wall_time = seconds_since(start);
  return out;
}

Solution solve_cg(const SparseSystem& input, double tol, int max_iter, Preconditioner precond) {
  const auto start = Clock::now();
  const int n = input.size();
  Solution out;
  out.stats.method = SolveMethod::CG;
  if (n == 0) return out;
  if (!(tol > 0.0)) throw InvalidArgument("solve_cg: tolerance must be positive");
  if (max_iter <= 0) max_iter = 10 * n;

  if (!input.is_symmetric(1e-12)) throw SolverError("solve_cg: matrix is not symmetric");
  int negative = 0;
  for (int r = 0; r < n; ++r) {
    const double d = input.diagonal(r);
    if (d == 0.0) throw SolverError("solve_cg: zero diagonal in row " + std::to_string(r));
    if (d < 0.0) ++negative;
  }
  if (negative != 0 && negative != n) throw SolverError("solve_cg: diagonal has mixed signs");
  const SparseSystem system = negative == n ? input.negated() : input;

  std::vector<double> inv_diag(n, 1.0);
  if (precond == Preconditioner::Jacobi) {
    for (int r = 0; r < n; ++r) inv_diag[r] = 1.0 / system.diagonal(r);
  }

  const auto b = system.rhs();
  const double scale = std::max(norm2(b), 1.0);
  std::vector<double> x(n, 0.0), r(b.begin(), b.end()), z(n), p(n), ap(n);
  for (int k = 0; k < n; ++k) z[k] = inv_diag[k] * r[k];
  p = z;
  double rz = dot(r, z);

  Solution best;
  best.x = x;
  best.stats.method = SolveMethod::CG;
  best.stats.relative_residual = norm2(r) / scale;
  if (best.stats.relative_residual <= tol) {
    best.stats.wall_time = seconds_since(start);
    return best;
  }

  for (int it = 1; it <= max_iter; ++it) {
    system.multiply(p, ap);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) throw SolverError("solve_cg: matrix is not definite");
    const double alpha = rz / pap;
    for (int k = 0; k < n; ++k) {
      x[k] += alpha * p[k];
      r[k] -= alpha * ap[k];
    }
    double rel = norm2(r) / scale;
    if (rel <= tol) {
      // Confirm against the true residual; on drift restart the recurrence.
      system.multiply(x, ap);
      for (int k = 0; k < n; ++k) r[k] = b[k] - ap[k];
      rel = norm2(r) / scale;
      if (rel <= tol) {
        out.x = std::move(x);
        out.stats.iterations = it;
        out.stats.relative_residual = rel;
        out.stats.wall_time = seconds_since(start);
        return out;
      }
      for (int k = 0; k < n; ++k) z[k] = inv_diag[k] * r[k];
      p = z;
      rz = dot(r, z);
    } else {
      for (int k = 0; k < n; ++k) z[k] = inv_diag[k] * r[k];
      const double rz_next = dot(r, z);
      const double beta = rz_next / rz;
      rz = rz_next;
      for (int k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
    }
    if (rel < best.stats.relative_residual) {
      best.x = x;
      best.stats.relative_residual = rel;
      best.stats.iterations = it;
    }
  }
  best.stats.relative_residual = residual_norm(input, best.x);
  best.stats.wall_time = seconds_since(start);
  throw MaxIterationsError("solve_cg: no convergence to " + std::to_string(tol) + " within " +
                               std::to_string(max_iter) + " iterations",
                           std::move(best));
}

Solution solve(const SparseSystem& system, const SolverOptions& options) {
  if (options.method == SolveMethod::DenseDirect) return solve_dense(system);
  return solve_cg(system, options.tol, options.max_iter, options.precond);
}

}  // namespace surfex
