#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "surfex/assembly.hpp"
#include "surfex/errors.hpp"

namespace surfex {

enum class SolveMethod { DenseDirect, CG };
enum class Preconditioner { None, Jacobi };

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
  SolveMethod method = SolveMethod::CG;
  double wall_time = 0.0;  // seconds
};

struct Solution {
  std::vector<double> x;
  SolveStats stats;
};

struct SolverOptions {
  SolveMethod method = SolveMethod::CG;
  double tol = 1e-12;
  int max_iter = 0;  // 0 selects 10 * n_unknown
  Preconditioner precond = Preconditioner::None;
};

// CG ran out of iterations; carries the iterate with the smallest residual.
class MaxIterationsError : public SolverError {
 public:
  MaxIterationsError(const std::string& what, Solution best)
      : SolverError(what), best_(std::move(best)) {}
  const Solution& best() const { return best_; }

 private:
  Solution best_;
};

inline constexpr int kDenseSizeLimit = 20000;

// ||A x - b||_2 / max(||b||_2, 1).
double residual_norm(const SparseSystem& system, std::span<const double> x);

// LU with partial pivoting on the densified matrix.
Solution solve_dense(const SparseSystem& system);

// Conjugate gradients from a zero initial guess. A negative diagonal flips
// the sign of the whole system first. max_iter <= 0 selects 10 * n_unknown.
Solution solve_cg(const SparseSystem& system, double tol, int max_iter,
                  Preconditioner precond = Preconditioner::None);

Solution solve(const SparseSystem& system, const SolverOptions& options);

std::string_view to_string(SolveMethod method);

}  // namespace surfex
