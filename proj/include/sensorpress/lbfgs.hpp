#pragma once

#include <functional>

#include "sensorpress/types.hpp"

namespace sensorpress {

// Limited-memory BFGS with backtracking line search (sufficient decrease).
// Full-batch, single-threaded, deterministic.
struct LbfgsOptions {
  int history = 10;
  int max_iterations = 400;
  int max_line_search = 40;
  double sufficient_decrease = 1e-4;
  double grad_tolerance = 1e-10;   // ||g|| <= tol * max(1, ||x||)
  double rel_tolerance = 1e-7;     // relative cost improvement ...
  int tolerance_window = 5;        // ... over this many consecutive iterations
};

enum class LbfgsStatus {
  converged_tolerance,   // cost improvement fell below rel_tolerance
  converged_gradient,    // gradient norm vanished
  reached_max_iterations,
  line_search_failed,    // no acceptable step; current iterate returned
};

struct LbfgsResult {
  VectorXd x;
  double fx = 0.0;
  int iterations = 0;
  LbfgsStatus status = LbfgsStatus::reached_max_iterations;
};

// Objective fills the gradient and returns the cost.
using Objective = std::function<double(const VectorXd& x, VectorXd& grad)>;

// Called after each accepted step with (iteration, iterate, cost).
using IterationObserver = std::function<void(int, const VectorXd&, double)>;

LbfgsResult lbfgs_minimize(const Objective& objective, VectorXd x0, const LbfgsOptions& options,
                           const IterationObserver& observer = nullptr);

}  // namespace sensorpress
