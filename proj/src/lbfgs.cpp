#include "sensorpress/lbfgs.hpp"

#include <cmath>
#include <deque>

#include "sensorpress/errors.hpp"

namespace sensorpress {

namespace {

struct CurvaturePair {
  VectorXd s;
  VectorXd y;
  double rho;  // 1 / (y . s)
};

// Standard two-loop recursion; returns the search direction -H*g.
VectorXd apply_inverse_hessian(const std::deque<CurvaturePair>& memory, const VectorXd& grad) {
  VectorXd q = grad;
  std::vector<double> alpha(memory.size());
  for (std::size_t i = memory.size(); i-- > 0;) {
    alpha[i] = memory[i].rho * memory[i].s.dot(q);
    q -= alpha[i] * memory[i].y;
  }
  if (!memory.empty()) {
    const CurvaturePair& last = memory.back();
    const double gamma = last.s.dot(last.y) / last.y.squaredNorm();
    q *= gamma;
  }
  for (std::size_t i = 0; i < memory.size(); ++i) {
    const double beta = memory[i].rho * memory[i].y.dot(q);
    q += (alpha[i] - beta) * memory[i].s;
  }
  return -q;
}

}  // namespace

LbfgsResult lbfgs_minimize(const Objective& objective, VectorXd x0, const LbfgsOptions& options,
                           const IterationObserver& observer) {
  VectorXd x = std::move(x0);
  VectorXd grad(x.size());
  double fx = objective(x, grad);
  if (!std::isfinite(fx) || !grad.allFinite()) {
    throw TrainingError(0, "non-finite cost or gradient at the starting point");
  }

  std::deque<CurvaturePair> memory;
  std::deque<double> recent_costs{fx};

  LbfgsResult result;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    const double grad_norm = grad.norm();
    if (grad_norm <= options.grad_tolerance * std::max(1.0, x.norm())) {
      result.status = LbfgsStatus::converged_gradient;
      break;
    }

    VectorXd direction = apply_inverse_hessian(memory, grad);
    double directional = direction.dot(grad);
    if (!(directional < 0.0)) {
      direction = -grad;  // fall back to steepest descent
      directional = -grad.squaredNorm();
    }

    // First step is scaled so the initial probe is not wildly long.
    double step = memory.empty() ? std::min(1.0, 1.0 / grad_norm) : 1.0;

    VectorXd x_next;
    VectorXd grad_next(x.size());
    double fx_next = fx;
    bool accepted = false;
    for (int trial = 0; trial < options.max_line_search; ++trial) {
      x_next = x + step * direction;
      fx_next = objective(x_next, grad_next);
      if (!std::isfinite(fx_next) || !grad_next.allFinite()) {
        throw TrainingError(iter, "non-finite cost or gradient during line search");
      }
      if (fx_next <= fx + options.sufficient_decrease * step * directional) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      result.status = LbfgsStatus::line_search_failed;
      break;
    }

    CurvaturePair pair;
    pair.s = x_next - x;
    pair.y = grad_next - grad;
    const double sy = pair.s.dot(pair.y);
    if (sy > 1e-12 * pair.s.norm() * pair.y.norm()) {
      pair.rho = 1.0 / sy;
      memory.push_back(std::move(pair));
      if (static_cast<int>(memory.size()) > options.history) memory.pop_front();
    }

    x = std::move(x_next);
    grad = std::move(grad_next);
    fx = fx_next;
    result.iterations = iter;
    if (observer) observer(iter, x, fx);

    recent_costs.push_back(fx);
    if (static_cast<int>(recent_costs.size()) > options.tolerance_window + 1) {
      recent_costs.pop_front();
    }
    if (options.rel_tolerance > 0.0 &&
        static_cast<int>(recent_costs.size()) == options.tolerance_window + 1) {
      const double past = recent_costs.front();
      const double improvement = (past - fx) / std::max(std::abs(past), 1e-30);
      if (improvement < options.rel_tolerance) {
        result.status = LbfgsStatus::converged_tolerance;
        break;
      }
    }
    if (iter == options.max_iterations) {
      result.status = LbfgsStatus::reached_max_iterations;
    }
  }

  result.x = std::move(x);
  result.fx = fx;
  return result;
}

}  // namespace sensorpress
