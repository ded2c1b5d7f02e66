#ifndef MVBU_SOLVER_HPP
#define MVBU_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "mvbu/categorical.hpp"
#include "mvbu/objective.hpp"

// Optimal posteriors for the motivated objective
//
//   F[q] = U[q] + alpha E_q[log p(o|s)] - lambda KL(q || p).
//
// For linear U the maximizer is the tempered posterior
//
//   q*(s) = p(s) exp((c_s + alpha log p(o|s)) / lambda) / Z,
//
// evaluated here in log space. lambda = 0 has its own limit solver; arbitrary
// utilities go through gradient ascent on logits, and a grid search over the
// 2-state simplex serves as a test oracle.

namespace mvbu {

enum class UpdateMethod { closed_form, limit_lambda_zero, numeric, brute_force };

inline std::string_view to_string(UpdateMethod m) {
  switch (m) {
    case UpdateMethod::closed_form: return "closed_form";
    case UpdateMethod::limit_lambda_zero: return "limit_lambda_zero";
    case UpdateMethod::numeric: return "numeric";
    case UpdateMethod::brute_force: return "brute_force";
  }
  return "unknown";
}

template <typename Scalar = double>
struct UpdateResult {
  Categorical<Scalar> posterior;
  ObjectiveBreakdown<Scalar> breakdown;
  UpdateMethod method;
  int iterations = 0;
  Scalar gradient_norm = Scalar(0);
  bool converged = true;
};

struct NumericSolverConfig {
  int max_iterations = 10000;
  double step_size = 0.1;
  double gradient_tolerance = 1e-10;
  double finite_difference_step = 1e-6;

  void validate() const {
    if (max_iterations <= 0) throw InvalidParameter("max_iterations must be positive");
    if (!(step_size > 0.0)) throw InvalidParameter("step_size must be positive");
    if (!(gradient_tolerance > 0.0)) throw InvalidParameter("gradient_tolerance must be positive");
    if (!(finite_difference_step > 0.0)) {
      throw InvalidParameter("finite_difference_step must be positive");
    }
  }
};

/// Thrown by numeric_update when the iteration budget runs out or the line
/// search stalls above tolerance. Carries the best iterate found.
template <typename Scalar = double>
class NotConverged : public SolverError {
 public:
  explicit NotConverged(UpdateResult<Scalar> best)
      : SolverError("numeric solver did not converge after " + std::to_string(best.iterations) +
                    " iterations (gradient norm " + std::to_string(double(best.gradient_norm)) +
                    ")"),
        best_(std::move(best)) {}
  const UpdateResult<Scalar>& best() const { return best_; }

 private:
  UpdateResult<Scalar> best_;
};

namespace detail {

template <typename Scalar>
constexpr Scalar neg_inf() {
  return -std::numeric_limits<Scalar>::infinity();
}

// Exponent g(s) = c_s + alpha log p(o|s), or -inf where the state is excluded
// (outside the prior support, or zero likelihood under alpha > 0).
template <typename Scalar>
Vector<Scalar> update_exponents(const Categorical<Scalar>& prior, const Likelihood<Scalar>& lik,
                                const LinearAffectiveUtility<Scalar>& c, Scalar alpha) {
  require_same_size(prior.size(), lik.size(), "update (likelihood)");
  require_same_size(prior.size(), c.size(), "update (utility)");
  if (!std::isfinite(alpha) || alpha < Scalar(0)) {
    throw InvalidParameter("alpha must be finite and >= 0");
  }
  Vector<Scalar> g(prior.size());
  for (Eigen::Index s = 0; s < prior.size(); ++s) {
    if (prior(s) == Scalar(0) || (alpha > Scalar(0) && lik(s) == Scalar(0))) {
      g(s) = neg_inf<Scalar>();
    } else {
      g(s) = c.coeffs()(s) + weighted(alpha, std::log(lik(s)));
    }
  }
  return g;
}

// Normalized exp(log_w - max). Entries at -inf map to exactly 0, which
// Eigen's vectorized exp does not guarantee.
template <typename Scalar>
Vector<Scalar> normalized_exp(const Vector<Scalar>& log_w) {
  const Scalar top = log_w.maxCoeff();
  Vector<Scalar> w = log_w.unaryExpr([top](Scalar x) { return std::exp(x - top); });
  return w / w.sum();
}

template <typename Scalar>
UpdateResult<Scalar> finish(Vector<Scalar> q, const Categorical<Scalar>& prior,
                            const Likelihood<Scalar>& lik, const AgentParams<Scalar>& params,
                            UpdateMethod method, const Observation& obs = {}) {
  Categorical<Scalar> posterior(std::move(q));
  auto breakdown = objective_value(posterior, prior, lik, params, obs);
  return UpdateResult<Scalar>{std::move(posterior), breakdown, method};
}

}  // namespace detail

/// Closed-form optimum for a linear utility. Requires lambda > 0.
template <typename Scalar>
UpdateResult<Scalar> closed_form_update(const Categorical<Scalar>& prior,
                                        const Likelihood<Scalar>& lik,
                                        const LinearAffectiveUtility<Scalar>& c, Scalar alpha,
                                        Scalar lambda) {
  if (!(lambda > Scalar(0)) || !std::isfinite(lambda)) throw LambdaNonPositive(double(lambda));
  const Vector<Scalar> g = detail::update_exponents(prior, lik, c, alpha);
  const Scalar g_max = g.maxCoeff();
  if (g_max == detail::neg_inf<Scalar>()) {
    throw DegenerateProblem("no state has both prior mass and positive weight");
  }
  // Subtracting g_max before dividing keeps the exponent finite for tiny lambda.
  Vector<Scalar> log_w(prior.size());
  for (Eigen::Index s = 0; s < prior.size(); ++s) {
    log_w(s) = g(s) == detail::neg_inf<Scalar>()
                   ? detail::neg_inf<Scalar>()
                   : std::log(prior(s)) + (g(s) - g_max) / lambda;
  }
  return detail::finish(detail::normalized_exp(log_w), prior, lik,
                        AgentParams<Scalar>(lambda, alpha, c), UpdateMethod::closed_form);
}

/// lambda -> 0+ limit: mass on argmax_s g(s) within the prior support, split
/// in proportion to the prior across ties.
template <typename Scalar>
UpdateResult<Scalar> limit_update(const Categorical<Scalar>& prior, const Likelihood<Scalar>& lik,
                                  const LinearAffectiveUtility<Scalar>& c, Scalar alpha) {
  const Vector<Scalar> g = detail::update_exponents(prior, lik, c, alpha);
  const Scalar g_max = g.maxCoeff();
  if (g_max == detail::neg_inf<Scalar>()) {
    throw DegenerateProblem("prior support has no state with finite weight");
  }
  const Scalar tie = Scalar(1e-12) * std::max(Scalar(1), std::abs(g_max));
  Vector<Scalar> q = Vector<Scalar>::Zero(prior.size());
  for (Eigen::Index s = 0; s < prior.size(); ++s) {
    if (g(s) >= g_max - tie) q(s) = prior(s);
  }
  q /= q.sum();
  return detail::finish(std::move(q), prior, lik, AgentParams<Scalar>(Scalar(0), alpha, c),
                        UpdateMethod::limit_lambda_zero);
}

/// The objective as a function of unconstrained logits over the free states
/// (prior support minus zero-likelihood states when alpha > 0). Belief is
/// softmax(theta) scattered back into the full state space.
template <typename Scalar = double>
class LogitObjective {
 public:
  using VectorType = Vector<Scalar>;

  LogitObjective(const Categorical<Scalar>& prior, const Likelihood<Scalar>& lik,
                 const UtilityFunctional<Scalar>& utility, Scalar alpha, Scalar lambda,
                 Observation obs = {}, Scalar fd_step = Scalar(1e-6))
      : prior_(prior),
        lik_(lik),
        params_(lambda, alpha, utility),
        obs_(std::move(obs)),
        fd_step_(fd_step) {
    detail::require_same_size(prior.size(), lik.size(), "LogitObjective (likelihood)");
    if (const auto* lin = utility.linear()) {
      detail::require_same_size(prior.size(), lin->size(), "LogitObjective (utility)");
    }
    for (Eigen::Index s = 0; s < prior.size(); ++s) {
      if (prior(s) > Scalar(0) && (alpha == Scalar(0) || lik(s) > Scalar(0))) {
        support_.push_back(s);
      }
    }
    if (support_.empty()) {
      throw DegenerateProblem("no state has both prior mass and positive weight");
    }
  }

  const std::vector<Eigen::Index>& support() const { return support_; }
  Eigen::Index dimension() const { return static_cast<Eigen::Index>(support_.size()); }

  /// Logits reproducing the prior restricted to the free states.
  VectorType prior_logits() const {
    VectorType theta(dimension());
    for (Eigen::Index k = 0; k < dimension(); ++k) theta(k) = std::log(prior_(support_[k]));
    return theta.array() - theta.mean();
  }

  Categorical<Scalar> belief(const VectorType& theta) const {
    const VectorType q_free = detail::normalized_exp(theta);
    VectorType q = VectorType::Zero(prior_.size());
    for (Eigen::Index k = 0; k < dimension(); ++k) q(support_[k]) = q_free(k);
    return Categorical<Scalar>(std::move(q));
  }

  Scalar value(const VectorType& theta) const {
    return objective_value(belief(theta), prior_, lik_, params_, obs_).total;
  }

  struct Derivatives {
    VectorType gradient;   // dF/dtheta
    VectorType direction;  // the same gradient preconditioned by diag(q)^-1
  };

  /// d F / d theta. Analytic for linear utilities; otherwise the utility part
  /// uses central differences with the configured step.
  VectorType gradient(const VectorType& theta) const { return derivatives(theta).gradient; }

  /// Gradient plus the natural-gradient ascent direction. In logit space the
  /// gradient is q_j (dF/dq_j - E_q[dF/dq]); the direction drops the q_j factor,
  /// which keeps states with small mass from stalling the ascent.
  Derivatives derivatives(const VectorType& theta) const {
    const Scalar top = theta.maxCoeff();
    const Scalar log_norm =
        top + std::log(theta.unaryExpr([top](Scalar x) { return std::exp(x - top); }).sum());
    const VectorType log_q = theta.array() - log_norm;
    const VectorType q = log_q.unaryExpr([](Scalar x) { return std::exp(x); });

    // dF/dq_j up to a constant, which the softmax Jacobian removes.
    VectorType dq(dimension());
    const auto* lin = params_.utility.linear();
    for (Eigen::Index k = 0; k < dimension(); ++k) {
      const Eigen::Index s = support_[k];
      Scalar d = detail::weighted(params_.alpha, std::log(lik_(s))) -
                 params_.lambda * (log_q(k) - std::log(prior_(s)));
      if (lin) d += lin->coeffs()(s);
      dq(k) = d;
    }
    Derivatives out;
    out.direction = dq.array() - q.dot(dq);
    out.gradient = q.cwiseProduct(out.direction);
    if (!lin) {
      const VectorType fd = utility_gradient_fd(theta);
      out.gradient += fd;
      for (Eigen::Index k = 0; k < dimension(); ++k) {
        if (q(k) > Scalar(0)) out.direction(k) += fd(k) / q(k);
      }
    }
    return out;
  }

  const AgentParams<Scalar>& params() const { return params_; }
  const Observation& observation() const { return obs_; }

 private:
  VectorType utility_gradient_fd(const VectorType& theta) const {
    VectorType grad(dimension());
    VectorType probe = theta;
    for (Eigen::Index k = 0; k < dimension(); ++k) {
      probe(k) = theta(k) + fd_step_;
      const Scalar up = params_.utility(belief(probe), obs_);
      probe(k) = theta(k) - fd_step_;
      const Scalar down = params_.utility(belief(probe), obs_);
      probe(k) = theta(k);
      grad(k) = (up - down) / (Scalar(2) * fd_step_);
    }
    return grad;
  }

  Categorical<Scalar> prior_;
  Likelihood<Scalar> lik_;
  AgentParams<Scalar> params_;
  Observation obs_;
  Scalar fd_step_;
  std::vector<Eigen::Index> support_;
};

/// Gradient ascent on logits, preconditioned by the softmax Fisher metric,
/// with a backtracking (and growing) step.
/// Throws NotConverged carrying the best iterate if the projected gradient
/// norm does not drop below config.gradient_tolerance.
template <typename Scalar>
UpdateResult<Scalar> numeric_update(const Categorical<Scalar>& prior,
                                    const Likelihood<Scalar>& lik,
                                    const UtilityFunctional<Scalar>& utility, Scalar alpha,
                                    Scalar lambda, const NumericSolverConfig& config = {},
                                    const Observation& obs = {}) {
  if (!(lambda > Scalar(0)) || !std::isfinite(lambda)) throw LambdaNonPositive(double(lambda));
  config.validate();
  const LogitObjective<Scalar> objective(prior, lik, utility, alpha, lambda, obs,
                                         Scalar(config.finite_difference_step));

  auto result_at = [&](const Vector<Scalar>& theta, int iterations, Scalar gnorm,
                       bool converged) {
    auto posterior = objective.belief(theta);
    auto breakdown = objective_value(posterior, prior, lik, objective.params(), obs);
    return UpdateResult<Scalar>{std::move(posterior), breakdown, UpdateMethod::numeric,
                                iterations, gnorm, converged};
  };

  Vector<Scalar> theta = objective.prior_logits();
  if (objective.dimension() == 1) return result_at(theta, 0, Scalar(0), true);

  constexpr Scalar kArmijo = Scalar(0.25);
  constexpr Scalar kMaxLogitMove = Scalar(2);
  const Scalar max_step = Scalar(config.step_size) * Scalar(1e8);
  Scalar value = objective.value(theta);
  auto deriv = objective.derivatives(theta);
  Scalar gnorm = deriv.gradient.norm();
  Scalar step = Scalar(config.step_size);
  int iter = 0;
  bool converged = false;

  for (; iter < config.max_iterations; ++iter) {
    if (gnorm < Scalar(config.gradient_tolerance)) {
      converged = true;
      break;
    }
    const Scalar slope = deriv.gradient.dot(deriv.direction);
    // Near the optimum, value differences fall below rounding; there a step
    // is accepted if it keeps the value within rounding and at least halves
    // the gradient norm.
    const Scalar slack = Scalar(64) * std::numeric_limits<Scalar>::epsilon() *
                         (Scalar(1) + std::abs(value));
    bool accepted = false;
    // No logit moves by more than kMaxLogitMove per iteration; unbounded
    // steps can park the iterate in a saturated corner where the gradient vanishes.
    Scalar t = std::min(step, kMaxLogitMove / deriv.direction.cwiseAbs().maxCoeff());
    Vector<Scalar> cand;
    typename LogitObjective<Scalar>::Derivatives cand_deriv;
    Scalar cand_value{};
    for (int halvings = 0; halvings < 80; ++halvings, t *= Scalar(0.5)) {
      cand = theta + t * deriv.direction;
      cand.array() -= cand.mean();
      cand_value = objective.value(cand);
      const Scalar predicted_gain = kArmijo * t * slope;
      if (predicted_gain > slack) {
        if (cand_value >= value + predicted_gain) {
          cand_deriv = objective.derivatives(cand);
          accepted = true;
        }
      } else if (cand_value >= value - slack) {
        cand_deriv = objective.derivatives(cand);
        accepted = cand_deriv.gradient.norm() <= Scalar(0.5) * gnorm;
      }
      if (accepted) break;
    }
    if (!accepted) break;
    theta = std::move(cand);
    value = cand_value;
    deriv = std::move(cand_deriv);
    gnorm = deriv.gradient.norm();
    step = std::min(Scalar(2) * t, max_step);
  }
  if (!converged && gnorm < Scalar(config.gradient_tolerance)) converged = true;

  auto result = result_at(theta, iter, gnorm, converged);
  if (!converged) throw NotConverged<Scalar>(std::move(result));
  return result;
}

/// Grid search over q(0) in {0, h, 2h, ..., 1} for 2-state problems.
/// Ties go to the smaller q(0).
template <typename Scalar>
UpdateResult<Scalar> brute_force_update(const Categorical<Scalar>& prior,
                                        const Likelihood<Scalar>& lik,
                                        const UtilityFunctional<Scalar>& utility, Scalar alpha,
                                        Scalar lambda, Scalar grid_step,
                                        const Observation& obs = {}) {
  if (prior.size() != 2) {
    throw UnsupportedDimension("brute_force_update supports 2 states only, got " +
                               std::to_string(prior.size()));
  }
  if (!(grid_step > Scalar(0)) || grid_step > Scalar(0.01)) {
    throw InvalidParameter("grid_step must lie in (0, 0.01]");
  }
  const AgentParams<Scalar> params(lambda, alpha, utility);
  const auto n_steps = static_cast<long>(std::floor(Scalar(1) / grid_step + Scalar(1e-9)));

  std::vector<Scalar> grid;
  grid.reserve(static_cast<std::size_t>(n_steps) + 2);
  for (long k = 0; k <= n_steps; ++k) grid.push_back(std::min(Scalar(1), Scalar(k) * grid_step));
  if (grid.back() < Scalar(1)) grid.push_back(Scalar(1));

  bool found = false;
  Scalar best_q0{};
  ObjectiveBreakdown<Scalar> best{};
  for (Scalar q0 : grid) {
    if ((q0 > Scalar(0) && prior(0) == Scalar(0)) || (q0 < Scalar(1) && prior(1) == Scalar(0))) {
      continue;
    }
    Categorical<Scalar> q{q0, Scalar(1) - q0};
    auto b = objective_value(q, prior, lik, params, obs);
    if (!found || objective_better(b.total, best.total)) {
      found = true;
      best = b;
      best_q0 = q0;
    }
  }
  return UpdateResult<Scalar>{Categorical<Scalar>{best_q0, Scalar(1) - best_q0}, best,
                              UpdateMethod::brute_force};
}

/// Dispatch: linear utilities use the closed form (or the limit at lambda = 0),
/// anything else the numeric solver.
template <typename Scalar>
UpdateResult<Scalar> optimal_update(const Categorical<Scalar>& prior,
                                    const Likelihood<Scalar>& lik,
                                    const AgentParams<Scalar>& params,
                                    const NumericSolverConfig& config = {},
                                    const Observation& obs = {}) {
  if (const auto* lin = params.utility.linear()) {
    if (params.lambda == Scalar(0)) return limit_update(prior, lik, *lin, params.alpha);
    return closed_form_update(prior, lik, *lin, params.alpha, params.lambda);
  }
  return numeric_update(prior, lik, params.utility, params.alpha, params.lambda, config, obs);
}

}  // namespace mvbu

#endif  // MVBU_SOLVER_HPP
