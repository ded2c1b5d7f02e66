#ifndef MVBU_OBJECTIVE_HPP
#define MVBU_OBJECTIVE_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <variant>

#include "mvbu/categorical.hpp"

namespace mvbu {

/// Opaque tag for the observation a utility may condition on. None of the
/// built-in utilities read it.
struct Observation {
  std::string tag;
};

/// U[q] = sum_s c_s q(s).
template <typename Scalar = double>
class LinearAffectiveUtility {
 public:
  using VectorType = Vector<Scalar>;

  explicit LinearAffectiveUtility(VectorType coeffs) : coeffs_(std::move(coeffs)) {
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
      if (!std::isfinite(coeffs_(i))) {
        throw InvalidParameter("utility coefficient " + std::to_string(i) + " is not finite");
      }
    }
  }

  LinearAffectiveUtility(std::initializer_list<Scalar> coeffs)
      : LinearAffectiveUtility(detail::to_vector<VectorType>(coeffs)) {}

  static LinearAffectiveUtility constant(Eigen::Index n_states, Scalar value) {
    return LinearAffectiveUtility(VectorType::Constant(n_states, value));
  }

  const VectorType& coeffs() const { return coeffs_; }
  Eigen::Index size() const { return coeffs_.size(); }

 private:
  VectorType coeffs_;
};

template <typename Scalar>
Scalar affective_utility_value(const LinearAffectiveUtility<Scalar>& u,
                               const Categorical<Scalar>& q) {
  detail::require_same_size(u.size(), q.size(), "affective_utility_value");
  return u.coeffs().dot(q.probs());
}

/// A deterministic map (belief, observation) -> utility. Either the linear
/// form, which solvers can exploit analytically, or an arbitrary callable.
template <typename Scalar = double>
class UtilityFunctional {
 public:
  using Function = std::function<Scalar(const Categorical<Scalar>&, const Observation&)>;

  UtilityFunctional(LinearAffectiveUtility<Scalar> linear) : impl_(std::move(linear)) {}
  explicit UtilityFunctional(Function fn) : impl_(std::move(fn)) {
    if (!std::get<Function>(impl_)) throw InvalidParameter("utility callable is empty");
  }

  Scalar operator()(const Categorical<Scalar>& q, const Observation& obs = {}) const {
    if (const auto* lin = linear()) return affective_utility_value(*lin, q);
    return std::get<Function>(impl_)(q, obs);
  }

  /// Non-null when the utility is linear in q.
  const LinearAffectiveUtility<Scalar>* linear() const {
    return std::get_if<LinearAffectiveUtility<Scalar>>(&impl_);
  }

 private:
  std::variant<LinearAffectiveUtility<Scalar>, Function> impl_;
};

template <typename Scalar = double>
struct AgentParams {
  Scalar lambda;
  Scalar alpha;
  UtilityFunctional<Scalar> utility;

  AgentParams(Scalar lambda_, Scalar alpha_, UtilityFunctional<Scalar> utility_)
      : lambda(lambda_), alpha(alpha_), utility(std::move(utility_)) {
    validate();
  }

  void validate() const {
    if (!std::isfinite(lambda) || lambda < Scalar(0)) {
      throw InvalidParameter("lambda must be finite and >= 0");
    }
    if (!std::isfinite(alpha) || alpha < Scalar(0)) {
      throw InvalidParameter("alpha must be finite and >= 0");
    }
  }
};

template <typename Scalar = double>
struct ObjectiveBreakdown {
  Scalar affective_utility{};
  Scalar accuracy{};    // E_q[log p(o|s)], unweighted
  Scalar complexity{};  // KL(q || prior), unweighted
  Scalar total{};
};

namespace detail {

// alpha * accuracy with 0 * (-inf) = 0, so a zero likelihood weight ignores
// impossible observations entirely.
template <typename Scalar>
Scalar weighted(Scalar weight, Scalar term) {
  return weight == Scalar(0) ? Scalar(0) : weight * term;
}

}  // namespace detail

/// Utility + alpha * accuracy - lambda * complexity for a candidate belief q.
/// The total is -infinity when q covers a zero-likelihood state and alpha > 0.
template <typename Scalar>
ObjectiveBreakdown<Scalar> objective_value(const Categorical<Scalar>& q,
                                           const Categorical<Scalar>& prior,
                                           const Likelihood<Scalar>& lik,
                                           const AgentParams<Scalar>& params,
                                           const Observation& obs = {}) {
  detail::require_same_size(prior.size(), q.size(), "objective_value (prior)");
  detail::require_same_size(prior.size(), lik.size(), "objective_value (likelihood)");
  ObjectiveBreakdown<Scalar> out;
  out.affective_utility = params.utility(q, obs);
  out.accuracy = expected_log_likelihood(q, lik);
  out.complexity = kl_divergence(q, prior);
  out.total = out.affective_utility + detail::weighted(params.alpha, out.accuracy) -
              detail::weighted(params.lambda, out.complexity);
  return out;
}

/// Variational free energy as accuracy/complexity: -E_q[log p(o|s)] + KL(q || prior).
template <typename Scalar>
Scalar vfe_value(const Categorical<Scalar>& q, const Categorical<Scalar>& prior,
                 const Likelihood<Scalar>& lik) {
  detail::require_same_size(prior.size(), lik.size(), "vfe_value");
  return -expected_log_likelihood(q, lik) + kl_divergence(q, prior);
}

/// The same free energy as energy minus entropy: -E_q[log p(s, o)] - H[q].
template <typename Scalar>
Scalar vfe_energy_entropy(const Categorical<Scalar>& q, const Categorical<Scalar>& prior,
                          const Likelihood<Scalar>& lik) {
  detail::require_same_size(prior.size(), q.size(), "vfe_energy_entropy (prior)");
  detail::require_same_size(prior.size(), lik.size(), "vfe_energy_entropy (likelihood)");
  Scalar energy(0);
  for (Eigen::Index s = 0; s < q.size(); ++s) {
    if (q(s) == Scalar(0)) continue;
    if (prior(s) == Scalar(0)) {
      throw SupportViolation("q has mass at state " + std::to_string(s) +
                             " outside the prior support");
    }
    if (lik(s) == Scalar(0)) return std::numeric_limits<Scalar>::infinity();
    energy -= q(s) * (std::log(prior(s)) + std::log(lik(s)));
  }
  return energy - entropy(q);
}

/// Strict ordering on objective totals: -infinity sorts below every finite value
/// and NaN never wins.
template <typename Scalar>
bool objective_better(Scalar candidate, Scalar incumbent) {
  if (std::isnan(candidate)) return false;
  if (std::isnan(incumbent)) return true;
  return candidate > incumbent;
}

}  // namespace mvbu

#endif  // MVBU_OBJECTIVE_HPP
