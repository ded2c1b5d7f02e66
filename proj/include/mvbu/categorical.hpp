#ifndef MVBU_CATEGORICAL_HPP
#define MVBU_CATEGORICAL_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <string>

#include "mvbu/error.hpp"

// Finite categorical beliefs and the information-theoretic quantities built on
// them. All logarithms are natural, and 0 log 0 is taken to be 0 throughout.

namespace mvbu {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

namespace detail {

template <typename Vec>
Vector<typename Vec::Scalar> to_vector(std::initializer_list<typename Vec::Scalar> values) {
  Vector<typename Vec::Scalar> v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (auto x : values) v(i++) = x;
  return v;
}

}  // namespace detail

/// A normalized probability vector over at least two states.
///
/// Inputs whose sum is within 1e-6 of one are renormalized; anything further
/// off, negative, or non-finite is rejected with InvalidDistribution.
template <typename Scalar = double>
class Categorical {
 public:
  using VectorType = Vector<Scalar>;

  static constexpr double kRenormalizeTolerance = 1e-6;

  explicit Categorical(VectorType probs) : probs_(std::move(probs)) {
    if (probs_.size() < 2) {
      throw InvalidDistribution("categorical needs at least 2 states, got " +
                                std::to_string(probs_.size()));
    }
    for (Eigen::Index i = 0; i < probs_.size(); ++i) {
      if (!std::isfinite(probs_(i)) || probs_(i) < Scalar(0)) {
        throw InvalidDistribution("probability at state " + std::to_string(i) +
                                  " is negative or non-finite");
      }
    }
    const Scalar total = probs_.sum();
    if (std::abs(total - Scalar(1)) >= Scalar(kRenormalizeTolerance)) {
      throw InvalidDistribution("probabilities sum to " + std::to_string(double(total)) +
                                ", not 1");
    }
    probs_ /= total;
  }

  Categorical(std::initializer_list<Scalar> probs)
      : Categorical(detail::to_vector<VectorType>(probs)) {}

  static Categorical uniform(Eigen::Index n_states) {
    if (n_states < 2) throw InvalidDistribution("categorical needs at least 2 states");
    return Categorical(VectorType::Constant(n_states, Scalar(1) / Scalar(n_states)));
  }

  const VectorType& probs() const { return probs_; }
  Eigen::Index size() const { return probs_.size(); }
  Scalar operator()(Eigen::Index s) const { return probs_(s); }

  bool operator==(const Categorical& other) const {
    return probs_.size() == other.probs_.size() && probs_ == other.probs_;
  }

 private:
  VectorType probs_;
};

/// p(o|s) for one fixed observation: entries in [0, 1], not all zero.
template <typename Scalar = double>
class Likelihood {
 public:
  using VectorType = Vector<Scalar>;

  explicit Likelihood(VectorType values) : values_(std::move(values)) {
    if (values_.size() < 1) throw InvalidDistribution("likelihood is empty");
    bool any_positive = false;
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
      const Scalar v = values_(i);
      if (!std::isfinite(v) || v < Scalar(0) || v > Scalar(1)) {
        throw InvalidDistribution("likelihood at state " + std::to_string(i) +
                                  " is outside [0, 1]");
      }
      any_positive = any_positive || v > Scalar(0);
    }
    if (!any_positive) throw InvalidDistribution("likelihood has no positive entry");
  }

  Likelihood(std::initializer_list<Scalar> values)
      : Likelihood(detail::to_vector<VectorType>(values)) {}

  static Likelihood uniform(Eigen::Index n_states, Scalar value = Scalar(1)) {
    return Likelihood(VectorType::Constant(n_states, value));
  }

  const VectorType& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  Scalar operator()(Eigen::Index s) const { return values_(s); }

 private:
  VectorType values_;
};

namespace detail {

inline void require_same_size(Eigen::Index expected, Eigen::Index actual, const char* what) {
  if (expected != actual) throw DimensionMismatch(what, expected, actual);
}

}  // namespace detail

/// KL(q || p) in nats. Throws SupportViolation where q > 0 and p = 0.
template <typename Scalar>
Scalar kl_divergence(const Categorical<Scalar>& q, const Categorical<Scalar>& p) {
  detail::require_same_size(q.size(), p.size(), "kl_divergence");
  Scalar total(0);
  for (Eigen::Index s = 0; s < q.size(); ++s) {
    if (q(s) == Scalar(0)) continue;
    if (p(s) == Scalar(0)) {
      throw SupportViolation("KL undefined: q has mass at state " + std::to_string(s) +
                             " where the reference is zero");
    }
    total += q(s) * (std::log(q(s)) - std::log(p(s)));
  }
  return total;
}

template <typename Scalar>
Scalar entropy(const Categorical<Scalar>& q) {
  Scalar total(0);
  for (Eigen::Index s = 0; s < q.size(); ++s) {
    if (q(s) > Scalar(0)) total -= q(s) * std::log(q(s));
  }
  return total;
}

/// E_q[log p(o|s)]. Returns -infinity when q puts mass on a zero-likelihood state.
template <typename Scalar>
Scalar expected_log_likelihood(const Categorical<Scalar>& q, const Likelihood<Scalar>& lik) {
  detail::require_same_size(q.size(), lik.size(), "expected_log_likelihood");
  Scalar total(0);
  for (Eigen::Index s = 0; s < q.size(); ++s) {
    if (q(s) == Scalar(0)) continue;
    if (lik(s) == Scalar(0)) return -std::numeric_limits<Scalar>::infinity();
    total += q(s) * std::log(lik(s));
  }
  return total;
}

template <typename Scalar>
Categorical<Scalar> bayes_update(const Categorical<Scalar>& prior, const Likelihood<Scalar>& lik) {
  detail::require_same_size(prior.size(), lik.size(), "bayes_update");
  Vector<Scalar> joint = prior.probs().cwiseProduct(lik.values());
  const Scalar evidence = joint.sum();
  if (!(evidence > Scalar(0))) {
    throw ZeroEvidence("prior and likelihood have disjoint support");
  }
  return Categorical<Scalar>(joint / evidence);
}

}  // namespace mvbu

#endif  // MVBU_CATEGORICAL_HPP
