#ifndef MVBU_TESTS_SUPPORT_HPP
#define MVBU_TESTS_SUPPORT_HPP

// Random instance generators and independent oracles shared by the unit and
// acceptance suites. Nothing here calls into the solver layer.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mvbu/categorical.hpp"
#include "mvbu/objective.hpp"

namespace mvbu::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  // Strictly positive entries so every state is in the support.
  Categorical<double> categorical(Eigen::Index n, double floor = 0.02) {
    Vector<double> v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(floor, 1.0);
    return Categorical<double>(v / v.sum());
  }

  Likelihood<double> likelihood(Eigen::Index n, double lo = 0.01, double hi = 0.99) {
    Vector<double> v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(lo, hi);
    return Likelihood<double>(v);
  }

  LinearAffectiveUtility<double> utility(Eigen::Index n, double scale = 2.0) {
    Vector<double> v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(-scale, scale);
    return LinearAffectiveUtility<double>(v);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double sup_distance(const Categorical<double>& a, const Categorical<double>& b) {
  return (a.probs() - b.probs()).cwiseAbs().maxCoeff();
}

// Tempered posterior straight from the formula, in long double, no log-space
// tricks. Only valid for moderate exponents.
inline std::vector<long double> tempered_posterior_direct(const Categorical<double>& prior,
                                                          const Likelihood<double>& lik,
                                                          const LinearAffectiveUtility<double>& c,
                                                          long double alpha, long double lambda) {
  std::vector<long double> w(static_cast<std::size_t>(prior.size()));
  long double z = 0;
  for (Eigen::Index s = 0; s < prior.size(); ++s) {
    const long double e =
        (static_cast<long double>(c.coeffs()(s)) +
         alpha * std::log(static_cast<long double>(lik(s)))) / lambda;
    w[static_cast<std::size_t>(s)] = static_cast<long double>(prior(s)) * std::exp(e);
    z += w[static_cast<std::size_t>(s)];
  }
  for (auto& x : w) x /= z;
  return w;
}

// Optimal objective for linear utilities: max_q F = lambda log Z.
inline long double optimal_total_via_partition(const Categorical<double>& prior,
                                               const Likelihood<double>& lik,
                                               const LinearAffectiveUtility<double>& c,
                                               long double alpha, long double lambda) {
  long double z = 0;
  for (Eigen::Index s = 0; s < prior.size(); ++s) {
    z += static_cast<long double>(prior(s)) *
         std::exp((static_cast<long double>(c.coeffs()(s)) +
                   alpha * std::log(static_cast<long double>(lik(s)))) / lambda);
  }
  return lambda * std::log(z);
}

// Dense 1-D grid minimizer of a 2-state function of q(0), for oracle checks.
template <typename F>
double grid_argmin_q0(F&& f, double step) {
  double best_q = 0.0;
  double best = INFINITY;
  const long n = std::lround(1.0 / step);
  for (long k = 0; k <= n; ++k) {
    const double q0 = static_cast<double>(k) / static_cast<double>(n);
    const double v = f(q0);
    if (v < best) {
      best = v;
      best_q = q0;
    }
  }
  return best_q;
}

}  // namespace mvbu::testing

#endif  // MVBU_TESTS_SUPPORT_HPP
