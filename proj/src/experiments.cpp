#include "mvbu/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mvbu::experiments {

namespace {

void require_nonempty(const std::vector<double>& grid, const char* name) {
  if (grid.empty()) throw InvalidParameter(std::string(name) + " grid is empty");
}

void require_two_state(Eigen::Index n, const char* what) {
  if (n != 2) {
    throw UnsupportedDimension(std::string(what) + " works on 2-state problems, got " +
                               std::to_string(n));
  }
}

void require_pair(const std::vector<EvidenceOption>& menu) {
  if (menu.empty()) throw EmptyMenu();
  if (menu.size() != 2) {
    throw InvalidParameter("expected a menu of exactly 2 options, got " +
                           std::to_string(menu.size()));
  }
}

UpdateResult<double> solve(const Categorical<double>& prior, const Likelihood<double>& lik,
                           const LinearAffectiveUtility<double>& c, double alpha, double lambda) {
  return optimal_update(prior, lik, AgentParams<double>(lambda, alpha, c));
}

SweepResult make_sweep(std::string kind, std::vector<Axis> axes, std::vector<std::string> columns) {
  SweepResult out;
  out.kind = std::move(kind);
  out.axes = std::move(axes);
  out.columns = std::move(columns);
  out.records.resize(static_cast<Eigen::Index>(out.grid_size()),
                     static_cast<Eigen::Index>(out.columns.size()));
  return out;
}

double selection_difference(const Categorical<double>& prior,
                            const LinearAffectiveUtility<double>& c, double alpha,
                            const std::vector<EvidenceOption>& menu, double lambda) {
  AgentParams<double> params(lambda, alpha, c);
  const auto outcome = select_evidence(prior, params, menu);
  return outcome.per_option[0].total - outcome.per_option[1].total;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> out(n);
  const double span = hi - lo;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + span * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = hi;
  return out;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > 0.0)) throw InvalidParameter("log-spaced grid needs positive bounds");
  auto exps = linspace(std::log(lo), std::log(hi), n);
  for (auto& x : exps) x = std::exp(x);
  if (n > 0) {
    exps.front() = lo;
    exps.back() = hi;
  }
  return exps;
}

BernoulliEvidence::BernoulliEvidence(double e) : strength(e) {
  if (!(e >= 0.0 && e <= 1.0)) {
    throw InvalidParameter("evidence strength must lie in [0, 1], got " + std::to_string(e));
  }
}

BernoulliEvidence BernoulliEvidence::clamped(double e, double lo, double hi) {
  return BernoulliEvidence(std::clamp(e, lo, hi));
}

Likelihood<double> BernoulliEvidence::likelihood() const {
  return Likelihood<double>{strength, 1.0 - strength};
}

std::vector<BernoulliEvidence> evidence_grid(double lo, double hi, std::size_t n) {
  if (n == 0) throw InvalidParameter("evidence grid is empty");
  if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) {
    throw InvalidParameter("evidence grid bounds must satisfy 0 <= lo <= hi <= 1");
  }
  std::vector<BernoulliEvidence> out;
  out.reserve(n);
  for (double e : linspace(lo, hi, n)) out.emplace_back(e);
  return out;
}

Eigen::Index SweepResult::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw AxisMismatch("no column named '" + std::string(name) + "'");
  return static_cast<Eigen::Index>(it - columns.begin());
}

std::size_t SweepResult::grid_size() const {
  if (axes.empty()) return 0;
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.values.size();
  return n;
}

SweepResult evidence_strength_sweep(const Categorical<double>& prior,
                                    const LinearAffectiveUtility<double>& c,
                                    const std::vector<double>& lambda_values,
                                    const std::vector<double>& alpha_values,
                                    const std::vector<BernoulliEvidence>& evidence) {
  require_two_state(prior.size(), "evidence_strength_sweep");
  require_nonempty(lambda_values, "lambda");
  require_nonempty(alpha_values, "alpha");
  if (evidence.empty()) throw InvalidParameter("evidence grid is empty");

  std::vector<double> strengths;
  for (const auto& e : evidence) strengths.push_back(e.strength);
  auto out = make_sweep("evidence_strength",
                        {{"lambda", lambda_values}, {"alpha", alpha_values}, {"evidence", strengths}},
                        {"lambda", "alpha", "evidence", "q0", "utility", "accuracy", "complexity",
                         "total", "bayes_q0"});
  out.hints.series = {"q0"};
  out.hints.reference = {"bayes_q0"};

  Eigen::Index row = 0;
  for (double lambda : lambda_values) {
    for (double alpha : alpha_values) {
      for (const auto& e : evidence) {
        const auto lik = e.likelihood();
        const auto r = solve(prior, lik, c, alpha, lambda);
        const auto& b = r.breakdown;
        out.records.row(row++) << lambda, alpha, e.strength, r.posterior(0), b.affective_utility,
            b.accuracy, b.complexity, b.total, bayes_update(prior, lik)(0);
      }
    }
  }
  return out;
}

SelectionOutcome select_evidence(const Categorical<double>& prior, const AgentParams<double>& params,
                                 const std::vector<EvidenceOption>& menu,
                                 const NumericSolverConfig& config) {
  if (menu.empty()) throw EmptyMenu();
  SelectionOutcome out{0, {}};
  out.per_option.reserve(menu.size());
  for (std::size_t i = 0; i < menu.size(); ++i) {
    const Observation obs{menu[i].label};
    auto r = [&] {
      try {
        return optimal_update(prior, menu[i].lik, params, config, obs);
      } catch (const DegenerateProblem&) {
        // Evidence impossible under the prior: every belief scores -inf.
        return UpdateResult<double>{prior, objective_value(prior, prior, menu[i].lik, params, obs),
                                    UpdateMethod::closed_form, 0, 0.0, false};
      }
    }();
    const double total = r.breakdown.total;
    out.per_option.push_back(OptionResult{menu[i].label, std::move(r), total});
    if (i > 0 && objective_better(total, out.per_option[out.chosen_index].total)) {
      out.chosen_index = i;
    }
  }
  return out;
}

std::vector<double> selection_sign_changes(const Categorical<double>& prior,
                                           const LinearAffectiveUtility<double>& c, double alpha,
                                           const std::vector<EvidenceOption>& menu,
                                           const ThresholdSearch& search) {
  require_pair(menu);
  if (!(search.lambda_min > 0.0) || !(search.lambda_max > search.lambda_min)) {
    throw InvalidParameter("threshold search needs 0 < lambda_min < lambda_max");
  }
  if (!(search.tolerance > 0.0) || search.scan_points < 2) {
    throw InvalidParameter("threshold search needs a positive tolerance and >= 2 scan points");
  }
  auto diff = [&](double lambda) { return selection_difference(prior, c, alpha, menu, lambda); };
  auto sign = [](double d) { return (d > 0.0) - (d < 0.0); };

  std::vector<double> roots;
  const auto scan = logspace(search.lambda_min, search.lambda_max, search.scan_points);
  double last_lambda = 0.0;
  int last_sign = 0;
  for (double lambda : scan) {
    const int s = sign(diff(lambda));
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) {
      double lo = last_lambda;
      double hi = lambda;
      while (hi - lo > search.tolerance) {
        const double mid = 0.5 * (lo + hi);
        const int sm = sign(diff(mid));
        if (sm == 0) {
          lo = hi = mid;
        } else if (sm == last_sign) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    last_sign = s;
    last_lambda = lambda;
  }
  return roots;
}

std::optional<double> selection_threshold(const Categorical<double>& prior,
                                          const LinearAffectiveUtility<double>& c, double alpha,
                                          const std::vector<EvidenceOption>& menu,
                                          const ThresholdSearch& search) {
  const auto roots = selection_sign_changes(prior, c, alpha, menu, search);
  if (roots.empty()) return std::nullopt;
  return roots.front();
}

SweepResult objective_landscape_heatmap(const Categorical<double>& prior,
                                        const LinearAffectiveUtility<double>& c,
                                        const BernoulliEvidence& evidence,
                                        const std::vector<double>& lambda_grid,
                                        const std::vector<double>& alpha_grid) {
  require_two_state(prior.size(), "objective_landscape_heatmap");
  require_nonempty(lambda_grid, "lambda");
  require_nonempty(alpha_grid, "alpha");
  auto out = make_sweep("objective_landscape", {{"lambda", lambda_grid}, {"alpha", alpha_grid}},
                        {"lambda", "alpha", "q0", "utility", "accuracy", "complexity", "total",
                         "prior_total", "bayes_q0"});
  out.hints.series = {"q0"};
  out.hints.reference = {"bayes_q0"};
  out.hints.heatmaps = {"total", "q0"};

  const auto lik = evidence.likelihood();
  const double bayes_q0 = bayes_update(prior, lik)(0);
  Eigen::Index row = 0;
  for (double lambda : lambda_grid) {
    for (double alpha : alpha_grid) {
      AgentParams<double> params(lambda, alpha, c);
      const auto r = optimal_update(prior, lik, params);
      const auto at_prior = objective_value(prior, prior, lik, params);
      const auto& b = r.breakdown;
      out.records.row(row++) << lambda, alpha, r.posterior(0), b.affective_utility, b.accuracy,
          b.complexity, b.total, at_prior.total, bayes_q0;
    }
  }
  return out;
}

SweepResult selection_boundary_heatmap(const Categorical<double>& prior,
                                       const LinearAffectiveUtility<double>& c,
                                       const std::vector<EvidenceOption>& menu,
                                       const std::vector<double>& lambda_grid,
                                       const std::vector<double>& alpha_grid) {
  require_pair(menu);
  require_two_state(prior.size(), "selection_boundary_heatmap");
  require_nonempty(lambda_grid, "lambda");
  require_nonempty(alpha_grid, "alpha");
  auto out = make_sweep("selection_boundary", {{"lambda", lambda_grid}, {"alpha", alpha_grid}},
                        {"lambda", "alpha", "chosen", "total_a", "total_b", "difference", "q0_a",
                         "q0_b", "chosen_q0"});
  out.hints.series = {"total_a", "total_b"};
  out.hints.heatmaps = {"total_a", "total_b", "chosen_q0", "difference"};
  out.hints.boundary = "difference";

  Eigen::Index row = 0;
  for (double lambda : lambda_grid) {
    for (double alpha : alpha_grid) {
      const auto sel = select_evidence(prior, AgentParams<double>(lambda, alpha, c), menu);
      const auto& a = sel.per_option[0];
      const auto& b = sel.per_option[1];
      const double chosen_q0 = sel.per_option[sel.chosen_index].update.posterior(0);
      out.records.row(row++) << lambda, alpha, static_cast<double>(sel.chosen_index), a.total,
          b.total, a.total - b.total, a.update.posterior(0), b.update.posterior(0), chosen_q0;
    }
  }
  return out;
}

SweepResult polarization_sweep(const Categorical<double>& prior, const Likelihood<double>& evidence,
                               const std::vector<double>& lambda_grid,
                               const std::vector<double>& alpha_grid,
                               const PolarizationAgents& agents) {
  require_two_state(prior.size(), "polarization_sweep");
  require_nonempty(lambda_grid, "lambda");
  require_nonempty(alpha_grid, "alpha");
  auto out = make_sweep("polarization", {{"lambda", lambda_grid}, {"alpha", alpha_grid}},
                        {"lambda", "alpha", "q0_agent1", "q0_agent2", "bayes_q0", "gap"});
  out.hints.series = {"q0_agent1", "q0_agent2"};
  out.hints.reference = {"bayes_q0"};
  out.hints.heatmaps = {"gap"};

  const double bayes_q0 = bayes_update(prior, evidence)(0);
  Eigen::Index row = 0;
  for (double lambda : lambda_grid) {
    for (double alpha : alpha_grid) {
      const double q1 = solve(prior, evidence, agents.agent1, alpha, lambda).posterior(0);
      const double q2 = solve(prior, evidence, agents.agent2, alpha, lambda).posterior(0);
      out.records.row(row++) << lambda, alpha, q1, q2, bayes_q0, std::abs(q1 - q2);
    }
  }
  return out;
}

SelectionScenario::SelectionScenario(Kind kind_, Categorical<double> prior_,
                                     LinearAffectiveUtility<double> c_,
                                     std::vector<EvidenceOption> menu_)
    : kind(kind_), prior(std::move(prior_)), c(std::move(c_)), menu(std::move(menu_)) {
  require_pair(menu);
  require_two_state(prior.size(), "SelectionScenario");
  const auto post_a = bayes_update(prior, menu[0].lik);
  const auto post_b = bayes_update(prior, menu[1].lik);
  const double kl_a = kl_divergence(post_a, prior);
  const double kl_b = kl_divergence(post_b, prior);
  // The preferred state is whichever carries the larger utility coefficient.
  const Eigen::Index preferred = c.coeffs()(0) >= c.coeffs()(1) ? 0 : 1;
  const bool a_confirms = post_a(preferred) > prior(preferred);
  const bool b_contradicts = post_b(preferred) < prior(preferred);
  if (!a_confirms) throw InvalidParameter("scenario: evidence A must confirm the preferred state");
  if (!b_contradicts) {
    throw InvalidParameter("scenario: evidence B must contradict the preferred state");
  }
  if (kind == Kind::tradeoff && !(kl_a > kl_b)) {
    throw InvalidParameter("tradeoff scenario: evidence A must move the belief further than B");
  }
  if (kind == Kind::dominant && !(kl_a < kl_b)) {
    throw InvalidParameter("dominant scenario: evidence A must move the belief less than B");
  }
}

SelectionScenario scenario_tradeoff() {
  return SelectionScenario(SelectionScenario::Kind::tradeoff, Categorical<double>{0.3, 0.7},
                           LinearAffectiveUtility<double>{1.0, 0.0},
                           {{"A", Likelihood<double>{0.95, 0.05}},
                            {"B", Likelihood<double>{0.4, 0.6}}});
}

SelectionScenario scenario_dominant() {
  return SelectionScenario(SelectionScenario::Kind::dominant, Categorical<double>{0.7, 0.3},
                           LinearAffectiveUtility<double>{1.0, 0.0},
                           {{"A", Likelihood<double>{0.8, 0.2}},
                            {"B", Likelihood<double>{0.2, 0.8}}});
}

}  // namespace mvbu::experiments
