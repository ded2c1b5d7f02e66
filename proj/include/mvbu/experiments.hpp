#ifndef MVBU_EXPERIMENTS_HPP
#define MVBU_EXPERIMENTS_HPP

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvbu/categorical.hpp"
#include "mvbu/objective.hpp"
#include "mvbu/solver.hpp"

// Parameter sweeps and scenario runners over 2-state (Bernoulli) problems:
// evidence-strength response curves, evidence selection and its switching
// threshold, (lambda, alpha) landscapes, and two-agent polarisation.

namespace mvbu::experiments {

std::vector<double> linspace(double lo, double hi, std::size_t n);
std::vector<double> logspace(double lo, double hi, std::size_t n);

/// p(o|s=0) = e, p(o|s=1) = 1 - e, so e = 0.5 is uninformative.
struct BernoulliEvidence {
  double strength;

  static constexpr double kDefaultMin = 0.01;
  static constexpr double kDefaultMax = 0.99;

  explicit BernoulliEvidence(double e);
  static BernoulliEvidence clamped(double e, double lo = kDefaultMin, double hi = kDefaultMax);

  Likelihood<double> likelihood() const;
};

/// n evenly spaced strengths on [lo, hi]; endpoints outside [0, 1] are rejected.
std::vector<BernoulliEvidence> evidence_grid(double lo = BernoulliEvidence::kDefaultMin,
                                             double hi = BernoulliEvidence::kDefaultMax,
                                             std::size_t n = 101);

struct EvidenceOption {
  std::string label;
  Likelihood<double> lik;
};

struct OptionResult {
  std::string label;
  UpdateResult<double> update;
  double total;
};

struct SelectionOutcome {
  std::size_t chosen_index;
  std::vector<OptionResult> per_option;
};

struct Axis {
  std::string name;
  std::vector<double> values;
};

/// Which columns a renderer should draw. Series columns are drawn once per
/// value of the series (outer) axis; reference columns once.
struct PlotHints {
  std::vector<std::string> series;
  std::vector<std::string> reference;
  std::vector<std::string> heatmaps;
  std::optional<std::string> boundary;  // zero contour overlaid on heatmaps
};

/// Tabular sweep output. One row of `records` per grid point, in row-major
/// axis order (the last axis varies fastest). The leading columns repeat the
/// axis values.
struct SweepResult {
  std::string kind;
  std::vector<Axis> axes;
  std::vector<std::string> columns;
  Eigen::MatrixXd records;
  PlotHints hints;

  Eigen::Index column(std::string_view name) const;
  Eigen::VectorXd column_values(std::string_view name) const { return records.col(column(name)); }
  std::size_t grid_size() const;
};

SweepResult evidence_strength_sweep(const Categorical<double>& prior,
                                    const LinearAffectiveUtility<double>& c,
                                    const std::vector<double>& lambda_values,
                                    const std::vector<double>& alpha_values,
                                    const std::vector<BernoulliEvidence>& evidence);

/// Solves the update for every option and picks the largest optimal objective.
/// -inf totals rank last; ties go to the lowest index. An option with no
/// feasible belief (zero evidence on the whole prior support) is reported
/// with the prior as posterior, total -inf and converged = false.
SelectionOutcome select_evidence(const Categorical<double>& prior, const AgentParams<double>& params,
                                 const std::vector<EvidenceOption>& menu,
                                 const NumericSolverConfig& config = {});

struct ThresholdSearch {
  double lambda_min = 0.1;
  double lambda_max = 100.0;
  double tolerance = 1e-6;
  std::size_t scan_points = 4001;  // log-spaced bracketing scan
};

/// Every lambda in the search range where the optimal-objective difference
/// between the two options changes sign, each refined by bisection.
std::vector<double> selection_sign_changes(const Categorical<double>& prior,
                                           const LinearAffectiveUtility<double>& c, double alpha,
                                           const std::vector<EvidenceOption>& menu,
                                           const ThresholdSearch& search = {});

/// First switching point, or nullopt when the preferred option never changes
/// (including identical options, whose difference is identically 0).
std::optional<double> selection_threshold(const Categorical<double>& prior,
                                          const LinearAffectiveUtility<double>& c, double alpha,
                                          const std::vector<EvidenceOption>& menu,
                                          const ThresholdSearch& search = {});

SweepResult objective_landscape_heatmap(const Categorical<double>& prior,
                                        const LinearAffectiveUtility<double>& c,
                                        const BernoulliEvidence& evidence,
                                        const std::vector<double>& lambda_grid,
                                        const std::vector<double>& alpha_grid);

/// Both options solved at every (lambda, alpha); records the choice, the two
/// totals, their difference (A - B) and the posterior after selection.
SweepResult selection_boundary_heatmap(const Categorical<double>& prior,
                                       const LinearAffectiveUtility<double>& c,
                                       const std::vector<EvidenceOption>& menu,
                                       const std::vector<double>& lambda_grid,
                                       const std::vector<double>& alpha_grid);

struct PolarizationAgents {
  LinearAffectiveUtility<double> agent1{1.0, 0.0};
  LinearAffectiveUtility<double> agent2{0.0, 1.0};
};

SweepResult polarization_sweep(const Categorical<double>& prior, const Likelihood<double>& evidence,
                               const std::vector<double>& lambda_grid,
                               const std::vector<double>& alpha_grid,
                               const PolarizationAgents& agents = {});

/// Two-option evidence menus with a fixed agent. Construction checks the
/// structural constraints that define each scenario and throws
/// InvalidParameter if they do not hold.
struct SelectionScenario {
  enum class Kind {
    tradeoff,  // A confirms but moves far from the prior, B contradicts mildly
    dominant,  // A confirms and moves less than the contradicting B
  };

  Kind kind;
  Categorical<double> prior;
  LinearAffectiveUtility<double> c;
  std::vector<EvidenceOption> menu;

  SelectionScenario(Kind kind, Categorical<double> prior, LinearAffectiveUtility<double> c,
                    std::vector<EvidenceOption> menu);
};

SelectionScenario scenario_tradeoff();
SelectionScenario scenario_dominant();

}  // namespace mvbu::experiments

#endif  // MVBU_EXPERIMENTS_HPP
