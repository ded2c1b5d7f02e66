#include "doctest.h"

#include <cmath>

#include "mvbu/experiments.hpp"
#include "support.hpp"

using namespace mvbu;
using namespace mvbu::experiments;
using mvbu::testing::Gen;

namespace {

// Threshold for the tradeoff menu at alpha = 2, from an independent
// high-precision root find on the lambda log Z difference.
constexpr double kTradeoffThreshold = 1.58389299377651803;

const Categorical<double> kPrior03{0.3, 0.7};

double at(const SweepResult& r, Eigen::Index row, const char* column) {
  return r.records(row, r.column(column));
}

}  // namespace

TEST_CASE("grids") {
  const auto lin = linspace(0.0, 10.0, 101);
  CHECK(lin.size() == 101);
  CHECK(lin.front() == 0.0);
  CHECK(lin.back() == 10.0);
  CHECK(lin[50] == doctest::Approx(5.0));
  const auto lg = logspace(0.1, 100.0, 4);
  CHECK(lg.front() == 0.1);
  CHECK(lg.back() == 100.0);
  CHECK(lg[1] == doctest::Approx(1.0));
  CHECK_THROWS_AS(logspace(0.0, 1.0, 3), InvalidParameter);
  CHECK(linspace(2.0, 3.0, 1) == std::vector<double>{2.0});

  const auto ev = evidence_grid();
  CHECK(ev.size() == 101);
  CHECK(ev.front().strength == 0.01);
  CHECK(ev.back().strength == 0.99);
  CHECK_THROWS_AS(evidence_grid(-0.1, 0.5, 3), InvalidParameter);
  CHECK_THROWS_AS(BernoulliEvidence(1.5), InvalidParameter);
  CHECK(BernoulliEvidence::clamped(1.0).strength == 0.99);
  CHECK(BernoulliEvidence::clamped(0.0).strength == 0.01);

  const auto lik = BernoulliEvidence(0.7).likelihood();
  CHECK(lik(0) == 0.7);
  CHECK(lik(1) == doctest::Approx(0.3));
}

TEST_CASE("evidence_strength_sweep examples") {
  SUBCASE("zero utility at unit weights recovers Bayes") {
    auto r = evidence_strength_sweep(kPrior03, LinearAffectiveUtility<double>{0, 0}, {1.0}, {1.0},
                                     {BernoulliEvidence(0.7)});
    REQUIRE(r.records.rows() == 1);
    CHECK(at(r, 0, "q0") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(at(r, 0, "bayes_q0") == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("larger lambda stays closer to the prior") {
    auto r = evidence_strength_sweep(kPrior03, LinearAffectiveUtility<double>{1, 0}, {1.0, 10.0},
                                     {1.0}, {BernoulliEvidence(0.7)});
    CHECK(std::abs(at(r, 1, "q0") - 0.3) < std::abs(at(r, 0, "q0") - 0.3));
  }
  SUBCASE("larger alpha tracks Bayes more closely") {
    auto r = evidence_strength_sweep(kPrior03, LinearAffectiveUtility<double>{1, 0}, {1.0},
                                     {1.0, 10.0}, {BernoulliEvidence(0.3)});
    const double bayes = 0.09 / 0.58;
    CHECK(at(r, 0, "bayes_q0") == doctest::Approx(bayes).epsilon(1e-12));
    CHECK(std::abs(at(r, 1, "q0") - bayes) < std::abs(at(r, 0, "q0") - bayes));
  }
  SUBCASE("cardinality and row-major order") {
    const std::vector<double> lambdas{0.5, 1.0, 2.0};
    const std::vector<double> alphas{0.0, 3.0};
    const auto ev = evidence_grid(0.1, 0.9, 5);
    auto r = evidence_strength_sweep(kPrior03, LinearAffectiveUtility<double>{1, 0}, lambdas,
                                     alphas, ev);
    CHECK(r.records.rows() == 30);
    CHECK(r.grid_size() == 30);
    Eigen::Index row = 0;
    for (double l : lambdas) {
      for (double a : alphas) {
        for (const auto& e : ev) {
          CHECK(at(r, row, "lambda") == l);
          CHECK(at(r, row, "alpha") == a);
          CHECK(at(r, row, "evidence") == e.strength);
          ++row;
        }
      }
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(evidence_strength_sweep(kPrior03, LinearAffectiveUtility<double>{1, 0}, {},
                                            {1.0}, evidence_grid()),
                    InvalidParameter);
    CHECK_THROWS_AS(
        evidence_strength_sweep(Categorical<double>{0.2, 0.3, 0.5},
                                LinearAffectiveUtility<double>{1, 0, 0}, {1.0}, {1.0},
                                evidence_grid()),
        UnsupportedDimension);
  }
}

TEST_CASE("property: motivated bias direction across the evidence sweep") {
  Gen gen(31);
  for (int trial = 0; trial < 50; ++trial) {
    auto prior = gen.categorical(2);
    const std::vector<double> lambdas{gen.uniform(0.05, 20.0)};
    const std::vector<double> alphas{gen.uniform(0.0, 10.0)};
    const auto ev = evidence_grid();
    auto biased = evidence_strength_sweep(prior, LinearAffectiveUtility<double>{1, 0}, lambdas,
                                          alphas, ev);
    auto neutral = evidence_strength_sweep(prior, LinearAffectiveUtility<double>{0, 0}, lambdas,
                                           alphas, ev);
    const auto b = biased.column_values("q0");
    const auto n = neutral.column_values("q0");
    CHECK((b.array() > n.array()).all());
  }
}

TEST_CASE("sweeps are deterministic") {
  const auto a = evidence_strength_sweep(kPrior03, LinearAffectiveUtility<double>{1, 0},
                                         linspace(1, 10, 10), {1.0}, evidence_grid());
  const auto b = evidence_strength_sweep(kPrior03, LinearAffectiveUtility<double>{1, 0},
                                         linspace(1, 10, 10), {1.0}, evidence_grid());
  CHECK(a.records == b.records);
  CHECK(a.columns == b.columns);
}

TEST_CASE("select_evidence examples") {
  const LinearAffectiveUtility<double> c{1, 0};
  SUBCASE("single option") {
    auto out = select_evidence(kPrior03, AgentParams<double>(1.0, 1.0, c),
                               {{"only", Likelihood<double>{0.6, 0.4}}});
    CHECK(out.chosen_index == 0);
    CHECK(out.per_option.size() == 1);
  }
  SUBCASE("ties go to the lowest index") {
    auto out = select_evidence(kPrior03, AgentParams<double>(1.0, 1.0, c),
                               {{"x", Likelihood<double>{0.6, 0.4}},
                                {"y", Likelihood<double>{0.6, 0.4}}});
    CHECK(out.chosen_index == 0);
  }
  SUBCASE("tradeoff menu flips between small and large lambda") {
    const auto sc = scenario_tradeoff();
    CHECK(select_evidence(sc.prior, AgentParams<double>(0.1, 2.0, sc.c), sc.menu).chosen_index == 0);
    CHECK(select_evidence(sc.prior, AgentParams<double>(100.0, 2.0, sc.c), sc.menu).chosen_index ==
          1);
  }
  SUBCASE("-inf totals rank last") {
    // alpha > 0 and zero likelihood on the only prior-supported state.
    const Categorical<double> prior{1.0, 0.0};
    auto out = select_evidence(prior, AgentParams<double>(1.0, 1.0, c),
                               {{"impossible", Likelihood<double>{0.0, 1.0}},
                                {"fine", Likelihood<double>{0.5, 0.5}}});
    CHECK(out.chosen_index == 1);
  }
  SUBCASE("empty menu") {
    CHECK_THROWS_AS(select_evidence(kPrior03, AgentParams<double>(1.0, 1.0, c), {}), EmptyMenu);
  }
}

TEST_CASE("selection_threshold") {
  SUBCASE("tradeoff menu: one switch at the golden lambda") {
    const auto sc = scenario_tradeoff();
    const auto roots = selection_sign_changes(sc.prior, sc.c, 2.0, sc.menu);
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(roots[0] - kTradeoffThreshold) <= 1e-6);
    const auto t = selection_threshold(sc.prior, sc.c, 2.0, sc.menu);
    REQUIRE(t.has_value());
    CHECK(*t == roots[0]);
    // The choice differs on either side of the threshold.
    const double tol = ThresholdSearch{}.tolerance;
    const auto below = select_evidence(sc.prior, AgentParams<double>(*t - tol, 2.0, sc.c), sc.menu);
    const auto above = select_evidence(sc.prior, AgentParams<double>(*t + tol, 2.0, sc.c), sc.menu);
    CHECK(below.chosen_index != above.chosen_index);
  }
  SUBCASE("dominant menu never switches") {
    const auto sc = scenario_dominant();
    CHECK_FALSE(selection_threshold(sc.prior, sc.c, 2.0, sc.menu).has_value());
  }
  SUBCASE("identical options never switch") {
    std::vector<EvidenceOption> menu{{"A", Likelihood<double>{0.7, 0.3}},
                                     {"B", Likelihood<double>{0.7, 0.3}}};
    CHECK_FALSE(
        selection_threshold(kPrior03, LinearAffectiveUtility<double>{1, 0}, 2.0, menu).has_value());
  }
  SUBCASE("menu size and search validation") {
    const auto sc = scenario_tradeoff();
    auto three = sc.menu;
    three.push_back(sc.menu[0]);
    CHECK_THROWS_AS(selection_threshold(sc.prior, sc.c, 2.0, three), InvalidParameter);
    CHECK_THROWS_AS(selection_threshold(sc.prior, sc.c, 2.0, {}), EmptyMenu);
    ThresholdSearch bad;
    bad.lambda_min = 0.0;
    CHECK_THROWS_AS(selection_threshold(sc.prior, sc.c, 2.0, sc.menu, bad), InvalidParameter);
  }
}

TEST_CASE("scenario constraints") {
  CHECK_NOTHROW(scenario_tradeoff());
  CHECK_NOTHROW(scenario_dominant());
  const auto sc = scenario_tradeoff();
  // Swapping the options breaks the confirm/contradict structure.
  CHECK_THROWS_AS(SelectionScenario(SelectionScenario::Kind::tradeoff, sc.prior, sc.c,
                                    {sc.menu[1], sc.menu[0]}),
                  InvalidParameter);
  // The tradeoff menu is not a dominant menu.
  CHECK_THROWS_AS(
      SelectionScenario(SelectionScenario::Kind::dominant, sc.prior, sc.c, sc.menu),
      InvalidParameter);
}

TEST_CASE("objective_landscape_heatmap") {
  const auto lambdas = linspace(0.1, 10.0, 21);
  const auto alphas = linspace(0.0, 10.0, 11);
  for (double e : {0.3, 0.7}) {
    auto r = objective_landscape_heatmap(kPrior03, LinearAffectiveUtility<double>{1, 0},
                                         BernoulliEvidence(e), lambdas, alphas);
    REQUIRE(r.records.rows() == 21 * 11);
    const auto total = r.column_values("total");
    const auto prior_total = r.column_values("prior_total");
    CHECK(((total - prior_total).array() >= -1e-12).all());
    // Fixed alpha: the pull away from the prior weakens as lambda grows.
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      for (std::size_t l = 1; l < lambdas.size(); ++l) {
        const auto prev = static_cast<Eigen::Index>((l - 1) * alphas.size() + a);
        const auto cur = static_cast<Eigen::Index>(l * alphas.size() + a);
        CHECK(std::abs(at(r, cur, "q0") - 0.3) <= std::abs(at(r, prev, "q0") - 0.3) + 1e-15);
      }
    }
  }
  auto bayes = objective_landscape_heatmap(kPrior03, LinearAffectiveUtility<double>{0, 0},
                                           BernoulliEvidence(0.7), {1.0}, {1.0});
  CHECK(at(bayes, 0, "q0") == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(bayes.hints.heatmaps.size() == 2);
}

TEST_CASE("selection_boundary_heatmap") {
  const auto lambdas = linspace(0.1, 100.0, 11);
  const auto alphas = linspace(1.0, 10.0, 10);
  SUBCASE("identical options") {
    std::vector<EvidenceOption> menu{{"A", Likelihood<double>{0.6, 0.4}},
                                     {"B", Likelihood<double>{0.6, 0.4}}};
    auto r = selection_boundary_heatmap(kPrior03, LinearAffectiveUtility<double>{1, 0}, menu,
                                        lambdas, alphas);
    CHECK((r.column_values("chosen").array() == 0.0).all());
    CHECK((r.column_values("difference").array() == 0.0).all());
  }
  SUBCASE("tradeoff menu corners and sign consistency") {
    const auto sc = scenario_tradeoff();
    auto r = selection_boundary_heatmap(sc.prior, sc.c, sc.menu, lambdas, alphas);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      CHECK(at(r, static_cast<Eigen::Index>(a), "chosen") == 0.0);
      CHECK(at(r, static_cast<Eigen::Index>((lambdas.size() - 1) * alphas.size() + a), "chosen") ==
            1.0);
    }
    for (Eigen::Index row = 0; row < r.records.rows(); ++row) {
      const double d = at(r, row, "difference");
      CHECK((d >= 0.0) == (at(r, row, "chosen") == 0.0));
      const double chosen_q0 = at(r, row, at(r, row, "chosen") == 0.0 ? "q0_a" : "q0_b");
      CHECK(at(r, row, "chosen_q0") == chosen_q0);
    }
    REQUIRE(r.hints.boundary.has_value());
    CHECK(*r.hints.boundary == "difference");
  }
  SUBCASE("menu must have two options") {
    CHECK_THROWS_AS(selection_boundary_heatmap(kPrior03, LinearAffectiveUtility<double>{1, 0}, {},
                                               lambdas, alphas),
                    EmptyMenu);
  }
}

TEST_CASE("polarization_sweep") {
  const Categorical<double> flat{0.5, 0.5};
  const Likelihood<double> uninformative{0.5, 0.5};
  SUBCASE("hand-derived gaps") {
    auto r = polarization_sweep(flat, uninformative, {0.1, 10.0}, {1.0});
    CHECK(std::abs(at(r, 0, "gap") - 0.999909204262595) <= 1e-12);
    CHECK(std::abs(at(r, 1, "gap") - 0.0499583749578800) <= 1e-12);
  }
  SUBCASE("identical agents never diverge") {
    PolarizationAgents same{LinearAffectiveUtility<double>{1, 0}, LinearAffectiveUtility<double>{1, 0}};
    auto r = polarization_sweep(flat, Likelihood<double>{0.6, 0.4}, linspace(0, 10, 11),
                                linspace(0, 10, 11), same);
    CHECK((r.column_values("gap").array() == 0.0).all());
  }
  SUBCASE("symmetry with a flat prior and uninformative evidence") {
    auto r = polarization_sweep(flat, uninformative, linspace(0, 10, 21), linspace(0, 10, 21));
    for (Eigen::Index row = 0; row < r.records.rows(); ++row) {
      const double q1 = at(r, row, "q0_agent1");
      CHECK(std::abs(q1 + at(r, row, "q0_agent2") - 1.0) <= 1e-12);
      CHECK(std::abs(at(r, row, "gap") - (2 * q1 - 1)) <= 1e-12);
    }
  }
  SUBCASE("lambda = 0 uses the limit") {
    auto r = polarization_sweep(flat, uninformative, {0.0}, {1.0});
    CHECK(at(r, 0, "gap") == 1.0);
  }
  SUBCASE("endpoints converge") {
    const Likelihood<double> informative{0.6, 0.4};
    auto by_lambda = polarization_sweep(flat, informative, linspace(0, 10, 101), {1.0});
    const auto g = by_lambda.column_values("gap");
    CHECK(g(g.size() - 1) < g(1));
    auto by_alpha = polarization_sweep(flat, informative, {1.0}, linspace(0, 10, 101));
    const auto ga = by_alpha.column_values("gap");
    CHECK(ga(ga.size() - 1) < ga(0));
  }
}
