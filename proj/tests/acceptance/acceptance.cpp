// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria. argv[1] is a scratch directory for criterion 10.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "mvbu/cli.hpp"
#include "mvbu/experiments.hpp"
#include "mvbu/solver.hpp"
#include "support.hpp"

using namespace mvbu;
using namespace mvbu::experiments;
using mvbu::testing::Gen;
using mvbu::testing::sup_distance;

namespace {

// Tolerances and budgets, one block per criterion.
constexpr double kBayesTol = 1e-12;            // 1
constexpr double kBayesSeconds = 1.0;
constexpr double kNumericTol = 1e-6;           // 2
constexpr double kGridStep = 1e-4;
constexpr double kTripleSeconds = 30.0;
constexpr double kInvarianceTol = 1e-12;       // 3
constexpr double kFrozenLambda = 1e9;          // 4
constexpr double kFrozenTol = 1e-6;
constexpr double kWishfulLambda = 1e-6;
constexpr double kWishfulTol = 1e-3;
constexpr double kFig3Seconds = 5.0;           // 5
constexpr double kBisectionTol = 1e-6;         // 6
constexpr double kFig4Alpha = 2.0;
// Threshold for the tradeoff menu at alpha = 2, from an independent
// high-precision root find on the lambda log Z difference.
constexpr double kGoldenThreshold = 1.58389299377651803;
constexpr double kGapTol = 1e-3;               // 7
constexpr double kGapLambdaSmall = 0.999909204262595;  // tanh(5)
constexpr double kGapLambdaLarge = 0.0499583749578800;  // tanh(0.05)
constexpr double kGradientRelTol = 1e-5;       // 9
constexpr double kGradientStep = 1e-6;
constexpr double kFigureSeconds = 10.0;        // 10

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(double x, int digits = 3) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

template <typename F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome bayes_recovery() {
  double worst = 0.0;
  const double secs = timed([&] {
    Gen gen(101);
    for (int i = 0; i < 1000; ++i) {
      const auto prior = gen.categorical(2, 0.0);
      const auto lik = gen.likelihood(2, 1e-3, 1.0);
      const auto c = LinearAffectiveUtility<double>::constant(2, gen.uniform(-10, 10));
      const auto q = closed_form_update(prior, lik, c, 1.0, 1.0).posterior;
      worst = std::max(worst, sup_distance(q, bayes_update(prior, lik)));
    }
  });
  return {worst <= kBayesTol && secs < kBayesSeconds,
          "1000 instances, max |q - Bayes| = " + sci(worst) + " (tol " + sci(kBayesTol) + "), " +
              sci(secs) + " s (limit " + sci(kBayesSeconds) + " s)"};
}

Outcome triple_oracle() {
  double worst_numeric = 0.0, worst_grid = 0.0;
  int failures = 0;
  const double secs = timed([&] {
    Gen gen(102);
    for (int i = 0; i < 100; ++i) {
      const auto prior = gen.categorical(2);
      const auto lik = gen.likelihood(2);
      const auto c = gen.utility(2);
      const double lambda = std::exp(gen.uniform(std::log(0.1), std::log(100.0)));
      const double alpha = gen.uniform(0.0, 10.0);
      const auto exact = closed_form_update(prior, lik, c, alpha, lambda).posterior;
      try {
        const auto num = numeric_update(prior, lik, UtilityFunctional<double>(c), alpha, lambda);
        worst_numeric = std::max(worst_numeric, sup_distance(num.posterior, exact));
      } catch (const NotConverged<double>&) {
        ++failures;
      }
      const auto grid =
          brute_force_update(prior, lik, UtilityFunctional<double>(c), alpha, lambda, kGridStep);
      worst_grid = std::max(worst_grid, sup_distance(grid.posterior, exact));
    }
  });
  return {failures == 0 && worst_numeric <= kNumericTol && worst_grid <= kGridStep &&
              secs < kTripleSeconds,
          "100 instances, numeric " + sci(worst_numeric) + " (tol " + sci(kNumericTol) +
              "), grid " + sci(worst_grid) + " (tol " + sci(kGridStep) + "), " +
              std::to_string(failures) + " non-converged, " + sci(secs) + " s (limit " +
              sci(kTripleSeconds) + " s)"};
}

Outcome invariances() {
  double shift = 0, scale = 0, reparam = 0, perm = 0;
  Gen gen(103);
  for (int i = 0; i < 500; ++i) {
    const auto n = gen.integer(2, 6);
    const auto prior = gen.categorical(n);
    const auto lik = gen.likelihood(n);
    const auto c = gen.utility(n);
    const double alpha = gen.uniform(0, 10);
    const double lambda = gen.uniform(0.1, 100);
    const auto base = closed_form_update(prior, lik, c, alpha, lambda).posterior;

    const double k = gen.uniform(-10, 10);
    shift = std::max(shift, sup_distance(base, closed_form_update(prior, lik,
                                                                  LinearAffectiveUtility<double>(
                                                                      c.coeffs().array() + k),
                                                                  alpha, lambda)
                                                   .posterior));
    const double gamma = gen.uniform(1e-3, 1.0 / lik.values().maxCoeff());
    scale = std::max(scale,
                     sup_distance(base, closed_form_update(prior, Likelihood<double>(lik.values() * gamma),
                                                           c, alpha, lambda)
                                            .posterior));
    reparam = std::max(
        reparam, sup_distance(base, closed_form_update(prior, lik,
                                                       LinearAffectiveUtility<double>(c.coeffs() / lambda),
                                                       alpha / lambda, 1.0)
                                        .posterior));
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), gen.engine());
    Vector<double> pp(n), pl(n), pc(n), expected(n);
    for (Eigen::Index s = 0; s < n; ++s) {
      const auto j = order[static_cast<std::size_t>(s)];
      pp(s) = prior(j);
      pl(s) = lik(j);
      pc(s) = c.coeffs()(j);
      expected(s) = base(j);
    }
    const auto permuted = closed_form_update(Categorical<double>(pp), Likelihood<double>(pl),
                                             LinearAffectiveUtility<double>(pc), alpha, lambda)
                              .posterior;
    perm = std::max(perm, (permuted.probs() - expected).cwiseAbs().maxCoeff());
  }
  const double worst = std::max({shift, scale, reparam, perm});
  return {worst <= kInvarianceTol,
          "500 instances, shift " + sci(shift) + ", likelihood scale " + sci(scale) +
              ", reparameterization " + sci(reparam) + ", permutation " + sci(perm) + " (tol " +
              sci(kInvarianceTol) + ")"};
}

Outcome limits() {
  double frozen = 0.0, wishful = 0.0;
  int unique = 0;
  Gen gen(104);
  for (int i = 0; i < 500; ++i) {
    const auto n = gen.integer(2, 5);
    const auto prior = gen.categorical(n);
    const auto lik = gen.likelihood(n);
    const auto c = gen.utility(n);
    const double alpha = gen.uniform(0, 10);
    frozen = std::max(frozen,
                      sup_distance(closed_form_update(prior, lik, c, alpha, kFrozenLambda).posterior,
                                   prior));
    // Only instances whose argmax is separated from the runner-up.
    Vector<double> g = c.coeffs() + alpha * lik.values().array().log().matrix();
    std::vector<double> sorted(g.data(), g.data() + n);
    std::sort(sorted.rbegin(), sorted.rend());
    if (sorted[0] - sorted[1] < 1e-3) continue;
    ++unique;
    wishful = std::max(
        wishful, sup_distance(closed_form_update(prior, lik, c, alpha, kWishfulLambda).posterior,
                              limit_update(prior, lik, c, alpha).posterior));
  }
  return {frozen < kFrozenTol && wishful <= kWishfulTol && unique > 0,
          "lambda=1e9: max |q - prior| = " + sci(frozen) + " (tol " + sci(kFrozenTol) +
              "); lambda=1e-6 vs limit on " + std::to_string(unique) + " unique-argmax instances: " +
              sci(wishful) + " (tol " + sci(kWishfulTol) + ")"};
}

Outcome fig3() {
  std::size_t a_ok = 0, b_ok = 0, levels = 0;
  std::vector<double> b_failures;
  const double secs = timed([&] {
    const Categorical<double> prior{0.3, 0.7};
    const LinearAffectiveUtility<double> c{1, 0};
    const auto ev = evidence_grid();
    levels = ev.size();
    const auto by_lambda = evidence_strength_sweep(prior, c, {1.0, 10.0}, {1.0}, ev);
    const auto by_alpha = evidence_strength_sweep(prior, c, {1.0}, {1.0, 10.0}, ev);
    const auto ql = by_lambda.column_values("q0");
    const auto qa = by_alpha.column_values("q0");
    const auto bayes = by_alpha.column_values("bayes_q0");
    const auto n = static_cast<Eigen::Index>(levels);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(ql(n + i) - 0.3) < std::abs(ql(i) - 0.3)) ++a_ok;
      if (std::abs(qa(n + i) - bayes(i)) < std::abs(qa(i) - bayes(i))) {
        ++b_ok;
      } else {
        b_failures.push_back(ev[static_cast<std::size_t>(i)].strength);
      }
    }
  });
  std::string detail = "(a) lambda 10 closer to prior at " + std::to_string(a_ok) + "/" +
                       std::to_string(levels) + " levels; (b) alpha 10 closer to Bayes at " +
                       std::to_string(b_ok) + "/" + std::to_string(levels) + " levels";
  if (!b_failures.empty()) {
    detail += " (not at e in [" + sci(b_failures.front()) + ", " + sci(b_failures.back()) + "])";
  }
  detail += ", " + sci(secs) + " s (limit " + sci(kFig3Seconds) + " s)";
  return {a_ok == levels && b_ok == levels && secs < kFig3Seconds, detail};
}

Outcome fig4() {
  ThresholdSearch search;
  search.tolerance = kBisectionTol;
  const auto s1 = scenario_tradeoff();
  const auto s2 = scenario_dominant();
  const auto r1 = selection_sign_changes(s1.prior, s1.c, kFig4Alpha, s1.menu, search);
  const auto r2 = selection_sign_changes(s2.prior, s2.c, kFig4Alpha, s2.menu, search);
  const bool golden = r1.size() == 1 && std::abs(r1[0] - kGoldenThreshold) <= kBisectionTol;
  std::string detail = "tradeoff menu: " + std::to_string(r1.size()) + " sign change(s)";
  if (!r1.empty()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " at lambda* = %.9f (golden %.9f)", r1[0], kGoldenThreshold);
    detail += buf;
  }
  detail += "; dominant menu: " + std::to_string(r2.size()) + " sign change(s)";
  return {golden && r2.empty(), detail};
}

Outcome fig5() {
  const Categorical<double> flat{0.5, 0.5};
  const auto points = polarization_sweep(flat, Likelihood<double>{0.5, 0.5}, {0.1, 10.0}, {1.0});
  const double g_small = points.records(0, points.column("gap"));
  const double g_large = points.records(1, points.column("gap"));

  auto non_increasing = [](const Eigen::VectorXd& g) {
    for (Eigen::Index i = 1; i < g.size(); ++i) {
      if (g(i) > g(i - 1)) return false;
    }
    return true;
  };
  const auto by_lambda =
      polarization_sweep(flat, Likelihood<double>{0.5, 0.5}, linspace(0, 10, 101), {1.0})
          .column_values("gap");
  const auto by_alpha =
      polarization_sweep(flat, Likelihood<double>{0.6, 0.4}, {1.0}, linspace(0, 10, 101))
          .column_values("gap");
  const bool lambda_mono = non_increasing(by_lambda);
  const bool alpha_mono = non_increasing(by_alpha) && by_alpha(by_alpha.size() - 1) < by_alpha(0);
  const bool pass = std::abs(g_small - kGapLambdaSmall) <= kGapTol &&
                    std::abs(g_large - kGapLambdaLarge) <= kGapTol && lambda_mono && alpha_mono;
  return {pass, "gap(0.1) = " + sci(g_small, 6) + ", gap(10) = " + sci(g_large, 6) + " (tol " +
                    sci(kGapTol) + "); non-increasing in lambda: " + (lambda_mono ? "yes" : "no") +
                    "; converging in alpha with lik (0.6,0.4): " + (alpha_mono ? "yes" : "no")};
}

Outcome tempering() {
  const std::vector<double> lambdas{0.1, 0.5, 1, 2, 5, 10, 100};
  int violations = 0;
  Gen gen(108);
  for (int i = 0; i < 100; ++i) {
    const auto n = gen.integer(2, 5);
    const auto prior = gen.categorical(n);
    const auto lik = gen.likelihood(n);
    const auto c = gen.utility(n);
    const double alpha = gen.uniform(0, 10);
    double prev = INFINITY;
    for (double l : lambdas) {
      const double kl = kl_divergence(closed_form_update(prior, lik, c, alpha, l).posterior, prior);
      if (kl > prev) ++violations;
      prev = kl;
    }
  }
  return {violations == 0,
          "100 instances x 7 lambdas, " + std::to_string(violations) + " increases in KL"};
}

Outcome gradients() {
  double worst = 0.0;
  Gen gen(109);
  for (int i = 0; i < 100; ++i) {
    const auto n = gen.integer(2, 5);
    const auto prior = gen.categorical(n);
    const auto lik = gen.likelihood(n);
    const auto c = gen.utility(n);
    const double alpha = gen.uniform(0, 10);
    const double lambda = gen.uniform(0.1, 10);
    const LogitObjective<double> obj(prior, lik, c, alpha, lambda);
    Vector<double> theta(n);
    for (Eigen::Index k = 0; k < n; ++k) theta(k) = gen.uniform(-3, 3);
    Vector<double> fd(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      Vector<double> up = theta, down = theta;
      up(k) += kGradientStep;
      down(k) -= kGradientStep;
      fd(k) = (obj.value(up) - obj.value(down)) / (2 * kGradientStep);
    }
    const Vector<double> g = obj.gradient(theta);
    worst = std::max(worst, (g - fd).norm() / std::max(1.0, fd.norm()));
  }
  return {worst <= kGradientRelTol,
          "100 points, max relative error " + sci(worst) + " (tol " + sci(kGradientRelTol) + ")"};
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

struct PlotShape {
  const char* file;
  std::size_t curves;
  std::size_t references;
  std::size_t heatmaps;
  bool boundary;
};

Outcome reproduction(const std::filesystem::path& scratch) {
  // Curves per file follow the figure descriptions: one per lambda (or alpha)
  // plus the Bayes reference; two options; two agents plus Bayes; two
  // landscapes; four selection panels with the boundary.
  const std::vector<std::pair<std::string, std::vector<PlotShape>>> figures = {
      {"fig3", {{"fig3_lambda", 10, 1, 0, false}, {"fig3_alpha", 10, 1, 0, false}}},
      {"fig4", {{"fig4_scenario1", 2, 0, 0, false}, {"fig4_scenario2", 2, 0, 0, false}}},
      {"fig5", {{"fig5_lambda", 2, 1, 0, false}, {"fig5_alpha", 2, 1, 0, false}}},
      {"fig6", {{"fig6_disconfirming", 0, 0, 2, false}, {"fig6_confirming", 0, 0, 2, false}}},
      {"fig7", {{"fig7_selection", 0, 0, 4, true}}},
  };
  bool pass = true;
  std::ostringstream detail;
  for (const auto& [fig, shapes] : figures) {
    double slowest = 0.0;
    for (const char* run : {"run1", "run2"}) {
      const auto dir = scratch / run;
      const std::string dir_s = dir.string();
      const char* argv[] = {"mvbu", "reproduce", fig.c_str(), "--out-dir", dir_s.c_str()};
      std::ostringstream out, err;
      int code = -1;
      const double secs = timed([&] { code = cli_main(5, argv, out, err); });
      slowest = std::max(slowest, secs);
      if (code != 0) {
        pass = false;
        detail << fig << " exit " << code << " (" << err.str() << "); ";
      }
    }
    bool identical = true, shaped = true;
    for (const auto& s : shapes) {
      try {
        const auto a = read_text_file(scratch / "run1" / (std::string(s.file) + ".csv"));
        const auto b = read_text_file(scratch / "run2" / (std::string(s.file) + ".csv"));
        identical = identical && a == b && !a.empty();
        const auto svg = read_text_file(scratch / "run1" / (std::string(s.file) + ".svg"));
        shaped = shaped && count(svg, "<polyline class=\"curve\"") == s.curves &&
                 count(svg, "<polyline class=\"curve reference\"") == s.references &&
                 count(svg, "<g class=\"heatmap\"") == s.heatmaps &&
                 (count(svg, "<polyline class=\"boundary\"") > 0) == s.boundary;
      } catch (const IoError&) {
        identical = shaped = false;
      }
    }
    const bool ok = identical && shaped && slowest < kFigureSeconds;
    pass = pass && ok;
    detail << fig << ": " << sci(slowest) << " s" << (identical ? "" : ", CSV differs")
           << (shaped ? "" : ", plot structure wrong") << "; ";
  }
  detail << "limit " << sci(kFigureSeconds) << " s each";
  return {pass, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path scratch =
      argc > 1 ? std::filesystem::path(argv[1])
               : std::filesystem::temp_directory_path() / "mvbu_acceptance";
  std::filesystem::remove_all(scratch);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"Bayes recovery", bayes_recovery},
      {"triple-oracle agreement", triple_oracle},
      {"invariance suite", invariances},
      {"limit behaviour", limits},
      {"evidence-strength response", fig3},
      {"evidence selection threshold", fig4},
      {"polarisation", fig5},
      {"tempering monotonicity", tempering},
      {"gradient validation", gradients},
      {"reproduction commands", [&] { return reproduction(scratch); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s  criterion %2zu  %-30s %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed),
              criteria.size());
  return failed;
}
