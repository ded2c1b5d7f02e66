#include "mvbu/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <ostream>

#include "CLI11.hpp"

namespace mvbu {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

Eigen::VectorXd as_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Categorical<double> categorical(const std::vector<double>& v) { return Categorical<double>(as_eigen(v)); }
Likelihood<double> likelihood(const std::vector<double>& v) { return Likelihood<double>(as_eigen(v)); }
LinearAffectiveUtility<double> utility(const std::vector<double>& v) {
  return LinearAffectiveUtility<double>(as_eigen(v));
}

ordered_json metadata_for(const RunConfig& cfg, std::string_view kind) {
  ordered_json meta;
  meta["kind"] = kind;
  meta["config"] = cfg.to_json();
  return meta;
}

UpdateResult<double> run_update(const RunConfig& cfg) {
  const auto prior = categorical(cfg.prior);
  const auto lik = likelihood(cfg.lik);
  const auto c = utility(cfg.c);
  switch (cfg.solver) {
    case SolverChoice::automatic:
      return optimal_update(prior, lik, AgentParams<double>(cfg.lambda, cfg.alpha, c), cfg.numeric);
    case SolverChoice::closed_form:
      return closed_form_update(prior, lik, c, cfg.alpha, cfg.lambda);
    case SolverChoice::limit:
      return limit_update(prior, lik, c, cfg.alpha);
    case SolverChoice::numeric:
      return numeric_update(prior, lik, UtilityFunctional<double>(c), cfg.alpha, cfg.lambda,
                            cfg.numeric);
    case SolverChoice::brute_force:
      return brute_force_update(prior, lik, UtilityFunctional<double>(c), cfg.alpha, cfg.lambda,
                                cfg.grid_step);
  }
  throw InvalidParameter("unknown solver");
}

RunOutput from_sweep(experiments::SweepResult sweep, const RunConfig& cfg) {
  RunOutput out{make_table(sweep, metadata_for(cfg, sweep.kind)), std::nullopt, {}};
  std::size_t swept = 0;
  for (const auto& a : sweep.axes) swept += a.values.size() > 1;
  out.plot.kind =
      swept == 2 && !sweep.hints.heatmaps.empty() && cfg.scenario != Scenario::sweep
          ? PlotKind::heatmap
          : PlotKind::line;
  out.plot.log_x = cfg.lambda_grid.spacing == GridSpec::Spacing::log && !cfg.lambda_grid.is_list();
  out.sweep = std::move(sweep);
  return out;
}

std::vector<experiments::BernoulliEvidence> evidence_levels(const GridSpec& grid) {
  std::vector<experiments::BernoulliEvidence> out;
  for (double e : grid.values()) out.emplace_back(e);
  return out;
}

}  // namespace

RunOutput run_config(const RunConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::update: {
      const auto r = run_update(cfg);
      return {make_table(r, metadata_for(cfg, "update")), std::nullopt, {}};
    }
    case Scenario::sweep:
      return from_sweep(experiments::evidence_strength_sweep(
                            categorical(cfg.prior), utility(cfg.c), cfg.lambda_grid.values(),
                            cfg.alpha_grid.values(), evidence_levels(cfg.evidence_grid)),
                        cfg);
    case Scenario::select: {
      const auto outcome = experiments::select_evidence(
          categorical(cfg.prior), AgentParams<double>(cfg.lambda, cfg.alpha, utility(cfg.c)),
          cfg.menu, cfg.numeric);
      return {make_table(outcome, metadata_for(cfg, "selection")), std::nullopt, {}};
    }
    case Scenario::threshold: {
      const auto roots = experiments::selection_sign_changes(categorical(cfg.prior), utility(cfg.c),
                                                             cfg.alpha, cfg.menu, cfg.search);
      auto meta = metadata_for(cfg, "threshold");
      meta["threshold"] = roots.empty() ? ordered_json(nullptr) : ordered_json(roots.front());
      return {make_threshold_table(roots, std::move(meta)), std::nullopt, {}};
    }
    case Scenario::heatmap: {
      const auto lambdas = cfg.lambda_grid.values();
      const auto alphas = cfg.alpha_grid.values();
      if (cfg.heatmap == HeatmapKind::objective) {
        return from_sweep(experiments::objective_landscape_heatmap(
                              categorical(cfg.prior), utility(cfg.c),
                              experiments::BernoulliEvidence(cfg.evidence), lambdas, alphas),
                          cfg);
      }
      auto out = from_sweep(experiments::selection_boundary_heatmap(
                                categorical(cfg.prior), utility(cfg.c), cfg.menu, lambdas, alphas),
                            cfg);
      // A single alpha makes this a lambda curve; record where the choice flips.
      const auto [lo, hi] = std::minmax_element(lambdas.begin(), lambdas.end());
      if (alphas.size() == 1 && *lo > 0.0 && *hi > *lo) {
        experiments::ThresholdSearch search;
        search.lambda_min = *lo;
        search.lambda_max = *hi;
        out.table.metadata["sign_changes"] = experiments::selection_sign_changes(
            categorical(cfg.prior), utility(cfg.c), alphas.front(), cfg.menu, search);
      }
      return out;
    }
    case Scenario::polarize: {
      experiments::PolarizationAgents agents{utility(cfg.c_agent1), utility(cfg.c_agent2)};
      return from_sweep(experiments::polarization_sweep(categorical(cfg.prior), likelihood(cfg.lik),
                                                        cfg.lambda_grid.values(),
                                                        cfg.alpha_grid.values(), agents),
                        cfg);
    }
  }
  throw InvalidParameter("unknown scenario");
}

std::vector<FigureJob> figure_jobs(std::string_view figure) {
  auto job = [](std::string name, std::string title, const json& doc) {
    return FigureJob{std::move(name), resolve_config(doc), std::move(title)};
  };
  const json linear_1_10 = {{"min", 1}, {"max", 10}, {"points", 10}};
  if (figure == "fig3") {
    return {job("fig3_lambda", "Posterior q(s=0) vs evidence, one curve per lambda (alpha = 1)",
                {{"scenario", "sweep"}, {"lambda_grid", linear_1_10}, {"alpha_grid", json::array({1.0})}}),
            job("fig3_alpha", "Posterior q(s=0) vs evidence, one curve per alpha (lambda = 1)",
                {{"scenario", "sweep"}, {"lambda_grid", json::array({1.0})}, {"alpha_grid", linear_1_10}})};
  }
  if (figure == "fig4") {
    const json grid = {{"min", 0.1}, {"max", 100}, {"points", 201}, {"spacing", "log"}};
    auto scenario = [&](const char* preset) {
      return json{{"scenario", "heatmap"}, {"heatmap", "selection"}, {"preset", preset},
                  {"lambda_grid", grid},   {"alpha_grid", json::array({2.0})}};
    };
    return {job("fig4_scenario1", "Optimal objective per evidence option, tradeoff menu (alpha = 2)",
                scenario("tradeoff")),
            job("fig4_scenario2", "Optimal objective per evidence option, dominant menu (alpha = 2)",
                scenario("dominant"))};
  }
  if (figure == "fig5") {
    return {job("fig5_lambda", "Two agents with opposed utilities vs lambda (alpha = 1)",
                {{"scenario", "polarize"}}),
            job("fig5_alpha", "Two agents with opposed utilities vs alpha (lambda = 1)",
                {{"scenario", "polarize"},
                 {"lambda_grid", json::array({1.0})},
                 {"alpha_grid", {{"min", 0}, {"max", 10}, {"points", 101}}}})};
  }
  if (figure == "fig6") {
    auto landscape = [](double e) {
      return json{{"scenario", "heatmap"}, {"heatmap", "objective"}, {"evidence", e}};
    };
    return {job("fig6_disconfirming", "Objective and posterior landscapes, p(o|s=0) = 0.3",
                landscape(0.3)),
            job("fig6_confirming", "Objective and posterior landscapes, p(o|s=0) = 0.7",
                landscape(0.7))};
  }
  if (figure == "fig7") {
    return {job("fig7_selection", "Evidence selection over (lambda, alpha), tradeoff menu",
                {{"scenario", "heatmap"}, {"heatmap", "selection"}, {"preset", "tradeoff"}})};
  }
  throw ValidationError("figure", "unknown figure '" + std::string(figure) +
                                      "' (expected fig3, fig4, fig5, fig6 or fig7)");
}

std::vector<std::filesystem::path> reproduce_figure(std::string_view figure,
                                                    const std::filesystem::path& dir,
                                                    OutputFormat format) {
  std::vector<std::filesystem::path> written;
  for (const auto& job : figure_jobs(figure)) {
    auto out = run_config(job.config);
    const auto data_path = dir / (job.name + (format == OutputFormat::json ? ".json" : ".csv"));
    emit_table(out.table, format, data_path);
    written.push_back(data_path);
    if (out.sweep) {
      out.plot.title = job.title;
      const auto plot_path = dir / (job.name + ".svg");
      emit_plot(*out.sweep, out.plot, plot_path);
      written.push_back(plot_path);
    }
  }
  return written;
}

namespace {

double parse_number(const std::string& text, const std::string& field) {
  char* end = nullptr;
  const double x = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw ValidationError(field, "'" + text + "' is not a number");
  }
  return x;
}

json parse_list(const std::string& text, const std::string& field) {
  json out = json::array();
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find(',', pos), text.size());
    out.push_back(parse_number(text.substr(pos, end - pos), field));
    pos = end + 1;
  }
  return out;
}

struct Overrides {
  std::string config, format, out, plot;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "JSON config file, or a result file to re-run");
  sub->add_option("--format", o.format, "Output format: csv or json");
  sub->add_option("--out", o.out, "Write the table to this file instead of standard output");
  sub->add_option("--plot", o.plot, "Write an SVG plot of the sweep to this file");
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Motivated variational belief updating: solvers, sweeps and figure reproduction",
               "mvbu"};
  app.require_subcommand(1);

  struct Field {
    const char* key;
    const char* help;
    enum { number, list, word } type;
  };
  static constexpr Field kFields[] = {
      {"prior", "Prior probabilities, comma separated", Field::list},
      {"lik", "Likelihood p(o|s) per state, comma separated", Field::list},
      {"c", "Linear utility coefficients, comma separated", Field::list},
      {"alpha", "Likelihood weight", Field::number},
      {"lambda", "Conservatism (KL weight)", Field::number},
      {"evidence", "Bernoulli evidence strength p(o|s=0)", Field::number},
      {"lambda-grid", "Explicit lambda grid, comma separated", Field::list},
      {"alpha-grid", "Explicit alpha grid, comma separated", Field::list},
      {"lambda-range", "Threshold search range min,max", Field::list},
      {"c-agent1", "Agent 1 utility coefficients", Field::list},
      {"c-agent2", "Agent 2 utility coefficients", Field::list},
      {"solver", "auto, closed_form, limit, numeric or brute_force", Field::word},
      {"preset", "Evidence menu preset: tradeoff or dominant", Field::word},
      {"heatmap", "Heatmap kind: objective or selection", Field::word},
  };
  struct Applicable {
    const char* scenario;
    const char* description;
    std::vector<std::string> fields;
  };
  const std::vector<Applicable> scenarios = {
      {"update", "Optimal posterior for one observation",
       {"prior", "lik", "c", "alpha", "lambda", "solver"}},
      {"sweep", "Posterior across evidence strengths and (lambda, alpha) values",
       {"prior", "c", "lambda-grid", "alpha-grid"}},
      {"select", "Choose between evidence options", {"preset", "prior", "c", "alpha", "lambda"}},
      {"threshold", "Lambda at which the preferred evidence option switches",
       {"preset", "prior", "c", "alpha", "lambda-range"}},
      {"heatmap", "Objective or selection landscape over (lambda, alpha)",
       {"heatmap", "preset", "prior", "c", "evidence", "lambda-grid", "alpha-grid"}},
      {"polarize", "Two agents with opposed utilities observing the same evidence",
       {"prior", "lik", "c-agent1", "c-agent2", "lambda-grid", "alpha-grid"}},
  };

  Overrides o;
  std::map<std::string, std::map<std::string, std::string>> given;  // scenario -> flag -> text
  std::map<std::string, CLI::App*> subs;
  std::map<std::string, std::map<std::string, CLI::Option*>> options;
  for (const auto& s : scenarios) {
    auto* sub = app.add_subcommand(s.scenario, s.description);
    subs[s.scenario] = sub;
    add_common(sub, o);
    for (const auto& name : s.fields) {
      const auto* f = std::find_if(std::begin(kFields), std::end(kFields),
                                   [&](const Field& fd) { return name == fd.key; });
      options[s.scenario][name] = sub->add_option("--" + name, given[s.scenario][name], f->help);
    }
  }
  std::string figure;
  std::string out_dir = ".";
  auto* reproduce = app.add_subcommand("reproduce", "Run the default configuration of a figure");
  reproduce->add_option("figure", figure, "fig3, fig4, fig5, fig6 or fig7")->required();
  reproduce->add_option("--out-dir", out_dir, "Directory for the CSV/JSON and SVG files");
  reproduce->add_option("--format", o.format, "Output format: csv or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfigError;
  }

  try {
    OutputFormat format = OutputFormat::csv;
    if (!o.format.empty()) {
      const auto f = parse_format(o.format);
      if (!f) throw ValidationError("format", "expected csv or json, got '" + o.format + "'");
      format = *f;
    }

    if (reproduce->parsed()) {
      for (const auto& path : reproduce_figure(figure, out_dir, format)) {
        out << path.string() << "\n";
      }
      return kExitOk;
    }

    std::string scenario;
    for (const auto& [name, sub] : subs) {
      if (sub->parsed()) scenario = name;
    }
    json doc = o.config.empty() ? json::object() : read_config_document(o.config);
    if (!doc.is_object()) throw ValidationError("<root>", "expected a JSON object");
    if (doc.contains("scenario") && doc["scenario"] != scenario) {
      throw ValidationError("scenario", "config is for '" + doc["scenario"].dump() +
                                            "' but the subcommand is '" + scenario + "'");
    }
    doc["scenario"] = scenario;
    for (const auto& [name, opt] : options[scenario]) {
      if (opt->count() == 0) continue;
      const auto* f = std::find_if(std::begin(kFields), std::end(kFields),
                                   [&, n = name](const Field& fd) { return n == fd.key; });
      std::string key = name;
      std::replace(key.begin(), key.end(), '-', '_');
      const auto& text = given[scenario][name];
      switch (f->type) {
        case Field::number: doc[key] = parse_number(text, key); break;
        case Field::list: doc[key] = parse_list(text, key); break;
        case Field::word: doc[key] = text; break;
      }
    }

    const RunConfig cfg = resolve_config(doc);
    if (o.format.empty()) format = cfg.format;
    const auto out_path = !o.out.empty() ? std::optional<std::filesystem::path>(o.out) : cfg.output_path;
    const auto plot_path =
        !o.plot.empty() ? std::optional<std::filesystem::path>(o.plot) : cfg.plot_path;

    auto result = run_config(cfg);
    if (plot_path && !result.sweep) {
      throw ValidationError("plot", "scenario '" + scenario + "' produces no plottable sweep");
    }
    if (out_path) {
      emit_table(result.table, format, *out_path);
    } else {
      out << serialize(result.table, format);
    }
    if (plot_path) emit_plot(*result.sweep, result.plot, *plot_path);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const AxisMismatch& e) {
    err << "plot error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const Error& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolverError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolverError;
  }
}

}  // namespace mvbu
