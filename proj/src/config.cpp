#include "mvbu/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace mvbu {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::pair<std::string_view, Enum> (&table)[N],
                           std::string_view name) {
  for (const auto& [key, value] : table) {
    if (key == name) return value;
  }
  return std::nullopt;
}

template <typename Enum, std::size_t N>
std::string_view name_of(const std::pair<std::string_view, Enum> (&table)[N], Enum value) {
  for (const auto& [key, v] : table) {
    if (v == value) return key;
  }
  return "?";
}

constexpr std::pair<std::string_view, Scenario> kScenarios[] = {
    {"update", Scenario::update},       {"sweep", Scenario::sweep},
    {"select", Scenario::select},       {"threshold", Scenario::threshold},
    {"heatmap", Scenario::heatmap},     {"polarize", Scenario::polarize}};
constexpr std::pair<std::string_view, SolverChoice> kSolvers[] = {
    {"auto", SolverChoice::automatic},
    {"closed_form", SolverChoice::closed_form},
    {"limit", SolverChoice::limit},
    {"numeric", SolverChoice::numeric},
    {"brute_force", SolverChoice::brute_force}};
constexpr std::pair<std::string_view, OutputFormat> kFormats[] = {{"csv", OutputFormat::csv},
                                                                  {"json", OutputFormat::json}};
constexpr std::pair<std::string_view, HeatmapKind> kHeatmaps[] = {
    {"objective", HeatmapKind::objective}, {"selection", HeatmapKind::selection}};
constexpr std::pair<std::string_view, MenuPreset> kPresets[] = {
    {"tradeoff", MenuPreset::tradeoff}, {"dominant", MenuPreset::dominant}};

// Keys accepted by each scenario, besides "scenario" and "output".
std::set<std::string> allowed_keys(Scenario s, HeatmapKind h) {
  switch (s) {
    case Scenario::update:
      return {"prior", "lik", "c", "alpha", "lambda", "solver", "numeric", "grid_step"};
    case Scenario::sweep:
      return {"prior", "c", "lambda_grid", "alpha_grid", "evidence_grid"};
    case Scenario::select:
      return {"preset", "prior", "c", "menu", "alpha", "lambda", "numeric"};
    case Scenario::threshold:
      return {"preset", "prior", "c", "menu", "alpha", "lambda_range", "tolerance",
              "scan_points"};
    case Scenario::heatmap:
      if (h == HeatmapKind::objective) {
        return {"heatmap", "prior", "c", "evidence", "lambda_grid", "alpha_grid"};
      }
      return {"heatmap", "preset", "prior", "c", "menu", "lambda_grid", "alpha_grid"};
    case Scenario::polarize:
      return {"prior", "lik", "c_agent1", "c_agent2", "lambda_grid", "alpha_grid"};
  }
  return {};
}

[[noreturn]] void invalid(const std::string& field, const std::string& msg) {
  throw ValidationError(field, msg);
}

double get_number(const json& v, const std::string& field) {
  if (!v.is_number()) invalid(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) invalid(field, "must be finite");
  return x;
}

double get_nonnegative(const json& v, const std::string& field) {
  const double x = get_number(v, field);
  if (x < 0.0) invalid(field, "must be >= 0");
  return x;
}

double get_positive(const json& v, const std::string& field) {
  const double x = get_number(v, field);
  if (!(x > 0.0)) invalid(field, "must be > 0");
  return x;
}

std::size_t get_count(const json& v, const std::string& field, std::size_t min) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) invalid(field, "expected an integer");
  const auto n = v.get<long long>();
  if (n < static_cast<long long>(min)) {
    invalid(field, "must be >= " + std::to_string(min));
  }
  return static_cast<std::size_t>(n);
}

std::vector<double> get_vector(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) invalid(field, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(get_number(v[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string get_string(const json& v, const std::string& field) {
  if (!v.is_string()) invalid(field, "expected a string");
  return v.get<std::string>();
}

template <typename Enum, std::size_t N>
Enum get_enum(const std::pair<std::string_view, Enum> (&table)[N], const json& v,
              const std::string& field) {
  const auto name = get_string(v, field);
  if (auto e = lookup(table, name)) return *e;
  std::string options;
  for (const auto& [key, value] : table) {
    (void)value;
    options += (options.empty() ? "" : ", ") + std::string(key);
  }
  invalid(field, "unknown value '" + name + "' (expected one of " + options + ")");
}

Eigen::VectorXd as_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> from_eigen(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

void check_prior(const std::vector<double>& prior) {
  try {
    Categorical<double> p(as_eigen(prior));
  } catch (const DomainError& e) {
    invalid("prior", e.what());
  }
}

void check_likelihood(const std::vector<double>& lik, std::size_t n, const std::string& field) {
  if (lik.size() != n) {
    invalid(field, "expected " + std::to_string(n) + " entries to match the prior, got " +
                       std::to_string(lik.size()));
  }
  try {
    Likelihood<double> l(as_eigen(lik));
  } catch (const DomainError& e) {
    invalid(field, e.what());
  }
}

void check_size(const std::vector<double>& v, std::size_t n, const std::string& field) {
  if (v.size() != n) {
    invalid(field, "expected " + std::to_string(n) + " entries to match the prior, got " +
                       std::to_string(v.size()));
  }
}

void require_two_states(const std::vector<double>& prior, Scenario s) {
  if (prior.size() != 2) {
    invalid("prior", std::string(to_string(s)) + " runs on 2-state problems");
  }
}

GridSpec get_grid(const json& v, const std::string& field) {
  if (v.is_array()) return GridSpec::list(get_vector(v, field));
  if (!v.is_object()) invalid(field, "expected an array or {min, max, points[, spacing]}");
  for (const auto& [key, value] : v.items()) {
    (void)value;
    if (key != "min" && key != "max" && key != "points" && key != "spacing") {
      invalid(field + "." + key, "unknown key");
    }
  }
  for (const char* key : {"min", "max", "points"}) {
    if (!v.contains(key)) invalid(field + "." + key, "missing");
  }
  const double lo = get_number(v["min"], field + ".min");
  const double hi = get_number(v["max"], field + ".max");
  const auto n = get_count(v["points"], field + ".points", 1);
  auto spacing = GridSpec::Spacing::linear;
  if (v.contains("spacing")) {
    const auto s = get_string(v["spacing"], field + ".spacing");
    if (s == "log") {
      spacing = GridSpec::Spacing::log;
    } else if (s != "linear") {
      invalid(field + ".spacing", "expected 'linear' or 'log'");
    }
  }
  if (hi < lo) invalid(field, "max must be >= min");
  if (spacing == GridSpec::Spacing::log && !(lo > 0.0)) {
    invalid(field, "log spacing needs min > 0");
  }
  return GridSpec::range(lo, hi, n, spacing);
}

void check_grid_values(const GridSpec& g, const std::string& field, double lo, double hi) {
  for (double x : g.values()) {
    if (x < lo || x > hi) {
      invalid(field, "values must lie in [" + std::to_string(lo) + ", " +
                         (std::isinf(hi) ? std::string("inf") : std::to_string(hi)) + "]");
    }
  }
}

NumericSolverConfig get_numeric(const json& v) {
  NumericSolverConfig cfg;
  if (!v.is_object()) invalid("numeric", "expected an object");
  for (const auto& [key, value] : v.items()) {
    const std::string field = "numeric." + key;
    if (key == "max_iterations") {
      cfg.max_iterations = static_cast<int>(get_count(value, field, 1));
    } else if (key == "step_size") {
      cfg.step_size = get_positive(value, field);
    } else if (key == "gradient_tolerance") {
      cfg.gradient_tolerance = get_positive(value, field);
    } else if (key == "finite_difference_step") {
      cfg.finite_difference_step = get_positive(value, field);
    } else {
      invalid(field, "unknown key");
    }
  }
  return cfg;
}

std::vector<experiments::EvidenceOption> get_menu(const json& v, std::size_t n) {
  if (!v.is_array()) invalid("menu", "expected an array of {label, lik}");
  if (v.empty()) invalid("menu", "must contain at least one option");
  std::vector<experiments::EvidenceOption> menu;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string field = "menu[" + std::to_string(i) + "]";
    const auto& item = v[i];
    if (!item.is_object()) invalid(field, "expected an object");
    for (const auto& [key, value] : item.items()) {
      (void)value;
      if (key != "label" && key != "lik") invalid(field + "." + key, "unknown key");
    }
    if (!item.contains("lik")) invalid(field + ".lik", "missing");
    auto lik = get_vector(item["lik"], field + ".lik");
    check_likelihood(lik, n, field + ".lik");
    std::string label = item.contains("label") ? get_string(item["label"], field + ".label")
                                               : std::string(1, static_cast<char>('A' + i % 26));
    menu.push_back({std::move(label), Likelihood<double>(as_eigen(lik))});
  }
  return menu;
}

ordered_json menu_json(const std::vector<experiments::EvidenceOption>& menu) {
  ordered_json out = ordered_json::array();
  for (const auto& opt : menu) {
    out.push_back({{"label", opt.label}, {"lik", from_eigen(opt.lik.values())}});
  }
  return out;
}

ordered_json numeric_json(const NumericSolverConfig& n) {
  return {{"max_iterations", n.max_iterations},
          {"step_size", n.step_size},
          {"gradient_tolerance", n.gradient_tolerance},
          {"finite_difference_step", n.finite_difference_step}};
}

void apply_preset(RunConfig& cfg) {
  const auto sc = cfg.preset == MenuPreset::tradeoff ? experiments::scenario_tradeoff()
                                                     : experiments::scenario_dominant();
  cfg.prior = from_eigen(sc.prior.probs());
  cfg.c = from_eigen(sc.c.coeffs());
  cfg.menu = sc.menu;
}

// Defaults follow the experiment each scenario reproduces.
void apply_defaults(RunConfig& cfg) {
  using experiments::BernoulliEvidence;
  switch (cfg.scenario) {
    case Scenario::update:
      cfg.prior = {0.3, 0.7};
      cfg.lik = {0.7, 0.3};
      cfg.c = {1.0, 0.0};
      break;
    case Scenario::sweep:
      cfg.prior = {0.3, 0.7};
      cfg.c = {1.0, 0.0};
      cfg.lambda_grid = GridSpec::range(1.0, 10.0, 10);
      cfg.alpha_grid = GridSpec::list({1.0});
      cfg.evidence_grid =
          GridSpec::range(BernoulliEvidence::kDefaultMin, BernoulliEvidence::kDefaultMax, 101);
      break;
    case Scenario::select:
      apply_preset(cfg);
      cfg.alpha = 2.0;
      break;
    case Scenario::threshold:
      apply_preset(cfg);
      cfg.alpha = 2.0;
      break;
    case Scenario::heatmap:
      if (cfg.heatmap == HeatmapKind::objective) {
        cfg.prior = {0.3, 0.7};
        cfg.c = {1.0, 0.0};
        cfg.lambda_grid = GridSpec::range(0.1, 10.0, 101);
        cfg.alpha_grid = GridSpec::range(0.0, 10.0, 101);
      } else {
        apply_preset(cfg);
        cfg.lambda_grid = GridSpec::range(0.1, 100.0, 101);
        cfg.alpha_grid = GridSpec::range(1.0, 10.0, 101);
      }
      break;
    case Scenario::polarize:
      cfg.prior = {0.5, 0.5};
      cfg.lik = {0.6, 0.4};
      cfg.c_agent1 = {1.0, 0.0};
      cfg.c_agent2 = {0.0, 1.0};
      cfg.lambda_grid = GridSpec::range(0.0, 10.0, 101);
      cfg.alpha_grid = GridSpec::list({1.0});
      break;
  }
}

void read_output(RunConfig& cfg, const json& v) {
  if (!v.is_object()) invalid("output", "expected an object");
  for (const auto& [key, value] : v.items()) {
    const std::string field = "output." + key;
    if (key == "path") {
      cfg.output_path = get_string(value, field);
    } else if (key == "plot") {
      cfg.plot_path = get_string(value, field);
    } else if (key == "format") {
      cfg.format = get_enum(kFormats, value, field);
    } else {
      invalid(field, "unknown key");
    }
  }
}

}  // namespace

std::string_view to_string(Scenario s) { return name_of(kScenarios, s); }
std::string_view to_string(SolverChoice s) { return name_of(kSolvers, s); }
std::string_view to_string(OutputFormat f) { return name_of(kFormats, f); }
std::string_view to_string(HeatmapKind k) { return name_of(kHeatmaps, k); }
std::string_view to_string(MenuPreset p) { return name_of(kPresets, p); }

std::optional<Scenario> parse_scenario(std::string_view name) { return lookup(kScenarios, name); }
std::optional<OutputFormat> parse_format(std::string_view name) { return lookup(kFormats, name); }

GridSpec GridSpec::list(std::vector<double> values) {
  GridSpec g;
  g.explicit_values = std::move(values);
  return g;
}

GridSpec GridSpec::range(double min, double max, std::size_t points, Spacing spacing) {
  GridSpec g;
  g.min = min;
  g.max = max;
  g.points = points;
  g.spacing = spacing;
  return g;
}

std::vector<double> GridSpec::values() const {
  if (is_list()) return explicit_values;
  return spacing == Spacing::log ? experiments::logspace(min, max, points)
                                 : experiments::linspace(min, max, points);
}

ordered_json GridSpec::to_json() const {
  if (is_list()) return explicit_values;
  return {{"min", min},
          {"max", max},
          {"points", points},
          {"spacing", spacing == Spacing::log ? "log" : "linear"}};
}

ordered_json RunConfig::to_json() const {
  ordered_json out;
  out["scenario"] = to_string(scenario);
  switch (scenario) {
    case Scenario::update:
      out["prior"] = prior;
      out["lik"] = lik;
      out["c"] = c;
      out["alpha"] = alpha;
      out["lambda"] = lambda;
      out["solver"] = to_string(solver);
      out["numeric"] = numeric_json(numeric);
      out["grid_step"] = grid_step;
      break;
    case Scenario::sweep:
      out["prior"] = prior;
      out["c"] = c;
      out["lambda_grid"] = lambda_grid.to_json();
      out["alpha_grid"] = alpha_grid.to_json();
      out["evidence_grid"] = evidence_grid.to_json();
      break;
    case Scenario::select:
      out["preset"] = to_string(preset);
      out["prior"] = prior;
      out["c"] = c;
      out["menu"] = menu_json(menu);
      out["alpha"] = alpha;
      out["lambda"] = lambda;
      out["numeric"] = numeric_json(numeric);
      break;
    case Scenario::threshold:
      out["preset"] = to_string(preset);
      out["prior"] = prior;
      out["c"] = c;
      out["menu"] = menu_json(menu);
      out["alpha"] = alpha;
      out["lambda_range"] = {search.lambda_min, search.lambda_max};
      out["tolerance"] = search.tolerance;
      out["scan_points"] = search.scan_points;
      break;
    case Scenario::heatmap:
      out["heatmap"] = to_string(heatmap);
      if (heatmap == HeatmapKind::selection) out["preset"] = to_string(preset);
      out["prior"] = prior;
      out["c"] = c;
      if (heatmap == HeatmapKind::objective) {
        out["evidence"] = evidence;
      } else {
        out["menu"] = menu_json(menu);
      }
      out["lambda_grid"] = lambda_grid.to_json();
      out["alpha_grid"] = alpha_grid.to_json();
      break;
    case Scenario::polarize:
      out["prior"] = prior;
      out["lik"] = lik;
      out["c_agent1"] = c_agent1;
      out["c_agent2"] = c_agent2;
      out["lambda_grid"] = lambda_grid.to_json();
      out["alpha_grid"] = alpha_grid.to_json();
      break;
  }
  return out;
}

RunConfig resolve_config(const json& doc) {
  if (!doc.is_object()) invalid("<root>", "expected a JSON object");
  if (!doc.contains("scenario")) invalid("scenario", "missing");
  RunConfig cfg;
  cfg.scenario = get_enum(kScenarios, doc["scenario"], "scenario");
  if (cfg.scenario == Scenario::heatmap && doc.contains("heatmap")) {
    cfg.heatmap = get_enum(kHeatmaps, doc["heatmap"], "heatmap");
  }
  if (doc.contains("preset")) cfg.preset = get_enum(kPresets, doc["preset"], "preset");

  const auto allowed = allowed_keys(cfg.scenario, cfg.heatmap);
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key == "scenario" || key == "output") continue;
    if (!allowed.count(key)) {
      invalid(key, "not a setting of scenario '" + std::string(to_string(cfg.scenario)) +
                       (cfg.scenario == Scenario::heatmap
                            ? "' with heatmap '" + std::string(to_string(cfg.heatmap))
                            : std::string()) +
                       "'");
    }
  }

  apply_defaults(cfg);
  if (doc.contains("output")) read_output(cfg, doc["output"]);

  auto has = [&](const char* key) { return doc.contains(key); };
  if (has("prior")) cfg.prior = get_vector(doc["prior"], "prior");
  check_prior(cfg.prior);
  const std::size_t n = cfg.prior.size();

  if (has("lik")) cfg.lik = get_vector(doc["lik"], "lik");
  if (has("c")) cfg.c = get_vector(doc["c"], "c");
  if (has("alpha")) cfg.alpha = get_nonnegative(doc["alpha"], "alpha");
  if (has("lambda")) cfg.lambda = get_nonnegative(doc["lambda"], "lambda");
  if (has("solver")) cfg.solver = get_enum(kSolvers, doc["solver"], "solver");
  if (has("numeric")) cfg.numeric = get_numeric(doc["numeric"]);
  if (has("grid_step")) {
    cfg.grid_step = get_positive(doc["grid_step"], "grid_step");
    if (cfg.grid_step > 0.01) invalid("grid_step", "must be <= 0.01");
  }
  if (has("lambda_grid")) cfg.lambda_grid = get_grid(doc["lambda_grid"], "lambda_grid");
  if (has("alpha_grid")) cfg.alpha_grid = get_grid(doc["alpha_grid"], "alpha_grid");
  if (has("evidence_grid")) cfg.evidence_grid = get_grid(doc["evidence_grid"], "evidence_grid");
  if (has("evidence")) {
    cfg.evidence = get_number(doc["evidence"], "evidence");
    if (cfg.evidence < 0.0 || cfg.evidence > 1.0) invalid("evidence", "must lie in [0, 1]");
  }
  if (has("menu")) cfg.menu = get_menu(doc["menu"], n);
  if (has("c_agent1")) cfg.c_agent1 = get_vector(doc["c_agent1"], "c_agent1");
  if (has("c_agent2")) cfg.c_agent2 = get_vector(doc["c_agent2"], "c_agent2");
  if (has("lambda_range")) {
    const auto range = get_vector(doc["lambda_range"], "lambda_range");
    if (range.size() != 2 || !(range[0] > 0.0) || !(range[1] > range[0])) {
      invalid("lambda_range", "expected [min, max] with 0 < min < max");
    }
    cfg.search.lambda_min = range[0];
    cfg.search.lambda_max = range[1];
  }
  if (has("tolerance")) cfg.search.tolerance = get_positive(doc["tolerance"], "tolerance");
  if (has("scan_points")) cfg.search.scan_points = get_count(doc["scan_points"], "scan_points", 2);

  // Cross-field checks.
  const auto inf = std::numeric_limits<double>::infinity();
  switch (cfg.scenario) {
    case Scenario::update:
      check_likelihood(cfg.lik, n, "lik");
      check_size(cfg.c, n, "c");
      if (cfg.solver == SolverChoice::limit && cfg.lambda != 0.0) {
        invalid("solver", "the limit solver applies only at lambda = 0");
      }
      if ((cfg.solver == SolverChoice::closed_form || cfg.solver == SolverChoice::numeric ||
           cfg.solver == SolverChoice::brute_force) &&
          cfg.lambda == 0.0) {
        invalid("lambda", "must be > 0 for solver '" + std::string(to_string(cfg.solver)) + "'");
      }
      if (cfg.solver == SolverChoice::brute_force && n != 2) {
        invalid("solver", "brute_force runs on 2-state problems");
      }
      break;
    case Scenario::sweep:
      require_two_states(cfg.prior, cfg.scenario);
      check_size(cfg.c, n, "c");
      check_grid_values(cfg.lambda_grid, "lambda_grid", 0.0, inf);
      check_grid_values(cfg.alpha_grid, "alpha_grid", 0.0, inf);
      check_grid_values(cfg.evidence_grid, "evidence_grid", 0.0, 1.0);
      break;
    case Scenario::select:
    case Scenario::threshold:
      check_size(cfg.c, n, "c");
      for (std::size_t i = 0; i < cfg.menu.size(); ++i) {
        check_size(from_eigen(cfg.menu[i].lik.values()), n, "menu[" + std::to_string(i) + "].lik");
      }
      if (cfg.scenario == Scenario::threshold && cfg.menu.size() != 2) {
        invalid("menu", "threshold needs exactly 2 options");
      }
      break;
    case Scenario::heatmap:
      require_two_states(cfg.prior, cfg.scenario);
      check_size(cfg.c, n, "c");
      check_grid_values(cfg.lambda_grid, "lambda_grid", 0.0, inf);
      check_grid_values(cfg.alpha_grid, "alpha_grid", 0.0, inf);
      if (cfg.heatmap == HeatmapKind::selection) {
        if (cfg.menu.size() != 2) invalid("menu", "selection heatmap needs exactly 2 options");
        for (std::size_t i = 0; i < cfg.menu.size(); ++i) {
          check_size(from_eigen(cfg.menu[i].lik.values()), n,
                     "menu[" + std::to_string(i) + "].lik");
        }
      }
      break;
    case Scenario::polarize:
      require_two_states(cfg.prior, cfg.scenario);
      check_likelihood(cfg.lik, n, "lik");
      check_size(cfg.c_agent1, n, "c_agent1");
      check_size(cfg.c_agent2, n, "c_agent2");
      check_grid_values(cfg.lambda_grid, "lambda_grid", 0.0, inf);
      check_grid_values(cfg.alpha_grid, "alpha_grid", 0.0, inf);
      break;
  }
  return cfg;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ParseError(e.byte, e.what());
  }
}

RunConfig load_config_text(std::string_view text) { return resolve_config(parse_json(text)); }

std::optional<json> embedded_config(std::string_view text) {
  constexpr std::string_view kPrefix = "# config: ";
  if (!text.empty() && text.front() == '#') {
    std::size_t pos = 0;
    while (pos < text.size() && text[pos] == '#') {
      const auto end = std::min(text.find('\n', pos), text.size());
      const auto line = text.substr(pos, end - pos);
      if (line.substr(0, kPrefix.size()) == kPrefix) return parse_json(line.substr(kPrefix.size()));
      pos = end + 1;
    }
    return std::nullopt;
  }
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error&) {
    return std::nullopt;
  }
  if (doc.is_object() && doc.contains("metadata") && doc["metadata"].is_object() &&
      doc["metadata"].contains("config")) {
    return doc["metadata"]["config"];
  }
  return std::nullopt;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return ss.str();
}

json read_config_document(const std::filesystem::path& path) {
  const auto text = read_text_file(path);
  if (auto embedded = embedded_config(text)) return *embedded;
  return parse_json(text);
}

RunConfig load_config_file(const std::filesystem::path& path) {
  return resolve_config(read_config_document(path));
}

}  // namespace mvbu
