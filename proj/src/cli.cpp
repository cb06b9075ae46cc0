#include "modlab/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "modlab/catalog.hpp"
#include "modlab/error.hpp"
#include "modlab/json_io.hpp"
#include "modlab/norms.hpp"
#include "modlab/search.hpp"
#include "modlab/suites.hpp"

namespace modlab::cli {
namespace {

constexpr double kCeilingSlack = 1e-7;

struct HelpRequested {
  std::string text;
};

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorCode::BadArgument, msg); }

template <class T>
T parse_integer(const std::string& key, const std::string& v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) usage("--" + key + " expects a non-negative integer, got '" + v + "'");
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  if (v == "inf" || v == "infinity" || v == "Inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  usage("--" + key + " expects a number, got '" + v + "'");
}

std::vector<std::string> split_commas(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

const std::vector<std::string>& setting_keys() {
  static const std::vector<std::string> keys = {"suite", "example", "problem", "warm",  "m",   "n",
                                                "dim",   "p",       "norm",    "theta", "trials",
                                                "restarts", "iters", "seed",   "tol",   "format",
                                                "out",   "timing"};
  return keys;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& v) {
  if (key == "suite") c.suite = v;
  else if (key == "example") c.example = v;
  else if (key == "problem") c.problem = v;
  else if (key == "warm") c.warm = split_commas(v);
  else if (key == "m") c.m = parse_integer<std::size_t>(key, v);
  else if (key == "n" || key == "dim") c.n = parse_integer<std::size_t>(key, v);
  else if (key == "p") c.p = parse_real(key, v);
  else if (key == "norm") c.norm = v;
  else if (key == "theta") c.theta = parse_real(key, v);
  else if (key == "trials") c.trials = parse_integer<std::size_t>(key, v);
  else if (key == "restarts") c.restarts = parse_integer<std::size_t>(key, v);
  else if (key == "iters") c.iters = parse_integer<std::size_t>(key, v);
  else if (key == "seed") c.seed = parse_integer<std::uint64_t>(key, v);
  else if (key == "tol") c.tol = parse_real(key, v);
  else if (key == "format") {
    if (v == "text") c.format = Format::Text;
    else if (v == "json") c.format = Format::Json;
    else usage("--format must be text or json");
  } else if (key == "out") c.out = v;
  else if (key == "timing") {
    if (v != "true" && v != "false") usage("timing must be true or false");
    c.timing = v == "true";
  } else usage("unknown setting '" + key + "'");
}

void apply_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) usage("cannot read config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    usage("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) usage("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    std::string text;
    if (value.is_string()) text = value.get<std::string>();
    else if (value.is_boolean()) text = value.get<bool>() ? "true" : "false";
    else if (value.is_number()) text = modlab::dump(value);
    else if (value.is_array() && key == "warm") {
      for (const auto& w : value) text += (text.empty() ? "" : ",") + w.get<std::string>();
    } else usage("config key '" + key + "' has an unsupported value");
    apply_setting(c, key, text);
  }
}

std::optional<NormSpec> norm_of(const RunConfig& c) {
  if (!c.norm) return std::nullopt;
  return NormSpec::parse(*c.norm);
}

void emit(const RunConfig& cfg, std::ostream& out, const Json& report, const std::string& text) {
  if (cfg.out) {
    std::ofstream file(*cfg.out);
    if (!file) usage("cannot write '" + *cfg.out + "'");
    file << modlab::dump(report, 2) << '\n';
  }
  if (cfg.format == Format::Json) out << modlab::dump(report, 2) << '\n';
  else out << text;
}

std::string fmt_double(double x, int digits = 12) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

// Catalog instances for an id, honouring explicit size/angle overrides.
std::vector<CatalogEntry> instances(const std::string& id, std::optional<std::size_t> m,
                                    std::optional<std::size_t> n, std::optional<double> theta) {
  const bool sized = m || n;
  if (id == "e12" && n) return {e12(*n)};
  if (id == "lee_sharp_family" && sized) return {lee_sharp_family(m.value_or(*n), n.value_or(*m))};
  if (id == "frobenius_sharp_family" && sized) return {frobenius_sharp_family(m.value_or(*n), n.value_or(*m))};
  if (id == "lemma61_extremizer" && n) return {lemma61_extremizer(*n)};
  if (id == "x_theta" && theta) return {x_theta(*theta)};
  return default_instances(id);
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Operator moduli toolkit: verification suites, catalog reproduction, constant search", "modulus-lab"};
  std::string command;
  std::string topic;
  std::string config;
  bool no_timing = false;
  app.add_option("command", command, "verify | reproduce | search | list")->required();
  app.add_option("topic", topic, "list subject: suites | examples | problems | all");
  app.add_option("--config", config, "JSON file with default settings; flags override it");
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  const std::map<std::string, std::string> help = {
      {"suite", "suite id or group (verify)"},
      {"example", "catalog id or all (reproduce)"},
      {"problem", "problem id or lhs/rhs pair (search)"},
      {"warm", "comma-separated catalog ids used as first search starts"},
      {"m", "number of matrices"},
      {"n", "matrix dimension"},
      {"dim", "alias of --n"},
      {"p", "Schatten exponent (number or inf)"},
      {"norm", "op | tr | fro | uin | schatten:p | kyfan:k"},
      {"theta", "angle for x_theta"},
      {"trials", "trials per suite (default 1000)"},
      {"restarts", "search restarts (default 50)"},
      {"iters", "Nelder-Mead iterations per restart (default 2000)"},
      {"seed", "master seed (default 0)"},
      {"tol", "relative tolerance (default 1e-9)"},
      {"format", "text | json"},
      {"out", "write the JSON report here"},
  };
  for (const auto& key : setting_keys()) {
    if (key == "timing") continue;
    options[key] = app.add_option("--" + key, values[key], help.at(key));
  }
  app.add_flag("--no-timing", no_timing, "omit wall-clock fields from JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    usage(e.what());
  }

  RunConfig c;
  if (command == "verify") c.command = Command::Verify;
  else if (command == "reproduce") c.command = Command::Reproduce;
  else if (command == "search") c.command = Command::Search;
  else if (command == "list") c.command = Command::List;
  else usage("unknown command '" + command + "'");
  if (!topic.empty()) {
    if (c.command != Command::List) usage("unexpected argument '" + topic + "'");
    c.topic = topic;
  }
  if (!config.empty()) apply_config_file(c, config);
  for (const auto& key : setting_keys())
    if (options.count(key) && options[key]->count() > 0) apply_setting(c, key, values[key]);
  if (no_timing) c.timing = false;
  return c;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  const auto suites = resolve_suites(cfg.suite);
  if (suites.empty()) usage("unknown suite '" + cfg.suite + "'");
  if (cfg.trials == 0) usage("--trials must be positive");
  if (!(cfg.tol > 0.0)) usage("--tol must be positive");
  if ((cfg.m && *cfg.m < 1) || (cfg.n && *cfg.n < 1)) usage("--m and --n must be positive");
  if (cfg.p && !(*cfg.p >= 1.0)) usage("--p must be >= 1");
  RunOptions opt;
  opt.trials = cfg.trials;
  opt.seed = cfg.seed;
  opt.tol = cfg.tol;
  opt.overrides.m = cfg.m;
  opt.overrides.n = cfg.n;
  opt.overrides.p = cfg.p;
  opt.overrides.norm = norm_of(cfg);

  Json list = Json::array();
  std::size_t failures = 0;
  std::ostringstream text;
  for (const Suite* s : suites) {
    const SuiteResult r = run_suite(*s, opt);
    failures += r.failures();
    list.push_back(to_json(r, cfg.timing));
    text << (r.ok() ? "ok   " : "FAIL ") << s->id << "  trials=" << r.trials << " degenerate=" << r.degenerate
         << " errors=" << r.errors.size() << '\n';
    for (const auto& c : r.checks) {
      text << "       " << c.check_id << "  " << c.passed << "/" << c.count
           << "  worst_margin=" << fmt_double(c.worst_margin, 4) << " [" << c.worst_margin_digest << "]"
           << "  worst_ratio=" << fmt_double(c.worst_ratio, 10) << '\n';
    }
    for (const auto& e : r.errors) text << "       error at trial " << e.trial << ": " << e.message << '\n';
  }
  text << (failures == 0 ? "verify: all checks passed\n" : "verify: " + std::to_string(failures) + " failures\n");
  const Json report = {{"command", "verify"}, {"selector", cfg.suite}, {"suites", list},
                       {"failures", failures}, {"ok", failures == 0}};
  emit(cfg, out, report, text.str());
  return failures == 0 ? kOk : kFailure;
}

int run_reproduce(const RunConfig& cfg, std::ostream& out) {
  if (cfg.example != "all" && !is_catalog_id(cfg.example)) usage("unknown example '" + cfg.example + "'");
  const auto entries = cfg.example == "all" ? default_instances("all")
                                            : instances(cfg.example, cfg.m, cfg.n, cfg.theta);
  Json list = Json::array();
  bool ok = true;
  std::ostringstream text;
  for (const auto& e : entries) {
    const auto r = reproduce(e);
    ok = ok && r.ok;
    list.push_back(to_json(r));
    text << (r.ok ? "ok   " : "FAIL ") << r.label << '\n';
    for (const auto& q : r.quantities) {
      const char* rel = q.expected.relation == Expectation::Relation::Near ? "~" : q.expected.relation == Expectation::Relation::Less ? "<" : ">";
      text << "       " << q.expected.name << " = " << fmt_double(q.computed) << "  (" << rel << " "
           << fmt_double(q.expected.value) << ")" << (q.ok ? "" : "  MISMATCH") << '\n';
    }
    for (std::size_t i = 0; i < r.tight.size(); ++i) {
      text << "       tight " << r.tight[i].check_id << "  ratio=" << fmt_double(r.tight[i].ratio)
           << (r.tight_ok[i] ? "" : "  NOT TIGHT") << '\n';
    }
  }
  const Json report = {{"command", "reproduce"}, {"selector", cfg.example}, {"results", list}, {"ok", ok}};
  emit(cfg, out, report, text.str());
  return ok ? kOk : kFailure;
}

int run_search(const RunConfig& cfg, std::ostream& out) {
  if (!is_problem_id(cfg.problem)) usage("unknown problem '" + cfg.problem + "'");
  if (cfg.restarts == 0) usage("--restarts must be positive");
  if (cfg.iters == 0) usage("--iters must be positive");
  for (const auto& w : cfg.warm)
    if (!is_catalog_id(w)) usage("unknown warm-start example '" + w + "'");
  const auto problem = make_problem(cfg.problem, cfg.m.value_or(2), cfg.n.value_or(2), cfg.p, norm_of(cfg));
  const SearchBudget budget{cfg.restarts, cfg.iters, 0};

  SearchResult r;
  if (cfg.warm.empty()) {
    r = optimize(problem, budget, cfg.seed);
  } else {
    std::vector<CatalogEntry> entries;
    for (const auto& w : cfg.warm)
      for (auto& e : instances(w, problem.m, problem.n, cfg.theta)) entries.push_back(std::move(e));
    r = warm_start(problem, entries, budget, cfg.seed);
  }
  const auto bound = proven_bound(problem);
  const bool sane = !bound || r.best_ratio <= *bound + kCeilingSlack;
  Json report = to_json(r, cfg.timing);
  report["command"] = "search";
  report["warm"] = cfg.warm;
  report["within_proven_bound"] = sane;

  std::ostringstream text;
  text << "problem " << problem.objective_id << "  m=" << problem.m << " n=" << problem.n;
  if (!problem.evidence) text << " norm=" << problem.norm.to_string();
  text << "\nbest_ratio " << fmt_double(r.best_ratio) << "  (restart " << r.best_restart << " of " << r.restarts
       << ", " << fmt_double(r.wall_time_s, 3) << " s)\n";
  if (bound) {
    text << "proven bound " << fmt_double(*bound) << (sane ? "" : "  EXCEEDED: evaluator bug") << '\n';
  } else {
    text << "heuristic evidence only; conjectured bound " << fmt_double(reference_bound(problem)) << '\n';
  }
  emit(cfg, out, report, text.str());
  return sane ? kOk : kFailure;
}

int run_list(const RunConfig& cfg, std::ostream& out) {
  const std::string& t = cfg.topic;
  if (t != "all" && t != "suites" && t != "examples" && t != "problems") usage("unknown list topic '" + t + "'");
  Json report = Json::object();
  std::ostringstream text;
  if (t == "all" || t == "suites") {
    Json suites = Json::array();
    text << "suites:\n";
    for (const auto& s : suite_registry()) {
      suites.push_back({{"id", s.id}, {"provenance", s.provenance}});
      text << "  " << std::left << std::setw(18) << s.id << s.provenance << '\n';
    }
    Json groups = Json::object();
    text << "groups:\n";
    for (const auto& [name, members] : suite_groups()) {
      groups[name] = members;
      text << "  " << std::left << std::setw(18) << name;
      for (const auto& id : members) text << id << ' ';
      text << '\n';
    }
    report["suites"] = suites;
    report["groups"] = groups;
  }
  if (t == "all" || t == "examples") {
    Json examples = Json::array();
    text << "examples:\n";
    for (const auto& e : catalog_index()) {
      examples.push_back({{"id", e.id}, {"dimension", e.dimension}, {"provenance", e.provenance},
                          {"tight_checks", e.tight_checks}});
      text << "  " << std::left << std::setw(26) << e.id << e.dimension << "  " << e.provenance << '\n';
    }
    report["examples"] = examples;
  }
  if (t == "all" || t == "problems") {
    Json problems = Json::array();
    text << "problems:\n";
    for (const auto& p : problem_registry()) {
      problems.push_back({{"id", p.id}, {"description", p.description}, {"provenance", p.provenance}});
      text << "  " << std::left << std::setw(20) << p.id << p.description << "  [" << p.provenance << "]\n";
    }
    text << "  <lhs>/<rhs>         lhs in plain_sum, abs_of_sum, sym_of_sum, qsym_of_sum; rhs in sum_abs, sum_sym, "
            "sum_qsym\n";
    report["problems"] = problems;
  }
  emit(cfg, out, report, text.str());
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kOk;
  } catch (const Error& e) {
    err << "modulus-lab: " << e.what() << "\nrun with --help for usage\n";
    return kConfigError;
  }
  try {
    switch (cfg.command) {
      case Command::Verify: return run_verify(cfg, out);
      case Command::Reproduce: return run_reproduce(cfg, out);
      case Command::Search: return run_search(cfg, out);
      case Command::List: return run_list(cfg, out);
    }
  } catch (const Error& e) {
    err << "modulus-lab: " << e.what() << '\n';
    const bool config = e.code() == ErrorCode::BadArgument || e.code() == ErrorCode::BadNormParam ||
                        e.code() == ErrorCode::ShapeMismatch;
    return config ? kConfigError : kFailure;
  } catch (const std::exception& e) {
    err << "modulus-lab: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace modlab::cli
