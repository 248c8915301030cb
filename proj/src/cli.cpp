#include "girthgen/cli.hpp"

#include "girthgen/bipartite.hpp"
#include "girthgen/counting.hpp"
#include "girthgen/errors.hpp"
#include "girthgen/graph.hpp"
#include "girthgen/sampler.hpp"
#include "girthgen/validation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace girthgen {

namespace {

using nlohmann::json;

constexpr double kDefaultBudget = 1e8;

int code(ExitCode c) { return static_cast<int>(c); }

void emit_error(std::ostream &err, const std::string &error_code, const std::string &message) {
  err << json{{"status", "error"}, {"error_code", error_code}, {"message", message}}.dump() << '\n';
}

json girth_json(const Graph &g) {
  const GirthResult gr = girth(g);
  if (gr.is_infinite()) {
    return "inf";
  }
  return gr.value();
}

json graph_json(const Graph &g) {
  json edges = json::array();
  for (const Edge &e : g.edges()) {
    edges.push_back({e.u, e.v});
  }
  return json{{"n", g.order()}, {"m", g.size()}, {"edges", std::move(edges)}};
}

void deliver(const std::string &path, const std::string &content, std::ostream &out) {
  if (path.empty()) {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

void deliver_record(const RunConfig &config, const json &record, std::ostream &err) {
  const std::string text = record.dump(2) + "\n";
  if (!config.record.empty()) {
    write_file_atomic(config.record, text);
  } else if (!config.output.empty()) {
    write_file_atomic(config.output + ".record.json", text);
  } else {
    err << text;
  }
}

std::string format_graph(const Graph &g, const std::string &format, std::size_t left_count) {
  std::ostringstream os;
  if (format == "json") {
    os << graph_json(g).dump(2) << '\n';
  } else if (format == "alist") {
    write_alist(os, g, left_count);
  } else {
    write_edge_list(os, g);
  }
  return os.str();
}

int cmd_gen(const RunConfig &config, std::ostream &out, std::ostream &err) {
  const SamplerParams params{config.n, config.m, config.k};
  validate(params);
  if (config.format == "alist") {
    throw std::invalid_argument("alist output is only available for gen-bip");
  }
  if (auto advisory = regime_advisory(params)) {
    err << "advisory: " << *advisory << '\n';
  }
  json record{{"command", "gen"}, {"n", config.n}, {"m", config.m}, {"k", config.k},
              {"seed", config.seed}};
  json failed_at = json::array();
  for (std::size_t attempt = 0; attempt < config.retries; ++attempt) {
    Rng rng(derive_seed(config.seed, attempt));
    GenerationOutcome outcome = generate(params, rng);
    if (outcome.succeeded()) {
      const Graph &g = outcome.graph();
      record["attempts"] = attempt + 1;
      record["failed_at"] = failed_at;
      record["girth"] = girth_json(g);
      record["status"] = "ok";
      record["error_code"] = nullptr;
      deliver(config.output, format_graph(g, config.format, 0), out);
      deliver_record(config, record, err);
      return code(ExitCode::ok);
    }
    failed_at.push_back(outcome.failed_at());
  }
  record["attempts"] = config.retries;
  record["failed_at"] = failed_at;
  record["girth"] = nullptr;
  record["status"] = "error";
  record["error_code"] = "fail_exhausted";
  deliver_record(config, record, err);
  emit_error(err, "fail_exhausted",
             "all " + std::to_string(config.retries) + " attempts ended without a suitable pair");
  return code(ExitCode::fail_exhausted);
}

json degree_json(const std::vector<std::size_t> &d) { return json(d); }

int cmd_gen_bip(const RunConfig &config, std::ostream &out, std::ostream &err) {
  if (config.degree_file.empty()) {
    throw std::invalid_argument("gen-bip requires --degrees");
  }
  if (config.k % 2 != 0) {
    throw std::invalid_argument("gen-bip requires an even k");
  }
  const DegreeSequence deg = parse_degree_file(config.degree_file);
  if (!gale_ryser_feasible(deg)) {
    throw std::invalid_argument("degree sequence has no simple bipartite realization");
  }
  const double budget = effective_budget(config);
  json record{{"command", "gen-bip"},     {"left", degree_json(deg.left)},
              {"right", degree_json(deg.right)}, {"edges", deg.edge_total()},
              {"k", config.k},             {"seed", config.seed}};
  json failed_at = json::array();
  for (std::size_t attempt = 0; attempt < config.retries; ++attempt) {
    Rng rng(derive_seed(config.seed, attempt));
    GenerationOutcome outcome = bip_generate(deg, config.k, rng, budget);
    if (outcome.succeeded()) {
      const Graph &g = outcome.graph();
      record["attempts"] = attempt + 1;
      record["failed_at"] = failed_at;
      record["girth"] = girth_json(g);
      record["status"] = "ok";
      record["error_code"] = nullptr;
      deliver(config.output, format_graph(g, config.format, deg.left.size()), out);
      deliver_record(config, record, err);
      return code(ExitCode::ok);
    }
    failed_at.push_back(outcome.failed_at());
  }
  record["attempts"] = config.retries;
  record["failed_at"] = failed_at;
  record["girth"] = nullptr;
  record["status"] = "error";
  record["error_code"] = "fail_exhausted";
  deliver_record(config, record, err);
  emit_error(err, "fail_exhausted",
             "all " + std::to_string(config.retries) + " attempts ended without a suitable pair");
  return code(ExitCode::fail_exhausted);
}

int cmd_estimate(const RunConfig &config, std::ostream &out) {
  const SamplerParams params{config.n, config.m, config.k};
  validate(params);
  const CountEstimate est = janson_log_count(config.n, config.m, config.k);
  json report{{"n", config.n},
              {"m", config.m},
              {"k", config.k},
              {"log_count_estimate", est.log_count},
              {"log_binomial", est.log_binom},
              {"correction", est.correction},
              {"alpha", est.alpha},
              {"regime_ok", est.regime_ok},
              {"sampler_regime_ok", est.sampler_regime_ok},
              {"exact_count", nullptr}};
  if (config.exact) {
    const ExactCount exact = exact_enumerate(config.n, config.m, config.k, effective_budget(config));
    report["exact_count"] = exact.count;
    report["log_exact_count"] =
        exact.count ? json(std::log(static_cast<double>(exact.count))) : json(nullptr);
  }
  deliver(config.output, report.dump(2) + "\n", out);
  return code(ExitCode::ok);
}

int cmd_enumerate(const RunConfig &config, std::ostream &out) {
  const SamplerParams params{config.n, config.m, config.k};
  validate(params);
  std::ostringstream listing;
  EdgeSetVisitor visit;
  if (!config.list.empty()) {
    visit = [&listing](std::span<const Edge> edges) {
      bool first = true;
      for (const Edge &e : edges) {
        listing << (first ? "" : " ") << e.u << '-' << e.v;
        first = false;
      }
      listing << '\n';
    };
  }
  const ExactCount exact =
      exact_enumerate(config.n, config.m, config.k, effective_budget(config), visit);
  if (!config.list.empty()) {
    write_file_atomic(config.list, listing.str());
  }
  const json report{{"n", config.n},
                    {"m", config.m},
                    {"k", config.k},
                    {"count", exact.count},
                    {"candidates", exact.candidates}};
  deliver(config.output, report.dump(2) + "\n", out);
  return code(ExitCode::ok);
}

int cmd_validate(const RunConfig &config, std::ostream &out) {
  const double budget = effective_budget(config);
  UniformityReport report;
  if (!config.degree_file.empty()) {
    if (config.k % 2 != 0) {
      throw std::invalid_argument("bipartite validation requires an even k");
    }
    const DegreeSequence deg = parse_degree_file(config.degree_file);
    const GroundTruth truth = GroundTruth::bipartite(deg, config.k, budget);
    report = uniformity_campaign(
        bip_sampler(deg, config.k), bip_rejection_sampler(deg, config.k), truth, config.samples,
        config.seed, json{{"left", deg.left}, {"right", deg.right}, {"k", config.k}});
  } else {
    report = uniformity_campaign(SamplerParams{config.n, config.m, config.k}, config.samples,
                                 config.seed, budget);
  }
  deliver(config.output, to_json(report).dump(2) + "\n", out);
  return code(ExitCode::ok);
}

int cmd_bench(const RunConfig &config, std::ostream &out) {
  if (config.ladder.empty()) {
    throw std::invalid_argument("bench requires at least one ladder size");
  }
  json rows = json::array();
  std::ostringstream table;
  table << std::setw(8) << "n" << std::setw(10) << "m" << std::setw(8) << "steps" << std::setw(16)
        << "mean_step_ms" << std::setw(10) << "ratio" << '\n';
  double previous = 0.0;
  for (std::size_t i = 0; i < config.ladder.size(); ++i) {
    const std::size_t n = config.ladder[i];
    SamplerParams params{n, 0, config.k};
    params.m = static_cast<std::size_t>(std::floor(proven_edge_limit(n, config.k)));
    params.m = std::min(params.m, params.pair_count());
    validate(params);
    const std::size_t steps = std::min(config.bench_steps, params.m);
    const StepTiming t = time_steps(params, derive_seed(config.seed, i), steps);
    const double ratio = previous > 0.0 ? t.mean_step_ms / previous : 0.0;
    rows.push_back(json{{"n", n},
                        {"m", params.m},
                        {"k", config.k},
                        {"steps", t.steps},
                        {"mean_step_ms", t.mean_step_ms},
                        {"failed", t.failed}});
    table << std::setw(8) << n << std::setw(10) << params.m << std::setw(8) << t.steps
          << std::setw(16) << std::fixed << std::setprecision(4) << t.mean_step_ms << std::setw(10);
    if (previous > 0.0) {
      table << std::setprecision(2) << ratio;
    } else {
      table << "-";
    }
    table << '\n';
    previous = t.mean_step_ms;
  }
  deliver(config.output, config.format == "json" ? rows.dump(2) + "\n" : table.str(), out);
  return code(ExitCode::ok);
}

std::size_t parse_degree_line(const std::string &text, std::size_t line_no,
                              std::vector<std::size_t> &degrees) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    if (pos >= text.size()) {
      break;
    }
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    std::size_t value = 0;
    const char *first = text.data() + start;
    const char *last = text.data() + pos;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      throw ParseError("expected a non-negative integer degree", line_no, start + 1);
    }
    if (value == 0) {
      throw ParseError("degrees must be positive", line_no, start + 1);
    }
    degrees.push_back(value);
  }
  return degrees.size();
}

} // namespace

double effective_budget(const RunConfig &config) {
  double budget = kDefaultBudget;
  if (config.budget) {
    budget = *config.budget;
  } else if (const char *env = std::getenv("GIRTHGEN_BUDGET"); env && *env) {
    char *end = nullptr;
    budget = std::strtod(env, &end);
    if (end == env || *end != '\0') {
      throw std::invalid_argument("GIRTHGEN_BUDGET is not a number");
    }
  }
  if (!(budget > 0.0)) {
    throw std::invalid_argument("budget must be positive");
  }
  return budget;
}

DegreeSequence parse_degree_text(std::istream &in) {
  std::vector<std::size_t> sides[2];
  std::size_t filled = 0;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    std::vector<std::size_t> degrees;
    if (parse_degree_line(text, line_no, degrees) == 0) {
      continue;
    }
    if (filled == 2) {
      throw ParseError("unexpected content after the right degree line", line_no, 1);
    }
    sides[filled++] = std::move(degrees);
  }
  if (filled < 2) {
    throw ParseError(filled == 0 ? "missing left degree line" : "missing right degree line",
                     line_no + 1, 1);
  }
  return make_degree_sequence(std::move(sides[0]), std::move(sides[1]));
}

DegreeSequence parse_degree_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open degree file " + path);
  }
  return parse_degree_text(in);
}

void write_file_atomic(const std::string &path, const std::string &content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) {
      throw std::runtime_error("cannot write " + tmp.string());
    }
    os << content;
    os.flush();
    if (!os) {
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

int run(const RunConfig &config, std::ostream &out, std::ostream &err) {
  try {
    if (config.command == "gen") return cmd_gen(config, out, err);
    if (config.command == "gen-bip") return cmd_gen_bip(config, out, err);
    if (config.command == "estimate") return cmd_estimate(config, out);
    if (config.command == "enumerate") return cmd_enumerate(config, out);
    if (config.command == "validate") return cmd_validate(config, out);
    if (config.command == "bench") return cmd_bench(config, out);
    emit_error(err, "usage", "unknown command '" + config.command + "'");
    return code(ExitCode::infeasible);
  } catch (const ParseError &e) {
    emit_error(err, "parse_error", e.what());
    return code(ExitCode::infeasible);
  } catch (const DegreeSumMismatch &e) {
    emit_error(err, "degree_sum_mismatch", e.what());
    return code(ExitCode::infeasible);
  } catch (const BudgetExceeded &e) {
    emit_error(err, "budget_exceeded", e.what());
    return code(ExitCode::budget_exceeded);
  } catch (const RetriesExhausted &e) {
    emit_error(err, "fail_exhausted", e.what());
    return code(ExitCode::fail_exhausted);
  } catch (const std::invalid_argument &e) {
    emit_error(err, "infeasible_config", e.what());
    return code(ExitCode::infeasible);
  } catch (const std::exception &e) {
    emit_error(err, "error", e.what());
    return code(ExitCode::error);
  }
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Random graphs with a lower bound on the girth"};
  app.require_subcommand(1);
  RunConfig config;
  double budget = 0.0;

  auto common = [&](CLI::App *sub) {
    sub->add_option("--budget", budget, "Cap on enumeration and cycle work")
        ->check(CLI::PositiveNumber);
    sub->add_option("-o,--output", config.output, "Output file (default: stdout)");
  };
  auto nmk = [&](CLI::App *sub, bool need_m) {
    sub->add_option("--n", config.n, "Vertices")->required();
    auto *m = sub->add_option("--m", config.m, "Edges");
    if (need_m) {
      m->required();
    }
    sub->add_option("--k", config.k, "Girth must exceed k")->capture_default_str();
  };

  auto *gen = app.add_subcommand("gen", "Sample a graph with girth > k");
  nmk(gen, true);
  gen->add_option("--seed", config.seed)->capture_default_str();
  gen->add_option("--retries", config.retries, "Attempts before giving up")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen->add_option("--format", config.format)->check(CLI::IsMember({"edgelist", "json"}));
  gen->add_option("--record", config.record, "JSON run record file");
  common(gen);

  auto *bip = app.add_subcommand("gen-bip", "Sample a bipartite graph with given degrees");
  bip->add_option("--degrees", config.degree_file, "Left and right degree lines")->required();
  bip->add_option("--k", config.k)->capture_default_str();
  bip->add_option("--seed", config.seed)->capture_default_str();
  bip->add_option("--retries", config.retries)->check(CLI::PositiveNumber)->capture_default_str();
  bip->add_option("--format", config.format)
      ->check(CLI::IsMember({"edgelist", "alist", "json"}));
  bip->add_option("--record", config.record, "JSON run record file");
  common(bip);

  auto *est = app.add_subcommand("estimate", "Estimate the number of graphs with girth > k");
  nmk(est, true);
  est->add_flag("--exact", config.exact, "Also count exactly by enumeration");
  common(est);

  auto *en = app.add_subcommand("enumerate", "Count graphs with girth > k exhaustively");
  nmk(en, true);
  en->add_option("--list", config.list, "Write every member to this file");
  common(en);

  auto *val = app.add_subcommand("validate", "Uniformity campaign against the rejection baseline");
  val->add_option("--n", config.n);
  val->add_option("--m", config.m);
  val->add_option("--k", config.k)->capture_default_str();
  val->add_option("--degrees", config.degree_file, "Validate the bipartite sampler instead");
  val->add_option("--samples", config.samples)->check(CLI::PositiveNumber)->capture_default_str();
  val->add_option("--seed", config.seed)->capture_default_str();
  common(val);

  auto *bench = app.add_subcommand("bench", "Per-step timing across vertex counts");
  bench->add_option("--k", config.k)->capture_default_str();
  bench->add_option("--ladder", config.ladder, "Vertex counts")->delimiter(',');
  bench->add_option("--steps", config.bench_steps)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--seed", config.seed)->capture_default_str();
  bench->add_option("--format", config.format)->check(CLI::IsMember({"edgelist", "json"}));
  common(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int status = app.exit(e, out, err);
    return status == 0 ? 0 : code(ExitCode::infeasible);
  }
  for (CLI::App *sub : app.get_subcommands()) {
    config.command = sub->get_name();
    if (sub->count("--budget")) {
      config.budget = budget;
    }
  }
  if (config.command == "validate" && config.degree_file.empty() &&
      (val->count("--n") == 0 || val->count("--m") == 0)) {
    emit_error(err, "usage", "validate needs --n and --m, or --degrees");
    return code(ExitCode::infeasible);
  }
  return run(config, out, err);
}

} // namespace girthgen
