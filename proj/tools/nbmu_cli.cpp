// nbmu: command-line front end for the monotone neighborhood mu-calculus tools.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nbmu/bisim.hpp"
#include "nbmu/denotation.hpp"
#include "nbmu/errors.hpp"
#include "nbmu/game.hpp"
#include "nbmu/model_io.hpp"
#include "nbmu/parser.hpp"
#include "nbmu/properties.hpp"
#include "nbmu/syntax.hpp"
#include "nbmu/translate.hpp"

using namespace nbmu;

namespace {

enum Exit { Ok = 0, Negative = 1, ParseFailure = 2, Invalid = 3, Guard = 4 };

constexpr std::size_t kMaxStates = 12;

std::string listing(const NeighborhoodModel& m, const StateSet& z) {
  std::string out;
  for (auto s : members(z)) {
    if (!out.empty()) out += ' ';
    out += m.states[s];
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text << '\n';
}

NeighborhoodModel load_checked(const std::string& path, bool force) {
  auto m = load_model(path);
  if (!force && m.size() > kMaxStates)
    throw GuardError(path + ": " + std::to_string(m.size()) + " states exceeds the limit of " +
                     std::to_string(kMaxStates) + " (use --force)");
  return m;
}

StateId point_of(const NeighborhoodModel& m, const std::string& name, const std::string& path) {
  if (!name.empty()) {
    auto s = m.find_state(name);
    if (!s) throw ValidationError({path + ": no state named '" + name + "'"});
    return *s;
  }
  if (!m.point) throw ValidationError({path + ": no point given and the document has none"});
  return *m.point;
}

/// Game arenas need well-named input; user formulas are renamed silently.
MuFormula game_ready(const MuFormula& f) { return is_well_named(f) ? f : well_name(f); }

struct Options {
  std::string model, formula, left, right, left_point, right_point, point, dump, suite, out_dir = ".";
  bool adequacy = false, verify = false, global = false, to_nmso = false, eliminate = false, json = false,
       force = false;
  std::size_t universe = 1, samples = 0;
  std::uint64_t seed = 0;
};

int cmd_eval(const Options& o) {
  const auto m = load_checked(o.model, o.force);
  const auto f = parse_mu(o.formula);
  std::cout << listing(m, eval_mu(m, f)) << '\n';
  return Ok;
}

int cmd_nmso(const Options& o) {
  const auto m = load_checked(o.model, o.force);
  const auto f = parse_nmso(o.formula);
  const auto s = point_of(m, o.point, o.model);
  NmsoLimits limits;
  if (o.force) limits = {31, std::numeric_limits<std::size_t>::max()};
  std::cout << (eval_nmso(PointedModel{m, s}, f, {}, limits) ? "true" : "false") << '\n';
  return Ok;
}

int cmd_game(const Options& o) {
  const auto m = load_checked(o.model, o.force);
  const auto f = game_ready(parse_mu(o.formula));
  const auto arena = build_arena(m, f);
  const auto sol = solve(arena);
  const auto region = winning_states(arena, sol, 0);
  std::cout << "winning: " << listing(m, region) << '\n';
  int status = Ok;
  if (o.adequacy) {
    const auto ext = eval_mu(m, f);
    if (ext == region) {
      std::cout << "adequacy: ok\n";
    } else {
      std::cout << "adequacy: mismatch (semantics: " << listing(m, ext) << ")\n";
      status = Negative;
    }
  }
  if (o.verify) {
    for (auto p : {Player::Eloise, Player::Abelard}) {
      const bool ok = verify_strategy(arena, sol, p);
      std::cout << (p == Player::Eloise ? "Eloise" : "Abelard") << " strategy " << (ok ? "verified" : "REFUTED")
                << '\n';
      if (!ok) status = Negative;
    }
  }
  if (!o.dump.empty()) write_file(o.dump, dump_arena(arena, m));
  return status;
}

int cmd_bisim(const Options& o) {
  const auto l = load_checked(o.left, o.force);
  const auto r = load_checked(o.right, o.force);
  const auto s = point_of(l, o.left_point, o.left);
  const auto t = point_of(r, o.right_point, o.right);
  const auto g = greatest_bisimulation(l, r);
  if (!o.dump.empty()) write_file(o.dump, dump_relation(g, l, r));
  const bool holds = o.global ? g.full() && g.contains(s, t) : g.contains(s, t);
  const std::string what = o.global ? "globally bisimilar" : "bisimilar";
  std::cout << (holds ? what : "not " + what) << '\n';
  return holds ? Ok : Negative;
}

int cmd_translate(const Options& o) {
  const auto f = parse_mu(o.formula);
  if (o.to_nmso == o.eliminate) throw std::invalid_argument("choose exactly one of --to-nmso and --eliminate-global");
  if (o.to_nmso) {
    std::cout << print_nmso(to_nmso(game_ready(f))) << '\n';
    return Ok;
  }
  UniverseGuard guard;
  if (o.force) guard = {std::numeric_limits<std::size_t>::max(), std::numeric_limits<std::size_t>::max()};
  const auto u = build_universe(o.universe, {"p"}, guard);
  std::cout << print_mu(eliminate_global(game_ready(f), u).first) << '\n';
  return Ok;
}

int cmd_properties(const Options& o) {
  SuiteOptions so;
  so.seed = o.seed;
  so.samples = o.samples;
  so.universe = o.universe;
  so.force = o.force;
  const auto report = run_suite(o.suite, so);
  if (o.json) {
    std::cout << report.to_json() << '\n';
  } else {
    std::cout << report.suite << ": " << report.samples << " samples, " << report.failures.size() << " failures, "
              << (report.passed() ? "pass" : "FAIL") << '\n';
  }
  for (std::size_t i = 0; i < report.failures.size(); ++i) {
    const auto& f = report.failures[i];
    const auto stem = (std::filesystem::path(o.out_dir) / (report.suite + "-" + std::to_string(i))).string();
    if (f.model) write_file(stem + ".model.json", write_model(*f.model));
    if (f.other) write_file(stem + ".other.json", write_model(*f.other));
    write_file(stem + ".formula.txt", f.formula);
    if (!o.json)
      std::cerr << "failure seed=" << f.seed << " formula=\"" << f.formula << "\" " << f.detail << " -> " << stem
                << ".*\n";
  }
  return report.passed() ? Ok : Negative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checking, games, bisimulation and translations for the monotone neighborhood mu-calculus"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--force", o.force, "Lift size guards");

  auto* eval = app.add_subcommand("eval", "Print the extension of a formula");
  eval->add_option("-m,--model", o.model, "Model document")->required();
  eval->add_option("-f,--formula", o.formula, "Formula")->required();

  auto* nmso = app.add_subcommand("nmso", "Evaluate an NMSO formula at a point");
  nmso->add_option("-m,--model", o.model, "Model document")->required();
  nmso->add_option("-f,--formula", o.formula, "NMSO formula")->required();
  nmso->add_option("--point", o.point, "Point (defaults to the document's)");

  auto* game = app.add_subcommand("game", "Solve the evaluation game and list Eloise's winning states");
  game->add_option("-m,--model", o.model, "Model document")->required();
  game->add_option("-f,--formula", o.formula, "Formula")->required();
  game->add_flag("--adequacy", o.adequacy, "Compare the winning region with the extension");
  game->add_flag("--verify-strategies", o.verify, "Check both positional strategies");
  game->add_option("--dump-arena", o.dump, "Write the arena to a file");

  auto* bisim = app.add_subcommand("bisim", "Decide bisimilarity of two pointed models");
  bisim->add_option("left", o.left, "Left model document")->required();
  bisim->add_option("right", o.right, "Right model document")->required();
  bisim->add_option("--left-point", o.left_point, "Left point (defaults to the document's)");
  bisim->add_option("--right-point", o.right_point, "Right point (defaults to the document's)");
  bisim->add_flag("--global", o.global, "Require a bisimulation total on both models");
  bisim->add_option("--dump-relation", o.dump, "Write the greatest bisimulation to a file");

  auto* translate = app.add_subcommand("translate", "Translate a formula");
  translate->add_option("-f,--formula", o.formula, "Formula")->required();
  translate->add_flag("--to-nmso", o.to_nmso, "Emit the equivalent NMSO formula");
  translate->add_flag("--eliminate-global", o.eliminate, "Replace global modalities using a universe model");
  translate->add_option("--universe", o.universe, "Universe bound (models up to this many states)");

  auto* props = app.add_subcommand("properties", "Run a property suite");
  props->add_option("--suite", o.suite, "Suite name")->required();
  props->add_option("--seed", o.seed, "Run seed");
  props->add_option("--samples", o.samples, "Sample count (suite default if omitted)");
  props->add_option("--universe", o.universe, "Universe bound");
  props->add_flag("--json", o.json, "Machine-readable report");
  props->add_option("--out-dir", o.out_dir, "Directory for counterexample files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Ok : ParseFailure;
  }

  try {
    if (*eval) return cmd_eval(o);
    if (*nmso) return cmd_nmso(o);
    if (*game) return cmd_game(o);
    if (*bisim) return cmd_bisim(o);
    if (*translate) return cmd_translate(o);
    if (*props) return cmd_properties(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return ParseFailure;
  } catch (const ValidationError& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return Invalid;
  } catch (const GuardError& e) {
    std::cerr << "guard: " << e.what() << '\n';
    return Guard;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return Invalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Invalid;
  }
  return Ok;
}
