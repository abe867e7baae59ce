// Command-line front end: game ingestion, analysis at finite horizons,
// symbolic verification at the huge horizon, Hasse/DOT emission and the
// built-in golden suite.
//
// Exit status: 0 verified/pass, 1 refuted/fail, 2 usage or input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "taugame/catalog.hpp"
#include "taugame/equilibria.hpp"
#include "taugame/textio.hpp"

using namespace taugame;

namespace {

struct LoadedGame {
  GameDescription desc;
  std::shared_ptr<PayoffModel> model;
};

LoadedGame load_game(const std::string& source) {
  for (const auto& id : catalog::ids())
    if (id == source) {
      auto entry = catalog::get(id);
      return {from_catalog(entry), entry.model};
    }
  std::ifstream in(source);
  if (!in) throw std::invalid_argument("cannot open game description \"" + source + "\"");
  std::stringstream buffer;
  buffer << in.rdbuf();
  LoadedGame out{parse_game_description(buffer.str()), nullptr};
  if (!out.desc.table)
    throw std::invalid_argument("game description carries no payoffs; criteria need them");
  out.model = std::make_shared<TablePayoff>(*out.desc.table);
  return out;
}

Horizon parse_horizon(const std::string& text) {
  if (text.rfind("n=", 0) == 0) {
    int n = std::stoi(text.substr(2));
    if (n < 1) throw std::invalid_argument("horizon must be at least 1");
    return FiniteHorizon{n};
  }
  if (text == "huge:perspective") return HugeHorizon{ViewKind::Perspective};
  if (text == "huge:birdseye") return HugeHorizon{ViewKind::BirdsEye};
  throw std::invalid_argument("horizon must be n=<k>, huge:perspective or huge:birdseye");
}

NashSemantics parse_semantics(const std::string& text) {
  if (text == "weak") return NashSemantics::RequiresWeakPreference;
  if (text == "strict") return NashSemantics::NoStrictImprovement;
  throw std::invalid_argument("semantics must be weak or strict");
}

// name(key=value,...) family specifications.
struct FamilySpec {
  std::string name;
  std::map<std::string, std::string> args;
};

FamilySpec parse_family_spec(const std::string& text) {
  FamilySpec spec;
  std::size_t open = text.find('(');
  if (open == std::string::npos) {
    spec.name = text;
    return spec;
  }
  if (text.back() != ')') throw std::invalid_argument("unbalanced family specification");
  spec.name = text.substr(0, open);
  std::string body = text.substr(open + 1, text.size() - open - 2);
  std::size_t start = 0;
  while (start < body.size()) {
    std::size_t comma = body.find(',', start);
    if (comma == std::string::npos) comma = body.size();
    std::string item = body.substr(start, comma - start);
    std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("family arguments must look like key=value");
    spec.args[item.substr(0, eq)] = item.substr(eq + 1);
    start = comma + 1;
  }
  return spec;
}

StrategyProfile profile_from_plays(const GameForm& g, const std::string& plays) {
  // Plus-joined actions assigned to decision slots in node order; for a
  // simultaneous node one action per mover.
  std::vector<std::string> actions;
  std::size_t start = 0;
  while (start <= plays.size()) {
    std::size_t plus = plays.find('+', start);
    if (plus == std::string::npos) plus = plays.size();
    actions.push_back(plays.substr(start, plus - start));
    start = plus + 1;
  }
  StrategyProfile s;
  s.by_player.resize(g.num_players());
  std::size_t k = 0;
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (g.is_terminal(v)) continue;
    const auto& node = g.node(v);
    if (node.owner == GameForm::kSimultaneous) {
      for (int mover : g.simultaneous_movers(v)) {
        if (k >= actions.size()) throw std::invalid_argument("too few actions in play=...");
        s.by_player[mover][v] = actions[k++];
      }
    } else {
      if (k >= actions.size()) throw std::invalid_argument("too few actions in play=...");
      s.by_player[node.owner][v] = actions[k++];
    }
  }
  if (k != actions.size()) throw std::invalid_argument("too many actions in play=...");
  return s;
}

MixedProfile sigma_from_text(const std::string& text) {
  // "2/3,1/3;1/3,2/3"
  MixedProfile sigma;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t semi = text.find(';', start);
    if (semi == std::string::npos) semi = text.size();
    std::string row = text.substr(start, semi - start);
    std::vector<Rational> dist;
    std::size_t rs = 0;
    while (rs <= row.size()) {
      std::size_t comma = row.find(',', rs);
      if (comma == std::string::npos) comma = row.size();
      dist.push_back(Rational::parse(row.substr(rs, comma - rs)));
      rs = comma + 1;
    }
    sigma.push_back(std::move(dist));
    start = semi + 1;
  }
  return sigma;
}

SegmentedWholeHistory target_from_text(const std::string& text, ViewKind view) {
  // "Rr*1/2+D*1": payload*length runs; a fractional length scales tau,
  // an integral one counts periods.
  std::vector<Segment> segments;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t plus = text.find('+', start);
    if (plus == std::string::npos) plus = text.size();
    std::string item = text.substr(start, plus - start);
    std::size_t star = item.rfind('*');
    if (star == std::string::npos)
      throw std::invalid_argument("target runs must look like label*length");
    Rational len = Rational::parse(item.substr(star + 1));
    NonStdNum length = len.is_integer() ? NonStdNum(Rational(0), len) : NonStdNum(len, Rational(0));
    segments.push_back(run(length, {item.substr(0, star)}));
    start = plus + 1;
  }
  return whole_history(view, std::move(segments));
}

StrategyProfile constituent_equilibrium(const GameForm& g) {
  if (g.node(g.root()).owner != GameForm::kSimultaneous) {
    auto bi = backward_induction(g);
    if (bi.empty()) throw std::runtime_error("no backward-induction profile");
    return bi.front();
  }
  for (const auto& s : enumerate_profiles(g))
    if (is_nash(g, s, NashSemantics::NoStrictImprovement).holds) return s;
  throw std::runtime_error("constituent has no pure Nash profile");
}

std::unique_ptr<StrategyFamily> build_family(const FamilySpec& fs, const RepeatedGameSpec& spec,
                                             const LoadedGame& game, const Criterion& criterion) {
  const GameForm& g = spec.constituent;
  if (fs.name == "repeat-spe") return family_repeat_spe(spec, constituent_equilibrium(g));
  if (fs.name == "simple-sum") {
    int target = g.terminal_by_label(fs.args.at("target"));
    if (target < 0) throw std::invalid_argument("unknown target terminal");
    if (!game.desc.table) throw std::invalid_argument("simple-sum family needs payoffs");
    return family_simple_sum(spec, *game.desc.table, target, constituent_equilibrium(g));
  }
  if (fs.name == "discount") {
    Rational delta = criterion.kind == Criterion::Kind::DiscountedSum
                         ? criterion.delta
                         : Rational::parse(fs.args.at("delta"));
    return family_discount(spec, delta, constituent_equilibrium(g));
  }
  if (fs.name == "repeat-nash")
    return family_repeat_nash(spec, profile_from_plays(g, fs.args.at("play")));
  if (fs.name == "mixed") {
    if (!game.desc.strategic) throw std::invalid_argument("mixed families need a matrix game");
    return family_mixed(spec, *game.desc.strategic, sigma_from_text(fs.args.at("sigma")));
  }
  if (fs.name == "realize") {
    if (!game.desc.table) throw std::invalid_argument("realize family needs payoffs");
    return family_realize_terminal(spec, *game.desc.table,
                                   target_from_text(fs.args.at("target"), ViewKind::BirdsEye),
                                   constituent_equilibrium(g));
  }
  if (fs.name == "invest-while-unbroken") return catalog::investment_family();
  if (fs.name == "avoid-until-the-end") return catalog::lifestyle_avoid_family();
  if (fs.name == "always-eat") return catalog::lifestyle_eat_family();
  throw std::invalid_argument("unknown family \"" + fs.name + "\"");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write \"" + path + "\"");
  out << text;
}

int cmd_analyze(const std::string& game_src, const std::string& horizon_text,
                const std::string& criterion_text, const std::string& semantics_text,
                const std::string& out_path) {
  LoadedGame game = load_game(game_src);
  Horizon horizon = parse_horizon(horizon_text);
  const auto* fin = std::get_if<FiniteHorizon>(&horizon);
  if (!fin) throw std::invalid_argument("analyze works at finite horizons; use verify for huge");
  Criterion criterion = Criterion::parse(criterion_text);
  NashSemantics semantics = parse_semantics(semantics_text);

  RepeatedGameSpec spec = game.desc.spec;
  spec.horizon = horizon;
  RepeatedGame rg = build_finite_repeated(spec, fin->n);
  apply_criterion_preferences(rg, spec, *game.model, criterion);

  std::vector<std::pair<std::string, std::string>> fields;
  fields.emplace_back("game", game.desc.id);
  fields.emplace_back("horizon", "n=" + std::to_string(fin->n));
  fields.emplace_back("criterion", criterion.str());
  fields.emplace_back("semantics", semantics_text);
  fields.emplace_back("terminals", std::to_string(rg.game.num_terminals()));

  // Exhaustive equilibrium scan.
  int spe_count = 0;
  std::string first_profile;
  for (const auto& s : enumerate_profiles(rg.game)) {
    if (!is_spe(rg.game, s, semantics).holds) continue;
    if (spe_count == 0) first_profile = s.str(rg.game);
    ++spe_count;
  }
  fields.emplace_back("spe_count", std::to_string(spe_count));
  if (spe_count > 0) fields.emplace_back("spe_first", first_profile);

  // Leaf payoffs per player.
  for (int t = 0; t < rg.game.num_terminals(); ++t) {
    std::vector<std::string> labels;
    for (int z : rg.leaf_history[t]) labels.push_back(spec.constituent.terminal_label(z));
    std::string value;
    for (int p = 0; p < spec.constituent.num_players(); ++p) {
      if (p) value += ", ";
      value += collapse(game.model->payoff(labels, p, criterion, fin->n)).str();
    }
    fields.emplace_back("payoff " + rg.game.terminal_label(t), "(" + value + ")");
  }

  // Dynamic consistency against the constituent equilibrium.
  try {
    StrategyProfile spe = constituent_equilibrium(spec.constituent);
    int z_star = outcome(spec.constituent, spe);
    auto dc = check_dynamic_consistency(spec, *game.model, criterion, z_star);
    std::size_t i = 0;
    for (int p = 0; p < spec.constituent.num_players(); ++p) {
      if (!spec.constituent.is_core(p)) continue;
      fields.emplace_back("dynamic_consistency " + spec.constituent.player_name(p),
                          dynamic_consistency_name(dc[i++]));
    }
  } catch (const std::exception&) {
    fields.emplace_back("dynamic_consistency", "unavailable");
  }

  emit(render_report("analyze", std::move(fields)), out_path);
  return spe_count > 0 ? 0 : 1;
}

int cmd_verify(const std::string& game_src, const std::string& horizon_text,
               const std::string& criterion_text, const std::string& family_text, int suite_depth,
               const std::string& out_path) {
  LoadedGame game = load_game(game_src);
  Criterion criterion = Criterion::parse(criterion_text);
  RepeatedGameSpec spec = game.desc.spec;
  spec.horizon = parse_horizon(horizon_text);
  auto family = build_family(parse_family_spec(family_text), spec, game, criterion);
  auto report = verify_symbolic_spe(spec, *family, criterion, *game.model, suite_depth);

  std::vector<std::pair<std::string, std::string>> fields;
  fields.emplace_back("game", game.desc.id);
  fields.emplace_back("horizon", horizon_text);
  fields.emplace_back("criterion", report.criterion);
  fields.emplace_back("family", report.family);
  fields.emplace_back("verdict", report.verified ? "verified-on-suite" : "refuted");
  fields.emplace_back("deviations", std::to_string(report.rows.size()));
  if (report.witness) {
    fields.emplace_back("witness", report.witness->description);
    fields.emplace_back("witness_payoffs",
                        report.witness->deviation_payoff + " over " +
                            report.witness->baseline_payoff);
  }
  std::string text = render_report("verify", std::move(fields));
  text += "[deviations]\n";
  for (const auto& row : report.rows) {
    const char* ord = row.deviation_vs_baseline == Ordering::Less
                          ? "<"
                          : (row.deviation_vs_baseline == Ordering::Greater ? ">" : "=");
    text += row.description + ": dev " + row.deviation_payoff + " " + ord + " base " +
            row.baseline_payoff + "\n";
  }
  emit(text, out_path);
  return report.verified ? 0 : 1;
}

int cmd_hasse(const std::string& game_src, const std::string& horizon_text,
              const std::string& player, bool use_dc, const std::string& dot_path,
              const std::string& out_path) {
  LoadedGame game = load_game(game_src);
  Horizon horizon = parse_horizon(horizon_text);
  const auto* fin = std::get_if<FiniteHorizon>(&horizon);
  if (!fin) throw std::invalid_argument("hasse needs a finite horizon");
  RepeatedGameSpec spec = game.desc.spec;
  spec.horizon = horizon;
  int cp = spec.constituent.player_index(player);
  if (cp < 0) throw std::invalid_argument("unknown player \"" + player + "\"");

  LiftOptions options;
  if (use_dc) {
    StrategyProfile spe = constituent_equilibrium(spec.constituent);
    options.use_dynamic_consistency = true;
    options.spe_outcome = outcome(spec.constituent, spe);
  }
  LiftedPreference lifted = lift_preferences(spec, fin->n, options);
  RepeatedGame rg = build_finite_repeated(spec, fin->n);

  // Relation over the repeated game's terminals for the named constituent
  // player.
  std::vector<std::string> labels;
  for (int t = 0; t < rg.game.num_terminals(); ++t) labels.push_back(rg.game.terminal_label(t));
  PreferenceRelation rel(static_cast<int>(labels.size()));
  for (int a = 0; a < rg.game.num_terminals(); ++a)
    for (int b = 0; b < rg.game.num_terminals(); ++b)
      if (lifted.by_player[cp].holds(lifted.index_of(rg.leaf_history[a]),
                                     lifted.index_of(rg.leaf_history[b])))
        rel.add_pair(a, b);
  rel.close();
  HasseDiagram d = hasse(rel, labels);

  std::vector<std::pair<std::string, std::string>> fields;
  fields.emplace_back("game", game.desc.id);
  fields.emplace_back("player", player);
  fields.emplace_back("nodes", std::to_string(d.classes.size()));
  fields.emplace_back("edges", std::to_string(d.edges.size()));
  emit(render_report("hasse", std::move(fields)), out_path);
  emit(to_dot(d, "hasse_" + player), dot_path);
  return 0;
}

int cmd_catalog(bool list, bool run, const std::string& export_id) {
  if (list) {
    for (const auto& id : catalog::ids()) std::cout << id << "\n";
    return 0;
  }
  if (!export_id.empty()) {
    auto entry = catalog::get(export_id);
    std::cout << export_game_description(from_catalog(entry));
    return 0;
  }
  if (run) {
    auto report = catalog::run_all();
    for (const auto& line : report.lines) std::cout << line << "\n";
    std::cout << "passed: " << report.passed << "\nfailed: " << report.failed << "\n";
    return report.failed == 0 ? 0 : 1;
  }
  throw std::invalid_argument("catalog needs --list, --run or --export <id>");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of hugely repeated games"};
  app.require_subcommand(1);

  std::string game_src, horizon = "n=2", criterion = "simple", semantics = "strict";
  std::string family, out_path, dot_path, player, export_id;
  int suite_depth = 3;
  bool use_dc = false, do_list = false, do_run = false;

  auto* analyze = app.add_subcommand("analyze", "expand, solve and report a finite horizon");
  analyze->add_option("--game", game_src, "catalog id or description file")->required();
  analyze->add_option("--horizon", horizon, "n=<k>");
  analyze->add_option("--criterion", criterion, "simple | discounted:p/q | overtaking | limit-of-means");
  analyze->add_option("--semantics", semantics, "weak | strict");
  analyze->add_option("--out", out_path, "report path (default stdout)");

  auto* verify = app.add_subcommand("verify", "verify a strategy family on a deviation suite");
  verify->add_option("--game", game_src, "catalog id or description file")->required();
  verify->add_option("--horizon", horizon, "n=<k> | huge:perspective | huge:birdseye")->required();
  verify->add_option("--criterion", criterion, "criterion specification")->required();
  verify->add_option("--family", family, "e.g. simple-sum(target=Rr)")->required();
  verify->add_option("--suite-depth", suite_depth, "near-future/near-end sampling depth");
  verify->add_option("--out", out_path, "report path (default stdout)");

  auto* hasse_cmd = app.add_subcommand("hasse", "emit the lifted preference order as DOT");
  hasse_cmd->add_option("--game", game_src, "catalog id or description file")->required();
  hasse_cmd->add_option("--horizon", horizon, "n=<k>");
  hasse_cmd->add_option("--player", player, "constituent player name")->required();
  hasse_cmd->add_flag("--dynamic-consistency", use_dc, "add the equilibrium identifications");
  hasse_cmd->add_option("--dot", dot_path, "DOT output path (default stdout)");
  hasse_cmd->add_option("--out", out_path, "report path (default stdout)");

  auto* catalog_cmd = app.add_subcommand("catalog", "list, export or run the built-in games");
  catalog_cmd->add_flag("--list", do_list, "list the catalog ids");
  catalog_cmd->add_flag("--run", do_run, "run the golden suite");
  catalog_cmd->add_option("--export", export_id, "print a catalog entry as a description file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed())
      return cmd_analyze(game_src, horizon, criterion, semantics, out_path);
    if (verify->parsed())
      return cmd_verify(game_src, horizon, criterion, family, suite_depth, out_path);
    if (hasse_cmd->parsed())
      return cmd_hasse(game_src, horizon, player, use_dc, dot_path, out_path);
    if (catalog_cmd->parsed()) return cmd_catalog(do_list, do_run, export_id);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
