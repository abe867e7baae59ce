#include "taugame/textio.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace taugame {

namespace {

struct Line {
  int number = 0;
  int indent = 0;
  std::vector<std::string> tokens;
};

[[noreturn]] void fail(int line, const std::string& message) {
  throw std::invalid_argument("line " + std::to_string(line) + ": " + message);
}

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    int indent = 0;
    while (indent < static_cast<int>(raw.size()) && raw[indent] == ' ') ++indent;
    if (indent % 2 != 0) fail(number, "indentation must use two spaces per level");
    std::istringstream ls(raw);
    Line line{number, indent / 2, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

Rational parse_rational(int line, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    fail(line, e.what());
  }
}

}  // namespace

GameDescription parse_game_description(const std::string& text) {
  auto lines = tokenize(text);
  GameDescription out;
  GameForm& g = out.spec.constituent;
  std::vector<std::pair<std::string, bool>> players;  // name, core
  bool tree_built = false;
  bool simultaneous = false;
  std::vector<std::string> sim_players;
  std::map<std::string, std::vector<std::string>> sim_actions;
  std::vector<std::pair<int, std::string>> aliases;  // line, "label alias" pending
  std::vector<Line> payoff_lines;
  std::vector<Line> prefer_lines;
  std::vector<Line> connected_lines;

  auto player_index = [&](int line, const std::string& name) {
    int p = g.player_index(name);
    if (p < 0) fail(line, "unknown player \"" + name + "\"");
    return p;
  };

  std::size_t i = 0;
  while (i < lines.size()) {
    const Line& line = lines[i];
    const auto& t = line.tokens;
    if (t[0] == "game") {
      if (t.size() != 2) fail(line.number, "expected: game <id>");
      out.id = t[1];
      ++i;
    } else if (t[0] == "player") {
      if (t.size() != 3 || (t[2] != "core" && t[2] != "outside"))
        fail(line.number, "expected: player <name> core|outside");
      players.emplace_back(t[1], t[2] == "core");
      g.add_player(t[1], t[2] == "core");
      ++i;
    } else if (t[0] == "tree") {
      if (t.size() != 2) fail(line.number, "expected: tree <root-owner>");
      if (tree_built) fail(line.number, "duplicate tree");
      tree_built = true;
      g.set_owner(g.root(), player_index(line.number, t[1]));
      // Parse the indented branch lines.
      std::vector<int> stack = {g.root()};  // node per indent level - 1
      ++i;
      while (i < lines.size() && lines[i].indent >= 1) {
        const Line& b = lines[i];
        if (b.indent > static_cast<int>(stack.size()))
          fail(b.number, "indentation skips a level");
        stack.resize(b.indent);
        int parent = stack.back();
        const auto& bt = b.tokens;
        int child = -1;
        try {
          child = g.add_child(parent, bt[0]);
        } catch (const std::exception& e) {
          fail(b.number, e.what());
        }
        if (bt.size() == 1) {
          // leaf with the automatic label
        } else if (bt.size() == 3 && bt[1] == "->") {
          aliases.emplace_back(b.number, bt[0] + " " + bt[2]);
          aliases.back().second = bt[2];
          // remember which node the alias belongs to via its path; resolved
          // after finalize
          aliases.back().first = child;
        } else if (bt.size() == 3 && bt[1] == "player") {
          g.set_owner(child, player_index(b.number, bt[2]));
          stack.push_back(child);
        } else {
          fail(b.number, "expected: <action> [player <name> | -> <alias>]");
        }
        ++i;
      }
    } else if (t[0] == "simultaneous") {
      if (t.size() < 2) fail(line.number, "expected: simultaneous <players...>");
      simultaneous = true;
      sim_players.assign(t.begin() + 1, t.end());
      ++i;
    } else if (t[0] == "actions") {
      if (t.size() < 3) fail(line.number, "expected: actions <player> <a1> <a2> ...");
      sim_actions[t[1]] = std::vector<std::string>(t.begin() + 2, t.end());
      ++i;
    } else if (t[0] == "alias") {
      if (t.size() != 3) fail(line.number, "expected: alias <label> <alias>");
      aliases.emplace_back(-line.number, t[1] + "\n" + t[2]);
      ++i;
    } else if (t[0] == "payoff") {
      payoff_lines.push_back(line);
      ++i;
    } else if (t[0] == "prefer") {
      prefer_lines.push_back(line);
      ++i;
    } else if (t[0] == "connected") {
      connected_lines.push_back(line);
      ++i;
    } else {
      fail(line.number, "unknown directive \"" + t[0] + "\"");
    }
  }

  if (players.empty()) fail(1, "no players declared");
  if (simultaneous == tree_built)
    fail(1, "exactly one of \"tree\" or \"simultaneous\" is required");

  if (simultaneous) {
    StrategicGame sg;
    std::vector<int> movers;
    for (const auto& name : sim_players) {
      int p = g.player_index(name);
      if (p < 0) fail(1, "unknown player \"" + name + "\" in simultaneous");
      movers.push_back(p);
      sg.players.push_back(name);
      auto it = sim_actions.find(name);
      if (it == sim_actions.end()) fail(1, "missing actions for player \"" + name + "\"");
      sg.actions.push_back(it->second);
    }
    g.make_simultaneous(g.root(), movers, sg.actions);
    out.strategic = std::move(sg);
  }
  g.finalize();

  // Resolve aliases: tree leaves were captured by node id, matrix aliases by
  // label text.
  for (const auto& [key, value] : aliases) {
    if (key >= 0) {
      int terminal = g.terminal_index_of(key);
      if (terminal < 0) fail(1, "alias on an internal node");
      g.set_terminal_alias(terminal, value);
    } else {
      std::size_t nl = value.find('\n');
      std::string label = value.substr(0, nl);
      std::string alias = value.substr(nl + 1);
      int terminal = g.terminal_by_label(label);
      if (terminal < 0) fail(-key, "alias names unknown terminal \"" + label + "\"");
      g.set_terminal_alias(terminal, alias);
    }
  }

  // Payoffs.
  if (!payoff_lines.empty()) {
    PayoffTable table;
    for (int t = 0; t < g.num_terminals(); ++t)
      table.values[g.terminal_label(t)] =
          std::vector<Rational>(players.size(), Rational(0));
    std::vector<std::vector<bool>> seen(g.num_terminals(),
                                        std::vector<bool>(players.size(), false));
    for (const Line& line : payoff_lines) {
      if (line.tokens.size() < 3) fail(line.number, "expected: payoff <player> <label>=<p/q> ...");
      int p = player_index(line.number, line.tokens[1]);
      for (std::size_t k = 2; k < line.tokens.size(); ++k) {
        const std::string& item = line.tokens[k];
        std::size_t eq = item.rfind('=');
        if (eq == std::string::npos) fail(line.number, "expected <label>=<p/q>, got " + item);
        std::string label = item.substr(0, eq);
        int terminal = g.terminal_by_label(label);
        if (terminal < 0) fail(line.number, "unknown terminal \"" + label + "\"");
        table.values[g.terminal_label(terminal)][p] =
            parse_rational(line.number, item.substr(eq + 1));
        seen[terminal][p] = true;
      }
    }
    for (int t = 0; t < g.num_terminals(); ++t)
      for (std::size_t p = 0; p < players.size(); ++p)
        if (!seen[t][p])
          fail(payoff_lines.front().number, "missing payoff for player " + players[p].first +
                                                " at terminal " + g.terminal_label(t));
    out.table = std::move(table);
    if (out.strategic) {
      out.strategic->payoffs.assign(players.size(), {});
      for (int idx = 0; idx < g.num_terminals(); ++idx)
        for (std::size_t p = 0; p < players.size(); ++p)
          out.strategic->payoffs[p].push_back(out.table->values.at(g.terminal_label(idx))[p]);
    }
  }

  // Preferences: payoff order when available, explicit chains otherwise.
  std::vector<PreferenceRelation> prefs(players.size(),
                                        PreferenceRelation(g.num_terminals() + 1));
  if (out.table) {
    for (std::size_t p = 0; p < players.size(); ++p) {
      for (int a = 0; a < g.num_terminals(); ++a)
        for (int b = 0; b < g.num_terminals(); ++b)
          if (out.table->values.at(g.terminal_label(a))[p] >=
              out.table->values.at(g.terminal_label(b))[p])
            prefs[p].add_pair(a, b);
    }
  }
  for (const Line& line : prefer_lines) {
    // prefer <player> a > b > c
    if (line.tokens.size() < 4) fail(line.number, "expected: prefer <player> <a> > <b> ...");
    int p = player_index(line.number, line.tokens[1]);
    int prev = -1;
    for (std::size_t k = 2; k < line.tokens.size(); ++k) {
      if (line.tokens[k] == ">") continue;
      int terminal = g.terminal_by_label(line.tokens[k]);
      if (terminal < 0) fail(line.number, "unknown terminal \"" + line.tokens[k] + "\"");
      if (prev >= 0) prefs[p].add_pair(prev, terminal);
      prev = terminal;
    }
  }
  for (std::size_t p = 0; p < players.size(); ++p) {
    prefs[p].close();
    g.set_preferences(static_cast<int>(p), std::move(prefs[p]));
  }

  // Connected set.
  if (connected_lines.empty()) fail(1, "missing connected set");
  for (const Line& line : connected_lines) {
    for (std::size_t k = 1; k < line.tokens.size(); ++k) {
      if (line.tokens[k] == "*") {
        out.spec.connected.clear();
        for (int t = 0; t < g.num_terminals(); ++t) out.spec.connected.push_back(t);
        break;
      }
      int terminal = g.terminal_by_label(line.tokens[k]);
      if (terminal < 0)
        fail(line.number, "connected set names a non-terminal \"" + line.tokens[k] + "\"");
      out.spec.connected.push_back(terminal);
    }
  }
  std::sort(out.spec.connected.begin(), out.spec.connected.end());
  out.spec.connected.erase(std::unique(out.spec.connected.begin(), out.spec.connected.end()),
                           out.spec.connected.end());

  try {
    g.validate();
    out.spec.validate();
  } catch (const std::exception& e) {
    fail(1, e.what());
  }
  return out;
}

namespace {

void export_subtree(const GameForm& g, int node, int depth, std::string& out) {
  for (int child : g.node(node).children) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += g.node(child).action_from_parent;
    if (g.is_terminal(child)) {
      int t = g.terminal_index_of(child);
      // Emit the alias only when it differs from the automatic label.
      std::vector<ActionLabel> path = g.path(child);
      std::string automatic;
      if (path.size() == 1) {
        automatic = path[0];
      } else {
        automatic = "(";
        for (std::size_t i = 0; i < path.size(); ++i) {
          if (i) automatic += ',';
          automatic += path[i];
        }
        automatic += ')';
      }
      if (g.terminal_label(t) != automatic) out += " -> " + g.terminal_label(t);
      out += '\n';
    } else {
      out += " player " + g.player_name(g.node(child).owner) + "\n";
      export_subtree(g, child, depth + 1, out);
    }
  }
}

}  // namespace

std::string export_game_description(const GameDescription& game) {
  const GameForm& g = game.spec.constituent;
  std::string out = "game " + game.id + "\n";
  for (int p = 0; p < g.num_players(); ++p)
    out += "player " + g.player_name(p) + (g.is_core(p) ? " core" : " outside") + "\n";
  if (g.node(g.root()).owner == GameForm::kSimultaneous) {
    out += "simultaneous";
    const auto& movers = g.simultaneous_movers(g.root());
    for (int p : movers) out += " " + g.player_name(p);
    out += "\n";
    const auto& menus = g.node(g.root()).menus;
    for (std::size_t k = 0; k < movers.size(); ++k) {
      out += "actions " + g.player_name(movers[k]);
      for (const auto& a : menus[k]) out += " " + a;
      out += "\n";
    }
    for (int t = 0; t < g.num_terminals(); ++t) {
      std::string automatic = g.path(g.terminal_node(t)).front();
      if (g.terminal_label(t) != automatic)
        out += "alias " + automatic + " " + g.terminal_label(t) + "\n";
    }
  } else {
    out += "tree " + g.player_name(g.node(g.root()).owner) + "\n";
    export_subtree(g, g.root(), 1, out);
  }
  if (static_cast<int>(game.spec.connected.size()) == g.num_terminals()) {
    out += "connected *\n";
  } else {
    out += "connected";
    for (int t : game.spec.connected) out += " " + g.terminal_label(t);
    out += "\n";
  }
  if (game.table) {
    for (int p = 0; p < g.num_players(); ++p) {
      out += "payoff " + g.player_name(p);
      for (int t = 0; t < g.num_terminals(); ++t)
        out += " " + g.terminal_label(t) + "=" + game.table->at(g.terminal_label(t), p).str();
      out += "\n";
    }
  } else {
    // Ordinal preferences as explicit pairs, rendered as two-element chains.
    for (int p = 0; p < g.num_players(); ++p) {
      const auto& pref = g.preferences(p);
      for (int a = 0; a < g.num_terminals(); ++a)
        for (int b = 0; b < g.num_terminals(); ++b)
          if (a != b && pref.holds(a, b))
            out += "prefer " + g.player_name(p) + " " + g.terminal_label(a) + " > " +
                   g.terminal_label(b) + "\n";
    }
  }
  return out;
}

GameDescription from_catalog(const catalog::CatalogEntry& entry) {
  GameDescription out;
  out.id = entry.id;
  out.spec = entry.spec;
  out.table = entry.table;
  out.strategic = entry.strategic;
  return out;
}

std::string to_dot(const HasseDiagram& d, const std::string& graph_name) {
  std::string out = "digraph " + graph_name + " {\n";
  out += "  rankdir=TB;\n  node [shape=box];\n";
  for (std::size_t c = 0; c < d.classes.size(); ++c)
    out += "  n" + std::to_string(c) + " [label=\"" + d.class_labels[c] + "\"];\n";
  int max_depth = 0;
  for (int dep : d.depth) max_depth = std::max(max_depth, dep);
  for (int level = 0; level <= max_depth; ++level) {
    std::string rank;
    for (std::size_t c = 0; c < d.classes.size(); ++c)
      if (d.depth[c] == level) rank += " n" + std::to_string(c) + ";";
    if (!rank.empty()) out += "  { rank=same;" + rank + " }\n";
  }
  for (auto [a, b] : d.edges)
    out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
  out += "}\n";
  return out;
}

std::string render_report(const std::string& title,
                          std::vector<std::pair<std::string, std::string>> fields) {
  std::sort(fields.begin(), fields.end());
  std::string out = "[" + title + "]\n";
  for (const auto& [key, value] : fields) out += key + ": " + value + "\n";
  return out;
}

}  // namespace taugame
