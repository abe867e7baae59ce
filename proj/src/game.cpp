#include "taugame/game.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace taugame {

// --- PreferenceRelation ------------------------------------------------------

PreferenceRelation::PreferenceRelation(int n) : n_(n), geq_(static_cast<std::size_t>(n) * n, false) {
  for (int i = 0; i < n; ++i) geq_[static_cast<std::size_t>(i) * n + i] = true;
}

PreferenceRelation PreferenceRelation::from_pairs(int n,
                                                  const std::vector<std::pair<int, int>>& pairs) {
  PreferenceRelation rel(n);
  for (auto [a, b] : pairs) rel.add_pair(a, b);
  rel.close();
  return rel;
}

PreferenceRelation PreferenceRelation::from_values(const std::vector<Rational>& values) {
  int n = static_cast<int>(values.size());
  PreferenceRelation rel(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (values[a] >= values[b]) rel.geq_[static_cast<std::size_t>(a) * n + b] = true;
  return rel;
}

void PreferenceRelation::add_pair(int a, int b) {
  geq_[static_cast<std::size_t>(a) * n_ + b] = true;
}

void PreferenceRelation::close() {
  for (int i = 0; i < n_; ++i) geq_[static_cast<std::size_t>(i) * n_ + i] = true;
  for (int k = 0; k < n_; ++k)
    for (int a = 0; a < n_; ++a) {
      if (!holds(a, k)) continue;
      for (int b = 0; b < n_; ++b)
        if (holds(k, b)) geq_[static_cast<std::size_t>(a) * n_ + b] = true;
    }
}

// --- GameForm ----------------------------------------------------------------

int GameForm::add_player(PlayerId id, bool core) {
  players_.push_back(std::move(id));
  core_.push_back(core);
  prefs_.emplace_back();
  return static_cast<int>(players_.size()) - 1;
}

int GameForm::player_index(const PlayerId& id) const {
  for (std::size_t i = 0; i < players_.size(); ++i)
    if (players_[i] == id) return static_cast<int>(i);
  return -1;
}

std::vector<int> GameForm::core_players() const {
  std::vector<int> out;
  for (int p = 0; p < num_players(); ++p)
    if (core_[p]) out.push_back(p);
  return out;
}

int GameForm::add_child(int parent, ActionLabel action) {
  for (int c : nodes_[parent].children)
    if (nodes_[c].action_from_parent == action)
      throw std::invalid_argument("duplicate action \"" + action + "\" at a node");
  Node child;
  child.parent = parent;
  child.action_from_parent = std::move(action);
  nodes_.push_back(std::move(child));
  int id = static_cast<int>(nodes_.size()) - 1;
  nodes_[parent].children.push_back(id);
  return id;
}

void GameForm::finalize() {
  if (!terminals_.empty()) return;
  for (int id = 0; id < num_nodes(); ++id) {
    if (!nodes_[id].children.empty()) continue;
    nodes_[id].terminal_index = static_cast<int>(terminals_.size());
    terminals_.push_back(id);
    aliases_.emplace_back();
  }
}

void GameForm::set_owner(int node_id, int player) { nodes_[node_id].owner = player; }

void GameForm::make_simultaneous(int node_id, const std::vector<int>& movers,
                                 std::vector<std::vector<ActionLabel>> menus) {
  if (movers.size() != menus.size())
    throw std::invalid_argument("make_simultaneous: one menu per mover required");
  Node& n = nodes_[node_id];
  n.owner = kSimultaneous;
  n.menus = std::move(menus);
  sim_slot_[node_id] = static_cast<int>(sim_movers_.size());
  sim_movers_.push_back(movers);
  // Children in row-major order over the menus.
  std::vector<std::size_t> idx(n.menus.size(), 0);
  while (true) {
    std::string label = "(";
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (k) label += ',';
      label += nodes_[node_id].menus[k][idx[k]];
    }
    label += ')';
    add_child(node_id, label);
    std::size_t k = idx.size();
    while (k > 0) {
      --k;
      if (++idx[k] < nodes_[node_id].menus[k].size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
  }
}

const std::vector<int>& GameForm::simultaneous_movers(int node_id) const {
  return sim_movers_[sim_slot_.at(node_id)];
}

std::vector<ActionLabel> GameForm::path(int node_id) const {
  std::vector<ActionLabel> actions;
  for (int cur = node_id; cur > 0; cur = nodes_[cur].parent)
    actions.push_back(nodes_[cur].action_from_parent);
  std::reverse(actions.begin(), actions.end());
  return actions;
}

const std::string& GameForm::terminal_label(int terminal_index) const {
  if (!aliases_[terminal_index].empty()) return aliases_[terminal_index];
  if (labels_.size() != terminals_.size()) labels_.resize(terminals_.size());
  std::string& cached = labels_[terminal_index];
  if (cached.empty()) {
    std::vector<ActionLabel> actions = path(terminals_[terminal_index]);
    if (actions.size() == 1) {
      cached = actions[0];
    } else {
      cached = "(";
      for (std::size_t i = 0; i < actions.size(); ++i) {
        if (i) cached += ',';
        cached += actions[i];
      }
      cached += ')';
    }
  }
  return cached;
}

void GameForm::set_terminal_alias(int terminal_index, std::string alias) {
  aliases_[terminal_index] = std::move(alias);
}

int GameForm::terminal_by_label(const std::string& label) const {
  for (int t = 0; t < num_terminals(); ++t)
    if (terminal_label(t) == label) return t;
  return -1;
}

int GameForm::node_by_path(const std::vector<ActionLabel>& actions) const {
  int cur = 0;
  for (const auto& a : actions) {
    int next = -1;
    for (int c : nodes_[cur].children)
      if (nodes_[c].action_from_parent == a) {
        next = c;
        break;
      }
    if (next < 0) return -1;
    cur = next;
  }
  return cur;
}

void GameForm::set_preferences(int player, PreferenceRelation rel) {
  if (rel.size() != num_terminals() + 1)
    throw std::invalid_argument("preference relation must cover terminals plus the empty history");
  prefs_[player] = std::move(rel);
}

void GameForm::validate() {
  finalize();
  if (core_players().empty()) throw std::invalid_argument("core player set must be nonempty");
  for (int id = 0; id < num_nodes(); ++id) {
    const Node& n = nodes_[id];
    if (n.children.empty()) continue;
    if (n.owner == -1)
      throw std::invalid_argument("player function not total: node without owner");
    if (n.owner == kSimultaneous) continue;
    if (n.owner < 0 || n.owner >= num_players())
      throw std::invalid_argument("unknown owner at an internal node");
  }
  for (int p = 0; p < num_players(); ++p)
    if (prefs_[p].size() != num_terminals() + 1)
      throw std::invalid_argument("missing preference relation for player " + players_[p]);
}

// --- Strategies and outcomes -------------------------------------------------

std::string StrategyProfile::str(const GameForm& g) const {
  std::string out;
  for (int p = 0; p < static_cast<int>(by_player.size()); ++p) {
    if (p) out += "; ";
    out += g.player_name(p) + ":";
    bool first = true;
    for (const auto& [node, action] : by_player[p]) {
      out += first ? " " : ", ";
      first = false;
      auto actions = g.path(node);
      std::string where = "@";
      if (actions.empty()) {
        where += "root";
      } else {
        for (std::size_t i = 0; i < actions.size(); ++i) {
          if (i) where += '.';
          where += actions[i];
        }
      }
      out += where + "->" + action;
    }
  }
  return out;
}

std::vector<ActionLabel> legal_actions(const GameForm& g, int node_id) {
  if (g.is_terminal(node_id)) throw std::invalid_argument("legal_actions: terminal history");
  std::vector<ActionLabel> out;
  for (int c : g.node(node_id).children) out.push_back(g.node(c).action_from_parent);
  return out;
}

int follow_step(const GameForm& g, const StrategyProfile& s, int node) {
  const auto& n = g.node(node);
  if (n.owner == GameForm::kSimultaneous) {
    const auto& movers = g.simultaneous_movers(node);
    std::string label = "(";
    for (std::size_t k = 0; k < movers.size(); ++k) {
      if (k) label += ',';
      label += s.at(movers[k], node);
    }
    label += ')';
    for (int c : n.children)
      if (g.node(c).action_from_parent == label) return c;
    throw std::logic_error("profile selects a missing joint action " + label);
  }
  const ActionLabel& a = s.at(n.owner, node);
  for (int c : n.children)
    if (g.node(c).action_from_parent == a) return c;
  throw std::logic_error("strategy selects unavailable action \"" + a + "\"");
}

int outcome(const GameForm& g, const StrategyProfile& s, int from) {
  int cur = from;
  while (!g.is_terminal(cur)) cur = follow_step(g, s, cur);
  return g.terminal_index_of(cur);
}

namespace {

// Terminals player `i` can reach from `node`, with the deviating choices that
// get there (first found per terminal).
void collect_deviations(const GameForm& g, const StrategyProfile& s, int player, int node,
                        std::map<int, ActionLabel>& picked,
                        std::map<int, std::map<int, ActionLabel>>& found) {
  if (g.is_terminal(node)) {
    found.emplace(g.terminal_index_of(node), picked);
    return;
  }
  const auto& n = g.node(node);
  bool player_moves = false;
  if (n.owner == GameForm::kSimultaneous) {
    const auto& movers = g.simultaneous_movers(node);
    auto it = std::find(movers.begin(), movers.end(), player);
    if (it != movers.end()) {
      player_moves = true;
      std::size_t slot = static_cast<std::size_t>(it - movers.begin());
      for (const ActionLabel& own : n.menus[slot]) {
        std::string label = "(";
        for (std::size_t k = 0; k < movers.size(); ++k) {
          if (k) label += ',';
          label += (k == slot) ? own : s.at(movers[k], node);
        }
        label += ')';
        for (int c : n.children)
          if (g.node(c).action_from_parent == label) {
            picked[node] = own;
            collect_deviations(g, s, player, c, picked, found);
            picked.erase(node);
          }
      }
    }
  } else if (n.owner == player) {
    player_moves = true;
    for (int c : n.children) {
      picked[node] = g.node(c).action_from_parent;
      collect_deviations(g, s, player, c, picked, found);
      picked.erase(node);
    }
  }
  if (!player_moves) {
    collect_deviations(g, s, player, follow_step(g, s, node), picked, found);
  }
}

StrategyProfile with_choices(const GameForm& g, const StrategyProfile& base, int player,
                             const std::map<int, ActionLabel>& choices) {
  StrategyProfile out = base;
  for (const auto& [node, action] : choices) out.by_player[player][node] = action;
  return out;
}

// Nash condition at the subgame rooted at `from` for one player.
bool nash_at(const GameForm& g, const StrategyProfile& s, int player, int from,
             NashSemantics semantics, EquilibriumCheck& result) {
  int star = outcome(g, s, from);
  std::map<int, ActionLabel> scratch;
  std::map<int, std::map<int, ActionLabel>> reach;
  collect_deviations(g, s, player, from, scratch, reach);
  const PreferenceRelation& pref = g.preferences(player);
  for (const auto& [terminal, choices] : reach) {
    bool bad = semantics == NashSemantics::RequiresWeakPreference
                   ? !pref.holds(star, terminal)
                   : pref.strictly(terminal, star);
    if (bad) {
      DeviationWitness w;
      w.player = player;
      w.subgame_node = from;
      w.deviating_profile = with_choices(g, s, player, choices);
      w.equilibrium_terminal = star;
      w.deviation_terminal = terminal;
      result.holds = false;
      result.witness = std::move(w);
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<int> reachable_by_deviation(const GameForm& g, const StrategyProfile& s, int player,
                                        int from) {
  std::map<int, ActionLabel> scratch;
  std::map<int, std::map<int, ActionLabel>> reach;
  collect_deviations(g, s, player, from, scratch, reach);
  std::vector<int> out;
  for (const auto& [terminal, _] : reach) out.push_back(terminal);
  return out;
}

EquilibriumCheck is_nash(const GameForm& g, const StrategyProfile& s, NashSemantics semantics) {
  EquilibriumCheck result;
  for (int p = 0; p < g.num_players(); ++p)
    if (!nash_at(g, s, p, g.root(), semantics, result)) return result;
  return result;
}

EquilibriumCheck is_spe(const GameForm& g, const StrategyProfile& s, NashSemantics semantics) {
  EquilibriumCheck result;
  for (int id = 0; id < g.num_nodes(); ++id) {
    if (g.is_terminal(id)) continue;
    const auto& n = g.node(id);
    if (n.owner == GameForm::kSimultaneous) {
      for (int p : g.simultaneous_movers(id))
        if (!nash_at(g, s, p, id, semantics, result)) return result;
    } else {
      if (!nash_at(g, s, n.owner, id, semantics, result)) return result;
    }
  }
  return result;
}

std::string DeviationWitness::describe(const GameForm& g) const {
  std::string at = "root";
  auto actions = g.path(subgame_node);
  if (!actions.empty()) {
    at.clear();
    for (std::size_t i = 0; i < actions.size(); ++i) {
      if (i) at += '.';
      at += actions[i];
    }
  }
  return "player " + g.player_name(player) + " at " + at + ": " +
         g.terminal_label(deviation_terminal) + " over " + g.terminal_label(equilibrium_terminal);
}

// --- Backward induction ------------------------------------------------------

namespace {

std::string node_path_text(const GameForm& g, int node) {
  auto actions = g.path(node);
  if (actions.empty()) return "root";
  std::string s;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (i) s += '.';
    s += actions[i];
  }
  return s;
}

struct BiResult {
  std::map<int, ActionLabel> assignment;  // node -> action over the subtree
  int terminal = -1;
};

std::vector<BiResult> bi_node(const GameForm& g, int node, std::size_t cap) {
  if (g.is_terminal(node)) return {BiResult{{}, g.terminal_index_of(node)}};
  const auto& n = g.node(node);
  if (n.owner == GameForm::kSimultaneous)
    throw std::invalid_argument("backward induction requires sequential play");

  std::vector<std::vector<BiResult>> per_child;
  per_child.reserve(n.children.size());
  for (int c : n.children) per_child.push_back(bi_node(g, c, cap));

  std::size_t combos = 1;
  for (const auto& list : per_child) {
    combos *= list.size();
    if (combos > cap) throw std::runtime_error("backward induction: tie explosion over guard");
  }

  const PreferenceRelation& pref = g.preferences(n.owner);
  std::vector<BiResult> out;
  std::vector<std::size_t> idx(per_child.size(), 0);
  while (true) {
    // Candidate terminal per available action under this combination.
    std::vector<int> cand(per_child.size());
    for (std::size_t k = 0; k < per_child.size(); ++k) cand[k] = per_child[k][idx[k]].terminal;
    for (std::size_t a = 0; a < cand.size(); ++a)
      for (std::size_t b = a + 1; b < cand.size(); ++b)
        if (!pref.comparable(cand[a], cand[b]))
          throw std::runtime_error("preferences not total on subgame at node \"" +
                                   node_path_text(g, node) + "\"");
    for (std::size_t a = 0; a < cand.size(); ++a) {
      bool maximal = true;
      for (std::size_t b = 0; b < cand.size() && maximal; ++b)
        if (!pref.holds(cand[a], cand[b])) maximal = false;
      if (!maximal) continue;
      BiResult r;
      r.terminal = cand[a];
      r.assignment[node] = g.node(n.children[a]).action_from_parent;
      for (std::size_t k = 0; k < per_child.size(); ++k)
        for (const auto& [nd, act] : per_child[k][idx[k]].assignment) r.assignment[nd] = act;
      out.push_back(std::move(r));
      if (out.size() > cap) throw std::runtime_error("backward induction: tie explosion over guard");
    }
    std::size_t k = per_child.size();
    bool advanced = false;
    while (k > 0) {
      --k;
      if (++idx[k] < per_child[k].size()) {
        advanced = true;
        break;
      }
      idx[k] = 0;
    }
    if (!advanced) break;
  }
  return out;
}

}  // namespace

std::vector<StrategyProfile> backward_induction(const GameForm& g) {
  auto raw = bi_node(g, g.root(), 100000);
  std::vector<StrategyProfile> out;
  out.reserve(raw.size());
  for (const auto& r : raw) {
    StrategyProfile s;
    s.by_player.resize(g.num_players());
    for (const auto& [node, action] : r.assignment) s.by_player[g.node(node).owner][node] = action;
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  }
  return out;
}

std::vector<StrategyProfile> enumerate_profiles(const GameForm& g, std::size_t cap) {
  // Decision slots: (player, node, menu).
  struct Slot {
    int player;
    int node;
    std::vector<ActionLabel> menu;
  };
  std::vector<Slot> slots;
  std::size_t total = 1;
  for (int id = 0; id < g.num_nodes(); ++id) {
    if (g.is_terminal(id)) continue;
    const auto& n = g.node(id);
    if (n.owner == GameForm::kSimultaneous) {
      const auto& movers = g.simultaneous_movers(id);
      for (std::size_t k = 0; k < movers.size(); ++k) {
        slots.push_back(Slot{movers[k], id, n.menus[k]});
        total *= n.menus[k].size();
        if (total > cap) throw std::runtime_error("profile enumeration over guard");
      }
    } else {
      slots.push_back(Slot{n.owner, id, legal_actions(g, id)});
      total *= slots.back().menu.size();
      if (total > cap) throw std::runtime_error("profile enumeration over guard");
    }
  }
  std::vector<StrategyProfile> out;
  out.reserve(total);
  std::vector<std::size_t> idx(slots.size(), 0);
  while (true) {
    StrategyProfile s;
    s.by_player.resize(g.num_players());
    for (std::size_t k = 0; k < slots.size(); ++k)
      s.by_player[slots[k].player][slots[k].node] = slots[k].menu[idx[k]];
    out.push_back(std::move(s));
    std::size_t k = slots.size();
    bool advanced = false;
    while (k > 0) {
      --k;
      if (++idx[k] < slots[k].menu.size()) {
        advanced = true;
        break;
      }
      idx[k] = 0;
    }
    if (!advanced) break;
  }
  return out;
}

// --- Strategic games ----------------------------------------------------------

int StrategicGame::num_profiles() const {
  int n = 1;
  for (const auto& a : actions) n *= static_cast<int>(a.size());
  return n;
}

int StrategicGame::profile_index(const std::vector<int>& choice) const {
  int idx = 0;
  for (std::size_t p = 0; p < actions.size(); ++p)
    idx = idx * static_cast<int>(actions[p].size()) + choice[p];
  return idx;
}

std::vector<int> StrategicGame::profile_of_index(int index) const {
  std::vector<int> choice(actions.size(), 0);
  for (std::size_t p = actions.size(); p-- > 0;) {
    int size = static_cast<int>(actions[p].size());
    choice[p] = index % size;
    index /= size;
  }
  return choice;
}

std::string StrategicGame::profile_label(int index) const {
  auto choice = profile_of_index(index);
  std::string label = "(";
  for (std::size_t p = 0; p < actions.size(); ++p) {
    if (p) label += ',';
    label += actions[p][choice[p]];
  }
  label += ')';
  return label;
}

GameForm strategic_as_extensive(const StrategicGame& sg) {
  GameForm g;
  std::vector<int> movers;
  for (const auto& id : sg.players) movers.push_back(g.add_player(id, /*core=*/true));
  g.make_simultaneous(g.root(), movers, sg.actions);
  g.finalize();
  if (!sg.payoffs.empty()) {
    for (int p = 0; p < static_cast<int>(sg.players.size()); ++p) {
      std::vector<Rational> values = sg.payoffs[p];
      PreferenceRelation rel(static_cast<int>(values.size()) + 1);
      for (int a = 0; a < static_cast<int>(values.size()); ++a)
        for (int b = 0; b < static_cast<int>(values.size()); ++b)
          if (values[a] >= values[b]) rel.add_pair(a, b);
      rel.close();
      g.set_preferences(p, rel);
    }
  }
  return g;
}

Rational expected_payoff(const StrategicGame& sg, const MixedProfile& sigma, int player) {
  Rational total(0);
  for (int idx = 0; idx < sg.num_profiles(); ++idx) {
    auto choice = sg.profile_of_index(idx);
    Rational prob(1);
    for (std::size_t p = 0; p < sigma.size(); ++p) prob *= sigma[p][choice[p]];
    if (prob.is_zero()) continue;
    total += prob * sg.payoffs[player][idx];
  }
  return total;
}

bool is_mixed_nash(const StrategicGame& sg, const MixedProfile& sigma) {
  if (sigma.size() != sg.players.size())
    throw std::invalid_argument("mixed profile must cover every player");
  for (std::size_t p = 0; p < sigma.size(); ++p) {
    if (sigma[p].size() != sg.actions[p].size())
      throw std::invalid_argument("distribution arity mismatch for player " + sg.players[p]);
    Rational sum(0);
    for (const auto& q : sigma[p]) {
      if (q.sign() < 0) throw std::invalid_argument("negative probability");
      sum += q;
    }
    if (sum != Rational(1)) throw std::invalid_argument("distribution must sum to 1");
  }
  for (std::size_t p = 0; p < sigma.size(); ++p) {
    Rational eq = expected_payoff(sg, sigma, static_cast<int>(p));
    for (std::size_t a = 0; a < sg.actions[p].size(); ++a) {
      MixedProfile pure = sigma;
      pure[p].assign(sg.actions[p].size(), Rational(0));
      pure[p][a] = Rational(1);
      if (expected_payoff(sg, pure, static_cast<int>(p)) > eq) return false;
    }
  }
  return true;
}

}  // namespace taugame
