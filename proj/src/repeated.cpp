#include "taugame/repeated.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace taugame {

bool RepeatedGameSpec::is_connected(int terminal) const {
  return std::find(connected.begin(), connected.end(), terminal) != connected.end();
}

void RepeatedGameSpec::validate() const {
  for (int t : connected)
    if (t < 0 || t >= constituent.num_terminals())
      throw std::invalid_argument("connected set contains a non-terminal");
}

std::string whole_history_label(const GameForm& constituent, const WholeHistory& h) {
  std::string out = "(";
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i) out += ",";
    out += constituent.terminal_label(h[i]);
  }
  out += ")";
  return out;
}

std::vector<WholeHistory> whole_history_domain(const RepeatedGameSpec& spec, int n) {
  std::vector<WholeHistory> out;
  std::vector<WholeHistory> connected_prefixes = {{}};
  for (int len = 1; len <= n; ++len) {
    std::vector<WholeHistory> next_prefixes;
    for (const auto& prefix : connected_prefixes) {
      for (int z = 0; z < spec.constituent.num_terminals(); ++z) {
        WholeHistory h = prefix;
        h.push_back(z);
        out.push_back(h);
        if (len < n && spec.is_connected(z)) next_prefixes.push_back(std::move(h));
      }
    }
    connected_prefixes = std::move(next_prefixes);
  }
  return out;
}

int LiftedPreference::index_of(const WholeHistory& h) const {
  for (std::size_t i = 0; i < domain.size(); ++i)
    if (domain[i] == h) return static_cast<int>(i);
  return -1;
}

LiftedPreference lift_preferences(const RepeatedGameSpec& spec, int n, const LiftOptions& options) {
  LiftedPreference lifted;
  lifted.domain = whole_history_domain(spec, n);
  const int d = static_cast<int>(lifted.domain.size());
  const GameForm& c = spec.constituent;

  for (int p = 0; p < c.num_players(); ++p) {
    PreferenceRelation rel(d);
    std::vector<std::pair<int, int>> gens;
    // Weak-separability lifts: same length, one component replaced by a
    // weakly worse one.
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        if (a == b) continue;
        const auto& x = lifted.domain[a];
        const auto& y = lifted.domain[b];
        if (x.size() != y.size()) continue;
        int diff = -1;
        bool single = true;
        for (std::size_t k = 0; k < x.size() && single; ++k)
          if (x[k] != y[k]) {
            if (diff >= 0) single = false;
            diff = static_cast<int>(k);
          }
        if (!single || diff < 0) continue;
        if (c.preferences(p).holds(x[diff], y[diff])) {
          rel.add_pair(a, b);
          gens.emplace_back(a, b);
        }
      }
    // Dynamic consistency: appending the constituent equilibrium outcome to
    // a connected history is an indifference.
    if (options.use_dynamic_consistency && options.spe_outcome) {
      for (int a = 0; a < d; ++a) {
        const auto& x = lifted.domain[a];
        if (static_cast<int>(x.size()) >= n) continue;
        bool all_connected = true;
        for (int z : x)
          if (!spec.is_connected(z)) all_connected = false;
        if (!all_connected) continue;
        WholeHistory y = x;
        y.push_back(*options.spe_outcome);
        int b = lifted.index_of(y);
        if (b < 0) continue;
        rel.add_pair(a, b);
        rel.add_pair(b, a);
        gens.emplace_back(a, b);
        gens.emplace_back(b, a);
      }
    }
    rel.close();
    lifted.by_player.push_back(std::move(rel));
    lifted.generators.push_back(std::move(gens));
  }
  return lifted;
}

// --- Finite expansion ----------------------------------------------------------

int RepeatedGame::repeated_player(int constituent_player, int period) const {
  return player_of[constituent_player][period];
}

namespace {

struct Builder {
  const RepeatedGameSpec& spec;
  int n;
  std::size_t guard;
  RepeatedGame rg;
  std::map<int, WholeHistory> leaf_of_node;

  void note(int rep_node, int period, int cnode) {
    if (static_cast<int>(rg.node_period.size()) < rg.game.num_nodes()) {
      rg.node_period.resize(rg.game.num_nodes(), 0);
      rg.node_constituent.resize(rg.game.num_nodes(), -1);
    }
    rg.node_period[rep_node] = period;
    rg.node_constituent[rep_node] = cnode;
  }

  void build(int rep_node, int period, int cnode, WholeHistory& completed) {
    if (static_cast<std::size_t>(rg.game.num_nodes()) > guard)
      throw std::runtime_error("expansion guard exceeded");
    note(rep_node, period, cnode);
    const GameForm& c = spec.constituent;
    if (c.is_terminal(cnode)) {
      int z = c.terminal_index_of(cnode);
      completed.push_back(z);
      if (spec.is_connected(z) && period < n) {
        build(rep_node, period + 1, c.root(), completed);
      } else {
        leaf_of_node[rep_node] = completed;
      }
      completed.pop_back();
      return;
    }
    const auto& cn = c.node(cnode);
    if (cn.owner == GameForm::kSimultaneous) {
      std::vector<int> movers;
      for (int cp : c.simultaneous_movers(cnode))
        movers.push_back(rg.repeated_player(cp, period));
      rg.game.make_simultaneous(rep_node, movers, cn.menus);
      const auto& rep_children = rg.game.node(rep_node).children;
      for (std::size_t k = 0; k < cn.children.size(); ++k)
        build(rep_children[k], period, cn.children[k], completed);
    } else {
      rg.game.set_owner(rep_node, rg.repeated_player(cn.owner, period));
      for (int cc : cn.children) {
        int rep_child = rg.game.add_child(rep_node, c.node(cc).action_from_parent);
        build(rep_child, period, cc, completed);
      }
    }
  }
};

}  // namespace

RepeatedGame build_finite_repeated(const RepeatedGameSpec& spec, int n, std::size_t node_guard) {
  if (n < 1) throw std::invalid_argument("horizon must be at least 1");
  spec.validate();
  Builder b{spec, n, node_guard, {}, {}};
  b.rg.horizon = n;
  const GameForm& c = spec.constituent;

  // Core players first (constituent order), then per-period outside
  // instances named name@period.
  b.rg.player_of.assign(c.num_players(), std::vector<int>(n + 1, -1));
  b.rg.origins.clear();
  for (int cp = 0; cp < c.num_players(); ++cp) {
    if (!c.is_core(cp)) continue;
    int rp = b.rg.game.add_player(c.player_name(cp), true);
    b.rg.origins.push_back({cp, 0});
    for (int t = 1; t <= n; ++t) b.rg.player_of[cp][t] = rp;
  }
  for (int t = 1; t <= n; ++t)
    for (int cp = 0; cp < c.num_players(); ++cp) {
      if (c.is_core(cp)) continue;
      int rp = b.rg.game.add_player(c.player_name(cp) + "@" + std::to_string(t), false);
      b.rg.origins.push_back({cp, t});
      b.rg.player_of[cp][t] = rp;
    }

  WholeHistory completed;
  b.build(b.rg.game.root(), 1, c.root(), completed);
  b.rg.game.finalize();

  b.rg.leaf_history.resize(b.rg.game.num_terminals());
  for (const auto& [node, history] : b.leaf_of_node) {
    int t = b.rg.game.terminal_index_of(node);
    b.rg.leaf_history[t] = history;
    b.rg.game.set_terminal_alias(t, whole_history_label(c, history));
  }
  return std::move(b.rg);
}

namespace {

PreferenceRelation outside_period_preference(const RepeatedGame& rg, const RepeatedGameSpec& spec,
                                             int constituent_player, int period) {
  const int n_terms = rg.game.num_terminals();
  PreferenceRelation rel(n_terms + 1);
  const PreferenceRelation& base = spec.constituent.preferences(constituent_player);
  for (int a = 0; a < n_terms; ++a)
    for (int bb = 0; bb < n_terms; ++bb) {
      const auto& ha = rg.leaf_history[a];
      const auto& hb = rg.leaf_history[bb];
      if (static_cast<int>(ha.size()) < period || static_cast<int>(hb.size()) < period) continue;
      if (base.holds(ha[period - 1], hb[period - 1])) rel.add_pair(a, bb);
    }
  rel.close();
  return rel;
}

}  // namespace

void apply_lifted_preferences(RepeatedGame& rg, const RepeatedGameSpec& spec,
                              const LiftedPreference& lifted) {
  const int n_terms = rg.game.num_terminals();
  for (std::size_t rp = 0; rp < rg.origins.size(); ++rp) {
    const auto& origin = rg.origins[rp];
    if (origin.period != 0) {
      rg.game.set_preferences(static_cast<int>(rp),
                              outside_period_preference(rg, spec, origin.constituent_player,
                                                        origin.period));
      continue;
    }
    PreferenceRelation rel(n_terms + 1);
    const PreferenceRelation& base = lifted.by_player[origin.constituent_player];
    std::vector<int> domain_index(n_terms, -1);
    for (int t = 0; t < n_terms; ++t) domain_index[t] = lifted.index_of(rg.leaf_history[t]);
    for (int a = 0; a < n_terms; ++a)
      for (int b = 0; b < n_terms; ++b)
        if (domain_index[a] >= 0 && domain_index[b] >= 0 &&
            base.holds(domain_index[a], domain_index[b]))
          rel.add_pair(a, b);
    rel.close();
    rg.game.set_preferences(static_cast<int>(rp), rel);
  }
}

void apply_criterion_preferences(RepeatedGame& rg, const RepeatedGameSpec& spec,
                                 const PayoffModel& model, const Criterion& criterion) {
  const int n_terms = rg.game.num_terminals();
  for (std::size_t rp = 0; rp < rg.origins.size(); ++rp) {
    const auto& origin = rg.origins[rp];
    if (origin.period != 0) {
      rg.game.set_preferences(static_cast<int>(rp),
                              outside_period_preference(rg, spec, origin.constituent_player,
                                                        origin.period));
      continue;
    }
    std::vector<NonStdNum> values;
    values.reserve(n_terms);
    for (int t = 0; t < n_terms; ++t) {
      std::vector<std::string> labels;
      for (int z : rg.leaf_history[t]) labels.push_back(spec.constituent.terminal_label(z));
      values.push_back(
          model.payoff(labels, origin.constituent_player, criterion, rg.horizon));
    }
    PreferenceRelation rel(n_terms + 1);
    for (int a = 0; a < n_terms; ++a)
      for (int b = 0; b < n_terms; ++b) {
        Ordering cmp = criterion.kind == Criterion::Kind::Overtaking
                           ? nsn_cmp(values[a], values[b])
                           : ext_cmp(collapse(values[a]), collapse(values[b]));
        if (cmp != Ordering::Less) rel.add_pair(a, b);
      }
    rel.close();
    rg.game.set_preferences(static_cast<int>(rp), rel);
  }
}

StrategyProfile repeat_profile(const RepeatedGame& rg, const RepeatedGameSpec& spec,
                               const StrategyProfile& constituent_profile) {
  StrategyProfile s;
  s.by_player.resize(rg.game.num_players());
  for (int id = 0; id < rg.game.num_nodes(); ++id) {
    if (rg.game.is_terminal(id)) continue;
    const auto& node = rg.game.node(id);
    int cnode = rg.node_constituent[id];
    int period = rg.node_period[id];
    if (node.owner == GameForm::kSimultaneous) {
      for (int cp : spec.constituent.simultaneous_movers(cnode))
        s.by_player[rg.repeated_player(cp, period)][id] = constituent_profile.at(cp, cnode);
    } else {
      int cp = spec.constituent.node(cnode).owner;
      s.by_player[node.owner][id] = constituent_profile.at(cp, cnode);
    }
  }
  return s;
}

// --- Hasse diagrams --------------------------------------------------------------

HasseDiagram hasse(const PreferenceRelation& rel, const std::vector<std::string>& labels) {
  const int n = static_cast<int>(labels.size());
  if (rel.size() < n) throw std::invalid_argument("hasse: relation smaller than the label set");
  for (int a = 0; a < n; ++a) {
    if (!rel.holds(a, a)) throw std::invalid_argument("hasse: relation is not reflexive");
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (rel.holds(a, b) && rel.holds(b, c) && !rel.holds(a, c))
          throw std::invalid_argument("hasse: relation is not transitively closed");
  }

  HasseDiagram d;
  d.labels = labels;
  // Indifference classes.
  std::vector<int> class_of(n, -1);
  for (int a = 0; a < n; ++a) {
    if (class_of[a] >= 0) continue;
    int id = static_cast<int>(d.classes.size());
    d.classes.push_back({});
    for (int b = 0; b < n; ++b)
      if (class_of[b] < 0 && rel.indifferent(a, b)) {
        class_of[b] = id;
        d.classes[id].push_back(b);
      }
  }
  // Deterministic member order and labels.
  for (auto& members : d.classes)
    std::sort(members.begin(), members.end(),
              [&](int a, int b) { return labels[a] < labels[b]; });
  auto strict_class = [&](int ca, int cb) {
    return rel.strictly(d.classes[ca].front(), d.classes[cb].front());
  };
  const int k = static_cast<int>(d.classes.size());
  // Longest-path depth from the maximal classes.
  d.depth.assign(k, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (strict_class(a, b) && d.depth[b] < d.depth[a] + 1) {
          d.depth[b] = d.depth[a] + 1;
          changed = true;
        }
  }
  // Order classes by depth, then label; remap.
  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  auto label_of_class = [&](int c) {
    std::string s;
    for (std::size_t i = 0; i < d.classes[c].size(); ++i) {
      if (i) s += ", ";
      s += labels[d.classes[c][i]];
    }
    return s;
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (d.depth[a] != d.depth[b]) return d.depth[a] < d.depth[b];
    return label_of_class(a) < label_of_class(b);
  });
  std::vector<std::vector<int>> classes;
  std::vector<int> depth;
  std::vector<int> remap(k);
  for (int i = 0; i < k; ++i) {
    remap[order[i]] = i;
    classes.push_back(d.classes[order[i]]);
    depth.push_back(d.depth[order[i]]);
  }
  d.classes = std::move(classes);
  d.depth = std::move(depth);
  for (int c = 0; c < k; ++c) d.class_labels.push_back(label_of_class(c));
  // Cover edges: strict with nothing in between.
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      if (a == b || !strict_class(a, b)) continue;
      bool covered = true;
      for (int c = 0; c < k && covered; ++c)
        if (c != a && c != b && strict_class(a, c) && strict_class(c, b)) covered = false;
      if (covered) d.edges.emplace_back(a, b);
    }
  std::sort(d.edges.begin(), d.edges.end());
  return d;
}

HasseDiagram hasse(const LiftedPreference& lifted, const GameForm& constituent, int player) {
  std::vector<std::string> labels;
  labels.reserve(lifted.domain.size());
  for (const auto& h : lifted.domain) labels.push_back(whole_history_label(constituent, h));
  return hasse(lifted.by_player[player], labels);
}

// --- Property checkers ------------------------------------------------------------

SeparabilityReport check_weak_separability(const RelationFn& rel, const RepeatedGameSpec& spec,
                                           int n, int player) {
  auto domain = whole_history_domain(spec, n);
  const GameForm& c = spec.constituent;
  for (const auto& x : domain)
    for (std::size_t k = 0; k < x.size(); ++k) {
      bool last = (k + 1 == x.size());
      for (int alt = 0; alt < c.num_terminals(); ++alt) {
        if (alt == x[k]) continue;
        if (!last && !spec.is_connected(alt)) continue;
        // x weakly beats y whenever its replaced component does.
        if (!c.preferences(player).holds(x[k], alt)) continue;
        WholeHistory y = x;
        y[k] = alt;
        if (!rel(x, y)) return {false, x, y};
      }
    }
  return {true, {}, {}};
}

ChainReport check_huge_transitivity(const std::vector<WholeHistory>& chain, const RelationFn& rel) {
  ChainReport report;
  for (std::size_t k = 0; k + 1 < chain.size(); ++k)
    if (!rel(chain[k + 1], chain[k])) {
      report.premise_holds = false;
      report.holds = false;
      report.violation = "chain premise fails at step " + std::to_string(k);
      return report;
    }
  for (std::size_t m = 0; m < chain.size(); ++m)
    for (std::size_t l = m; l < chain.size(); ++l)
      if (!rel(chain[l], chain[m])) {
        report.holds = false;
        report.violation =
            "pair (" + std::to_string(m) + ", " + std::to_string(l) + ") is not ordered";
        return report;
      }
  return report;
}

ChainReport check_huge_transitivity(const SymbolicChain& chain) {
  ChainReport report;
  auto geq = [](const NonStdNum& a, const NonStdNum& b) {
    return ext_cmp(collapse(a - b), ExtReal::finite(Rational(0))) != Ordering::Less;
  };
  const NonStdNum one(Rational(0), Rational(1));
  for (const auto& k : chain.probes) {
    if (nsn_cmp(k + one, chain.length) == Ordering::Greater) continue;
    if (!geq(chain.value_at(k + one), chain.value_at(k))) {
      report.premise_holds = false;
      report.holds = false;
      report.violation = "chain premise fails at index " + k.str();
      return report;
    }
  }
  for (std::size_t m = 0; m < chain.probes.size(); ++m)
    for (std::size_t l = m; l < chain.probes.size(); ++l) {
      const NonStdNum& a = chain.probes[m];
      const NonStdNum& b = chain.probes[l];
      if (nsn_cmp(a, b) == Ordering::Greater) continue;
      if (!geq(chain.value_at(b), chain.value_at(a))) {
        report.holds = false;
        report.violation = "pair (" + a.str() + ", " + b.str() + ") is not ordered";
        return report;
      }
    }
  return report;
}

std::string dynamic_consistency_name(DynamicConsistency d) {
  switch (d) {
    case DynamicConsistency::Exact: return "exact";
    case DynamicConsistency::RelaxedWeaklyBetter: return "relaxed_weakly_better";
    case DynamicConsistency::RelaxedWeaklyWorse: return "relaxed_weakly_worse";
    case DynamicConsistency::Fails: return "fails";
  }
  return {};
}

std::vector<DynamicConsistency> check_dynamic_consistency(const RepeatedGameSpec& spec,
                                                          const PayoffModel& model,
                                                          const Criterion& criterion,
                                                          int spe_outcome) {
  const GameForm& c = spec.constituent;
  std::vector<DynamicConsistency> out;
  for (int p = 0; p < c.num_players(); ++p) {
    if (!c.is_core(p)) continue;
    bool all_eq = true, all_geq = true, all_leq = true;
    for (int hc : spec.connected) {
      std::vector<std::string> extended = {c.terminal_label(hc), c.terminal_label(spe_outcome)};
      std::vector<std::string> plain = {c.terminal_label(hc)};
      NonStdNum a = model.payoff(extended, p, criterion, 2);
      NonStdNum b = model.payoff(plain, p, criterion, 1);
      Ordering cmp = criterion.kind == Criterion::Kind::Overtaking
                         ? nsn_cmp(a, b)
                         : ext_cmp(collapse(a), collapse(b));
      if (cmp != Ordering::Equal) all_eq = false;
      if (cmp == Ordering::Less) all_geq = false;
      if (cmp == Ordering::Greater) all_leq = false;
    }
    // The acceptable relaxation depends on where the equilibrium outcome
    // lands: weakly-better continuations are fine when it is connected,
    // weakly-worse ones when it is not.
    bool connected = spec.is_connected(spe_outcome);
    if (all_eq)
      out.push_back(DynamicConsistency::Exact);
    else if (all_geq && connected)
      out.push_back(DynamicConsistency::RelaxedWeaklyBetter);
    else if (all_leq && !connected)
      out.push_back(DynamicConsistency::RelaxedWeaklyWorse);
    else
      out.push_back(DynamicConsistency::Fails);
  }
  return out;
}

}  // namespace taugame
