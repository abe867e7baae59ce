#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "taugame/rational.hpp"

namespace taugame {

using PlayerId = std::string;
using ActionLabel = std::string;

// Reflexive, transitively closed relation over a fixed finite element set.
// May be partial: holds(a, b) and holds(b, a) can both be false.
class PreferenceRelation {
 public:
  PreferenceRelation() = default;
  explicit PreferenceRelation(int n);

  static PreferenceRelation from_pairs(int n, const std::vector<std::pair<int, int>>& geq_pairs);
  // Total order induced by exact values (larger value preferred).
  static PreferenceRelation from_values(const std::vector<Rational>& values);

  int size() const { return n_; }
  bool holds(int a, int b) const { return geq_[static_cast<std::size_t>(a) * n_ + b]; }
  bool strictly(int a, int b) const { return holds(a, b) && !holds(b, a); }
  bool indifferent(int a, int b) const { return holds(a, b) && holds(b, a); }
  bool comparable(int a, int b) const { return holds(a, b) || holds(b, a); }

  void add_pair(int a, int b);  // a >= b
  void close();                 // reflexive + transitive closure

 private:
  int n_ = 0;
  std::vector<bool> geq_;
};

// Finite extensive game with perfect information. Nodes live in an arena;
// node 0 is the empty history. A node is either a decision node with a
// single owner or a simultaneous node (the strategic one-shot adapter)
// where every listed player picks their own coordinate.
class GameForm {
 public:
  static constexpr int kSimultaneous = -2;

  struct Node {
    int parent = -1;
    ActionLabel action_from_parent;
    std::vector<int> children;
    int owner = -1;  // player index, or kSimultaneous
    // Simultaneous nodes only: per-player action menus, children in
    // row-major order of the menus.
    std::vector<std::vector<ActionLabel>> menus;
    int terminal_index = -1;  // dense index among terminals, -1 if internal
  };

  GameForm() { nodes_.emplace_back(); }

  int add_player(PlayerId id, bool core);
  int player_index(const PlayerId& id) const;  // -1 if unknown
  int num_players() const { return static_cast<int>(players_.size()); }
  const PlayerId& player_name(int p) const { return players_[p]; }
  bool is_core(int p) const { return core_[p]; }
  std::vector<int> core_players() const;

  int root() const { return 0; }
  const Node& node(int id) const { return nodes_[id]; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }

  int add_child(int parent, ActionLabel action);
  void set_owner(int node_id, int player);
  // Assigns dense terminal indices to the leaves (in node order). Called by
  // validate(); idempotent. Must run before any terminal accessor.
  void finalize();
  // Turns node_id into a simultaneous node over the given menus; creates
  // one terminal child per joint profile labelled "(a1,a2,...)".
  void make_simultaneous(int node_id, const std::vector<int>& movers,
                         std::vector<std::vector<ActionLabel>> menus);
  const std::vector<int>& simultaneous_movers(int node_id) const;

  bool is_terminal(int node_id) const { return nodes_[node_id].children.empty(); }
  int num_terminals() const { return static_cast<int>(terminals_.size()); }
  int terminal_node(int terminal_index) const { return terminals_[terminal_index]; }
  int terminal_index_of(int node_id) const { return nodes_[node_id].terminal_index; }

  // Path of action labels from the root.
  std::vector<ActionLabel> path(int node_id) const;
  // Display label of a terminal: its alias when set, otherwise the
  // parenthesised action tuple "(a1,a2,...)".
  const std::string& terminal_label(int terminal_index) const;
  void set_terminal_alias(int terminal_index, std::string alias);
  int terminal_by_label(const std::string& label) const;  // -1 if unknown
  int node_by_path(const std::vector<ActionLabel>& actions) const;  // -1 if unknown

  // Preference relation of each player over terminals plus the empty
  // history (element index num_terminals()).
  void set_preferences(int player, PreferenceRelation rel);
  const PreferenceRelation& preferences(int player) const { return prefs_[player]; }
  int empty_history_slot() const { return num_terminals(); }

  // Finalizes terminals and checks the structural invariants (owners total
  // on internal nodes, core player present, preference arity).
  void validate();

 private:
  std::vector<Node> nodes_;
  std::vector<PlayerId> players_;
  std::vector<bool> core_;
  std::vector<int> terminals_;                // terminal index -> node id
  mutable std::vector<std::string> labels_;   // terminal index -> label (lazy)
  std::vector<std::string> aliases_;          // terminal index -> alias ("" = none)
  std::vector<PreferenceRelation> prefs_;
  std::vector<std::vector<int>> sim_movers_;  // node -> movers (simultaneous only)
  std::map<int, int> sim_slot_;               // node -> index into sim_movers_
};

// A pure strategy profile: per player, an action for every decision node
// they own and their own coordinate at every simultaneous node they move in.
struct StrategyProfile {
  std::vector<std::map<int, ActionLabel>> by_player;

  const ActionLabel& at(int player, int node) const { return by_player[player].at(node); }
  std::string str(const GameForm& g) const;
  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
};

enum class NashSemantics {
  RequiresWeakPreference,  // the equilibrium outcome must be weakly preferred to every deviation
  NoStrictImprovement,     // no deviation may be strictly better (incomparable tolerated)
};

struct DeviationWitness {
  int player = -1;
  int subgame_node = -1;  // root for plain Nash
  StrategyProfile deviating_profile;
  int equilibrium_terminal = -1;
  int deviation_terminal = -1;
  std::string describe(const GameForm& g) const;
};

struct EquilibriumCheck {
  bool holds = true;
  std::optional<DeviationWitness> witness;
};

// A(h): the child action labels. Throws on a terminal history.
std::vector<ActionLabel> legal_actions(const GameForm& g, int node_id);

// The unique leaf reached by following s from `from` (default: the root).
int outcome(const GameForm& g, const StrategyProfile& s, int from = 0);

// One step of play from a nonterminal node under s.
int follow_step(const GameForm& g, const StrategyProfile& s, int node);

// All terminals player i can steer to from `from` when the others follow s.
std::vector<int> reachable_by_deviation(const GameForm& g, const StrategyProfile& s, int player,
                                        int from = 0);

EquilibriumCheck is_nash(const GameForm& g, const StrategyProfile& s, NashSemantics semantics);
EquilibriumCheck is_spe(const GameForm& g, const StrategyProfile& s, NashSemantics semantics);

// All profiles obtainable by choosing a weakly ?-maximal action at every
// node bottom-up; ties kept. Requires sequential play and preferences total
// on every comparison it makes; throws naming the offending node otherwise.
std::vector<StrategyProfile> backward_induction(const GameForm& g);

// Every pure strategy profile of the game (guarded; throws above the cap).
std::vector<StrategyProfile> enumerate_profiles(const GameForm& g, std::size_t cap = 2'000'000);

// --- Strategic games ---------------------------------------------------------

// One-shot simultaneous game; terminals are the full profile product.
struct StrategicGame {
  std::vector<PlayerId> players;
  std::vector<std::vector<ActionLabel>> actions;  // per player, declared order
  // Optional exact payoffs per player per profile (row-major over actions).
  std::vector<std::vector<Rational>> payoffs;

  int num_profiles() const;
  int profile_index(const std::vector<int>& choice) const;    // action indices per player
  std::vector<int> profile_of_index(int index) const;
  std::string profile_label(int index) const;                 // "(a1,a2,...)"
};

// Depth-1 profile tree with a simultaneous root; the outcome of a profile
// is the profile itself.
GameForm strategic_as_extensive(const StrategicGame& sg);

// Mixed strategy profile: per player, a distribution over their actions.
using MixedProfile = std::vector<std::vector<Rational>>;

// Exact expected payoff of `player` when everyone randomises per sigma.
Rational expected_payoff(const StrategicGame& sg, const MixedProfile& sigma, int player);

// sigma is a mixed Nash equilibrium: distributions are valid and no player
// gains by any pure action. Throws on malformed sigma.
bool is_mixed_nash(const StrategicGame& sg, const MixedProfile& sigma);

}  // namespace taugame
