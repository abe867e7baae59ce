#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "taugame/criteria.hpp"
#include "taugame/game.hpp"
#include "taugame/views.hpp"

namespace taugame {

struct FiniteHorizon {
  int n = 1;
  friend bool operator==(const FiniteHorizon&, const FiniteHorizon&) = default;
};
struct HugeHorizon {
  ViewKind view = ViewKind::Perspective;
  friend bool operator==(const HugeHorizon&, const HugeHorizon&) = default;
};
using Horizon = std::variant<FiniteHorizon, HugeHorizon>;

// A repeated game: a constituent game, the connected terminals that hand
// play to the next period, and a horizon (fully expanded when finite,
// segment calculus when huge).
struct RepeatedGameSpec {
  GameForm constituent;
  std::vector<int> connected;  // constituent terminal indices, C subseteq Z
  Horizon horizon = FiniteHorizon{1};

  bool is_connected(int terminal) const;
  void validate() const;  // C subseteq Z, nonempty player core
};

// A whole history as constituent terminal indices; every component before
// the last lies in C.
using WholeHistory = std::vector<int>;

std::string whole_history_label(const GameForm& constituent, const WholeHistory& h);

// The preference domain of the n-repeated game: every whole history of
// length 1..n (C-composed, last component anywhere in Z), ordered by
// length then lexicographically.
std::vector<WholeHistory> whole_history_domain(const RepeatedGameSpec& spec, int n);

struct LiftOptions {
  bool use_dynamic_consistency = false;
  // Constituent SPE outcome used by the dynamic-consistency identifications.
  std::optional<int> spe_outcome;
};

// The smallest reflexive transitive relation on the whole-history domain
// containing every weak-separability lift of the constituent preferences
// and, when enabled, the identifications x^(z*) ~ x for connected x.
struct LiftedPreference {
  std::vector<WholeHistory> domain;
  std::vector<PreferenceRelation> by_player;          // one per constituent player
  std::vector<std::vector<std::pair<int, int>>> generators;  // per player, a >= b

  int index_of(const WholeHistory& h) const;  // -1 if absent
};

LiftedPreference lift_preferences(const RepeatedGameSpec& spec, int n, const LiftOptions& options);

// --- Finite expansion ---------------------------------------------------------

struct RepeatedGame {
  GameForm game;
  int horizon = 1;
  // Metadata per repeated-game node/terminal.
  std::vector<WholeHistory> leaf_history;       // terminal index -> components
  std::vector<int> node_period;                 // node -> period (1-based)
  std::vector<int> node_constituent;            // node -> constituent node id
  struct PlayerOrigin {
    int constituent_player = -1;
    int period = 0;  // 0 = core player (acts in every period)
  };
  std::vector<PlayerOrigin> origins;            // repeated player -> origin
  std::vector<std::vector<int>> player_of;      // constituent player -> per period (1-based) repeated player

  int repeated_player(int constituent_player, int period) const;
};

// Explicit tree of the n-repeated game; preferences are left empty until
// one of the apply_* calls below. Guarded against blowup (default 10^6
// nodes).
RepeatedGame build_finite_repeated(const RepeatedGameSpec& spec, int n,
                                   std::size_t node_guard = 1000000);

// Core players get the lifted (possibly partial) order; each outside
// instance orders terminals by its own period's component only.
void apply_lifted_preferences(RepeatedGame& rg, const RepeatedGameSpec& spec,
                              const LiftedPreference& lifted);

// Total per-player orders induced by a payoff criterion; outside instances
// again see their own period's component.
void apply_criterion_preferences(RepeatedGame& rg, const RepeatedGameSpec& spec,
                                 const PayoffModel& model, const Criterion& criterion);

// The profile that plays `s` of the constituent in every period.
StrategyProfile repeat_profile(const RepeatedGame& rg, const RepeatedGameSpec& spec,
                               const StrategyProfile& constituent_profile);

// --- Hasse diagrams -------------------------------------------------------------

struct HasseDiagram {
  // Indifference classes with deterministic comma-joined sorted labels,
  // topologically ordered from the top.
  std::vector<std::vector<int>> classes;        // member indices into `labels`
  std::vector<std::string> labels;              // element labels
  std::vector<std::string> class_labels;
  std::vector<std::pair<int, int>> edges;       // cover edges, upper -> lower
  std::vector<int> depth;                       // longest-path rank per class
};

// Quotient by indifference, then transitive reduction. The relation must be
// a preorder (reflexive and transitively closed); throws otherwise.
HasseDiagram hasse(const PreferenceRelation& rel, const std::vector<std::string>& labels);
HasseDiagram hasse(const LiftedPreference& lifted, const GameForm& constituent, int player);

// --- Property checkers ------------------------------------------------------------

// A whole-history comparison: does x weakly-beat y.
using RelationFn = std::function<bool(const WholeHistory&, const WholeHistory&)>;

struct SeparabilityReport {
  bool holds = true;
  WholeHistory better;  // the lift that failed: better should be weakly above worse
  WholeHistory worse;
};

// Scans every single-coordinate replacement with a constituent-preferred
// component (for `player`) and reports the first lift the relation refuses.
SeparabilityReport check_weak_separability(const RelationFn& rel, const RepeatedGameSpec& spec,
                                           int n, int player);

// Explicit chains: consecutive pairs must satisfy rel, then every
// (later, earlier) pair is checked.
struct ChainReport {
  bool premise_holds = true;
  bool holds = true;
  std::string violation;
};

ChainReport check_huge_transitivity(const std::vector<WholeHistory>& chain, const RelationFn& rel);

// Symbolic chains: a parameterised family of values indexed 0..length; the
// probes sample finite, fractional and near-end indices. The chain premise
// (value(k+1) weakly-beats value(k) after collapse) is checked at every
// probe, then all probe pairs.
struct SymbolicChain {
  NonStdNum length;                                     // last index
  std::function<NonStdNum(const NonStdNum&)> value_at;  // payoff value at index k
  std::vector<NonStdNum> probes;                        // ascending, within [0, length]
};

ChainReport check_huge_transitivity(const SymbolicChain& chain);

enum class DynamicConsistency { Exact, RelaxedWeaklyBetter, RelaxedWeaklyWorse, Fails };

std::string dynamic_consistency_name(DynamicConsistency d);

// Evaluates (h_c)^(z*) against (h_c) for every connected h_c under the
// criterion, per core player.
std::vector<DynamicConsistency> check_dynamic_consistency(const RepeatedGameSpec& spec,
                                                          const PayoffModel& model,
                                                          const Criterion& criterion,
                                                          int spe_outcome);

}  // namespace taugame
