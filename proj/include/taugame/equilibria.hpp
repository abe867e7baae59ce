#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "taugame/repeated.hpp"

namespace taugame {

// A period of the huge game, written frac*tau + offset. {0, k} is the
// near-future period k, {1, -n} the period tau-n, {1/2, 0} the
// distant-future representative, {f, 0} the monad at fraction f.
struct HugePosition {
  Rational frac;
  std::int64_t offset = 0;

  static HugePosition near_future(int n) { return {Rational(0), n + 1}; }
  static HugePosition distant_future() { return {Rational(1, 2), 0}; }
  static HugePosition near_end(int n) { return {Rational(1), -n}; }
  static HugePosition at_fraction(Rational f) { return {std::move(f), 0}; }

  // Period index as a symbolic quantity, and the count of periods before it.
  NonStdNum period() const { return NonStdNum(frac, Rational(offset)); }
  NonStdNum periods_before() const { return NonStdNum(frac, Rational(offset - 1)); }
  bool near_future_class() const { return frac.is_zero(); }
  bool near_end_class() const { return frac == Rational(1) && offset <= 0; }
  std::string str() const;
  friend bool operator==(const HugePosition&, const HugePosition&) = default;
};

enum class DevScope { OneShot, Tail, Whole };

std::string scope_name(DevScope s);

// One finitized deviation: a subgame root (period position plus an optional
// partial constituent history) and the deviator's replacement play, applied
// in that period only, from that period on, or from the start of the game.
struct Deviation {
  HugePosition at;
  std::vector<ActionLabel> within_period;   // constituent path to the subgame root
  int player = 0;                           // constituent player index
  std::map<int, ActionLabel> replace;       // constituent node -> action for the deviator
  DevScope scope = DevScope::OneShot;
  std::string note;

  std::string describe(const GameForm& constituent) const;
};

struct DeviationSuite {
  std::vector<Deviation> items;
};

// A symbolic strategy profile for the huge-horizon game: a rule keyed on
// the period's position class and the whole-history prefix so far.
class StrategyFamily {
 public:
  StrategyFamily(std::string name, ViewKind view) : name_(std::move(name)), view_(view) {}
  virtual ~StrategyFamily() = default;

  const std::string& name() const { return name_; }
  ViewKind view() const { return view_; }

  // Action of `player` at constituent node `cnode` in a period at `pos`,
  // given the completed periods `before`.
  virtual ActionLabel action(const RepeatedGameSpec& spec, int player, int cnode,
                             const HugePosition& pos,
                             const std::vector<Segment>& before) const = 0;

  // Interior fractions at which the family's play may change (switch
  // monads, a realisation boundary, ...). Play must be constant on runs
  // between breakpoints, up to the sampled window around each.
  virtual std::vector<Rational> breakpoints(const RepeatedGameSpec&) const { return {}; }

  // Payload of a constant-play run at an interior representative position.
  // The default simulates one period; the mixed family tiles its unit.
  virtual SegmentPayload run_payload(const RepeatedGameSpec& spec, const HugePosition& rep,
                                     const std::vector<Segment>& before, int deviator,
                                     const std::map<int, ActionLabel>* override_play) const;

  // Connected terminal used to fill prefixes of subgames the family's own
  // path never reaches.
  virtual int off_path_filler(const RepeatedGameSpec& spec) const;

  // The family mapped onto the explicit n-repeated tree, when it has a
  // finite analogue.
  virtual std::optional<StrategyProfile> finite_profile(const RepeatedGameSpec& spec,
                                                        const RepeatedGame& rg) const {
    (void)spec;
    (void)rg;
    return std::nullopt;
  }

 private:
  std::string name_;
  ViewKind view_;
};

// --- Family constructors --------------------------------------------------------

// Plays the constituent equilibrium profile every period (s* repeated).
std::unique_ptr<StrategyFamily> family_repeat_spe(const RepeatedGameSpec& spec,
                                                  StrategyProfile constituent_spe);

// Plays along a connected target with positive payoffs for every core
// player; reverts to s* once the period has left the target path or when
// the horizon is nearly exhausted after a cooperation drought.
std::unique_ptr<StrategyFamily> family_simple_sum(const RepeatedGameSpec& spec,
                                                  const PayoffTable& u, int target_terminal,
                                                  StrategyProfile constituent_spe);

// The same decision rule without the positivity precondition, for
// demonstrating how the construction breaks when the payoffs are not
// positive (the verifier then refutes it).
std::unique_ptr<StrategyFamily> family_simple_sum_unchecked(const RepeatedGameSpec& spec,
                                                            int target_terminal,
                                                            StrategyProfile constituent_spe);

// s* through the near future, a pinned arbitrary action everywhere else.
std::unique_ptr<StrategyFamily> family_discount(const RepeatedGameSpec& spec,
                                                const Rational& delta,
                                                StrategyProfile constituent_spe);

// Plays a verified Nash profile of the constituent in every period
// (requires C = Z).
std::unique_ptr<StrategyFamily> family_repeat_nash(const RepeatedGameSpec& spec,
                                                   StrategyProfile nash_profile);

// The base family with finitely many single-monad overrides.
struct MonadSwitch {
  Rational fraction;      // position of the switched monad
  StrategyProfile play;   // constituent profile played at that monad
};
std::unique_ptr<StrategyFamily> family_finite_switch(const RepeatedGameSpec& spec,
                                                     std::shared_ptr<StrategyFamily> base,
                                                     std::vector<MonadSwitch> switches);

// Deterministic action-profile cycle replicating a mixed profile with
// exact per-player frequencies and cross-player independence.
std::vector<std::vector<ActionLabel>> mixed_unit(const StrategicGame& sg,
                                                 const MixedProfile& sigma);

// Cycles the mixed unit of a verified mixed Nash equilibrium.
std::unique_ptr<StrategyFamily> family_mixed(const RepeatedGameSpec& spec, const StrategicGame& sg,
                                             const MixedProfile& sigma);

// Realises an arbitrary terminal whole history when every core player can
// terminate, C is a singleton and the connected payoffs are positive.
std::unique_ptr<StrategyFamily> family_realize_terminal(const RepeatedGameSpec& spec,
                                                        const PayoffTable& u,
                                                        SegmentedWholeHistory target,
                                                        StrategyProfile constituent_spe);

// --- Verification ------------------------------------------------------------------

struct DeviationResult {
  std::string position;
  std::string description;
  DevScope scope = DevScope::OneShot;
  int player = 0;
  std::string baseline_history;
  std::string deviation_history;
  std::string baseline_payoff;   // ExtReal / value text for the deviator
  std::string deviation_payoff;
  Ordering deviation_vs_baseline = Ordering::Equal;
  bool improves = false;
};

struct EquilibriumReport {
  std::string family;
  std::string criterion;
  bool verified = false;  // verified-on-suite
  std::vector<DeviationResult> rows;
  std::optional<DeviationResult> witness;

  std::string str() const;
};

// The deviation classes the propositions' proofs quantify over: one-shot
// and tail deviations at every sampled near-future/near-end period, the
// distant-future monad (or the family's segment boundaries and interiors
// for a bird's-eye family), mid-period subgame roots, and whole-game
// switches to every pure constituent strategy.
DeviationSuite default_suite(const RepeatedGameSpec& spec, const StrategyFamily& family,
                             const Criterion& criterion, int depth = 3);

// Outcome of the family against a deviation (or unopposed when
// deviation == nullptr), from the start of the game.
SegmentedWholeHistory family_outcome(const RepeatedGameSpec& spec, const StrategyFamily& family,
                                     const Deviation* deviation, int sample_depth = 3);

// Runs every deviation in the suite; verified-on-suite iff no deviation
// strictly improves its deviator. Works at both horizons: huge via the
// segment calculus, finite by mapping each deviation onto the expanded
// tree.
EquilibriumReport verify_symbolic_spe(const RepeatedGameSpec& spec, const StrategyFamily& family,
                                      const Criterion& criterion, const PayoffModel& model,
                                      const DeviationSuite& suite, int sample_depth = 3);

EquilibriumReport verify_symbolic_spe(const RepeatedGameSpec& spec, const StrategyFamily& family,
                                      const Criterion& criterion, const PayoffModel& model,
                                      int suite_depth = 3);

// --- Proposition-level wrapper -------------------------------------------------------

struct PropExtReport {
  bool hypotheses_met = false;
  std::string blocked_on;  // empty when hypotheses hold
  std::vector<DynamicConsistency> dynamic_consistency;
  bool verified = false;
  std::string detail;
};

// Repeating the constituent SPE is subgame perfect when the criterion is
// weakly separable, hugely transitive and dynamically consistent: checks
// the flags, classifies dynamic consistency, then verifies (exhaustively
// at a finite horizon, on the default suite at a huge one).
PropExtReport verify_prop_ext(const RepeatedGameSpec& spec, const PayoffModel& model,
                              const Criterion& criterion);

}  // namespace taugame
