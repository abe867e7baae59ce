#include "taugame/equilibria.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace taugame {

std::string HugePosition::str() const {
  if (near_future_class()) return "period " + std::to_string(offset);
  if (frac == Rational(1)) {
    if (offset == 0) return "period tau";
    return "period tau" + std::to_string(offset);
  }
  std::string s = "period " + frac.str() + "*tau";
  if (offset > 0) s += "+" + std::to_string(offset);
  if (offset < 0) s += std::to_string(offset);
  return s;
}

std::string scope_name(DevScope s) {
  switch (s) {
    case DevScope::OneShot: return "one-shot";
    case DevScope::Tail: return "tail";
    case DevScope::Whole: return "whole";
  }
  return {};
}

std::string Deviation::describe(const GameForm& constituent) const {
  std::string s = at.str();
  if (!within_period.empty()) {
    s += " after ";
    for (std::size_t i = 0; i < within_period.size(); ++i) {
      if (i) s += '.';
      s += within_period[i];
    }
  }
  s += ", player " + constituent.player_name(player) + ", " + scope_name(scope);
  if (!note.empty()) s += " [" + note + "]";
  return s;
}

int StrategyFamily::off_path_filler(const RepeatedGameSpec& spec) const {
  if (spec.connected.empty()) throw std::logic_error("no connected terminal to fill with");
  return *std::min_element(spec.connected.begin(), spec.connected.end());
}

// --- Outcome construction ---------------------------------------------------------

namespace {

Rational rat_of(std::int64_t n) { return Rational(BigInt(n)); }

bool nsn_lt(const NonStdNum& a, const NonStdNum& b) { return nsn_cmp(a, b) == Ordering::Less; }
bool nsn_le(const NonStdNum& a, const NonStdNum& b) { return nsn_cmp(a, b) != Ordering::Greater; }

// Simulate one constituent period from `from_node`. The deviator's actions
// come from `override_play` where present, everyone else follows the family.
int simulate_period(const RepeatedGameSpec& spec, const StrategyFamily& family,
                    const HugePosition& pos, const std::vector<Segment>& before, int from_node,
                    int deviator, const std::map<int, ActionLabel>* override_play) {
  const GameForm& c = spec.constituent;
  auto pick = [&](int player, int cnode) -> ActionLabel {
    if (override_play && player == deviator) {
      auto it = override_play->find(cnode);
      if (it != override_play->end()) return it->second;
    }
    return family.action(spec, player, cnode, pos, before);
  };
  int cur = from_node;
  while (!c.is_terminal(cur)) {
    const auto& node = c.node(cur);
    ActionLabel edge;
    if (node.owner == GameForm::kSimultaneous) {
      const auto& movers = c.simultaneous_movers(cur);
      edge = "(";
      for (std::size_t k = 0; k < movers.size(); ++k) {
        if (k) edge += ',';
        edge += pick(movers[k], cur);
      }
      edge += ')';
    } else {
      edge = pick(node.owner, cur);
    }
    int next = -1;
    for (int ch : node.children)
      if (c.node(ch).action_from_parent == edge) {
        next = ch;
        break;
      }
    if (next < 0)
      throw std::logic_error("family picked unavailable play \"" + edge + "\"");
    cur = next;
  }
  return c.terminal_index_of(cur);
}

struct OutcomeBuilder {
  const RepeatedGameSpec& spec;
  const StrategyFamily& family;
  int sample_depth;
  int deviator = -1;
  const std::map<int, ActionLabel>* tail_override = nullptr;

  std::vector<Segment> segments;
  NonStdNum cursor;  // completed periods
  bool terminated = false;

  const GameForm& constituent() const { return spec.constituent; }

  void append(const NonStdNum& length, SegmentPayload payload) {
    if (length == NonStdNum(Rational(0))) return;
    if (!segments.empty() && segments.back().payload == payload) {
      segments.back().length += length;
    } else {
      segments.push_back(Segment{length, std::move(payload)});
    }
  }

  std::string label(int terminal) const { return constituent().terminal_label(terminal); }

  // One explicitly sampled period.
  void unit_period(const HugePosition& pos) {
    if (terminated) return;
    int z = simulate_period(spec, family, pos, segments, constituent().root(), deviator,
                            tail_override);
    append(NonStdNum(Rational(0), Rational(1)), label(z));
    cursor += NonStdNum(Rational(0), Rational(1));
    if (!spec.is_connected(z)) terminated = true;
  }

  // Constant-play run from the cursor up to `until` periods completed,
  // sampled at the representative position.
  void run_until(const NonStdNum& until, const HugePosition& rep) {
    if (terminated) return;
    NonStdNum len = until - cursor;
    if (nsn_le(len, NonStdNum(Rational(0)))) return;
    SegmentPayload payload =
        family.run_payload(spec, rep, segments, deviator, tail_override);
    bool connected = true;
    for (const auto& terminal_label : payload.cycle) {
      int z = constituent().terminal_by_label(terminal_label);
      if (z < 0 || !spec.is_connected(z)) connected = false;
    }
    if (!connected) {
      // The run's very first period already ends play.
      int z = constituent().terminal_by_label(payload.cycle.front());
      append(NonStdNum(Rational(0), Rational(1)), payload.cycle.front());
      cursor += NonStdNum(Rational(0), Rational(1));
      terminated = true;
      (void)z;
      return;
    }
    append(len, std::move(payload));
    cursor = until;
  }
};

struct SamplePlan {
  // Unit-sampled periods in ascending order, then near-end samples.
  std::vector<HugePosition> middle_units;  // interior breakpoint windows
  int near_future_limit = 0;
  int near_end_limit = 0;
  std::vector<Rational> fractions;  // all interior break fractions (for reps)
};

SamplePlan make_plan(const RepeatedGameSpec& spec, const StrategyFamily& family, int depth,
                     const Deviation* deviation) {
  SamplePlan plan;
  plan.near_future_limit = depth + 2;
  plan.near_end_limit = depth + 2;
  std::set<Rational> fracs;
  for (const Rational& f : family.breakpoints(spec)) {
    if (f.sign() > 0 && f < Rational(1)) fracs.insert(f);
  }
  if (deviation) {
    const auto& pos = deviation->at;
    if (pos.near_future_class()) {
      plan.near_future_limit =
          std::max<std::int64_t>(plan.near_future_limit, pos.offset + depth);
    } else if (pos.near_end_class()) {
      plan.near_end_limit = std::max<std::int64_t>(plan.near_end_limit, -pos.offset + depth);
    } else {
      fracs.insert(pos.frac);
    }
  }
  for (const Rational& f : fracs) {
    plan.fractions.push_back(f);
    for (int off = 0; off <= 2; ++off) plan.middle_units.push_back(HugePosition{f, off});
  }
  return plan;
}

// Representative fraction strictly between lo and hi avoiding the break set.
Rational interior_rep(const Rational& lo, const Rational& hi,
                      const std::vector<Rational>& breaks) {
  Rational rep = (lo + hi) / Rational(2);
  for (int guard = 0; guard < 16; ++guard) {
    bool hit = false;
    for (const auto& f : breaks)
      if (f == rep) hit = true;
    if (!hit) return rep;
    rep = (lo + rep) / Rational(2);
  }
  return rep;
}

// Drive the builder from its cursor to `stop_at` (or the full horizon when
// stop_at is the full tau). Samples already behind the cursor are skipped,
// so the same plan also drives continuations.
void drive(OutcomeBuilder& b, const SamplePlan& plan, const NonStdNum& stop_at) {
  auto behind = [&](const HugePosition& pos) {
    return nsn_lt(pos.periods_before(), b.cursor);
  };
  // Near future.
  for (int k = 1; k <= plan.near_future_limit; ++k) {
    HugePosition pos = HugePosition::near_future(k - 1);
    if (behind(pos)) continue;
    if (b.terminated || !nsn_lt(b.cursor, stop_at)) return;
    b.unit_period(pos);
  }
  // Interior breakpoint windows.
  for (const auto& pos : plan.middle_units) {
    if (behind(pos)) continue;
    if (b.terminated || !nsn_lt(b.cursor, stop_at)) return;
    NonStdNum before_pos = pos.periods_before();
    NonStdNum run_end = nsn_lt(stop_at, before_pos) ? stop_at : before_pos;
    Rational lo = b.cursor.tau_coef();
    b.run_until(run_end, HugePosition::at_fraction(interior_rep(lo, pos.frac, plan.fractions)));
    if (b.terminated || !nsn_lt(b.cursor, stop_at)) return;
    b.unit_period(pos);
  }
  // Run to the near end, then the sampled last periods.
  NonStdNum near_end_start(Rational(1), rat_of(-plan.near_end_limit));
  NonStdNum run_end = nsn_lt(stop_at, near_end_start) ? stop_at : near_end_start;
  Rational lo = b.cursor.tau_coef();
  b.run_until(run_end, HugePosition::at_fraction(interior_rep(lo, Rational(1), plan.fractions)));
  for (int k = plan.near_end_limit - 1; k >= 0; --k) {
    HugePosition pos = HugePosition::near_end(k);
    if (behind(pos)) continue;
    if (b.terminated || !nsn_lt(b.cursor, stop_at)) return;
    b.unit_period(pos);
  }
}

const NonStdNum kFullSpan = NonStdNum::tau();

}  // namespace

SegmentPayload StrategyFamily::run_payload(const RepeatedGameSpec& spec, const HugePosition& rep,
                                           const std::vector<Segment>& before, int deviator,
                                           const std::map<int, ActionLabel>* override_play) const {
  int z = simulate_period(spec, *this, rep, before, spec.constituent.root(), deviator,
                          override_play);
  return SegmentPayload(spec.constituent.terminal_label(z));
}

SegmentedWholeHistory family_outcome(const RepeatedGameSpec& spec, const StrategyFamily& family,
                                     const Deviation* deviation, int sample_depth) {
  const GameForm& c = spec.constituent;
  SamplePlan plan = make_plan(spec, family, sample_depth, deviation);
  ViewKind view = family.view();

  if (!deviation) {
    OutcomeBuilder b{spec, family, sample_depth};
    drive(b, plan, kFullSpan);
    return whole_history(view, std::move(b.segments));
  }

  // Prefix up to the deviation period.
  NonStdNum before_p = deviation->at.periods_before();
  OutcomeBuilder b{spec, family, sample_depth};
  drive(b, plan, before_p);
  if (b.terminated || nsn_lt(b.cursor, before_p)) {
    // The family's own play never reaches this subgame; fill the prefix
    // with the canonical connected terminal.
    b.segments.clear();
    b.terminated = false;
    b.cursor = NonStdNum(Rational(0));
    if (nsn_lt(NonStdNum(Rational(0)), before_p))
      b.append(before_p, c.terminal_label(family.off_path_filler(spec)));
    b.cursor = before_p;
  }

  // The deviation period itself, from the chosen subgame root.
  int root_node = c.node_by_path(deviation->within_period);
  if (root_node < 0) throw std::invalid_argument("deviation path not in the constituent");
  bool overriding = deviation->scope != DevScope::OneShot || !deviation->replace.empty();
  b.deviator = deviation->player;
  int z = simulate_period(spec, family, deviation->at, b.segments, root_node, deviation->player,
                          overriding ? &deviation->replace : nullptr);
  b.append(NonStdNum(Rational(0), Rational(1)), c.terminal_label(z));
  b.cursor += NonStdNum(Rational(0), Rational(1));
  if (!spec.is_connected(z)) b.terminated = true;

  // Continuation.
  if (!b.terminated) {
    if (deviation->scope != DevScope::OneShot) b.tail_override = &deviation->replace;
    drive(b, plan, kFullSpan);
  }
  return whole_history(view, std::move(b.segments));
}

// --- Families ------------------------------------------------------------------------

namespace {

// Per-node action that walks toward a given constituent terminal, for every
// player that moves on its path.
std::map<std::pair<int, int>, ActionLabel> toward_terminal(const GameForm& c, int terminal) {
  std::map<std::pair<int, int>, ActionLabel> toward;
  int node = c.terminal_node(terminal);
  while (node != c.root()) {
    int parent = c.node(node).parent;
    const auto& pn = c.node(parent);
    const ActionLabel& edge = c.node(node).action_from_parent;
    if (pn.owner == GameForm::kSimultaneous) {
      // Decompose the joint label by child position.
      const auto& movers = c.simultaneous_movers(parent);
      int index = -1;
      for (std::size_t k = 0; k < pn.children.size(); ++k)
        if (pn.children[k] == node) index = static_cast<int>(k);
      std::vector<int> choice(movers.size(), 0);
      int rest = index;
      for (std::size_t p = movers.size(); p-- > 0;) {
        int size = static_cast<int>(pn.menus[p].size());
        choice[p] = rest % size;
        rest /= size;
      }
      for (std::size_t k = 0; k < movers.size(); ++k)
        toward[{movers[k], parent}] = pn.menus[k][choice[k]];
    } else {
      toward[{pn.owner, parent}] = edge;
    }
    node = parent;
  }
  return toward;
}

bool on_path_of(const GameForm& c, int node, int terminal) {
  int cur = c.terminal_node(terminal);
  while (true) {
    if (cur == node) return true;
    if (cur == c.root()) return false;
    cur = c.node(cur).parent;
  }
}

class RepeatSpeFamily : public StrategyFamily {
 public:
  RepeatSpeFamily(StrategyProfile spe)
      : StrategyFamily("repeat-spe", ViewKind::Perspective), spe_(std::move(spe)) {}

  ActionLabel action(const RepeatedGameSpec&, int player, int cnode, const HugePosition&,
                     const std::vector<Segment>&) const override {
    return spe_.at(player, cnode);
  }

  std::optional<StrategyProfile> finite_profile(const RepeatedGameSpec& spec,
                                                const RepeatedGame& rg) const override {
    return repeat_profile(rg, spec, spe_);
  }

 private:
  StrategyProfile spe_;
};

class SimpleSumFamily : public StrategyFamily {
 public:
  SimpleSumFamily(const RepeatedGameSpec& spec, int target, StrategyProfile spe)
      : StrategyFamily("simple-sum(target=" + spec.constituent.terminal_label(target) + ")",
                       ViewKind::Perspective),
        target_(target),
        target_label_(spec.constituent.terminal_label(target)),
        toward_(toward_terminal(spec.constituent, target)),
        spe_(std::move(spe)) {}

  int off_path_filler(const RepeatedGameSpec&) const override { return target_; }

  ActionLabel action(const RepeatedGameSpec& spec, int player, int cnode, const HugePosition& pos,
                     const std::vector<Segment>& before) const override {
    const GameForm& c = spec.constituent;
    // Off the target path within this period: back to the constituent
    // equilibrium.
    if (!on_path_of(c, cnode, target_)) return spe_.at(player, cnode);
    // Horizon nearly exhausted after a cooperation drought: the huge
    // gain is out of reach, play the constituent equilibrium.
    if (pos.near_end_class() && !cooperation_huge(spec, player, before))
      return spe_.at(player, cnode);
    return toward_.at({player, cnode});
  }

 private:
  // Whether the prefix contains a huge stretch in which `player`'s own
  // choices followed the target.
  bool cooperation_huge(const RepeatedGameSpec& spec, int player,
                        const std::vector<Segment>& before) const {
    for (const auto& seg : before) {
      if (!seg.length.is_huge()) continue;
      if (!seg.payload.constant()) continue;
      if (cooperative(spec, player, seg.payload.cycle.front())) return true;
    }
    return false;
  }

  bool cooperative(const RepeatedGameSpec& spec, int player, const std::string& label) const {
    const GameForm& c = spec.constituent;
    int z = c.terminal_by_label(label);
    if (z < 0) return false;
    if (z == target_) return true;
    // The player's own choices along z agree with the target path.
    for (const auto& [key, act] : toward_terminal(c, z)) {
      if (key.first != player) continue;
      auto it = toward_.find(key);
      if (it == toward_.end() || it->second != act) return false;
    }
    return true;
  }

  int target_;
  std::string target_label_;
  std::map<std::pair<int, int>, ActionLabel> toward_;
  StrategyProfile spe_;
};

class DiscountFamily : public StrategyFamily {
 public:
  DiscountFamily(const Rational& delta, StrategyProfile spe, bool fill_last)
      : StrategyFamily("discount(delta=" + delta.str() + (fill_last ? ",fill=last)" : ")"),
                       ViewKind::Perspective),
        spe_(std::move(spe)),
        fill_last_(fill_last) {}

  ActionLabel action(const RepeatedGameSpec& spec, int player, int cnode, const HugePosition& pos,
                     const std::vector<Segment>&) const override {
    if (pos.near_future_class()) return spe_.at(player, cnode);
    // Beyond the near future any action passes; pin a deterministic fill.
    const GameForm& c = spec.constituent;
    const auto& node = c.node(cnode);
    if (node.owner == GameForm::kSimultaneous) {
      const auto& movers = c.simultaneous_movers(cnode);
      for (std::size_t k = 0; k < movers.size(); ++k)
        if (movers[k] == player)
          return fill_last_ ? node.menus[k].back() : node.menus[k].front();
      throw std::logic_error("player does not move at this node");
    }
    auto actions = legal_actions(c, cnode);
    return fill_last_ ? actions.back() : actions.front();
  }

 private:
  StrategyProfile spe_;
  bool fill_last_;
};

class RepeatNashFamily : public StrategyFamily {
 public:
  RepeatNashFamily(StrategyProfile nash)
      : StrategyFamily("repeat-nash", ViewKind::BirdsEye), nash_(std::move(nash)) {}

  ActionLabel action(const RepeatedGameSpec&, int player, int cnode, const HugePosition&,
                     const std::vector<Segment>&) const override {
    return nash_.at(player, cnode);
  }

  std::optional<StrategyProfile> finite_profile(const RepeatedGameSpec& spec,
                                                const RepeatedGame& rg) const override {
    return repeat_profile(rg, spec, nash_);
  }

 private:
  StrategyProfile nash_;
};

class FiniteSwitchFamily : public StrategyFamily {
 public:
  FiniteSwitchFamily(std::shared_ptr<StrategyFamily> base, std::vector<MonadSwitch> switches)
      : StrategyFamily("finite-switch(" + base->name() + ")", ViewKind::BirdsEye),
        base_(std::move(base)),
        switches_(std::move(switches)) {}

  ActionLabel action(const RepeatedGameSpec& spec, int player, int cnode, const HugePosition& pos,
                     const std::vector<Segment>& before) const override {
    for (const auto& sw : switches_)
      if (pos.frac == sw.fraction && pos.offset == 0) return sw.play.at(player, cnode);
    return base_->action(spec, player, cnode, pos, before);
  }

  std::vector<Rational> breakpoints(const RepeatedGameSpec& spec) const override {
    std::vector<Rational> out = base_->breakpoints(spec);
    for (const auto& sw : switches_) out.push_back(sw.fraction);
    return out;
  }

 private:
  std::shared_ptr<StrategyFamily> base_;
  std::vector<MonadSwitch> switches_;
};

class MixedFamily : public StrategyFamily {
 public:
  MixedFamily(const RepeatedGameSpec& spec, const StrategicGame& sg,
              std::vector<std::vector<ActionLabel>> unit)
      : StrategyFamily("mixed", ViewKind::BirdsEye), unit_(std::move(unit)) {
    const GameForm& c = spec.constituent;
    if (c.node(c.root()).owner != GameForm::kSimultaneous)
      throw std::invalid_argument("mixed families need a strategic constituent");
    movers_ = c.simultaneous_movers(c.root());
    (void)sg;
  }

  ActionLabel action(const RepeatedGameSpec&, int player, int cnode, const HugePosition& pos,
                     const std::vector<Segment>&) const override {
    std::size_t slot = 0;  // huge positions: any representative of the monad
    if (pos.near_future_class() && pos.offset >= 1)
      slot = static_cast<std::size_t>((pos.offset - 1) % static_cast<std::int64_t>(unit_.size()));
    for (std::size_t k = 0; k < movers_.size(); ++k)
      if (movers_[k] == player) return unit_[slot][k];
    (void)cnode;
    throw std::logic_error("player does not move in the strategic constituent");
  }

  SegmentPayload run_payload(const RepeatedGameSpec& spec, const HugePosition& rep,
                             const std::vector<Segment>& before, int deviator,
                             const std::map<int, ActionLabel>* override_play) const override {
    // A run tiles the whole unit; with a tail deviation the deviator's
    // coordinate is overridden slot by slot.
    const GameForm& c = spec.constituent;
    std::vector<std::string> cycle;
    for (std::size_t slot = 0; slot < unit_.size(); ++slot) {
      std::string edge = "(";
      for (std::size_t k = 0; k < movers_.size(); ++k) {
        if (k) edge += ',';
        ActionLabel a = unit_[slot][k];
        if (override_play && movers_[k] == deviator) {
          auto it = override_play->find(c.root());
          if (it != override_play->end()) a = it->second;
        }
        edge += a;
      }
      edge += ')';
      cycle.push_back(edge);
    }
    (void)rep;
    (void)before;
    return SegmentPayload(cycle);
  }

 private:
  std::vector<std::vector<ActionLabel>> unit_;
  std::vector<int> movers_;
};

class RealizeTerminalFamily : public StrategyFamily {
 public:
  RealizeTerminalFamily(const RepeatedGameSpec& spec, SegmentedWholeHistory target,
                        StrategyProfile spe)
      : StrategyFamily("realize(" + target.str() + ")", ViewKind::BirdsEye),
        target_(std::move(target)),
        spe_(std::move(spe)) {
    const GameForm& c = spec.constituent;
    for (const auto& seg : target_.segments) {
      if (!seg.payload.constant())
        throw std::invalid_argument("realize target must be built from constituent terminals");
      int z = c.terminal_by_label(seg.payload.cycle.front());
      if (z < 0)
        throw std::invalid_argument("realize target names an unknown terminal \"" +
                                    seg.payload.cycle.front() + "\"");
      terminal_cache_[seg.payload.cycle.front()] = z;
      toward_by_terminal_[z] = toward_terminal(c, z);
    }
    // Terminating action per player: an owned action whose whole subtree is
    // unconnected.
    for (int p = 0; p < c.num_players(); ++p) {
      for (int v = 0; v < c.num_nodes() && terminate_.find(p) == terminate_.end(); ++v) {
        if (c.is_terminal(v)) continue;
        const auto& node = c.node(v);
        if (node.owner != p) continue;
        for (int ch : node.children) {
          if (subtree_all_unconnected(spec, ch)) {
            terminate_[p] = {v, c.node(ch).action_from_parent};
            break;
          }
        }
      }
    }
  }

  const std::map<int, std::pair<int, ActionLabel>>& terminators() const { return terminate_; }

  std::vector<Rational> breakpoints(const RepeatedGameSpec&) const override {
    std::vector<Rational> out;
    NonStdNum acc;
    for (const auto& seg : target_.segments) {
      acc += seg.length;
      if (acc.tau_coef().sign() > 0 && acc.tau_coef() < Rational(1))
        out.push_back(acc.tau_coef());
    }
    return out;
  }

  ActionLabel action(const RepeatedGameSpec& spec, int player, int cnode, const HugePosition& pos,
                     const std::vector<Segment>& before) const override {
    const GameForm& c = spec.constituent;
    bool prefix_on_target = segments_prefix_of(before, target_.segments);
    NonStdNum period = pos.period();
    bool within_target = prefix_on_target && nsn_le(period, target_.total_length());
    if (within_target) {
      int z = target_component(period);
      if (on_path_of(c, cnode, z)) return toward_by_terminal_.at(z).at({player, cnode});
      // Someone already broke the period: constituent equilibrium.
      return spe_.at(player, cnode);
    }
    if (prefix_on_target) {
      // Past the intended termination: whoever can end the game does.
      auto it = terminate_.find(player);
      if (it != terminate_.end() && it->second.first == cnode) return it->second.second;
      return first_action(c, player, cnode);
    }
    return spe_.at(player, cnode);
  }

 private:
  static bool subtree_all_unconnected(const RepeatedGameSpec& spec, int node) {
    const GameForm& c = spec.constituent;
    if (c.is_terminal(node)) return !spec.is_connected(c.terminal_index_of(node));
    for (int ch : c.node(node).children)
      if (!subtree_all_unconnected(spec, ch)) return false;
    return true;
  }

  static ActionLabel first_action(const GameForm& c, int player, int cnode) {
    const auto& node = c.node(cnode);
    if (node.owner == GameForm::kSimultaneous) {
      const auto& movers = c.simultaneous_movers(cnode);
      for (std::size_t k = 0; k < movers.size(); ++k)
        if (movers[k] == player) return node.menus[k].front();
    }
    return legal_actions(c, cnode).front();
  }

  // Payload of the target at a 1-based period index.
  int target_component(const NonStdNum& period) const {
    NonStdNum acc;
    for (const auto& seg : target_.segments) {
      acc += seg.length;
      if (nsn_le(period, acc)) return target_terminal(seg);
    }
    return target_terminal(target_.segments.back());
  }

  int target_terminal(const Segment& seg) const {
    return terminal_cache_.at(seg.payload.cycle.front());
  }

  static bool segments_prefix_of(const std::vector<Segment>& a, const std::vector<Segment>& b) {
    // a is a period-for-period prefix of b.
    std::size_t bi = 0;
    NonStdNum b_remaining;
    if (!b.empty()) b_remaining = b[0].length;
    for (const auto& seg : a) {
      NonStdNum left = seg.length;
      while (nsn_lt(NonStdNum(Rational(0)), left)) {
        if (bi >= b.size()) return false;
        if (!(b[bi].payload == seg.payload)) return false;
        NonStdNum take = nsn_lt(left, b_remaining) ? left : b_remaining;
        left -= take;
        b_remaining -= take;
        if (b_remaining == NonStdNum(Rational(0)) && bi + 1 < b.size()) {
          ++bi;
          b_remaining = b[bi].length;
        } else if (b_remaining == NonStdNum(Rational(0))) {
          ++bi;  // consumed all of b
          if (nsn_lt(NonStdNum(Rational(0)), left)) return false;
        }
      }
    }
    return true;
  }

  SegmentedWholeHistory target_;
  StrategyProfile spe_;
  std::map<int, std::map<std::pair<int, int>, ActionLabel>> toward_by_terminal_;
  std::map<int, std::pair<int, ActionLabel>> terminate_;
  std::map<std::string, int> terminal_cache_;
};

}  // namespace

std::unique_ptr<StrategyFamily> family_repeat_spe(const RepeatedGameSpec& spec,
                                                  StrategyProfile constituent_spe) {
  (void)spec;
  return std::make_unique<RepeatSpeFamily>(std::move(constituent_spe));
}

std::unique_ptr<StrategyFamily> family_simple_sum(const RepeatedGameSpec& spec,
                                                  const PayoffTable& u, int target_terminal,
                                                  StrategyProfile constituent_spe) {
  const GameForm& c = spec.constituent;
  if (!spec.is_connected(target_terminal))
    throw std::invalid_argument("simple-sum family: target must be a connected terminal");
  for (int p = 0; p < c.num_players(); ++p) {
    if (!c.is_core(p))
      throw std::invalid_argument("simple-sum family: outside players are not covered");
    if (u.at(c.terminal_label(target_terminal), p).sign() <= 0)
      throw std::invalid_argument("simple-sum family: payoffs not positive for player " +
                                  c.player_name(p));
  }
  return std::make_unique<SimpleSumFamily>(spec, target_terminal, std::move(constituent_spe));
}

std::unique_ptr<StrategyFamily> family_simple_sum_unchecked(const RepeatedGameSpec& spec,
                                                            int target_terminal,
                                                            StrategyProfile constituent_spe) {
  if (!spec.is_connected(target_terminal))
    throw std::invalid_argument("simple-sum family: target must be a connected terminal");
  return std::make_unique<SimpleSumFamily>(spec, target_terminal, std::move(constituent_spe));
}

std::unique_ptr<StrategyFamily> family_discount(const RepeatedGameSpec& spec,
                                                const Rational& delta,
                                                StrategyProfile constituent_spe) {
  (void)spec;
  if (delta.sign() <= 0 || delta >= Rational(1))
    throw std::invalid_argument("discount family needs delta in (0,1)");
  return std::make_unique<DiscountFamily>(delta, std::move(constituent_spe), false);
}

std::unique_ptr<StrategyFamily> family_repeat_nash(const RepeatedGameSpec& spec,
                                                   StrategyProfile nash_profile) {
  const GameForm& c = spec.constituent;
  if (static_cast<int>(spec.connected.size()) != c.num_terminals())
    throw std::invalid_argument("repeat-nash family requires C = Z");
  if (!is_nash(c, nash_profile, NashSemantics::NoStrictImprovement).holds)
    throw std::invalid_argument("repeat-nash family: profile is not a Nash equilibrium");
  return std::make_unique<RepeatNashFamily>(std::move(nash_profile));
}

std::unique_ptr<StrategyFamily> family_finite_switch(const RepeatedGameSpec& spec,
                                                     std::shared_ptr<StrategyFamily> base,
                                                     std::vector<MonadSwitch> switches) {
  (void)spec;
  for (const auto& sw : switches)
    if (sw.fraction.sign() <= 0 || sw.fraction >= Rational(1))
      throw std::invalid_argument("switch monads must lie strictly inside (0,1)");
  return std::make_unique<FiniteSwitchFamily>(std::move(base), std::move(switches));
}

std::vector<std::vector<ActionLabel>> mixed_unit(const StrategicGame& sg,
                                                 const MixedProfile& sigma) {
  if (sigma.size() != sg.players.size())
    throw std::invalid_argument("mixed unit: one distribution per player required");
  BigInt m = 1;
  for (std::size_t p = 0; p < sigma.size(); ++p) {
    if (sigma[p].size() != sg.actions[p].size())
      throw std::invalid_argument("mixed unit: distribution arity mismatch");
    Rational sum(0);
    for (const auto& q : sigma[p]) {
      if (q.sign() < 0) throw std::invalid_argument("mixed unit: negative probability");
      sum += q;
      BigInt d = q.den();
      BigInt g = boost::multiprecision::gcd(m, d);
      m = m / g * d;
    }
    if (sum != Rational(1)) throw std::invalid_argument("mixed unit: distribution must sum to 1");
  }
  // Unit length m^|I|; player i cycles with period m^i.
  const int players = static_cast<int>(sg.players.size());
  BigInt length = 1;
  for (int i = 0; i < players; ++i) length *= m;
  if (length > BigInt(1000000)) throw std::invalid_argument("mixed unit too long");
  std::vector<std::vector<ActionLabel>> unit;
  for (BigInt t = 1; t <= length; ++t) {
    std::vector<ActionLabel> profile;
    for (int i = 0; i < players; ++i) {
      BigInt mi = 1;
      for (int k = 0; k <= i; ++k) mi *= m;  // m^(i+1) with 1-based player index
      Rational z((t - 1) / mi);
      Rational x = Rational(t, mi) - z;
      Rational cum(0);
      int chosen = -1;
      for (std::size_t j = 0; j < sigma[i].size(); ++j) {
        Rational lo = cum;
        cum += sigma[i][j];
        if (x > lo && x <= cum) {
          chosen = static_cast<int>(j);
          break;
        }
      }
      if (chosen < 0) throw std::logic_error("mixed unit membership condition unsatisfied");
      profile.push_back(sg.actions[i][chosen]);
    }
    unit.push_back(std::move(profile));
  }
  return unit;
}

std::unique_ptr<StrategyFamily> family_mixed(const RepeatedGameSpec& spec, const StrategicGame& sg,
                                             const MixedProfile& sigma) {
  if (!is_mixed_nash(sg, sigma))
    throw std::invalid_argument("mixed family: sigma is not a mixed Nash equilibrium");
  return std::make_unique<MixedFamily>(spec, sg, mixed_unit(sg, sigma));
}

std::unique_ptr<StrategyFamily> family_realize_terminal(const RepeatedGameSpec& spec,
                                                        const PayoffTable& u,
                                                        SegmentedWholeHistory target,
                                                        StrategyProfile constituent_spe) {
  const GameForm& c = spec.constituent;
  if (spec.connected.size() != 1)
    throw std::invalid_argument("realize family: C must be a singleton");
  int core_count = static_cast<int>(c.core_players().size());
  if (core_count < 2) throw std::invalid_argument("realize family: needs at least two core players");
  for (int p : c.core_players())
    if (u.at(c.terminal_label(spec.connected.front()), p).sign() <= 0)
      throw std::invalid_argument("realize family: connected payoffs must be positive");
  auto family = std::make_unique<RealizeTerminalFamily>(spec, std::move(target),
                                                        std::move(constituent_spe));
  for (int p : c.core_players())
    if (family->terminators().find(p) == family->terminators().end())
      throw std::invalid_argument("realize family: player " + c.player_name(p) +
                                  " cannot terminate the game");
  return family;
}

// --- Suites ----------------------------------------------------------------------------

namespace {

// Every pure constituent strategy of one player.
std::vector<std::map<int, ActionLabel>> pure_strategies(const GameForm& c, int player) {
  std::vector<std::pair<int, std::vector<ActionLabel>>> slots;
  for (int v = 0; v < c.num_nodes(); ++v) {
    if (c.is_terminal(v)) continue;
    const auto& node = c.node(v);
    if (node.owner == GameForm::kSimultaneous) {
      const auto& movers = c.simultaneous_movers(v);
      for (std::size_t k = 0; k < movers.size(); ++k)
        if (movers[k] == player) slots.emplace_back(v, node.menus[k]);
    } else if (node.owner == player) {
      slots.emplace_back(v, legal_actions(c, v));
    }
  }
  std::vector<std::map<int, ActionLabel>> out = {{}};
  for (auto& [v, menu] : slots) {
    std::vector<std::map<int, ActionLabel>> next;
    for (const auto& partial : out)
      for (const auto& a : menu) {
        auto copy = partial;
        copy[v] = a;
        next.push_back(std::move(copy));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<HugePosition> suite_positions(const RepeatedGameSpec& spec,
                                          const StrategyFamily& family, int depth) {
  std::vector<HugePosition> out;
  for (int k = 0; k <= depth; ++k) out.push_back(HugePosition::near_future(k));
  if (family.view() == ViewKind::Perspective) {
    out.push_back(HugePosition::distant_future());
    for (int k = 0; k <= depth; ++k) out.push_back(HugePosition::near_end(k));
    return out;
  }
  // Bird's eye: the family's segment boundaries, one interior point per
  // segment, and the last sampled periods.
  std::set<Rational> boundaries;
  for (const Rational& f : family.breakpoints(spec))
    if (f.sign() > 0 && f < Rational(1)) boundaries.insert(f);
  SegmentedWholeHistory path = family_outcome(spec, family, nullptr, depth);
  NonStdNum acc;
  for (const auto& seg : path.segments) {
    acc += seg.length;
    Rational f = acc.tau_coef();
    if (f.sign() > 0 && f < Rational(1)) boundaries.insert(f);
  }
  std::vector<Rational> walls = {Rational(0)};
  for (const auto& f : boundaries) walls.push_back(f);
  walls.push_back(Rational(1));
  std::vector<Rational> all(boundaries.begin(), boundaries.end());
  for (std::size_t i = 0; i + 1 < walls.size(); ++i) {
    Rational mid = interior_rep(walls[i], walls[i + 1], all);
    out.push_back(HugePosition::at_fraction(mid));
  }
  for (const auto& f : boundaries) out.push_back(HugePosition::at_fraction(f));
  for (int k = 0; k <= std::min(depth, 1); ++k) out.push_back(HugePosition::near_end(k));
  return out;
}

}  // namespace

DeviationSuite default_suite(const RepeatedGameSpec& spec, const StrategyFamily& family,
                             const Criterion& criterion, int depth) {
  (void)criterion;
  const GameForm& c = spec.constituent;
  DeviationSuite suite;
  auto positions = suite_positions(spec, family, depth);
  for (const auto& pos : positions) {
    // Mid-period subgame roots: one-shot action replacements at every
    // decision point of the period.
    for (int v = 0; v < c.num_nodes(); ++v) {
      if (c.is_terminal(v)) continue;
      const auto& node = c.node(v);
      if (node.owner == GameForm::kSimultaneous) {
        const auto& movers = c.simultaneous_movers(v);
        for (std::size_t k = 0; k < movers.size(); ++k)
          for (const auto& a : node.menus[k])
            suite.items.push_back(
                Deviation{pos, c.path(v), movers[k], {{v, a}}, DevScope::OneShot, ""});
      } else {
        for (const auto& a : legal_actions(c, v))
          suite.items.push_back(
              Deviation{pos, c.path(v), node.owner, {{v, a}}, DevScope::OneShot, ""});
      }
    }
    // Period-start deviations with full replacement strategies.
    for (int p = 0; p < c.num_players(); ++p) {
      bool outside = !c.is_core(p);
      for (const auto& s : pure_strategies(c, p)) {
        suite.items.push_back(Deviation{pos, {}, p, s, DevScope::OneShot, ""});
        if (!outside) suite.items.push_back(Deviation{pos, {}, p, s, DevScope::Tail, ""});
      }
    }
  }
  // Whole-game switches to every pure repeated constituent strategy.
  for (int p = 0; p < c.num_players(); ++p) {
    if (!c.is_core(p)) continue;
    for (const auto& s : pure_strategies(c, p))
      suite.items.push_back(
          Deviation{HugePosition::near_future(0), {}, p, s, DevScope::Whole, "switch"});
  }
  return suite;
}

// --- Verification -----------------------------------------------------------------------

namespace {

// Payload of the period at `period` (1-based) in a segmented history.
std::string payload_at(const SegmentedWholeHistory& h, const NonStdNum& period) {
  NonStdNum acc;
  for (const auto& seg : h.segments) {
    acc += seg.length;
    if (nsn_le(period, acc)) {
      if (!seg.payload.constant())
        throw std::logic_error("period payload inside a cycle run is indeterminate");
      return seg.payload.cycle.front();
    }
  }
  throw std::logic_error("period beyond the end of play");
}

DeviationResult make_row(const RepeatedGameSpec& spec, const Criterion& criterion,
                         const PayoffModel& model, const Deviation& dev,
                         const SegmentedWholeHistory& base, const SegmentedWholeHistory& devo) {
  const GameForm& c = spec.constituent;
  DeviationResult row;
  row.position = dev.at.str();
  row.description = dev.describe(c);
  row.scope = dev.scope;
  row.player = dev.player;
  row.baseline_history = base.str();
  row.deviation_history = devo.str();
  if (c.is_core(dev.player)) {
    NonStdNum pb = model.payoff(base, dev.player, criterion);
    NonStdNum pd = model.payoff(devo, dev.player, criterion);
    if (criterion.kind == Criterion::Kind::Overtaking) {
      row.baseline_payoff = pb.str();
      row.deviation_payoff = pd.str();
      row.deviation_vs_baseline = nsn_cmp(pd, pb);
    } else {
      row.baseline_payoff = collapse(pb).str();
      row.deviation_payoff = collapse(pd).str();
      row.deviation_vs_baseline = ext_cmp(collapse(pd), collapse(pb));
    }
  } else {
    // An outside instance cares about its own period's component only.
    std::string z0 = payload_at(base, dev.at.period());
    std::string z1 = payload_at(devo, dev.at.period());
    row.baseline_payoff = z0;
    row.deviation_payoff = z1;
    const auto& pref = c.preferences(dev.player);
    int t0 = c.terminal_by_label(z0);
    int t1 = c.terminal_by_label(z1);
    if (pref.strictly(t1, t0))
      row.deviation_vs_baseline = Ordering::Greater;
    else if (pref.strictly(t0, t1))
      row.deviation_vs_baseline = Ordering::Less;
    else
      row.deviation_vs_baseline = Ordering::Equal;
  }
  row.improves = row.deviation_vs_baseline == Ordering::Greater;
  return row;
}

int map_period(const HugePosition& pos, int n) {
  if (pos.near_future_class()) return static_cast<int>(pos.offset);
  if (pos.frac == Rational(1)) return n + static_cast<int>(pos.offset);
  // ceil(frac * n) + offset
  Rational scaled = pos.frac * Rational(n);
  BigInt t = (scaled.num() + scaled.den() - 1) / scaled.den();
  return t.convert_to<int>() + static_cast<int>(pos.offset);
}

// Root of the subgame at period t (after within-period actions), walking
// the family's own play and rerouting through the filler terminal whenever
// play would stop early.
int finite_subgame_node(const RepeatedGame& rg, const RepeatedGameSpec& spec,
                        const StrategyFamily& family, const StrategyProfile& fam, int t,
                        const std::vector<ActionLabel>& within) {
  const GameForm& g = rg.game;
  const GameForm& c = spec.constituent;
  int node = g.root();
  for (int q = 1; q < t; ++q) {
    int cur = node;
    while (!g.is_terminal(cur) && rg.node_period[cur] == q) cur = follow_step(g, fam, cur);
    if (!g.is_terminal(cur) && rg.node_period[cur] == q + 1) {
      node = cur;
      continue;
    }
    // The family's play ends here; condition the subgame on the connected
    // filler instead.
    int filler = family.off_path_filler(spec);
    int re = node;
    for (const auto& a : c.path(c.terminal_node(filler))) {
      int next = -1;
      for (int ch : g.node(re).children)
        if (g.node(ch).action_from_parent == a) next = ch;
      if (next < 0) return -1;
      re = next;
    }
    node = re;
  }
  for (const auto& a : within) {
    int next = -1;
    for (int ch : g.node(node).children)
      if (g.node(ch).action_from_parent == a) next = ch;
    if (next < 0) return -1;
    node = next;
  }
  return node;
}

EquilibriumReport verify_finite(const RepeatedGameSpec& spec, int n, const StrategyFamily& family,
                                const Criterion& criterion, const PayoffModel& model,
                                const DeviationSuite& suite) {
  RepeatedGame rg = build_finite_repeated(spec, n);
  apply_criterion_preferences(rg, spec, model, criterion);
  auto prof = family.finite_profile(spec, rg);
  if (!prof)
    throw std::invalid_argument("family \"" + family.name() + "\" has no finite-horizon analogue");
  const GameForm& g = rg.game;
  const GameForm& c = spec.constituent;

  EquilibriumReport report;
  report.family = family.name();
  report.criterion = criterion.str();
  report.verified = true;
  for (const auto& dev : suite.items) {
    int t = dev.scope == DevScope::Whole ? 1 : map_period(dev.at, n);
    if (t < 1 || t > n) continue;
    if (!c.is_core(dev.player) && dev.scope != DevScope::OneShot) continue;
    int root = finite_subgame_node(rg, spec, family, *prof, t, dev.within_period);
    if (root < 0) continue;

    StrategyProfile devp = *prof;
    for (int v = 0; v < g.num_nodes(); ++v) {
      if (g.is_terminal(v)) continue;
      int period = rg.node_period[v];
      bool in_scope = dev.scope == DevScope::OneShot ? period == t : period >= t;
      if (!in_scope) continue;
      auto it = dev.replace.find(rg.node_constituent[v]);
      if (it == dev.replace.end()) continue;
      int rp = rg.repeated_player(dev.player, period);
      const auto& node_v = g.node(v);
      bool moves = node_v.owner == rp;
      if (node_v.owner == GameForm::kSimultaneous) {
        const auto& movers = g.simultaneous_movers(v);
        moves = std::find(movers.begin(), movers.end(), rp) != movers.end();
      }
      if (moves) devp.by_player[rp][v] = it->second;
    }

    int base_leaf = outcome(g, *prof, root);
    int dev_leaf = outcome(g, devp, root);
    DeviationResult row;
    row.position = dev.at.str() + " -> period " + std::to_string(t);
    row.description = dev.describe(c);
    row.scope = dev.scope;
    row.player = dev.player;
    row.baseline_history = g.terminal_label(base_leaf);
    row.deviation_history = g.terminal_label(dev_leaf);
    if (c.is_core(dev.player)) {
      auto labels = [&](int leaf) {
        std::vector<std::string> out;
        for (int z : rg.leaf_history[leaf]) out.push_back(c.terminal_label(z));
        return out;
      };
      NonStdNum pb = model.payoff(labels(base_leaf), dev.player, criterion, n);
      NonStdNum pd = model.payoff(labels(dev_leaf), dev.player, criterion, n);
      row.baseline_payoff = collapse(pb).str();
      row.deviation_payoff = collapse(pd).str();
      row.deviation_vs_baseline = criterion.kind == Criterion::Kind::Overtaking
                                      ? nsn_cmp(pd, pb)
                                      : ext_cmp(collapse(pd), collapse(pb));
    } else {
      const auto& hb = rg.leaf_history[base_leaf];
      const auto& hd = rg.leaf_history[dev_leaf];
      if (static_cast<int>(hb.size()) < t || static_cast<int>(hd.size()) < t) continue;
      int z0 = hb[t - 1];
      int z1 = hd[t - 1];
      row.baseline_payoff = c.terminal_label(z0);
      row.deviation_payoff = c.terminal_label(z1);
      const auto& pref = c.preferences(dev.player);
      row.deviation_vs_baseline = pref.strictly(z1, z0)
                                      ? Ordering::Greater
                                      : (pref.strictly(z0, z1) ? Ordering::Less : Ordering::Equal);
    }
    row.improves = row.deviation_vs_baseline == Ordering::Greater;
    if (row.improves && !report.witness) report.witness = row;
    if (row.improves) report.verified = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace

EquilibriumReport verify_symbolic_spe(const RepeatedGameSpec& spec, const StrategyFamily& family,
                                      const Criterion& criterion, const PayoffModel& model,
                                      const DeviationSuite& suite, int sample_depth) {
  if (const auto* fin = std::get_if<FiniteHorizon>(&spec.horizon))
    return verify_finite(spec, fin->n, family, criterion, model, suite);

  const auto& huge = std::get<HugeHorizon>(spec.horizon);
  if (criterion.view() != huge.view)
    throw std::invalid_argument("criterion " + criterion.str() + " reads the " +
                                view_name(criterion.view()) + " view but the game is set to " +
                                view_name(huge.view));
  if (family.view() != huge.view)
    throw std::invalid_argument("family " + family.name() + " is built for the " +
                                view_name(family.view()) + " view but the game is set to " +
                                view_name(huge.view));

  EquilibriumReport report;
  report.family = family.name();
  report.criterion = criterion.str();
  report.verified = true;
  const GameForm& c = spec.constituent;
  for (const auto& dev : suite.items) {
    if (!c.is_core(dev.player) && dev.scope != DevScope::OneShot) continue;
    Deviation base_dev = dev;
    base_dev.replace.clear();
    base_dev.scope = DevScope::OneShot;
    SegmentedWholeHistory base = family_outcome(spec, family, &base_dev, sample_depth);
    SegmentedWholeHistory devo = family_outcome(spec, family, &dev, sample_depth);
    DeviationResult row = make_row(spec, criterion, model, dev, base, devo);
    if (row.improves && !report.witness) report.witness = row;
    if (row.improves) report.verified = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

EquilibriumReport verify_symbolic_spe(const RepeatedGameSpec& spec, const StrategyFamily& family,
                                      const Criterion& criterion, const PayoffModel& model,
                                      int suite_depth) {
  return verify_symbolic_spe(spec, family, criterion, model,
                             default_suite(spec, family, criterion, suite_depth), suite_depth);
}

std::string EquilibriumReport::str() const {
  std::string out;
  out += "family: " + family + "\n";
  out += "criterion: " + criterion + "\n";
  out += "verdict: " + std::string(verified ? "verified-on-suite" : "refuted") + "\n";
  if (witness)
    out += "witness: " + witness->description + " (" + witness->deviation_payoff + " over " +
           witness->baseline_payoff + ")\n";
  out += "deviations: " + std::to_string(rows.size()) + "\n";
  for (const auto& row : rows) {
    const char* ord = row.deviation_vs_baseline == Ordering::Less
                          ? "<"
                          : (row.deviation_vs_baseline == Ordering::Greater ? ">" : "=");
    out += "- " + row.description + ": dev " + row.deviation_payoff + " " + ord + " base " +
           row.baseline_payoff + "\n";
  }
  return out;
}

PropExtReport verify_prop_ext(const RepeatedGameSpec& spec, const PayoffModel& model,
                              const Criterion& criterion) {
  PropExtReport r;
  CriterionFlags flags = criterion_flags(criterion);
  if (!flags.weak_separability || !flags.huge_transitivity) {
    r.blocked_on = "criterion lacks weak separability or huge transitivity";
    return r;
  }
  std::vector<StrategyProfile> bi;
  try {
    bi = backward_induction(spec.constituent);
  } catch (const std::exception& e) {
    r.blocked_on = std::string("backward induction failed: ") + e.what();
    return r;
  }
  if (bi.empty()) {
    r.blocked_on = "constituent has no backward-induction profile";
    return r;
  }
  const StrategyProfile& spe = bi.front();
  int z_star = outcome(spec.constituent, spe);
  r.dynamic_consistency = check_dynamic_consistency(spec, model, criterion, z_star);
  for (auto d : r.dynamic_consistency)
    if (d == DynamicConsistency::Fails) {
      r.blocked_on = "dynamic consistency fails";
      return r;
    }
  r.hypotheses_met = true;

  if (const auto* fin = std::get_if<FiniteHorizon>(&spec.horizon)) {
    RepeatedGame rg = build_finite_repeated(spec, fin->n);
    apply_criterion_preferences(rg, spec, model, criterion);
    StrategyProfile repeated = repeat_profile(rg, spec, spe);
    auto check = is_spe(rg.game, repeated, NashSemantics::NoStrictImprovement);
    r.verified = check.holds;
    r.detail = check.holds ? "exhaustive subgame scan at n = " + std::to_string(fin->n)
                           : check.witness->describe(rg.game);
    return r;
  }
  auto family = family_repeat_spe(spec, spe);
  auto report = verify_symbolic_spe(spec, *family, criterion, model);
  r.verified = report.verified;
  r.detail = report.verified
                 ? "verified-on-suite (" + std::to_string(report.rows.size()) + " deviations)"
                 : report.witness->description;
  return r;
}

}  // namespace taugame
