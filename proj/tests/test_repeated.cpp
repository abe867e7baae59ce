#include <doctest.h>

#include <algorithm>
#include <set>

#include "taugame/repeated.hpp"

using namespace taugame;

namespace {

Rational rat(std::int64_t n, std::int64_t d = 1) { return Rational(BigInt(n), BigInt(d)); }

GameForm chain_store_constituent() {
  GameForm g;
  int L = g.add_player("L", false);
  int CS = g.add_player("CS", true);
  g.set_owner(g.root(), L);
  int in_node = g.add_child(g.root(), "in");
  g.add_child(g.root(), "out");
  g.set_owner(in_node, CS);
  g.add_child(in_node, "C");
  g.add_child(in_node, "A");
  g.finalize();
  g.set_terminal_alias(g.terminal_by_label("out"), "(out)");
  int t_out = g.terminal_by_label("(out)");
  int t_c = g.terminal_by_label("(in,C)");
  int t_a = g.terminal_by_label("(in,A)");
  int n = g.num_terminals() + 1;
  g.set_preferences(CS, PreferenceRelation::from_pairs(n, {{t_out, t_c}, {t_c, t_a}}));
  g.set_preferences(L, PreferenceRelation::from_pairs(n, {{t_c, t_out}, {t_out, t_a}}));
  g.validate();
  return g;
}

RepeatedGameSpec chain_store_spec() {
  RepeatedGameSpec spec;
  spec.constituent = chain_store_constituent();
  spec.connected = {0, 1, 2};  // C = Z
  return spec;
}

GameForm centipede_constituent() {
  GameForm g;
  int p1 = g.add_player("1", true);
  int p2 = g.add_player("2", true);
  g.set_owner(g.root(), p1);
  int r_node = g.add_child(g.root(), "R");
  g.add_child(g.root(), "D");
  g.set_owner(r_node, p2);
  g.add_child(r_node, "r");
  g.add_child(r_node, "d");
  g.finalize();
  g.set_terminal_alias(g.terminal_by_label("(R,r)"), "Rr");
  g.set_terminal_alias(g.terminal_by_label("(R,d)"), "Rd");
  int rr = g.terminal_by_label("Rr");
  int rd = g.terminal_by_label("Rd");
  int d = g.terminal_by_label("D");
  int nn = g.num_terminals() + 1;
  g.set_preferences(p1, PreferenceRelation::from_pairs(nn, {{rr, d}, {d, rd}}));
  g.set_preferences(p2, PreferenceRelation::from_pairs(nn, {{rd, rr}, {rr, d}}));
  g.validate();
  return g;
}

RepeatedGameSpec centipede_spec() {
  RepeatedGameSpec spec;
  spec.constituent = centipede_constituent();
  spec.connected = {spec.constituent.terminal_by_label("Rr")};
  return spec;
}

PayoffTable centipede_table() {
  PayoffTable u;
  u.values["D"] = {rat(0), rat(0)};
  u.values["Rd"] = {rat(-1), rat(3)};
  u.values["Rr"] = {rat(2), rat(2)};
  return u;
}

std::set<std::pair<std::string, std::string>> edge_labels(const HasseDiagram& d) {
  std::set<std::pair<std::string, std::string>> out;
  for (auto [a, b] : d.edges) out.insert({d.class_labels[a], d.class_labels[b]});
  return out;
}

// Relation over leaves of the repeated game from the lifted preference of
// one constituent player.
RelationFn lifted_relation(const LiftedPreference& lifted, int player) {
  return [&lifted, player](const WholeHistory& x, const WholeHistory& y) {
    int a = lifted.index_of(x);
    int b = lifted.index_of(y);
    REQUIRE(a >= 0);
    REQUIRE(b >= 0);
    return lifted.by_player[player].holds(a, b);
  };
}

}  // namespace

TEST_CASE("whole history domain") {
  RepeatedGameSpec cp = centipede_spec();
  auto domain = whole_history_domain(cp, 2);
  // Lengths 1..2, prefixes in C = {Rr}: D, Rd, Rr, (Rr,D), (Rr,Rd), (Rr,Rr).
  CHECK(domain.size() == 6);
  std::set<std::string> labels;
  for (const auto& h : domain) labels.insert(whole_history_label(cp.constituent, h));
  CHECK(labels == std::set<std::string>{"(D)", "(Rr)", "(Rd)", "(Rr,D)", "(Rr,Rr)", "(Rr,Rd)"});

  RepeatedGameSpec cs = chain_store_spec();
  CHECK(whole_history_domain(cs, 2).size() == 12);  // 3 + 9
}

TEST_CASE("build_finite_repeated chain store n=2") {
  RepeatedGameSpec spec = chain_store_spec();
  RepeatedGame rg = build_finite_repeated(spec, 2);
  CHECK(rg.game.num_terminals() == 9);
  // Players: CS core plus one local-store instance per period.
  CHECK(rg.game.num_players() == 3);
  CHECK(rg.game.player_name(0) == "CS");
  CHECK(rg.game.player_name(1) == "L@1");
  CHECK(rg.game.player_name(2) == "L@2");
  // The paper's Z^2 listing.
  for (const char* label :
       {"((in,C),(in,C))", "((in,C),(in,A))", "((in,C),(out))", "((in,A),(in,C))",
        "((in,A),(in,A))", "((in,A),(out))", "((out),(in,C))", "((out),(in,A))", "((out),(out))"})
    CHECK(rg.game.terminal_by_label(label) >= 0);
}

TEST_CASE("build_finite_repeated centipede n=2") {
  RepeatedGameSpec spec = centipede_spec();
  RepeatedGame rg = build_finite_repeated(spec, 2);
  std::set<std::string> labels;
  for (int t = 0; t < rg.game.num_terminals(); ++t) labels.insert(rg.game.terminal_label(t));
  CHECK(labels == std::set<std::string>{"(D)", "(Rd)", "(Rr,D)", "(Rr,Rd)", "(Rr,Rr)"});
}

TEST_CASE("build_finite_repeated n=1 is the constituent") {
  RepeatedGameSpec spec = centipede_spec();
  RepeatedGame rg = build_finite_repeated(spec, 1);
  CHECK(rg.game.num_nodes() == spec.constituent.num_nodes());
  CHECK(rg.game.num_terminals() == spec.constituent.num_terminals());
}

TEST_CASE("expansion guard") {
  RepeatedGameSpec spec = chain_store_spec();
  CHECK_THROWS_WITH_AS(build_finite_repeated(spec, 6, 50), "expansion guard exceeded",
                       std::runtime_error);
}

TEST_CASE("chain store n=2 Hasse diagrams match the product order") {
  RepeatedGameSpec spec = chain_store_spec();
  LiftedPreference lifted = lift_preferences(spec, 2, {});
  RepeatedGame rg = build_finite_repeated(spec, 2);
  apply_lifted_preferences(rg, spec, lifted);

  // Build the diagram over the nine unconnected terminals.
  std::vector<std::string> labels;
  for (int t = 0; t < rg.game.num_terminals(); ++t) labels.push_back(rg.game.terminal_label(t));
  int cs = 0;  // repeated player 0 = CS
  HasseDiagram d_cs = hasse(rg.game.preferences(cs), labels);
  CHECK(d_cs.classes.size() == 9);
  CHECK(d_cs.edges.size() == 12);

  auto expect_cs = std::set<std::pair<std::string, std::string>>{
      {"((out),(out))", "((in,C),(out))"},
      {"((out),(out))", "((out),(in,C))"},
      {"((out),(in,C))", "((out),(in,A))"},
      {"((out),(in,C))", "((in,C),(in,C))"},
      {"((in,C),(out))", "((in,C),(in,C))"},
      {"((in,C),(out))", "((in,A),(out))"},
      {"((in,C),(in,C))", "((in,A),(in,C))"},
      {"((in,C),(in,C))", "((in,C),(in,A))"},
      {"((out),(in,A))", "((in,C),(in,A))"},
      {"((in,A),(out))", "((in,A),(in,C))"},
      {"((in,C),(in,A))", "((in,A),(in,A))"},
      {"((in,A),(in,C))", "((in,A),(in,A))"}};
  CHECK(edge_labels(d_cs) == expect_cs);

  // The local store's lifted order (constituent player 0), restricted to
  // the same nine terminals.
  PreferenceRelation rel(static_cast<int>(labels.size()));
  for (int a = 0; a < rg.game.num_terminals(); ++a)
    for (int b = 0; b < rg.game.num_terminals(); ++b) {
      int ia = lifted.index_of(rg.leaf_history[a]);
      int ib = lifted.index_of(rg.leaf_history[b]);
      if (lifted.by_player[0].holds(ia, ib)) rel.add_pair(a, b);
    }
  rel.close();
  HasseDiagram d_l = hasse(rel, labels);
  CHECK(d_l.classes.size() == 9);
  auto expect_l = std::set<std::pair<std::string, std::string>>{
      {"((in,C),(in,C))", "((in,C),(out))"},
      {"((in,C),(in,C))", "((out),(in,C))"},
      {"((in,C),(out))", "((in,C),(in,A))"},
      {"((in,C),(out))", "((out),(out))"},
      {"((out),(in,C))", "((out),(out))"},
      {"((out),(in,C))", "((in,A),(in,C))"},
      {"((in,C),(in,A))", "((out),(in,A))"},
      {"((out),(out))", "((out),(in,A))"},
      {"((out),(out))", "((in,A),(out))"},
      {"((in,A),(in,C))", "((in,A),(out))"},
      {"((out),(in,A))", "((in,A),(in,A))"},
      {"((in,A),(out))", "((in,A),(in,A))"}};
  CHECK(edge_labels(d_l) == expect_l);
}

TEST_CASE("centipede n=2 lifted preferences with dynamic consistency") {
  RepeatedGameSpec spec = centipede_spec();
  int d_term = spec.constituent.terminal_by_label("D");
  LiftOptions options{true, d_term};
  LiftedPreference lifted = lift_preferences(spec, 2, options);

  HasseDiagram d1 = hasse(lifted, spec.constituent, 0);
  // Player 1: (Rr,Rr) over the merged node over {(D), (Rr,Rd)}, (D) over (Rd).
  CHECK(d1.classes.size() == 5);
  auto e1 = edge_labels(d1);
  CHECK(e1 == std::set<std::pair<std::string, std::string>>{
                  {"(Rr,Rr)", "(Rr), (Rr,D)"},
                  {"(Rr), (Rr,D)", "(D)"},
                  {"(Rr), (Rr,D)", "(Rr,Rd)"},
                  {"(D)", "(Rd)"}});

  HasseDiagram d2 = hasse(lifted, spec.constituent, 1);
  CHECK(edge_labels(d2) == std::set<std::pair<std::string, std::string>>{
                               {"(Rr,Rd)", "(Rr,Rr)"},
                               {"(Rd)", "(Rr), (Rr,D)"},
                               {"(Rr,Rr)", "(Rr), (Rr,D)"},
                               {"(Rr), (Rr,D)", "(D)"}});

  // A constituent with a single terminal lifts to a one-node relation.
  GameForm solo;
  int p = solo.add_player("1", true);
  solo.set_owner(solo.root(), p);
  solo.add_child(solo.root(), "x");
  solo.finalize();
  solo.set_preferences(p, PreferenceRelation(2));
  RepeatedGameSpec solo_spec;
  solo_spec.constituent = solo;
  solo_spec.connected = {0};
  LiftedPreference solo_lift = lift_preferences(solo_spec, 1, {});
  CHECK(hasse(solo_lift, solo_spec.constituent, 0).classes.size() == 1);
}

TEST_CASE("lifted relation contains its generators and is minimal") {
  RepeatedGameSpec spec = centipede_spec();
  LiftOptions options{true, spec.constituent.terminal_by_label("D")};
  LiftedPreference lifted = lift_preferences(spec, 2, options);
  for (std::size_t p = 0; p < lifted.by_player.size(); ++p) {
    const auto& rel = lifted.by_player[p];
    std::set<std::pair<int, int>> gens(lifted.generators[p].begin(), lifted.generators[p].end());
    for (auto [a, b] : gens) CHECK(rel.holds(a, b));
    // Every non-generator strict pair is derivable through a middleman, so
    // dropping it would break transitive closure.
    for (int a = 0; a < rel.size(); ++a)
      for (int b = 0; b < rel.size(); ++b) {
        if (a == b || !rel.holds(a, b) || gens.count({a, b})) continue;
        bool derivable = false;
        for (int c = 0; c < rel.size() && !derivable; ++c)
          if (c != a && c != b && rel.holds(a, c) && rel.holds(c, b)) derivable = true;
        CHECK(derivable);
      }
  }
}

TEST_CASE("hasse rejects non-preorders") {
  PreferenceRelation raw(3);
  raw.add_pair(0, 1);
  raw.add_pair(1, 2);  // missing (0,2): not transitively closed
  CHECK_THROWS_AS(hasse(raw, {"a", "b", "c"}), std::invalid_argument);

  // Total order on 3 elements: a chain of 2 cover edges.
  PreferenceRelation total = PreferenceRelation::from_values({rat(3), rat(2), rat(1)});
  HasseDiagram d = hasse(total, {"a", "b", "c"});
  CHECK(d.edges.size() == 2);
  CHECK(d.class_labels == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("check_weak_separability") {
  RepeatedGameSpec spec = chain_store_spec();
  LiftedPreference lifted = lift_preferences(spec, 2, {});
  for (int p = 0; p < 2; ++p)
    CHECK(check_weak_separability(lifted_relation(lifted, p), spec, 2, p).holds);

  // An investment-style order at n = 3: all-invest beats everything, else
  // counting the invest periods down. The constituent prefers N to I, so
  // the lift (N,I,I) >= (I,I,I) must hold but the relation reverses it.
  GameForm inv;
  int p = inv.add_player("1", true);
  inv.set_owner(inv.root(), p);
  inv.add_child(inv.root(), "I");
  inv.add_child(inv.root(), "N");
  inv.finalize();
  int t_i = inv.terminal_by_label("I");
  int t_n = inv.terminal_by_label("N");
  inv.set_preferences(p, PreferenceRelation::from_pairs(3, {{t_n, t_i}}));
  inv.validate();
  RepeatedGameSpec inv_spec;
  inv_spec.constituent = inv;
  inv_spec.connected = {t_i, t_n};
  const int n = 3;
  auto invest_value = [&](const WholeHistory& h) {
    int invested = 0;
    for (int z : h) invested += (z == t_i) ? 1 : 0;
    if (invested == static_cast<int>(h.size()) && invested == n) return rat(n);
    return rat(-invested);
  };
  RelationFn induced = [&](const WholeHistory& x, const WholeHistory& y) {
    return invest_value(x) >= invest_value(y);
  };
  auto report = check_weak_separability(induced, inv_spec, n, 0);
  CHECK_FALSE(report.holds);
  // The reported witness is a genuine violation...
  CHECK(invest_value(report.better) < invest_value(report.worse));
  // ...and the canonical one (first-period N against all-invest) is among
  // the violated lifts.
  WholeHistory n_then_invest = {t_n, t_i, t_i};
  WholeHistory all_invest = {t_i, t_i, t_i};
  CHECK_FALSE(induced(n_then_invest, all_invest));

  // An empty constituent preference lifts vacuously.
  GameForm empty_pref = chain_store_constituent();
  empty_pref.set_preferences(1, PreferenceRelation(empty_pref.num_terminals() + 1));
  RepeatedGameSpec vac;
  vac.constituent = empty_pref;
  vac.connected = {0, 1, 2};
  RelationFn never = [](const WholeHistory&, const WholeHistory&) { return false; };
  CHECK(check_weak_separability(never, vac, 2, 1).holds);
}

TEST_CASE("check_huge_transitivity explicit chains") {
  RelationFn all = [](const WholeHistory&, const WholeHistory&) { return true; };
  std::vector<WholeHistory> constant = {{0}, {0}, {0}};
  CHECK(check_huge_transitivity(constant, all).holds);

  RelationFn fickle = [](const WholeHistory& x, const WholeHistory& y) {
    // Tolerates shrinking by one period per step, nothing more.
    return static_cast<int>(x.size()) + 1 >= static_cast<int>(y.size());
  };
  std::vector<WholeHistory> shrinking = {{0, 0, 0, 0}, {0, 0, 0}, {0, 0}, {0}};
  auto rep = check_huge_transitivity(shrinking, fickle);
  CHECK(rep.premise_holds);
  CHECK_FALSE(rep.holds);
}

TEST_CASE("check_huge_transitivity symbolic chains") {
  // Payoffs 1/tau and 2/tau per period: the values along h_t = h^(tau-t) j^t
  // are 1 + t/tau. Each step is indiscernible yet the endpoints are not,
  // so the decreasing-direction chain breaks.
  auto value_up = [](const NonStdNum& k) {
    Residue r = k.unit_coef().sign() > 0 ? Residue::PosInfSmall
                                         : (k.unit_coef().sign() < 0 ? Residue::NegInfSmall
                                                                     : Residue::Zero);
    return NonStdNum(rat(0), rat(1) + k.tau_coef(), r);
  };
  SymbolicChain up;
  up.length = NonStdNum::tau();
  up.value_at = value_up;
  up.probes = {NonStdNum(rat(0), rat(0)), NonStdNum(rat(0), rat(3)),
               NonStdNum(rat(1, 4), rat(0)), NonStdNum(rat(1, 2), rat(0)),
               NonStdNum(rat(1), rat(-2)), NonStdNum::tau()};
  auto up_report = check_huge_transitivity(up);
  CHECK(up_report.premise_holds);
  CHECK(up_report.holds);

  // Reversed: value decreases from 2 to 1 while every step stays inside a
  // monad; the endpoint pair violates huge transitivity.
  SymbolicChain down = up;
  down.value_at = [&](const NonStdNum& k) { return value_up(NonStdNum::tau() - k); };
  auto down_report = check_huge_transitivity(down);
  CHECK(down_report.premise_holds);
  CHECK_FALSE(down_report.holds);

  // Limit-of-means monad patching: finitely many null patches leave the
  // mean at 1, a huge union moves it to 2.
  SymbolicChain patches;
  patches.length = NonStdNum::tau();
  patches.value_at = [](const NonStdNum& k) {
    if (k.is_huge()) return NonStdNum(rat(0), rat(2));
    if (k.unit_coef().sign() > 0) return NonStdNum(rat(0), rat(1), Residue::PosInfSmall);
    return NonStdNum(rat(0), rat(1));
  };
  patches.probes = {NonStdNum(rat(0), rat(0)), NonStdNum(rat(0), rat(1)),
                    NonStdNum(rat(0), rat(5)), NonStdNum::tau()};
  CHECK(check_huge_transitivity(patches).holds);
  SymbolicChain patches_down = patches;
  patches_down.value_at = [&](const NonStdNum& k) {
    return patches.value_at(NonStdNum::tau() - k);
  };
  auto pd = check_huge_transitivity(patches_down);
  CHECK(pd.premise_holds);
  CHECK_FALSE(pd.holds);
}

TEST_CASE("check_dynamic_consistency") {
  RepeatedGameSpec spec = centipede_spec();
  TablePayoff model(centipede_table());
  int d_term = spec.constituent.terminal_by_label("D");
  auto verdicts = check_dynamic_consistency(spec, model, Criterion::simple(), d_term);
  REQUIRE(verdicts.size() == 2);
  CHECK(verdicts[0] == DynamicConsistency::Exact);
  CHECK(verdicts[1] == DynamicConsistency::Exact);

  // (Rr,D) strictly better than (Rr) for player 2 breaks the condition
  // in the direction an unconnected equilibrium outcome cannot absorb.
  PayoffTable bumped = centipede_table();
  bumped.values["D"] = {rat(0), rat(2)};
  TablePayoff bumped_model(bumped);
  auto bad = check_dynamic_consistency(spec, bumped_model, Criterion::simple(), d_term);
  CHECK(bad[0] == DynamicConsistency::Exact);
  CHECK(bad[1] == DynamicConsistency::Fails);

  // Strictly costly continuation with an unconnected outcome relaxes
  // weakly-worse.
  PayoffTable costly = centipede_table();
  costly.values["D"] = {rat(-1), rat(-1)};
  auto worse = check_dynamic_consistency(spec, TablePayoff(costly), Criterion::simple(), d_term);
  CHECK(worse[0] == DynamicConsistency::RelaxedWeaklyWorse);
  CHECK(worse[1] == DynamicConsistency::RelaxedWeaklyWorse);
}

TEST_CASE("repeat of the constituent equilibrium is subgame perfect") {
  // Centipede n in {2, 5} under the simple-sum criterion.
  RepeatedGameSpec spec = centipede_spec();
  TablePayoff model(centipede_table());
  for (int n : {2, 5}) {
    RepeatedGame rg = build_finite_repeated(spec, n);
    apply_criterion_preferences(rg, spec, model, Criterion::simple());
    auto bi = backward_induction(spec.constituent);
    REQUIRE(bi.size() == 1);
    StrategyProfile repeated = repeat_profile(rg, spec, bi[0]);
    CHECK(is_spe(rg.game, repeated, NashSemantics::NoStrictImprovement).holds);
    CHECK(is_spe(rg.game, repeated, NashSemantics::RequiresWeakPreference).holds);
  }

  // Chain store n=2 under the lifted partial order.
  RepeatedGameSpec cs = chain_store_spec();
  LiftedPreference lifted = lift_preferences(cs, 2, {});
  RepeatedGame rg = build_finite_repeated(cs, 2);
  apply_lifted_preferences(rg, cs, lifted);
  auto bi = backward_induction(cs.constituent);
  REQUIRE(bi.size() == 1);
  StrategyProfile repeated = repeat_profile(rg, cs, bi[0]);
  CHECK(is_spe(rg.game, repeated, NashSemantics::NoStrictImprovement).holds);

  // And it is the only one under no-strict-improvement semantics.
  int spe_count = 0;
  for (const auto& s : enumerate_profiles(rg.game))
    if (is_spe(rg.game, s, NashSemantics::NoStrictImprovement).holds) ++spe_count;
  CHECK(spe_count == 1);
}

TEST_CASE("centipede n=5 unique SPE under the simple sum") {
  RepeatedGameSpec spec = centipede_spec();
  TablePayoff model(centipede_table());
  RepeatedGame rg = build_finite_repeated(spec, 5);
  apply_criterion_preferences(rg, spec, model, Criterion::simple());

  // Leaf payoffs of the 5-repeated game.
  std::map<std::string, std::pair<Rational, Rational>> payoffs;
  for (int t = 0; t < rg.game.num_terminals(); ++t) {
    std::vector<std::string> labels;
    for (int z : rg.leaf_history[t]) labels.push_back(spec.constituent.terminal_label(z));
    payoffs[rg.game.terminal_label(t)] = {
        eval_simple(labels, model.table(), 0), eval_simple(labels, model.table(), 1)};
  }
  CHECK(payoffs.at("(D)") == std::make_pair(rat(0), rat(0)));
  CHECK(payoffs.at("(Rr,Rd)") == std::make_pair(rat(1), rat(5)));
  CHECK(payoffs.at("(Rr,Rr,Rr,Rr,Rd)") == std::make_pair(rat(7), rat(11)));
  CHECK(payoffs.at("(Rr,Rr,Rr,Rr,Rr)") == std::make_pair(rat(10), rat(10)));

  int spe_count = 0;
  StrategyProfile found;
  for (const auto& s : enumerate_profiles(rg.game))
    if (is_spe(rg.game, s, NashSemantics::NoStrictImprovement).holds) {
      ++spe_count;
      found = s;
    }
  CHECK(spe_count == 1);
  // Quit and take everywhere.
  for (int id = 0; id < rg.game.num_nodes(); ++id) {
    if (rg.game.is_terminal(id)) continue;
    int owner = rg.game.node(id).owner;
    CHECK(found.at(owner, id) == (owner == 0 ? "D" : "d"));
  }
}
