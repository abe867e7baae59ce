#include <doctest.h>

#include "taugame/textio.hpp"

using namespace taugame;

namespace {

const char* kCentipedeText = R"(# the quit-or-continue game
game centipede
player 1 core
player 2 core
tree 1
  R player 2
    r -> Rr
    d -> Rd
  D
connected Rr
payoff 1 D=0 Rd=-1 Rr=2
payoff 2 D=0 Rd=3 Rr=2
)";

}  // namespace

TEST_CASE("parse a tree description") {
  GameDescription game = parse_game_description(kCentipedeText);
  CHECK(game.id == "centipede");
  const GameForm& g = game.spec.constituent;
  CHECK(g.num_players() == 2);
  CHECK(g.num_terminals() == 3);
  CHECK(g.terminal_by_label("Rr") >= 0);
  CHECK(g.terminal_by_label("Rd") >= 0);
  CHECK(g.terminal_by_label("D") >= 0);
  CHECK(game.spec.connected == std::vector<int>{g.terminal_by_label("Rr")});
  REQUIRE(game.table.has_value());
  CHECK(game.table->at("Rd", 1) == Rational(3));
  // Payoff order induces the preferences.
  CHECK(g.preferences(0).strictly(g.terminal_by_label("Rr"), g.terminal_by_label("D")));
  CHECK(g.preferences(1).strictly(g.terminal_by_label("Rd"), g.terminal_by_label("Rr")));
}

TEST_CASE("parse a matrix description") {
  const char* text = R"(game bos
player B core
player S core
simultaneous B S
actions B B S
actions S B S
connected *
payoff B (B,B)=2 (B,S)=0 (S,B)=0 (S,S)=1
payoff S (B,B)=1 (B,S)=0 (S,B)=0 (S,S)=2
)";
  GameDescription game = parse_game_description(text);
  CHECK(game.strategic.has_value());
  CHECK(game.spec.constituent.num_terminals() == 4);
  CHECK(game.spec.connected.size() == 4);
  CHECK(game.strategic->payoffs[0][0] == Rational(2));
}

TEST_CASE("parse errors carry line numbers") {
  // Decimal payoffs are rejected.
  std::string decimal = kCentipedeText;
  std::size_t pos = decimal.find("Rd=-1");
  decimal.replace(pos, 5, "Rd=0.5");
  try {
    parse_game_description(decimal);
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    std::string what = e.what();
    CHECK(what.find("rationals must be p/q") != std::string::npos);
    CHECK(what.find("line 10") != std::string::npos);
  }

  // Connected set naming a non-terminal.
  std::string bad_connected = kCentipedeText;
  pos = bad_connected.find("connected Rr");
  bad_connected.replace(pos, 12, "connected Rx");
  CHECK_THROWS_WITH_AS(parse_game_description(bad_connected),
                       "line 9: connected set names a non-terminal \"Rx\"",
                       std::invalid_argument);

  // Duplicate actions at a node.
  const char* dup = R"(game g
player 1 core
tree 1
  a
  a
connected *
payoff 1 a=1
)";
  CHECK_THROWS_AS(parse_game_description(dup), std::invalid_argument);
}

TEST_CASE("catalog entries round-trip through the description format") {
  for (const auto& id : catalog::ids()) {
    auto entry = catalog::get(id);
    if (!entry.table) continue;  // the decision problems carry custom payoffs
    GameDescription original = from_catalog(entry);
    std::string text = export_game_description(original);
    GameDescription parsed = parse_game_description(text);
    CHECK(parsed.id == original.id);
    CHECK(export_game_description(parsed) == text);  // idempotent
    const GameForm& a = original.spec.constituent;
    const GameForm& b = parsed.spec.constituent;
    REQUIRE(a.num_terminals() == b.num_terminals());
    for (int t = 0; t < a.num_terminals(); ++t) {
      CHECK(a.terminal_label(t) == b.terminal_label(t));
      for (int p = 0; p < a.num_players(); ++p)
        CHECK(original.table->at(a.terminal_label(t), p) ==
              parsed.table->at(b.terminal_label(t), p));
    }
    CHECK(original.spec.connected == parsed.spec.connected);
  }
}

TEST_CASE("dot output is deterministic and matches the figure counts") {
  auto entry = catalog::get("chain-store");
  RepeatedGameSpec spec = entry.spec;
  spec.horizon = FiniteHorizon{2};
  LiftedPreference lifted = lift_preferences(spec, 2, {});
  RepeatedGame rg = build_finite_repeated(spec, 2);
  apply_lifted_preferences(rg, spec, lifted);
  std::vector<std::string> labels;
  for (int t = 0; t < rg.game.num_terminals(); ++t) labels.push_back(rg.game.terminal_label(t));
  HasseDiagram d = hasse(rg.game.preferences(0), labels);
  std::string dot = to_dot(d);
  CHECK(dot == to_dot(d));
  // 9 labelled nodes, 12 edges.
  std::size_t nodes = 0, edges = 0, at = 0;
  while ((at = dot.find("[label=", at)) != std::string::npos) {
    ++nodes;
    ++at;
  }
  at = 0;
  while ((at = dot.find(" -> ", at)) != std::string::npos) {
    ++edges;
    ++at;
  }
  CHECK(nodes == 9);
  CHECK(edges == 12);
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("rank=same") != std::string::npos);
}

TEST_CASE("report rendering sorts keys") {
  std::string text = render_report("check", {{"zeta", "1"}, {"alpha", "2"}});
  CHECK(text == "[check]\nalpha: 2\nzeta: 1\n");
}
