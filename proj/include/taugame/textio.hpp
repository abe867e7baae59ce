#pragma once

#include <optional>
#include <string>
#include <vector>

#include "taugame/catalog.hpp"
#include "taugame/repeated.hpp"

namespace taugame {

// A parsed game description: the constituent with its connected set, plus
// exact payoffs and the strategic form when the game is a matrix game.
struct GameDescription {
  std::string id;
  RepeatedGameSpec spec;
  std::optional<PayoffTable> table;
  std::optional<StrategicGame> strategic;
};

// Line-based description format:
//
//   game centipede
//   player 1 core
//   player 2 core
//   tree 1
//     R player 2
//       r -> Rr
//       d -> Rd
//     D
//   connected Rr
//   payoff 1 D=0 Rd=-1 Rr=2
//   payoff 2 D=0 Rd=3 Rr=2
//
// Matrix games replace the tree with "simultaneous"/"actions" lines and may
// alias profile labels. Preferences come from the payoffs when present,
// otherwise from "prefer <player> a > b > c" chains. Payoffs must be exact
// rationals p/q. Errors carry the line number.
GameDescription parse_game_description(const std::string& text);

// Deterministic regeneration of the format; parse(export(x)) == x
// structurally, and export is idempotent over parse.
std::string export_game_description(const GameDescription& game);

GameDescription from_catalog(const catalog::CatalogEntry& entry);

// DOT rendering of a Hasse diagram: deterministic node order, one rank per
// longest-path depth so the layering matches the cover structure.
std::string to_dot(const HasseDiagram& d, const std::string& graph_name = "hasse");

// "key: value" lines sorted by key, one section header per group.
std::string render_report(const std::string& title,
                          std::vector<std::pair<std::string, std::string>> fields);

}  // namespace taugame
