#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "taugame/equilibria.hpp"

namespace taugame {
namespace catalog {

// A built-in game: constituent, connected set, payoff model, and the
// strategic form when the game is a one-shot matrix game.
struct CatalogEntry {
  std::string id;
  std::string summary;
  RepeatedGameSpec spec;                     // horizon left at its default
  std::shared_ptr<PayoffModel> model;
  std::optional<PayoffTable> table;          // present for table-backed entries
  std::optional<StrategicGame> strategic;    // present for matrix games
  std::optional<MixedProfile> mixed_nash;    // e.g. Bach-or-Stravinsky
};

std::vector<std::string> ids();
CatalogEntry get(const std::string& id);  // throws std::out_of_range on unknown ids

// Whole-history payoff for the ultra-long-term investment problem: costs
// pile up per invested period, the full-investment path alone nets the
// huge return.
class InvestmentPayoff : public PayoffModel {
 public:
  NonStdNum payoff(const SegmentedWholeHistory& h, int player, const Criterion& c) const override;
  NonStdNum payoff(const std::vector<std::string>& h, int player, const Criterion& c,
                   int horizon) const override;
};

// Whole-history payoff for the lifestyle-disease problem: eating pleases
// now and punishes at the distant future, unless the end is finitely near.
class LifestylePayoff : public PayoffModel {
 public:
  NonStdNum payoff(const SegmentedWholeHistory& h, int player, const Criterion& c) const override;
  NonStdNum payoff(const std::vector<std::string>& h, int player, const Criterion& c,
                   int horizon) const override;
};

// Entry-specific families of the two single-person decision problems.
std::unique_ptr<StrategyFamily> investment_family();       // invest while unbroken
std::unique_ptr<StrategyFamily> lifestyle_avoid_family();  // avoid until the end is near
std::unique_ptr<StrategyFamily> lifestyle_eat_family();    // always eat

// Golden expectations for every entry, one pass/fail line each.
struct RunReport {
  int passed = 0;
  int failed = 0;
  std::vector<std::string> lines;          // "ok <name>" / "FAIL <name>: <detail>"
  std::string first_failure;
};

RunReport run_all();

}  // namespace catalog
}  // namespace taugame
