#pragma once

#include <map>
#include <string>
#include <vector>

#include "taugame/nonstd.hpp"
#include "taugame/views.hpp"

namespace taugame {

// One of the four payoff criteria. Discounted/simple sum and overtaking
// read a history through the perspective view, limit of means through the
// bird's eye view.
struct Criterion {
  enum class Kind { DiscountedSum, SimpleSum, Overtaking, LimitOfMeans };

  Kind kind = Kind::SimpleSum;
  Rational delta;  // DiscountedSum only, exact and in (0,1)

  static Criterion discounted(Rational delta);
  static Criterion simple() { return Criterion{Kind::SimpleSum, Rational(1)}; }
  static Criterion overtaking() { return Criterion{Kind::Overtaking, Rational(1)}; }
  static Criterion limit_of_means() { return Criterion{Kind::LimitOfMeans, Rational(1)}; }

  ViewKind view() const {
    return kind == Kind::LimitOfMeans ? ViewKind::BirdsEye : ViewKind::Perspective;
  }
  std::string str() const;
  // "discounted:1/5" | "simple" | "overtaking" | "limit-of-means"
  static Criterion parse(std::string_view text);

  friend bool operator==(const Criterion&, const Criterion&) = default;
};

// Per-terminal exact payoffs, one value per player. All values finite
// rationals; huge or infinitesimal payoffs are not admitted as game data.
struct PayoffTable {
  std::map<std::string, std::vector<Rational>> values;  // terminal label -> per player

  const Rational& at(const std::string& terminal, int player) const;
  Rational cycle_mean(const SegmentPayload& payload, int player) const;
};

// --- Huge-horizon evaluation (SegmentedWholeHistory) --------------------------

// Exact discounted sum: closed geometric forms over the finite front runs
// plus the tail of the first huge run; everything at huge depth collapses
// to exactly 0. Requires a perspective-view history and delta in (0,1).
ExtReal eval_discounted(const SegmentedWholeHistory& h, const PayoffTable& u, int player,
                        const Rational& delta);

// Sum of payoff * run length as a symbolic quantity, then collapsed.
ExtReal eval_simple(const SegmentedWholeHistory& h, const PayoffTable& u, int player);

// Sign of the exact symbolic difference of total payoffs; distinguishes
// 2*tau from tau where the simple sum cannot.
Ordering cmp_overtaking(const SegmentedWholeHistory& h1, const SegmentedWholeHistory& h2,
                        const PayoffTable& u, int player);

// Fraction-weighted average over the huge runs; finite patches are null.
Rational eval_limit_means(const SegmentedWholeHistory& h, const PayoffTable& u, int player);

// --- Finite-horizon evaluation (explicit whole histories) ---------------------

Rational eval_discounted(const std::vector<std::string>& h, const PayoffTable& u, int player,
                         const Rational& delta);
Rational eval_simple(const std::vector<std::string>& h, const PayoffTable& u, int player);
Ordering cmp_overtaking(const std::vector<std::string>& h1, const std::vector<std::string>& h2,
                        const PayoffTable& u, int player);
Rational eval_limit_means(const std::vector<std::string>& h, const PayoffTable& u, int player,
                          int horizon);

// --- Criterion-level properties ------------------------------------------------

struct CriterionFlags {
  bool weak_separability = false;
  bool strict_separability = false;
  bool huge_transitivity = false;
  bool sooner_better = false;
  bool commutativity = false;
  // Empty when every flag value is a stated property; otherwise names the
  // flags whose value is derived rather than asserted.
  std::string note;
};

CriterionFlags criterion_flags(const Criterion& c);

// --- Payoff models --------------------------------------------------------------

// Symbolic pre-collapse payoff of a whole history. The table-backed model
// covers every game with per-terminal payoffs; catalog entries with
// whole-history payoffs (investment bonus, delayed penalty) substitute
// their own.
class PayoffModel {
 public:
  virtual ~PayoffModel() = default;
  virtual NonStdNum payoff(const SegmentedWholeHistory& h, int player,
                           const Criterion& c) const = 0;
  virtual NonStdNum payoff(const std::vector<std::string>& h, int player, const Criterion& c,
                           int horizon) const = 0;
};

class TablePayoff : public PayoffModel {
 public:
  explicit TablePayoff(PayoffTable table) : table_(std::move(table)) {}
  const PayoffTable& table() const { return table_; }

  NonStdNum payoff(const SegmentedWholeHistory& h, int player, const Criterion& c) const override;
  NonStdNum payoff(const std::vector<std::string>& h, int player, const Criterion& c,
                   int horizon) const override;

 private:
  PayoffTable table_;
};

// h1 vs h2 for `player`: overtaking compares the symbolic difference before
// collapse, the other criteria compare collapsed values.
Ordering criterion_compare(const PayoffModel& model, const Criterion& c,
                           const SegmentedWholeHistory& h1, const SegmentedWholeHistory& h2,
                           int player);
Ordering criterion_compare(const PayoffModel& model, const Criterion& c,
                           const std::vector<std::string>& h1, const std::vector<std::string>& h2,
                           int player, int horizon);

}  // namespace taugame
