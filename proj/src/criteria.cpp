#include "taugame/criteria.hpp"

#include <stdexcept>

namespace taugame {

Criterion Criterion::discounted(Rational delta) {
  if (delta.sign() <= 0 || delta >= Rational(1))
    throw std::invalid_argument("discount factor must lie in (0,1); delta = 1 is the simple sum");
  return Criterion{Kind::DiscountedSum, std::move(delta)};
}

std::string Criterion::str() const {
  switch (kind) {
    case Kind::DiscountedSum: return "discounted:" + delta.str();
    case Kind::SimpleSum: return "simple";
    case Kind::Overtaking: return "overtaking";
    case Kind::LimitOfMeans: return "limit-of-means";
  }
  return {};
}

Criterion Criterion::parse(std::string_view text) {
  if (text == "simple") return simple();
  if (text == "overtaking") return overtaking();
  if (text == "limit-of-means") return limit_of_means();
  constexpr std::string_view prefix = "discounted:";
  if (text.substr(0, prefix.size()) == prefix)
    return discounted(Rational::parse(text.substr(prefix.size())));
  throw std::invalid_argument("unknown criterion \"" + std::string(text) +
                              "\" (want simple | discounted:p/q | overtaking | limit-of-means)");
}

const Rational& PayoffTable::at(const std::string& terminal, int player) const {
  auto it = values.find(terminal);
  if (it == values.end())
    throw std::out_of_range("payoff table has no entry for terminal \"" + terminal + "\"");
  if (player < 0 || player >= static_cast<int>(it->second.size()))
    throw std::out_of_range("payoff table has no value for player index " +
                            std::to_string(player));
  return it->second[player];
}

Rational PayoffTable::cycle_mean(const SegmentPayload& payload, int player) const {
  Rational sum(0);
  for (const auto& terminal : payload.cycle) sum += at(terminal, player);
  return sum / Rational(static_cast<std::int64_t>(payload.cycle.size()));
}

namespace {

void require_view(const SegmentedWholeHistory& h, ViewKind v, const char* what) {
  if (h.view != v)
    throw std::invalid_argument(std::string(what) + " expects a " + view_name(v) +
                                "-view history, got " + view_name(h.view));
}

unsigned long to_ulong(const Rational& r, const char* what) {
  if (!r.is_integer() || r.sign() < 0)
    throw std::invalid_argument(std::string(what) + ": expected small nonnegative integer");
  return r.num().convert_to<unsigned long>();
}

// Total payoff as a symbolic quantity: unit-weight periods, no discounting.
NonStdNum undiscounted_total(const SegmentedWholeHistory& h, const PayoffTable& u, int player) {
  NonStdNum total;
  for (const auto& seg : h.segments) {
    Rational value = seg.payload.constant() ? u.at(seg.payload.cycle.front(), player)
                                            : u.cycle_mean(seg.payload, player);
    total += seg.length * value;
  }
  return total;
}

Rational discounted_value(const SegmentedWholeHistory& h, const PayoffTable& u, int player,
                          const Rational& delta) {
  Rational value(0);
  unsigned long offset = 0;  // periods already consumed, exponent of the next delta power
  for (const auto& seg : h.segments) {
    if (seg.length.is_huge()) {
      // First huge run: its payload is the distant-future value; the tail
      // geometric series has an exact closed form, and every later term
      // (deeper huge runs, near-end runs) carries delta^huge which is
      // indiscernible from 0.
      if (!seg.payload.constant())
        throw std::invalid_argument("discounted sum over a cycle run is not defined");
      value += u.at(seg.payload.cycle.front(), player) * geometric_tail(delta, offset);
      return value;
    }
    unsigned long len = to_ulong(seg.length.unit_coef(), "discounted run length");
    if (seg.payload.constant()) {
      value += u.at(seg.payload.cycle.front(), player) * geometric_sum(delta, offset, len);
    } else {
      for (unsigned long t = 0; t < len; ++t)
        value += u.at(seg.payload.cycle[t % seg.payload.cycle.size()], player) *
                 Rational::pow(delta, offset + t);
    }
    offset += len;
  }
  return value;
}

}  // namespace

ExtReal eval_discounted(const SegmentedWholeHistory& h, const PayoffTable& u, int player,
                        const Rational& delta) {
  require_view(h, ViewKind::Perspective, "discounted sum");
  if (delta.sign() <= 0 || delta >= Rational(1))
    throw std::invalid_argument("discounted sum needs delta in (0,1)");
  return ExtReal::finite(discounted_value(h, u, player, delta));
}

ExtReal eval_simple(const SegmentedWholeHistory& h, const PayoffTable& u, int player) {
  require_view(h, ViewKind::Perspective, "simple sum");
  return collapse(undiscounted_total(h, u, player));
}

Ordering cmp_overtaking(const SegmentedWholeHistory& h1, const SegmentedWholeHistory& h2,
                        const PayoffTable& u, int player) {
  require_view(h1, ViewKind::Perspective, "overtaking");
  require_view(h2, ViewKind::Perspective, "overtaking");
  return nsn_cmp(undiscounted_total(h1, u, player), undiscounted_total(h2, u, player));
}

Rational eval_limit_means(const SegmentedWholeHistory& h, const PayoffTable& u, int player) {
  require_view(h, ViewKind::BirdsEye, "limit of means");
  Rational mean(0);
  for (const auto& seg : h.segments) {
    if (!seg.length.is_huge()) continue;  // finite patches are null
    Rational value = seg.payload.constant() ? u.at(seg.payload.cycle.front(), player)
                                            : u.cycle_mean(seg.payload, player);
    mean += seg.length.tau_coef() * value;
  }
  return mean;
}

Rational eval_discounted(const std::vector<std::string>& h, const PayoffTable& u, int player,
                         const Rational& delta) {
  Rational value(0);
  for (std::size_t t = 0; t < h.size(); ++t)
    value += u.at(h[t], player) * Rational::pow(delta, static_cast<unsigned long>(t));
  return value;
}

Rational eval_simple(const std::vector<std::string>& h, const PayoffTable& u, int player) {
  Rational value(0);
  for (const auto& terminal : h) value += u.at(terminal, player);
  return value;
}

Ordering cmp_overtaking(const std::vector<std::string>& h1, const std::vector<std::string>& h2,
                        const PayoffTable& u, int player) {
  Rational diff = eval_simple(h1, u, player) - eval_simple(h2, u, player);
  if (diff.sign() < 0) return Ordering::Less;
  if (diff.sign() > 0) return Ordering::Greater;
  return Ordering::Equal;
}

Rational eval_limit_means(const std::vector<std::string>& h, const PayoffTable& u, int player,
                          int horizon) {
  if (horizon <= 0) throw std::invalid_argument("limit of means needs a positive horizon");
  return eval_simple(h, u, player) / Rational(horizon);
}

CriterionFlags criterion_flags(const Criterion& c) {
  CriterionFlags f;
  switch (c.kind) {
    case Criterion::Kind::DiscountedSum:
      f = {true, false, true, true, false, ""};
      break;
    case Criterion::Kind::SimpleSum:
      f = {true, false, true, false, true,
           "sooner_better: derived swap-invariance only, not asserted"};
      break;
    case Criterion::Kind::Overtaking:
      f = {true, true, true, false, true,
           "commutativity: derived for finite swaps, not asserted; sooner_better: not claimed"};
      break;
    case Criterion::Kind::LimitOfMeans:
      f = {true, false, false, false, true, ""};
      break;
  }
  return f;
}

NonStdNum TablePayoff::payoff(const SegmentedWholeHistory& h, int player,
                              const Criterion& c) const {
  switch (c.kind) {
    case Criterion::Kind::DiscountedSum: {
      require_view(h, ViewKind::Perspective, "discounted sum");
      return NonStdNum(discounted_value(h, table_, player, c.delta));
    }
    case Criterion::Kind::SimpleSum:
    case Criterion::Kind::Overtaking:
      require_view(h, ViewKind::Perspective, c.kind == Criterion::Kind::SimpleSum ? "simple sum"
                                                                                  : "overtaking");
      return undiscounted_total(h, table_, player);
    case Criterion::Kind::LimitOfMeans:
      return NonStdNum(eval_limit_means(h, table_, player));
  }
  return {};
}

NonStdNum TablePayoff::payoff(const std::vector<std::string>& h, int player, const Criterion& c,
                              int horizon) const {
  switch (c.kind) {
    case Criterion::Kind::DiscountedSum:
      return NonStdNum(eval_discounted(h, table_, player, c.delta));
    case Criterion::Kind::SimpleSum:
    case Criterion::Kind::Overtaking:
      return NonStdNum(eval_simple(h, table_, player));
    case Criterion::Kind::LimitOfMeans:
      return NonStdNum(eval_limit_means(h, table_, player, horizon));
  }
  return {};
}

Ordering criterion_compare(const PayoffModel& model, const Criterion& c,
                           const SegmentedWholeHistory& h1, const SegmentedWholeHistory& h2,
                           int player) {
  NonStdNum a = model.payoff(h1, player, c);
  NonStdNum b = model.payoff(h2, player, c);
  if (c.kind == Criterion::Kind::Overtaking) return nsn_cmp(a, b);
  return ext_cmp(collapse(a), collapse(b));
}

Ordering criterion_compare(const PayoffModel& model, const Criterion& c,
                           const std::vector<std::string>& h1, const std::vector<std::string>& h2,
                           int player, int horizon) {
  NonStdNum a = model.payoff(h1, player, c, horizon);
  NonStdNum b = model.payoff(h2, player, c, horizon);
  if (c.kind == Criterion::Kind::Overtaking) return nsn_cmp(a, b);
  return ext_cmp(collapse(a), collapse(b));
}

}  // namespace taugame
