#include "taugame/views.hpp"

#include <stdexcept>

namespace taugame {

std::string view_name(ViewKind v) {
  return v == ViewKind::Perspective ? "perspective" : "birdseye";
}

bool is_perspective_class(const PositionClass& p) {
  return std::holds_alternative<NearFuture>(p) || std::holds_alternative<DistantFuture>(p) ||
         std::holds_alternative<NearEnd>(p);
}

std::string position_text(const PositionClass& p) {
  struct Visitor {
    std::string operator()(const NearFuture& x) const {
      return "period " + std::to_string(x.n + 1);
    }
    std::string operator()(const DistantFuture&) const { return "distant-future"; }
    std::string operator()(const NearEnd& x) const {
      return x.n == 0 ? "period tau" : "period tau-" + std::to_string(x.n);
    }
    std::string operator()(const MonadPoint& x) const {
      return "monad(" + std::to_string(x.i) + "," + std::to_string(x.j) + ")";
    }
    std::string operator()(const FractionInterval& x) const {
      return "[" + x.lo.str() + "," + x.hi.str() + "]";
    }
  };
  return std::visit(Visitor{}, p);
}

PositionClass perspective_choice_point(unsigned i) {
  if (i == 0) return DistantFuture{};
  if (i % 2 == 1) return NearEnd{(i - 1) / 2};
  return NearFuture{i / 2 - 1};
}

ExtReal perspective_measure(const std::vector<PositionClass>& points) {
  std::int64_t count = 0;
  for (const auto& p : points) {
    if (!is_perspective_class(p))
      throw std::invalid_argument("perspective_measure: bird's-eye class in input");
    if (std::holds_alternative<DistantFuture>(p)) return ExtReal::pos_inf();
    ++count;
  }
  return ExtReal::finite(Rational(count));
}

Rational birdseye_choice_point(unsigned i, unsigned j) {
  if (i < 2) {
    if (j != 0) throw std::out_of_range("birdseye_choice_point: j must be 0 for i < 2");
    return Rational(static_cast<std::int64_t>(i));  // tau^0 -> period 1 -> fraction 0; tau^1 -> 1
  }
  BigInt bound = BigInt(1) << (i - 2);
  if (BigInt(j) >= bound) throw std::out_of_range("birdseye_choice_point: j out of range");
  return Rational(BigInt(2) * j + 1, BigInt(1) << (i - 1));
}

Rational birdseye_measure(const FractionInterval& interval) {
  if (interval.lo < Rational(0) || interval.hi > Rational(1) || !(interval.lo < interval.hi))
    throw std::invalid_argument("birdseye_measure: interval must satisfy 0 <= lo < hi <= 1");
  return interval.hi - interval.lo;
}

Rational birdseye_measure(const MonadPoint&) {
  // The rational cut 1/FN of a single monad is indiscernible from 0.
  return Rational(0);
}

NonStdNum SegmentedWholeHistory::total_length() const {
  NonStdNum total;
  for (const auto& s : segments) total += s.length;
  return total;
}

bool SegmentedWholeHistory::full_span() const {
  return total_length() == NonStdNum::tau();
}

std::string SegmentedWholeHistory::str() const {
  std::string out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i) out += ", ";
    const auto& seg = segments[i];
    if (seg.payload.constant()) {
      out += seg.payload.cycle.front();
    } else {
      out += "cycle(";
      for (std::size_t k = 0; k < seg.payload.cycle.size(); ++k) {
        if (k) out += ' ';
        out += seg.payload.cycle[k];
      }
      out += ")";
    }
    out += '*';
    const NonStdNum& len = seg.length;
    if (len.tau_coef().is_zero()) {
      out += len.unit_coef().str();
    } else if (len.tau_coef() == Rational(1) && len.unit_coef().is_zero()) {
      out += "rest";
    } else if (len.unit_coef().is_zero()) {
      out += len.tau_coef().str();
    } else {
      out += "(" + len.str() + ")";
    }
  }
  return out;
}

SegmentedWholeHistory whole_history(ViewKind view, std::vector<Segment> segments) {
  SegmentedWholeHistory h;
  h.view = view;
  h.segments = std::move(segments);
  return h;
}

Segment run(NonStdNum length, SegmentPayload payload) {
  return Segment{std::move(length), std::move(payload)};
}

namespace {

void validate_length(const NonStdNum& len) {
  if (len.residue() != Residue::Zero)
    throw std::invalid_argument("segment length must have zero residue");
  if (len.tau_coef().sign() < 0 || len.tau_coef() > Rational(1))
    throw std::invalid_argument("segment length tau part must lie in [0,1]");
  if (len.tau_coef().is_zero() && len.unit_coef().sign() < 0)
    throw std::invalid_argument("segment length must be nonnegative");
}

}  // namespace

SegmentedWholeHistory merge_runs(SegmentedWholeHistory h) {
  std::vector<Segment> merged;
  for (auto& seg : h.segments) {
    validate_length(seg.length);
    if (seg.length == NonStdNum(Rational(0))) continue;
    if (!merged.empty() && merged.back().payload == seg.payload) {
      merged.back().length += seg.length;
    } else {
      merged.push_back(std::move(seg));
    }
  }
  h.segments = std::move(merged);
  return h;
}

SegmentedWholeHistory canonicalize(const SegmentedWholeHistory& h) {
  if (!h.full_span())
    throw std::invalid_argument("canonicalize: segment lengths must sum to tau, got " +
                                h.total_length().str());
  return merge_runs(h);
}

bool consistent_with_view(const SegmentedWholeHistory& h, ViewKind v) {
  if (v == ViewKind::Perspective) {
    int huge_blocks = 0;
    for (const auto& s : h.segments)
      if (s.length.is_huge()) ++huge_blocks;
    return huge_blocks == 1;
  }
  for (const auto& s : h.segments)
    if (!s.length.is_huge()) return false;
  return true;
}

}  // namespace taugame
