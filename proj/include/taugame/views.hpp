#pragma once

#include <string>
#include <variant>
#include <vector>

#include "taugame/nonstd.hpp"

namespace taugame {

enum class ViewKind { Perspective, BirdsEye };

std::string view_name(ViewKind v);

// --- Position classes -------------------------------------------------------
//
// Perspective view: finitely indexed periods at either end stay separate,
// everything hugely far from both ends is one distant-future monad.
// Bird's eye view: periods form a continuum of equal infinitesimal monads
// indexed by dyadic fractions of tau.

struct NearFuture {
  unsigned n = 0;  // period n+1
  friend bool operator==(const NearFuture&, const NearFuture&) = default;
};
struct DistantFuture {
  friend bool operator==(const DistantFuture&, const DistantFuture&) = default;
};
struct NearEnd {
  unsigned n = 0;  // period tau - n
  friend bool operator==(const NearEnd&, const NearEnd&) = default;
};
struct MonadPoint {
  unsigned i = 0;
  unsigned j = 0;  // i < 2 forces j = 0; otherwise j < 2^(i-2)
  friend bool operator==(const MonadPoint&, const MonadPoint&) = default;
};
struct FractionInterval {
  Rational lo;
  Rational hi;  // lo < hi within [0,1]
  friend bool operator==(const FractionInterval&, const FractionInterval&) = default;
};

using PositionClass = std::variant<NearFuture, DistantFuture, NearEnd, MonadPoint, FractionInterval>;

bool is_perspective_class(const PositionClass& p);
std::string position_text(const PositionClass& p);

// t_i of the perspective choice class: i = 0 is the distant-future
// representative tau/2, odd i counts back from the end, even i >= 2 counts
// forward from the start.
PositionClass perspective_choice_point(unsigned i);

// Infinite as soon as the distant-future monad is in the set; plain
// cardinality otherwise. Throws on non-perspective members.
ExtReal perspective_measure(const std::vector<PositionClass>& points);

// t_(i,j) as a fraction of tau: 0 for i=0 (the start marker, period 1),
// 1 for i=1 (period tau), (2j+1)/2^(i-1) otherwise. Throws on out-of-range j.
Rational birdseye_choice_point(unsigned i, unsigned j);

// Probability measure on the continuum: an interval weighs its width,
// a single monad weighs exactly 0.
Rational birdseye_measure(const FractionInterval& interval);
Rational birdseye_measure(const MonadPoint& point);

// --- Segmented whole histories ----------------------------------------------

// Payload of one segment: a constituent terminal, or a periodic cycle of
// terminals (a mixed unit tiled over the run).
struct SegmentPayload {
  std::vector<std::string> cycle;  // size 1 = constant run

  SegmentPayload() = default;
  SegmentPayload(std::string terminal) : cycle{std::move(terminal)} {}  // NOLINT
  SegmentPayload(std::vector<std::string> c) : cycle(std::move(c)) {}   // NOLINT

  bool constant() const { return cycle.size() == 1; }
  friend bool operator==(const SegmentPayload&, const SegmentPayload&) = default;
};

struct Segment {
  NonStdNum length;  // tau_coef in [0,1], residue zero; finite lengths >= 1
  SegmentPayload payload;
  friend bool operator==(const Segment&, const Segment&) = default;
};

// A tau-whole history as finitely many runs. Segments sum to tau for a
// full-span history; a smaller total means play stopped (the last period
// ended outside C).
struct SegmentedWholeHistory {
  ViewKind view = ViewKind::Perspective;
  std::vector<Segment> segments;

  NonStdNum total_length() const;
  bool full_span() const;
  std::string str() const;  // "h*1, j*rest" style, fractions for bird's eye
  friend bool operator==(const SegmentedWholeHistory&, const SegmentedWholeHistory&) = default;
};

// Helpers for building histories.
SegmentedWholeHistory whole_history(ViewKind view, std::vector<Segment> segments);
Segment run(NonStdNum length, SegmentPayload payload);

// Validates each segment length, merges adjacent equal payloads, drops
// zero-length runs. Requires the lengths to sum to tau exactly; idempotent.
SegmentedWholeHistory canonicalize(const SegmentedWholeHistory& h);

// Merge without the full-span requirement (for terminated play).
SegmentedWholeHistory merge_runs(SegmentedWholeHistory h);

// Perspective: exactly one huge block (the distant future is constant).
// Bird's eye: every run is a positive fraction of tau.
bool consistent_with_view(const SegmentedWholeHistory& h, ViewKind v);

}  // namespace taugame
