#include <doctest.h>

#include <cstdint>
#include <vector>

#include "taugame/views.hpp"

using namespace taugame;

namespace {

Rational rat(std::int64_t n, std::int64_t d = 1) { return Rational(BigInt(n), BigInt(d)); }

NonStdNum len_units(std::int64_t n) { return NonStdNum(rat(0), rat(n)); }
NonStdNum len_tau_minus(std::int64_t n) { return NonStdNum(rat(1), rat(-n)); }
NonStdNum len_frac(std::int64_t num, std::int64_t den) { return NonStdNum(rat(num, den), rat(0)); }

}  // namespace

TEST_CASE("perspective choice points") {
  CHECK(perspective_choice_point(0) == PositionClass{DistantFuture{}});
  CHECK(perspective_choice_point(2) == PositionClass{NearFuture{0}});  // period 1
  CHECK(perspective_choice_point(1) == PositionClass{NearEnd{0}});     // period tau
  CHECK(perspective_choice_point(3) == PositionClass{NearEnd{1}});
  CHECK(perspective_choice_point(4) == PositionClass{NearFuture{1}});
  CHECK(perspective_choice_point(6) == PositionClass{NearFuture{2}});
}

TEST_CASE("perspective measure") {
  CHECK(perspective_measure({DistantFuture{}}) == ExtReal::pos_inf());
  CHECK(perspective_measure({}) == ExtReal::finite(rat(0)));
  CHECK(perspective_measure({NearFuture{0}, NearEnd{3}}) == ExtReal::finite(rat(2)));
  CHECK(perspective_measure({NearFuture{0}, DistantFuture{}, NearEnd{0}}) == ExtReal::pos_inf());
  CHECK_THROWS_AS(perspective_measure({MonadPoint{2, 0}}), std::invalid_argument);
}

TEST_CASE("birdseye choice points") {
  CHECK(birdseye_choice_point(2, 0) == rat(1, 2));
  CHECK(birdseye_choice_point(1, 0) == rat(1));
  CHECK(birdseye_choice_point(0, 0) == rat(0));
  CHECK(birdseye_choice_point(4, 2) == rat(5, 8));  // (2*2+1)/2^3
  CHECK_THROWS_AS(birdseye_choice_point(2, 1), std::out_of_range);
  CHECK_THROWS_AS(birdseye_choice_point(0, 1), std::out_of_range);
  CHECK_THROWS_AS(birdseye_choice_point(5, 8), std::out_of_range);
  CHECK(birdseye_choice_point(5, 7) == rat(15, 16));
}

TEST_CASE("birdseye measure") {
  CHECK(birdseye_measure(FractionInterval{rat(0), rat(1)}) == rat(1));

  // Counting oracle at tau = 2^20: periods with 1/4 < t/tau <= 3/4.
  Rational quarters = birdseye_measure(FractionInterval{rat(1, 4), rat(3, 4)});
  CHECK(quarters == rat(1, 2));
  const std::int64_t tau = 1 << 20;
  std::int64_t count = 0;
  for (std::int64_t t = 1; t <= tau; ++t)
    if (4 * t > tau && 4 * t <= 3 * tau) ++count;
  CHECK(rat(count, tau) == quarters);

  CHECK(birdseye_measure(MonadPoint{4, 2}) == rat(0));
  CHECK_THROWS_AS(birdseye_measure(FractionInterval{rat(3, 4), rat(1, 4)}), std::invalid_argument);
}

TEST_CASE("measure additivity") {
  // Disjoint decomposition of [0,1] into rational pieces.
  std::vector<FractionInterval> parts = {
      {rat(0), rat(1, 8)}, {rat(1, 8), rat(1, 3)}, {rat(1, 3), rat(5, 7)}, {rat(5, 7), rat(1)}};
  Rational sum(0);
  for (const auto& p : parts) sum += birdseye_measure(p);
  CHECK(sum == birdseye_measure(FractionInterval{rat(0), rat(1)}));
  // Adding monad points changes nothing.
  sum += birdseye_measure(MonadPoint{3, 1}) + birdseye_measure(MonadPoint{7, 5});
  CHECK(sum == rat(1));
}

TEST_CASE("sigma partition of concrete horizons") {
  // Perspective classes partition 1..T at any concrete horizon, with the
  // near-future/near-end cutoff K standing in for "finite".
  for (int e : {6, 10, 14}) {
    const std::int64_t T = std::int64_t(1) << e;
    const std::int64_t K = 8;
    for (std::int64_t t = 1; t <= T; ++t) {
      bool nf = t - 1 < K;
      bool ne = T - t < K;
      bool df = !nf && !ne;
      CHECK((int(nf) + int(ne) + int(df)) == 1);
    }
  }
}

TEST_CASE("canonicalize") {
  SegmentedWholeHistory h = whole_history(
      ViewKind::Perspective,
      {run(len_units(1), {"h"}), run(len_units(1), {"h"}), run(len_tau_minus(2), {"h"})});
  SegmentedWholeHistory c = canonicalize(h);
  REQUIRE(c.segments.size() == 1);
  CHECK(c.segments[0].length == NonStdNum::tau());
  CHECK(c.segments[0].payload == SegmentPayload{"h"});

  SegmentedWholeHistory already = whole_history(
      ViewKind::Perspective, {run(len_tau_minus(1), {"h"}), run(len_units(1), {"j"})});
  CHECK(canonicalize(already) == already);

  // Merge at the tail; oracle: period-by-period payloads at tau = 2^10.
  SegmentedWholeHistory tail = whole_history(
      ViewKind::Perspective,
      {run(len_units(1), {"h"}), run(len_tau_minus(2), {"j"}), run(len_units(1), {"j"})});
  SegmentedWholeHistory merged = canonicalize(tail);
  REQUIRE(merged.segments.size() == 2);
  CHECK(merged.segments[0] == run(len_units(1), {"h"}));
  CHECK(merged.segments[1] == run(len_tau_minus(1), {"j"}));
  {
    const std::int64_t tau = 1 << 10;
    auto expand = [&](const SegmentedWholeHistory& s) {
      std::vector<std::string> per_period;
      for (const auto& seg : s.segments) {
        std::int64_t n = (seg.length.tau_coef() * rat(tau) + seg.length.unit_coef())
                             .num()
                             .convert_to<std::int64_t>();
        for (std::int64_t i = 0; i < n; ++i) per_period.push_back(seg.payload.cycle.front());
      }
      return per_period;
    };
    CHECK(expand(tail) == expand(merged));
  }

  CHECK(canonicalize(merged) == merged);  // idempotent
  CHECK_THROWS_AS(
      canonicalize(whole_history(ViewKind::Perspective, {run(len_units(5), {"h"})})),
      std::invalid_argument);
}

TEST_CASE("view consistency") {
  SegmentedWholeHistory one_block = whole_history(
      ViewKind::Perspective, {run(len_units(2), {"h"}), run(len_tau_minus(2), {"j"})});
  CHECK(consistent_with_view(one_block, ViewKind::Perspective));

  SegmentedWholeHistory two_blocks = whole_history(
      ViewKind::Perspective, {run(len_frac(1, 2), {"h"}), run(len_frac(1, 2), {"j"})});
  CHECK_FALSE(consistent_with_view(two_blocks, ViewKind::Perspective));
  CHECK(consistent_with_view(two_blocks, ViewKind::BirdsEye));

  SegmentedWholeHistory patched = whole_history(
      ViewKind::BirdsEye,
      {run(len_frac(1, 2), {"h"}), run(len_units(1), {"j"}),
       run(NonStdNum(rat(1, 2), rat(-1)), {"h"})});
  CHECK_FALSE(consistent_with_view(patched, ViewKind::BirdsEye));
}

TEST_CASE("segment length validation") {
  CHECK_THROWS_AS(merge_runs(whole_history(
                      ViewKind::Perspective,
                      {run(NonStdNum(rat(0), rat(0), Residue::PosInfSmall), {"h"})})),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      merge_runs(whole_history(ViewKind::Perspective, {run(NonStdNum(rat(3, 2), rat(0)), {"h"})})),
      std::invalid_argument);
  CHECK_THROWS_AS(
      merge_runs(whole_history(ViewKind::Perspective, {run(len_units(-1), {"h"})})),
      std::invalid_argument);
}

// The Borel approximating sequences behind the two measures, reproduced at
// a concrete horizon tau = 2^20 for k <= 20.
TEST_CASE("borel approximating sequences") {
  const std::int64_t tau = 1 << 20;

  // Perspective, distant-future monad: |S_{0,k}| = tau - 2^k [k>=1] stays
  // above every fixed finite bound while k remains small against epsilon.
  for (int k = 1; k <= 19; ++k) {
    std::int64_t size = tau - (std::int64_t(1) << k);
    CHECK(size >= (1 << 10));
  }
  // Perspective, finite points t_i (i >= 1): |S_{i,k}| = [2^k >= i][k >= 1]
  // settles at exactly 1, the weight the measure assigns.
  for (int i = 1; i <= 32; ++i) {
    std::int64_t stable = -1;
    for (int k = 1; k <= 20; ++k) {
      std::int64_t size = ((std::int64_t(1) << k) >= i) ? 1 : 0;
      stable = size;
    }
    CHECK(stable == 1);
  }

  // Bird's eye: |S_{(i,j),k}| / tau = 1/2^(k-1+[i<2]) for k >= i drops
  // below every 1/m, matching the null weight of a single monad.
  for (int i : {0, 1, 3, 7}) {
    Rational last(1);
    for (int k = std::max(i, 1); k <= 20; ++k) {
      int shift = k - 1 + (i < 2 ? 1 : 0);
      last = rat(1, std::int64_t(1) << shift);
    }
    CHECK(last <= rat(1, 1 << 18));
  }

  // Interval counting g(k) = |{j : l < tau*j/2^(k-1) <= m}|: the fraction
  // g(k)/2^(k-1) approaches (m-l)/tau within 1/2^(k-1).
  auto g_fraction = [&](const Rational& lo, const Rational& hi, int k) {
    std::int64_t buckets = std::int64_t(1) << (k - 1);
    std::int64_t count = 0;
    for (std::int64_t j = 1; j <= buckets; ++j) {
      Rational pos = rat(j, buckets);
      if (lo < pos && pos <= hi) ++count;
    }
    return rat(count, buckets);
  };
  for (int k = 2; k <= 12; ++k) {
    CHECK(g_fraction(rat(1, 4), rat(3, 4), k) == rat(1, 2));  // dyadic endpoints: exact
    Rational approx = g_fraction(rat(0), rat(1, 3), k);
    Rational err = approx - rat(1, 3);
    if (err.sign() < 0) err = -err;
    CHECK(err <= rat(1, std::int64_t(1) << (k - 1)));
  }
}
