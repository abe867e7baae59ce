#include <doctest.h>

#include <random>

#include "taugame/criteria.hpp"

using namespace taugame;

namespace {

Rational rat(std::int64_t n, std::int64_t d = 1) { return Rational(BigInt(n), BigInt(d)); }

NonStdNum len_units(std::int64_t n) { return NonStdNum(rat(0), rat(n)); }
NonStdNum len_frac(std::int64_t num, std::int64_t den, std::int64_t off = 0) {
  return NonStdNum(rat(num, den), rat(off));
}

PayoffTable pd_table(std::int64_t sc) {
  PayoffTable u;
  u.values["CS"] = {rat(0), rat(0)};
  u.values["SS"] = {rat(-1), rat(-1)};
  u.values["CC"] = {rat(-3), rat(-3)};
  u.values["SC"] = {rat(sc), rat(sc)};
  return u;
}

PayoffTable centipede_table() {
  PayoffTable u;
  u.values["D"] = {rat(0), rat(0)};
  u.values["Rd"] = {rat(-1), rat(3)};
  u.values["Rr"] = {rat(2), rat(2)};
  return u;
}

std::mt19937 rng(424242);

}  // namespace

TEST_CASE("criterion parsing") {
  CHECK(Criterion::parse("simple").kind == Criterion::Kind::SimpleSum);
  CHECK(Criterion::parse("overtaking").kind == Criterion::Kind::Overtaking);
  CHECK(Criterion::parse("limit-of-means").view() == ViewKind::BirdsEye);
  Criterion d = Criterion::parse("discounted:1/5");
  CHECK(d.kind == Criterion::Kind::DiscountedSum);
  CHECK(d.delta == rat(1, 5));
  CHECK(d.str() == "discounted:1/5");
  CHECK_THROWS_AS(Criterion::parse("discounted:1"), std::invalid_argument);
  CHECK_THROWS_AS(Criterion::parse("mean"), std::invalid_argument);
}

TEST_CASE("discounted sum on 2-period explicit histories") {
  // U1 = (CS:0, SS:-1, CC:-3, SC:-5), delta = 1/5.
  PayoffTable u = pd_table(-5);
  CHECK(eval_discounted({"CS", "SC"}, u, 0, rat(1, 5)) == rat(-1));
  CHECK(eval_discounted({"CC", "CS"}, u, 0, rat(1, 5)) == rat(-3));
  // Lowering SC to -25 reverses the order.
  PayoffTable u2 = pd_table(-25);
  CHECK(eval_discounted({"CS", "SC"}, u2, 0, rat(1, 5)) == rat(-5));
  CHECK(eval_discounted({"CC", "CS"}, u2, 0, rat(1, 5)) == rat(-3));

  PayoffTable zeros;
  zeros.values["z"] = {rat(0)};
  CHECK(eval_discounted({"z", "z", "z"}, zeros, 0, rat(1, 5)) == rat(0));
}

TEST_CASE("simple sum at a huge horizon") {
  PayoffTable u = centipede_table();
  SegmentedWholeHistory all_rr =
      whole_history(ViewKind::Perspective, {run(NonStdNum::tau(), {"Rr"})});
  CHECK(eval_simple(all_rr, u, 0) == ExtReal::pos_inf());
  CHECK(eval_simple(all_rr, u, 1) == ExtReal::pos_inf());

  SegmentedWholeHistory near_end_rd = whole_history(
      ViewKind::Perspective, {run(NonStdNum(rat(1), rat(-1)), {"Rr"}), run(len_units(1), {"Rd"})});
  // Player 2 total is 2(tau-1)+3 = 2*tau+1.
  TablePayoff model(u);
  NonStdNum total = model.payoff(near_end_rd, 1, Criterion::simple());
  CHECK(total == NonStdNum(rat(2), rat(1)));
  CHECK(eval_simple(near_end_rd, u, 1) == ExtReal::pos_inf());

  CHECK(eval_simple({"Rr", "Rr", "Rr", "Rr", "Rd"}, u, 1) == rat(11));
  CHECK(eval_simple({"Rr", "Rr", "Rr", "Rr", "Rd"}, u, 0) == rat(7));

  SegmentedWholeHistory birds = whole_history(ViewKind::BirdsEye, {run(NonStdNum::tau(), {"Rr"})});
  CHECK_THROWS_AS(eval_simple(birds, u, 0), std::invalid_argument);
}

TEST_CASE("discounted sum at a huge horizon") {
  PayoffTable u = centipede_table();
  SegmentedWholeHistory all_rr =
      whole_history(ViewKind::Perspective, {run(NonStdNum::tau(), {"Rr"})});
  // 2/(1-1/5) = 5/2.
  CHECK(eval_discounted(all_rr, u, 0, rat(1, 5)) == ExtReal::finite(rat(5, 2)));

  // A near-future prefix counts exactly, near-end runs collapse to zero.
  SegmentedWholeHistory mixed = whole_history(
      ViewKind::Perspective, {run(len_units(2), {"D"}), run(NonStdNum(rat(1), rat(-3)), {"Rr"}),
                              run(len_units(1), {"Rd"})});
  // 0 + 0 + sum_{t>=3} (1/5)^(t-1)*2 = 2*(1/25)/(4/5) = 1/10.
  CHECK(eval_discounted(mixed, u, 0, rat(1, 5)) == ExtReal::finite(rat(1, 10)));
  CHECK_THROWS_AS(eval_discounted(all_rr, u, 0, rat(1)), std::invalid_argument);
}

TEST_CASE("overtaking comparisons") {
  PayoffTable u;
  u.values["h"] = {rat(1)};
  u.values["j"] = {rat(2)};
  SegmentedWholeHistory all_h = whole_history(ViewKind::Perspective, {run(NonStdNum::tau(), {"h"})});
  SegmentedWholeHistory all_j = whole_history(ViewKind::Perspective, {run(NonStdNum::tau(), {"j"})});
  CHECK(cmp_overtaking(all_h, all_j, u, 0) == Ordering::Less);
  CHECK(cmp_overtaking(all_h, all_h, u, 0) == Ordering::Equal);

  PayoffTable cp = centipede_table();
  SegmentedWholeHistory all_rr =
      whole_history(ViewKind::Perspective, {run(NonStdNum::tau(), {"Rr"})});
  SegmentedWholeHistory near_end_rd = whole_history(
      ViewKind::Perspective, {run(NonStdNum(rat(1), rat(-1)), {"Rr"}), run(len_units(1), {"Rd"})});
  CHECK(cmp_overtaking(all_rr, near_end_rd, cp, 1) == Ordering::Less);

  // Finite-horizon oracle at tau = 2^10: partial sums decide the same way.
  {
    const int tau = 1 << 10;
    Rational a(0), b(0);
    for (int t = 1; t <= tau; ++t) a += cp.at("Rr", 1);
    for (int t = 1; t < tau; ++t) b += cp.at("Rr", 1);
    b += cp.at("Rd", 1);
    CHECK(a < b);
  }
  CHECK(cmp_overtaking({"Rr", "Rr"}, {"Rr", "Rd"}, cp, 1) == Ordering::Less);

  // The simple sum cannot tell these apart.
  CHECK(eval_simple(all_rr, cp, 1) == eval_simple(near_end_rd, cp, 1));
}

TEST_CASE("limit of means") {
  PayoffTable u;
  u.values["h"] = {rat(1)};
  u.values["j"] = {rat(2)};
  SegmentedWholeHistory constant = whole_history(ViewKind::BirdsEye, {run(NonStdNum::tau(), {"h"})});
  CHECK(eval_limit_means(constant, u, 0) == rat(1));

  SegmentedWholeHistory half = whole_history(
      ViewKind::BirdsEye, {run(len_frac(1, 2), {"h"}), run(len_frac(1, 2), {"j"})});
  CHECK(eval_limit_means(half, u, 0) == rat(3, 2));
  // Averaging oracle at tau = 2^20.
  {
    const std::int64_t tau = 1 << 20;
    Rational total(0);
    for (std::int64_t t = 1; t <= tau; ++t) total += (2 * t <= tau) ? rat(1) : rat(2);
    CHECK(total / rat(tau) == rat(3, 2));
  }

  // Bach-or-Stravinsky mixed-unit tiling, player B payoffs per period:
  // (2,2,0,0,0,1,0,0,1)/9 = 2/3.
  PayoffTable bos;
  bos.values["(B,B)"] = {rat(2), rat(1)};
  bos.values["(B,S)"] = {rat(0), rat(0)};
  bos.values["(S,B)"] = {rat(0), rat(0)};
  bos.values["(S,S)"] = {rat(1), rat(2)};
  std::vector<std::string> unit = {"(B,B)", "(B,B)", "(S,B)", "(B,S)", "(B,S)",
                                   "(S,S)", "(B,S)", "(B,S)", "(S,S)"};
  SegmentedWholeHistory tiled =
      whole_history(ViewKind::BirdsEye, {run(NonStdNum::tau(), SegmentPayload(unit))});
  Rational mean = eval_limit_means(tiled, bos, 0);
  CHECK(mean == rat(2, 3));
  {
    Rational direct(0);
    for (const auto& t : unit) direct += bos.at(t, 0);
    CHECK(direct / rat(9) == mean);
  }
  CHECK(eval_limit_means(tiled, bos, 1) == rat(2, 3));

  CHECK(eval_limit_means({"h", "j"}, u, 0, 2) == rat(3, 2));
}

TEST_CASE("criterion flags") {
  CHECK(criterion_flags(Criterion::discounted(rat(1, 5))).sooner_better);
  CHECK(criterion_flags(Criterion::simple()).commutativity);
  CHECK_FALSE(criterion_flags(Criterion::limit_of_means()).huge_transitivity);
  CHECK(criterion_flags(Criterion::overtaking()).strict_separability);
  CHECK(criterion_flags(Criterion::simple()).huge_transitivity);
  CHECK_FALSE(criterion_flags(Criterion::discounted(rat(1, 2))).commutativity);
  CHECK(!criterion_flags(Criterion::simple()).note.empty());
}

namespace {

PayoffTable random_table(const std::vector<std::string>& terminals, int players = 1) {
  std::uniform_int_distribution<int> num(-8, 8);
  std::uniform_int_distribution<int> den(1, 4);
  PayoffTable u;
  for (const auto& t : terminals) {
    std::vector<Rational> row;
    for (int p = 0; p < players; ++p) row.push_back(rat(num(rng), den(rng)));
    u.values[t] = row;
  }
  return u;
}

std::vector<std::string> random_history(const std::vector<std::string>& terminals, int len) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(terminals.size()) - 1);
  std::vector<std::string> h;
  for (int i = 0; i < len; ++i) h.push_back(terminals[pick(rng)]);
  return h;
}

}  // namespace

TEST_CASE("finite-horizon evaluation matches the literal sums") {
  std::vector<std::string> terminals = {"a", "b", "c"};
  for (int trial = 0; trial < 200; ++trial) {
    PayoffTable u = random_table(terminals);
    auto h = random_history(terminals, 5);
    Rational simple(0), discounted(0);
    Rational delta = rat(1, 5);
    for (std::size_t t = 0; t < h.size(); ++t) {
      simple += u.at(h[t], 0);
      discounted += u.at(h[t], 0) * Rational::pow(delta, static_cast<unsigned long>(t));
    }
    CHECK(eval_simple(h, u, 0) == simple);
    CHECK(eval_discounted(h, u, 0, delta) == discounted);
    CHECK(eval_limit_means(h, u, 0, 5) == simple / rat(5));
  }
}

TEST_CASE("sooner the better and commutativity") {
  std::vector<std::string> terminals = {"a", "b", "c", "d"};
  std::uniform_int_distribution<int> len(0, 4);
  int checked = 0;
  while (checked < 600) {
    PayoffTable u = random_table(terminals);
    std::string j = terminals[0], jp = terminals[1];
    if (u.at(j, 0) < u.at(jp, 0)) std::swap(j, jp);
    auto front = random_history(terminals, len(rng));
    auto back = random_history(terminals, len(rng));
    auto with = [&](const std::string& x, const std::string& y) {
      auto h = front;
      h.push_back(x);
      h.push_back(y);
      h.insert(h.end(), back.begin(), back.end());
      return h;
    };
    // Better component earlier is weakly better under strict discounting.
    CHECK(eval_discounted(with(j, jp), u, 0, rat(1, 3)) >=
          eval_discounted(with(jp, j), u, 0, rat(1, 3)));
    // Adjacent swap leaves the simple sum unchanged.
    CHECK(eval_simple(with(j, jp), u, 0) == eval_simple(with(jp, j), u, 0));
    ++checked;
  }
}

TEST_CASE("weak separability per criterion") {
  std::vector<std::string> terminals = {"a", "b", "c"};
  for (int trial = 0; trial < 300; ++trial) {
    PayoffTable u = random_table(terminals);
    std::string j = "a", jp = "b";
    if (u.at(j, 0) < u.at(jp, 0)) std::swap(j, jp);
    auto front = random_history(terminals, 2);
    auto back = random_history(terminals, 2);
    auto with = [&](const std::string& x) {
      auto h = front;
      h.push_back(x);
      h.insert(h.end(), back.begin(), back.end());
      return h;
    };
    CHECK(eval_simple(with(j), u, 0) >= eval_simple(with(jp), u, 0));
    CHECK(eval_discounted(with(j), u, 0, rat(2, 7)) >= eval_discounted(with(jp), u, 0, rat(2, 7)));
    CHECK(eval_limit_means(with(j), u, 0, 5) >= eval_limit_means(with(jp), u, 0, 5));

    // Huge horizon: replacing the payload of a unit-length patch never
    // moves the limit of means at all.
    SegmentedWholeHistory patched_j = whole_history(
        ViewKind::BirdsEye, {run(len_frac(1, 2), {"a"}), run(len_units(1), {j}),
                             run(len_frac(1, 2, -1), {"b"})});
    SegmentedWholeHistory patched_jp = whole_history(
        ViewKind::BirdsEye, {run(len_frac(1, 2), {"a"}), run(len_units(1), {jp}),
                             run(len_frac(1, 2, -1), {"b"})});
    CHECK(eval_limit_means(patched_j, u, 0) == eval_limit_means(patched_jp, u, 0));
  }
}

TEST_CASE("overtaking refines the simple sum") {
  std::vector<std::string> terminals = {"a", "b"};
  std::uniform_int_distribution<int> eighth(0, 8);
  for (int trial = 0; trial < 400; ++trial) {
    PayoffTable u = random_table(terminals);
    auto random_segmented = [&]() {
      int cut = eighth(rng);
      std::vector<Segment> segs;
      if (cut > 0) segs.push_back(run(len_frac(cut, 8), {"a"}));
      if (cut < 8) segs.push_back(run(len_frac(8 - cut, 8), {"b"}));
      return whole_history(ViewKind::Perspective, segs);
    };
    SegmentedWholeHistory h1 = random_segmented();
    SegmentedWholeHistory h2 = random_segmented();
    Ordering ot = cmp_overtaking(h1, h2, u, 0);
    ExtReal s1 = eval_simple(h1, u, 0);
    ExtReal s2 = eval_simple(h2, u, 0);
    // Collapse monotonicity: a strict overtaking win never reverses the
    // collapsed comparison.
    if (ot == Ordering::Greater) CHECK(ext_cmp(s1, s2) != Ordering::Less);
    if (ot == Ordering::Less) CHECK(ext_cmp(s1, s2) != Ordering::Greater);
    if (ot == Ordering::Equal) CHECK(s1 == s2);
  }
}

TEST_CASE("null patches and positive-fraction changes") {
  PayoffTable u;
  u.values["h"] = {rat(1)};
  u.values["j"] = {rat(4)};
  SegmentedWholeHistory base = whole_history(
      ViewKind::BirdsEye, {run(len_frac(1, 2), {"h"}), run(len_frac(1, 2), {"j"})});
  Rational v = eval_limit_means(base, u, 0);
  CHECK(v == rat(5, 2));

  // Any finite set of monad patches is null.
  SegmentedWholeHistory patched = whole_history(
      ViewKind::BirdsEye,
      {run(len_units(3), {"j"}), run(len_frac(1, 2, -3), {"h"}), run(len_units(2), {"h"}),
       run(len_frac(1, 2, -2), {"j"})});
  CHECK(eval_limit_means(patched, u, 0) == v);

  // A positive-fraction change moves the value by exactly fraction * delta-u.
  SegmentedWholeHistory shifted = whole_history(
      ViewKind::BirdsEye, {run(len_frac(1, 4), {"h"}), run(len_frac(3, 4), {"j"})});
  CHECK(eval_limit_means(shifted, u, 0) - v == rat(1, 4) * (u.at("j", 0) - u.at("h", 0)));
}

TEST_CASE("criterion_compare uses the right comparison per criterion") {
  PayoffTable u;
  u.values["h"] = {rat(1)};
  u.values["j"] = {rat(2)};
  TablePayoff model(u);
  SegmentedWholeHistory all_h = whole_history(ViewKind::Perspective, {run(NonStdNum::tau(), {"h"})});
  SegmentedWholeHistory all_j = whole_history(ViewKind::Perspective, {run(NonStdNum::tau(), {"j"})});
  // Simple sum: both infinite, indifferent; overtaking: strictly ordered.
  CHECK(criterion_compare(model, Criterion::simple(), all_h, all_j, 0) == Ordering::Equal);
  CHECK(criterion_compare(model, Criterion::overtaking(), all_h, all_j, 0) == Ordering::Less);
}
