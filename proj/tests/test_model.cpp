#include <doctest.h>

#include <cmath>

#include "pandora/errors.hpp"
#include "pandora/model.hpp"
#include "pandora/rng.hpp"
#include "test_util.hpp"

using namespace pandora;

namespace {

double weighted_sum_direct(std::int64_t k, double q) {
  long double acc = 0.0L;
  long double term = 1.0L;  // q^{i-1} at i = 1
  for (std::int64_t i = 1; i <= k; ++i) {
    acc += static_cast<long double>(i) * term;
    term *= q;
  }
  return static_cast<double>(acc);
}

double tail_direct(std::int64_t k, double q) {
  long double acc = 0.0L;
  long double term = powl(q, static_cast<long double>(k));
  while (term > 1e-22L) {
    acc += term;
    term *= q;
  }
  return static_cast<double>(acc);
}

}  // namespace

TEST_CASE("max-objective cost instance layout") {
  auto inst = gen_example_max_cost(4, false, false);
  REQUIRE(inst.n() == 4);
  CHECK(inst.variant.objective == Objective::Max);
  CHECK(inst.variant.observation_cost);
  CHECK_FALSE(inst.variant.order_selection);
  CHECK_FALSE(inst.variant.commitment);
  for (const auto& b : inst.boxes) {
    CHECK(b.cost == 1.0);
    REQUIRE(b.dist.size() == 2);
    CHECK(b.dist.values[0] == 0.0);
    CHECK(b.dist.values[1] == 4.0);
    CHECK(b.dist.probs[0] == 0.875);
    CHECK(b.dist.probs[1] == 0.125);
  }

  auto flags = gen_example_max_cost(2, true, true);
  CHECK(flags.variant.order_selection);
  CHECK(flags.variant.commitment);
  CHECK(flags.boxes[0].dist.probs[1] ==
        doctest::Approx(0.35355339059327373).epsilon(1e-15));

  testutil::expect_kind(ErrorKind::Usage,
                        [] { gen_example_max_cost(1, false, false); });
}

TEST_CASE("min-objective order-selection instance layout") {
  auto inst = gen_example_min_orderselect(4);
  REQUIRE(inst.n() == 4);
  CHECK(inst.variant.objective == Objective::Min);
  CHECK(inst.variant.order_selection);
  CHECK_FALSE(inst.variant.commitment);
  CHECK(inst.boxes[0].cost == 1.0);
  CHECK(inst.boxes[0].dist.values[1] == 4.0);
  CHECK(inst.boxes[0].dist.probs[0] == 0.5);

  auto big = gen_example_min_orderselect(16);
  CHECK(big.boxes[0].dist.probs[0] == 0.25);
  CHECK(big.boxes[0].dist.probs[1] == 0.75);
  CHECK(big.boxes[0].dist.values[1] == 16.0);

  testutil::expect_kind(ErrorKind::NotPerfectSquare,
                        [] { gen_example_min_orderselect(5); });
  testutil::expect_kind(ErrorKind::NotPerfectSquare,
                        [] { gen_example_min_orderselect(2); });
}

TEST_CASE("worst-case search instance layout") {
  auto inst = gen_tightness_instance(2);
  REQUIRE(inst.n() == 2);
  CHECK(inst.variant.objective == Objective::Min);
  CHECK_FALSE(inst.variant.order_selection);
  CHECK(inst.boxes[0].cost == 1.0);
  CHECK(inst.boxes[0].dist.values[0] == 0.0);
  CHECK(inst.boxes[0].dist.values[1] == 2.0);
  CHECK(inst.boxes[0].dist.probs[0] == 0.5);

  auto ten = gen_tightness_instance(10);
  CHECK(ten.boxes[0].dist.probs[0] == 0.1);
  CHECK(ten.boxes[0].dist.probs[1] == 0.9);
  CHECK(ten.boxes[0].dist.values[1] == 10.0);

  testutil::expect_kind(ErrorKind::Usage, [] { gen_tightness_instance(1); });
}

TEST_CASE("instance validation") {
  Instance inst;
  inst.variant = VariantSpec{Objective::Max, false, false, false};
  testutil::expect_kind(ErrorKind::Usage, [&] { inst.validate(); });

  inst.boxes.push_back(Box{1.0, make_distribution({{1.0, 1.0}})});
  testutil::expect_kind(ErrorKind::VariantMismatch, [&] { inst.validate(); });

  inst.boxes[0].cost = 0.0;
  CHECK_NOTHROW(inst.validate());

  inst.variant.observation_cost = true;
  inst.boxes[0].cost = -1.0;
  testutil::expect_kind(ErrorKind::NegativeValue, [&] { inst.validate(); });
}

TEST_CASE("weighted geometric sum closed form") {
  CHECK(geom_weighted_sum(3, 0.0) == 1.0);
  CHECK(geom_weighted_sum(4, 0.5) == doctest::Approx(3.25).epsilon(1e-15));
  CHECK(geom_weighted_sum(2, 0.9) == doctest::Approx(2.8).epsilon(1e-12));
  CHECK(geom_weighted_sum(0, 0.5) == 0.0);

  testutil::expect_kind(ErrorKind::Usage, [] { geom_weighted_sum(3, 1.0); });
  testutil::expect_kind(ErrorKind::Usage, [] { geom_weighted_sum(3, -0.1); });
}

TEST_CASE("geometric tail closed form") {
  CHECK(geom_tail(0, 0.5) == 2.0);
  CHECK(geom_tail(2, 0.5) == 0.5);
  CHECK(geom_tail(5, 0.0) == 0.0);

  testutil::expect_kind(ErrorKind::Usage, [] { geom_tail(-1, 0.5); });
  testutil::expect_kind(ErrorKind::Usage, [] { geom_tail(2, 1.0); });
}

TEST_CASE("geometric identities match direct summation") {
  SplitMix64 rng{0x9e0a37f1ULL};
  for (int trial = 0; trial < 1000; ++trial) {
    std::int64_t k = 1 + static_cast<std::int64_t>(rng.next() % 50);
    double q = rng.uniform() * 0.999;
    double ws = geom_weighted_sum(k, q);
    CHECK(ws == doctest::Approx(weighted_sum_direct(k, q)).epsilon(1e-12));
    double qt = rng.uniform() * 0.99;
    double tl = geom_tail(k, qt);
    CHECK(tl == doctest::Approx(tail_direct(k, qt)).epsilon(1e-12));
  }
}

TEST_CASE("max-objective cost family closed forms") {
  auto r = closed_form_example32(4);
  CHECK(r.prophet == doctest::Approx(0.103271484375).epsilon(1e-14));
  CHECK(r.alg == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(r.extras.at("prophet_orderselect") ==
        doctest::Approx(0.6552734375).epsilon(1e-14));

  auto big = closed_form_example32(1000000);
  CHECK(big.prophet > 0.0);
  CHECK(big.alg < 0.0);
  CHECK(big.extras.at("prophet_orderselect") > 0.0);
}

TEST_CASE("min-objective order-selection family closed forms") {
  auto r = closed_form_example41(4);
  CHECK(r.prophet == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(r.alg == doctest::Approx(2.125).epsilon(1e-14));

  auto big = closed_form_example41(10000);
  CHECK(std::abs(big.alg - 100.0) <= 1e-6);
  CHECK(std::abs(big.prophet - 1.0) <= 1e-3);

  testutil::expect_kind(ErrorKind::NotPerfectSquare,
                        [] { closed_form_example41(5); });

  // alg/prophet tracks sqrt(n) once the all-high probability dies out.
  for (std::int64_t n : {64LL, 256LL, 1048576LL}) {
    auto f = closed_form_example41(n);
    double ratio = f.alg / f.prophet;
    CHECK(std::abs(ratio / std::sqrt(static_cast<double>(n)) - 1.0) <= 0.1);
  }
}

TEST_CASE("worst-case search family closed forms") {
  auto r = closed_form_tightness(2);
  CHECK(r.prophet == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(r.alg == 2.0);
  CHECK(r.extras.at("weitzman") == 2.0);
  CHECK(r.extras.at("weak_prophet") == doctest::Approx(1.75).epsilon(1e-15));

  for (std::int64_t n : {2LL, 10LL, 1000LL, 1000000LL}) {
    CHECK(closed_form_tightness(n).alg == static_cast<double>(n));
  }

  const double limit = std::exp(1.0) / (std::exp(1.0) - 1.0);
  double prev = 1.0;
  for (std::int64_t n : {2LL, 10LL, 100LL, 1000LL, 10000LL, 100000LL,
                         1000000LL}) {
    auto f = closed_form_tightness(n);
    double ratio = f.alg / f.prophet;
    CHECK(ratio >= 1.1);
    CHECK(ratio <= limit);
    CHECK(ratio > prev);
    prev = ratio;
  }
  auto big = closed_form_tightness(1000000);
  CHECK(std::abs(big.alg / big.prophet - 1.581977) <= 1e-3);
}
