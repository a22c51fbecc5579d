#include "pandora/model.hpp"

#include <cmath>
#include <string>

#include "pandora/errors.hpp"

namespace pandora {

namespace {

// p^n as exp(n log1p(-x)) with x = 1-p, which stays accurate when x is tiny.
long double pow_complement(long double x, std::int64_t n) {
  return expl(static_cast<long double>(n) * log1pl(-x));
}

std::int64_t exact_sqrt(std::int64_t n) {
  if (n < 4) {
    throw Error(ErrorKind::NotPerfectSquare,
                "need a perfect square >= 4, got " + std::to_string(n));
  }
  auto root = static_cast<std::int64_t>(
      llroundl(sqrtl(static_cast<long double>(n))));
  if (root * root != n) {
    throw Error(ErrorKind::NotPerfectSquare,
                std::to_string(n) + " is not a perfect square");
  }
  return root;
}

void require_size(std::int64_t n, std::int64_t lo) {
  if (n < lo) {
    throw Error(ErrorKind::Usage, "instance size must be >= " +
                                      std::to_string(lo) + ", got " +
                                      std::to_string(n));
  }
}

// Both probabilities are rounded from long double independently so that e.g.
// 1/10 lands on the double literal 0.1 rather than on 1.0 - 0.9.
Instance iid_instance(VariantSpec variant, std::int64_t n, double cost,
                      double high_value, long double p_high) {
  Instance inst;
  inst.variant = variant;
  DiscreteDistribution d = make_distribution(
      {{0.0, static_cast<double>(1.0L - p_high)},
       {high_value, static_cast<double>(p_high)}});
  inst.boxes.assign(static_cast<std::size_t>(n), Box{cost, d});
  inst.validate();
  return inst;
}

}  // namespace

void Instance::validate() const {
  if (boxes.empty()) {
    throw Error(ErrorKind::Usage, "instance needs at least one box");
  }
  for (const Box& b : boxes) {
    if (!(b.cost >= 0.0) || !std::isfinite(b.cost)) {
      throw Error(ErrorKind::NegativeValue,
                  "box cost must be finite and nonnegative");
    }
    if (!variant.observation_cost && b.cost != 0.0) {
      throw Error(ErrorKind::VariantMismatch,
                  "variant has no observation cost but a box cost is nonzero");
    }
  }
}

Instance gen_example_max_cost(std::int64_t n, bool order_selection,
                              bool commitment) {
  require_size(n, 2);
  long double nl = static_cast<long double>(n);
  long double p_high = 1.0L / (nl * sqrtl(nl));
  VariantSpec v{Objective::Max, commitment, true, order_selection};
  return iid_instance(v, n, 1.0, static_cast<double>(n), p_high);
}

Instance gen_example_min_orderselect(std::int64_t n) {
  std::int64_t root = exact_sqrt(n);
  long double p_low = 1.0L / static_cast<long double>(root);
  VariantSpec v{Objective::Min, false, true, true};
  Instance inst;
  inst.variant = v;
  DiscreteDistribution d = make_distribution(
      {{0.0, static_cast<double>(p_low)},
       {static_cast<double>(n), static_cast<double>(1.0L - p_low)}});
  inst.boxes.assign(static_cast<std::size_t>(n), Box{1.0, d});
  inst.validate();
  return inst;
}

Instance gen_tightness_instance(std::int64_t n) {
  require_size(n, 2);
  long double p_low = 1.0L / static_cast<long double>(n);
  VariantSpec v{Objective::Min, false, true, false};
  return iid_instance(v, n, 1.0, static_cast<double>(n), 1.0L - p_low);
}

double geom_weighted_sum(std::int64_t k, double q) {
  if (!(q >= 0.0) || q >= 1.0) {
    throw Error(ErrorKind::Usage, "ratio must lie in [0, 1)");
  }
  if (k <= 0) return 0.0;
  long double ql = q;
  long double qk = powl(ql, static_cast<long double>(k));
  long double kl = static_cast<long double>(k);
  long double one_minus = 1.0L - ql;
  return static_cast<double>((1.0L + qk * (kl * ql - kl - 1.0L)) /
                             (one_minus * one_minus));
}

double geom_tail(std::int64_t k, double q) {
  if (!(q >= 0.0) || q >= 1.0) {
    throw Error(ErrorKind::Usage, "ratio must lie in [0, 1)");
  }
  if (k < 0) throw Error(ErrorKind::Usage, "tail index must be >= 0");
  long double ql = q;
  return static_cast<double>(powl(ql, static_cast<long double>(k)) /
                             (1.0L - ql));
}

ClosedFormReport closed_form_example32(std::int64_t n) {
  require_size(n, 2);
  long double nl = static_cast<long double>(n);
  long double x = 1.0L / (nl * sqrtl(nl));  // 1 - p
  long double pn = pow_complement(x, n);
  long double prophet = nl - pn - (1.0L - pn) / x;
  long double open_one = -1.0L + nl * x;
  long double open_until_high = (1.0L - pn) * (nl - nl * sqrtl(nl));
  long double alg = open_one > open_until_high ? open_one : open_until_high;
  ClosedFormReport r;
  r.n = n;
  r.prophet = static_cast<double>(prophet);
  r.alg = static_cast<double>(alg);
  r.extras["prophet_orderselect"] =
      static_cast<double>(-pn + (1.0L - pn) * (nl - 1.0L));
  return r;
}

ClosedFormReport closed_form_example41(std::int64_t n) {
  std::int64_t root = exact_sqrt(n);
  long double nl = static_cast<long double>(n);
  long double rt = static_cast<long double>(root);
  long double qn = pow_complement(1.0L / rt, n);
  ClosedFormReport r;
  r.n = n;
  r.prophet = static_cast<double>(1.0L + nl * qn);
  r.alg = static_cast<double>(rt + qn * (nl - rt));
  return r;
}

ClosedFormReport closed_form_tightness(std::int64_t n) {
  require_size(n, 2);
  long double nl = static_cast<long double>(n);
  long double qn = pow_complement(1.0L / nl, n);
  long double prophet = nl - (nl - 1.0L) * qn;
  ClosedFormReport r;
  r.n = n;
  r.prophet = static_cast<double>(prophet);
  r.alg = static_cast<double>(n);
  r.extras["weitzman"] = static_cast<double>(n);
  r.extras["weak_prophet"] = static_cast<double>(prophet);
  return r;
}

}  // namespace pandora
