#include "gtlab/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gtlab/errors.hpp"

namespace gtlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Probe {
  double value = kInf;
  double arg = std::numeric_limits<double>::quiet_NaN();
};

/// Infimum of f over the open interval (lo, hi): shrink to [lo+d, hi-d]
/// with d = 1e-9*(hi-lo), scan a grid, then golden-section around the best
/// grid cell. Running minimum over every probe, so a non-unimodal f still
/// gets the best sampled value. Empty or single-point interval gives +inf.
template <class F>
Probe infimum_on(F&& f, double lo, double hi, int grid, double x_tol = 1e-9) {
  Probe best;
  if (!(lo < hi)) return best;
  const double d = 1e-9 * (hi - lo);
  lo += d;
  hi -= d;
  if (grid < 2) grid = 2;

  auto probe = [&](double x) {
    const double v = f(x);
    if (v < best.value) best = {v, x};
    return v;
  };

  int best_index = 0;
  double best_grid = kInf;
  for (int i = 0; i < grid; ++i) {
    const double x = lo + (hi - lo) * i / (grid - 1);
    const double v = probe(x);
    if (v < best_grid) {
      best_grid = v;
      best_index = i;
    }
  }

  double a = lo + (hi - lo) * std::max(0, best_index - 1) / (grid - 1);
  double b = lo + (hi - lo) * std::min(grid - 1, best_index + 1) / (grid - 1);
  constexpr double invphi = 0.6180339887498948482;
  double c = b - (b - a) * invphi;
  double e = a + (b - a) * invphi;
  double fc = probe(c);
  double fe = probe(e);
  while (b - a > x_tol) {
    if (fc < fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - (b - a) * invphi;
      fc = probe(c);
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + (b - a) * invphi;
      fe = probe(e);
    }
  }
  probe(0.5 * (a + b));
  return best;
}

}  // namespace

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("binary_entropy: argument outside [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double union_root(int arity, double w, double q) {
  if (arity < 2) throw DomainError("union_root: arity must be >= 2");
  if (!(w > 0.0 && w < 1.0)) throw DomainError("union_root: weight outside (0, 1)");
  if (!(q > w && q < std::min(1.0, arity * w)))
    throw DomainError("union_root: need w < q < min(1, arity*w)");
  const double target = q / w;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    double sum = 0.0, p = 1.0;
    for (int i = 0; i < arity; ++i) {
      sum += p;
      p *= mid;
    }
    (sum < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double union_weight_exponent(int arity, double w, double q) {
  if (arity < 1) throw DomainError("union_weight_exponent: arity must be >= 1");
  if (!(w > 0.0 && w < 1.0)) throw DomainError("union_weight_exponent: weight outside (0, 1)");
  if (arity == 1) {
    if (!(std::abs(q - w) <= 1e-12))
      throw DomainError("union_weight_exponent: arity 1 requires q = w");
    return 0.0;
  }
  const double y = union_root(arity, w, q);
  return (1.0 - q) * std::log2(1.0 - q) + q * std::log2(w * std::pow(y, arity) / (1.0 - y)) +
         arity * w * std::log2((1.0 - y) / y) + arity * binary_entropy(w);
}

double rate_bound_r1(int s, int k, double w, int q_grid) {
  if (s < 2) throw ParameterError("rate_bound_r1: s must be >= 2");
  if (k < 0 || k >= s) throw ParameterError("rate_bound_r1: k must be in [0, s-1]");
  if (!(w > 0.0 && w < 1.0)) throw DomainError("rate_bound_r1: weight outside (0, 1)");
  const int l = s - k;
  const double lo = std::max(w, 0.5 * k * w);
  const double hi = std::min(static_cast<double>(l) * w, 1.0);
  if (lo > hi) return kInf;
  if (l == 1) return binary_entropy(w) - k * w;  // q pinned to w, zero exponent
  auto f = [&](double q) {
    return (union_weight_exponent(l, w, q) - k * w + binary_entropy(q)) / l;
  };
  return infimum_on(f, lo, hi, q_grid).value;
}

double rate_bound_r2(int s, int k, double w, int q_grid) {
  if (s < 2) throw ParameterError("rate_bound_r2: s must be >= 2");
  if (k < 0 || k >= s) throw ParameterError("rate_bound_r2: k must be in [0, s-1]");
  if (!(w > 0.0 && w < 1.0)) throw DomainError("rate_bound_r2: weight outside (0, 1)");
  if (k == 0) return kInf;  // q <= 0 impossible
  const int l = s - k;
  const double lo = w;
  const double hi = std::min({1.0, static_cast<double>(l) * w, 0.5 * k * w});
  if (lo > hi) return kInf;
  if (l == 1)  // q pinned to w
    return binary_entropy(w) - k * w * binary_entropy(1.0 / k);
  auto f = [&](double q) {
    return (union_weight_exponent(l, w, q) - k * w * binary_entropy(q / (k * w)) +
            binary_entropy(q)) /
           l;
  };
  return infimum_on(f, lo, hi, q_grid).value;
}

RateResult evaluate_rate_bound(const RateQuery& query) {
  if (query.s < 2) throw ParameterError("evaluate_rate_bound: s must be >= 2");
  if (query.w_grid < 100 || query.q_grid < 100)
    throw ParameterError("evaluate_rate_bound: grid resolutions must be >= 100");
  if (!(query.tolerance > 0.0))
    throw ParameterError("evaluate_rate_bound: tolerance must be positive");
  std::vector<int> ks = query.k_values;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.empty()) throw ParameterError("evaluate_rate_bound: k set must be nonempty");
  for (int k : ks)
    if (k < 0 || k >= query.s)
      throw ParameterError("evaluate_rate_bound: k values must lie in [0, s-1]");

  auto objective = [&](double w) {
    double v = kInf;
    for (int k : ks)
      v = std::min({v, rate_bound_r1(query.s, k, w, query.q_grid),
                    rate_bound_r2(query.s, k, w, query.q_grid)});
    return v;
  };

  // Coarse grid over (0, 1), then repeatedly re-grid the bracket around the
  // current argmax until the bracket is narrow.
  double lo = 1e-6, hi = 1.0 - 1e-6;
  int points = query.w_grid;
  double best_v = -kInf, best_w = 0.0;
  int iterations = 0;
  while (true) {
    int best_index = 0;
    double best_here = -kInf;
    for (int i = 0; i < points; ++i) {
      const double x = lo + (hi - lo) * i / (points - 1);
      const double v = objective(x);
      if (v > best_here) {
        best_here = v;
        best_index = i;
      }
      if (v > best_v) {
        best_v = v;
        best_w = x;
      }
    }
    const double next_lo = lo + (hi - lo) * std::max(0, best_index - 1) / (points - 1);
    const double next_hi = lo + (hi - lo) * std::min(points - 1, best_index + 1) / (points - 1);
    if (next_hi - next_lo < 0.1 * query.tolerance) break;
    lo = next_lo;
    hi = next_hi;
    points = 24;
    ++iterations;
  }

  RateResult result;
  result.w_star = best_w;
  result.w_grid = query.w_grid;
  result.q_grid = query.q_grid;
  result.refine_iterations = iterations;
  double value = kInf;
  for (int k : ks) {
    PerKBounds b{rate_bound_r1(query.s, k, best_w, query.q_grid),
                 rate_bound_r2(query.s, k, best_w, query.q_grid)};
    result.per_k.emplace(k, b);
    value = std::min({value, b.r1, b.r2});
  }
  result.value = value;
  return result;
}

namespace {

RateQuery with_k_range(int s, int k_max, const RateQuery& base) {
  if (s < 2) throw ParameterError("rate bound: s must be >= 2");
  RateQuery q = base;
  q.s = s;
  q.k_values.clear();
  for (int k = 0; k <= k_max; ++k) q.k_values.push_back(k);
  return q;
}

}  // namespace

RateResult full_recovery_bound(int s, const RateQuery& base) {
  return evaluate_rate_bound(with_k_range(s, s - 1, base));
}

RateResult partial_recovery_bound(int s, const RateQuery& base) {
  return evaluate_rate_bound(with_k_range(s, s / 2, base));
}

double partial_recovery_weight(int s) {
  if (s < 2) throw ParameterError("partial_recovery_weight: s must be >= 2");
  return 1.0 - std::exp2(-1.0 / s);
}

double partial_closed_form_value(int s) {
  const double w = partial_recovery_weight(s);
  return binary_entropy(w) + w * std::log2(std::exp2(1.0 / s) - 1.0);
}

double exponent_argmin(int s, double w) {
  if (s < 2) throw ParameterError("exponent_argmin: s must be >= 2");
  if (!(w > 0.0 && w < 1.0)) throw DomainError("exponent_argmin: weight outside (0, 1)");
  const double lo = w;
  const double hi = std::min(static_cast<double>(s) * w, 1.0);
  const double closed = exponent_argmin_closed_form(s, w);
  if (!(closed > lo && closed < hi))
    throw DomainError("exponent_argmin: minimum falls outside (w, min(sw, 1))");
  auto f = [&](double q) { return union_weight_exponent(s, w, q) + binary_entropy(q); };
  return infimum_on(f, lo, hi, 2000, 1e-10).arg;
}

double exponent_argmin_closed_form(int s, double w) {
  return w / (2.0 * (1.0 - std::exp2(-1.0 / s)));
}

double pair_collision_exponent(double w, double q) {
  if (!(w > 0.0 && w < 1.0)) throw DomainError("pair_collision_exponent: weight outside (0, 1)");
  if (!(q > w && q < std::min(2.0 * w, 1.0)))
    throw DomainError("pair_collision_exponent: need w < q < min(2w, 1)");
  return q * binary_entropy(w / q) + w * binary_entropy((q - w) / w) - 2.0 * binary_entropy(w);
}

SupResult pair_collision_exponent_sup(double w) {
  if (!(w > 0.0 && w < 1.0))
    throw DomainError("pair_collision_exponent_sup: weight outside (0, 1)");
  auto neg = [&](double q) { return -pair_collision_exponent(w, q); };
  Probe p = infimum_on(neg, w, std::min(2.0 * w, 1.0), 2000, 1e-12);
  return {-p.value, p.arg};
}

double log2_binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw DomainError("log2_binomial: need 0 <= k <= n");
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) /
         0.69314718055994530942;
}

double PairProbabilities::p1() const { return std::exp2(log2_p1); }
double PairProbabilities::p2() const { return std::exp2(log2_p2); }

PairProbabilities pair_probabilities(int n, int wn, int qn) {
  if (!(0 <= qn - wn && qn - wn <= wn && wn <= n && wn <= qn && qn <= n))
    throw DomainError("pair_probabilities: need 0 <= qn-wn <= wn <= n and wn <= qn <= n");
  const double choose_n = log2_binomial(n, wn);
  const double overlap = log2_binomial(wn, qn - wn);
  PairProbabilities p;
  p.log2_p1 = overlap - choose_n;
  p.log2_p2 = log2_binomial(qn, wn) + overlap - 2.0 * choose_n;
  return p;
}

}  // namespace gtlab
