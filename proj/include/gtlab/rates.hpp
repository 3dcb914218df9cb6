#pragma once

#include <map>
#include <vector>

namespace gtlab {

/// Binary entropy h(x) = -x log2 x - (1-x) log2 (1-x), with h(0) = h(1) = 0.
/// Arguments outside [0, 1] raise DomainError.
double binary_entropy(double x);

/// Root y in (0, 1) of 1 + y + ... + y^{arity-1} = q/w, the parameter behind
/// the union-weight exponent. Requires w < q < min(1, arity*w); solved by
/// bisection on the strictly increasing left-hand side to |error| < 1e-12.
double union_root(int arity, double w, double q);

/// Exponent of the probability that the OR of `arity` independent uniform
/// relative-weight-w columns has relative weight q. Defined for
/// w < q < min(1, arity*w); arity = 1 requires q = w and gives 0.
double union_weight_exponent(int arity, double w, double q);

/// First component of the per-k rate bound: infimum over
/// q in [max(w, kw/2), min((s-k)w, 1)] of
/// (union_weight_exponent(s-k, w, q) - k*w + h(q)) / (s-k).
/// Empty interval gives +infinity.
double rate_bound_r1(int s, int k, double w, int q_grid = 600);

/// Second component: infimum over {w <= q <= 1, q <= (s-k)w, q <= kw/2} of
/// (union_weight_exponent(s-k, w, q) - k*w*h(q/(kw)) + h(q)) / (s-k).
/// k = 0 or kw/2 < w gives +infinity (empty constraint set).
double rate_bound_r2(int s, int k, double w, int q_grid = 600);

struct RateQuery {
  int s = 2;
  std::vector<int> k_values;  // subset of {0, ..., s-1}
  int w_grid = 200;           // coarse grid over the weight axis
  int q_grid = 600;           // grid per inner infimum
  double tolerance = 1e-6;    // refinement target on the objective argument
};

struct PerKBounds {
  double r1 = 0.0;
  double r2 = 0.0;
};

struct RateResult {
  double value = 0.0;   // sup over w of min over k of min(r1, r2)
  double w_star = 0.0;  // optimizing relative weight
  std::map<int, PerKBounds> per_k;  // both components at w_star
  int w_grid = 0;
  int q_grid = 0;
  int refine_iterations = 0;
};

/// sup over w in (0,1) of min over the query's k values of min(r1, r2),
/// by coarse grid plus iterative zoom refinement.
RateResult evaluate_rate_bound(const RateQuery& query);

/// Full-recovery lower bound: k ranges over {0, ..., s-1}.
RateResult full_recovery_bound(int s, const RateQuery& base = {});

/// Partial-recovery lower bound: k ranges over {0, ..., floor(s/2)}.
/// Evaluates to 1/s, attained at w = 1 - 2^{-1/s}.
RateResult partial_recovery_bound(int s, const RateQuery& base = {});

/// Weight at which the partial-recovery bound peaks: 1 - 2^{-1/s}.
double partial_recovery_weight(int s);

/// h(w) + w log2(2^{1/s} - 1) evaluated at w = 1 - 2^{-1/s}; algebraically
/// equal to 1/s.
double partial_closed_form_value(int s);

/// Numeric argmin over q of union_weight_exponent(s, w, q) + h(q), by
/// golden-section search. Agrees with the closed form
/// w / (2 (1 - 2^{-1/s})); the root at the argmin equals 2^{-1/s}.
double exponent_argmin(int s, double w);
double exponent_argmin_closed_form(int s, double w);

/// q h(w/q) + w h((q-w)/w) - 2 h(w) for w < q < min(2w, 1): the exponent of
/// the probability that two random weight-w columns OR to one fixed vector
/// of weight q. Equal to -(union_weight_exponent(2, w, q) + h(q)).
double pair_collision_exponent(double w, double q);

struct SupResult {
  double value = 0.0;
  double arg = 0.0;
};

/// Supremum of pair_collision_exponent(w, .) over its q-interval.
SupResult pair_collision_exponent_sup(double w);

/// Exact log2 probabilities that one (p1) or two (p2) random weight-wn
/// columns of length n OR to a fixed vector of weight qn. Kept in log space:
/// the linear values underflow long before n reaches the sizes used for
/// exponent trend checks.
struct PairProbabilities {
  double log2_p1 = 0.0;
  double log2_p2 = 0.0;
  double p1() const;
  double p2() const;
};

PairProbabilities pair_probabilities(int n, int wn, int qn);

/// log2 of C(n, k) via lgamma.
double log2_binomial(int n, int k);

}  // namespace gtlab
