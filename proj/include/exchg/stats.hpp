#ifndef EXCHG_STATS_HPP_
#define EXCHG_STATS_HPP_

#include <functional>
#include <vector>

#include "exchg/laws.hpp"

namespace exchg {

// Empirical density of the pattern x (over b) inside y (over a):
// fraction of injections b -> a pulling y back to x. Exact rational.
Rational density(const DataStructure& d, const IdSet& b, const Elem& x,
                 const IdSet& a, const Elem& y);

// Symmetric statistic of order k: a function of elements over [k].
struct KernelStatistic {
  DataStructure structure;
  int k = 1;
  std::function<Rational(const Elem&)> g;

  // g must be invariant under relabelling [k]; checked exhaustively.
  bool is_symmetric() const;

  static KernelStatistic indicator(const DataStructure& d, int k,
                                   const Elem& pattern);
  // Value of the single entry at index i = (1) of a rank-1 array.
  static KernelStatistic first_entry(const DataStructure& d);
};

// Symmetrized empirical average of g over injections [k] -> [n].
Rational empirical_average(const KernelStatistic& stat, const IdSet& a,
                           const Elem& y);

struct VariancePair {
  Rational direct;   // Var of the empirical average under the law at level n
  Rational formula;  // pairwise-covariance expansion of the same variance
};
VariancePair variance_exact(const FiniteLaw& law, const KernelStatistic& stat,
                            int n);

// Overlap covariances c_l = Cov(g(X over [k]), g(X over [l]+{k+1..2k-l})),
// l = 0..k, plus the first-order limit coefficient k^2 c_1.
struct UStatCovariances {
  std::vector<Rational> c;
  Rational sigma2_limit;
};
UStatCovariances u_stat_covariances(const FiniteLaw& law,
                                    const KernelStatistic& stat);

// Density trajectory of fixed targets along a growing observation sequence.
struct LimitReport {
  struct Row {
    int n = 0;
    std::vector<Rational> values;  // one per target
  };
  std::vector<Row> rows;
  std::vector<bool> converged;  // last three values within tolerance, per target
  bool all_converged = false;
};
LimitReport limit_estimate(
    const DataStructure& d,
    const std::vector<std::pair<IdSet, Elem>>& sequence,
    const std::vector<std::pair<IdSet, Elem>>& targets, double tolerance);

// The density rule x |-> density(x, y) read as a law on levels 0..n_max,
// checked for the exchangeable-law identities up to a tolerance.
CheckReport check_density_rule_exchangeable(const DataStructure& d,
                                            const IdSet& a, const Elem& y,
                                            int n_max, double tolerance);

}  // namespace exchg

#endif  // EXCHG_STATS_HPP_
