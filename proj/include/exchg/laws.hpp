#ifndef EXCHG_LAWS_HPP_
#define EXCHG_LAWS_HPP_

#include <map>
#include <vector>

#include "exchg/nat.hpp"
#include "exchg/rational.hpp"
#include "exchg/structures.hpp"

namespace exchg {

// Exact finite-level law: one probability vector per standardized level [n],
// aligned with elements([n]). Values on arbitrary ID sets are induced through
// the order-preserving bijection onto [n].
class FiniteLaw {
 public:
  FiniteLaw(DataStructure structure, int n_max,
            std::vector<std::vector<Rational>> tables);

  // iid symbol draws on an array structure; probs keyed by alphabet symbol.
  static FiniteLaw iid(const DataStructure& array_structure,
                       const std::map<int, Rational>& probs, int n_max);
  static FiniteLaw uniform(const DataStructure& structure, int n_max);
  // Point mass on one element at the top level, lower levels by restriction.
  static FiniteLaw point_mass(const DataStructure& structure, const Elem& top,
                              int n_max);
  static FiniteLaw mix(const std::vector<FiniteLaw>& components,
                       const std::vector<Rational>& weights);

  const DataStructure& structure() const { return structure_; }
  int n_max() const { return n_max_; }
  const std::vector<Rational>& table(int n) const;
  Rational mass(int n, const Elem& x) const;
  Rational mass_on(const IdSet& a, const Elem& x) const;
  std::map<Elem, Rational> law_on(const IdSet& a) const;

  CheckReport validate_consistency() const;
  CheckReport check_exchangeable() const;
  CheckReport check_independence() const;
  FiniteLaw pushforward(const NaturalTransformation& eta) const;

 private:
  DataStructure structure_;
  int n_max_;
  std::vector<std::vector<Rational>> tables_;
};

}  // namespace exchg

#endif  // EXCHG_LAWS_HPP_
