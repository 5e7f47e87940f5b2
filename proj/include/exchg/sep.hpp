#ifndef EXCHG_SEP_HPP_
#define EXCHG_SEP_HPP_

#include "exchg/laws.hpp"

namespace exchg {

// Two constructions turning a structure over one ID axis into a structure
// over k exchangeable axes sharing a label set: Diagonal reads indices as
// distinct k-tuples of the shared labels, Slotted tags each label with the
// axis it lives on.
enum class SepMode { Diagonal, Slotted };

DataStructure build_separate(const DataStructure& base, int k, SepMode mode);

// Exact comparison of mu against a mixture of products of per-factor laws,
// level by level. mu must live on a (possibly nested) product structure;
// components[j] lists one law per product leaf, weighted by weights[j].
CheckReport check_separate_product(
    const FiniteLaw& mu, const std::vector<Rational>& weights,
    const std::vector<std::vector<FiniteLaw>>& components);

}  // namespace exchg

#endif  // EXCHG_SEP_HPP_
