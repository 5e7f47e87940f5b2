#include "exchg/sep.hpp"

namespace exchg {

namespace {

void flatten_structures(const DataStructure& d, std::vector<DataStructure>* out) {
  if (d.op() == DataStructure::Op::Product) {
    flatten_structures(d.child(0), out);
    flatten_structures(d.child(1), out);
  } else {
    out->push_back(d);
  }
}

void flatten_element(const DataStructure& d, const Elem& x,
                     std::vector<Elem>* out) {
  if (d.op() == DataStructure::Op::Product) {
    flatten_element(d.child(0), x.left(), out);
    flatten_element(d.child(1), x.right(), out);
  } else {
    out->push_back(x);
  }
}

}  // namespace

DataStructure build_separate(const DataStructure& base, int k, SepMode mode) {
  if (k < 1) throw Error("domain", "separate construction needs k >= 1");
  IndexingSystem diag = mode == SepMode::Diagonal ? IndexingSystem::tuples(k)
                                                  : IndexingSystem::pair_slots(k);
  if (mode == SepMode::Diagonal && base.is_array_type()) {
    // Composing with the identity index collapses: sequences over k axes are
    // plain k-dimensional arrays.
    IndexingSystem inner = base.indexing();
    IndexingSystem composed = inner.op() == IndexingSystem::Op::Id
                                  ? diag
                                  : IndexingSystem::compose(inner, diag);
    return DataStructure::array(base.alphabet(), composed);
  }
  return DataStructure::compose_with(base, diag);
}

CheckReport check_separate_product(
    const FiniteLaw& mu, const std::vector<Rational>& weights,
    const std::vector<std::vector<FiniteLaw>>& components) {
  if (mu.structure().op() != DataStructure::Op::Product)
    throw Error("domain", "law does not live on an outer product structure");
  if (weights.size() != components.size() || weights.empty())
    throw Error("domain", "need one component list per weight");
  std::vector<DataStructure> leaves;
  flatten_structures(mu.structure(), &leaves);
  for (const std::vector<FiniteLaw>& comp : components) {
    if (comp.size() != leaves.size())
      throw Error("domain", "component count does not match product arity");
    for (size_t f = 0; f < leaves.size(); ++f) {
      if (!comp[f].structure().same_expression(leaves[f]))
        throw Error("domain", "component law lives on the wrong factor");
      if (comp[f].n_max() < mu.n_max())
        throw Error("domain", "component law has too small n_max");
    }
  }
  for (int n = 0; n <= mu.n_max(); ++n) {
    IdSet a = IdSet::range(n);
    for (const Elem& z : mu.structure().elements(a)) {
      std::vector<Elem> parts;
      flatten_element(mu.structure(), z, &parts);
      Rational mixture(0);
      for (size_t j = 0; j < weights.size(); ++j) {
        Rational prod = weights[j];
        for (size_t f = 0; f < leaves.size(); ++f)
          prod *= components[j][f].mass(n, parts[f]);
        mixture += prod;
      }
      if (mu.mass(n, z) != mixture) {
        CheckReport r;
        r.pass = false;
        r.check = "product-mixture";
        r.message = "mass of " + z.to_string() + " at level " +
                    std::to_string(n) + " is " + to_string(mu.mass(n, z)) +
                    " but the mixture of products gives " + to_string(mixture);
        r.witness_sets = {a};
        r.witness_value = to_string(mu.mass(n, z) - mixture);
        return r;
      }
    }
  }
  return CheckReport::ok();
}

}  // namespace exchg
