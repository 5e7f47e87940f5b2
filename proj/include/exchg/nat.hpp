#ifndef EXCHG_NAT_HPP_
#define EXCHG_NAT_HPP_

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "exchg/structures.hpp"

namespace exchg {

class FiniteLaw;

// Family of per-level maps commuting with restriction.
class NaturalTransformation {
 public:
  using Component = std::function<Elem(const IdSet&, const Elem&)>;

  NaturalTransformation(DataStructure source, DataStructure target,
                        Component component, std::string name = "");

  const DataStructure& source() const { return source_; }
  const DataStructure& target() const { return target_; }
  const std::string& name() const { return name_; }
  Elem apply(const IdSet& a, const Elem& x) const;

  static NaturalTransformation identity(DataStructure d);
  static NaturalTransformation composed(const NaturalTransformation& after,
                                        const NaturalTransformation& before);

  // The three pairwise isomorphisms between the graph encodings.
  static NaturalTransformation graph1_to_graph2();
  static NaturalTransformation graph2_to_graph3();
  static NaturalTransformation graph3_to_graph1();

 private:
  DataStructure source_, target_;
  Component component_;
  std::string name_;
};

// Skeleton-indexed kernel tables defining a transformation into an array.
struct KernelFamily {
  DataStructure source;
  std::vector<int> target_alphabet;
  IndexingSystem indexing;
  int max_rep_size = 3;
  // representative -> (element of source over [k] -> output symbol)
  std::map<Index, std::map<Elem, int>> kernels;

  // Completeness of each table plus stabilizer symmetry of every kernel.
  CheckReport validate() const;
  bool operator==(const KernelFamily& o) const {
    return kernels == o.kernels && target_alphabet == o.target_alphabet;
  }
};

// Kernel-to-transformation direction; rejects asymmetric kernels.
NaturalTransformation build_from_kernels(const KernelFamily& family);

// Transformation-to-kernel direction; target must be array-type.
KernelFamily extract_kernels(const NaturalTransformation& eta, int max_size);

CheckReport check_naturality(const NaturalTransformation& eta, int n_max);
// Almost-sure mode: only elements carrying positive mass under the law.
CheckReport check_naturality_as(const NaturalTransformation& eta,
                                const FiniteLaw& law, int n_max);

// Injective coding of a structure into an array over distinct tuples.
NaturalTransformation universal_embedding(const DataStructure& d, int n_max);
CheckReport check_embedding_injective(const NaturalTransformation& eta,
                                      int n_max);

// The two canonical embeddings around an atomic indexing system of rank k:
// from the set-indexed array into it, and from it into the tuple-indexed one.
std::pair<NaturalTransformation, NaturalTransformation> embed_atomic(
    const std::vector<int>& alphabet, const IndexingSystem& atomic);

}  // namespace exchg

#endif  // EXCHG_NAT_HPP_
