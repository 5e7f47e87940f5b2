#ifndef EXCHG_INDEXING_HPP_
#define EXCHG_INDEXING_HPP_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "exchg/ids.hpp"
#include "exchg/index.hpp"

namespace exchg {

// Witness-carrying result of an exhaustive check.
struct CheckReport {
  bool pass = true;
  std::string check;    // which axiom or property failed
  std::string message;  // witness rendered for humans
  std::vector<IdSet> witness_sets;
  std::optional<Injection> witness_injection;
  std::optional<Index> witness_index;
  std::string witness_value;  // e.g. an offending mass difference, as text

  static CheckReport ok() { return {}; }
};

class Skeleton;

// Functor from finite-set injections to themselves, as a constructor AST.
// Values are cheap to copy (shared immutable nodes); per-node caches are
// mutex-guarded so all queries are thread-safe.
class IndexingSystem {
 public:
  enum class Op {
    Id,
    Powerset,
    Subsets,
    SubsetsLe,
    Tuples,
    DTuples,
    DTuplesStar,
    PairSlots,
    Product,
    Coproduct,
    Compose,
    NonExample,  // I_b = b for |b|>=2 else empty; violates the intersection axiom
    Atomic,      // restriction of a parent system to one equivalence class
  };

  static IndexingSystem id();
  static IndexingSystem powerset();
  static IndexingSystem subsets(int k);
  static IndexingSystem subsets_le(int k);
  static IndexingSystem tuples(int k);
  static IndexingSystem dtuples(int k);
  static IndexingSystem dtuples_star();
  static IndexingSystem pair_slots(int k);
  static IndexingSystem product(IndexingSystem lhs, IndexingSystem rhs);
  static IndexingSystem coproduct(IndexingSystem lhs, IndexingSystem rhs);
  static IndexingSystem compose(IndexingSystem outer, IndexingSystem inner);
  static IndexingSystem non_example();

  Op op() const;
  int param() const;                  // k for the arity-parameterized ops
  IndexingSystem left() const;        // first child
  IndexingSystem right() const;       // second child
  Index atomic_rep() const;           // Atomic only

  // All indices over b, canonically sorted; finite for every constructor.
  const std::vector<Index>& indices(const IdSet& b) const;
  // Membership without enumeration of the full fiber where possible.
  bool contains(const IdSet& b, const Index& i) const;

  // The injection I[tau] applied to one index; i must lie over dom(tau).
  Index apply(const Injection& tau, const Index& i) const;

  // Minimal ID set over which i is an index; independent of the ambient set.
  IdSet dom(const Index& i) const;
  IdSet dom_checked(const Index& i, const IdSet& ambient) const;

  // All permutations pi of dom(i) with apply(pi, i) == i.
  std::vector<Injection> stab(const Index& i) const;

  bool equivalent(const Index& i, const Index& j) const;
  // Canonically least normalization apply(sigma, i) over bijections
  // sigma: dom(i) -> [k], and the alignment pi: [k] -> dom(i) mapping the
  // representative back onto i.
  Index rep_of(const Index& i) const;
  Injection align_of(const Index& i) const;

  Skeleton skeleton(int max_size) const;
  CheckReport check_axioms(int n_max) const;
  std::vector<IndexingSystem> atomic_decompose(int max_size) const;

  // Compose-node label bookkeeping, also used by composed data structures.
  IdSet inner_labels(const IdSet& b) const;           // labels of J_b
  int intern_inner(const Index& inner) const;         // label of one J-index
  Index inner_of_label(int label) const;
  Injection label_injection(const Injection& tau) const;  // J[tau] on labels

  std::string to_string() const;
  bool same_expression(const IndexingSystem& other) const;

 private:
  struct Node;
  explicit IndexingSystem(std::shared_ptr<const Node> node);
  static IndexingSystem make(Op op, int param, std::vector<IndexingSystem> kids);
  Index apply_raw(const Injection& tau, const Index& i) const;
  friend class Skeleton;

  std::shared_ptr<const Node> node_;
};

class Skeleton {
 public:
  Skeleton(IndexingSystem system, std::vector<Index> representatives);
  const std::vector<Index>& representatives() const { return reps_; }
  Index rep_of(const Index& i) const { return system_.rep_of(i); }
  Injection align_of(const Index& i) const { return system_.align_of(i); }
  int max_rep_size() const;

 private:
  IndexingSystem system_;
  std::vector<Index> reps_;
};

}  // namespace exchg

#endif  // EXCHG_INDEXING_HPP_
