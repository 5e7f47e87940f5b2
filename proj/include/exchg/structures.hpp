#ifndef EXCHG_STRUCTURES_HPP_
#define EXCHG_STRUCTURES_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "exchg/element.hpp"
#include "exchg/ids.hpp"
#include "exchg/indexing.hpp"

namespace exchg {

// Predicate carving a sub-data-structure out of a base structure. Must be
// hereditary (preserved by restrict); this is verified when the predicate is
// first used with a base and rejected with a witness otherwise.
using StructurePredicate =
    std::function<bool(const IdSet& a, const Elem& x)>;

void register_predicate(const std::string& name, StructurePredicate pred);
bool predicate_registered(const std::string& name);

struct DepthResult {
  int k = 0;
  bool certified = false;  // true when derived from an array skeleton
};

// Contravariant functor on finite-set injections with enumerable fibers.
class DataStructure {
 public:
  enum class Op {
    Array,
    SetSystem,
    Graph1,
    Product,
    Coproduct,
    ComposeI,
    Sub,
    Env,
    Broken,  // test fixture with a deliberately wrong restrict
  };

  static DataStructure array(std::vector<int> alphabet, IndexingSystem indexing);
  static DataStructure setsystem();
  static DataStructure graph1();
  static DataStructure graph2();  // array({0,1}, subsets(2))
  static DataStructure graph3();  // symmetric zero-diagonal binary relations
  static DataStructure binrel();  // array({0,1}, tuples(2))
  static DataStructure total();   // strict total orders inside binrel
  static DataStructure product(DataStructure lhs, DataStructure rhs);
  static DataStructure coproduct(DataStructure lhs, DataStructure rhs);
  static DataStructure compose_with(DataStructure base, IndexingSystem indexing);
  static DataStructure sub(DataStructure base, const std::string& predicate,
                           int hereditarity_n_max = 3);
  static DataStructure env_extend(DataStructure base, int env_count);
  static DataStructure broken_fixture();

  Op op() const;
  const std::string& display_name() const;
  const std::vector<int>& alphabet() const;     // Array
  IndexingSystem indexing() const;              // Array, ComposeI
  DataStructure child(int which = 0) const;
  const std::string& predicate_name() const;    // Sub
  int env_count() const;                        // Env
  bool is_array_type() const;                   // top-level Array (incl. sugar)

  const std::vector<Elem>& elements(const IdSet& a) const;
  Elem restrict(const Injection& tau, const Elem& x) const;
  bool element_of(const IdSet& a, const Elem& x) const;

  CheckReport check_functor_axioms(int n_max) const;
  DepthResult depth(int n_max = 3) const;
  long long count_fiber(const IdSet& b, const IdSet& a, const Elem& x) const;

  // Hereditarity of a named predicate over this base, with witness on failure.
  CheckReport check_hereditary(const std::string& predicate, int n_max) const;

  std::string to_string() const;
  bool same_expression(const DataStructure& other) const;

 private:
  struct Node;
  explicit DataStructure(std::shared_ptr<const Node> node);
  Elem restrict_raw(const Injection& tau, const Elem& x) const;
  IdSet env_labels(const IdSet& a) const;
  Injection env_extend_injection(const Injection& tau) const;

  std::shared_ptr<const Node> node_;
};

}  // namespace exchg

#endif  // EXCHG_STRUCTURES_HPP_
