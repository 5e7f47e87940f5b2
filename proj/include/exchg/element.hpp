#ifndef EXCHG_ELEMENT_HPP_
#define EXCHG_ELEMENT_HPP_

#include <string>
#include <utility>
#include <vector>

#include "exchg/ids.hpp"
#include "exchg/index.hpp"

namespace exchg {

// Value of a combinatorial data structure at one ID set. Arrays are total
// maps index -> symbol (entries sorted by index); set systems are sets of
// subsets; graph1 is an explicit vertex/edge pair; pair/tagged support
// products and coproducts.
class Elem {
 public:
  enum class Kind { Array, SetSystem, Graph1, Pair, Tagged };

  static Elem array(std::vector<std::pair<Index, int>> entries);
  static Elem setsystem(std::vector<IdSet> sets);
  static Elem graph1(IdSet vertices, std::vector<IdSet> edges);
  static Elem pair(Elem left, Elem right);
  static Elem tagged(int tag, Elem inner);

  Kind kind() const { return kind_; }
  const std::vector<std::pair<Index, int>>& entries() const;  // Array
  int at(const Index& i) const;                               // Array lookup
  const std::vector<IdSet>& sets() const;                     // SetSystem, edges
  const IdSet& vertices() const;                              // Graph1
  const Elem& left() const;                                   // Pair
  const Elem& right() const;                                  // Pair
  int tag() const;                                            // Tagged
  const Elem& inner() const;                                  // Tagged

  int compare(const Elem& other) const;
  bool operator==(const Elem& o) const { return compare(o) == 0; }
  bool operator<(const Elem& o) const { return compare(o) < 0; }

  std::string to_string() const;

 private:
  Elem() = default;
  Kind kind_ = Kind::Array;
  int tag_ = 0;
  std::vector<std::pair<Index, int>> entries_;
  std::vector<IdSet> sets_;
  IdSet vertices_;
  std::vector<Elem> children_;
};

}  // namespace exchg

#endif  // EXCHG_ELEMENT_HPP_
