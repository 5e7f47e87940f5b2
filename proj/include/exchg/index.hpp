#ifndef EXCHG_INDEX_HPP_
#define EXCHG_INDEX_HPP_

#include <string>
#include <vector>

#include "exchg/ids.hpp"

namespace exchg {

// Recursive index term: atom label, ordered tuple, finite set (kept sorted by
// canonical order) or slot-tagged child. The structural order defined by
// compare() doubles as the canonical byte order used to pick representatives.
class Index {
 public:
  enum class Kind { Atom, Tuple, Set, Pair };

  static Index atom(int label);
  static Index tuple(std::vector<Index> children);
  static Index set(std::vector<Index> children);  // sorts and dedups
  static Index pair(int slot, Index child);

  Kind kind() const { return kind_; }
  int label() const;                          // Atom
  int slot() const;                           // Pair
  const std::vector<Index>& children() const { return children_; }

  // Atom labels occurring anywhere in the term, as a set.
  IdSet atom_labels() const;

  int compare(const Index& other) const;
  bool operator==(const Index& o) const { return compare(o) == 0; }
  bool operator<(const Index& o) const { return compare(o) < 0; }

  std::string to_string() const;

 private:
  Index() = default;
  Kind kind_ = Kind::Atom;
  int tag_ = 0;  // label for Atom, slot for Pair
  std::vector<Index> children_;
};

}  // namespace exchg

#endif  // EXCHG_INDEX_HPP_
