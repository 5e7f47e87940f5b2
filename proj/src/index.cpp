#include "exchg/index.hpp"

#include <algorithm>
#include <sstream>

namespace exchg {

Index Index::atom(int label) {
  Index i;
  i.kind_ = Kind::Atom;
  i.tag_ = label;
  return i;
}

Index Index::tuple(std::vector<Index> children) {
  Index i;
  i.kind_ = Kind::Tuple;
  i.children_ = std::move(children);
  return i;
}

Index Index::set(std::vector<Index> children) {
  Index i;
  i.kind_ = Kind::Set;
  std::sort(children.begin(), children.end());
  children.erase(std::unique(children.begin(), children.end()), children.end());
  i.children_ = std::move(children);
  return i;
}

Index Index::pair(int slot, Index child) {
  Index i;
  i.kind_ = Kind::Pair;
  i.tag_ = slot;
  i.children_.push_back(std::move(child));
  return i;
}

int Index::label() const {
  if (kind_ != Kind::Atom) throw Error("domain", "label() on non-atom index");
  return tag_;
}

int Index::slot() const {
  if (kind_ != Kind::Pair) throw Error("domain", "slot() on non-pair index");
  return tag_;
}

IdSet Index::atom_labels() const {
  std::vector<int> out;
  auto walk = [&](auto&& self, const Index& i) -> void {
    if (i.kind_ == Kind::Atom) {
      out.push_back(i.tag_);
      return;
    }
    for (const Index& c : i.children_) self(self, c);
  };
  walk(walk, *this);
  return IdSet(std::move(out));
}

int Index::compare(const Index& other) const {
  if (kind_ != other.kind_)
    return static_cast<int>(kind_) < static_cast<int>(other.kind_) ? -1 : 1;
  if (tag_ != other.tag_) return tag_ < other.tag_ ? -1 : 1;
  size_t n = std::min(children_.size(), other.children_.size());
  for (size_t i = 0; i < n; ++i) {
    int c = children_[i].compare(other.children_[i]);
    if (c != 0) return c;
  }
  if (children_.size() != other.children_.size())
    return children_.size() < other.children_.size() ? -1 : 1;
  return 0;
}

std::string Index::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Atom:
      os << tag_;
      break;
    case Kind::Tuple: {
      os << '(';
      for (size_t i = 0; i < children_.size(); ++i) {
        if (i) os << ',';
        os << children_[i].to_string();
      }
      os << ')';
      break;
    }
    case Kind::Set: {
      os << '{';
      for (size_t i = 0; i < children_.size(); ++i) {
        if (i) os << ',';
        os << children_[i].to_string();
      }
      os << '}';
      break;
    }
    case Kind::Pair:
      os << '<' << tag_ << ':' << children_[0].to_string() << '>';
      break;
  }
  return os.str();
}

}  // namespace exchg
