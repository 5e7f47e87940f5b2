#include "exchg/element.hpp"

#include <algorithm>
#include <sstream>

namespace exchg {

Elem Elem::array(std::vector<std::pair<Index, int>> entries) {
  Elem e;
  e.kind_ = Kind::Array;
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 1; i < entries.size(); ++i)
    if (entries[i - 1].first == entries[i].first)
      throw Error("domain", "array element has duplicate index entries");
  e.entries_ = std::move(entries);
  return e;
}

Elem Elem::setsystem(std::vector<IdSet> sets) {
  Elem e;
  e.kind_ = Kind::SetSystem;
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  e.sets_ = std::move(sets);
  return e;
}

Elem Elem::graph1(IdSet vertices, std::vector<IdSet> edges) {
  Elem e;
  e.kind_ = Kind::Graph1;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const IdSet& ed : edges)
    if (ed.size() != 2 || !ed.subset_of(vertices))
      throw Error("domain", "graph1 edges must be 2-subsets of the vertices");
  e.vertices_ = std::move(vertices);
  e.sets_ = std::move(edges);
  return e;
}

Elem Elem::pair(Elem left, Elem right) {
  Elem e;
  e.kind_ = Kind::Pair;
  e.children_.push_back(std::move(left));
  e.children_.push_back(std::move(right));
  return e;
}

Elem Elem::tagged(int tag, Elem inner) {
  Elem e;
  e.kind_ = Kind::Tagged;
  e.tag_ = tag;
  e.children_.push_back(std::move(inner));
  return e;
}

const std::vector<std::pair<Index, int>>& Elem::entries() const {
  if (kind_ != Kind::Array) throw Error("domain", "entries() on non-array");
  return entries_;
}

int Elem::at(const Index& i) const {
  const auto& es = entries();
  auto it = std::lower_bound(
      es.begin(), es.end(), i,
      [](const auto& entry, const Index& key) { return entry.first < key; });
  if (it == es.end() || !(it->first == i))
    throw Error("membership", "array element has no entry at " + i.to_string());
  return it->second;
}

const std::vector<IdSet>& Elem::sets() const {
  if (kind_ != Kind::SetSystem && kind_ != Kind::Graph1)
    throw Error("domain", "sets() on incompatible element");
  return sets_;
}

const IdSet& Elem::vertices() const {
  if (kind_ != Kind::Graph1) throw Error("domain", "vertices() on non-graph1");
  return vertices_;
}

const Elem& Elem::left() const {
  if (kind_ != Kind::Pair) throw Error("domain", "left() on non-pair");
  return children_[0];
}

const Elem& Elem::right() const {
  if (kind_ != Kind::Pair) throw Error("domain", "right() on non-pair");
  return children_[1];
}

int Elem::tag() const {
  if (kind_ != Kind::Tagged) throw Error("domain", "tag() on non-tagged");
  return tag_;
}

const Elem& Elem::inner() const {
  if (kind_ != Kind::Tagged) throw Error("domain", "inner() on non-tagged");
  return children_[0];
}

int Elem::compare(const Elem& o) const {
  if (kind_ != o.kind_)
    return static_cast<int>(kind_) < static_cast<int>(o.kind_) ? -1 : 1;
  if (tag_ != o.tag_) return tag_ < o.tag_ ? -1 : 1;
  if (vertices_ != o.vertices_) return vertices_ < o.vertices_ ? -1 : 1;
  if (entries_.size() != o.entries_.size())
    return entries_.size() < o.entries_.size() ? -1 : 1;
  for (size_t i = 0; i < entries_.size(); ++i) {
    int c = entries_[i].first.compare(o.entries_[i].first);
    if (c != 0) return c;
    if (entries_[i].second != o.entries_[i].second)
      return entries_[i].second < o.entries_[i].second ? -1 : 1;
  }
  if (sets_ != o.sets_) return sets_ < o.sets_ ? -1 : 1;
  if (children_.size() != o.children_.size())
    return children_.size() < o.children_.size() ? -1 : 1;
  for (size_t i = 0; i < children_.size(); ++i) {
    int c = children_[i].compare(o.children_[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::string Elem::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Array: {
      os << "[";
      for (size_t i = 0; i < entries_.size(); ++i) {
        if (i) os << ' ';
        os << entries_[i].first.to_string() << "=" << entries_[i].second;
      }
      os << "]";
      break;
    }
    case Kind::SetSystem: {
      os << "{";
      for (size_t i = 0; i < sets_.size(); ++i) {
        if (i) os << ',';
        os << sets_[i].to_string();
      }
      os << "}";
      break;
    }
    case Kind::Graph1: {
      os << "G(" << vertices_.to_string() << ";";
      for (size_t i = 0; i < sets_.size(); ++i) {
        if (i) os << ',';
        os << sets_[i].to_string();
      }
      os << ")";
      break;
    }
    case Kind::Pair:
      os << "(" << children_[0].to_string() << "|" << children_[1].to_string()
         << ")";
      break;
    case Kind::Tagged:
      os << "<" << tag_ << ":" << children_[0].to_string() << ">";
      break;
  }
  return os.str();
}

}  // namespace exchg
