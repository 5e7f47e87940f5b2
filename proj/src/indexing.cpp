#include "exchg/indexing.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace exchg {

struct IndexingSystem::Node {
  Op op;
  int param = 0;
  std::vector<std::shared_ptr<const Node>> kids;
  std::optional<Index> atomic_rep;

  // Caches. A single mutex per node; child calls happen outside the lock.
  mutable std::mutex mu;
  mutable std::map<IdSet, std::vector<Index>> indices_cache;
  mutable std::map<int, std::vector<Index>> skeleton_cache;
  // Compose relabeling: global per-expression intern table, labels assigned
  // in canonical enumeration order of first use.
  mutable std::map<Index, int> inner_to_label;
  mutable std::vector<Index> label_to_inner;
  mutable std::map<IdSet, IdSet> inner_labels_cache;
};

IndexingSystem::IndexingSystem(std::shared_ptr<const Node> node)
    : node_(std::move(node)) {}

IndexingSystem IndexingSystem::make(Op op, int param,
                                    std::vector<IndexingSystem> kids) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->param = param;
  for (auto& k : kids) n->kids.push_back(k.node_);
  return IndexingSystem(std::move(n));
}

IndexingSystem IndexingSystem::id() { return make(Op::Id, 0, {}); }
IndexingSystem IndexingSystem::powerset() { return make(Op::Powerset, 0, {}); }
IndexingSystem IndexingSystem::subsets(int k) {
  if (k < 0) throw Error("domain", "subsets(k) needs k >= 0");
  return make(Op::Subsets, k, {});
}
IndexingSystem IndexingSystem::subsets_le(int k) {
  if (k < 0) throw Error("domain", "subsets_le(k) needs k >= 0");
  return make(Op::SubsetsLe, k, {});
}
IndexingSystem IndexingSystem::tuples(int k) {
  if (k < 0) throw Error("domain", "tuples(k) needs k >= 0");
  return make(Op::Tuples, k, {});
}
IndexingSystem IndexingSystem::dtuples(int k) {
  if (k < 0) throw Error("domain", "dtuples(k) needs k >= 0");
  return make(Op::DTuples, k, {});
}
IndexingSystem IndexingSystem::dtuples_star() {
  return make(Op::DTuplesStar, 0, {});
}
IndexingSystem IndexingSystem::pair_slots(int k) {
  if (k < 1) throw Error("domain", "pair(k) needs k >= 1");
  return make(Op::PairSlots, k, {});
}
IndexingSystem IndexingSystem::product(IndexingSystem l, IndexingSystem r) {
  return make(Op::Product, 0, {std::move(l), std::move(r)});
}
IndexingSystem IndexingSystem::coproduct(IndexingSystem l, IndexingSystem r) {
  return make(Op::Coproduct, 0, {std::move(l), std::move(r)});
}
IndexingSystem IndexingSystem::compose(IndexingSystem outer,
                                       IndexingSystem inner) {
  return make(Op::Compose, 0, {std::move(outer), std::move(inner)});
}
IndexingSystem IndexingSystem::non_example() {
  return make(Op::NonExample, 0, {});
}

IndexingSystem::Op IndexingSystem::op() const { return node_->op; }
int IndexingSystem::param() const { return node_->param; }
IndexingSystem IndexingSystem::left() const {
  return IndexingSystem(node_->kids.at(0));
}
IndexingSystem IndexingSystem::right() const {
  return IndexingSystem(node_->kids.at(1));
}
Index IndexingSystem::atomic_rep() const {
  if (node_->op != Op::Atomic || !node_->atomic_rep)
    throw Error("domain", "atomic_rep() on non-atomic system");
  return *node_->atomic_rep;
}

namespace {

// Cartesian power: all length-k tuples over the given atoms.
void tuple_rec(const std::vector<int>& labels, int k, bool distinct,
               std::vector<Index>& stack_atoms, std::vector<int>& used,
               std::vector<Index>& out) {
  if (static_cast<int>(stack_atoms.size()) == k) {
    out.push_back(Index::tuple(stack_atoms));
    return;
  }
  for (size_t t = 0; t < labels.size(); ++t) {
    if (distinct && used[t]) continue;
    used[t] = 1;
    stack_atoms.push_back(Index::atom(labels[t]));
    tuple_rec(labels, k, distinct, stack_atoms, used, out);
    stack_atoms.pop_back();
    used[t] = 0;
  }
}

std::vector<Index> all_tuples(const IdSet& b, int k, bool distinct) {
  std::vector<Index> out;
  if (distinct && k > b.size()) return out;
  std::vector<Index> stack_atoms;
  std::vector<int> used(b.labels().size(), 0);
  tuple_rec(b.labels(), k, distinct, stack_atoms, used, out);
  return out;
}

Index set_of_labels(const IdSet& s) {
  std::vector<Index> kids;
  for (int x : s) kids.push_back(Index::atom(x));
  return Index::set(std::move(kids));
}

bool is_atom_in(const Index& i, const IdSet& b) {
  return i.kind() == Index::Kind::Atom && b.contains(i.label());
}

}  // namespace

const std::vector<Index>& IndexingSystem::indices(const IdSet& b) const {
  {
    std::lock_guard<std::mutex> g(node_->mu);
    auto it = node_->indices_cache.find(b);
    if (it != node_->indices_cache.end()) return it->second;
  }
  std::vector<Index> out;
  switch (node_->op) {
    case Op::Id:
      for (int x : b) out.push_back(Index::atom(x));
      break;
    case Op::Powerset:
      for (const IdSet& s : enumerate_subsets(b)) out.push_back(set_of_labels(s));
      break;
    case Op::Subsets:
      for (const IdSet& s :
           enumerate_subsets(b, SubsetFilter::ExactSize, node_->param))
        out.push_back(set_of_labels(s));
      break;
    case Op::SubsetsLe:
      for (const IdSet& s :
           enumerate_subsets(b, SubsetFilter::AtMostSize, node_->param))
        out.push_back(set_of_labels(s));
      break;
    case Op::Tuples:
      out = all_tuples(b, node_->param, false);
      break;
    case Op::DTuples:
      out = all_tuples(b, node_->param, true);
      break;
    case Op::DTuplesStar:
      for (int k = 0; k <= b.size(); ++k)
        for (Index& t : all_tuples(b, k, true)) out.push_back(std::move(t));
      break;
    case Op::PairSlots:
      for (int l = 1; l <= node_->param; ++l)
        for (int x : b) out.push_back(Index::pair(l, Index::atom(x)));
      break;
    case Op::Product:
      for (const Index& i : left().indices(b))
        for (const Index& j : right().indices(b))
          out.push_back(Index::tuple({i, j}));
      break;
    case Op::Coproduct:
      for (const Index& i : left().indices(b)) out.push_back(Index::pair(0, i));
      for (const Index& j : right().indices(b)) out.push_back(Index::pair(1, j));
      break;
    case Op::Compose: {
      IdSet labels = inner_labels(b);
      out = left().indices(labels);
      break;
    }
    case Op::NonExample:
      if (b.size() >= 2)
        for (int x : b) out.push_back(Index::atom(x));
      break;
    case Op::Atomic: {
      IndexingSystem parent(node_->kids.at(0));
      for (const Index& i : parent.indices(b))
        if (parent.rep_of(i) == *node_->atomic_rep) out.push_back(i);
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::lock_guard<std::mutex> g(node_->mu);
  return node_->indices_cache.emplace(b, std::move(out)).first->second;
}

IdSet IndexingSystem::inner_labels(const IdSet& b) const {
  if (node_->op != Op::Compose)
    throw Error("domain", "inner_labels on non-compose system");
  {
    std::lock_guard<std::mutex> g(node_->mu);
    auto it = node_->inner_labels_cache.find(b);
    if (it != node_->inner_labels_cache.end()) return it->second;
  }
  const std::vector<Index>& inner = right().indices(b);
  std::vector<int> labels;
  {
    std::lock_guard<std::mutex> g(node_->mu);
    for (const Index& x : inner) {
      auto it = node_->inner_to_label.find(x);
      if (it == node_->inner_to_label.end()) {
        int fresh = static_cast<int>(node_->label_to_inner.size());
        node_->label_to_inner.push_back(x);
        it = node_->inner_to_label.emplace(x, fresh).first;
      }
      labels.push_back(it->second);
    }
    IdSet result{labels};
    return node_->inner_labels_cache.emplace(b, std::move(result)).first->second;
  }
}

int IndexingSystem::intern_inner(const Index& inner) const {
  if (node_->op != Op::Compose)
    throw Error("domain", "intern_inner on non-compose system");
  std::lock_guard<std::mutex> g(node_->mu);
  auto it = node_->inner_to_label.find(inner);
  if (it == node_->inner_to_label.end()) {
    int fresh = static_cast<int>(node_->label_to_inner.size());
    node_->label_to_inner.push_back(inner);
    it = node_->inner_to_label.emplace(inner, fresh).first;
  }
  return it->second;
}

Index IndexingSystem::inner_of_label(int label) const {
  if (node_->op != Op::Compose)
    throw Error("domain", "inner_of_label on non-compose system");
  std::lock_guard<std::mutex> g(node_->mu);
  if (label < 0 || label >= static_cast<int>(node_->label_to_inner.size()))
    throw Error("membership", "unknown composed-index label");
  return node_->label_to_inner[static_cast<size_t>(label)];
}

Injection IndexingSystem::label_injection(const Injection& tau) const {
  if (node_->op != Op::Compose)
    throw Error("domain", "label_injection on non-compose system");
  IdSet lb = inner_labels(tau.dom());
  IdSet la = inner_labels(tau.cod());
  std::vector<std::pair<int, int>> pairs;
  for (int l : lb) {
    Index x = inner_of_label(l);
    Index y = right().apply(tau, x);
    pairs.emplace_back(l, intern_inner(y));
  }
  return Injection(lb, la, std::move(pairs));
}

bool IndexingSystem::contains(const IdSet& b, const Index& i) const {
  switch (node_->op) {
    case Op::Id:
      return is_atom_in(i, b);
    case Op::Powerset:
    case Op::Subsets:
    case Op::SubsetsLe: {
      if (i.kind() != Index::Kind::Set) return false;
      for (const Index& c : i.children())
        if (!is_atom_in(c, b)) return false;
      int sz = static_cast<int>(i.children().size());
      if (node_->op == Op::Subsets && sz != node_->param) return false;
      if (node_->op == Op::SubsetsLe && sz > node_->param) return false;
      return true;
    }
    case Op::Tuples:
    case Op::DTuples:
    case Op::DTuplesStar: {
      if (i.kind() != Index::Kind::Tuple) return false;
      int sz = static_cast<int>(i.children().size());
      if (node_->op == Op::Tuples && sz != node_->param) return false;
      if (node_->op == Op::DTuples && sz != node_->param) return false;
      std::vector<int> seen;
      for (const Index& c : i.children()) {
        if (!is_atom_in(c, b)) return false;
        seen.push_back(c.label());
      }
      if (node_->op != Op::Tuples) {
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
          return false;
      }
      return true;
    }
    case Op::PairSlots:
      return i.kind() == Index::Kind::Pair && i.slot() >= 1 &&
             i.slot() <= node_->param && is_atom_in(i.children()[0], b);
    case Op::Product:
      return i.kind() == Index::Kind::Tuple && i.children().size() == 2 &&
             left().contains(b, i.children()[0]) &&
             right().contains(b, i.children()[1]);
    case Op::Coproduct:
      if (i.kind() != Index::Kind::Pair) return false;
      if (i.slot() == 0) return left().contains(b, i.children()[0]);
      if (i.slot() == 1) return right().contains(b, i.children()[0]);
      return false;
    case Op::Compose:
      return left().contains(inner_labels(b), i);
    case Op::NonExample:
      return b.size() >= 2 && is_atom_in(i, b);
    case Op::Atomic: {
      IndexingSystem parent(node_->kids.at(0));
      return parent.contains(b, i) && parent.rep_of(i) == *node_->atomic_rep;
    }
  }
  return false;
}

Index IndexingSystem::apply_raw(const Injection& tau, const Index& i) const {
  switch (node_->op) {
    case Op::Id:
    case Op::NonExample:
      return Index::atom(tau(i.label()));
    case Op::Powerset:
    case Op::Subsets:
    case Op::SubsetsLe: {
      std::vector<Index> kids;
      for (const Index& c : i.children()) kids.push_back(Index::atom(tau(c.label())));
      return Index::set(std::move(kids));
    }
    case Op::Tuples:
    case Op::DTuples:
    case Op::DTuplesStar: {
      std::vector<Index> kids;
      for (const Index& c : i.children()) kids.push_back(Index::atom(tau(c.label())));
      return Index::tuple(std::move(kids));
    }
    case Op::PairSlots:
      return Index::pair(i.slot(), Index::atom(tau(i.children()[0].label())));
    case Op::Product:
      return Index::tuple({left().apply_raw(tau, i.children()[0]),
                           right().apply_raw(tau, i.children()[1])});
    case Op::Coproduct: {
      IndexingSystem child = i.slot() == 0 ? left() : right();
      return Index::pair(i.slot(), child.apply_raw(tau, i.children()[0]));
    }
    case Op::Compose:
      return left().apply_raw(label_injection(tau), i);
    case Op::Atomic:
      return IndexingSystem(node_->kids.at(0)).apply_raw(tau, i);
  }
  throw Error("domain", "unreachable indexing op");
}

Index IndexingSystem::apply(const Injection& tau, const Index& i) const {
  if (!contains(tau.dom(), i))
    throw Error("membership",
                "index " + i.to_string() + " does not lie over " +
                    tau.dom().to_string());
  return apply_raw(tau, i);
}

IdSet IndexingSystem::dom(const Index& i) const {
  switch (node_->op) {
    case Op::Product:
      return left().dom(i.children()[0]).union_with(right().dom(i.children()[1]));
    case Op::Coproduct:
      return (i.slot() == 0 ? left() : right()).dom(i.children()[0]);
    case Op::Compose: {
      IdSet outer_dom = left().dom(i);
      IdSet out;
      for (int l : outer_dom)
        out = out.union_with(right().dom(inner_of_label(l)));
      return out;
    }
    case Op::Atomic:
      return IndexingSystem(node_->kids.at(0)).dom(i);
    case Op::NonExample:
      throw Error("domain", "dom undefined for the non-example fixture");
    default:
      // Built-in constructors use exactly the atoms occurring in the term.
      return i.atom_labels();
  }
}

IdSet IndexingSystem::dom_checked(const Index& i, const IdSet& ambient) const {
  if (!contains(ambient, i))
    throw Error("membership", "index " + i.to_string() +
                                  " does not lie over " + ambient.to_string());
  IdSet d = dom(i);
  // Minimality guard: d must be the least set carrying i.
  assert(contains(d, i));
  return d;
}

std::vector<Injection> IndexingSystem::stab(const Index& i) const {
  IdSet d = dom(i);
  std::vector<Injection> out;
  for (const Injection& pi : enumerate_bijections(d, d))
    if (apply_raw(pi, i) == i) out.push_back(pi);
  return out;
}

Index IndexingSystem::rep_of(const Index& i) const {
  IdSet d = dom(i);
  IdSet std_set = IdSet::range(d.size());
  std::optional<Index> best;
  for (const Injection& sigma : enumerate_bijections(d, std_set)) {
    Index cand = apply_raw(sigma, i);
    if (!best || cand < *best) best = cand;
  }
  return *best;
}

Injection IndexingSystem::align_of(const Index& i) const {
  IdSet d = dom(i);
  IdSet std_set = IdSet::range(d.size());
  std::optional<Index> best;
  std::optional<Injection> best_sigma;
  for (const Injection& sigma : enumerate_bijections(d, std_set)) {
    Index cand = apply_raw(sigma, i);
    if (!best || cand < *best) {
      best = cand;
      best_sigma = sigma;
    }
  }
  return best_sigma->inverse();
}

bool IndexingSystem::equivalent(const Index& i, const Index& j) const {
  return rep_of(i) == rep_of(j);
}

Skeleton IndexingSystem::skeleton(int max_size) const {
  {
    std::lock_guard<std::mutex> g(node_->mu);
    auto it = node_->skeleton_cache.find(max_size);
    if (it != node_->skeleton_cache.end()) return Skeleton(*this, it->second);
  }
  std::vector<Index> reps;
  for (const Index& i : indices(IdSet::range(max_size)))
    reps.push_back(rep_of(i));
  std::sort(reps.begin(), reps.end(), [&](const Index& x, const Index& y) {
    int sx = dom(x).size(), sy = dom(y).size();
    if (sx != sy) return sx < sy;
    return x < y;
  });
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  std::lock_guard<std::mutex> g(node_->mu);
  node_->skeleton_cache.emplace(max_size, reps);
  return Skeleton(*this, std::move(reps));
}

std::vector<IndexingSystem> IndexingSystem::atomic_decompose(int max_size) const {
  std::vector<IndexingSystem> out;
  Skeleton sk = skeleton(max_size);
  for (const Index& rep : sk.representatives()) {
    auto n = std::make_shared<Node>();
    n->op = Op::Atomic;
    n->kids.push_back(node_);
    n->atomic_rep = rep;
    out.push_back(IndexingSystem(std::move(n)));
  }
  return out;
}

namespace {

CheckReport fail_report(std::string check, std::string message,
                        std::vector<IdSet> sets,
                        std::optional<Injection> inj = std::nullopt,
                        std::optional<Index> idx = std::nullopt) {
  CheckReport r;
  r.pass = false;
  r.check = std::move(check);
  r.message = std::move(message);
  r.witness_sets = std::move(sets);
  r.witness_injection = std::move(inj);
  r.witness_index = std::move(idx);
  return r;
}

}  // namespace

CheckReport IndexingSystem::check_axioms(int n_max) const {
  std::vector<IdSet> sets = enumerate_subsets(IdSet::range(n_max));

  // Axiom 2 first: intersection of index sets matches the index set of the
  // intersection, as canonical values.
  for (const IdSet& a : sets) {
    for (const IdSet& b : sets) {
      const std::vector<Index>& ia = indices(a);
      const std::vector<Index>& ib = indices(b);
      std::vector<Index> meet;
      std::set_intersection(ia.begin(), ia.end(), ib.begin(), ib.end(),
                            std::back_inserter(meet));
      if (meet != indices(a.intersect(b))) {
        std::optional<Index> w;
        for (const Index& i : meet) {
          const auto& expect = indices(a.intersect(b));
          if (!std::binary_search(expect.begin(), expect.end(), i)) {
            w = i;
            break;
          }
        }
        return fail_report(
            "intersection",
            "indices(" + a.to_string() + ") and indices(" + b.to_string() +
                ") meet outside indices(" + a.intersect(b).to_string() + ")",
            {a, b}, std::nullopt, w);
      }
    }
  }

  // Axiom 3: inclusions act as the identity on indices over the subset.
  for (const IdSet& b : sets) {
    for (const IdSet& sub : enumerate_subsets(b)) {
      Injection inc = Injection::inclusion(sub, b);
      for (const Index& i : indices(sub)) {
        if (apply_raw(inc, i) != i)
          return fail_report("inclusion",
                             "inclusion moved index " + i.to_string(),
                             {sub, b}, inc, i);
      }
    }
  }

  // Axiom 1: identities, composition, and well-formedness of each I[tau].
  for (const IdSet& b : sets) {
    Injection idb = Injection::identity(b);
    for (const Index& i : indices(b))
      if (apply_raw(idb, i) != i)
        return fail_report("functoriality",
                           "identity moved index " + i.to_string(), {b}, idb, i);
  }
  for (const IdSet& b : sets) {
    for (const IdSet& a : sets) {
      for (const Injection& tau : enumerate_injections(b, a)) {
        const std::vector<Index>& src = indices(b);
        const std::vector<Index>& dst = indices(a);
        std::vector<Index> images;
        for (const Index& i : src) {
          Index img = apply_raw(tau, i);
          if (!std::binary_search(dst.begin(), dst.end(), img))
            return fail_report("functoriality",
                               "image index " + img.to_string() +
                                   " is not an index over " + a.to_string(),
                               {b, a}, tau, i);
          images.push_back(img);
        }
        std::sort(images.begin(), images.end());
        if (std::adjacent_find(images.begin(), images.end()) != images.end())
          return fail_report("functoriality",
                             "induced index map is not injective", {b, a}, tau);
      }
    }
  }
  for (const IdSet& c : sets) {
    for (const IdSet& b : sets) {
      for (const IdSet& a : sets) {
        for (const Injection& tau : enumerate_injections(c, b)) {
          for (const Injection& sigma : enumerate_injections(b, a)) {
            Injection st = exchg::compose(sigma, tau);
            for (const Index& i : indices(c)) {
              if (apply_raw(st, i) != apply_raw(sigma, apply_raw(tau, i)))
                return fail_report(
                    "functoriality",
                    "composition mismatch at index " + i.to_string(),
                    {c, b, a}, st, i);
            }
          }
        }
      }
    }
  }
  return CheckReport::ok();
}

std::string IndexingSystem::to_string() const {
  switch (node_->op) {
    case Op::Id:
      return "id";
    case Op::Powerset:
      return "powerset";
    case Op::Subsets:
      return "subsets(" + std::to_string(node_->param) + ")";
    case Op::SubsetsLe:
      return "subsets_le(" + std::to_string(node_->param) + ")";
    case Op::Tuples:
      return "tuples(" + std::to_string(node_->param) + ")";
    case Op::DTuples:
      return "dtuples(" + std::to_string(node_->param) + ")";
    case Op::DTuplesStar:
      return "dtuples_star";
    case Op::PairSlots:
      return "pair(" + std::to_string(node_->param) + ")";
    case Op::Product:
      return "product(" + left().to_string() + "," + right().to_string() + ")";
    case Op::Coproduct:
      return "coproduct(" + left().to_string() + "," + right().to_string() + ")";
    case Op::Compose:
      return "compose(" + left().to_string() + "," + right().to_string() + ")";
    case Op::NonExample:
      return "nonexample";
    case Op::Atomic:
      return "atomic(" + IndexingSystem(node_->kids.at(0)).to_string() + "," +
             node_->atomic_rep->to_string() + ")";
  }
  return "?";
}

bool IndexingSystem::same_expression(const IndexingSystem& other) const {
  if (node_ == other.node_) return true;
  if (node_->op != other.node_->op || node_->param != other.node_->param)
    return false;
  if (node_->kids.size() != other.node_->kids.size()) return false;
  for (size_t i = 0; i < node_->kids.size(); ++i)
    if (!IndexingSystem(node_->kids[i])
             .same_expression(IndexingSystem(other.node_->kids[i])))
      return false;
  if (node_->op == Op::Atomic &&
      !(*node_->atomic_rep == *other.node_->atomic_rep))
    return false;
  // Compose nodes carry interning state, so distinct nodes are distinct
  // label spaces; treat them as equal expressions only structurally.
  return true;
}

Skeleton::Skeleton(IndexingSystem system, std::vector<Index> representatives)
    : system_(std::move(system)), reps_(std::move(representatives)) {}

int Skeleton::max_rep_size() const {
  int m = 0;
  for (const Index& r : reps_) m = std::max(m, system_.dom(r).size());
  return m;
}

}  // namespace exchg
