#include "exchg/structures.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace exchg {

namespace {

constexpr long long kEnumBound = 1LL << 20;

std::mutex g_registry_mu;
std::map<std::string, StructurePredicate>& registry() {
  static std::map<std::string, StructurePredicate> r;
  return r;
}

// Built-in predicates over binary-relation arrays and set systems.

int rel_at(const Elem& x, int i, int j) {
  return x.at(Index::tuple({Index::atom(i), Index::atom(j)}));
}

bool pred_total(const IdSet& a, const Elem& x) {
  for (int i : a)
    if (rel_at(x, i, i) != 0) return false;
  for (int i : a)
    for (int j : a) {
      if (i == j) continue;
      if (rel_at(x, i, j) != 1 - rel_at(x, j, i)) return false;
    }
  for (int i : a)
    for (int j : a)
      for (int k : a) {
        if (i == j || j == k || i == k) continue;
        if (rel_at(x, i, j) * rel_at(x, j, k) * (1 - rel_at(x, i, k)) != 0)
          return false;
      }
  return true;
}

bool pred_sym_noloop(const IdSet& a, const Elem& x) {
  for (int i : a)
    if (rel_at(x, i, i) != 0) return false;
  for (int i : a)
    for (int j : a)
      if (i < j && rel_at(x, i, j) != rel_at(x, j, i)) return false;
  return true;
}

bool pred_partition(const IdSet& a, const Elem& x) {
  // Blocks cover a and are pairwise disjoint; the empty set may occur as a
  // block (restriction images keep it).
  IdSet covered;
  for (const IdSet& block : x.sets()) {
    if (!block.subset_of(a)) return false;
    if (!covered.intersect(block).empty()) return false;
    covered = covered.union_with(block);
  }
  return covered == a;
}

bool pred_hierarchy(const IdSet& a, const Elem& x) {
  const auto& sets = x.sets();
  for (const IdSet& s : sets)
    if (!s.subset_of(a)) return false;
  for (size_t i = 0; i < sets.size(); ++i)
    for (size_t j = i + 1; j < sets.size(); ++j) {
      const IdSet& s = sets[i];
      const IdSet& t = sets[j];
      if (s.intersect(t).empty()) continue;
      if (!s.subset_of(t) && !t.subset_of(s)) return false;
    }
  return true;
}

bool pred_interval(const IdSet& a, const Elem& x) {
  // Interval hypergraph: some ordering of a makes every set contiguous.
  for (const IdSet& s : x.sets())
    if (!s.subset_of(a)) return false;
  std::vector<int> order = a.labels();
  std::sort(order.begin(), order.end());
  do {
    bool ok = true;
    for (const IdSet& s : x.sets()) {
      if (s.empty()) continue;
      int lo = -1, hi = -1;
      for (int pos = 0; pos < static_cast<int>(order.size()); ++pos) {
        if (s.contains(order[static_cast<size_t>(pos)])) {
          if (lo < 0) lo = pos;
          hi = pos;
        }
      }
      if (hi - lo + 1 != s.size()) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

void ensure_builtins() {
  static std::once_flag once;
  std::call_once(once, [] {
    std::lock_guard<std::mutex> g(g_registry_mu);
    registry()["total"] = pred_total;
    registry()["sym_noloop"] = pred_sym_noloop;
    registry()["partition"] = pred_partition;
    registry()["hierarchy"] = pred_hierarchy;
    registry()["interval"] = pred_interval;
  });
}

}  // namespace

void register_predicate(const std::string& name, StructurePredicate pred) {
  ensure_builtins();
  std::lock_guard<std::mutex> g(g_registry_mu);
  registry()[name] = std::move(pred);
}

bool predicate_registered(const std::string& name) {
  ensure_builtins();
  std::lock_guard<std::mutex> g(g_registry_mu);
  return registry().count(name) > 0;
}

namespace {
StructurePredicate lookup_predicate(const std::string& name) {
  ensure_builtins();
  std::lock_guard<std::mutex> g(g_registry_mu);
  auto it = registry().find(name);
  if (it == registry().end())
    throw Error("predicate", "unknown predicate: " + name);
  return it->second;
}
}  // namespace

struct DataStructure::Node {
  Op op;
  std::string display;
  std::vector<int> alphabet;
  std::optional<IndexingSystem> indexing;   // Array
  std::optional<IndexingSystem> relabeler;  // ComposeI: compose(id, I)
  std::vector<std::shared_ptr<const Node>> kids;
  std::string pred;
  int env_count = 0;

  mutable std::mutex mu;
  mutable std::map<IdSet, std::vector<Elem>> elements_cache;
};

DataStructure::DataStructure(std::shared_ptr<const Node> node)
    : node_(std::move(node)) {}

DataStructure DataStructure::array(std::vector<int> alphabet,
                                   IndexingSystem indexing) {
  if (alphabet.empty())
    throw Error("domain", "array alphabet must be nonempty");
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  auto n = std::make_shared<Node>();
  n->op = Op::Array;
  n->alphabet = std::move(alphabet);
  n->indexing = std::move(indexing);
  return DataStructure(std::move(n));
}

DataStructure DataStructure::setsystem() {
  auto n = std::make_shared<Node>();
  n->op = Op::SetSystem;
  return DataStructure(std::move(n));
}

DataStructure DataStructure::graph1() {
  auto n = std::make_shared<Node>();
  n->op = Op::Graph1;
  return DataStructure(std::move(n));
}

DataStructure DataStructure::graph2() {
  DataStructure d = array({0, 1}, IndexingSystem::subsets(2));
  const_cast<Node*>(d.node_.get())->display = "graph2";
  return d;
}

DataStructure DataStructure::binrel() {
  DataStructure d = array({0, 1}, IndexingSystem::tuples(2));
  const_cast<Node*>(d.node_.get())->display = "binrel";
  return d;
}

DataStructure DataStructure::graph3() {
  DataStructure d = sub(array({0, 1}, IndexingSystem::tuples(2)), "sym_noloop");
  const_cast<Node*>(d.node_.get())->display = "graph3";
  return d;
}

DataStructure DataStructure::total() {
  DataStructure d = sub(array({0, 1}, IndexingSystem::tuples(2)), "total");
  const_cast<Node*>(d.node_.get())->display = "total";
  return d;
}

DataStructure DataStructure::product(DataStructure l, DataStructure r) {
  auto n = std::make_shared<Node>();
  n->op = Op::Product;
  n->kids = {l.node_, r.node_};
  return DataStructure(std::move(n));
}

DataStructure DataStructure::coproduct(DataStructure l, DataStructure r) {
  auto n = std::make_shared<Node>();
  n->op = Op::Coproduct;
  n->kids = {l.node_, r.node_};
  return DataStructure(std::move(n));
}

DataStructure DataStructure::compose_with(DataStructure base,
                                          IndexingSystem indexing) {
  auto n = std::make_shared<Node>();
  n->op = Op::ComposeI;
  n->kids = {base.node_};
  n->indexing = indexing;
  n->relabeler = IndexingSystem::compose(IndexingSystem::id(), indexing);
  return DataStructure(std::move(n));
}

DataStructure DataStructure::sub(DataStructure base, const std::string& pred,
                                 int hereditarity_n_max) {
  lookup_predicate(pred);  // fail fast on unknown names
  static std::mutex check_mu;
  static std::set<std::string> checked_ok;
  std::string key = pred + "|" + base.to_string() + "|" +
                    std::to_string(hereditarity_n_max);
  bool known_ok;
  {
    std::lock_guard<std::mutex> g(check_mu);
    known_ok = checked_ok.count(key) > 0;
  }
  if (!known_ok) {
    CheckReport rep = base.check_hereditary(pred, hereditarity_n_max);
    if (!rep.pass)
      throw Error("predicate", "predicate '" + pred +
                                   "' is not hereditary over " +
                                   base.to_string() + ": " + rep.message);
    std::lock_guard<std::mutex> g(check_mu);
    checked_ok.insert(key);
  }
  auto n = std::make_shared<Node>();
  n->op = Op::Sub;
  n->kids = {base.node_};
  n->pred = pred;
  return DataStructure(std::move(n));
}

DataStructure DataStructure::env_extend(DataStructure base, int env_count) {
  if (env_count < 0) throw Error("domain", "env count must be >= 0");
  auto n = std::make_shared<Node>();
  n->op = Op::Env;
  n->kids = {base.node_};
  n->env_count = env_count;
  return DataStructure(std::move(n));
}

DataStructure DataStructure::broken_fixture() {
  auto n = std::make_shared<Node>();
  n->op = Op::Broken;
  n->kids = {graph2().node_};
  return DataStructure(std::move(n));
}

DataStructure::Op DataStructure::op() const { return node_->op; }
const std::string& DataStructure::display_name() const { return node_->display; }
const std::vector<int>& DataStructure::alphabet() const {
  if (node_->op != Op::Array) throw Error("domain", "alphabet() on non-array");
  return node_->alphabet;
}
IndexingSystem DataStructure::indexing() const {
  if (!node_->indexing) throw Error("domain", "structure has no indexing");
  return *node_->indexing;
}
DataStructure DataStructure::child(int which) const {
  return DataStructure(node_->kids.at(static_cast<size_t>(which)));
}
const std::string& DataStructure::predicate_name() const { return node_->pred; }
int DataStructure::env_count() const { return node_->env_count; }
bool DataStructure::is_array_type() const { return node_->op == Op::Array; }

IdSet DataStructure::env_labels(const IdSet& a) const {
  std::vector<int> fresh;
  for (int j = 1; j <= node_->env_count; ++j) fresh.push_back(a.max_label() + j);
  return IdSet(std::move(fresh));
}

Injection DataStructure::env_extend_injection(const Injection& tau) const {
  IdSet eb = env_labels(tau.dom());
  IdSet ea = env_labels(tau.cod());
  std::vector<std::pair<int, int>> pairs = tau.pairs();
  for (int j = 0; j < node_->env_count; ++j)
    pairs.emplace_back(eb.labels()[static_cast<size_t>(j)],
                       ea.labels()[static_cast<size_t>(j)]);
  return Injection(tau.dom().union_with(eb), tau.cod().union_with(ea),
                   std::move(pairs));
}

const std::vector<Elem>& DataStructure::elements(const IdSet& a) const {
  {
    std::lock_guard<std::mutex> g(node_->mu);
    auto it = node_->elements_cache.find(a);
    if (it != node_->elements_cache.end()) return it->second;
  }
  std::vector<Elem> out;
  switch (node_->op) {
    case Op::Array: {
      const std::vector<Index>& idx = node_->indexing->indices(a);
      long long count = 1;
      for (size_t i = 0; i < idx.size(); ++i) {
        count *= static_cast<long long>(node_->alphabet.size());
        if (count > kEnumBound)
          throw Error("size", "array fiber too large to enumerate over " +
                                  a.to_string());
      }
      std::vector<size_t> odo(idx.size(), 0);
      while (true) {
        std::vector<std::pair<Index, int>> entries;
        for (size_t i = 0; i < idx.size(); ++i)
          entries.emplace_back(idx[i], node_->alphabet[odo[i]]);
        out.push_back(Elem::array(std::move(entries)));
        size_t pos = 0;
        while (pos < odo.size()) {
          if (++odo[pos] < node_->alphabet.size()) break;
          odo[pos++] = 0;
        }
        if (pos == odo.size()) break;
        if (idx.empty()) break;
      }
      break;
    }
    case Op::SetSystem: {
      if (a.size() > 4)
        throw Error("size", "setsystem fiber too large over " + a.to_string());
      std::vector<IdSet> subs = enumerate_subsets(a);
      size_t m = subs.size();
      for (unsigned long long mask = 0; mask < (1ULL << m); ++mask) {
        std::vector<IdSet> chosen;
        for (size_t i = 0; i < m; ++i)
          if (mask & (1ULL << i)) chosen.push_back(subs[i]);
        out.push_back(Elem::setsystem(std::move(chosen)));
      }
      break;
    }
    case Op::Graph1: {
      std::vector<IdSet> pairs = enumerate_subsets(a, SubsetFilter::ExactSize, 2);
      if (pairs.size() > 20)
        throw Error("size", "graph fiber too large over " + a.to_string());
      for (unsigned long long mask = 0; mask < (1ULL << pairs.size()); ++mask) {
        std::vector<IdSet> edges;
        for (size_t i = 0; i < pairs.size(); ++i)
          if (mask & (1ULL << i)) edges.push_back(pairs[i]);
        out.push_back(Elem::graph1(a, std::move(edges)));
      }
      break;
    }
    case Op::Product: {
      for (const Elem& x : child(0).elements(a))
        for (const Elem& y : child(1).elements(a))
          out.push_back(Elem::pair(x, y));
      break;
    }
    case Op::Coproduct: {
      for (const Elem& x : child(0).elements(a)) out.push_back(Elem::tagged(0, x));
      for (const Elem& y : child(1).elements(a)) out.push_back(Elem::tagged(1, y));
      break;
    }
    case Op::ComposeI:
      out = child(0).elements(node_->relabeler->inner_labels(a));
      break;
    case Op::Sub: {
      StructurePredicate p = lookup_predicate(node_->pred);
      for (const Elem& x : child(0).elements(a))
        if (p(a, x)) out.push_back(x);
      break;
    }
    case Op::Env:
      out = child(0).elements(a.union_with(env_labels(a)));
      break;
    case Op::Broken:
      out = child(0).elements(a);
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::lock_guard<std::mutex> g(node_->mu);
  return node_->elements_cache.emplace(a, std::move(out)).first->second;
}

bool DataStructure::element_of(const IdSet& a, const Elem& x) const {
  try {
    switch (node_->op) {
      case Op::Array: {
        if (x.kind() != Elem::Kind::Array) return false;
        const std::vector<Index>& idx = node_->indexing->indices(a);
        if (x.entries().size() != idx.size()) return false;
        for (size_t i = 0; i < idx.size(); ++i) {
          if (!(x.entries()[i].first == idx[i])) return false;
          if (!std::binary_search(node_->alphabet.begin(),
                                  node_->alphabet.end(),
                                  x.entries()[i].second))
            return false;
        }
        return true;
      }
      case Op::SetSystem: {
        if (x.kind() != Elem::Kind::SetSystem) return false;
        for (const IdSet& s : x.sets())
          if (!s.subset_of(a)) return false;
        return true;
      }
      case Op::Graph1:
        return x.kind() == Elem::Kind::Graph1 && x.vertices() == a;
      case Op::Product:
        return x.kind() == Elem::Kind::Pair &&
               child(0).element_of(a, x.left()) &&
               child(1).element_of(a, x.right());
      case Op::Coproduct:
        return x.kind() == Elem::Kind::Tagged && (x.tag() == 0 || x.tag() == 1) &&
               child(x.tag()).element_of(a, x.inner());
      case Op::ComposeI:
        return child(0).element_of(node_->relabeler->inner_labels(a), x);
      case Op::Sub:
        return child(0).element_of(a, x) && lookup_predicate(node_->pred)(a, x);
      case Op::Env:
        return child(0).element_of(a.union_with(env_labels(a)), x);
      case Op::Broken:
        return child(0).element_of(a, x);
    }
  } catch (const Error&) {
    return false;
  }
  return false;
}

Elem DataStructure::restrict_raw(const Injection& tau, const Elem& x) const {
  switch (node_->op) {
    case Op::Array: {
      std::vector<std::pair<Index, int>> entries;
      for (const Index& i : node_->indexing->indices(tau.dom()))
        entries.emplace_back(i, x.at(node_->indexing->apply(tau, i)));
      return Elem::array(std::move(entries));
    }
    case Op::SetSystem: {
      std::vector<IdSet> out;
      for (const IdSet& s : x.sets()) {
        std::vector<int> pre;
        for (int i : tau.dom())
          if (s.contains(tau(i))) pre.push_back(i);
        out.push_back(IdSet(std::move(pre)));
      }
      return Elem::setsystem(std::move(out));
    }
    case Op::Graph1: {
      std::vector<IdSet> edges;
      for (const IdSet& e :
           enumerate_subsets(tau.dom(), SubsetFilter::ExactSize, 2)) {
        IdSet img = tau.image_of(e);
        if (std::binary_search(x.sets().begin(), x.sets().end(), img))
          edges.push_back(e);
      }
      return Elem::graph1(tau.dom(), std::move(edges));
    }
    case Op::Product:
      return Elem::pair(child(0).restrict_raw(tau, x.left()),
                        child(1).restrict_raw(tau, x.right()));
    case Op::Coproduct:
      return Elem::tagged(x.tag(), child(x.tag()).restrict_raw(tau, x.inner()));
    case Op::ComposeI:
      return child(0).restrict_raw(node_->relabeler->label_injection(tau), x);
    case Op::Sub:
      return child(0).restrict_raw(tau, x);
    case Op::Env:
      return child(0).restrict_raw(env_extend_injection(tau), x);
    case Op::Broken: {
      Elem y = child(0).restrict_raw(tau, x);
      if (tau.dom() != tau.cod() && !y.entries().empty()) {
        auto entries = y.entries();
        entries[0].second = 1 - entries[0].second;
        return Elem::array(std::move(entries));
      }
      return y;
    }
  }
  throw Error("domain", "unreachable structure op");
}

Elem DataStructure::restrict(const Injection& tau, const Elem& x) const {
  if (!element_of(tau.cod(), x))
    throw Error("membership", "element is not a value over " +
                                  tau.cod().to_string());
  return restrict_raw(tau, x);
}

CheckReport DataStructure::check_functor_axioms(int n_max) const {
  std::vector<IdSet> sets = enumerate_subsets(IdSet::range(n_max));
  for (const IdSet& a : sets) {
    Injection ida = Injection::identity(a);
    for (const Elem& x : elements(a)) {
      if (!(restrict_raw(ida, x) == x)) {
        CheckReport r;
        r.pass = false;
        r.check = "identity";
        r.message = "identity restriction moved " + x.to_string();
        r.witness_sets = {a};
        return r;
      }
    }
  }
  for (const IdSet& a : sets) {
    for (const IdSet& b : sets) {
      for (const Injection& sigma : enumerate_injections(b, a)) {
        for (const Elem& x : elements(a)) {
          Elem y = restrict_raw(sigma, x);
          if (!element_of(b, y)) {
            CheckReport r;
            r.pass = false;
            r.check = "membership";
            r.message = "restriction left the fiber: " + y.to_string();
            r.witness_sets = {b, a};
            r.witness_injection = sigma;
            return r;
          }
          for (const IdSet& c : sets) {
            for (const Injection& tau : enumerate_injections(c, b)) {
              Elem direct = restrict_raw(exchg::compose(sigma, tau), x);
              Elem stepped = restrict_raw(tau, y);
              if (!(direct == stepped)) {
                CheckReport r;
                r.pass = false;
                r.check = "composition";
                r.message = "restrict(sigma o tau) != restrict(tau) o "
                            "restrict(sigma) at " +
                            x.to_string();
                r.witness_sets = {c, b, a};
                r.witness_injection = exchg::compose(sigma, tau);
                return r;
              }
            }
          }
        }
      }
    }
  }
  return CheckReport::ok();
}

DepthResult DataStructure::depth(int n_max) const {
  if (node_->op == Op::Array) {
    DepthResult r;
    r.k = node_->indexing->skeleton(n_max).max_rep_size();
    r.certified = true;
    return r;
  }
  DepthResult r;
  r.certified = false;
  for (int k = 0; k <= n_max; ++k) {
    bool ok = true;
    for (int m = 0; m <= n_max && ok; ++m) {
      IdSet a = IdSet::range(m);
      const std::vector<Elem>& elems = elements(a);
      std::vector<IdSet> small = enumerate_subsets(a, SubsetFilter::AtMostSize, k);
      for (size_t i = 0; i < elems.size() && ok; ++i) {
        for (size_t j = i + 1; j < elems.size() && ok; ++j) {
          bool separated = false;
          for (const IdSet& sub : small) {
            Injection inc = Injection::inclusion(sub, a);
            if (!(restrict_raw(inc, elems[i]) == restrict_raw(inc, elems[j]))) {
              separated = true;
              break;
            }
          }
          if (!separated) ok = false;
        }
      }
    }
    if (ok) {
      r.k = k;
      return r;
    }
  }
  r.k = n_max;
  return r;
}

long long DataStructure::count_fiber(const IdSet& b, const IdSet& a,
                                     const Elem& x) const {
  if (!b.subset_of(a)) throw Error("domain", "count_fiber needs b subset of a");
  if (!element_of(b, x))
    throw Error("membership", "element is not a value over " + b.to_string());
  Injection inc = Injection::inclusion(b, a);
  long long count = 0;
  for (const Elem& y : elements(a))
    if (restrict_raw(inc, y) == x) ++count;
  return count;
}

CheckReport DataStructure::check_hereditary(const std::string& predicate,
                                            int n_max) const {
  StructurePredicate p = lookup_predicate(predicate);
  std::vector<IdSet> sets = enumerate_subsets(IdSet::range(n_max));
  for (const IdSet& a : sets) {
    for (const Elem& x : elements(a)) {
      if (!p(a, x)) continue;
      for (const IdSet& b : sets) {
        for (const Injection& tau : enumerate_injections(b, a)) {
          Elem y = restrict_raw(tau, x);
          if (!p(b, y)) {
            CheckReport r;
            r.pass = false;
            r.check = "hereditarity";
            r.message = "restriction of satisfying element " + x.to_string() +
                        " along " + tau.to_string() + " violates '" +
                        predicate + "'";
            r.witness_sets = {b, a};
            r.witness_injection = tau;
            return r;
          }
        }
      }
    }
  }
  return CheckReport::ok();
}

std::string DataStructure::to_string() const {
  if (!node_->display.empty()) return node_->display;
  switch (node_->op) {
    case Op::Array: {
      std::ostringstream os;
      os << "array({";
      for (size_t i = 0; i < node_->alphabet.size(); ++i) {
        if (i) os << ',';
        os << node_->alphabet[i];
      }
      os << "}," << node_->indexing->to_string() << ")";
      return os.str();
    }
    case Op::SetSystem:
      return "setsystem";
    case Op::Graph1:
      return "graph1";
    case Op::Product:
      return "product(" + child(0).to_string() + "," + child(1).to_string() + ")";
    case Op::Coproduct:
      return "coproduct(" + child(0).to_string() + "," + child(1).to_string() +
             ")";
    case Op::ComposeI:
      return "composeI(" + child(0).to_string() + "," +
             node_->indexing->to_string() + ")";
    case Op::Sub:
      return "sub(" + child(0).to_string() + "," + node_->pred + ")";
    case Op::Env:
      return "env(" + child(0).to_string() + "," +
             std::to_string(node_->env_count) + ")";
    case Op::Broken:
      return "broken";
  }
  return "?";
}

bool DataStructure::same_expression(const DataStructure& other) const {
  if (node_ == other.node_) return true;
  if (node_->op != other.node_->op) return false;
  if (node_->display != other.node_->display) return false;
  if (node_->alphabet != other.node_->alphabet) return false;
  if (node_->pred != other.node_->pred) return false;
  if (node_->env_count != other.node_->env_count) return false;
  bool has_is = node_->indexing.has_value();
  if (has_is != other.node_->indexing.has_value()) return false;
  if (has_is && !node_->indexing->same_expression(*other.node_->indexing))
    return false;
  if (node_->kids.size() != other.node_->kids.size()) return false;
  for (size_t i = 0; i < node_->kids.size(); ++i)
    if (!child(static_cast<int>(i))
             .same_expression(other.child(static_cast<int>(i))))
      return false;
  return true;
}

}  // namespace exchg
