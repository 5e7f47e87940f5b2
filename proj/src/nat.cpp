#include "exchg/nat.hpp"

#include <algorithm>
#include <memory>

namespace exchg {

NaturalTransformation::NaturalTransformation(DataStructure source,
                                             DataStructure target,
                                             Component component,
                                             std::string name)
    : source_(std::move(source)),
      target_(std::move(target)),
      component_(std::move(component)),
      name_(std::move(name)) {}

Elem NaturalTransformation::apply(const IdSet& a, const Elem& x) const {
  if (!source_.element_of(a, x))
    throw Error("membership",
                "input is not an element of the source over " + a.to_string());
  return component_(a, x);
}

NaturalTransformation NaturalTransformation::identity(DataStructure d) {
  DataStructure copy = d;
  return NaturalTransformation(
      d, copy, [](const IdSet&, const Elem& x) { return x; }, "identity");
}

NaturalTransformation NaturalTransformation::composed(
    const NaturalTransformation& after, const NaturalTransformation& before) {
  if (!after.source_.same_expression(before.target_))
    throw Error("composition", "transformations do not compose");
  NaturalTransformation::Component g = after.component_;
  NaturalTransformation::Component f = before.component_;
  return NaturalTransformation(
      before.source_, after.target_,
      [g, f](const IdSet& a, const Elem& x) { return g(a, f(a, x)); },
      before.name_ + ";" + after.name_);
}

namespace {

Index edge_index(int i, int j) {
  return Index::set({Index::atom(i), Index::atom(j)});
}

Index rel_index(int i, int j) {
  return Index::tuple({Index::atom(i), Index::atom(j)});
}

}  // namespace

NaturalTransformation NaturalTransformation::graph1_to_graph2() {
  return NaturalTransformation(
      DataStructure::graph1(), DataStructure::graph2(),
      [](const IdSet& a, const Elem& x) {
        std::vector<std::pair<Index, int>> entries;
        for (const IdSet& p :
             enumerate_subsets(a, SubsetFilter::ExactSize, 2)) {
          int v = std::binary_search(x.sets().begin(), x.sets().end(), p) ? 1 : 0;
          entries.emplace_back(edge_index(p.labels()[0], p.labels()[1]), v);
        }
        return Elem::array(std::move(entries));
      },
      "graph1_to_graph2");
}

NaturalTransformation NaturalTransformation::graph2_to_graph3() {
  return NaturalTransformation(
      DataStructure::graph2(), DataStructure::graph3(),
      [](const IdSet& a, const Elem& x) {
        std::vector<std::pair<Index, int>> entries;
        for (int i : a)
          for (int j : a)
            entries.emplace_back(rel_index(i, j),
                                 i == j ? 0 : x.at(edge_index(i, j)));
        return Elem::array(std::move(entries));
      },
      "graph2_to_graph3");
}

NaturalTransformation NaturalTransformation::graph3_to_graph1() {
  return NaturalTransformation(
      DataStructure::graph3(), DataStructure::graph1(),
      [](const IdSet& a, const Elem& x) {
        std::vector<IdSet> edges;
        for (const IdSet& p :
             enumerate_subsets(a, SubsetFilter::ExactSize, 2))
          if (x.at(rel_index(p.labels()[0], p.labels()[1])) == 1)
            edges.push_back(p);
        return Elem::graph1(a, std::move(edges));
      },
      "graph3_to_graph1");
}

CheckReport KernelFamily::validate() const {
  for (const auto& [rep, table] : kernels) {
    IdSet d = indexing.dom(rep);
    if (d != IdSet::range(d.size())) {
      CheckReport r;
      r.pass = false;
      r.check = "kernel-domain";
      r.message = "kernel key " + rep.to_string() +
                  " is not a standardized representative";
      r.witness_index = rep;
      return r;
    }
    const std::vector<Elem>& inputs = source.elements(d);
    if (table.size() != inputs.size()) {
      CheckReport r;
      r.pass = false;
      r.check = "kernel-table";
      r.message = "kernel table for " + rep.to_string() + " is not total";
      r.witness_index = rep;
      return r;
    }
    for (const Elem& x : inputs) {
      auto it = table.find(x);
      if (it == table.end()) {
        CheckReport r;
        r.pass = false;
        r.check = "kernel-table";
        r.message = "kernel for " + rep.to_string() + " misses input " +
                    x.to_string();
        r.witness_index = rep;
        return r;
      }
      if (!std::binary_search(target_alphabet.begin(), target_alphabet.end(),
                              it->second)) {
        CheckReport r;
        r.pass = false;
        r.check = "kernel-table";
        r.message = "kernel output outside the target alphabet";
        r.witness_index = rep;
        return r;
      }
    }
    for (const Injection& pi : indexing.stab(rep)) {
      for (const Elem& x : inputs) {
        if (table.at(source.restrict(pi, x)) != table.at(x)) {
          CheckReport r;
          r.pass = false;
          r.check = "symmetry";
          r.message = "kernel for " + rep.to_string() +
                      " is not invariant under stabilizer element " +
                      pi.to_string() + " at input " + x.to_string();
          r.witness_index = rep;
          r.witness_injection = pi;
          return r;
        }
      }
    }
  }
  return CheckReport::ok();
}

NaturalTransformation build_from_kernels(const KernelFamily& family) {
  CheckReport v = family.validate();
  if (!v.pass) throw Error("symmetry", v.message);
  auto shared = std::make_shared<KernelFamily>(family);
  DataStructure target =
      DataStructure::array(family.target_alphabet, family.indexing);
  return NaturalTransformation(
      family.source, target,
      [shared](const IdSet& a, const Elem& x) {
        std::vector<std::pair<Index, int>> entries;
        for (const Index& i : shared->indexing.indices(a)) {
          Index rep = shared->indexing.rep_of(i);
          auto it = shared->kernels.find(rep);
          if (it == shared->kernels.end())
            throw Error("membership", "missing representative kernel for " +
                                          rep.to_string());
          Injection align = shared->indexing.align_of(i);
          Injection into_a = compose(
              Injection::inclusion(shared->indexing.dom(i), a), align);
          Elem input = shared->source.restrict(into_a, x);
          entries.emplace_back(i, it->second.at(input));
        }
        return Elem::array(std::move(entries));
      },
      "kernel_family");
}

KernelFamily extract_kernels(const NaturalTransformation& eta, int max_size) {
  if (!eta.target().is_array_type())
    throw Error("domain", "kernel extraction needs an array-type target");
  KernelFamily out{eta.source(), eta.target().alphabet(),
                   eta.target().indexing(), max_size, {}};
  Skeleton sk = out.indexing.skeleton(max_size);
  for (const Index& rep : sk.representatives()) {
    IdSet d = out.indexing.dom(rep);
    std::map<Elem, int> table;
    for (const Elem& x : eta.source().elements(d))
      table[x] = eta.apply(d, x).at(rep);
    out.kernels[rep] = std::move(table);
  }
  return out;
}

CheckReport check_naturality(const NaturalTransformation& eta, int n_max) {
  std::vector<IdSet> sets = enumerate_subsets(IdSet::range(n_max));
  for (const IdSet& a : sets) {
    for (const IdSet& b : sets) {
      for (const Injection& tau : enumerate_injections(b, a)) {
        for (const Elem& x : eta.source().elements(a)) {
          Elem lhs = eta.apply(b, eta.source().restrict(tau, x));
          Elem rhs = eta.target().restrict(tau, eta.apply(a, x));
          if (!(lhs == rhs)) {
            CheckReport r;
            r.pass = false;
            r.check = "naturality";
            r.message = "component does not commute with restriction at " +
                        x.to_string();
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

NaturalTransformation universal_embedding(const DataStructure& d, int n_max) {
  size_t max_count = 0;
  for (int k = 0; k <= n_max; ++k)
    max_count = std::max(max_count, d.elements(IdSet::range(k)).size());
  std::vector<int> codes;
  for (size_t c = 0; c < max_count; ++c) codes.push_back(static_cast<int>(c));

  KernelFamily family{d, codes, IndexingSystem::dtuples_star(), n_max, {}};
  for (int k = 0; k <= n_max; ++k) {
    std::vector<Index> atoms;
    for (int j = 1; j <= k; ++j) atoms.push_back(Index::atom(j));
    Index rep = Index::tuple(std::move(atoms));
    const std::vector<Elem>& elems = d.elements(IdSet::range(k));
    std::map<Elem, int> table;
    for (size_t pos = 0; pos < elems.size(); ++pos)
      table[elems[pos]] = static_cast<int>(pos);
    family.kernels[rep] = std::move(table);
  }
  return build_from_kernels(family);
}

CheckReport check_embedding_injective(const NaturalTransformation& eta,
                                      int n_max) {
  for (int n = 0; n <= n_max; ++n) {
    IdSet a = IdSet::range(n);
    std::vector<Elem> images;
    for (const Elem& x : eta.source().elements(a))
      images.push_back(eta.apply(a, x));
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) {
      CheckReport r;
      r.pass = false;
      r.check = "injectivity";
      r.message = "two elements share an image at level " + std::to_string(n);
      r.witness_sets = {a};
      return r;
    }
  }
  return CheckReport::ok();
}

std::pair<NaturalTransformation, NaturalTransformation> embed_atomic(
    const std::vector<int>& alphabet, const IndexingSystem& atomic) {
  if (atomic.op() != IndexingSystem::Op::Atomic)
    throw Error("domain", "embed_atomic needs an atomic indexing system");
  Index rep = atomic.atomic_rep();
  int k = atomic.dom(rep).size();

  // Set-indexed values spread onto the atom: f(v) = v({1..k}).
  DataStructure from = DataStructure::array(alphabet,
                                            IndexingSystem::subsets(k));
  std::vector<Index> atoms;
  for (int j = 1; j <= k; ++j) atoms.push_back(Index::atom(j));
  Index full_set = Index::set(atoms);
  KernelFamily phi1{from, alphabet, atomic, k, {}};
  {
    std::map<Elem, int> table;
    for (const Elem& v : from.elements(IdSet::range(k)))
      table[v] = v.at(full_set);
    phi1.kernels[rep] = std::move(table);
  }

  // Atom values spread onto ordered tuples: f(v) = v(rep).
  DataStructure mid = DataStructure::array(alphabet, atomic);
  KernelFamily phi2{mid, alphabet, IndexingSystem::dtuples(k), k, {}};
  {
    Index tuple_rep = Index::tuple(atoms);
    std::map<Elem, int> table;
    for (const Elem& v : mid.elements(IdSet::range(k)))
      table[v] = v.at(rep);
    phi2.kernels[tuple_rep] = std::move(table);
  }
  return {build_from_kernels(phi1), build_from_kernels(phi2)};
}

}  // namespace exchg
