#include "exchg/laws.hpp"

#include <algorithm>
#include <sstream>

namespace exchg {

namespace {

// Order-preserving bijection a -> [|a|].
Injection standardize(const IdSet& a) {
  std::vector<std::pair<int, int>> pairs;
  int pos = 1;
  for (int x : a) pairs.emplace_back(x, pos++);
  return Injection(a, IdSet::range(a.size()), std::move(pairs));
}

size_t element_position(const std::vector<Elem>& elems, const Elem& x) {
  auto it = std::lower_bound(elems.begin(), elems.end(), x);
  if (it == elems.end() || !(*it == x))
    throw Error("membership", "element not in the enumerated fiber");
  return static_cast<size_t>(it - elems.begin());
}

}  // namespace

FiniteLaw::FiniteLaw(DataStructure structure, int n_max,
                     std::vector<std::vector<Rational>> tables)
    : structure_(std::move(structure)), n_max_(n_max), tables_(std::move(tables)) {
  if (static_cast<int>(tables_.size()) != n_max_ + 1)
    throw Error("domain", "need one table per level 0..n_max");
  for (int n = 0; n <= n_max_; ++n) {
    const std::vector<Elem>& elems = structure_.elements(IdSet::range(n));
    if (tables_[static_cast<size_t>(n)].size() != elems.size())
      throw Error("domain", "table size mismatch at level " + std::to_string(n));
    Rational sum(0);
    for (const Rational& p : tables_[static_cast<size_t>(n)]) {
      if (p < Rational(0)) throw Error("domain", "negative mass");
      sum += p;
    }
    if (sum != Rational(1))
      throw Error("domain", "table does not sum to 1 at level " +
                                std::to_string(n));
  }
}

FiniteLaw FiniteLaw::iid(const DataStructure& array_structure,
                         const std::map<int, Rational>& probs, int n_max) {
  if (!array_structure.is_array_type())
    throw Error("domain", "iid laws need an array structure");
  Rational total(0);
  for (const auto& [sym, p] : probs) total += p;
  if (total != Rational(1))
    throw Error("domain", "symbol probabilities must sum to 1");
  std::vector<std::vector<Rational>> tables;
  for (int n = 0; n <= n_max; ++n) {
    std::vector<Rational> table;
    for (const Elem& x : array_structure.elements(IdSet::range(n))) {
      Rational mass(1);
      for (const auto& [idx, sym] : x.entries()) mass *= probs.at(sym);
      table.push_back(mass);
    }
    tables.push_back(std::move(table));
  }
  return FiniteLaw(array_structure, n_max, std::move(tables));
}

FiniteLaw FiniteLaw::uniform(const DataStructure& structure, int n_max) {
  std::vector<std::vector<Rational>> tables;
  for (int n = 0; n <= n_max; ++n) {
    size_t count = structure.elements(IdSet::range(n)).size();
    tables.push_back(std::vector<Rational>(
        count, Rational(1, static_cast<long long>(count))));
  }
  return FiniteLaw(structure, n_max, std::move(tables));
}

FiniteLaw FiniteLaw::point_mass(const DataStructure& structure, const Elem& top,
                                int n_max) {
  IdSet full = IdSet::range(n_max);
  if (!structure.element_of(full, top))
    throw Error("membership", "point mass target is not a top-level element");
  std::vector<std::vector<Rational>> tables;
  for (int n = 0; n <= n_max; ++n) {
    IdSet a = IdSet::range(n);
    Elem x = structure.restrict(Injection::inclusion(a, full), top);
    const std::vector<Elem>& elems = structure.elements(a);
    std::vector<Rational> table(elems.size(), Rational(0));
    table[element_position(elems, x)] = Rational(1);
    tables.push_back(std::move(table));
  }
  return FiniteLaw(structure, n_max, std::move(tables));
}

FiniteLaw FiniteLaw::mix(const std::vector<FiniteLaw>& components,
                         const std::vector<Rational>& weights) {
  if (components.empty() || components.size() != weights.size())
    throw Error("domain", "mix needs matching components and weights");
  Rational total(0);
  for (const Rational& w : weights) total += w;
  if (total != Rational(1)) throw Error("domain", "weights must sum to 1");
  const FiniteLaw& first = components[0];
  for (const FiniteLaw& c : components)
    if (!c.structure_.same_expression(first.structure_) ||
        c.n_max_ != first.n_max_)
      throw Error("domain", "mix components must share structure and n_max");
  std::vector<std::vector<Rational>> tables;
  for (int n = 0; n <= first.n_max_; ++n) {
    std::vector<Rational> table(first.tables_[static_cast<size_t>(n)].size(),
                                Rational(0));
    for (size_t c = 0; c < components.size(); ++c)
      for (size_t i = 0; i < table.size(); ++i)
        table[i] += weights[c] * components[c].tables_[static_cast<size_t>(n)][i];
    tables.push_back(std::move(table));
  }
  return FiniteLaw(first.structure_, first.n_max_, std::move(tables));
}

const std::vector<Rational>& FiniteLaw::table(int n) const {
  if (n < 0 || n > n_max_)
    throw Error("domain", "level out of range: " + std::to_string(n));
  return tables_[static_cast<size_t>(n)];
}

Rational FiniteLaw::mass(int n, const Elem& x) const {
  const std::vector<Elem>& elems = structure_.elements(IdSet::range(n));
  return table(n)[element_position(elems, x)];
}

Rational FiniteLaw::mass_on(const IdSet& a, const Elem& x) const {
  Injection std_bij = standardize(a);
  // x over a corresponds to the table element whose restriction along the
  // standardizing bijection is x.
  Elem standard = structure_.restrict(std_bij.inverse(), x);
  return mass(a.size(), standard);
}

std::map<Elem, Rational> FiniteLaw::law_on(const IdSet& a) const {
  Injection std_bij = standardize(a);
  std::map<Elem, Rational> out;
  const std::vector<Elem>& elems = structure_.elements(IdSet::range(a.size()));
  const std::vector<Rational>& tab = table(a.size());
  for (size_t i = 0; i < elems.size(); ++i)
    out[structure_.restrict(std_bij, elems[i])] += tab[i];
  return out;
}

CheckReport FiniteLaw::validate_consistency() const {
  for (int n = 1; n <= n_max_; ++n) {
    Injection inc = Injection::inclusion(IdSet::range(n - 1), IdSet::range(n));
    const std::vector<Elem>& elems = structure_.elements(IdSet::range(n));
    const std::vector<Elem>& small = structure_.elements(IdSet::range(n - 1));
    std::vector<Rational> push(small.size(), Rational(0));
    for (size_t i = 0; i < elems.size(); ++i)
      push[element_position(small, structure_.restrict(inc, elems[i]))] +=
          table(n)[i];
    if (push != table(n - 1)) {
      CheckReport r;
      r.pass = false;
      r.check = "consistency";
      r.message = "level " + std::to_string(n) +
                  " does not push forward to level " + std::to_string(n - 1);
      return r;
    }
  }
  return CheckReport::ok();
}

CheckReport FiniteLaw::check_exchangeable() const {
  std::vector<IdSet> sets = enumerate_subsets(IdSet::range(n_max_));
  for (const IdSet& a : sets) {
    std::map<Elem, Rational> mu_a = law_on(a);
    for (const IdSet& b : sets) {
      for (const Injection& tau : enumerate_injections(b, a)) {
        std::map<Elem, Rational> push;
        for (const auto& [x, p] : mu_a) push[structure_.restrict(tau, x)] += p;
        std::map<Elem, Rational> mu_b = law_on(b);
        if (push != mu_b) {
          for (const auto& [y, p] : push) {
            if (mu_b[y] != p) {
              CheckReport r;
              r.pass = false;
              r.check = "exchangeability";
              r.message = "pushforward along " + tau.to_string() +
                          " disagrees at " + y.to_string() + ": " +
                          to_string(p) + " vs " + to_string(mu_b[y]);
              r.witness_sets = {b, a};
              r.witness_injection = tau;
              r.witness_value = to_string(p - mu_b[y]);
              return r;
            }
          }
        }
      }
    }
  }
  return CheckReport::ok();
}

CheckReport FiniteLaw::check_independence() const {
  std::vector<IdSet> sets = enumerate_subsets(IdSet::range(n_max_));
  for (const IdSet& a : sets) {
    for (const IdSet& b : sets) {
      if (!a.intersect(b).empty()) continue;
      if (a.size() + b.size() > n_max_) continue;
      IdSet ab = a.union_with(b);
      Injection inc_a = Injection::inclusion(a, ab);
      Injection inc_b = Injection::inclusion(b, ab);
      std::map<Elem, Rational> mu_a = law_on(a);
      std::map<Elem, Rational> mu_b = law_on(b);
      std::map<std::pair<Elem, Elem>, Rational> joint;
      for (const auto& [z, p] : law_on(ab))
        joint[{structure_.restrict(inc_a, z), structure_.restrict(inc_b, z)}] +=
            p;
      for (const auto& [x, px] : mu_a) {
        for (const auto& [y, py] : mu_b) {
          Rational j = joint.count({x, y}) ? joint.at({x, y}) : Rational(0);
          if (j != px * py) {
            CheckReport r;
            r.pass = false;
            r.check = "independence";
            r.message = "joint mass of (" + x.to_string() + ", " +
                        y.to_string() + ") over " + a.to_string() + "+" +
                        b.to_string() + " is " + to_string(j) +
                        " but the product of margins is " + to_string(px * py);
            r.witness_sets = {a, b};
            r.witness_value = to_string(j - px * py);
            return r;
          }
        }
      }
    }
  }
  return CheckReport::ok();
}

FiniteLaw FiniteLaw::pushforward(const NaturalTransformation& eta) const {
  if (!eta.source().same_expression(structure_))
    throw Error("domain", "pushforward needs a transformation out of the "
                          "law's structure");
  std::vector<std::vector<Rational>> tables;
  for (int n = 0; n <= n_max_; ++n) {
    IdSet a = IdSet::range(n);
    const std::vector<Elem>& src = structure_.elements(a);
    const std::vector<Elem>& dst = eta.target().elements(a);
    std::vector<Rational> out(dst.size(), Rational(0));
    for (size_t i = 0; i < src.size(); ++i)
      out[element_position(dst, eta.apply(a, src[i]))] += table(n)[i];
    tables.push_back(std::move(out));
  }
  return FiniteLaw(eta.target(), n_max_, std::move(tables));
}

CheckReport check_naturality_as(const NaturalTransformation& eta,
                                const FiniteLaw& law, int n_max) {
  std::vector<IdSet> sets = enumerate_subsets(IdSet::range(n_max));
  for (const IdSet& a : sets) {
    std::map<Elem, Rational> mu_a = law.law_on(a);
    for (const IdSet& b : sets) {
      for (const Injection& tau : enumerate_injections(b, a)) {
        for (const auto& [x, p] : mu_a) {
          if (p == Rational(0)) continue;
          Elem lhs = eta.apply(b, eta.source().restrict(tau, x));
          Elem rhs = eta.target().restrict(tau, eta.apply(a, x));
          if (!(lhs == rhs)) {
            CheckReport r;
            r.pass = false;
            r.check = "naturality-as";
            r.message = "component fails on a positive-mass element " +
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

}  // namespace exchg
