// Acceptance suite: one line per criterion, PASS/FAIL, exit 0 iff all pass.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include "exchg/json_io.hpp"
#include "exchg/parser.hpp"
#include "exchg/sep.hpp"
#include "exchg/stats.hpp"

using namespace exchg;

namespace {

DataStructure bits() { return DataStructure::array({0, 1}, IndexingSystem::id()); }

Elem bit_seq(const std::vector<int>& values) {
  std::vector<std::pair<Index, int>> entries;
  for (size_t i = 0; i < values.size(); ++i)
    entries.emplace_back(Index::atom(static_cast<int>(i) + 1), values[i]);
  return Elem::array(std::move(entries));
}

FiniteLaw bernoulli_mixture(int n_max) {
  FiniteLaw low = FiniteLaw::iid(bits(), {{0, {4, 5}}, {1, {1, 5}}}, n_max);
  FiniteLaw high = FiniteLaw::iid(bits(), {{0, {1, 5}}, {1, {4, 5}}}, n_max);
  return FiniteLaw::mix({low, high}, {{1, 2}, {1, 2}});
}

Index edge(int i, int j) { return Index::set({Index::atom(i), Index::atom(j)}); }

Elem single_edge() { return Elem::array({{edge(1, 2), 1}}); }

Elem triangle() {
  return Elem::array({{edge(1, 2), 1}, {edge(1, 3), 1}, {edge(2, 3), 1}});
}

// ---------------------------------------------------------------------------

bool criterion_1(std::string* detail) {
  std::vector<IndexingSystem> systems = {IndexingSystem::id(),
                                         IndexingSystem::powerset(),
                                         IndexingSystem::dtuples_star()};
  for (int k = 1; k <= 3; ++k) {
    systems.push_back(IndexingSystem::subsets(k));
    systems.push_back(IndexingSystem::subsets_le(k));
    systems.push_back(IndexingSystem::tuples(k));
    systems.push_back(IndexingSystem::dtuples(k));
    systems.push_back(IndexingSystem::pair_slots(k));
  }
  std::vector<IndexingSystem> base = {IndexingSystem::id(),
                                      IndexingSystem::powerset(),
                                      IndexingSystem::dtuples(2)};
  for (const IndexingSystem& lhs : base)
    for (const IndexingSystem& rhs : base) {
      systems.push_back(IndexingSystem::product(lhs, rhs));
      systems.push_back(IndexingSystem::coproduct(lhs, rhs));
      systems.push_back(IndexingSystem::compose(lhs, rhs));
    }
  for (const IndexingSystem& sys : systems) {
    CheckReport r = sys.check_axioms(3);
    if (!r.pass) {
      *detail = sys.to_string() + ": " + r.message;
      return false;
    }
  }
  CheckReport bad = IndexingSystem::non_example().check_axioms(3);
  if (bad.pass || bad.check != "intersection" || bad.witness_sets.size() != 2) {
    *detail = "non-example did not fail the intersection axiom with a witness";
    return false;
  }
  const IdSet& a = bad.witness_sets[0];
  const IdSet& b = bad.witness_sets[1];
  if (a.size() < 2 || b.size() < 2 || a.intersect(b).size() != 1) {
    *detail = "non-example witness is not two 2-sets meeting in a singleton";
    return false;
  }
  return true;
}

bool criterion_2(std::string* detail) {
  std::vector<IdSet> sets = enumerate_subsets(IdSet::range(4));
  for (const IndexingSystem& sys :
       {IndexingSystem::powerset(), IndexingSystem::tuples(2),
        IndexingSystem::dtuples(2)}) {
    for (const IdSet& b : sets) {
      for (const IdSet& a : sets) {
        std::vector<Injection> taus = enumerate_injections(b, a);
        for (const Index& i : sys.indices(b)) {
          IdSet d = sys.dom(i);
          std::vector<Injection> stab = sys.stab(i);
          for (const Injection& tau : taus) {
            Index moved = sys.apply(tau, i);
            // (2): only the restriction of tau to dom(i) matters.
            Injection hat(d, tau.image_of(d), [&] {
              std::vector<std::pair<int, int>> pairs;
              for (int s : d) pairs.emplace_back(s, tau(s));
              return pairs;
            }());
            Injection hat_in_a = compose(
                Injection::inclusion(tau.image_of(d), a), hat);
            if (!(sys.apply(hat_in_a, i) == moved)) {
              *detail = sys.to_string() + ": restriction identity fails at " +
                        i.to_string() + " along " + tau.to_string();
              return false;
            }
            // (3): dom commutes with relabelling.
            if (sys.dom(moved) != tau.image_of(d)) {
              *detail = sys.to_string() + ": dom image fails at " +
                        i.to_string() + " along " + tau.to_string();
              return false;
            }
            // (4): collisions are exactly stabilizer factorizations.
            for (const Injection& sigma : taus) {
              bool equal = sys.apply(sigma, i) == moved;
              bool factors = false;
              for (const Injection& pi : stab) {
                Injection tau_d(d, a, [&] {
                  std::vector<std::pair<int, int>> pairs;
                  for (int s : d) pairs.emplace_back(s, tau(s));
                  return pairs;
                }());
                Injection sigma_d(d, a, [&] {
                  std::vector<std::pair<int, int>> pairs;
                  for (int s : d) pairs.emplace_back(s, sigma(s));
                  return pairs;
                }());
                factors = factors || compose(tau_d, pi) == sigma_d;
              }
              if (equal != factors) {
                *detail = sys.to_string() +
                          ": collision/stabilizer mismatch at " + i.to_string();
                return false;
              }
            }
          }
        }
      }
    }
  }
  return true;
}

bool criterion_3(std::string* detail) {
  // Each group G <= S_k realized as {(pi(1),...,pi(k)) | pi in G} inside
  // compose(powerset, dtuples_star).
  struct Case {
    std::string name;
    int k;
    std::vector<std::vector<int>> perms;  // images of 1..k
  };
  std::vector<Case> cases = {
      {"trivial", 1, {{1}}},
      {"C2", 2, {{1, 2}, {2, 1}}},
      {"C3", 3, {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}},
      {"S3", 3, {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}}},
      {"Klein", 4, {{1, 2, 3, 4}, {2, 1, 4, 3}, {3, 4, 1, 2}, {4, 3, 2, 1}}},
  };
  for (const Case& c : cases) {
    IndexingSystem sys = IndexingSystem::compose(IndexingSystem::powerset(),
                                                 IndexingSystem::dtuples_star());
    std::vector<Index> labels;
    for (const std::vector<int>& perm : c.perms) {
      std::vector<Index> atoms;
      for (int v : perm) atoms.push_back(Index::atom(v));
      labels.push_back(Index::atom(sys.intern_inner(Index::tuple(atoms))));
    }
    Index i = Index::set(std::move(labels));
    std::vector<Injection> stab = sys.stab(i);
    if (stab.size() != c.perms.size()) {
      *detail = c.name + ": stabilizer order " + std::to_string(stab.size()) +
                " != " + std::to_string(c.perms.size());
      return false;
    }
    for (const Injection& pi : stab) {
      std::vector<int> images;
      for (int s = 1; s <= c.k; ++s) images.push_back(pi(s));
      if (std::find(c.perms.begin(), c.perms.end(), images) == c.perms.end()) {
        *detail = c.name + ": stabilizer contains a permutation outside G";
        return false;
      }
    }
  }
  return true;
}

bool criterion_4(std::string* detail) {
  DataStructure pow_array =
      DataStructure::array({0, 1}, IndexingSystem::powerset());
  DataStructure sets = DataStructure::setsystem();
  for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}}) {
    IdSet a = IdSet::range(n), b = IdSet::range(k);
    long long expect_array = 1LL << ((1LL << n) - (1LL << k));
    const Elem& x0 = pow_array.elements(b)[0];
    long long got_array = pow_array.count_fiber(b, a, x0);
    if (got_array != expect_array) {
      *detail = "array(powerset) (" + std::to_string(n) + "," +
                std::to_string(k) + "): " + std::to_string(got_array) +
                " != " + std::to_string(expect_array);
      return false;
    }
    long long expect_sets = (1LL << (1LL << (n - k))) - 1;
    Elem x = Elem::setsystem({b});
    long long got_sets = sets.count_fiber(b, a, x);
    if (got_sets != expect_sets) {
      *detail = "setsystem (" + std::to_string(n) + "," + std::to_string(k) +
                "): " + std::to_string(got_sets) +
                " != " + std::to_string(expect_sets);
      return false;
    }
  }
  return true;
}

bool criterion_5(std::string* detail) {
  std::mt19937 rng(5150);
  for (const IndexingSystem& sys :
       {IndexingSystem::id(), IndexingSystem::subsets(2),
        IndexingSystem::dtuples(2), IndexingSystem::subsets_le(2)}) {
    DataStructure source = bits();
    Skeleton sk = sys.skeleton(3);
    for (int trial = 0; trial < 100; ++trial) {
      KernelFamily family{source, {0, 1}, sys, 3, {}};
      for (const Index& rep : sk.representatives()) {
        IdSet d = sys.dom(rep);
        std::vector<Injection> stab = sys.stab(rep);
        std::map<Elem, int> table;
        std::uniform_int_distribution<int> coin(0, 1);
        for (const Elem& x : source.elements(d)) {
          // Assign by orbit minimum so the table is stabilizer-invariant.
          Elem least = x;
          for (const Injection& pi : stab)
            least = std::min(least, source.restrict(pi, x));
          auto it = table.find(least);
          int v = it == table.end() ? coin(rng) : it->second;
          table[least] = v;
          table[x] = v;
        }
        family.kernels[rep] = std::move(table);
      }
      NaturalTransformation eta = build_from_kernels(family);
      if (!(extract_kernels(eta, 3) == family)) {
        *detail = sys.to_string() + ": extract(build(K)) != K";
        return false;
      }
    }
  }
  // Asymmetric kernel rejection with a witness.
  DataStructure br = DataStructure::binrel();
  KernelFamily asym{br, {0, 1}, IndexingSystem::subsets(2), 2, {}};
  std::map<Elem, int> table;
  for (const Elem& x : br.elements(IdSet::range(2)))
    table[x] = x.at(Index::tuple({Index::atom(1), Index::atom(2)}));
  asym.kernels[edge(1, 2)] = std::move(table);
  CheckReport r = asym.validate();
  if (r.pass || r.check != "symmetry" || !r.witness_injection) {
    *detail = "asymmetric kernel was not rejected with a stabilizer witness";
    return false;
  }
  return true;
}

bool criterion_6(std::string* detail) {
  NaturalTransformation f12 = NaturalTransformation::graph1_to_graph2();
  NaturalTransformation f23 = NaturalTransformation::graph2_to_graph3();
  NaturalTransformation f31 = NaturalTransformation::graph3_to_graph1();
  for (const NaturalTransformation* eta : {&f12, &f23, &f31}) {
    CheckReport r = check_naturality(*eta, 4);
    if (!r.pass) {
      *detail = eta->name() + ": " + r.message;
      return false;
    }
  }
  NaturalTransformation ident =
      NaturalTransformation::identity(DataStructure::graph2());
  NaturalTransformation emb = universal_embedding(DataStructure::total(), 3);
  for (const NaturalTransformation* eta : {&ident, &emb}) {
    CheckReport r = check_naturality(*eta, eta == &emb ? 3 : 4);
    if (!r.pass) {
      *detail = eta->name() + ": " + r.message;
      return false;
    }
  }
  NaturalTransformation round =
      NaturalTransformation::composed(f31, NaturalTransformation::composed(f23, f12));
  DataStructure g1 = DataStructure::graph1();
  for (int n = 0; n <= 5; ++n) {
    IdSet a = IdSet::range(n);
    for (const Elem& x : g1.elements(a)) {
      if (!(round.apply(a, x) == x)) {
        *detail = "graph-isomorphism round trip moved " + x.to_string();
        return false;
      }
    }
  }
  return true;
}

bool criterion_7(std::string* detail) {
  auto expect = [&](const DataStructure& d, int k, bool certified) {
    DepthResult r = d.depth(3);
    if (r.k != k || r.certified != certified) {
      *detail = d.to_string() + ": depth " + std::to_string(r.k) +
                (r.certified ? " (certified)" : " (exact-up-to-n_max)") +
                ", expected " + std::to_string(k);
      return false;
    }
    return true;
  };
  if (!expect(DataStructure::array({0, 1}, IndexingSystem::subsets(2)), 2, true))
    return false;
  if (!expect(DataStructure::total(), 2, false)) return false;
  if (!expect(bits(), 1, true)) return false;
  std::vector<IndexingSystem> systems = {IndexingSystem::id(),
                                         IndexingSystem::powerset(),
                                         IndexingSystem::dtuples_star()};
  for (int k = 1; k <= 3; ++k) {
    systems.push_back(IndexingSystem::subsets(k));
    systems.push_back(IndexingSystem::subsets_le(k));
    systems.push_back(IndexingSystem::tuples(k));
    systems.push_back(IndexingSystem::dtuples(k));
    systems.push_back(IndexingSystem::pair_slots(k));
  }
  for (const IndexingSystem& sys : systems) {
    DataStructure d = DataStructure::array({0, 1}, sys);
    DepthResult r = d.depth(3);
    int expected = sys.skeleton(3).max_rep_size();
    if (!r.certified || r.k != expected) {
      *detail = d.to_string() + ": depth " + std::to_string(r.k) +
                " vs max representative size " + std::to_string(expected);
      return false;
    }
  }
  return true;
}

bool criterion_8(std::string* detail) {
  SamplerKernelFamily er = erdos_renyi_kernels(0.5);
  SamplerKernelFamily mixture = bernoulli_mixture_kernels();
  DataStructure graph2 = DataStructure::graph2();
  DataStructure seq = bits();
  Injection inc = Injection::inclusion(IdSet::range(3), IdSet::range(8));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    if (!(graph2.restrict(inc, sample_array(er, 8, seed)) ==
          sample_array(er, 3, seed))) {
      *detail = "graph kernels: restrict(sample(8)) != sample(3) at seed " +
                std::to_string(seed);
      return false;
    }
    if (!(seq.restrict(inc, sample_array(mixture, 8, seed)) ==
          sample_array(mixture, 3, seed))) {
      *detail = "mixture kernels: restrict(sample(8)) != sample(3) at seed " +
                std::to_string(seed);
      return false;
    }
  }
  return true;
}

bool criterion_9(std::string* detail) {
  SamplerKernelFamily er = erdos_renyi_kernels(0.5);
  DataStructure graph2 = DataStructure::graph2();
  IdSet box = IdSet::range(3);
  const std::vector<Elem>& outcomes = graph2.elements(box);
  std::vector<Injection> relabelings = enumerate_bijections(box, box);
  for (std::uint64_t base : {11ULL, 22ULL, 33ULL}) {
    std::map<Elem, long long> counts;
    for (std::uint64_t s = 0; s < 10000; ++s)
      ++counts[sample_array(er, 3, base * 1000003ULL + s)];
    for (const Injection& pi : relabelings) {
      double chi2 = 0.0;
      for (const Elem& x : outcomes) {
        double a = static_cast<double>(counts[x]);
        double b = static_cast<double>(counts[graph2.restrict(pi, x)]);
        if (a + b > 0) chi2 += (a - b) * (a - b) / (a + b);
      }
      if (chi2 > 18.475) {  // 7 df, alpha = 0.01
        *detail = "relabeling " + pi.to_string() + " rejected at seed base " +
                  std::to_string(base) + " (chi2 = " + std::to_string(chi2) + ")";
        return false;
      }
    }
  }
  return true;
}

bool criterion_10(std::string* detail) {
  FiniteLaw iid = FiniteLaw::iid(bits(), {{0, {2, 3}}, {1, {1, 3}}}, 4);
  FiniteLaw mixture = bernoulli_mixture(4);
  FiniteLaw orders = FiniteLaw::uniform(DataStructure::total(), 4);
  for (const auto& [name, law] :
       std::vector<std::pair<std::string, const FiniteLaw*>>{
           {"iid", &iid}, {"mixture", &mixture}, {"uniform-total", &orders}}) {
    CheckReport r = law->check_exchangeable();
    if (!r.pass) {
      *detail = name + " law failed exchangeability: " + r.message;
      return false;
    }
  }
  for (const auto& [name, law] :
       std::vector<std::pair<std::string, const FiniteLaw*>>{
           {"iid", &iid}, {"uniform-total", &orders}}) {
    CheckReport r = law->check_independence();
    if (!r.pass) {
      *detail = name + " law failed independence: " + r.message;
      return false;
    }
  }
  CheckReport dep = mixture.check_independence();
  if (dep.pass || dep.witness_value != "9/100") {
    *detail = "mixture independence witness is '" + dep.witness_value +
              "', expected 9/100";
    return false;
  }
  return true;
}

bool criterion_11(std::string* detail) {
  KernelStatistic entry = KernelStatistic::first_entry(bits());
  KernelStatistic edge_stat =
      KernelStatistic::indicator(DataStructure::graph2(), 2, single_edge());
  FiniteLaw fair = FiniteLaw::iid(bits(), {{0, {1, 2}}, {1, {1, 2}}}, 4);
  FiniteLaw third = FiniteLaw::iid(bits(), {{0, {2, 3}}, {1, {1, 3}}}, 4);
  FiniteLaw mixture = bernoulli_mixture(4);
  FiniteLaw graphs = FiniteLaw::uniform(DataStructure::graph2(), 4);
  struct Case {
    const FiniteLaw* law;
    const KernelStatistic* stat;
    int n;
  };
  std::vector<Case> cases = {{&fair, &entry, 2},   {&third, &entry, 3},
                             {&mixture, &entry, 2}, {&mixture, &entry, 4},
                             {&graphs, &edge_stat, 3},
                             {&graphs, &edge_stat, 4}};
  for (size_t c = 0; c < cases.size(); ++c) {
    VariancePair v = variance_exact(*cases[c].law, *cases[c].stat, cases[c].n);
    if (v.direct != v.formula) {
      *detail = "case " + std::to_string(c) + ": direct " + to_string(v.direct) +
                " != formula " + to_string(v.formula);
      return false;
    }
  }
  VariancePair pinned = variance_exact(fair, entry, 2);
  if (pinned.direct != Rational(1, 8)) {
    *detail = "Bernoulli(1/2) average at n=2 has variance " +
              to_string(pinned.direct) + ", expected 1/8";
    return false;
  }
  return true;
}

bool criterion_12(std::string* detail) {
  KernelStatistic entry = KernelStatistic::first_entry(bits());
  KernelStatistic edge_stat =
      KernelStatistic::indicator(DataStructure::graph2(), 2, single_edge());
  FiniteLaw fair = FiniteLaw::iid(bits(), {{0, {1, 2}}, {1, {1, 2}}}, 2);
  FiniteLaw third = FiniteLaw::iid(bits(), {{0, {2, 3}}, {1, {1, 3}}}, 2);
  FiniteLaw graphs = FiniteLaw::uniform(DataStructure::graph2(), 4);
  for (const auto& [name, law, stat] :
       std::vector<std::tuple<std::string, const FiniteLaw*,
                              const KernelStatistic*>>{
           {"iid(1/2)", &fair, &entry},
           {"iid(1/3)", &third, &entry},
           {"uniform-graph", &graphs, &edge_stat}}) {
    if (!law->check_independence().pass) {
      *detail = name + " unexpectedly failed independence";
      return false;
    }
    if (u_stat_covariances(*law, *stat).c[0] != Rational(0)) {
      *detail = name + ": c_0 != 0 for an independent law";
      return false;
    }
  }
  UStatCovariances mixture = u_stat_covariances(bernoulli_mixture(2), entry);
  if (mixture.c[0] != Rational(9, 100)) {
    *detail = "mixture c_0 = " + to_string(mixture.c[0]) + ", expected 9/100";
    return false;
  }

  // Scaling trend n*Var(avg) -> k^2 c_1 for the iid Bernoulli(1/2) sampler.
  UStatCovariances u = u_stat_covariances(fair, entry);
  double target = to_double(u.sigma2_limit);  // 1/4
  SamplerKernelFamily kernels = iid_bernoulli_kernels(0.5);
  const int n = 200, samples = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (std::uint64_t seed = 0; seed < samples; ++seed) {
    Elem x = sample_array(kernels, n, seed);
    int ones = 0;
    for (const auto& [i, v] : x.entries()) ones += v;
    double avg = static_cast<double>(ones) / n;
    sum += avg;
    sum2 += avg * avg;
  }
  double var = sum2 / samples - (sum / samples) * (sum / samples);
  double scaled = n * var;
  if (std::abs(scaled - target) >= 0.02) {
    *detail = "n*Var(avg) = " + std::to_string(scaled) + ", expected " +
              std::to_string(target) + " +- 0.02";
    return false;
  }
  return true;
}

bool criterion_13(std::string* detail) {
  SamplerKernelFamily er = erdos_renyi_kernels(0.5);
  DataStructure g2 = DataStructure::graph2();
  std::vector<std::pair<IdSet, Elem>> sequence;
  for (int n : {10, 15, 20, 25, 30})
    sequence.emplace_back(IdSet::range(n), sample_array(er, n, 42));
  std::vector<std::pair<IdSet, Elem>> targets = {
      {IdSet::range(2), single_edge()}, {IdSet::range(3), triangle()}};
  LimitReport report = limit_estimate(g2, sequence, targets, 0.05);
  double edge_density = to_double(report.rows.back().values[0]);
  double tri_density = to_double(report.rows.back().values[1]);
  if (std::abs(edge_density - 0.5) > 0.05) {
    *detail = "edge density " + std::to_string(edge_density) +
              " outside 0.5 +- 0.05";
    return false;
  }
  if (std::abs(tri_density - 0.125) > 0.05) {
    *detail = "triangle density " + std::to_string(tri_density) +
              " outside 0.125 +- 0.05";
    return false;
  }
  CheckReport rule = check_density_rule_exchangeable(
      g2, sequence.back().first, sequence.back().second, 3, 0.02);
  if (!rule.pass) {
    *detail = "induced density rule: " + rule.message;
    return false;
  }
  return true;
}

bool criterion_14(std::string* detail) {
  for (const DataStructure& d :
       {DataStructure::total(), DataStructure::graph2(),
        DataStructure::setsystem()}) {
    NaturalTransformation eta = universal_embedding(d, 3);
    CheckReport r = check_embedding_injective(eta, 3);
    if (!r.pass) {
      *detail = d.to_string() + ": " + r.message;
      return false;
    }
  }
  return true;
}

// Criterion 15 helpers ------------------------------------------------------

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(EXCHG_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  while (fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

IndexingSystem random_is(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 10 : 7);
  std::uniform_int_distribution<int> small(1, 3);
  switch (pick(rng)) {
    case 0: return IndexingSystem::id();
    case 1: return IndexingSystem::powerset();
    case 2: return IndexingSystem::subsets(small(rng));
    case 3: return IndexingSystem::subsets_le(small(rng));
    case 4: return IndexingSystem::tuples(small(rng));
    case 5: return IndexingSystem::dtuples(small(rng));
    case 6: return IndexingSystem::dtuples_star();
    case 7: return IndexingSystem::pair_slots(small(rng));
    case 8: return IndexingSystem::product(random_is(rng, depth - 1),
                                           random_is(rng, depth - 1));
    case 9: return IndexingSystem::coproduct(random_is(rng, depth - 1),
                                             random_is(rng, depth - 1));
    default: return IndexingSystem::compose(random_is(rng, depth - 1),
                                            random_is(rng, depth - 1));
  }
}

DataStructure random_ds(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 10 : 6);
  switch (pick(rng)) {
    case 0: {
      std::uniform_int_distribution<int> width(1, 3);
      std::vector<int> alphabet;
      for (int s = 0, w = width(rng); s < w; ++s) alphabet.push_back(s);
      return DataStructure::array(std::move(alphabet), random_is(rng, depth - 1));
    }
    case 1: return DataStructure::setsystem();
    case 2: return DataStructure::graph1();
    case 3: return DataStructure::graph2();
    case 4: return DataStructure::graph3();
    case 5: return DataStructure::binrel();
    case 6: return DataStructure::total();
    case 7: return DataStructure::product(random_ds(rng, depth - 1),
                                          random_ds(rng, depth - 1));
    case 8: return DataStructure::coproduct(random_ds(rng, depth - 1),
                                            random_ds(rng, depth - 1));
    case 9: return DataStructure::compose_with(random_ds(rng, depth - 1),
                                               random_is(rng, depth - 1));
    default: {
      std::uniform_int_distribution<int> count(1, 2);
      return DataStructure::env_extend(random_ds(rng, depth - 1), count(rng));
    }
  }
}

bool criterion_15(std::string* detail) {
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 250; ++trial) {
    IndexingSystem is = random_is(rng, 2);
    if (!parse_indexing(is.to_string()).same_expression(is)) {
      *detail = "indexing round trip failed for " + is.to_string();
      return false;
    }
  }
  for (int trial = 0; trial < 250; ++trial) {
    DataStructure ds = random_ds(rng, 2);
    if (!parse_structure(ds.to_string()).same_expression(ds)) {
      *detail = "structure round trip failed for " + ds.to_string();
      return false;
    }
  }

  RunResult depth = run_cli("depth --structure total");
  if (depth.exit_code != 0 || depth.output != "2\n") {
    *detail = "depth invocation: exit " + std::to_string(depth.exit_code) +
              ", output '" + depth.output + "'";
    return false;
  }
  RunResult axioms =
      run_cli("axioms --indexing \"compose(powerset,dtuples_star)\" --n 3");
  if (axioms.exit_code != 0) {
    *detail = "axioms invocation exited " + std::to_string(axioms.exit_code);
    return false;
  }
  auto dir = std::filesystem::temp_directory_path() / "exchg_acceptance";
  std::filesystem::create_directories(dir);
  std::string law_path = (dir / "mixture.json").string();
  write_json_file(law_path, law_to_json(bernoulli_mixture(2)));
  RunResult law = run_cli("law-check --law " + law_path + " --independence");
  if (law.exit_code != 1 || law.output.find("0.09") == std::string::npos) {
    *detail = "law-check invocation: exit " + std::to_string(law.exit_code);
    return false;
  }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* summary;
    bool (*run)(std::string*);
  };
  const Criterion criteria[] = {
      {1, "indexing axioms for built-ins and combinations; non-example witness",
       criterion_1},
      {2, "index arithmetic identities exhaustively at n_max=4", criterion_2},
      {3, "stabilizer realization of prescribed permutation groups", criterion_3},
      {4, "fiber counts for powerset arrays and set systems", criterion_4},
      {5, "kernel build/extract round trips; asymmetry rejection", criterion_5},
      {6, "naturality at n_max=4; graph isomorphism round trip to n=5",
       criterion_6},
      {7, "depth values and certified skeleton bound agreement", criterion_7},
      {8, "sampler restriction consistency, bit-exact, 100 seeds", criterion_8},
      {9, "sampled graph distribution invariant under relabelings", criterion_9},
      {10, "exact law suite: exchangeability and (in)dependence", criterion_10},
      {11, "variance of the average: direct equals formula", criterion_11},
      {12, "overlap covariances and the Monte Carlo scaling trend",
       criterion_12},
      {13, "graph sequence densities converge; induced rule exchangeable",
       criterion_13},
      {14, "universal embedding injectivity", criterion_14},
      {15, "DSL round trips and documented CLI invocations", criterion_15},
  };
  bool all = true;
  for (const Criterion& c : criteria) {
    std::string detail;
    bool ok = false;
    auto start = std::chrono::steady_clock::now();
    try {
      ok = c.run(&detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << " " << c.number << ": " << c.summary
         << " [" << std::fixed << secs << "s]";
    if (!ok && !detail.empty()) line << " -- " << detail;
    std::cout << line.str() << "\n";
    all = all && ok;
  }
  return all ? 0 : 1;
}
