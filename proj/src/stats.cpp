#include "exchg/stats.hpp"

#include <cmath>
#include <cstdlib>

namespace exchg {

namespace {

// Order-preserving injection [|b|] -> b.
Injection order_injection(const IdSet& b) {
  std::vector<std::pair<int, int>> pairs;
  int pos = 1;
  for (int x : b) pairs.emplace_back(pos++, x);
  return Injection(IdSet::range(b.size()), b, std::move(pairs));
}

Rational expectation(const FiniteLaw& law, const KernelStatistic& stat) {
  const std::vector<Elem>& elems =
      law.structure().elements(IdSet::range(stat.k));
  Rational e(0);
  for (size_t i = 0; i < elems.size(); ++i)
    e += law.table(stat.k)[i] * stat.g(elems[i]);
  return e;
}

// Cov(g over [k], g over [l]+{k+1..2k-l}), evaluated at level 2k-l.
Rational overlap_covariance(const FiniteLaw& law, const KernelStatistic& stat,
                            int l) {
  int k = stat.k;
  int m = 2 * k - l;
  if (m > law.n_max())
    throw Error("domain", "overlap covariance c_" + std::to_string(l) +
                              " needs tables up to level " + std::to_string(m));
  std::vector<int> b_labels;
  for (int j = 1; j <= l; ++j) b_labels.push_back(j);
  for (int j = k + 1; j <= m; ++j) b_labels.push_back(j);
  Injection tau_a =
      Injection::inclusion(IdSet::range(k), IdSet::range(m));
  Injection tau_b = order_injection(IdSet(std::move(b_labels)));
  tau_b = compose(Injection::inclusion(tau_b.cod(), IdSet::range(m)), tau_b);

  const std::vector<Elem>& elems = law.structure().elements(IdSet::range(m));
  Rational cross(0);
  for (size_t i = 0; i < elems.size(); ++i) {
    const Rational& p = law.table(m)[i];
    if (p == Rational(0)) continue;
    cross += p * stat.g(law.structure().restrict(tau_a, elems[i])) *
             stat.g(law.structure().restrict(tau_b, elems[i]));
  }
  Rational e = expectation(law, stat);
  return cross - e * e;
}

}  // namespace

Rational density(const DataStructure& d, const IdSet& b, const Elem& x,
                 const IdSet& a, const Elem& y) {
  if (b.size() > a.size())
    throw Error("size", "pattern is larger than the observation");
  if (!d.element_of(b, x))
    throw Error("membership", "pattern is not an element over " + b.to_string());
  if (!d.element_of(a, y))
    throw Error("membership",
                "observation is not an element over " + a.to_string());
  long long hits = 0;
  std::vector<Injection> taus = enumerate_injections(b, a);
  for (const Injection& tau : taus)
    if (d.restrict(tau, y) == x) ++hits;
  return Rational(hits, static_cast<long long>(taus.size()));
}

bool KernelStatistic::is_symmetric() const {
  IdSet box = IdSet::range(k);
  for (const Injection& pi : enumerate_bijections(box, box))
    for (const Elem& x : structure.elements(box))
      if (g(structure.restrict(pi, x)) != g(x)) return false;
  return true;
}

KernelStatistic KernelStatistic::indicator(const DataStructure& d, int k,
                                           const Elem& pattern) {
  if (!d.element_of(IdSet::range(k), pattern))
    throw Error("membership", "indicator pattern is not an element over [k]");
  return KernelStatistic{d, k, [pattern](const Elem& x) {
                           return Rational(x == pattern ? 1 : 0);
                         }};
}

KernelStatistic KernelStatistic::first_entry(const DataStructure& d) {
  if (!d.is_array_type())
    throw Error("domain", "entry statistic needs an array structure");
  return KernelStatistic{d, 1, [](const Elem& x) {
                           return Rational(x.at(Index::atom(1)));
                         }};
}

Rational empirical_average(const KernelStatistic& stat, const IdSet& a,
                           const Elem& y) {
  if (a.size() < stat.k)
    throw Error("size", "observation smaller than the statistic's order");
  Rational sum(0);
  std::vector<Injection> taus = enumerate_injections(IdSet::range(stat.k), a);
  for (const Injection& tau : taus) sum += stat.g(stat.structure.restrict(tau, y));
  return sum / Rational(static_cast<long long>(taus.size()));
}

VariancePair variance_exact(const FiniteLaw& law, const KernelStatistic& stat,
                            int n) {
  int k = stat.k;
  if (n < k || n > law.n_max())
    throw Error("domain", "variance level must lie in [k, n_max]");
  IdSet box = IdSet::range(n);
  const std::vector<Elem>& elems = law.structure().elements(box);
  Rational e(0), e2(0);
  for (size_t i = 0; i < elems.size(); ++i) {
    const Rational& p = law.table(n)[i];
    if (p == Rational(0)) continue;
    Rational avg = empirical_average(stat, box, elems[i]);
    e += p * avg;
    e2 += p * avg * avg;
  }
  VariancePair out;
  out.direct = e2 - e * e;

  // Pairs of injections [k] -> [n] grouped by image overlap l; the covariance
  // of a pair depends only on l because g is symmetric and the law is
  // exchangeable.
  long long n_k = falling_factorial(n, k);
  Rational sum(0);
  for (int l = std::max(0, 2 * k - n); l <= k; ++l) {
    long long pairs =
        n_k * binomial(k, l) * binomial(n - k, k - l) * falling_factorial(k, k);
    if (pairs == 0) continue;
    sum += Rational(pairs) * overlap_covariance(law, stat, l);
  }
  out.formula = sum / Rational(n_k * n_k);
  return out;
}

UStatCovariances u_stat_covariances(const FiniteLaw& law,
                                    const KernelStatistic& stat) {
  int k = stat.k;
  if (2 * k > law.n_max())
    throw Error("domain", "covariance table needs n_max >= 2k");
  UStatCovariances out;
  for (int l = 0; l <= k; ++l)
    out.c.push_back(overlap_covariance(law, stat, l));
  out.sigma2_limit = Rational(static_cast<long long>(k) * k) * out.c[1];
  return out;
}

LimitReport limit_estimate(
    const DataStructure& d,
    const std::vector<std::pair<IdSet, Elem>>& sequence,
    const std::vector<std::pair<IdSet, Elem>>& targets, double tolerance) {
  LimitReport out;
  out.converged.assign(targets.size(), false);
  int prev = -1;
  for (const auto& [a, y] : sequence) {
    if (a.size() <= prev)
      throw Error("domain", "observation sizes must strictly increase");
    prev = a.size();
    LimitReport::Row row;
    row.n = a.size();
    for (const auto& [b, x] : targets) row.values.push_back(density(d, b, x, a, y));
    out.rows.push_back(std::move(row));
  }
  if (out.rows.size() >= 3) {
    out.all_converged = true;
    for (size_t t = 0; t < targets.size(); ++t) {
      double v0 = to_double(out.rows[out.rows.size() - 3].values[t]);
      double v1 = to_double(out.rows[out.rows.size() - 2].values[t]);
      double v2 = to_double(out.rows[out.rows.size() - 1].values[t]);
      out.converged[t] = std::abs(v0 - v1) < tolerance &&
                         std::abs(v1 - v2) < tolerance &&
                         std::abs(v0 - v2) < tolerance;
      out.all_converged = out.all_converged && out.converged[t];
    }
  }
  return out;
}

CheckReport check_density_rule_exchangeable(const DataStructure& d,
                                            const IdSet& a, const Elem& y,
                                            int n_max, double tolerance) {
  std::vector<IdSet> sets = enumerate_subsets(IdSet::range(n_max));
  // One pass over injections b -> a per subset b; everything below reads
  // these tallies.
  std::map<IdSet, std::map<Elem, double>> tables;
  for (const IdSet& b : sets) {
    std::vector<Injection> taus = enumerate_injections(b, a);
    std::map<Elem, double>& table = tables[b];
    for (const Injection& tau : taus) table[d.restrict(tau, y)] += 1.0;
    for (auto& [x, v] : table) v /= static_cast<double>(taus.size());
  }
  auto at = [&](const IdSet& b, const Elem& x) {
    auto it = tables[b].find(x);
    return it == tables[b].end() ? 0.0 : it->second;
  };
  for (const IdSet& b : sets) {
    double total = 0.0;
    for (const auto& [x, v] : tables[b]) total += v;
    if (std::abs(total - 1.0) > tolerance) {
      CheckReport r;
      r.pass = false;
      r.check = "density-rule";
      r.message = "densities over " + b.to_string() + " sum to " +
                  std::to_string(total);
      r.witness_sets = {b};
      return r;
    }
    for (const IdSet& c : sets) {
      for (const Injection& tau : enumerate_injections(c, b)) {
        for (const Elem& xc : d.elements(c)) {
          double push = 0.0;
          for (const Elem& xb : d.elements(b))
            if (d.restrict(tau, xb) == xc) push += at(b, xb);
          double direct = at(c, xc);
          if (std::abs(push - direct) > tolerance) {
            CheckReport r;
            r.pass = false;
            r.check = "density-rule";
            r.message = "pushforward along " + tau.to_string() +
                        " disagrees at " + xc.to_string();
            r.witness_sets = {c, b};
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
