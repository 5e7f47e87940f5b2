#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "exchg/sample.hpp"

using namespace exchg;

TEST_CASE("randomizer values are deterministic in (seed, set)") {
  Randomizer a(42), b(42), c(43);
  IdSet e({3, 7, 9});
  CHECK(a.value(e) == b.value(e));
  CHECK(a.value(e) != c.value(e));
  CHECK(a.value(IdSet({3, 7})) != a.value(e));
  for (int i = 1; i <= 100; ++i) {
    double u = a.value(IdSet({i}));
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("randomizer passes a Kolmogorov-Smirnov uniformity check") {
  const int n = 20000;
  Randomizer rz(2024);
  std::vector<double> u;
  for (int i = 1; i <= n; ++i) u.push_back(rz.value(IdSet({i})));
  std::sort(u.begin(), u.end());
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    d = std::max(d, std::abs(u[static_cast<size_t>(i)] - (i + 1.0) / n));
    d = std::max(d, std::abs(u[static_cast<size_t>(i)] - i / static_cast<double>(n)));
  }
  // alpha = 0.01 critical value for the two-sided KS statistic.
  CHECK(d * std::sqrt(static_cast<double>(n)) < 1.628);
}

TEST_CASE("graph sampler thresholds the pair uniform directly") {
  double p = 0.3;
  SamplerKernelFamily er = erdos_renyi_kernels(p);
  for (std::uint64_t seed : {1ULL, 2ULL, 77ULL}) {
    Elem g = sample_array(er, 5, seed);
    Randomizer rz(seed);
    for (int i = 1; i <= 5; ++i)
      for (int j = i + 1; j <= 5; ++j) {
        Index e = Index::set({Index::atom(i), Index::atom(j)});
        CHECK(g.at(e) == (rz.value(IdSet({i, j})) < p ? 1 : 0));
      }
  }
}

TEST_CASE("edge frequency matches the threshold within a chi-square bound") {
  double p = 0.3;
  SamplerKernelFamily er = erdos_renyi_kernels(p);
  int ones = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    Elem g = sample_array(er, 5, seed);
    for (const auto& [i, v] : g.entries()) {
      ones += v;
      ++total;
    }
  }
  double e1 = total * p, e0 = total * (1 - p);
  double chi2 = (ones - e1) * (ones - e1) / e1 +
                (total - ones - e0) * (total - ones - e0) / e0;
  CHECK(chi2 < 6.635);  // 1 df, alpha = 0.01
}

TEST_CASE("sampling commutes with restriction, bit for bit") {
  SamplerKernelFamily er = erdos_renyi_kernels(0.4);
  SamplerKernelFamily mixture = bernoulli_mixture_kernels();
  Injection inc = Injection::inclusion(IdSet::range(3), IdSet::range(8));
  DataStructure graph2 = DataStructure::graph2();
  DataStructure bits = DataStructure::array({0, 1}, IndexingSystem::id());
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CHECK(graph2.restrict(inc, sample_array(er, 8, seed)) ==
          sample_array(er, 3, seed));
    CHECK(bits.restrict(inc, sample_array(mixture, 8, seed)) ==
          sample_array(mixture, 3, seed));
  }
}

TEST_CASE("mixture sampler shows the positive correlation of its law") {
  SamplerKernelFamily mixture = bernoulli_mixture_kernels();
  int both = 0;
  const int trials = 4000;
  for (std::uint64_t seed = 0; seed < trials; ++seed) {
    Elem x = sample_array(mixture, 2, seed);
    if (x.at(Index::atom(1)) == 1 && x.at(Index::atom(2)) == 1) ++both;
  }
  // P(x1 = x2 = 1) = E[U^2] = 1/3, vs 1/4 under independence.
  double freq = static_cast<double>(both) / trials;
  CHECK(freq > 0.30);
  CHECK(freq < 0.37);
}

TEST_CASE("total order sampler yields valid, consistent, uniform orders") {
  DataStructure total = DataStructure::total();
  Injection inc = Injection::inclusion(IdSet::range(3), IdSet::range(6));
  std::map<Elem, int> counts;
  for (std::uint64_t seed = 0; seed < 600; ++seed) {
    Elem big = sample_total_order(6, seed);
    CHECK(total.element_of(IdSet::range(6), big));
    Elem small = sample_total_order(3, seed);
    CHECK(total.restrict(inc, big) == small);
    ++counts[small];
  }
  CHECK(counts.size() == 6);
  double chi2 = 0.0;
  for (const auto& [x, c] : counts) chi2 += (c - 100.0) * (c - 100.0) / 100.0;
  CHECK(chi2 < 15.086);  // 5 df, alpha = 0.01
}

TEST_CASE("measurement sampler reproduces exact masses") {
  DataStructure bits = DataStructure::array({0, 1}, IndexingSystem::id());
  FiniteLaw law = FiniteLaw::iid(bits, {{0, {3, 4}}, {1, {1, 4}}}, 2);
  Injection inc = Injection::inclusion(IdSet::range(1), IdSet::range(2));
  std::map<Elem, int> counts;
  const int trials = 2000;
  for (std::uint64_t seed = 0; seed < trials; ++seed) {
    Elem x = sample_measurement(law, 2, seed);
    CHECK(bits.restrict(inc, x) == sample_measurement(law, 1, seed));
    ++counts[x];
  }
  double chi2 = 0.0;
  for (const Elem& x : bits.elements(IdSet::range(2))) {
    double expected = trials * to_double(law.mass(2, x));
    double got = counts.count(x) ? counts[x] : 0;
    chi2 += (got - expected) * (got - expected) / expected;
  }
  CHECK(chi2 < 11.345);  // 3 df, alpha = 0.01
  CHECK_THROWS_AS(sample_measurement(law, 3, 1), Error);
}

TEST_CASE("depth-restricted samplers stay inside their query budget") {
  SamplerKernelFamily er = erdos_renyi_kernels(0.5);
  DepthResult cert = DataStructure::graph2().depth();
  REQUIRE(cert.certified);
  REQUIRE(cert.k == 2);
  SamplerKernelFamily shallow = depth_restrict(er, 2, cert);
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    CHECK(sample_array(shallow, 6, seed) ==
          sample_array(er, 6, seed, Randomizer::Mode::Full));

  CHECK_THROWS_AS(depth_restrict(er, 1, cert), Error);
  DepthResult uncertified{2, false};
  CHECK_THROWS_AS(depth_restrict(er, 2, uncertified), Error);
}

TEST_CASE("mode violations surface as depth errors") {
  Randomizer depth1(9, Randomizer::Mode::DepthK, 1);
  CHECK_THROWS_AS(depth1.value(IdSet({1, 2})), Error);
  Randomizer ergodic(9, Randomizer::Mode::Ergodic);
  CHECK_THROWS_AS(ergodic.value(IdSet{}), Error);

  // The mixture kernel needs the shared uniform; ergodic mode refuses it.
  SamplerKernelFamily mixture = bernoulli_mixture_kernels();
  CHECK_THROWS_AS(sample_array(mixture, 2, 1, Randomizer::Mode::Ergodic), Error);
  // An iid kernel never touches it.
  SamplerKernelFamily iid = iid_bernoulli_kernels(0.5);
  CHECK(sample_array(iid, 4, 1, Randomizer::Mode::Ergodic) ==
        sample_array(iid, 4, 1, Randomizer::Mode::Full));
}

TEST_CASE("missing kernels are reported by representative") {
  SamplerKernelFamily f{IndexingSystem::subsets_le(1), {0, 1}, {}, 1};
  f.kernels[Index::set({Index::atom(1)})] =
      [](const SamplerKernelFamily::Uniforms&) { return 0; };
  CHECK_THROWS_AS(sample_array(f, 2, 5), Error);  // no kernel for the empty set
}
