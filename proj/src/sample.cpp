#include "exchg/sample.hpp"

#include <algorithm>
#include <numeric>

namespace exchg {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_set(const IdSet& e) {
  // FNV-1a over the sorted labels; injective enough once remixed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (int x : e) {
    for (int shift = 0; shift < 32; shift += 8) {
      h ^= static_cast<std::uint64_t>((x >> shift) & 0xff);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace

double Randomizer::value(const IdSet& e) const {
  if (mode_ == Mode::DepthK && e.size() > k_)
    throw Error("depth", "depth-" + std::to_string(k_) +
                             " sampler queried U at " + e.to_string());
  if (mode_ == Mode::Ergodic && e.empty())
    throw Error("depth", "ergodic sampler queried the shared uniform U_0");
  std::uint64_t z = splitmix64(seed_ ^ hash_set(e));
  z = splitmix64(z);
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

Elem sample_array(const SamplerKernelFamily& family, int n, std::uint64_t seed,
                  std::optional<Randomizer::Mode> mode) {
  Randomizer::Mode m = mode.value_or(family.declared_depth >= 0
                                         ? Randomizer::Mode::DepthK
                                         : Randomizer::Mode::Full);
  Randomizer rz(seed, m, family.declared_depth);
  IdSet a = IdSet::range(n);
  std::vector<std::pair<Index, int>> entries;
  for (const Index& i : family.indexing.indices(a)) {
    Index rep = family.indexing.rep_of(i);
    auto it = family.kernels.find(rep);
    if (it == family.kernels.end())
      throw Error("membership",
                  "no kernel for representative " + rep.to_string());
    Injection align = family.indexing.align_of(i);
    // Uniforms over subsets of [k], transported into dom(i) by alignment.
    auto uniforms = [&](const IdSet& e) { return rz.value(align.image_of(e)); };
    entries.emplace_back(i, it->second(uniforms));
  }
  return Elem::array(std::move(entries));
}

Elem sample_total_order(int n, std::uint64_t seed) {
  Randomizer rz(seed);
  std::vector<double> u(static_cast<size_t>(n) + 1, 0.0);
  for (int i = 1; i <= n; ++i) u[static_cast<size_t>(i)] = rz.value(IdSet({i}));
  auto before = [&](int i, int j) {
    return u[static_cast<size_t>(i)] < u[static_cast<size_t>(j)] ||
           (u[static_cast<size_t>(i)] == u[static_cast<size_t>(j)] && i < j);
  };
  std::vector<std::pair<Index, int>> entries;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      entries.emplace_back(Index::tuple({Index::atom(i), Index::atom(j)}),
                           i != j && before(i, j) ? 1 : 0);
  return Elem::array(std::move(entries));
}

Elem sample_measurement(const FiniteLaw& law, int n, std::uint64_t seed) {
  if (n > law.n_max())
    throw Error("domain", "cannot sample above the law's n_max");
  double u = Randomizer(seed).value(IdSet{});
  IdSet full = IdSet::range(law.n_max());
  const std::vector<Elem>& elems = law.structure().elements(full);
  const std::vector<Rational>& tab = law.table(law.n_max());
  double acc = 0.0;
  size_t pick = elems.size() - 1;
  for (size_t i = 0; i < elems.size(); ++i) {
    acc += to_double(tab[i]);
    if (u < acc) {
      pick = i;
      break;
    }
  }
  return law.structure().restrict(Injection::inclusion(IdSet::range(n), full),
                                  elems[pick]);
}

SamplerKernelFamily depth_restrict(const SamplerKernelFamily& family, int k,
                                   const DepthResult& certificate) {
  if (!certificate.certified)
    throw Error("depth", "depth restriction needs a certified depth bound");
  if (certificate.k > k)
    throw Error("depth", "certificate bound " + std::to_string(certificate.k) +
                             " exceeds requested depth " + std::to_string(k));
  SamplerKernelFamily out = family;
  out.declared_depth = k;
  return out;
}

SamplerKernelFamily erdos_renyi_kernels(double p) {
  SamplerKernelFamily f{IndexingSystem::subsets(2), {0, 1}, {}, 2};
  Index rep = Index::set({Index::atom(1), Index::atom(2)});
  f.kernels[rep] = [p](const SamplerKernelFamily::Uniforms& u) {
    return u(IdSet({1, 2})) < p ? 1 : 0;
  };
  return f;
}

SamplerKernelFamily iid_bernoulli_kernels(double p) {
  SamplerKernelFamily f{IndexingSystem::id(), {0, 1}, {}, 1};
  f.kernels[Index::atom(1)] = [p](const SamplerKernelFamily::Uniforms& u) {
    return u(IdSet({1})) < p ? 1 : 0;
  };
  return f;
}

SamplerKernelFamily bernoulli_mixture_kernels() {
  SamplerKernelFamily f{IndexingSystem::id(), {0, 1}, {}, 1};
  f.kernels[Index::atom(1)] = [](const SamplerKernelFamily::Uniforms& u) {
    return u(IdSet({1})) < u(IdSet{}) ? 1 : 0;
  };
  return f;
}

}  // namespace exchg
