#ifndef EXCHG_SAMPLE_HPP_
#define EXCHG_SAMPLE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "exchg/laws.hpp"
#include "exchg/structures.hpp"

namespace exchg {

// Keyed source of iid uniforms U_e, one per finite ID subset. Every value is
// a pure function of (seed, e), which makes sampling consistent across levels
// by construction.
class Randomizer {
 public:
  enum class Mode { Full, DepthK, Ergodic };

  explicit Randomizer(std::uint64_t seed, Mode mode = Mode::Full, int k = 0)
      : seed_(seed), mode_(mode), k_(k) {}

  double value(const IdSet& e) const;
  std::uint64_t seed() const { return seed_; }
  Mode mode() const { return mode_; }
  int depth_bound() const { return k_; }

 private:
  std::uint64_t seed_;
  Mode mode_;
  int k_;
};

// Kernels reading uniforms over subsets of [k], one per representative of the
// indexing system. Callables are trusted to be stabilizer-invariant (only
// table-backed kernels in module nat are machine-checked).
struct SamplerKernelFamily {
  using Uniforms = std::function<double(const IdSet&)>;
  IndexingSystem indexing;
  std::vector<int> alphabet;
  std::map<Index, std::function<int(const Uniforms&)>> kernels;
  // Largest |e| any kernel reads; DepthK sampling enforces this bound.
  int declared_depth = -1;  // -1 = unrestricted
};

// Entry at index i is kernel(rep(i)) fed with U over subsets of dom(i),
// aligned back to [k] through align_of(i).
Elem sample_array(const SamplerKernelFamily& family, int n, std::uint64_t seed,
                  std::optional<Randomizer::Mode> mode = std::nullopt);

// Strict total order on [n] by comparing per-ID uniforms (ties by label).
Elem sample_total_order(int n, std::uint64_t seed);

// Direct draw from an exact law: inverse CDF at level n_max, restricted down.
Elem sample_measurement(const FiniteLaw& law, int n, std::uint64_t seed);

// Depth-economical version of a sampler; requires a depth certificate for the
// target with certified bound <= k.
SamplerKernelFamily depth_restrict(const SamplerKernelFamily& family, int k,
                                   const DepthResult& certificate);

// Built-in kernel families.
SamplerKernelFamily erdos_renyi_kernels(double p);
SamplerKernelFamily iid_bernoulli_kernels(double p);
SamplerKernelFamily bernoulli_mixture_kernels();  // P(x_i=1 | U_0) = U_0

}  // namespace exchg

#endif  // EXCHG_SAMPLE_HPP_
