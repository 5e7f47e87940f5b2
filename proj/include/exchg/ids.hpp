#ifndef EXCHG_IDS_HPP_
#define EXCHG_IDS_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace exchg {

// Error with a machine-readable kind ("membership", "size", "composition", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// Finite set of non-negative integer IDs, kept strictly sorted.
class IdSet {
 public:
  IdSet() = default;
  explicit IdSet(std::vector<int> labels);
  IdSet(std::initializer_list<int> labels)
      : IdSet(std::vector<int>(labels)) {}
  // Standardized set [n] = {1,...,n}.
  static IdSet range(int n);

  const std::vector<int>& labels() const { return labels_; }
  int size() const { return static_cast<int>(labels_.size()); }
  bool empty() const { return labels_.empty(); }
  bool contains(int x) const;
  int max_label() const;  // 0 for the empty set

  bool subset_of(const IdSet& other) const;
  IdSet union_with(const IdSet& other) const;
  IdSet intersect(const IdSet& other) const;
  IdSet minus(const IdSet& other) const;

  auto begin() const { return labels_.begin(); }
  auto end() const { return labels_.end(); }

  bool operator==(const IdSet&) const = default;
  auto operator<=>(const IdSet&) const = default;

  std::string to_string() const;

 private:
  std::vector<int> labels_;
};

// Injective map between two IdSets.
class Injection {
 public:
  // pairs: (source, target), any order; validated and sorted by source.
  Injection(IdSet dom, IdSet cod, std::vector<std::pair<int, int>> pairs);
  static Injection identity(const IdSet& a);
  static Injection inclusion(const IdSet& sub, const IdSet& super);

  const IdSet& dom() const { return dom_; }
  const IdSet& cod() const { return cod_; }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

  int operator()(int x) const;
  IdSet image() const;
  IdSet image_of(const IdSet& sub) const;

  bool is_bijection() const { return dom_.size() == cod_.size(); }
  Injection inverse() const;  // bijections only
  // tau = inclusion(image, cod) o bijection(dom -> image).
  std::pair<Injection, Injection> decompose() const;

  bool operator==(const Injection&) const = default;
  auto operator<=>(const Injection&) const = default;

  std::string to_string() const;

 private:
  IdSet dom_, cod_;
  std::vector<std::pair<int, int>> pairs_;
};

// tau o sigma (tau after sigma); requires cod(sigma) == dom(tau).
Injection compose(const Injection& tau, const Injection& sigma);

enum class SubsetFilter { All, ExactSize, AtMostSize };

// Lexicographic enumeration of subsets of a (all, size k, or size <= k).
std::vector<IdSet> enumerate_subsets(const IdSet& a,
                                     SubsetFilter filter = SubsetFilter::All,
                                     int k = 0);

// All injections b -> a in a deterministic order; empty when |b| > |a|.
std::vector<Injection> enumerate_injections(const IdSet& b, const IdSet& a);

// All bijections b -> a; empty when sizes differ.
std::vector<Injection> enumerate_bijections(const IdSet& b, const IdSet& a);

// n!/(n-k)! and binomial(n,k) as 64-bit counts (desk scale, no overflow guard).
long long falling_factorial(int n, int k);
long long binomial(int n, int k);

}  // namespace exchg

#endif  // EXCHG_IDS_HPP_
