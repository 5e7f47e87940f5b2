#include "exchg/ids.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace exchg {

IdSet::IdSet(std::vector<int> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
  if (!labels_.empty() && labels_.front() < 0)
    throw Error("domain", "IdSet labels must be non-negative");
}

IdSet IdSet::range(int n) {
  std::vector<int> v(static_cast<size_t>(std::max(n, 0)));
  std::iota(v.begin(), v.end(), 1);
  return IdSet(std::move(v));
}

bool IdSet::contains(int x) const {
  return std::binary_search(labels_.begin(), labels_.end(), x);
}

int IdSet::max_label() const { return labels_.empty() ? 0 : labels_.back(); }

bool IdSet::subset_of(const IdSet& other) const {
  return std::includes(other.labels_.begin(), other.labels_.end(),
                       labels_.begin(), labels_.end());
}

IdSet IdSet::union_with(const IdSet& other) const {
  std::vector<int> out;
  std::set_union(labels_.begin(), labels_.end(), other.labels_.begin(),
                 other.labels_.end(), std::back_inserter(out));
  return IdSet(std::move(out));
}

IdSet IdSet::intersect(const IdSet& other) const {
  std::vector<int> out;
  std::set_intersection(labels_.begin(), labels_.end(), other.labels_.begin(),
                        other.labels_.end(), std::back_inserter(out));
  return IdSet(std::move(out));
}

IdSet IdSet::minus(const IdSet& other) const {
  std::vector<int> out;
  std::set_difference(labels_.begin(), labels_.end(), other.labels_.begin(),
                      other.labels_.end(), std::back_inserter(out));
  return IdSet(std::move(out));
}

std::string IdSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (i) os << ',';
    os << labels_[i];
  }
  os << '}';
  return os.str();
}

Injection::Injection(IdSet dom, IdSet cod, std::vector<std::pair<int, int>> pairs)
    : dom_(std::move(dom)), cod_(std::move(cod)), pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  if (static_cast<int>(pairs_.size()) != dom_.size())
    throw Error("domain", "injection must map every domain label exactly once");
  std::vector<int> targets;
  for (size_t idx = 0; idx < pairs_.size(); ++idx) {
    if (pairs_[idx].first != dom_.labels()[idx])
      throw Error("domain", "injection sources must equal the domain");
    if (!cod_.contains(pairs_[idx].second))
      throw Error("domain", "injection image must lie in the codomain");
    targets.push_back(pairs_[idx].second);
  }
  std::sort(targets.begin(), targets.end());
  if (std::adjacent_find(targets.begin(), targets.end()) != targets.end())
    throw Error("domain", "injection images must be distinct");
}

Injection Injection::identity(const IdSet& a) {
  std::vector<std::pair<int, int>> pairs;
  for (int x : a) pairs.emplace_back(x, x);
  return Injection(a, a, std::move(pairs));
}

Injection Injection::inclusion(const IdSet& sub, const IdSet& super) {
  if (!sub.subset_of(super))
    throw Error("domain", "inclusion requires a subset");
  std::vector<std::pair<int, int>> pairs;
  for (int x : sub) pairs.emplace_back(x, x);
  return Injection(sub, super, std::move(pairs));
}

int Injection::operator()(int x) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(),
                             std::make_pair(x, INT32_MIN));
  if (it == pairs_.end() || it->first != x)
    throw Error("membership", "label not in injection domain");
  return it->second;
}

IdSet Injection::image() const {
  std::vector<int> out;
  for (auto& [s, t] : pairs_) out.push_back(t);
  return IdSet(std::move(out));
}

IdSet Injection::image_of(const IdSet& sub) const {
  std::vector<int> out;
  for (int x : sub) out.push_back((*this)(x));
  return IdSet(std::move(out));
}

Injection Injection::inverse() const {
  if (!is_bijection())
    throw Error("domain", "only bijections are invertible");
  std::vector<std::pair<int, int>> pairs;
  for (auto& [s, t] : pairs_) pairs.emplace_back(t, s);
  return Injection(cod_, dom_, std::move(pairs));
}

std::pair<Injection, Injection> Injection::decompose() const {
  IdSet img = image();
  Injection bij(dom_, img, pairs_);
  return {Injection::inclusion(img, cod_), bij};
}

std::string Injection::to_string() const {
  std::ostringstream os;
  os << dom_.to_string() << "->" << cod_.to_string() << '[';
  for (size_t i = 0; i < pairs_.size(); ++i) {
    if (i) os << ',';
    os << pairs_[i].first << ':' << pairs_[i].second;
  }
  os << ']';
  return os.str();
}

Injection compose(const Injection& tau, const Injection& sigma) {
  if (sigma.cod() != tau.dom())
    throw Error("composition", "compose requires cod(sigma) == dom(tau)");
  std::vector<std::pair<int, int>> pairs;
  for (int x : sigma.dom()) pairs.emplace_back(x, tau(sigma(x)));
  return Injection(sigma.dom(), tau.cod(), std::move(pairs));
}

std::vector<IdSet> enumerate_subsets(const IdSet& a, SubsetFilter filter, int k) {
  const auto& v = a.labels();
  int n = a.size();
  std::vector<IdSet> out;
  int lo = filter == SubsetFilter::ExactSize ? k : 0;
  int hi = filter == SubsetFilter::All ? n : std::min(k, n);
  // Smaller subsets first, then lexicographic in label vectors; the labels in
  // v are already sorted, so combinations in position order are lexicographic.
  for (int sz = lo; sz <= hi; ++sz) {
    if (sz < 0) continue;
    std::vector<int> pos(static_cast<size_t>(sz));
    for (int i = 0; i < sz; ++i) pos[static_cast<size_t>(i)] = i;
    while (true) {
      std::vector<int> sub;
      sub.reserve(static_cast<size_t>(sz));
      for (int p : pos) sub.push_back(v[static_cast<size_t>(p)]);
      out.push_back(IdSet(std::move(sub)));
      int j = sz - 1;
      while (j >= 0 && pos[static_cast<size_t>(j)] == n - sz + j) --j;
      if (j < 0) break;
      ++pos[static_cast<size_t>(j)];
      for (int i = j + 1; i < sz; ++i)
        pos[static_cast<size_t>(i)] = pos[static_cast<size_t>(i - 1)] + 1;
    }
  }
  return out;
}

std::vector<Injection> enumerate_injections(const IdSet& b, const IdSet& a) {
  std::vector<Injection> out;
  int kb = b.size(), na = a.size();
  if (kb > na) return out;
  // Recursively assign targets to sorted sources; target choice order follows
  // the sorted codomain, so the overall order is lexicographic in images.
  std::vector<int> chosen;
  std::vector<bool> used(static_cast<size_t>(na), false);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == kb) {
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < kb; ++i)
        pairs.emplace_back(b.labels()[static_cast<size_t>(i)],
                           a.labels()[static_cast<size_t>(chosen[static_cast<size_t>(i)])]);
      out.push_back(Injection(b, a, std::move(pairs)));
      return;
    }
    for (int t = 0; t < na; ++t) {
      if (used[static_cast<size_t>(t)]) continue;
      used[static_cast<size_t>(t)] = true;
      chosen.push_back(t);
      self(self, pos + 1);
      chosen.pop_back();
      used[static_cast<size_t>(t)] = false;
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<Injection> enumerate_bijections(const IdSet& b, const IdSet& a) {
  if (b.size() != a.size()) return {};
  return enumerate_injections(b, a);
}

long long falling_factorial(int n, int k) {
  long long r = 1;
  for (int i = 0; i < k; ++i) r *= (n - i);
  return r;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace exchg
