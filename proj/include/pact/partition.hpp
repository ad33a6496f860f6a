#pragma once

#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

namespace pact {

/// Partition of {0, .., n-1}. Classes are numbered by their least member, so
/// class 0 contains point 0 and numbering is canonical.
struct Partition {
  std::vector<std::size_t> class_of;
  std::vector<std::vector<std::size_t>> classes;  // members ascending

  std::size_t size() const noexcept { return classes.size(); }
  bool same(std::size_t a, std::size_t b) const { return class_of[a] == class_of[b]; }

  /// Renumbers arbitrary labels into canonical form.
  static Partition from_labels(const std::vector<std::size_t>& labels);

  bool operator==(const Partition&) const = default;
};

/// Union-find with path compression and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  Partition partition();

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Partition induced by a relation given as a predicate. Throws
/// PreconditionError naming the failing law if it is not an equivalence.
Partition partition_from_relation(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& related);

}  // namespace pact
