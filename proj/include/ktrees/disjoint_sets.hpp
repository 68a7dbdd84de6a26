#pragma once

#include <numeric>
#include <vector>

namespace ktrees {

// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n), size_(n, 1), count_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  // returns false if already joined
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --count_;
    return true;
  }

  bool same(int a, int b) { return find(a) == find(b); }

  int component_count() const { return count_; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  int count_;
};

}  // namespace ktrees
