#pragma once

#include <vector>

#include "dsupp/gf.hpp"

namespace dsupp {

// Dense accumulator that remembers which coordinates were touched.
class SparseAcc {
 public:
  SparseAcc(const Field& F, int n) : F_(F), v_(n, 0), mark_(n, 0) {}
  void add(int k, Elem c) {
    if (!c) return;
    if (!mark_[k]) {
      mark_[k] = 1;
      touched_.push_back(k);
    }
    v_[k] = F_.add(v_[k], c);
  }
  bool all_zero() const {
    for (int k : touched_)
      if (v_[k]) return false;
    return true;
  }
  void clear() {
    for (int k : touched_) {
      v_[k] = 0;
      mark_[k] = 0;
    }
    touched_.clear();
  }
  const std::vector<int>& touched() const { return touched_; }
  Elem get(int k) const { return v_[k]; }
  Vec dense() const { return v_; }

 private:
  const Field& F_;
  Vec v_;
  std::vector<char> mark_;
  std::vector<int> touched_;
};

using SparseVec = std::vector<std::pair<int, Elem>>;

inline SparseVec sparse_of(const Vec& v) {
  SparseVec s;
  for (int i = 0; i < int(v.size()); ++i)
    if (v[i]) s.emplace_back(i, v[i]);
  return s;
}

}  // namespace dsupp
