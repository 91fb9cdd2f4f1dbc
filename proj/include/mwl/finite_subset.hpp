#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace mwl {

/// Sorted, duplicate-free finite set of canonical elements.  Elements must
/// already be in canonical form so that equality is representation equality.
template <class T>
class FiniteSubset {
 public:
  using value_type = T;
  using const_iterator = typename std::vector<T>::const_iterator;

  FiniteSubset() = default;
  explicit FiniteSubset(std::vector<T> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  }
  FiniteSubset(std::initializer_list<T> elems) : FiniteSubset(std::vector<T>(elems)) {}

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const_iterator begin() const { return elems_.begin(); }
  const_iterator end() const { return elems_.end(); }
  const T& operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<T>& elements() const { return elems_; }

  bool contains(const T& x) const { return std::binary_search(elems_.begin(), elems_.end(), x); }

  /// True when every element of this set lies in other.
  bool subset_of(const FiniteSubset& other) const {
    return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
  }

  FiniteSubset unite(const FiniteSubset& other) const {
    std::vector<T> out;
    out.reserve(elems_.size() + other.elems_.size());
    std::set_union(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                   std::back_inserter(out));
    FiniteSubset r;
    r.elems_ = std::move(out);
    return r;
  }

  friend bool operator==(const FiniteSubset& a, const FiniteSubset& b) { return a.elems_ == b.elems_; }

 private:
  std::vector<T> elems_;
};

}  // namespace mwl
