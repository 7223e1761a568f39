#include "sparsecfar/support_set.hpp"

#include <algorithm>

namespace sparsecfar {

SupportSet::SupportSet(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (!indices_.empty() && indices_.front() < 0) {
    throw InputError("SupportSet: negative index");
  }
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw InputError("SupportSet: duplicate index");
  }
}

SupportSet SupportSet::nonzeros_of(const Vector& v) {
  SupportSet s;
  s.indices_.reserve(static_cast<std::size_t>(v.size()));
  for (Index i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) s.indices_.push_back(static_cast<int>(i));
  }
  return s;
}

SupportSet SupportSet::complement(Index n) const {
  if (max_index() >= n) {
    throw InputError("SupportSet::complement: index out of range");
  }
  SupportSet out;
  out.indices_.reserve(static_cast<std::size_t>(n) - indices_.size());
  auto it = indices_.begin();
  for (int i = 0; i < n; ++i) {
    if (it != indices_.end() && *it == i) {
      ++it;
    } else {
      out.indices_.push_back(i);
    }
  }
  return out;
}

bool SupportSet::contains(int index) const noexcept {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

int SupportSet::max_index() const noexcept {
  return indices_.empty() ? -1 : indices_.back();
}

bool SupportSet::is_subset_of(const SupportSet& other) const noexcept {
  return std::includes(other.indices_.begin(), other.indices_.end(),
                       indices_.begin(), indices_.end());
}

int SupportSet::intersection_size(const SupportSet& a, const SupportSet& b) noexcept {
  int count = 0;
  auto ia = a.indices_.begin();
  auto ib = b.indices_.begin();
  while (ia != a.indices_.end() && ib != b.indices_.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

}  // namespace sparsecfar
