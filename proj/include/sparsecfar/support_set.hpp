#pragma once

#include <vector>

#include "sparsecfar/types.hpp"

namespace sparsecfar {

/// Strictly increasing set of signal indices, 0-based.
///
/// Holds the nonzero support of an estimate; its complement with respect to
/// the ambient dimension is the zero support.
class SupportSet {
 public:
  SupportSet() = default;

  /// Indices are sorted on construction; duplicates or negative entries throw.
  explicit SupportSet(std::vector<int> indices);

  /// Support of the exactly-nonzero components of v.
  static SupportSet nonzeros_of(const Vector& v);

  /// Complement within {0, ..., n-1}. Throws if any index is >= n.
  SupportSet complement(Index n) const;

  int size() const noexcept { return static_cast<int>(indices_.size()); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(int index) const noexcept;
  int max_index() const noexcept;  // -1 when empty

  const std::vector<int>& indices() const noexcept { return indices_; }

  bool is_subset_of(const SupportSet& other) const noexcept;
  static int intersection_size(const SupportSet& a, const SupportSet& b) noexcept;

  friend bool operator==(const SupportSet& a, const SupportSet& b) = default;

 private:
  std::vector<int> indices_;  // sorted, unique, nonnegative
};

}  // namespace sparsecfar
