#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fieldspec {

// Largest set size for which partitions are enumerated (B(12) = 4,213,597).
inline constexpr int kMaxPartitionSize = 12;

// Cyclic successor convention on {1..p}: [p] = p, [p+1] = 1, [0] = p.
// Shared by constraint construction and every oracle that walks the cycle.
constexpr int cyclic_index(int i, int p) noexcept {
  return ((i - 1) % p + p) % p + 1;
}

// Partition of {1..p} into k nonempty blocks, stored as a restricted growth
// string: labels[i-1] is the 0-based block of element i, with blocks
// numbered by first appearance (so block j is the one with the j-th
// smallest minimum).
class SetPartition {
 public:
  // Throws InvalidArgument if `labels` is empty or not a restricted growth
  // string (labels[0] = 0 and labels[i] <= 1 + max(labels[0..i-1])).
  explicit SetPartition(std::vector<int> labels);

  int p() const noexcept { return static_cast<int>(labels_.size()); }
  int k() const noexcept { return k_; }
  const std::vector<int>& labels() const noexcept { return labels_; }

  // 0-based block index of element i in 1..p.
  int block_of(int i) const { return labels_.at(static_cast<std::size_t>(i - 1)); }

  // Blocks as sorted 1-based element lists, in first-appearance order.
  std::vector<std::vector<int>> blocks() const;

  // "{{1,5},{2},{3,4},{6}}"
  std::string to_string() const;

  friend bool operator==(const SetPartition&, const SetPartition&) = default;

 private:
  std::vector<int> labels_;
  int k_;
};

// Blocks group the positions of equal entries of q, ordered by first
// appearance. Throws InvalidArgument for empty q.
SetPartition partition_from_index_vector(std::span<const long long> q);

// Streams every partition of {1..p} exactly once in tree order (the
// lexicographic order of restricted growth strings). Nothing is materialized
// beyond the current labels.
class PartitionStream {
 public:
  // Throws InvalidArgument unless 1 <= p <= kMaxPartitionSize.
  explicit PartitionStream(int p);

  // Labels of the current partition; valid until the next advance().
  const std::vector<int>& labels() const noexcept { return labels_; }
  SetPartition current() const { return SetPartition(labels_); }
  int blocks() const noexcept { return prefix_max_.back() + 1; }

  // Moves to the next partition; false once the stream is exhausted.
  bool advance();

 private:
  std::vector<int> labels_;
  std::vector<int> prefix_max_;  // max(labels[0..i])
};

void for_each_partition(int p, const std::function<void(const SetPartition&)>& visit);

// Canonical representative of the partition's orbit under rotations and
// reflection of the cycle 1 -> 2 -> ... -> p -> 1, packed 4 bits per label.
// Lattice counts and hence zeta polynomials are invariant on these orbits.
std::uint64_t dihedral_key(std::span<const int> labels);
std::vector<int> labels_from_key(std::uint64_t key, int p);

}  // namespace fieldspec
