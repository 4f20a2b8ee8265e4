#include "fieldspec/partition.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "fieldspec/error.hpp"

namespace fieldspec {

SetPartition::SetPartition(std::vector<int> labels) : labels_(std::move(labels)), k_(0) {
  if (labels_.empty()) throw InvalidArgument("partition of an empty set");
  if (labels_.size() > 16) throw InvalidArgument("partition size above 16 is unsupported");
  int top = -1;
  for (int l : labels_) {
    if (l < 0 || l > top + 1) {
      throw InvalidArgument("labels are not a restricted growth string");
    }
    top = std::max(top, l);
  }
  k_ = top + 1;
}

std::vector<std::vector<int>> SetPartition::blocks() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(k_));
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    out[static_cast<std::size_t>(labels_[i])].push_back(static_cast<int>(i) + 1);
  }
  return out;
}

std::string SetPartition::to_string() const {
  std::ostringstream out;
  out << "{";
  const auto bs = blocks();
  for (std::size_t j = 0; j < bs.size(); ++j) {
    if (j > 0) out << ",";
    out << "{";
    for (std::size_t i = 0; i < bs[j].size(); ++i) {
      if (i > 0) out << ",";
      out << bs[j][i];
    }
    out << "}";
  }
  out << "}";
  return out.str();
}

SetPartition partition_from_index_vector(std::span<const long long> q) {
  if (q.empty()) throw InvalidArgument("index vector must be nonempty");
  std::map<long long, int> first_seen;
  std::vector<int> labels;
  labels.reserve(q.size());
  for (long long v : q) {
    auto [it, inserted] = first_seen.try_emplace(v, static_cast<int>(first_seen.size()));
    labels.push_back(it->second);
  }
  return SetPartition(std::move(labels));
}

PartitionStream::PartitionStream(int p) {
  if (p < 1 || p > kMaxPartitionSize) {
    std::ostringstream msg;
    msg << "partition size p=" << p << " outside 1.." << kMaxPartitionSize;
    throw InvalidArgument(msg.str());
  }
  labels_.assign(static_cast<std::size_t>(p), 0);
  prefix_max_.assign(static_cast<std::size_t>(p), 0);
}

bool PartitionStream::advance() {
  const auto p = labels_.size();
  // Rightmost position that can still grow: labels[i] <= prefix_max[i-1].
  for (std::size_t i = p; i-- > 1;) {
    if (labels_[i] <= prefix_max_[i - 1]) {
      ++labels_[i];
      prefix_max_[i] = std::max(prefix_max_[i - 1], labels_[i]);
      for (std::size_t j = i + 1; j < p; ++j) {
        labels_[j] = 0;
        prefix_max_[j] = prefix_max_[i];
      }
      return true;
    }
  }
  return false;
}

void for_each_partition(int p, const std::function<void(const SetPartition&)>& visit) {
  PartitionStream stream(p);
  do {
    visit(stream.current());
  } while (stream.advance());
}

namespace {

// Relabels a sequence by first appearance and packs it.
std::uint64_t pack_normalized(const int* seq, std::size_t p) {
  int map[16];
  std::fill(map, map + 16, -1);
  int next = 0;
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < p; ++i) {
    int& m = map[seq[i]];
    if (m < 0) m = next++;
    key = (key << 4) | static_cast<std::uint64_t>(m);
  }
  return key;
}

}  // namespace

std::uint64_t dihedral_key(std::span<const int> labels) {
  const std::size_t p = labels.size();
  if (p == 0 || p > 16) throw InvalidArgument("dihedral key needs 1..16 labels");
  int buf[16];
  std::uint64_t best = ~std::uint64_t{0};
  for (std::size_t s = 0; s < p; ++s) {
    for (std::size_t i = 0; i < p; ++i) buf[i] = labels[(s + i) % p];
    best = std::min(best, pack_normalized(buf, p));
    for (std::size_t i = 0; i < p; ++i) buf[i] = labels[(s + p - i) % p];
    best = std::min(best, pack_normalized(buf, p));
  }
  return best;
}

std::vector<int> labels_from_key(std::uint64_t key, int p) {
  std::vector<int> labels(static_cast<std::size_t>(p));
  for (int i = p - 1; i >= 0; --i) {
    labels[static_cast<std::size_t>(i)] = static_cast<int>(key & 0xF);
    key >>= 4;
  }
  return labels;
}

}  // namespace fieldspec
