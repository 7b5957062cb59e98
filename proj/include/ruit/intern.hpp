#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace ruit {

/// Append-only hash-consing table.
///
/// Nodes are stored in fixed-size chunks that never move, so `operator[]`
/// is lock-free: a published identifier stays valid for the lifetime of the
/// table. Insertion (get-or-insert) is serialized by a mutex.
template <class Node, class Hash>
class InternTable {
public:
  static constexpr std::uint32_t kChunkBits = 16;
  static constexpr std::uint32_t kChunkSize = 1u << kChunkBits;
  static constexpr std::uint32_t kMaxChunks = 1u << 16;

  InternTable() {
    for (auto& c : chunks_) c.store(nullptr, std::memory_order_relaxed);
  }
  InternTable(const InternTable&) = delete;
  InternTable& operator=(const InternTable&) = delete;

  std::uint32_t intern(const Node& node) {
    std::lock_guard lock(mutex_);
    if (auto it = index_.find(node); it != index_.end()) return it->second;
    const std::uint32_t id = size_.load(std::memory_order_relaxed);
    const std::uint32_t chunk = id >> kChunkBits;
    if (chunk >= kMaxChunks) throw std::length_error("intern table exhausted");
    if ((id & (kChunkSize - 1)) == 0) {
      owned_.push_back(std::make_unique<Node[]>(kChunkSize));
      chunks_[chunk].store(owned_.back().get(), std::memory_order_release);
    }
    chunks_[chunk].load(std::memory_order_relaxed)[id & (kChunkSize - 1)] = node;
    index_.emplace(node, id);
    size_.store(id + 1, std::memory_order_release);
    return id;
  }

  const Node& operator[](std::uint32_t id) const {
    return chunks_[id >> kChunkBits].load(std::memory_order_acquire)[id & (kChunkSize - 1)];
  }

  std::uint32_t size() const { return size_.load(std::memory_order_acquire); }

private:
  std::mutex mutex_;
  std::unordered_map<Node, std::uint32_t, Hash> index_;
  std::array<std::atomic<Node*>, kMaxChunks> chunks_;
  std::vector<std::unique_ptr<Node[]>> owned_;
  std::atomic<std::uint32_t> size_{0};
};

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace ruit
