#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fruitgrid/core/rng.hpp"

namespace fruitgrid {

inline constexpr double kPriorityFloor = 1e-3;

// Fixed-capacity ring buffer with TD-error-proportional sampling. New
// entries arrive at the current maximum priority and are guaranteed to be
// replayed at least once: every never-replayed slot is forced into a batch,
// in insertion order, before any proportional draw happens. Importance
// weights are min(sampled priorities) / priority, so they lie in (0, 1].
template <class T>
class PrioritizedBuffer {
 public:
  explicit PrioritizedBuffer(int capacity) : cap_(capacity), slots_(static_cast<size_t>(capacity)) {
    if (capacity < 1) throw std::invalid_argument("buffer capacity must be positive");
  }

  int capacity() const { return cap_; }
  int size() const { return size_; }
  bool full() const { return size_ == cap_; }

  // diagnostics
  uint64_t stale_updates() const { return stale_updates_; }
  uint64_t unreplayed_evictions() const { return unreplayed_evictions_; }

  double priority(int slot) const { return slots_[static_cast<size_t>(slot)].priority; }
  bool replayed_once(int slot) const { return slots_[static_cast<size_t>(slot)].replayed; }
  const T& item(int slot) const { return slots_[static_cast<size_t>(slot)].item; }

  int push(T item) {
    const int slot = next_;
    Slot& s = slots_[static_cast<size_t>(slot)];
    if (size_ == cap_ && !s.replayed) ++unreplayed_evictions_;

    // max over current priorities, 1.0 for an empty buffer
    double p = 1.0;
    if (size_ > 0) {
      p = slots_[0].priority;
      for (int i = 1; i < size_; ++i) p = std::max(p, slots_[static_cast<size_t>(i)].priority);
    }

    s.item = std::move(item);
    s.priority = p;
    s.replayed = false;
    s.seq = seq_counter_++;
    next_ = (next_ + 1) % cap_;
    size_ = std::min(size_ + 1, cap_);
    return slot;
  }

  struct Batch {
    std::vector<int> slots;
    std::vector<uint64_t> seqs;
    std::vector<const T*> items;
    std::vector<double> weights;
  };

  Batch sample(int batch_size, Rng& rng) {
    if (batch_size < 1) throw std::invalid_argument("sample: batch size must be positive");
    if (size_ < batch_size) throw std::logic_error("sample: buffer smaller than batch");

    Batch out;
    out.slots.reserve(static_cast<size_t>(batch_size));
    std::vector<char> chosen(static_cast<size_t>(size_), 0);

    // replay guarantee: never-replayed slots first, oldest first
    const int oldest = (size_ == cap_) ? next_ : 0;
    for (int k = 0; k < size_ && static_cast<int>(out.slots.size()) < batch_size; ++k) {
      const int slot = (oldest + k) % cap_;
      if (!slots_[static_cast<size_t>(slot)].replayed) {
        out.slots.push_back(slot);
        chosen[static_cast<size_t>(slot)] = 1;
      }
    }

    // proportional draws without replacement over the rest
    int remaining = batch_size - static_cast<int>(out.slots.size());
    if (remaining > 0) {
      std::vector<double> cum(static_cast<size_t>(size_));
      double total = 0.0;
      for (int i = 0; i < size_; ++i) {
        if (!chosen[static_cast<size_t>(i)]) total += slots_[static_cast<size_t>(i)].priority;
        cum[static_cast<size_t>(i)] = total;
      }
      while (remaining > 0) {
        const double u = rng.uniform() * total;
        int idx = static_cast<int>(std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
        idx = std::min(idx, size_ - 1);
        if (chosen[static_cast<size_t>(idx)]) continue;  // rejection keeps draws proportional
        chosen[static_cast<size_t>(idx)] = 1;
        out.slots.push_back(idx);
        --remaining;
      }
    }

    double min_p = slots_[static_cast<size_t>(out.slots[0])].priority;
    for (int slot : out.slots) min_p = std::min(min_p, slots_[static_cast<size_t>(slot)].priority);
    for (int slot : out.slots) {
      Slot& s = slots_[static_cast<size_t>(slot)];
      s.replayed = true;
      out.seqs.push_back(s.seq);
      out.items.push_back(&s.item);
      out.weights.push_back(min_p / s.priority);
    }
    return out;
  }

  // p <- |td| + floor; slots evicted since the sample are skipped
  void update_priorities(const std::vector<int>& slots, const std::vector<uint64_t>& seqs,
                         const std::vector<double>& td_errors) {
    if (slots.size() != td_errors.size() || slots.size() != seqs.size())
      throw std::invalid_argument("update_priorities: length mismatch");
    for (size_t i = 0; i < slots.size(); ++i) {
      Slot& s = slots_[static_cast<size_t>(slots[i])];
      if (s.seq != seqs[i]) {
        ++stale_updates_;
        continue;
      }
      s.priority = std::abs(td_errors[i]) + kPriorityFloor;
    }
  }

 private:
  struct Slot {
    T item{};
    double priority = 0.0;
    bool replayed = false;
    uint64_t seq = 0;
  };

  int cap_ = 0;
  int size_ = 0;
  int next_ = 0;
  uint64_t seq_counter_ = 0;
  uint64_t stale_updates_ = 0;
  uint64_t unreplayed_evictions_ = 0;
  std::vector<Slot> slots_;
};

}  // namespace fruitgrid
