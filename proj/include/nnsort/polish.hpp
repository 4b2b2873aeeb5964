#pragma once

#include <span>
#include <vector>

#include "nnsort/core.hpp"

namespace nnsort {

struct CompactedRun {
  std::vector<Key> keys;               // occupied slots in slot order
  std::size_t out_of_order_count = 0;  // positions j > 0 with keys[j] < keys[j-1]
};

// Drops empty slots, one move per kept key.
CompactedRun compact(const SparseRun& run, OpCounters& counters);
CompactedRun compact(const SparseRun& run);

// Merges a roughly ordered run into the sorted sequence w.
//
// Walks the run once. A run key at least as large as the largest in-order
// key seen so far from this run is "in order" and competes with the head of
// w in an ordinary two-finger merge (w wins ties). Any other run key is
// placed into the partially built result by binary search and a block move;
// every key already emitted is <= that largest key, so the result stays
// sorted. Correct for any run, ordered or not.
std::vector<Key> merge_one(const CompactedRun& run, std::span<const Key> w, OpCounters& counters);
std::vector<Key> merge_one(const CompactedRun& run, std::span<const Key> w);

// Compacts each run in order and folds merge_one over them, the result of
// one step becoming w for the next. Requires w sorted.
std::vector<Key> merge(std::span<const SparseRun> runs, std::vector<Key> w, OpCounters& counters);
std::vector<Key> merge(std::span<const SparseRun> runs, std::vector<Key> w);

}  // namespace nnsort
