#include "nnsort/polish.hpp"

namespace nnsort {

CompactedRun compact(const SparseRun& run, OpCounters& counters) {
  CompactedRun out;
  for (const Slot& slot : run) {
    if (!slot) continue;
    out.keys.push_back(*slot);
    ++counters.moves;
  }
  out.out_of_order_count = count_descents(out.keys);
  return out;
}

CompactedRun compact(const SparseRun& run) {
  OpCounters scratch;
  return compact(run, scratch);
}

std::vector<Key> merge_one(const CompactedRun& run, std::span<const Key> w, OpCounters& counters) {
  std::vector<Key> result;
  result.reserve(run.keys.size() + w.size());

  std::size_t wi = 0;
  bool have_max = false;
  Key run_max = 0.0;
  for (const Key a : run.keys) {
    if (have_max) {
      ++counters.comparisons;
      if (a < run_max) {
        // upper_bound over the emitted prefix
        std::size_t lo = 0;
        std::size_t hi = result.size();
        while (lo < hi) {
          const std::size_t mid = lo + (hi - lo) / 2;
          ++counters.comparisons;
          if (a < result[mid]) {
            hi = mid;
          } else {
            lo = mid + 1;
          }
        }
        counters.insert_shifts += result.size() - lo;
        ++counters.moves;
        ++counters.insertions;
        result.insert(result.begin() + static_cast<std::ptrdiff_t>(lo), a);
        continue;
      }
    }
    while (wi < w.size()) {
      ++counters.comparisons;
      if (!(w[wi] <= a)) break;
      result.push_back(w[wi++]);
      ++counters.moves;
    }
    result.push_back(a);
    ++counters.moves;
    run_max = a;
    have_max = true;
  }
  for (; wi < w.size(); ++wi) {
    result.push_back(w[wi]);
    ++counters.moves;
  }
  return result;
}

std::vector<Key> merge_one(const CompactedRun& run, std::span<const Key> w) {
  OpCounters scratch;
  return merge_one(run, w, scratch);
}

std::vector<Key> merge(std::span<const SparseRun> runs, std::vector<Key> w, OpCounters& counters) {
  for (const SparseRun& run : runs) {
    const CompactedRun compacted = compact(run, counters);
    w = merge_one(compacted, w, counters);
  }
  return w;
}

std::vector<Key> merge(std::span<const SparseRun> runs, std::vector<Key> w) {
  OpCounters scratch;
  return merge(runs, std::move(w), scratch);
}

}  // namespace nnsort
