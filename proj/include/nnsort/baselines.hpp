#pragma once

#include <span>
#include <vector>

#include "nnsort/core.hpp"
#include "nnsort/model.hpp"

namespace nnsort {

// In-place comparison sorts, instrumented. A swap counts as two moves.

// Hoare partition around a median-of-three pivot; recurses on the smaller
// side so stack depth stays logarithmic. Partitions of three or fewer keys
// are finished by insertion.
void quicksort_in_place(std::span<Key> a, OpCounters& counters);
// Bottom-up heapsort: leaf search along the larger child, then climb.
void heapsort_in_place(std::span<Key> a, OpCounters& counters);
// Top-down mergesort through one scratch buffer.
void mergesort_in_place(std::span<Key> a, OpCounters& counters);

std::vector<Key> quicksort(std::span<const Key> a, OpCounters& counters);
std::vector<Key> heapsort(std::span<const Key> a, OpCounters& counters);
std::vector<Key> mergesort(std::span<const Key> a, OpCounters& counters);
std::vector<Key> quicksort(std::span<const Key> a);
std::vector<Key> heapsort(std::span<const Key> a);
std::vector<Key> mergesort(std::span<const Key> a);

struct SinglePassResult {
  std::vector<Key> output;
  double conflict_rate = 0.0;  // sigma of the only mapping pass
  std::size_t conflict_size = 0;
  double out_of_order_rate = 0.0;
  OpCounters counters;
};

// Learned sort that maps keys through the model exactly once, quicksorts the
// collisions and merges. Throws InvalidKeyError on non-finite input.
SinglePassResult single_pass_learned_sort(std::span<const Key> a, const Predictor& p, double m);

}  // namespace nnsort
