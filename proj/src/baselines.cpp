#include "nnsort/baselines.hpp"

#include <utility>

#include "nnsort/nn_sort.hpp"
#include "nnsort/polish.hpp"

namespace nnsort {

namespace {

struct Counted {
  OpCounters& c;

  bool less(Key a, Key b) {
    ++c.comparisons;
    return a < b;
  }
  void swap(Key& a, Key& b) {
    c.moves += 2;
    std::swap(a, b);
  }
};

void insertion_sort(Key* first, Key* last, Counted& k) {
  for (Key* i = first + 1; i < last; ++i) {
    Key tmp = *i;
    ++k.c.moves;
    Key* j = i;
    while (j > first && k.less(tmp, *(j - 1))) {
      *j = *(j - 1);
      ++k.c.moves;
      --j;
    }
    *j = tmp;
    ++k.c.moves;
  }
}

void quicksort_range(Key* lo, Key* hi, Counted& k) {
  while (hi - lo > 3) {
    Key* mid = lo + (hi - lo) / 2;
    Key* last = hi - 1;
    if (k.less(*mid, *lo)) k.swap(*mid, *lo);
    if (k.less(*last, *mid)) {
      k.swap(*last, *mid);
      if (k.less(*mid, *lo)) k.swap(*mid, *lo);
    }
    const Key pivot = *mid;

    // *lo <= pivot <= *last act as sentinels for both scans.
    Key* i = lo;
    Key* j = last;
    while (true) {
      do ++i; while (k.less(*i, pivot));
      do --j; while (k.less(pivot, *j));
      if (i >= j) break;
      k.swap(*i, *j);
    }
    // [lo, i) <= pivot <= [i, hi), both non-empty
    if (i - lo < hi - i) {
      quicksort_range(lo, i, k);
      lo = i;
    } else {
      quicksort_range(i, hi, k);
      hi = i;
    }
  }
  if (hi - lo > 1) insertion_sort(lo, hi, k);
}

std::size_t leaf_search(std::span<Key> a, std::size_t i, std::size_t end, Counted& k) {
  std::size_t j = i;
  while (2 * j + 2 < end) {
    j = k.less(a[2 * j + 1], a[2 * j + 2]) ? 2 * j + 2 : 2 * j + 1;
  }
  if (2 * j + 1 < end) j = 2 * j + 1;
  return j;
}

void sift_down(std::span<Key> a, std::size_t i, std::size_t end, Counted& k) {
  std::size_t j = leaf_search(a, i, end, k);
  // climb back to the first slot holding a key >= the sifted one
  while (k.less(a[j], a[i])) j = (j - 1) / 2;
  Key carry = a[j];
  a[j] = a[i];
  ++k.c.moves;
  while (j > i) {
    j = (j - 1) / 2;
    std::swap(carry, a[j]);
    ++k.c.moves;
  }
}

void merge_sort_range(Key* a, Key* scratch, std::size_t n, Counted& k) {
  if (n < 2) return;
  const std::size_t half = n / 2;
  merge_sort_range(a, scratch, half, k);
  merge_sort_range(a + half, scratch, n - half, k);
  std::size_t i = 0, j = half, out = 0;
  while (i < half && j < n) {
    scratch[out++] = k.less(a[j], a[i]) ? a[j++] : a[i++];
  }
  while (i < half) scratch[out++] = a[i++];
  while (j < n) scratch[out++] = a[j++];
  for (std::size_t t = 0; t < n; ++t) a[t] = scratch[t];
  k.c.moves += 2 * n;
}

}  // namespace

void quicksort_in_place(std::span<Key> a, OpCounters& counters) {
  Counted k{counters};
  if (a.size() > 1) quicksort_range(a.data(), a.data() + a.size(), k);
}

void heapsort_in_place(std::span<Key> a, OpCounters& counters) {
  Counted k{counters};
  const std::size_t n = a.size();
  if (n < 2) return;
  for (std::size_t i = n / 2; i-- > 0;) sift_down(a, i, n, k);
  for (std::size_t end = n - 1; end > 0; --end) {
    k.swap(a[0], a[end]);
    sift_down(a, 0, end, k);
  }
}

void mergesort_in_place(std::span<Key> a, OpCounters& counters) {
  Counted k{counters};
  std::vector<Key> scratch(a.size());
  merge_sort_range(a.data(), scratch.data(), a.size(), k);
}

std::vector<Key> quicksort(std::span<const Key> a, OpCounters& counters) {
  std::vector<Key> v(a.begin(), a.end());
  quicksort_in_place(v, counters);
  return v;
}

std::vector<Key> heapsort(std::span<const Key> a, OpCounters& counters) {
  std::vector<Key> v(a.begin(), a.end());
  heapsort_in_place(v, counters);
  return v;
}

std::vector<Key> mergesort(std::span<const Key> a, OpCounters& counters) {
  std::vector<Key> v(a.begin(), a.end());
  mergesort_in_place(v, counters);
  return v;
}

std::vector<Key> quicksort(std::span<const Key> a) {
  OpCounters c;
  return quicksort(a, c);
}

std::vector<Key> heapsort(std::span<const Key> a) {
  OpCounters c;
  return heapsort(a, c);
}

std::vector<Key> mergesort(std::span<const Key> a) {
  OpCounters c;
  return mergesort(a, c);
}

SinglePassResult single_pass_learned_sort(std::span<const Key> a, const Predictor& p, double m) {
  check_keys(a);
  SortConfig{m, 0, 1}.validate();
  SinglePassResult out;
  if (a.empty()) return out;

  IterationResult it = map_iteration(a, p, m, out.counters);
  out.conflict_rate = it.metrics.sigma;
  out.conflict_size = it.metrics.conflict_size;
  out.out_of_order_rate = it.metrics.out_of_order_rate;
  quicksort_in_place(it.conflicts, out.counters);
  const SparseRun* run = &it.run;
  out.output = merge(std::span(run, 1), std::move(it.conflicts), out.counters);
  return out;
}

}  // namespace nnsort
