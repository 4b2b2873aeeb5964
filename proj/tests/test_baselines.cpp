#include <doctest.h>

#include <algorithm>
#include <vector>

#include "nnsort/baselines.hpp"
#include "nnsort/datagen.hpp"
#include "nnsort/nn_sort.hpp"

using namespace nnsort;

TEST_CASE("baseline examples") {
  const std::vector<Key> in{3, 1, 2};
  const std::vector<Key> out{1, 2, 3};
  CHECK(quicksort(in) == out);
  CHECK(heapsort(in) == out);
  CHECK(mergesort(in) == out);
  CHECK(quicksort({}).empty());
  CHECK(heapsort({}).empty());
  CHECK(mergesort({}).empty());
}

TEST_CASE("baselines agree on 1e5 random keys") {
  const auto keys = datagen::generate(datagen::Distribution::normal, 100000, 21);
  auto expected = keys;
  std::sort(expected.begin(), expected.end());
  OpCounters cq, ch, cm;
  CHECK(quicksort(keys, cq) == expected);
  CHECK(heapsort(keys, ch) == expected);
  CHECK(mergesort(keys, cm) == expected);
  CHECK(cq.comparisons > 0);
  CHECK(ch.comparisons > 0);
  CHECK(cm.moves > 0);
}

TEST_CASE("baselines handle awkward shapes") {
  std::vector<std::vector<Key>> shapes{{1}, {2, 1}, {5, 5, 5, 5}, {}};
  std::vector<Key> saw;
  for (int i = 0; i < 1000; ++i) saw.push_back(static_cast<Key>(i % 7));
  shapes.push_back(saw);
  std::vector<Key> desc;
  for (int i = 1000; i > 0; --i) desc.push_back(i);
  shapes.push_back(desc);
  for (const auto& s : shapes) {
    auto expected = s;
    std::sort(expected.begin(), expected.end());
    CHECK(quicksort(s) == expected);
    CHECK(heapsort(s) == expected);
    CHECK(mergesort(s) == expected);
  }
}

TEST_CASE("single pass with the oracle has no conflicts") {
  const auto keys = datagen::generate(datagen::Distribution::uniform, 5000, 2);
  const auto r = single_pass_learned_sort(keys, Predictor::oracle(keys), 1.0);
  CHECK(r.conflict_rate == 0.0);
  CHECK(std::is_sorted(r.output.begin(), r.output.end()));
}

TEST_CASE("single pass with a constant predictor") {
  std::vector<Key> keys(100);
  for (std::size_t i = 0; i < keys.size(); ++i) keys[i] = static_cast<Key>(99 - i);
  const auto r = single_pass_learned_sort(keys, Predictor::constant(0.5), 2.0);
  CHECK(r.conflict_rate == doctest::Approx(0.99));
  CHECK(r.conflict_size == 99);
  CHECK(std::is_sorted(r.output.begin(), r.output.end()));
}

TEST_CASE("single pass equals nn_sort with one pass") {
  const auto keys = datagen::generate(datagen::Distribution::lognormal, 20000, 6);
  for (const auto& p : {Predictor::oracle(keys), Predictor::constant(0.2), Predictor::seeded_random(3)}) {
    const auto single = single_pass_learned_sort(keys, p, 2.0);
    const auto full = nn_sort(keys, p, SortConfig{2.0, 0, 1});
    CHECK(single.output == full.output);
    CHECK(single.counters == full.runs.counters);
    REQUIRE(full.runs.metrics.size() == 1);
    CHECK(single.conflict_rate == full.runs.metrics[0].sigma);
    CHECK(single.conflict_size == full.runs.final_conflicts.size());
  }
}
