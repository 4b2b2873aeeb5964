#include <doctest.h>

#include <algorithm>
#include <vector>

#include "nnsort/polish.hpp"
#include "nnsort/rng.hpp"

using namespace nnsort;

namespace {

std::vector<Key> sorted_copy(std::vector<Key> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Keys strictly below the largest key before them.
std::size_t below_prefix_max(const std::vector<Key>& keys) {
  std::size_t count = 0;
  for (std::size_t i = 1; i < keys.size(); ++i) {
    if (keys[i] < *std::max_element(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(i))) ++count;
  }
  return count;
}

std::vector<Key> random_keys(SplitMix64& rng, std::size_t n, std::uint64_t range) {
  std::vector<Key> v(n);
  for (auto& k : v) k = static_cast<Key>(rng.next_below(range));
  return v;
}

}  // namespace

TEST_CASE("compact examples") {
  const auto r = compact(SparseRun{std::nullopt, 5.0, std::nullopt, 3.0, 9.0});
  CHECK(r.keys == std::vector<Key>{5, 3, 9});
  CHECK(r.out_of_order_count == 1);

  const auto empty = compact(SparseRun(7));
  CHECK(empty.keys.empty());
  CHECK(empty.out_of_order_count == 0);

  CHECK(compact(SparseRun{1.0, std::nullopt, 2.0, 3.0}).out_of_order_count == 0);

  OpCounters c;
  compact(SparseRun{std::nullopt, 1.0, 2.0}, c);
  CHECK(c.moves == 2);
}

TEST_CASE("merge_one examples") {
  CHECK(merge_one(compact(SparseRun{5.0, 3.0, 9.0}), std::vector<Key>{1, 8}) == std::vector<Key>{1, 3, 5, 8, 9});
  CHECK(merge_one(CompactedRun{}, std::vector<Key>{1, 2}) == std::vector<Key>{1, 2});
  CHECK(merge_one(compact(SparseRun{2.0, 1.0}), std::vector<Key>{}) == std::vector<Key>{1, 2});
}

TEST_CASE("merge examples") {
  CHECK(merge({}, std::vector<Key>{1, 2, 3}) == std::vector<Key>{1, 2, 3});

  // Two passes and a leftover conflict array over the 13-key example.
  const std::vector<SparseRun> runs{
      SparseRun{1.0, std::nullopt, 6.0, 31.0, std::nullopt, 38.0, 60.0, 81.0, std::nullopt, 92.0},
      SparseRun{3.0, std::nullopt, 32.0, 59.0, std::nullopt, 91.0},
  };
  CHECK(merge(runs, std::vector<Key>{37, 88}) ==
        std::vector<Key>{1, 3, 6, 31, 32, 37, 38, 59, 60, 81, 88, 91, 92});
}

TEST_CASE("merge_one matches an oracle sort on random runs") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto run = random_keys(rng, 1000, trial % 2 ? 50 : 1u << 30);
    const auto w = sorted_copy(random_keys(rng, rng.next_below(300), 1u << 30));
    std::vector<Key> all(run);
    all.insert(all.end(), w.begin(), w.end());
    SparseRun sparse(run.begin(), run.end());
    OpCounters c;
    CHECK(merge_one(compact(sparse), w, c) == sorted_copy(all));
  }
}

TEST_CASE("merge of three runs matches the oracle") {
  SplitMix64 rng(77);
  std::vector<SparseRun> runs;
  std::vector<Key> all;
  for (std::size_t len : {5000u, 3000u, 1500u}) {
    SparseRun r;
    for (std::size_t i = 0; i < len; ++i) {
      if (rng.next_below(4) == 0) r.push_back(std::nullopt);
      const Key k = static_cast<Key>(i) + static_cast<Key>(rng.next_below(40));
      r.push_back(k);
      all.push_back(k);
    }
    runs.push_back(std::move(r));
  }
  const auto w = sorted_copy(random_keys(rng, 500, 10000));
  all.insert(all.end(), w.begin(), w.end());
  CHECK(merge(runs, w) == sorted_copy(all));
}

TEST_CASE("descending runs are still merged correctly") {
  std::vector<Key> desc(500);
  for (std::size_t i = 0; i < desc.size(); ++i) desc[i] = static_cast<Key>(500 - i);
  const std::vector<SparseRun> runs{SparseRun(desc.begin(), desc.end()), SparseRun(desc.begin(), desc.end())};
  std::vector<Key> all(desc);
  all.insert(all.end(), desc.begin(), desc.end());
  all.push_back(250.5);
  CHECK(merge(runs, std::vector<Key>{250.5}) == sorted_copy(all));
}

TEST_CASE("insertions are exactly the keys below the running maximum") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto keys = random_keys(rng, 1 + rng.next_below(200), 1000);
    if (trial % 3 == 0) std::sort(keys.begin(), keys.end());
    const auto run = compact(SparseRun(keys.begin(), keys.end()));
    OpCounters c;
    merge_one(run, sorted_copy(random_keys(rng, 50, 1000)), c);
    CHECK(c.insertions == below_prefix_max(keys));
    CHECK(c.insertions >= run.out_of_order_count);
    if (run.out_of_order_count == 0) CHECK(c.insertions == 0);
  }
}

TEST_CASE("isolated descents trigger one insertion each") {
  // One dip per descent: the running maximum is restored right away.
  const std::vector<Key> keys{1, 5, 2, 6, 7, 3, 8, 9, 4, 10};
  const auto run = compact(SparseRun(keys.begin(), keys.end()));
  OpCounters c;
  merge_one(run, std::vector<Key>{}, c);
  CHECK(run.out_of_order_count == 3);
  CHECK(c.insertions == 3);
}
