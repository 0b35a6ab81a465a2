#include <algorithm>
#include <set>

#include "doctest.h"
#include "spanorm/rng.hpp"

using namespace spanorm;

TEST_CASE("keyed streams are reproducible and distinct") {
  KeyedRng a({7, 1, 2}), b({7, 1, 2}), c({7, 2, 1});
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
    seen.insert(x);
  }
  CHECK(seen.size() == 100);
  CHECK(KeyedRng(5).next() == KeyedRng({5}).next());
}

TEST_CASE("bounded draws") {
  KeyedRng r(11);
  std::vector<int> hist(6, 0);
  for (int i = 0; i < 6000; ++i) ++hist[r.below(6)];
  for (int h : hist) CHECK(h > 800);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("sampling without replacement") {
  KeyedRng r({3, 4});
  for (std::uint64_t n : {1u, 5u, 100u}) {
    for (std::uint64_t k = 0; k <= n; k += (n > 10 ? 17 : 1)) {
      const auto s = r.sample(n, k);
      CHECK(s.size() == k);
      CHECK(std::is_sorted(s.begin(), s.end()));
      CHECK(std::set<std::uint64_t>(s.begin(), s.end()).size() == k);
      for (auto x : s) CHECK(x < n);
    }
  }
  CHECK(KeyedRng(1).sample(50, 10) == KeyedRng(1).sample(50, 10));
}
