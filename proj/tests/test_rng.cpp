#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "aegis/rng.hpp"

using aegis::Rng;

TEST_CASE("same seed and stream reproduce the same sequence") {
    Rng a(1337, "unit/stream");
    Rng b(1337, "unit/stream");
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different stream labels give different sequences") {
    Rng a(1337, "unit/stream-a");
    Rng b(1337, "unit/stream-b");
    int equal = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() == b.next_u64()) ++equal;
    CHECK(equal == 0);
}

TEST_CASE("different seeds give different sequences") {
    Rng a(1, "unit/stream");
    Rng b(2, "unit/stream");
    int equal = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() == b.next_u64()) ++equal;
    CHECK(equal == 0);
}

TEST_CASE("uniform_int stays inside the inclusive range and covers it") {
    Rng rng(7, "unit/int");
    std::set<std::int64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const auto v = rng.uniform_int(-3, 4);
        CHECK(v >= -3);
        CHECK(v <= 4);
        seen.insert(v);
    }
    CHECK(seen.size() == 8);  // all 8 values hit over 2000 draws
}

TEST_CASE("uniform_int on a single-point range is constant") {
    Rng rng(7, "unit/point");
    for (int i = 0; i < 10; ++i) CHECK(rng.uniform_int(42, 42) == 42);
}

TEST_CASE("uniform_int rejects an empty range") {
    Rng rng(7, "unit/bad");
    CHECK_THROWS_AS(rng.uniform_int(2, 1), std::invalid_argument);
}

TEST_CASE("uniform_real lies in [0, 1)") {
    Rng rng(7, "unit/real");
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 5000; ++i) {
        const double u = rng.uniform_real();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo < 0.05);  // draws actually spread over the interval
    CHECK(hi > 0.95);
}

TEST_CASE("bernoulli honors the degenerate probabilities") {
    Rng rng(7, "unit/bern");
    for (int i = 0; i < 100; ++i) {
        CHECK_FALSE(rng.bernoulli(0.0));
        CHECK(rng.bernoulli(1.0));
    }
}

TEST_CASE("weighted_index never picks a zero-weight entry") {
    Rng rng(7, "unit/weights");
    const std::vector<double> w = {0.0, 2.0, 0.0, 1.0};
    int picked1 = 0;
    for (int i = 0; i < 3000; ++i) {
        const auto k = rng.weighted_index(w);
        CHECK((k == 1 || k == 3));
        if (k == 1) ++picked1;
    }
    // 2:1 odds; allow a wide band
    CHECK(picked1 > 1700);
    CHECK(picked1 < 2300);
}

TEST_CASE("weighted_index rejects zero total mass") {
    Rng rng(7, "unit/nomass");
    CHECK_THROWS_AS(rng.weighted_index({0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("shuffle is a deterministic permutation") {
    std::vector<int> v(50);
    for (int i = 0; i < 50; ++i) v[static_cast<std::size_t>(i)] = i;
    auto a = v, b = v;
    Rng r1(99, "unit/shuffle");
    Rng r2(99, "unit/shuffle");
    r1.shuffle(a);
    r2.shuffle(b);
    CHECK(a == b);
    CHECK(a != v);  // 50 elements: identity permutation is effectively impossible
    auto sorted = a;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == v);
}

TEST_CASE("choice rejects an empty vector") {
    Rng rng(7, "unit/choice");
    std::vector<int> empty;
    CHECK_THROWS_AS(rng.choice(empty), std::invalid_argument);
}
