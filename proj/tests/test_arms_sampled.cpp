#include <catch2/catch_amalgamated.hpp>

#include "rmskit/arms_sampled.hpp"
#include "rmskit/rng.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace rmskit;

TEST_CASE("sample_linear_utilities draws from the simplex reproducibly") {
  SECTION("d=1 collapses to the single weight 1") {
    FunctionSample fs = sample_linear_utilities(1, 1, 99);
    REQUIRE(fs.size() == 1);
    CHECK(fs.entries[0].weights[0] == Catch::Approx(1.0).margin(1e-12));
  }
  SECTION("membership: nonnegative weights summing to 1") {
    FunctionSample fs = sample_linear_utilities(500, 4, 123);
    for (const auto& e : fs.entries) {
      double s = 0.0;
      for (double w : e.weights) {
        CHECK(w >= 0.0);
        s += w;
      }
      CHECK(s == Catch::Approx(1.0).margin(1e-12));
    }
  }
  SECTION("coordinates are exchangeable: empirical mean near 1/d") {
    FunctionSample fs = sample_linear_utilities(10000, 3, 7);
    double mean0 = 0.0;
    for (const auto& e : fs.entries) mean0 += e.weights[0];
    mean0 /= fs.size();
    CHECK(std::abs(mean0 - 1.0 / 3.0) < 0.02);
  }
  SECTION("same seed, same sample") {
    FunctionSample a = sample_linear_utilities(50, 3, 42);
    FunctionSample b = sample_linear_utilities(50, 3, 42);
    for (int i = 0; i < 50; ++i)
      CHECK(a.entries[static_cast<std::size_t>(i)].weights ==
            b.entries[static_cast<std::size_t>(i)].weights);
  }
}

TEST_CASE("greedy_ahr walks the hotel example") {
  Dataset ds = fixtures::hotels();
  FunctionSample fs = fixtures::weighted_utilities();
  AhrGreedyResult g = greedy_ahr(ds, 2, fs);
  // initial gains: C 0.879, B 0.800, A 0.654, D 0.483 -> C first, then A
  CHECK(g.sel.indices == std::vector<int>{fixtures::kHotelC, fixtures::kHotelA});
  REQUIRE(g.delta_trace.size() == 2);
  CHECK(g.delta_trace[0] == Catch::Approx(0.879167).margin(1e-5));
  CHECK(1.0 - g.ahr == Catch::Approx(1.0 / 120.0).margin(1e-9));
  CHECK(g.ahr == Catch::Approx(ahr_sample(ds, g.sel, fs)).margin(1e-12));
}

TEST_CASE("greedy_ahr picks everything when r = n") {
  Dataset ds = fixtures::hotels();
  FunctionSample fs = sample_linear_utilities(10, 2, 1);
  AhrGreedyResult g = greedy_ahr(ds, 4, fs);
  CHECK(g.sel.size() == 4);
  CHECK(g.ahr == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("greedy_ahr meets the (1 - 1/e) bound against exhaustive search") {
  PortableRng rng(13);
  const double factor = 1.0 - std::exp(-1.0);
  for (int rep = 0; rep < 15; ++rep) {
    int n = 8 + static_cast<int>(rng.next() % 5);
    Dataset ds = fixtures::random_dataset(rng, n, 3);
    FunctionSample fs = sample_linear_utilities(20, 3, 1000 + static_cast<std::uint64_t>(rep));
    AhrGreedyResult g = greedy_ahr(ds, 3, fs);
    std::vector<int> ids;
    for (const Point& p : ds.points) ids.push_back(p.id);
    double opt = oracles::best_subset_value(ids, 3, [&](const std::vector<int>& combo) {
      return ahr_sample(ds, Selection(combo), fs);
    });
    CHECK(g.ahr >= factor * opt - 1e-12);
    CHECK(g.ahr <= opt + 1e-12);
  }
}

TEST_CASE("incremental bookkeeping matches from-scratch recomputation") {
  PortableRng rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    Dataset ds = fixtures::random_dataset(rng, 12, 3);
    FunctionSample fs = sample_linear_utilities(15, 3, 400 + static_cast<std::uint64_t>(rep));
    AhrGreedyResult g = greedy_ahr(ds, 3, fs);
    // ahr after step s equals the sum of the selected gains, and equals a
    // from-scratch evaluation of the prefix selection
    double acc = 0.0;
    for (std::size_t s = 0; s < g.delta_trace.size(); ++s) {
      acc += g.delta_trace[s];
      std::vector<int> prefix(g.sel.indices.begin(), g.sel.indices.begin() + static_cast<long>(s) + 1);
      double direct = ahr_sample(ds, Selection(prefix), fs);
      CHECK(acc == Catch::Approx(direct).margin(1e-12));
      if (s > 0) CHECK(g.delta_trace[s] <= g.delta_trace[s - 1] + 1e-12);
    }
  }
}

TEST_CASE("each pick has the maximal true marginal gain") {
  PortableRng rng(19);
  for (int rep = 0; rep < 8; ++rep) {
    Dataset ds = fixtures::random_dataset(rng, 10, 2);
    FunctionSample fs = sample_linear_utilities(12, 2, 700 + static_cast<std::uint64_t>(rep));
    AhrGreedyResult g = greedy_ahr(ds, 3, fs);
    std::vector<int> prefix;
    for (int pick : g.sel.indices) {
      double base = prefix.empty() ? 0.0 : ahr_sample(ds, Selection(prefix), fs);
      double best_gain = -1.0;
      for (const Point& p : ds.points) {
        if (std::find(prefix.begin(), prefix.end(), p.id) != prefix.end()) continue;
        std::vector<int> with = prefix;
        with.push_back(p.id);
        best_gain = std::max(best_gain, ahr_sample(ds, Selection(with), fs) - base);
      }
      std::vector<int> with = prefix;
      with.push_back(pick);
      double picked_gain = ahr_sample(ds, Selection(with), fs) - base;
      CHECK(picked_gain >= best_gain - 1e-12);
      prefix.push_back(pick);
    }
  }
}

TEST_CASE("generic callback path agrees with the linear fast path") {
  PortableRng rng(23);
  Dataset ds = fixtures::random_dataset(rng, 15, 3);
  FunctionSample linear = sample_linear_utilities(10, 3, 5);
  FunctionSample opaque;
  for (const auto& e : linear.entries) {
    std::vector<double> w = e.weights;
    opaque.entries.push_back(
        {{}, [w](const Point& p) {
           double s = 0.0;
           for (int j = 0; j < p.dim(); ++j) s += p[j] * w[static_cast<std::size_t>(j)];
           return s;
         },
         e.prob});
  }
  AhrGreedyResult a = greedy_ahr(ds, 4, linear);
  AhrGreedyResult b = greedy_ahr(ds, 4, opaque);
  CHECK(a.sel.indices == b.sel.indices);
  CHECK(a.ahr == Catch::Approx(b.ahr).margin(1e-12));
}

TEST_CASE("degenerate sampled function is an error") {
  Dataset ds = Dataset::from_rows({{0.0, 0.4}, {0.0, 0.9}});
  FunctionSample fs = FunctionSample::uniform_linear({UtilityVector::raw({1.0, 0.0})});
  CHECK_THROWS_AS(greedy_ahr(ds, 1, fs), std::invalid_argument);
}
