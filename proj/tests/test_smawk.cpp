#include <catch2/catch_amalgamated.hpp>

#include "rmskit/rng.hpp"
#include "rmskit/smawk.hpp"

#include "oracles.hpp"

using namespace rmskit;

namespace {

MatrixOracle counting_oracle(const std::vector<std::vector<double>>& m, std::size_t* calls) {
  return MatrixOracle{m.size(), m[0].size(), [&m, calls](std::size_t r, std::size_t c) {
                        if (calls) ++*calls;
                        return m[r][c];
                      }};
}

}  // namespace

TEST_CASE("smawk trivial shapes") {
  SECTION("1x1") {
    std::vector<std::vector<double>> m{{4.0}};
    CHECK(smawk_column_maxima(counting_oracle(m, nullptr)) == std::vector<std::size_t>{0});
  }
  SECTION("constant 3x3 resolves ties to the last row") {
    std::vector<std::vector<double>> m(3, std::vector<double>(3, 1.0));
    CHECK(smawk_column_maxima(counting_oracle(m, nullptr)) ==
          std::vector<std::size_t>{2, 2, 2});
  }
  SECTION("empty matrices are rejected") {
    MatrixOracle m{0, 3, [](std::size_t, std::size_t) { return 0.0; }};
    CHECK_THROWS_AS(smawk_column_maxima(m), std::invalid_argument);
  }
}

TEST_CASE("smawk equals the naive scan on random inverse-Monge matrices") {
  PortableRng rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t rows = 1 + rng.next() % 40;
    std::size_t cols = 1 + rng.next() % 40;
    auto m = oracles::random_inverse_monge(rng, rows, cols);
    REQUIRE(check_inverse_monge(counting_oracle(m, nullptr)));
    auto fast = smawk_column_maxima(counting_oracle(m, nullptr));
    auto slow = oracles::column_maxima_naive(counting_oracle(m, nullptr));
    CHECK(fast == slow);
    for (std::size_t c = 1; c < cols; ++c) CHECK(fast[c] >= fast[c - 1]);
  }
}

TEST_CASE("smawk stays within the linear call budget on square inputs") {
  PortableRng rng(5);
  for (std::size_t n : {16u, 64u, 200u, 500u}) {
    auto m = oracles::random_inverse_monge(rng, n, n);
    std::size_t calls = 0;
    auto res = smawk_column_maxima(counting_oracle(m, &calls));
    CHECK(res == oracles::column_maxima_naive(counting_oracle(m, nullptr)));
    CHECK(calls <= 8 * (n + n));
  }
}

TEST_CASE("check_inverse_monge") {
  SECTION("degenerate shapes are vacuously true") {
    std::vector<std::vector<double>> row{{3.0, 1.0, 2.0}};
    CHECK(check_inverse_monge(counting_oracle(row, nullptr)));
    std::vector<std::vector<double>> col{{3.0}, {1.0}};
    CHECK(check_inverse_monge(counting_oracle(col, nullptr)));
  }
  SECTION("direct substitution on a 2x2") {
    std::vector<std::vector<double>> m{{0.0, 0.0}, {0.0, 1.0}};
    CHECK(check_inverse_monge(counting_oracle(m, nullptr)));
  }
  SECTION("a violating matrix is caught") {
    std::vector<std::vector<double>> m{{0.0, 1.0}, {0.0, 0.0}};
    CHECK_FALSE(check_inverse_monge(counting_oracle(m, nullptr)));
  }
}
