#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rmskit/arms2d.hpp"
#include "rmskit/datagen.hpp"
#include "rmskit/io.hpp"

#include "fixtures.hpp"

using namespace rmskit;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "rmskit_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

}  // namespace

TEST_CASE("generate") {
  SECTION("circle2d points sit on the unit circle") {
    Dataset ds = generate(GenSpec{GenKind::Circle2d, 3, 2, 5});
    for (const Point& p : ds.points)
      CHECK(p[0] * p[0] + p[1] * p[1] == Catch::Approx(1.0).margin(1e-12));
  }
  SECTION("independent coordinates look uniform") {
    Dataset ds = generate(GenSpec{GenKind::Independent, 10000, 5, 9});
    for (int j = 0; j < 5; ++j) {
      double mean = 0.0;
      for (const Point& p : ds.points) mean += p[j];
      mean /= ds.size();
      CHECK(std::abs(mean - 0.5) < 0.02);
    }
  }
  SECTION("anticorrelated dimensions anticorrelate") {
    Dataset ds = generate(GenSpec{GenKind::Anticorrelated, 10000, 2, 11});
    double mx = 0, my = 0;
    for (const Point& p : ds.points) { mx += p[0]; my += p[1]; }
    mx /= ds.size();
    my /= ds.size();
    double sxy = 0, sxx = 0, syy = 0;
    for (const Point& p : ds.points) {
      sxy += (p[0] - mx) * (p[1] - my);
      sxx += (p[0] - mx) * (p[0] - mx);
      syy += (p[1] - my) * (p[1] - my);
    }
    CHECK(sxy / std::sqrt(sxx * syy) < -0.5);
  }
  SECTION("correlated dimensions correlate") {
    Dataset ds = generate(GenSpec{GenKind::Correlated, 10000, 2, 13});
    double mx = 0, my = 0;
    for (const Point& p : ds.points) { mx += p[0]; my += p[1]; }
    mx /= ds.size();
    my /= ds.size();
    double sxy = 0, sxx = 0, syy = 0;
    for (const Point& p : ds.points) {
      sxy += (p[0] - mx) * (p[1] - my);
      sxx += (p[0] - mx) * (p[0] - mx);
      syy += (p[1] - my) * (p[1] - my);
    }
    CHECK(sxy / std::sqrt(sxx * syy) > 0.5);
  }
  SECTION("same seed reproduces the dataset bit for bit") {
    GenSpec spec{GenKind::Independent, 500, 4, 31337};
    Dataset a = generate(spec), b = generate(spec);
    for (int i = 0; i < a.size(); ++i) CHECK(a[i].coords == b[i].coords);
    spec.seed = 31338;
    Dataset c = generate(spec);
    CHECK(a[0].coords != c[0].coords);
  }
  SECTION("unit-circle datasets put every point on the hull") {
    Dataset ds = generate(GenSpec{GenKind::Circle2d, 200, 2, 17});
    CHECK(convex_hull_2d(ds).size() == 200);
  }
  SECTION("invalid spec") {
    CHECK_THROWS_AS(generate(GenSpec{GenKind::Circle2d, 10, 3, 0}), std::invalid_argument);
    CHECK_THROWS_AS(generate(GenSpec{GenKind::Independent, 0, 2, 0}), std::invalid_argument);
  }
}

TEST_CASE("dataset csv round trip") {
  Dataset ds = fixtures::hotels();
  auto path = temp_file("hotels.csv");
  save_dataset(ds, path.string());
  Dataset back = load_dataset(path.string());
  REQUIRE(back.size() == ds.size());
  for (int i = 0; i < ds.size(); ++i) CHECK(back[i].coords == ds[i].coords);

  SECTION("17-digit serialization is exact for awkward values") {
    Dataset awk = generate(GenSpec{GenKind::Independent, 200, 3, 99});
    auto p2 = temp_file("awkward.csv");
    save_dataset(awk, p2.string());
    Dataset restored = load_dataset(p2.string());
    for (int i = 0; i < awk.size(); ++i) CHECK(restored[i].coords == awk[i].coords);
  }
}

TEST_CASE("dataset csv parsing") {
  SECTION("header rows are auto-detected") {
    auto p = temp_file("header.csv");
    write_file(p, "stars,price\n0.8,0.35\n0.6,0.6\n");
    Dataset ds = load_dataset(p.string());
    REQUIRE(ds.size() == 2);
    CHECK(ds[0][0] == 0.8);
  }
  SECTION("ragged rows report the offending row") {
    auto p = temp_file("ragged.csv");
    write_file(p, "0.1,0.2\n0.3,0.4,0.5\n");
    try {
      load_dataset(p.string());
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.row == 2);
    }
  }
  SECTION("non-numeric cells fail") {
    auto p = temp_file("nonnum.csv");
    write_file(p, "0.1,0.2\n0.3,oops\n");
    CHECK_THROWS_AS(load_dataset(p.string()), ParseError);
  }
  SECTION("out-of-range coordinates fail with the row number") {
    auto p = temp_file("range.csv");
    write_file(p, "0.1,0.2\n0.3,1.4\n");
    try {
      load_dataset(p.string());
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.row == 2);
    }
  }
  SECTION("missing files fail loudly") {
    CHECK_THROWS_AS(load_dataset("/nonexistent/nowhere.csv"), std::runtime_error);
  }
}

TEST_CASE("utility sample csv") {
  SECTION("prob column via header") {
    auto p = temp_file("sample_prob.csv");
    write_file(p, "w0,w1,prob\n0,1,0.6\n1,0,0.2\n0.5,0.5,0.2\n");
    FunctionSample fs = load_utility_sample(p.string(), 2);
    REQUIRE(fs.size() == 3);
    CHECK(fs.entries[0].prob == 0.6);
    CHECK(fs.entries[2].weights == std::vector<double>{0.5, 0.5});
  }
  SECTION("prob column inferred from the expected dimension") {
    auto p = temp_file("sample_prob2.csv");
    write_file(p, "0,1,0.6\n1,0,0.2\n0.5,0.5,0.2\n");
    FunctionSample fs = load_utility_sample(p.string(), 2);
    REQUIRE(fs.size() == 3);
    CHECK(fs.entries[1].prob == 0.2);
  }
  SECTION("absent prob column implies uniform weights") {
    auto p = temp_file("sample_uniform.csv");
    write_file(p, "0,1\n1,0\n0.5,0.5\n0.2,0.8\n");
    FunctionSample fs = load_utility_sample(p.string(), 2);
    REQUIRE(fs.size() == 4);
    for (const auto& e : fs.entries) CHECK(e.prob == 0.25);
  }
  SECTION("round trip") {
    auto p = temp_file("sample_rt.csv");
    save_utility_sample(fixtures::weighted_utilities(), p.string());
    FunctionSample fs = load_utility_sample(p.string(), 2);
    REQUIRE(fs.size() == 3);
    CHECK(fs.entries[0].weights == std::vector<double>{0.0, 1.0});
    CHECK(fs.entries[0].prob == 0.6);
  }
}

TEST_CASE("backmap json") {
  Dataset ds = Dataset::from_rows({{0.73, 0.41}, {0.79, 0.40}, {0.2, 0.9}});
  ReducedDataset rd = reduce_additive(ds, 0.2);
  auto p = temp_file("backmap.json");
  save_backmap_json(rd, p.string());
  std::ifstream in(p);
  nlohmann::json j;
  in >> j;
  REQUIRE(j.size() == rd.back_map.size());
  CHECK(j["0"].get<std::vector<int>>() == rd.back_map[0]);
}
