#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "eqnav/bench/config.hpp"
#include "eqnav/bench/csv.hpp"
#include "eqnav/bench/metrics.hpp"

using namespace eqnav;
using namespace eqnav::bench;
using lie::MatX;
using lie::VecX;

TEST_CASE("anees hand cases") {
  SUBCASE("zero errors give zero") {
    std::vector<std::vector<VecX>> eps(3, {VecX::Zero(2)});
    std::vector<std::vector<MatX>> cov(3, {MatX::Identity(2, 2)});
    auto s = anees({0.0}, eps, cov);
    CHECK(s.value[0] == 0.0);
    CHECK(s.effective_runs[0] == 3);
  }
  SUBCASE("scalar n=1, M=2, eps={1,2}, Sigma={1,1} -> 2.5") {
    std::vector<std::vector<VecX>> eps = {{VecX::Constant(1, 1.0)},
                                          {VecX::Constant(1, 2.0)}};
    std::vector<std::vector<MatX>> cov = {{MatX::Identity(1, 1)},
                                          {MatX::Identity(1, 1)}};
    auto s = anees({0.0}, eps, cov);
    CHECK(s.value[0] == doctest::Approx(2.5));
  }
  SUBCASE("singular covariance excludes the run") {
    std::vector<std::vector<VecX>> eps = {{VecX::Constant(1, 1.0)},
                                          {VecX::Constant(1, 3.0)}};
    std::vector<std::vector<MatX>> cov = {{MatX::Identity(1, 1)},
                                          {MatX::Constant(1, 1, -1.0)}};
    auto s = anees({0.0}, eps, cov);
    CHECK(s.effective_runs[0] == 1);
    CHECK(s.excluded == 1);
    CHECK(s.value[0] == doctest::Approx(1.0));
  }
  SUBCASE("chi-square sampling converges to 1") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> d(0.0, 1.0);
    const int M = 4000, n = 4;
    std::vector<std::vector<VecX>> eps;
    std::vector<std::vector<MatX>> cov;
    for (int r = 0; r < M; ++r) {
      VecX e(n);
      for (int i = 0; i < n; ++i) e(i) = d(rng);
      eps.push_back({e});
      cov.push_back({MatX::Identity(n, n)});
    }
    auto s = anees({0.0}, eps, cov);
    CHECK(std::abs(s.value[0] - 1.0) < 3.0 / std::sqrt(double(n * M)));
  }
}

TEST_CASE("rmse and transient/asymptotic split") {
  std::vector<std::vector<double>> runs = {{0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}};
  auto r = rmse_series(runs);
  CHECK(r[0] == 0.0);
  CHECK(r[1] == doctest::Approx(1.0));
  CHECK(r[2] == doctest::Approx(2.0));
  // constant 1 m error gives RMSE 1
  auto c = rmse_series({{1.0, 1.0}, {1.0, 1.0}});
  CHECK(c[0] == doctest::Approx(1.0));
  // hand-checkable 3-sample series
  auto ta = split_mean({2.0, 4.0, 6.0});
  CHECK(ta.transient == doctest::Approx(2.0));
  CHECK(ta.asymptotic == doctest::Approx(5.0));
}

TEST_CASE("config parser") {
  SUBCASE("values, sections, comments") {
    auto cfg = Config::parse_string(
        "[run]\nschema_version = 1\nruns = 5 # inline comment\n"
        "[trajectory]\nduration = 12.5\nkind = lissajous\n",
        "test");
    CHECK(cfg.integer("run", "runs") == 5);
    CHECK(cfg.number("trajectory", "duration") == doctest::Approx(12.5));
    CHECK(cfg.text("trajectory", "kind") == "lissajous");
    cfg.ensure_all_consumed();
  }
  SUBCASE("unknown keys are errors") {
    auto cfg = Config::parse_string("[run]\ntypo_key = 3\n", "test");
    CHECK_THROWS_WITH_AS(cfg.ensure_all_consumed(),
                         doctest::Contains("unknown key run.typo_key"),
                         std::runtime_error);
  }
  SUBCASE("diagnostics carry line numbers") {
    CHECK_THROWS_WITH_AS(Config::parse_string("[run]\nbroken line\n", "f"),
                         doctest::Contains("f:2"), std::runtime_error);
    CHECK_THROWS_AS(Config::parse_string("key_outside = 1\n", "f"),
                    std::runtime_error);
    auto cfg = Config::parse_string("[a]\nx = 1.5zz\n", "f");
    CHECK_THROWS_AS(cfg.number("a", "x"), std::runtime_error);
  }
  SUBCASE("duplicate keys rejected") {
    CHECK_THROWS_AS(Config::parse_string("[a]\nx = 1\nx = 2\n", "f"),
                    std::runtime_error);
  }
}

TEST_CASE("csv determinism") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "eqnav_csv_test";
  fs::create_directories(dir);
  auto write_one = [&](const std::string& name) {
    CsvWriter w((dir / name).string(), {"a", "b"});
    w.row({1.0 / 3.0, 2.0e-17});
    w.row({-4.5, 6.0});
  };
  write_one("x1.csv");
  write_one("x2.csv");
  std::ifstream f1(dir / "x1.csv"), f2(dir / "x2.csv");
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK(s1.str().substr(0, 4) == "a,b\n");
}
