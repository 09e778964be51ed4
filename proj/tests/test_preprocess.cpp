#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "market_rewire/preprocess.hpp"

using namespace market_rewire;
using Catch::Approx;

namespace {

PricePanel make_panel(std::size_t n_dates, std::vector<AssetMeta> assets,
                      const std::function<double(std::size_t, std::size_t)>& value) {
  std::vector<Date> dates;
  std::chrono::sys_days day{Date{std::chrono::year{2007}, std::chrono::January, std::chrono::day{1}}};
  std::vector<double> values;
  for (std::size_t t = 0; t < n_dates; ++t) {
    dates.emplace_back(day + std::chrono::days{t});
    for (std::size_t a = 0; a < assets.size(); ++a) values.push_back(value(t, a));
  }
  return PricePanel(std::move(dates), std::move(assets), std::move(values));
}

std::vector<AssetMeta> stock_and_bond() {
  return {{"spx", "S&P 500", AssetClass::stock, 1}, {"ust", "US Treasury", AssetClass::bond, -1}};
}

}  // namespace

TEST_CASE("z-score of a two-point window", "[preprocess]") {
  // mean 2, sample SD sqrt(2) -> -1/sqrt(2), +1/sqrt(2)
  auto z = window_zscore(std::vector<double>{1, 3});
  REQUIRE(z[0] == Approx(-0.7071067811865475).margin(1e-15));
  REQUIRE(z[1] == Approx(0.7071067811865475).margin(1e-15));
}

TEST_CASE("constant window standardizes to zeros", "[preprocess]") {
  auto z = window_zscore(std::vector<double>{5, 5, 5, 5});
  REQUIRE(z == std::vector<double>{0, 0, 0, 0});
}

TEST_CASE("z-score rejects short windows", "[preprocess]") {
  REQUIRE_THROWS_AS(window_zscore(std::vector<double>{1.0}), PreprocessError);
  REQUIRE_THROWS_AS(window_zscore(std::vector<double>{}), PreprocessError);
}

TEST_CASE("z-scored windows have zero mean and unit sample SD", "[preprocess][property]") {
  std::mt19937_64 rng(11);
  std::lognormal_distribution<double> price(4.0, 0.5);
  std::uniform_int_distribution<std::size_t> len(2, 60);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> raw(len(rng));
    for (auto& v : raw) v = price(rng);
    auto z = window_zscore(raw);
    double mean = 0, ss = 0;
    for (double v : z) mean += v;
    mean /= static_cast<double>(z.size());
    for (double v : z) ss += (v - mean) * (v - mean);
    REQUIRE(std::abs(mean) < 1e-9);
    REQUIRE(std::abs(std::sqrt(ss / static_cast<double>(z.size() - 1)) - 1.0) < 1e-9);
  }
}

TEST_CASE("direction sign", "[preprocess]") {
  std::vector<double> w{1, -2, 3};
  REQUIRE(apply_direction(w, 1) == w);
  REQUIRE(apply_direction(w, -1) == std::vector<double>{-1, 2, -3});
  REQUIRE(apply_direction(apply_direction(w, -1), -1) == w);
  REQUIRE_THROWS_AS(apply_direction(w, 0), PreprocessError);
}

TEST_CASE("windows_at covers the trailing w observations", "[preprocess]") {
  auto panel = make_panel(25, stock_and_bond(), [](std::size_t t, std::size_t) { return 100.0 + t; });
  auto ws = windows_at(panel, 19, 20);
  REQUIRE(ws.size() == 2);
  REQUIRE(ws[0].end_date == panel.dates()[19]);
  REQUIRE(ws[0].values.size() == 20);
  // Prices 100..119: a window starting at index 0 z-scores the same as 0..19.
  auto expected = window_zscore(panel.column(0, 0, 20));
  REQUIRE(ws[0].values == expected);

  REQUIRE_THROWS_WITH(windows_at(panel, 18, 20), Catch::Matchers::ContainsSubstring("insufficient history"));
}

TEST_CASE("bond direction flips a rising window", "[preprocess]") {
  auto panel = make_panel(20, stock_and_bond(), [](std::size_t t, std::size_t) { return 1.0 + 0.1 * t; });
  auto ws = windows_at(panel, 19, 20);
  for (std::size_t k = 1; k < 20; ++k) {
    REQUIRE(ws[0].values[k] > ws[0].values[k - 1]);
    REQUIRE(ws[1].values[k] < ws[1].values[k - 1]);
    REQUIRE(ws[1].values[k] == -ws[0].values[k]);
  }
}

TEST_CASE("windows are invariant to positive scale and shift", "[preprocess][property]") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n01;
  std::vector<double> walk(40);
  double x = 50;
  for (auto& v : walk) v = (x += n01(rng));
  auto base = make_panel(40, stock_and_bond(), [&](std::size_t t, std::size_t a) { return walk[t] + a; });
  auto scaled = make_panel(40, stock_and_bond(), [&](std::size_t t, std::size_t a) { return 4.0 * (walk[t] + a); });
  auto shifted = make_panel(40, stock_and_bond(), [&](std::size_t t, std::size_t a) { return walk[t] + a + 17.5; });
  for (std::size_t t = 19; t < 40; ++t) {
    auto b = windows_at(base, t, 20);
    auto s = windows_at(scaled, t, 20);
    auto h = windows_at(shifted, t, 20);
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t k = 0; k < 20; ++k) {
        REQUIRE(s[a].values[k] == Approx(b[a].values[k]).margin(1e-12));
        REQUIRE(h[a].values[k] == Approx(b[a].values[k]).margin(1e-12));
      }
    }
  }
}

TEST_CASE("flat windows warn and give zeros", "[preprocess]") {
  auto panel = make_panel(20, stock_and_bond(),
                          [](std::size_t t, std::size_t a) { return a == 0 ? 100.0 + t : 7.25; });
  std::vector<std::string> warnings;
  auto ws = windows_at(panel, 19, 20, [&](const std::string& m) { warnings.push_back(m); });
  REQUIRE(warnings.size() == 1);
  REQUIRE(warnings[0].find("ust") != std::string::npos);
  REQUIRE(ws[1].values == std::vector<double>(20, 0.0));
}

TEST_CASE("windows_at refuses missing cells", "[preprocess]") {
  auto panel = make_panel(20, stock_and_bond(),
                          [](std::size_t t, std::size_t a) { return (t == 5 && a == 1) ? kMissing : 1.0 + t; });
  REQUIRE_THROWS_AS(windows_at(panel, 19, 20), PreprocessError);
}
