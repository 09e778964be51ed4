#include "market_rewire/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace market_rewire {

namespace {

// Standard normal draws via Box-Muller on mt19937_64. std::normal_distribution is
// implementation-defined, so it is avoided to keep panels identical across toolchains.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
    engine_.seed(seq);
  }

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
  }

 private:
  // Uniform on the open interval (0, 1) from the top 53 bits.
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::array<std::size_t, 3> class_counts(const SynthSpec& spec) {
  const std::array<unsigned, 3> weights{spec.classes.stock, spec.classes.bond, spec.classes.fx};
  const std::size_t total = std::size_t{weights[0]} + weights[1] + weights[2];
  std::array<std::size_t, 3> counts{};
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    counts[k] = spec.n_assets * weights[k] / total;
    assigned += counts[k];
  }
  for (std::size_t k = 0; assigned < spec.n_assets; k = (k + 1) % 3) {
    if (weights[k] == 0) continue;
    ++counts[k];
    ++assigned;
  }
  return counts;
}

bool affects(const ShockSpec& shock, std::size_t asset, std::size_t day) {
  if (day < shock.start_day || day > shock.end_day) return false;
  if (shock.affected_assets.empty()) return true;
  return std::find(shock.affected_assets.begin(), shock.affected_assets.end(), asset) !=
         shock.affected_assets.end();
}

}  // namespace

void SynthSpec::validate() const {
  if (n_assets < 2) throw std::invalid_argument("synthetic panel needs at least 2 assets");
  if (n_days < 2) throw std::invalid_argument("synthetic panel needs at least 2 days");
  if (classes.stock + classes.bond + classes.fx == 0) {
    throw std::invalid_argument("class ratio must have a positive weight");
  }
  if (!(daily_vol > 0) || !std::isfinite(daily_vol)) throw std::invalid_argument("daily_vol must be > 0");
  if (!(initial_price > 0) || !std::isfinite(initial_price)) {
    throw std::invalid_argument("initial_price must be > 0");
  }
  if (!start_date.ok()) throw std::invalid_argument("invalid start date");
  for (const auto& s : shocks) {
    if (s.start_day > s.end_day || s.end_day >= n_days) {
      throw std::invalid_argument("shock interval " + std::to_string(s.start_day) + ":" +
                                  std::to_string(s.end_day) + " outside [0, " +
                                  std::to_string(n_days) + ")");
    }
    if (!(s.factor_loading >= 0 && s.factor_loading <= 1)) {
      throw std::invalid_argument("factor loading must lie in [0, 1]");
    }
    for (auto a : s.affected_assets) {
      if (a >= n_assets) throw std::invalid_argument("shock affects unknown asset " + std::to_string(a));
    }
  }
}

AssetMeta synth_asset_meta(const SynthSpec& spec, std::size_t index) {
  const auto counts = class_counts(spec);
  AssetMeta meta;
  std::size_t local = index;
  if (local < counts[0]) {
    meta.asset_class = AssetClass::stock;
    meta.direction = 1;
  } else if ((local -= counts[0]) < counts[1]) {
    meta.asset_class = AssetClass::bond;
    meta.direction = -1;
  } else {
    local -= counts[1];
    meta.asset_class = AssetClass::fx;
    meta.direction = -1;
  }
  char id[32];
  std::snprintf(id, sizeof id, "%s_%02zu", std::string(to_string(meta.asset_class)).c_str(), local + 1);
  meta.asset_id = id;
  meta.name = "Synthetic " + std::string(to_string(meta.asset_class)) + " " + std::to_string(local + 1);
  return meta;
}

PricePanel generate(const SynthSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n_assets;

  std::vector<AssetMeta> assets;
  assets.reserve(n);
  for (std::size_t a = 0; a < n; ++a) assets.push_back(synth_asset_meta(spec, a));

  std::vector<Date> dates;
  dates.reserve(spec.n_days);
  std::chrono::sys_days day{spec.start_date};
  for (std::size_t t = 0; t < spec.n_days; ++t) {
    while (std::chrono::weekday{day}.iso_encoding() > 5) day += std::chrono::days{1};
    dates.emplace_back(day);
    day += std::chrono::days{1};
  }

  // Idiosyncratic draws use stream 0 and each shock its own stream, so adding a shock
  // never shifts the idiosyncratic sequence.
  NormalStream idio(spec.seed, 0);
  std::vector<NormalStream> factors;
  factors.reserve(spec.shocks.size());
  for (std::size_t k = 0; k < spec.shocks.size(); ++k) {
    factors.emplace_back(spec.seed, static_cast<std::uint32_t>(k + 1));
  }

  std::vector<double> log_price(n, std::log(spec.initial_price));
  std::vector<double> values;
  values.reserve(spec.n_days * n);
  std::vector<double> factor_draw(spec.shocks.size());
  for (std::size_t t = 0; t < spec.n_days; ++t) {
    if (t > 0) {
      for (std::size_t k = 0; k < factors.size(); ++k) factor_draw[k] = factors[k].next();
      for (std::size_t a = 0; a < n; ++a) {
        double r = idio.next();
        for (std::size_t k = 0; k < spec.shocks.size(); ++k) {
          const auto& shock = spec.shocks[k];
          if (!affects(shock, a, t)) continue;
          const double load = shock.factor_loading;
          r = load * assets[a].direction * factor_draw[k] + (1.0 - load) * r;
          break;
        }
        log_price[a] += spec.daily_vol * r;
      }
    }
    for (std::size_t a = 0; a < n; ++a) values.push_back(std::exp(log_price[a]));
  }
  return PricePanel(std::move(dates), std::move(assets), std::move(values));
}

}  // namespace market_rewire
