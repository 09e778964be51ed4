// Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "market_rewire/cli.hpp"
#include "market_rewire/dtw.hpp"
#include "market_rewire/export.hpp"
#include "market_rewire/networks.hpp"
#include "market_rewire/pipeline.hpp"
#include "market_rewire/synth.hpp"
#include "support/oracles.hpp"
#include "support/temp_dir.hpp"

using namespace market_rewire;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

PricePanel shock_scenario() {
  SynthSpec spec;
  spec.n_assets = 20;
  spec.n_days = 260;
  spec.seed = 42;
  spec.shocks.push_back({150, 190, {}, 0.95});
  return generate(spec);
}

PricePanel transform_column(const PricePanel& p, std::size_t asset, const std::function<double(double)>& f) {
  std::vector<double> values = p.values();
  for (std::size_t t = 0; t < p.n_dates(); ++t) {
    auto& v = values[t * p.n_assets() + asset];
    v = f(v);
  }
  return PricePanel(p.dates(), p.assets(), std::move(values));
}

// All exported files of a run, keyed by file name.
std::map<std::string, std::string> export_run(const PricePanel& panel, unsigned threads) {
  PipelineConfig config;
  config.threads = threads;
  config.snapshots = SnapshotMode::all;
  std::map<std::string, std::string> files;
  auto result = run(panel, config, [&](const Snapshot& s) {
    auto stem = format_date(s.end_date);
    for (auto fmt : {GraphFormat::dot, GraphFormat::json}) {
      auto ext = std::string(extension(fmt));
      files[stem + ".cooc." + ext] = export_graph(s.cooccurrence, panel.assets(), fmt);
      if (s.differential) files[stem + ".diff." + ext] = export_graph(*s.differential, panel.assets(), fmt);
    }
  });
  files["metrics.csv"] = metrics_csv(result.metrics);
  files["gbe.svg"] = render_gbe_svg(result.metrics);
  files["hubs.svg"] = render_hubs_svg(result.metrics);
  return files;
}

bool symmetric_zero_diagonal(const DistanceMatrix& dm, double tol) {
  for (std::size_t i = 0; i < dm.d.size(); ++i) {
    if (std::abs(dm.d(i, i)) > tol) return false;
    for (std::size_t j = 0; j < dm.d.size(); ++j) {
      if (std::abs(dm.d(i, j) - dm.d(j, i)) > tol || !(dm.d(i, j) >= 0) || !std::isfinite(dm.d(i, j))) {
        return false;
      }
    }
  }
  return true;
}

Verdict dtw_oracle_equivalence() {
  Verdict v;
  const auto start = Clock::now();
  std::mt19937_64 rng(1978);
  std::uniform_int_distribution<std::size_t> len(1, 6);
  std::uniform_int_distribution<int> ival(-9, 9);
  std::uniform_real_distribution<double> rval(-3.0, 3.0);

  int int_mismatch = 0;
  for (int k = 0; k < 500; ++k) {
    std::vector<double> p(len(rng)), q(len(rng));
    for (auto& x : p) x = ival(rng);
    for (auto& x : q) x = ival(rng);
    if (dtw_distance(p, q) != oracle::dtw_bruteforce(p, q)) ++int_mismatch;
  }
  double worst_real = 0;
  for (int k = 0; k < 500; ++k) {
    std::vector<double> p(len(rng)), q(len(rng));
    for (auto& x : p) x = rval(rng);
    for (auto& x : q) x = rval(rng);
    worst_real = std::max(worst_real, std::abs(dtw_distance(p, q) - oracle::dtw_bruteforce(p, q)));
  }
  const double elapsed = seconds_since(start);
  v.check(int_mismatch == 0, "integer pairs exact: " + std::to_string(500 - int_mismatch) + "/500");
  v.check(worst_real <= 1e-9, "real pairs max |err| " + num(worst_real) + " <= 1e-9");
  v.check(elapsed < 10.0, "runtime " + num(elapsed) + " s < 10 s");
  return v;
}

Verdict gbe_analytic_cases() {
  Verdict v;
  auto h = [](std::vector<std::size_t> s) { return graph_based_entropy(s); };
  v.check(h({3, 3}) == 1.0, "{3,3} -> " + num(h({3, 3})));
  v.check(std::abs(h({4, 2}) - 0.918295834054) <= 1e-9, "{4,2} -> " + format_double(h({4, 2})));
  v.check(h({49}) == 0.0, "single component -> " + num(h({49})));
  double worst = 0;
  for (std::size_t n = 1; n <= 64; ++n) {
    worst = std::max(worst, std::abs(h(std::vector<std::size_t>(n, 1)) - std::log2(static_cast<double>(n))));
  }
  v.check(worst <= 1e-9, "n singletons -> log2(n), max |err| " + num(worst));
  return v;
}

Verdict threshold_semantics() {
  Verdict v;
  DistanceMatrix dm;
  dm.asset_ids = {"a", "b", "c"};
  dm.d = SquareMatrix(3);
  auto set = [](SquareMatrix& m, std::size_t i, std::size_t j, double x) { m(i, j) = m(j, i) = x; };
  set(dm.d, 0, 1, 2.0);
  set(dm.d, 0, 2, std::nextafter(2.0, 0.0));
  set(dm.d, 1, 2, 7.0);
  auto g = cooccurrence_network(dm, 2.0);
  v.check(g.edges == std::vector<Edge>{{0, 2}}, "distance 2.0 at theta 2.0 gives no edge");

  SquareMatrix diff(3);
  set(diff, 0, 1, 1.0);
  set(diff, 0, 2, -1.0);
  set(diff, 1, 2, 0.0);
  auto sg = differential_network(diff, 1.0, dm.asset_ids, dm.end_date);
  v.check(sg.red_edges.empty() && sg.blue_edges.empty(), "difference +-1.0 at delta 1.0 gives no edge");
  set(diff, 0, 1, std::nextafter(1.0, 2.0));
  set(diff, 0, 2, std::nextafter(-1.0, -2.0));
  sg = differential_network(diff, 1.0, dm.asset_ids, dm.end_date);
  v.check(sg.red_edges.size() == 1 && sg.blue_edges.size() == 1, "just beyond +-1.0 gives red and blue edges");
  return v;
}

Verdict shock_scenario_signature() {
  Verdict v;
  const auto start = Clock::now();
  const auto panel = shock_scenario();
  const auto result = run(panel, PipelineConfig{});
  const double elapsed = seconds_since(start);

  constexpr double inf = std::numeric_limits<double>::infinity();
  double gbe_shock = inf, gbe_calm = inf;
  std::size_t hubs_onset = 0, hubs_calm = 0;
  std::size_t shock_min_day = 0;
  for (const auto& r : result.metrics) {
    const auto t = r.date_index;
    if (t >= 150 && t <= 190 && r.gbe < gbe_shock) {
      gbe_shock = r.gbe;
      shock_min_day = t;
    }
    if (t >= 40 && t <= 149) gbe_calm = std::min(gbe_calm, r.gbe);
    const std::size_t closer = r.n_closer_hubs.value_or(0);
    if (t >= 148 && t <= 165) hubs_onset = std::max(hubs_onset, closer);
    if (t >= 40 && t <= 147) hubs_calm = std::max(hubs_calm, closer);
  }
  bool recovered = false;
  std::size_t recovery_day = 0;
  for (const auto& r : result.metrics) {
    if (r.date_index > 190 && r.date_index <= 230 && r.gbe > gbe_shock) {
      recovered = true;
      recovery_day = r.date_index;
      break;
    }
  }

  v.check(gbe_shock < gbe_calm, "(a) min GBE in [150,190] " + num(gbe_shock) + " (day " +
                                    std::to_string(shock_min_day) + ") < min GBE in [40,149] " + num(gbe_calm));
  v.check(hubs_onset >= 3 && hubs_onset > hubs_calm, "(b) max closer hubs in [148,165] " +
                                                         std::to_string(hubs_onset) + " >= 3 and > max in [40,147] " +
                                                         std::to_string(hubs_calm));
  v.check(recovered, "(c) GBE above in-shock minimum by day " +
                         (recovered ? std::to_string(recovery_day) : std::string("none")) + " (limit 230)");
  v.check(elapsed < 30.0, "runtime " + num(elapsed) + " s < 30 s");
  return v;
}

Verdict invariances() {
  Verdict v;
  const auto panel = shock_scenario();
  const auto base = metrics_csv(run(panel, PipelineConfig{}).metrics);

  const std::vector<std::pair<std::string, std::function<double(double)>>> transforms{
      {"x2.5", [](double x) { return 2.5 * x; }},
      {"x0.013", [](double x) { return 0.013 * x; }},
      {"+37", [](double x) { return x + 37.0; }},
      {"-60", [](double x) { return x - 60.0; }},
  };
  for (std::size_t asset : {0u, 12u, 19u}) {
    for (const auto& [name, f] : transforms) {
      auto csv = metrics_csv(run(transform_column(panel, asset, f), PipelineConfig{}).metrics);
      if (csv != base) v.check(false, "column " + std::to_string(asset) + " " + name + " changed metrics CSV");
    }
  }
  v.check(v.pass, "scale/shift of columns 0, 12, 19 leave metrics CSV byte-identical");

  auto assets = panel.assets();
  assets[3].direction = -assets[3].direction;
  const PricePanel flipped(panel.dates(), assets, panel.values());
  bool negated = true, structure = true;
  for (std::size_t t = 19; t < panel.n_dates(); t += 7) {
    auto w0 = windows_at(panel, t, 20);
    auto w1 = windows_at(flipped, t, 20);
    for (std::size_t k = 0; k < 20; ++k) negated = negated && w1[3].values[k] == -w0[3].values[k];
    auto dm = distance_matrix(w1);
    structure = structure && symmetric_zero_diagonal(dm, 0.0) &&
                dm.d(3, 5) == dtw_distance(apply_direction(w0[3].values, -1), w0[5].values);
  }
  v.check(negated, "direction flip negates that asset's window");
  v.check(structure, "flipped-direction matrices symmetric, zero self-distance, equal to DTW on negated window");
  return v;
}

Verdict determinism_and_symmetry() {
  Verdict v;
  const auto panel = shock_scenario();
  auto serial = export_run(panel, 1);
  auto again = export_run(panel, 1);
  auto parallel = export_run(panel, 4);
  v.check(serial == again, "repeat run byte-identical over " + std::to_string(serial.size()) + " files");
  v.check(serial == parallel, "threads=4 byte-identical to threads=1");

  std::size_t checked = 0;
  bool ok = true;
  for (std::size_t t = 19; t < panel.n_dates(); ++t) {
    ok = ok && symmetric_zero_diagonal(distance_matrix(windows_at(panel, t, 20), {std::nullopt, 3}), 1e-12);
    ++checked;
  }
  v.check(ok, std::to_string(checked) + " distance matrices symmetric with zero diagonal (1e-12)");
  return v;
}

Verdict desk_scale_performance() {
  Verdict v;
  SynthSpec spec;
  spec.n_assets = 49;
  spec.n_days = 250;
  spec.seed = 2007;
  spec.shocks.push_back({40, 70, {}, 0.9});
  const auto panel = generate(spec);

  PipelineConfig config;
  config.threads = 1;
  const auto start = Clock::now();
  const auto single = run(panel, config);
  const double elapsed = seconds_since(start);
  config.threads = 0;
  const auto parallel = run(panel, config);

  const std::size_t evaluations = single.metrics.size() * 49 * 48 / 2;
  v.check(elapsed < 60.0, "49x250 single-threaded " + num(elapsed) + " s < 60 s (" +
                              std::to_string(evaluations) + " DTW evaluations)");
  v.check(metrics_csv(single.metrics) == metrics_csv(parallel.metrics), "parallel output identical");
  return v;
}

Verdict round_trip() {
  Verdict v;
  testing_support::TempDir dir("acceptance_roundtrip");
  auto call = [](std::vector<std::string> args) {
    args.insert(args.begin(), "market-rewire");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    return cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  };
  const auto data = (dir / "data").string();
  const auto out = (dir / "out").string();
  int g = call({"gen-synthetic", "--assets", "20", "--days", "260", "--seed", "42", "--shock", "150:190:0.95",
                "--out", data});
  int r = call({"run", "--input", data + "/prices.csv", "--meta", data + "/meta.json", "--out", out});
  auto csv = testing_support::slurp(dir / "out/metrics.csv");
  const auto rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) - 1;
  v.check(g == 0 && r == 0, "gen-synthetic exit " + std::to_string(g) + ", run exit " + std::to_string(r));
  v.check(rows == 260 - 20 + 1, std::to_string(rows) + " metrics rows == n_days - w + 1 = 241");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"AC1 DTW oracle equivalence", dtw_oracle_equivalence},
      {"AC2 GBE analytic cases", gbe_analytic_cases},
      {"AC3 threshold semantics", threshold_semantics},
      {"AC4 shock scenario signature", shock_scenario_signature},
      {"AC5 scale/shift/direction invariances", invariances},
      {"AC6 determinism and symmetry", determinism_and_symmetry},
      {"AC7 desk-scale performance", desk_scale_performance},
      {"AC8 synthetic round trip", round_trip},
  };
  int failed = 0;
  for (const auto& [name, criterion] : criteria) {
    Verdict v;
    try {
      v = criterion();
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    if (!v.pass) ++failed;
    std::printf("[%s] %s: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
