#include "market_rewire/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "market_rewire/export.hpp"
#include "market_rewire/ingest.hpp"
#include "market_rewire/pipeline.hpp"
#include "market_rewire/synth.hpp"

namespace market_rewire::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::string input;
  std::string meta;
  std::string out;
  std::size_t window = 20;
  double cooc_threshold = 2.0;
  double diff_threshold = 1.0;
  std::size_t hub_degree = 3;
  std::string fill = "forward_fill";
  std::string snapshots = "none";
  std::string graph_format = "dot";
  std::optional<std::size_t> band;
  bool charts = false;
};

struct SynthOptions {
  std::size_t assets = 20;
  std::size_t days = 260;
  std::uint64_t seed = 42;
  std::string out;
  std::vector<std::string> shocks;
  std::string classes = "2:1:1";
  double vol = 0.01;
};

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

template <class T>
T parse_number(const std::string& text, std::string_view what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw UsageError("invalid " + std::string(what) + " '" + text + "'");
  }
  return value;
}

ShockSpec parse_shock(const std::string& text) {
  auto parts = split(text, ':');
  if (parts.size() < 2 || parts.size() > 3) {
    throw UsageError("--shock expects start:end[:loading], got '" + text + "'");
  }
  ShockSpec shock;
  shock.start_day = parse_number<std::size_t>(parts[0], "shock start");
  shock.end_day = parse_number<std::size_t>(parts[1], "shock end");
  if (parts.size() == 3) shock.factor_loading = parse_number<double>(parts[2], "shock loading");
  return shock;
}

ClassRatio parse_classes(const std::string& text) {
  auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("--classes expects stock:bond:fx, got '" + text + "'");
  return {parse_number<unsigned>(parts[0], "stock weight"), parse_number<unsigned>(parts[1], "bond weight"),
          parse_number<unsigned>(parts[2], "fx weight")};
}

unsigned threads_from_env() {
  const char* raw = std::getenv("MARKET_REWIRE_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  return parse_number<unsigned>(raw, "MARKET_REWIRE_THREADS");
}

void write_file(const fs::path& path, std::string_view contents) {
  std::ofstream f(path, std::ios::binary);
  f << contents;
  if (!f) throw ExportError("cannot write " + path.string());
}

void apply_snapshot_flag(const std::string& flag, PipelineConfig& config) {
  if (flag == "none") {
    config.snapshots = SnapshotMode::none;
  } else if (flag == "all") {
    config.snapshots = SnapshotMode::all;
  } else {
    config.snapshots = SnapshotMode::listed;
    for (const auto& d : split(flag, ',')) {
      try {
        config.snapshot_dates.insert(parse_date(d));
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--snapshots: ") + e.what());
      }
    }
  }
}

int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  PipelineConfig config;
  config.window_w = opt.window;
  config.cooc_threshold = opt.cooc_threshold;
  config.diff_threshold = opt.diff_threshold;
  config.hub_min_degree = opt.hub_degree;
  config.band_halfwidth = opt.band;
  config.threads = threads_from_env();
  try {
    config.fill_policy = parse_fill_policy(opt.fill);
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  apply_snapshot_flag(opt.snapshots, config);
  const GraphFormat format = opt.graph_format == "json" ? GraphFormat::json : GraphFormat::dot;
  config.warn = [&err](const std::string& msg) { err << "warning: " << msg << '\n'; };

  const PricePanel panel = fill_missing(load_panel(opt.input, opt.meta), config.fill_policy);

  const fs::path out_dir = opt.out;
  const fs::path net_dir = out_dir / "networks";
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ExportError("cannot create " + out_dir.string() + ": " + ec.message());
  if (config.snapshots != SnapshotMode::none) {
    fs::create_directories(net_dir, ec);
    if (ec) throw ExportError("cannot create " + net_dir.string() + ": " + ec.message());
  }

  auto sink = [&](const Snapshot& snap) {
    const std::string stem = format_date(snap.end_date);
    const std::string ext(extension(format));
    write_file(net_dir / (stem + ".cooc." + ext), export_graph(snap.cooccurrence, panel.assets(), format));
    if (snap.differential) {
      write_file(net_dir / (stem + ".diff." + ext), export_graph(*snap.differential, panel.assets(), format));
    }
  };
  const RunResult result = run(panel, config, sink);

  write_file(out_dir / "metrics.csv", metrics_csv(result.metrics));
  if (opt.charts) {
    write_file(out_dir / "gbe.svg", render_gbe_svg(result.metrics));
    write_file(out_dir / "hubs.svg", render_hubs_svg(result.metrics));
  }

  const auto& rows = result.metrics;
  auto min_gbe = std::min_element(rows.begin(), rows.end(),
                                  [](const auto& a, const auto& b) { return a.gbe < b.gbe; });
  auto max_closer = std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.n_closer_hubs.value_or(0) < b.n_closer_hubs.value_or(0);
  });
  out << "analyzed " << rows.size() << " dates (" << format_date(rows.front().end_date) << " to "
      << format_date(rows.back().end_date) << "); min GBE " << format_double(min_gbe->gbe) << " on "
      << format_date(min_gbe->end_date) << "; max closer hubs " << max_closer->n_closer_hubs.value_or(0)
      << " on " << format_date(max_closer->end_date) << '\n';
  return kExitOk;
}

int cmd_gen_synthetic(const SynthOptions& opt, std::ostream& out) {
  SynthSpec spec;
  spec.n_assets = opt.assets;
  spec.n_days = opt.days;
  spec.seed = opt.seed;
  spec.daily_vol = opt.vol;
  spec.classes = parse_classes(opt.classes);
  for (const auto& s : opt.shocks) spec.shocks.push_back(parse_shock(s));
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const PricePanel panel = generate(spec);

  const fs::path dir = opt.out;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ExportError("cannot create " + dir.string() + ": " + ec.message());
  std::ostringstream csv, meta;
  write_panel_csv(csv, panel);
  write_meta_json(meta, panel.assets());
  write_file(dir / "prices.csv", csv.str());
  write_file(dir / "meta.json", meta.str());
  out << "wrote " << panel.n_assets() << " assets x " << panel.n_dates() << " days to " << dir.string()
      << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detect relationship changes across assets with DTW co-occurrence and differential networks",
               "market-rewire"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run_cmd = app.add_subcommand("run", "Analyze a price panel and export metrics, networks and charts");
  run_cmd->add_option("--input", run_opt.input, "Price CSV: date,<asset_id>... (empty field = missing)")
      ->required();
  run_cmd->add_option("--meta", run_opt.meta, "Asset metadata JSON")->required();
  run_cmd->add_option("--out", run_opt.out, "Output directory")->required();
  run_cmd->add_option("--window", run_opt.window, "Trailing window width in trading days")
      ->capture_default_str();
  run_cmd->add_option("--cooc-threshold", run_opt.cooc_threshold,
                      "Co-occurrence edge when DTW distance is strictly below this")
      ->capture_default_str();
  run_cmd->add_option("--diff-threshold", run_opt.diff_threshold,
                      "Differential edge when |day-over-day distance change| strictly exceeds this")
      ->capture_default_str();
  run_cmd->add_option("--hub-degree", run_opt.hub_degree, "Minimum same-colour degree of a hub")
      ->capture_default_str();
  run_cmd->add_option("--fill", run_opt.fill,
                      "Missing-value policy: forward_fill carries the last price forward (needed when "
                      "markets have different holidays); drop_date removes incomplete dates")
      ->check(CLI::IsMember({"forward_fill", "drop_date"}))
      ->capture_default_str();
  run_cmd->add_option("--snapshots", run_opt.snapshots,
                      "Network snapshots to write: all, none, or comma-separated ISO dates")
      ->capture_default_str();
  run_cmd->add_option("--graph-format", run_opt.graph_format, "Snapshot format")
      ->check(CLI::IsMember({"dot", "json"}))
      ->capture_default_str();
  run_cmd->add_option("--band", run_opt.band, "Optional DTW warping band half-width (default: unconstrained)");
  run_cmd->add_flag("--charts", run_opt.charts, "Write gbe.svg and hubs.svg");

  SynthOptions syn_opt;
  auto* syn_cmd = app.add_subcommand("gen-synthetic", "Write a seeded synthetic panel (prices.csv + meta.json)");
  syn_cmd->add_option("--assets", syn_opt.assets, "Number of assets (>= 2)")->required();
  syn_cmd->add_option("--days", syn_opt.days, "Number of trading days (>= 2)")->required();
  syn_cmd->add_option("--seed", syn_opt.seed, "Seed for std::mt19937_64")->required();
  syn_cmd->add_option("--out", syn_opt.out, "Output directory")->required();
  syn_cmd->add_option("--shock", syn_opt.shocks,
                      "Co-movement episode start:end[:loading], days inclusive, loading in [0,1] (default 1)");
  syn_cmd->add_option("--classes", syn_opt.classes, "stock:bond:fx ratio for class assignment")
      ->capture_default_str();
  syn_cmd->add_option("--vol", syn_opt.vol, "Daily log-return volatility")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run_opt, out, err);
    return cmd_gen_synthetic(syn_opt, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error [" << e.stage() << "]: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace market_rewire::cli
