#include "market_rewire/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace market_rewire {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::string row_prefix(std::size_t line_no) { return "row " + std::to_string(line_no) + ": "; }

}  // namespace

std::string_view to_string(AssetClass cls) noexcept {
  switch (cls) {
    case AssetClass::stock: return "stock";
    case AssetClass::bond: return "bond";
    case AssetClass::fx: return "fx";
    case AssetClass::other: return "other";
  }
  return "other";
}

AssetClass parse_asset_class(std::string_view text) {
  if (text == "stock") return AssetClass::stock;
  if (text == "bond") return AssetClass::bond;
  if (text == "fx") return AssetClass::fx;
  if (text == "other") return AssetClass::other;
  throw std::invalid_argument("unknown asset class '" + std::string(text) + "'");
}

std::string_view to_string(FillPolicy policy) noexcept {
  return policy == FillPolicy::forward_fill ? "forward_fill" : "drop_date";
}

FillPolicy parse_fill_policy(std::string_view text) {
  if (text == "forward_fill") return FillPolicy::forward_fill;
  if (text == "drop_date") return FillPolicy::drop_date;
  throw std::invalid_argument("unknown fill policy '" + std::string(text) + "'");
}

PricePanel::PricePanel(std::vector<Date> dates, std::vector<AssetMeta> assets,
                       std::vector<double> values)
    : dates_(std::move(dates)), assets_(std::move(assets)), values_(std::move(values)) {
  if (values_.size() != dates_.size() * assets_.size()) {
    throw IngestError("panel shape mismatch: " + std::to_string(values_.size()) + " values for " +
                      std::to_string(dates_.size()) + " dates x " + std::to_string(assets_.size()) +
                      " assets");
  }
  for (std::size_t i = 1; i < dates_.size(); ++i) {
    if (!(dates_[i - 1] < dates_[i])) {
      throw IngestError("dates not strictly increasing at " + format_date(dates_[i]));
    }
  }
  std::unordered_set<std::string> seen;
  for (const auto& a : assets_) {
    if (a.asset_id.empty()) throw IngestError("empty asset_id");
    if (!seen.insert(a.asset_id).second) throw IngestError("duplicate asset_id '" + a.asset_id + "'");
    if (a.direction != 1 && a.direction != -1) {
      throw IngestError("asset '" + a.asset_id + "' has direction " + std::to_string(a.direction) +
                        "; expected +1 or -1");
    }
  }
  for (double v : values_) {
    if (std::isinf(v)) throw IngestError("panel contains an infinite value");
  }
}

std::vector<double> PricePanel::column(std::size_t asset_index, std::size_t first,
                                       std::size_t count) const {
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = at(first + k, asset_index);
  return out;
}

bool PricePanel::is_missing(std::size_t date_index, std::size_t asset_index) const noexcept {
  return std::isnan(at(date_index, asset_index));
}

bool PricePanel::is_complete() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

bool operator==(const PricePanel& a, const PricePanel& b) {
  if (a.dates_ != b.dates_ || a.assets_ != b.assets_ || a.values_.size() != b.values_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.values_.size(); ++i) {
    double x = a.values_[i], y = b.values_[i];
    if (std::isnan(x) != std::isnan(y)) return false;
    if (!std::isnan(x) && x != y) return false;
  }
  return true;
}

std::vector<AssetMeta> read_meta(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IngestError(std::string("metadata is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw IngestError("metadata must be a JSON array of asset records");

  std::vector<AssetMeta> out;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& rec = doc[i];
    auto where = "metadata record " + std::to_string(i);
    try {
      AssetMeta meta;
      meta.asset_id = rec.at("asset_id").get<std::string>();
      meta.name = rec.at("name").get<std::string>();
      meta.asset_class = parse_asset_class(rec.at("asset_class").get<std::string>());
      meta.direction = rec.at("direction").get<int>();
      if (meta.direction != 1 && meta.direction != -1) {
        throw IngestError(where + ": direction must be +1 or -1");
      }
      if (!seen.insert(meta.asset_id).second) {
        throw IngestError(where + ": duplicate asset_id '" + meta.asset_id + "'");
      }
      out.push_back(std::move(meta));
    } catch (const nlohmann::json::exception& e) {
      throw IngestError(where + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw IngestError(where + ": " + e.what());
    }
  }
  return out;
}

std::vector<AssetMeta> load_meta(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open metadata file " + path.string());
  return read_meta(in);
}

PricePanel read_panel(std::istream& csv, const std::vector<AssetMeta>& meta) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(csv, line)) throw IngestError("price CSV is empty");
  ++line_no;
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

  auto header = split_fields(line);
  if (header.empty() || header[0] != "date") {
    throw IngestError("price CSV header must start with 'date'");
  }
  if (header.size() < 2) throw IngestError("price CSV has no asset columns");

  std::unordered_map<std::string_view, const AssetMeta*> by_id;
  for (const auto& m : meta) by_id.emplace(m.asset_id, &m);

  std::vector<AssetMeta> assets;
  std::unordered_set<std::string_view> header_ids;
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (!header_ids.insert(header[c]).second) {
      throw IngestError("duplicate column '" + std::string(header[c]) + "' in price CSV");
    }
    auto it = by_id.find(header[c]);
    if (it == by_id.end()) {
      throw IngestError("no metadata for asset '" + std::string(header[c]) + "'");
    }
    assets.push_back(*it->second);
  }

  const std::size_t n_assets = assets.size();
  std::vector<std::pair<Date, std::vector<double>>> rows;
  while (std::getline(csv, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != n_assets + 1) {
      throw IngestError(row_prefix(line_no) + "expected " + std::to_string(n_assets + 1) +
                        " fields, found " + std::to_string(fields.size()));
    }
    Date date;
    try {
      date = parse_date(fields[0]);
    } catch (const std::invalid_argument& e) {
      throw IngestError(row_prefix(line_no) + e.what());
    }
    std::vector<double> values(n_assets);
    for (std::size_t c = 0; c < n_assets; ++c) {
      auto f = fields[c + 1];
      if (f.empty()) {
        values[c] = kMissing;
        continue;
      }
      double v = 0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc{} || ptr != f.data() + f.size() || !std::isfinite(v)) {
        throw IngestError(row_prefix(line_no) + "cannot parse value '" + std::string(f) +
                          "' for asset '" + assets[c].asset_id + "'");
      }
      values[c] = v;
    }
    rows.emplace_back(date, std::move(values));
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].first == rows[i - 1].first) {
      throw IngestError("duplicate date " + format_date(rows[i].first));
    }
  }

  std::vector<Date> dates;
  std::vector<double> values;
  dates.reserve(rows.size());
  values.reserve(rows.size() * n_assets);
  for (auto& [d, v] : rows) {
    dates.push_back(d);
    values.insert(values.end(), v.begin(), v.end());
  }
  return PricePanel(std::move(dates), std::move(assets), std::move(values));
}

PricePanel load_panel(const std::filesystem::path& csv_path, const std::filesystem::path& meta_path) {
  auto meta = load_meta(meta_path);
  std::ifstream in(csv_path);
  if (!in) throw IngestError("cannot open price CSV " + csv_path.string());
  return read_panel(in, meta);
}

PricePanel fill_missing(const PricePanel& panel, FillPolicy policy) {
  const std::size_t n = panel.n_assets();
  if (policy == FillPolicy::forward_fill) {
    std::vector<double> values = panel.values();
    for (std::size_t t = 0; t < panel.n_dates(); ++t) {
      for (std::size_t a = 0; a < n; ++a) {
        if (!std::isnan(values[t * n + a])) continue;
        if (t == 0) {
          throw IngestError("cannot forward-fill asset '" + panel.assets()[a].asset_id +
                            "': missing on first date " + format_date(panel.dates()[0]));
        }
        values[t * n + a] = values[(t - 1) * n + a];
      }
    }
    return PricePanel(panel.dates(), panel.assets(), std::move(values));
  }

  std::vector<Date> dates;
  std::vector<double> values;
  for (std::size_t t = 0; t < panel.n_dates(); ++t) {
    bool complete = true;
    for (std::size_t a = 0; a < n && complete; ++a) complete = !panel.is_missing(t, a);
    if (!complete) continue;
    dates.push_back(panel.dates()[t]);
    for (std::size_t a = 0; a < n; ++a) values.push_back(panel.at(t, a));
  }
  return PricePanel(std::move(dates), panel.assets(), std::move(values));
}

void write_panel_csv(std::ostream& out, const PricePanel& panel) {
  out << "date";
  for (const auto& a : panel.assets()) out << ',' << a.asset_id;
  out << '\n';
  for (std::size_t t = 0; t < panel.n_dates(); ++t) {
    out << format_date(panel.dates()[t]);
    for (std::size_t a = 0; a < panel.n_assets(); ++a) {
      out << ',';
      if (!panel.is_missing(t, a)) out << format_double(panel.at(t, a));
    }
    out << '\n';
  }
}

void write_meta_json(std::ostream& out, const std::vector<AssetMeta>& assets) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& a : assets) {
    doc.push_back({{"asset_id", a.asset_id},
                   {"name", a.name},
                   {"asset_class", std::string(to_string(a.asset_class))},
                   {"direction", a.direction}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace market_rewire
