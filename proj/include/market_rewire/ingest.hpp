#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "market_rewire/core.hpp"

namespace market_rewire {

enum class AssetClass { stock, bond, fx, other };

std::string_view to_string(AssetClass cls) noexcept;
AssetClass parse_asset_class(std::string_view text);

/// Per-asset metadata. `direction` is the risk-on sign: +1 for assets that tend to
/// rise when markets are risk-on (stocks), -1 for those that tend to fall (bonds, FX).
struct AssetMeta {
  std::string asset_id;
  std::string name;
  AssetClass asset_class = AssetClass::other;
  int direction = 1;

  friend bool operator==(const AssetMeta&, const AssetMeta&) = default;
};

/// Marker for a cell that was empty in the source CSV.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

/// Date-indexed matrix of raw price levels. Rows are dates, columns are assets.
///
/// Missing cells are stored as NaN until `fill_missing` has been applied; every
/// pipeline entry point requires `is_complete()`.
class PricePanel {
 public:
  PricePanel() = default;
  /// Validates shape, strictly increasing dates, unique asset ids and direction signs.
  /// Throws IngestError on violation. `values` is row-major (dates x assets).
  PricePanel(std::vector<Date> dates, std::vector<AssetMeta> assets, std::vector<double> values);

  std::size_t n_dates() const noexcept { return dates_.size(); }
  std::size_t n_assets() const noexcept { return assets_.size(); }

  const std::vector<Date>& dates() const noexcept { return dates_; }
  const std::vector<AssetMeta>& assets() const noexcept { return assets_; }
  const std::vector<double>& values() const noexcept { return values_; }

  double at(std::size_t date_index, std::size_t asset_index) const noexcept {
    return values_[date_index * assets_.size() + asset_index];
  }

  /// Copies the price series of one asset over dates [first, first + count).
  std::vector<double> column(std::size_t asset_index, std::size_t first, std::size_t count) const;

  bool is_missing(std::size_t date_index, std::size_t asset_index) const noexcept;

  /// True when every cell holds a finite value.
  bool is_complete() const noexcept;

  friend bool operator==(const PricePanel& a, const PricePanel& b);

 private:
  std::vector<Date> dates_;
  std::vector<AssetMeta> assets_;
  std::vector<double> values_;
};

enum class FillPolicy { forward_fill, drop_date };

std::string_view to_string(FillPolicy policy) noexcept;
FillPolicy parse_fill_policy(std::string_view text);

/// Reads a metadata JSON array of `{asset_id, name, asset_class, direction}` objects.
std::vector<AssetMeta> read_meta(std::istream& in);
std::vector<AssetMeta> load_meta(const std::filesystem::path& path);

/// Reads a price CSV with header `date,<asset_id>...`, joining each column with its
/// metadata record. Rows are returned sorted by date; empty fields become kMissing.
PricePanel read_panel(std::istream& csv, const std::vector<AssetMeta>& meta);
PricePanel load_panel(const std::filesystem::path& csv_path, const std::filesystem::path& meta_path);

/// Resolves missing cells. forward_fill carries the previous value of the same asset
/// and fails if an asset is missing on the first date; drop_date removes every date
/// with at least one missing cell.
PricePanel fill_missing(const PricePanel& panel, FillPolicy policy);

/// Writers for the same formats the readers accept.
void write_panel_csv(std::ostream& out, const PricePanel& panel);
void write_meta_json(std::ostream& out, const std::vector<AssetMeta>& assets);

}  // namespace market_rewire
