#include "market_rewire/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include <json.hpp>

namespace market_rewire {

namespace {

struct NamedEdge {
  std::string a;
  std::string b;
  std::string_view color;

  friend bool operator<(const NamedEdge& x, const NamedEdge& y) {
    return std::tie(x.a, x.b, x.color) < std::tie(y.a, y.b, y.color);
  }
};

struct CanonicalGraph {
  std::string date;
  std::vector<std::pair<std::string, AssetClass>> nodes;
  std::vector<NamedEdge> edges;
};

CanonicalGraph canonicalize(const Date& date, const std::vector<std::string>& nodes,
                            std::span<const AssetMeta> assets,
                            std::initializer_list<std::pair<const std::vector<Edge>*, std::string_view>> edge_sets) {
  std::unordered_map<std::string_view, AssetClass> cls;
  for (const auto& a : assets) cls.emplace(a.asset_id, a.asset_class);

  CanonicalGraph out;
  out.date = format_date(date);
  for (const auto& id : nodes) {
    auto it = cls.find(id);
    if (it == cls.end()) throw ExportError("no metadata for graph node '" + id + "'");
    out.nodes.emplace_back(id, it->second);
  }
  std::sort(out.nodes.begin(), out.nodes.end());
  for (const auto& [edges, color] : edge_sets) {
    for (auto [i, j] : *edges) {
      std::string a = nodes.at(i), b = nodes.at(j);
      if (b < a) std::swap(a, b);
      out.edges.push_back({std::move(a), std::move(b), color});
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

std::string quote(std::string_view s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') q += '\\';
    q += c;
  }
  q += '"';
  return q;
}

std::string to_dot(const CanonicalGraph& g, std::string_view kind) {
  std::ostringstream out;
  out << "graph " << quote(std::string(kind) + "_" + g.date) << " {\n";
  out << "  label=" << quote(g.date) << ";\n";
  out << "  node [style=filled, fontcolor=white];\n";
  for (const auto& [id, cls] : g.nodes) {
    out << "  " << quote(id) << " [class=" << quote(to_string(cls))
        << ", fillcolor=" << quote(class_color(cls)) << "];\n";
  }
  for (const auto& e : g.edges) {
    out << "  " << quote(e.a) << " -- " << quote(e.b);
    if (!e.color.empty()) out << " [color=" << e.color << "]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_json(const CanonicalGraph& g) {
  nlohmann::ordered_json doc;
  doc["date"] = g.date;
  doc["nodes"] = nlohmann::ordered_json::array();
  for (const auto& [id, cls] : g.nodes) {
    doc["nodes"].push_back({{"id", id}, {"class", std::string(to_string(cls))}});
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges) {
    nlohmann::ordered_json edge{{"a", e.a}, {"b", e.b}};
    if (!e.color.empty()) edge["color"] = std::string(e.color);
    doc["edges"].push_back(std::move(edge));
  }
  return doc.dump(2) + "\n";
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Series {
  std::string label;
  std::string color;
  std::vector<std::optional<double>> values;
};

// Line chart over row index. Absent points break the line instead of drawing a zero.
std::string render_chart(std::span<const MetricsRow> rows, std::string_view title,
                         std::string_view y_label, const std::vector<Series>& series) {
  constexpr double width = 900, height = 360;
  constexpr double left = 60, right = 20, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double y_max = 0;
  for (const auto& s : series) {
    for (const auto& v : s.values) {
      if (v) y_max = std::max(y_max, *v);
    }
  }
  if (y_max <= 0) y_max = 1;
  const std::size_t n = rows.size();
  auto x_at = [&](std::size_t i) {
    return n <= 1 ? left + plot_w / 2 : left + plot_w * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  auto y_at = [&](double v) { return top + plot_h * (1.0 - v / y_max); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << left << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">" << title
      << "</text>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << left - 8 << "\" y=\"" << top + 4
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << format_double(y_max)
      << "</text>\n";
  out << "<text x=\"" << left - 8 << "\" y=\"" << top + plot_h + 4
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">0</text>\n";
  out << "<text x=\"14\" y=\"" << top + plot_h / 2 << "\" font-family=\"sans-serif\" font-size=\"12\" "
      << "transform=\"rotate(-90 14 " << top + plot_h / 2 << ")\" text-anchor=\"middle\">" << y_label
      << "</text>\n";
  if (n > 0) {
    out << "<text x=\"" << left << "\" y=\"" << height - 18
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << format_date(rows.front().end_date)
        << "</text>\n";
    out << "<text x=\"" << left + plot_w << "\" y=\"" << height - 18
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
        << format_date(rows.back().end_date) << "</text>\n";
  }

  double legend_x = left + plot_w - 160;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    std::string points;
    auto flush = [&] {
      if (!points.empty()) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\""
            << points << "\"/>\n";
        points.clear();
      }
    };
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      if (!s.values[i]) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += fixed(x_at(i)) + "," + fixed(y_at(*s.values[i]));
    }
    flush();
    const double ly = 20 + 14 * static_cast<double>(k);
    out << "<line x1=\"" << legend_x << "\" y1=\"" << ly << "\" x2=\"" << legend_x + 20 << "\" y2=\"" << ly
        << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << legend_x + 26 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::optional<double> as_double(const std::optional<std::size_t>& v) {
  if (!v) return std::nullopt;
  return static_cast<double>(*v);
}

}  // namespace

std::string_view extension(GraphFormat format) noexcept { return format == GraphFormat::dot ? "dot" : "json"; }

std::string_view class_color(AssetClass cls) noexcept {
  switch (cls) {
    case AssetClass::stock: return "red";
    case AssetClass::bond: return "orange";
    case AssetClass::fx: return "greenyellow";
    case AssetClass::other: return "black";
  }
  return "black";
}

std::string export_graph(const Graph& g, std::span<const AssetMeta> assets, GraphFormat format) {
  auto canon = canonicalize(g.end_date, g.nodes, assets, {{&g.edges, ""}});
  return format == GraphFormat::dot ? to_dot(canon, "cooc") : to_json(canon);
}

std::string export_graph(const SignedGraph& g, std::span<const AssetMeta> assets, GraphFormat format) {
  auto canon = canonicalize(g.end_date, g.nodes, assets, {{&g.red_edges, "red"}, {&g.blue_edges, "blue"}});
  return format == GraphFormat::dot ? to_dot(canon, "diff") : to_json(canon);
}

void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows) {
  auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string(); };
  out << kMetricsHeader << '\n';
  for (const auto& r : rows) {
    out << format_date(r.end_date) << ',' << format_double(r.gbe) << ',' << r.n_components << ','
        << r.n_cooc_edges << ',' << opt(r.n_red_edges) << ',' << opt(r.n_blue_edges) << ','
        << opt(r.n_farther_hubs) << ',' << opt(r.n_closer_hubs) << '\n';
  }
}

std::string metrics_csv(std::span<const MetricsRow> rows) {
  std::ostringstream out;
  write_metrics_csv(out, rows);
  return out.str();
}

std::string render_gbe_svg(std::span<const MetricsRow> rows) {
  Series gbe{"GBE (bits)", "green", {}};
  for (const auto& r : rows) gbe.values.emplace_back(r.gbe);
  return render_chart(rows, "Graph-Based Entropy of the co-occurrence network", "GBE (bits)", {gbe});
}

std::string render_hubs_svg(std::span<const MetricsRow> rows) {
  Series farther{"farther hubs", "red", {}};
  Series closer{"closer hubs", "blue", {}};
  for (const auto& r : rows) {
    farther.values.push_back(as_double(r.n_farther_hubs));
    closer.values.push_back(as_double(r.n_closer_hubs));
  }
  return render_chart(rows, "Hubs in the differential network", "hub count", {farther, closer});
}

}  // namespace market_rewire
