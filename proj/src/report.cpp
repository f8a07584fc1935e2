#include "arbor/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "arbor/bounds.hpp"
#include "arbor/strip.hpp"

namespace arbor {

std::string_view to_string(Source source) {
  switch (source) {
    case Source::kLabel: return "label";
    case Source::kStored: return "stored";
    case Source::kComputed: return "computed";
  }
  return "label";
}

std::string format_significant(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

namespace {

Cell label(std::string_view text) { return {std::string(text), std::nullopt, Source::kLabel}; }
Cell stored(std::string_view text, double value) { return {std::string(text), value, Source::kStored}; }
Cell computed(std::string text, double value) { return {std::move(text), value, Source::kComputed}; }
Cell integer_cell(std::size_t v, Source source) { return {std::to_string(v), static_cast<double>(v), source}; }

std::vector<LatticeRecord> ordered_records() {
  auto data = lattice_dataset();
  std::vector<LatticeRecord> rows(data.begin(), data.end());
  std::stable_sort(rows.begin(), rows.end(), [](const LatticeRecord& a, const LatticeRecord& b) {
    const auto da = lattice_info(a.lattice).degree;
    const auto db = lattice_info(b.lattice).degree;
    return da != db ? da < db : a.phi_u < b.phi_u;
  });
  return rows;
}

Cell bcl34_cell(int delta) {
  if (auto v = bound_bcl34(delta)) return stored(format_significant(*v, 5), *v);
  return {"-", std::nullopt, Source::kStored};
}

struct NamedBound {
  std::string name;
  std::string text;
  double value;
};

}  // namespace

Table emit_table1() {
  Table t;
  t.columns = {"lattice", "delta", "girth", "phi", "phi_err", "phi_u", "r_phi"};
  for (const auto& r : ordered_records()) {
    const auto& info = lattice_info(r.lattice);
    const double ratio = ratio_r_phi(r.phi, r.phi_u);
    t.rows.push_back({label(info.display), integer_cell(info.degree, Source::kStored), integer_cell(info.girth, Source::kStored),
                      stored(r.phi_text, r.phi), stored(r.phi_err_text, r.phi_err), stored(r.phi_u_text, r.phi_u),
                      computed(format_fixed(ratio, 5), ratio)});
  }
  return t;
}

Table emit_table2() {
  Table t;
  t.columns = {"lattice", "delta", "girth", "phi_u", "ssg", "bcl1", "bcl2", "bcl34"};
  for (const auto& r : ordered_records()) {
    const auto& info = lattice_info(r.lattice);
    const auto d = static_cast<double>(info.degree);
    t.rows.push_back({label(info.display), integer_cell(info.degree, Source::kStored), integer_cell(info.girth, Source::kStored),
                      stored(r.phi_u_text, r.phi_u), computed(format_significant(bound_ssg(d), 6), bound_ssg(d)),
                      computed(format_significant(bound_bcl1(d), 6), bound_bcl1(d)),
                      computed(format_significant(bound_bcl2(d), 6), bound_bcl2(d)), bcl34_cell(static_cast<int>(info.degree))});
  }
  return t;
}

Table compare_bounds(std::optional<int> delta) {
  Table t;
  t.columns = {"lattice", "delta", "phi_u", "ssg", "bcl1", "bcl2", "bcl34", "best", "ranking"};
  for (const auto& r : ordered_records()) {
    const auto& info = lattice_info(r.lattice);
    const int deg = static_cast<int>(info.degree);
    if (delta && *delta != deg) continue;
    const auto d = static_cast<double>(deg);
    std::vector<NamedBound> bounds{
        {"phi_u", std::string(r.phi_u_text), r.phi_u},
        {"2^(D/2)", format_significant(bound_ssg(d), 6), bound_ssg(d)},
        {"BCL1", format_significant(bound_bcl1(d), 6), bound_bcl1(d)},
        {"BCL2", format_significant(bound_bcl2(d), 6), bound_bcl2(d)},
    };
    if (auto v = bound_bcl34(deg)) bounds.push_back({deg == 4 ? "BCL3" : "BCL4", format_significant(*v, 5), *v});
    std::stable_sort(bounds.begin(), bounds.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
    std::string ranking;
    for (const auto& b : bounds) ranking += (ranking.empty() ? "" : " < ") + b.name + "=" + b.text;
    t.rows.push_back({label(info.display), integer_cell(info.degree, Source::kStored), stored(r.phi_u_text, r.phi_u),
                      computed(format_significant(bound_ssg(d), 6), bound_ssg(d)),
                      computed(format_significant(bound_bcl1(d), 6), bound_bcl1(d)),
                      computed(format_significant(bound_bcl2(d), 6), bound_bcl2(d)), bcl34_cell(deg),
                      {bounds.front().name, bounds.front().value, Source::kComputed}, label(ranking)});
  }
  return t;
}

Format parse_format(std::string_view name) {
  if (name == "text") return Format::kText;
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  if (name == "markdown" || name == "md") return Format::kMarkdown;
  throw std::invalid_argument("unknown format '" + std::string(name) + "'");
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

std::string render(const Table& table, Format format) {
  std::ostringstream out;
  switch (format) {
    case Format::kCsv: {
      for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << csv_escape(table.columns[c]);
      out << '\n';
      for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_escape(row[c].text);
        out << '\n';
      }
      break;
    }
    case Format::kJson: {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t c = 0; c < row.size(); ++c) {
          nlohmann::ordered_json cell;
          cell["text"] = row[c].text;
          if (row[c].source != Source::kLabel) {
            cell["value"] = row[c].value ? nlohmann::ordered_json(*row[c].value) : nlohmann::ordered_json(nullptr);
            cell["source"] = std::string(to_string(row[c].source));
          }
          obj[table.columns[c]] = cell;
        }
        rows.push_back(obj);
      }
      nlohmann::ordered_json doc;
      doc["columns"] = table.columns;
      doc["rows"] = rows;
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::kMarkdown: {
      out << '|';
      for (const auto& c : table.columns) out << ' ' << c << " |";
      out << "\n|";
      for (std::size_t c = 0; c < table.columns.size(); ++c) out << "---|";
      out << '\n';
      for (const auto& row : table.rows) {
        out << '|';
        for (const auto& cell : row) out << ' ' << cell.text << " |";
        out << '\n';
      }
      break;
    }
    case Format::kText: {
      std::vector<std::size_t> width(table.columns.size());
      for (std::size_t c = 0; c < table.columns.size(); ++c) width[c] = table.columns[c].size();
      for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].text.size());
      }
      auto line = [&](auto&& text_of) {
        std::string s;
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
          std::string cell = text_of(c);
          if (c + 1 < table.columns.size()) cell.resize(width[c], ' ');
          s += (c ? "  " : "") + cell;
        }
        out << s << '\n';
      };
      line([&](std::size_t c) { return table.columns[c]; });
      for (const auto& row : table.rows) line([&](std::size_t c) { return row[c].text; });
      break;
    }
  }
  return out.str();
}

}  // namespace arbor
