#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "arbor/bounds.hpp"
#include "arbor/report.hpp"

using namespace arbor;
using nlohmann::json;

namespace {

std::size_t column(const Table& t, std::string_view name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] == name) return i;
  }
  FAIL("missing column " << name);
  return 0;
}

std::vector<std::string> texts(const Table& t, std::string_view name) {
  std::vector<std::string> out;
  const std::size_t c = column(t, name);
  for (const auto& row : t.rows) out.push_back(row[c].text);
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  return out;
}

const std::vector<std::string> kLatticeOrder{"(4.8^2)", "(6^3)=hc", "(3.6.3.6)", "(4^4)=sq", "(3^3.4^2)", "(3^2.4.3.4)", "(3^6)=tri"};

}  // namespace

TEST_CASE("table2 reproduces every printed cell") {
  const Table t = emit_table2();
  REQUIRE(t.rows.size() == 7);
  CHECK(t.columns == std::vector<std::string>{"lattice", "delta", "girth", "phi_u", "ssg", "bcl1", "bcl2", "bcl34"});
  CHECK(texts(t, "lattice") == kLatticeOrder);
  CHECK(texts(t, "delta") == std::vector<std::string>{"3", "3", "4", "4", "5", "5", "6"});
  CHECK(texts(t, "girth") == std::vector<std::string>{"4", "6", "3", "4", "3", "3", "3"});
  CHECK(texts(t, "phi_u") == std::vector<std::string>{"2.779486", "2.804781", "3.614045", "3.699659", "4.553665", "4.568231", "5.494840"});
  CHECK(texts(t, "ssg") == std::vector<std::string>{"2.82843", "2.82843", "4", "4", "5.65685", "5.65685", "8"});
  CHECK(texts(t, "bcl1") == std::vector<std::string>{"4", "4", "5", "5", "6", "6", "7"});
  CHECK(texts(t, "bcl2") == std::vector<std::string>{"3.57081", "3.57081", "4.54845", "4.54845", "5.53618", "5.53618", "6.52864"});
  CHECK(texts(t, "bcl34") == std::vector<std::string>{"-", "-", "3.994", "3.994", "5.1965", "5.1965", "6.3367"});
}

TEST_CASE("table1 recomputes the ratio column") {
  const Table t = emit_table1();
  REQUIRE(t.rows.size() == 7);
  CHECK(texts(t, "lattice") == kLatticeOrder);
  CHECK(texts(t, "r_phi") == std::vector<std::string>{"0.99994", "0.99982", "0.99667", "0.99658", "0.99480", "0.98572", "0.99075"});
  const std::size_t r = column(t, "r_phi");
  const double printed[] = {0.99994, 0.99982, 0.99667, 0.99658, 0.99480, 0.98572, 0.99075};
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(t.rows[i][r].source == Source::kComputed);
    CHECK(std::abs(*t.rows[i][r].value - printed[i]) < 1e-5);
  }
  CHECK(texts(t, "phi") == std::vector<std::string>{"2.77931", "2.80428", "3.602", "3.687", "4.530", "4.503", "5.444"});
  CHECK(texts(t, "phi_err") == std::vector<std::string>{"0.00018", "0.00050", "0.012", "0.012", "0.024", "0.065", "0.051"});
}

TEST_CASE("provenance") {
  for (const Table& t : {emit_table1(), emit_table2(), compare_bounds()}) {
    for (const auto& row : t.rows) {
      REQUIRE(row.size() == t.columns.size());
      CHECK(row[0].source == Source::kLabel);
      for (std::size_t c = 1; c < row.size(); ++c) {
        if (row[c].value) CHECK(row[c].source != Source::kLabel);
      }
    }
  }
  const Table t2 = emit_table2();
  CHECK(t2.rows[0][column(t2, "phi_u")].source == Source::kStored);
  CHECK(t2.rows[0][column(t2, "ssg")].source == Source::kComputed);
  CHECK(t2.rows[0][column(t2, "bcl2")].source == Source::kComputed);
  CHECK(t2.rows[2][column(t2, "bcl34")].source == Source::kStored);
  for (std::size_t c = 1; c < t2.columns.size(); ++c) CHECK(t2.rows[3][c].source != Source::kLabel);
  CHECK(to_string(Source::kStored) == "stored");
  CHECK(to_string(Source::kComputed) == "computed");
}

TEST_CASE("rows ordered by degree") {
  const Table t = emit_table1();
  const std::size_t d = column(t, "delta");
  for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(*t.rows[i - 1][d].value <= *t.rows[i][d].value);
}

TEST_CASE("csv and json agree with the table") {
  for (const Table& t : {emit_table1(), emit_table2(), compare_bounds(5)}) {
    const std::string csv = render(t, Format::kCsv);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(split(line, ',') == t.columns);
    std::vector<std::vector<std::string>> csv_rows;
    while (std::getline(in, line)) csv_rows.push_back(split(line, ','));
    REQUIRE(csv_rows.size() == t.rows.size());

    const json doc = json::parse(render(t, Format::kJson));
    CHECK(doc["columns"].get<std::vector<std::string>>() == t.columns);
    REQUIRE(doc["rows"].size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      for (std::size_t c = 0; c < t.columns.size(); ++c) {
        const Cell& cell = t.rows[i][c];
        const json& j = doc["rows"][i][t.columns[c]];
        CHECK(j["text"] == cell.text);
        if (t.columns[c] != "ranking") CHECK(csv_rows[i][c] == cell.text);
        if (cell.source == Source::kLabel) {
          CHECK_FALSE(j.contains("source"));
        } else {
          CHECK(j["source"] == std::string(to_string(cell.source)));
        }
        if (cell.value) CHECK(j["value"].get<double>() == *cell.value);
      }
    }
  }
}

TEST_CASE("csv quotes fields with separators") {
  Table t{{"a", "b"}, {{{"x,y", std::nullopt, Source::kLabel}, {"say \"hi\"", 1.0, Source::kComputed}}}};
  CHECK(render(t, Format::kCsv) == "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n");
}

TEST_CASE("markdown and text") {
  const Table t = emit_table2();
  const std::string md = render(t, Format::kMarkdown);
  std::istringstream in(md);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    CHECK(line.front() == '|');
    CHECK(line.back() == '|');
  }
  CHECK(lines == 9);
  CHECK(md.find("| 5.1965 |") != std::string::npos);

  const std::string text = render(t, Format::kText);
  CHECK(text.find("(3^6)=tri") != std::string::npos);
  CHECK(text.find("6.52864") != std::string::npos);
}

TEST_CASE("parse_format") {
  CHECK(parse_format("text") == Format::kText);
  CHECK(parse_format("csv") == Format::kCsv);
  CHECK(parse_format("json") == Format::kJson);
  CHECK(parse_format("markdown") == Format::kMarkdown);
  CHECK(parse_format("md") == Format::kMarkdown);
  CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}

TEST_CASE("compare_bounds") {
  const Table all = compare_bounds();
  CHECK(all.rows.size() == 7);
  for (const auto& row : all.rows) CHECK(row[column(all, "best")].text == "phi_u");

  const Table four = compare_bounds(4);
  REQUIRE(four.rows.size() == 2);
  CHECK(texts(four, "lattice") == std::vector<std::string>{"(3.6.3.6)", "(4^4)=sq"});
  CHECK(four.rows[1][column(four, "ranking")].text == "phi_u=3.699659 < BCL3=3.994 < 2^(D/2)=4 < BCL2=4.54845 < BCL1=5");

  const Table six = compare_bounds(6);
  REQUIRE(six.rows.size() == 1);
  CHECK(six.rows[0][column(six, "ranking")].text == "phi_u=5.494840 < BCL4=6.3367 < BCL2=6.52864 < BCL1=7 < 2^(D/2)=8");

  CHECK(compare_bounds(7).rows.empty());
}

TEST_CASE("number formatting") {
  CHECK(format_significant(std::sqrt(8.0), 6) == "2.82843");
  CHECK(format_significant(4.0, 6) == "4");
  CHECK(format_fixed(0.9948031, 5) == "0.99480");
}
