#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arbor {

enum class Source { kLabel, kStored, kComputed };

std::string_view to_string(Source source);

/// One table cell; `text` is what every output format prints.
struct Cell {
  std::string text;
  std::optional<double> value;
  Source source = Source::kLabel;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Growth constants, upper bounds and recomputed ratios, ordered by
/// increasing degree then increasing upper bound.
Table emit_table1();

/// All bound families per lattice, same row order as emit_table1().
Table emit_table2();

/// Per-lattice comparison of phi_u against every bound, optionally
/// restricted to one degree. The "ranking" column lists bounds from most to
/// least stringent and "best" names the smallest.
Table compare_bounds(std::optional<int> delta = std::nullopt);

enum class Format { kText, kCsv, kJson, kMarkdown };

/// Throws std::invalid_argument for unknown names.
Format parse_format(std::string_view name);

std::string render(const Table& table, Format format);

/// printf "%.<digits>g".
std::string format_significant(double value, int digits);
/// printf "%.<decimals>f".
std::string format_fixed(double value, int decimals);

}  // namespace arbor
