#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "isospec/grid.hpp"

namespace isospec::cli {

/// Largest relative deviation of any spacing from the mean spacing a table may have.
inline constexpr double kSpacingTolerance = 1e-9;

/**
 * Reads a tabulated potential: header `x,V`, at least three rows, strictly
 * uniform spacing. Errors are ParseError with the 1-based line number.
 */
GridFunction ingest_table(const std::filesystem::path& path);
GridFunction parse_table(std::istream& in, const std::string& source);

/// 17 significant digits, enough for a lossless round trip.
std::string format_double(double v);

/// Writes `x,<value_header>` rows; masked samples are skipped.
void write_table(std::ostream& out, const GridFunction& f, std::string_view value_header = "V");

}  // namespace isospec::cli
