#include "isospec_cli/table_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

namespace isospec::cli {

namespace {

double parse_number(std::string_view field, const std::string& source, std::size_t line) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw ParseError(source + ":" + std::to_string(line) + ": cannot parse number '" +
                             std::string(field) + "'",
                         line);
    }
    if (!std::isfinite(v)) {
        throw ParseError(source + ":" + std::to_string(line) + ": non-finite value", line);
    }
    return v;
}

}  // namespace

GridFunction ingest_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open potential table '" + path.string() + "'", 0);
    }
    return parse_table(in, path.string());
}

GridFunction parse_table(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    auto next = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    };
    if (!next() || line != "x,V") {
        throw ParseError(source + ":1: expected header 'x,V'", 1);
    }
    std::vector<double> xs;
    std::vector<double> vs;
    std::vector<std::size_t> lines;
    while (next()) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw ParseError(source + ":" + std::to_string(line_no) + ": expected two fields",
                             line_no);
        }
        const std::string_view view(line);
        xs.push_back(parse_number(view.substr(0, comma), source, line_no));
        vs.push_back(parse_number(view.substr(comma + 1), source, line_no));
        lines.push_back(line_no);
    }
    if (xs.size() < 3) {
        throw ParseError(source + ": need at least 3 rows, found " + std::to_string(xs.size()),
                         line_no);
    }
    const std::size_t n = xs.size();
    const double h = (xs.back() - xs.front()) / static_cast<double>(n - 1);
    if (!(h > 0.0)) {
        throw ParseError(source + ": x must increase", lines.front());
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double dev = std::abs((xs[i] - xs[i - 1]) - h) / h;
        if (!(dev < kSpacingTolerance)) {
            throw ParseError(source + ":" + std::to_string(lines[i]) +
                                 ": non-uniform spacing (relative deviation " +
                                 format_double(dev) + ")",
                             lines[i]);
        }
    }
    return GridFunction(Grid1D(xs.front(), xs.back(), n), std::move(vs));
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

void write_table(std::ostream& out, const GridFunction& f, std::string_view value_header) {
    out << "x," << value_header << '\n';
    for (std::size_t i = f.window().lo; i <= f.window().hi; ++i) {
        out << format_double(f.grid().x(i)) << ',' << format_double(f[i]) << '\n';
    }
}

}  // namespace isospec::cli
