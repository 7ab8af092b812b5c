#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qmem::harness {

/// A result table. Cells are preformatted so CSV output is byte-stable.
struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
};

/// Shortest round-trip-safe text for a double ("%.12g", C locale).
std::string num(double v);
std::string num(long long v);
inline std::string num(int v) { return num(static_cast<long long>(v)); }
inline std::string num(std::uint64_t v) { return num(static_cast<long long>(v)); }

std::string to_csv(const Table& t);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

// ---- SVG --------------------------------------------------------------------

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

std::string svg_line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                           const std::vector<Series>& series);

/// values[row][col]; rows run bottom to top along y, columns along x.
std::string svg_heatmap(const std::string& title, const std::string& x_label, const std::string& y_label,
                        const std::vector<std::vector<double>>& values, double lo, double hi);

}  // namespace qmem::harness
