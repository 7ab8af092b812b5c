#include "qmem/harness/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qmem/error.hpp"

namespace qmem::harness {

void Table::add(std::vector<std::string> row) {
    if (row.size() != header.size()) {
        throw InvalidArgument("table " + name + ": row has " + std::to_string(row.size()) + " cells, header has " +
                              std::to_string(header.size()));
    }
    rows.push_back(std::move(row));
}

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";  // folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string num(long long v) { return std::to_string(v); }

namespace {

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string to_csv(const Table& t) {
    std::ostringstream out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << csv_cell(cells[i]);
        }
        out << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
    return out.str();
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw IoError("sha256: digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

constexpr double kW = 640, kH = 400, kLeft = 70, kRight = 150, kTop = 40, kBottom = 55;
const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string header(const std::string& title) {
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(title)
      << "</text>\n";
    return o.str();
}

std::string axes(const std::string& x_label, const std::string& y_label, double x0, double x1, double y0, double y1) {
    std::ostringstream o;
    const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
    o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = x0 + (x1 - x0) * i / 4, fy = y0 + (y1 - y0) * i / 4;
        const double px = kLeft + pw * i / 4, py = kTop + ph - ph * i / 4;
        o << "<text x=\"" << px << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"middle\">" << num(std::round(fx * 100) / 100)
          << "</text>\n";
        o << "<text x=\"" << kLeft - 6 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\">" << num(std::round(fy * 100) / 100)
          << "</text>\n";
    }
    o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\">" << xml_escape(x_label)
      << "</text>\n";
    o << "<text transform=\"translate(16," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << xml_escape(y_label) << "</text>\n";
    return o.str();
}

}  // namespace

std::string svg_line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                           const std::vector<Series>& series) {
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    bool first = true;
    for (const Series& s : series) {
        for (auto [x, y] : s.points) {
            if (first) {
                x0 = x1 = x;
                y0 = y1 = y;
                first = false;
            }
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
    const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;

    std::ostringstream o;
    o << header(title) << axes(x_label, y_label, x0, x1, y0, y1);
    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = kPalette[k % 6];
        o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (auto [x, y] : series[k].points) {
            o << num(kLeft + pw * (x - x0) / (x1 - x0)) << ',' << num(kTop + ph - ph * (y - y0) / (y1 - y0)) << ' ';
        }
        o << "\"/>\n";
        const double ly = kTop + 12 + 18.0 * static_cast<double>(k);
        o << "<line x1=\"" << kW - kRight + 10 << "\" y1=\"" << ly << "\" x2=\"" << kW - kRight + 30 << "\" y2=\"" << ly
          << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << kW - kRight + 35 << "\" y=\"" << ly + 4 << "\">" << xml_escape(series[k].label)
          << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

std::string svg_heatmap(const std::string& title, const std::string& x_label, const std::string& y_label,
                        const std::vector<std::vector<double>>& values, double lo, double hi) {
    const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
    std::ostringstream o;
    const std::size_t rows = values.size();
    const std::size_t cols = rows ? values[0].size() : 0;
    o << header(title) << axes(x_label, y_label, 0, static_cast<double>(cols), 0, static_cast<double>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < values[r].size(); ++c) {
            // diverging blue-white-red on [lo, hi]
            const double u = std::clamp((values[r][c] - lo) / (hi - lo), 0.0, 1.0);
            const int red = u < 0.5 ? static_cast<int>(255 * 2 * u) : 255;
            const int blue = u > 0.5 ? static_cast<int>(255 * 2 * (1 - u)) : 255;
            const int green = static_cast<int>(255 * (1 - std::abs(2 * u - 1)));
            char color[8];
            std::snprintf(color, sizeof color, "#%02x%02x%02x", red, green, blue);
            o << "<rect x=\"" << num(kLeft + pw * static_cast<double>(c) / static_cast<double>(cols)) << "\" y=\""
              << num(kTop + ph - ph * static_cast<double>(r + 1) / static_cast<double>(rows)) << "\" width=\""
              << num(pw / static_cast<double>(cols) + 0.5) << "\" height=\""
              << num(ph / static_cast<double>(rows) + 0.5) << "\" fill=\"" << color << "\"/>\n";
        }
    }
    o << "<text x=\"" << kW - kRight + 10 << "\" y=\"" << kTop + 12 << "\">red = " << num(hi) << "</text>\n";
    o << "<text x=\"" << kW - kRight + 10 << "\" y=\"" << kTop + 30 << "\">blue = " << num(lo) << "</text>\n";
    o << "</svg>\n";
    return o.str();
}

}  // namespace qmem::harness
