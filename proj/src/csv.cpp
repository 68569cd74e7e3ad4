#include "pparab/csv.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace pparab {

std::string format_double(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string quote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

CsvWriter::CsvWriter(std::ostream& os, std::vector<std::string> header) : os_(os), header_(std::move(header))
{
    for (std::size_t i = 0; i < header_.size(); ++i) {
        os_ << (i ? "," : "") << quote(header_[i]);
    }
    os_ << '\n';
}

void CsvWriter::row(const std::vector<CsvCell>& cells)
{
    if (cells.size() != header_.size()) {
        throw std::invalid_argument("CsvWriter: row width does not match header");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) {
            os_ << ',';
        }
        std::visit(
            [this](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, std::string>) {
                    os_ << quote(v);
                } else if constexpr (std::is_same_v<T, double>) {
                    os_ << format_double(v);
                } else {
                    os_ << v;
                }
            },
            cells[i]);
    }
    os_ << '\n';
}

}  // namespace pparab
