#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace pparab {

using CsvCell = std::variant<std::string, double, long long>;

/// Comma-separated output with a mandatory header row. Doubles are written
/// with 17 significant digits so files round-trip bitwise.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, std::vector<std::string> header);

    void row(const std::vector<CsvCell>& cells);
    [[nodiscard]] std::size_t columns() const { return header_.size(); }

private:
    std::ostream& os_;
    std::vector<std::string> header_;
};

std::string format_double(double v);

}  // namespace pparab
