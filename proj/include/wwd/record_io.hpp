// record_io.hpp
// Text serialization of scan records. CSV uses '.' decimals, 17 significant
// digits, '\n' line endings and an empty field for absent values; JSON uses
// the same field names with null for absent values.

#pragma once

#include "wwd/optimizer.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wwd {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kCsvHeader =
    "delta,visibility,sigma,outcome_probability,d_opt,d_englert_line,d_natural_line,d_englert_bound";

/// printf("%.17g") equivalent, independent of the global locale.
std::string format_real(double value);

std::string format_csv_row(const ScanRecord& rec);
ScanRecord parse_csv_row(std::string_view line);

void write_csv(std::ostream& os, const std::vector<ScanRecord>& records);
std::vector<ScanRecord> read_csv(std::istream& is);

void write_json(std::ostream& os, const std::vector<ScanRecord>& records);
std::vector<ScanRecord> read_json(std::istream& is);

}  // namespace wwd
