#include "wwd/record_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <system_error>

#include "json.hpp"

namespace wwd {

namespace {

using nlohmann::json;

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_real(std::string_view field, const char* name) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
        throw ParseError(std::string("invalid value for ") + name + ": '" + std::string(field) + "'");
    }
    return value;
}

std::optional<double> parse_optional(std::string_view field, const char* name) {
    if (field.empty()) return std::nullopt;
    return parse_real(field, name);
}

int parse_sigma(std::string_view field) {
    int sigma = 0;
    const char* first = field.data();
    if (!field.empty() && field.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, field.data() + field.size(), sigma);
    if (ec != std::errc{} || ptr != field.data() + field.size() || (sigma != 1 && sigma != -1)) {
        throw ParseError("invalid sigma: '" + std::string(field) + "'");
    }
    return sigma;
}

void append_optional(std::string& out, const std::optional<double>& v) {
    if (v) out += format_real(*v);
}

json optional_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

}  // namespace

std::string format_real(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    if (ec != std::errc{}) throw std::runtime_error("format_real: conversion failed");
    return std::string(buf, ptr);
}

std::string format_csv_row(const ScanRecord& rec) {
    std::string out;
    out.reserve(160);
    out += format_real(rec.delta);
    out += ',';
    out += format_real(rec.visibility);
    out += ',';
    out += std::to_string(rec.sigma);
    out += ',';
    out += format_real(rec.outcome_probability);
    out += ',';
    append_optional(out, rec.d_opt);
    out += ',';
    append_optional(out, rec.d_englert_line);
    out += ',';
    append_optional(out, rec.d_natural_line);
    out += ',';
    out += format_real(rec.d_englert_bound);
    return out;
}

ScanRecord parse_csv_row(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto f = split_fields(line);
    if (f.size() != 8) {
        throw ParseError("expected 8 fields, got " + std::to_string(f.size()));
    }
    ScanRecord rec;
    rec.delta = parse_real(f[0], "delta");
    rec.visibility = parse_real(f[1], "visibility");
    rec.sigma = parse_sigma(f[2]);
    rec.outcome_probability = parse_real(f[3], "outcome_probability");
    rec.d_opt = parse_optional(f[4], "d_opt");
    rec.d_englert_line = parse_optional(f[5], "d_englert_line");
    rec.d_natural_line = parse_optional(f[6], "d_natural_line");
    rec.d_englert_bound = parse_real(f[7], "d_englert_bound");
    return rec;
}

void write_csv(std::ostream& os, const std::vector<ScanRecord>& records) {
    os << kCsvHeader << '\n';
    for (const auto& rec : records) os << format_csv_row(rec) << '\n';
}

std::vector<ScanRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("missing CSV header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw ParseError("unexpected CSV header: " + line);
    std::vector<ScanRecord> records;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        records.push_back(parse_csv_row(line));
    }
    return records;
}

void write_json(std::ostream& os, const std::vector<ScanRecord>& records) {
    json arr = json::array();
    for (const auto& rec : records) {
        arr.push_back({{"delta", rec.delta},
                       {"visibility", rec.visibility},
                       {"sigma", rec.sigma},
                       {"outcome_probability", rec.outcome_probability},
                       {"d_opt", optional_to_json(rec.d_opt)},
                       {"d_englert_line", optional_to_json(rec.d_englert_line)},
                       {"d_natural_line", optional_to_json(rec.d_natural_line)},
                       {"d_englert_bound", rec.d_englert_bound}});
    }
    os << arr.dump(2) << '\n';
}

std::vector<ScanRecord> read_json(std::istream& is) {
    std::vector<ScanRecord> records;
    try {
        const json arr = json::parse(is);
        if (!arr.is_array()) throw ParseError("expected a JSON array of records");
        for (const auto& j : arr) {
            ScanRecord rec;
            rec.delta = j.at("delta").get<double>();
            rec.visibility = j.at("visibility").get<double>();
            rec.sigma = j.at("sigma").get<int>();
            if (rec.sigma != 1 && rec.sigma != -1) throw ParseError("invalid sigma in JSON record");
            rec.outcome_probability = j.at("outcome_probability").get<double>();
            rec.d_opt = optional_from_json(j.at("d_opt"));
            rec.d_englert_line = optional_from_json(j.at("d_englert_line"));
            rec.d_natural_line = optional_from_json(j.at("d_natural_line"));
            rec.d_englert_bound = j.at("d_englert_bound").get<double>();
            records.push_back(rec);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("JSON: ") + e.what());
    }
    return records;
}

}  // namespace wwd
