#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qtheta {

struct CountRow {
    std::int64_t N = 1;
    std::int64_t ell = 1;
    double delta = 1.0;
    double L = 1.0;
    std::optional<double> heart;
    std::string g;
    std::uint64_t count = 0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool flag = false;
};

struct ReportMetadata {
    std::string timestamp;
    std::string config_hash;
    double runtime_seconds = 0.0;
};

struct CountReport {
    std::string proposition;
    double constant = 0.0;  // rows with ratio above this are flagged
    std::vector<CountRow> rows;
    ReportMetadata meta;

    std::size_t flagged() const;
    double max_ratio() const;
};

enum class ReportFormat { Csv, Json };

inline constexpr const char* kCsvHeader = "N,ell,delta,L,heart,g,count,rhs,ratio,flag";

std::string format_float(double v);  // %.12e
std::string to_csv(const CountReport& r);
std::string to_json(const CountReport& r);
void report_emit(const CountReport& r, ReportFormat fmt, const std::filesystem::path& path);

std::string fnv1a_hex(const std::string& text);
// UTC ISO-8601; honours SOURCE_DATE_EPOCH so reruns can be byte-identical
std::string report_timestamp();

}  // namespace qtheta
