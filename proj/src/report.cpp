#include "qtheta/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qtheta {

std::size_t CountReport::flagged() const
{
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const CountRow& r) { return r.flag; }));
}

double CountReport::max_ratio() const
{
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, r.ratio);
    return m;
}

std::string format_float(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

namespace {

std::string json_string(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out += buf;
        } else {
            out += c;
        }
    }
    return out + "\"";
}

}  // namespace

std::string to_csv(const CountReport& r)
{
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& row : r.rows) {
        out += std::to_string(row.N) + ',' + std::to_string(row.ell) + ',' + format_float(row.delta) + ','
               + format_float(row.L) + ',' + (row.heart ? format_float(*row.heart) : std::string()) + ',' + row.g
               + ',' + std::to_string(row.count) + ',' + format_float(row.rhs) + ',' + format_float(row.ratio) + ','
               + (row.flag ? "1" : "0") + '\n';
    }
    return out;
}

std::string to_json(const CountReport& r)
{
    std::string out = "{\n";
    out += "  \"schema\": \"qtheta-count-report-1\",\n";
    out += "  \"proposition\": " + json_string(r.proposition) + ",\n";
    out += "  \"constant\": " + format_float(r.constant) + ",\n";
    out += "  \"metadata\": {\"timestamp\": " + json_string(r.meta.timestamp)
           + ", \"config_hash\": " + json_string(r.meta.config_hash)
           + ", \"runtime_seconds\": " + format_float(r.meta.runtime_seconds) + "},\n";
    out += "  \"rows\": [";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        out += i == 0 ? "\n" : ",\n";
        out += "    {\"N\": " + std::to_string(row.N) + ", \"ell\": " + std::to_string(row.ell)
               + ", \"delta\": " + format_float(row.delta) + ", \"L\": " + format_float(row.L)
               + ", \"heart\": " + (row.heart ? format_float(*row.heart) : std::string("null"))
               + ", \"g\": " + json_string(row.g) + ", \"count\": " + std::to_string(row.count)
               + ", \"rhs\": " + format_float(row.rhs) + ", \"ratio\": " + format_float(row.ratio)
               + ", \"flag\": " + (row.flag ? "true" : "false") + "}";
    }
    out += r.rows.empty() ? "]\n" : "\n  ]\n";
    out += "}\n";
    return out;
}

void report_emit(const CountReport& r, ReportFormat fmt, const std::filesystem::path& path)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot open report file " + path.string());
    const std::string text = fmt == ReportFormat::Csv ? to_csv(r) : to_json(r);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f)
        throw std::runtime_error("failed writing report file " + path.string());
}

std::string fnv1a_hex(const std::string& text)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string report_timestamp()
{
    std::time_t t = std::time(nullptr);
    if (const char* e = std::getenv("SOURCE_DATE_EPOCH"))
        t = static_cast<std::time_t>(std::strtoll(e, nullptr, 10));
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace qtheta
