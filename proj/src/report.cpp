#include "gtrans/verify.hpp"

#include "gtrans/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

namespace gtrans {

namespace {

using json = nlohmann::ordered_json;

json number_or_null(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

std::string csv_cell(double v)
{
    if (std::isnan(v))
        return "NaN";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string slug(const std::string& name)
{
    std::string out;
    for (char c : name) {
        const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-';
        if (keep)
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        else if (!out.empty() && out.back() != '_')
            out += '_';
    }
    while (!out.empty() && out.back() == '_')
        out.pop_back();
    return out.empty() ? "table" : out;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << text;
    os.flush();
    if (!os)
        throw std::runtime_error("write to " + path.string() + " failed");
}

} // namespace

void report_emit(const std::vector<VerificationReport>& reports, const std::vector<Table>& tables,
                 const std::string& format, const std::filesystem::path& out_dir,
                 const std::vector<std::pair<std::string, std::string>>& config)
{
    if (format != "csv" && format != "json")
        throw DomainError("report_emit: format must be csv or json, got '" + format + "'");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());

    json table_files = json::array();
    std::map<std::string, int> used;
    for (const Table& t : tables) {
        std::string stem = slug(t.name);
        if (const int k = ++used[stem]; k > 1)
            stem += "_" + std::to_string(k);
        const std::string file = stem + "." + format;
        std::string text;
        if (format == "csv") {
            for (std::size_t j = 0; j < t.columns.size(); ++j)
                text += (j ? "," : "") + t.columns[j];
            text += '\n';
            for (const auto& row : t.rows) {
                for (std::size_t j = 0; j < row.size(); ++j)
                    text += (j ? "," : "") + csv_cell(row[j]);
                text += '\n';
            }
        } else {
            json rows = json::array();
            for (const auto& row : t.rows) {
                json r = json::array();
                for (double v : row)
                    r.push_back(number_or_null(v));
                rows.push_back(std::move(r));
            }
            json doc;
            doc["name"] = t.name;
            doc["columns"] = t.columns;
            doc["rows"] = std::move(rows);
            text = doc.dump(2) + "\n";
        }
        write_file(out_dir / file, text);
        table_files.push_back({{"name", t.name}, {"file", file}});
    }

    json checks = json::array();
    for (const auto& r : reports) {
        json c;
        c["name"] = r.name;
        c["kind"] = r.kind;
        c["control"] = r.control;
        c["grid"] = r.grid;
        c["max_deviation"] = number_or_null(r.max_deviation);
        c["tolerance"] = number_or_null(r.tolerance);
        c["ratio_min"] = number_or_null(r.ratio_min);
        c["ratio_max"] = number_or_null(r.ratio_max);
        c["spread_limit"] = number_or_null(r.spread_limit);
        c["passed"] = r.passed;
        c["as_expected"] = r.as_expected();
        c["detail"] = r.detail;
        checks.push_back(std::move(c));
    }
    json cfg = json::object();
    for (const auto& [k, v] : config)
        cfg[k] = v;

    json summary;
    const int code = exit_code(reports);
    summary["status"] = code == 0 ? "pass" : "fail";
    summary["exit_code"] = code;
    summary["config"] = std::move(cfg);
    summary["checks"] = std::move(checks);
    summary["tables"] = std::move(table_files);
    write_file(out_dir / "summary.json", summary.dump(2) + "\n");
}

} // namespace gtrans
