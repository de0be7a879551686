#include "frihls/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "frihls/errors.hpp"

namespace frihls {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

std::string csv_escape(const std::string& s) {
    bool needs = s.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

} // namespace

std::string Csv::dump() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(header[i]);
    }
    out += '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw PreconditionError("Csv::dump: row width does not match the header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(row[i]);
        }
        out += '\n';
    }
    return out;
}

Csv mc_csv(const std::vector<McRow>& rows) {
    Csv t;
    t.header = {"seed", "d", "a", "M", "N", "alpha", "statistic", "value", "std_error"};
    for (const auto& r : rows)
        t.rows.push_back({std::to_string(r.seed), std::to_string(r.d), format_double(r.a),
                          std::to_string(r.M), std::to_string(r.N), format_double(r.alpha),
                          r.statistic, format_double(r.value), format_double(r.std_error)});
    return t;
}

Csv fit_csv(const std::vector<FitRow>& rows) {
    Csv t;
    t.header = {"beta", "d", "t", "r", "q_value", "comparison_value", "ratio"};
    for (const auto& r : rows)
        t.rows.push_back({format_double(r.beta), std::to_string(r.d), format_double(r.t),
                          format_double(r.r), format_double(r.q_value),
                          format_double(r.comparison_value), format_double(r.ratio)});
    return t;
}

Csv check_csv(const std::vector<CheckRow>& rows) {
    Csv t;
    t.header = {"check", "params", "value", "reference", "ok"};
    for (const auto& r : rows)
        t.rows.push_back({r.check, r.params, format_double(r.value),
                          format_double(r.reference), r.ok ? "true" : "false"});
    return t;
}

Csv hls_csv(const HlsReport& rep) {
    Csv t;
    t.header = {"d",        "alpha",    "p",     "q",  "f_id", "method",
                "norm_f_p", "norm_If_q", "ratio", "ok", "error"};
    for (const auto& e : rep.entries)
        t.rows.push_back({std::to_string(e.d), format_double(e.alpha), format_double(e.p),
                          format_double(e.q), e.f_id, e.method, format_double(e.norm_f_p),
                          format_double(e.norm_If_q), format_double(e.ratio),
                          e.ok ? "true" : "false", e.error});
    return t;
}

std::string hls_json(const HlsReport& rep, bool truncated) {
    json doc;
    doc["schema"] = "hls-report/1";
    doc["truncated"] = truncated;
    doc["entries"] = json::array();
    for (const auto& e : rep.entries) {
        json je;
        je["d"] = e.d;
        je["alpha"] = e.alpha;
        je["p"] = e.p;
        je["q"] = e.q;
        je["f_id"] = e.f_id;
        je["method"] = e.method;
        je["norm_f_p"] = e.norm_f_p;
        je["norm_If_q"] = e.norm_If_q;
        je["ratio"] = e.ratio;
        je["ok"] = e.ok;
        je["error"] = e.error;
        doc["entries"].push_back(je);
    }
    doc["constants"] = json::array();
    for (const auto& c : rep.cells) {
        json jc;
        jc["d"] = c.d;
        jc["alpha"] = c.alpha;
        jc["p"] = c.p;
        jc["c_empirical"] = c.c_empirical;
        jc["doob_bound"] = c.doob_bound;
        jc["p_star"] = c.p_star;
        doc["constants"].push_back(jc);
    }
    json sup;
    sup["maximal_d_p"] = rep.supplied.maximal_d_p;
    sup["bg_ratio"] = json::array();
    for (const auto& [q, r] : rep.supplied.bg_ratio) sup["bg_ratio"].push_back({q, r});
    doc["supplied"] = sup;
    return doc.dump(2) + "\n";
}

std::string csv_json(const std::string& schema, const Csv& table, bool truncated) {
    json doc;
    doc["schema"] = schema;
    doc["truncated"] = truncated;
    doc["rows"] = json::array();
    for (const auto& row : table.rows) {
        json jr;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const std::string& cell = row[i];
            double v;
            auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec == std::errc() && res.ptr == cell.data() + cell.size() && !cell.empty())
                jr[table.header[i]] = v;
            else if (cell == "true" || cell == "false")
                jr[table.header[i]] = (cell == "true");
            else
                jr[table.header[i]] = cell;
        }
        doc["rows"].push_back(jr);
    }
    return doc.dump(2) + "\n";
}

std::string timestamp_utc_compact() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d%02d%02dT%02d%02d%02dZ", (tm.tm_year + 1900) % 10000,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

std::string report_filename(const std::string& command, std::uint64_t seed,
                            const std::string& timestamp, const std::string& ext) {
    return command + "-" + std::to_string(seed) + "-" + timestamp + "." + ext;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PreconditionError("write_text_file: cannot open " + path);
    out.write(content.data(), std::streamsize(content.size()));
    if (!out) throw PreconditionError("write_text_file: short write to " + path);
}

} // namespace frihls
