#pragma once
// Report emission: RFC-4180 CSV (UTF-8, LF endings, 17 significant digits via
// to_chars) and JSON mirrors. Timestamps appear only in filenames, never in
// file contents, so reruns with the same seed are byte-identical.

#include <cstdint>
#include <string>
#include <vector>

#include "frihls/hls.hpp"
#include "frihls/subordinator.hpp"

namespace frihls {

// 17 significant digits, general format; "nan"/"inf" spelled out.
std::string format_double(double v);

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string dump() const; // header + rows, LF endings, RFC-4180 quoting
};

struct McRow {
    std::uint64_t seed = 0;
    int d = 1;
    double a = 0.0;
    int M = 0;
    std::int64_t N = 0;
    double alpha = 0.0;
    std::string statistic;
    double value = 0.0;
    double std_error = 0.0;
};

// Columns exactly: seed, d, a, M, N, alpha, statistic, value, std_error.
Csv mc_csv(const std::vector<McRow>& rows);

// Columns exactly: beta, d, t, r, q_value, comparison_value, ratio.
Csv fit_csv(const std::vector<FitRow>& rows);

// Generic check table: check, params, value, reference, ok.
struct CheckRow {
    std::string check;
    std::string params; // "k=v k=v" detail string
    double value = 0.0;
    double reference = 0.0;
    bool ok = false;
};

Csv check_csv(const std::vector<CheckRow>& rows);

// One row per entry: d, alpha, p, q, f_id, method, norm_f_p, norm_If_q,
// ratio, ok, error.
Csv hls_csv(const HlsReport& rep);

// Nested JSON document with "schema": "hls-report/1".
std::string hls_json(const HlsReport& rep, bool truncated = false);

// Column-keyed JSON mirror of a CSV table: {"schema": <schema>, "truncated":
// bool, "rows": [{col: value}]}. Cells that read back as numbers are emitted
// as numbers.
std::string csv_json(const std::string& schema, const Csv& table, bool truncated);

std::string timestamp_utc_compact();                  // YYYYMMDDTHHMMSSZ
std::string report_filename(const std::string& command, std::uint64_t seed,
                            const std::string& timestamp, const std::string& ext);

void write_text_file(const std::string& path, const std::string& content);

} // namespace frihls
