#pragma once

#include "lspacf/infer.hpp"
#include "lspacf/tune.hpp"
#include "lspacf/types.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace lspacf {

/// Reads one numeric column (optional header, '#' comments allowed).
/// Blank lines and unparseable cells raise std::invalid_argument citing the
/// 1-based line number; multi-column files need `column` (1-based).
TimeSeries ingest_csv(const std::string& path, std::optional<Index> column = std::nullopt);

/// Writes content to path atomically (temp file + rename).
void atomic_write(const std::string& path, const std::string& content);

/// Single-column CSV with header `x`; `run` is embedded as a '#' comment.
std::string series_csv(const TimeSeries& x, const std::string& run);

/// Long-format curve CSV with header `t,lag,<value_name>`.
struct CurvePoint {
    double t;
    Index lag;
    double value;
};
std::string curve_csv(const std::vector<CurvePoint>& points, const std::string& value_name,
                      const std::string& run);

std::string pvalue_csv(const std::vector<std::pair<Index, double>>& rows, const std::string& run);

/// One polyline per series; standalone SVG, a pure view of the CSV data.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};
std::string svg_plot(const std::vector<PlotSeries>& series, const std::string& x_label,
                     const std::string& y_label, std::optional<double> hline,
                     const std::string& run);

nlohmann::json test_result_json(const TestResult& r);
nlohmann::json tuning_record_json(const TuningRecord& rec);

}  // namespace lspacf
