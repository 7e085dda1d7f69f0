#include "lspacf/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lspacf {

namespace {

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    cells.push_back(cur);
    return cells;
}

bool parse_double(const std::string& cell, double& out) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    if (end == begin) return false;
    while (*end == ' ' || *end == '\t') ++end;
    return *end == '\0';
}

std::string format_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

TimeSeries ingest_csv(const std::string& path, std::optional<Index> column) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);

    std::vector<double> values;
    std::string line;
    Index line_no = 0;
    bool seen_data_or_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line[0] == '#') continue;
        std::string stripped = line;
        while (!stripped.empty() && (stripped.back() == '\r' || stripped.back() == ' ' || stripped.back() == '\t'))
            stripped.pop_back();
        if (stripped.empty())
            throw std::invalid_argument(path + ": blank row at line " + std::to_string(line_no));

        const auto cells = split_cells(stripped);
        std::size_t pick = 0;
        if (cells.size() > 1) {
            if (!column)
                throw std::invalid_argument(path + ": " + std::to_string(cells.size()) +
                                            " columns at line " + std::to_string(line_no) +
                                            "; pass --column to choose one");
            if (*column < 1 || static_cast<std::size_t>(*column) > cells.size())
                throw std::invalid_argument(path + ": column selector out of range at line " +
                                            std::to_string(line_no));
            pick = static_cast<std::size_t>(*column - 1);
        }

        double v;
        if (!parse_double(cells[pick], v)) {
            if (!seen_data_or_header) {  // a header row
                seen_data_or_header = true;
                continue;
            }
            throw std::invalid_argument(path + ": unparseable cell '" + cells[pick] + "' at line " +
                                        std::to_string(line_no));
        }
        seen_data_or_header = true;
        if (!std::isfinite(v))
            throw std::invalid_argument(path + ": non-finite value at line " + std::to_string(line_no));
        values.push_back(v);
    }
    if (values.empty()) throw std::invalid_argument(path + ": no numeric data");

    Vector x(static_cast<Index>(values.size()));
    for (Index i = 0; i < x.size(); ++i) x[i] = values[static_cast<std::size_t>(i)];
    return TimeSeries::from_values(std::move(x));
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::invalid_argument("cannot write " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::invalid_argument("cannot rename " + tmp + " to " + path);
}

std::string series_csv(const TimeSeries& x, const std::string& run) {
    std::ostringstream out;
    if (!run.empty()) out << "# run: " << run << "\n";
    out << "x\n";
    for (Index i = 0; i < x.n(); ++i) out << format_g17(x.values[i]) << "\n";
    return out.str();
}

std::string curve_csv(const std::vector<CurvePoint>& points, const std::string& value_name,
                      const std::string& run) {
    std::ostringstream out;
    if (!run.empty()) out << "# run: " << run << "\n";
    out << "t,lag," << value_name << "\n";
    for (const auto& p : points)
        out << format_g17(p.t) << "," << p.lag << "," << format_g17(p.value) << "\n";
    return out.str();
}

std::string pvalue_csv(const std::vector<std::pair<Index, double>>& rows, const std::string& run) {
    std::ostringstream out;
    if (!run.empty()) out << "# run: " << run << "\n";
    out << "lag,p_value\n";
    for (const auto& [lag, p] : rows) out << lag << "," << format_g17(p) << "\n";
    return out.str();
}

std::string svg_plot(const std::vector<PlotSeries>& series, const std::string& x_label,
                     const std::string& y_label, std::optional<double> hline,
                     const std::string& run) {
    constexpr double W = 800, H = 500, ml = 70, mr = 20, mt = 20, mb = 50;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (first) {
                xmin = xmax = s.x[i];
                ymin = ymax = s.y[i];
                first = false;
            }
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (hline) {
        ymin = std::min(ymin, *hline);
        ymax = std::max(ymax, *hline);
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

    std::ostringstream out;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    if (!run.empty()) out << "<!-- run: " << run << " -->\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";

    // axes and ticks
    out << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr << "' y2='" << H - mb
        << "' stroke='black'/>\n";
    out << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << H - mb
        << "' stroke='black'/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = ymin + (ymax - ymin) * i / 5.0;
        char lbl[32];
        out << "<line x1='" << px(xv) << "' y1='" << H - mb << "' x2='" << px(xv) << "' y2='"
            << H - mb + 5 << "' stroke='black'/>\n";
        std::snprintf(lbl, sizeof lbl, "%.3g", xv);
        out << "<text x='" << px(xv) << "' y='" << H - mb + 20
            << "' font-size='12' text-anchor='middle'>" << lbl << "</text>\n";
        out << "<line x1='" << ml - 5 << "' y1='" << py(yv) << "' x2='" << ml << "' y2='" << py(yv)
            << "' stroke='black'/>\n";
        std::snprintf(lbl, sizeof lbl, "%.3g", yv);
        out << "<text x='" << ml - 8 << "' y='" << py(yv) + 4
            << "' font-size='12' text-anchor='end'>" << lbl << "</text>\n";
    }
    out << "<text x='" << (ml + W - mr) / 2 << "' y='" << H - 10
        << "' font-size='14' text-anchor='middle'>" << x_label << "</text>\n";
    out << "<text x='15' y='" << (mt + H - mb) / 2
        << "' font-size='14' text-anchor='middle' transform='rotate(-90 15 " << (mt + H - mb) / 2
        << ")'>" << y_label << "</text>\n";

    if (hline)
        out << "<line x1='" << ml << "' y1='" << py(*hline) << "' x2='" << W - mr << "' y2='"
            << py(*hline) << "' stroke='gray' stroke-dasharray='6 4'/>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& ser = series[s];
        const char* color = palette[s % 10];
        out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
        for (std::size_t i = 0; i < ser.x.size(); ++i)
            out << px(ser.x[i]) << "," << py(ser.y[i]) << " ";
        out << "'/>\n";
        if (!ser.label.empty())
            out << "<text x='" << W - mr - 100 << "' y='" << mt + 16 * (s + 1)
                << "' font-size='12' fill='" << color << "'>" << ser.label << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

nlohmann::json test_result_json(const TestResult& r) {
    return nlohmann::json{{"kind", to_string(r.kind)},
                          {"lag_or_h", r.lag_or_h},
                          {"T", r.T},
                          {"nT", r.nT},
                          {"p_value", r.p_value},
                          {"reject", r.reject},
                          {"alpha", r.alpha},
                          {"B", r.B},
                          {"c", r.c},
                          {"m", r.m},
                          {"basis", to_string(r.basis)},
                          {"seed", r.seed},
                          {"h_capped", r.h_capped}};
}

nlohmann::json tuning_record_json(const TuningRecord& rec) {
    nlohmann::json j{{"c", rec.c}, {"m", rec.m}, {"h", rec.h}, {"seed", rec.seed}};
    j["c_grid"] = rec.c_grid;
    j["cv_mse"] = rec.cv_mse;
    j["m_grid"] = rec.m_grid;
    j["se_profile"] = rec.se_profile;
    return j;
}

}  // namespace lspacf
