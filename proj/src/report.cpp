#include "packsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include "packsim/errors.hpp"

namespace packsim {

RunReport summarize(const Scenario& scenario, const TimeSeries& series) {
    RunReport report;
    report.config_name = scenario.name;
    report.topology = scenario.pack.topology;
    report.charge_time_h = charge_time(series);
    report.toggle_count = cycle_events(series).size();
    if (!series.samples.empty()) report.final_soc = series.samples.back().soc.soc;
    for (const SimState& s : series.samples)
        report.peak_pack_voltage_v = std::max(report.peak_pack_voltage_v, s.v_pack);
    report.warnings = scenario.warnings;
    return report;
}

RunResult run_simulate(const Scenario& scenario) {
    validate(scenario);
    TimeSeries series = simulate(scenario.pack, scenario.charger, scenario.sim);
    RunReport report = summarize(scenario, series);
    return RunResult{scenario, std::move(series), std::move(report)};
}

namespace {

CompareItem compare_one(const Scenario& scenario) {
    CompareItem item;
    item.name = scenario.name;
    try {
        item.result = run_simulate(scenario);
    } catch (const std::exception& e) {
        item.error = e.what();
    }
    return item;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string fixed(double v, int decimals) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

void append_rows(std::string& out, const TimeSeries& series, std::size_t stride,
                 const std::string& prefix) {
    const auto& samples = series.samples;
    stride = std::max<std::size_t>(stride, 1);
    for (std::size_t k = 0; k < samples.size(); ++k) {
        if (k % stride != 0 && k + 1 != samples.size()) continue;
        const SimState& s = samples[k];
        out += prefix;
        out += num(s.t_s) + ',' + mode_label(s) + ',' + num(s.soc.soc) + ',' + num(s.v_pack) +
               ',' + num(s.i_pack) + ',' + num(s.cumulative_ah) + '\n';
    }
}

}  // namespace

std::vector<CompareItem> run_compare(const std::vector<Scenario>& scenarios, bool parallel) {
    std::vector<CompareItem> items;
    items.reserve(scenarios.size());
    if (!parallel) {
        for (const Scenario& s : scenarios) items.push_back(compare_one(s));
        return items;
    }
    std::vector<std::future<CompareItem>> jobs;
    for (const Scenario& s : scenarios)
        jobs.push_back(std::async(std::launch::async, compare_one, std::cref(s)));
    for (auto& job : jobs) items.push_back(job.get());
    return items;
}

std::string mode_label(const SimState& state) {
    if (state.control_region == ControlRegion::idle) return "idle";
    if (state.relay.phase == Phase::discharging) return "discharge";
    return state.control_region == ControlRegion::cv ? "charge_cv" : "charge_cc";
}

std::size_t decimation_stride(double sample_interval_s, double dt_s) {
    const double ratio = std::round(sample_interval_s / dt_s);
    return ratio < 1.0 ? 1 : static_cast<std::size_t>(ratio);
}

static const char* kCsvHeader = "time_s,mode,soc,pack_voltage_v,pack_current_a,cumulative_ah";

std::string time_series_csv(const TimeSeries& series, std::size_t stride) {
    std::string out = std::string(kCsvHeader) + '\n';
    append_rows(out, series, stride, "");
    return out;
}

std::string compare_csv(const std::vector<CompareItem>& items, std::size_t stride) {
    std::string out = std::string("config,") + kCsvHeader + '\n';
    for (const CompareItem& item : items)
        if (item.result) append_rows(out, item.result->series, stride, item.name + ',');
    return out;
}

CsvTable parse_time_series_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw Error("csv: empty input");
    {
        std::istringstream header(line);
        std::string column;
        while (std::getline(header, column, ',')) table.columns.push_back(column);
    }
    if (table.columns.size() != 6) throw Error("csv: expected 6 columns");

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream row(line);
        std::string field;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 6) throw Error("csv: line " + std::to_string(line_no) + " has " +
                                            std::to_string(fields.size()) + " fields");
        try {
            table.rows.push_back({std::stod(fields[0]), fields[1], std::stod(fields[2]),
                                  std::stod(fields[3]), std::stod(fields[4]), std::stod(fields[5])});
        } catch (const std::logic_error&) {
            throw Error("csv: line " + std::to_string(line_no) + " has a non-numeric field");
        }
    }
    return table;
}

// --- SVG ------------------------------------------------------------------------

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", std::abs(v) < 1e-9 ? 0.0 : v);
    return buf;
}

struct Trace {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;  // (hours, value)
};

struct Box {
    double x, y, w, h;
};

void nice_range(double& lo, double& hi) {
    if (hi - lo < 1e-9) {
        const double pad = std::max(std::abs(hi) * 0.05, 1.0);
        lo -= pad;
        hi += pad;
        return;
    }
    const double pad = (hi - lo) * 0.05;
    lo -= pad;
    hi += pad;
}

void draw_panel(std::ostringstream& svg, const Box& box, const std::string& y_label,
                const std::vector<Trace>& traces, double x_max, std::optional<std::pair<double, double>> y_fixed) {
    double y_lo = 0.0, y_hi = 1.0;
    if (y_fixed) {
        y_lo = y_fixed->first;
        y_hi = y_fixed->second;
    } else {
        bool any = false;
        for (const Trace& t : traces)
            for (const auto& [x, y] : t.points) {
                if (!any) y_lo = y_hi = y;
                y_lo = std::min(y_lo, y);
                y_hi = std::max(y_hi, y);
                any = true;
            }
        nice_range(y_lo, y_hi);
    }
    if (x_max <= 0.0) x_max = 1.0;

    auto map_x = [&](double x) { return box.x + box.w * x / x_max; };
    auto map_y = [&](double y) { return box.y + box.h * (1.0 - (y - y_lo) / (y_hi - y_lo)); };

    svg << "<rect x=\"" << fixed(box.x, 1) << "\" y=\"" << fixed(box.y, 1) << "\" width=\""
        << fixed(box.w, 1) << "\" height=\"" << fixed(box.h, 1)
        << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double yv = y_lo + (y_hi - y_lo) * i / 4.0;
        const double py = map_y(yv);
        svg << "<line x1=\"" << fixed(box.x, 1) << "\" y1=\"" << fixed(py, 1) << "\" x2=\""
            << fixed(box.x + box.w, 1) << "\" y2=\"" << fixed(py, 1)
            << "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
        svg << "<text x=\"" << fixed(box.x - 6, 1) << "\" y=\"" << fixed(py + 4, 1)
            << "\" font-size=\"10\" text-anchor=\"end\">" << tick(yv)
            << "</text>\n";
        const double xv = x_max * i / 4.0;
        svg << "<text x=\"" << fixed(map_x(xv), 1) << "\" y=\"" << fixed(box.y + box.h + 14, 1)
            << "\" font-size=\"10\" text-anchor=\"middle\">" << tick(xv)
            << "</text>\n";
    }
    svg << "<text x=\"" << fixed(box.x - 48, 1) << "\" y=\"" << fixed(box.y + box.h / 2, 1)
        << "\" font-size=\"11\" text-anchor=\"middle\" transform=\"rotate(-90 "
        << fixed(box.x - 48, 1) << ' ' << fixed(box.y + box.h / 2, 1) << ")\">"
        << xml_escape(y_label) << "</text>\n";

    for (const Trace& t : traces) {
        svg << "<polyline fill=\"none\" stroke=\"" << t.color
            << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < t.points.size(); ++i) {
            if (i) svg << ' ';
            svg << fixed(map_x(t.points[i].first), 2) << ',' << fixed(map_y(t.points[i].second), 2);
        }
        svg << "\"/>\n";
    }
}

template <class Field>
std::vector<std::pair<double, double>> extract(const TimeSeries& series, std::size_t stride,
                                               Field field) {
    std::vector<std::pair<double, double>> points;
    stride = std::max<std::size_t>(stride, 1);
    for (std::size_t k = 0; k < series.samples.size(); ++k) {
        if (k % stride != 0 && k + 1 != series.samples.size()) continue;
        points.emplace_back(series.samples[k].t_s / 3600.0, field(series.samples[k]));
    }
    return points;
}

struct Run {
    std::string name;
    const TimeSeries* series;
    std::optional<double> charge_time_h;
};

std::string render(const std::string& title, const std::vector<Run>& runs, std::size_t stride,
                   bool bar_chart) {
    const double width = 960.0;
    const double panel_h = 200.0;
    const double left = 80.0;
    const double plot_w = 700.0;
    const int panels = bar_chart ? 4 : 3;
    const double height = 50.0 + panels * (panel_h + 50.0) + (bar_chart ? 30.0 : 0.0);

    std::vector<Trace> soc, volts, amps;
    double x_max = 0.0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const std::string color = kPalette[i % std::size(kPalette)];
        const TimeSeries& ts = *runs[i].series;
        if (!ts.samples.empty()) x_max = std::max(x_max, ts.samples.back().t_s / 3600.0);
        soc.push_back({runs[i].name, color, extract(ts, stride, [](const SimState& s) { return s.soc.soc; })});
        volts.push_back({runs[i].name, color, extract(ts, stride, [](const SimState& s) { return s.v_pack; })});
        amps.push_back({runs[i].name, color, extract(ts, stride, [](const SimState& s) { return s.i_pack; })});
    }

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 0) << "\" height=\""
        << fixed(height, 0) << "\" viewBox=\"0 0 " << fixed(width, 0) << ' ' << fixed(height, 0)
        << "\" font-family=\"sans-serif\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << fixed(width / 2, 1) << "\" y=\"24\" font-size=\"15\" text-anchor=\"middle\">"
        << xml_escape(title) << "</text>\n";

    double y = 50.0;
    draw_panel(svg, {left, y, plot_w, panel_h}, "SOC", soc, x_max, std::pair{0.0, 1.0});
    y += panel_h + 50.0;
    draw_panel(svg, {left, y, plot_w, panel_h}, "Pack voltage (V)", volts, x_max, std::nullopt);
    y += panel_h + 50.0;
    draw_panel(svg, {left, y, plot_w, panel_h}, "Pack current (A)", amps, x_max, std::nullopt);
    svg << "<text x=\"" << fixed(left + plot_w / 2, 1) << "\" y=\"" << fixed(y + panel_h + 32, 1)
        << "\" font-size=\"11\" text-anchor=\"middle\">Time (h)</text>\n";

    // legend
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const double ly = 60.0 + 18.0 * static_cast<double>(i);
        svg << "<line x1=\"" << fixed(left + plot_w + 20, 1) << "\" y1=\"" << fixed(ly, 1)
            << "\" x2=\"" << fixed(left + plot_w + 44, 1) << "\" y2=\"" << fixed(ly, 1)
            << "\" stroke=\"" << kPalette[i % std::size(kPalette)] << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << fixed(left + plot_w + 50, 1) << "\" y=\"" << fixed(ly + 4, 1)
            << "\" font-size=\"11\">" << xml_escape(runs[i].name) << "</text>\n";
    }

    if (bar_chart) {
        y += panel_h + 80.0;
        double t_max = 0.0;
        for (const Run& r : runs)
            if (r.charge_time_h) t_max = std::max(t_max, *r.charge_time_h);
        if (t_max <= 0.0) t_max = 1.0;
        svg << "<text x=\"" << fixed(left + plot_w / 2, 1) << "\" y=\"" << fixed(y - 8, 1)
            << "\" font-size=\"12\" text-anchor=\"middle\">Time to full charge (h)</text>\n";
        const double slot = plot_w / static_cast<double>(std::max<std::size_t>(runs.size(), 1));
        for (std::size_t i = 0; i < runs.size(); ++i) {
            const double cx = left + slot * (static_cast<double>(i) + 0.5);
            const double bw = slot * 0.5;
            std::string label = "not reached";
            if (runs[i].charge_time_h) {
                const double bh = panel_h * *runs[i].charge_time_h / (t_max * 1.1);
                svg << "<rect x=\"" << fixed(cx - bw / 2, 1) << "\" y=\"" << fixed(y + panel_h - bh, 1)
                    << "\" width=\"" << fixed(bw, 1) << "\" height=\"" << fixed(bh, 1)
                    << "\" fill=\"" << kPalette[i % std::size(kPalette)] << "\"/>\n";
                label = fixed(*runs[i].charge_time_h, 2) + " h";
                svg << "<text x=\"" << fixed(cx, 1) << "\" y=\"" << fixed(y + panel_h - bh - 4, 1)
                    << "\" font-size=\"11\" text-anchor=\"middle\">" << label << "</text>\n";
            } else {
                svg << "<text x=\"" << fixed(cx, 1) << "\" y=\"" << fixed(y + panel_h - 4, 1)
                    << "\" font-size=\"11\" text-anchor=\"middle\">" << label << "</text>\n";
            }
            svg << "<text x=\"" << fixed(cx, 1) << "\" y=\"" << fixed(y + panel_h + 16, 1)
                << "\" font-size=\"11\" text-anchor=\"middle\">" << xml_escape(runs[i].name)
                << "</text>\n";
        }
        svg << "<line x1=\"" << fixed(left, 1) << "\" y1=\"" << fixed(y + panel_h, 1) << "\" x2=\""
            << fixed(left + plot_w, 1) << "\" y2=\"" << fixed(y + panel_h, 1)
            << "\" stroke=\"#444\"/>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace

std::string time_series_svg(const std::string& title, const TimeSeries& series, std::size_t stride) {
    return render(title, {Run{title, &series, charge_time(series)}}, stride, false);
}

std::string compare_svg(const std::vector<CompareItem>& items, std::size_t stride) {
    std::vector<Run> runs;
    std::string title = "Pack configuration comparison:";
    for (const CompareItem& item : items) {
        if (!item.result) continue;
        runs.push_back({item.name, &item.result->series, item.result->report.charge_time_h});
        title += ' ' + item.name;
    }
    return render(title, runs, stride, true);
}

// --- tables --------------------------------------------------------------------

namespace {

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) widths[c] = header[c].size();
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size() && c < widths.size(); ++c)
            widths[c] = std::max(widths[c], row[c].size());

    auto line = [&](const std::vector<std::string>& cells) {
        std::string out;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            out += c + 1 == cells.size() ? cells[c] : pad(cells[c], widths[c]) + "  ";
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        return out + '\n';
    };
    std::string out = line(header);
    std::size_t total = 0;
    for (std::size_t w : widths) total += w + 2;
    out += std::string(total > 2 ? total - 2 : total, '-') + '\n';
    for (const auto& row : rows) out += line(row);
    return out;
}

}  // namespace

std::string report_table(const std::vector<CompareItem>& items) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> notes;
    for (const CompareItem& item : items) {
        if (!item.result) {
            rows.push_back({item.name, "-", "-", "-", "-", "error", "-", "-", "-"});
            notes.push_back(item.name + ": error: " + *item.error);
            continue;
        }
        const Scenario& sc = item.result->scenario;
        const RunReport& r = item.result->report;
        rows.push_back({item.name, to_string(sc.pack.topology), std::to_string(sc.pack.total_cells()),
                        fixed(pack_capacity(sc.pack), 2), fixed(pack_nominal_voltage(sc.pack), 1),
                        r.charge_time_h ? fixed(*r.charge_time_h, 2) : "not reached",
                        std::to_string(r.toggle_count), fixed(r.final_soc, 4),
                        fixed(r.peak_pack_voltage_v, 1)});
        for (const std::string& w : r.warnings) notes.push_back(item.name + ": warning: " + w);
    }
    std::string out = render_table({"config", "topology", "cells", "capacity_ah", "nominal_v",
                                    "charge_time_h", "toggles", "final_soc", "peak_v"},
                                   rows);
    for (const std::string& n : notes) out += n + '\n';
    return out;
}

std::string plan_table(const RankedPlan& plan, const std::vector<VerificationRow>& verification) {
    std::vector<std::vector<std::string>> rows;
    std::size_t rank_no = 0;
    for (const PlanEntry& e : plan.entries) {
        ++rank_no;
        std::string simulated = "-";
        std::string delta = "-";
        for (const VerificationRow& v : verification) {
            if (!(v.topology == e.topology)) continue;
            simulated = v.simulated_h ? fixed(*v.simulated_h, 4) : "not reached";
            delta = v.simulated_h ? num(v.relative_delta) : "-";
        }
        rows.push_back({std::to_string(rank_no), to_string(e.topology),
                        e.feasible ? fixed(e.predicted_charge_time_h, 3) : "-",
                        e.feasible ? "yes" : "no", e.infeasibility_reason.value_or(""),
                        fixed(e.charge_current_a, 2), fixed(e.nominal_voltage_v, 1),
                        fixed(e.max_charge_voltage_v, 1), simulated, delta});
    }
    return render_table({"rank", "config", "predicted_h", "feasible", "reason", "current_a",
                         "nominal_v", "max_charge_v", "simulated_h", "rel_delta"},
                        rows);
}

// --- JSON ----------------------------------------------------------------------

nlohmann::json to_json(const RunReport& report) {
    nlohmann::json j;
    j["config"] = report.config_name;
    j["s"] = report.topology.s;
    j["p"] = report.topology.p;
    if (report.charge_time_h)
        j["charge_time_h"] = *report.charge_time_h;
    else
        j["charge_time_h"] = "not reached";
    j["toggle_count"] = report.toggle_count;
    j["final_soc"] = report.final_soc;
    j["peak_pack_voltage_v"] = report.peak_pack_voltage_v;
    j["warnings"] = report.warnings;
    return j;
}

nlohmann::json to_json(const std::vector<CompareItem>& items) {
    nlohmann::json runs = nlohmann::json::array();
    for (const CompareItem& item : items) {
        if (item.result)
            runs.push_back(to_json(item.result->report));
        else
            runs.push_back({{"config", item.name}, {"error", *item.error}});
    }
    return {{"runs", runs}};
}

nlohmann::json to_json(const RankedPlan& plan, const std::vector<VerificationRow>& verification) {
    nlohmann::json entries = nlohmann::json::array();
    for (const PlanEntry& e : plan.entries) {
        nlohmann::json j{{"s", e.topology.s},
                         {"p", e.topology.p},
                         {"feasible", e.feasible},
                         {"charge_current_a", e.charge_current_a},
                         {"nominal_voltage_v", e.nominal_voltage_v},
                         {"max_charge_voltage_v", e.max_charge_voltage_v}};
        if (e.feasible) j["predicted_charge_time_h"] = e.predicted_charge_time_h;
        if (e.infeasibility_reason) j["infeasibility_reason"] = *e.infeasibility_reason;
        entries.push_back(std::move(j));
    }
    nlohmann::json verify = nlohmann::json::array();
    for (const VerificationRow& v : verification) {
        nlohmann::json j{{"s", v.topology.s}, {"p", v.topology.p}, {"predicted_h", v.predicted_h}};
        if (v.simulated_h) {
            j["simulated_h"] = *v.simulated_h;
            j["relative_delta"] = v.relative_delta;
        } else {
            j["simulated_h"] = "not reached";
        }
        verify.push_back(std::move(j));
    }
    return {{"plan", entries}, {"verification", verify}};
}

}  // namespace packsim
