#include "sgb/reports.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "sgb/errors.hpp"

namespace sgb {

namespace {

constexpr int kWindowsMs[5] = {10, 20, 30, 40, 50};
constexpr int kDurationsMs[9] = {5, 10, 15, 20, 25, 30, 35, 40, 45};

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

const char* task_name(Task t) { return t == Task::FD ? "fd" : "fli"; }

std::string scenario_kind_name(const SparsityScenario& sc) {
    const std::string full = sc.to_string();
    const auto colon = full.find(':');
    return colon == std::string::npos ? full : full.substr(0, colon);
}

std::string scenario_param(const SparsityScenario& sc) {
    const std::string full = sc.to_string();
    const auto colon = full.find(':');
    return colon == std::string::npos ? "" : full.substr(colon + 1);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("write failure: " + path.string());
}

} // namespace

std::string results_csv(const std::vector<ExperimentResult>& results) {
    std::string out =
        "task,window_ms,scenario,param,f1_mean,f1_std,change_pct,"
        "n_windows_train,n_windows_test\n";
    for (const ExperimentResult& r : results) {
        out += task_name(r.spec.task);
        out += ',' + std::to_string(r.spec.window_length_ms);
        out += ',' + scenario_kind_name(r.spec.scenario);
        out += ',' + scenario_param(r.spec.scenario);
        out += ',' + fmt("%.6f", r.f1_mean);
        out += ',' + fmt("%.6f", r.f1_std);
        out += ',' + fmt("%.2f", r.relative_change_pct);
        out += ',' + std::to_string(r.n_windows_train);
        out += ',' + std::to_string(r.n_windows_test);
        out += '\n';
    }
    return out;
}

void write_results_csv(const std::filesystem::path& path,
                       const std::vector<ExperimentResult>& results) {
    write_text(path, results_csv(results));
}

void write_timings_csv(const std::filesystem::path& path,
                       const std::vector<ExperimentResult>& results) {
    std::string out = "task,window_ms,scenario,param,wall_ms\n";
    for (const ExperimentResult& r : results) {
        out += task_name(r.spec.task);
        out += ',' + std::to_string(r.spec.window_length_ms);
        out += ',' + scenario_kind_name(r.spec.scenario);
        out += ',' + scenario_param(r.spec.scenario);
        out += ',' + fmt("%.1f", r.wall_ms);
        out += '\n';
    }
    write_text(path, out);
}

namespace {

/// f1 for (task, window, commloss:duration); negative when absent.
double heatmap_cell(const std::vector<ExperimentResult>& results, Task task,
                    int window_ms, int duration_ms) {
    for (const ExperimentResult& r : results) {
        if (r.spec.task != task || r.spec.window_length_ms != window_ms) continue;
        if (r.spec.scenario.kind != ScenarioKind::CommLoss) continue;
        if (r.spec.scenario.param != duration_ms) continue;
        return r.f1_mean;
    }
    return -1.0;
}

} // namespace

std::string heatmap_csv(const std::vector<ExperimentResult>& results, Task task) {
    std::string out = "window_ms";
    for (int d : kDurationsMs) out += ',' + std::to_string(d);
    out += '\n';
    for (int w : kWindowsMs) {
        out += std::to_string(w);
        for (int d : kDurationsMs) {
            const double f1 = heatmap_cell(results, task, w, d);
            out += ',';
            if (f1 >= 0.0) out += fmt("%.6f", f1);
        }
        out += '\n';
    }
    return out;
}

void write_heatmap_csv(const std::filesystem::path& path,
                       const std::vector<ExperimentResult>& results, Task task) {
    write_text(path, heatmap_csv(results, task));
}

namespace {

/// Fixed ramp: F1 0.3 maps to deep red, 1.0 to deep green, linear with a
/// yellow midpoint; values outside the range clamp.
std::string ramp_color(double f1) {
    double t = (f1 - 0.3) / 0.7;
    t = std::clamp(t, 0.0, 1.0);
    const int lo[3] = {215, 48, 39};
    const int mid[3] = {254, 224, 144};
    const int hi[3] = {26, 152, 80};
    int rgb[3];
    for (int i = 0; i < 3; ++i) {
        rgb[i] = t < 0.5
                     ? static_cast<int>(lo[i] + (mid[i] - lo[i]) * (t / 0.5))
                     : static_cast<int>(mid[i] + (hi[i] - mid[i]) * ((t - 0.5) / 0.5));
    }
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
    return buf;
}

} // namespace

void write_heatmap_svg(const std::filesystem::path& path,
                       const std::vector<ExperimentResult>& results, Task task) {
    constexpr int cell = 64, pad_left = 110, pad_top = 70, pad_bottom = 20;
    const int width = pad_left + 9 * cell + 20;
    const int height = pad_top + 5 * cell + pad_bottom;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(width) + "\" height=\"" + std::to_string(height) + "\">\n";
    svg += "<style>text{font-family:sans-serif;font-size:13px;}</style>\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + std::to_string(pad_left) + "\" y=\"24\" font-size=\"16\">" +
           std::string(task == Task::FD ? "Fault detection" : "Fault line identification") +
           " F1 under communication loss</text>\n";
    svg += "<text x=\"" + std::to_string(pad_left) +
           "\" y=\"44\">loss duration (ms)</text>\n";

    for (int col = 0; col < 9; ++col) {
        svg += "<text x=\"" + std::to_string(pad_left + col * cell + cell / 2 - 8) +
               "\" y=\"" + std::to_string(pad_top - 8) + "\">" +
               std::to_string(kDurationsMs[col]) + "</text>\n";
    }
    for (int row = 0; row < 5; ++row) {
        const int y = pad_top + row * cell;
        svg += "<text x=\"8\" y=\"" + std::to_string(y + cell / 2 + 4) + "\">window " +
               std::to_string(kWindowsMs[row]) + " ms</text>\n";
        for (int col = 0; col < 9; ++col) {
            const int x = pad_left + col * cell;
            const double f1 = heatmap_cell(results, task, kWindowsMs[row], kDurationsMs[col]);
            if (f1 < 0.0) {
                svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
                       "\" width=\"" + std::to_string(cell) + "\" height=\"" +
                       std::to_string(cell) + "\" fill=\"#e8e8e8\" stroke=\"#bbb\"/>\n";
                continue;
            }
            svg += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
                   "\" width=\"" + std::to_string(cell) + "\" height=\"" +
                   std::to_string(cell) + "\" fill=\"" + ramp_color(f1) +
                   "\" stroke=\"#666\"/>\n";
            svg += "<text x=\"" + std::to_string(x + 10) + "\" y=\"" +
                   std::to_string(y + cell / 2 + 4) + "\">" + fmt("%.3f", f1) +
                   "</text>\n";
        }
    }
    svg += "</svg>\n";
    write_text(path, svg);
}

} // namespace sgb
