#include "sgb/config.hpp"

#include <fstream>

#include "sgb/errors.hpp"

namespace sgb {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::uint64_t to_u64(const std::string& v, const std::string& key) {
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw ConfigError("expected an unsigned integer for " + key + ", got '" + v + "'");
    }
}

double to_double(const std::string& v, const std::string& key) {
    try {
        return std::stod(v);
    } catch (const std::exception&) {
        throw ConfigError("expected a number for " + key + ", got '" + v + "'");
    }
}

bool to_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("expected true/false for " + key + ", got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= v.size()) {
        const auto comma = v.find(',', pos);
        const std::string item =
            trim(comma == std::string::npos ? v.substr(pos) : v.substr(pos, comma - pos));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

} // namespace

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());

    RunConfig cfg;
    std::string section;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("unterminated section header at line " +
                                  std::to_string(line_no));
            section = trim(line.substr(1, line.size() - 2));
            if (section != "generation" && section != "windowing" &&
                section != "training" && section != "seeds" && section != "grid")
                throw ConfigError("unknown config section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value at line " + std::to_string(line_no));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (section == "generation") {
            ParamRanges& r = cfg.generation.ranges;
            if (key == "n_records") cfg.generation.n_records = to_u64(value, qual);
            else if (key == "fs_hz") cfg.generation.fs_hz = static_cast<std::uint32_t>(to_u64(value, qual));
            else if (key == "fault_fraction") cfg.generation.fault_fraction = to_double(value, qual);
            else if (key == "fault_current_ratio_min") r.fault_current_ratio_min = to_double(value, qual);
            else if (key == "fault_current_ratio_max") r.fault_current_ratio_max = to_double(value, qual);
            else if (key == "dc_offset_tau_min") r.dc_offset_tau_min = to_double(value, qual);
            else if (key == "dc_offset_tau_max") r.dc_offset_tau_max = to_double(value, qual);
            else if (key == "load_magnitude_min") r.load_magnitude_min = to_double(value, qual);
            else if (key == "load_magnitude_max") r.load_magnitude_max = to_double(value, qual);
            else if (key == "line_length_min_km") r.line_length_min_km = to_double(value, qual);
            else if (key == "line_length_max_km") r.line_length_max_km = to_double(value, qual);
            else throw ConfigError("unknown key " + qual);
        } else if (section == "windowing") {
            if (key == "window_length_ms") cfg.windowing.window_length_ms = static_cast<int>(to_u64(value, qual));
            else if (key == "step_ms") cfg.windowing.step_ms = static_cast<int>(to_u64(value, qual));
            else if (key == "trim_margin_ms") cfg.windowing.trim_margin_ms = static_cast<int>(to_u64(value, qual));
            else throw ConfigError("unknown key " + qual);
        } else if (section == "training") {
            if (key == "n_trees") cfg.train.n_trees = static_cast<int>(to_u64(value, qual));
            else if (key == "max_features") cfg.train.max_features = static_cast<std::size_t>(to_u64(value, qual));
            else if (key == "min_samples_leaf") cfg.train.min_samples_leaf = static_cast<int>(to_u64(value, qual));
            else if (key == "max_depth") cfg.train.max_depth = static_cast<int>(to_u64(value, qual));
            else if (key == "bootstrap") cfg.train.bootstrap = to_bool(value, qual);
            else throw ConfigError("unknown key " + qual);
        } else if (section == "seeds") {
            if (key == "data_seed") cfg.seeds.data_seed = to_u64(value, qual);
            else if (key == "fold_seed") cfg.seeds.fold_seed = to_u64(value, qual);
            else if (key == "model_seed") cfg.seeds.model_seed = to_u64(value, qual);
            else if (key == "loss_seed") cfg.seeds.loss_seed = to_u64(value, qual);
            else throw ConfigError("unknown key " + qual);
        } else if (section == "grid") {
            if (key == "jobs") cfg.grid.jobs = static_cast<unsigned>(to_u64(value, qual));
            else if (key == "mode") {
                if (value == "retrain") cfg.grid.mode = ExperimentMode::RetrainDegraded;
                else if (value == "clean-train") cfg.grid.mode = ExperimentMode::TrainCleanTestDegraded;
                else throw ConfigError("mode must be retrain or clean-train");
            } else if (key == "scenarios") cfg.grid.scenario_filter = split_list(value);
            else if (key == "dataset_path") cfg.dataset_path = value;
            else if (key == "output_dir") cfg.output_dir = value;
            else throw ConfigError("unknown key " + qual);
        } else {
            throw ConfigError("key outside any section at line " + std::to_string(line_no));
        }
    }

    cfg.generation.ranges.validate();
    cfg.windowing.validate();
    cfg.train.seed = cfg.seeds.model_seed;
    if (cfg.generation.fault_fraction < 0.0 || cfg.generation.fault_fraction > 1.0)
        throw ConfigError("fault_fraction must lie in [0, 1]");
    return cfg;
}

std::string default_config_text() {
    RunConfig d;
    std::string s;
    s += "[generation]\n";
    s += "n_records = " + std::to_string(d.generation.n_records) + "\n";
    s += "fs_hz = " + std::to_string(d.generation.fs_hz) + "\n";
    s += "fault_fraction = 0.5\n";
    s += "fault_current_ratio_min = 3.5\n";
    s += "fault_current_ratio_max = 12.0\n";
    s += "dc_offset_tau_min = 0.005\n";
    s += "dc_offset_tau_max = 0.015\n";
    s += "load_magnitude_min = 0.80\n";
    s += "load_magnitude_max = 1.25\n";
    s += "line_length_min_km = 60.0\n";
    s += "line_length_max_km = 140.0\n";
    s += "\n[windowing]\n";
    s += "window_length_ms = 20\n";
    s += "step_ms = 5\n";
    s += "trim_margin_ms = 80\n";
    s += "\n[training]\n";
    s += "n_trees = 100\n";
    s += "max_features = 0\n";
    s += "min_samples_leaf = 1\n";
    s += "max_depth = 0\n";
    s += "bootstrap = true\n";
    s += "\n[seeds]\n";
    s += "data_seed = 1001\n";
    s += "fold_seed = 2002\n";
    s += "model_seed = 3003\n";
    s += "loss_seed = 4004\n";
    s += "\n[grid]\n";
    s += "jobs = 0\n";
    s += "mode = retrain\n";
    s += "scenarios =\n";
    return s;
}

bool scenario_matches_filter(const SparsityScenario& sc,
                             const std::vector<std::string>& filter) {
    if (filter.empty()) return true;
    const std::string full = sc.to_string();
    const auto colon = full.find(':');
    const std::string kind = colon == std::string::npos ? full : full.substr(0, colon);
    for (const std::string& f : filter)
        if (f == full || f == kind) return true;
    return false;
}

} // namespace sgb
