#include "dramlat/config.h"

#include <fstream>
#include <sstream>

#include "dramlat/serde.h"

namespace dramlat {

void validate(const RunConfig& config) {
    validate(config.population);
    validate(config.model);
    validate(config.standard_timing);
    validate(config.grid, config.standard_timing);
    validate(config.trace);
    if (config.profile_temperatures.empty())
        throw std::invalid_argument("RunConfig.profile_temperatures must be non-empty");
    for (double t : config.profile_temperatures) validate(OperatingPoint{t});
    for (double b : config.table_bins) {
        bool profiled = false;
        for (double t : config.profile_temperatures) profiled = profiled || (t == b);
        if (!profiled)
            throw std::invalid_argument("RunConfig.table_bins must be profiled temperatures");
    }
    if (!(config.refresh_sweep_step > 0.0) || !(config.refresh_sweep_max >= config.refresh_sweep_step))
        throw std::invalid_argument("RunConfig refresh sweep bounds are invalid");
    if (config.repeatability_iterations < 2)
        throw std::invalid_argument("RunConfig.repeatability_iterations must be >= 2");
    if (config.trace_module_id < 0 ||
        static_cast<std::uint64_t>(config.trace_module_id) >= config.population.module_count)
        throw std::invalid_argument("RunConfig.trace_module_id out of range");
    validate(OperatingPoint{config.trace_temperature});
    if (config.output_dir.empty())
        throw std::invalid_argument("RunConfig.output_dir must be non-empty");
    if (!(config.latency.t_cl > 0.0 && config.latency.t_cwl > 0.0))
        throw std::invalid_argument("RunConfig latency constants must be positive");
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    Json j = Json::parse(in);
    RunConfig config = run_config_from_json(j);
    validate(config);
    return config;
}

std::string config_to_json_text(const RunConfig& config) {
    return to_json(config).dump(2) + "\n";
}

void save_config(const RunConfig& config, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write config file: " + path);
    out << config_to_json_text(config);
}

} // namespace dramlat
