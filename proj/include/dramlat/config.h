#pragma once

#include <string>
#include <vector>

#include "dramlat/controller.h"
#include "dramlat/population.h"
#include "dramlat/profiler.h"
#include "dramlat/types.h"

// A full run is a pure function of RunConfig: the same config (and worker
// count notwithstanding) always produces byte-identical outputs.

namespace dramlat {

struct RunConfig {
    PopulationSpec population;
    ModelConstants model;
    TimingGrid grid;
    TimingSet standard_timing;
    LatencyModelConstants latency;
    TraceSpec trace;
    std::vector<double> profile_temperatures{55.0, 85.0};
    std::vector<double> table_bins{55.0, 85.0};
    double refresh_sweep_step = 8.0;   // ms
    double refresh_sweep_max = 512.0;  // ms
    std::vector<double> tradeoff_intervals{32.0, 64.0, 96.0, 128.0, 160.0, 192.0};
    int repeatability_iterations = 10;
    int trace_module_id = 0;           // module whose table drives the trace simulation
    double trace_temperature = 55.0;   // constant temperature of the simulated trace
    std::string output_dir = "out";
};

void validate(const RunConfig& config);

RunConfig load_config(const std::string& path);
void save_config(const RunConfig& config, const std::string& path);
std::string config_to_json_text(const RunConfig& config);

} // namespace dramlat
