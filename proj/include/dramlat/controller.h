#pragma once

#include <cstdint>
#include <vector>

#include "dramlat/profiler.h"
#include "dramlat/types.h"

// Memory-controller model: per-module temperature-binned timing tables with
// conservative (round-up) selection, and a stateless trace-driven latency
// comparison of standard vs. adaptive timings.

namespace dramlat {

struct LatencyModelConstants {
    double t_cl = 13.75;  // ns, read column latency; fixed, not adapted
    double t_cwl = 11.25; // ns, write column latency; fixed, not adapted
};

enum class Locality { RowHit, RowMiss, RowConflict };

struct MemoryRequest {
    OpKind kind = OpKind::Read;
    Locality locality = Locality::RowHit;
};

// One temperature bin: the profiled minimal sets for each access kind at the
// bin's upper-bound temperature.
struct TimingTableEntry {
    double bound = 0.0; // deg C, inclusive upper bound
    TimingSet read_set;
    TimingSet write_set;
};

struct TimingTable {
    std::vector<TimingTableEntry> entries; // ascending bounds
    TimingSet fallback;                    // standard set, used above all bins
};

// Timings chosen for one request (one set per access kind).
struct SelectedTimings {
    TimingSet read_set;
    TimingSet write_set;
};

// Builds the table from a module profile: one entry per requested bin
// temperature, using the profile's minimal sets at that temperature.
// Bins outside the profiled temperatures are rejected.
TimingTable build_table(const ModuleProfile& profile, const std::vector<double>& bins,
                        const TimingSet& standard);

// Conservative selection: the entry with the smallest bound >= current
// temperature; the fallback when the temperature exceeds every bound.
SelectedTimings select_timings(const TimingTable& table, const OperatingPoint& current);

// Stateless open-page command accounting per request.
double request_latency(const MemoryRequest& req, const TimingSet& timing,
                       const LatencyModelConstants& constants);

struct TraceReport {
    double mean_latency_baseline = 0.0; // ns
    double mean_latency_adaptive = 0.0; // ns
    double speedup = 1.0;               // baseline mean / adaptive mean
    std::vector<double> per_request_baseline;
    std::vector<double> per_request_adaptive;
};

// Per request: select timings at that request's temperature, accumulate
// request_latency, and compare against the fallback-only baseline.
// `temperature_series` must have length 1 (constant) or `trace.size()`.
TraceReport simulate_trace(const std::vector<MemoryRequest>& trace, const TimingTable& table,
                           const std::vector<OperatingPoint>& temperature_series,
                           const LatencyModelConstants& constants);

struct TraceSpec {
    double hit_ratio = 0.1;
    double miss_ratio = 0.3;
    double conflict_ratio = 0.6;
    double read_fraction = 0.67;
    std::uint64_t length = 100000;
    std::uint64_t seed = 0xD15C0;
};

void validate(const TraceSpec& spec);

// Deterministic multinomial draw per request.
std::vector<MemoryRequest> generate_trace(const TraceSpec& spec);

} // namespace dramlat
