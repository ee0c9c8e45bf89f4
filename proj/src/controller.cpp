#include "dramlat/controller.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dramlat/random.h"

namespace dramlat {

TimingTable build_table(const ModuleProfile& profile, const std::vector<double>& bins,
                        const TimingSet& standard) {
    TimingTable table;
    table.fallback = standard;

    std::vector<double> sorted = bins;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1])
            throw std::invalid_argument("build_table: duplicate bin temperature");

    for (double bin : sorted) {
        const SweepOutcome* read = nullptr;
        const SweepOutcome* write = nullptr;
        for (const SweepOutcome& s : profile.read_sweeps)
            if (s.temperature == bin) read = &s;
        for (const SweepOutcome& s : profile.write_sweeps)
            if (s.temperature == bin) write = &s;
        if (!read || !write)
            throw std::invalid_argument("build_table: bin temperature was not profiled");
        table.entries.push_back(TimingTableEntry{bin, read->minimal_set, write->minimal_set});
    }
    return table;
}

SelectedTimings select_timings(const TimingTable& table, const OperatingPoint& current) {
    for (const TimingTableEntry& entry : table.entries) {
        if (current.temperature <= entry.bound)
            return SelectedTimings{entry.read_set, entry.write_set};
    }
    return SelectedTimings{table.fallback, table.fallback};
}

double request_latency(const MemoryRequest& req, const TimingSet& timing,
                       const LatencyModelConstants& constants) {
    if (req.kind == OpKind::Read) {
        switch (req.locality) {
            case Locality::RowHit: return constants.t_cl;
            case Locality::RowMiss: return timing.t_rcd + constants.t_cl;
            case Locality::RowConflict: return timing.t_rp + timing.t_rcd + constants.t_cl;
        }
    } else {
        switch (req.locality) {
            case Locality::RowHit: return constants.t_cwl;
            case Locality::RowMiss: return timing.t_rcd + constants.t_cwl;
            case Locality::RowConflict:
                return timing.t_wr + timing.t_rp + timing.t_rcd + constants.t_cl;
        }
    }
    throw std::invalid_argument("request_latency: invalid request");
}

TraceReport simulate_trace(const std::vector<MemoryRequest>& trace, const TimingTable& table,
                           const std::vector<OperatingPoint>& temperature_series,
                           const LatencyModelConstants& constants) {
    if (trace.empty()) throw std::invalid_argument("simulate_trace: empty trace");
    if (temperature_series.size() != 1 && temperature_series.size() != trace.size())
        throw std::invalid_argument(
            "simulate_trace: temperature series must have length 1 or the trace length");

    TraceReport report;
    report.per_request_baseline.reserve(trace.size());
    report.per_request_adaptive.reserve(trace.size());

    double baseline_sum = 0.0;
    double adaptive_sum = 0.0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const OperatingPoint& op =
            temperature_series[(temperature_series.size() == 1) ? 0 : i];
        const SelectedTimings selected = select_timings(table, op);
        const TimingSet& adaptive_set =
            (trace[i].kind == OpKind::Read) ? selected.read_set : selected.write_set;

        const double baseline = request_latency(trace[i], table.fallback, constants);
        const double adaptive = request_latency(trace[i], adaptive_set, constants);
        report.per_request_baseline.push_back(baseline);
        report.per_request_adaptive.push_back(adaptive);
        baseline_sum += baseline;
        adaptive_sum += adaptive;
    }
    report.mean_latency_baseline = baseline_sum / static_cast<double>(trace.size());
    report.mean_latency_adaptive = adaptive_sum / static_cast<double>(trace.size());
    report.speedup = report.mean_latency_baseline / report.mean_latency_adaptive;
    return report;
}

void validate(const TraceSpec& spec) {
    if (!(spec.hit_ratio >= 0.0 && spec.miss_ratio >= 0.0 && spec.conflict_ratio >= 0.0))
        throw std::invalid_argument("TraceSpec ratios must be non-negative");
    const double sum = spec.hit_ratio + spec.miss_ratio + spec.conflict_ratio;
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("TraceSpec locality ratios must sum to 1");
    if (!(spec.read_fraction >= 0.0 && spec.read_fraction <= 1.0))
        throw std::invalid_argument("TraceSpec.read_fraction must be in [0, 1]");
    if (spec.length < 1) throw std::invalid_argument("TraceSpec.length must be >= 1");
}

std::vector<MemoryRequest> generate_trace(const TraceSpec& spec) {
    validate(spec);
    std::vector<MemoryRequest> trace(spec.length);
    for (std::uint64_t i = 0; i < spec.length; ++i) {
        const double u_loc = to_unit_open(hash_words({spec.seed, i, 0}));
        const double u_kind = to_unit_open(hash_words({spec.seed, i, 1}));
        Locality locality;
        if (u_loc < spec.hit_ratio)
            locality = Locality::RowHit;
        else if (u_loc < spec.hit_ratio + spec.miss_ratio)
            locality = Locality::RowMiss;
        else
            locality = Locality::RowConflict;
        const OpKind kind = (u_kind < spec.read_fraction) ? OpKind::Read : OpKind::Write;
        trace[i] = MemoryRequest{kind, locality};
    }
    return trace;
}

} // namespace dramlat
