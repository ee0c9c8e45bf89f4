#pragma once

#include <optional>
#include <vector>

#include "dramlat/population.h"
#include "dramlat/types.h"

// Profiling methodology: sweep the refresh interval at the worst-case
// temperature to find each module's retention ceiling, back off one sweep
// step to get a safe refresh interval, then exhaustively sweep timing-
// parameter combinations at that interval for both evaluation temperatures.

namespace dramlat {

struct GridAxis {
    double min = 0.0;
    double max = 0.0;
    double step = 1.0;

    std::vector<double> values() const;
    bool contains(double v) const;
};

// Sweep grid for the four timing parameters. Defaults bracket the standard
// DDR3-class values.
struct TimingGrid {
    GridAxis t_rcd{5.0, 15.0, 1.25};
    GridAxis t_ras{17.5, 37.5, 2.5};
    GridAxis t_wr{5.0, 17.5, 1.25};
    GridAxis t_rp{5.0, 15.0, 1.25};
};

// Throws unless every axis is well-formed and contains the corresponding
// standard value.
void validate(const TimingGrid& grid, const TimingSet& standard);

// Maximum error-free refresh interval per bank, chip, and module, all as
// multiples of sweep_step. 0 marks a degenerate scope (fails even at one
// step).
struct RetentionProfile {
    std::vector<double> per_bank;   // bank-major: chip0 banks, chip1 banks, ...
    std::vector<double> per_chip;
    double module_level = 0.0;
    OpKind op_kind = OpKind::Read;
    double temperature = 85.0;
    double sweep_step = 8.0;
};

// Error-free timing combinations for one (temperature, kind) sweep, in grid
// lexicographic order, plus the latency-sum-minimal member.
struct SweepOutcome {
    double temperature = 0.0;
    std::vector<TimingSet> error_free;
    TimingSet minimal_set;
    double minimal_latency_sum = 0.0;
    double standard_latency_sum = 0.0;
};

struct ModuleProfile {
    int module_id = 0;
    RetentionProfile retention_read;
    RetentionProfile retention_write;
    double safe_refresh_read = 0.0;  // ms
    double safe_refresh_write = 0.0; // ms
    std::vector<SweepOutcome> read_sweeps;  // one per profiled temperature, ascending
    std::vector<SweepOutcome> write_sweeps;
};

// Fleet-level reduction statistics at one temperature. Per-parameter values
// are single-parameter minima (the smallest grid value of that parameter
// that is error-free with every other parameter held at standard), averaged
// over modules; latency-sum reductions come from the joint minimal sets.
struct FleetTemperatureSummary {
    double temperature = 0.0;
    double mean_reduction_t_rcd = 0.0; // percent
    double mean_reduction_t_ras = 0.0;
    double mean_reduction_t_wr = 0.0;
    double mean_reduction_t_rp = 0.0;
    double read_latency_sum_reduction = 0.0;  // percent, mean over modules
    double write_latency_sum_reduction = 0.0; // percent
};

struct FleetSummary {
    std::vector<FleetTemperatureSummary> per_temperature; // ascending temperature
    // Spread diagnostics from the read retention profiles (max - min, ms).
    double module_retention_spread = 0.0;
    double bank_retention_spread = 0.0;
    double latency_sum_reduction_variance = 0.0; // across modules, 55C read, percent^2
};

// Largest multiple of `step_ms` (up to `max_interval_ms`) at which every
// sampled cell in each scope completes an error-free access with standard
// timings; per-bank/per-chip/module hierarchy. Noise disabled.
RetentionProfile sweep_refresh(const Module& module, const TimingSet& standard,
                               const OperatingPoint& op, OpKind kind,
                               const ModelConstants& constants, double step_ms = 8.0,
                               double max_interval_ms = 512.0);

// Retention ceiling minus one sweep step. Throws on degenerate profiles.
double safe_refresh(const RetentionProfile& retention);

// Evaluates every grid combination for the relevant parameters (read:
// t_rcd/t_ras/t_rp with t_wr standard; write: t_rcd/t_wr/t_rp with t_ras
// standard) for every sampled cell at time_since_refresh = safe_refresh_ms.
// Returns the error-free subset in grid lexicographic order. Noise disabled.
std::vector<TimingSet> sweep_timings(const Module& module, double safe_refresh_ms,
                                     const OperatingPoint& op, OpKind kind,
                                     const TimingGrid& grid, const TimingSet& standard,
                                     const ModelConstants& constants);

// Latency sum relevant to `kind`: t_rcd + t_ras + t_rp for reads,
// t_rcd + t_wr + t_rp for writes.
double latency_sum(const TimingSet& set, OpKind kind);

// The latency-sum-minimal member of `error_free`; ties resolved
// lexicographically by (t_rcd, t_ras or t_wr, t_rp). Throws if empty.
TimingSet minimal_set(const std::vector<TimingSet>& error_free, OpKind kind);

// Full profile of one module: refresh sweep (at the highest profiled
// temperature) -> safe refresh -> per-kind timing sweeps at every profiled
// temperature.
ModuleProfile profile_module(const Module& module, int module_id, const TimingGrid& grid,
                             const std::vector<double>& temperatures, const TimingSet& standard,
                             const ModelConstants& constants, double refresh_step_ms = 8.0,
                             double refresh_max_ms = 512.0);

// Smallest error-free value of one parameter with all others standard, from
// a sweep's error-free set. Returns nullopt if even the standard value is
// absent (degenerate sweep).
std::optional<double> single_parameter_minimum(const std::vector<TimingSet>& error_free,
                                               const TimingSet& standard, char parameter);

FleetSummary summarize_fleet(const std::vector<ModuleProfile>& profiles,
                             const TimingSet& standard);

// Minimal read/write latency sums when the module is profiled as if the time
// since refresh were each given interval. nullopt marks intervals with no
// error-free combination. Non-decreasing in the interval.
struct TradeoffPoint {
    double interval_ms = 0.0;
    std::optional<double> minimal_read_sum;
    std::optional<double> minimal_write_sum;
};

std::vector<TradeoffPoint> refresh_latency_tradeoff(const Module& module,
                                                    const std::vector<double>& intervals_ms,
                                                    const OperatingPoint& op,
                                                    const TimingGrid& grid,
                                                    const TimingSet& standard,
                                                    const ModelConstants& constants);

// Repeated noisy accesses for every sampled cell of the module. Among cells
// that fail at least once, `consistent_fraction` is the share that fail in
// every iteration; it is empty when no cell ever fails.
struct RepeatabilityResult {
    int cells_failing_at_least_once = 0;
    int cells_failing_always = 0;
    std::optional<double> consistent_fraction;
};

RepeatabilityResult repeatability_analysis(const Module& module, const TimingSet& reduced,
                                           const OperatingPoint& op, OpKind kind, int iterations,
                                           double time_since_refresh_ms,
                                           const ModelConstants& constants, double noise_sigma,
                                           std::uint64_t noise_seed);

} // namespace dramlat
