#include "dramlat/profiler.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dramlat/device_model.h"
#include "dramlat/random.h"

namespace dramlat {

std::vector<double> GridAxis::values() const {
    if (!(step > 0.0) || !(max >= min))
        throw std::invalid_argument("GridAxis requires step > 0 and max >= min");
    const auto count = static_cast<std::size_t>(std::llround((max - min) / step)) + 1;
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = min + static_cast<double>(k) * step;
    return out;
}

bool GridAxis::contains(double v) const {
    for (double x : values())
        if (x == v) return true;
    return false;
}

void validate(const TimingGrid& grid, const TimingSet& standard) {
    if (!grid.t_rcd.contains(standard.t_rcd) || !grid.t_ras.contains(standard.t_ras) ||
        !grid.t_wr.contains(standard.t_wr) || !grid.t_rp.contains(standard.t_rp))
        throw std::invalid_argument("TimingGrid must contain the standard timing values");
}

namespace {

// Largest multiple of step_ms (as step count, <= max_steps) at which the
// cell's access succeeds; 0 when it fails even at one step. The outcome is
// monotone in the interval, so binary search applies.
std::uint64_t max_passing_step(const CellParameters& cell, const TimingSet& standard,
                               const OperatingPoint& op, OpKind kind,
                               const ModelConstants& constants, double step_ms,
                               std::uint64_t max_steps) {
    const auto passes = [&](std::uint64_t k) {
        const double interval = static_cast<double>(k) * step_ms;
        TimingSet at = standard;
        at.refresh_interval = interval;
        return access_outcome(cell, at, op, interval, kind, constants) == AccessResult::Success;
    };
    if (!passes(1)) return 0;
    if (passes(max_steps)) return max_steps;
    std::uint64_t lo = 1, hi = max_steps; // passes(lo), !passes(hi)
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        (passes(mid) ? lo : hi) = mid;
    }
    return lo;
}

} // namespace

RetentionProfile sweep_refresh(const Module& module, const TimingSet& standard,
                               const OperatingPoint& op, OpKind kind,
                               const ModelConstants& constants, double step_ms,
                               double max_interval_ms) {
    if (!(step_ms > 0.0)) throw std::invalid_argument("sweep_refresh: step must be > 0");
    if (module.chips.empty()) throw std::invalid_argument("sweep_refresh: empty module");
    const auto max_steps =
        static_cast<std::uint64_t>(std::max(1.0, std::floor(max_interval_ms / step_ms)));

    RetentionProfile profile;
    profile.op_kind = kind;
    profile.temperature = op.temperature;
    profile.sweep_step = step_ms;

    std::uint64_t module_steps = std::numeric_limits<std::uint64_t>::max();
    for (const Chip& chip : module.chips) {
        std::uint64_t chip_steps = std::numeric_limits<std::uint64_t>::max();
        for (const Bank& bank : chip.banks) {
            std::uint64_t bank_steps = std::numeric_limits<std::uint64_t>::max();
            for (const CellParameters& cell : bank.cells) {
                bank_steps = std::min(
                    bank_steps,
                    max_passing_step(cell, standard, op, kind, constants, step_ms, max_steps));
            }
            profile.per_bank.push_back(static_cast<double>(bank_steps) * step_ms);
            chip_steps = std::min(chip_steps, bank_steps);
        }
        profile.per_chip.push_back(static_cast<double>(chip_steps) * step_ms);
        module_steps = std::min(module_steps, chip_steps);
    }
    profile.module_level = static_cast<double>(module_steps) * step_ms;
    return profile;
}

double safe_refresh(const RetentionProfile& retention) {
    if (!(retention.module_level >= retention.sweep_step))
        throw std::runtime_error("safe_refresh: degenerate retention profile");
    return retention.module_level - retention.sweep_step;
}

double latency_sum(const TimingSet& set, OpKind kind) {
    return (kind == OpKind::Read) ? set.t_rcd + set.t_ras + set.t_rp
                                  : set.t_rcd + set.t_wr + set.t_rp;
}

std::vector<TimingSet> sweep_timings(const Module& module, double safe_refresh_ms,
                                     const OperatingPoint& op, OpKind kind,
                                     const TimingGrid& grid, const TimingSet& standard,
                                     const ModelConstants& constants) {
    validate(grid, standard);
    if (!(safe_refresh_ms >= 0.0)) throw std::invalid_argument("sweep_timings: negative interval");

    const std::vector<double> rcds = grid.t_rcd.values();
    const std::vector<double> rps = grid.t_rp.values();
    const std::vector<double> mids = (kind == OpKind::Read) ? grid.t_ras.values() : grid.t_wr.values();

    // Decompose the access gates per cell: the sense requirement depends only
    // on the leaked charge, and the precharge requirement only on the
    // restoration window (t_ras - sense time for reads, t_wr for writes).
    // The grid check then reduces to two threshold comparisons per combo,
    // using the same model functions as access_outcome evaluates directly.
    bool any_unsensable = false;
    double worst_sense = 0.0;
    std::vector<double> worst_precharge(mids.size(), 0.0);
    for (const Chip& chip : module.chips) {
        for (const Bank& bank : chip.banks) {
            for (const CellParameters& cell : bank.cells) {
                const ChargeState leaked =
                    leak(ChargeState{1.0}, cell, safe_refresh_ms, op, constants);
                const std::optional<double> sense = required_sense_time(cell, leaked, constants);
                if (!sense) {
                    any_unsensable = true;
                    break;
                }
                worst_sense = std::max(worst_sense, *sense);
                for (std::size_t i = 0; i < mids.size(); ++i) {
                    const double window =
                        (kind == OpKind::Read) ? std::max(mids[i] - *sense, 0.0) : mids[i];
                    const ChargeState restored = restore(leaked, cell, window);
                    worst_precharge[i] = std::max(
                        worst_precharge[i], required_precharge_time(cell, restored, constants));
                }
            }
            if (any_unsensable) break;
        }
        if (any_unsensable) break;
    }
    if (any_unsensable) return {};

    std::vector<TimingSet> error_free;
    for (double rcd : rcds) {
        if (rcd < worst_sense) continue;
        for (std::size_t i = 0; i < mids.size(); ++i) {
            if (kind == OpKind::Read && mids[i] < rcd) continue; // t_ras >= t_rcd invariant
            for (double rp : rps) {
                if (rp < worst_precharge[i]) continue;
                TimingSet set = standard;
                set.t_rcd = rcd;
                set.t_rp = rp;
                set.refresh_interval = safe_refresh_ms;
                ((kind == OpKind::Read) ? set.t_ras : set.t_wr) = mids[i];
                error_free.push_back(set);
            }
        }
    }
    return error_free;
}

TimingSet minimal_set(const std::vector<TimingSet>& error_free, OpKind kind) {
    if (error_free.empty())
        throw std::runtime_error("minimal_set: no error-free timing combinations");
    const TimingSet* best = &error_free.front();
    double best_sum = latency_sum(*best, kind);
    for (const TimingSet& set : error_free) {
        const double sum = latency_sum(set, kind);
        if (sum < best_sum) { // strict: keeps the lexicographically-first tie
            best_sum = sum;
            best = &set;
        }
    }
    return *best;
}

ModuleProfile profile_module(const Module& module, int module_id, const TimingGrid& grid,
                             const std::vector<double>& temperatures, const TimingSet& standard,
                             const ModelConstants& constants, double refresh_step_ms,
                             double refresh_max_ms) {
    if (temperatures.empty()) throw std::invalid_argument("profile_module: no temperatures");
    validate(grid, standard);

    std::vector<double> temps = temperatures;
    std::sort(temps.begin(), temps.end());

    ModuleProfile profile;
    profile.module_id = module_id;

    // Retention is measured at the worst-case (highest) profiled temperature;
    // the derived safe refresh interval is reused at every temperature.
    const OperatingPoint worst_op{temps.back()};
    profile.retention_read = sweep_refresh(module, standard, worst_op, OpKind::Read, constants,
                                           refresh_step_ms, refresh_max_ms);
    profile.retention_write = sweep_refresh(module, standard, worst_op, OpKind::Write, constants,
                                            refresh_step_ms, refresh_max_ms);
    profile.safe_refresh_read = safe_refresh(profile.retention_read);
    profile.safe_refresh_write = safe_refresh(profile.retention_write);

    for (double t : temps) {
        const OperatingPoint op{t};
        SweepOutcome read;
        read.temperature = t;
        read.error_free = sweep_timings(module, profile.safe_refresh_read, op, OpKind::Read, grid,
                                        standard, constants);
        read.minimal_set = minimal_set(read.error_free, OpKind::Read);
        read.minimal_latency_sum = latency_sum(read.minimal_set, OpKind::Read);
        read.standard_latency_sum = latency_sum(standard, OpKind::Read);
        profile.read_sweeps.push_back(std::move(read));

        SweepOutcome write;
        write.temperature = t;
        write.error_free = sweep_timings(module, profile.safe_refresh_write, op, OpKind::Write,
                                         grid, standard, constants);
        write.minimal_set = minimal_set(write.error_free, OpKind::Write);
        write.minimal_latency_sum = latency_sum(write.minimal_set, OpKind::Write);
        write.standard_latency_sum = latency_sum(standard, OpKind::Write);
        profile.write_sweeps.push_back(std::move(write));
    }
    return profile;
}

std::optional<double> single_parameter_minimum(const std::vector<TimingSet>& error_free,
                                               const TimingSet& standard, char parameter) {
    std::optional<double> best;
    for (const TimingSet& set : error_free) {
        const bool rcd_std = set.t_rcd == standard.t_rcd;
        const bool ras_std = set.t_ras == standard.t_ras;
        const bool wr_std = set.t_wr == standard.t_wr;
        const bool rp_std = set.t_rp == standard.t_rp;
        double candidate;
        bool eligible;
        switch (parameter) {
            case 'c': candidate = set.t_rcd; eligible = ras_std && wr_std && rp_std; break;
            case 'a': candidate = set.t_ras; eligible = rcd_std && wr_std && rp_std; break;
            case 'w': candidate = set.t_wr;  eligible = rcd_std && ras_std && rp_std; break;
            case 'p': candidate = set.t_rp;  eligible = rcd_std && ras_std && wr_std; break;
            default: throw std::invalid_argument("single_parameter_minimum: unknown parameter");
        }
        if (eligible && (!best || candidate < *best)) best = candidate;
    }
    return best;
}

namespace {

const SweepOutcome& sweep_at(const std::vector<SweepOutcome>& sweeps, double temperature) {
    for (const SweepOutcome& s : sweeps)
        if (s.temperature == temperature) return s;
    throw std::invalid_argument("no sweep at requested temperature");
}

double reduction_percent(double standard, double value) {
    return 100.0 * (standard - value) / standard;
}

} // namespace

FleetSummary summarize_fleet(const std::vector<ModuleProfile>& profiles,
                             const TimingSet& standard) {
    if (profiles.empty()) throw std::invalid_argument("summarize_fleet: empty profile list");

    FleetSummary summary;
    const std::size_t n = profiles.size();

    for (const SweepOutcome& sweep : profiles.front().read_sweeps) {
        const double temp = sweep.temperature;
        FleetTemperatureSummary row;
        row.temperature = temp;
        for (const ModuleProfile& p : profiles) {
            const std::vector<TimingSet>& read = sweep_at(p.read_sweeps, temp).error_free;
            const std::vector<TimingSet>& write = sweep_at(p.write_sweeps, temp).error_free;
            // A parameter's fleet value is the smallest grid value that is
            // error-free with everything else standard, for every access
            // kind it gates: t_rcd and t_rp gate both reads and writes.
            const auto rcd_r = single_parameter_minimum(read, standard, 'c');
            const auto rcd_w = single_parameter_minimum(write, standard, 'c');
            const auto ras_r = single_parameter_minimum(read, standard, 'a');
            const auto wr_w = single_parameter_minimum(write, standard, 'w');
            const auto rp_r = single_parameter_minimum(read, standard, 'p');
            const auto rp_w = single_parameter_minimum(write, standard, 'p');
            if (!rcd_r || !rcd_w || !ras_r || !wr_w || !rp_r || !rp_w)
                throw std::runtime_error(
                    "summarize_fleet: a module fails the standard timing set");
            row.mean_reduction_t_rcd += reduction_percent(standard.t_rcd, std::max(*rcd_r, *rcd_w));
            row.mean_reduction_t_ras += reduction_percent(standard.t_ras, *ras_r);
            row.mean_reduction_t_wr += reduction_percent(standard.t_wr, *wr_w);
            row.mean_reduction_t_rp += reduction_percent(standard.t_rp, std::max(*rp_r, *rp_w));
            row.read_latency_sum_reduction +=
                reduction_percent(latency_sum(standard, OpKind::Read),
                                  sweep_at(p.read_sweeps, temp).minimal_latency_sum);
            row.write_latency_sum_reduction +=
                reduction_percent(latency_sum(standard, OpKind::Write),
                                  sweep_at(p.write_sweeps, temp).minimal_latency_sum);
        }
        row.mean_reduction_t_rcd /= static_cast<double>(n);
        row.mean_reduction_t_ras /= static_cast<double>(n);
        row.mean_reduction_t_wr /= static_cast<double>(n);
        row.mean_reduction_t_rp /= static_cast<double>(n);
        row.read_latency_sum_reduction /= static_cast<double>(n);
        row.write_latency_sum_reduction /= static_cast<double>(n);
        summary.per_temperature.push_back(row);
    }

    // Spread diagnostics from read retention: range across modules vs range
    // across all banks of all modules.
    double module_min = std::numeric_limits<double>::infinity(), module_max = 0.0;
    double bank_min = std::numeric_limits<double>::infinity(), bank_max = 0.0;
    for (const ModuleProfile& p : profiles) {
        module_min = std::min(module_min, p.retention_read.module_level);
        module_max = std::max(module_max, p.retention_read.module_level);
        for (double b : p.retention_read.per_bank) {
            bank_min = std::min(bank_min, b);
            bank_max = std::max(bank_max, b);
        }
    }
    summary.module_retention_spread = module_max - module_min;
    summary.bank_retention_spread = bank_max - bank_min;

    // Inter-module variance of the read latency-sum reduction at the lowest
    // profiled temperature.
    const double low_temp = profiles.front().read_sweeps.front().temperature;
    const double std_read_sum = latency_sum(standard, OpKind::Read);
    double mean = 0.0;
    std::vector<double> reductions;
    reductions.reserve(n);
    for (const ModuleProfile& p : profiles) {
        const double r =
            reduction_percent(std_read_sum, sweep_at(p.read_sweeps, low_temp).minimal_latency_sum);
        reductions.push_back(r);
        mean += r;
    }
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double r : reductions) var += (r - mean) * (r - mean);
    summary.latency_sum_reduction_variance = var / static_cast<double>(n);
    return summary;
}

std::vector<TradeoffPoint> refresh_latency_tradeoff(const Module& module,
                                                    const std::vector<double>& intervals_ms,
                                                    const OperatingPoint& op,
                                                    const TimingGrid& grid,
                                                    const TimingSet& standard,
                                                    const ModelConstants& constants) {
    if (intervals_ms.empty())
        throw std::invalid_argument("refresh_latency_tradeoff: empty interval list");
    for (std::size_t i = 0; i < intervals_ms.size(); ++i) {
        if (!(intervals_ms[i] > 0.0) || (i > 0 && !(intervals_ms[i] > intervals_ms[i - 1])))
            throw std::invalid_argument(
                "refresh_latency_tradeoff: intervals must be positive and ascending");
    }
    std::vector<TradeoffPoint> points;
    for (double interval : intervals_ms) {
        TradeoffPoint point;
        point.interval_ms = interval;
        const auto read =
            sweep_timings(module, interval, op, OpKind::Read, grid, standard, constants);
        const auto write =
            sweep_timings(module, interval, op, OpKind::Write, grid, standard, constants);
        if (!read.empty()) point.minimal_read_sum = latency_sum(minimal_set(read, OpKind::Read), OpKind::Read);
        if (!write.empty()) point.minimal_write_sum = latency_sum(minimal_set(write, OpKind::Write), OpKind::Write);
        points.push_back(point);
    }
    return points;
}

RepeatabilityResult repeatability_analysis(const Module& module, const TimingSet& reduced,
                                           const OperatingPoint& op, OpKind kind, int iterations,
                                           double time_since_refresh_ms,
                                           const ModelConstants& constants, double noise_sigma,
                                           std::uint64_t noise_seed) {
    if (iterations < 2) throw std::invalid_argument("repeatability_analysis: iterations must be >= 2");
    ModelConstants noisy = constants;
    noisy.noise_sigma = noise_sigma;

    RepeatabilityResult result;
    std::uint64_t cell_index = 0;
    for (const Chip& chip : module.chips) {
        for (const Bank& bank : chip.banks) {
            for (const CellParameters& cell : bank.cells) {
                int failures = 0;
                for (int it = 0; it < iterations; ++it) {
                    const double draw =
                        normal_draw({noise_seed, cell_index, static_cast<std::uint64_t>(it)});
                    if (access_outcome(cell, reduced, op, time_since_refresh_ms, kind, noisy,
                                       draw) == AccessResult::Error)
                        ++failures;
                }
                if (failures > 0) ++result.cells_failing_at_least_once;
                if (failures == iterations) ++result.cells_failing_always;
                ++cell_index;
            }
        }
    }
    if (result.cells_failing_at_least_once > 0) {
        result.consistent_fraction = static_cast<double>(result.cells_failing_always) /
                                     static_cast<double>(result.cells_failing_at_least_once);
    }
    return result;
}

} // namespace dramlat
