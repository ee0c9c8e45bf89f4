#include "dramlat/device_model.h"

#include <algorithm>
#include <cmath>

namespace dramlat {

double leakage_time_constant(const CellParameters& cell, const OperatingPoint& op,
                             const ModelConstants& constants) {
    const double exponent =
        -(op.temperature - constants.reference_temperature) / constants.temperature_doubling_interval;
    return cell.leakage_time_constant_ref * std::exp2(exponent);
}

ChargeState leak(ChargeState state, const CellParameters& cell, double elapsed_ms,
                 const OperatingPoint& op, const ModelConstants& constants) {
    const double tau = leakage_time_constant(cell, op, constants);
    return ChargeState{state.charge * std::exp(-elapsed_ms / tau)};
}

std::optional<double> required_sense_time(const CellParameters& cell, ChargeState initial,
                                          const ModelConstants& constants) {
    const double effective = initial.charge * cell.charge_capacity;
    if (effective < constants.min_correct_charge) return std::nullopt;
    // Hyperbolic slowdown toward the correctness floor, normalized so that a
    // fully charged nominal cell needs exactly sense_base_time.
    const double margin = constants.sense_floor_margin;
    const double nominal_span = 1.0 - constants.min_correct_charge + margin;
    const double span = effective - constants.min_correct_charge + margin;
    const double fill_ratio = cell.fill_time_constant / constants.nominal_fill_time_constant;
    return constants.sense_base_time * fill_ratio * nominal_span / span;
}

ChargeState restore(ChargeState state, const CellParameters& cell, double duration_ns) {
    const double q = 1.0 - (1.0 - state.charge) * std::exp(-duration_ns / cell.fill_time_constant);
    return ChargeState{std::clamp(q, 0.0, 1.0)};
}

double required_precharge_time(const CellParameters& cell, ChargeState post_access,
                               const ModelConstants& constants) {
    const double effective = post_access.charge * cell.charge_capacity;
    // Linear ramp in effective charge: 1 at the correctness floor, down to
    // precharge_floor_ratio at the cell's full charge.
    const double span = cell.charge_capacity - constants.min_correct_charge;
    double x = (effective - constants.min_correct_charge) / span;
    x = std::clamp(x, 0.0, 1.0);
    const double h = 1.0 - (1.0 - constants.precharge_floor_ratio) * x;
    return constants.precharge_base_time * h;
}

AccessResult access_outcome(const CellParameters& cell, const TimingSet& timing,
                            const OperatingPoint& op, double time_since_refresh_ms,
                            OpKind kind, const ModelConstants& constants,
                            std::optional<double> noise_draw) {
    ChargeState state = leak(ChargeState{1.0}, cell, time_since_refresh_ms, op, constants);
    if (noise_draw && constants.noise_sigma > 0.0) {
        state.charge = std::clamp(state.charge + *noise_draw * constants.noise_sigma, 0.0, 1.0);
    }

    const std::optional<double> sense = required_sense_time(cell, state, constants);
    if (!sense || *sense > timing.t_rcd) return AccessResult::Error;

    const double restore_window = (kind == OpKind::Read) ? timing.t_ras - *sense : timing.t_wr;
    const ChargeState restored = restore(state, cell, std::max(restore_window, 0.0));

    if (required_precharge_time(cell, restored, constants) > timing.t_rp) return AccessResult::Error;
    return AccessResult::Success;
}

double retention_limit(const CellParameters& cell, const TimingSet& timing,
                       const OperatingPoint& op, OpKind kind, const ModelConstants& constants,
                       double upper_ms, double tolerance_ms) {
    const auto passes = [&](double t) {
        TimingSet at = timing;
        at.refresh_interval = std::max(t, timing.refresh_interval);
        return access_outcome(cell, at, op, t, kind, constants) == AccessResult::Success;
    };
    if (!passes(0.0)) return 0.0;
    if (passes(upper_ms)) return upper_ms;
    double lo = 0.0, hi = upper_ms;
    while (hi - lo > tolerance_ms) {
        const double mid = 0.5 * (lo + hi);
        (passes(mid) ? lo : hi) = mid;
    }
    return lo;
}

double worst_kind_retention(const CellParameters& cell, const TimingSet& timing,
                            const OperatingPoint& op, const ModelConstants& constants,
                            double upper_ms) {
    return std::min(retention_limit(cell, timing, op, OpKind::Read, constants, upper_ms),
                    retention_limit(cell, timing, op, OpKind::Write, constants, upper_ms));
}

} // namespace dramlat
