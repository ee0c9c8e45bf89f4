#pragma once

#include <optional>

#include "dramlat/types.h"

// Closed-form charge/latency model of a DRAM cell. All functions are pure;
// charge trajectories follow exponential RC dynamics, with temperature
// entering through the leakage time constant.

namespace dramlat {

// Leakage time constant of `cell` at the given temperature, in ms. Halves
// every temperature_doubling_interval degrees above reference_temperature.
double leakage_time_constant(const CellParameters& cell, const OperatingPoint& op,
                             const ModelConstants& constants);

// Exponential charge decay over `elapsed_ms`.
ChargeState leak(ChargeState state, const CellParameters& cell, double elapsed_ms,
                 const OperatingPoint& op, const ModelConstants& constants);

// Minimum t_rcd (ns) that senses the cell correctly from the given charge
// state, or nullopt when the stored charge is below the correctness floor
// (the data is lost). Decreasing in charge, increasing in fill_time_constant.
std::optional<double> required_sense_time(const CellParameters& cell, ChargeState initial,
                                          const ModelConstants& constants);

// Exponential recharge toward full over `duration_ns`.
ChargeState restore(ChargeState state, const CellParameters& cell, double duration_ns);

// Minimum t_rp (ns) needed after an access that left the cell at
// `post_access` charge. Equals precharge_base_time at the correctness floor
// and shrinks linearly to precharge_base_time * precharge_floor_ratio at
// full charge; never exceeds precharge_base_time.
double required_precharge_time(const CellParameters& cell, ChargeState post_access,
                               const ModelConstants& constants);

// Full access: leak since the last refresh, optional additive charge noise,
// then the sense, restore and precharge gates imposed by `timing`.
// `noise_draw` is a unit-Gaussian sample scaled by constants.noise_sigma.
AccessResult access_outcome(const CellParameters& cell, const TimingSet& timing,
                            const OperatingPoint& op, double time_since_refresh_ms,
                            OpKind kind, const ModelConstants& constants,
                            std::optional<double> noise_draw = std::nullopt);

// Largest time-since-refresh (ms) at which the access still succeeds under
// `timing` at `op`, located by bisection to `tolerance_ms`. Returns 0 when
// the access fails immediately and `upper_ms` when it never fails within
// the searched range. Noise disabled.
double retention_limit(const CellParameters& cell, const TimingSet& timing,
                       const OperatingPoint& op, OpKind kind, const ModelConstants& constants,
                       double upper_ms = 4096.0, double tolerance_ms = 1e-6);

// Retention limit under the less favorable of the two access kinds; the
// scalar used to rank cells from worst to best.
double worst_kind_retention(const CellParameters& cell, const TimingSet& timing,
                            const OperatingPoint& op, const ModelConstants& constants,
                            double upper_ms = 4096.0);

} // namespace dramlat
