#pragma once

#include <stdexcept>
#include <string>

namespace dramlat {

// Electrical character of one DRAM cell; the unit of process variation.
// A cell is "worse" than another if it has strictly lower charge_capacity,
// higher fill_time_constant, or lower leakage_time_constant_ref. All
// monotonicity guarantees in the model are stated against this partial order.
struct CellParameters {
    double charge_capacity = 1.0;          // relative full charge, in (0, 1], 1.0 = nominal
    double fill_time_constant = 1.0;       // charge injection/extraction time constant, ns, > 0
    double leakage_time_constant_ref = 1.0; // retention time constant at reference temperature, ms, > 0
};

inline void validate(const CellParameters& c) {
    if (!(c.charge_capacity > 0.0) || !(c.charge_capacity <= 1.0))
        throw std::invalid_argument("CellParameters.charge_capacity must be in (0, 1]");
    if (!(c.fill_time_constant > 0.0))
        throw std::invalid_argument("CellParameters.fill_time_constant must be > 0");
    if (!(c.leakage_time_constant_ref > 0.0))
        throw std::invalid_argument("CellParameters.leakage_time_constant_ref must be > 0");
}

// Returns true if `a` is at least as good as `b` on every axis of the
// cell-quality partial order.
inline bool dominates(const CellParameters& a, const CellParameters& b) {
    return a.charge_capacity >= b.charge_capacity &&
           a.fill_time_constant <= b.fill_time_constant &&
           a.leakage_time_constant_ref >= b.leakage_time_constant_ref;
}

// The four access timing parameters plus the refresh interval; the object
// being optimized.
struct TimingSet {
    double t_rcd = 13.75;          // row-to-column delay, ns
    double t_ras = 35.0;           // row active time, ns
    double t_wr = 15.0;            // write recovery, ns
    double t_rp = 13.75;           // precharge time, ns
    double refresh_interval = 64.0; // ms

    bool operator==(const TimingSet&) const = default;
};

inline void validate(const TimingSet& t) {
    if (!(t.t_rcd > 0.0 && t.t_ras > 0.0 && t.t_wr > 0.0 && t.t_rp > 0.0 && t.refresh_interval > 0.0))
        throw std::invalid_argument("TimingSet fields must be strictly positive");
    if (!(t.t_ras >= t.t_rcd))
        throw std::invalid_argument("TimingSet requires t_ras >= t_rcd");
}

struct OperatingPoint {
    double temperature = 85.0; // degrees Celsius, in [0, 100]
};

inline void validate(const OperatingPoint& op) {
    if (!(op.temperature >= 0.0 && op.temperature <= 100.0))
        throw std::invalid_argument("OperatingPoint.temperature must be in [0, 100]");
}

// Fraction of the cell's own charge_capacity currently stored.
struct ChargeState {
    double charge = 1.0; // in [0, 1]
};

enum class OpKind { Read, Write };

enum class AccessResult { Success, Error };

// Global constants of the charge/latency model. The defaults were fixed once
// by a numerical search so that the bundled synthetic fleet reproduces the
// target retention and timing-reduction figures; they are ordinary config
// values and can be overridden.
struct ModelConstants {
    double min_correct_charge = 0.3222;         // absolute charge floor for correct sensing, in (0, 1)
    double sense_base_time = 0.8343;            // ns, sense time of a fully charged nominal cell
    double precharge_base_time = 18.3286;       // ns, precharge time at the correctness floor
    double temperature_doubling_interval = 32.31; // deg C per doubling of the leakage rate
    double reference_temperature = 85.0;        // deg C
    double noise_sigma = 0.005;                 // per-access Gaussian charge perturbation (0 disables)
    double sense_floor_margin = 0.25;           // softening margin of the sense-time curve near the floor
    double precharge_floor_ratio = 0.50;        // precharge time at full charge, as a fraction of precharge_base_time
    double nominal_fill_time_constant = 10.0;   // ns, fill time constant of a nominal cell
    double nominal_leakage_time_constant = 291.6375; // ms, leakage time constant of a nominal cell at reference temperature
};

inline void validate(const ModelConstants& m) {
    if (!(m.min_correct_charge > 0.0 && m.min_correct_charge < 1.0))
        throw std::invalid_argument("ModelConstants.min_correct_charge must be in (0, 1)");
    if (!(m.sense_base_time > 0.0 && m.precharge_base_time > 0.0))
        throw std::invalid_argument("ModelConstants times must be positive");
    if (!(m.temperature_doubling_interval > 0.0))
        throw std::invalid_argument("ModelConstants.temperature_doubling_interval must be positive");
    if (!(m.noise_sigma >= 0.0))
        throw std::invalid_argument("ModelConstants.noise_sigma must be >= 0");
    if (!(m.sense_floor_margin > 0.0))
        throw std::invalid_argument("ModelConstants.sense_floor_margin must be positive");
    if (!(m.precharge_floor_ratio >= 0.0 && m.precharge_floor_ratio <= 1.0))
        throw std::invalid_argument("ModelConstants.precharge_floor_ratio must be in [0, 1]");
    if (!(m.nominal_fill_time_constant > 0.0 && m.nominal_leakage_time_constant > 0.0))
        throw std::invalid_argument("ModelConstants nominal cell constants must be positive");
}

} // namespace dramlat
