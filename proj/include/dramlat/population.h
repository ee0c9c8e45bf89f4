#pragma once

#include <cstdint>
#include <vector>

#include "dramlat/types.h"

// Synthetic fleet of DRAM modules with process variation, organized as
// module -> chip -> bank -> sampled worst cells. Generation is a pure
// function of the spec: every cell is addressed by counters, so the result
// is independent of evaluation order and worker count.

namespace dramlat {

struct PopulationSpec {
    std::uint64_t module_count = 115;
    std::uint64_t chips_per_module = 8;
    std::uint64_t banks_per_chip = 8;
    std::uint64_t sampled_cells_per_bank = 64;
    double variation_sigma = 0.05;        // lognormal shape parameter, applied to each axis
    std::uint64_t seed = 0x1CEB00DA;
    double tail_batch_size = 1e6;         // implicit cells per sampled draw (extreme-value tail sampling)

    // Calibration pins. The representative cell is the worst cell of module 0
    // and anchors the headline retention/reduction figures; the worst-case
    // cell sits in the last module and is the fleet-wide minimum against
    // which standard timings are provisioned.
    CellParameters representative_cell{0.9060, 47.608, 277.75};
    CellParameters worst_case_cell{0.87882, 59.51, 124.9875};
};

void validate(const PopulationSpec& spec);

struct Bank {
    std::vector<CellParameters> cells;
};

struct Chip {
    std::vector<Bank> banks;
};

struct Module {
    std::vector<Chip> chips;
};

struct Population {
    std::vector<Module> modules;
    PopulationSpec spec;
};

// Deterministically generates the fleet. Each cell's three axes are drawn as
// the extreme of `tail_batch_size` implicit lognormal samples around the
// nominal cell (worst direction per axis), with charge_capacity clamped to
// 1.0. Every cell is clamped to dominate the worst-case pin (cells of module
// 0 dominate the representative pin), so the pins are the designated worst
// cells by construction.
Population generate(const PopulationSpec& spec, const ModelConstants& constants);

// Worst cell of a scope: the cell with the smallest simulated retention
// under `timing` at `op` (ties broken by first position). Hierarchical: the
// module's worst cell is the worst over its chips, which is the worst over
// their banks.
const CellParameters& worst_cell(const Bank& bank, const TimingSet& timing,
                                 const OperatingPoint& op, const ModelConstants& constants);
const CellParameters& worst_cell(const Chip& chip, const TimingSet& timing,
                                 const OperatingPoint& op, const ModelConstants& constants);
const CellParameters& worst_cell(const Module& module, const TimingSet& timing,
                                 const OperatingPoint& op, const ModelConstants& constants);

} // namespace dramlat
