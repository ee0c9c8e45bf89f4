#include "dramlat/population.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dramlat/device_model.h"
#include "dramlat/random.h"

namespace dramlat {

void validate(const PopulationSpec& spec) {
    if (spec.module_count < 1 || spec.chips_per_module < 1 || spec.banks_per_chip < 1 ||
        spec.sampled_cells_per_bank < 1)
        throw std::invalid_argument("PopulationSpec counts must all be >= 1");
    if (!(spec.variation_sigma > 0.0))
        throw std::invalid_argument("PopulationSpec.variation_sigma must be > 0");
    if (!(spec.tail_batch_size >= 1.0))
        throw std::invalid_argument("PopulationSpec.tail_batch_size must be >= 1");
    validate(spec.representative_cell);
    validate(spec.worst_case_cell);
    // The worst-case pin anchors the fleet minimum; the representative pin
    // (and through it all of module 0) must not undercut it.
    if (spec.module_count >= 2 && !dominates(spec.representative_cell, spec.worst_case_cell))
        throw std::invalid_argument(
            "PopulationSpec.representative_cell must dominate worst_case_cell");
}

namespace {

// Axis indices for the per-cell random streams.
enum Axis : std::uint64_t { kCapacity = 0, kFill = 1, kLeak = 2 };

// Standard-normal quantile of the minimum of tail_batch_size implicit draws,
// addressed by (seed, module, chip, bank, cell, axis).
double tail_z(const PopulationSpec& spec, std::uint64_t m, std::uint64_t c, std::uint64_t b,
              std::uint64_t i, std::uint64_t axis) {
    const double u = to_unit_open(hash_words({spec.seed, m, c, b, i, axis}));
    return normal_quantile(min_of_batch_quantile(u, spec.tail_batch_size));
}

// Clamps `cell` so that it dominates `floor_cell` on every axis.
CellParameters clamp_to_dominate(CellParameters cell, const CellParameters& floor_cell) {
    cell.charge_capacity = std::max(cell.charge_capacity, floor_cell.charge_capacity);
    cell.fill_time_constant = std::min(cell.fill_time_constant, floor_cell.fill_time_constant);
    cell.leakage_time_constant_ref =
        std::max(cell.leakage_time_constant_ref, floor_cell.leakage_time_constant_ref);
    return cell;
}

CellParameters draw_cell(const PopulationSpec& spec, const ModelConstants& constants,
                         std::uint64_t m, std::uint64_t c, std::uint64_t b, std::uint64_t i) {
    const double sigma = spec.variation_sigma;
    // Worst direction per axis: low capacity, high fill constant, low leakage
    // constant. Each draw is the batch minimum of its axis's bad tail.
    const double cap = std::min(1.0, std::exp(sigma * tail_z(spec, m, c, b, i, kCapacity)));
    const double fill = constants.nominal_fill_time_constant *
                        std::exp(-sigma * tail_z(spec, m, c, b, i, kFill));
    const double leakage = constants.nominal_leakage_time_constant *
                           std::exp(sigma * tail_z(spec, m, c, b, i, kLeak));
    return CellParameters{cap, fill, leakage};
}

} // namespace

Population generate(const PopulationSpec& spec, const ModelConstants& constants) {
    validate(spec);
    validate(constants);

    Population pop;
    pop.spec = spec;
    pop.modules.resize(spec.module_count);

    const bool has_worst_module = spec.module_count >= 2;
    const std::uint64_t worst_module_index = spec.module_count - 1;

    for (std::uint64_t m = 0; m < spec.module_count; ++m) {
        Module& module = pop.modules[m];
        module.chips.resize(spec.chips_per_module);
        // Module 0 hosts the representative pin; its remaining cells dominate
        // that pin so the pin is the module's worst cell. All other cells
        // dominate the fleet-wide worst-case pin.
        const CellParameters& floor_cell =
            (m == 0) ? spec.representative_cell : spec.worst_case_cell;
        for (std::uint64_t c = 0; c < spec.chips_per_module; ++c) {
            Chip& chip = module.chips[c];
            chip.banks.resize(spec.banks_per_chip);
            for (std::uint64_t b = 0; b < spec.banks_per_chip; ++b) {
                Bank& bank = chip.banks[b];
                bank.cells.resize(spec.sampled_cells_per_bank);
                for (std::uint64_t i = 0; i < spec.sampled_cells_per_bank; ++i) {
                    bank.cells[i] =
                        clamp_to_dominate(draw_cell(spec, constants, m, c, b, i), floor_cell);
                }
            }
        }
    }

    pop.modules[0].chips[0].banks[0].cells[0] = spec.representative_cell;
    if (has_worst_module) {
        pop.modules[worst_module_index].chips[0].banks[0].cells[0] = spec.worst_case_cell;
    }
    return pop;
}

namespace {

struct WorstScan {
    const CellParameters* cell = nullptr;
    double retention = std::numeric_limits<double>::infinity();

    void consider(const CellParameters& candidate, double candidate_retention) {
        if (candidate_retention < retention) {
            retention = candidate_retention;
            cell = &candidate;
        }
    }
};

void scan(WorstScan& scan_state, const Bank& bank, const TimingSet& timing,
          const OperatingPoint& op, const ModelConstants& constants) {
    for (const CellParameters& cell : bank.cells) {
        scan_state.consider(cell, worst_kind_retention(cell, timing, op, constants));
    }
}

} // namespace

const CellParameters& worst_cell(const Bank& bank, const TimingSet& timing,
                                 const OperatingPoint& op, const ModelConstants& constants) {
    if (bank.cells.empty()) throw std::invalid_argument("worst_cell: empty bank");
    WorstScan s;
    scan(s, bank, timing, op, constants);
    return *s.cell;
}

const CellParameters& worst_cell(const Chip& chip, const TimingSet& timing,
                                 const OperatingPoint& op, const ModelConstants& constants) {
    if (chip.banks.empty()) throw std::invalid_argument("worst_cell: empty chip");
    WorstScan s;
    for (const Bank& bank : chip.banks) scan(s, bank, timing, op, constants);
    if (!s.cell) throw std::invalid_argument("worst_cell: chip has no cells");
    return *s.cell;
}

const CellParameters& worst_cell(const Module& module, const TimingSet& timing,
                                 const OperatingPoint& op, const ModelConstants& constants) {
    if (module.chips.empty()) throw std::invalid_argument("worst_cell: empty module");
    WorstScan s;
    for (const Chip& chip : module.chips)
        for (const Bank& bank : chip.banks) scan(s, bank, timing, op, constants);
    if (!s.cell) throw std::invalid_argument("worst_cell: module has no cells");
    return *s.cell;
}

} // namespace dramlat
