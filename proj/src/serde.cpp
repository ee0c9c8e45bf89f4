#include "dramlat/serde.h"

#include <cstdio>
#include <cstdlib>

namespace dramlat {

double round_sig6(double v) {
    if (v == 0.0 || !std::isfinite(v)) return v;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::strtod(buf, nullptr);
}

Json to_json(const CellParameters& c) {
    return Json{{"charge_capacity", c.charge_capacity},
                {"fill_time_constant", c.fill_time_constant},
                {"leakage_time_constant_ref", c.leakage_time_constant_ref}};
}

CellParameters cell_from_json(const Json& j) {
    return CellParameters{j.at("charge_capacity").get<double>(),
                          j.at("fill_time_constant").get<double>(),
                          j.at("leakage_time_constant_ref").get<double>()};
}

Json to_json(const TimingSet& t) {
    return Json{{"t_rcd", t.t_rcd},
                {"t_ras", t.t_ras},
                {"t_wr", t.t_wr},
                {"t_rp", t.t_rp},
                {"refresh_interval", t.refresh_interval}};
}

TimingSet timing_from_json(const Json& j) {
    return TimingSet{j.at("t_rcd").get<double>(), j.at("t_ras").get<double>(),
                     j.at("t_wr").get<double>(), j.at("t_rp").get<double>(),
                     j.at("refresh_interval").get<double>()};
}

Json to_json(const ModelConstants& m) {
    return Json{{"min_correct_charge", m.min_correct_charge},
                {"sense_base_time", m.sense_base_time},
                {"precharge_base_time", m.precharge_base_time},
                {"temperature_doubling_interval", m.temperature_doubling_interval},
                {"reference_temperature", m.reference_temperature},
                {"noise_sigma", m.noise_sigma},
                {"sense_floor_margin", m.sense_floor_margin},
                {"precharge_floor_ratio", m.precharge_floor_ratio},
                {"nominal_fill_time_constant", m.nominal_fill_time_constant},
                {"nominal_leakage_time_constant", m.nominal_leakage_time_constant}};
}

ModelConstants model_from_json(const Json& j) {
    ModelConstants m;
    m.min_correct_charge = j.at("min_correct_charge").get<double>();
    m.sense_base_time = j.at("sense_base_time").get<double>();
    m.precharge_base_time = j.at("precharge_base_time").get<double>();
    m.temperature_doubling_interval = j.at("temperature_doubling_interval").get<double>();
    m.reference_temperature = j.at("reference_temperature").get<double>();
    m.noise_sigma = j.at("noise_sigma").get<double>();
    m.sense_floor_margin = j.at("sense_floor_margin").get<double>();
    m.precharge_floor_ratio = j.at("precharge_floor_ratio").get<double>();
    m.nominal_fill_time_constant = j.at("nominal_fill_time_constant").get<double>();
    m.nominal_leakage_time_constant = j.at("nominal_leakage_time_constant").get<double>();
    return m;
}

Json to_json(const PopulationSpec& s) {
    return Json{{"module_count", s.module_count},
                {"chips_per_module", s.chips_per_module},
                {"banks_per_chip", s.banks_per_chip},
                {"sampled_cells_per_bank", s.sampled_cells_per_bank},
                {"variation_sigma", s.variation_sigma},
                {"seed", s.seed},
                {"tail_batch_size", s.tail_batch_size},
                {"representative_cell", to_json(s.representative_cell)},
                {"worst_case_cell", to_json(s.worst_case_cell)}};
}

PopulationSpec population_spec_from_json(const Json& j) {
    PopulationSpec s;
    s.module_count = j.at("module_count").get<std::uint64_t>();
    s.chips_per_module = j.at("chips_per_module").get<std::uint64_t>();
    s.banks_per_chip = j.at("banks_per_chip").get<std::uint64_t>();
    s.sampled_cells_per_bank = j.at("sampled_cells_per_bank").get<std::uint64_t>();
    s.variation_sigma = j.at("variation_sigma").get<double>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.tail_batch_size = j.at("tail_batch_size").get<double>();
    s.representative_cell = cell_from_json(j.at("representative_cell"));
    s.worst_case_cell = cell_from_json(j.at("worst_case_cell"));
    return s;
}

Json to_json(const Population& p) {
    // Cells as [capacity, fill, leakage] triples nested module->chip->bank.
    Json modules = Json::array();
    for (const Module& module : p.modules) {
        Json chips = Json::array();
        for (const Chip& chip : module.chips) {
            Json banks = Json::array();
            for (const Bank& bank : chip.banks) {
                Json cells = Json::array();
                for (const CellParameters& c : bank.cells) {
                    cells.push_back(Json::array({c.charge_capacity, c.fill_time_constant,
                                                 c.leakage_time_constant_ref}));
                }
                banks.push_back(std::move(cells));
            }
            chips.push_back(std::move(banks));
        }
        modules.push_back(std::move(chips));
    }
    return Json{{"spec", to_json(p.spec)}, {"modules", std::move(modules)}};
}

Population population_from_json(const Json& j) {
    Population p;
    p.spec = population_spec_from_json(j.at("spec"));
    for (const Json& chips : j.at("modules")) {
        Module module;
        for (const Json& banks : chips) {
            Chip chip;
            for (const Json& cells : banks) {
                Bank bank;
                for (const Json& c : cells) {
                    bank.cells.push_back(CellParameters{c.at(0).get<double>(),
                                                        c.at(1).get<double>(),
                                                        c.at(2).get<double>()});
                }
                chip.banks.push_back(std::move(bank));
            }
            module.chips.push_back(std::move(chip));
        }
        p.modules.push_back(std::move(module));
    }
    return p;
}

Json to_json(const GridAxis& a) {
    return Json{{"min", a.min}, {"max", a.max}, {"step", a.step}};
}

GridAxis grid_axis_from_json(const Json& j) {
    return GridAxis{j.at("min").get<double>(), j.at("max").get<double>(),
                    j.at("step").get<double>()};
}

Json to_json(const TimingGrid& g) {
    return Json{{"t_rcd", to_json(g.t_rcd)},
                {"t_ras", to_json(g.t_ras)},
                {"t_wr", to_json(g.t_wr)},
                {"t_rp", to_json(g.t_rp)}};
}

TimingGrid grid_from_json(const Json& j) {
    TimingGrid g;
    g.t_rcd = grid_axis_from_json(j.at("t_rcd"));
    g.t_ras = grid_axis_from_json(j.at("t_ras"));
    g.t_wr = grid_axis_from_json(j.at("t_wr"));
    g.t_rp = grid_axis_from_json(j.at("t_rp"));
    return g;
}

Json to_json(const LatencyModelConstants& c) {
    return Json{{"t_cl", c.t_cl}, {"t_cwl", c.t_cwl}};
}

LatencyModelConstants latency_from_json(const Json& j) {
    return LatencyModelConstants{j.at("t_cl").get<double>(), j.at("t_cwl").get<double>()};
}

Json to_json(const TraceSpec& t) {
    return Json{{"hit_ratio", t.hit_ratio},
                {"miss_ratio", t.miss_ratio},
                {"conflict_ratio", t.conflict_ratio},
                {"read_fraction", t.read_fraction},
                {"length", t.length},
                {"seed", t.seed}};
}

TraceSpec trace_spec_from_json(const Json& j) {
    TraceSpec t;
    t.hit_ratio = j.at("hit_ratio").get<double>();
    t.miss_ratio = j.at("miss_ratio").get<double>();
    t.conflict_ratio = j.at("conflict_ratio").get<double>();
    t.read_fraction = j.at("read_fraction").get<double>();
    t.length = j.at("length").get<std::uint64_t>();
    t.seed = j.at("seed").get<std::uint64_t>();
    return t;
}

namespace {

const char* kind_name(OpKind kind) { return kind == OpKind::Read ? "read" : "write"; }

OpKind kind_from_name(const std::string& name) {
    if (name == "read") return OpKind::Read;
    if (name == "write") return OpKind::Write;
    throw std::invalid_argument("unknown access kind: " + name);
}

Json timing_set_to_array(const TimingSet& t) {
    return Json::array({t.t_rcd, t.t_ras, t.t_wr, t.t_rp, t.refresh_interval});
}

TimingSet timing_set_from_array(const Json& j) {
    return TimingSet{j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>(),
                     j.at(3).get<double>(), j.at(4).get<double>()};
}

} // namespace

Json to_json(const RetentionProfile& r) {
    return Json{{"op_kind", kind_name(r.op_kind)},
                {"temperature", r.temperature},
                {"sweep_step", r.sweep_step},
                {"module_level", r.module_level},
                {"per_chip", r.per_chip},
                {"per_bank", r.per_bank}};
}

namespace {

RetentionProfile retention_from_json(const Json& j) {
    RetentionProfile r;
    r.op_kind = kind_from_name(j.at("op_kind").get<std::string>());
    r.temperature = j.at("temperature").get<double>();
    r.sweep_step = j.at("sweep_step").get<double>();
    r.module_level = j.at("module_level").get<double>();
    r.per_chip = j.at("per_chip").get<std::vector<double>>();
    r.per_bank = j.at("per_bank").get<std::vector<double>>();
    return r;
}

} // namespace

Json to_json(const SweepOutcome& s) {
    Json sets = Json::array();
    for (const TimingSet& t : s.error_free) sets.push_back(timing_set_to_array(t));
    return Json{{"temperature", s.temperature},
                {"minimal_set", to_json(s.minimal_set)},
                {"minimal_latency_sum", s.minimal_latency_sum},
                {"standard_latency_sum", s.standard_latency_sum},
                {"error_free_sets", std::move(sets)}};
}

namespace {

SweepOutcome sweep_from_json(const Json& j) {
    SweepOutcome s;
    s.temperature = j.at("temperature").get<double>();
    s.minimal_set = timing_from_json(j.at("minimal_set"));
    s.minimal_latency_sum = j.at("minimal_latency_sum").get<double>();
    s.standard_latency_sum = j.at("standard_latency_sum").get<double>();
    for (const Json& t : j.at("error_free_sets")) s.error_free.push_back(timing_set_from_array(t));
    return s;
}

} // namespace

Json to_json(const ModuleProfile& p) {
    Json reads = Json::array();
    for (const SweepOutcome& s : p.read_sweeps) reads.push_back(to_json(s));
    Json writes = Json::array();
    for (const SweepOutcome& s : p.write_sweeps) writes.push_back(to_json(s));
    return Json{{"module_id", p.module_id},
                {"safe_refresh_read", p.safe_refresh_read},
                {"safe_refresh_write", p.safe_refresh_write},
                {"retention_read", to_json(p.retention_read)},
                {"retention_write", to_json(p.retention_write)},
                {"read_sweeps", std::move(reads)},
                {"write_sweeps", std::move(writes)}};
}

ModuleProfile module_profile_from_json(const Json& j) {
    ModuleProfile p;
    p.module_id = j.at("module_id").get<int>();
    p.safe_refresh_read = j.at("safe_refresh_read").get<double>();
    p.safe_refresh_write = j.at("safe_refresh_write").get<double>();
    p.retention_read = retention_from_json(j.at("retention_read"));
    p.retention_write = retention_from_json(j.at("retention_write"));
    for (const Json& s : j.at("read_sweeps")) p.read_sweeps.push_back(sweep_from_json(s));
    for (const Json& s : j.at("write_sweeps")) p.write_sweeps.push_back(sweep_from_json(s));
    return p;
}

Json to_json(const FleetSummary& s) {
    Json rows = Json::array();
    for (const FleetTemperatureSummary& row : s.per_temperature) {
        rows.push_back(Json{{"temperature", row.temperature},
                            {"mean_reduction_t_rcd", round_sig6(row.mean_reduction_t_rcd)},
                            {"mean_reduction_t_ras", round_sig6(row.mean_reduction_t_ras)},
                            {"mean_reduction_t_wr", round_sig6(row.mean_reduction_t_wr)},
                            {"mean_reduction_t_rp", round_sig6(row.mean_reduction_t_rp)},
                            {"read_latency_sum_reduction",
                             round_sig6(row.read_latency_sum_reduction)},
                            {"write_latency_sum_reduction",
                             round_sig6(row.write_latency_sum_reduction)}});
    }
    return Json{{"per_temperature", std::move(rows)},
                {"module_retention_spread", round_sig6(s.module_retention_spread)},
                {"bank_retention_spread", round_sig6(s.bank_retention_spread)},
                {"latency_sum_reduction_variance",
                 round_sig6(s.latency_sum_reduction_variance)}};
}

Json to_json(const TraceReport& r, bool include_per_request) {
    Json j{{"mean_latency_baseline", round_sig6(r.mean_latency_baseline)},
           {"mean_latency_adaptive", round_sig6(r.mean_latency_adaptive)},
           {"speedup", round_sig6(r.speedup)}};
    if (include_per_request) {
        j["per_request_baseline"] = r.per_request_baseline;
        j["per_request_adaptive"] = r.per_request_adaptive;
    }
    return j;
}

Json to_json(const RunConfig& c) {
    return Json{{"population", to_json(c.population)},
                {"model", to_json(c.model)},
                {"grid", to_json(c.grid)},
                {"standard_timing", to_json(c.standard_timing)},
                {"latency", to_json(c.latency)},
                {"trace", to_json(c.trace)},
                {"profile_temperatures", c.profile_temperatures},
                {"table_bins", c.table_bins},
                {"refresh_sweep_step", c.refresh_sweep_step},
                {"refresh_sweep_max", c.refresh_sweep_max},
                {"tradeoff_intervals", c.tradeoff_intervals},
                {"repeatability_iterations", c.repeatability_iterations},
                {"trace_module_id", c.trace_module_id},
                {"trace_temperature", c.trace_temperature},
                {"output_dir", c.output_dir}};
}

RunConfig run_config_from_json(const Json& j) {
    RunConfig c;
    c.population = population_spec_from_json(j.at("population"));
    c.model = model_from_json(j.at("model"));
    c.grid = grid_from_json(j.at("grid"));
    c.standard_timing = timing_from_json(j.at("standard_timing"));
    c.latency = latency_from_json(j.at("latency"));
    c.trace = trace_spec_from_json(j.at("trace"));
    c.profile_temperatures = j.at("profile_temperatures").get<std::vector<double>>();
    c.table_bins = j.at("table_bins").get<std::vector<double>>();
    c.refresh_sweep_step = j.at("refresh_sweep_step").get<double>();
    c.refresh_sweep_max = j.at("refresh_sweep_max").get<double>();
    c.tradeoff_intervals = j.at("tradeoff_intervals").get<std::vector<double>>();
    c.repeatability_iterations = j.at("repeatability_iterations").get<int>();
    c.trace_module_id = j.at("trace_module_id").get<int>();
    c.trace_temperature = j.at("trace_temperature").get<double>();
    c.output_dir = j.at("output_dir").get<std::string>();
    return c;
}

} // namespace dramlat
