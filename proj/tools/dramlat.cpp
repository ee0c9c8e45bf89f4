// Command-line pipeline: generate -> profile -> simulate -> report, driven by
// a single JSON config. All outputs land under the output directory with
// fixed filenames; identical configs produce byte-identical output trees for
// any --workers value.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "dramlat/config.h"
#include "dramlat/controller.h"
#include "dramlat/device_model.h"
#include "dramlat/parallel.h"
#include "dramlat/population.h"
#include "dramlat/profiler.h"
#include "dramlat/serde.h"

namespace fs = std::filesystem;
using namespace dramlat;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    int workers = 1;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

RunConfig load_effective_config(const CommonArgs& args) {
    RunConfig config = load_config(args.config_path);
    if (args.seed_given) config.population.seed = args.seed;
    if (!args.out_dir.empty()) config.output_dir = args.out_dir;
    validate(config);
    return config;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

Json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing input file: " + path.string());
    return Json::parse(in);
}

fs::path profile_path(const RunConfig& config, int module_id) {
    char name[64];
    std::snprintf(name, sizeof(name), "module_%03d.json", module_id);
    return fs::path(config.output_dir) / "profiles" / name;
}

const char* kind_label(OpKind kind) { return kind == OpKind::Read ? "read" : "write"; }

const char* locality_label(Locality l) {
    switch (l) {
        case Locality::RowHit: return "hit";
        case Locality::RowMiss: return "miss";
        case Locality::RowConflict: return "conflict";
    }
    return "?";
}

int cmd_generate(const CommonArgs& args) {
    const RunConfig config = load_effective_config(args);
    const Population pop = generate(config.population, config.model);
    fs::create_directories(config.output_dir);
    write_json(fs::path(config.output_dir) / "population.json", to_json(pop));

    std::size_t cells = 0;
    double cap_sum = 0.0, fill_sum = 0.0, leak_sum = 0.0;
    double cap_min = 1.0, leak_min = 1e300, fill_max = 0.0;
    for (const Module& m : pop.modules)
        for (const Chip& c : m.chips)
            for (const Bank& b : c.banks)
                for (const CellParameters& cell : b.cells) {
                    ++cells;
                    cap_sum += cell.charge_capacity;
                    fill_sum += cell.fill_time_constant;
                    leak_sum += cell.leakage_time_constant_ref;
                    cap_min = std::min(cap_min, cell.charge_capacity);
                    leak_min = std::min(leak_min, cell.leakage_time_constant_ref);
                    fill_max = std::max(fill_max, cell.fill_time_constant);
                }
    const double n = static_cast<double>(cells);
    std::cout << "modules: " << pop.modules.size() << "\n"
              << "sampled cells: " << cells << "\n"
              << "mean charge_capacity: " << fmt6(cap_sum / n) << "\n"
              << "mean fill_time_constant: " << fmt6(fill_sum / n) << " ns\n"
              << "mean leakage_time_constant_ref: " << fmt6(leak_sum / n) << " ms\n"
              << "min charge_capacity: " << fmt6(cap_min) << "\n"
              << "max fill_time_constant: " << fmt6(fill_max) << " ns\n"
              << "min leakage_time_constant_ref: " << fmt6(leak_min) << " ms\n";
    return 0;
}

void append_retention_rows(std::string& csv, const ModuleProfile& p, const RetentionProfile& r) {
    const std::string prefix =
        std::to_string(p.module_id) + "," + fmt6(r.temperature) + "," + kind_label(r.op_kind);
    for (std::size_t i = 0; i < r.per_bank.size(); ++i)
        csv += prefix + ",bank," + std::to_string(i) + "," + fmt6(r.per_bank[i]) + "\n";
    for (std::size_t i = 0; i < r.per_chip.size(); ++i)
        csv += prefix + ",chip," + std::to_string(i) + "," + fmt6(r.per_chip[i]) + "\n";
    csv += prefix + ",module,0," + fmt6(r.module_level) + "\n";
}

void append_sweep_rows(std::string& csv, const RunConfig& config, const ModuleProfile& p,
                       const SweepOutcome& sweep, OpKind kind, double safe_refresh_ms) {
    const std::vector<double> rcds = config.grid.t_rcd.values();
    const std::vector<double> rps = config.grid.t_rp.values();
    const std::vector<double> mids =
        (kind == OpKind::Read) ? config.grid.t_ras.values() : config.grid.t_wr.values();
    std::size_t next = 0; // error_free is emitted in the same lexicographic order
    for (double rcd : rcds) {
        for (double mid : mids) {
            if (kind == OpKind::Read && mid < rcd) continue;
            for (double rp : rps) {
                TimingSet set = config.standard_timing;
                set.t_rcd = rcd;
                set.t_rp = rp;
                set.refresh_interval = safe_refresh_ms;
                ((kind == OpKind::Read) ? set.t_ras : set.t_wr) = mid;
                const bool ok = next < sweep.error_free.size() && sweep.error_free[next] == set;
                if (ok) ++next;
                csv += std::to_string(p.module_id) + "," + fmt6(sweep.temperature) + "," +
                       kind_label(kind) + "," + fmt6(set.t_rcd) + "," + fmt6(set.t_ras) + "," +
                       fmt6(set.t_wr) + "," + fmt6(set.t_rp) + "," + fmt6(set.refresh_interval) +
                       "," + fmt6(latency_sum(set, kind)) + "," + (ok ? "1" : "0") + "\n";
            }
        }
    }
    if (next != sweep.error_free.size())
        throw std::runtime_error("sweep CSV enumeration out of sync with error-free set");
}

int cmd_profile(const CommonArgs& args) {
    const RunConfig config = load_effective_config(args);
    const Population pop =
        population_from_json(read_json(fs::path(config.output_dir) / "population.json"));

    std::vector<ModuleProfile> profiles(pop.modules.size());
    parallel_for(pop.modules.size(), args.workers, [&](std::size_t i) {
        profiles[i] = profile_module(pop.modules[i], static_cast<int>(i), config.grid,
                                     config.profile_temperatures, config.standard_timing,
                                     config.model, config.refresh_sweep_step,
                                     config.refresh_sweep_max);
    });

    fs::create_directories(fs::path(config.output_dir) / "profiles");
    for (const ModuleProfile& p : profiles) write_json(profile_path(config, p.module_id), to_json(p));

    const FleetSummary summary = summarize_fleet(profiles, config.standard_timing);
    write_json(fs::path(config.output_dir) / "fleet_summary.json", to_json(summary));

    std::string fleet_csv =
        "temperature,mean_reduction_t_rcd,mean_reduction_t_ras,mean_reduction_t_wr,"
        "mean_reduction_t_rp,read_latency_sum_reduction,write_latency_sum_reduction\n";
    for (const FleetTemperatureSummary& row : summary.per_temperature) {
        fleet_csv += fmt6(row.temperature) + "," + fmt6(round_sig6(row.mean_reduction_t_rcd)) +
                     "," + fmt6(round_sig6(row.mean_reduction_t_ras)) + "," +
                     fmt6(round_sig6(row.mean_reduction_t_wr)) + "," +
                     fmt6(round_sig6(row.mean_reduction_t_rp)) + "," +
                     fmt6(round_sig6(row.read_latency_sum_reduction)) + "," +
                     fmt6(round_sig6(row.write_latency_sum_reduction)) + "\n";
    }
    write_text(fs::path(config.output_dir) / "fleet_summary.csv", fleet_csv);

    std::string retention_csv = "module_id,temperature,kind,scope,scope_index,max_error_free_refresh_ms\n";
    for (const ModuleProfile& p : profiles) {
        append_retention_rows(retention_csv, p, p.retention_read);
        append_retention_rows(retention_csv, p, p.retention_write);
    }
    write_text(fs::path(config.output_dir) / "retention.csv", retention_csv);

    std::string sweeps_csv =
        "module_id,temperature,kind,t_rcd,t_ras,t_wr,t_rp,refresh_interval,latency_sum,error_free\n";
    for (const ModuleProfile& p : profiles) {
        for (const SweepOutcome& s : p.read_sweeps)
            append_sweep_rows(sweeps_csv, config, p, s, OpKind::Read, p.safe_refresh_read);
        for (const SweepOutcome& s : p.write_sweeps)
            append_sweep_rows(sweeps_csv, config, p, s, OpKind::Write, p.safe_refresh_write);
    }
    write_text(fs::path(config.output_dir) / "sweeps.csv", sweeps_csv);

    // Refresh-interval / latency tradeoff for the representative module at
    // the lowest profiled temperature.
    std::vector<double> temps_sorted = config.profile_temperatures;
    std::sort(temps_sorted.begin(), temps_sorted.end());
    const OperatingPoint tradeoff_op{temps_sorted.front()};
    const auto tradeoff = refresh_latency_tradeoff(pop.modules.front(), config.tradeoff_intervals,
                                                   tradeoff_op, config.grid,
                                                   config.standard_timing, config.model);
    std::string tradeoff_csv = "interval_ms,minimal_read_sum,minimal_write_sum\n";
    for (const TradeoffPoint& point : tradeoff) {
        tradeoff_csv += fmt6(point.interval_ms) + ",";
        tradeoff_csv += point.minimal_read_sum ? fmt6(*point.minimal_read_sum) : std::string();
        tradeoff_csv += ",";
        tradeoff_csv += point.minimal_write_sum ? fmt6(*point.minimal_write_sum) : std::string();
        tradeoff_csv += "\n";
    }
    write_text(fs::path(config.output_dir) / "tradeoff.csv", tradeoff_csv);

    // Repeatability of failures one grid step below the representative
    // module's minimal read set at the highest profiled temperature.
    const ModuleProfile& rep = profiles.front();
    const SweepOutcome& rep_sweep = rep.read_sweeps.back();
    TimingSet reduced = rep_sweep.minimal_set;
    reduced.t_rcd -= config.grid.t_rcd.step;
    if (reduced.t_rcd > 0.0) {
        const RepeatabilityResult r = repeatability_analysis(
            pop.modules.front(), reduced, OperatingPoint{rep_sweep.temperature}, OpKind::Read,
            config.repeatability_iterations, rep.safe_refresh_read, config.model,
            config.model.noise_sigma, config.population.seed);
        Json j{{"module_id", rep.module_id},
               {"temperature", rep_sweep.temperature},
               {"reduced_set", to_json(reduced)},
               {"iterations", config.repeatability_iterations},
               {"noise_sigma", config.model.noise_sigma},
               {"cells_failing_at_least_once", r.cells_failing_at_least_once},
               {"cells_failing_always", r.cells_failing_always}};
        j["consistent_fraction"] =
            r.consistent_fraction ? Json(round_sig6(*r.consistent_fraction)) : Json(nullptr);
        write_json(fs::path(config.output_dir) / "repeatability.json", j);
    }

    std::cout << "profiled modules: " << profiles.size() << "\n";
    for (const FleetTemperatureSummary& row : summary.per_temperature) {
        std::cout << "fleet at " << fmt6(row.temperature)
                  << " C: read sum reduction " << fmt6(round_sig6(row.read_latency_sum_reduction))
                  << " %, write sum reduction "
                  << fmt6(round_sig6(row.write_latency_sum_reduction)) << " %\n";
    }
    return 0;
}

int cmd_simulate(const CommonArgs& args) {
    const RunConfig config = load_effective_config(args);
    const ModuleProfile profile =
        module_profile_from_json(read_json(profile_path(config, config.trace_module_id)));
    const TimingTable table = build_table(profile, config.table_bins, config.standard_timing);
    const std::vector<MemoryRequest> trace = generate_trace(config.trace);
    const std::vector<OperatingPoint> temps{OperatingPoint{config.trace_temperature}};
    const TraceReport report = simulate_trace(trace, table, temps, config.latency);

    fs::create_directories(config.output_dir);
    Json j = to_json(report);
    j["module_id"] = config.trace_module_id;
    j["temperature"] = config.trace_temperature;
    j["requests"] = trace.size();
    write_json(fs::path(config.output_dir) / "trace_report.json", j);

    std::string csv = "request_index,kind,locality,baseline_ns,adaptive_ns\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        csv += std::to_string(i) + "," + kind_label(trace[i].kind) + "," +
               locality_label(trace[i].locality) + "," + fmt6(report.per_request_baseline[i]) +
               "," + fmt6(report.per_request_adaptive[i]) + "\n";
    }
    write_text(fs::path(config.output_dir) / "trace_report.csv", csv);

    std::cout << "requests: " << trace.size() << "\n"
              << "baseline mean latency: " << fmt6(round_sig6(report.mean_latency_baseline))
              << " ns\n"
              << "adaptive mean latency: " << fmt6(round_sig6(report.mean_latency_adaptive))
              << " ns\n"
              << "speedup: " << fmt6(round_sig6(report.speedup)) << "\n";
    return 0;
}

int cmd_report(const CommonArgs& args) {
    const RunConfig config = load_effective_config(args);
    const Json fleet = read_json(fs::path(config.output_dir) / "fleet_summary.json");
    const Json rep = read_json(profile_path(config, 0));
    const Json trace = read_json(fs::path(config.output_dir) / "trace_report.json");

    std::string text;
    text += "== fleet summary ==\n";
    for (const Json& row : fleet.at("per_temperature")) {
        text += "at " + fmt6(row.at("temperature").get<double>()) + " C:\n";
        text += "  mean reduction t_rcd:  " + fmt6(row.at("mean_reduction_t_rcd").get<double>()) + " %\n";
        text += "  mean reduction t_ras:  " + fmt6(row.at("mean_reduction_t_ras").get<double>()) + " %\n";
        text += "  mean reduction t_wr:   " + fmt6(row.at("mean_reduction_t_wr").get<double>()) + " %\n";
        text += "  mean reduction t_rp:   " + fmt6(row.at("mean_reduction_t_rp").get<double>()) + " %\n";
        text += "  read latency sum reduction:  " +
                fmt6(row.at("read_latency_sum_reduction").get<double>()) + " %\n";
        text += "  write latency sum reduction: " +
                fmt6(row.at("write_latency_sum_reduction").get<double>()) + " %\n";
    }
    text += "module retention spread: " + fmt6(fleet.at("module_retention_spread").get<double>()) + " ms\n";
    text += "bank retention spread:   " + fmt6(fleet.at("bank_retention_spread").get<double>()) + " ms\n";

    text += "\n== representative module ==\n";
    text += "max error-free refresh (read):  " +
            fmt6(rep.at("retention_read").at("module_level").get<double>()) + " ms\n";
    text += "max error-free refresh (write): " +
            fmt6(rep.at("retention_write").at("module_level").get<double>()) + " ms\n";
    text += "safe refresh (read):  " + fmt6(rep.at("safe_refresh_read").get<double>()) + " ms\n";
    text += "safe refresh (write): " + fmt6(rep.at("safe_refresh_write").get<double>()) + " ms\n";
    for (const char* key : {"read_sweeps", "write_sweeps"}) {
        for (const Json& sweep : rep.at(key)) {
            const double std_sum = sweep.at("standard_latency_sum").get<double>();
            const double min_sum = sweep.at("minimal_latency_sum").get<double>();
            text += std::string(key == std::string("read_sweeps") ? "read" : "write");
            text += " latency sum at " + fmt6(sweep.at("temperature").get<double>()) + " C: " +
                    fmt6(min_sum) + " ns (" + fmt6(round_sig6(100.0 * (std_sum - min_sum) / std_sum)) +
                    " % below standard)\n";
        }
    }

    text += "\n== trace simulation ==\n";
    text += "requests: " + std::to_string(trace.at("requests").get<std::uint64_t>()) + "\n";
    text += "baseline mean latency: " + fmt6(trace.at("mean_latency_baseline").get<double>()) + " ns\n";
    text += "adaptive mean latency: " + fmt6(trace.at("mean_latency_adaptive").get<double>()) + " ns\n";
    text += "speedup: " + fmt6(trace.at("speedup").get<double>()) + "\n";

    write_text(fs::path(config.output_dir) / "report.txt", text);
    std::cout << text;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"DRAM access-latency variation simulator"};
    app.require_subcommand(1);

    CommonArgs args;
    const auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* opt = cmd->add_option("--config", args.config_path, "path to the run config JSON");
        if (config_required) opt->required();
        cmd->add_option("--out", args.out_dir, "output directory (overrides config)");
        cmd->add_option("--workers", args.workers, "worker thread count")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", args.seed, "population seed (overrides config)")
            ->each([&](const std::string&) { args.seed_given = true; });
    };

    auto* gen = app.add_subcommand("generate", "generate the synthetic module population");
    add_common(gen, true);
    auto* prof = app.add_subcommand("profile", "profile every module for reduced timings");
    add_common(prof, true);
    auto* sim = app.add_subcommand("simulate", "trace-driven latency comparison");
    add_common(sim, true);
    auto* rep = app.add_subcommand("report", "consolidate results into report.txt");
    add_common(rep, true);
    auto* dump = app.add_subcommand("print-default-config", "print the built-in default config");
    add_common(dump, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_generate(args);
        if (prof->parsed()) return cmd_profile(args);
        if (sim->parsed()) return cmd_simulate(args);
        if (rep->parsed()) return cmd_report(args);
        if (dump->parsed()) {
            std::cout << config_to_json_text(RunConfig{});
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
