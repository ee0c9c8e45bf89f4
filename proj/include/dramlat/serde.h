#pragma once

#include <json.hpp>

#include "dramlat/config.h"
#include "dramlat/controller.h"
#include "dramlat/population.h"
#include "dramlat/profiler.h"
#include "dramlat/types.h"

// JSON (de)serialization. ordered_json keeps insertion order, so emitted
// documents have a fixed key order and byte-identical reruns.

namespace dramlat {

using Json = nlohmann::ordered_json;

// Rounds to 6 significant digits; applied to report-style outputs so diffs
// are byte-stable. Population files keep full precision (lossless round-trip).
double round_sig6(double v);

Json to_json(const CellParameters& c);
CellParameters cell_from_json(const Json& j);

Json to_json(const TimingSet& t);
TimingSet timing_from_json(const Json& j);

Json to_json(const ModelConstants& m);
ModelConstants model_from_json(const Json& j);

Json to_json(const PopulationSpec& s);
PopulationSpec population_spec_from_json(const Json& j);

Json to_json(const Population& p);
Population population_from_json(const Json& j);

Json to_json(const GridAxis& a);
GridAxis grid_axis_from_json(const Json& j);

Json to_json(const TimingGrid& g);
TimingGrid grid_from_json(const Json& j);

Json to_json(const LatencyModelConstants& c);
LatencyModelConstants latency_from_json(const Json& j);

Json to_json(const TraceSpec& t);
TraceSpec trace_spec_from_json(const Json& j);

Json to_json(const RetentionProfile& r);
Json to_json(const SweepOutcome& s);
Json to_json(const ModuleProfile& p);
ModuleProfile module_profile_from_json(const Json& j);

Json to_json(const FleetSummary& s);
Json to_json(const TraceReport& r, bool include_per_request = false);

Json to_json(const RunConfig& c);
RunConfig run_config_from_json(const Json& j);

} // namespace dramlat
