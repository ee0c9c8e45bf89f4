#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dramlat/device_model.h"
#include "dramlat/random.h"
#include "dramlat/types.h"
#include "test_util.h"

using namespace dramlat;
using testutil::Rng;

namespace {

ModelConstants noiseless() {
    ModelConstants m;
    m.noise_sigma = 0.0;
    return m;
}

constexpr int kPropertyCases = 10000;

} // namespace

TEST_CASE("splitmix64 matches the reference sequence") {
    CHECK(splitmix64(1234567ULL) == 6457827717110365317ULL);
    CHECK(splitmix64(1234567ULL + 0x9E3779B97F4A7C15ULL) == 3203168211198807973ULL);
    CHECK(splitmix64(1234567ULL + 2 * 0x9E3779B97F4A7C15ULL) == 9817491932198370423ULL);
}

TEST_CASE("unit-open mapping stays inside (0, 1)") {
    CHECK(to_unit_open(0) > 0.0);
    CHECK(to_unit_open(~0ULL) < 1.0);
    CHECK(to_unit_open(1ULL << 63) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("normal quantile against high-precision reference points") {
    CHECK(normal_quantile(0.5) == 0.0);
    CHECK(normal_quantile(1e-9) == doctest::Approx(-5.9978070150076869).epsilon(1e-12));
    CHECK(normal_quantile(1e-6) == doctest::Approx(-4.7534243088228989).epsilon(1e-12));
    CHECK(normal_quantile(0.025) == doctest::Approx(-1.9599639845400542).epsilon(1e-12));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.9599639845400542).epsilon(1e-12));
}

TEST_CASE("normal quantile satisfies Phi(quantile(p)) = p over the unit interval") {
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        const double p = rng.uniform(1e-12, 1.0 - 1e-12);
        const double x = normal_quantile(p);
        const double cdf = 0.5 * std::erfc(-x / std::sqrt(2.0));
        const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
        // One Newton step back toward the true quantile must be negligible.
        CHECK(std::abs(cdf - p) / pdf < 1e-9);
    }
}

TEST_CASE("extreme-value batch quantile") {
    CHECK(min_of_batch_quantile(0.5, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    const double expected = 1.0 - std::pow(0.5, 1e-6); // independent formulation
    CHECK(min_of_batch_quantile(0.5, 1e6) == doctest::Approx(expected).epsilon(1e-12));
    // Monotone in u, shrinks toward 0 for large batches.
    CHECK(min_of_batch_quantile(0.25, 1e6) < min_of_batch_quantile(0.75, 1e6));
    CHECK(min_of_batch_quantile(0.5, 1e6) < min_of_batch_quantile(0.5, 10.0));
}

TEST_CASE("leak identity, time-constant, and doubling cases") {
    const ModelConstants m = noiseless();
    const CellParameters cell{0.9, 6.0, 200.0};
    const OperatingPoint ref{m.reference_temperature};

    const ChargeState s0{0.7321};
    CHECK(leak(s0, cell, 0.0, ref, m).charge == s0.charge);

    // Decay over exactly one time constant at the reference temperature.
    const ChargeState full{1.0};
    CHECK(leak(full, cell, cell.leakage_time_constant_ref, ref, m).charge == std::exp(-1.0));

    // One doubling interval above reference: the time constant halves.
    const OperatingPoint hot{m.reference_temperature + m.temperature_doubling_interval};
    CHECK(leak(full, cell, cell.leakage_time_constant_ref / 2.0, hot, m).charge ==
          std::exp(-1.0));
}

TEST_CASE("leak is strictly decreasing in elapsed time and temperature") {
    const ModelConstants m = noiseless();
    Rng rng(21);
    for (int i = 0; i < kPropertyCases; ++i) {
        const CellParameters cell = testutil::random_cell(rng);
        const ChargeState state{rng.uniform(0.05, 1.0)};
        const double t1 = rng.uniform(0.0, 400.0);
        const double t2 = t1 + rng.uniform(0.001, 100.0);
        const OperatingPoint op{rng.uniform(0.0, 100.0)};
        CHECK(leak(state, cell, t2, op, m).charge < leak(state, cell, t1, op, m).charge);

        const double temp1 = rng.uniform(0.0, 99.0);
        const double temp2 = temp1 + rng.uniform(0.01, 100.0 - temp1);
        const double elapsed = rng.uniform(0.1, 400.0);
        CHECK(leak(state, cell, elapsed, OperatingPoint{temp2}, m).charge <
              leak(state, cell, elapsed, OperatingPoint{temp1}, m).charge);
    }
}

TEST_CASE("sense time: nominal full-charge cell needs exactly the base time") {
    const ModelConstants m = noiseless();
    const CellParameters nominal{1.0, m.nominal_fill_time_constant, 500.0};
    const auto s = required_sense_time(nominal, ChargeState{1.0}, m);
    REQUIRE(s.has_value());
    CHECK(*s == m.sense_base_time);
}

TEST_CASE("sense time: charge below the correctness floor is unsensable") {
    const ModelConstants m = noiseless();
    const CellParameters cell{0.8, 6.0, 200.0};
    const double floor_fraction = m.min_correct_charge / cell.charge_capacity;
    CHECK_FALSE(required_sense_time(cell, ChargeState{floor_fraction * 0.999}, m).has_value());
    CHECK(required_sense_time(cell, ChargeState{floor_fraction * 1.001}, m).has_value());
}

TEST_CASE("sense time decreases in charge and increases in fill time constant") {
    const ModelConstants m = noiseless();
    Rng rng(31);
    int checked = 0;
    while (checked < kPropertyCases) {
        const CellParameters cell = testutil::random_cell(rng);
        const double floor_fraction = m.min_correct_charge / cell.charge_capacity;
        if (floor_fraction >= 1.0) continue;
        const double q_lo = rng.uniform(floor_fraction, 1.0);
        const double q_hi = rng.uniform(q_lo, 1.0);
        if (q_hi == q_lo) continue;
        const auto s_lo = required_sense_time(cell, ChargeState{q_lo}, m);
        const auto s_hi = required_sense_time(cell, ChargeState{q_hi}, m);
        REQUIRE(s_lo.has_value());
        REQUIRE(s_hi.has_value());
        CHECK(*s_hi < *s_lo);

        CellParameters slower = cell;
        slower.fill_time_constant = cell.fill_time_constant + rng.uniform(0.1, 10.0);
        const auto s_slow = required_sense_time(slower, ChargeState{q_lo}, m);
        REQUIRE(s_slow.has_value());
        CHECK(*s_slow > *s_lo);
        ++checked;
    }
}

TEST_CASE("restore identity, time-constant, and asymptote cases") {
    const CellParameters cell{0.9, 7.5, 200.0};
    const ChargeState s0{0.4242};
    CHECK(restore(s0, cell, 0.0).charge == s0.charge);

    const double one_tau = restore(ChargeState{0.0}, cell, cell.fill_time_constant).charge;
    CHECK(one_tau == 1.0 - std::exp(-1.0));
    CHECK(one_tau == doctest::Approx(0.6321205588285577).epsilon(1e-14));

    const double nearly_full = restore(ChargeState{0.0}, cell, 20.0 * cell.fill_time_constant).charge;
    CHECK(std::abs(nearly_full - 1.0) < 1e-8);
}

TEST_CASE("restore is monotone in duration and bounded by 1") {
    Rng rng(41);
    for (int i = 0; i < kPropertyCases; ++i) {
        const CellParameters cell = testutil::random_cell(rng);
        const ChargeState state{rng.uniform(0.0, 1.0)};
        const double d1 = rng.uniform(0.0, 60.0);
        const double d2 = d1 + rng.uniform(0.001, 60.0);
        const double q1 = restore(state, cell, d1).charge;
        const double q2 = restore(state, cell, d2).charge;
        CHECK(q2 >= q1);
        CHECK(q2 <= 1.0);
        CHECK(q1 >= state.charge);
    }
}

TEST_CASE("precharge time: boundary at the correctness floor, reduction above it") {
    const ModelConstants m = noiseless();
    // charge_capacity = 0.5 makes floor/capacity exactly representable.
    const CellParameters cell{0.5, 6.0, 200.0};
    const double floor_fraction = m.min_correct_charge / cell.charge_capacity;
    CHECK(required_precharge_time(cell, ChargeState{floor_fraction}, m) == m.precharge_base_time);

    const CellParameters nominal{1.0, m.nominal_fill_time_constant, 500.0};
    CHECK(required_precharge_time(nominal, ChargeState{1.0}, m) < m.precharge_base_time);
}

TEST_CASE("precharge time is non-increasing in charge and never exceeds the base time") {
    const ModelConstants m = noiseless();
    Rng rng(51);
    for (int i = 0; i < kPropertyCases; ++i) {
        const CellParameters cell = testutil::random_cell(rng);
        const double q1 = rng.uniform(0.0, 1.0);
        const double q2 = rng.uniform(q1, 1.0);
        const double p1 = required_precharge_time(cell, ChargeState{q1}, m);
        const double p2 = required_precharge_time(cell, ChargeState{q2}, m);
        CHECK(p2 <= p1);
        CHECK(p1 <= m.precharge_base_time);
        CHECK(p2 >= 0.0);
    }
}

TEST_CASE("access with an impossibly small t_rcd always errors") {
    const ModelConstants m = noiseless();
    Rng rng(61);
    for (int i = 0; i < 1000; ++i) {
        const CellParameters cell = testutil::random_cell(rng);
        TimingSet t = testutil::random_timing(rng);
        t.t_rcd = 0.01;
        t.t_ras = std::max(t.t_ras, t.t_rcd);
        const OperatingPoint op{rng.uniform(0.0, 100.0)};
        const double since = rng.uniform(0.0, t.refresh_interval);
        const OpKind kind = rng.coin() ? OpKind::Read : OpKind::Write;
        CHECK(access_outcome(cell, t, op, since, kind, m) == AccessResult::Error);
    }
}

TEST_CASE("access outcome is monotone in the timing partial order") {
    const ModelConstants m = noiseless();
    Rng rng(71);
    int checked = 0;
    while (checked < kPropertyCases) {
        const CellParameters cell = testutil::random_cell(rng);
        const TimingSet t1 = testutil::random_timing(rng);
        const OperatingPoint op{rng.uniform(0.0, 100.0)};
        const double since = rng.uniform(0.0, t1.refresh_interval * 0.9);
        const OpKind kind = rng.coin() ? OpKind::Read : OpKind::Write;
        if (access_outcome(cell, t1, op, since, kind, m) != AccessResult::Success) continue;

        TimingSet t2 = t1;
        t2.t_rcd += rng.uniform(0.0, 5.0);
        t2.t_ras += rng.uniform(0.0, 5.0) + (t2.t_rcd - t1.t_rcd);
        t2.t_wr += rng.uniform(0.0, 5.0);
        t2.t_rp += rng.uniform(0.0, 5.0);
        t2.refresh_interval = t1.refresh_interval - rng.uniform(0.0, t1.refresh_interval - since);
        CHECK(access_outcome(cell, t2, op, since, kind, m) == AccessResult::Success);
        ++checked;
    }
}

TEST_CASE("access outcome never degrades when temperature drops") {
    const ModelConstants m = noiseless();
    Rng rng(81);
    int checked = 0;
    while (checked < kPropertyCases) {
        const CellParameters cell = testutil::random_cell(rng);
        const TimingSet t = testutil::random_timing(rng);
        const double hot_t = rng.uniform(1.0, 100.0);
        const double since = rng.uniform(0.0, t.refresh_interval);
        const OpKind kind = rng.coin() ? OpKind::Read : OpKind::Write;
        if (access_outcome(cell, t, OperatingPoint{hot_t}, since, kind, m) !=
            AccessResult::Success)
            continue;
        const double cold_t = rng.uniform(0.0, hot_t);
        CHECK(access_outcome(cell, t, OperatingPoint{cold_t}, since, kind, m) ==
              AccessResult::Success);
        ++checked;
    }
}

TEST_CASE("access outcome is monotone in cell quality") {
    const ModelConstants m = noiseless();
    Rng rng(91);
    int checked = 0;
    while (checked < kPropertyCases) {
        const CellParameters worse = testutil::random_cell(rng);
        const TimingSet t = testutil::random_timing(rng);
        const OperatingPoint op{rng.uniform(0.0, 100.0)};
        const double since = rng.uniform(0.0, t.refresh_interval);
        const OpKind kind = rng.coin() ? OpKind::Read : OpKind::Write;
        if (access_outcome(worse, t, op, since, kind, m) != AccessResult::Success) continue;

        CellParameters better = worse;
        better.charge_capacity = std::min(1.0, worse.charge_capacity + rng.uniform(0.0, 0.3));
        better.fill_time_constant = worse.fill_time_constant * rng.uniform(0.5, 1.0);
        better.leakage_time_constant_ref = worse.leakage_time_constant_ref * rng.uniform(1.0, 3.0);
        CHECK(dominates(better, worse));
        CHECK(access_outcome(better, t, op, since, kind, m) == AccessResult::Success);
        ++checked;
    }
}

TEST_CASE("charge stays in [0, 1] through arbitrary operation sequences") {
    const ModelConstants m = noiseless();
    Rng rng(101);
    for (int i = 0; i < 2000; ++i) {
        const CellParameters cell = testutil::random_cell(rng);
        ChargeState state{rng.uniform(0.0, 1.0)};
        for (int step = 0; step < 8; ++step) {
            if (rng.coin()) {
                state = leak(state, cell, rng.uniform(0.0, 300.0),
                             OperatingPoint{rng.uniform(0.0, 100.0)}, m);
            } else {
                state = restore(state, cell, rng.uniform(0.0, 50.0));
            }
            CHECK(state.charge >= 0.0);
            CHECK(state.charge <= 1.0);
        }
    }
}

TEST_CASE("noiseless operations are pure: identical inputs, identical outputs") {
    const ModelConstants m = noiseless();
    Rng rng(111);
    for (int i = 0; i < 1000; ++i) {
        const CellParameters cell = testutil::random_cell(rng);
        const TimingSet t = testutil::random_timing(rng);
        const OperatingPoint op{rng.uniform(0.0, 100.0)};
        const double since = rng.uniform(0.0, t.refresh_interval);
        const OpKind kind = rng.coin() ? OpKind::Read : OpKind::Write;
        CHECK(access_outcome(cell, t, op, since, kind, m) ==
              access_outcome(cell, t, op, since, kind, m));
    }
}

TEST_CASE("retention limit brackets the pass/fail boundary and shrinks with heat") {
    const ModelConstants m = noiseless();
    Rng rng(121);
    TimingSet standard;
    int checked = 0;
    while (checked < 300) {
        const CellParameters cell = testutil::random_cell(rng);
        const OperatingPoint op{rng.uniform(40.0, 100.0)};
        const double r = retention_limit(cell, standard, op, OpKind::Read, m);
        if (r <= 0.0 || r >= 4096.0) continue;
        TimingSet at = standard;
        at.refresh_interval = r + 1.0;
        CHECK(access_outcome(cell, at, op, r - 0.01, OpKind::Read, m) == AccessResult::Success);
        CHECK(access_outcome(cell, at, op, r + 0.01, OpKind::Read, m) == AccessResult::Error);

        const double colder = retention_limit(cell, standard, OperatingPoint{op.temperature - 10.0},
                                              OpKind::Read, m);
        CHECK(colder >= r);
        ++checked;
    }
}
