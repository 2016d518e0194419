#include <gtest/gtest.h>

#include <algorithm>

#include <random>

#include "support/oracles.hpp"
#include "wearsim/power_model.hpp"

using namespace wearsim;
using wearsim::testing::oracle_active_power;
using wearsim::testing::rel_err;

namespace {

ProcessorSpec simple_spec(double a, double b, double dev, double idle)
{
    ProcessorSpec spec;
    spec.levels = make_ladder({1e9, 1.8e9}, {1.0, 1.2});
    spec.coeff_a = a;
    spec.coeff_b = b;
    spec.p_device_w = dev;
    spec.p_idle_w = idle;
    spec.wear.f_span_hz = 8e8;
    return spec;
}

} // namespace

TEST(ValidateSpec, DefaultSixLevelLadderIsValid)
{
    ProcessorSpec spec = wearsim::testing::turion_spec();
    ASSERT_EQ(spec.levels.size(), 6u);
    EXPECT_DOUBLE_EQ(spec.levels.front().freq_hz, 800e6);
    EXPECT_DOUBLE_EQ(spec.levels.back().freq_hz, 1800e6);
    EXPECT_TRUE(validate_spec(spec).ok()) << format_violations(validate_spec(spec));
}

TEST(ValidateSpec, DuplicateFrequency)
{
    ProcessorSpec spec = wearsim::testing::turion_spec();
    spec.levels[2].freq_hz = spec.levels[1].freq_hz;
    const auto result = validate_spec(spec);
    EXPECT_FALSE(result.ok());
    EXPECT_TRUE(result.has_rule("duplicate frequency"));
}

TEST(ValidateSpec, NegativeCoefficient)
{
    ProcessorSpec spec = wearsim::testing::turion_spec();
    spec.coeff_a = -1.0;
    const auto result = validate_spec(spec);
    EXPECT_TRUE(result.has_rule("negative coefficient"));
    const auto& v = result.violations;
    EXPECT_TRUE(std::any_of(v.begin(), v.end(), [](const Violation& x) { return x.field == "coeff_a"; }));
}

TEST(ValidateSpec, CollectsEveryViolation)
{
    ProcessorSpec spec = wearsim::testing::turion_spec();
    spec.coeff_b = -0.5;
    spec.p_idle_w = -1.0;
    std::swap(spec.levels[0].freq_hz, spec.levels[3].freq_hz);
    spec.thermal.r_th_k_per_w = 0.0;
    spec.wear.alpha = 0.5;
    const auto result = validate_spec(spec);
    EXPECT_TRUE(result.has_rule("ladder not strictly increasing"));
    EXPECT_TRUE(result.has_rule("negative coefficient"));
    EXPECT_TRUE(result.has_rule("must be positive"));
    EXPECT_TRUE(result.has_rule("must be at least 1"));
    EXPECT_GE(result.violations.size(), 5u);
}

TEST(ValidateSpec, SingleLevelRejected)
{
    ProcessorSpec spec = wearsim::testing::turion_spec();
    spec.levels.resize(1);
    EXPECT_TRUE(validate_spec(spec).has_rule("at least two levels required"));
}

TEST(ValidateSpec, FlatPowerRejected)
{
    // A = B = 0 makes every level draw the same power
    ProcessorSpec spec = simple_spec(0.0, 0.0, 3.0, 0.5);
    EXPECT_TRUE(validate_spec(spec).has_rule("active power not strictly increasing"));
}

TEST(ActivePower, ZeroCoefficientsGiveDevicePower)
{
    const ProcessorSpec spec = simple_spec(0.0, 0.0, 3.0, 0.0);
    for (const auto& lv : spec.levels) {
        EXPECT_EQ(active_power(spec, lv), 3.0);
    }
}

TEST(ActivePower, DeskValues)
{
    ProcessorSpec spec = simple_spec(1e-9, 0.5, 1.0, 0.0);
    spec.levels = make_ladder({1e9, 1.8e9}, {1.0, 1.2});
    EXPECT_LE(rel_err(active_power(spec, spec.levels[1]), 4.192), 1e-12);

    ProcessorSpec bare = simple_spec(1e-9, 0.0, 0.0, 0.0);
    EXPECT_LE(rel_err(active_power(bare, bare.levels[0]), 1.0), 1e-12);
}

TEST(ActivePower, UnknownLevelThrows)
{
    const ProcessorSpec spec = simple_spec(1e-9, 0.0, 0.0, 0.0);
    EXPECT_THROW(active_power(spec, FrequencyLevel{5, 1e9, 1.0}), UnknownLevelError);
    EXPECT_THROW(active_power(spec, FrequencyLevel{0, 1.1e9, 1.0}), UnknownLevelError);
}

TEST(IdlePower, IndependentOfLadder)
{
    ProcessorSpec a = simple_spec(1e-9, 0.0, 0.0, 0.8);
    ProcessorSpec b = wearsim::testing::turion_spec();
    b.p_idle_w = 0.8;
    EXPECT_EQ(idle_power(a), 0.8);
    EXPECT_EQ(idle_power(a), idle_power(b));
    a.p_idle_w = 0.0;
    EXPECT_EQ(idle_power(a), 0.0);
}

TEST(TaskEnergy, DeskValue)
{
    ProcessorSpec spec = simple_spec(1e-9, 0.5, 1.0, 0.8);
    const auto e = task_energy(spec, spec.levels[1], 10.0, 5.0);
    EXPECT_LE(rel_err(e.active_j, 41.92), 1e-12);
    EXPECT_LE(rel_err(e.idle_j, 4.0), 1e-12);
    EXPECT_LE(rel_err(e.total_j, 45.92), 1e-12);
}

TEST(TaskEnergy, ZeroCases)
{
    ProcessorSpec spec = simple_spec(1e-9, 0.5, 1.0, 0.8);
    EXPECT_EQ(task_energy(spec, spec.levels[0], 0.0, 0.0).total_j, 0.0);
    ProcessorSpec zero = simple_spec(0.0, 0.0, 0.0, 0.0);
    EXPECT_EQ(task_energy(zero, zero.levels[0], 1.0, 0.0).total_j, 0.0);
}

TEST(TaskEnergy, NegativeTimeIsDomainError)
{
    ProcessorSpec spec = simple_spec(1e-9, 0.5, 1.0, 0.8);
    EXPECT_THROW(task_energy(spec, spec.levels[0], -1.0, 0.0), DomainError);
    EXPECT_THROW(task_energy(spec, spec.levels[0], 1.0, -0.1), DomainError);
}

TEST(EnergyCost, PeakPowerAnchors)
{
    EXPECT_EQ(energy_cost(12.0, 1.0, 100.0), 1200.0);
    EXPECT_EQ(energy_cost(100.0, 1.0, 100.0), 10000.0);
    EXPECT_EQ(energy_cost(0.0, 1.0, 100.0), 0.0);
    EXPECT_THROW(energy_cost(-1.0, 1.0, 100.0), DomainError);
    EXPECT_THROW(energy_cost(1.0, 1.0, -100.0), DomainError);
}

TEST(PowerModelProperties, RandomSpecs)
{
    std::mt19937_64 rng(0x5eed0001);
    std::uniform_real_distribution<double> time(0.0, 100.0);
    for (int trial = 0; trial < 200; ++trial) {
        const ProcessorSpec spec = wearsim::testing::random_spec(rng);
        ASSERT_TRUE(validate_spec(spec).ok()) << format_violations(validate_spec(spec));

        for (std::size_t i = 0; i < spec.levels.size(); ++i) {
            const auto& lv = spec.levels[i];
            const double expected = oracle_active_power(spec.coeff_a, spec.coeff_b,
                                                        spec.p_device_w, lv.freq_hz, lv.vdd_v);
            EXPECT_LE(rel_err(active_power(spec, lv), expected), 1e-12);
            if (i + 1 < spec.levels.size()) {
                EXPECT_LT(active_power(spec, lv), active_power(spec, spec.levels[i + 1]));
            }
        }

        const auto& lv = spec.levels[rng() % spec.levels.size()];
        const double t = time(rng);
        const double s = time(rng);
        const double once = task_energy(spec, lv, t, s).total_j;
        const double twice = task_energy(spec, lv, 2 * t, 2 * s).total_j;
        EXPECT_LE(rel_err(twice, 2 * once), 1e-12);
        const double expected = oracle_active_power(spec.coeff_a, spec.coeff_b, spec.p_device_w,
                                                    lv.freq_hz, lv.vdd_v) * t +
                                spec.p_idle_w * s;
        EXPECT_LE(rel_err(once, expected), 1e-12);
    }
}
