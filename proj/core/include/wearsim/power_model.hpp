#pragma once

#include <cstddef>
#include <vector>

#include "wearsim/errors.hpp"
#include "wearsim/params.hpp"

namespace wearsim {

/// One (frequency, voltage) operating point. `index` is its position in the ladder.
struct FrequencyLevel {
    std::size_t index = 0;
    double freq_hz = 0.0;
    double vdd_v = 0.0;

    bool operator==(const FrequencyLevel&) const = default;
};

/// A DVFS processor: the frequency/voltage ladder and the power coefficients
///
///   P_active = coeff_a * f * Vdd^2 + coeff_b * Vdd + p_device
///   P_idle   = p_idle            (independent of the level)
///
/// with coeff_a in W/(Hz*V^2), coeff_b in W/V, p_device and p_idle in W.
struct ProcessorSpec {
    std::vector<FrequencyLevel> levels;
    double coeff_a = 0.0;
    double coeff_b = 0.0;
    double p_device_w = 0.0;
    double p_idle_w = 0.0;
    ThermalParams thermal;
    WearParams wear;

    [[nodiscard]] const FrequencyLevel& lowest() const { return levels.front(); }
    [[nodiscard]] const FrequencyLevel& highest() const { return levels.back(); }
    /// Bounds-checked lookup; throws UnknownLevelError.
    [[nodiscard]] const FrequencyLevel& level(std::size_t index) const;
};

struct EnergyBreakdown {
    double active_j = 0.0;
    double idle_j = 0.0;
    double total_j = 0.0;
};

/// Builds a ladder from parallel (freq, vdd) lists, assigning indices by position.
std::vector<FrequencyLevel> make_ladder(const std::vector<double>& freqs_hz,
                                        const std::vector<double>& vdds_v);

/// Six levels from 800 MHz to 1800 MHz in 200 MHz steps. The voltages are
/// synthetic (0.95 V to 1.45 V in 0.1 V steps); only the endpoints and count
/// describe a real part.
std::vector<FrequencyLevel> default_ladder();

/// Checks every ProcessorSpec invariant, including the thermal and wear
/// parameter blocks. Returns all violations found.
ValidationResult validate_spec(const ProcessorSpec& spec);

/// Throws UnknownLevelError unless `level` is exactly one of spec.levels.
void require_level(const ProcessorSpec& spec, const FrequencyLevel& level);

double active_power(const ProcessorSpec& spec, const FrequencyLevel& level);
double idle_power(const ProcessorSpec& spec) noexcept;

/// Energy of a task window. Throws DomainError on negative times.
EnergyBreakdown task_energy(const ProcessorSpec& spec, const FrequencyLevel& level,
                            double t_active_s, double t_idle_s);

/// Dollars for running at `average_power_mw` for `duration_h` at `rate` $/MWh.
double energy_cost(double average_power_mw, double duration_h, double rate_usd_per_mwh);

inline constexpr double kDefaultCostRateUsdPerMwh = 100.0;

} // namespace wearsim
