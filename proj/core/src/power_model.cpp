#include "wearsim/power_model.hpp"

#include <cmath>
#include <string>

namespace wearsim {

namespace {

std::string level_field(std::size_t i, const char* member)
{
    return "levels[" + std::to_string(i) + "]." + member;
}

void check_non_negative(ValidationResult& out, const char* field, double value)
{
    if (!std::isfinite(value)) {
        out.add(field, "must be finite");
    } else if (value < 0.0) {
        out.add(field, "negative coefficient");
    }
}

void check_positive(ValidationResult& out, const std::string& field, double value)
{
    if (!std::isfinite(value)) {
        out.add(field, "must be finite");
    } else if (value <= 0.0) {
        out.add(field, "must be positive");
    }
}

double raw_active_power(const ProcessorSpec& spec, const FrequencyLevel& level) noexcept
{
    return spec.coeff_a * level.freq_hz * level.vdd_v * level.vdd_v + spec.coeff_b * level.vdd_v +
           spec.p_device_w;
}

} // namespace

const FrequencyLevel& ProcessorSpec::level(std::size_t index) const
{
    if (index >= levels.size()) {
        throw UnknownLevelError("level index " + std::to_string(index) + " outside ladder of " +
                                std::to_string(levels.size()) + " levels");
    }
    return levels[index];
}

std::vector<FrequencyLevel> make_ladder(const std::vector<double>& freqs_hz,
                                        const std::vector<double>& vdds_v)
{
    if (freqs_hz.size() != vdds_v.size()) {
        throw DomainError("make_ladder: frequency and voltage lists differ in length");
    }
    std::vector<FrequencyLevel> ladder;
    ladder.reserve(freqs_hz.size());
    for (std::size_t i = 0; i < freqs_hz.size(); ++i) {
        ladder.push_back({i, freqs_hz[i], vdds_v[i]});
    }
    return ladder;
}

std::vector<FrequencyLevel> default_ladder()
{
    return make_ladder({800e6, 1000e6, 1200e6, 1400e6, 1600e6, 1800e6},
                       {0.95, 1.05, 1.15, 1.25, 1.35, 1.45});
}

ValidationResult validate_spec(const ProcessorSpec& spec)
{
    ValidationResult out;
    const auto& levels = spec.levels;

    if (levels.size() < 2) {
        out.add("levels", "at least two levels required");
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const auto& lv = levels[i];
        if (lv.index != i) {
            out.add(level_field(i, "index"), "index does not match position");
        }
        check_positive(out, level_field(i, "freq_hz"), lv.freq_hz);
        check_positive(out, level_field(i, "vdd_v"), lv.vdd_v);

        for (std::size_t j = 0; j < i; ++j) {
            if (levels[j].freq_hz == lv.freq_hz) {
                out.add(level_field(i, "freq_hz"), "duplicate frequency");
                break;
            }
        }
        if (i == 0) {
            continue;
        }
        const auto& prev = levels[i - 1];
        if (lv.freq_hz < prev.freq_hz) {
            out.add(level_field(i, "freq_hz"), "ladder not strictly increasing");
        }
        if (lv.vdd_v <= prev.vdd_v) {
            out.add(level_field(i, "vdd_v"), "voltage not strictly increasing");
        }
        if (!(raw_active_power(spec, prev) < raw_active_power(spec, lv))) {
            out.add("levels[" + std::to_string(i) + "]", "active power not strictly increasing");
        }
    }

    check_non_negative(out, "coeff_a", spec.coeff_a);
    check_non_negative(out, "coeff_b", spec.coeff_b);
    check_non_negative(out, "p_device_w", spec.p_device_w);
    check_non_negative(out, "p_idle_w", spec.p_idle_w);

    const auto& th = spec.thermal;
    check_positive(out, "thermal.r_th_k_per_w", th.r_th_k_per_w);
    check_positive(out, "thermal.c_th_j_per_k", th.c_th_j_per_k);
    check_positive(out, "thermal.l_base_s", th.l_base_s);
    if (!std::isfinite(th.t_amb_c)) {
        out.add("thermal.t_amb_c", "must be finite");
    }
    if (!std::isfinite(th.t_ref_c)) {
        out.add("thermal.t_ref_c", "must be finite");
    }

    const auto& wp = spec.wear;
    if (!std::isfinite(wp.k_shock) || wp.k_shock < 0.0) {
        out.add("wear.k_shock", "must be non-negative");
    }
    if (!std::isfinite(wp.alpha) || wp.alpha < 1.0) {
        out.add("wear.alpha", "must be at least 1");
    }
    check_positive(out, "wear.f_span_hz", wp.f_span_hz);

    return out;
}

void require_level(const ProcessorSpec& spec, const FrequencyLevel& level)
{
    if (level.index >= spec.levels.size() || !(spec.levels[level.index] == level)) {
        throw UnknownLevelError("level " + std::to_string(level.index) + " (" +
                                std::to_string(level.freq_hz) + " Hz) is not in the ladder");
    }
}

double active_power(const ProcessorSpec& spec, const FrequencyLevel& level)
{
    require_level(spec, level);
    return raw_active_power(spec, level);
}

double idle_power(const ProcessorSpec& spec) noexcept { return spec.p_idle_w; }

EnergyBreakdown task_energy(const ProcessorSpec& spec, const FrequencyLevel& level,
                            double t_active_s, double t_idle_s)
{
    if (!(t_active_s >= 0.0) || !(t_idle_s >= 0.0)) {
        throw DomainError("task_energy: active and idle times must be non-negative");
    }
    EnergyBreakdown e;
    e.active_j = active_power(spec, level) * t_active_s;
    e.idle_j = idle_power(spec) * t_idle_s;
    e.total_j = e.active_j + e.idle_j;
    return e;
}

double energy_cost(double average_power_mw, double duration_h, double rate_usd_per_mwh)
{
    if (!(average_power_mw >= 0.0) || !(duration_h >= 0.0) || !(rate_usd_per_mwh >= 0.0)) {
        throw DomainError("energy_cost: power, duration and rate must be non-negative");
    }
    return average_power_mw * duration_h * rate_usd_per_mwh;
}

} // namespace wearsim
