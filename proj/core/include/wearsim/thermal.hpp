#pragma once

#include <optional>

#include "wearsim/params.hpp"

namespace wearsim {

struct ThermalState {
    double temp_c = 0.0;
    double time_s = 0.0;
};

/// Accumulated wear, as fractions of the baseline lifetime.
///
/// Both components only ever grow; the add_* members reject negative
/// increments with DomainError.
class WearLedger {
public:
    WearLedger() = default;
    WearLedger(double thermal_wear, double shock_wear, double elapsed_s);

    [[nodiscard]] double thermal_wear() const noexcept { return thermal_; }
    [[nodiscard]] double shock_wear() const noexcept { return shock_; }
    [[nodiscard]] double elapsed_s() const noexcept { return elapsed_; }
    [[nodiscard]] double total() const noexcept { return thermal_ + shock_; }

    void add_thermal(double wear);
    void add_shock(double wear);
    void advance(double dt_s);

private:
    double thermal_ = 0.0;
    double shock_ = 0.0;
    double elapsed_ = 0.0;
};

/// Wear-rate multiplier of the 2x-per-10°C rule: 2^((temp - t_ref) / 10).
double arrhenius_factor(const ThermalParams& params, double temp_c) noexcept;

double steady_state_temp(const ThermalParams& params, double power_w) noexcept;

/// Closed-form update of the RC node under constant power for dt seconds.
ThermalState thermal_step(const ThermalParams& params, const ThermalState& state, double power_w,
                          double dt_s);

/// Temperature-time integral of one constant-power interval, in °C*s.
double temperature_integral(const ThermalParams& params, const ThermalState& state,
                            double power_w, double dt_s);

struct ThermalWearStep {
    double wear = 0.0;
    ThermalState end;
};

/// Default trapezoid substep: tau / kSubstepsPerTau.
inline constexpr double kSubstepsPerTau = 200.0;

/// Integrates arrhenius_factor(T(t)) / l_base over [0, dt] along the exact
/// temperature trajectory with the composite trapezoid rule. Substeps are
/// uniform and no longer than min(dt, tau / kSubstepsPerTau).
ThermalWearStep integrate_thermal_wear(const ThermalParams& params, const ThermalState& state,
                                       double power_w, double dt_s);

/// Same, with an explicit upper bound on the substep length.
ThermalWearStep integrate_thermal_wear(const ThermalParams& params, const ThermalState& state,
                                       double power_w, double dt_s, double max_substep_s);

/// Seconds until cumulative wear reaches 1 at the ledger's average rate, or
/// nullopt (unbounded) when no wear accrued. Throws DomainError if elapsed <= 0.
std::optional<double> project_lifetime(const WearLedger& ledger);

} // namespace wearsim
