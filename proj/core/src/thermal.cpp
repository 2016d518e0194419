#include "wearsim/thermal.hpp"

#include <cmath>

#include "wearsim/errors.hpp"

namespace wearsim {

namespace {

void check_interval(double power_w, double dt_s)
{
    if (!(dt_s >= 0.0)) {
        throw DomainError("thermal: interval length must be non-negative");
    }
    if (!(power_w >= 0.0)) {
        throw DomainError("thermal: power must be non-negative");
    }
}

void check_increment(double wear)
{
    if (!(wear >= 0.0)) {
        throw DomainError("wear ledger: increments must be non-negative");
    }
}

// T(s) for s in [0, dt] under constant power.
double temp_at(const ThermalParams& params, double t0, double t_ss, double s) noexcept
{
    return t_ss + (t0 - t_ss) * std::exp(-s / params.tau_s());
}

} // namespace

WearLedger::WearLedger(double thermal_wear, double shock_wear, double elapsed_s)
{
    add_thermal(thermal_wear);
    add_shock(shock_wear);
    advance(elapsed_s);
}

void WearLedger::add_thermal(double wear)
{
    check_increment(wear);
    thermal_ += wear;
}

void WearLedger::add_shock(double wear)
{
    check_increment(wear);
    shock_ += wear;
}

void WearLedger::advance(double dt_s)
{
    if (!(dt_s >= 0.0)) {
        throw DomainError("wear ledger: time cannot run backwards");
    }
    elapsed_ += dt_s;
}

double arrhenius_factor(const ThermalParams& params, double temp_c) noexcept
{
    return std::exp2((temp_c - params.t_ref_c) / 10.0);
}

double steady_state_temp(const ThermalParams& params, double power_w) noexcept
{
    return params.t_amb_c + power_w * params.r_th_k_per_w;
}

ThermalState thermal_step(const ThermalParams& params, const ThermalState& state, double power_w,
                          double dt_s)
{
    check_interval(power_w, dt_s);
    const double t_ss = steady_state_temp(params, power_w);
    return {temp_at(params, state.temp_c, t_ss, dt_s), state.time_s + dt_s};
}

double temperature_integral(const ThermalParams& params, const ThermalState& state,
                            double power_w, double dt_s)
{
    check_interval(power_w, dt_s);
    const double t_ss = steady_state_temp(params, power_w);
    const double tau = params.tau_s();
    return t_ss * dt_s + (state.temp_c - t_ss) * tau * -std::expm1(-dt_s / tau);
}

ThermalWearStep integrate_thermal_wear(const ThermalParams& params, const ThermalState& state,
                                       double power_w, double dt_s)
{
    return integrate_thermal_wear(params, state, power_w, dt_s,
                                  params.tau_s() / kSubstepsPerTau);
}

ThermalWearStep integrate_thermal_wear(const ThermalParams& params, const ThermalState& state,
                                       double power_w, double dt_s, double max_substep_s)
{
    check_interval(power_w, dt_s);
    if (!(max_substep_s > 0.0)) {
        throw DomainError("integrate_thermal_wear: substep bound must be positive");
    }

    ThermalWearStep out;
    out.end = thermal_step(params, state, power_w, dt_s);
    if (dt_s == 0.0) {
        return out;
    }

    const double t_ss = steady_state_temp(params, power_w);
    const auto n = static_cast<long>(std::ceil(dt_s / max_substep_s));
    const double h = dt_s / static_cast<double>(n);

    double sum = 0.5 * (arrhenius_factor(params, state.temp_c) +
                        arrhenius_factor(params, out.end.temp_c));
    for (long k = 1; k < n; ++k) {
        sum += arrhenius_factor(params, temp_at(params, state.temp_c, t_ss, h * k));
    }
    out.wear = sum * h / params.l_base_s;
    return out;
}

std::optional<double> project_lifetime(const WearLedger& ledger)
{
    if (!(ledger.elapsed_s() > 0.0)) {
        throw DomainError("project_lifetime: elapsed time must be positive");
    }
    const double w = ledger.total();
    if (w <= 0.0) {
        return std::nullopt;
    }
    return ledger.elapsed_s() / w;
}

} // namespace wearsim
