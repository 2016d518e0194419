#pragma once

namespace wearsim {

/// Lumped RC thermal node plus the reference point of the 2x-per-10°C wear rule.
struct ThermalParams {
    double r_th_k_per_w = 0.5;
    double c_th_j_per_k = 10.0;
    double t_amb_c = 25.0;
    double t_ref_c = 25.0;
    double l_base_s = 1.0;

    /// Thermal time constant r_th * c_th, in seconds.
    [[nodiscard]] double tau_s() const noexcept { return r_th_k_per_w * c_th_j_per_k; }
};

/// Transition shock model: wear = k_shock * (delta_f / f_span)^alpha per hop.
struct WearParams {
    double k_shock = 0.0;
    double alpha = 2.0;
    double f_span_hz = 1.0;
};

} // namespace wearsim
