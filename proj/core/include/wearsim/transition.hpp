#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wearsim/params.hpp"
#include "wearsim/power_model.hpp"

namespace wearsim {

/// How the processor moves between two ladder levels.
///
/// `direct` jumps in a single hop. `stepped` walks through every adjacent
/// level in between and stays `dwell_s` seconds at each intermediate level.
struct TransitionPolicy {
    enum class Kind { direct, stepped };

    Kind kind = Kind::direct;
    double dwell_s = 0.0;

    static TransitionPolicy direct() { return {Kind::direct, 0.0}; }
    static TransitionPolicy stepped(double dwell_s = 0.0) { return {Kind::stepped, dwell_s}; }

    bool operator==(const TransitionPolicy&) const = default;
};

/// "direct", "stepped" or "stepped:<dwell_s>".
std::string to_string(const TransitionPolicy& policy);

/// Inverse of to_string. Throws DomainError on malformed input.
TransitionPolicy parse_transition_policy(const std::string& text);

struct Hop {
    std::size_t from_index = 0;
    std::size_t to_index = 0;
    double delta_f_hz = 0.0;
    double dwell_after_s = 0.0;
};

struct TransitionPlan {
    std::vector<Hop> hops;

    [[nodiscard]] bool empty() const noexcept { return hops.empty(); }
    [[nodiscard]] double total_delta_f_hz() const noexcept;
};

TransitionPlan plan_transition(const ProcessorSpec& spec, const FrequencyLevel& from,
                               const FrequencyLevel& to, const TransitionPolicy& policy);

/// Wear of a single hop: k_shock * (delta_f / f_span)^alpha.
double shock_wear(const WearParams& params, double delta_f_hz);

double plan_wear(const WearParams& params, const TransitionPlan& plan);

} // namespace wearsim
