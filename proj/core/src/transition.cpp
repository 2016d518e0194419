#include "wearsim/transition.hpp"

#include <charconv>
#include <cmath>

namespace wearsim {

std::string to_string(const TransitionPolicy& policy)
{
    if (policy.kind == TransitionPolicy::Kind::direct) {
        return "direct";
    }
    if (policy.dwell_s == 0.0) {
        return "stepped";
    }
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, policy.dwell_s);
    (void)ec;
    return "stepped:" + std::string(buf, end);
}

TransitionPolicy parse_transition_policy(const std::string& text)
{
    if (text == "direct") {
        return TransitionPolicy::direct();
    }
    if (text == "stepped") {
        return TransitionPolicy::stepped();
    }
    const std::string prefix = "stepped:";
    if (text.rfind(prefix, 0) == 0) {
        const char* first = text.data() + prefix.size();
        const char* last = text.data() + text.size();
        double dwell = 0.0;
        auto [ptr, ec] = std::from_chars(first, last, dwell);
        if (ec == std::errc() && ptr == last && first != last && std::isfinite(dwell) &&
            dwell >= 0.0) {
            return TransitionPolicy::stepped(dwell);
        }
    }
    throw DomainError("bad transition policy '" + text +
                      "' (expected direct, stepped or stepped:<dwell_s>)");
}

double TransitionPlan::total_delta_f_hz() const noexcept
{
    double sum = 0.0;
    for (const auto& hop : hops) {
        sum += hop.delta_f_hz;
    }
    return sum;
}

TransitionPlan plan_transition(const ProcessorSpec& spec, const FrequencyLevel& from,
                               const FrequencyLevel& to, const TransitionPolicy& policy)
{
    require_level(spec, from);
    require_level(spec, to);
    if (!(policy.dwell_s >= 0.0)) {
        throw DomainError("transition dwell must be non-negative");
    }

    TransitionPlan plan;
    if (from.index == to.index) {
        return plan;
    }
    if (policy.kind == TransitionPolicy::Kind::direct) {
        plan.hops.push_back({from.index, to.index, std::abs(to.freq_hz - from.freq_hz), 0.0});
        return plan;
    }

    const bool up = to.index > from.index;
    for (std::size_t i = from.index; i != to.index;) {
        const std::size_t next = up ? i + 1 : i - 1;
        const double df = std::abs(spec.levels[next].freq_hz - spec.levels[i].freq_hz);
        const double dwell = next == to.index ? 0.0 : policy.dwell_s;
        plan.hops.push_back({i, next, df, dwell});
        i = next;
    }
    return plan;
}

double shock_wear(const WearParams& params, double delta_f_hz)
{
    if (!(delta_f_hz >= 0.0)) {
        throw DomainError("shock_wear: delta_f must be non-negative");
    }
    if (delta_f_hz == 0.0) {
        return 0.0;
    }
    return params.k_shock * std::pow(delta_f_hz / params.f_span_hz, params.alpha);
}

double plan_wear(const WearParams& params, const TransitionPlan& plan)
{
    double wear = 0.0;
    for (const auto& hop : plan.hops) {
        wear += shock_wear(params, hop.delta_f_hz);
    }
    return wear;
}

} // namespace wearsim
