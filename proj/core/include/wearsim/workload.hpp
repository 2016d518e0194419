#pragma once

#include <cstddef>
#include <string>

#include "wearsim/power_model.hpp"

namespace wearsim {

/// A unit of work measured in processor cycles, with an absolute release
/// time and an absolute deadline (both in simulation seconds).
struct Task {
    std::string id;
    double cycles = 0.0;
    double arrival_s = 0.0;
    double deadline_s = 0.0;
};

ValidationResult validate_task(const Task& task);

struct GovernorPolicy {
    enum class Kind { lowest_feasible, min_energy, fixed };

    Kind kind = Kind::lowest_feasible;
    std::size_t fixed_index = 0;

    static GovernorPolicy lowest_feasible() { return {Kind::lowest_feasible, 0}; }
    static GovernorPolicy min_energy() { return {Kind::min_energy, 0}; }
    static GovernorPolicy fixed(std::size_t index) { return {Kind::fixed, index}; }
};

const char* to_string(GovernorPolicy::Kind kind) noexcept;

/// Seconds needed to retire task.cycles at level.freq_hz.
double execution_time(const Task& task, const FrequencyLevel& level) noexcept;

/// Slowest level that finishes before the deadline when started at `start_s`.
/// Throws InfeasibleError (with the required frequency) if none does.
const FrequencyLevel& lowest_feasible_level(const ProcessorSpec& spec, const Task& task,
                                            double start_s);

/// Feasible level minimising active-plus-idle energy over the window
/// [start_s, deadline]. Ties go to the lower index. Throws InfeasibleError.
const FrequencyLevel& min_energy_level(const ProcessorSpec& spec, const Task& task,
                                       double start_s);

/// What a governor decided for one task start.
struct LevelChoice {
    std::size_t index = 0;
    /// Whether the chosen level meets the deadline from this start. Feasibility
    /// governors that find no such level fall back to the top level.
    bool feasible = true;
};

/// Applies `governor` once at task start.
LevelChoice select_level(const ProcessorSpec& spec, const GovernorPolicy& governor,
                         const Task& task, double start_s);

} // namespace wearsim
