#include "wearsim/workload.hpp"

#include <cmath>

namespace wearsim {

namespace {

void check_start(const Task& task, double start_s)
{
    if (!(start_s >= task.arrival_s)) {
        throw DomainError("task '" + task.id + "' cannot start before its arrival");
    }
}

bool fits(const Task& task, const FrequencyLevel& level, double window_s) noexcept
{
    return execution_time(task, level) <= window_s;
}

[[noreturn]] void throw_infeasible(const Task& task, double window_s)
{
    const double required = window_s > 0.0 ? task.cycles / window_s : INFINITY;
    throw InfeasibleError(task.id, required);
}

} // namespace

ValidationResult validate_task(const Task& task)
{
    ValidationResult out;
    if (task.id.empty()) {
        out.add("id", "must not be empty");
    }
    if (!std::isfinite(task.cycles) || task.cycles <= 0.0) {
        out.add("cycles", "must be positive");
    }
    if (!std::isfinite(task.arrival_s) || task.arrival_s < 0.0) {
        out.add("arrival_s", "must be non-negative");
    }
    if (!std::isfinite(task.deadline_s) || !(task.deadline_s > task.arrival_s)) {
        out.add("deadline_s", "deadline must be after arrival");
    }
    return out;
}

const char* to_string(GovernorPolicy::Kind kind) noexcept
{
    switch (kind) {
    case GovernorPolicy::Kind::lowest_feasible:
        return "lowest_feasible";
    case GovernorPolicy::Kind::min_energy:
        return "min_energy";
    case GovernorPolicy::Kind::fixed:
        return "fixed";
    }
    return "?";
}

double execution_time(const Task& task, const FrequencyLevel& level) noexcept
{
    return task.cycles / level.freq_hz;
}

const FrequencyLevel& lowest_feasible_level(const ProcessorSpec& spec, const Task& task,
                                            double start_s)
{
    check_start(task, start_s);
    const double window = task.deadline_s - start_s;
    for (const auto& level : spec.levels) {
        if (fits(task, level, window)) {
            return level;
        }
    }
    throw_infeasible(task, window);
}

const FrequencyLevel& min_energy_level(const ProcessorSpec& spec, const Task& task,
                                       double start_s)
{
    check_start(task, start_s);
    const double window = task.deadline_s - start_s;
    const FrequencyLevel* best = nullptr;
    double best_energy = 0.0;
    for (const auto& level : spec.levels) {
        if (!fits(task, level, window)) {
            continue;
        }
        const double t_active = execution_time(task, level);
        const double energy = task_energy(spec, level, t_active, window - t_active).total_j;
        // strict < keeps the lower index on ties
        if (best == nullptr || energy < best_energy) {
            best = &level;
            best_energy = energy;
        }
    }
    if (best == nullptr) {
        throw_infeasible(task, window);
    }
    return *best;
}

LevelChoice select_level(const ProcessorSpec& spec, const GovernorPolicy& governor,
                         const Task& task, double start_s)
{
    try {
        switch (governor.kind) {
        case GovernorPolicy::Kind::fixed: {
            const auto& level = spec.level(governor.fixed_index);
            return {level.index, fits(task, level, task.deadline_s - start_s)};
        }
        case GovernorPolicy::Kind::lowest_feasible:
            return {lowest_feasible_level(spec, task, start_s).index, true};
        case GovernorPolicy::Kind::min_energy:
            return {min_energy_level(spec, task, start_s).index, true};
        }
    } catch (const InfeasibleError&) {
    }
    return {spec.highest().index, false};
}

} // namespace wearsim
