#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wearsim/power_model.hpp"
#include "wearsim/thermal.hpp"
#include "wearsim/transition.hpp"
#include "wearsim/workload.hpp"

namespace wearsim {

/// Everything one simulation run needs.
///
/// Tasks run one at a time in arrival order (FIFO). When `stall_dwell` is
/// set, a stepped ramp-up stalls at each intermediate level instead of
/// retiring task cycles there.
struct Scenario {
    ProcessorSpec spec;
    std::vector<Task> tasks;
    GovernorPolicy governor;
    TransitionPolicy policy;
    double duration_s = 0.0;
    double trace_dt_s = 1.0;
    double cost_rate_usd_per_mwh = kDefaultCostRateUsdPerMwh;
    bool stall_dwell = false;
};

/// validate_spec plus the scenario-level rules (sorted tasks, horizon covers
/// every deadline, governor index in range, ...). Field names are dotted paths
/// matching the scenario file layout.
ValidationResult validate_scenario(const Scenario& scenario);

struct TaskOutcome {
    std::string id;
    std::size_t level_index = 0;
    double level_freq_hz = 0.0;
    /// Empty when the horizon ended before the task could start or finish.
    std::optional<double> start_s;
    std::optional<double> finish_s;
    double deadline_s = 0.0;
    bool deadline_met = false;
    /// False when the governor found no level meeting the deadline.
    bool feasible = true;
};

struct TransitionStats {
    std::size_t hops = 0;
    double sum_delta_f_hz = 0.0;
};

struct SimReport {
    EnergyBreakdown energy;
    double cost_usd = 0.0;
    std::vector<TaskOutcome> per_task;
    TransitionStats transitions;
    double peak_temp_c = 0.0;
    double avg_temp_c = 0.0;
    WearLedger ledger;
    /// Empty means unbounded (no wear accrued).
    std::optional<double> projected_lifetime_s;
    double duration_s = 0.0;

    [[nodiscard]] std::size_t deadline_misses() const noexcept;
};

struct TracePoint {
    double time_s = 0.0;
    double freq_hz = 0.0;
    double power_w = 0.0;
    double temp_c = 0.0;
    double cum_wear = 0.0;
};

/// One piecewise-constant-power stretch of the timeline.
struct Interval {
    double start_s = 0.0;
    double length_s = 0.0;
    std::size_t level_index = 0;
    double power_w = 0.0;
    bool active = false;
};

/// One executed transition plan. Plans cut short by an arrival, a task
/// completion or the horizon only list the hops that actually happened.
struct TransitionRecord {
    double time_s = 0.0;
    TransitionPlan plan;
    double wear = 0.0;
};

struct SimResult {
    SimReport report;
    std::vector<TracePoint> trace;
    std::vector<Interval> intervals;
    std::vector<TransitionRecord> transition_log;
};

/// Runs the scenario to its horizon. Throws ValidationError before doing any
/// work if validate_scenario fails. Deterministic: equal inputs give equal outputs.
SimResult simulate(const Scenario& scenario);

struct PolicyDelta {
    double energy_j = 0.0;
    double shock_wear = 0.0;
    double thermal_wear = 0.0;
    long deadline_misses = 0;
    /// lifetime / baseline lifetime; empty if either side is unbounded.
    std::optional<double> lifetime_ratio;
    /// Ids of tasks whose deadline outcome differs from the baseline run.
    std::vector<std::string> changed_deadlines;
};

struct PolicyRun {
    TransitionPolicy policy;
    SimReport report;
    /// Relative to the first policy; all-zero for the first entry.
    PolicyDelta delta;
};

struct ComparisonReport {
    std::vector<PolicyRun> runs;
};

/// Simulates the scenario once per policy, everything else unchanged. Runs
/// may proceed on separate threads; results follow the input order. Errors
/// are rethrown annotated with the offending policy.
ComparisonReport compare_policies(const Scenario& scenario,
                                  const std::vector<TransitionPolicy>& policies,
                                  bool parallel = true);

} // namespace wearsim
