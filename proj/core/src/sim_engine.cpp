#include "wearsim/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>

namespace wearsim {

ValidationResult validate_scenario(const Scenario& scenario)
{
    ValidationResult out;

    const ValidationResult spec = validate_spec(scenario.spec);
    for (const auto& v : spec.violations) {
        const bool top_level = v.field.rfind("thermal.", 0) == 0 || v.field.rfind("wear.", 0) == 0;
        out.add(top_level ? v.field : "processor." + v.field, v.rule);
    }

    std::set<std::string> ids;
    double max_deadline = 0.0;
    for (std::size_t i = 0; i < scenario.tasks.size(); ++i) {
        const auto& task = scenario.tasks[i];
        const std::string prefix = "tasks[" + std::to_string(i) + "]";
        out.append(validate_task(task), prefix);
        if (!ids.insert(task.id).second) {
            out.add(prefix + ".id", "duplicate task id");
        }
        if (i > 0 && task.arrival_s < scenario.tasks[i - 1].arrival_s) {
            out.add(prefix + ".arrival_s", "tasks not sorted by arrival");
        }
        max_deadline = std::max(max_deadline, task.deadline_s);
    }

    if (!std::isfinite(scenario.duration_s) || scenario.duration_s <= 0.0) {
        out.add("sim.duration_s", "must be positive");
    } else if (scenario.duration_s < max_deadline) {
        out.add("sim.duration_s", "duration must cover every deadline");
    }
    if (!std::isfinite(scenario.trace_dt_s) || scenario.trace_dt_s <= 0.0) {
        out.add("sim.trace_dt_s", "must be positive");
    }
    if (!std::isfinite(scenario.cost_rate_usd_per_mwh) || scenario.cost_rate_usd_per_mwh < 0.0) {
        out.add("sim.cost_rate_usd_per_mwh", "must be non-negative");
    }
    if (scenario.governor.kind == GovernorPolicy::Kind::fixed &&
        scenario.governor.fixed_index >= scenario.spec.levels.size()) {
        out.add("governor.fixed_index", "outside ladder");
    }
    if (!std::isfinite(scenario.policy.dwell_s) || scenario.policy.dwell_s < 0.0) {
        out.add("policy.dwell_s", "must be non-negative");
    }
    return out;
}

std::size_t SimReport::deadline_misses() const noexcept
{
    return static_cast<std::size_t>(std::count_if(per_task.begin(), per_task.end(),
                                                  [](const TaskOutcome& t) { return !t.deadline_met; }));
}

namespace {

// Relative slack when comparing a finish time against its deadline; absorbs
// the rounding of start + cycles / f.
constexpr double kDeadlineSlackRel = 1e-12;

bool meets(double finish, double deadline) noexcept
{
    return finish <= deadline + kDeadlineSlackRel * std::max(1.0, std::abs(deadline));
}

class Run {
public:
    explicit Run(const Scenario& sc)
        : sc_(sc), spec_(sc.spec), horizon_(sc.duration_s),
          thermal_{sc.spec.thermal.t_amb_c, 0.0}, peak_temp_(thermal_.temp_c),
          last_power_(idle_power(sc.spec)), last_level_(0)
    {
        const double ratio = horizon_ / sc.trace_dt_s;
        samples_ = static_cast<std::size_t>(std::floor(ratio * (1.0 + 1e-12))) + 1;
        result_.trace.reserve(samples_);
    }

    SimResult execute()
    {
        const auto& tasks = sc_.tasks;
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            const Task& task = tasks[i];
            if (t_ < task.arrival_s) {
                advance_to(std::min(task.arrival_s, horizon_), idle_power(spec_), false);
            }
            run_task(task);

            const double next = i + 1 < tasks.size() ? tasks[i + 1].arrival_s : horizon_;
            const double gap_end = std::min(next, horizon_);
            if (t_ < gap_end) {
                ramp_down(gap_end);
            }
        }
        if (t_ < horizon_) {
            advance_to(horizon_, idle_power(spec_), false);
        }
        flush_trace();
        finish_report();
        return std::move(result_);
    }

private:
    const FrequencyLevel& current() const { return spec_.levels[level_]; }

    void run_task(const Task& task)
    {
        TaskOutcome out;
        out.id = task.id;
        out.deadline_s = task.deadline_s;
        out.level_index = level_;
        out.level_freq_hz = current().freq_hz;

        if (t_ >= horizon_) {
            out.feasible = false;
            result_.report.per_task.push_back(std::move(out));
            return;
        }

        const double start = t_;
        out.start_s = start;
        const LevelChoice choice = select_level(spec_, sc_.governor, task, start);
        out.level_index = choice.index;
        out.level_freq_hz = spec_.levels[choice.index].freq_hz;
        out.feasible = choice.feasible;

        const TransitionPlan plan =
            plan_transition(spec_, current(), spec_.levels[choice.index], sc_.policy);

        double remaining = task.cycles;
        bool done = false;
        TransitionRecord record{t_, {}, 0.0};
        for (const Hop& hop : plan.hops) {
            if (t_ >= horizon_) {
                break;
            }
            take_hop(hop, record);
            if (hop.dwell_after_s <= 0.0) {
                continue;
            }
            const double p = active_power(spec_, current());
            if (sc_.stall_dwell) {
                advance_to(std::min(t_ + hop.dwell_after_s, horizon_), p, true);
                continue;
            }
            const double f = current().freq_hz;
            const double needed = remaining / f;
            if (needed <= hop.dwell_after_s) {
                done = work_for(needed, p);
                remaining = 0.0;
                break;
            }
            const double end = t_ + hop.dwell_after_s;
            if (end > horizon_) {
                advance_to(horizon_, p, true);
                break;
            }
            advance_to(end, p, true);
            remaining -= hop.dwell_after_s * f;
        }
        close_plan(std::move(record));

        if (remaining > 0.0 && t_ < horizon_) {
            done = work_for(remaining / current().freq_hz, active_power(spec_, current()));
        }
        if (done) {
            out.finish_s = t_;
            out.deadline_met = meets(t_, task.deadline_s);
        }
        result_.report.per_task.push_back(std::move(out));
    }

    // Runs at the current level for `needed` seconds or until the horizon.
    // Returns whether the work completed.
    bool work_for(double needed, double power)
    {
        const double end = t_ + needed;
        if (end > horizon_) {
            advance_to(horizon_, power, true);
            return false;
        }
        advance_to(end, power, true);
        return true;
    }

    // Walks back to the lowest level while idle. Hops scheduled at or after
    // `gap_end` do not happen; the next task starts from wherever we are.
    void ramp_down(double gap_end)
    {
        const TransitionPlan plan = plan_transition(spec_, current(), spec_.lowest(), sc_.policy);
        TransitionRecord record{t_, {}, 0.0};
        for (const Hop& hop : plan.hops) {
            take_hop(hop, record);
            if (hop.dwell_after_s <= 0.0) {
                continue;
            }
            const double end = t_ + hop.dwell_after_s;
            if (end >= gap_end) {
                advance_to(gap_end, idle_power(spec_), false);
                break;
            }
            advance_to(end, idle_power(spec_), false);
        }
        close_plan(std::move(record));
    }

    void take_hop(const Hop& hop, TransitionRecord& record)
    {
        level_ = hop.to_index;
        record.plan.hops.push_back(hop);
        result_.report.transitions.hops += 1;
        result_.report.transitions.sum_delta_f_hz += hop.delta_f_hz;
    }

    void close_plan(TransitionRecord record)
    {
        if (record.plan.empty()) {
            return;
        }
        record.wear = plan_wear(spec_.wear, record.plan);
        ledger_.add_shock(record.wear);
        result_.transition_log.push_back(std::move(record));
    }

    void advance_to(double t_end, double power, bool active)
    {
        const double length = t_end - t_;
        if (!(length > 0.0)) {
            return;
        }
        const auto& params = spec_.thermal;
        const double freq = current().freq_hz;
        sample_until(t_end, power, freq);

        const ThermalWearStep step = integrate_thermal_wear(params, thermal_, power, length);
        ledger_.add_thermal(step.wear);
        ledger_.advance(length);
        temp_integral_ += temperature_integral(params, thermal_, power, length);
        auto& energy = result_.report.energy;
        (active ? energy.active_j : energy.idle_j) += power * length;

        result_.intervals.push_back({t_, length, level_, power, active});
        thermal_ = step.end;
        peak_temp_ = std::max(peak_temp_, thermal_.temp_c);
        last_power_ = power;
        last_level_ = level_;
        t_ = t_end;
    }

    // Emits trace points falling in [t_, t_end). Integrates wear separately
    // from the interval's own quadrature so sampling never changes state.
    void sample_until(double t_end, double power, double freq)
    {
        const auto& params = spec_.thermal;
        ThermalState at = thermal_;
        double at_time = t_;
        double wear = 0.0;
        while (next_sample_ < samples_) {
            const double ts = static_cast<double>(next_sample_) * sc_.trace_dt_s;
            if (ts >= t_end) {
                break;
            }
            const double ds = std::max(0.0, ts - at_time);
            const ThermalWearStep part = integrate_thermal_wear(params, at, power, ds);
            wear += part.wear;
            at = part.end;
            at_time = std::max(at_time, ts);
            result_.trace.push_back({ts, freq, power, at.temp_c, ledger_.total() + wear});
            ++next_sample_;
        }
    }

    void flush_trace()
    {
        const double freq = spec_.levels[last_level_].freq_hz;
        while (next_sample_ < samples_) {
            const double ts = static_cast<double>(next_sample_) * sc_.trace_dt_s;
            result_.trace.push_back({ts, freq, last_power_, thermal_.temp_c, ledger_.total()});
            ++next_sample_;
        }
    }

    void finish_report()
    {
        SimReport& r = result_.report;
        r.energy.total_j = r.energy.active_j + r.energy.idle_j;
        r.duration_s = horizon_;
        const double avg_power_mw = r.energy.total_j / horizon_ / 1e6;
        r.cost_usd = energy_cost(avg_power_mw, horizon_ / 3600.0, sc_.cost_rate_usd_per_mwh);
        r.peak_temp_c = peak_temp_;
        r.avg_temp_c = temp_integral_ / horizon_;
        r.ledger = ledger_;
        r.projected_lifetime_s = project_lifetime(ledger_);
    }

    const Scenario& sc_;
    const ProcessorSpec& spec_;
    const double horizon_;

    double t_ = 0.0;
    ThermalState thermal_;
    WearLedger ledger_;
    double temp_integral_ = 0.0;
    double peak_temp_;
    double last_power_;
    std::size_t level_ = 0;
    std::size_t last_level_;
    std::size_t samples_ = 0;
    std::size_t next_sample_ = 0;
    SimResult result_;
};

PolicyDelta delta_from(const SimReport& base, const SimReport& run)
{
    PolicyDelta d;
    d.energy_j = run.energy.total_j - base.energy.total_j;
    d.shock_wear = run.ledger.shock_wear() - base.ledger.shock_wear();
    d.thermal_wear = run.ledger.thermal_wear() - base.ledger.thermal_wear();
    d.deadline_misses =
        static_cast<long>(run.deadline_misses()) - static_cast<long>(base.deadline_misses());
    if (run.projected_lifetime_s && base.projected_lifetime_s) {
        d.lifetime_ratio = *run.projected_lifetime_s / *base.projected_lifetime_s;
    }
    for (std::size_t i = 0; i < run.per_task.size() && i < base.per_task.size(); ++i) {
        if (run.per_task[i].deadline_met != base.per_task[i].deadline_met) {
            d.changed_deadlines.push_back(run.per_task[i].id);
        }
    }
    return d;
}

SimReport simulate_annotated(Scenario scenario, const TransitionPolicy& policy)
{
    scenario.policy = policy;
    const std::string context = "policy " + to_string(policy);
    try {
        return simulate(scenario).report;
    } catch (const ValidationError& e) {
        throw ValidationError(e.result(), context);
    } catch (const std::exception& e) {
        throw Error(context + ": " + e.what());
    }
}

} // namespace

SimResult simulate(const Scenario& scenario)
{
    ValidationResult check = validate_scenario(scenario);
    if (!check.ok()) {
        throw ValidationError(std::move(check), "scenario");
    }
    return Run(scenario).execute();
}

ComparisonReport compare_policies(const Scenario& scenario,
                                  const std::vector<TransitionPolicy>& policies, bool parallel)
{
    if (policies.size() < 2) {
        throw DomainError("compare_policies needs at least two policies");
    }

    std::vector<SimReport> reports;
    reports.reserve(policies.size());
    if (parallel) {
        std::vector<std::future<SimReport>> pending;
        pending.reserve(policies.size());
        for (const auto& policy : policies) {
            pending.push_back(std::async(std::launch::async, simulate_annotated, scenario, policy));
        }
        for (auto& f : pending) {
            reports.push_back(f.get());
        }
    } else {
        for (const auto& policy : policies) {
            reports.push_back(simulate_annotated(scenario, policy));
        }
    }

    ComparisonReport out;
    for (std::size_t i = 0; i < policies.size(); ++i) {
        out.runs.push_back({policies[i], reports[i], delta_from(reports.front(), reports[i])});
    }
    return out;
}

} // namespace wearsim
