#include "wearsim/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <initializer_list>
#include <nlohmann/json.hpp>
#include <sstream>

namespace wearsim {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr double kSecondsPerHour = 3600.0;

// Strict view over one JSON object: rejects keys outside `allowed` and
// names the full dotted path in every error.
class Section {
public:
    Section(const json& node, std::string path, std::initializer_list<const char*> allowed)
        : node_(node), path_(std::move(path))
    {
        if (!node_.is_object()) {
            throw SchemaError(path_.empty() ? "<root>" : path_, "expected an object");
        }
        for (const auto& item : node_.items()) {
            const bool known = std::any_of(allowed.begin(), allowed.end(),
                                           [&](const char* k) { return item.key() == k; });
            if (!known) {
                throw SchemaError(child(item.key()), "unknown key");
            }
        }
    }

    [[nodiscard]] std::string child(const std::string& key) const
    {
        return path_.empty() ? key : path_ + "." + key;
    }

    [[nodiscard]] bool has(const char* key) const { return node_.contains(key); }

    [[nodiscard]] const json& at(const char* key) const
    {
        if (!node_.contains(key)) {
            throw SchemaError(child(key), "missing required key");
        }
        return node_.at(key);
    }

    [[nodiscard]] double number(const char* key) const { return as_number(at(key), child(key)); }

    [[nodiscard]] std::optional<double> opt_number(const char* key) const
    {
        if (!has(key)) {
            return std::nullopt;
        }
        return number(key);
    }

    [[nodiscard]] std::string string(const char* key) const
    {
        const json& v = at(key);
        if (!v.is_string()) {
            throw SchemaError(child(key), "expected a string");
        }
        return v.get<std::string>();
    }

    [[nodiscard]] const json& array(const char* key) const
    {
        const json& v = at(key);
        if (!v.is_array()) {
            throw SchemaError(child(key), "expected an array");
        }
        return v;
    }

    static double as_number(const json& v, const std::string& path)
    {
        if (!v.is_number()) {
            throw SchemaError(path, "expected a number");
        }
        return v.get<double>();
    }

private:
    const json& node_;
    std::string path_;
};

struct OverrideTarget {
    const char* section;
    const char* key;
};

constexpr OverrideTarget kOverrideTargets[] = {
    {"processor", "coeff_a"},     {"processor", "coeff_b"},
    {"processor", "p_device_w"},  {"processor", "p_idle_w"},
    {"thermal", "r_th_k_per_w"},  {"thermal", "c_th_j_per_k"},
    {"thermal", "t_amb_c"},       {"thermal", "t_ref_c"},
    {"thermal", "l_base_hours"},  {"wear", "k_shock"},
    {"wear", "alpha"},            {"wear", "f_span_hz"},
    {"policy", "dwell_s"},        {"sim", "duration_s"},
    {"sim", "trace_dt_s"},        {"sim", "cost_rate_usd_per_mwh"},
};

void apply_overrides(json& doc, const ScenarioOverrides& overrides)
{
    for (const auto& [path, value] : overrides) {
        const auto* target = std::find_if(std::begin(kOverrideTargets), std::end(kOverrideTargets),
                                          [&](const OverrideTarget& t) {
                                              return path == std::string(t.section) + "." + t.key;
                                          });
        if (target == std::end(kOverrideTargets)) {
            throw SchemaError(path, "not an overridable numeric key");
        }
        if (!doc.is_object() || !doc.contains(target->section) ||
            !doc[target->section].is_object()) {
            throw SchemaError(target->section, "missing required key");
        }
        doc[target->section][target->key] = value;
    }
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte)
{
    // nlohmann reports the 1-based offset of the offending character
    const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

json parse_document(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte);
        std::string what = e.what();
        if (const auto pos = what.find("; "); pos != std::string::npos) {
            what = what.substr(pos + 2);
        }
        throw ParseError(what, line, column);
    }
}

ProcessorSpec read_processor(const Section& root)
{
    const Section proc(root.at("processor"), "processor",
                       {"levels", "coeff_a", "coeff_b", "p_device_w", "p_idle_w"});
    ProcessorSpec spec;
    const json& levels = proc.array("levels");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const Section lv(levels[i], "processor.levels[" + std::to_string(i) + "]",
                         {"freq_hz", "vdd_v"});
        spec.levels.push_back({i, lv.number("freq_hz"), lv.number("vdd_v")});
    }
    spec.coeff_a = proc.number("coeff_a");
    spec.coeff_b = proc.number("coeff_b");
    spec.p_device_w = proc.number("p_device_w");
    spec.p_idle_w = proc.number("p_idle_w");

    const Section th(root.at("thermal"), "thermal",
                     {"r_th_k_per_w", "c_th_j_per_k", "t_amb_c", "t_ref_c", "l_base_hours"});
    spec.thermal.r_th_k_per_w = th.number("r_th_k_per_w");
    spec.thermal.c_th_j_per_k = th.number("c_th_j_per_k");
    spec.thermal.t_amb_c = th.number("t_amb_c");
    spec.thermal.t_ref_c = th.number("t_ref_c");
    spec.thermal.l_base_s = th.number("l_base_hours") * kSecondsPerHour;

    const Section wear(root.at("wear"), "wear", {"k_shock", "alpha", "f_span_hz"});
    spec.wear.k_shock = wear.number("k_shock");
    spec.wear.alpha = wear.number("alpha");
    if (const auto span = wear.opt_number("f_span_hz")) {
        spec.wear.f_span_hz = *span;
    } else {
        spec.wear.f_span_hz = spec.levels.size() >= 2
                                  ? spec.levels.back().freq_hz - spec.levels.front().freq_hz
                                  : 0.0;
    }
    return spec;
}

std::vector<Task> read_tasks(const Section& root)
{
    std::vector<Task> tasks;
    const json& list = root.array("tasks");
    for (std::size_t i = 0; i < list.size(); ++i) {
        const Section t(list[i], "tasks[" + std::to_string(i) + "]",
                        {"id", "cycles", "arrival_s", "deadline_s"});
        tasks.push_back({t.string("id"), t.number("cycles"), t.number("arrival_s"),
                         t.number("deadline_s")});
    }
    return tasks;
}

GovernorPolicy read_governor(const Section& root)
{
    const Section gov(root.at("governor"), "governor", {"kind", "fixed_index"});
    const std::string kind = gov.string("kind");
    if (kind == "lowest_feasible") {
        return GovernorPolicy::lowest_feasible();
    }
    if (kind == "min_energy") {
        return GovernorPolicy::min_energy();
    }
    if (kind == "fixed") {
        const json& idx = gov.at("fixed_index");
        if (!idx.is_number_unsigned() && !(idx.is_number_integer() && idx.get<long long>() >= 0)) {
            throw SchemaError("governor.fixed_index", "expected a non-negative integer");
        }
        return GovernorPolicy::fixed(idx.get<std::size_t>());
    }
    throw SchemaError("governor.kind",
                      "unknown governor '" + kind + "' (lowest_feasible, min_energy, fixed)");
}

void read_policy(const Section& root, Scenario& sc)
{
    const Section pol(root.at("policy"), "policy", {"kind", "dwell_s", "stall_dwell"});
    const std::string kind = pol.string("kind");
    if (kind == "direct") {
        sc.policy.kind = TransitionPolicy::Kind::direct;
    } else if (kind == "stepped") {
        sc.policy.kind = TransitionPolicy::Kind::stepped;
    } else {
        throw SchemaError("policy.kind", "unknown policy '" + kind + "' (direct, stepped)");
    }
    sc.policy.dwell_s = pol.opt_number("dwell_s").value_or(0.0);
    if (pol.has("stall_dwell")) {
        const json& v = pol.at("stall_dwell");
        if (!v.is_boolean()) {
            throw SchemaError("policy.stall_dwell", "expected a boolean");
        }
        sc.stall_dwell = v.get<bool>();
    }
}

Scenario convert(const json& doc)
{
    const Section root(doc, "",
                       {"processor", "thermal", "wear", "tasks", "governor", "policy", "sim"});
    Scenario sc;
    sc.spec = read_processor(root);
    sc.tasks = read_tasks(root);
    sc.governor = read_governor(root);
    read_policy(root, sc);

    const Section sim(root.at("sim"), "sim", {"duration_s", "trace_dt_s", "cost_rate_usd_per_mwh"});
    sc.duration_s = sim.number("duration_s");
    sc.trace_dt_s = sim.number("trace_dt_s");
    sc.cost_rate_usd_per_mwh =
        sim.opt_number("cost_rate_usd_per_mwh").value_or(kDefaultCostRateUsdPerMwh);
    return sc;
}

ordered_json optional_number(const std::optional<double>& v)
{
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json report_json(const SimReport& r)
{
    ordered_json tasks = ordered_json::array();
    for (const auto& t : r.per_task) {
        ordered_json row;
        row["id"] = t.id;
        row["level_index"] = t.level_index;
        row["level_freq_hz"] = t.level_freq_hz;
        row["start_s"] = optional_number(t.start_s);
        row["finish_s"] = optional_number(t.finish_s);
        row["deadline_s"] = t.deadline_s;
        row["deadline_met"] = t.deadline_met;
        row["feasible"] = t.feasible;
        tasks.push_back(std::move(row));
    }

    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["duration_s"] = r.duration_s;
    j["energy"] = {{"active_j", r.energy.active_j},
                   {"idle_j", r.energy.idle_j},
                   {"total_j", r.energy.total_j}};
    j["cost_usd"] = r.cost_usd;
    j["temperature"] = {{"peak_c", r.peak_temp_c}, {"avg_c", r.avg_temp_c}};
    j["transitions"] = {{"hops", r.transitions.hops},
                        {"sum_delta_f_hz", r.transitions.sum_delta_f_hz}};
    j["wear"] = {{"thermal", r.ledger.thermal_wear()},
                 {"shock", r.ledger.shock_wear()},
                 {"total", r.ledger.total()},
                 {"elapsed_s", r.ledger.elapsed_s()}};
    j["projected_lifetime_s"] =
        r.projected_lifetime_s ? ordered_json(*r.projected_lifetime_s) : ordered_json("unbounded");
    j["deadline_misses"] = r.deadline_misses();
    j["tasks"] = std::move(tasks);
    return j;
}

std::optional<double> read_optional(const json& v)
{
    if (v.is_null()) {
        return std::nullopt;
    }
    return v.get<double>();
}

} // namespace

const std::vector<std::string>& overridable_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto& t : kOverrideTargets) {
            out.push_back(std::string(t.section) + "." + t.key);
        }
        return out;
    }();
    return keys;
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path, std::strerror(errno));
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw IoError(path, "read failed");
    }
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(path, std::strerror(errno));
    }
    out << contents;
    out.flush();
    if (!out) {
        throw IoError(path, "write failed");
    }
}

Scenario parse_scenario_unvalidated(const std::string& text, const ScenarioOverrides& overrides)
{
    json doc = parse_document(text);
    apply_overrides(doc, overrides);
    return convert(doc);
}

Scenario parse_scenario(const std::string& text, const ScenarioOverrides& overrides)
{
    Scenario sc = parse_scenario_unvalidated(text, overrides);
    ValidationResult check = validate_scenario(sc);
    if (!check.ok()) {
        throw ValidationError(std::move(check), "scenario");
    }
    return sc;
}

Scenario load_scenario(const std::string& path, const ScenarioOverrides& overrides)
{
    const std::string text = read_text_file(path);
    try {
        return parse_scenario(text, overrides);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), e.line(), e.column());
    } catch (const ValidationError& e) {
        throw ValidationError(e.result(), path);
    }
}

std::string report_to_json(const SimReport& report)
{
    return report_json(report).dump(2) + "\n";
}

SimReport report_from_json(const std::string& text)
{
    const json j = parse_document(text);
    if (j.value("schema_version", 0) != kReportSchemaVersion) {
        throw SchemaError("schema_version", "unsupported report schema version");
    }
    try {
        SimReport r;
        r.duration_s = j.at("duration_s").get<double>();
        r.energy.active_j = j.at("energy").at("active_j").get<double>();
        r.energy.idle_j = j.at("energy").at("idle_j").get<double>();
        r.energy.total_j = j.at("energy").at("total_j").get<double>();
        r.cost_usd = j.at("cost_usd").get<double>();
        r.peak_temp_c = j.at("temperature").at("peak_c").get<double>();
        r.avg_temp_c = j.at("temperature").at("avg_c").get<double>();
        r.transitions.hops = j.at("transitions").at("hops").get<std::size_t>();
        r.transitions.sum_delta_f_hz = j.at("transitions").at("sum_delta_f_hz").get<double>();
        const json& w = j.at("wear");
        r.ledger = WearLedger(w.at("thermal").get<double>(), w.at("shock").get<double>(),
                              w.at("elapsed_s").get<double>());
        const json& life = j.at("projected_lifetime_s");
        if (life.is_string()) {
            if (life.get<std::string>() != "unbounded") {
                throw SchemaError("projected_lifetime_s", "expected a number or \"unbounded\"");
            }
        } else {
            r.projected_lifetime_s = life.get<double>();
        }
        for (const json& t : j.at("tasks")) {
            TaskOutcome o;
            o.id = t.at("id").get<std::string>();
            o.level_index = t.at("level_index").get<std::size_t>();
            o.level_freq_hz = t.at("level_freq_hz").get<double>();
            o.start_s = read_optional(t.at("start_s"));
            o.finish_s = read_optional(t.at("finish_s"));
            o.deadline_s = t.at("deadline_s").get<double>();
            o.deadline_met = t.at("deadline_met").get<bool>();
            o.feasible = t.at("feasible").get<bool>();
            r.per_task.push_back(std::move(o));
        }
        return r;
    } catch (const json::exception& e) {
        throw SchemaError("report", e.what());
    }
}

void write_report(const SimReport& report, const std::string& path)
{
    write_text_file(path, report_to_json(report));
}

SimReport read_report(const std::string& path)
{
    return report_from_json(read_text_file(path));
}

std::string comparison_to_json(const ComparisonReport& comparison)
{
    ordered_json runs = ordered_json::array();
    for (const auto& run : comparison.runs) {
        const auto& d = run.delta;
        ordered_json delta;
        delta["energy_j"] = d.energy_j;
        delta["shock_wear"] = d.shock_wear;
        delta["thermal_wear"] = d.thermal_wear;
        delta["deadline_misses"] = d.deadline_misses;
        delta["lifetime_ratio"] = optional_number(d.lifetime_ratio);
        delta["changed_deadlines"] = d.changed_deadlines;

        ordered_json entry;
        entry["policy"] = to_string(run.policy);
        entry["report"] = report_json(run.report);
        entry["delta"] = std::move(delta);
        runs.push_back(std::move(entry));
    }
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["baseline"] = comparison.runs.empty() ? "" : to_string(comparison.runs.front().policy);
    j["runs"] = std::move(runs);
    return j.dump(2) + "\n";
}

void write_comparison(const ComparisonReport& comparison, const std::string& path)
{
    write_text_file(path, comparison_to_json(comparison));
}

std::string format_number(double value)
{
    char buf[64];
    // whole numbers such as frequencies read better without an exponent
    const bool whole = std::isfinite(value) && std::abs(value) < 1e15 && value == std::trunc(value);
    const auto [end, ec] = whole ? std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed)
                                 : std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) {
        return "nan";
    }
    return std::string(buf, end);
}

void write_trace_csv(const std::vector<TracePoint>& trace, std::ostream& os)
{
    os << kTraceHeader << '\n';
    for (const auto& p : trace) {
        os << format_number(p.time_s) << ',' << format_number(p.freq_hz) << ','
           << format_number(p.power_w) << ',' << format_number(p.temp_c) << ','
           << format_number(p.cum_wear) << '\n';
    }
}

void write_trace(const std::vector<TracePoint>& trace, const std::string& path)
{
    std::ostringstream os;
    write_trace_csv(trace, os);
    write_text_file(path, os.str());
}

} // namespace wearsim
