#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "wearsim/scenario_io.hpp"
#include "wearsim/sim_engine.hpp"

namespace wearsim::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool use_color(const std::ostream& out)
{
    if (std::getenv("NO_COLOR") != nullptr) {
        return false;
    }
    return &out == &std::cout && ::isatty(STDOUT_FILENO) == 1;
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::string item;
    std::istringstream ss(text);
    while (std::getline(ss, item, sep)) {
        parts.push_back(item);
    }
    return parts;
}

std::vector<TransitionPolicy> parse_policies(const std::string& text)
{
    std::vector<TransitionPolicy> out;
    for (const auto& part : split(text, ',')) {
        try {
            out.push_back(parse_transition_policy(part));
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    }
    if (out.size() < 2) {
        throw UsageError("--policies needs at least two entries, e.g. direct,stepped:0.5");
    }
    return out;
}

std::vector<double> parse_values(const std::string& text)
{
    std::vector<double> out;
    for (const auto& part : split(text, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (part.empty() || used != part.size() || !std::isfinite(v)) {
            throw UsageError("bad sweep value '" + part + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw UsageError("--values needs at least one number");
    }
    return out;
}

std::string lifetime_text(const std::optional<double>& lifetime)
{
    return lifetime ? format_number(*lifetime) : "unbounded";
}

// Table cells only; files keep full precision.
std::string cell(double v)
{
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

void print_summary(const SimReport& r, std::ostream& out)
{
    out << "energy_j        " << format_number(r.energy.total_j) << " (active "
        << format_number(r.energy.active_j) << ", idle " << format_number(r.energy.idle_j) << ")\n"
        << "cost_usd        " << format_number(r.cost_usd) << '\n'
        << "transitions     " << r.transitions.hops << " hops, "
        << format_number(r.transitions.sum_delta_f_hz) << " Hz total\n"
        << "temperature_c   peak " << format_number(r.peak_temp_c) << ", avg "
        << format_number(r.avg_temp_c) << '\n'
        << "wear            thermal " << format_number(r.ledger.thermal_wear()) << ", shock "
        << format_number(r.ledger.shock_wear()) << '\n'
        << "lifetime_s      " << lifetime_text(r.projected_lifetime_s) << '\n'
        << "deadline_misses " << r.deadline_misses() << " of " << r.per_task.size() << '\n';
}

void print_comparison(const ComparisonReport& cmp, std::ostream& out, bool color)
{
    const std::vector<std::string> header = {"policy",     "energy_j",    "d_energy_j",
                                             "shock_wear", "shock_ratio", "thermal_wear",
                                             "lifetime_s", "life_ratio",  "misses",
                                             "changed"};
    std::vector<std::vector<std::string>> rows;
    const double base_shock = cmp.runs.front().report.ledger.shock_wear();
    for (const auto& run : cmp.runs) {
        const auto& r = run.report;
        std::string changed;
        for (const auto& id : run.delta.changed_deadlines) {
            changed += (changed.empty() ? "" : ";") + id;
        }
        rows.push_back({
            to_string(run.policy),
            cell(r.energy.total_j),
            cell(run.delta.energy_j),
            cell(r.ledger.shock_wear()),
            base_shock > 0.0 ? cell(r.ledger.shock_wear() / base_shock) : "-",
            cell(r.ledger.thermal_wear()),
            r.projected_lifetime_s ? cell(*r.projected_lifetime_s) : "unbounded",
            run.delta.lifetime_ratio ? cell(*run.delta.lifetime_ratio) : "-",
            std::to_string(r.deadline_misses()),
            changed.empty() ? "-" : changed,
        });
    }

    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& row : rows) {
            width[c] = std::max(width[c], row[c].size());
        }
    }
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << std::left << std::setw(static_cast<int>(width[c])) << row[c]
                << (c + 1 < row.size() ? "  " : "");
        }
        out << '\n';
    };
    if (color) {
        out << "\x1b[1m";
    }
    emit(header);
    if (color) {
        out << "\x1b[0m";
    }
    for (const auto& row : rows) {
        emit(row);
    }
}

int run_validate(const std::string& path, std::ostream& out)
{
    const Scenario sc = parse_scenario_unvalidated(read_text_file(path));
    const ValidationResult check = validate_scenario(sc);
    if (!check.ok()) {
        throw ValidationError(check, path);
    }
    out << "OK " << path << ": " << sc.spec.levels.size() << " levels, " << sc.tasks.size()
        << " tasks\n";
    return kOk;
}

int run_simulate(const std::string& path, const std::string& report_path,
                 const std::string& trace_path, std::ostream& out)
{
    const SimResult result = simulate(load_scenario(path));
    if (!report_path.empty()) {
        write_report(result.report, report_path);
    }
    if (!trace_path.empty()) {
        write_trace(result.trace, trace_path);
    }
    print_summary(result.report, out);
    return kOk;
}

int run_compare(const std::string& path, const std::string& policies,
                const std::string& report_path, bool serial, std::ostream& out)
{
    const auto list = parse_policies(policies);
    const ComparisonReport cmp = compare_policies(load_scenario(path), list, !serial);
    print_comparison(cmp, out, use_color(out));
    if (!report_path.empty()) {
        write_comparison(cmp, report_path);
    }
    return kOk;
}

int run_sweep(const std::string& path, const std::string& param, const std::string& values,
              const std::string& policy, const std::string& out_path, std::ostream& out)
{
    const auto& keys = overridable_keys();
    if (std::find(keys.begin(), keys.end(), param) == keys.end()) {
        std::string known;
        for (const auto& k : keys) {
            known += (known.empty() ? "" : ", ") + k;
        }
        throw UsageError("--param '" + param + "' is not sweepable (one of: " + known + ")");
    }
    std::optional<TransitionPolicy> forced;
    if (!policy.empty()) {
        try {
            forced = parse_transition_policy(policy);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    }
    const auto list = parse_values(values);
    const std::string text = read_text_file(path);

    std::ostringstream csv;
    csv << "value,energy_j,shock_wear,thermal_wear,projected_lifetime_s\n";
    for (const double v : list) {
        Scenario sc = parse_scenario(text, {{param, v}});
        if (forced) {
            sc.policy = *forced;
            const ValidationResult check = validate_scenario(sc);
            if (!check.ok()) {
                throw ValidationError(check, path);
            }
        }
        const SimReport r = simulate(sc).report;
        csv << format_number(v) << ',' << format_number(r.energy.total_j) << ','
            << format_number(r.ledger.shock_wear()) << ','
            << format_number(r.ledger.thermal_wear()) << ','
            << lifetime_text(r.projected_lifetime_s) << '\n';
    }
    if (out_path.empty()) {
        out << csv.str();
    } else {
        write_text_file(out_path, csv.str());
    }
    return kOk;
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"DVFS energy, temperature and wear co-simulator", "wearsim"};
    app.require_subcommand(1);

    std::string scenario;
    std::string report;
    std::string trace;
    std::string policies;
    std::string param;
    std::string values;
    std::string sweep_policy;
    std::string sweep_out;
    bool serial = false;

    auto* validate = app.add_subcommand("validate", "Check a scenario file and list violations");
    validate->add_option("--scenario", scenario, "Scenario JSON file")->required();

    auto* sim = app.add_subcommand("simulate", "Run one simulation");
    sim->add_option("--scenario", scenario, "Scenario JSON file")->required();
    sim->add_option("--report", report, "Write the JSON report here");
    sim->add_option("--trace", trace, "Write the CSV trace here");

    auto* compare = app.add_subcommand("compare", "Run the scenario under several transition policies");
    compare->add_option("--scenario", scenario, "Scenario JSON file")->required();
    compare->add_option("--policies", policies, "Comma list: direct,stepped[:dwell_s]")->required();
    compare->add_option("--report", report, "Write the JSON comparison here");
    compare->add_flag("--serial", serial, "Run policies one after another");

    auto* sweep = app.add_subcommand("sweep", "Re-run the scenario for each value of one parameter");
    sweep->add_option("--scenario", scenario, "Scenario JSON file")->required();
    sweep->add_option("--param", param, "Dotted key, e.g. wear.alpha")->required();
    sweep->add_option("--values", values, "Comma list of numbers")->required();
    sweep->add_option("--policy", sweep_policy, "Override the scenario's transition policy");
    sweep->add_option("--out", sweep_out, "Write the CSV here instead of stdout");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "wearsim: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    try {
        if (validate->parsed()) {
            return run_validate(scenario, out);
        }
        if (sim->parsed()) {
            return run_simulate(scenario, report, trace, out);
        }
        if (compare->parsed()) {
            return run_compare(scenario, policies, report, serial, out);
        }
        return run_sweep(scenario, param, values, sweep_policy, sweep_out, out);
    } catch (const UsageError& e) {
        err << "wearsim: " << e.what() << '\n';
        return kUsage;
    } catch (const ValidationError& e) {
        err << e.what();
        return kValidationError;
    } catch (const ParseError& e) {
        err << e.what() << '\n';
        return kValidationError;
    } catch (const SchemaError& e) {
        err << e.what() << '\n';
        return kValidationError;
    } catch (const std::exception& e) {
        err << "wearsim: " << e.what() << '\n';
        return kRuntimeError;
    }
}

} // namespace wearsim::cli
