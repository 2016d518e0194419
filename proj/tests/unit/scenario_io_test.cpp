#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "support/oracles.hpp"
#include "wearsim/scenario_io.hpp"

using namespace wearsim;
namespace fs = std::filesystem;

namespace {

const std::string kScenarioDir = WEARSIM_SCENARIO_DIR;

std::string turion_text() { return read_text_file(kScenarioDir + "/turion6.json"); }

nlohmann::json turion_doc() { return nlohmann::json::parse(turion_text()); }

fs::path temp_path(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "wearsim_io_test";
    fs::create_directories(dir);
    return dir / name;
}

template <typename E>
E expect_throws(const std::string& text)
{
    try {
        (void)parse_scenario(text);
    } catch (const E& e) {
        return e;
    } catch (const std::exception& e) {
        ADD_FAILURE() << "wrong exception: " << e.what();
        throw;
    }
    ADD_FAILURE() << "no exception";
    throw std::logic_error("unreachable");
}

SimReport sample_report()
{
    SimReport r;
    r.duration_s = 15.0;
    r.energy = {41.92, 4.0, 45.92};
    r.cost_usd = 1.2345678901234567e-7;
    r.peak_temp_c = 61.25;
    r.avg_temp_c = 48.1;
    r.transitions = {7, 1.4e9};
    r.ledger = WearLedger(3.3e-7, 1.1e-6, 15.0);
    r.projected_lifetime_s = 1.0 / 3.0 * 1e7;
    r.per_task.push_back({"a", 3, 1.4e9, 0.0, 9.5, 10.0, true, true});
    r.per_task.push_back({"b", 5, 1.8e9, 9.5, std::nullopt, 12.0, false, false});
    return r;
}

} // namespace

TEST(LoadScenario, ShippedTurion)
{
    const Scenario sc = load_scenario(kScenarioDir + "/turion6.json");
    ASSERT_EQ(sc.spec.levels.size(), 6u);
    EXPECT_EQ(sc.spec.levels.front().freq_hz, 800e6);
    EXPECT_EQ(sc.spec.levels.back().freq_hz, 1800e6);
    EXPECT_EQ(sc.spec.thermal.l_base_s, 87600.0 * 3600.0);
    EXPECT_EQ(sc.spec.wear.f_span_hz, 1e9); // defaulted to the ladder span
    EXPECT_EQ(sc.policy.kind, TransitionPolicy::Kind::stepped);
    EXPECT_EQ(sc.cost_rate_usd_per_mwh, 100.0);
}

TEST(LoadScenario, AllShippedScenariosValidate)
{
    for (const auto& entry : fs::directory_iterator(kScenarioDir)) {
        if (entry.path().extension() == ".json") {
            EXPECT_NO_THROW(load_scenario(entry.path().string())) << entry.path();
        }
    }
}

TEST(LoadScenario, MissingTasksNamed)
{
    auto doc = turion_doc();
    doc.erase("tasks");
    const auto e = expect_throws<SchemaError>(doc.dump());
    EXPECT_EQ(e.key(), "tasks");
}

TEST(LoadScenario, UnknownKeysRejectedEverywhere)
{
    auto top = turion_doc();
    top["extra"] = 1;
    EXPECT_EQ(expect_throws<SchemaError>(top.dump()).key(), "extra");

    auto nested = turion_doc();
    nested["processor"]["levels"][2]["volts"] = 1.0;
    EXPECT_EQ(expect_throws<SchemaError>(nested.dump()).key(), "processor.levels[2].volts");

    auto task = turion_doc();
    task["tasks"][0]["priority"] = 3;
    EXPECT_EQ(expect_throws<SchemaError>(task.dump()).key(), "tasks[0].priority");
}

TEST(LoadScenario, WrongTypesRejected)
{
    auto doc = turion_doc();
    doc["thermal"]["r_th_k_per_w"] = "2.0";
    EXPECT_EQ(expect_throws<SchemaError>(doc.dump()).key(), "thermal.r_th_k_per_w");

    auto gov = turion_doc();
    gov["governor"] = {{"kind", "fixed"}, {"fixed_index", -1}};
    EXPECT_EQ(expect_throws<SchemaError>(gov.dump()).key(), "governor.fixed_index");

    auto kind = turion_doc();
    kind["policy"]["kind"] = "teleport";
    EXPECT_EQ(expect_throws<SchemaError>(kind.dump()).key(), "policy.kind");
}

TEST(LoadScenario, LadderOutOfOrder)
{
    auto doc = turion_doc();
    std::swap(doc["processor"]["levels"][1], doc["processor"]["levels"][2]);
    const auto e = expect_throws<ValidationError>(doc.dump());
    EXPECT_TRUE(e.result().has_rule("ladder not strictly increasing"));
}

TEST(LoadScenario, ListsAllViolations)
{
    auto doc = turion_doc();
    doc["processor"]["coeff_a"] = -1.0;
    doc["wear"]["alpha"] = 0.5;
    doc["sim"]["duration_s"] = 100;
    const auto e = expect_throws<ValidationError>(doc.dump());
    EXPECT_TRUE(e.result().has_rule("negative coefficient"));
    EXPECT_TRUE(e.result().has_rule("must be at least 1"));
    EXPECT_TRUE(e.result().has_rule("duration must cover every deadline"));
    const auto& v = e.result().violations;
    EXPECT_TRUE(std::any_of(v.begin(), v.end(), [](const Violation& x) { return x.field == "processor.coeff_a"; }));
}

TEST(LoadScenario, ParseErrorHasPosition)
{
    const std::string text = "{\n  \"processor\": {\n    \"levels\": [,]\n  }\n}\n";
    const auto e = expect_throws<ParseError>(text);
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 16u);
}

TEST(LoadScenario, MissingFileIsIoError)
{
    EXPECT_THROW(load_scenario("/nonexistent/dir/scenario.json"), IoError);
}

TEST(LoadScenario, Overrides)
{
    const Scenario sc = parse_scenario(turion_text(), {{"wear.alpha", 1.0}, {"policy.dwell_s", 0.25}});
    EXPECT_EQ(sc.spec.wear.alpha, 1.0);
    EXPECT_EQ(sc.policy.dwell_s, 0.25);
    EXPECT_THROW(parse_scenario(turion_text(), {{"wear.beta", 1.0}}), SchemaError);
    EXPECT_THROW(parse_scenario(turion_text(), {{"wear.alpha", 0.5}}), ValidationError);
}

TEST(Report, DeterministicAndRoundTrips)
{
    const SimReport r = sample_report();
    const auto path = temp_path("report.json").string();
    write_report(r, path);
    const std::string first = read_text_file(path);
    write_report(r, path);
    EXPECT_EQ(first, read_text_file(path));

    const SimReport back = read_report(path);
    EXPECT_EQ(back.energy.total_j, 45.92);
    EXPECT_EQ(back.energy.active_j, r.energy.active_j);
    EXPECT_EQ(back.cost_usd, r.cost_usd);
    EXPECT_EQ(back.ledger.shock_wear(), r.ledger.shock_wear());
    EXPECT_EQ(*back.projected_lifetime_s, *r.projected_lifetime_s);
    ASSERT_EQ(back.per_task.size(), 2u);
    EXPECT_FALSE(back.per_task[1].finish_s.has_value());
    EXPECT_EQ(report_to_json(back), first);

    EXPECT_NE(first.find("\"schema_version\": 1"), std::string::npos);
}

TEST(Report, UnboundedLifetimeSentinel)
{
    SimReport r = sample_report();
    r.projected_lifetime_s.reset();
    const std::string text = report_to_json(r);
    EXPECT_NE(text.find("\"projected_lifetime_s\": \"unbounded\""), std::string::npos);
    EXPECT_FALSE(report_from_json(text).projected_lifetime_s.has_value());
}

TEST(Report, NumbersRoundTripProperty)
{
    std::mt19937_64 rng(0x5eed0040);
    std::uniform_real_distribution<double> mant(1.0, 10.0);
    std::uniform_int_distribution<int> exp(-12, 12);
    for (int trial = 0; trial < 200; ++trial) {
        SimReport r = sample_report();
        r.energy.active_j = mant(rng) * std::pow(10.0, exp(rng));
        r.energy.idle_j = mant(rng) * std::pow(10.0, exp(rng));
        r.energy.total_j = r.energy.active_j + r.energy.idle_j;
        r.avg_temp_c = mant(rng) * 7.0;
        const SimReport back = report_from_json(report_to_json(r));
        EXPECT_EQ(back.energy.active_j, r.energy.active_j);
        EXPECT_EQ(back.energy.idle_j, r.energy.idle_j);
        EXPECT_EQ(back.avg_temp_c, r.avg_temp_c);
        const double parsed = std::stod(format_number(r.energy.total_j));
        EXPECT_EQ(parsed, r.energy.total_j);
    }
}

TEST(Report, UnwritablePathNamesPath)
{
    try {
        write_report(sample_report(), "/nonexistent/dir/report.json");
        FAIL();
    } catch (const IoError& e) {
        EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/report.json"), std::string::npos);
    }
}

TEST(Trace, HeaderAndRows)
{
    std::ostringstream empty;
    write_trace_csv({}, empty);
    EXPECT_EQ(empty.str(), "time_s,freq_hz,power_w,temp_c,cum_wear\n");

    std::vector<TracePoint> pts = {{0.0, 8e8, 6.5, 35.0, 0.0}, {0.5, 1.8e9, 22.4, 35.25, 1.5e-9},
                                   {1.0, 1.8e9, 22.4, 36.0, 3e-9}};
    std::ostringstream os;
    write_trace_csv(pts, os);
    const std::string text = os.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
    EXPECT_EQ(text.back(), '\n');
    EXPECT_NE(text.find("\n0.5,1800000000,22.4,35.25,1.5e-09\n"), std::string::npos) << text;
}

TEST(Trace, LocaleDoesNotLeakIntoNumbers)
{
    std::ostringstream os;
    try {
        os.imbue(std::locale("de_DE.UTF-8"));
    } catch (const std::runtime_error&) {
        GTEST_SKIP() << "de_DE locale not installed";
    }
    write_trace_csv({{0.5, 8e8, 6.25, 35.5, 0.0}}, os);
    EXPECT_NE(os.str().find("0.5,800000000,6.25,35.5,0"), std::string::npos);
}

TEST(Trace, FileWrite)
{
    const auto path = temp_path("trace.csv").string();
    write_trace({}, path);
    EXPECT_EQ(read_text_file(path), std::string(kTraceHeader) + "\n");
    EXPECT_THROW(write_trace({}, "/nonexistent/dir/trace.csv"), IoError);
}
