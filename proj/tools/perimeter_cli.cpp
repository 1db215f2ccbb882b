/*
 * Copyright 2026 The perimeter-defense Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// perimeter: analyze, simulate, sweep and verify the perimeter defense game.
// Exit codes: 0 defenders hold, 1 attacker wins, 2 invalid input, 3 verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "perimeter/analytic.hpp"
#include "perimeter/brute_force.hpp"
#include "perimeter/engine.hpp"
#include "perimeter/scenario_io.hpp"
#include "perimeter/sweep.hpp"
#include "perimeter/trace_csv.hpp"
#include "perimeter/verify.hpp"

namespace {

using namespace perimeter;

enum Exit : int { kDefended = 0, kAttackerWins = 1, kInvalid = 2, kVerifyFailed = 3 };

struct ScenarioFlags
{
    std::string path;
    std::optional<double> circumference;
    std::optional<int> defenders;
    std::optional<double> defense_length;
    std::optional<double> defender_speed;
    std::optional<double> attacker_speed;

    void attach(CLI::App& app)
    {
        app.add_option("--scenario", path, "scenario JSON file")->check(CLI::ExistingFile);
        app.add_option("--circumference", circumference, "C");
        app.add_option("--defenders", defenders, "n");
        app.add_option("--defense-length", defense_length, "d_agent");
        app.add_option("--defender-speed", defender_speed, "v_agent");
        app.add_option("--attacker-speed", attacker_speed, "v_a");
    }

    /// The scenario document with flag overrides applied, not yet parsed.
    nlohmann::json document() const
    {
        nlohmann::json j = nlohmann::json::object();
        if (!path.empty()) {
            std::ifstream in(path);
            if (!in) throw ScenarioError("", "cannot open scenario file '" + path + "'");
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw ScenarioError("", std::string("malformed scenario JSON: ") + e.what());
            }
            if (!j.is_object()) throw ScenarioError("", "scenario must be a JSON object");
        }
        if (circumference) j["circumference"] = *circumference;
        if (defenders) j["defender_count"] = *defenders;
        if (defense_length) j["defense_length"] = *defense_length;
        if (defender_speed) j["defender_speed"] = *defender_speed;
        if (attacker_speed) j["attacker_speed"] = *attacker_speed;
        return j;
    }

    Scenario load() const
    {
        Scenario s = scenario_from_json(document());
        require_valid(s.params);
        return s;
    }
};

std::vector<double> parse_list(const std::string& text, const char* what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
            throw InvalidArgument(std::string(what) + ": '" + item + "' is not a number");
        out.push_back(v);
    }
    return out;
}

void print_analysis(const AnalyticReport& r)
{
    auto line = [](const char* key, const std::string& value) { std::printf("%-22s %s\n", key, value.c_str()); };
    line("gamma", format_number(r.gamma));
    line("optimal_gap", format_number(r.optimal_gap));
    line("max_circumference", format_number(r.max_circumference));
    line("verdict", r.attacker_wins ? "attacker wins" : "defenders hold");
    line("margin", format_number(r.margin));
    line("min_defenders", std::to_string(r.min_defenders));
    line("max_defense_length", format_number(r.max_defense_length_threshold));
    line("critical_speed_ratio", r.critical_speed_ratio ? format_number(*r.critical_speed_ratio) : "none (C/d_agent <= n)");
    line("case_transition_time", format_number(r.case_transition_time));
}

std::ostream& output(const std::string& path, std::ofstream& file)
{
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw InvalidArgument("cannot write '" + path + "'");
    return file;
}

SearchSettings search_settings(int max_switches, double grid)
{
    SearchSettings s;
    s.max_switches = max_switches;
    s.grid = grid;
    return s;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Perimeter defense on a cylinder: closed-form analysis, exact simulation and verification"};
    app.require_subcommand(1);

    ScenarioFlags scenario;
    bool json = false;
    std::string out_path;
    std::string config_name;
    std::string attacker_dir;
    std::string switch_times;
    double horizon_mult = 10.0;
    int max_switches = 3;
    double grid = 0.0;
    std::string axis_name;
    std::string values_text;
    unsigned threads = 1;
    std::uint64_t seed = 42;
    std::size_t count = 100;

    auto* analyze = app.add_subcommand("analyze", "closed-form report");
    scenario.attach(*analyze);
    analyze->add_flag("--json", json, "print the report as JSON");

    auto* simulate_cmd = app.add_subcommand("simulate", "event-driven run with a trace CSV and a verdict line");
    scenario.attach(*simulate_cmd);
    simulate_cmd->add_option("--config", config_name, "initial configuration")->check(CLI::IsMember({"case1", "case2"}));
    simulate_cmd->add_option("--attacker-dir", attacker_dir, "initial attacker direction")
        ->check(CLI::IsMember({"+1", "1", "-1"}));
    simulate_cmd->add_option("--switch-times", switch_times, "comma-separated attacker switch times");
    simulate_cmd->add_option("--horizon-mult", horizon_mult, "horizon in units of C / (v_a - v_agent)")
        ->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--out", out_path, "trace CSV path (default: stdout)");

    auto* sweep_cmd = app.add_subcommand("sweep", "brute-force sweep along one parameter");
    scenario.attach(*sweep_cmd);
    sweep_cmd->add_option("--axis", axis_name, "swept parameter")
        ->required()
        ->check(CLI::IsMember({"circumference", "defender_count", "defense_length", "defender_speed",
                               "attacker_speed", "speed_ratio"}));
    sweep_cmd->add_option("--values", values_text, "comma-separated axis values")->required();
    sweep_cmd->add_option("--max-switches", max_switches, "attacker switches searched")->check(CLI::NonNegativeNumber);
    sweep_cmd->add_option("--grid", grid, "switch grid spacing (default: blocking period / 8)")
        ->check(CLI::NonNegativeNumber);
    sweep_cmd->add_option("--horizon-mult", horizon_mult, "horizon in units of C / (v_a - v_agent)")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--threads", threads, "points evaluated concurrently (0: all cores)");
    sweep_cmd->add_option("--out", out_path, "CSV path (default: stdout)");

    auto* verify_cmd = app.add_subcommand("verify", "seeded randomized property suite");
    verify_cmd->add_option("--seed", seed, "random seed");
    verify_cmd->add_option("--count", count, "parameter draws")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--max-switches", max_switches, "attacker switches searched")->check(CLI::NonNegativeNumber);
    verify_cmd->add_option("--grid", grid, "switch grid spacing (default: blocking period / 8)")
        ->check(CLI::NonNegativeNumber);
    verify_cmd->add_flag("--json", json, "print the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (analyze->parsed()) {
            const AnalyticReport r = perimeter::analyze(scenario.load().params);
            if (json)
                std::cout << to_json(r).dump(2) << '\n';
            else
                print_analysis(r);
            return r.attacker_wins ? kAttackerWins : kDefended;
        }

        if (simulate_cmd->parsed()) {
            const Scenario sc = scenario.load();
            const ScenarioParams& p = sc.params;
            InitialConfig kind = sc.initial_config.value_or(InitialConfig::Case1);
            if (!config_name.empty()) kind = parse_initial_config(config_name);
            AttackerStrategy strategy = sc.attacker_strategy.value_or(AttackerStrategy{});
            if (!attacker_dir.empty()) strategy.initial_direction = attacker_dir == "-1" ? Direction::Negative : Direction::Positive;
            if (!switch_times.empty()) strategy.switch_times = parse_list(switch_times, "--switch-times");
            require_valid(strategy);

            const Configuration cfg = make_config(p, kind);
            for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << '\n';
            EngineOptions opts;
            opts.horizon = horizon_mult * p.circumference / (p.attacker_speed - p.defender_speed);
            const SimOutcome o = perimeter::simulate(p, cfg.state, strategy, opts);

            std::ofstream file;
            write_trace_csv(output(out_path, file), o.trace, cfg.state.defenders.size());
            std::cout << "VERDICT " << (o.verdict.breach ? "breach" : "defended") << " t=" << format_number(o.verdict.time)
                      << " pos=" << (o.verdict.position ? format_number(*o.verdict.position) : "-") << '\n';
            return o.verdict.breach ? kAttackerWins : kDefended;
        }

        if (sweep_cmd->parsed()) {
            SweepSpec spec;
            spec.axis = parse_axis(axis_name);
            spec.values = parse_list(values_text, "--values");
            if (spec.values.empty()) throw InvalidArgument("--values is empty");
            // the swept field may be left out of the base scenario
            nlohmann::json doc = scenario.document();
            const double first = spec.values.front();
            switch (spec.axis) {
            case SweepAxis::Circumference: doc.emplace("circumference", first); break;
            case SweepAxis::DefenderCount: doc.emplace("defender_count", static_cast<int>(first)); break;
            case SweepAxis::DefenseLength: doc.emplace("defense_length", first); break;
            case SweepAxis::DefenderSpeed: doc.emplace("defender_speed", first); break;
            case SweepAxis::AttackerSpeed: doc.emplace("attacker_speed", first); break;
            case SweepAxis::SpeedRatio:
                if (doc.contains("defender_speed") && doc["defender_speed"].is_number())
                    doc.emplace("attacker_speed", first * doc["defender_speed"].get<double>());
                break;
            }
            spec.base = scenario_from_json(doc).params;
            spec.search = search_settings(max_switches, grid);
            spec.horizon_mult = horizon_mult;
            spec.threads = threads;
            const auto rows = run_sweep(spec);
            std::ofstream file;
            write_sweep_csv(output(out_path, file), rows);
            for (const auto& r : rows) {
                if (r.in_band)
                    std::cerr << "note: " << format_number(r.axis_value) << " lies within the boundary band (|margin| <= "
                              << format_number(kBoundaryBand) << " C)\n";
                else if (!r.agrees())
                    std::cerr << "mismatch at " << format_number(r.axis_value) << ": analytic and simulated verdicts differ\n";
            }
            for (const auto& r : rows)
                if (!r.in_band && !r.agrees()) return kVerifyFailed;
            return kDefended;
        }

        if (verify_cmd->parsed()) {
            VerifyOptions opts;
            opts.seed = seed;
            opts.count = count;
            opts.search = search_settings(max_switches, grid);
            const VerifyReport r = run_verify(opts);
            if (json) {
                nlohmann::json j = {{"seed", r.seed}, {"draws", r.draws}, {"ok", r.ok()}};
                for (const auto& p : r.properties)
                    j["properties"].push_back(
                        {{"name", p.name}, {"passed", p.passed}, {"run", p.run}, {"failures", p.failures}});
                std::cout << j.dump(2) << '\n';
            } else {
                print_report(std::cout, r);
            }
            return r.ok() ? kDefended : kVerifyFailed;
        }
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const ResourceBoundExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const PerimeterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kVerifyFailed;
    }
    return kInvalid;
}
