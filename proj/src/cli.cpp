#include "nestsim/cli.hpp"

#include "nestsim/counter.hpp"
#include "nestsim/dynamics.hpp"
#include "nestsim/energy.hpp"
#include "nestsim/error.hpp"
#include "nestsim/scenario.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace nestsim::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) {
        throw UsageError("cannot write " + path);
    }
}

WeightChain parse_weights(const std::string& list, const char* flag)
{
    WeightChain chain;
    std::string_view rest = list;
    while (true) {
        const auto comma = rest.find(',');
        const auto field = rest.substr(0, comma);
        Count w = 0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), w);
        if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() || w < 1) {
            throw UsageError(std::string(flag) + ": expected comma-separated integers >= 1, got '" +
                             list + "'");
        }
        chain.weights.push_back(w);
        if (comma == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(comma + 1);
    }
    return chain;
}

int simulate(const std::string& scenario_path, const std::string& out_path, std::ostream& out)
{
    const auto scenario = parse_scenario(read_file(scenario_path));
    const auto trace = run(scenario.ensemble, scenario.schedule, scenario.steps, scenario.mode);
    const auto text = write_trace(trace);
    if (out_path.empty()) {
        out << text;
    } else {
        write_file(out_path, text);
        out << "wrote " << out_path << " steps=" << trace.steps() << " neurons=" << trace.neurons()
            << '\n';
    }
    return success;
}

int verify_table1(const std::string& fixture_path, double tolerance, std::ostream& out)
{
    const auto fixture = parse_golden(fixture_path.empty() ? std::string(builtin_table1_fixture())
                                                           : read_file(fixture_path));
    const auto spec = standard_ensemble();
    const auto trace = run(spec, Schedule::staggered(spec), standard_steps, Mode::scheduled);
    const auto report = compare_golden(trace, fixture, tolerance);
    out << format_report(report);
    return report.pass ? success : check_failed;
}

int counter(std::size_t depth, std::ostream& out)
{
    const auto result = run_counter({depth, {}});
    for (const auto& e : result.events) {
        out << "count level=" << e.level << " tick=" << e.tick << '\n';
    }
    out << "quiescent tick=" << result.final_state.tick << '\n';
    return success;
}

int chain(const std::string& hops, std::ostream& out)
{
    const auto weights = parse_weights(hops, "--hops");
    const Count product = chain_source_firings(weights);
    const Count oracle = event_oracle(chain_from_weights(weights));
    out << "product=" << product << " oracle=" << oracle << '\n';
    return product == oracle ? success : check_failed;
}

int center(const std::string& list, std::ostream& out)
{
    const auto weights = parse_weights(list, "--weights");
    const auto costs = centering_costs(weights);
    const auto best = best_center(weights);
    out << "costs=";
    for (std::size_t i = 0; i < costs.size(); ++i) {
        out << (i ? "," : "") << costs[i];
    }
    out << '\n' << "best=" << best + 1 << " cost=" << costs[best] << '\n';
    return success;
}

int layout(std::size_t trials, std::uint64_t seed, std::ostream& out)
{
    if (trials < 1) {
        throw UsageError("--trials must be >= 1");
    }
    out << "layout seed=" << seed << " trials=" << trials << '\n';
    std::size_t shorter = 0;
    std::size_t reinforced = 0;
    for (const auto& trial : layout_trials(seed, trials)) {
        shorter += trial.inward_shorter ? 1 : 0;
        RouteSet routes{{{trial.distances.inward, 0.0}, {trial.distances.outward, 0.0}}};
        routes = stigmergy_reinforce(routes, 10, 1.0);
        reinforced += most_reinforced(routes) == 0 ? 1 : 0;
    }
    out << "inward_shorter pass=" << shorter << " fail=" << trials - shorter << '\n';
    out << "inward_reinforced pass=" << reinforced << " fail=" << trials - reinforced << '\n';
    return shorter == trials && reinforced == trials ? success : check_failed;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Nested pattern ensemble simulator", "nestsim"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_path;
    auto* sim = app.add_subcommand("simulate", "Run a scenario file and emit its trace as CSV");
    sim->add_option("--scenario", scenario_path, "Scenario JSON")->required();
    sim->add_option("--out", out_path, "Trace CSV path (default: standard output)");

    std::string fixture_path;
    double tolerance = 1e-9;
    auto* verify = app.add_subcommand("verify-table1", "Check the standard run against the golden strength table");
    verify->add_option("--fixture", fixture_path, "Fixture CSV (default: built-in)");
    verify->add_option("--tolerance", tolerance, "Max absolute error")->capture_default_str();

    std::size_t depth = 0;
    auto* count = app.add_subcommand("counter", "Run the nested counter until quiescent");
    count->add_option("--depth", depth, "Nesting depth")->required();

    std::string hops;
    auto* chn = app.add_subcommand("chain", "Source firings for a chain of per-hop requirements");
    chn->add_option("--hops", hops, "Comma-separated per-hop firing requirements")->required();

    std::string weights;
    auto* ctr = app.add_subcommand("center", "Centering cost at every position and the argmin");
    ctr->add_option("--weights", weights, "Comma-separated per-hop firing requirements")->required();

    std::size_t trials = 50;
    std::uint64_t seed = default_seed;
    auto* lay = app.add_subcommand("layout", "Inward vs outward terminal placement trials");
    lay->add_option("--trials", trials, "Number of random layouts")->capture_default_str();
    lay->add_option("--seed", seed, "RNG seed")->capture_default_str();

    // CLI11 wants argv order reversed.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return success;
    } catch (const CLI::ParseError& e) {
        err << "nestsim: " << e.what() << '\n';
        return bad_input;
    }

    try {
        if (*sim) {
            return simulate(scenario_path, out_path, out);
        }
        if (*verify) {
            return verify_table1(fixture_path, tolerance, out);
        }
        if (*count) {
            return counter(depth, out);
        }
        if (*chn) {
            return chain(hops, out);
        }
        if (*ctr) {
            return center(weights, out);
        }
        if (*lay) {
            return layout(trials, seed, out);
        }
    } catch (const UsageError& e) {
        err << "nestsim: " << e.what() << '\n';
        return bad_input;
    } catch (const Error& e) {
        err << "nestsim: " << e.what() << '\n';
        return bad_input;
    }
    return bad_input;
}

} // namespace nestsim::cli
