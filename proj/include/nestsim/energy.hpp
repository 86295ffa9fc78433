#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace nestsim {

using Count = std::uint64_t;

// One feeder-to-target link. `impulse` leaves the feeder, `attenuation` is
// lost per unit of `distance`, and the target fires at `threshold`.
struct HopSpec {
    double distance = 0.0;
    double attenuation = 0.0;
    double threshold = 1.0;
    double impulse = 1.0;
};

// hops[h] connects neuron h to neuron h + 1.
struct ChainSpec {
    std::vector<HopSpec> hops;
};

// Per-hop firing requirements, each >= 1.
struct WeightChain {
    std::vector<Count> weights;

    std::size_t neuron_count() const noexcept { return weights.size() + 1; }
};

// Output a feeder must emit so that `downstream_demand` survives the hop.
double required_output(const HopSpec& hop, double downstream_demand);

// Charge reaching the target per feeder firing.
double arriving_charge(const HopSpec& hop);

// Feeder firings needed to fire the target once: ceil(threshold / arriving).
// Throws AttenuatedOut when nothing arrives.
Count firings_per_hop(const HopSpec& hop);

WeightChain to_weights(const ChainSpec& chain);

// Unit-impulse, lossless hops whose per-hop requirement is exactly `weights`.
ChainSpec chain_from_weights(const WeightChain& weights);

// Product of the per-hop requirements.
Count chain_source_firings(const WeightChain& chain);

// Accumulate-and-fire replay of the chain: each cell stores arriving charge,
// fires at threshold and resets to zero. Returns source firings until the
// last neuron fires once.
Count event_oracle(const ChainSpec& chain, Count max_source_firings = 100'000'000);

// Firings needed to reach both ends of the line from `position`. An end with
// no hops costs 0.
Count centering_cost(const WeightChain& chain, std::size_t position);

std::vector<Count> centering_costs(const WeightChain& chain);

// argmin of centering_cost, lowest index on ties.
std::size_t best_center(const WeightChain& chain);

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double distance(Point a, Point b);

struct NodeGroup {
    Point center;
    std::vector<Point> nodes;
    std::size_t terminal = 0; // index into nodes
};

struct LayoutSpec {
    NodeGroup group_a;
    NodeGroup group_b;

    double separation() const { return distance(group_a.center, group_b.center); }
};

struct LayoutDistances {
    double inward = 0.0;  // terminals as given, on the facing edges
    double outward = 0.0; // each terminal mirrored through its group center
};

LayoutDistances layout_distances(const LayoutSpec& layout);

struct MirroredLayoutParams {
    double min_radius = 0.5;
    double max_radius = 1.5;
    double max_gap = 10.0; // separation - larger diameter, drawn from (0, max_gap]
    std::size_t nodes_per_group = 8;
};

// Two disc-shaped groups in a random orientation, separated by more than the
// larger group diameter, with each terminal on the boundary arc facing the other
// group.
LayoutSpec random_mirrored_layout(std::mt19937_64& rng, const MirroredLayoutParams& params = {});

struct LayoutTrial {
    LayoutSpec layout;
    LayoutDistances distances;
    bool inward_shorter = false;
};

std::vector<LayoutTrial> layout_trials(std::uint64_t seed, std::size_t trials,
                                       const MirroredLayoutParams& params = {});

struct Route {
    double length = 1.0;
    double reinforcement = 0.0;
};

struct RouteSet {
    std::vector<Route> routes;
};

// Each cycle deposits energy_per_cycle / length on every route.
RouteSet stigmergy_reinforce(RouteSet routes, std::size_t cycles, double energy_per_cycle);

// Index of the most reinforced route, lowest index on ties.
std::size_t most_reinforced(const RouteSet& routes);

// Uniform double in [0, 1) from the top 53 bits; same on every platform.
double unit_uniform(std::mt19937_64& rng);

} // namespace nestsim
