#include "nestsim/energy.hpp"

#include "nestsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace nestsim {

namespace {

// Relative slack when comparing accumulated charge against a threshold, so
// that e.g. three arrivals of 0.1 fire a 0.3 threshold.
constexpr double charge_tolerance = 1e-12;

void check_hop(const HopSpec& hop)
{
    const bool ok = hop.distance >= 0.0 && hop.attenuation >= 0.0 && hop.threshold > 0.0 &&
                    hop.impulse > 0.0 && std::isfinite(hop.distance) &&
                    std::isfinite(hop.attenuation) && std::isfinite(hop.threshold) &&
                    std::isfinite(hop.impulse);
    if (!ok) {
        throw Error(ErrorKind::InvalidHop,
                    "need distance >= 0, attenuation >= 0, threshold > 0, impulse > 0");
    }
}

Count checked_mul(Count a, Count b)
{
    Count out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw Error(ErrorKind::Overflow, "firing count exceeds 64 bits");
    }
    return out;
}

Count checked_add(Count a, Count b)
{
    Count out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw Error(ErrorKind::Overflow, "firing count exceeds 64 bits");
    }
    return out;
}

Count product(std::vector<Count>::const_iterator first, std::vector<Count>::const_iterator last)
{
    Count p = 1;
    for (; first != last; ++first) {
        p = checked_mul(p, *first);
    }
    return p;
}

void check_weights(const WeightChain& chain)
{
    if (chain.weights.empty()) {
        throw Error(ErrorKind::InvalidDimension, "weight chain needs at least one hop");
    }
    for (Count w : chain.weights) {
        if (w < 1) {
            throw Error(ErrorKind::InvalidDimension, "weights must be >= 1");
        }
    }
}

bool reaches(double charge, double threshold)
{
    return charge >= threshold * (1.0 - charge_tolerance);
}

Point on_circle(Point center, double radius, double angle)
{
    return {center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)};
}

} // namespace

double required_output(const HopSpec& hop, double downstream_demand)
{
    check_hop(hop);
    return downstream_demand + hop.distance * hop.attenuation;
}

double arriving_charge(const HopSpec& hop)
{
    check_hop(hop);
    return hop.impulse - hop.distance * hop.attenuation;
}

Count firings_per_hop(const HopSpec& hop)
{
    const double arriving = arriving_charge(hop);
    if (!(arriving > 0.0)) {
        throw Error(ErrorKind::AttenuatedOut, "impulse " + std::to_string(hop.impulse) +
                                                  " does not survive distance x attenuation " +
                                                  std::to_string(hop.distance * hop.attenuation));
    }
    const double ratio = hop.threshold / arriving;
    auto k = static_cast<Count>(std::ceil(ratio));
    if (k > 1 && reaches(static_cast<double>(k - 1) * arriving, hop.threshold)) {
        --k;
    }
    return std::max<Count>(k, 1);
}

WeightChain to_weights(const ChainSpec& chain)
{
    WeightChain out;
    out.weights.reserve(chain.hops.size());
    for (const auto& hop : chain.hops) {
        out.weights.push_back(firings_per_hop(hop));
    }
    return out;
}

ChainSpec chain_from_weights(const WeightChain& weights)
{
    check_weights(weights);
    ChainSpec chain;
    for (Count w : weights.weights) {
        chain.hops.push_back({0.0, 0.0, static_cast<double>(w), 1.0});
    }
    return chain;
}

Count chain_source_firings(const WeightChain& chain)
{
    check_weights(chain);
    return product(chain.weights.begin(), chain.weights.end());
}

Count event_oracle(const ChainSpec& chain, Count max_source_firings)
{
    if (chain.hops.empty()) {
        throw Error(ErrorKind::InvalidDimension, "chain needs at least one hop");
    }
    std::vector<double> arriving;
    for (const auto& hop : chain.hops) {
        firings_per_hop(hop); // AttenuatedOut before any replay
        arriving.push_back(arriving_charge(hop));
    }

    // stored[h] is the charge held by neuron h + 1.
    std::vector<double> stored(chain.hops.size(), 0.0);
    for (Count source = 1; source <= max_source_firings; ++source) {
        std::size_t h = 0;
        for (; h < chain.hops.size(); ++h) {
            stored[h] += arriving[h];
            if (!reaches(stored[h], chain.hops[h].threshold)) {
                break;
            }
            stored[h] = 0.0;
        }
        if (h == chain.hops.size()) {
            return source;
        }
    }
    throw Error(ErrorKind::Overflow,
                "last neuron did not fire within " + std::to_string(max_source_firings) +
                    " source firings");
}

Count centering_cost(const WeightChain& chain, std::size_t position)
{
    check_weights(chain);
    if (position >= chain.neuron_count()) {
        throw Error(ErrorKind::OutOfRange, "position " + std::to_string(position) + " of " +
                                               std::to_string(chain.neuron_count()) + " neurons");
    }
    const auto split = chain.weights.begin() + static_cast<std::ptrdiff_t>(position);
    const Count left = position == 0 ? 0 : product(chain.weights.begin(), split);
    const Count right = split == chain.weights.end() ? 0 : product(split, chain.weights.end());
    return checked_add(left, right);
}

std::vector<Count> centering_costs(const WeightChain& chain)
{
    check_weights(chain);
    std::vector<Count> costs;
    costs.reserve(chain.neuron_count());
    for (std::size_t i = 0; i < chain.neuron_count(); ++i) {
        costs.push_back(centering_cost(chain, i));
    }
    return costs;
}

std::size_t best_center(const WeightChain& chain)
{
    const auto costs = centering_costs(chain);
    return static_cast<std::size_t>(std::min_element(costs.begin(), costs.end()) - costs.begin());
}

double distance(Point a, Point b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

LayoutDistances layout_distances(const LayoutSpec& layout)
{
    const auto& a = layout.group_a;
    const auto& b = layout.group_b;
    if (a.terminal >= a.nodes.size() || b.terminal >= b.nodes.size()) {
        throw Error(ErrorKind::DegenerateLayout, "terminal is not a node of its group");
    }
    if (a.center.x == b.center.x && a.center.y == b.center.y) {
        throw Error(ErrorKind::DegenerateLayout, "group centers coincide");
    }
    const auto mirror = [](Point p, Point c) { return Point{2.0 * c.x - p.x, 2.0 * c.y - p.y}; };
    const Point ta = a.nodes[a.terminal];
    const Point tb = b.nodes[b.terminal];
    return {distance(ta, tb), distance(mirror(ta, a.center), mirror(tb, b.center))};
}

double unit_uniform(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

LayoutSpec random_mirrored_layout(std::mt19937_64& rng, const MirroredLayoutParams& params)
{
    const auto uniform = [&rng](double lo, double hi) { return lo + (hi - lo) * unit_uniform(rng); };
    constexpr double pi = std::numbers::pi;

    const double ra = uniform(params.min_radius, params.max_radius);
    const double rb = uniform(params.min_radius, params.max_radius);
    // 1 - u lies in (0, 1], so the gap is strictly positive.
    const double gap = params.max_gap * (1.0 - unit_uniform(rng));
    const double heading = uniform(-pi, pi);
    const double separation = 2.0 * std::max(ra, rb) + gap;

    LayoutSpec layout;
    layout.group_a.center = {uniform(-10.0, 10.0), uniform(-10.0, 10.0)};
    layout.group_b.center = on_circle(layout.group_a.center, separation, heading);

    const auto fill = [&](NodeGroup& g, double radius, double facing) {
        for (std::size_t k = 0; k < params.nodes_per_group; ++k) {
            const double r = radius * std::sqrt(unit_uniform(rng));
            g.nodes.push_back(on_circle(g.center, r, uniform(-pi, pi)));
        }
        // Stay off the exact tangent points, where inward == outward.
        const double offset = uniform(-0.45 * pi, 0.45 * pi);
        g.terminal = g.nodes.size();
        g.nodes.push_back(on_circle(g.center, radius, facing + offset));
    };
    fill(layout.group_a, ra, heading);
    fill(layout.group_b, rb, heading + pi);
    return layout;
}

std::vector<LayoutTrial> layout_trials(std::uint64_t seed, std::size_t trials,
                                       const MirroredLayoutParams& params)
{
    std::mt19937_64 rng(seed);
    std::vector<LayoutTrial> out;
    out.reserve(trials);
    for (std::size_t k = 0; k < trials; ++k) {
        LayoutTrial trial;
        trial.layout = random_mirrored_layout(rng, params);
        trial.distances = layout_distances(trial.layout);
        trial.inward_shorter = trial.distances.inward < trial.distances.outward;
        out.push_back(std::move(trial));
    }
    return out;
}

RouteSet stigmergy_reinforce(RouteSet routes, std::size_t cycles, double energy_per_cycle)
{
    if (!(energy_per_cycle > 0.0)) {
        throw Error(ErrorKind::InvalidDimension, "energy_per_cycle must be > 0");
    }
    for (const auto& r : routes.routes) {
        if (!(r.length > 0.0) || !(r.reinforcement >= 0.0)) {
            throw Error(ErrorKind::InvalidDimension,
                        "routes need length > 0 and reinforcement >= 0");
        }
    }
    for (auto& r : routes.routes) {
        r.reinforcement += static_cast<double>(cycles) * (energy_per_cycle / r.length);
    }
    return routes;
}

std::size_t most_reinforced(const RouteSet& routes)
{
    if (routes.routes.empty()) {
        throw Error(ErrorKind::InvalidDimension, "no routes");
    }
    const auto it = std::max_element(
        routes.routes.begin(), routes.routes.end(),
        [](const Route& a, const Route& b) { return a.reinforcement < b.reinforcement; });
    return static_cast<std::size_t>(it - routes.routes.begin());
}

} // namespace nestsim
