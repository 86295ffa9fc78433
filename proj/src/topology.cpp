#include "nestsim/topology.hpp"

#include "nestsim/error.hpp"

#include <cmath>
#include <numeric>

namespace nestsim {

std::size_t EnsembleSpec::neuron_count() const noexcept
{
    return std::accumulate(patterns.begin(), patterns.end(), std::size_t{0},
                           [](std::size_t acc, const PatternSpec& p) { return acc + p.size; });
}

NeuronIndex EnsembleSpec::first_neuron(PatternIndex pattern) const
{
    if (pattern >= patterns.size()) {
        throw Error(ErrorKind::UnknownPattern, "pattern " + std::to_string(pattern));
    }
    NeuronIndex first = 0;
    for (PatternIndex p = 0; p < pattern; ++p) {
        first += patterns[p].size;
    }
    return first;
}

PatternIndex EnsembleSpec::pattern_of(NeuronIndex neuron) const
{
    NeuronIndex end = 0;
    for (PatternIndex p = 0; p < patterns.size(); ++p) {
        end += patterns[p].size;
        if (neuron < end) {
            return p;
        }
    }
    throw Error(ErrorKind::OutOfRange, "neuron " + std::to_string(neuron));
}

EnsembleSpec build_linear(std::size_t depth, std::size_t size, double excitatory_unit,
                          double inhibitory_weight)
{
    if (depth == 0 || size == 0) {
        throw Error(ErrorKind::InvalidDimension,
                    "depth and size must be >= 1 (got " + std::to_string(depth) + ", " +
                        std::to_string(size) + ")");
    }
    EnsembleSpec spec;
    spec.excitatory_unit = excitatory_unit;
    spec.inhibitory_weight = inhibitory_weight;
    spec.patterns.reserve(depth);
    for (PatternIndex k = 0; k < depth; ++k) {
        PatternSpec p;
        p.id = k;
        if (k > 0) {
            p.parent = k - 1;
        }
        p.size = size;
        spec.patterns.push_back(p);
    }
    return spec;
}

std::vector<PatternIndex> ancestors(const EnsembleSpec& spec, PatternIndex pattern)
{
    const auto n = spec.pattern_count();
    if (pattern >= n) {
        throw Error(ErrorKind::UnknownPattern, "pattern " + std::to_string(pattern));
    }
    std::vector<PatternIndex> chain;
    auto parent = spec.patterns[pattern].parent;
    while (parent) {
        if (*parent >= n) {
            throw Error(ErrorKind::UnknownPattern, "parent " + std::to_string(*parent));
        }
        // A chain longer than n - 1 must revisit a pattern.
        if (chain.size() + 1 >= n) {
            throw Error(ErrorKind::ValidationError,
                        "nesting cycle above pattern " + std::to_string(pattern));
        }
        chain.push_back(*parent);
        parent = spec.patterns[*parent].parent;
    }
    return chain;
}

std::vector<NeuronIndex> members(const EnsembleSpec& spec, PatternIndex pattern)
{
    const NeuronIndex first = spec.first_neuron(pattern);
    std::vector<NeuronIndex> out(spec.patterns[pattern].size);
    std::iota(out.begin(), out.end(), first);
    return out;
}

std::size_t nesting_depth(const EnsembleSpec& spec, PatternIndex pattern)
{
    return ancestors(spec, pattern).size();
}

std::string Violation::message() const
{
    std::string what;
    switch (kind) {
    case ViolationKind::NoPatterns: what = "no patterns"; break;
    case ViolationKind::IdMismatch: what = "pattern id does not match its position"; break;
    case ViolationKind::EmptyPattern: what = "empty pattern"; break;
    case ViolationKind::UnknownParent: what = "parent refers to a missing pattern"; break;
    case ViolationKind::NestingCycle: what = "nesting cycle"; break;
    case ViolationKind::NonPositiveExcitatoryUnit: what = "excitatory_unit must be > 0"; break;
    case ViolationKind::NegativeInhibitoryWeight: what = "inhibitory_weight must be >= 0"; break;
    }
    if (pattern) {
        return "pattern " + std::to_string(*pattern) + ": " + what;
    }
    return what;
}

std::vector<Violation> validate(const EnsembleSpec& spec)
{
    std::vector<Violation> out;
    const auto n = spec.pattern_count();
    if (n == 0) {
        out.push_back({ViolationKind::NoPatterns, std::nullopt});
    }
    if (!(spec.excitatory_unit > 0.0) || !std::isfinite(spec.excitatory_unit)) {
        out.push_back({ViolationKind::NonPositiveExcitatoryUnit, std::nullopt});
    }
    if (!(spec.inhibitory_weight >= 0.0) || !std::isfinite(spec.inhibitory_weight)) {
        out.push_back({ViolationKind::NegativeInhibitoryWeight, std::nullopt});
    }

    for (PatternIndex p = 0; p < n; ++p) {
        const auto& pat = spec.patterns[p];
        if (pat.id != p) {
            out.push_back({ViolationKind::IdMismatch, p});
        }
        if (pat.size == 0) {
            out.push_back({ViolationKind::EmptyPattern, p});
        }
        if (pat.parent && *pat.parent >= n) {
            out.push_back({ViolationKind::UnknownParent, p});
            continue;
        }
        // p lies on a cycle iff following parents returns to p within n hops.
        auto cur = pat.parent;
        for (std::size_t hops = 0; cur && *cur < n && hops < n; ++hops) {
            if (*cur == p) {
                out.push_back({ViolationKind::NestingCycle, p});
                break;
            }
            cur = spec.patterns[*cur].parent;
        }
    }
    return out;
}

} // namespace nestsim
