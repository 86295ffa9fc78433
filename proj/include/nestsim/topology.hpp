#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nestsim {

using PatternIndex = std::size_t;
using NeuronIndex = std::size_t;

struct PatternSpec {
    PatternIndex id = 0;
    std::optional<PatternIndex> parent; // absent for an outermost pattern
    std::size_t size = 0;

    friend bool operator==(const PatternSpec&, const PatternSpec&) = default;
};

// A forest of nested patterns. Neurons are numbered contiguously in pattern
// order: pattern 0 owns neurons [0, size0), pattern 1 the next block, etc.
// The struct is not validated on construction; call validate() or use
// build_linear().
struct EnsembleSpec {
    std::vector<PatternSpec> patterns;
    double excitatory_unit = 1.0;   // signal per firing per neuron
    double inhibitory_weight = 0.0; // fraction of excitatory_unit

    std::size_t pattern_count() const noexcept { return patterns.size(); }
    std::size_t neuron_count() const noexcept;

    // First neuron of a pattern's block.
    NeuronIndex first_neuron(PatternIndex pattern) const;
    PatternIndex pattern_of(NeuronIndex neuron) const;

    friend bool operator==(const EnsembleSpec&, const EnsembleSpec&) = default;
};

EnsembleSpec build_linear(std::size_t depth, std::size_t size, double excitatory_unit,
                          double inhibitory_weight);

// Enclosing patterns, immediate parent first, root last.
std::vector<PatternIndex> ancestors(const EnsembleSpec& spec, PatternIndex pattern);

std::vector<NeuronIndex> members(const EnsembleSpec& spec, PatternIndex pattern);

// Number of strict ancestors (0 for a root).
std::size_t nesting_depth(const EnsembleSpec& spec, PatternIndex pattern);

enum class ViolationKind {
    NoPatterns,
    IdMismatch,
    EmptyPattern,
    UnknownParent,
    NestingCycle,
    NonPositiveExcitatoryUnit,
    NegativeInhibitoryWeight,
};

struct Violation {
    ViolationKind kind;
    std::optional<PatternIndex> pattern;

    std::string message() const;
};

// Every violated invariant, in pattern order; empty means valid.
std::vector<Violation> validate(const EnsembleSpec& spec);

} // namespace nestsim
