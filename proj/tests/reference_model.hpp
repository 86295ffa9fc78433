#pragma once

// Test-only reference for linear chains: a pattern-level update loop written
// straight from the increment/decrement rule, sharing no code with the
// library's neuron-level implementation.

#include <algorithm>
#include <cstddef>
#include <vector>

namespace nestsim::testing {

struct ChainParams {
    std::vector<std::size_t> sizes;      // outermost first
    std::vector<std::size_t> activation; // 1-based first firing step per pattern
    double unit = 1.0;
    double delta = 0.5;
};

// rows[t - 1][k] = per-neuron strength of pattern k after step t.
inline std::vector<std::vector<double>> reference_chain(const ChainParams& p, std::size_t steps)
{
    const std::size_t depth = p.sizes.size();
    std::vector<double> x(depth, 0.0);
    std::vector<std::vector<double>> rows;
    for (std::size_t t = 1; t <= steps; ++t) {
        std::vector<double> next(depth);
        for (std::size_t k = 0; k < depth; ++k) {
            double gain = 0.0;
            if (t >= p.activation[k]) {
                gain = p.unit * static_cast<double>(p.sizes[k]);
            }
            double loss = 0.0;
            for (std::size_t j = k + 1; j < depth; ++j) {
                if (t >= p.activation[j]) {
                    loss += p.delta * p.unit * static_cast<double>(p.sizes[j]);
                }
            }
            next[k] = std::max(0.0, x[k] + gain - loss);
        }
        x = next;
        rows.push_back(x);
    }
    return rows;
}

inline ChainParams uniform_chain(std::size_t depth, std::size_t size, double unit, double delta)
{
    ChainParams p;
    p.sizes.assign(depth, size);
    for (std::size_t k = 0; k < depth; ++k) {
        p.activation.push_back(k + 1);
    }
    p.unit = unit;
    p.delta = delta;
    return p;
}

} // namespace nestsim::testing
