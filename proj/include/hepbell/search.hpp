#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hepbell::search {

// Box maximization: exhaustive grid followed by cyclic coordinate-wise
// golden-section refinement. Coordinates listed in `fixed` keep their value
// from `start` and are never varied.
struct Options {
    double grid_step = 0.0;          // grid spacing along every free coordinate
    double lower = 0.0;              // box is [lower, upper) in every coordinate
    double upper = 0.0;
    bool refine = true;
    double refine_tol = 1e-12;       // stop once a sweep gains less than this
    std::size_t max_sweeps = 2000;
    std::size_t seeds = 8;           // best grid points that are each refined
    std::vector<std::size_t> fixed;
    std::vector<double> start;       // values for fixed coordinates; sized to dimension
};

struct Result {
    std::vector<double> argmax;
    double value = 0.0;
};

using Objective = std::function<double(std::span<const double>)>;

// Every refined seed, best first. Ties between grid points are broken toward
// the lexicographically smaller point, so the order is deterministic.
std::vector<Result> grid_then_refine_all(const Objective& f, std::size_t dimension, const Options& opt);

Result grid_then_refine(const Objective& f, std::size_t dimension, const Options& opt);

// Golden-section maximization of a unimodal function on [a, b].
double golden_section_max(const std::function<double(double)>& g, double a, double b, double tol);

}  // namespace hepbell::search
