#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hepbell {

struct InequalityTerm {
    std::string name;
    double coefficient = 1.0;  // sign/weight with which the term enters the sum
    double probability = 0.0;
    std::optional<double> stat_err;
};

// Outcome of evaluating one Bell-type inequality "Σ cᵢ·Pᵢ ≤ bound".
struct InequalityReport {
    std::vector<InequalityTerm> terms;
    double value = 0.0;
    double bound = 0.0;
    bool violated = false;
    std::optional<double> stat_err;
};

// Sums the weighted terms and sets the violation flag (value > bound + margin).
InequalityReport make_report(std::vector<InequalityTerm> terms, double bound, double margin = 1e-12);

}  // namespace hepbell
