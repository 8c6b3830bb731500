#include "hepbell/inequality.hpp"

namespace hepbell {

InequalityReport make_report(std::vector<InequalityTerm> terms, double bound, double margin) {
    InequalityReport r;
    r.terms = std::move(terms);
    for (const auto& t : r.terms) r.value += t.coefficient * t.probability;
    r.bound = bound;
    r.violated = r.value > bound + margin;
    return r;
}

}  // namespace hepbell
