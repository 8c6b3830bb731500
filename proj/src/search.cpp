#include "hepbell/search.hpp"

#include <algorithm>
#include <cmath>

#include "hepbell/errors.hpp"

namespace hepbell::search {

double golden_section_max(const std::function<double(double)>& g, double a, double b, double tol) {
    constexpr double kInvPhi = 0.6180339887498949;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double gc = g(c), gd = g(d);
    while (b - a > tol) {
        if (gc >= gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - kInvPhi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + kInvPhi * (b - a);
            gd = g(d);
        }
    }
    return gc >= gd ? c : d;
}

namespace {

constexpr double kCoordTol = 1e-11;

Result refine(const Objective& f, std::vector<double> x, const std::vector<bool>& free, const Options& opt) {
    double fx = f(x);
    const std::size_t n = x.size();
    std::vector<double> trial = x;
    for (std::size_t sweep = 0; sweep < opt.max_sweeps; ++sweep) {
        const std::vector<double> before = x;
        const double f_before = fx;
        for (std::size_t i = 0; i < n; ++i) {
            if (!free[i]) continue;
            trial = x;
            auto line = [&](double v) {
                trial[i] = v;
                return f(trial);
            };
            const double best = golden_section_max(line, x[i] - opt.grid_step, x[i] + opt.grid_step, kCoordTol);
            const double fb = line(best);
            if (fb > fx) {
                x[i] = best;
                fx = fb;
            }
        }
        // Pattern move along the sweep displacement; speeds up ridge following.
        std::vector<double> dir(n);
        double dir_norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dir[i] = x[i] - before[i];
            dir_norm += dir[i] * dir[i];
        }
        if (dir_norm > 0.0) {
            auto along = [&](double t) {
                for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + t * dir[i];
                return f(trial);
            };
            const double t = golden_section_max(along, -1.0, 3.0, kCoordTol);
            const double ft = along(t);
            if (ft > fx) {
                for (std::size_t i = 0; i < n; ++i) x[i] += t * dir[i];
                fx = ft;
            }
        }
        if (fx - f_before < opt.refine_tol) break;
    }
    return {std::move(x), fx};
}

}  // namespace

std::vector<Result> grid_then_refine_all(const Objective& f, std::size_t dimension, const Options& opt) {
    if (!(opt.grid_step > 0.0)) throw InvalidArgument("grid step must be positive");
    if (!(opt.upper > opt.lower)) throw InvalidArgument("empty search box");
    if (opt.refine && !(opt.refine_tol > 0.0)) throw InvalidArgument("refine tolerance must be positive");

    std::vector<bool> free(dimension, true);
    for (auto i : opt.fixed) {
        if (i >= dimension) throw InvalidArgument("fixed coordinate out of range");
        free[i] = false;
    }
    std::vector<double> x(dimension, opt.lower);
    if (!opt.fixed.empty()) {
        if (opt.start.size() != dimension) throw InvalidArgument("start point must cover every coordinate");
        for (auto i : opt.fixed) x[i] = opt.start[i];
    }

    const auto per_axis = static_cast<std::size_t>(std::ceil((opt.upper - opt.lower) / opt.grid_step - 1e-9));
    std::vector<std::size_t> counter(dimension, 0);
    std::vector<Result> top;
    const std::size_t keep = std::max<std::size_t>(1, opt.seeds);
    auto better = [](const Result& a, const Result& b) {
        if (a.value != b.value) return a.value > b.value;
        return std::lexicographical_compare(a.argmax.begin(), a.argmax.end(), b.argmax.begin(), b.argmax.end());
    };

    // Odometer over the free coordinates; the last coordinate varies fastest.
    while (true) {
        for (std::size_t i = 0; i < dimension; ++i)
            if (free[i]) x[i] = opt.lower + static_cast<double>(counter[i]) * opt.grid_step;
        Result r{x, f(x)};
        if (top.size() < keep || better(r, top.back())) {
            top.insert(std::upper_bound(top.begin(), top.end(), r, better), r);
            if (top.size() > keep) top.pop_back();
        }
        std::size_t i = dimension;
        while (i-- > 0) {
            if (!free[i]) continue;
            if (++counter[i] < per_axis) break;
            counter[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }

    if (!opt.refine) return top;
    std::vector<Result> out;
    for (const auto& seed : top) out.push_back(refine(f, seed.argmax, free, opt));
    std::stable_sort(out.begin(), out.end(), [](const Result& a, const Result& b) { return a.value > b.value; });
    return out;
}

Result grid_then_refine(const Objective& f, std::size_t dimension, const Options& opt) {
    return grid_then_refine_all(f, dimension, opt).front();
}

}  // namespace hepbell::search
