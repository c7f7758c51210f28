#include "safeccc/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace safeccc {

namespace {

struct Vertex {
    std::vector<double> x;
    double f;
};

} // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options) {
    const std::size_t dims = start.size();
    NelderMeadResult result;
    if (dims == 0) {
        result.value = objective(start);
        result.converged = true;
        return result;
    }

    std::vector<Vertex> simplex;
    simplex.reserve(dims + 1);
    simplex.push_back({start, objective(start)});
    for (std::size_t d = 0; d < dims; ++d) {
        std::vector<double> x = start;
        x[d] += options.initial_step;
        const double f = objective(x);
        simplex.push_back({std::move(x), f});
    }

    auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
    auto blend = [dims](const std::vector<double>& from, const std::vector<double>& to, double t) {
        std::vector<double> out(dims);
        for (std::size_t d = 0; d < dims; ++d) {
            out[d] = from[d] + t * (to[d] - from[d]);
        }
        return out;
    };

    std::size_t iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        std::stable_sort(simplex.begin(), simplex.end(), by_value);

        double diameter = 0.0;
        for (std::size_t k = 1; k <= dims; ++k) {
            for (std::size_t d = 0; d < dims; ++d) {
                diameter = std::max(diameter, std::abs(simplex[k].x[d] - simplex[0].x[d]));
            }
        }
        const double spread = simplex.back().f - simplex.front().f;
        if (std::isfinite(spread) && spread <= options.f_tolerance &&
            diameter <= options.x_tolerance) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(dims, 0.0);
        for (std::size_t k = 0; k < dims; ++k) {
            for (std::size_t d = 0; d < dims; ++d) {
                centroid[d] += simplex[k].x[d] / static_cast<double>(dims);
            }
        }

        Vertex& worst = simplex.back();
        std::vector<double> reflected = blend(centroid, worst.x, -1.0);
        const double f_reflected = objective(reflected);

        if (f_reflected < simplex.front().f) {
            std::vector<double> expanded = blend(centroid, worst.x, -2.0);
            const double f_expanded = objective(expanded);
            if (f_expanded < f_reflected) {
                worst = {std::move(expanded), f_expanded};
            } else {
                worst = {std::move(reflected), f_reflected};
            }
            continue;
        }
        if (f_reflected < simplex[dims - 1].f) {
            worst = {std::move(reflected), f_reflected};
            continue;
        }

        const bool outside = f_reflected < worst.f;
        std::vector<double> contracted =
            outside ? blend(centroid, reflected, 0.5) : blend(centroid, worst.x, 0.5);
        const double f_contracted = objective(contracted);
        if (f_contracted < (outside ? f_reflected : worst.f)) {
            worst = {std::move(contracted), f_contracted};
            continue;
        }

        for (std::size_t k = 1; k <= dims; ++k) {
            simplex[k].x = blend(simplex[0].x, simplex[k].x, 0.5);
            simplex[k].f = objective(simplex[k].x);
        }
    }

    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    result.x = simplex.front().x;
    result.value = simplex.front().f;
    result.iterations = iter;
    return result;
}

} // namespace safeccc
