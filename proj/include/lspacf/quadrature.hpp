#pragma once

#include "lspacf/types.hpp"

#include <functional>

namespace lspacf {

/// Node count of the fixed composite-Simpson grid on [0,1] used for basis
/// orthonormality checks and Gram-Schmidt orthonormalization.
inline constexpr Index kQuadPoints = 10001;

/// t_i = i / (points - 1), i = 0..points-1.
inline Vector uniform_grid(Index points) {
    Vector t(points);
    for (Index i = 0; i < points; ++i) t[i] = static_cast<double>(i) / static_cast<double>(points - 1);
    return t;
}

/// Composite-Simpson weights on the uniform grid; `points` must be odd.
inline Vector simpson_weights(Index points) {
    const double h = 1.0 / static_cast<double>(points - 1);
    Vector w(points);
    w[0] = w[points - 1] = h / 3.0;
    for (Index i = 1; i + 1 < points; ++i) w[i] = (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
    return w;
}

/// 1,000-point midpoint Riemann sum of f over [0,1].
inline double integrate_midpoint(const std::function<double(double)>& f, Index points = 1000) {
    double acc = 0.0;
    for (Index i = 0; i < points; ++i) acc += f((static_cast<double>(i) + 0.5) / static_cast<double>(points));
    return acc / static_cast<double>(points);
}

}  // namespace lspacf
