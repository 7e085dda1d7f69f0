#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace lspacf {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Ordered real observations x_1..x_n.
///
/// `clock_n` is the denominator of rescaled time: observation i (1-based)
/// sits at t = i / clock_n.  It equals n() for a full series and keeps the
/// full-series value when a training prefix is cut for cross-validation, so
/// fitted coefficient functions stay evaluable on the validation tail.
struct TimeSeries {
    Vector values;
    Index clock_n = 0;
    std::uint64_t seed = 0;  ///< provenance; 0 when ingested from a file

    Index n() const { return values.size(); }

    /// 1-based access matching the x_i convention.
    double at(Index i) const { return values[i - 1]; }

    static TimeSeries from_values(Vector v) {
        TimeSeries x;
        x.clock_n = v.size();
        x.values = std::move(v);
        return x;
    }

    /// First `len` observations, same clock.
    TimeSeries prefix(Index len) const {
        TimeSeries x;
        x.values = values.head(len);
        x.clock_n = clock_n;
        x.seed = seed;
        return x;
    }
};

}  // namespace lspacf
