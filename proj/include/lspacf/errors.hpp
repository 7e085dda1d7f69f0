#pragma once

#include <stdexcept>

namespace lspacf {

/// A linear system (local Yule-Walker, Levinson-Durbin step, or design Gram)
/// is numerically singular.
struct SingularError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The frozen AR polynomial has a root on or inside the unit circle.
struct UnstableModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lspacf
