#pragma once

#include <stdexcept>
#include <string>

namespace fanocm {

/// Base class for all toolkit errors.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent input data (descriptors, class vectors, ...).
struct validation_error : error {
    using error::error;
};

/// The requested computation is not defined for this model
/// (e.g. section counting on a family with curve centers).
struct model_error : error {
    using error::error;
};

/// A quantity that must be integral at the requested scale is not.
struct scaling_error : error {
    using error::error;
};

/// An internal cross-identity failed; signals a convention bug, not bad input.
struct consistency_error : error {
    using error::error;
};

/// A theorem hypothesis required by the operation does not hold.
struct hypothesis_error : error {
    using error::error;
};

}  // namespace fanocm
