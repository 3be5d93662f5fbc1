#pragma once

#include <optional>
#include <utility>

#include <Eigen/Dense>

namespace icslab {

/// Location handling for an estimator: estimated jointly with the spread
/// ("free") or held at a value supplied by the caller ("fixed").
template <typename T>
class LocationMode {
public:
    static LocationMode free() { return LocationMode(); }
    static LocationMode fixed(T value) { return LocationMode(std::move(value)); }

    bool is_fixed() const { return value_.has_value(); }
    /// Precondition: is_fixed().
    const T& value() const { return *value_; }

private:
    LocationMode() = default;
    explicit LocationMode(T value) : value_(std::move(value)) {}

    std::optional<T> value_;
};

using Location1d = LocationMode<double>;
using Location = LocationMode<Eigen::VectorXd>;

}  // namespace icslab
