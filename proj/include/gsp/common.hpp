#ifndef GSP_COMMON_HPP
#define GSP_COMMON_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace gsp {

/// Raised for malformed configuration: unknown tags, missing fields,
/// values outside their documented domain. CLI maps this to exit code 1.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised for failures of the numerical machinery itself (divergent
/// training, degenerate gaps under strict mode). CLI maps this to exit
/// code 2.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

constexpr double kRangeTolerance = 1e-12;

inline double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

inline void check_unit_coordinate(double t, const char* name) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error(std::string(name) + " must lie in [0,1], got " + std::to_string(t));
}

}  // namespace gsp

#endif  // GSP_COMMON_HPP
