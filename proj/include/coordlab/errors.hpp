#pragma once

#include <stdexcept>
#include <string>

namespace coordlab {

// Requested (n, k) violates the regular-graph existence condition:
// k in {2,...,n-1} and n*k even.
struct InfeasibleDegree : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Augmented degree would exceed n-1.
struct DegreeSaturated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// No edge-disjoint matching (even n) or 2-regular subgraph (odd n) was
// found in the complement.
struct AugmentationNotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An iterative solver did not reach its tolerance within the iteration cap.
struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct VertexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// State space exceeds the exhaustive-enumeration guard.
struct TooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Disconnected : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// theta equals n/(2k): the two consensus profiles tie in potential and the
// stationary mass never concentrates on a single optimum.
struct DegenerateTheta : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace coordlab
