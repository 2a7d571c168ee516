#pragma once

#include <stdexcept>
#include <string>

namespace mrta {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyRoadmap : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Unreachable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoVisibleNode : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CyclicDependency : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientRobots : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CountMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PlacementFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StepLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace mrta
