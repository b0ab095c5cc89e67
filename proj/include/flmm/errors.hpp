#pragma once

#include <stdexcept>
#include <string>

namespace flmm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateSeries : Error { using Error::Error; };
struct UnsupportedOrder : Error { using Error::Error; };
struct SeriesDivergence : Error { using Error::Error; };
struct IllConditionedStartingSystem : Error { using Error::Error; };
struct ScheduleNotNeeded : Error { using Error::Error; };
struct UnsupportedForFastEngine : Error { using Error::Error; };
struct UnsupportedForMethodII : UnsupportedForFastEngine { using UnsupportedForFastEngine::UnsupportedForFastEngine; };
struct SequenceError : Error { using Error::Error; };
struct StepFailure : Error { using Error::Error; };

struct NonlinearSolveFailure : Error {
    NonlinearSolveFailure(const std::string& what, long step) : Error(what), step(step) {}
    long step;
};

// Bad user input (CLI maps this to exit code 2).
struct ValidationError : Error { using Error::Error; };

}  // namespace flmm
