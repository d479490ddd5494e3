#pragma once

// The operational engine: executes a typechecked program against concrete
// west/north inputs, producing the unique running scenario and the
// east/south outputs.
//
// Temporal data travels as a stream of group values consumed top-to-bottom
// (nil groups carry nothing and are dropped); spatial data travels as a
// positional list of group values consumed left-to-right (nil groups keep
// their slot). Horizontal seams are unbounded nonblocking FIFO queues;
// values a right component never consumes are reported in diagnostics and
// absorbed by sink rows so the scenario stays well-seamed.

#include <deque>
#include <string>
#include <vector>

#include "agapia/exec.hpp"
#include "agapia/lang.hpp"
#include "agapia/scenario.hpp"

namespace agapia {

struct RunInput {
    std::deque<InterfaceValue> west;  // temporal stream, consumed in order
    InterfaceValue north;             // spatial
};

struct RunResult {
    Scenario scenario;
    std::vector<InterfaceValue> east;  // produced temporal stream
    InterfaceValue south;
    std::vector<std::string> diagnostics;
};

RunResult run(const TypedProgram& tp, const RunInput& in, const ExecLimits& limits = {});

}  // namespace agapia
