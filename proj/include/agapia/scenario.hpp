#pragma once

// Two-dimensional scenarios: rectangular grids of cells carrying data on all
// four edges, the three composition operations (horizontal, vertical,
// diagonal), constant cells (identity, recorder, speaker, empty and their
// transposes), seam validation, and dummy-row/column normalization.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "agapia/iface.hpp"

namespace agapia {

struct SeamError : AgapiaError {
    using AgapiaError::AgapiaError;
};

struct Cell {
    std::string label;
    InterfaceValue west;   // temporal
    InterfaceValue north;  // spatial
    InterfaceValue east;   // temporal
    InterfaceValue south;  // spatial
    bool routing = false;  // pure plumbing (dummies, constants): candidates
                           // for normalization when they carry no information
};

struct BorderTypes {
    InterfaceType w, n, e, s;
};

// Columns are processes, rows are time steps. rows==0 means the empty
// scenario (the common identity of all three compositions).
struct Scenario {
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<Cell>> cells;  // row-major
    BorderTypes type4;

    bool empty() const { return rows == 0; }

    std::vector<InterfaceValue> west_rows() const;
    std::vector<InterfaceValue> east_rows() const;
    std::vector<InterfaceValue> north_cols() const;
    std::vector<InterfaceValue> south_cols() const;
    InterfaceValue west_all() const;   // concatenated, temporal
    InterfaceValue east_all() const;   // concatenated, temporal
    InterfaceValue north_all() const;  // concatenated, spatial
    InterfaceValue south_all() const;  // concatenated, spatial
};

// Builds a scenario from a rectangular cell matrix; computes type4 from the
// border values. Throws StructureError on a ragged matrix.
Scenario make_scenario(std::vector<std::vector<Cell>> cells);

struct ConstCellKind {
    enum class K { Identity, Recorder, Speaker, Empty, TransposedRecorder, TransposedSpeaker };
    K kind = K::Empty;
    // Speaker/TransposedSpeaker: how many items of the queued input to
    // dispense (defaults to all of it).
    std::size_t take = static_cast<std::size_t>(-1);
};

// One-cell scenario with the kind's routing applied to the concrete inputs:
//   Identity            w→e, n→s
//   Recorder            s = n ++ w (temporal data laid down spatially), e = nil
//   Speaker             e = first `take` items of n, s = the rest, w = nil
//   Empty               all nil (inputs must be nil)
//   TransposedRecorder  e = w ++ n, s = nil
//   TransposedSpeaker   s = first `take` items of w, e = the rest, n = nil
Scenario make_constant(ConstCellKind kind, const InterfaceValue& west,
                       const InterfaceValue& north);

// Identity scenarios: a column of identity cells passing the given row
// values w→e (neutral for hcomp), a row passing column values n→s (neutral
// for vcomp), and a single crossing identity consuming f's east/south
// (neutral for dcomp). All normalize away.
Scenario identity_h(const std::vector<InterfaceValue>& rowValues);
Scenario identity_v(const std::vector<InterfaceValue>& colValues);
Scenario identity_d(const Scenario& f);

Scenario hcomp(const Scenario& f1, const Scenario& f2);
Scenario vcomp(const Scenario& f1, const Scenario& f2);
Scenario dcomp(const Scenario& f1, const Scenario& f2);

// The constant-formula expansion (f1∘R∘Λ) ∇ (R'∘Id∘S') ∇ (Λ∘S∘f2), built
// purely from hcomp/vcomp/make_constant; test oracle for dcomp.
Scenario dcomp_expansion(const Scenario& f1, const Scenario& f2);

struct SeamViolation {
    std::string what;
};

std::vector<SeamViolation> seam_check(const Scenario& f);

// Deletes rows/columns that only route data through (empty perpendicular
// edges, equal parallel edges, routing-flagged cells) until a fixpoint.
Scenario normalize(const Scenario& f);

// Cell-wise equality of the normalized scenarios (labels ignored).
bool scenario_equal(const Scenario& a, const Scenario& b);

// Equality of flattened border values (nil groups dropped on all four
// sides) — the observable meaning of a scenario.
bool border_equivalent(const Scenario& a, const Scenario& b);

}  // namespace agapia
