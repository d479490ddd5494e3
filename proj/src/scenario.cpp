#include "agapia/scenario.hpp"

#include <algorithm>
#include <sstream>

namespace agapia {

// ---------------------------------------------------------------------------
// borders

std::vector<InterfaceValue> Scenario::west_rows() const {
    std::vector<InterfaceValue> out;
    for (std::size_t i = 0; i < rows; ++i) out.push_back(cells[i][0].west);
    return out;
}

std::vector<InterfaceValue> Scenario::east_rows() const {
    std::vector<InterfaceValue> out;
    for (std::size_t i = 0; i < rows; ++i) out.push_back(cells[i][cols - 1].east);
    return out;
}

std::vector<InterfaceValue> Scenario::north_cols() const {
    std::vector<InterfaceValue> out;
    for (std::size_t j = 0; j < cols; ++j) out.push_back(cells[0][j].north);
    return out;
}

std::vector<InterfaceValue> Scenario::south_cols() const {
    std::vector<InterfaceValue> out;
    for (std::size_t j = 0; j < cols; ++j) out.push_back(cells[rows - 1][j].south);
    return out;
}

static InterfaceValue concat_all(const std::vector<InterfaceValue>& vs, World w) {
    InterfaceValue out;
    out.world = w;
    for (const auto& v : vs)
        out.items.insert(out.items.end(), v.items.begin(), v.items.end());
    return out;
}

InterfaceValue Scenario::west_all() const { return concat_all(west_rows(), World::Temporal); }
InterfaceValue Scenario::east_all() const { return concat_all(east_rows(), World::Temporal); }
InterfaceValue Scenario::north_all() const { return concat_all(north_cols(), World::Spatial); }
InterfaceValue Scenario::south_all() const { return concat_all(south_cols(), World::Spatial); }

// ---------------------------------------------------------------------------
// construction

static InterfaceType border_type(const std::vector<InterfaceValue>& vs, bool temporal) {
    InterfaceType t;
    for (const auto& v : vs) {
        InterfaceValue tagged = v;
        tagged.world = temporal ? World::Temporal : World::Spatial;
        InterfaceType vt = type_of_value(tagged);
        if (vt.groups.empty()) vt.groups.push_back(group_simple(st_nil()));
        t = concat(t, vt, temporal);  // temporal axis drops nil groups
    }
    return t;
}

static void refresh_types(Scenario& s) {
    if (s.empty()) {
        s.type4 = {};
        return;
    }
    s.type4.w = border_type(s.west_rows(), true);
    s.type4.e = border_type(s.east_rows(), true);
    s.type4.n = border_type(s.north_cols(), false);
    s.type4.s = border_type(s.south_cols(), false);
}

Scenario make_scenario(std::vector<std::vector<Cell>> cells) {
    Scenario s;
    s.rows = cells.size();
    s.cols = s.rows ? cells[0].size() : 0;
    for (const auto& row : cells)
        if (row.size() != s.cols)
            throw StructureError("scenario grid is not rectangular");
    if (s.cols == 0) {
        s.rows = 0;
        return s;
    }
    s.cells = std::move(cells);
    refresh_types(s);
    return s;
}

// ---------------------------------------------------------------------------
// constants

static InterfaceValue as_world(InterfaceValue v, World w) {
    v.world = w;
    return v;
}

static InterfaceValue take_front(const InterfaceValue& v, std::size_t k, World w) {
    InterfaceValue out;
    out.world = w;
    out.items.assign(v.items.begin(), v.items.begin() + std::min(k, v.items.size()));
    return out;
}

static InterfaceValue drop_front(const InterfaceValue& v, std::size_t k, World w) {
    InterfaceValue out;
    out.world = w;
    if (k < v.items.size()) out.items.assign(v.items.begin() + k, v.items.end());
    return out;
}

Scenario make_constant(ConstCellKind kind, const InterfaceValue& west,
                       const InterfaceValue& north) {
    Cell c;
    c.west = as_world(west, World::Temporal);
    c.north = as_world(north, World::Spatial);
    c.east.world = World::Temporal;
    c.south.world = World::Spatial;
    c.routing = true;
    using K = ConstCellKind::K;
    switch (kind.kind) {
        case K::Identity:
            c.label = "Id";
            c.east = as_world(west, World::Temporal);
            c.south = as_world(north, World::Spatial);
            break;
        case K::Recorder:
            c.label = "R";
            c.south = as_world(value_concat(north, west), World::Spatial);
            break;
        case K::Speaker:
            c.label = "S";
            c.east = take_front(north, kind.take, World::Temporal);
            c.south = drop_front(north, kind.take, World::Spatial);
            break;
        case K::Empty:
            c.label = "^";
            if (!west.items.empty() || !north.items.empty())
                throw WorldError("empty cell fed non-nil input");
            break;
        case K::TransposedRecorder:
            c.label = "R'";
            c.east = as_world(value_concat(west, north), World::Temporal);
            break;
        case K::TransposedSpeaker:
            c.label = "S'";
            c.south = take_front(west, kind.take, World::Spatial);
            c.east = drop_front(west, kind.take, World::Temporal);
            break;
    }
    return make_scenario({{c}});
}

Scenario identity_h(const std::vector<InterfaceValue>& rowValues) {
    std::vector<std::vector<Cell>> cells;
    for (const auto& v : rowValues) {
        Cell c;
        c.label = "Id";
        c.west = as_world(v, World::Temporal);
        c.east = c.west;
        c.north.world = World::Spatial;
        c.south.world = World::Spatial;
        c.routing = true;
        cells.push_back({c});
    }
    return make_scenario(std::move(cells));
}

Scenario identity_v(const std::vector<InterfaceValue>& colValues) {
    std::vector<Cell> row;
    for (const auto& v : colValues) {
        Cell c;
        c.label = "Id";
        c.north = as_world(v, World::Spatial);
        c.south = c.north;
        c.west.world = World::Temporal;
        c.east.world = World::Temporal;
        c.routing = true;
        row.push_back(c);
    }
    if (row.empty()) return {};
    return make_scenario({row});
}

Scenario identity_d(const Scenario& f) {
    if (f.empty()) return {};
    return make_constant({ConstCellKind::K::Identity}, f.east_all(), f.south_all());
}

// ---------------------------------------------------------------------------
// nil alignment

namespace {

struct Pairing {
    // each entry: (left original index or none, right original index or none)
    std::vector<std::pair<std::optional<std::size_t>, std::optional<std::size_t>>> entries;
};

bool is_nil_value(const InterfaceValue& v) { return drop_nil_items(v.items).empty(); }

// seam equality is "up to nil": explicit nil items carry no information
bool value_equiv(const InterfaceValue& a, const InterfaceValue& b) {
    return drop_nil_items(a.items) == drop_nil_items(b.items);
}

// Deterministic, associativity-friendly merge: rows carrying data must pair
// in order; nil rows never pair with each other (each gets a dummy on the
// other side) and, inside a gap between forced pairs, left-side nil rows are
// emitted before right-side ones. This makes the merge of several operands
// independent of how the compositions are bracketed.
std::optional<Pairing> align_values(const std::vector<InterfaceValue>& A,
                                    const std::vector<InterfaceValue>& B) {
    const std::size_t n = A.size(), m = B.size();
    Pairing p;
    std::size_t i = 0, j = 0;
    while (i < n || j < m) {
        if (i < n && is_nil_value(A[i])) {
            p.entries.push_back({i, std::nullopt});
            ++i;
        } else if (j < m && is_nil_value(B[j])) {
            p.entries.push_back({std::nullopt, j});
            ++j;
        } else if (i < n && j < m && value_equiv(A[i], B[j])) {
            p.entries.push_back({i, j});
            ++i, ++j;
        } else {
            return std::nullopt;
        }
    }
    return p;
}

// a dummy row for scenario `sc` to be inserted where row `next` will follow
// (next == sc.rows means below the last row): passes the spatial data through
std::vector<Cell> dummy_row(const Scenario& sc, std::size_t next) {
    std::vector<Cell> row;
    for (std::size_t j = 0; j < sc.cols; ++j) {
        Cell c;
        c.label = ".";
        c.routing = true;
        c.west.world = World::Temporal;
        c.east.world = World::Temporal;
        c.north = next < sc.rows ? sc.cells[next][j].north
                                 : sc.cells[sc.rows - 1][j].south;
        c.south = c.north;
        row.push_back(c);
    }
    return row;
}

Cell dummy_col_cell(const Scenario& sc, std::size_t row, std::size_t next) {
    Cell c;
    c.label = ".";
    c.routing = true;
    c.north.world = World::Spatial;
    c.south.world = World::Spatial;
    c.west = next < sc.cols ? sc.cells[row][next].west : sc.cells[row][sc.cols - 1].east;
    c.east = c.west;
    return c;
}

// padded copies of the row lists according to the alignment
std::vector<std::vector<Cell>> pad_rows(const Scenario& sc, const Pairing& p, bool left) {
    std::vector<std::vector<Cell>> out;
    for (std::size_t k = 0; k < p.entries.size(); ++k) {
        auto idx = left ? p.entries[k].first : p.entries[k].second;
        if (idx) {
            out.push_back(sc.cells[*idx]);
        } else {
            std::size_t next = sc.rows;
            for (std::size_t k2 = k + 1; k2 < p.entries.size(); ++k2) {
                auto i2 = left ? p.entries[k2].first : p.entries[k2].second;
                if (i2) {
                    next = *i2;
                    break;
                }
            }
            out.push_back(dummy_row(sc, next));
        }
    }
    return out;
}

std::vector<std::vector<Cell>> pad_cols(const Scenario& sc, const Pairing& p, bool left) {
    std::vector<std::vector<Cell>> out(sc.rows);
    for (std::size_t k = 0; k < p.entries.size(); ++k) {
        auto idx = left ? p.entries[k].first : p.entries[k].second;
        std::size_t next = sc.cols;
        if (!idx)
            for (std::size_t k2 = k + 1; k2 < p.entries.size(); ++k2) {
                auto i2 = left ? p.entries[k2].first : p.entries[k2].second;
                if (i2) {
                    next = *i2;
                    break;
                }
            }
        for (std::size_t i = 0; i < sc.rows; ++i)
            out[i].push_back(idx ? sc.cells[i][*idx] : dummy_col_cell(sc, i, next));
    }
    return out;
}

std::string seam_text(const std::vector<InterfaceValue>& vs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) os << " / ";
        os << to_string(vs[i]);
    }
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// compositions

Scenario hcomp(const Scenario& f1, const Scenario& f2) {
    if (f1.empty()) return f2;
    if (f2.empty()) return f1;
    auto al = align_values(f1.east_rows(), f2.west_rows());
    if (!al)
        throw SeamError("horizontal composition: temporal seam mismatch (east [" +
                        seam_text(f1.east_rows()) + "] vs west [" +
                        seam_text(f2.west_rows()) + "])");
    auto left = pad_rows(f1, *al, true);
    auto right = pad_rows(f2, *al, false);
    std::vector<std::vector<Cell>> cells;
    for (std::size_t i = 0; i < left.size(); ++i) {
        std::vector<Cell> row = left[i];
        row.insert(row.end(), right[i].begin(), right[i].end());
        cells.push_back(std::move(row));
    }
    Scenario out = make_scenario(std::move(cells));
    out.type4.w = f1.type4.w;
    out.type4.e = f2.type4.e;
    out.type4.n = concat(f1.type4.n, f2.type4.n, false);
    out.type4.s = concat(f1.type4.s, f2.type4.s, false);
    return out;
}

Scenario vcomp(const Scenario& f1, const Scenario& f2) {
    if (f1.empty()) return f2;
    if (f2.empty()) return f1;
    auto al = align_values(f1.south_cols(), f2.north_cols());
    if (!al)
        throw SeamError("vertical composition: spatial seam mismatch (south [" +
                        seam_text(f1.south_cols()) + "] vs north [" +
                        seam_text(f2.north_cols()) + "])");
    auto top = pad_cols(f1, *al, true);
    auto bottom = pad_cols(f2, *al, false);
    std::vector<std::vector<Cell>> cells = top;
    cells.insert(cells.end(), bottom.begin(), bottom.end());
    Scenario out = make_scenario(std::move(cells));
    out.type4.n = f1.type4.n;
    out.type4.s = f2.type4.s;
    out.type4.w = concat(f1.type4.w, f2.type4.w, true);
    out.type4.e = concat(f1.type4.e, f2.type4.e, true);
    return out;
}

namespace {

// the crossing machinery shared by dcomp and its expansion oracle
struct CrossPlan {
    InterfaceValue eFlat;  // f1's east, flattened (== f2's west, flattened)
    InterfaceValue sFlat;  // f1's south, flattened (== f2's north, flattened)
    std::vector<std::size_t> eBefore;  // flattened item count before f1 row i
    std::vector<std::size_t> sBefore;  // flattened item count before f1 col j
    std::vector<std::size_t> wTake;    // f2 row i west item count (flattened)
    std::vector<std::size_t> nTake;    // f2 col j north item count (flattened)
};

CrossPlan cross_plan(const Scenario& f1, const Scenario& f2) {
    CrossPlan p;
    p.eFlat.world = World::Spatial;
    p.sFlat.world = World::Temporal;
    for (const auto& v : f1.east_rows()) {
        p.eBefore.push_back(p.eFlat.items.size());
        for (const auto& it : drop_nil_items(v.items)) p.eFlat.items.push_back(it);
    }
    for (const auto& v : f1.south_cols()) {
        p.sBefore.push_back(p.sFlat.items.size());
        for (const auto& it : drop_nil_items(v.items)) p.sFlat.items.push_back(it);
    }
    std::vector<SimpleValue> wFlat, nFlat;
    for (const auto& v : f2.west_rows()) {
        auto d = drop_nil_items(v.items);
        p.wTake.push_back(d.size());
        wFlat.insert(wFlat.end(), d.begin(), d.end());
    }
    for (const auto& v : f2.north_cols()) {
        auto d = drop_nil_items(v.items);
        p.nTake.push_back(d.size());
        nFlat.insert(nFlat.end(), d.begin(), d.end());
    }
    if (wFlat != p.eFlat.items)
        throw SeamError("diagonal composition: temporal seam mismatch (east [" +
                        seam_text(f1.east_rows()) + "] vs west [" +
                        seam_text(f2.west_rows()) + "])");
    if (nFlat != p.sFlat.items)
        throw SeamError("diagonal composition: spatial seam mismatch (south [" +
                        seam_text(f1.south_cols()) + "] vs north [" +
                        seam_text(f2.north_cols()) + "])");
    return p;
}

InterfaceValue slice(const InterfaceValue& v, std::size_t from, std::size_t to, World w) {
    InterfaceValue out;
    out.world = w;
    out.items.assign(v.items.begin() + from, v.items.begin() + to);
    return out;
}

Cell lambda_cell() {
    Cell c;
    c.label = "^";
    c.routing = true;
    c.west.world = World::Temporal;
    c.east.world = World::Temporal;
    c.north.world = World::Spatial;
    c.south.world = World::Spatial;
    return c;
}

}  // namespace

Scenario dcomp(const Scenario& f1, const Scenario& f2) {
    if (f1.empty()) return f2;
    if (f2.empty()) return f1;
    CrossPlan p = cross_plan(f1, f2);
    const std::size_t r1 = f1.rows, c1 = f1.cols, r2 = f2.rows, c2 = f2.cols;
    std::vector<std::vector<Cell>> cells;

    // band 1: f1 | recorder column accumulating f1's east | empty corner
    for (std::size_t i = 0; i < r1; ++i) {
        std::vector<Cell> row = f1.cells[i];
        Cell r;
        r.label = "R";
        r.routing = true;
        r.west = f1.cells[i][c1 - 1].east;
        r.north = slice(p.eFlat, 0, p.eBefore[i], World::Spatial);
        std::size_t upto = i + 1 < r1 ? p.eBefore[i + 1] : p.eFlat.items.size();
        r.south = slice(p.eFlat, 0, upto, World::Spatial);
        r.east.world = World::Temporal;
        row.push_back(r);
        for (std::size_t j = 0; j < c2; ++j) row.push_back(lambda_cell());
        cells.push_back(std::move(row));
    }

    // band 2: transposed recorders | crossing identity | transposed speakers
    {
        std::vector<Cell> row;
        for (std::size_t j = 0; j < c1; ++j) {
            Cell r;
            r.label = "R'";
            r.routing = true;
            r.north = f1.cells[r1 - 1][j].south;
            r.west = slice(p.sFlat, 0, p.sBefore[j], World::Temporal);
            std::size_t upto = j + 1 < c1 ? p.sBefore[j + 1] : p.sFlat.items.size();
            r.east = slice(p.sFlat, 0, upto, World::Temporal);
            r.south.world = World::Spatial;
            row.push_back(r);
        }
        Cell id;
        id.label = "Id";
        id.routing = true;
        id.west = p.sFlat;
        id.east = p.sFlat;
        id.north = p.eFlat;
        id.south = p.eFlat;
        row.push_back(id);
        std::size_t taken = 0;
        for (std::size_t j = 0; j < c2; ++j) {
            Cell s;
            s.label = "S'";
            s.routing = true;
            s.west = slice(p.sFlat, taken, p.sFlat.items.size(), World::Temporal);
            s.south = f2.cells[0][j].north;
            taken += p.nTake[j];
            s.east = slice(p.sFlat, taken, p.sFlat.items.size(), World::Temporal);
            s.north.world = World::Spatial;
            row.push_back(s);
        }
        cells.push_back(std::move(row));
    }

    // band 3: empty corner | speaker column dispensing f2's west | f2
    std::size_t taken = 0;
    for (std::size_t i = 0; i < r2; ++i) {
        std::vector<Cell> row;
        for (std::size_t j = 0; j < c1; ++j) row.push_back(lambda_cell());
        Cell s;
        s.label = "S";
        s.routing = true;
        s.north = slice(p.eFlat, taken, p.eFlat.items.size(), World::Spatial);
        s.east = f2.cells[i][0].west;
        taken += p.wTake[i];
        s.south = slice(p.eFlat, taken, p.eFlat.items.size(), World::Spatial);
        s.west.world = World::Temporal;
        row.push_back(s);
        row.insert(row.end(), f2.cells[i].begin(), f2.cells[i].end());
        cells.push_back(std::move(row));
    }

    Scenario out = make_scenario(std::move(cells));
    out.type4.w = f1.type4.w;
    out.type4.n = f1.type4.n;
    out.type4.e = f2.type4.e;
    out.type4.s = f2.type4.s;
    return out;
}

Scenario dcomp_expansion(const Scenario& f1, const Scenario& f2) {
    if (f1.empty()) return f2;
    if (f2.empty()) return f1;
    CrossPlan p = cross_plan(f1, f2);
    const std::size_t r1 = f1.rows, c1 = f1.cols, r2 = f2.rows, c2 = f2.cols;

    auto lambda_block = [](std::size_t rows, std::size_t cols) {
        std::vector<std::vector<Cell>> cells(rows, std::vector<Cell>(cols, lambda_cell()));
        return make_scenario(std::move(cells));
    };

    // recorder column: stacks f1's east values downward
    Scenario rcol;
    for (std::size_t i = 0; i < r1; ++i) {
        InterfaceValue north = slice(p.eFlat, 0, p.eBefore[i], World::Spatial);
        InterfaceValue west = f1.cells[i][c1 - 1].east;
        Scenario cell = make_constant({ConstCellKind::K::Recorder}, west, north);
        rcol = vcomp(rcol, cell);
    }
    Scenario band1 = hcomp(hcomp(f1, rcol), lambda_block(r1, c2));

    // crossing row: transposed recorders, identity, transposed speakers
    Scenario trow;
    for (std::size_t j = 0; j < c1; ++j) {
        InterfaceValue west = slice(p.sFlat, 0, p.sBefore[j], World::Temporal);
        InterfaceValue north = f1.cells[r1 - 1][j].south;
        trow = hcomp(trow, make_constant({ConstCellKind::K::TransposedRecorder}, west, north));
    }
    trow = hcomp(trow, make_constant({ConstCellKind::K::Identity}, p.sFlat, p.eFlat));
    std::size_t taken = 0;
    for (std::size_t j = 0; j < c2; ++j) {
        InterfaceValue west = slice(p.sFlat, taken, p.sFlat.items.size(), World::Temporal);
        taken += p.nTake[j];
        trow = hcomp(trow, make_constant({ConstCellKind::K::TransposedSpeaker, p.nTake[j]},
                                         west, iv(World::Spatial)));
    }

    // speaker column: dispenses f2's west values row by row
    Scenario scol;
    taken = 0;
    for (std::size_t i = 0; i < r2; ++i) {
        InterfaceValue north = slice(p.eFlat, taken, p.eFlat.items.size(), World::Spatial);
        taken += p.wTake[i];
        scol = vcomp(scol, make_constant({ConstCellKind::K::Speaker, p.wTake[i]},
                                         iv(World::Temporal), north));
    }
    Scenario band3 = hcomp(hcomp(lambda_block(r2, c1), scol), f2);

    Scenario out = vcomp(vcomp(band1, trow), band3);
    out.type4.w = f1.type4.w;
    out.type4.n = f1.type4.n;
    out.type4.e = f2.type4.e;
    out.type4.s = f2.type4.s;
    return out;
}

// ---------------------------------------------------------------------------
// validation and normalization

std::vector<SeamViolation> seam_check(const Scenario& f) {
    std::vector<SeamViolation> out;
    if (f.empty()) return out;
    auto coord = [](std::size_t i, std::size_t j) {
        return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    };
    for (std::size_t i = 0; i < f.rows; ++i)
        for (std::size_t j = 0; j + 1 < f.cols; ++j)
            if (!value_equiv(f.cells[i][j].east, f.cells[i][j + 1].west))
                out.push_back({"temporal seam between " + coord(i, j) + " and " +
                               coord(i, j + 1) + ": " + to_string(f.cells[i][j].east) +
                               " vs " + to_string(f.cells[i][j + 1].west)});
    for (std::size_t i = 0; i + 1 < f.rows; ++i)
        for (std::size_t j = 0; j < f.cols; ++j)
            if (!value_equiv(f.cells[i][j].south, f.cells[i + 1][j].north))
                out.push_back({"spatial seam between " + coord(i, j) + " and " +
                               coord(i + 1, j) + ": " + to_string(f.cells[i][j].south) +
                               " vs " + to_string(f.cells[i + 1][j].north)});
    auto conf = [&](const InterfaceValue& v, const InterfaceType& t, const char* side) {
        try {
            if (!value_conforms(v, t))
                out.push_back({std::string(side) + " border value " + to_string(v) +
                               " does not conform to " + to_string(t)});
        } catch (const WorldError& e) {
            out.push_back({std::string(side) + " border: " + e.what()});
        }
    };
    conf(f.west_all(), f.type4.w, "west");
    conf(f.north_all(), f.type4.n, "north");
    conf(f.east_all(), f.type4.e, "east");
    conf(f.south_all(), f.type4.s, "south");
    return out;
}

Scenario normalize(const Scenario& f) {
    Scenario s = f;
    bool changed = true;
    while (changed && !s.empty()) {
        changed = false;
        for (std::size_t i = 0; i < s.rows; ++i) {
            bool dummy = true;
            for (const auto& c : s.cells[i])
                if (!c.routing || !c.west.items.empty() || !c.east.items.empty() ||
                    !value_equiv(c.north, c.south)) {
                    dummy = false;
                    break;
                }
            if (dummy) {
                s.cells.erase(s.cells.begin() + i);
                --s.rows;
                changed = true;
                break;
            }
        }
        if (changed) continue;
        for (std::size_t j = 0; j < s.cols; ++j) {
            bool dummy = true;
            for (std::size_t i = 0; i < s.rows; ++i) {
                const Cell& c = s.cells[i][j];
                if (!c.routing || !c.north.items.empty() || !c.south.items.empty() ||
                    !value_equiv(c.west, c.east)) {
                    dummy = false;
                    break;
                }
            }
            if (dummy) {
                for (auto& row : s.cells) row.erase(row.begin() + j);
                --s.cols;
                changed = true;
                break;
            }
        }
        if (s.rows == 0 || s.cols == 0) {
            s = {};
            break;
        }
    }
    if (!s.empty()) refresh_types(s);
    return s;
}

bool scenario_equal(const Scenario& a, const Scenario& b) {
    Scenario na = normalize(a), nb = normalize(b);
    if (na.rows != nb.rows || na.cols != nb.cols) return false;
    for (std::size_t i = 0; i < na.rows; ++i)
        for (std::size_t j = 0; j < na.cols; ++j) {
            const Cell& x = na.cells[i][j];
            const Cell& y = nb.cells[i][j];
            if (!value_equiv(x.west, y.west) || !value_equiv(x.north, y.north) ||
                !value_equiv(x.east, y.east) || !value_equiv(x.south, y.south))
                return false;
        }
    return true;
}

bool border_equivalent(const Scenario& a, const Scenario& b) {
    auto flat = [](const InterfaceValue& v) { return drop_nil_items(v.items); };
    if (a.empty() != b.empty()) {
        const Scenario& full = a.empty() ? b : a;
        // the empty scenario's borders are all nil
        return flat(full.west_all()).empty() && flat(full.east_all()).empty() &&
               flat(full.north_all()).empty() && flat(full.south_all()).empty();
    }
    if (a.empty()) return true;
    return flat(a.west_all()) == flat(b.west_all()) &&
           flat(a.north_all()) == flat(b.north_all()) &&
           flat(a.east_all()) == flat(b.east_all()) &&
           flat(a.south_all()) == flat(b.south_all());
}

}  // namespace agapia
