#include <optional>

#include "agapia/interp.hpp"

namespace agapia {
namespace {

using Stream = std::deque<SimpleValue>;

bool is_nil_item(const SimpleValue& v) { return v.kind == SimpleValue::Kind::Nil; }

struct NodeResult {
    Scenario sc;
    std::vector<SimpleValue> east;   // temporal stream items (no nils)
    std::vector<SimpleValue> south;  // positional spatial items (nils kept)
};

// Appends one routing row per leftover temporal value at the bottom of a
// scenario: the value shows on the row's west border and is absorbed;
// spatial columns pass through.
Scenario absorb_west(const Scenario& sc, const std::vector<SimpleValue>& leftovers) {
    if (leftovers.empty()) return sc;
    std::vector<std::vector<Cell>> cells = sc.cells;
    std::size_t cols = sc.empty() ? 1 : sc.cols;
    std::vector<InterfaceValue> bottom(cols, iv(World::Spatial));
    if (!sc.empty())
        for (std::size_t j = 0; j < cols; ++j) bottom[j] = sc.cells[sc.rows - 1][j].south;
    for (const SimpleValue& v : leftovers) {
        std::vector<Cell> row;
        for (std::size_t j = 0; j < cols; ++j) {
            Cell c;
            c.label = "sink";
            c.routing = true;
            c.north = bottom[j];
            c.south = bottom[j];
            c.west = j == 0 ? iv(World::Temporal, {v}) : iv(World::Temporal);
            c.east = iv(World::Temporal);
            row.push_back(std::move(c));
        }
        cells.push_back(std::move(row));
    }
    return make_scenario(std::move(cells));
}

// Dual: one routing column per leftover spatial value at the right edge;
// temporal rows pass through.
Scenario absorb_north(const Scenario& sc, const std::vector<SimpleValue>& leftovers) {
    if (leftovers.empty()) return sc;
    std::vector<std::vector<Cell>> cells = sc.cells;
    std::size_t rows = sc.empty() ? 1 : sc.rows;
    if (sc.empty()) cells.resize(1);
    std::vector<InterfaceValue> right(rows, iv(World::Temporal));
    if (!sc.empty())
        for (std::size_t i = 0; i < rows; ++i) right[i] = sc.cells[i][sc.cols - 1].east;
    for (std::size_t k = 0; k < leftovers.size(); ++k) {
        for (std::size_t i = 0; i < rows; ++i) {
            Cell c;
            c.label = "sink";
            c.routing = true;
            c.west = right[i];
            c.east = right[i];
            c.north = i == 0 ? iv(World::Spatial, {leftovers[k]}) : iv(World::Spatial);
            c.south = iv(World::Spatial);
            cells[i].push_back(std::move(c));
        }
    }
    return make_scenario(std::move(cells));
}

struct Interp {
    const TypedProgram& tp;
    ExecLimits limits;
    std::vector<std::string> diags;

    void note_leftover(const char* seam, const std::vector<SimpleValue>& vals) {
        if (vals.empty()) return;
        std::string msg = std::string(seam) + ": " + std::to_string(vals.size()) +
                          " unconsumed value(s):";
        for (const SimpleValue& v : vals) msg += " " + to_string(v);
        diags.push_back(std::move(msg));
    }

    // Binds guard-visible variables from the front of a stream without
    // consuming it. Temporal borders have no entries for nil groups;
    // spatial borders keep one slot per group.
    static void bind_groups(Env& env, const Sig& sig, const Stream& src, bool temporalAxis) {
        std::size_t pos = 0;
        for (const SigSeg& seg : sig.segs) {
            if (seg.star) break;  // unbounded region: nothing nameable beyond
            for (const GroupSig& g : seg.groups) {
                if (g.vars.empty()) {
                    if (!temporalAxis) ++pos;
                    continue;
                }
                if (pos >= src.size()) return;
                const SimpleValue& item = src[pos++];
                if (g.vars.size() == 1) {
                    env.set(g.vars[0].name, item, Binding::Origin::Read);
                } else if (item.kind == SimpleValue::Kind::Tuple &&
                           item.kids.size() == g.vars.size()) {
                    for (std::size_t k = 0; k < g.vars.size(); ++k)
                        env.set(g.vars[k].name, item.kids[k], Binding::Origin::Read);
                }
            }
        }
    }

    bool eval_guard(const ExprPtr& guard, const Sig& ws, const Stream& west, const Sig& ns,
                    const Stream& north) {
        Env env;
        bind_groups(env, ws, west, true);
        bind_groups(env, ns, north, false);
        return eval_bool(guard, env);
    }

    NodeResult exec(const ProgPtr& p, Stream& west, Stream& north) {
        switch (p->kind) {
            case Program::Kind::Nil: {
                // Consumes nothing; a leading nil spatial slot may be taken.
                if (!north.empty() && is_nil_item(north.front())) north.pop_front();
                return {};
            }
            case Program::Kind::Module: {
                const ModuleDef& m = *tp.moduleTable.at(p->module);
                InterfaceValue w = iv(World::Temporal);
                if (!m.listenVars.empty()) {
                    if (west.empty())
                        throw InterfaceError("module " + m.name +
                                             ": west input stream exhausted");
                    w.items.push_back(west.front());
                    west.pop_front();
                }
                InterfaceValue n = iv(World::Spatial);
                if (m.readVars.empty()) {
                    if (!north.empty() && is_nil_item(north.front())) north.pop_front();
                } else {
                    if (north.empty())
                        throw InterfaceError("module " + m.name + ": north input exhausted");
                    n.items.push_back(north.front());
                    north.pop_front();
                }
                ModuleRun r = run_module(m, w, n, limits);
                NodeResult out;
                out.sc = make_scenario({{r.cell}});
                for (const SimpleValue& v : drop_nil_items(r.east.items)) out.east.push_back(v);
                out.south.push_back(r.south.items.empty() ? sv_nil() : r.south.items[0]);
                return out;
            }
            case Program::Kind::HPar: {
                NodeResult a = exec(p->a, west, north);
                Stream q(a.east.begin(), a.east.end());
                NodeResult b = exec(p->b, q, north);
                std::vector<SimpleValue> leftover(q.begin(), q.end());
                note_leftover("horizontal seam", leftover);
                NodeResult out;
                out.sc = hcomp(a.sc, absorb_west(b.sc, leftover));
                out.east = b.east;
                out.south = a.south;
                out.south.insert(out.south.end(), b.south.begin(), b.south.end());
                return out;
            }
            case Program::Kind::VSeq: {
                NodeResult a = exec(p->a, west, north);
                Stream n2(a.south.begin(), a.south.end());
                NodeResult b = exec(p->b, west, n2);
                std::vector<SimpleValue> leftover(n2.begin(), n2.end());
                std::vector<SimpleValue> real;
                for (const SimpleValue& v : leftover)
                    if (!is_nil_item(v)) real.push_back(v);
                note_leftover("vertical seam", real);
                NodeResult out;
                out.sc = vcomp(a.sc, absorb_north(b.sc, real));
                out.east = a.east;
                out.east.insert(out.east.end(), b.east.begin(), b.east.end());
                out.south = b.south;
                return out;
            }
            case Program::Kind::DComp: {
                NodeResult a = exec(p->a, west, north);
                Stream qw(a.east.begin(), a.east.end());
                Stream qn(a.south.begin(), a.south.end());
                NodeResult b = exec(p->b, qw, qn);
                std::vector<SimpleValue> lw(qw.begin(), qw.end());
                std::vector<SimpleValue> ln;
                for (const SimpleValue& v : qn)
                    if (!is_nil_item(v)) ln.push_back(v);
                note_leftover("diagonal temporal seam", lw);
                note_leftover("diagonal spatial seam", ln);
                NodeResult out;
                out.sc = dcomp(a.sc, absorb_north(absorb_west(b.sc, lw), ln));
                out.east = b.east;
                out.south = b.south;
                return out;
            }
            case Program::Kind::If: {
                const TypeInfo& info = tp.of(*p);
                bool cond = eval_guard(p->guard, info.ws, west, info.ns, north);
                return exec(cond ? p->a : p->b, west, north);
            }
            case Program::Kind::WhileT: {
                const TypeInfo& body = tp.of(*p->a);
                // The loop owns one spatial slot per body north group; the
                // state threads through every round and ends as the south.
                std::size_t k = 0;
                for (const SigSeg& seg : body.ns.segs) k += seg.groups.size();
                Stream state;
                for (std::size_t i = 0; i < k && !north.empty(); ++i) {
                    state.push_back(north.front());
                    north.pop_front();
                }
                std::optional<Scenario> acc;
                NodeResult out;
                std::size_t rounds = 0;
                while (eval_guard(p->guard, body.ws, west, body.ns, state)) {
                    if (++rounds > limits.roundCap)
                        throw DivergenceError("while_t exceeded the round cap (" +
                                              std::to_string(limits.roundCap) + ")");
                    NodeResult r = exec(p->a, west, state);
                    std::vector<SimpleValue> leftover;
                    for (const SimpleValue& v : state)
                        if (!is_nil_item(v)) leftover.push_back(v);
                    note_leftover("while_t state seam", leftover);
                    Scenario rsc = absorb_north(r.sc, leftover);
                    acc = acc ? vcomp(*acc, rsc) : rsc;
                    out.east.insert(out.east.end(), r.east.begin(), r.east.end());
                    state.assign(r.south.begin(), r.south.end());
                }
                std::vector<InterfaceValue> cols;
                for (const SimpleValue& v : state) cols.push_back(iv(World::Spatial, {v}));
                out.sc = acc ? *acc : identity_v(cols);
                out.south.assign(state.begin(), state.end());
                return out;
            }
            case Program::Kind::WhileS: {
                const TypeInfo& body = tp.of(*p->a);
                Stream pending;          // east of the last column
                bool first = true;       // round 1 reads the outer west stream
                std::optional<Scenario> acc;
                NodeResult out;
                std::size_t rounds = 0;
                for (;;) {
                    Stream& src = first ? west : pending;
                    if (!eval_guard(p->guard, body.ws, src, body.ns, north)) break;
                    if (++rounds > limits.roundCap)
                        throw DivergenceError("while_s exceeded the round cap (" +
                                              std::to_string(limits.roundCap) + ")");
                    NodeResult r = exec(p->a, src, north);
                    std::vector<SimpleValue> leftover;
                    if (!first) {
                        leftover.assign(pending.begin(), pending.end());
                        note_leftover("while_s state seam", leftover);
                    }
                    Scenario rsc = absorb_west(r.sc, leftover);
                    acc = acc ? hcomp(*acc, rsc) : rsc;
                    out.south.insert(out.south.end(), r.south.begin(), r.south.end());
                    pending.assign(r.east.begin(), r.east.end());
                    first = false;
                }
                out.sc = acc ? *acc : Scenario{};
                if (!first) out.east.assign(pending.begin(), pending.end());
                return out;
            }
            case Program::Kind::WhileST: {
                const TypeInfo& body = tp.of(*p->a);
                std::size_t k = 0;
                for (const SigSeg& seg : body.ns.segs) k += seg.groups.size();
                Stream stateN;
                for (std::size_t i = 0; i < k && !north.empty(); ++i) {
                    stateN.push_back(north.front());
                    north.pop_front();
                }
                Stream stateW;
                bool first = true;
                std::optional<Scenario> acc;
                NodeResult out;
                std::size_t rounds = 0;
                for (;;) {
                    Stream& srcW = first ? west : stateW;
                    if (!eval_guard(p->guard, body.ws, srcW, body.ns, stateN)) break;
                    if (++rounds > limits.roundCap)
                        throw DivergenceError("while_st exceeded the round cap (" +
                                              std::to_string(limits.roundCap) + ")");
                    NodeResult r = exec(p->a, srcW, stateN);
                    std::vector<SimpleValue> lw, ln;
                    if (!first) lw.assign(stateW.begin(), stateW.end());
                    for (const SimpleValue& v : stateN)
                        if (!is_nil_item(v)) ln.push_back(v);
                    note_leftover("while_st temporal seam", lw);
                    note_leftover("while_st spatial seam", ln);
                    Scenario rsc = absorb_north(absorb_west(r.sc, lw), ln);
                    acc = acc ? dcomp(*acc, rsc) : rsc;
                    stateW.assign(r.east.begin(), r.east.end());
                    stateN.assign(r.south.begin(), r.south.end());
                    first = false;
                }
                if (acc) {
                    out.sc = *acc;
                } else {
                    std::vector<InterfaceValue> cols;
                    for (const SimpleValue& v : stateN) cols.push_back(iv(World::Spatial, {v}));
                    out.sc = identity_v(cols);
                }
                if (!first) out.east.assign(stateW.begin(), stateW.end());
                out.south.assign(stateN.begin(), stateN.end());
                return out;
            }
        }
        return {};
    }
};

}  // namespace

RunResult run(const TypedProgram& tp, const RunInput& in, const ExecLimits& limits) {
    // Input conformance: the value types must overlap the program borders.
    InterfaceValue flatW = iv(World::Temporal);
    Stream west;
    for (const InterfaceValue& v : in.west)
        for (const SimpleValue& item : drop_nil_items(v.items)) {
            west.push_back(item);
            flatW.items.push_back(item);
        }
    if (!match(type_of_value(flatW), tp.root.type.w))
        throw InterfaceError("west input " + to_string(flatW) +
                             " does not fit the program type " + to_string(tp.root.type.w));
    if (!match(type_of_value(in.north), tp.root.type.n))
        throw InterfaceError("north input " + to_string(in.north) +
                             " does not fit the program type " + to_string(tp.root.type.n));

    Stream north(in.north.items.begin(), in.north.items.end());

    Interp engine{tp, limits, {}};
    NodeResult r = engine.exec(tp.unit.main, west, north);

    std::vector<SimpleValue> lw(west.begin(), west.end());
    engine.note_leftover("west input", lw);
    std::vector<SimpleValue> ln;
    for (const SimpleValue& v : north)
        if (!is_nil_item(v)) ln.push_back(v);
    engine.note_leftover("north input", ln);

    RunResult out;
    out.scenario = std::move(r.sc);
    for (const SimpleValue& v : r.east) out.east.push_back(iv(World::Temporal, {v}));
    out.south = iv(World::Spatial, std::move(r.south));
    out.diagnostics = std::move(engine.diags);
    return out;
}

}  // namespace agapia
