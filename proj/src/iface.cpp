#include "agapia/iface.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <map>
#include <sstream>

namespace agapia {

const char* world_name(World w) {
    return w == World::Spatial ? "spatial" : "temporal";
}

// ---------------------------------------------------------------------------
// SimpleType

bool SimpleType::operator==(const SimpleType& o) const {
    if (kind != o.kind) return false;
    if ((kind == Kind::Int || kind == Kind::Bool) && world != o.world) return false;
    return kids == o.kids;
}

SimpleType st_nil() { return {}; }

SimpleType st_int(World w) {
    SimpleType t;
    t.kind = SimpleType::Kind::Int;
    t.world = w;
    return t;
}

SimpleType st_bool(World w) {
    SimpleType t;
    t.kind = SimpleType::Kind::Bool;
    t.world = w;
    return t;
}

static void check_one_world(const SimpleType& t) {
    if (!world_of(t)) return;
}

SimpleType st_union(SimpleType a, SimpleType b) {
    auto wa = world_of(a), wb = world_of(b);
    if (wa && wb && *wa != *wb)
        throw WorldError("union mixes spatial and temporal simple types");
    SimpleType t;
    t.kind = SimpleType::Kind::Union;
    t.kids = {std::move(a), std::move(b)};
    check_one_world(t);
    return t;
}

SimpleType st_tuple(std::vector<SimpleType> kids) {
    std::optional<World> w;
    for (const auto& k : kids) {
        auto kw = world_of(k);
        if (kw && w && *kw != *w)
            throw WorldError("tuple mixes spatial and temporal simple types");
        if (kw) w = kw;
    }
    SimpleType t;
    t.kind = SimpleType::Kind::Tuple;
    t.kids = std::move(kids);
    return t;
}

SimpleType st_star(SimpleType body) {
    SimpleType t;
    t.kind = SimpleType::Kind::Star;
    t.kids = {std::move(body)};
    return t;
}

std::optional<World> world_of(const SimpleType& t) {
    switch (t.kind) {
        case SimpleType::Kind::Nil: return std::nullopt;
        case SimpleType::Kind::Int:
        case SimpleType::Kind::Bool: return t.world;
        default:
            for (const auto& k : t.kids)
                if (auto w = world_of(k)) return w;
            return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// InterfaceType

bool Group::operator==(const Group& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::Simple) return simple == o.simple;
    return alts == o.alts;
}

bool InterfaceType::operator==(const InterfaceType& o) const { return groups == o.groups; }

bool InterfaceType::is_nil() const {
    for (const auto& g : groups)
        if (!(g.kind == Group::Kind::Simple && g.simple.kind == SimpleType::Kind::Nil))
            return false;
    return true;
}

InterfaceType it_nil() { return {}; }

InterfaceType it_simple(SimpleType t) {
    InterfaceType r;
    r.groups.push_back(group_simple(std::move(t)));
    return r;
}

InterfaceType it_groups(std::vector<Group> gs) {
    InterfaceType r;
    r.groups = std::move(gs);
    return r;
}

Group group_simple(SimpleType t) {
    Group g;
    g.kind = Group::Kind::Simple;
    g.simple = std::move(t);
    return g;
}

static bool single_simple(const InterfaceType& t) {
    return t.groups.size() == 1 && t.groups[0].kind == Group::Kind::Simple;
}

Group group_union(InterfaceType a, InterfaceType b) {
    // canonical forms: a nil alternative is a single nil group; a union of
    // two single simple groups is a simple union
    if (a.groups.empty()) a.groups.push_back(group_simple(st_nil()));
    if (b.groups.empty()) b.groups.push_back(group_simple(st_nil()));
    if (single_simple(a) && single_simple(b))
        return group_simple(st_union(a.groups[0].simple, b.groups[0].simple));
    Group g;
    g.kind = Group::Kind::Union;
    g.alts = {std::move(a), std::move(b)};
    return g;
}

Group group_star(InterfaceType body) {
    Group g;
    g.kind = Group::Kind::Star;
    g.alts = {std::move(body)};
    return g;
}

std::optional<World> world_of(const Group& g) {
    if (g.kind == Group::Kind::Simple) return world_of(g.simple);
    for (const auto& a : g.alts)
        if (auto w = world_of(a)) return w;
    return std::nullopt;
}

std::optional<World> world_of(const InterfaceType& t) {
    for (const auto& g : t.groups)
        if (auto w = world_of(g)) return w;
    return std::nullopt;
}

bool worlds_compatible(const InterfaceType& a, const InterfaceType& b) {
    auto wa = world_of(a), wb = world_of(b);
    return !wa || !wb || *wa == *wb;
}

InterfaceType concat(const InterfaceType& a, const InterfaceType& b, bool drop_nil) {
    InterfaceType r;
    auto push = [&](const Group& g) {
        if (drop_nil && g.kind == Group::Kind::Simple &&
            g.simple.kind == SimpleType::Kind::Nil)
            return;
        r.groups.push_back(g);
    };
    for (const auto& g : a.groups) push(g);
    for (const auto& g : b.groups) push(g);
    return r;
}

InterfaceType type_union(const InterfaceType& a, const InterfaceType& b) {
    if (a == b) return a;
    if (a.is_nil() && b.is_nil()) return it_nil();
    InterfaceType r;
    r.groups.push_back(group_union(a, b));
    return r;
}

InterfaceType type_star(const InterfaceType& t) {
    if (t.is_nil()) return it_nil();
    InterfaceType r;
    r.groups.push_back(group_star(t));
    return r;
}

static bool simple_admits_nil(const SimpleType& t) {
    switch (t.kind) {
        case SimpleType::Kind::Nil: return true;
        case SimpleType::Kind::Union:
            return simple_admits_nil(t.kids[0]) || simple_admits_nil(t.kids[1]);
        default: return false;
    }
}

bool group_admits_nil(const Group& g) {
    switch (g.kind) {
        case Group::Kind::Simple: return simple_admits_nil(g.simple);
        case Group::Kind::Star: return true;
        case Group::Kind::Union:
            return std::any_of(g.alts.begin(), g.alts.end(),
                               [](const InterfaceType& t) { return type_admits_nil(t); });
    }
    return false;
}

bool type_admits_nil(const InterfaceType& t) {
    return std::all_of(t.groups.begin(), t.groups.end(), group_admits_nil);
}

// ---------------------------------------------------------------------------
// Values

bool SimpleValue::operator==(const SimpleValue& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Nil: return true;
        case Kind::Int: return i == o.i;
        case Kind::Bool: return b == o.b;
        default: return kids == o.kids;
    }
}

SimpleValue sv_nil() { return {}; }

SimpleValue sv_int(std::int64_t v) {
    SimpleValue s;
    s.kind = SimpleValue::Kind::Int;
    s.i = v;
    return s;
}

SimpleValue sv_bool(bool v) {
    SimpleValue s;
    s.kind = SimpleValue::Kind::Bool;
    s.b = v;
    return s;
}

SimpleValue sv_tuple(std::vector<SimpleValue> kids) {
    SimpleValue s;
    s.kind = SimpleValue::Kind::Tuple;
    s.kids = std::move(kids);
    return s;
}

SimpleValue sv_star(std::vector<SimpleValue> kids) {
    SimpleValue s;
    s.kind = SimpleValue::Kind::Star;
    s.kids = std::move(kids);
    return s;
}

bool InterfaceValue::operator==(const InterfaceValue& o) const {
    if (items != o.items) return false;
    if (items.empty()) return true;
    return world == o.world;
}

InterfaceValue iv(World w, std::vector<SimpleValue> items) {
    InterfaceValue v;
    v.world = w;
    v.items = std::move(items);
    return v;
}

bool value_equal(const InterfaceValue& a, const InterfaceValue& b) {
    return a.items == b.items;
}

InterfaceValue value_concat(const InterfaceValue& a, const InterfaceValue& b) {
    InterfaceValue r;
    r.world = a.items.empty() ? b.world : a.world;
    r.items = a.items;
    r.items.insert(r.items.end(), b.items.begin(), b.items.end());
    return r;
}

std::vector<SimpleValue> drop_nil_items(const std::vector<SimpleValue>& items) {
    std::vector<SimpleValue> r;
    for (const auto& it : items)
        if (it.kind != SimpleValue::Kind::Nil) r.push_back(it);
    return r;
}

// ---------------------------------------------------------------------------
// type_of_value

SimpleType type_of_value(const SimpleValue& v, World w) {
    switch (v.kind) {
        case SimpleValue::Kind::Nil: return st_nil();
        case SimpleValue::Kind::Int: return st_int(w);
        case SimpleValue::Kind::Bool: return st_bool(w);
        case SimpleValue::Kind::Tuple: {
            std::vector<SimpleType> kids;
            kids.reserve(v.kids.size());
            for (const auto& k : v.kids) kids.push_back(type_of_value(k, w));
            return st_tuple(std::move(kids));
        }
        case SimpleValue::Kind::Star: {
            SimpleType body = v.kids.empty() ? st_nil() : type_of_value(v.kids[0], w);
            return st_star(std::move(body));
        }
    }
    return st_nil();
}

InterfaceType type_of_value(const InterfaceValue& v) {
    InterfaceType t;
    for (const auto& it : v.items) t.groups.push_back(group_simple(type_of_value(it, v.world)));
    return t;
}

// ---------------------------------------------------------------------------
// conformance

bool simple_conforms(const SimpleValue& v, const SimpleType& t, World vw) {
    switch (t.kind) {
        case SimpleType::Kind::Nil: return v.kind == SimpleValue::Kind::Nil;
        case SimpleType::Kind::Int:
            return v.kind == SimpleValue::Kind::Int && t.world == vw;
        case SimpleType::Kind::Bool:
            return v.kind == SimpleValue::Kind::Bool && t.world == vw;
        case SimpleType::Kind::Union:
            return simple_conforms(v, t.kids[0], vw) || simple_conforms(v, t.kids[1], vw);
        case SimpleType::Kind::Tuple: {
            if (v.kind != SimpleValue::Kind::Tuple || v.kids.size() != t.kids.size())
                return false;
            for (std::size_t i = 0; i < t.kids.size(); ++i)
                if (!simple_conforms(v.kids[i], t.kids[i], vw)) return false;
            return true;
        }
        case SimpleType::Kind::Star:
            if (v.kind != SimpleValue::Kind::Star) return false;
            for (const auto& k : v.kids)
                if (!simple_conforms(k, t.kids[0], vw)) return false;
            return true;
    }
    return false;
}

// Conformance over group lists, with star groups consuming any number of
// whole-body repetitions and nil-admitting groups consumable against nothing.
// `end` bounds the item range so a star repetition can be checked in isolation.
static bool items_conform(const std::vector<SimpleValue>& items, std::size_t i,
                          std::size_t end, const std::vector<const Group*>& gs,
                          std::size_t j, World vw) {
    if (j == gs.size()) return i == end;
    const Group& g = *gs[j];
    switch (g.kind) {
        case Group::Kind::Simple:
            if (i < end && simple_conforms(items[i], g.simple, vw) &&
                items_conform(items, i + 1, end, gs, j + 1, vw))
                return true;
            // a nil-typed position may also be matched by inserting nothing
            if (simple_admits_nil(g.simple) && items_conform(items, i, end, gs, j + 1, vw))
                return true;
            return false;
        case Group::Kind::Union:
            for (const auto& alt : g.alts) {
                std::vector<const Group*> sub;
                for (const auto& ag : alt.groups) sub.push_back(&ag);
                sub.insert(sub.end(), gs.begin() + j + 1, gs.end());
                if (items_conform(items, i, end, sub, 0, vw)) return true;
            }
            return false;
        case Group::Kind::Star: {
            // zero repetitions
            if (items_conform(items, i, end, gs, j + 1, vw)) return true;
            // one nonempty repetition consuming items[i..m), then the star again
            const InterfaceType& body = g.alts[0];
            std::vector<const Group*> sub;
            for (const auto& bg : body.groups) sub.push_back(&bg);
            for (std::size_t m = i + 1; m <= end; ++m)
                if (items_conform(items, i, m, sub, 0, vw) &&
                    items_conform(items, m, end, gs, j, vw))
                    return true;
            return false;
        }
    }
    return false;
}

bool value_conforms(const InterfaceValue& v, const InterfaceType& t) {
    if (auto tw = world_of(t); tw && !v.items.empty() && *tw != v.world)
        throw WorldError("value_conforms: mixed spatial/temporal use");
    std::vector<const Group*> gs;
    for (const auto& g : t.groups) gs.push_back(&g);
    if (items_conform(v.items, 0, v.items.size(), gs, 0, v.world)) return true;
    // nil groups in the value are freely droppable
    auto dropped = drop_nil_items(v.items);
    return items_conform(dropped, 0, dropped.size(), gs, 0, v.world);
}

// ---------------------------------------------------------------------------
// equal_up_to_nil

static bool group_is_nil(const Group& g) {
    return g.kind == Group::Kind::Simple && g.simple.kind == SimpleType::Kind::Nil;
}

std::optional<Alignment> equal_up_to_nil(const InterfaceType& a, const InterfaceType& b) {
    if (!worlds_compatible(a, b))
        throw WorldError("equal_up_to_nil: mixed spatial/temporal use");
    const auto& ga = a.groups;
    const auto& gb = b.groups;
    const std::size_t n = ga.size(), m = gb.size();
    // cost[i][j]: min insertions to align ga[i..] with gb[j..]; -1 = impossible
    std::vector<std::vector<int>> cost(n + 1, std::vector<int>(m + 1, -1));
    cost[n][m] = 0;
    for (std::size_t i = n + 1; i-- > 0;) {
        for (std::size_t j = m + 1; j-- > 0;) {
            if (i == n && j == m) continue;
            int best = -1;
            if (i < n && j < m && ga[i] == gb[j] && cost[i + 1][j + 1] >= 0)
                best = cost[i + 1][j + 1];
            // insert nil on the right against ga[i] (ga[i] must be nil)
            if (i < n && group_is_nil(ga[i]) && cost[i + 1][j] >= 0) {
                int c = cost[i + 1][j] + 1;
                if (best < 0 || c < best) best = c;
            }
            if (j < m && group_is_nil(gb[j]) && cost[i][j + 1] >= 0) {
                int c = cost[i][j + 1] + 1;
                if (best < 0 || c < best) best = c;
            }
            cost[i][j] = best;
        }
    }
    if (cost[0][0] < 0) return std::nullopt;
    Alignment al;
    std::size_t i = 0, j = 0;
    while (i < n || j < m) {
        // leftmost-greedy: prefer pairing, then left-nil, then right-nil
        if (i < n && j < m && ga[i] == gb[j] && cost[i + 1][j + 1] == cost[i][j]) {
            al.left.push_back(i);
            al.right.push_back(j);
            ++i, ++j;
        } else if (i < n && group_is_nil(ga[i]) && cost[i + 1][j] >= 0 &&
                   cost[i + 1][j] + 1 == cost[i][j]) {
            al.left.push_back(i);
            al.right.push_back(std::nullopt);
            ++i;
        } else {
            al.left.push_back(std::nullopt);
            al.right.push_back(j);
            ++j;
        }
    }
    return al;
}

// ---------------------------------------------------------------------------
// match

static bool simple_match(const SimpleType& a, const SimpleType& b);

static bool simple_match(const SimpleType& a, const SimpleType& b) {
    using K = SimpleType::Kind;
    if (a.kind == K::Union)
        return simple_match(a.kids[0], b) || simple_match(a.kids[1], b);
    if (b.kind == K::Union)
        return simple_match(a, b.kids[0]) || simple_match(a, b.kids[1]);
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case K::Nil: return true;
        case K::Int:
        case K::Bool: return a.world == b.world;
        case K::Tuple: {
            if (a.kids.size() != b.kids.size()) return false;
            for (std::size_t i = 0; i < a.kids.size(); ++i)
                if (!simple_match(a.kids[i], b.kids[i])) return false;
            return true;
        }
        case K::Star: return true;  // empty repetition always shared
        default: return false;
    }
}

// A group list is a regular expression over simple-type atoms (union =
// alternation, star group = Kleene closure, nil-admitting atoms optional).
// Nonempty intersection is then reachability in the product automaton, with
// atom compatibility decided by simple_match.
namespace {

struct GroupNfa {
    struct Edge {
        int to;
        const SimpleType* label;  // nullptr = epsilon
    };
    std::vector<std::vector<Edge>> adj;
    int start = 0, accept = 0;

    int node() {
        adj.emplace_back();
        return static_cast<int>(adj.size()) - 1;
    }
    void eps(int a, int b) { adj[a].push_back({b, nullptr}); }
    void lab(int a, int b, const SimpleType* t) { adj[a].push_back({b, t}); }
};

void nfa_seq(GroupNfa& n, const std::vector<Group>& gs, int from, int to);

void nfa_group(GroupNfa& n, const Group& g, int from, int to) {
    switch (g.kind) {
        case Group::Kind::Simple:
            n.lab(from, to, &g.simple);
            if (simple_admits_nil(g.simple)) n.eps(from, to);
            break;
        case Group::Kind::Union:
            for (const auto& alt : g.alts) nfa_seq(n, alt.groups, from, to);
            break;
        case Group::Kind::Star: {
            int hub = n.node();
            n.eps(from, hub);
            n.eps(hub, to);
            int s = n.node(), e = n.node();
            n.eps(hub, s);
            n.eps(e, hub);
            nfa_seq(n, g.alts[0].groups, s, e);
            break;
        }
    }
}

void nfa_seq(GroupNfa& n, const std::vector<Group>& gs, int from, int to) {
    if (gs.empty()) {
        n.eps(from, to);
        return;
    }
    int cur = from;
    for (std::size_t k = 0; k < gs.size(); ++k) {
        int nxt = (k + 1 == gs.size()) ? to : n.node();
        nfa_group(n, gs[k], cur, nxt);
        cur = nxt;
    }
}

GroupNfa nfa_of(const InterfaceType& t) {
    GroupNfa n;
    n.start = n.node();
    n.accept = n.node();
    nfa_seq(n, t.groups, n.start, n.accept);
    return n;
}

}  // namespace

bool match(const InterfaceType& a, const InterfaceType& b) {
    if (!worlds_compatible(a, b)) return false;
    GroupNfa na = nfa_of(a), nb = nfa_of(b);
    const std::size_t NB = nb.adj.size();
    std::vector<char> seen(na.adj.size() * NB, 0);
    std::vector<std::pair<int, int>> work{{na.start, nb.start}};
    seen[na.start * NB + nb.start] = 1;
    auto push = [&](int x, int y) {
        if (!seen[x * NB + y]) {
            seen[x * NB + y] = 1;
            work.emplace_back(x, y);
        }
    };
    while (!work.empty()) {
        auto [x, y] = work.back();
        work.pop_back();
        if (x == na.accept && y == nb.accept) return true;
        for (const auto& e : na.adj[x])
            if (!e.label) push(e.to, y);
        for (const auto& e : nb.adj[y])
            if (!e.label) push(x, e.to);
        for (const auto& ea : na.adj[x]) {
            if (!ea.label) continue;
            for (const auto& eb : nb.adj[y]) {
                if (!eb.label) continue;
                if (simple_match(*ea.label, *eb.label)) push(ea.to, eb.to);
            }
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// access

SimpleValue access(const InterfaceValue& v, const Selector& sel) {
    using K = Selector::Kind;
    if (sel.kind == K::Group) {
        if (sel.index < 1 || sel.index > v.items.size())
            throw RangeError("group index " + std::to_string(sel.index) + " out of range");
        return v.items[sel.index - 1];
    }
    World want = (sel.kind == K::SpatialField || sel.kind == K::SpatialIndex)
                     ? World::Spatial
                     : World::Temporal;
    if (v.world != want)
        throw WorldError(std::string("selector expects a ") + world_name(want) +
                         " value, got " + world_name(v.world));
    if (v.items.size() != 1)
        throw StructureError("field/index selector needs a single-group value");
    const SimpleValue& s = v.items[0];
    bool field = sel.kind == K::SpatialField || sel.kind == K::TemporalField;
    if (field) {
        if (s.kind != SimpleValue::Kind::Tuple)
            throw StructureError("field selector applied to a non-tuple value");
    } else {
        if (s.kind != SimpleValue::Kind::Star)
            throw StructureError("index selector applied to a non-star value");
    }
    if (sel.index < 1 || sel.index > s.kids.size())
        throw RangeError("component index " + std::to_string(sel.index) + " out of range");
    return s.kids[sel.index - 1];
}

// ---------------------------------------------------------------------------
// text forms

static void print_simple(std::ostream& os, const SimpleType& t, bool atomCtx) {
    using K = SimpleType::Kind;
    switch (t.kind) {
        case K::Nil: os << "nil"; break;
        case K::Int: os << (t.world == World::Spatial ? "sn" : "tn"); break;
        case K::Bool: os << (t.world == World::Spatial ? "sb" : "tb"); break;
        case K::Union:
            if (atomCtx) os << "(";
            print_simple(os, t.kids[0], true);
            os << "|";
            print_simple(os, t.kids[1], true);
            if (atomCtx) os << ")";
            break;
        case K::Tuple: {
            if (atomCtx) os << "(";
            for (std::size_t i = 0; i < t.kids.size(); ++i) {
                if (i) os << ",";
                print_simple(os, t.kids[i], true);
            }
            if (atomCtx) os << ")";
            break;
        }
        case K::Star:
            if (t.kids[0].kind == K::Nil || t.kids[0].kind == K::Int ||
                t.kids[0].kind == K::Bool) {
                print_simple(os, t.kids[0], true);
            } else {
                os << "(";
                print_simple(os, t.kids[0], false);
                os << ")";
            }
            os << "*";
            break;
    }
}

std::string to_string(const SimpleType& t) {
    std::ostringstream os;
    print_simple(os, t, false);
    return os.str();
}

static void print_iface(std::ostream& os, const InterfaceType& t);

static void print_group(std::ostream& os, const Group& g) {
    switch (g.kind) {
        case Group::Kind::Simple: print_simple(os, g.simple, false); break;
        case Group::Kind::Union:
            os << "(";
            for (std::size_t i = 0; i < g.alts.size(); ++i) {
                if (i) os << "|";
                os << "(";
                print_iface(os, g.alts[i]);
                os << ")";
            }
            os << ")";
            break;
        case Group::Kind::Star:
            os << "(";
            print_iface(os, g.alts[0]);
            os << ";)*";
            break;
    }
}

static void print_iface(std::ostream& os, const InterfaceType& t) {
    if (t.groups.empty()) {
        os << "nil";
        return;
    }
    for (std::size_t i = 0; i < t.groups.size(); ++i) {
        if (i) os << ";";
        print_group(os, t.groups[i]);
    }
}

std::string to_string(const InterfaceType& t) {
    std::ostringstream os;
    print_iface(os, t);
    return os.str();
}

std::string to_string(const SimpleValue& v) {
    std::ostringstream os;
    switch (v.kind) {
        case SimpleValue::Kind::Nil: os << "nil"; break;
        case SimpleValue::Kind::Int: os << v.i; break;
        case SimpleValue::Kind::Bool: os << (v.b ? "true" : "false"); break;
        case SimpleValue::Kind::Tuple:
            os << "(";
            for (std::size_t i = 0; i < v.kids.size(); ++i) {
                if (i) os << ",";
                os << to_string(v.kids[i]);
            }
            os << ")";
            break;
        case SimpleValue::Kind::Star:
            os << "[";
            for (std::size_t i = 0; i < v.kids.size(); ++i) {
                if (i) os << ",";
                os << to_string(v.kids[i]);
            }
            os << "]";
            break;
    }
    return os.str();
}

std::string to_string(const InterfaceValue& v) {
    if (v.items.empty()) return "nil";
    std::ostringstream os;
    for (std::size_t i = 0; i < v.items.size(); ++i) {
        if (i) os << ";";
        os << to_string(v.items[i]);
    }
    return os.str();
}

// --- small recursive-descent readers for the textual forms ----------------

namespace {

struct TextCursor {
    const std::string& s;
    std::size_t p = 0;

    void skip() {
        while (p < s.size() && (s[p] == ' ' || s[p] == '\t')) ++p;
    }
    bool eat(char c) {
        skip();
        if (p < s.size() && s[p] == c) {
            ++p;
            return true;
        }
        return false;
    }
    char peek() {
        skip();
        return p < s.size() ? s[p] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) {
        throw AgapiaError("while reading '" + s + "' at offset " + std::to_string(p) +
                         ": " + what);
    }
    std::string word() {
        skip();
        std::size_t q = p;
        while (q < s.size() && (std::isalnum(static_cast<unsigned char>(s[q])))) ++q;
        std::string w = s.substr(p, q - p);
        p = q;
        return w;
    }
};

InterfaceType read_iface(TextCursor& c, World w);

// one ','-level simple expression
SimpleType read_simple(TextCursor& c, World w);

SimpleType read_simple_atom(TextCursor& c, World w) {
    c.skip();
    SimpleType t;
    if (c.peek() == '(') {
        c.eat('(');
        t = read_simple(c, w);
        if (!c.eat(')')) c.fail("expected ')'");
    } else {
        std::string kw = c.word();
        if (kw == "nil") t = st_nil();
        else if (kw == "sn") t = st_int(World::Spatial);
        else if (kw == "sb") t = st_bool(World::Spatial);
        else if (kw == "tn") t = st_int(World::Temporal);
        else if (kw == "tb") t = st_bool(World::Temporal);
        else c.fail("expected a simple type");
    }
    while (c.peek() == '*') {
        c.eat('*');
        t = st_star(std::move(t));
    }
    return t;
}

SimpleType read_simple_tuple(TextCursor& c, World w) {
    SimpleType t = read_simple_atom(c, w);
    std::vector<SimpleType> kids;
    while (c.peek() == ',') {
        c.eat(',');
        if (kids.empty()) kids.push_back(std::move(t));
        kids.push_back(read_simple_atom(c, w));
    }
    if (!kids.empty()) return st_tuple(std::move(kids));
    return t;
}

SimpleType read_simple(TextCursor& c, World w) {
    SimpleType t = read_simple_tuple(c, w);
    while (c.peek() == '|') {
        c.eat('|');
        t = st_union(std::move(t), read_simple_tuple(c, w));
    }
    return t;
}

std::vector<Group> read_group(TextCursor& c, World w) {
    c.skip();
    if (c.peek() == '(') {
        // a parenthesized group list, a star group, or a union group
        std::size_t mark = c.p;
        c.eat('(');
        InterfaceType inner = read_iface(c, w);
        bool trailingSemi = c.eat(';');
        if (trailingSemi && c.peek() != ')') c.fail("expected ')' after trailing ';'");
        std::vector<InterfaceType> alts{inner};
        while (c.peek() == '|') {
            c.eat('|');
            alts.push_back(read_iface(c, w));
        }
        if (!c.eat(')')) c.fail("expected ')'");
        bool starred = false;
        while (c.peek() == '*') {
            c.eat('*');
            starred = true;
        }
        auto fold_union = [](std::vector<InterfaceType> as) {
            InterfaceType acc = std::move(as[0]);
            for (std::size_t k = 1; k < as.size(); ++k) {
                Group g = group_union(std::move(acc), std::move(as[k]));
                acc = InterfaceType{};
                acc.groups.push_back(std::move(g));
            }
            return acc.groups[0];
        };
        if (alts.size() > 1) {
            Group g = fold_union(std::move(alts));
            if (starred) {
                InterfaceType body;
                body.groups.push_back(std::move(g));
                return {group_star(std::move(body))};
            }
            return {std::move(g)};
        }
        bool singleSimple = inner.groups.size() == 1 && !trailingSemi &&
                            inner.groups[0].kind == Group::Kind::Simple;
        // `(t),u`: the parens belong to a simple-type tuple expression
        if (!starred && singleSimple && c.peek() == ',') {
            c.p = mark;
            return {group_simple(read_simple(c, w))};
        }
        std::vector<Group> res;
        if (starred) {
            if (singleSimple)
                res.push_back(group_simple(st_star(inner.groups[0].simple)));
            else
                res.push_back(group_star(std::move(inner)));
        } else if (inner.groups.empty()) {
            res.push_back(group_simple(st_nil()));
        } else {
            res = std::move(inner.groups);  // plain grouping parentheses
        }
        // `(...)|alt|alt`: union continuation at the group level
        if (c.peek() == '|') {
            std::vector<InterfaceType> as{it_groups(std::move(res))};
            while (c.peek() == '|') {
                c.eat('|');
                as.push_back(it_groups(read_group(c, w)));
            }
            return {fold_union(std::move(as))};
        }
        return res;
    }
    return {group_simple(read_simple(c, w))};
}

InterfaceType read_iface(TextCursor& c, World w) {
    InterfaceType t;
    auto append = [&](std::vector<Group> gs) {
        for (auto& g : gs) t.groups.push_back(std::move(g));
    };
    append(read_group(c, w));
    while (true) {
        c.skip();
        if (c.peek() != ';') break;
        std::size_t mark = c.p;
        c.eat(';');
        if (c.peek() == ')' || c.peek() == '\0') {
            c.p = mark;  // trailing ';' belongs to a star-group wrapper
            break;
        }
        append(read_group(c, w));
    }
    if (t.groups.size() == 1 && t.groups[0].kind == Group::Kind::Simple &&
        t.groups[0].simple.kind == SimpleType::Kind::Nil)
        t.groups.clear();
    return t;
}

SimpleValue read_value(TextCursor& c);

SimpleValue read_value(TextCursor& c) {
    c.skip();
    char ch = c.peek();
    if (ch == '(') {
        c.eat('(');
        std::vector<SimpleValue> kids{read_value(c)};
        while (c.eat(',')) kids.push_back(read_value(c));
        if (!c.eat(')')) c.fail("expected ')'");
        return sv_tuple(std::move(kids));
    }
    if (ch == '[') {
        c.eat('[');
        std::vector<SimpleValue> kids;
        if (c.peek() != ']') {
            kids.push_back(read_value(c));
            while (c.eat(',')) kids.push_back(read_value(c));
        }
        if (!c.eat(']')) c.fail("expected ']'");
        return sv_star(std::move(kids));
    }
    if (ch == '-' || std::isdigit(static_cast<unsigned char>(ch))) {
        bool neg = c.eat('-');
        std::string d;
        while (c.p < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.p]))) {
            d += c.s[c.p];
            ++c.p;
        }
        if (d.empty()) c.fail("expected digits");
        std::int64_t v = std::stoll(d);
        return sv_int(neg ? -v : v);
    }
    std::string kw = c.word();
    if (kw == "nil") return sv_nil();
    if (kw == "true") return sv_bool(true);
    if (kw == "false") return sv_bool(false);
    c.fail("expected a value");
}

}  // namespace

InterfaceType parse_interface_type(const std::string& text, World w) {
    TextCursor c{text};
    InterfaceType t = read_iface(c, w);
    c.skip();
    if (c.p != text.size()) c.fail("trailing characters after type");
    if (auto tw = world_of(t); tw && *tw != w)
        throw WorldError("type '" + text + "' is " + world_name(*tw) + ", expected " +
                         world_name(w));
    return t;
}

InterfaceValue parse_interface_value(const std::string& text, World w) {
    TextCursor c{text};
    InterfaceValue v;
    v.world = w;
    c.skip();
    if (c.p == text.size()) return v;
    v.items.push_back(read_value(c));
    while (c.eat(';')) v.items.push_back(read_value(c));
    c.skip();
    if (c.p != text.size()) c.fail("trailing characters after value");
    if (v.items.size() == 1 && v.items[0].kind == SimpleValue::Kind::Nil) v.items.clear();
    return v;
}

}  // namespace agapia
