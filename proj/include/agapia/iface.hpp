#pragma once

// Four-sided interface types and values: the type grammar shared by the
// whole toolchain, nil-insertion equality, matching (nonempty intersection),
// and component accessors.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace agapia {

enum class World { Spatial, Temporal };

inline World other_world(World w) {
    return w == World::Spatial ? World::Temporal : World::Spatial;
}

const char* world_name(World w);

// ---------------------------------------------------------------------------
// Errors

struct AgapiaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WorldError : AgapiaError {
    using AgapiaError::AgapiaError;
};
struct RangeError : AgapiaError {
    using AgapiaError::AgapiaError;
};
struct StructureError : AgapiaError {
    using AgapiaError::AgapiaError;
};

// ---------------------------------------------------------------------------
// Simple types: the per-cell (SST/STT) layer. A simple type is wholly
// spatial or wholly temporal; nil fits either world.

struct SimpleType {
    enum class Kind { Nil, Int, Bool, Union, Tuple, Star };

    Kind kind = Kind::Nil;
    World world = World::Spatial;   // meaningful for Int/Bool leaves only
    std::vector<SimpleType> kids;   // Union/Tuple: n-ary (>=2); Star: exactly 1

    bool operator==(const SimpleType& o) const;
};

SimpleType st_nil();
SimpleType st_int(World w);
SimpleType st_bool(World w);
SimpleType st_union(SimpleType a, SimpleType b);
SimpleType st_tuple(std::vector<SimpleType> kids);
SimpleType st_star(SimpleType body);

// World of a simple type; nullopt when the type mentions no sn/sb/tn/tb leaf.
std::optional<World> world_of(const SimpleType& t);

// ---------------------------------------------------------------------------
// Interface types: the ';'-separated system layer (ST/TT). An empty group
// list denotes nil/0.

struct InterfaceType;

struct Group {
    enum class Kind { Simple, Union, Star };

    Kind kind = Kind::Simple;
    SimpleType simple;               // Kind::Simple
    std::vector<InterfaceType> alts; // Union: >=2 alternatives; Star: body at [0]

    bool operator==(const Group& o) const;
};

struct InterfaceType {
    std::vector<Group> groups;

    bool operator==(const InterfaceType& o) const;
    bool is_nil() const;
};

InterfaceType it_nil();
InterfaceType it_simple(SimpleType t);
InterfaceType it_groups(std::vector<Group> gs);
Group group_simple(SimpleType t);
Group group_union(InterfaceType a, InterfaceType b);
Group group_star(InterfaceType body);

std::optional<World> world_of(const InterfaceType& t);
std::optional<World> world_of(const Group& g);

// True when the two types could live on one border (equal worlds, or at
// least one side is world-agnostic).
bool worlds_compatible(const InterfaceType& a, const InterfaceType& b);

// Concatenation of group lists. `drop_nil` implements the temporal-axis
// convention: nil groups vanish (and an all-nil list collapses to nil).
InterfaceType concat(const InterfaceType& a, const InterfaceType& b, bool drop_nil);

// t ∪ t' as a type: equal operands collapse, otherwise a single union group.
InterfaceType type_union(const InterfaceType& a, const InterfaceType& b);

// (t;)* — nil when t is nil, otherwise a single star group.
InterfaceType type_star(const InterfaceType& t);

// Does the group admit the empty/nil interface element?
bool group_admits_nil(const Group& g);
bool type_admits_nil(const InterfaceType& t);

// ---------------------------------------------------------------------------
// Values

struct SimpleValue {
    enum class Kind { Nil, Int, Bool, Tuple, Star };

    Kind kind = Kind::Nil;
    std::int64_t i = 0;
    bool b = false;
    std::vector<SimpleValue> kids;  // Tuple / Star elements

    bool operator==(const SimpleValue& o) const;
};

SimpleValue sv_nil();
SimpleValue sv_int(std::int64_t v);
SimpleValue sv_bool(bool v);
SimpleValue sv_tuple(std::vector<SimpleValue> kids);
SimpleValue sv_star(std::vector<SimpleValue> kids);

struct InterfaceValue {
    std::vector<SimpleValue> items;  // the ';'-groups
    World world = World::Spatial;

    bool empty() const { return items.empty(); }
    bool operator==(const InterfaceValue& o) const;
};

InterfaceValue iv(World w, std::vector<SimpleValue> items = {});

// Group-list equality ignoring the world tag (used on seams after
// recorder/speaker world flips).
bool value_equal(const InterfaceValue& a, const InterfaceValue& b);

// Concatenation of items (result takes `a`'s world unless a is empty).
InterfaceValue value_concat(const InterfaceValue& a, const InterfaceValue& b);

// Items with nil groups removed — the "up to nil" view of a border value.
std::vector<SimpleValue> drop_nil_items(const std::vector<SimpleValue>& items);

// ---------------------------------------------------------------------------
// Operations

// Least type of a value (no unions; stars only where starV occurs).
SimpleType type_of_value(const SimpleValue& v, World w);
InterfaceType type_of_value(const InterfaceValue& v);

bool simple_conforms(const SimpleValue& v, const SimpleType& t, World valueWorld);
bool value_conforms(const InterfaceValue& v, const InterfaceType& t);

// Alignment produced by equal-up-to-nil: two padded lists of equal length,
// each entry an original index or nullopt (an inserted nil).
struct Alignment {
    std::vector<std::optional<std::size_t>> left, right;
};

std::optional<Alignment> equal_up_to_nil(const InterfaceType& a, const InterfaceType& b);

// Nonempty intersection of the denoted value sets.
bool match(const InterfaceType& a, const InterfaceType& b);

// Accessors: V(k), V.k, V.[k], V@k, V@[k]; all indices 1-based.
struct Selector {
    enum class Kind { Group, SpatialField, SpatialIndex, TemporalField, TemporalIndex };
    Kind kind;
    std::size_t index;  // 1-based
};

SimpleValue access(const InterfaceValue& v, const Selector& sel);

// ---------------------------------------------------------------------------
// Text forms (the source-level surface syntax; `|` for ∪)

std::string to_string(const SimpleType& t);
std::string to_string(const InterfaceType& t);
std::string to_string(const SimpleValue& v);
std::string to_string(const InterfaceValue& v);

InterfaceType parse_interface_type(const std::string& text, World w);
InterfaceValue parse_interface_value(const std::string& text, World w);

}  // namespace agapia
