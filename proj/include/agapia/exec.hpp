#pragma once

// Evaluator for module bodies: expressions, the inner W-language, and
// single-module execution from input borders to output borders.

#include <cstdint>
#include <map>
#include <string>

#include "agapia/ast.hpp"
#include "agapia/lang.hpp"
#include "agapia/scenario.hpp"

namespace agapia {

struct ScopeError : AgapiaError {
    using AgapiaError::AgapiaError;
};
struct ArithmeticError : AgapiaError {
    using AgapiaError::AgapiaError;
};
struct DivergenceError : AgapiaError {
    using AgapiaError::AgapiaError;
};
struct InterfaceError : AgapiaError {
    using AgapiaError::AgapiaError;
};

struct Binding {
    enum class Origin { Listen, Read, Local };
    SimpleValue value;
    Origin origin = Origin::Local;
};

struct Env {
    std::map<std::string, Binding> bindings;

    const SimpleValue& get(const std::string& name) const;
    void set(const std::string& name, SimpleValue v, Binding::Origin origin);
};

struct ExecLimits {
    std::size_t stepBudget = 1'000'000;  // W statements per module invocation
    std::size_t roundCap = 100'000;      // while-combinator iterations (used by interp)
};

// Arithmetic is 64-bit two's-complement with overflow trapping; `/` and `%`
// truncate toward zero and report division by zero. Connectives
// short-circuit. ==/!= compare whole values; </<=/>/>= are integer-only.
SimpleValue eval_value(const ExprPtr& e, const Env& env);
std::int64_t eval_expr(const ExprPtr& e, const Env& env);
bool eval_bool(const ExprPtr& e, const Env& env);

// Zero-equivalent default for `new`: 0, false, nil, empty star, tuple of
// defaults, first alternative of a union.
SimpleValue default_value(const SimpleType& t);

void exec_w(const WPtr& w, Env& env, const ExecLimits& limits = {});

struct ModuleRun {
    InterfaceValue east, south;
    Cell cell;
};

// Binds listen variables from west and read variables from north (in
// declaration order), runs the body, and collects speak/write variables.
// A border with several variables travels as one tuple item; a border with
// none is nil (empty item list).
ModuleRun run_module(const ModuleDef& m, const InterfaceValue& west,
                     const InterfaceValue& north, const ExecLimits& limits = {});

}  // namespace agapia
