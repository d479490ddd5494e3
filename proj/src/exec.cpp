#include "agapia/exec.hpp"

namespace agapia {

const SimpleValue& Env::get(const std::string& name) const {
    auto it = bindings.find(name);
    if (it == bindings.end()) throw ScopeError("unbound variable '" + name + "'");
    return it->second.value;
}

void Env::set(const std::string& name, SimpleValue v, Binding::Origin origin) {
    bindings[name] = Binding{std::move(v), origin};
}

namespace {

const char* kind_name(SimpleValue::Kind k) {
    switch (k) {
        case SimpleValue::Kind::Nil: return "nil";
        case SimpleValue::Kind::Int: return "integer";
        case SimpleValue::Kind::Bool: return "boolean";
        case SimpleValue::Kind::Tuple: return "tuple";
        case SimpleValue::Kind::Star: return "sequence";
    }
    return "?";
}

std::int64_t as_int(const SimpleValue& v) {
    if (v.kind != SimpleValue::Kind::Int)
        throw ArithmeticError(std::string("expected an integer, got ") + kind_name(v.kind));
    return v.i;
}

bool as_bool(const SimpleValue& v) {
    if (v.kind != SimpleValue::Kind::Bool)
        throw ArithmeticError(std::string("expected a boolean, got ") + kind_name(v.kind));
    return v.b;
}

SimpleValue select_step(const SimpleValue& v, const PathStep& s, const std::string& name) {
    switch (s.kind) {
        case PathStep::Kind::Group:
            if (s.index != 1)
                throw RangeError("group index " + std::to_string(s.index) + " on variable '" +
                                 name + "' (a module variable is a single group)");
            return v;
        case PathStep::Kind::Field:
            if (v.kind != SimpleValue::Kind::Tuple)
                throw RangeError("field access on non-tuple value of '" + name + "'");
            if (s.index > v.kids.size())
                throw RangeError("field " + std::to_string(s.index) + " out of range on '" +
                                 name + "'");
            return v.kids[s.index - 1];
        case PathStep::Kind::Index:
            if (v.kind != SimpleValue::Kind::Star)
                throw RangeError("indexing a non-sequence value of '" + name + "'");
            if (s.index > v.kids.size())
                throw RangeError("index " + std::to_string(s.index) + " out of range on '" +
                                 name + "'");
            return v.kids[s.index - 1];
    }
    throw RangeError("bad accessor");
}

SimpleValue read_path(const VarPath& p, const Env& env) {
    SimpleValue v = env.get(p.name);
    for (const PathStep& s : p.steps) v = select_step(v, s, p.name);
    return v;
}

// Writing through a star index extends the sequence with zeros up to the
// index; everything else must already have the addressed shape.
void write_path(SimpleValue& v, const VarPath& p, std::size_t step, SimpleValue rhs) {
    if (step == p.steps.size()) {
        v = std::move(rhs);
        return;
    }
    const PathStep& s = p.steps[step];
    switch (s.kind) {
        case PathStep::Kind::Group:
            if (s.index != 1)
                throw RangeError("group index " + std::to_string(s.index) + " on variable '" +
                                 p.name + "'");
            write_path(v, p, step + 1, std::move(rhs));
            return;
        case PathStep::Kind::Field:
            if (v.kind != SimpleValue::Kind::Tuple || s.index > v.kids.size())
                throw RangeError("field " + std::to_string(s.index) + " out of range on '" +
                                 p.name + "'");
            write_path(v.kids[s.index - 1], p, step + 1, std::move(rhs));
            return;
        case PathStep::Kind::Index:
            if (v.kind == SimpleValue::Kind::Nil) v = sv_star({});
            if (v.kind != SimpleValue::Kind::Star)
                throw RangeError("indexing a non-sequence value of '" + p.name + "'");
            while (v.kids.size() < s.index) v.kids.push_back(sv_int(0));
            write_path(v.kids[s.index - 1], p, step + 1, std::move(rhs));
            return;
    }
}

std::int64_t checked(std::int64_t a, std::int64_t b, Expr::Op op) {
    std::int64_t r = 0;
    bool bad = false;
    switch (op) {
        case Expr::Op::Add: bad = __builtin_add_overflow(a, b, &r); break;
        case Expr::Op::Sub: bad = __builtin_sub_overflow(a, b, &r); break;
        case Expr::Op::Mul: bad = __builtin_mul_overflow(a, b, &r); break;
        case Expr::Op::Div:
            if (b == 0) throw ArithmeticError("division by zero");
            if (a == INT64_MIN && b == -1) throw ArithmeticError("integer overflow");
            r = a / b;
            break;
        case Expr::Op::Mod:
            if (b == 0) throw ArithmeticError("modulo by zero");
            if (a == INT64_MIN && b == -1) throw ArithmeticError("integer overflow");
            r = a % b;
            break;
        default: throw ArithmeticError("bad arithmetic operator");
    }
    if (bad) throw ArithmeticError("integer overflow");
    return r;
}

}  // namespace

SimpleValue eval_value(const ExprPtr& e, const Env& env) {
    switch (e->kind) {
        case Expr::Kind::IntLit: return sv_int(e->i);
        case Expr::Kind::BoolLit: return sv_bool(e->b);
        case Expr::Kind::Var: return read_path(e->var, env);
        case Expr::Kind::Unary:
            if (e->op == Expr::Op::Not) return sv_bool(!as_bool(eval_value(e->lhs, env)));
            if (e->op == Expr::Op::Neg)
                return sv_int(checked(0, as_int(eval_value(e->lhs, env)), Expr::Op::Sub));
            throw ArithmeticError("bad unary operator");
        case Expr::Kind::Binary:
            switch (e->op) {
                case Expr::Op::And: {
                    if (!as_bool(eval_value(e->lhs, env))) return sv_bool(false);
                    return sv_bool(as_bool(eval_value(e->rhs, env)));
                }
                case Expr::Op::Or: {
                    if (as_bool(eval_value(e->lhs, env))) return sv_bool(true);
                    return sv_bool(as_bool(eval_value(e->rhs, env)));
                }
                case Expr::Op::Eq: return sv_bool(eval_value(e->lhs, env) == eval_value(e->rhs, env));
                case Expr::Op::Ne: return sv_bool(!(eval_value(e->lhs, env) == eval_value(e->rhs, env)));
                case Expr::Op::Lt:
                case Expr::Op::Le:
                case Expr::Op::Gt:
                case Expr::Op::Ge: {
                    std::int64_t a = as_int(eval_value(e->lhs, env));
                    std::int64_t b = as_int(eval_value(e->rhs, env));
                    switch (e->op) {
                        case Expr::Op::Lt: return sv_bool(a < b);
                        case Expr::Op::Le: return sv_bool(a <= b);
                        case Expr::Op::Gt: return sv_bool(a > b);
                        default: return sv_bool(a >= b);
                    }
                }
                default: {
                    std::int64_t a = as_int(eval_value(e->lhs, env));
                    std::int64_t b = as_int(eval_value(e->rhs, env));
                    return sv_int(checked(a, b, e->op));
                }
            }
    }
    throw ArithmeticError("bad expression");
}

std::int64_t eval_expr(const ExprPtr& e, const Env& env) { return as_int(eval_value(e, env)); }

bool eval_bool(const ExprPtr& e, const Env& env) { return as_bool(eval_value(e, env)); }

SimpleValue default_value(const SimpleType& t) {
    switch (t.kind) {
        case SimpleType::Kind::Nil: return sv_nil();
        case SimpleType::Kind::Int: return sv_int(0);
        case SimpleType::Kind::Bool: return sv_bool(false);
        case SimpleType::Kind::Union: return default_value(t.kids[0]);
        case SimpleType::Kind::Star: return sv_star({});
        case SimpleType::Kind::Tuple: {
            std::vector<SimpleValue> kids;
            for (const SimpleType& k : t.kids) kids.push_back(default_value(k));
            return sv_tuple(std::move(kids));
        }
    }
    return sv_nil();
}

namespace {

void exec_steps(const WPtr& w, Env& env, std::size_t& steps, const ExecLimits& limits) {
    if (!w) return;
    if (++steps > limits.stepBudget)
        throw DivergenceError("step budget exceeded (" + std::to_string(limits.stepBudget) +
                              " W-steps)");
    switch (w->kind) {
        case WStmt::Kind::Nil: return;
        case WStmt::Kind::New:
            env.set(w->name, default_value(w->type), Binding::Origin::Local);
            return;
        case WStmt::Kind::Assign: {
            SimpleValue rhs = eval_value(w->value, env);
            auto it = env.bindings.find(w->target.name);
            if (it == env.bindings.end())
                throw ScopeError("unbound variable '" + w->target.name + "'");
            write_path(it->second.value, w->target, 0, std::move(rhs));
            return;
        }
        case WStmt::Kind::If:
            exec_steps(eval_bool(w->cond, env) ? w->a : w->b, env, steps, limits);
            return;
        case WStmt::Kind::While:
            while (eval_bool(w->cond, env)) {
                exec_steps(w->a, env, steps, limits);
                if (++steps > limits.stepBudget)
                    throw DivergenceError("step budget exceeded (" +
                                          std::to_string(limits.stepBudget) + " W-steps)");
            }
            return;
        case WStmt::Kind::Seq:
            exec_steps(w->a, env, steps, limits);
            exec_steps(w->b, env, steps, limits);
            return;
    }
}

// Splits a border value into per-variable bindings: either one item per
// variable, or a single tuple item carrying all of them.
std::vector<SimpleValue> unpack_border(const InterfaceValue& v,
                                       const std::vector<BorderVar>& vars, const char* side,
                                       const std::string& moduleName) {
    std::vector<SimpleValue> items = drop_nil_items(v.items);
    if (vars.empty()) {
        if (!items.empty())
            throw InterfaceError("module " + moduleName + ": unexpected data on " + side +
                                 " border: " + to_string(v));
        return {};
    }
    if (items.size() == vars.size()) return items;
    if (items.size() == 1 && items[0].kind == SimpleValue::Kind::Tuple &&
        items[0].kids.size() == vars.size())
        return items[0].kids;
    throw InterfaceError("module " + moduleName + ": " + side + " border " + to_string(v) +
                         " does not fit " + std::to_string(vars.size()) + " declared variable(s)");
}

InterfaceValue pack_border(const std::vector<BorderVar>& vars, const Env& env, World world) {
    if (vars.empty()) return iv(world);
    if (vars.size() == 1) return iv(world, {env.get(vars[0].name)});
    std::vector<SimpleValue> kids;
    for (const BorderVar& v : vars) kids.push_back(env.get(v.name));
    return iv(world, {sv_tuple(std::move(kids))});
}

}  // namespace

void exec_w(const WPtr& w, Env& env, const ExecLimits& limits) {
    std::size_t steps = 0;
    exec_steps(w, env, steps, limits);
}

ModuleRun run_module(const ModuleDef& m, const InterfaceValue& west,
                     const InterfaceValue& north, const ExecLimits& limits) {
    ModuleSignature sig = module_signature(m, m.name);

    Env env;
    std::vector<SimpleValue> wItems = unpack_border(west, sig.listen, "west", m.name);
    for (std::size_t i = 0; i < sig.listen.size(); ++i) {
        if (!simple_conforms(wItems[i], sig.listen[i].type, World::Temporal))
            throw InterfaceError("module " + m.name + ": west value " + to_string(wItems[i]) +
                                 " does not conform to " + to_string(sig.listen[i].type));
        env.set(sig.listen[i].name, wItems[i], Binding::Origin::Listen);
    }
    std::vector<SimpleValue> nItems = unpack_border(north, sig.read, "north", m.name);
    for (std::size_t i = 0; i < sig.read.size(); ++i) {
        if (!simple_conforms(nItems[i], sig.read[i].type, World::Spatial))
            throw InterfaceError("module " + m.name + ": north value " + to_string(nItems[i]) +
                                 " does not conform to " + to_string(sig.read[i].type));
        env.set(sig.read[i].name, nItems[i], Binding::Origin::Read);
    }

    exec_w(m.body, env, limits);

    ModuleRun out;
    out.east = pack_border(sig.speak, env, World::Temporal);
    out.south = pack_border(sig.write, env, World::Spatial);
    out.cell.label = m.name;
    out.cell.west = west;
    out.cell.north = north;
    out.cell.east = out.east;
    out.cell.south = out.south;
    out.cell.routing = false;
    return out;
}

}  // namespace agapia
