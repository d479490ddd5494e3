#include <algorithm>
#include <set>

#include "agapia/lang.hpp"

namespace agapia {

std::string to_string(const ProgramType& t) {
    return "⟨" + to_string(t.w) + " | " + to_string(t.n) + " | " + to_string(t.e) +
           " | " + to_string(t.s) + "⟩";
}

namespace {

Group group_of(const GroupSig& g) {
    if (g.vars.empty()) return group_simple(st_nil());
    if (g.vars.size() == 1) return group_simple(g.vars[0].type);
    std::vector<SimpleType> kids;
    for (const BorderVar& v : g.vars) kids.push_back(v.type);
    return group_simple(st_tuple(std::move(kids)));
}

bool is_nil_group(const Group& g) {
    return g.kind == Group::Kind::Simple && g.simple.kind == SimpleType::Kind::Nil;
}

}  // namespace

InterfaceType sig_type(const Sig& s, bool temporalAxis) {
    std::vector<Group> out;
    for (const SigSeg& seg : s.segs) {
        std::vector<Group> here;
        for (const GroupSig& g : seg.groups) {
            Group grp = group_of(g);
            if (temporalAxis && is_nil_group(grp)) continue;
            here.push_back(std::move(grp));
        }
        if (seg.star) {
            InterfaceType body = it_groups(std::move(here));
            if (!body.is_nil()) out.push_back(group_star(std::move(body)));
        } else {
            for (Group& g : here) out.push_back(std::move(g));
        }
    }
    return it_groups(std::move(out));
}

std::vector<BorderVar> all_vars(const Sig& s) {
    std::vector<BorderVar> out;
    std::set<std::string> seen;
    for (const SigSeg& seg : s.segs)
        for (const GroupSig& g : seg.groups)
            for (const BorderVar& v : g.vars)
                if (seen.insert(v.name).second) out.push_back(v);
    return out;
}

std::vector<BorderVar> common_vars(const Sig& a, const Sig& b) {
    std::vector<BorderVar> va = all_vars(a), vb = all_vars(b);
    std::vector<BorderVar> out;
    for (const BorderVar& x : va)
        for (const BorderVar& y : vb)
            if (x.name == y.name) {
                if (x.type == y.type) out.push_back(x);
                break;
            }
    return out;
}

namespace {

// Name-preserving union of two border signatures: identical signatures pass
// through; shape-equal ones with matching names merge types; anything else
// degrades to the anonymous signature (types stay exact at the type layer;
// only guard-name visibility is lost).
Sig union_sig(const Sig& a, const Sig& b) {
    if (a == b) return a;
    if (a.segs.size() != b.segs.size()) return {};
    Sig out;
    for (std::size_t i = 0; i < a.segs.size(); ++i) {
        const SigSeg& x = a.segs[i];
        const SigSeg& y = b.segs[i];
        if (x.star != y.star || x.groups.size() != y.groups.size()) return {};
        SigSeg seg;
        seg.star = x.star;
        for (std::size_t j = 0; j < x.groups.size(); ++j) {
            const GroupSig& gx = x.groups[j];
            const GroupSig& gy = y.groups[j];
            if (gx.vars.size() != gy.vars.size()) return {};
            GroupSig g;
            for (std::size_t k = 0; k < gx.vars.size(); ++k) {
                if (gx.vars[k].name != gy.vars[k].name) return {};
                BorderVar v = gx.vars[k];
                if (!(v.type == gy.vars[k].type)) v.type = st_union(v.type, gy.vars[k].type);
                g.vars.push_back(std::move(v));
            }
            seg.groups.push_back(std::move(g));
        }
        out.segs.push_back(std::move(seg));
    }
    return out;
}

Sig concat_sig(const Sig& a, const Sig& b) {
    Sig out = a;
    out.segs.insert(out.segs.end(), b.segs.begin(), b.segs.end());
    return out;
}

// All groups of a signature squashed into a single star segment (the
// (w;)* borders of while forms). Inner star structure is not recorded at
// the name layer; the type layer keeps it via type_star.
Sig star_sig(const Sig& s) {
    SigSeg seg;
    seg.star = true;
    for (const SigSeg& in : s.segs)
        for (const GroupSig& g : in.groups) seg.groups.push_back(g);
    if (seg.groups.empty()) return {};
    return Sig{{std::move(seg)}};
}

struct Checker {
    const CompilationUnit& unit;
    TypedProgram& out;

    [[noreturn]] void fail(Pos pos, const std::string& msg) const {
        throw TypeError(unit.file, pos, msg);
    }

    void check_guard(const ExprPtr& g, const std::vector<BorderVar>& temporal,
                     const std::vector<BorderVar>& spatial, const char* where) const {
        if (!g) return;
        if (g->kind == Expr::Kind::Var) {
            const std::string& name = g->var.name;
            auto has = [&](const std::vector<BorderVar>& vs) {
                return std::any_of(vs.begin(), vs.end(),
                                   [&](const BorderVar& v) { return v.name == name; });
            };
            if (!has(temporal) && !has(spatial))
                fail(g->var.pos, std::string(where) + ": guard variable '" + name +
                                     "' is not shared by the borders it may range over");
        }
        check_guard(g->lhs, temporal, spatial, where);
        check_guard(g->rhs, temporal, spatial, where);
    }

    TypeInfo module_info(const std::string& name, Pos pos) {
        auto it = out.moduleTable.find(name);
        if (it == out.moduleTable.end()) fail(pos, "unknown module '" + name + "'");
        const ModuleDef& m = *it->second;
        ModuleSignature sig = module_signature(m, unit.file);
        auto one = [](const std::vector<BorderVar>& vars) {
            return Sig{{SigSeg{false, {GroupSig{vars}}}}};
        };
        TypeInfo ti;
        ti.ws = one(sig.listen);
        ti.ns = one(sig.read);
        ti.es = one(sig.speak);
        ti.ss = one(sig.write);
        ti.type = {sig_type(ti.ws, true), sig_type(ti.ns, false), sig_type(ti.es, true),
                   sig_type(ti.ss, false)};
        return ti;
    }

    void require_match(const InterfaceType& a, const InterfaceType& b, Pos pos,
                       const char* comb, const char* seam) const {
        if (!match(a, b))
            fail(pos, std::string(comb) + ": " + seam + " seam mismatch: " + to_string(a) +
                          " vs " + to_string(b));
    }

    TypeInfo check(const ProgPtr& p) {
        TypeInfo ti;
        switch (p->kind) {
            case Program::Kind::Nil:
                ti.type = {it_nil(), it_nil(), it_nil(), it_nil()};
                break;
            case Program::Kind::Module:
                ti = module_info(p->module, p->pos);
                break;
            case Program::Kind::HPar: {
                TypeInfo a = check(p->a), b = check(p->b);
                require_match(a.type.e, b.type.w, p->pos, "horizontal composition",
                              "east/west");
                ti.ws = a.ws;
                ti.ns = concat_sig(a.ns, b.ns);
                ti.es = b.es;
                ti.ss = concat_sig(a.ss, b.ss);
                ti.type = {a.type.w, concat(a.type.n, b.type.n, false), b.type.e,
                           concat(a.type.s, b.type.s, false)};
                break;
            }
            case Program::Kind::VSeq: {
                TypeInfo a = check(p->a), b = check(p->b);
                require_match(a.type.s, b.type.n, p->pos, "vertical composition",
                              "south/north");
                ti.ws = concat_sig(a.ws, b.ws);
                ti.ns = a.ns;
                ti.es = concat_sig(a.es, b.es);
                ti.ss = b.ss;
                ti.type = {concat(a.type.w, b.type.w, true), a.type.n,
                           concat(a.type.e, b.type.e, true), b.type.s};
                break;
            }
            case Program::Kind::DComp: {
                TypeInfo a = check(p->a), b = check(p->b);
                require_match(a.type.e, b.type.w, p->pos, "diagonal composition",
                              "east/west");
                require_match(a.type.s, b.type.n, p->pos, "diagonal composition",
                              "south/north");
                ti.ws = a.ws;
                ti.ns = a.ns;
                ti.es = b.es;
                ti.ss = b.ss;
                ti.type = {a.type.w, a.type.n, b.type.e, b.type.s};
                break;
            }
            case Program::Kind::If: {
                TypeInfo a = check(p->a), b = check(p->b);
                check_guard(p->guard, common_vars(a.ws, b.ws), common_vars(a.ns, b.ns),
                            "if");
                ti.ws = union_sig(a.ws, b.ws);
                ti.ns = union_sig(a.ns, b.ns);
                ti.es = union_sig(a.es, b.es);
                ti.ss = union_sig(a.ss, b.ss);
                ti.type = {type_union(a.type.w, b.type.w), type_union(a.type.n, b.type.n),
                           type_union(a.type.e, b.type.e), type_union(a.type.s, b.type.s)};
                break;
            }
            case Program::Kind::WhileT: {
                TypeInfo a = check(p->a);
                require_match(a.type.n, a.type.s, p->pos, "while_t", "north/south");
                // Guards range over the shared spatial state and may peek
                // (without consuming) the pending west input.
                check_guard(p->guard, all_vars(a.ws), common_vars(a.ns, a.ss), "while_t");
                ti.ws = star_sig(a.ws);
                ti.ns = union_sig(a.ns, a.ss);
                ti.es = star_sig(a.es);
                ti.ss = ti.ns;
                InterfaceType ns = type_union(a.type.n, a.type.s);
                ti.type = {type_star(a.type.w), ns, type_star(a.type.e), ns};
                break;
            }
            case Program::Kind::WhileS: {
                TypeInfo a = check(p->a);
                require_match(a.type.w, a.type.e, p->pos, "while_s", "west/east");
                check_guard(p->guard, common_vars(a.ws, a.es), all_vars(a.ns), "while_s");
                ti.ws = union_sig(a.ws, a.es);
                ti.ns = star_sig(a.ns);
                ti.es = ti.ws;
                ti.ss = star_sig(a.ss);
                InterfaceType we = type_union(a.type.w, a.type.e);
                ti.type = {we, type_star(a.type.n), we, type_star(a.type.s)};
                break;
            }
            case Program::Kind::WhileST: {
                TypeInfo a = check(p->a);
                require_match(a.type.w, a.type.e, p->pos, "while_st", "west/east");
                require_match(a.type.n, a.type.s, p->pos, "while_st", "north/south");
                check_guard(p->guard, common_vars(a.ws, a.es), common_vars(a.ns, a.ss),
                            "while_st");
                ti.ws = union_sig(a.ws, a.es);
                ti.ns = union_sig(a.ns, a.ss);
                ti.es = ti.ws;
                ti.ss = ti.ns;
                InterfaceType we = type_union(a.type.w, a.type.e);
                InterfaceType ns = type_union(a.type.n, a.type.s);
                ti.type = {we, ns, we, ns};
                break;
            }
        }
        out.info[p.get()] = ti;
        return ti;
    }
};

void check_body_names(const WPtr& w, const std::set<std::string>& declared,
                      const std::string& file) {
    if (!w) return;
    auto check_expr = [&](const ExprPtr& e, auto&& self) -> void {
        if (!e) return;
        if (e->kind == Expr::Kind::Var && !declared.count(e->var.name))
            throw TypeError(file, e->var.pos, "unbound variable '" + e->var.name + "'");
        self(e->lhs, self);
        self(e->rhs, self);
    };
    switch (w->kind) {
        case WStmt::Kind::Nil:
        case WStmt::Kind::New: break;
        case WStmt::Kind::Assign:
            if (!declared.count(w->target.name))
                throw TypeError(file, w->target.pos,
                                "assignment to undeclared variable '" + w->target.name + "'");
            check_expr(w->value, check_expr);
            break;
        case WStmt::Kind::If:
            check_expr(w->cond, check_expr);
            check_body_names(w->a, declared, file);
            check_body_names(w->b, declared, file);
            break;
        case WStmt::Kind::While:
            check_expr(w->cond, check_expr);
            check_body_names(w->a, declared, file);
            break;
        case WStmt::Kind::Seq:
            check_body_names(w->a, declared, file);
            check_body_names(w->b, declared, file);
            break;
    }
}

void collect_news(const WPtr& w, std::map<std::string, SimpleType>& locals,
                  const std::set<std::string>& outer, const std::string& file) {
    if (!w) return;
    switch (w->kind) {
        case WStmt::Kind::New: {
            if (outer.count(w->name) || locals.count(w->name))
                throw TypeError(file, w->pos, "duplicate declaration of '" + w->name + "'");
            locals.emplace(w->name, w->type);
            break;
        }
        case WStmt::Kind::If:
        case WStmt::Kind::Seq:
            collect_news(w->a, locals, outer, file);
            collect_news(w->b, locals, outer, file);
            break;
        case WStmt::Kind::While: collect_news(w->a, locals, outer, file); break;
        default: break;
    }
}

}  // namespace

ModuleSignature module_signature(const ModuleDef& m, const std::string& file) {
    ModuleSignature sig;
    std::set<std::string> declared;
    auto addDecls = [&](const std::vector<VarDecl>& ds, World world, const char* side,
                        std::vector<BorderVar>& into) {
        for (const VarDecl& d : ds) {
            if (!declared.insert(d.name).second)
                throw TypeError(file, d.pos,
                                "duplicate declaration of '" + d.name + "' in module " + m.name);
            auto w = world_of(d.type);
            if (w && *w != world)
                throw TypeError(file, d.pos, std::string(side) + " variable '" + d.name +
                                                 "' must be " + world_name(world) +
                                                 ", got " + to_string(d.type));
            into.push_back({d.name, d.type});
        }
    };
    addDecls(m.listenVars, World::Temporal, "listen", sig.listen);
    addDecls(m.readVars, World::Spatial, "read", sig.read);

    collect_news(m.body, sig.locals, declared, file);
    for (const auto& [name, type] : sig.locals) declared.insert(name);
    check_body_names(m.body, declared, file);

    auto resolve = [&](const std::vector<std::string>& names, World world, const char* side,
                       std::vector<BorderVar>& into) {
        for (const std::string& name : names) {
            SimpleType t;
            bool found = false;
            for (const auto& vs : {sig.listen, sig.read})
                for (const BorderVar& v : vs)
                    if (v.name == name) { t = v.type; found = true; }
            if (auto it = sig.locals.find(name); it != sig.locals.end()) {
                t = it->second;
                found = true;
            }
            if (!found)
                throw TypeError(file, m.pos, std::string(side) + " variable '" + name +
                                                 "' is not declared in module " + m.name);
            auto w = world_of(t);
            if (w && *w != world)
                throw TypeError(file, m.pos, std::string(side) + " variable '" + name +
                                                 "' must be " + world_name(world) + ", got " +
                                                 to_string(t));
            into.push_back({name, t});
        }
    };
    resolve(m.speakVars, World::Temporal, "speak", sig.speak);
    resolve(m.writeVars, World::Spatial, "write", sig.write);
    return sig;
}

const TypeInfo& TypedProgram::of(const Program& p) const {
    auto it = info.find(&p);
    if (it == info.end()) throw StructureError("program node was not typechecked");
    return it->second;
}

TypedProgram typecheck(const CompilationUnit& unit) {
    TypedProgram tp;
    tp.unit = unit;
    for (const ModuleDef& m : tp.unit.modules) {
        if (!tp.moduleTable.emplace(m.name, &m).second)
            throw TypeError(tp.unit.file, m.pos, "duplicate module '" + m.name + "'");
        module_signature(m, tp.unit.file);  // validates even unused modules
    }
    Checker ck{tp.unit, tp};
    tp.root = ck.check(tp.unit.main);
    return tp;
}

}  // namespace agapia
