#include "agapia/ast.hpp"

namespace agapia {

bool PathStep::operator==(const PathStep& o) const {
    if (kind != o.kind || index != o.index) return false;
    // Group steps have no spelling world.
    return kind == Kind::Group || world == o.world;
}

bool VarPath::operator==(const VarPath& o) const {
    return name == o.name && steps == o.steps;
}

ExprPtr ex_int(std::int64_t v, Pos p) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::IntLit;
    e->i = v;
    e->pos = p;
    return e;
}

ExprPtr ex_bool(bool v, Pos p) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::BoolLit;
    e->b = v;
    e->pos = p;
    return e;
}

ExprPtr ex_var(VarPath path, Pos p) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Var;
    e->var = std::move(path);
    e->pos = p;
    return e;
}

ExprPtr ex_unary(Expr::Op op, ExprPtr a, Pos p) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Unary;
    e->op = op;
    e->lhs = std::move(a);
    e->pos = p;
    return e;
}

ExprPtr ex_binary(Expr::Op op, ExprPtr a, ExprPtr b, Pos p) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Binary;
    e->op = op;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    e->pos = p;
    return e;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Expr::Kind::IntLit: return a->i == b->i;
        case Expr::Kind::BoolLit: return a->b == b->b;
        case Expr::Kind::Var: return a->var == b->var;
        case Expr::Kind::Unary: return a->op == b->op && expr_equal(a->lhs, b->lhs);
        case Expr::Kind::Binary:
            return a->op == b->op && expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
    }
    return false;
}

WPtr w_nil(Pos p) {
    auto w = std::make_shared<WStmt>();
    w->kind = WStmt::Kind::Nil;
    w->pos = p;
    return w;
}

WPtr w_new(std::string name, SimpleType t, Pos p) {
    auto w = std::make_shared<WStmt>();
    w->kind = WStmt::Kind::New;
    w->name = std::move(name);
    w->type = std::move(t);
    w->pos = p;
    return w;
}

WPtr w_assign(VarPath target, ExprPtr value, Pos p) {
    auto w = std::make_shared<WStmt>();
    w->kind = WStmt::Kind::Assign;
    w->target = std::move(target);
    w->value = std::move(value);
    w->pos = p;
    return w;
}

WPtr w_if(ExprPtr cond, WPtr thenB, WPtr elseB, Pos p) {
    auto w = std::make_shared<WStmt>();
    w->kind = WStmt::Kind::If;
    w->cond = std::move(cond);
    w->a = std::move(thenB);
    w->b = std::move(elseB);
    w->pos = p;
    return w;
}

WPtr w_while(ExprPtr cond, WPtr body, Pos p) {
    auto w = std::make_shared<WStmt>();
    w->kind = WStmt::Kind::While;
    w->cond = std::move(cond);
    w->a = std::move(body);
    w->pos = p;
    return w;
}

WPtr w_seq(WPtr a, WPtr b, Pos p) {
    auto w = std::make_shared<WStmt>();
    w->kind = WStmt::Kind::Seq;
    w->a = std::move(a);
    w->b = std::move(b);
    w->pos = p;
    return w;
}

WPtr w_seq_all(std::vector<WPtr> stmts) {
    if (stmts.empty()) return w_nil();
    WPtr acc = stmts.back();
    for (std::size_t i = stmts.size() - 1; i-- > 0;) acc = w_seq(stmts[i], acc);
    return acc;
}

bool w_equal(const WPtr& a, const WPtr& b) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case WStmt::Kind::Nil: return true;
        case WStmt::Kind::New: return a->name == b->name && a->type == b->type;
        case WStmt::Kind::Assign:
            return a->target == b->target && expr_equal(a->value, b->value);
        case WStmt::Kind::If:
            return expr_equal(a->cond, b->cond) && w_equal(a->a, b->a) && w_equal(a->b, b->b);
        case WStmt::Kind::While:
            return expr_equal(a->cond, b->cond) && w_equal(a->a, b->a);
        case WStmt::Kind::Seq: return w_equal(a->a, b->a) && w_equal(a->b, b->b);
    }
    return false;
}

bool module_equal(const ModuleDef& a, const ModuleDef& b) {
    auto declsEq = [](const std::vector<VarDecl>& x, const std::vector<VarDecl>& y) {
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i].name != y[i].name || !(x[i].type == y[i].type)) return false;
        return true;
    };
    return a.name == b.name && declsEq(a.listenVars, b.listenVars) &&
           declsEq(a.readVars, b.readVars) && w_equal(a.body, b.body) &&
           a.speakVars == b.speakVars && a.writeVars == b.writeVars;
}

static ProgPtr mk_prog(Program::Kind k, Pos p) {
    auto pr = std::make_shared<Program>();
    pr->kind = k;
    pr->pos = p;
    return pr;
}

ProgPtr p_nil(Pos p) { return mk_prog(Program::Kind::Nil, p); }

ProgPtr p_module(std::string name, Pos p) {
    auto pr = std::make_shared<Program>();
    pr->kind = Program::Kind::Module;
    pr->module = std::move(name);
    pr->pos = p;
    return pr;
}

ProgPtr p_if(ExprPtr guard, ProgPtr thenP, ProgPtr elseP, Pos p) {
    auto pr = std::make_shared<Program>();
    pr->kind = Program::Kind::If;
    pr->guard = std::move(guard);
    pr->a = std::move(thenP);
    pr->b = std::move(elseP);
    pr->pos = p;
    return pr;
}

static ProgPtr p_binary(Program::Kind k, ProgPtr a, ProgPtr b, Pos p) {
    auto pr = std::make_shared<Program>();
    pr->kind = k;
    pr->a = std::move(a);
    pr->b = std::move(b);
    pr->pos = p;
    return pr;
}

ProgPtr p_vseq(ProgPtr a, ProgPtr b, Pos p) { return p_binary(Program::Kind::VSeq, std::move(a), std::move(b), p); }
ProgPtr p_hpar(ProgPtr a, ProgPtr b, Pos p) { return p_binary(Program::Kind::HPar, std::move(a), std::move(b), p); }
ProgPtr p_dcomp(ProgPtr a, ProgPtr b, Pos p) { return p_binary(Program::Kind::DComp, std::move(a), std::move(b), p); }

static ProgPtr p_while(Program::Kind k, ExprPtr guard, ProgPtr body, Pos p) {
    auto pr = std::make_shared<Program>();
    pr->kind = k;
    pr->guard = std::move(guard);
    pr->a = std::move(body);
    pr->pos = p;
    return pr;
}

ProgPtr p_while_t(ExprPtr guard, ProgPtr body, Pos p) { return p_while(Program::Kind::WhileT, std::move(guard), std::move(body), p); }
ProgPtr p_while_s(ExprPtr guard, ProgPtr body, Pos p) { return p_while(Program::Kind::WhileS, std::move(guard), std::move(body), p); }
ProgPtr p_while_st(ExprPtr guard, ProgPtr body, Pos p) { return p_while(Program::Kind::WhileST, std::move(guard), std::move(body), p); }

bool program_equal(const ProgPtr& a, const ProgPtr& b) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Program::Kind::Nil: return true;
        case Program::Kind::Module: return a->module == b->module;
        case Program::Kind::If:
            return expr_equal(a->guard, b->guard) && program_equal(a->a, b->a) &&
                   program_equal(a->b, b->b);
        case Program::Kind::VSeq:
        case Program::Kind::HPar:
        case Program::Kind::DComp:
            return program_equal(a->a, b->a) && program_equal(a->b, b->b);
        case Program::Kind::WhileT:
        case Program::Kind::WhileS:
        case Program::Kind::WhileST:
            return expr_equal(a->guard, b->guard) && program_equal(a->a, b->a);
    }
    return false;
}

bool unit_equal(const CompilationUnit& a, const CompilationUnit& b) {
    if (a.modules.size() != b.modules.size()) return false;
    for (std::size_t i = 0; i < a.modules.size(); ++i)
        if (!module_equal(a.modules[i], b.modules[i])) return false;
    return program_equal(a.main, b.main);
}

}  // namespace agapia
