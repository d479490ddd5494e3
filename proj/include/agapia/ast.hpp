#pragma once

// Abstract syntax for Agapia v0.1: the inner W-language (expressions,
// statements), module definitions with their four declaration blocks, and
// the combinator layer of structured rv-programs.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "agapia/iface.hpp"

namespace agapia {

struct Pos {
    int line = 0, col = 0;
};

// ---------------------------------------------------------------------------
// Accessor paths: V(k) selects a group, '.'-forms address spatial
// tuples/stars, '@'-forms temporal ones; indices 1-based. Inside a module
// the two spellings act identically on the bound value; the world tag
// records the spelling for faithful printing.

struct PathStep {
    enum class Kind { Group, Field, Index };  // V(k) | V.k, V@k | V.[k], V@[k]
    Kind kind = Kind::Field;
    World world = World::Spatial;  // spelling: '.' = spatial, '@' = temporal
    std::size_t index = 1;         // 1-based
    bool operator==(const PathStep& o) const;
};

struct VarPath {
    std::string name;
    std::vector<PathStep> steps;
    Pos pos;
    bool operator==(const VarPath& o) const;
};

// ---------------------------------------------------------------------------
// Expressions. Arithmetic and boolean layers share one node type; the
// evaluator enforces the value kinds. Unary nodes keep the operand in
// `lhs`.

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { IntLit, BoolLit, Var, Unary, Binary };
    enum class Op { Add, Sub, Mul, Div, Mod, And, Or, Not, Neg, Lt, Le, Gt, Ge, Eq, Ne };

    Kind kind = Kind::IntLit;
    std::int64_t i = 0;
    bool b = false;
    VarPath var;
    Op op = Op::Add;
    ExprPtr lhs, rhs;
    Pos pos;
};

ExprPtr ex_int(std::int64_t v, Pos p = {});
ExprPtr ex_bool(bool v, Pos p = {});
ExprPtr ex_var(VarPath path, Pos p = {});
ExprPtr ex_unary(Expr::Op op, ExprPtr a, Pos p = {});
ExprPtr ex_binary(Expr::Op op, ExprPtr a, ExprPtr b, Pos p = {});

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// ---------------------------------------------------------------------------
// W statements. Sequencing is right-folded: seq(a, seq(b, c)); parser and
// printer agree on that normal form.

struct WStmt;
using WPtr = std::shared_ptr<const WStmt>;

struct WStmt {
    enum class Kind { Nil, New, Assign, If, While, Seq };

    Kind kind = Kind::Nil;
    std::string name;  // New
    SimpleType type;   // New
    VarPath target;    // Assign
    ExprPtr value;     // Assign
    ExprPtr cond;      // If / While
    WPtr a, b;         // If(then, else) / While(body=a) / Seq(a, b)
    Pos pos;
};

WPtr w_nil(Pos p = {});
WPtr w_new(std::string name, SimpleType t, Pos p = {});
WPtr w_assign(VarPath target, ExprPtr value, Pos p = {});
WPtr w_if(ExprPtr cond, WPtr thenB, WPtr elseB, Pos p = {});
WPtr w_while(ExprPtr cond, WPtr body, Pos p = {});
WPtr w_seq(WPtr a, WPtr b, Pos p = {});
WPtr w_seq_all(std::vector<WPtr> stmts);  // right fold; empty → nil

bool w_equal(const WPtr& a, const WPtr& b);

// ---------------------------------------------------------------------------
// Modules

struct VarDecl {
    std::string name;
    SimpleType type;
    Pos pos;
};

struct ModuleDef {
    std::string name;
    std::vector<VarDecl> listenVars;  // west, temporal
    std::vector<VarDecl> readVars;    // north, spatial
    WPtr body;
    std::vector<std::string> speakVars;  // east
    std::vector<std::string> writeVars;  // south
    Pos pos;
};

bool module_equal(const ModuleDef& a, const ModuleDef& b);

// ---------------------------------------------------------------------------
// Programs

struct Program;
using ProgPtr = std::shared_ptr<const Program>;

struct Program {
    enum class Kind { Nil, Module, If, VSeq, HPar, DComp, WhileT, WhileS, WhileST };

    Kind kind = Kind::Nil;
    std::string module;  // Module: referenced name
    ExprPtr guard;       // If / While*
    ProgPtr a, b;        // If(then=a, else=b); binary ops; While body = a
    Pos pos;
};

ProgPtr p_nil(Pos p = {});
ProgPtr p_module(std::string name, Pos p = {});
ProgPtr p_if(ExprPtr guard, ProgPtr thenP, ProgPtr elseP, Pos p = {});
ProgPtr p_vseq(ProgPtr a, ProgPtr b, Pos p = {});
ProgPtr p_hpar(ProgPtr a, ProgPtr b, Pos p = {});
ProgPtr p_dcomp(ProgPtr a, ProgPtr b, Pos p = {});
ProgPtr p_while_t(ExprPtr guard, ProgPtr body, Pos p = {});
ProgPtr p_while_s(ExprPtr guard, ProgPtr body, Pos p = {});
ProgPtr p_while_st(ExprPtr guard, ProgPtr body, Pos p = {});

bool program_equal(const ProgPtr& a, const ProgPtr& b);

// One source file: named modules followed by one main program expression
// (a file without a program expression means the nil program).
struct CompilationUnit {
    std::string file;
    std::vector<ModuleDef> modules;
    ProgPtr main;
};

bool unit_equal(const CompilationUnit& a, const CompilationUnit& b);

}  // namespace agapia
