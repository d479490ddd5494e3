#pragma once

// Concrete syntax for Agapia v0.1: lexer, parser, canonical printer, and
// the static interface typechecker.
//
// Operator spellings: `#` horizontal composition, `%` vertical, `$`
// diagonal; precedence # > % > $, all left-associative, parentheses
// override. Assignment is `=`, equality `==`.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "agapia/ast.hpp"
#include "agapia/iface.hpp"

namespace agapia {

// Diagnostics carry "file:line:col: message" in what().
struct SourceError : AgapiaError {
    SourceError(const std::string& file, Pos pos, const std::string& message);
    Pos pos;
};
struct LexError : SourceError {
    using SourceError::SourceError;
};
struct SyntaxError : SourceError {
    using SourceError::SourceError;
};
struct TypeError : SourceError {
    using SourceError::SourceError;
};

// ---------------------------------------------------------------------------
// Lexer

struct Token {
    enum class Kind {
        Ident,
        Int,
        Keyword,  // module listen read speak write new if else while while_t
                  // while_s while_st nil null sn sb tn tb true false
        Punct,    // % # $ ; , : | * ( ) { } = == != < > <= >= + - / && || ! @ . [ ]
        End,
    };
    Kind kind = Kind::End;
    std::string text;
    std::int64_t i = 0;  // Kind::Int
    Pos pos;
};

std::vector<Token> tokenize(const std::string& source, const std::string& file);

// ---------------------------------------------------------------------------
// Parser / printer

CompilationUnit parse_unit(const std::string& source, const std::string& file);

std::string print_expr(const Expr& e);
std::string print_w(const WStmt& w, int indent = 0);
std::string print_module(const ModuleDef& m);
std::string print_program(const Program& p);
std::string print_unit(const CompilationUnit& u);

// ---------------------------------------------------------------------------
// Typechecker

// Border signatures track which named variables sit where on a border:
// one group per contributing module side, star segments for iterated
// borders. Only the type layer is law-bearing; names feed guard scoping
// and guard evaluation.
struct BorderVar {
    std::string name;
    SimpleType type;
    bool operator==(const BorderVar& o) const { return name == o.name && type == o.type; }
};
struct GroupSig {
    std::vector<BorderVar> vars;  // empty = nil group
    bool operator==(const GroupSig& o) const = default;
};
struct SigSeg {
    bool star = false;
    std::vector<GroupSig> groups;
    bool operator==(const SigSeg& o) const = default;
};
struct Sig {
    std::vector<SigSeg> segs;
    bool operator==(const Sig& o) const = default;
};

// The four-sided type of a program.
struct ProgramType {
    InterfaceType w, n, e, s;
};

std::string to_string(const ProgramType& t);  // ⟨w | n | e | s⟩

struct TypeInfo {
    ProgramType type;
    Sig ws, ns, es, ss;
};

// InterfaceType of a signature. On the temporal axis nil groups are
// dropped; on the spatial axis they are kept positionally.
InterfaceType sig_type(const Sig& s, bool temporalAxis);

// Variables present in both signatures with identical types (the n∩s /
// w∩e guard scopes).
std::vector<BorderVar> common_vars(const Sig& a, const Sig& b);
// All variables of a signature (used by the guard-scope relaxation for
// pending-border peeking).
std::vector<BorderVar> all_vars(const Sig& s);

struct TypedProgram {
    CompilationUnit unit;
    std::map<std::string, const ModuleDef*> moduleTable;  // into unit.modules
    std::map<const Program*, TypeInfo> info;              // per combinator node
    TypeInfo root;

    const TypeInfo& of(const Program& p) const;
};

// Per-module variable environment assembled by the typechecker: declared
// type and world for every listen/read/new name.
struct ModuleSignature {
    std::vector<BorderVar> listen, read;
    std::vector<BorderVar> speak, write;  // resolved speak/write types
    std::map<std::string, SimpleType> locals;  // `new` declarations
};

ModuleSignature module_signature(const ModuleDef& m, const std::string& file);

TypedProgram typecheck(const CompilationUnit& unit);

}  // namespace agapia
