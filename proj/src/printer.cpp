#include <sstream>

#include "agapia/lang.hpp"

namespace agapia {
namespace {

// Expression precedence levels (higher binds tighter).
int expr_prec(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::IntLit:
        case Expr::Kind::BoolLit:
        case Expr::Kind::Var: return 7;
        case Expr::Kind::Unary: return 6;
        case Expr::Kind::Binary:
            switch (e.op) {
                case Expr::Op::Mul:
                case Expr::Op::Div:
                case Expr::Op::Mod: return 5;
                case Expr::Op::Add:
                case Expr::Op::Sub: return 4;
                case Expr::Op::Lt:
                case Expr::Op::Le:
                case Expr::Op::Gt:
                case Expr::Op::Ge:
                case Expr::Op::Eq:
                case Expr::Op::Ne: return 3;
                case Expr::Op::And: return 2;
                case Expr::Op::Or: return 1;
                default: return 0;
            }
    }
    return 0;
}

const char* op_text(Expr::Op op) {
    switch (op) {
        case Expr::Op::Add: return "+";
        case Expr::Op::Sub: return "-";
        case Expr::Op::Mul: return "*";
        case Expr::Op::Div: return "/";
        case Expr::Op::Mod: return "%";
        case Expr::Op::And: return "&&";
        case Expr::Op::Or: return "||";
        case Expr::Op::Not: return "!";
        case Expr::Op::Neg: return "-";
        case Expr::Op::Lt: return "<";
        case Expr::Op::Le: return "<=";
        case Expr::Op::Gt: return ">";
        case Expr::Op::Ge: return ">=";
        case Expr::Op::Eq: return "==";
        case Expr::Op::Ne: return "!=";
    }
    return "?";
}

// Declared types print through the shared type printer, except that a
// top-level tuple needs parentheses here: a bare "tn,tn" would read as two
// declarations.
std::string decl_type_text(const SimpleType& t) {
    std::string s = to_string(t);
    return t.kind == SimpleType::Kind::Tuple ? "(" + s + ")" : s;
}

std::string path_text(const VarPath& p) {
    std::string out = p.name;
    for (const PathStep& s : p.steps) {
        switch (s.kind) {
            case PathStep::Kind::Group:
                out += "(" + std::to_string(s.index) + ")";
                break;
            case PathStep::Kind::Field:
                out += (s.world == World::Spatial ? "." : "@") + std::to_string(s.index);
                break;
            case PathStep::Kind::Index:
                out += std::string(s.world == World::Spatial ? "." : "@") + "[" +
                       std::to_string(s.index) + "]";
                break;
        }
    }
    return out;
}

void emit_expr(std::ostream& os, const Expr& e, int need) {
    int prec = expr_prec(e);
    bool paren = prec < need;
    if (paren) os << "(";
    switch (e.kind) {
        case Expr::Kind::IntLit: os << e.i; break;
        case Expr::Kind::BoolLit: os << (e.b ? "true" : "false"); break;
        case Expr::Kind::Var: os << path_text(e.var); break;
        case Expr::Kind::Unary:
            os << op_text(e.op);
            emit_expr(os, *e.lhs, 6);
            break;
        case Expr::Kind::Binary: {
            // Comparisons do not chain; both operands need strictly tighter
            // binding. Other binaries are left-associative.
            bool cmp = prec == 3;
            emit_expr(os, *e.lhs, cmp ? prec + 1 : prec);
            os << " " << op_text(e.op) << " ";
            emit_expr(os, *e.rhs, prec + 1);
            break;
        }
    }
    if (paren) os << ")";
}

void flatten_seq(const WPtr& w, std::vector<WPtr>& out) {
    if (!w) return;
    if (w->kind == WStmt::Kind::Seq) {
        flatten_seq(w->a, out);
        flatten_seq(w->b, out);
        return;
    }
    out.push_back(w);
}

void emit_w(std::ostream& os, const WStmt& w, int indent);

void emit_block(std::ostream& os, const WPtr& body, int indent) {
    std::vector<WPtr> stmts;
    flatten_seq(body, stmts);
    os << "{";
    for (const WPtr& s : stmts) {
        os << "\n" << std::string(static_cast<std::size_t>(indent + 2), ' ');
        emit_w(os, *s, indent + 2);
    }
    if (!stmts.empty()) os << "\n" << std::string(static_cast<std::size_t>(indent), ' ');
    os << "}";
}

void emit_w(std::ostream& os, const WStmt& w, int indent) {
    switch (w.kind) {
        case WStmt::Kind::Nil: os << "null;"; break;
        case WStmt::Kind::New:
            os << w.name << ":" << decl_type_text(w.type) << ";";
            break;
        case WStmt::Kind::Assign:
            os << path_text(w.target) << " = ";
            emit_expr(os, *w.value, 0);
            os << ";";
            break;
        case WStmt::Kind::If:
            os << "if(";
            emit_expr(os, *w.cond, 0);
            os << ") ";
            emit_block(os, w.a, indent);
            if (w.b && w.b->kind != WStmt::Kind::Nil) {
                os << " else ";
                emit_block(os, w.b, indent);
            }
            break;
        case WStmt::Kind::While:
            os << "while(";
            emit_expr(os, *w.cond, 0);
            os << ") ";
            emit_block(os, w.a, indent);
            break;
        case WStmt::Kind::Seq: {
            std::vector<WPtr> stmts;
            WPtr self = w_seq(w.a, w.b);
            flatten_seq(self, stmts);
            for (std::size_t k = 0; k < stmts.size(); ++k) {
                if (k) os << "\n" << std::string(static_cast<std::size_t>(indent), ' ');
                emit_w(os, *stmts[k], indent);
            }
            break;
        }
    }
}

void emit_decls(std::ostream& os, const char* kw, const std::vector<VarDecl>& ds) {
    os << "{" << kw << " ";
    if (ds.empty()) {
        os << "nil;";
    } else {
        for (std::size_t k = 0; k < ds.size(); ++k) {
            if (k) os << ", ";
            os << ds[k].name << ":" << decl_type_text(ds[k].type);
        }
        os << ";";
    }
    os << "}";
}

void emit_names(std::ostream& os, const char* kw, const std::vector<std::string>& ns) {
    os << "{" << kw << " ";
    if (ns.empty()) {
        os << "nil;";
    } else {
        for (std::size_t k = 0; k < ns.size(); ++k) {
            if (k) os << ", ";
            os << ns[k];
        }
        os << ";";
    }
    os << "}";
}

int prog_prec(const Program& p) {
    switch (p.kind) {
        case Program::Kind::DComp: return 1;
        case Program::Kind::VSeq: return 2;
        case Program::Kind::HPar: return 3;
        default: return 4;
    }
}

void emit_program(std::ostream& os, const Program& p, int need) {
    int prec = prog_prec(p);
    bool paren = prec < need;
    if (paren) os << "(";
    switch (p.kind) {
        case Program::Kind::Nil: os << "nil"; break;
        case Program::Kind::Module: os << p.module; break;
        case Program::Kind::If:
            os << "if(";
            emit_expr(os, *p.guard, 0);
            os << "){ ";
            emit_program(os, *p.a, 0);
            os << " }else{ ";
            emit_program(os, *p.b, 0);
            os << " }";
            break;
        case Program::Kind::VSeq:
        case Program::Kind::HPar:
        case Program::Kind::DComp: {
            const char* op = p.kind == Program::Kind::VSeq ? "%"
                             : p.kind == Program::Kind::HPar ? "#"
                                                             : "$";
            emit_program(os, *p.a, prec);
            os << " " << op << " ";
            emit_program(os, *p.b, prec + 1);
            break;
        }
        case Program::Kind::WhileT:
        case Program::Kind::WhileS:
        case Program::Kind::WhileST: {
            const char* kw = p.kind == Program::Kind::WhileT ? "while_t"
                             : p.kind == Program::Kind::WhileS ? "while_s"
                                                               : "while_st";
            os << kw << "(";
            emit_expr(os, *p.guard, 0);
            os << "){ ";
            emit_program(os, *p.a, 0);
            os << " }";
            break;
        }
    }
    if (paren) os << ")";
}

}  // namespace

std::string print_expr(const Expr& e) {
    std::ostringstream os;
    emit_expr(os, e, 0);
    return os.str();
}

std::string print_w(const WStmt& w, int indent) {
    std::ostringstream os;
    emit_w(os, w, indent);
    return os.str();
}

std::string print_module(const ModuleDef& m) {
    std::ostringstream os;
    os << "module " << m.name;
    emit_decls(os, "listen", m.listenVars);
    emit_decls(os, "read", m.readVars);
    emit_block(os, m.body, 0);
    emit_names(os, "speak", m.speakVars);
    emit_names(os, "write", m.writeVars);
    return os.str();
}

std::string print_program(const Program& p) {
    std::ostringstream os;
    emit_program(os, p, 0);
    return os.str();
}

std::string print_unit(const CompilationUnit& u) {
    std::ostringstream os;
    for (const ModuleDef& m : u.modules) os << print_module(m) << "\n\n";
    os << print_program(*u.main) << "\n";
    return os.str();
}

}  // namespace agapia
