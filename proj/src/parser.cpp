#include "agapia/lang.hpp"

namespace agapia {
namespace {

struct Parser {
    const std::vector<Token>& ts;
    std::string file;
    std::size_t i = 0;

    const Token& peek(std::size_t off = 0) const {
        std::size_t k = i + off;
        return k < ts.size() ? ts[k] : ts.back();
    }
    bool at_punct(const std::string& s) const {
        return peek().kind == Token::Kind::Punct && peek().text == s;
    }
    bool at_kw(const std::string& s) const {
        return peek().kind == Token::Kind::Keyword && peek().text == s;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw SyntaxError(file, peek().pos, msg + " (got '" +
                                               (peek().kind == Token::Kind::End ? "end of input"
                                                                                : peek().text) +
                                               "')");
    }
    Token take() { return ts[i < ts.size() - 1 ? i++ : i]; }
    Token expect_punct(const std::string& s) {
        if (!at_punct(s)) fail("expected '" + s + "'");
        return take();
    }
    Token expect_kw(const std::string& s) {
        if (!at_kw(s)) fail("expected '" + s + "'");
        return take();
    }
    Token expect_ident() {
        if (peek().kind != Token::Kind::Ident) fail("expected identifier");
        return take();
    }
    Token expect_int() {
        if (peek().kind != Token::Kind::Int) fail("expected integer");
        return take();
    }

    // -- simple types --------------------------------------------------------

    SimpleType parse_sst() {
        SimpleType t = parse_sst_post();
        while (at_punct("|")) {
            take();
            t = st_union(std::move(t), parse_sst_post());
        }
        return t;
    }
    SimpleType parse_sst_post() {
        SimpleType t = parse_sst_atom();
        while (at_punct("*")) {
            take();
            t = st_star(std::move(t));
        }
        return t;
    }
    SimpleType parse_sst_atom() {
        if (at_kw("nil")) { take(); return st_nil(); }
        if (at_kw("sn")) { take(); return st_int(World::Spatial); }
        if (at_kw("sb")) { take(); return st_bool(World::Spatial); }
        if (at_kw("tn")) { take(); return st_int(World::Temporal); }
        if (at_kw("tb")) { take(); return st_bool(World::Temporal); }
        if (at_punct("(")) {
            take();
            std::vector<SimpleType> kids;
            kids.push_back(parse_sst());
            while (at_punct(",")) {
                take();
                kids.push_back(parse_sst());
            }
            expect_punct(")");
            return kids.size() == 1 ? kids[0] : st_tuple(std::move(kids));
        }
        fail("expected a simple type");
    }

    // -- accessor paths ------------------------------------------------------

    VarPath parse_path() {
        Token id = expect_ident();
        VarPath path;
        path.name = id.text;
        path.pos = id.pos;
        for (;;) {
            PathStep step;
            if (at_punct("(") && peek(1).kind == Token::Kind::Int &&
                peek(2).kind == Token::Kind::Punct && peek(2).text == ")") {
                take();
                step.kind = PathStep::Kind::Group;
                step.index = static_cast<std::size_t>(expect_int().i);
                take();  // ')'
            } else if (at_punct(".") || at_punct("@")) {
                step.world = take().text == "." ? World::Spatial : World::Temporal;
                if (at_punct("[")) {
                    take();
                    step.kind = PathStep::Kind::Index;
                    step.index = static_cast<std::size_t>(expect_int().i);
                    expect_punct("]");
                } else {
                    step.kind = PathStep::Kind::Field;
                    step.index = static_cast<std::size_t>(expect_int().i);
                }
            } else {
                break;
            }
            if (step.index == 0) throw SyntaxError(file, peek().pos, "accessor indices are 1-based");
            path.steps.push_back(step);
        }
        return path;
    }

    // -- expressions ---------------------------------------------------------

    ExprPtr parse_expr() { return parse_or(); }

    ExprPtr parse_or() {
        ExprPtr e = parse_and();
        while (at_punct("||")) {
            Pos at = take().pos;
            e = ex_binary(Expr::Op::Or, e, parse_and(), at);
        }
        return e;
    }
    ExprPtr parse_and() {
        ExprPtr e = parse_cmp();
        while (at_punct("&&")) {
            Pos at = take().pos;
            e = ex_binary(Expr::Op::And, e, parse_cmp(), at);
        }
        return e;
    }
    ExprPtr parse_cmp() {
        ExprPtr e = parse_add();
        static const std::vector<std::pair<std::string, Expr::Op>> ops = {
            {"==", Expr::Op::Eq}, {"!=", Expr::Op::Ne}, {"<=", Expr::Op::Le},
            {">=", Expr::Op::Ge}, {"<", Expr::Op::Lt},  {">", Expr::Op::Gt},
        };
        for (const auto& [text, op] : ops) {
            if (at_punct(text)) {
                Pos at = take().pos;
                return ex_binary(op, e, parse_add(), at);
            }
        }
        return e;
    }
    ExprPtr parse_add() {
        ExprPtr e = parse_mul();
        for (;;) {
            if (at_punct("+")) {
                Pos at = take().pos;
                e = ex_binary(Expr::Op::Add, e, parse_mul(), at);
            } else if (at_punct("-")) {
                Pos at = take().pos;
                e = ex_binary(Expr::Op::Sub, e, parse_mul(), at);
            } else {
                return e;
            }
        }
    }
    ExprPtr parse_mul() {
        ExprPtr e = parse_unary();
        for (;;) {
            Expr::Op op;
            if (at_punct("*")) op = Expr::Op::Mul;
            else if (at_punct("/")) op = Expr::Op::Div;
            else if (at_punct("%")) op = Expr::Op::Mod;
            else return e;
            Pos at = take().pos;
            e = ex_binary(op, e, parse_unary(), at);
        }
    }
    ExprPtr parse_unary() {
        if (at_punct("!")) {
            Pos at = take().pos;
            return ex_unary(Expr::Op::Not, parse_unary(), at);
        }
        if (at_punct("-")) {
            Pos at = take().pos;
            return ex_unary(Expr::Op::Neg, parse_unary(), at);
        }
        return parse_expr_atom();
    }
    ExprPtr parse_expr_atom() {
        const Token& t = peek();
        if (t.kind == Token::Kind::Int) {
            Token v = take();
            return ex_int(v.i, v.pos);
        }
        if (at_kw("true")) return ex_bool(true, take().pos);
        if (at_kw("false")) return ex_bool(false, take().pos);
        if (t.kind == Token::Kind::Ident) {
            Pos at = t.pos;
            return ex_var(parse_path(), at);
        }
        if (at_punct("(")) {
            take();
            ExprPtr e = parse_expr();
            expect_punct(")");
            return e;
        }
        fail("expected an expression");
    }

    // -- W statements --------------------------------------------------------

    WPtr parse_stmt() {
        Pos at = peek().pos;
        if (at_kw("null") || at_kw("nil")) {
            take();
            expect_punct(";");
            return w_nil(at);
        }
        if (at_kw("new")) {
            take();
            Token id = expect_ident();
            expect_punct(":");
            SimpleType t = parse_sst();
            expect_punct(";");
            return w_new(id.text, std::move(t), at);
        }
        if (at_kw("if")) {
            take();
            expect_punct("(");
            ExprPtr cond = parse_expr();
            expect_punct(")");
            WPtr thenB = parse_stmt_or_block();
            WPtr elseB = w_nil();
            if (at_kw("else")) {
                take();
                elseB = parse_stmt_or_block();
            }
            return w_if(cond, thenB, elseB, at);
        }
        if (at_kw("while")) {
            take();
            expect_punct("(");
            ExprPtr cond = parse_expr();
            expect_punct(")");
            return w_while(cond, parse_stmt_or_block(), at);
        }
        if (peek().kind == Token::Kind::Ident) {
            // Bare declaration `x:tn;` (Table-1 style) or assignment.
            if (peek(1).kind == Token::Kind::Punct && peek(1).text == ":") {
                Token id = take();
                take();  // ':'
                SimpleType t = parse_sst();
                expect_punct(";");
                return w_new(id.text, std::move(t), at);
            }
            VarPath target = parse_path();
            expect_punct("=");
            ExprPtr value = parse_expr();
            expect_punct(";");
            return w_assign(std::move(target), value, at);
        }
        fail("expected a statement");
    }

    WPtr parse_stmt_or_block() {
        if (at_punct("{")) {
            take();
            WPtr body = parse_stmts_until_brace();
            expect_punct("}");
            return body;
        }
        return parse_stmt();
    }

    WPtr parse_stmts_until_brace() {
        std::vector<WPtr> stmts;
        while (!at_punct("}") && peek().kind != Token::Kind::End) stmts.push_back(parse_stmt());
        return w_seq_all(std::move(stmts));
    }

    // -- modules -------------------------------------------------------------

    std::vector<VarDecl> parse_decl_block(const std::string& keyword) {
        expect_punct("{");
        expect_kw(keyword);
        std::vector<VarDecl> decls;
        if (at_kw("nil")) {
            take();
            if (at_punct(";")) take();
        } else {
            while (!at_punct("}")) {
                Token id = expect_ident();
                expect_punct(":");
                VarDecl d;
                d.name = id.text;
                d.pos = id.pos;
                d.type = parse_sst();
                decls.push_back(std::move(d));
                if (at_punct(",") || at_punct(";")) take();
                else break;
            }
        }
        expect_punct("}");
        return decls;
    }

    std::vector<std::string> parse_name_block(const std::string& keyword) {
        expect_punct("{");
        expect_kw(keyword);
        std::vector<std::string> names;
        if (at_kw("nil")) {
            take();
            if (at_punct(";")) take();
        } else {
            while (!at_punct("}")) {
                names.push_back(expect_ident().text);
                if (at_punct(",") || at_punct(";")) take();
                else break;
            }
        }
        expect_punct("}");
        return names;
    }

    ModuleDef parse_module() {
        Pos at = expect_kw("module").pos;
        ModuleDef m;
        m.pos = at;
        m.name = expect_ident().text;
        m.listenVars = parse_decl_block("listen");
        m.readVars = parse_decl_block("read");
        expect_punct("{");
        m.body = parse_stmts_until_brace();
        expect_punct("}");
        m.speakVars = parse_name_block("speak");
        m.writeVars = parse_name_block("write");
        return m;
    }

    // -- programs ------------------------------------------------------------

    ProgPtr parse_program() { return parse_dcomp_level(); }

    ProgPtr parse_dcomp_level() {
        ProgPtr p = parse_vseq_level();
        while (at_punct("$")) {
            Pos at = take().pos;
            p = p_dcomp(p, parse_vseq_level(), at);
        }
        return p;
    }
    ProgPtr parse_vseq_level() {
        ProgPtr p = parse_hpar_level();
        while (at_punct("%")) {
            Pos at = take().pos;
            p = p_vseq(p, parse_hpar_level(), at);
        }
        return p;
    }
    ProgPtr parse_hpar_level() {
        ProgPtr p = parse_prog_atom();
        while (at_punct("#")) {
            Pos at = take().pos;
            p = p_hpar(p, parse_prog_atom(), at);
        }
        return p;
    }
    ProgPtr parse_braced_program() {
        expect_punct("{");
        ProgPtr p = parse_program();
        expect_punct("}");
        return p;
    }
    ProgPtr parse_prog_atom() {
        Pos at = peek().pos;
        if (at_kw("nil")) {
            take();
            return p_nil(at);
        }
        if (peek().kind == Token::Kind::Ident) return p_module(take().text, at);
        if (at_punct("(")) {
            take();
            ProgPtr p = parse_program();
            expect_punct(")");
            return p;
        }
        if (at_kw("if")) {
            take();
            expect_punct("(");
            ExprPtr g = parse_expr();
            expect_punct(")");
            ProgPtr thenP = parse_braced_program();
            expect_kw("else");
            ProgPtr elseP = parse_braced_program();
            return p_if(g, thenP, elseP, at);
        }
        auto whileForm = [&](ProgPtr (*mk)(ExprPtr, ProgPtr, Pos)) {
            take();
            expect_punct("(");
            ExprPtr g = parse_expr();
            expect_punct(")");
            return mk(g, parse_braced_program(), at);
        };
        if (at_kw("while_t")) return whileForm(&p_while_t);
        if (at_kw("while_s")) return whileForm(&p_while_s);
        if (at_kw("while_st")) return whileForm(&p_while_st);
        fail("expected a program");
    }

    CompilationUnit parse_unit_body() {
        CompilationUnit u;
        u.file = file;
        while (at_kw("module")) u.modules.push_back(parse_module());
        if (peek().kind == Token::Kind::End) {
            u.main = p_nil();
        } else {
            u.main = parse_program();
            if (peek().kind != Token::Kind::End) fail("expected end of input");
        }
        return u;
    }
};

}  // namespace

CompilationUnit parse_unit(const std::string& source, const std::string& file) {
    Parser p{tokenize(source, file), file};
    return p.parse_unit_body();
}

}  // namespace agapia
