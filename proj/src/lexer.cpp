#include <cctype>
#include <set>

#include "agapia/lang.hpp"

namespace agapia {

SourceError::SourceError(const std::string& file, Pos p, const std::string& message)
    : AgapiaError(file + ":" + std::to_string(p.line) + ":" + std::to_string(p.col) +
                  ": " + message),
      pos(p) {}

static const std::set<std::string>& keywords() {
    static const std::set<std::string> kw = {
        "module", "listen", "read",    "speak",    "write", "new",  "if",
        "else",   "while",  "while_t", "while_s",  "while_st",
        "nil",    "null",   "sn",      "sb",       "tn",    "tb",
        "true",   "false",
    };
    return kw;
}

std::vector<Token> tokenize(const std::string& source, const std::string& file) {
    std::vector<Token> out;
    std::size_t p = 0;
    int line = 1, col = 1;
    auto cur = [&]() -> Pos { return {line, col}; };
    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k && p < source.size(); ++j, ++p) {
            if (source[p] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto peek = [&](std::size_t off = 0) -> char {
        return p + off < source.size() ? source[p + off] : '\0';
    };

    while (p < source.size()) {
        char c = peek();
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && peek(1) == '/') {
            while (p < source.size() && peek() != '\n') advance(1);
            continue;
        }
        Pos at = cur();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (p < source.size() &&
                   (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
                word += peek();
                advance(1);
            }
            Token t;
            t.kind = keywords().count(word) ? Token::Kind::Keyword : Token::Kind::Ident;
            t.text = word;
            t.pos = at;
            out.push_back(std::move(t));
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (p < source.size() && std::isdigit(static_cast<unsigned char>(peek()))) {
                num += peek();
                advance(1);
            }
            Token t;
            t.kind = Token::Kind::Int;
            t.text = num;
            try {
                t.i = std::stoll(num);
            } catch (const std::out_of_range&) {
                throw LexError(file, at, "integer literal out of range: " + num);
            }
            t.pos = at;
            out.push_back(std::move(t));
            continue;
        }
        auto punct = [&](const std::string& s) {
            Token t;
            t.kind = Token::Kind::Punct;
            t.text = s;
            t.pos = at;
            out.push_back(std::move(t));
            advance(s.size());
        };
        char d = peek(1);
        switch (c) {
            case '=': punct(d == '=' ? "==" : "="); continue;
            case '!': punct(d == '=' ? "!=" : "!"); continue;
            case '<': punct(d == '=' ? "<=" : "<"); continue;
            case '>': punct(d == '=' ? ">=" : ">"); continue;
            case '&':
                if (d == '&') { punct("&&"); continue; }
                throw LexError(file, at, "stray '&' (use '&&')");
            case '|': punct(d == '|' ? "||" : "|"); continue;
            case '%': case '#': case '$': case ';': case ',': case ':': case '*':
            case '(': case ')': case '{': case '}': case '+': case '-': case '/':
            case '@': case '.': case '[': case ']':
                punct(std::string(1, c));
                continue;
            default:
                throw LexError(file, at, "illegal character '" + std::string(1, c) + "'");
        }
    }
    Token end;
    end.kind = Token::Kind::End;
    end.pos = cur();
    out.push_back(end);
    return out;
}

}  // namespace agapia
