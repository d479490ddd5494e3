#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "agapia/exec.hpp"
#include "agapia/htm.hpp"

namespace agapia {
namespace {

bool is_leaf(const HtmNode& n) { return n.children.empty(); }

void collect_postorder(const HtmNode& n, std::vector<const HtmNode*>& out) {
    for (const HtmNode& c : n.children) collect_postorder(c, out);
    out.push_back(&n);
}

std::string code_label(const std::string& code) { return code.empty() ? "nil" : code; }

void validate_node(const HtmNode& n) {
    for (char ch : n.code)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw HtmError("node code '" + n.code + "' is not a digit string");
    const ClassifierCfg& c = n.classifier;
    if (c.templates.empty()) throw HtmError("node " + code_label(n.code) + " has no templates");
    if (c.templates.size() != c.names.size())
        throw HtmError("node " + code_label(n.code) + ": template and name counts differ");
    std::size_t len = c.templates[0].size();
    if (len == 0) throw HtmError("node " + code_label(n.code) + " has an empty template");
    std::set<std::vector<std::int64_t>> seen;
    for (const auto& t : c.templates) {
        if (t.size() != len)
            throw HtmError("node " + code_label(n.code) + ": template lengths differ");
        if (!seen.insert(t).second)
            throw HtmError("node " + code_label(n.code) + ": duplicate template");
        for (std::int64_t d : t)
            if (d < 0)
                throw HtmError("node " + code_label(n.code) +
                               ": template entries must be nonnegative");
    }
    for (std::int64_t nm : c.names)
        if (nm < 0)
            throw HtmError("node " + code_label(n.code) + ": class codes must be nonnegative");
    if (c.threshold < 0)
        throw HtmError("node " + code_label(n.code) + ": negative threshold");
    if (!is_leaf(n) && len != n.children.size())
        throw HtmError("node " + code_label(n.code) +
                       ": template length must equal the child count");
    for (const HtmNode& child : n.children) {
        if (child.code.size() != n.code.size() + 1 ||
            child.code.compare(0, n.code.size(), n.code) != 0)
            throw HtmError("child code '" + child.code + "' does not extend '" +
                           code_label(n.code) + "' by one digit");
        validate_node(child);
    }
}

}  // namespace

void validate_tree(const HtmTree& t) {
    if (!t.root.code.empty()) throw HtmError("root code must be empty (nil)");
    if (t.capacity == 0) throw HtmError("capacity must be positive");
    validate_node(t.root);
}

std::vector<std::string> tree_linearize(const HtmTree& t) {
    std::vector<const HtmNode*> order;
    collect_postorder(t.root, order);
    std::vector<std::string> codes;
    for (const HtmNode* n : order) codes.push_back(code_label(n->code));
    return codes;
}

MatchResult best_match(const std::vector<std::int64_t>& pattern, const ClassifierCfg& cfg) {
    MatchResult best;
    for (std::size_t m = 0; m < cfg.templates.size(); ++m) {
        const auto& t = cfg.templates[m];
        if (t.size() != pattern.size())
            throw InterfaceError("pattern length " + std::to_string(pattern.size()) +
                                 " does not match template length " +
                                 std::to_string(t.size()));
        std::int64_t d = 0;
        for (std::size_t j = 0; j < t.size(); ++j)
            if (t[j] != pattern[j]) ++d;
        if (m == 0 || d < best.distance) best = {m + 1, d};
    }
    return best;
}

PrefixResult prefix_match(const std::vector<std::int64_t>& pattern, const ClassifierCfg& cfg) {
    std::vector<bool> alive(cfg.templates.size(), true);
    for (const auto& t : cfg.templates)
        if (t.size() != pattern.size())
            throw InterfaceError("pattern length " + std::to_string(pattern.size()) +
                                 " does not match template length " +
                                 std::to_string(t.size()));
    for (std::size_t j = 0; j < pattern.size(); ++j) {
        std::size_t count = 0, last = 0;
        for (std::size_t m = 0; m < cfg.templates.size(); ++m) {
            if (alive[m] && cfg.templates[m][j] != pattern[j]) alive[m] = false;
            if (alive[m]) {
                ++count;
                last = m + 1;
            }
        }
        if (count == 1) return {true, last, j + 1};
        if (count == 0) return {false, 0, j + 1};
    }
    // several templates agree with the whole pattern
    return {true, best_match(pattern, cfg).index, pattern.size()};
}

NodeOutput classify_node(const std::vector<std::int64_t>& pattern, const ClassifierCfg& cfg) {
    if (cfg.mode == ClassifierMode::Prefix) {
        PrefixResult r = prefix_match(pattern, cfg);
        std::size_t k = r.decided ? r.index : best_match(pattern, cfg).index;
        return {false, cfg.names[k - 1], {}};
    }
    MatchResult bm = best_match(pattern, cfg);
    if (cfg.mode == ClassifierMode::FullyAttentive && bm.distance > cfg.threshold)
        return {true, 0, pattern};
    return {false, cfg.names[bm.index - 1], {}};
}

BusLayout bus_layout(const HtmTree& t) {
    validate_tree(t);
    BusLayout L;
    L.capacity = t.capacity;
    L.outBase = 0;
    L.workBase = t.capacity;
    std::vector<const HtmNode*> order;
    collect_postorder(t.root, order);
    std::size_t work = 0;
    for (const HtmNode* n : order) {
        std::size_t pay = is_leaf(*n) ? n->classifier.templates[0].size() : n->children.size();
        L.slot[n->code] = L.workBase + work;
        L.payload[n->code] = pay;
        work += 2 + pay;  // tag, res, payload
        if (is_leaf(*n)) {
            L.leafOff[n->code] = L.stride;
            L.stride += pay;
        }
    }
    L.dataBase = L.workBase + work;
    L.total = L.dataBase + L.capacity * L.stride;
    return L;
}

namespace {

// Emits the generated module bodies line by line.
struct Gen {
    const HtmTree& t;
    BusLayout L;
    bool feedback = false;
    std::ostringstream out;

    static std::string at(std::size_t pos) { return "bus@[" + std::to_string(pos) + "]"; }

    static std::string module_name(const char* kind, const std::string& code) {
        return std::string(kind) + code;
    }

    // Straight-line nearest-template search: reads pattern variables pv,
    // leaves the winning class code in <px>code and the distance in
    // <px>bestd. Ties go to the lowest template index.
    void emit_best(std::vector<std::string>& decls, std::vector<std::string>& body,
                   const std::string& px, const std::vector<std::string>& pv,
                   const ClassifierCfg& cfg) {
        for (const char* n : {"d", "best", "bestd", "code"}) decls.push_back(px + n + ":tn;");
        for (std::size_t m = 0; m < cfg.templates.size(); ++m) {
            body.push_back(px + "d = 0;");
            for (std::size_t j = 0; j < pv.size(); ++j)
                body.push_back("if(" + pv[j] + " != " + std::to_string(cfg.templates[m][j]) +
                               "){ " + px + "d = " + px + "d + 1; }");
            if (m == 0) {
                body.push_back(px + "best = 1; " + px + "bestd = " + px + "d;");
            } else {
                body.push_back("if(" + px + "d < " + px + "bestd){ " + px + "best = " +
                               std::to_string(m + 1) + "; " + px + "bestd = " + px + "d; }");
            }
        }
        for (std::size_t m = 0; m < cfg.names.size(); ++m)
            body.push_back("if(" + px + "best == " + std::to_string(m + 1) + "){ " + px +
                           "code = " + std::to_string(cfg.names[m]) + "; }");
    }

    // Left-to-right survivor scan; overrides <px>code when a unique prefix
    // decides, otherwise the nearest-template result stands.
    void emit_prefix(std::vector<std::string>& decls, std::vector<std::string>& body,
                     const std::string& px, const std::vector<std::string>& pv,
                     const ClassifierCfg& cfg) {
        std::size_t M = cfg.templates.size();
        for (std::size_t m = 1; m <= M; ++m) decls.push_back(px + "a" + std::to_string(m) + ":tn;");
        decls.push_back(px + "cnt:tn;");
        decls.push_back(px + "dec:tn;");
        std::string init = px + "dec = 0;";
        for (std::size_t m = 1; m <= M; ++m) init += " " + px + "a" + std::to_string(m) + " = 1;";
        body.push_back(init);
        for (std::size_t j = 0; j < pv.size(); ++j) {
            for (std::size_t m = 0; m < M; ++m) {
                std::string a = px + "a" + std::to_string(m + 1);
                body.push_back("if(" + a + " == 1 && " + pv[j] + " != " +
                               std::to_string(cfg.templates[m][j]) + "){ " + a + " = 0; }");
            }
            std::string sum = px + "a1";
            for (std::size_t m = 2; m <= M; ++m) sum += " + " + px + "a" + std::to_string(m);
            body.push_back(px + "cnt = " + sum + ";");
            std::string decide = "if(" + px + "dec == 0 && " + px + "cnt == 1){ " + px +
                                 "dec = 1;";
            for (std::size_t m = 0; m < M; ++m)
                decide += " if(" + px + "a" + std::to_string(m + 1) + " == 1){ " + px +
                          "code = " + std::to_string(cfg.names[m]) + "; }";
            decide += " }";
            body.push_back(decide);
        }
    }

    void emit_forward_module(const HtmNode& n, bool isRoot) {
        const ClassifierCfg& cfg = n.classifier;
        std::size_t P = L.payload.at(n.code);
        std::vector<std::string> decls, body, pv;
        for (std::size_t j = 1; j <= P; ++j) {
            std::string p = "p" + std::to_string(j);
            pv.push_back(p);
            decls.push_back(p + ":tn;");
        }
        if (is_leaf(n)) {
            std::size_t base = L.dataBase + L.leafOff.at(n.code);
            for (std::size_t j = 1; j <= P; ++j)
                body.push_back(pv[j - 1] + " = " + at(base + j) + ";");
        } else {
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                const HtmNode& c = n.children[i];
                body.push_back(pv[i] + " = " + at(L.tag_pos(c.code)) + ";");
                if (feedback) {
                    // The child passed its pattern up; classify it with the
                    // child's own templates and leave a resolution message.
                    std::string cx = "c" + std::to_string(i + 1) + "_";
                    std::size_t CP = L.payload.at(c.code);
                    std::vector<std::string> cpv, cb;
                    for (std::size_t j = 1; j <= CP; ++j) {
                        cpv.push_back(cx + "p" + std::to_string(j));
                        decls.push_back(cpv.back() + ":tn;");
                    }
                    for (std::size_t j = 1; j <= CP; ++j)
                        cb.push_back(cpv[j - 1] + " = " + at(L.payload_pos(c.code, j)) + ";");
                    emit_best(decls, cb, cx, cpv, c.classifier);
                    cb.push_back(pv[i] + " = " + cx + "code;");
                    cb.push_back(at(L.res_pos(c.code)) + " = " + cx + "code;");
                    body.push_back("if(" + pv[i] + " == -3){");
                    for (std::string& s : cb) body.push_back("  " + s);
                    body.push_back("}");
                }
            }
        }
        emit_best(decls, body, "", pv, cfg);
        if (cfg.mode == ClassifierMode::Prefix) emit_prefix(decls, body, "", pv, cfg);
        decls.push_back("tag:tn;");
        body.push_back("tag = code;");
        if (cfg.mode == ClassifierMode::FullyAttentive)
            body.push_back("if(bestd > " + std::to_string(cfg.threshold) + "){ tag = -3; }");
        body.push_back(at(L.tag_pos(n.code)) + " = tag;");
        body.push_back(at(L.res_pos(n.code)) + " = -9;");
        if (cfg.mode == ClassifierMode::FullyAttentive) {
            body.push_back("if(tag == -3){");
            for (std::size_t j = 1; j <= P; ++j)
                body.push_back("  " + at(L.payload_pos(n.code, j)) + " = " + pv[j - 1] + ";");
            body.push_back("}");
        }
        if (isRoot) {
            // Push this round's result into the output register and advance
            // the pending input by one round.
            for (std::size_t i = L.capacity; i >= 2; --i)
                body.push_back(at(L.outBase + i) + " = " + at(L.outBase + i - 1) + ";");
            body.push_back(at(L.outBase + 1) + " = tag;");
            std::size_t S = L.stride;
            for (std::size_t i = 1; i + S <= L.capacity * S; ++i)
                body.push_back(at(L.dataBase + i) + " = " + at(L.dataBase + S + i) + ";");
            for (std::size_t i = (L.capacity - 1) * S + 1; i <= L.capacity * S; ++i)
                body.push_back(at(L.dataBase + i) + " = -1;");
        }
        out << "module " << module_name("N", n.code)
            << "{listen bus:(tn)*;}{read nil;}{\n";
        for (const std::string& s : decls) out << "  " << s << "\n";
        for (const std::string& s : body) out << "  " << s << "\n";
        out << "}{speak bus;}{write nil;}\n";
    }

    void emit_feedback_module(const HtmNode& n) {
        out << "module " << module_name("F", n.code)
            << "{listen bus:(tn)*;}{read nil;}{\n"
            << "  r:tn;\n"
            << "  r = " << at(L.res_pos(n.code)) << ";\n"
            << "  if(r != -9){ " << at(L.tag_pos(n.code)) << " = r; "
            << at(L.res_pos(n.code)) << " = -9; }\n"
            << "}{speak bus;}{write nil;}\n";
    }

    std::string chain(const char* kind, const std::vector<const HtmNode*>& order) {
        std::string s;
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (i) s += " # ";
            s += module_name(kind, order[i]->code);
        }
        return s;
    }

    std::string generate() {
        std::vector<const HtmNode*> order;
        collect_postorder(t.root, order);
        for (std::size_t i = 0; i < order.size(); ++i)
            emit_forward_module(*order[i], i + 1 == order.size());
        std::string guard = at(L.dataBase + 1) + " != -1";
        if (!feedback) {
            out << "while_st(" << guard << "){ " << chain("N", order) << " }\n";
        } else {
            for (const HtmNode* n : order) emit_feedback_module(*n);
            out << "while_st(" << guard << "){ (" << chain("N", order) << ") $ ("
                << chain("F", order) << ") }\n";
        }
        return out.str();
    }
};

}  // namespace

std::string generate_forward_source(const HtmTree& t) {
    Gen g{t, bus_layout(t), false};
    return g.generate();
}

std::string generate_feedback_source(const HtmTree& t) {
    Gen g{t, bus_layout(t), true};
    return g.generate();
}

CompilationUnit build_forward_program(const HtmTree& t) {
    return parse_unit(generate_forward_source(t), "htm-forward.agapia");
}

CompilationUnit build_feedback_program(const HtmTree& t) {
    return parse_unit(generate_feedback_source(t), "htm-feedback.agapia");
}

std::vector<std::int64_t> encode_input(
    const HtmTree& t, const std::vector<std::vector<std::vector<std::int64_t>>>& rounds) {
    BusLayout L = bus_layout(t);
    if (rounds.size() > L.capacity)
        throw HtmError("input has " + std::to_string(rounds.size()) +
                       " rounds but the bus capacity is " + std::to_string(L.capacity));
    std::vector<const HtmNode*> order;
    collect_postorder(t.root, order);
    std::vector<const HtmNode*> leaves;
    for (const HtmNode* n : order)
        if (is_leaf(*n)) leaves.push_back(n);

    std::vector<std::int64_t> bus(L.total, 0);
    for (std::size_t i = L.dataBase; i < L.total; ++i) bus[i] = -1;
    for (std::size_t r = 0; r < rounds.size(); ++r) {
        if (rounds[r].size() != leaves.size())
            throw HtmError("round " + std::to_string(r + 1) + " has " +
                           std::to_string(rounds[r].size()) + " patterns, expected " +
                           std::to_string(leaves.size()));
        for (std::size_t j = 0; j < leaves.size(); ++j) {
            const auto& pat = rounds[r][j];
            std::size_t len = L.payload.at(leaves[j]->code);
            if (pat.size() != len)
                throw HtmError("pattern for leaf " + leaves[j]->code + " has length " +
                               std::to_string(pat.size()) + ", expected " +
                               std::to_string(len));
            for (std::size_t i = 0; i < len; ++i) {
                if (pat[i] < 0) throw HtmError("pattern digits must be nonnegative");
                bus[L.dataBase + r * L.stride + L.leafOff.at(leaves[j]->code) + i] = pat[i];
            }
        }
    }
    return bus;
}

std::vector<std::int64_t> root_outputs(const HtmTree& t, const SimpleValue& bus,
                                       std::size_t k) {
    BusLayout L = bus_layout(t);
    if (bus.kind != SimpleValue::Kind::Star || bus.kids.size() < L.outBase + L.capacity)
        throw HtmError("value is not a full-length bus");
    if (k > L.capacity) throw HtmError("round count exceeds the bus capacity");
    std::vector<std::int64_t> out;
    for (std::size_t i = k; i >= 1; --i) {
        const SimpleValue& v = bus.kids[L.outBase + i - 1];
        if (v.kind != SimpleValue::Kind::Int) throw HtmError("non-integer root output");
        out.push_back(v.i);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tree description text

namespace {

struct TTok {
    enum class Kind { Word, Int, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    Pos pos;
};

std::vector<TTok> tlex(const std::string& s, const std::string& file) {
    std::vector<TTok> ts;
    Pos pos{1, 1};
    std::size_t i = 0;
    auto advance = [&](char c) {
        if (c == '\n') {
            ++pos.line;
            pos.col = 1;
        } else {
            ++pos.col;
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (c == '#') {
            while (i < s.size() && s[i] != '\n') advance(s[i++]);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(c);
            ++i;
            continue;
        }
        Pos start = pos;
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string w;
            while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i]))) {
                w += s[i];
                advance(s[i++]);
            }
            ts.push_back({TTok::Kind::Word, w, start});
            continue;
        }
        if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            advance(s[i++]);
            advance(s[i++]);
            ts.push_back({TTok::Kind::Punct, "->", start});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && i + 1 < s.size() &&
             std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
            std::string w;
            if (c == '-') {
                w += c;
                advance(s[i++]);
            }
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                w += s[i];
                advance(s[i++]);
            }
            ts.push_back({TTok::Kind::Int, w, start});
            continue;
        }
        if (c == '{' || c == '}' || c == ';') {
            ts.push_back({TTok::Kind::Punct, std::string(1, c), start});
            advance(c);
            ++i;
            continue;
        }
        throw SyntaxError(file, start, std::string("unexpected character '") + c + "'");
    }
    ts.push_back({TTok::Kind::End, "", pos});
    return ts;
}

struct TreeParser {
    const std::vector<TTok>& ts;
    const std::string& file;
    std::size_t i = 0;

    const TTok& peek() const { return ts[i]; }
    TTok take() { return ts[i++]; }
    [[noreturn]] void fail(const std::string& msg) const {
        throw SyntaxError(file, peek().pos, msg);
    }
    void punct(const std::string& p) {
        if (peek().kind != TTok::Kind::Punct || peek().text != p)
            fail("expected '" + p + "'");
        ++i;
    }
    std::int64_t integer() {
        if (peek().kind != TTok::Kind::Int) fail("expected an integer");
        return std::stoll(take().text);
    }
};

}  // namespace

HtmTree parse_tree_text(const std::string& text, const std::string& file) {
    auto toks = tlex(text, file);
    TreeParser p{toks, file};

    HtmTree tree;
    bool haveCapacity = false;
    std::vector<std::string> order;                // node codes in file order
    std::map<std::string, ClassifierCfg> cfgs;

    while (p.peek().kind != TTok::Kind::End) {
        if (p.peek().kind != TTok::Kind::Word) p.fail("expected 'capacity' or 'node'");
        std::string kw = p.take().text;
        if (kw == "capacity") {
            if (haveCapacity) p.fail("duplicate capacity");
            std::int64_t c = p.integer();
            if (c < 1) p.fail("capacity must be positive");
            tree.capacity = static_cast<std::size_t>(c);
            haveCapacity = true;
            p.punct(";");
            continue;
        }
        if (kw != "node") p.fail("expected 'capacity' or 'node'");
        std::string code;
        if (p.peek().kind == TTok::Kind::Word && p.peek().text == "nil") {
            p.take();
        } else if (p.peek().kind == TTok::Kind::Int && p.peek().text[0] != '-') {
            code = p.take().text;
        } else {
            p.fail("expected a node code (digits or nil)");
        }
        if (cfgs.count(code)) p.fail("duplicate node " + code_label(code));
        p.punct("{");
        ClassifierCfg cfg;
        while (!(p.peek().kind == TTok::Kind::Punct && p.peek().text == "}")) {
            if (p.peek().kind != TTok::Kind::Word)
                p.fail("expected 'mode', 'threshold', or 'template'");
            std::string item = p.take().text;
            if (item == "mode") {
                if (p.peek().kind != TTok::Kind::Word) p.fail("expected a mode name");
                std::string m = p.take().text;
                if (m == "best")
                    cfg.mode = ClassifierMode::BestFull;
                else if (m == "prefix")
                    cfg.mode = ClassifierMode::Prefix;
                else if (m == "attentive")
                    cfg.mode = ClassifierMode::FullyAttentive;
                else
                    p.fail("unknown mode '" + m + "'");
            } else if (item == "threshold") {
                cfg.threshold = p.integer();
            } else if (item == "template") {
                std::vector<std::int64_t> pat;
                while (p.peek().kind == TTok::Kind::Int) pat.push_back(p.integer());
                if (pat.empty()) p.fail("expected pattern digits");
                p.punct("->");
                cfg.templates.push_back(std::move(pat));
                cfg.names.push_back(p.integer());
            } else {
                p.fail("unknown item '" + item + "'");
            }
            p.punct(";");
        }
        p.punct("}");
        order.push_back(code);
        cfgs[code] = std::move(cfg);
    }

    if (!cfgs.count("")) throw HtmError(file + ": no root node (code nil)");
    std::map<std::string, std::vector<std::string>> childrenOf;
    for (const std::string& code : order) {
        if (code.empty()) continue;
        std::string parent = code.substr(0, code.size() - 1);
        if (!cfgs.count(parent))
            throw HtmError(file + ": node " + code + " has no parent node " +
                           code_label(parent));
        childrenOf[parent].push_back(code);
    }

    std::function<HtmNode(const std::string&)> build = [&](const std::string& code) {
        HtmNode n;
        n.code = code;
        n.classifier = cfgs.at(code);
        for (const std::string& c : childrenOf[code]) n.children.push_back(build(c));
        return n;
    };
    tree.root = build("");
    validate_tree(tree);
    return tree;
}

}  // namespace agapia
