#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "agapia/htm.hpp"
#include "agapia/interp.hpp"

using namespace agapia;

namespace {

ClassifierCfg cfg2(std::vector<std::int64_t> t1, std::int64_t n1,
                   std::vector<std::int64_t> t2, std::int64_t n2,
                   ClassifierMode mode = ClassifierMode::BestFull,
                   std::int64_t threshold = 0) {
    ClassifierCfg c;
    c.templates = {std::move(t1), std::move(t2)};
    c.names = {n1, n2};
    c.mode = mode;
    c.threshold = threshold;
    return c;
}

// Two levels below the root, three inner nodes with two leaves each. Leaves
// classify length-3 patterns into {5,6}; inner nodes classify child-code
// pairs into {7,8}; the root classifies inner-code triples into {9,3}.
HtmTree regular_tree(std::size_t capacity = 4) {
    HtmTree t;
    t.capacity = capacity;
    t.root.code = "";
    t.root.classifier = cfg2({7, 7, 7}, 9, {8, 8, 8}, 3);
    for (int i = 1; i <= 3; ++i) {
        HtmNode inner;
        inner.code = std::to_string(i);
        inner.classifier = cfg2({5, 5}, 7, {6, 6}, 8);
        for (int j = 1; j <= 2; ++j) {
            HtmNode leaf;
            leaf.code = inner.code + std::to_string(j);
            leaf.classifier = cfg2({1, 1, 1}, 5, {2, 2, 2}, 6);
            inner.children.push_back(std::move(leaf));
        }
        t.root.children.push_back(std::move(inner));
    }
    return t;
}

std::vector<std::string> leaf_codes(const HtmNode& n) {
    if (n.children.empty()) return {n.code};
    std::vector<std::string> out;
    for (const HtmNode& c : n.children)
        for (const std::string& l : leaf_codes(c)) out.push_back(l);
    return out;
}

// Host-side cascade oracle for a forward round: tags flow child to parent,
// pass-through becomes the -3 marker digit.
std::int64_t cascade_tag(const HtmNode& n,
                         const std::map<std::string, std::vector<std::int64_t>>& leafPat) {
    std::vector<std::int64_t> pat;
    if (n.children.empty()) {
        pat = leafPat.at(n.code);
    } else {
        for (const HtmNode& c : n.children) pat.push_back(cascade_tag(c, leafPat));
    }
    NodeOutput o = classify_node(pat, n.classifier);
    return o.passThrough ? -3 : o.code;
}

RunResult run_rounds(const HtmTree& t, const CompilationUnit& unit,
                     const std::vector<std::vector<std::vector<std::int64_t>>>& rounds) {
    TypedProgram tp = typecheck(unit);
    std::vector<std::int64_t> bus = encode_input(t, rounds);
    std::vector<SimpleValue> kids;
    for (std::int64_t v : bus) kids.push_back(sv_int(v));
    RunInput in;
    in.west.push_back(iv(World::Temporal, {sv_star(std::move(kids))}));
    return run(tp, in);
}

const SimpleValue& final_bus(const RunResult& r) {
    REQUIRE(r.east.size() == 1);
    REQUIRE(r.east[0].items.size() == 1);
    REQUIRE(r.east[0].items[0].kind == SimpleValue::Kind::Star);
    return r.east[0].items[0];
}

void check_postorder(const HtmNode& n, const std::vector<std::string>& order) {
    auto pos = [&](const std::string& code) {
        std::string label = code.empty() ? "nil" : code;
        for (std::size_t i = 0; i < order.size(); ++i)
            if (order[i] == label) return i;
        FAIL("missing code ", label);
        return std::size_t(0);
    };
    for (const HtmNode& c : n.children) {
        CHECK(pos(c.code) < pos(n.code));
        check_postorder(c, order);
    }
}

HtmNode random_node(std::mt19937_64& rng, const std::string& code, int depth, int& budget) {
    HtmNode n;
    n.code = code;
    std::size_t fan = depth == 0 || budget <= 0 ? 0 : rng() % 5;  // up to 4 children
    for (std::size_t i = 0; i < fan && budget > 0; ++i) {
        --budget;
        n.children.push_back(
            random_node(rng, code + std::to_string(i + 1), depth - 1, budget));
    }
    std::size_t len = n.children.empty() ? 1 + rng() % 3 : n.children.size();
    std::size_t m = 1 + rng() % 3;
    std::set<std::vector<std::int64_t>> seen;
    while (n.classifier.templates.size() < m) {
        std::vector<std::int64_t> t;
        for (std::size_t j = 0; j < len; ++j) t.push_back(std::int64_t(rng() % 5));
        if (seen.insert(t).second) {
            n.classifier.templates.push_back(std::move(t));
            n.classifier.names.push_back(std::int64_t(1 + rng() % 9));
        }
    }
    switch (rng() % 3) {
        case 0: n.classifier.mode = ClassifierMode::BestFull; break;
        case 1: n.classifier.mode = ClassifierMode::Prefix; break;
        default: n.classifier.mode = ClassifierMode::FullyAttentive; break;
    }
    n.classifier.threshold = std::int64_t(rng() % 2);
    return n;
}

HtmTree random_tree(std::mt19937_64& rng) {
    HtmTree t;
    t.capacity = 3;
    int budget = 25;
    t.root = random_node(rng, "", 4, budget);
    return t;
}

}  // namespace

TEST_CASE("left-right-root flattening") {
    HtmTree t = regular_tree();
    CHECK(tree_linearize(t) ==
          std::vector<std::string>{"11", "12", "1", "21", "22", "2", "31", "32", "3", "nil"});

    HtmTree single;
    single.root.classifier = cfg2({1}, 1, {2}, 2);
    CHECK(tree_linearize(single) == std::vector<std::string>{"nil"});

    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        HtmTree r = random_tree(rng);
        check_postorder(r.root, tree_linearize(r));
    }
}

TEST_CASE("nearest-template search") {
    ClassifierCfg c = cfg2({1, 1, 1}, 5, {2, 2, 2}, 6);
    CHECK(best_match({2, 2, 2}, c).index == 2);
    CHECK(best_match({2, 2, 2}, c).distance == 0);
    CHECK(best_match({1, 2, 1}, c).index == 1);
    CHECK(best_match({1, 2, 1}, c).distance == 1);
    // equal distance to both templates: lowest index wins
    CHECK(best_match({1, 2, 9}, c).index == 1);
    CHECK_THROWS_AS(best_match({1, 2}, c), InterfaceError);

    // distance 0 iff the pattern is a template
    for (std::int64_t a = 0; a < 4; ++a)
        for (std::int64_t b = 0; b < 4; ++b)
            for (std::int64_t d = 0; d < 4; ++d) {
                MatchResult r = best_match({a, b, d}, c);
                bool member = (a == 1 && b == 1 && d == 1) || (a == 2 && b == 2 && d == 2);
                CHECK((r.distance == 0) == member);
            }
}

TEST_CASE("prefix scan") {
    ClassifierCfg c = cfg2({1, 1, 1}, 5, {2, 2, 2}, 6);
    PrefixResult r = prefix_match({1, 9, 9}, c);
    CHECK(r.decided);
    CHECK(r.index == 1);
    CHECK(r.position == 1);

    ClassifierCfg late = cfg2({1, 1, 1}, 5, {1, 1, 2}, 6);
    r = prefix_match({1, 1, 2}, late);
    CHECK(r.decided);
    CHECK(r.index == 2);
    CHECK(r.position == 3);

    r = prefix_match({9, 0, 0}, c);
    CHECK(!r.decided);
    CHECK(r.position == 1);

    // a pattern equal to a template decides consistently with best_match
    r = prefix_match({2, 2, 2}, c);
    CHECK(r.decided);
    CHECK(r.index == best_match({2, 2, 2}, c).index);
}

TEST_CASE("node classification") {
    ClassifierCfg best = cfg2({1, 1, 1}, 5, {2, 2, 2}, 6);
    CHECK(classify_node({2, 2, 2}, best).code == 6);

    ClassifierCfg att = cfg2({1, 1, 1}, 5, {2, 2, 2}, 6, ClassifierMode::FullyAttentive, 1);
    CHECK(!classify_node({1, 1, 1}, att).passThrough);
    NodeOutput o = classify_node({1, 2, 0}, att);  // nearest distance 2 > threshold 1
    CHECK(o.passThrough);
    CHECK(o.pattern == std::vector<std::int64_t>{1, 2, 0});

    ClassifierCfg pre = cfg2({1, 1, 1}, 5, {2, 2, 2}, 6, ClassifierMode::Prefix);
    CHECK(classify_node({1, 9, 9}, pre).code == 5);   // unique prefix, tail ignored
    CHECK(classify_node({9, 9, 9}, pre).code == 5);   // ambiguous, nearest template
}

TEST_CASE("the forward program has the expected shape and typechecks") {
    HtmTree t = regular_tree();
    CompilationUnit unit = build_forward_program(t);
    TypedProgram tp = typecheck(unit);

    REQUIRE(tp.unit.main->kind == Program::Kind::WhileST);
    std::vector<std::string> names;
    const Program* p = tp.unit.main->a.get();
    while (p->kind == Program::Kind::HPar) {
        names.insert(names.begin(), p->b->module);
        p = p->a.get();
    }
    REQUIRE(p->kind == Program::Kind::Module);
    names.insert(names.begin(), p->module);
    CHECK(names == std::vector<std::string>{"N11", "N12", "N1", "N21", "N22", "N2", "N31",
                                            "N32", "N3", "N"});
}

TEST_CASE("the forward program runs the classifier cascade") {
    HtmTree t = regular_tree(4);
    CompilationUnit unit = build_forward_program(t);
    std::vector<std::string> leaves = leaf_codes(t.root);
    REQUIRE(leaves.size() == 6);

    // round 1: every leaf sees its first template; round 2: the second;
    // round 3: a noisy first template
    std::vector<std::vector<std::vector<std::int64_t>>> rounds;
    rounds.push_back(std::vector<std::vector<std::int64_t>>(6, {1, 1, 1}));
    rounds.push_back(std::vector<std::vector<std::int64_t>>(6, {2, 2, 2}));
    rounds.push_back(std::vector<std::vector<std::int64_t>>(6, {1, 2, 1}));

    std::vector<std::int64_t> expected;
    for (const auto& round : rounds) {
        std::map<std::string, std::vector<std::int64_t>> pat;
        for (std::size_t j = 0; j < 6; ++j) pat[leaves[j]] = round[j];
        expected.push_back(cascade_tag(t.root, pat));
    }
    CHECK(expected == std::vector<std::int64_t>{9, 3, 9});

    RunResult r = run_rounds(t, unit, rounds);
    CHECK(r.diagnostics.empty());
    CHECK(seam_check(r.scenario).empty());
    const SimpleValue& bus = final_bus(r);
    CHECK(root_outputs(t, bus, 3) == expected);

    // exactly three patterns per leaf were consumed: the data region is
    // all sentinels afterwards
    BusLayout L = bus_layout(t);
    for (std::size_t i = L.dataBase; i < L.total; ++i)
        CHECK(bus.kids[i] == sv_int(-1));
}

TEST_CASE("zero rounds and full-capacity rounds") {
    HtmTree t = regular_tree(3);
    CompilationUnit unit = build_forward_program(t);

    RunResult r0 = run_rounds(t, unit, {});
    CHECK(r0.east.empty());
    REQUIRE(!r0.diagnostics.empty());  // the untouched bus is reported

    std::vector<std::vector<std::vector<std::int64_t>>> rounds(
        3, std::vector<std::vector<std::int64_t>>(6, {1, 1, 1}));
    RunResult r3 = run_rounds(t, unit, rounds);
    CHECK(root_outputs(t, final_bus(r3), 3) ==
          std::vector<std::int64_t>{9, 9, 9});

    CHECK_THROWS_AS(
        encode_input(t, std::vector<std::vector<std::vector<std::int64_t>>>(
                            4, std::vector<std::vector<std::int64_t>>(6, {1, 1, 1}))),
        HtmError);
}

TEST_CASE("generated programs typecheck and match the cascade oracle on random trees") {
    std::mt19937_64 rng(20260823);
    int ran = 0;
    for (int i = 0; i < 40; ++i) {
        HtmTree t = random_tree(rng);
        CompilationUnit unit = build_forward_program(t);
        TypedProgram tp = typecheck(unit);
        CHECK(tp.unit.main->kind == Program::Kind::WhileST);
        if (i % 2) continue;  // run every other tree

        std::vector<std::string> leaves = leaf_codes(t.root);
        BusLayout L = bus_layout(t);
        std::vector<std::vector<std::vector<std::int64_t>>> rounds;
        std::vector<std::int64_t> expected;
        for (int round = 0; round < 2; ++round) {
            std::vector<std::vector<std::int64_t>> pats;
            std::map<std::string, std::vector<std::int64_t>> byLeaf;
            for (const std::string& code : leaves) {
                std::vector<std::int64_t> p;
                for (std::size_t j = 0; j < L.payload.at(code); ++j)
                    p.push_back(std::int64_t(rng() % 5));
                byLeaf[code] = p;
                pats.push_back(std::move(p));
            }
            rounds.push_back(std::move(pats));
            expected.push_back(cascade_tag(t.root, byLeaf));
        }
        RunResult r = run_rounds(t, unit, rounds);
        CHECK(seam_check(r.scenario).empty());
        CHECK(root_outputs(t, final_bus(r), 2) == expected);
        ++ran;
    }
    CHECK(ran == 20);
}

TEST_CASE("feedback resolves a passed-through leaf") {
    HtmTree t = regular_tree(4);
    // leaf 11 refuses patterns that are not near a template
    t.root.children[0].children[0].classifier.mode = ClassifierMode::FullyAttentive;
    t.root.children[0].children[0].classifier.threshold = 0;

    CompilationUnit unit = build_feedback_program(t);
    std::vector<std::vector<std::vector<std::int64_t>>> rounds;
    rounds.push_back({{1, 2, 2}, {1, 1, 1}, {1, 1, 1}, {1, 1, 1}, {1, 1, 1}, {1, 1, 1}});

    RunResult r = run_rounds(t, unit, rounds);
    CHECK(r.diagnostics.empty());
    CHECK(seam_check(r.scenario).empty());
    const SimpleValue& bus = final_bus(r);

    // the parent classified [1,2,2] with the leaf's templates: nearest is
    // [2,2,2] (code 6); node 1 then sees [6,5] (tie -> 7); the root sees
    // [7,7,7] -> 9
    CHECK(root_outputs(t, bus, 1) == std::vector<std::int64_t>{9});
    BusLayout L = bus_layout(t);
    CHECK(bus.kids[L.tag_pos("11") - 1] == sv_int(6));  // resolution accepted
    CHECK(bus.kids[L.res_pos("11") - 1] == sv_int(-9));  // and cleared
}

TEST_CASE("feedback degenerates when nothing passes through") {
    HtmTree t = regular_tree(4);
    std::vector<std::vector<std::vector<std::int64_t>>> rounds(
        2, std::vector<std::vector<std::int64_t>>(6, {2, 2, 2}));
    RunResult fwd = run_rounds(t, build_forward_program(t), rounds);
    RunResult fb = run_rounds(t, build_feedback_program(t), rounds);
    CHECK(root_outputs(t, final_bus(fwd), 2) == root_outputs(t, final_bus(fb), 2));
}

TEST_CASE("single-node feedback is the forward chain plus one diagonal layer") {
    HtmTree t;
    t.capacity = 2;
    t.root.classifier = cfg2({1, 2}, 4, {3, 4}, 5);
    CompilationUnit fwd = build_forward_program(t);
    CompilationUnit fb = build_feedback_program(t);
    REQUIRE(fb.main->kind == Program::Kind::WhileST);
    REQUIRE(fb.main->a->kind == Program::Kind::DComp);
    CHECK(program_equal(fb.main->a->a, fwd.main->a));
    REQUIRE(fb.main->a->b->kind == Program::Kind::Module);
    CHECK(fb.main->a->b->module == "F");
}

TEST_CASE("tree description text parses and validates") {
    const char* text = R"(
# a three-node network
capacity 5;
node nil {
  mode best;
  template 7 8 -> 9;
  template 8 7 -> 3;
}
node 1 { mode prefix; template 1 1 -> 7; template 2 2 -> 8; }
node 2 { mode attentive; threshold 1; template 1 2 3 -> 7; template 3 2 1 -> 8; }
)";
    HtmTree t = parse_tree_text(text, "demo.tree");
    CHECK(t.capacity == 5);
    CHECK(tree_linearize(t) == std::vector<std::string>{"1", "2", "nil"});
    CHECK(t.root.children[0].classifier.mode == ClassifierMode::Prefix);
    CHECK(t.root.children[1].classifier.threshold == 1);
    CHECK(t.root.children[1].classifier.templates[1] ==
          std::vector<std::int64_t>{3, 2, 1});
    CHECK(typecheck(build_forward_program(t)).unit.main->kind == Program::Kind::WhileST);

    CHECK_THROWS_AS(parse_tree_text("node 1 { template 1 -> 2; }", "t.tree"), HtmError);
    CHECK_THROWS_AS(
        parse_tree_text("node nil { template 1 -> 2; }\nnode 21 { template 1 -> 2; }",
                        "t.tree"),
        HtmError);
    CHECK_THROWS_AS(parse_tree_text("node nil { mode ? }", "t.tree"), SyntaxError);
    // the root has one child, so its templates must have length 1
    CHECK_THROWS_AS(
        parse_tree_text("node nil { template 1 2 -> 2; }\nnode 1 { template 1 -> 2; }",
                        "t.tree"),
        HtmError);
    CHECK_THROWS_AS(
        parse_tree_text("node nil { template 1 -> 2; template 1 -> 3; }", "t.tree"),
        HtmError);
}
