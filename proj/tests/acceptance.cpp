// Acceptance runner: executes every release criterion end-to-end and prints
// one pass/fail line per criterion. Exit code is the number of failures.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "agapia/htm.hpp"
#include "agapia/interp.hpp"
#include "agapia_corpus.h"
#include "agapia_generators.h"

using namespace agapia;
using agapia_tests::AstGen;

namespace {

struct Check {
    std::vector<std::string> problems;

    void expect(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }

    template <typename T>
    void expect_eq(const T& got, const T& want, const std::string& what) {
        if (!(got == want)) {
            std::ostringstream os;
            os << what << " (got " << got << ", want " << want << ")";
            problems.push_back(os.str());
        }
    }
};

TypedProgram compile(const std::string& src) {
    return typecheck(parse_unit(src, "acceptance.agapia"));
}

RunInput input_n(const std::string& north) {
    RunInput in;
    in.north = parse_interface_value(north, World::Spatial);
    return in;
}

// A grid cell border that should hold exactly one small integer.
std::int64_t one_int(const InterfaceValue& v) {
    if (v.items.size() == 1 && v.items[0].kind == SimpleValue::Kind::Int)
        return v.items[0].i;
    return INT64_MIN;
}

const char* kExtraModules = R"(
module C{listen nil;}{read c:sn;}{c = c+1;}{speak nil;}{write c;}
module P{listen nil;}{read p:sn;}{p = p-1;}{speak nil;}{write p;}
module D{listen nil;}{read c:sn;}{null;}{speak nil;}{write c;}
)";

std::string pool_modules() {
    return std::string(agapia_tests::kPerfectModules) + kExtraModules;
}

// ---------------------------------------------------------------------------
// 1. Golden scenario reproduction: the two published perfect-number runs,
//    exact integer equality on every annotated border, under one second.

void criterion1(Check& c) {
    auto t0 = std::chrono::steady_clock::now();

    TypedProgram tp = compile(agapia_tests::perfect1_source());
    RunResult a = run(tp, input_n("6;nil;nil"));
    const Scenario& sa = a.scenario;
    c.expect(sa.rows == 4 && sa.cols == 3, "n=6 grid is not 4x3");
    if (sa.rows == 4 && sa.cols == 3) {
        const std::int64_t xs[] = {6, 3, 2, 1};
        const std::int64_t txs[] = {6, 3, 2, 1};
        const std::int64_t zs[] = {6, 3, 1, 0};
        for (int i = 0; i < 4; ++i) {
            c.expect_eq(one_int(sa.cells[i][0].north), xs[i],
                        "n=6 row " + std::to_string(i) + " x");
            c.expect_eq(one_int(sa.cells[i][0].east), txs[i],
                        "n=6 row " + std::to_string(i) + " tx");
            c.expect_eq(one_int(sa.cells[i][2].south), zs[i],
                        "n=6 row " + std::to_string(i) + " z");
        }
        c.expect_eq(one_int(sa.cells[3][0].south), std::int64_t{0}, "n=6 final x");
    }
    c.expect_eq(to_string(a.south), std::string("0;6;0"), "n=6 bottom border");

    RunResult b = run(tp, input_n("5;nil;nil"));
    const Scenario& sb = b.scenario;
    c.expect(sb.rows == 3 && sb.cols == 3, "n=5 grid is not 3x3");
    if (sb.rows == 3 && sb.cols == 3) {
        const std::int64_t xs[] = {5, 2, 1};
        const std::int64_t vws[] = {5, 2, 1};  // west of the middle column
        const std::int64_t wws[] = {5, 0, 1};  // west of the right column
        for (int i = 0; i < 3; ++i) {
            c.expect_eq(one_int(sb.cells[i][0].north), xs[i],
                        "n=5 row " + std::to_string(i) + " x");
            c.expect_eq(one_int(sb.cells[i][1].west), vws[i],
                        "n=5 row " + std::to_string(i) + " tx into V/Y");
            c.expect_eq(one_int(sb.cells[i][2].west), wws[i],
                        "n=5 row " + std::to_string(i) + " tx into W/Z");
        }
        c.expect_eq(one_int(sb.cells[2][0].south), std::int64_t{0}, "n=5 final x");
        c.expect_eq(one_int(sb.cells[2][1].south), std::int64_t{4}, "n=5 final y");
        c.expect_eq(one_int(sb.cells[2][2].south), std::int64_t{4}, "n=5 final z");
    }

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(secs < 1.0, "took " + std::to_string(secs) + " s (budget 1 s)");
}

// ---------------------------------------------------------------------------
// 2. Program-type reproduction.

void criterion2(Check& c) {
    c.expect_eq(to_string(compile(agapia_tests::perfect1_source()).root.type),
                std::string("⟨nil | sn;nil;nil | nil | sn;sn;sn⟩"), "Perfect1 type");
    c.expect_eq(to_string(compile(agapia_tests::perfect2_source()).root.type),
                std::string("⟨nil | sn;nil;nil | nil | nil;nil;sn⟩"), "Perfect2 type");
}

// ---------------------------------------------------------------------------
// 3. Oracle equivalence over n = 1..200 against a brute-force divisor sum.

void criterion3(Check& c) {
    auto t0 = std::chrono::steady_clock::now();
    TypedProgram p1 = compile(agapia_tests::perfect1_source());
    TypedProgram p2 = compile(agapia_tests::perfect2_source());
    for (std::int64_t n = 1; n <= 200; ++n) {
        std::int64_t sum = 0;
        for (std::int64_t d = 1; d < n; ++d)
            if (n % d == 0) sum += d;
        std::int64_t want = n - sum;
        for (const TypedProgram* tp : {&p1, &p2}) {
            RunResult r = run(*tp, input_n(std::to_string(n) + ";nil;nil"));
            std::int64_t z = r.south.items.size() == 3 ? one_int(iv(World::Spatial, {r.south.items[2]}))
                                                       : INT64_MIN;
            if (z != want) {
                c.expect(false, "n=" + std::to_string(n) + ": z=" + std::to_string(z) +
                                    ", oracle " + std::to_string(want));
                return;
            }
            bool perfect = n == 6 || n == 28 || n == 496;
            c.expect((z == 0) == perfect, "n=" + std::to_string(n) + " perfectness");
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(secs < 10.0, "took " + std::to_string(secs) + " s (budget 10 s)");
}

// ---------------------------------------------------------------------------
// 4. Algebraic laws of the scenario compositions, 500 generated cases each.

void criterion4(Check& c) {
    using namespace agapia_tests;
    std::mt19937_64 rng(41);
    for (int t = 0; t < 500; ++t) {
        Scenario a = rand_scenario(rng, dim(rng), dim(rng));
        Scenario b = chained_h(rng, a.east_rows(), dim(rng));
        Scenario d = chained_h(rng, b.east_rows(), dim(rng));
        c.expect(scenario_equal(hcomp(hcomp(a, b), d), hcomp(a, hcomp(b, d))),
                 "hcomp associativity, case " + std::to_string(t));
        c.expect(scenario_equal(hcomp(a, identity_h(a.east_rows())), a) &&
                     scenario_equal(hcomp(identity_h(a.west_rows()), a), a),
                 "hcomp identities, case " + std::to_string(t));
        if (!c.problems.empty()) return;
    }
    std::mt19937_64 rng2(42);
    for (int t = 0; t < 500; ++t) {
        Scenario a = rand_scenario(rng2, dim(rng2), dim(rng2));
        Scenario b = chained_v(rng2, a.south_cols(), dim(rng2));
        Scenario d = chained_v(rng2, b.south_cols(), dim(rng2));
        c.expect(scenario_equal(vcomp(vcomp(a, b), d), vcomp(a, vcomp(b, d))),
                 "vcomp associativity, case " + std::to_string(t));
        c.expect(scenario_equal(vcomp(a, identity_v(a.south_cols())), a) &&
                     scenario_equal(vcomp(identity_v(a.north_cols()), a), a),
                 "vcomp identities, case " + std::to_string(t));
        if (!c.problems.empty()) return;
    }
    std::mt19937_64 rng3(43);
    for (int t = 0; t < 500; ++t) {
        Scenario a = rand_scenario(rng3, dim(rng3), dim(rng3));
        Scenario b = chained_d(rng3, a, dim(rng3), dim(rng3));
        Scenario d = chained_d(rng3, b, dim(rng3), dim(rng3));
        c.expect(scenario_equal(dcomp(a, b), dcomp_expansion(a, b)),
                 "dcomp expansion, case " + std::to_string(t));
        c.expect(border_equivalent(dcomp(dcomp(a, b), d), dcomp(a, dcomp(b, d))),
                 "dcomp associativity, case " + std::to_string(t));
        c.expect(border_equivalent(dcomp(a, identity_d(a)), a),
                 "dcomp identity, case " + std::to_string(t));
        if (!c.problems.empty()) return;
    }
}

// ---------------------------------------------------------------------------
// 5. Semantics soundness: 200 generated well-typed programs whose runs pass
//    the seam check and whose borders conform to the static type.

void criterion5(Check& c) {
    const std::vector<std::string> pool = {"X",  "Y",  "Z",  "U", "V", "W",
                                           "U1", "V1", "W1", "C", "P", "D"};
    std::mt19937_64 rng(7);
    auto rint = [&] { return std::int64_t(1 + rng() % 9); };
    auto pick = [&](std::size_t n) { return rng() % n; };
    std::function<std::string(int)> gen = [&](int depth) -> std::string {
        if (depth == 0 || pick(3) == 0) return pool[pick(pool.size())];
        const char* ops[] = {"%", "#", "$"};
        return "(" + gen(depth - 1) + " " + ops[pick(3)] + " " + gen(depth - 1) + ")";
    };

    int ok = 0, attempts = 0;
    while (ok < 200 && attempts < 20000) {
        ++attempts;
        std::string expr = gen(2);
        TypedProgram tp;
        try {
            tp = compile(pool_modules() + expr + "\n");
        } catch (const TypeError&) {
            continue;
        }
        RunInput in;
        for (std::size_t i = 0; i < tp.root.type.w.groups.size(); ++i)
            in.west.push_back(iv(World::Temporal, {sv_int(rint())}));
        for (const Group& g : tp.root.type.n.groups)
            in.north.items.push_back(
                g.kind == Group::Kind::Simple && g.simple.kind == SimpleType::Kind::Nil
                    ? sv_nil()
                    : sv_int(rint()));
        in.north.world = World::Spatial;
        try {
            RunResult r = run(tp, in);
            c.expect(seam_check(r.scenario).empty(), expr + ": seam violation");
            c.expect(match(type_of_value(r.south), tp.root.type.s),
                     expr + ": south outside static type");
            std::vector<SimpleValue> east;
            for (const InterfaceValue& v : r.east)
                for (const SimpleValue& s : drop_nil_items(v.items)) east.push_back(s);
            c.expect(match(type_of_value(iv(World::Temporal, east)), tp.root.type.e),
                     expr + ": east outside static type");
            if (!c.problems.empty()) return;
            ++ok;
        } catch (const ArithmeticError&) {
        }
    }
    c.expect(ok >= 200, "only " + std::to_string(ok) + " of 200 sound runs");
}

// ---------------------------------------------------------------------------
// 6. while_t equals its explicit unrolling for k in {0,1,2,5}.

void criterion6(Check& c) {
    for (int k : {0, 1, 2, 5}) {
        TypedProgram loop =
            compile(pool_modules() + "while_t(c < " + std::to_string(k) + "){C}\n");
        RunResult rl = run(loop, input_n("0"));
        c.expect(rl.diagnostics.empty(), "k=" + std::to_string(k) + ": diagnostics");

        Scenario expected;
        if (k == 0) {
            expected = identity_v({parse_interface_value("0", World::Spatial)});
        } else {
            std::string chain = "C";
            for (int i = 1; i < k; ++i) chain += " % C";
            expected = run(compile(pool_modules() + chain + "\n"), input_n("0")).scenario;
        }
        c.expect(scenario_equal(rl.scenario, expected),
                 "k=" + std::to_string(k) + ": scenario differs from the unrolling");
        c.expect(rl.south.items.size() == 1 && rl.south.items[0] == sv_int(k),
                 "k=" + std::to_string(k) + ": wrong final counter");
    }
}

// ---------------------------------------------------------------------------
// 7. HTM linearization and the forward-flow cascade.

ClassifierCfg cfg2(std::vector<std::int64_t> t1, std::int64_t n1,
                   std::vector<std::int64_t> t2, std::int64_t n2) {
    ClassifierCfg cfg;
    cfg.templates = {std::move(t1), std::move(t2)};
    cfg.names = {n1, n2};
    return cfg;
}

HtmTree regular_tree() {
    HtmTree t;
    t.capacity = 4;
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

// Host-side oracle for one forward round: classify leaves on their input
// patterns, then every parent on its children's codes.
std::int64_t cascade_tag(const HtmNode& n,
                         const std::map<std::string, std::vector<std::int64_t>>& leafPat) {
    std::vector<std::int64_t> pat;
    if (n.children.empty()) {
        pat = leafPat.at(n.code);
    } else {
        for (const HtmNode& ch : n.children) pat.push_back(cascade_tag(ch, leafPat));
    }
    NodeOutput o = classify_node(pat, n.classifier);
    return o.passThrough ? -3 : o.code;
}

void criterion7(Check& c) {
    HtmTree t = regular_tree();
    std::vector<std::string> want = {"11", "12", "1",  "21", "22",
                                     "2",  "31", "32", "3",  "nil"};
    c.expect(tree_linearize(t) == want, "linearization order");

    TypedProgram tp;
    try {
        tp = typecheck(build_forward_program(t));
    } catch (const AgapiaError& e) {
        c.expect(false, std::string("forward program rejected: ") + e.what());
        return;
    }

    // three rounds, each leaf fed one of its own templates
    std::vector<std::vector<std::vector<std::int64_t>>> rounds = {
        std::vector<std::vector<std::int64_t>>(6, {1, 1, 1}),
        std::vector<std::vector<std::int64_t>>(6, {2, 2, 2}),
        std::vector<std::vector<std::int64_t>>(6, {1, 1, 1})};
    std::vector<std::int64_t> want_out;
    for (const auto& round : rounds) {
        std::map<std::string, std::vector<std::int64_t>> leafPat;
        std::size_t i = 0;
        for (const std::string& code : {"11", "12", "21", "22", "31", "32"})
            leafPat[code] = round[i++];
        want_out.push_back(cascade_tag(t.root, leafPat));
    }

    std::vector<SimpleValue> kids;
    for (std::int64_t v : encode_input(t, rounds)) kids.push_back(sv_int(v));
    RunInput in;
    in.west.push_back(iv(World::Temporal, {sv_star(std::move(kids))}));
    RunResult r = run(tp, in);
    if (r.east.size() != 1 || r.east[0].items.size() != 1 ||
        r.east[0].items[0].kind != SimpleValue::Kind::Star) {
        c.expect(false, "forward run did not return the bus");
        return;
    }
    std::vector<std::int64_t> got = root_outputs(t, r.east[0].items[0], 3);
    c.expect(got == want_out, "root outputs differ from the cascade oracle");
}

// ---------------------------------------------------------------------------
// 8. parse ∘ print identity on 1000 generated ASTs.

void criterion8(Check& c) {
    AstGen gen(0xacce97);
    for (int it = 0; it < 1000; ++it) {
        CompilationUnit u = gen.rand_unit();
        std::string printed = print_unit(u);
        CompilationUnit u2 = parse_unit(printed, "generated.agapia");
        c.expect(unit_equal(u, u2), "AST mismatch, case " + std::to_string(it));
        c.expect(print_unit(u2) == printed, "unstable print, case " + std::to_string(it));
        if (!c.problems.empty()) return;
    }
}

}  // namespace

int main() {
    struct Criterion {
        const char* title;
        void (*body)(Check&);
    };
    const Criterion criteria[] = {
        {"golden scenario reproduction (perfect-number runs)", criterion1},
        {"program-type reproduction", criterion2},
        {"divisor-sum oracle equivalence, n = 1..200", criterion3},
        {"scenario composition laws, 500 cases each", criterion4},
        {"semantics soundness on 200 generated programs", criterion5},
        {"while_t unrolling, k in {0,1,2,5}", criterion6},
        {"tree linearization and forward cascade", criterion7},
        {"parse/print identity on 1000 generated ASTs", criterion8},
    };

    int failures = 0;
    int id = 0;
    for (const Criterion& cr : criteria) {
        ++id;
        Check c;
        try {
            cr.body(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        if (c.problems.empty()) {
            std::cout << "criterion " << id << ": pass — " << cr.title << "\n";
        } else {
            ++failures;
            std::cout << "criterion " << id << ": FAIL — " << cr.title << ": "
                      << c.problems.front() << "\n";
        }
    }
    return failures;
}
