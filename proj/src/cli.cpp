#include <algorithm>
#include <array>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "agapia/cli.hpp"
#include "agapia/htm.hpp"

namespace agapia {
namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write " + path);
    out << text;
    if (!out) throw std::ios_base::failure("cannot write " + path);
}

RunInput parse_inputs(const std::string& north, const std::vector<std::string>& west) {
    RunInput in;
    in.north = parse_interface_value(north, World::Spatial);
    for (const std::string& w : west)
        in.west.push_back(parse_interface_value(w, World::Temporal));
    return in;
}

// ---------------------------------------------------------------------------
// Rendering

std::string pad(const std::string& s, std::size_t w) {
    return s + std::string(w - s.size(), ' ');
}

}  // namespace

std::string render_text(const RunResult& r) {
    std::ostringstream out;
    const Scenario& sc = r.scenario;
    if (sc.empty()) {
        out << "(empty scenario)\n";
    } else {
        // three annotation lines per cell row: north, west/label/east, south
        std::vector<std::vector<std::array<std::string, 3>>> text(sc.rows);
        std::vector<std::size_t> width(sc.cols, 0);
        for (std::size_t i = 0; i < sc.rows; ++i) {
            for (std::size_t j = 0; j < sc.cols; ++j) {
                const Cell& c = sc.cells[i][j];
                std::array<std::string, 3> lines = {
                    "n " + to_string(c.north),
                    "w " + to_string(c.west) + "  [" + c.label + "]  e " +
                        to_string(c.east),
                    "s " + to_string(c.south)};
                for (const std::string& s : lines) width[j] = std::max(width[j], s.size());
                text[i].push_back(std::move(lines));
            }
        }
        for (std::size_t i = 0; i < sc.rows; ++i) {
            for (int line = 0; line < 3; ++line) {
                for (std::size_t j = 0; j < sc.cols; ++j)
                    out << (j ? " | " : "") << pad(text[i][j][line], width[j]);
                out << "\n";
            }
            if (i + 1 < sc.rows) {
                std::size_t total = 0;
                for (std::size_t j = 0; j < sc.cols; ++j)
                    total += width[j] + (j ? 3 : 0);
                out << std::string(total, '-') << "\n";
            }
        }
    }
    out << "east:";
    for (const InterfaceValue& v : r.east) out << " " << to_string(v);
    out << "\nsouth: " << to_string(r.south) << "\n";
    for (const std::string& d : r.diagnostics) out << "diagnostic: " << d << "\n";
    return out.str();
}

nlohmann::json render_structured(const RunResult& r) {
    json cells = json::array();
    for (std::size_t i = 0; i < r.scenario.rows; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < r.scenario.cols; ++j) {
            const Cell& c = r.scenario.cells[i][j];
            row.push_back({{"label", c.label},
                           {"routing", c.routing},
                           {"west", to_string(c.west)},
                           {"north", to_string(c.north)},
                           {"east", to_string(c.east)},
                           {"south", to_string(c.south)}});
        }
        cells.push_back(std::move(row));
    }
    json east = json::array();
    for (const InterfaceValue& v : r.east) east.push_back(to_string(v));
    return {{"rows", r.scenario.rows},
            {"cols", r.scenario.cols},
            {"cells", std::move(cells)},
            {"east", std::move(east)},
            {"south", to_string(r.south)},
            {"diagnostics", r.diagnostics}};
}

namespace {

// ---------------------------------------------------------------------------
// Commands

int cmd_typecheck(const std::string& file, std::ostream& out, std::ostream& err) {
    std::string src;
    try {
        src = read_file(file);
    } catch (const std::ios_base::failure& e) {
        err << e.what() << "\n";
        return 3;
    }
    try {
        TypedProgram tp = typecheck(parse_unit(src, file));
        out << to_string(tp.root.type) << "\n";
        return 0;
    } catch (const AgapiaError& e) {
        err << e.what() << "\n";
        return 1;
    }
}

struct RunOpts {
    std::string north = "nil";
    std::vector<std::string> west;
    std::string format = "text";
    std::size_t stepBudget = 1'000'000;
    std::size_t roundCap = 100'000;
};

int cmd_run(const std::string& file, const RunOpts& o, std::ostream& out,
            std::ostream& err) {
    std::string src;
    try {
        src = read_file(file);
    } catch (const std::ios_base::failure& e) {
        err << e.what() << "\n";
        return 3;
    }
    try {
        TypedProgram tp = typecheck(parse_unit(src, file));
        ExecLimits limits;
        limits.stepBudget = o.stepBudget;
        limits.roundCap = o.roundCap;
        RunResult r = run(tp, parse_inputs(o.north, o.west), limits);
        if (o.format == "structured") {
            json j = render_structured(r);
            j["type"] = to_string(tp.root.type);
            out << j.dump(2) << "\n";
        } else {
            out << "type: " << to_string(tp.root.type) << "\n" << render_text(r);
        }
        return r.diagnostics.empty() ? 0 : 1;
    } catch (const DivergenceError& e) {
        err << "divergence: " << e.what() << "\n";
        return 2;
    } catch (const AgapiaError& e) {
        err << e.what() << "\n";
        return 1;
    }
}

int cmd_htm_gen(const std::string& treefile, const std::string& outfile, bool feedback,
                std::ostream& out, std::ostream& err) {
    std::string text;
    try {
        text = read_file(treefile);
    } catch (const std::ios_base::failure& e) {
        err << e.what() << "\n";
        return 3;
    }
    try {
        HtmTree tree = parse_tree_text(text, treefile);
        std::string src =
            feedback ? generate_feedback_source(tree) : generate_forward_source(tree);
        typecheck(parse_unit(src, outfile));  // never ship a broken program
        write_file(outfile, src);
        out << "wrote " << outfile << "\n";
        return 0;
    } catch (const std::ios_base::failure& e) {
        err << e.what() << "\n";
        return 3;
    } catch (const AgapiaError& e) {
        err << e.what() << "\n";
        return 1;
    }
}

int cmd_examples(const std::string& action, const std::string& dir, std::ostream& out,
                 std::ostream& err) {
    json manifest;
    try {
        manifest = json::parse(read_file(dir + "/manifest.json"));
    } catch (const std::ios_base::failure& e) {
        err << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        err << dir << "/manifest.json: " << e.what() << "\n";
        return 3;
    }

    if (action == "list") {
        for (const json& ex : manifest.at("examples"))
            out << ex.at("name").get<std::string>() << "\n";
        return 0;
    }

    int failures = 0;
    for (const json& ex : manifest.at("examples")) {
        std::string name = ex.at("name").get<std::string>();
        std::string program = dir + "/" + ex.at("program").get<std::string>();
        for (const json& rc : ex.at("runs")) {
            std::string caseName = rc.at("case").get<std::string>();
            std::string label = name + "/" + caseName;
            try {
                TypedProgram tp = typecheck(parse_unit(read_file(program), program));
                RunOpts o;
                if (rc.contains("north")) o.north = rc.at("north").get<std::string>();
                if (rc.contains("west"))
                    for (const json& w : rc.at("west"))
                        o.west.push_back(w.get<std::string>());
                RunResult r = run(tp, parse_inputs(o.north, o.west));
                json got = render_structured(r);
                got["type"] = to_string(tp.root.type);
                json want =
                    json::parse(read_file(dir + "/" + rc.at("golden").get<std::string>()));
                if (got == want) {
                    out << "PASS " << label << "\n";
                } else {
                    ++failures;
                    out << "FAIL " << label << "\n";
                    err << label << " differs from golden:\n"
                        << json::diff(want, got).dump(2) << "\n";
                }
            } catch (const std::exception& e) {
                ++failures;
                out << "FAIL " << label << "\n";
                err << label << ": " << e.what() << "\n";
            }
        }
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Agapia v0.1 toolchain"};
    app.require_subcommand(1);

    std::string tcFile;
    CLI::App* tc = app.add_subcommand("typecheck", "print a program's four-sided type");
    tc->add_option("file", tcFile, "program file")->required();

    std::string runFile;
    RunOpts opts;
    CLI::App* rn = app.add_subcommand("run", "execute a program and render the scenario");
    rn->add_option("file", runFile, "program file")->required();
    rn->add_option("--north", opts.north, "spatial input literal");
    rn->add_option("--west", opts.west, "temporal input literal (repeatable)")
        ->allow_extra_args(false);  // keep [..] star literals as one value
    rn->add_option("--format", opts.format, "text | structured")
        ->check(CLI::IsMember({"text", "structured"}));
    rn->add_option("--step-budget", opts.stepBudget, "W statements per module run")
        ->check(CLI::PositiveNumber);
    rn->add_option("--round-cap", opts.roundCap, "while-combinator iteration cap")
        ->check(CLI::PositiveNumber);

    std::string treeFile, genOut;
    bool feedback = false;
    CLI::App* hg = app.add_subcommand("htm-gen", "generate a program from a tree file");
    hg->add_option("tree", treeFile, "tree description file")->required();
    hg->add_option("-o,--output", genOut, "output program file")->required();
    hg->add_flag("--feedback", feedback, "include the feedback phase");

    std::string action, dir = "programs";
    CLI::App* ex = app.add_subcommand("examples", "list or replay the shipped examples");
    ex->add_option("action", action, "list | run-all")
        ->required()
        ->check(CLI::IsMember({"list", "run-all"}));
    ex->add_option("--dir", dir, "examples directory");

    std::vector<const char*> argv = {"agapia"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, m;
        int code = app.exit(e, o, m);
        out << o.str();
        err << m.str();
        return code == 0 ? 0 : 1;
    }

    if (tc->parsed()) return cmd_typecheck(tcFile, out, err);
    if (rn->parsed()) return cmd_run(runFile, opts, out, err);
    if (hg->parsed()) return cmd_htm_gen(treeFile, genOut, feedback, out, err);
    return cmd_examples(action, dir, out, err);
}

}  // namespace agapia
