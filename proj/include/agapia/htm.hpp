#pragma once

// Generators for hierarchical classifier networks (HTM-style trees) as
// Agapia programs, plus the host-side classifier procedures they embody.
//
// A tree of classifier nodes is flattened left-right-root; each node becomes
// one module, and the per-round processing is one horizontal chain wrapped in
// a diagonal while loop. All data rides a single temporal star value (the
// "bus") relayed through the chain and wrapped to the next round:
//
//   bus = [ out_1..out_R | work slots | data, capacity R rounds ]
//
// out_*   root-output shift register (most recent first),
// work    per-node slot [tag, res, payload...]; tag is the class code, -3
//         marks a passed-through pattern, res carries a parent's resolution
//         (-9 when absent),
// data    the pending leaf inputs, one round = one pattern per leaf in
//         flattening order, padded with the sentinel -1.
//
// Selector indices in module code are constants, so the data region is
// bounded by a per-tree round capacity R and the root statically unrolls the
// one-round shift.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "agapia/iface.hpp"
#include "agapia/lang.hpp"

namespace agapia {

struct HtmError : AgapiaError {
    using AgapiaError::AgapiaError;
};

enum class ClassifierMode { BestFull, Prefix, FullyAttentive };

struct ClassifierCfg {
    std::vector<std::vector<std::int64_t>> templates;  // equal-length, distinct
    std::vector<std::int64_t> names;                   // class codes, one per template
    ClassifierMode mode = ClassifierMode::BestFull;
    std::int64_t threshold = 0;                        // FullyAttentive distance bound
};

struct HtmNode {
    std::string code;               // digit string; "" at the root
    std::vector<HtmNode> children;  // ordered; child code = code + one digit
    ClassifierCfg classifier;
};

struct HtmTree {
    HtmNode root;
    std::size_t capacity = 8;  // max rounds a generated bus can carry
};

// Throws HtmError when the labeling rule, classifier shapes, or capacity are
// violated (inner-node template length must equal the child count; template
// entries and class codes must be nonnegative).
void validate_tree(const HtmTree& t);

// Left-right-root flattening; the root contributes "nil".
std::vector<std::string> tree_linearize(const HtmTree& t);

struct MatchResult {
    std::size_t index = 0;  // 1-based template index
    std::int64_t distance = 0;
};

// Hamming distance over equal-length sequences; ties go to the lowest index.
MatchResult best_match(const std::vector<std::int64_t>& pattern, const ClassifierCfg& cfg);

struct PrefixResult {
    bool decided = false;
    std::size_t index = 0;     // 1-based, when decided
    std::size_t position = 0;  // deciding position, or the failure position
};

// Left-to-right survivor scan: decides at the first position where exactly
// one template agrees with the prefix; several full-length survivors fall
// back to best_match; zero survivors at position j is ambiguous(j).
PrefixResult prefix_match(const std::vector<std::int64_t>& pattern, const ClassifierCfg& cfg);

struct NodeOutput {
    bool passThrough = false;
    std::int64_t code = 0;                  // when !passThrough
    std::vector<std::int64_t> pattern;      // when passThrough
};

NodeOutput classify_node(const std::vector<std::int64_t>& pattern, const ClassifierCfg& cfg);

// Static bus layout of a tree (1-based positions inside the bus star).
struct BusLayout {
    std::size_t capacity = 0;   // R
    std::size_t outBase = 0;    // out[i] at outBase + i
    std::size_t workBase = 0;
    std::size_t dataBase = 0;
    std::size_t stride = 0;     // pattern digits per round over all leaves
    std::size_t total = 0;      // full bus length
    std::map<std::string, std::size_t> slot;     // node code ("" root) -> slot base
    std::map<std::string, std::size_t> payload;  // node code -> payload width
    std::map<std::string, std::size_t> leafOff;  // leaf code -> data offset in a round

    std::size_t tag_pos(const std::string& code) const { return slot.at(code) + 1; }
    std::size_t res_pos(const std::string& code) const { return slot.at(code) + 2; }
    std::size_t payload_pos(const std::string& code, std::size_t i) const {
        return slot.at(code) + 2 + i;  // i is 1-based
    }
};

BusLayout bus_layout(const HtmTree& t);

// Program text of the generated programs (module definitions plus the main
// while_st expression); build_* parse it into an AST.
std::string generate_forward_source(const HtmTree& t);
std::string generate_feedback_source(const HtmTree& t);

CompilationUnit build_forward_program(const HtmTree& t);
CompilationUnit build_feedback_program(const HtmTree& t);

// Packs per-round leaf patterns (rounds[r] in flattening order of leaves)
// into a full-length bus vector: zeroed out/work regions, data padded with
// the -1 sentinel. Throws HtmError when rounds exceed the capacity or a
// pattern has the wrong length.
std::vector<std::int64_t> encode_input(
    const HtmTree& t,
    const std::vector<std::vector<std::vector<std::int64_t>>>& rounds);

// Chronological root outputs recovered from a final bus value after k rounds.
std::vector<std::int64_t> root_outputs(const HtmTree& t, const SimpleValue& bus,
                                       std::size_t k);

// Tree description text:
//   capacity 4;
//   node nil { mode best; template 1 2 3 -> 7; ... }
//   node 1 { mode attentive; threshold 1; template ... -> ...; }
// Modes: best | prefix | attentive. Node codes are digit strings, "nil" for
// the root. Parse errors are SyntaxError with file positions.
HtmTree parse_tree_text(const std::string& text, const std::string& file);

}  // namespace agapia
