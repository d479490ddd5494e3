#pragma once

// Command-line front door. The command logic lives in cli_main so tests can
// drive it in-process; the binary is a thin wrapper.
//
// Subcommands:
//   typecheck FILE
//   run FILE [--north LIT] [--west LIT ...] [--format text|structured]
//            [--step-budget N] [--round-cap N]
//   htm-gen TREE -o FILE [--feedback]
//   examples (list|run-all) [--dir D]
//
// Exit codes: 0 success, 1 diagnostics (parse/type/runtime errors or
// unconsumed-input reports), 2 divergence cap, 3 I/O.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "agapia/interp.hpp"

namespace agapia {

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Deterministic grid rendering with per-cell border annotations.
std::string render_text(const RunResult& r);

// Machine-readable rendering; border values are literals accepted by
// parse_interface_value, so the output re-parses losslessly.
nlohmann::json render_structured(const RunResult& r);

}  // namespace agapia
