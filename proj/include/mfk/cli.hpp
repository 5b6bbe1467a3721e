#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mfk {

// One CLI invocation, already parsed from flags. Kept separate from the
// binary so tests can drive commands in process.
struct CliRequest {
    std::string command;
    std::string input_path;  // document file; empty for versal / examples
    std::string name;        // mf name (verify, shift, dual, knorrer, deform, ...)
    std::string source, target;          // ext
    std::string left, right;             // tensor / direct-sum
    std::string structure;               // structure name
    std::string target_structure;        // second structure (commutation on a pair)
    std::string morphism;                // commutation-check
    std::string kind;                    // structure-search: untwisted | twisted
    std::vector<std::string> new_vars;   // knorrer (2) / knorrer-squared (4)
    std::string mode = "plain";          // versal
    std::size_t rank_param = 1;          // versal
    std::string example;                 // examples --emit
    std::uint32_t max_degree = 12;
    std::uint32_t window = 2;
    std::uint32_t degree_bound = 6;      // structure-search degree; cok bound
    std::optional<std::uint64_t> budget;
    std::string format = "text";  // text | records
};

// Exit codes: 0 success, 1 mathematical invalidity, 2 usage or parse error,
// 3 budget exhaustion or non-stabilization.
int run_cli(const CliRequest& req, std::ostream& out, std::ostream& err);

// Built-in example documents (also shipped under data/).
std::vector<std::string> example_names();
std::string example_document(const std::string& name);

}  // namespace mfk
