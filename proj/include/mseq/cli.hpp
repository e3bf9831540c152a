#pragma once

// Batch command-line front end. Exit codes: 0 all checks passed, 1 a check
// failed, 2 usage or configuration error.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mseq/field.hpp"

namespace mseq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

enum class Format { csv, json };

struct RunConfig {
    unsigned q = 2;
    unsigned n = 0;
    unsigned n_max = 0;
    std::optional<std::string> modulus;
    std::string lambda = "1";
    Format format = Format::csv;
    std::optional<std::string> out;
    unsigned jobs = 1;
};

// Field for config.q / config.n with the optional modulus. Hex masks and
// expressions in z or x are accepted for q = 2; "c0,c1,...,cn" for any q.
FieldCtx build_field(const RunConfig& config);
// "a^k" for alpha^k, "1", "0", or a hex coefficient mask such as "0x5".
Elem parse_field_elem(const FieldCtx& ctx, const std::string& text);

// Each command writes its table to out and diagnostics to err, and returns an exit code.
int cmd_profile(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_distribution(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_dynamics(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_singular_set(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_hull(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_qary(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses args (without the program name) and dispatches to a command.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mseq::cli
