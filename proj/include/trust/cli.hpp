#pragma once

// trustctl commands. Machine output is JSON on `out`, diagnostics go to `err`.
// Exit codes: 0 success, 1 invalid input (shape errors, bad weights, nothing
// to rank), 2 parse error, 3 I/O failure.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace trust {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitIo = 3;

// Environment variable naming a JSON file of namespace overrides.
inline constexpr const char* kNamespaceEnv = "TRUSTCTL_NAMESPACES";

int cmd_validate(const std::string& file, std::ostream& out, std::ostream& err);
int cmd_score(const std::string& file, const std::optional<std::string>& profile_path, std::ostream& out,
              std::ostream& err);
int cmd_rank(const std::string& dir, const std::optional<std::string>& profile_path, std::ostream& out,
             std::ostream& err);
int cmd_diff(const std::string& file_a, const std::string& file_b, const std::optional<std::string>& profile_path,
             std::ostream& out, std::ostream& err);
int cmd_gen_corpus(std::size_t n, std::uint64_t seed, const std::string& out_dir,
                   const std::optional<std::string>& prevalence_path, std::ostream& out, std::ostream& err);
int cmd_serve(int port, const std::string& store_dir, const std::optional<std::string>& profiles_dir,
              std::ostream& out, std::ostream& err);

// Full command line, including argv[0].
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace trust
