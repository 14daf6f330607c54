#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pgreedy/json_io.hpp"

namespace pgreedy {

inline constexpr const char* kToolName = "pgreedy";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

enum class Phase { Spaces, Axioms, Constants, Theorems, Renorm };
std::string_view to_string(Phase phase) noexcept;
std::optional<Phase> parse_phase(std::string_view text) noexcept;

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitFindings = 1,  // FAIL records or axiom violations
  kExitUsage = 2,
  kExitSize = 3,
  kExitDependency = 4,
  kExitDegenerate = 5,
  kExitIo = 6,
  kExitContract = 7,  // a library precondition was violated
  kExitInternal = 8,
};

struct SpaceEntry {
  std::string name;
  PSpace space;
  GridSpec grid;
  RenormSearchSpec renorm;
  std::optional<BuiltinSpace> builtin;  // set when the space was given by name
};

/// Space the renorming searches run in: the entry's own space, or its
/// built-in family at dimension n + renorm.tail.
PSpace renorm_window(const SpaceEntry& entry);

struct RunConfig {
  std::vector<SpaceEntry> spaces;
  std::vector<Phase> phases;
  std::vector<ConstantKind> constants;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::size_t axiom_samples = 10000;
  std::size_t max_dimension = 12;
  std::string output = "out";
  json source;  // config as read, with overrides applied
};

/// Command-line values that take precedence over the config file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> output;
  std::optional<std::vector<std::string>> only;
  std::optional<std::size_t> max_dimension;
};

RunConfig parse_config(const json& j, const Overrides& overrides = {});
RunConfig load_config(const std::filesystem::path& path, const Overrides& overrides = {});

/// FNV-1a of the canonical config, ignoring worker count and output path.
std::uint64_t config_hash(const RunConfig& config);

/// Space descriptions, geometric constants and (optionally) axiom reports.
/// `failed` collects the names of spaces whose axiom check failed.
json spaces_section(const RunConfig& config, bool with_axioms, std::set<std::string>& failed);
/// Estimates for every space not in `skip`. Throws DegenerateNormError when
/// an estimate is infinite.
json constants_section(const RunConfig& config, const std::set<std::string>& skip = {});
/// Inequality ledger computed from a constants section.
json theorems_section(const RunConfig& config, const json& constants);
/// Renorming checks; needs the D estimate from a constants section.
json renorm_section(const RunConfig& config, const json& constants);

/// Checks that an artifact was produced by this config.
void require_same_config(const RunConfig& config, const json& artifact, std::string_view file);

bool has_failures(const json& theorems);
std::string ledger_csv(const json& theorems);
/// symbol,name,value,witness_ref for one space of a report.
std::string constants_csv(const json& report, std::size_t space_index);

/// Merges the available sections into the per-space report layout.
json assemble_report(const RunConfig& config, const json* spaces, const json* constants, const json* theorems,
                     const json* renorm);

json read_json_file(const std::filesystem::path& path);
/// Throws DependencyError naming the file when it does not exist.
json read_artifact(const std::filesystem::path& dir, std::string_view file);
void write_text_file(const std::filesystem::path& path, const std::string& text);
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace pgreedy
