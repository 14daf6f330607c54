// pgreedy: command-line front end of the laboratory.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pgreedy/errors.hpp"
#include "pgreedy/lab.hpp"

namespace fs = std::filesystem;
using namespace pgreedy;

namespace {

struct Args {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> out;
  std::string only;
  std::optional<std::size_t> max_dim;
  std::string format = "csv";
};

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

int fail(std::string_view kind, std::string_view message, int code) {
  std::cerr << "error: kind=" << kind << " message=\"" << escape(message) << "\"\n";
  return code;
}

Overrides overrides_from(const Args& a) {
  Overrides o;
  o.seed = a.seed;
  o.workers = a.workers;
  o.output = a.out;
  o.max_dimension = a.max_dim;
  if (!a.only.empty()) {
    std::vector<std::string> list;
    std::stringstream ss(a.only);
    for (std::string item; std::getline(ss, item, ',');) {
      if (!item.empty()) list.push_back(item);
    }
    o.only = list;
  }
  return o;
}

RunConfig config_from(const Args& a) {
  if (a.config.empty()) throw InputError("--config is required");
  return load_config(a.config, overrides_from(a));
}

void print_constants(const json& constants) {
  for (const json& s : constants.at("spaces")) {
    std::cout << s.at("name").get<std::string>() << ":";
    if (s.contains("skipped")) {
      std::cout << " skipped (" << s.at("skipped").get<std::string>() << ")\n";
      continue;
    }
    std::cout << '\n';
    for (const json& e : s.at("estimates")) {
      std::cout << "  " << e.at("symbol").get<std::string>() << " >= " << e.at("value").dump() << '\n';
    }
  }
}

int print_ledger(const json& theorems) {
  for (const json& s : theorems.at("spaces")) {
    if (!s.contains("summary")) continue;
    const json& sum = s.at("summary");
    std::cout << s.at("name").get<std::string>() << ": " << sum.at("PASS") << " PASS, " << sum.at("FAIL") << " FAIL, "
              << sum.at("NOT-APPLICABLE") << " NOT-APPLICABLE\n";
    for (const json& r : s.at("records")) {
      if (r.at("status") == "FAIL") {
        std::cout << "  FAIL " << r.at("id").get<std::string>() << ": " << r.at("statement").get<std::string>()
                  << " (lhs " << r.at("lhs").dump() << ", rhs " << r.at("rhs").dump() << ")\n";
      }
    }
  }
  return has_failures(theorems) ? kExitFindings : kExitOk;
}

int cmd_spaces_validate(const Args& a) {
  const RunConfig c = config_from(a);
  std::set<std::string> failed;
  const json spaces = spaces_section(c, true, failed);
  write_json_file(fs::path(c.output) / "spaces.json", spaces);
  for (const json& s : spaces.at("spaces")) {
    std::cout << s.at("name").get<std::string>() << ": " << s.at("description").get<std::string>() << " axioms "
              << (s.at("axioms").at("passed").get<bool>() ? "ok" : "FAILED") << '\n';
  }
  return failed.empty() ? kExitOk : kExitFindings;
}

int cmd_constants_estimate(const Args& a) {
  const RunConfig c = config_from(a);
  const json constants = constants_section(c);
  write_json_file(fs::path(c.output) / "estimates.json", constants);
  print_constants(constants);
  return kExitOk;
}

int cmd_theorems_check(const Args& a) {
  const RunConfig c = config_from(a);
  const json constants = read_artifact(c.output, "estimates.json");
  require_same_config(c, constants, "estimates.json");
  const json theorems = theorems_section(c, constants);
  write_json_file(fs::path(c.output) / "ledger.json", theorems);
  write_text_file(fs::path(c.output) / "ledger.csv", ledger_csv(theorems));
  return print_ledger(theorems);
}

int cmd_renorm_verify(const Args& a) {
  const RunConfig c = config_from(a);
  const json constants = read_artifact(c.output, "estimates.json");
  require_same_config(c, constants, "estimates.json");
  const json renorm = renorm_section(c, constants);
  write_json_file(fs::path(c.output) / "renorm.json", renorm);
  for (const json& s : renorm.at("spaces")) {
    std::cout << s.at("name").get<std::string>() << ": ";
    if (!s.value("applicable", false)) {
      std::cout << "not applicable\n";
      continue;
    }
    std::cout << "C_pg " << s.at("cpg_plain").dump() << " -> " << s.at("cpg_renormed").at("value").dump()
              << " under the renorming; criterion " << (s.at("check").at("passed").get<bool>() ? "ok" : "FAILED")
              << '\n';
  }
  return kExitOk;
}

int cmd_report_export(const Args& a) {
  if (a.format == "json") {
    const RunConfig c = config_from(a);
    const fs::path dir = c.output;
    auto optional_artifact = [&](const char* file) -> std::optional<json> {
      if (!fs::exists(dir / file)) return std::nullopt;
      json j = read_artifact(dir, file);
      require_same_config(c, j, file);
      return j;
    };
    const auto spaces = optional_artifact("spaces.json");
    const auto constants = optional_artifact("estimates.json");
    if (!constants) throw DependencyError("missing artifact " + (dir / "estimates.json").string());
    const auto theorems = optional_artifact("ledger.json");
    const auto renorm = optional_artifact("renorm.json");
    const json report = assemble_report(c, spaces ? &*spaces : nullptr, &*constants,
                                        theorems ? &*theorems : nullptr, renorm ? &*renorm : nullptr);
    write_json_file(dir / "report.json", report);
    std::cout << "wrote " << (dir / "report.json").string() << '\n';
    return kExitOk;
  }
  if (a.format != "csv") throw InputError("--format must be csv or json");
  const fs::path dir = a.out.value_or(a.config.empty() ? "out" : config_from(a).output);
  const json report = read_artifact(dir, "report.json");
  const json& spaces = report.at("spaces");
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const fs::path file = dir / (spaces[i].at("name").get<std::string>() + ".constants.csv");
    write_text_file(file, constants_csv(report, i));
    std::cout << "wrote " << file.string() << '\n';
  }
  return kExitOk;
}

int cmd_run(const Args& a) {
  const RunConfig c = config_from(a);
  const fs::path dir = c.output;
  using clock = std::chrono::steady_clock;
  json timing = json::object();
  auto timed = [&](const char* phase, auto&& fn) {
    const auto t0 = clock::now();
    auto result = fn();
    timing[phase] = std::chrono::duration<double>(clock::now() - t0).count();
    return result;
  };
  auto wants = [&](Phase p) { return std::find(c.phases.begin(), c.phases.end(), p) != c.phases.end(); };

  bool findings = false;
  std::set<std::string> failed;
  std::optional<json> spaces, constants, theorems, renorm;
  if (wants(Phase::Spaces) || wants(Phase::Axioms)) {
    spaces = timed(wants(Phase::Axioms) ? "spaces+axioms" : "spaces",
                   [&] { return spaces_section(c, wants(Phase::Axioms), failed); });
    write_json_file(dir / "spaces.json", *spaces);
    findings = findings || !failed.empty();
    for (const std::string& name : failed) std::cout << name << ": axiom check FAILED\n";
  }
  if (wants(Phase::Constants)) {
    constants = timed("constants", [&] { return constants_section(c, failed); });
    write_json_file(dir / "estimates.json", *constants);
  } else if (wants(Phase::Theorems) || wants(Phase::Renorm)) {
    constants = read_artifact(dir, "estimates.json");
    require_same_config(c, *constants, "estimates.json");
  }
  if (constants) print_constants(*constants);
  if (wants(Phase::Theorems)) {
    theorems = timed("theorems", [&] { return theorems_section(c, *constants); });
    write_json_file(dir / "ledger.json", *theorems);
    write_text_file(dir / "ledger.csv", ledger_csv(*theorems));
    findings = print_ledger(*theorems) != kExitOk || findings;
  }
  if (wants(Phase::Renorm)) {
    renorm = timed("renorm", [&] { return renorm_section(c, *constants); });
    write_json_file(dir / "renorm.json", *renorm);
  }
  const json report = assemble_report(c, spaces ? &*spaces : nullptr, constants ? &*constants : nullptr,
                                      theorems ? &*theorems : nullptr, renorm ? &*renorm : nullptr);
  write_json_file(dir / "report.json", report);
  write_json_file(dir / "timing.json", timing);
  std::cout << "wrote " << (dir / "report.json").string() << '\n';
  return findings ? kExitFindings : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy-algorithm constants on finite-dimensional p-normed spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  Args args;

  auto common = [&args](CLI::App* sub, bool with_only) {
    sub->add_option("--config", args.config, "Run configuration (JSON)");
    sub->add_option("--seed", args.seed, "Seed for sampled checks");
    sub->add_option("--workers", args.workers, "Parallel search workers")->check(CLI::PositiveNumber);
    sub->add_option("--out", args.out, "Artifact directory");
    sub->add_option("--max-dim", args.max_dim, "Largest dimension the searches accept (default 12)")
        ->check(CLI::PositiveNumber);
    if (with_only) sub->add_option("--only", args.only, "Comma-separated constant symbols, e.g. C_pg,D");
  };

  std::function<int()> action;
  auto* spaces = app.add_subcommand("spaces", "Space definitions and axiom checks");
  auto* spaces_validate = spaces->add_subcommand("validate", "Validate spaces and sample the p-norm axioms");
  common(spaces_validate, false);
  spaces_validate->callback([&] { action = [&] { return cmd_spaces_validate(args); }; });
  spaces->require_subcommand(1);

  auto* constants = app.add_subcommand("constants", "Constant estimates");
  auto* constants_estimate = constants->add_subcommand("estimate", "Exhaustive grid estimates with witnesses");
  common(constants_estimate, true);
  constants_estimate->callback([&] { action = [&] { return cmd_constants_estimate(args); }; });
  constants->require_subcommand(1);

  auto* theorems = app.add_subcommand("theorems", "Inequality ledger");
  auto* theorems_check = theorems->add_subcommand("check", "Check every inequality against estimates.json");
  common(theorems_check, false);
  theorems_check->callback([&] { action = [&] { return cmd_theorems_check(args); }; });
  theorems->require_subcommand(1);

  auto* renorm = app.add_subcommand("renorm", "Renorming checks");
  auto* renorm_verify = renorm->add_subcommand("verify", "Check the renorming and re-estimate C_pg");
  common(renorm_verify, false);
  renorm_verify->callback([&] { action = [&] { return cmd_renorm_verify(args); }; });
  renorm->require_subcommand(1);

  auto* report = app.add_subcommand("report", "Report handling");
  auto* report_export = report->add_subcommand("export", "Assemble report.json or export it as CSV");
  common(report_export, false);
  report_export->add_option("--format", args.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  report_export->callback([&] { action = [&] { return cmd_report_export(args); }; });
  report->require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run every phase listed in the config");
  common(run, true);
  run->callback([&] { action = [&] { return cmd_run(args); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), kExitUsage);
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const InputError& e) {
    return fail(e.kind(), e.what(), kExitUsage);
  } catch (const SizeError& e) {
    return fail(e.kind(), e.what(), kExitSize);
  } catch (const DependencyError& e) {
    return fail(e.kind(), e.what(), kExitDependency);
  } catch (const DegenerateNormError& e) {
    return fail(e.kind(), e.what(), kExitDegenerate);
  } catch (const IoError& e) {
    return fail(e.kind(), e.what(), kExitIo);
  } catch (const ContractError& e) {
    return fail(e.kind(), e.what(), kExitContract);
  } catch (const json::exception& e) {
    return fail("input", e.what(), kExitUsage);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kExitInternal);
  }
}
