#include "pgreedy/lab.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pgreedy/errors.hpp"
#include "pgreedy/greedy.hpp"

namespace pgreedy {
namespace {

constexpr Phase kPhaseOrder[] = {Phase::Spaces, Phase::Axioms, Phase::Constants, Phase::Theorems, Phase::Renorm};

json header(const RunConfig& config) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["report_schema"] = kReportSchema;
  j["config_hash"] = hex64(config_hash(config));
  return j;
}

const SpaceEntry& entry_named(const RunConfig& config, const std::string& name) {
  for (const SpaceEntry& e : config.spaces) {
    if (e.name == name) return e;
  }
  throw DependencyError("artifact refers to space '" + name + "' which is not in the config");
}

// Every configured space must have an entry in an upstream section.
void require_all_spaces(const RunConfig& config, const json& section, std::string_view file) {
  if (!section.is_object() || !section.contains("spaces") || !section.at("spaces").is_array()) {
    throw DependencyError(std::string(file) + " has no spaces list; rerun the earlier phase");
  }
  for (const SpaceEntry& e : config.spaces) {
    bool found = false;
    for (const json& s : section.at("spaces")) found = found || s.value("name", "") == e.name;
    if (!found) {
      throw DependencyError(std::string(file) + " has no entry for space '" + e.name + "'; rerun the earlier phase");
    }
  }
}

std::size_t positive(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 1) throw InputError(std::string(what) + " must be a positive integer");
  return j.get<std::size_t>();
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double json_value(const json& v) {
  if (v.is_string()) return std::numeric_limits<double>::infinity();
  return v.get<double>();
}

}  // namespace

std::string_view to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::Spaces: return "spaces";
    case Phase::Axioms: return "axioms";
    case Phase::Constants: return "constants";
    case Phase::Theorems: return "theorems";
    case Phase::Renorm: return "renorm";
  }
  return "?";
}

std::optional<Phase> parse_phase(std::string_view text) noexcept {
  for (Phase p : kPhaseOrder) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

RunConfig parse_config(const json& j, const Overrides& overrides) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  static const std::set<std::string> known{"spaces", "grid",  "renorm",        "commands", "constants",
                                           "seed",   "workers", "axiom_samples", "max_dim",  "output"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw InputError("config: unknown field '" + key + "'");
  }
  RunConfig c;
  c.source = j;

  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw InputError("seed must be a nonnegative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("workers")) c.workers = positive(j.at("workers"), "workers");
  if (j.contains("axiom_samples")) c.axiom_samples = positive(j.at("axiom_samples"), "axiom_samples");
  if (j.contains("max_dim")) c.max_dimension = positive(j.at("max_dim"), "max_dim");
  if (j.contains("output")) c.output = j.at("output").get<std::string>();
  if (overrides.seed) c.seed = *overrides.seed;
  if (overrides.workers) {
    if (*overrides.workers == 0) throw InputError("--workers must be positive");
    c.workers = *overrides.workers;
  }
  if (overrides.output) c.output = *overrides.output;
  if (overrides.max_dimension) c.max_dimension = *overrides.max_dimension;

  if (j.contains("commands")) {
    std::set<Phase> wanted;
    for (const json& p : j.at("commands")) {
      const auto phase = parse_phase(p.get<std::string>());
      if (!phase) throw InputError("config: unknown command '" + p.get<std::string>() + "'");
      wanted.insert(*phase);
    }
    for (Phase p : kPhaseOrder) {
      if (wanted.count(p)) c.phases.push_back(p);
    }
  } else {
    c.phases.assign(std::begin(kPhaseOrder), std::end(kPhaseOrder));
  }

  std::vector<std::string> kinds;
  if (overrides.only) {
    kinds = *overrides.only;
  } else if (j.contains("constants")) {
    kinds = j.at("constants").get<std::vector<std::string>>();
  }
  if (kinds.empty()) {
    c.constants.assign(all_constant_kinds().begin(), all_constant_kinds().end());
  } else {
    for (const std::string& k : kinds) {
      const auto kind = parse_constant_kind(k);
      if (!kind) throw InputError("unknown constant '" + k + "'");
      if (std::find(c.constants.begin(), c.constants.end(), *kind) == c.constants.end()) c.constants.push_back(*kind);
    }
    std::sort(c.constants.begin(), c.constants.end());
  }

  if (!j.contains("spaces") || !j.at("spaces").is_array() || j.at("spaces").empty()) {
    throw InputError("config: 'spaces' must be a nonempty array");
  }
  const json no_section;
  std::set<std::string> names;
  std::size_t idx = 0;
  for (const json& s : j.at("spaces")) {
    ++idx;
    std::string name = s.is_object() && s.contains("name") ? s.at("name").get<std::string>()
                                                            : "space" + std::to_string(idx);
    if (!names.insert(name).second) throw InputError("config: duplicate space name '" + name + "'");
    json def = s;
    if (def.is_object()) {
      def.erase("name");
      def.erase("grid");
      def.erase("renorm");
    }
    PSpace space = space_from_json(def);
    const json& g = s.contains("grid") ? s.at("grid") : (j.contains("grid") ? j.at("grid") : no_section);
    const json& r = s.contains("renorm") ? s.at("renorm") : (j.contains("renorm") ? j.at("renorm") : no_section);
    GridSpec grid = grid_from_json(g, space.dimension());
    if (space.field() == Field::Real) {
      for (Scalar sg : grid.signs) {
        if (!is_real(sg)) throw InputError("space '" + name + "' is real but its grid has complex signs");
      }
    }
    RenormSearchSpec renorm = renorm_from_json(r, space.dimension());
    std::optional<BuiltinSpace> builtin;
    if (def.is_object() && def.contains("builtin")) builtin = parse_builtin(def.at("builtin").get<std::string>());
    c.spaces.push_back(
        SpaceEntry{std::move(name), std::move(space), std::move(grid), std::move(renorm), builtin});
    renorm_window(c.spaces.back());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path, const Overrides& overrides) {
  json j;
  try {
    j = read_json_file(path);
  } catch (const IoError& e) {
    throw InputError(std::string("cannot read config: ") + e.what());
  }
  return parse_config(j, overrides);
}

std::uint64_t config_hash(const RunConfig& config) {
  json canon;
  json spaces = json::array();
  for (const SpaceEntry& e : config.spaces) {
    json s;
    s["name"] = e.name;
    s["space"] = space_to_json(e.space);
    s["grid"] = grid_to_json(e.grid);
    s["renorm"] = renorm_to_json(e.renorm);
    spaces.push_back(s);
  }
  canon["spaces"] = spaces;
  json phases = json::array();
  for (Phase p : config.phases) phases.push_back(std::string(to_string(p)));
  canon["phases"] = phases;
  json kinds = json::array();
  for (ConstantKind k : config.constants) kinds.push_back(std::string(symbol(k)));
  canon["constants"] = kinds;
  canon["seed"] = config.seed;
  canon["axiom_samples"] = config.axiom_samples;
  canon["max_dim"] = config.max_dimension;
  return fnv1a(canon.dump());
}

json spaces_section(const RunConfig& config, bool with_axioms, std::set<std::string>& failed) {
  json out = header(config);
  json list = json::array();
  std::uint64_t salt = 0;
  for (const SpaceEntry& e : config.spaces) {
    json s;
    s["name"] = e.name;
    s["description"] = e.space.describe();
    s["space"] = space_to_json(e.space);
    const GeomConstants g = geom_constants(e.space.p(), e.space.field());
    s["geometry"] = {{"A_p", g.A}, {"B_p", g.B}};
    if (with_axioms) {
      const AxiomReport r = check_axioms(e.space, config.axiom_samples, config.seed + salt);
      if (!r.passed) failed.insert(e.name);
      s["axioms"] = to_json(r);
    }
    ++salt;
    list.push_back(s);
  }
  out["spaces"] = list;
  return out;
}

json constants_section(const RunConfig& config, const std::set<std::string>& skip) {
  json out = header(config);
  json list = json::array();
  const SearchOptions options{config.workers, config.max_dimension};
  for (const SpaceEntry& e : config.spaces) {
    json s;
    s["name"] = e.name;
    s["p"] = e.space.p();
    s["field"] = std::string(to_string(e.space.field()));
    if (skip.count(e.name)) {
      s["skipped"] = "axiom check failed";
      list.push_back(s);
      continue;
    }
    GridSearch search(e.space, e.grid, options);
    json grid = grid_to_json(e.grid);
    grid["universe_size"] = search.universe().size();
    s["grid"] = grid;
    json estimates = json::array();
    for (ConstantKind kind : config.constants) {
      const ConstantEstimate est = search.estimate(kind);
      if (std::isinf(est.value)) {
        throw DegenerateNormError("space '" + e.name + "': " + std::string(symbol(kind)) +
                                  " has a zero denominator; witness " +
                                  (est.witness ? to_json(*est.witness, kind).dump() : std::string("none")));
      }
      estimates.push_back(to_json(est));
      if (kind == ConstantKind::Cpg) {
        const ConstantEstimate first = search.estimate_Cpg(TiePolicy::First);
        s["cpg_first_ties"] = to_json(first);
      }
    }
    s["estimates"] = estimates;
    list.push_back(s);
  }
  out["spaces"] = list;
  return out;
}

void require_same_config(const RunConfig& config, const json& artifact, std::string_view file) {
  const std::string expected = hex64(config_hash(config));
  if (!artifact.is_object() || artifact.value("config_hash", "") != expected) {
    throw DependencyError(std::string(file) + " was produced by a different config (expected config_hash " + expected +
                          "); rerun the earlier phase");
  }
}

json theorems_section(const RunConfig& config, const json& constants) {
  require_all_spaces(config, constants, "estimates.json");
  json out = header(config);
  json list = json::array();
  for (const json& s : constants.at("spaces")) {
    const std::string name = s.at("name").get<std::string>();
    const SpaceEntry& e = entry_named(config, name);
    json item;
    item["name"] = name;
    if (s.contains("skipped")) {
      item["skipped"] = s.at("skipped");
      list.push_back(item);
      continue;
    }
    EstimateTable t;
    t.p = e.space.p();
    t.field = e.space.field();
    t.closure_ok = s.at("grid").at("closure_ok").get<bool>();
    for (const json& est : s.at("estimates")) {
      const auto kind = parse_constant_kind(est.at("symbol").get<std::string>());
      if (kind) t.values[*kind] = json_value(est.at("value"));
    }
    item["closure_ok"] = t.closure_ok;
    json records = json::array();
    std::size_t pass = 0, fail = 0, na = 0;
    for (const InequalityRecord& r : check_all(t)) {
      records.push_back(to_json(r));
      (r.status == Status::Pass ? pass : r.status == Status::Fail ? fail : na) += 1;
    }
    item["records"] = records;
    item["summary"] = {{"PASS", pass}, {"FAIL", fail}, {"NOT-APPLICABLE", na}};
    list.push_back(item);
  }
  out["spaces"] = list;
  return out;
}

PSpace renorm_window(const SpaceEntry& entry) {
  if (entry.renorm.tail == 0) return entry.space;
  if (!entry.builtin) {
    throw InputError("space '" + entry.name + "': renorm tail needs a built-in space, whose norm extends past n");
  }
  const PSpace& s = entry.space;
  return make_builtin(*entry.builtin, s.dimension() + entry.renorm.tail, s.p(), s.field());
}

namespace {

json minimizer_json(const PSpace& space, const PSpace& window, const CoeffVector& g, const RenormSearchSpec& spec) {
  const NormAResult r = norm_a_with_argmin(window, g, spec);
  json j;
  j["vector"] = to_json(g);
  j["norm"] = space.norm(g);
  j["norm_a"] = r.value;
  j["k"] = r.argmin.k;
  j["z"] = to_json(r.argmin.z.dimension() == 0 ? CoeffVector(g.dimension()) : r.argmin.z);
  return j;
}

}  // namespace

json renorm_section(const RunConfig& config, const json& constants) {
  require_all_spaces(config, constants, "estimates.json");
  json out = header(config);
  json list = json::array();
  const SearchOptions options{config.workers, config.max_dimension};
  for (const json& s : constants.at("spaces")) {
    const std::string name = s.at("name").get<std::string>();
    const SpaceEntry& e = entry_named(config, name);
    json item;
    item["name"] = name;
    item["spec"] = renorm_to_json(e.renorm);
    if (s.contains("skipped")) {
      item["skipped"] = s.at("skipped");
      list.push_back(item);
      continue;
    }
    std::optional<double> d_value;
    std::optional<double> cpg_value;
    for (const json& est : s.at("estimates")) {
      const std::string sym = est.at("symbol").get<std::string>();
      if (sym == "D") d_value = json_value(est.at("value"));
      if (sym == "C_pg") cpg_value = json_value(est.at("value"));
    }
    if (!d_value || !cpg_value) {
      throw DependencyError("renorm needs the D and C_pg estimates of space '" + name +
                            "' in estimates.json; rerun constants estimate including them");
    }
    if (!e.grid.closure_ok()) {
      item["applicable"] = false;
      item["reason"] = "grid is not indicator-closed";
      list.push_back(item);
      continue;
    }
    item["applicable"] = true;
    const GridUniverse universe(e.grid, config.max_dimension);
    const PSpace window = renorm_window(e);
    const RenormCheck check = check_renorming(window, e.renorm, universe, *d_value);
    item["check"] = to_json(check);
    item["cpg_plain"] = *cpg_value;
    const ConstantEstimate cpg = estimate_Cpg_renormed(window, universe, e.renorm, options);
    item["cpg_renormed"] = to_json(cpg);
    // (k, z) attaining ||.||_a on the vectors behind the reported numbers
    json minimizers = json::object();
    if (cpg.witness) {
      const CoeffVector& f = cpg.witness->f;
      minimizers["cpg_numerator"] = minimizer_json(e.space, window, f - projection(f, cpg.witness->A), e.renorm);
      minimizers["cpg_denominator"] = minimizer_json(e.space, window, f - partial_sum(f, cpg.witness->k), e.renorm);
    }
    if (check.worst_vector) minimizers["worst_vector"] = minimizer_json(e.space, window, *check.worst_vector, e.renorm);
    item["minimizers"] = minimizers;
    item["d_renormed"] = to_json(estimate_D_renormed(window, universe, e.renorm, options));
    list.push_back(item);
  }
  out["spaces"] = list;
  return out;
}

bool has_failures(const json& theorems) {
  for (const json& s : theorems.at("spaces")) {
    if (!s.contains("records")) continue;
    for (const json& r : s.at("records")) {
      if (r.at("status") == "FAIL") return true;
    }
  }
  return false;
}

std::string ledger_csv(const json& theorems) {
  std::ostringstream os;
  os << "space,id,lhs,rhs,margin,status\n";
  for (const json& s : theorems.at("spaces")) {
    if (!s.contains("records")) continue;
    for (const json& r : s.at("records")) {
      os << csv_field(s.at("name").get<std::string>()) << ',' << r.at("id").get<std::string>() << ','
         << shortest(r.at("lhs").get<double>()) << ',' << shortest(r.at("rhs").get<double>()) << ','
         << shortest(r.at("margin").get<double>()) << ',' << r.at("status").get<std::string>() << '\n';
    }
  }
  return os.str();
}

std::string constants_csv(const json& report, std::size_t space_index) {
  const json& s = report.at("spaces").at(space_index);
  std::ostringstream os;
  os << "symbol,name,value,witness_ref\n";
  if (!s.contains("estimates")) return os.str();
  std::size_t j = 0;
  for (const json& e : s.at("estimates")) {
    const json& v = e.at("value");
    os << csv_field(e.at("symbol").get<std::string>()) << ',' << csv_field(e.at("name").get<std::string>()) << ','
       << (v.is_string() ? v.get<std::string>() : shortest(v.get<double>())) << ",report.json#/spaces/"
       << space_index << "/estimates/" << j << "/witness\n";
    ++j;
  }
  return os.str();
}

json assemble_report(const RunConfig& config, const json* spaces, const json* constants, const json* theorems,
                     const json* renorm) {
  json out = header(config);
  out["seed"] = config.seed;
  json list = json::array();
  for (std::size_t i = 0; i < config.spaces.size(); ++i) {
    json s;
    s["name"] = config.spaces[i].name;
    auto copy_from = [&](const json* section, std::initializer_list<const char*> keys) {
      if (!section) return;
      for (const json& item : section->at("spaces")) {
        if (item.at("name") != config.spaces[i].name) continue;
        for (const char* k : keys) {
          if (item.contains(k)) s[k] = item.at(k);
        }
      }
    };
    copy_from(spaces, {"description", "space", "geometry", "axioms"});
    copy_from(constants, {"skipped", "grid", "estimates", "cpg_first_ties"});
    if (theorems) {
      for (const json& item : theorems->at("spaces")) {
        if (item.at("name") != config.spaces[i].name || !item.contains("records")) continue;
        s["ledger"] = item.at("records");
        s["ledger_summary"] = item.at("summary");
      }
    }
    if (renorm) {
      for (json item : renorm->at("spaces")) {
        if (item.at("name") != config.spaces[i].name) continue;
        item.erase("name");
        s["renorm"] = item;
      }
    }
    list.push_back(s);
  }
  out["spaces"] = list;
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

json read_artifact(const std::filesystem::path& dir, std::string_view file) {
  const std::filesystem::path path = dir / file;
  if (!std::filesystem::exists(path)) {
    throw DependencyError("missing artifact " + path.string() + "; run the phase that produces " + std::string(file) +
                          " first");
  }
  return read_json_file(path);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void write_json_file(const std::filesystem::path& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

}  // namespace pgreedy
