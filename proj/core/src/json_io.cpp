#include "pgreedy/json_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "pgreedy/errors.hpp"

namespace pgreedy {
namespace {

const json& require(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string(where) + ": missing field '" + key + "'");
  }
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const json& x : j) out.push_back(number(x, what));
  return out;
}

std::size_t count(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw InputError(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

json scalars_to_json(const std::vector<Scalar>& xs) {
  json a = json::array();
  for (Scalar x : xs) a.push_back(to_json(x));
  return a;
}

std::vector<Scalar> scalars_from_json(const json& j) {
  std::vector<Scalar> out;
  if (!j.is_array()) throw InputError("expected an array of scalars");
  for (const json& x : j) out.push_back(scalar_from_json(x));
  return out;
}

}  // namespace

json to_json(Scalar x) {
  if (x.imag() == 0.0) return x.real() == 0.0 ? json(0.0) : json(x.real());
  return json::array({x.real(), x.imag()});
}

Scalar scalar_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InputError("scalar must be a number or a [re, im] pair");
}

json to_json(const CoeffVector& f) {
  json a = json::array();
  for (Scalar x : f.dense()) a.push_back(to_json(x));
  return a;
}

CoeffVector coeff_vector_from_json(const json& j) {
  const std::vector<Scalar> xs = scalars_from_json(j);
  return CoeffVector::from_dense(xs);
}

json index_set_to_json(const IndexSet& A) {
  json a = json::array();
  for (std::size_t i : A) a.push_back(i + 1);
  return a;
}

IndexSet index_set_from_json(const json& j, std::size_t dimension) {
  if (!j.is_array()) throw InputError("index set must be an array of 1-based indices");
  IndexSet out;
  for (const json& x : j) {
    const std::size_t i = count(x, "index");
    if (i == 0) throw InputError("indices are 1-based");
    out.push_back(i - 1);
  }
  if (!is_valid_index_set(out, dimension)) throw InputError("index set must be ascending and inside 1..dimension");
  return out;
}

std::vector<Scalar> signs_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "real") return real_signs();
    if (s.rfind("roots:", 0) == 0) {
      std::size_t k = 0;
      const auto* begin = s.data() + 6;
      const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), k);
      if (ec != std::errc{} || ptr != s.data() + s.size() || k == 0) {
        throw InputError("signs: malformed '" + s + "'");
      }
      return roots_of_unity(k);
    }
    throw InputError("signs: expected \"real\", \"roots:K\" or a list");
  }
  return scalars_from_json(j);
}

json signs_to_json(const std::vector<Scalar>& signs) { return scalars_to_json(signs); }

PSpace space_from_json(const json& j) {
  if (!j.is_object()) throw InputError("space definition must be an object");
  const std::size_t dim = count(require(j, "dimension", "space"), "space dimension");
  const double p = number(require(j, "p", "space"), "space p");
  const Field field = j.contains("field") ? parse_field(j.at("field").get<std::string>()) : Field::Real;
  if (j.contains("builtin")) {
    const auto b = parse_builtin(j.at("builtin").get<std::string>());
    if (!b) throw InputError("unknown builtin space '" + j.at("builtin").get<std::string>() + "'");
    return make_builtin(*b, dim, p, field);
  }
  const json& norm = require(j, "norm", "space");
  const std::string kind = require(norm, "kind", "norm").get<std::string>();
  if (kind == "weighted_lp") return PSpace(dim, p, field, WeightedLp{numbers(require(norm, "weights", "norm"), "weights")});
  if (kind == "summing_augmented_lp") {
    return PSpace(dim, p, field, SummingAugmentedLp{numbers(require(norm, "weights", "norm"), "weights")});
  }
  if (kind == "matrix") {
    MatrixNorm m;
    m.size = dim;
    const json& rows = require(norm, "matrix", "norm");
    if (!rows.is_array()) throw InputError("matrix must be an array of rows");
    for (const json& row : rows) {
      const std::vector<double> r = numbers(row, "matrix row");
      if (r.size() != dim) throw InputError("matrix rows must have length " + std::to_string(dim));
      m.matrix.insert(m.matrix.end(), r.begin(), r.end());
    }
    m.base_weights = norm.contains("base_weights") ? numbers(norm.at("base_weights"), "base_weights")
                                                   : std::vector<double>(dim, 1.0);
    return PSpace(dim, p, field, std::move(m));
  }
  throw InputError("unknown norm kind '" + kind + "'");
}

json space_to_json(const PSpace& space) {
  json j;
  j["dimension"] = space.dimension();
  j["p"] = space.p();
  j["field"] = std::string(to_string(space.field()));
  json norm;
  norm["kind"] = std::string(norm_kind_name(space.norm_spec()));
  if (const auto* w = std::get_if<WeightedLp>(&space.norm_spec())) {
    norm["weights"] = w->weights;
  } else if (const auto* s = std::get_if<SummingAugmentedLp>(&space.norm_spec())) {
    norm["weights"] = s->weights;
  } else {
    const auto& m = std::get<MatrixNorm>(space.norm_spec());
    json rows = json::array();
    for (std::size_t r = 0; r < m.size; ++r) {
      rows.push_back(std::vector<double>(m.matrix.begin() + static_cast<std::ptrdiff_t>(r * m.size),
                                         m.matrix.begin() + static_cast<std::ptrdiff_t>((r + 1) * m.size)));
    }
    norm["matrix"] = rows;
    norm["base_weights"] = m.base_weights;
  }
  j["norm"] = norm;
  return j;
}

GridSpec grid_from_json(const json& j, std::size_t dimension) {
  GridSpec g = GridSpec::standard(dimension);
  if (j.is_null()) return g;
  if (!j.is_object()) throw InputError("grid must be an object");
  if (j.contains("dimension") && count(j.at("dimension"), "grid dimension") != dimension) {
    throw InputError("grid dimension " + j.at("dimension").dump() + " does not match space dimension " +
                     std::to_string(dimension));
  }
  if (j.contains("magnitudes")) g.magnitudes = numbers(j.at("magnitudes"), "grid magnitudes");
  if (j.contains("signs")) g.signs = signs_from_json(j.at("signs"));
  if (j.contains("max_support") && !j.at("max_support").is_null()) {
    g.max_support = count(j.at("max_support"), "grid max_support");
  }
  if (j.contains("indicator_augmented")) g.indicator_augmented = j.at("indicator_augmented").get<bool>();
  g.validate();
  return g;
}

json grid_to_json(const GridSpec& grid) {
  json j;
  j["dimension"] = grid.dimension;
  j["magnitudes"] = grid.magnitudes;
  j["signs"] = signs_to_json(grid.signs);
  j["max_support"] = grid.max_support;
  j["indicator_augmented"] = grid.indicator_augmented;
  j["closure_ok"] = grid.closure_ok();
  j["hash"] = hex64(grid.hash());
  return j;
}

RenormSearchSpec renorm_from_json(const json& j, std::size_t dimension) {
  RenormSearchSpec s;
  s.max_support = dimension;
  if (j.is_null()) return s;
  if (!j.is_object()) throw InputError("renorm must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "multipliers" && key != "signs" && key != "max_support" && key != "tail") {
      throw InputError("renorm: unknown key '" + key + "'");
    }
  }
  if (j.contains("tail")) s.tail = count(j.at("tail"), "renorm tail");
  s.max_support = dimension + s.tail;
  if (j.contains("multipliers")) s.multipliers = numbers(j.at("multipliers"), "renorm multipliers");
  if (j.contains("signs")) s.signs = signs_from_json(j.at("signs"));
  if (j.contains("max_support") && !j.at("max_support").is_null()) {
    s.max_support = std::min(dimension + s.tail, count(j.at("max_support"), "renorm max_support"));
  }
  s.validate();
  return s;
}

json renorm_to_json(const RenormSearchSpec& spec) {
  json j;
  j["multipliers"] = spec.multipliers;
  j["signs"] = signs_to_json(spec.signs);
  j["max_support"] = spec.max_support;
  j["tail"] = spec.tail;
  return j;
}

json to_json(const Witness& w, ConstantKind kind) {
  json j;
  j["f"] = to_json(w.f);
  switch (kind) {
    case ConstantKind::Cqg:
    case ConstantKind::GammaU:
    case ConstantKind::GammaT:
      j["A"] = index_set_to_json(w.A);
      break;
    case ConstantKind::Cpg:
      j["A"] = index_set_to_json(w.A);
      j["k"] = w.k;
      break;
    case ConstantKind::D:
      j["k"] = w.k;
      j["z"] = to_json(w.z);
      break;
    case ConstantKind::Cql:
      j["A"] = index_set_to_json(w.A);
      j["signs_A"] = scalars_to_json(w.signs_A);
      j["level"] = w.level;
      break;
    case ConstantKind::Delta:
    case ConstantKind::DeltaS:
    case ConstantKind::DeltaPl:
      j["A"] = index_set_to_json(w.A);
      j["B"] = index_set_to_json(w.B);
      j["signs_A"] = scalars_to_json(w.signs_A);
      j["signs_B"] = scalars_to_json(w.signs_B);
      j["level"] = w.level;
      break;
    case ConstantKind::CThree:
      j["B"] = index_set_to_json(w.B);
      j["signs_B"] = scalars_to_json(w.signs_B);
      j["k"] = w.k;
      j["level"] = w.level;
      break;
  }
  return j;
}

Witness witness_from_json(const json& j) {
  Witness w;
  w.f = coeff_vector_from_json(require(j, "f", "witness"));
  const std::size_t n = w.f.dimension();
  if (j.contains("A")) w.A = index_set_from_json(j.at("A"), n);
  if (j.contains("B")) w.B = index_set_from_json(j.at("B"), n);
  if (j.contains("signs_A")) w.signs_A = scalars_from_json(j.at("signs_A"));
  if (j.contains("signs_B")) w.signs_B = scalars_from_json(j.at("signs_B"));
  if (j.contains("k")) w.k = count(j.at("k"), "witness k");
  w.z = j.contains("z") ? coeff_vector_from_json(j.at("z")) : CoeffVector(n);
  if (j.contains("level")) w.level = number(j.at("level"), "witness level");
  return w;
}

json to_json(const ConstantEstimate& e) {
  json j;
  j["symbol"] = std::string(symbol(e.kind));
  j["name"] = std::string(long_name(e.kind));
  j["value"] = std::isfinite(e.value) ? json(e.value) : json("inf");
  j["lower_bound"] = true;
  j["witness"] = e.witness ? to_json(*e.witness, e.kind) : json(nullptr);
  j["grid_hash"] = hex64(e.grid_hash);
  j["configurations"] = e.configurations;
  if (e.kind == ConstantKind::Cpg) j["ties"] = std::string(to_string(e.ties));
  if (!e.warning.empty()) j["warning"] = e.warning;
  return j;
}

ConstantEstimate estimate_from_json(const json& j) {
  ConstantEstimate e;
  const auto kind = parse_constant_kind(require(j, "symbol", "estimate").get<std::string>());
  if (!kind) throw InputError("unknown constant symbol " + j.at("symbol").dump());
  e.kind = *kind;
  const json& v = require(j, "value", "estimate");
  e.value = v.is_string() ? std::numeric_limits<double>::infinity() : number(v, "estimate value");
  if (j.contains("witness") && !j.at("witness").is_null()) e.witness = witness_from_json(j.at("witness"));
  if (j.contains("grid_hash")) e.grid_hash = std::stoull(j.at("grid_hash").get<std::string>(), nullptr, 16);
  if (j.contains("configurations")) e.configurations = j.at("configurations").get<std::uint64_t>();
  if (j.contains("ties")) e.ties = parse_tie_policy(j.at("ties").get<std::string>()).value_or(TiePolicy::All);
  if (j.contains("warning")) e.warning = j.at("warning").get<std::string>();
  return e;
}

json to_json(const InequalityRecord& r) {
  json j;
  j["id"] = r.id;
  j["statement"] = r.statement;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["margin"] = r.margin;
  j["status"] = std::string(to_string(r.status));
  j["closure_ok"] = r.closure_ok;
  json in;
  for (const auto& [k, v] : r.inputs) in[k] = v;
  j["inputs"] = in;
  return j;
}

InequalityRecord record_from_json(const json& j) {
  InequalityRecord r;
  r.id = require(j, "id", "record").get<std::string>();
  r.statement = j.value("statement", "");
  r.lhs = number(require(j, "lhs", "record"), "lhs");
  r.rhs = number(require(j, "rhs", "record"), "rhs");
  r.margin = number(require(j, "margin", "record"), "margin");
  const std::string st = require(j, "status", "record").get<std::string>();
  r.status = st == "PASS" ? Status::Pass : st == "FAIL" ? Status::Fail : Status::NotApplicable;
  r.closure_ok = j.value("closure_ok", false);
  if (j.contains("inputs")) {
    for (const auto& [k, v] : j.at("inputs").items()) r.inputs[k] = v.get<double>();
  }
  return r;
}

json to_json(const AxiomReport& r) {
  json j;
  j["passed"] = r.passed;
  j["samples"] = r.samples;
  j["worst_homogeneity_error"] = r.worst_homogeneity_error;
  j["worst_triangle_slack"] = r.worst_triangle_slack;
  j["quasi_triangle_constant"] = r.quasi_triangle_constant;
  j["basis_bound"] = r.basis_bound;
  if (r.counterexample) {
    const AxiomViolation& v = *r.counterexample;
    j["counterexample"] = {{"axiom", v.axiom}, {"f", to_json(v.f)}, {"g", to_json(v.g)},
                           {"t", to_json(v.t)}, {"lhs", v.lhs},     {"rhs", v.rhs}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

json to_json(const RenormCheck& r) {
  json j;
  j["passed"] = r.passed();
  j["vectors"] = r.vectors;
  j["upper_ok"] = r.upper_ok;
  j["upper_violations"] = r.upper_violations;
  j["homogeneity_ok"] = r.homogeneity_ok;
  j["worst_homogeneity_error"] = r.worst_homogeneity_error;
  j["lower_constant"] = r.lower_constant;
  j["lower_checked"] = r.lower_checked;
  j["lower_ok"] = r.lower_ok;
  j["positive_ok"] = r.positive_ok;
  j["worst_ratio"] = r.worst_ratio;
  j["worst_vector"] = r.worst_vector ? to_json(*r.worst_vector) : json(nullptr);
  return j;
}

std::string shortest(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t fnv1a(std::string_view bytes) noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace pgreedy
