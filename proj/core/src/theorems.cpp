#include "pgreedy/theorems.hpp"

#include <cmath>
#include <functional>

#include "pgreedy/errors.hpp"
#include "pgreedy/spaces.hpp"

namespace pgreedy {
namespace {

using Inputs = std::map<std::string, double>;
using Formula = std::function<std::pair<double, double>(const Inputs&)>;

struct Definition {
  std::string_view id;
  std::string_view statement;
  std::vector<ConstantKind> needs;
  bool uses_eta;
  bool equality;
  Formula formula;
};

double at(const Inputs& in, const char* key) {
  const auto it = in.find(key);
  if (it == in.end()) throw InputError(std::string("inequality record is missing input '") + key + "'");
  return it->second;
}

double pw(double x, double p) { return std::pow(x, p); }

const std::vector<Definition>& definitions() {
  static const std::vector<Definition> defs = [] {
    std::vector<Definition> d;
    d.push_back({"lc.delta_s_le_delta_pl", "Delta_s <= Delta_pl", {ConstantKind::DeltaS, ConstantKind::DeltaPl},
                 false, false, [](const Inputs& in) { return std::pair{at(in, "Delta_s"), at(in, "Delta_pl")}; }});
    d.push_back({"lc.cql_bound", "C_ql <= (1 + Delta_pl^p)^(1/p)", {ConstantKind::Cql, ConstantKind::DeltaPl}, false,
                 false, [](const Inputs& in) {
                   const double p = at(in, "p");
                   return std::pair{at(in, "C_ql"), pw(1.0 + pw(at(in, "Delta_pl"), p), 1.0 / p)};
                 }});
    d.push_back({"lc.delta_pl_bound", "Delta_pl <= (1 + (1 + Delta_s^p) C_ql^p)^(1/p)",
                 {ConstantKind::DeltaPl, ConstantKind::DeltaS, ConstantKind::Cql}, false, false,
                 [](const Inputs& in) {
                   const double p = at(in, "p");
                   const double inner = (1.0 + pw(at(in, "Delta_s"), p)) * pw(at(in, "C_ql"), p);
                   return std::pair{at(in, "Delta_pl"), pw(1.0 + inner, 1.0 / p)};
                 }});
    d.push_back({"lc.three_lower", "Delta_pl <= C_three", {ConstantKind::DeltaPl, ConstantKind::CThree}, false, false,
                 [](const Inputs& in) { return std::pair{at(in, "Delta_pl"), at(in, "C_three")}; }});
    d.push_back({"lc.three_upper", "C_three <= A_p Delta_pl", {ConstantKind::CThree, ConstantKind::DeltaPl}, false,
                 false, [](const Inputs& in) {
                   return std::pair{at(in, "C_three"), at(in, "A_p") * at(in, "Delta_pl")};
                 }});
    d.push_back({"pg.cpg_le_truncation_chain", "C_pg <= A_p Delta_pl Gamma_t",
                 {ConstantKind::Cpg, ConstantKind::DeltaPl, ConstantKind::GammaT}, false, false,
                 [](const Inputs& in) {
                   return std::pair{at(in, "C_pg"), at(in, "A_p") * at(in, "Delta_pl") * at(in, "Gamma_t")};
                 }});
    d.push_back({"pg.cqg_le_cpg", "C_qg <= 2^(1/p) C_pg", {ConstantKind::Cqg, ConstantKind::Cpg}, false, false,
                 [](const Inputs& in) {
                   return std::pair{at(in, "C_qg"), std::pow(2.0, 1.0 / at(in, "p")) * at(in, "C_pg")};
                 }});
    d.push_back({"pg.delta_pl_le_cpg", "Delta_pl <= C_pg", {ConstantKind::DeltaPl, ConstantKind::Cpg}, false, false,
                 [](const Inputs& in) { return std::pair{at(in, "Delta_pl"), at(in, "C_pg")}; }});
    d.push_back({"pg.d_equals_cpg", "D = C_pg", {ConstantKind::D, ConstantKind::Cpg}, false, true,
                 [](const Inputs& in) { return std::pair{at(in, "D"), at(in, "C_pg")}; }});
    d.push_back({"pgb.conservative", "C_pg <= C_qg (1 + (A_p B_p Delta C_qg eta_p(C_qg))^p)^(1/p)",
                 {ConstantKind::Cpg, ConstantKind::Cqg, ConstantKind::Delta}, true, false, [](const Inputs& in) {
                   const double p = at(in, "p");
                   const double c = at(in, "C_qg");
                   const double inner = at(in, "A_p") * at(in, "B_p") * at(in, "Delta") * c * at(in, "eta");
                   return std::pair{at(in, "C_pg"), c * pw(1.0 + pw(inner, p), 1.0 / p)};
                 }});
    d.push_back({"pgb.super_conservative", "C_pg <= C_qg (1 + (A_p Delta_s eta_p(C_qg))^p)^(1/p)",
                 {ConstantKind::Cpg, ConstantKind::Cqg, ConstantKind::DeltaS}, true, false, [](const Inputs& in) {
                   const double p = at(in, "p");
                   const double c = at(in, "C_qg");
                   const double inner = at(in, "A_p") * at(in, "Delta_s") * at(in, "eta");
                   return std::pair{at(in, "C_pg"), c * pw(1.0 + pw(inner, p), 1.0 / p)};
                 }});
    d.push_back({"pgb.largest_coefficient", "C_pg <= A_p Delta_pl C_qg (1 + C_pg^p eta_p(C_qg)^p)^(1/p)",
                 {ConstantKind::Cpg, ConstantKind::Cqg, ConstantKind::DeltaPl}, true, false, [](const Inputs& in) {
                   const double p = at(in, "p");
                   const double inner = pw(at(in, "C_pg"), p) * pw(at(in, "eta"), p);
                   return std::pair{at(in, "C_pg"),
                                    at(in, "A_p") * at(in, "Delta_pl") * at(in, "C_qg") * pw(1.0 + inner, 1.0 / p)};
                 }});
    d.push_back({"pgb.largest_coefficient_qg_inner", "C_pg <= A_p Delta_pl C_qg (1 + C_qg^p eta_p(C_qg)^p)^(1/p)",
                 {ConstantKind::Cpg, ConstantKind::Cqg, ConstantKind::DeltaPl}, true, false, [](const Inputs& in) {
                   const double p = at(in, "p");
                   const double inner = pw(at(in, "C_qg"), p) * pw(at(in, "eta"), p);
                   return std::pair{at(in, "C_pg"),
                                    at(in, "A_p") * at(in, "Delta_pl") * at(in, "C_qg") * pw(1.0 + inner, 1.0 / p)};
                 }});
    d.push_back({"tr.restricted", "Gamma_u <= C_qg^2 eta_p(C_qg)", {ConstantKind::GammaU, ConstantKind::Cqg}, true,
                 false, [](const Inputs& in) {
                   const double c = at(in, "C_qg");
                   return std::pair{at(in, "Gamma_u"), c * c * at(in, "eta")};
                 }});
    d.push_back({"tr.full", "Gamma_t <= C_qg (1 + C_qg^p eta_p(C_qg)^p)^(1/p)",
                 {ConstantKind::GammaT, ConstantKind::Cqg}, true, false, [](const Inputs& in) {
                   const double p = at(in, "p");
                   const double c = at(in, "C_qg");
                   return std::pair{at(in, "Gamma_t"), c * pw(1.0 + pw(c, p) * pw(at(in, "eta"), p), 1.0 / p)};
                 }});
    return d;
  }();
  return defs;
}

const Definition& definition(std::string_view id) {
  for (const Definition& d : definitions()) {
    if (d.id == id) return d;
  }
  throw InputError("unknown inequality id '" + std::string(id) + "'");
}

InequalityRecord evaluate(const Definition& def, const EstimateTable& t) {
  InequalityRecord r;
  r.id = std::string(def.id);
  r.statement = std::string(def.statement);
  r.closure_ok = t.closure_ok;
  r.inputs["p"] = t.p;
  const GeomConstants g = geom_constants(t.p, t.field);
  r.inputs["A_p"] = g.A;
  r.inputs["B_p"] = g.B;
  bool available = true;
  for (ConstantKind k : def.needs) {
    const auto v = t.get(k);
    if (!v || *v == 0.0 || !std::isfinite(*v)) {
      available = false;
      continue;
    }
    r.inputs[std::string(symbol(k))] = *v;
  }
  if (def.uses_eta && available) {
    if (const auto c = t.get(ConstantKind::Cqg)) r.inputs["eta"] = eta_p(t.p, *c);
  }
  if (!available) {
    r.status = Status::NotApplicable;
    return r;
  }
  const auto [lhs, rhs] = def.formula(r.inputs);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  if (!t.closure_ok) {
    r.status = Status::NotApplicable;
  } else if (def.equality) {
    r.status = std::fabs(lhs - rhs) <= 1e-9 * std::max(1.0, rhs) ? Status::Pass : Status::Fail;
  } else {
    r.status = compare(lhs, rhs);
  }
  return r;
}

std::vector<InequalityRecord> evaluate_prefix(std::string_view prefix, const EstimateTable& t) {
  std::vector<InequalityRecord> out;
  for (const Definition& d : definitions()) {
    if (d.id.substr(0, prefix.size()) == prefix) out.push_back(evaluate(d, t));
  }
  return out;
}

}  // namespace

std::string_view to_string(Status status) noexcept {
  switch (status) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::NotApplicable: return "NOT-APPLICABLE";
  }
  return "?";
}

std::optional<double> EstimateTable::get(ConstantKind kind) const {
  const auto it = values.find(kind);
  if (it == values.end()) return std::nullopt;
  return it->second;
}

EstimateTable EstimateTable::from_estimates(double p, Field field, bool closure_ok,
                                            const std::vector<ConstantEstimate>& estimates) {
  EstimateTable t;
  t.p = p;
  t.field = field;
  t.closure_ok = closure_ok;
  for (const ConstantEstimate& e : estimates) t.values[e.kind] = e.value;
  return t;
}

Status compare(double lhs, double rhs) noexcept {
  return lhs <= rhs + 1e-9 * std::max(1.0, rhs) ? Status::Pass : Status::Fail;
}

std::vector<InequalityRecord> check_largest_coefficient_bounds(const EstimateTable& t) {
  return evaluate_prefix("lc.", t);
}

std::vector<InequalityRecord> check_partially_greedy_chain(const EstimateTable& t) {
  std::vector<InequalityRecord> out;
  for (const char* id : {"pg.cpg_le_truncation_chain", "pg.cqg_le_cpg", "pg.delta_pl_le_cpg"}) {
    out.push_back(evaluate(definition(id), t));
  }
  return out;
}

InequalityRecord check_remainder_equality(const EstimateTable& t) { return evaluate(definition("pg.d_equals_cpg"), t); }

std::vector<InequalityRecord> check_partially_greedy_bounds(const EstimateTable& t) {
  return evaluate_prefix("pgb.", t);
}

std::vector<InequalityRecord> check_truncation_bounds(const EstimateTable& t) { return evaluate_prefix("tr.", t); }

std::vector<InequalityRecord> check_all(const EstimateTable& t) {
  std::vector<InequalityRecord> out;
  for (const Definition& d : definitions()) out.push_back(evaluate(d, t));
  return out;
}

std::pair<double, double> recompute_record(const InequalityRecord& record) {
  return definition(record.id).formula(record.inputs);
}

}  // namespace pgreedy
