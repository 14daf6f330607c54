#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "pgreedy/constants.hpp"
#include "pgreedy/grid.hpp"
#include "pgreedy/renorm.hpp"
#include "pgreedy/spaces.hpp"
#include "pgreedy/theorems.hpp"

namespace pgreedy {

using json = nlohmann::ordered_json;

// Scalars are written as plain numbers when real and as [re, im] otherwise.
// Index sets are written 1-based.

json to_json(Scalar x);
Scalar scalar_from_json(const json& j);
json to_json(const CoeffVector& f);
CoeffVector coeff_vector_from_json(const json& j);
json index_set_to_json(const IndexSet& A);
IndexSet index_set_from_json(const json& j, std::size_t dimension);

/// "real", "roots:K" or an explicit list of scalars.
std::vector<Scalar> signs_from_json(const json& j);
json signs_to_json(const std::vector<Scalar>& signs);

/// {"builtin": name, "dimension", "p", "field"} or
/// {"dimension", "p", "field", "norm": {"kind", "weights" | "matrix", "base_weights"}}.
PSpace space_from_json(const json& j);
json space_to_json(const PSpace& space);

/// Grid for a space of the given dimension; "dimension" in j, when present,
/// must agree. max_support defaults to the dimension.
GridSpec grid_from_json(const json& j, std::size_t dimension);
json grid_to_json(const GridSpec& grid);

RenormSearchSpec renorm_from_json(const json& j, std::size_t dimension);
json renorm_to_json(const RenormSearchSpec& spec);

json to_json(const Witness& w, ConstantKind kind);
Witness witness_from_json(const json& j);
json to_json(const ConstantEstimate& e);
ConstantEstimate estimate_from_json(const json& j);

json to_json(const InequalityRecord& r);
InequalityRecord record_from_json(const json& j);

json to_json(const AxiomReport& r);
json to_json(const RenormCheck& r);

/// Shortest decimal string that reads back to the same double.
std::string shortest(double x);
std::string hex64(std::uint64_t v);
std::uint64_t fnv1a(std::string_view bytes) noexcept;

}  // namespace pgreedy
