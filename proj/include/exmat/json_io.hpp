#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "exmat/complex_matrix.hpp"
#include "exmat/config.hpp"
#include "exmat/constructors.hpp"
#include "exmat/exceptionality.hpp"
#include "exmat/extremal.hpp"
#include "exmat/holo.hpp"

namespace exmat {

using json = nlohmann::json;

// Matrix JSON: {"rows": n, "cols": m, "entries": [[re, im], ...]} row-major.
json matrix_to_json(const ComplexMatrix& E);
ComplexMatrix matrix_from_json(const json& j);

// BlaschkeProduct JSON: {"phase": theta, "zeros": [[re, im], ...]}.
json blaschke_to_json(const BlaschkeProduct& b);
BlaschkeProduct blaschke_from_json(const json& j,
                                   const Tolerances& tol = default_tolerances());

// GtFunction JSON: {"t": t, "inner": <BlaschkeProduct>}.
json gt_to_json(const GtFunction& g);
GtFunction gt_from_json(const json& j, const Tolerances& tol = default_tolerances());

// BlockSpec JSON: {"a": a, "A": <matrix>, "variant": "strict"|"lastColZero"}.
json block_spec_to_json(const BlockSpec& s);
BlockSpec block_spec_from_json(const json& j);

json budget_to_json(const SearchBudget& b);
SearchBudget budget_from_json(const json& j, SearchBudget base = {});

json tolerances_to_json(const Tolerances& t);
Tolerances tolerances_from_json(const json& j, Tolerances base = {});
void apply_tolerance_override(Tolerances& t, const std::string& key, double value);

json extremal_result_to_json(const ExtremalResult& r);

json verdict_to_json(const ExceptionalityVerdict& v);

json canonical_form_to_json(const CanonicalForm& cf);

std::string verdict_status_name(VerdictStatus s);
std::string verdict_reason_name(VerdictReason r);

}  // namespace exmat
