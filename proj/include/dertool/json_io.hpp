#pragma once

#include <json.hpp>

#include "dertool/derivcalc.hpp"
#include "dertool/hunter.hpp"
#include "dertool/polyext.hpp"

namespace dertool {

using nlohmann::json;

// Rationals serialize as strings "p/q" (or "p"); matrices as arrays of
// arrays of rational strings; polynomials as coefficient arrays lowest
// degree first.
json matrix_to_json(const QMat& m);
QMat matrix_from_json(const json& j);

json vec_to_json(const QVec& v);
QVec vec_from_json(const json& j);

json unipoly_to_json(const UniPoly& p);

// Algebra files: {"dim": n, "basis": [names], "table": table[i][j][k],
// "unit": optional vector}.
json algebra_to_json(const AlgebraPtr& alg);
AlgebraPtr algebra_from_json(const json& j);

// Polynomial backend: {"coeff_algebra": {...}, "degree_cap": n}.
json polyalg_to_json(const PolyAlgPtr& alg);
PolyAlgPtr polyalg_from_json(const json& j);

// Elements as coefficient vectors: {"algebra": id, "coeffs": [...]}.
json fin_elem_to_json(const AlgElem& a, const std::string& algebra_id);

json opclass_to_json(const OpClass& c);
json grading_to_json(const GradingDecomp& g, const AlgebraPtr& alg);
json jc_to_json(const JCDecomp& jc);
json surj_report_to_json(const SurjReport& rep);
json hunter_report_to_json(const HunterReport& rep);

} // namespace dertool
