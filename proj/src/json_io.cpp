#include "dertool/json_io.hpp"

#include "dertool/expr.hpp"

namespace dertool {

namespace {

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw InputError("expected a rational as string or integer");
}

} // namespace

json matrix_to_json(const QMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rat_to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

QMat matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw InputError("matrix JSON must be an array of arrays");
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j[0].size());
    QMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[i].size()) != cols)
            throw InputError("ragged matrix JSON");
        for (int c = 0; c < cols; ++c) m.at(i, c) = rat_from_json(j[i][c]);
    }
    return m;
}

json vec_to_json(const QVec& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(rat_to_string(x));
    return out;
}

QVec vec_from_json(const json& j) {
    if (!j.is_array()) throw InputError("vector JSON must be an array");
    QVec v;
    for (const auto& x : j) v.push_back(rat_from_json(x));
    return v;
}

json unipoly_to_json(const UniPoly& p) {
    json out = json::array();
    for (const auto& c : p.coeffs()) out.push_back(rat_to_string(c));
    return out;
}

json algebra_to_json(const AlgebraPtr& alg) {
    json j;
    j["dim"] = alg->dim();
    j["basis"] = alg->basis_names();
    json table = json::array();
    for (int i = 0; i < alg->dim(); ++i) {
        json row = json::array();
        for (int k = 0; k < alg->dim(); ++k) row.push_back(vec_to_json(alg->product(i, k)));
        table.push_back(std::move(row));
    }
    j["table"] = std::move(table);
    if (alg->unit()) j["unit"] = vec_to_json(*alg->unit());
    return j;
}

AlgebraPtr algebra_from_json(const json& j) {
    if (!j.contains("dim") || !j.contains("basis") || !j.contains("table"))
        throw InputError("algebra JSON needs dim, basis and table");
    int dim = j["dim"].get<int>();
    std::vector<std::string> names = j["basis"].get<std::vector<std::string>>();
    std::vector<QVec> table;
    for (const auto& row : j["table"])
        for (const auto& cell : row) table.push_back(vec_from_json(cell));
    std::optional<QVec> unit;
    if (j.contains("unit") && !j["unit"].is_null()) unit = vec_from_json(j["unit"]);
    return algebra_from_table(dim, std::move(names), std::move(table), std::move(unit));
}

json polyalg_to_json(const PolyAlgPtr& alg) {
    json j;
    j["coeff_algebra"] = algebra_to_json(alg->coeff);
    j["degree_cap"] = alg->degree_cap;
    return j;
}

PolyAlgPtr polyalg_from_json(const json& j) {
    if (!j.contains("coeff_algebra"))
        throw InputError("polynomial backend JSON needs coeff_algebra");
    int cap = j.value("degree_cap", 64);
    return poly_ext(algebra_from_json(j["coeff_algebra"]), cap);
}

json fin_elem_to_json(const AlgElem& a, const std::string& algebra_id) {
    json j;
    j["algebra"] = algebra_id;
    j["coeffs"] = vec_to_json(a.coeffs());
    return j;
}

json opclass_to_json(const OpClass& c) {
    json j;
    j["derivation"] = c.is_derivation;
    j["endomorphism"] = c.is_endomorphism;
    j["ederivation"] = c.is_ederivation;
    switch (c.locally_nilpotent) {
    case OpClass::LN::Yes: j["locally_nilpotent"] = "yes"; break;
    case OpClass::LN::No: j["locally_nilpotent"] = "no"; break;
    case OpClass::LN::Unknown: j["locally_nilpotent"] = "unknown"; break;
    }
    j["ln_witness"] = c.ln_witness;
    if (c.failure_witness)
        j["derivation_failure_witness"] = {c.failure_witness->first, c.failure_witness->second};
    j["sampled"] = c.sampled;
    return j;
}

json grading_to_json(const GradingDecomp& g, const AlgebraPtr& alg) {
    (void)alg;
    json j;
    json lams = json::array();
    for (const auto& l : g.eigenvalues) lams.push_back(rat_to_string(l));
    j["eigenvalues"] = std::move(lams);
    json blocks = json::array();
    for (std::size_t b = 0; b < g.blocks.size(); ++b) {
        json blk = json::array();
        for (const auto& v : g.blocks[b]) blk.push_back(print_elem(v));
        blocks.push_back(std::move(blk));
    }
    j["blocks"] = std::move(blocks);
    j["semisimple"] = matrix_to_json(g.semisimple);
    j["nilpotent"] = matrix_to_json(g.nilpotent);
    j["witness_polynomial"] = unipoly_to_json(g.witness);
    json recips = json::array();
    for (const auto& [a, b] : g.reciprocal_pairs)
        recips.push_back({rat_to_string(a), rat_to_string(b)});
    j["reciprocal_pairs"] = std::move(recips);
    return j;
}

json jc_to_json(const JCDecomp& jc) {
    json j;
    j["semisimple"] = matrix_to_json(jc.semisimple);
    j["nilpotent"] = matrix_to_json(jc.nilpotent);
    j["witness_polynomial"] = unipoly_to_json(jc.witness);
    j["nilpotency_index"] = jc.nilpotency_index;
    return j;
}

json surj_report_to_json(const SurjReport& rep) {
    json j;
    j["verdict"] =
        rep.verdict == SurjReport::Verdict::Surjective ? "surjective" : "not_in_image";
    j["route"] = rep.route;
    j["rank"] = rep.rank;
    j["dim"] = rep.dim;
    if (rep.preimage_of_one) j["preimage_of_one"] = print_elem(*rep.preimage_of_one);
    if (rep.orbit) {
        json orb;
        orb["d"] = rep.orbit->d;
        orb["stable_idempotent"] = print_elem(rep.orbit->stable);
        orb["branch"] = rep.orbit->nilpotent_branch ? "nilpotent" : "stable";
        json elems = json::array();
        for (const auto& e : rep.orbit->elems) elems.push_back(print_elem(e));
        orb["orbit"] = std::move(elems);
        j["unit_orbit"] = std::move(orb);
    }
    if (rep.ed_chain_preimage) j["stable_chain_preimage"] = print_elem(*rep.ed_chain_preimage);
    j["decomposition_checked"] = rep.decomposition_checked;
    return j;
}

json hunter_report_to_json(const HunterReport& rep) {
    json j;
    j["mode"] = to_string(rep.mode);
    j["seed"] = rep.seed;
    j["trials"] = rep.trials;
    j["passes"] = rep.passes;
    json v = json::array();
    for (const auto& viol : rep.violations) {
        json one;
        one["trial"] = viol.trial;
        one["subseed"] = viol.subseed;
        one["what"] = viol.what;
        v.push_back(std::move(one));
    }
    j["violations"] = std::move(v);
    return j;
}

} // namespace dertool
