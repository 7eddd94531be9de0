#include "dertool/session.hpp"

#include <fstream>

namespace dertool {

void Session::register_algebra(const std::string& id, AlgebraPtr alg) {
    if (algebras.count(id) || poly_algebras.count(id))
        throw InputError("duplicate algebra id '" + id + "'");
    algebras.emplace(id, std::move(alg));
}

void Session::register_poly(const std::string& id, PolyAlgPtr alg) {
    if (algebras.count(id) || poly_algebras.count(id))
        throw InputError("duplicate algebra id '" + id + "'");
    poly_algebras.emplace(id, std::move(alg));
}

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out.good()) throw InputError("write to '" + tmp.string() + "' failed");
    }
    std::filesystem::rename(tmp, path);
}

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InputError("bad JSON in '" + path.string() + "': " + e.what());
    }
    return j;
}

AlgebraPtr load_algebra_spec(const std::string& spec) {
    if (spec.rfind("builtin:", 0) == 0) {
        std::string name = spec.substr(8);
        if (name == "Q") return rational_field();
        if (name == "dual") return dual_numbers();
        if (name == "T2") return upper_triangular2();
        if (name == "QxQ") return product_rationals(2);
        throw InputError("unknown builtin algebra '" + name + "'");
    }
    return algebra_from_json(load_json_file(spec));
}

} // namespace dertool
