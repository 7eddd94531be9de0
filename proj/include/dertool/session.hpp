#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "dertool/json_io.hpp"

namespace dertool {

// Per-invocation CLI state: loaded algebras and operators by id, the output
// directory and the master seed. File writes are atomic (temp + rename).
struct Session {
    std::map<std::string, AlgebraPtr> algebras;
    std::map<std::string, PolyAlgPtr> poly_algebras;
    std::filesystem::path outdir = ".";
    std::uint64_t master_seed = 1;

    void register_algebra(const std::string& id, AlgebraPtr alg);
    void register_poly(const std::string& id, PolyAlgPtr alg);
};

void atomic_write_file(const std::filesystem::path& path, const std::string& content);

json load_json_file(const std::filesystem::path& path);

// "builtin:Q" | "builtin:dual" | "builtin:T2" | "builtin:QxQ" | a JSON file.
AlgebraPtr load_algebra_spec(const std::string& spec);

} // namespace dertool
