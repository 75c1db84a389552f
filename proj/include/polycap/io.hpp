#ifndef POLYCAP_IO_HPP
#define POLYCAP_IO_HPP

#include "polycap/matrices.hpp"
#include "polycap/oracle.hpp"
#include "polycap/sparse.hpp"

#include <json.hpp>

#include <memory>
#include <string>

namespace polycap {

// One parsed input file.  `kind` selects which payload pointer is set;
// `oracle` is always usable.
struct ProblemInput {
    std::string kind; // "matrix" | "tuple" | "sparse"
    std::shared_ptr<NonnegativeMatrix> matrix;
    std::shared_ptr<HermitianTuple> tuple;
    std::shared_ptr<SparsePolynomial> sparse;
    PolynomialOracle oracle;
};

ProblemInput parse_input(const nlohmann::json& doc);
ProblemInput load_input(const std::string& path);

// Accepts a JSON number (exact binary rational) or a "p/q" / decimal string.
Rat rat_from_json(const nlohmann::json& v, const std::string& what);

// Canonical serialization used by every command: keys sorted (nlohmann's
// std::map object type), two-space indent, trailing newline.  Numbers are
// emitted by the shortest round-trip formatter, so equal configs give
// byte-identical reports.
std::string dump_report(const nlohmann::json& report);

} // namespace polycap

#endif
