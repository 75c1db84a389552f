#include "polycap/io.hpp"

#include "polycap/errors.hpp"
#include "polycap/polynomials.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <utility>

namespace polycap {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw ValidationError("input: " + msg); }

int require_int(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_integer())
        bad(std::string("missing or non-integer field \"") + key + "\"");
    return doc[key].get<int>();
}

// "p/q", "-3", "0.25" (sign + digits, optional single '.'); no exponents.
Rat rat_from_decimal_string(const std::string& s, const std::string& what) {
    if (s.empty()) bad(what + ": empty numeric string");
    if (s.find('/') != std::string::npos) {
        try {
            return Rat(s);
        } catch (const std::exception&) {
            bad(what + ": cannot parse rational \"" + s + "\"");
        }
    }
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = (s[i] == '-'), ++i;
    BigInt num = 0, den = 1;
    bool seen_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '.') {
            if (seen_dot) bad(what + ": cannot parse number \"" + s + "\"");
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            num = num * 10 + (c - '0');
            if (seen_dot) den *= 10;
            seen_digit = true;
        } else {
            bad(what + ": cannot parse number \"" + s + "\"");
        }
    }
    if (!seen_digit) bad(what + ": cannot parse number \"" + s + "\"");
    Rat r(num, den);
    return neg ? -r : r;
}

std::vector<Rat> parse_square_grid(const json& rows, int n, const std::string& what) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        bad(what + ": expected " + std::to_string(n) + " rows");
    std::vector<Rat> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            bad(what + ": row " + std::to_string(i) + " is not a length-" + std::to_string(n) +
                " array");
        for (int j = 0; j < n; ++j)
            flat.push_back(rat_from_json(row[static_cast<std::size_t>(j)],
                                         what + "(" + std::to_string(i) + "," + std::to_string(j) +
                                             ")"));
    }
    return flat;
}

ProblemInput parse_matrix(const json& doc) {
    const int n = require_int(doc, "n");
    if (!doc.contains("entries")) bad("matrix: missing \"entries\"");
    auto flat = parse_square_grid(doc["entries"], n, "matrix entry");
    auto A = std::make_shared<NonnegativeMatrix>(
        NonnegativeMatrix::from_rationals(n, std::move(flat)));
    PolynomialOracle orc = build_multilinear(*A);
    return ProblemInput{"matrix", A, nullptr, nullptr, std::move(orc)};
}

ProblemInput parse_tuple(const json& doc) {
    const int n = require_int(doc, "n");
    if (n <= 0) bad("tuple: n must be positive");
    if (!doc.contains("matrices") || !doc["matrices"].is_array() ||
        static_cast<int>(doc["matrices"].size()) != n)
        bad("tuple: \"matrices\" must be an array of exactly n matrices");
    std::vector<Eigen::MatrixXcd> mats;
    mats.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const json& mj = doc["matrices"][static_cast<std::size_t>(k)];
        const std::string tag = "tuple matrix " + std::to_string(k);
        if (!mj.is_object() || !mj.contains("re")) bad(tag + ": missing \"re\"");
        auto re = parse_square_grid(mj["re"], n, tag + " re");
        std::vector<Rat> im;
        if (mj.contains("im")) im = parse_square_grid(mj["im"], n, tag + " im");
        Eigen::MatrixXcd M(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const std::size_t idx = static_cast<std::size_t>(i) * n + j;
                const double a = to_double(re[idx]);
                const double b = im.empty() ? 0.0 : to_double(im[idx]);
                M(i, j) = std::complex<double>(a, b);
            }
        mats.push_back(std::move(M));
    }
    auto T = std::make_shared<HermitianTuple>(std::move(mats));
    PolynomialOracle orc = build_determinantal(*T);
    return ProblemInput{"tuple", nullptr, T, nullptr, std::move(orc)};
}

ProblemInput parse_sparse(const json& doc) {
    const int n = require_int(doc, "n");
    const int m = require_int(doc, "m");
    if (m <= 0) bad("sparse: m must be positive");
    if (n < 0) bad("sparse: n must be nonnegative");
    if (!doc.contains("terms") || !doc["terms"].is_array())
        bad("sparse: missing \"terms\" array");
    SparsePolynomial::Terms terms;
    std::size_t t = 0;
    for (const json& tj : doc["terms"]) {
        const std::string tag = "sparse term " + std::to_string(t++);
        if (!tj.is_object() || !tj.contains("exp") || !tj.contains("coef"))
            bad(tag + ": need \"exp\" and \"coef\"");
        const json& ej = tj["exp"];
        if (!ej.is_array() || static_cast<int>(ej.size()) != m)
            bad(tag + ": \"exp\" must be a length-" + std::to_string(m) + " array");
        std::vector<int> e;
        e.reserve(static_cast<std::size_t>(m));
        for (const json& v : ej) {
            if (!v.is_number_integer()) bad(tag + ": exponents must be integers");
            e.push_back(v.get<int>());
        }
        terms[std::move(e)] += rat_from_json(tj["coef"], tag + " coef");
    }
    auto sp = std::make_shared<SparsePolynomial>(m, std::move(terms));
    if (!sp->is_zero() && sp->degree() != n)
        bad("sparse: declared degree n = " + std::to_string(n) + " but terms have degree " +
            std::to_string(sp->degree()));
    PolynomialOracle orc = sp->is_zero() ? PolynomialOracle::zero(m, Provenance::sparse)
                                         : build_sparse(*sp);
    return ProblemInput{"sparse", nullptr, nullptr, sp, std::move(orc)};
}

} // namespace

Rat rat_from_json(const json& v, const std::string& what) {
    if (v.is_string()) return rat_from_decimal_string(v.get<std::string>(), what);
    if (v.is_number_integer()) return Rat(v.get<long long>());
    if (v.is_number_float()) {
        const double x = v.get<double>();
        if (!std::isfinite(x)) bad(what + ": non-finite value");
        return rat_from_double(x);
    }
    bad(what + ": expected a number or a numeric string");
}

ProblemInput parse_input(const json& doc) {
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
        bad("top level must be an object with a \"kind\" string");
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "matrix") return parse_matrix(doc);
    if (kind == "tuple") return parse_tuple(doc);
    if (kind == "sparse") return parse_sparse(doc);
    bad("unknown kind \"" + kind + "\" (expected matrix, tuple, or sparse)");
}

ProblemInput load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        bad(path + ": " + e.what());
    }
    return parse_input(doc);
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

} // namespace polycap
