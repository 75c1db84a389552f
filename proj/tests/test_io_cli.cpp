#include <doctest.h>

#include "polycap/errors.hpp"
#include "polycap/exact.hpp"
#include "polycap/io.hpp"
#include "polycap/matrices.hpp"
#include "polycap/polynomials.hpp"

#include <json.hpp>

#include <cstdio>
#include <string>
#include <sys/wait.h>

using namespace polycap;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

// Captures stdout only; stderr goes to the terminal, which is what we want
// when a test unexpectedly trips a diagnostic.
RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CLI_PATH) + " " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    REQUIRE(WIFEXITED(status));
    return RunResult{WEXITSTATUS(status), std::move(out)};
}

std::string fixture(const char* name) {
    return std::string(FIXTURES_DIR) + "/" + name;
}

} // namespace

TEST_CASE("rational values parse from strings, integers, and decimals") {
    CHECK(rat_from_json(json("2/3"), "t") == Rat(2, 3));
    CHECK(rat_from_json(json("0.25"), "t") == Rat(1, 4));
    CHECK(rat_from_json(json("-1.5"), "t") == Rat(-3, 2));
    CHECK(rat_from_json(json(7), "t") == Rat(7));
    CHECK(rat_from_json(json("007"), "t") == Rat(7));
    CHECK_THROWS_AS(rat_from_json(json("1.2.3"), "t"), ValidationError);
    CHECK_THROWS_AS(rat_from_json(json("abc"), "t"), ValidationError);
    CHECK_THROWS_AS(rat_from_json(json(true), "t"), ValidationError);
}

TEST_CASE("matrix documents round-trip into exact entries") {
    json doc = {
        {"kind", "matrix"},
        {"n", 2},
        {"entries", {{1, "1/2"}, {"0.25", 3}}},
    };
    ProblemInput in = parse_input(doc);
    CHECK(in.kind == "matrix");
    REQUIRE(in.matrix != nullptr);
    CHECK(in.matrix->at(0, 1) == Rat(1, 2));
    CHECK(in.matrix->at(1, 0) == Rat(1, 4));
    CHECK(in.oracle.num_vars() == 2);
    CHECK(in.oracle.degree() == 2);
    // per = 1*3 + 1/2 * 1/4
    CHECK(permanent_rational(*in.matrix) == Rat(25, 8));
}

TEST_CASE("tuple documents build a determinantal oracle") {
    json doc = {
        {"kind", "tuple"},
        {"n", 2},
        {"matrices",
         {
             {{"re", {{1, 0}, {0, 0}}}},
             {{"re", {{0, 0}, {0, 1}}}},
         }},
    };
    ProblemInput in = parse_input(doc);
    CHECK(in.kind == "tuple");
    REQUIRE(in.tuple != nullptr);
    CHECK(in.tuple->all_diagonal_real());
    // det(x1*E11 + x2*E22) = x1*x2
    CHECK(in.oracle({2.0, 3.0}) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("sparse documents keep their term list") {
    json doc = {
        {"kind", "sparse"},
        {"n", 3},
        {"m", 2},
        {"terms",
         {
             {{"exp", {1, 2}}, {"coef", "1/2"}},
             {{"exp", {3, 0}}, {"coef", 1}},
         }},
    };
    ProblemInput in = parse_input(doc);
    CHECK(in.kind == "sparse");
    REQUIRE(in.sparse != nullptr);
    CHECK(in.sparse->coefficient({1, 2}) == Rat(1, 2));
    CHECK(in.sparse->coefficient({3, 0}) == Rat(1));
    CHECK(in.oracle.degree() == 3);
}

TEST_CASE("malformed documents are rejected with a validation error") {
    // ragged row
    CHECK_THROWS_AS(parse_input(json{{"kind", "matrix"},
                                     {"n", 2},
                                     {"entries", {{1, 0}, {1}}}}),
                    ValidationError);
    // negative entry
    CHECK_THROWS_AS(parse_input(json{{"kind", "matrix"},
                                     {"n", 2},
                                     {"entries", {{1, 0}, {-1, 1}}}}),
                    ValidationError);
    // zero row
    CHECK_THROWS_AS(parse_input(json{{"kind", "matrix"},
                                     {"n", 2},
                                     {"entries", {{0, 0}, {1, 1}}}}),
                    ValidationError);
    // unknown kind
    CHECK_THROWS_AS(parse_input(json{{"kind", "blob"}, {"n", 1}}), ValidationError);
    // missing n
    CHECK_THROWS_AS(parse_input(json{{"kind", "matrix"},
                                     {"entries", {{1}}}}),
                    ValidationError);
    // sparse degree mismatch
    CHECK_THROWS_AS(parse_input(json{{"kind", "sparse"},
                                     {"n", 2},
                                     {"m", 1},
                                     {"terms", {{{"exp", {3}}, {"coef", 1}}}}}),
                    ValidationError);
    // tuple with wrong matrix count
    CHECK_THROWS_AS(parse_input(json{{"kind", "tuple"},
                                     {"n", 2},
                                     {"matrices", {{{"re", {{1, 0}, {0, 1}}}}}}}),
                    ValidationError);
}

TEST_CASE("reports serialize deterministically") {
    json a = {{"b", 1}, {"a", json::array({1, 2})}, {"c", "x"}};
    json b = {{"c", "x"}, {"a", json::array({1, 2})}, {"b", 1}};
    const std::string sa = dump_report(a);
    CHECK(sa == dump_report(b));
    CHECK(sa.back() == '\n');
    // keys come out sorted regardless of insertion order
    CHECK(sa.find("\"a\"") < sa.find("\"b\""));
    CHECK(sa.find("\"b\"") < sa.find("\"c\""));
}

TEST_CASE("cli computes an exact permanent") {
    RunResult r = run_cli("exact --input " + fixture("I3.json"));
    CHECK(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["value"] == "1");
    CHECK(rep["value_float"] == doctest::Approx(1.0));
    CHECK(rep["method"] == "ryser-rational");
}

TEST_CASE("cli rejects an unknown subcommand") {
    RunResult r = run_cli("frobnicate 2>/dev/null");
    CHECK(r.exit_code == 2);
}

TEST_CASE("cli rejects a missing input file") {
    RunResult r = run_cli("exact --input /nonexistent/nope.json 2>/dev/null");
    CHECK(r.exit_code == 2);
}

TEST_CASE("cli check reports a failed verdict without a failing exit") {
    RunResult r = run_cli("check --input " + fixture("square_pair.json") +
                          " --kind pos-hyperbolic --trials 50 --seed 7");
    CHECK(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["passed"] == false);
    CHECK(rep.contains("counterexample"));
}

TEST_CASE("cli output is byte-identical across runs") {
    const std::string args = "capacity --input " + fixture("J3.json") + " --seed 42";
    RunResult r1 = run_cli(args);
    RunResult r2 = run_cli(args);
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    json rep = json::parse(r1.out);
    CHECK(rep["status"] == "converged");
    CHECK(rep["cap_estimate"] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("cli brackets a permanent from column supports") {
    RunResult r = run_cli("perm-bounds --input " + fixture("J3.json"));
    CHECK(r.exit_code == 0);
    json rep = json::parse(r.out);
    const double lo = rep["coefficient_lower"].get<double>();
    const double hi = rep["coefficient_upper"].get<double>();
    const double per = 2.0 / 9.0;
    CHECK(lo <= per * (1 + 1e-9));
    CHECK(hi >= per * (1 - 1e-9));
    CHECK(rep["formula"] == "uniform-floor");
    CHECK(rep["factor_exact"] == "2/9");
}
