#include "polycap/bounds.hpp"
#include "polycap/capacity.hpp"
#include "polycap/errors.hpp"
#include "polycap/exact.hpp"
#include "polycap/hyperbolicity.hpp"
#include "polycap/io.hpp"
#include "polycap/polynomials.hpp"
#include "polycap/rng.hpp"
#include "polycap/structure.hpp"
#include "polycap/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace polycap;

struct Options {
    std::string input;
    double tol = 1e-6;
    int trials = 200;
    std::uint64_t seed = 42;
    std::string ordering = "best";
    std::string format = "json";
    int improve = 0;
    std::string level = "quick";
    std::string what;          // exact: permanent | mixed-disc
    std::string kind = "pos-hyperbolic"; // check: pos-hyperbolic | af | newton
    std::string r_list;        // support
    std::string point_list;    // newton
};

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ValidationError("cannot parse '" + item + "' as a number");
        }
    }
    if (out.empty()) throw ValidationError("empty number list");
    return out;
}

std::vector<int> parse_ints(const std::string& csv) {
    std::vector<int> out;
    for (double v : parse_doubles(csv)) {
        int i = static_cast<int>(v);
        if (static_cast<double>(i) != v) throw ValidationError("expected integers in the list");
        out.push_back(i);
    }
    return out;
}

std::vector<int> mask_to_set(std::uint32_t mask) {
    std::vector<int> s;
    for (int i = 0; mask >> i; ++i)
        if (mask >> i & 1u) s.push_back(i + 1); // 1-based in reports
    return s;
}

json cap_to_json(const CapacityResult& c) {
    return json{{"cap_estimate", c.cap_estimate},
                {"gap_bound", c.gap_bound},
                {"minimizer", c.minimizer},
                {"status", c.status},
                {"iterations", c.iterations},
                {"radius", c.radius}};
}

json approx_to_json(const ApproxResult& a) {
    return json{{"estimate", a.estimate},
                {"cap_lower", a.cap_lower},
                {"coefficient_lower", a.coefficient_lower},
                {"coefficient_upper", a.coefficient_upper},
                {"factor", a.factor},
                {"support_degrees", a.support_degrees},
                {"cap", cap_to_json(a.cap)}};
}

void emit(const Options& opt, const json& report,
          const std::function<void(std::ostream&)>& text_view) {
    if (opt.format == "json") {
        std::cout << dump_report(report);
    } else {
        text_view(std::cout);
    }
}

int cmd_capacity(const Options& opt) {
    ProblemInput in = load_input(opt.input);
    CapacityResult c = capacity(in.oracle, opt.tol);
    json report = cap_to_json(c);
    report["config"] = {{"command", "capacity"}, {"input", opt.input}, {"tol", opt.tol}};
    emit(opt, report, [&](std::ostream& os) {
        os << "capacity estimate: " << c.cap_estimate << "\n"
           << "log gap bound:     " << c.gap_bound << "\n"
           << "status:            " << c.status << " after " << c.iterations << " iterations\n";
    });
    return 0;
}

int cmd_scale(const Options& opt) {
    ProblemInput in = load_input(opt.input);
    json report;
    std::string text;
    if (in.kind == "matrix") {
        ScalingResult s = sinkhorn_scale(*in.matrix);
        report = json{{"d1", s.d1},
                      {"d2", s.d2},
                      {"B", s.B},
                      {"cap_product", s.cap_product},
                      {"converged", s.converged},
                      {"iterations", s.iterations},
                      {"max_defect", s.max_defect}};
        std::ostringstream os;
        os << "balanced in " << s.iterations << " sweeps, residual " << s.max_defect << "\n"
           << "capacity from the scaling product: " << s.cap_product << "\n";
        text = os.str();
    } else {
        StochasticForm sf = scale_to_doubly_stochastic(in.oracle, opt.tol);
        report = json{{"beta", sf.beta},
                      {"defect", sf.defect},
                      {"cap", cap_to_json(sf.cap)}};
        std::ostringstream os;
        os << "conjugating point found, derivative defect " << sf.defect << "\n";
        text = os.str();
    }
    report["config"] = {{"command", "scale"}, {"input", opt.input}, {"tol", opt.tol}};
    emit(opt, report, [&](std::ostream& os) { os << text; });
    return 0;
}

int cmd_approx_coef(const Options& opt) {
    ProblemInput in = load_input(opt.input);
    json report;
    std::string status;
    if (opt.improve > 0) {
        ImprovedResult r = improved_approximate(in.oracle, opt.improve);
        report = approx_to_json(r.approx);
        report["k"] = r.k;
        report["fell_back"] = r.fell_back;
        if (!r.warning.empty()) report["warning"] = r.warning;
        status = r.approx.cap.status;
    } else {
        ApproxResult a = approximate_coefficient(in.oracle);
        report = approx_to_json(a);
        status = a.cap.status;
    }
    report["config"] = {{"command", "approx-coef"},
                        {"input", opt.input},
                        {"improve", opt.improve}};
    emit(opt, report, [&](std::ostream& os) {
        os << "coefficient bracket: [" << report["coefficient_lower"].get<double>() << ", "
           << report["coefficient_upper"].get<double>() << "]\n"
           << "capacity estimate " << report["estimate"].get<double>() << " (" << status << ")\n";
    });
    return 0;
}

int cmd_perm_bounds(const Options& opt) {
    ProblemInput in = load_input(opt.input);
    if (in.kind != "matrix")
        throw ValidationError("perm-bounds expects a matrix input");
    BoundReport b = permanent_lower_bound(*in.matrix, opt.ordering, opt.tol);
    json report{{"coefficient_lower", b.coefficient_lower},
                {"coefficient_upper", b.coefficient_upper},
                {"factor", b.factor},
                {"factor_exact", rat_str(b.factor_exact)},
                {"column_supports", b.column_supports},
                {"ordering", b.ordering},
                {"formula", b.formula},
                {"cap", cap_to_json(b.cap)}};
    report["config"] = {{"command", "perm-bounds"},
                        {"input", opt.input},
                        {"ordering", opt.ordering},
                        {"tol", opt.tol}};
    emit(opt, report, [&](std::ostream& os) {
        os << "permanent bracket: [" << b.coefficient_lower << ", " << b.coefficient_upper << "]\n"
           << "damping factor " << b.factor << " (" << b.formula << ")\n";
    });
    return 0;
}

int cmd_exact(const Options& opt) {
    ProblemInput in = load_input(opt.input);
    std::string what = opt.what;
    if (what.empty()) what = (in.kind == "tuple") ? "mixed-disc" : "permanent";
    ExactValue v;
    if (what == "permanent") {
        if (in.kind != "matrix") throw ValidationError("permanent needs a matrix input");
        v = permanent_exact(*in.matrix);
    } else if (what == "mixed-disc") {
        if (in.kind != "tuple") throw ValidationError("mixed-disc needs a tuple input");
        v = mixed_discriminant_exact(*in.tuple);
    } else {
        throw ValidationError("--what must be permanent or mixed-disc");
    }
    json report;
    if (v.rational) {
        report["value"] = rat_str(*v.rational);
    } else {
        std::ostringstream os;
        os.precision(17);
        os << v.value;
        report["value"] = os.str();
    }
    report["value_float"] = v.value;
    report["method"] = v.method;
    report["config"] = {{"command", "exact"}, {"input", opt.input}, {"what", what}};
    emit(opt, report, [&](std::ostream& os) {
        os << what << " = " << report["value"].get<std::string>() << " (" << v.method << ")\n";
    });
    return 0;
}

int cmd_support(const Options& opt) {
    ProblemInput in = load_input(opt.input);
    if (opt.r_list.empty()) throw ValidationError("support needs --r with one integer per variable");
    std::vector<int> r = parse_ints(opt.r_list);
    SupportMembership sm = in_support(in.oracle, r);
    json report{{"r", r}, {"inside", sm.inside}};
    if (!sm.inside) {
        report["witness"] = mask_to_set(sm.witness_mask);
        report["witness_sum"] = sm.lhs;
        report["witness_degree"] = sm.rhs;
    }
    report["config"] = {{"command", "support"}, {"input", opt.input}, {"r", opt.r_list}};
    emit(opt, report, [&](std::ostream& os) {
        if (sm.inside) {
            os << "exponent is in the support\n";
        } else {
            os << "outside: variables {";
            for (int i : mask_to_set(sm.witness_mask)) os << " " << i;
            os << " } carry " << sm.lhs << " but the restriction degree is " << sm.rhs << "\n";
        }
    });
    return 0;
}

int cmd_newton(const Options& opt) {
    ProblemInput in = load_input(opt.input);
    if (opt.point_list.empty()) throw ValidationError("newton needs --point with one value per variable");
    std::vector<double> x = parse_doubles(opt.point_list);
    PolytopeMembership pm = in_newton_polytope(in.oracle, x, opt.tol);
    json report{{"point", x}, {"inside", pm.inside}, {"min_slack", pm.min_slack}};
    if (!pm.inside) {
        if (pm.witness_mask == 0)
            report["witness"] = "negative-coordinate";
        else
            report["witness"] = mask_to_set(pm.witness_mask);
    }
    report["config"] = {{"command", "newton"}, {"input", opt.input}, {"point", opt.point_list},
                        {"tol", opt.tol}};
    emit(opt, report, [&](std::ostream& os) {
        os << (pm.inside ? "inside" : "outside") << " (worst slack " << pm.min_slack << ")\n";
    });
    return 0;
}

int cmd_indecomposable(const Options& opt) {
    ProblemInput in = load_input(opt.input);
    IndecomposabilityReport ir = is_indecomposable(in.oracle);
    json report{{"indecomposable", ir.indecomposable}};
    if (!ir.indecomposable) {
        report["witness"] = mask_to_set(ir.witness_mask);
        report["witness_size"] = ir.witness_size;
        report["witness_degree"] = ir.witness_degree;
        auto dec = detect_decomposition(in.oracle, opt.seed);
        if (dec) {
            std::vector<int> part, comp;
            for (int i : dec->part) part.push_back(i + 1);
            for (int i : dec->complement) comp.push_back(i + 1);
            report["decomposition"] = {{"part", part},
                                       {"complement", comp},
                                       {"verified", dec->verified},
                                       {"worst_residual", dec->worst_residual}};
        }
    }
    report["config"] = {{"command", "indecomposable"}, {"input", opt.input}, {"seed", opt.seed}};
    emit(opt, report, [&](std::ostream& os) {
        if (ir.indecomposable) {
            os << "indecomposable: every proper subset has restriction degree above its size\n";
        } else {
            os << "decomposable: variables {";
            for (int i : mask_to_set(ir.witness_mask)) os << " " << i;
            os << " } have restriction degree " << ir.witness_degree << " = subset size\n";
        }
    });
    return 0;
}

int cmd_check(const Options& opt) {
    ProblemInput in = load_input(opt.input);
    json report;
    std::string text;
    if (opt.kind == "pos-hyperbolic") {
        HyperbolicityVerdict v = check_pos_hyperbolic(in.oracle, opt.trials, opt.seed);
        report = json{{"passed", v.passed}, {"trials", v.trials_run}};
        if (!v.passed) {
            report["failure"] = v.failure;
            report["counterexample"] = v.counterexample;
        }
        text = v.passed ? "passed " + std::to_string(v.trials_run) + " randomized trials\n"
                        : "failed: " + v.failure + "\n";
    } else if (opt.kind == "af") {
        Rng rng(opt.seed);
        const int m = in.oracle.num_vars(), n = in.oracle.degree();
        double worst = 0.0;
        bool ok = true;
        json fail_tuple;
        int t = 0;
        for (; t < opt.trials && ok; ++t) {
            std::vector<std::vector<double>> X;
            for (int s = 0; s < n; ++s) {
                std::vector<double> x(static_cast<std::size_t>(m));
                for (auto& v : x) v = rng.uniform(0.0, 2.0);
                X.push_back(std::move(x));
            }
            AfVerdict v = af_inequality_check(in.oracle, X);
            worst = std::min(worst, v.margin);
            if (!v.holds) {
                ok = false;
                fail_tuple = X;
            }
        }
        report = json{{"passed", ok}, {"trials", t}, {"worst_margin", worst}};
        if (!ok) report["counterexample"] = fail_tuple;
        text = ok ? "quadratic inequality held on all sampled tuples\n"
                  : "quadratic inequality violated\n";
    } else if (opt.kind == "newton") {
        Rng rng(opt.seed);
        const int m = in.oracle.num_vars();
        std::vector<double> ones(static_cast<std::size_t>(m), 1.0);
        int real_rooted = 0, violations = 0;
        for (int t = 0; t < opt.trials; ++t) {
            std::vector<double> X(static_cast<std::size_t>(m));
            for (auto& v : X) v = rng.normal();
            RootReport rep = restriction_roots(in.oracle, X, ones);
            if (!rep.all_real) continue;
            ++real_rooted;
            std::vector<double> coefs(rep.coefficients.begin(),
                                      rep.coefficients.begin() + rep.degree + 1);
            if (!newton_inequalities(coefs).newton_hold) ++violations;
        }
        report = json{{"passed", violations == 0},
                      {"trials", opt.trials},
                      {"real_rooted", real_rooted},
                      {"violations", violations}};
        text = "checked " + std::to_string(real_rooted) + " real-rooted restrictions, " +
               std::to_string(violations) + " violations\n";
    } else {
        throw ValidationError("--kind must be pos-hyperbolic, af, or newton");
    }
    report["config"] = {{"command", "check"}, {"input", opt.input}, {"kind", opt.kind},
                        {"trials", opt.trials}, {"seed", opt.seed}};
    emit(opt, report, [&](std::ostream& os) { os << text; });
    // the verdict lives in the report; reaching it is success
    return 0;
}

int cmd_verify(const Options& opt) {
    std::vector<CheckResult> checks = run_checks(opt.level, opt.seed);
    int passed = 0;
    json list = json::array();
    for (const auto& c : checks) {
        passed += c.passed ? 1 : 0;
        list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    const bool all = passed == static_cast<int>(checks.size());
    json report{{"checks", list},
                {"passed", passed},
                {"failed", static_cast<int>(checks.size()) - passed},
                {"all_passed", all}};
    report["config"] = {{"command", "verify"}, {"level", opt.level}, {"seed", opt.seed}};
    emit(opt, report, [&](std::ostream& os) {
        for (const auto& c : checks)
            os << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  (" << c.detail << ")\n";
        os << passed << "/" << checks.size() << " suites passed\n";
    });
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"capacity, scaling, and bound computations for nonnegative homogeneous polynomials"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        auto* in = sub->add_option("--input", opt.input, "JSON input file");
        if (needs_input) in->required();
        sub->add_option("--format", opt.format, "json | text")
            ->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--seed", opt.seed, "RNG seed for randomized pieces");
    };

    auto* c_cap = app.add_subcommand("capacity", "capacity estimate with a certified log gap");
    add_common(c_cap, true);
    c_cap->add_option("--tol", opt.tol, "target log gap")->check(CLI::PositiveNumber);

    auto* c_scale = app.add_subcommand("scale", "balance a matrix or conjugate an oracle");
    add_common(c_scale, true);
    c_scale->add_option("--tol", opt.tol, "defect tolerance")->check(CLI::PositiveNumber);

    auto* c_ac = app.add_subcommand("approx-coef", "bracket the top mixed coefficient");
    add_common(c_ac, true);
    c_ac->add_option("--improve", opt.improve, "derivative levels before estimating")
        ->check(CLI::NonNegativeNumber);

    auto* c_pb = app.add_subcommand("perm-bounds", "capacity bracket for the permanent");
    add_common(c_pb, true);
    c_pb->add_option("--ordering", opt.ordering, "identity | best")
        ->check(CLI::IsMember({"identity", "best"}));
    c_pb->add_option("--tol", opt.tol, "capacity log gap")->check(CLI::PositiveNumber);

    auto* c_ex = app.add_subcommand("exact", "exact reference values");
    add_common(c_ex, true);
    c_ex->add_option("--what", opt.what, "permanent | mixed-disc");

    auto* c_sup = app.add_subcommand("support", "exponent membership in the support");
    add_common(c_sup, true);
    c_sup->add_option("--r", opt.r_list, "comma-separated exponents")->required();

    auto* c_new = app.add_subcommand("newton", "point membership in the support polytope");
    add_common(c_new, true);
    c_new->add_option("--point", opt.point_list, "comma-separated coordinates")->required();
    c_new->add_option("--tol", opt.tol, "slack tolerance")->check(CLI::PositiveNumber);

    auto* c_ind = app.add_subcommand("indecomposable", "subset-degree indecomposability test");
    add_common(c_ind, true);

    auto* c_chk = app.add_subcommand("check", "randomized structural checks");
    add_common(c_chk, true);
    c_chk->add_option("--kind", opt.kind, "pos-hyperbolic | af | newton")
        ->check(CLI::IsMember({"pos-hyperbolic", "af", "newton"}));
    c_chk->add_option("--trials", opt.trials, "sample count")->check(CLI::PositiveNumber);

    auto* c_ver = app.add_subcommand("verify", "run the invariant suites");
    add_common(c_ver, false);
    c_ver->add_option("--level", opt.level, "quick | full")
        ->check(CLI::IsMember({"quick", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << app.help() << std::flush;
        return 2;
    }

    try {
        if (c_cap->parsed()) return cmd_capacity(opt);
        if (c_scale->parsed()) return cmd_scale(opt);
        if (c_ac->parsed()) return cmd_approx_coef(opt);
        if (c_pb->parsed()) return cmd_perm_bounds(opt);
        if (c_ex->parsed()) return cmd_exact(opt);
        if (c_sup->parsed()) return cmd_support(opt);
        if (c_new->parsed()) return cmd_newton(opt);
        if (c_ind->parsed()) return cmd_indecomposable(opt);
        if (c_chk->parsed()) return cmd_check(opt);
        if (c_ver->parsed()) return cmd_verify(opt);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
