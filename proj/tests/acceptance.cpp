// Acceptance suite: runs the end-to-end checks the project promises and
// prints one pass/fail line per criterion.  The first argument must be the
// path to the command-line binary (used by the negative-control criterion).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "equizeta/errors.hpp"
#include "equizeta/pipeline.hpp"
#include "equizeta/repr_ring.hpp"
#include "oracles.hpp"

using namespace equizeta;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, const std::function<void()>& body) {
    try {
        body();
        std::printf("criterion %d: PASS  %s\n", number, label.c_str());
    } catch (const std::exception& ex) {
        ++failures;
        std::printf("criterion %d: FAIL  %s  (%s)\n", number, label.c_str(), ex.what());
    }
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

TorsionVector tv(std::vector<std::pair<long, long>> coords) {
    std::vector<mpq_class> c;
    for (auto [num, den] : coords) {
        mpq_class q(num, den);
        q.canonicalize();
        c.push_back(q);
    }
    return TorsionVector(std::move(c));
}

ProblemSpec simple_spec(std::vector<std::string> vars, std::vector<Term> terms,
                        GroupChoice gc) {
    ProblemSpec s;
    s.variables = std::move(vars);
    s.terms = std::move(terms);
    s.group_choice = gc;
    return s;
}

ProblemSpec cusp_spec() {
    return simple_spec({"x", "y"}, {{{2, 0}, 1}, {{0, 3}, 1}}, GroupChoice::MonodromyCyclic);
}

int run_cli(const std::string& cli, const std::string& args) {
    std::string cmd = cli + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    if (status == -1) throw std::runtime_error("failed to spawn the CLI");
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string write_temp_json(const json& doc, const std::string& name) {
    std::string path = "/tmp/equizeta_acceptance_" + name + ".json";
    std::ofstream out(path);
    out << doc.dump(2);
    return path;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-cli>\n");
        return 2;
    }
    std::string cli = argv[1];

    // 1. The main identity holds exactly, corpus-wide, in both group
    //    choices, within the time budget.
    criterion(1, "main identity exact on the corpus, both groups, < 10 s", [&] {
        auto start = std::chrono::steady_clock::now();
        auto corpus = builtin_corpus();
        require(corpus.size() >= 20, "corpus too small");
        for (const auto& entry : corpus) {
            PipelineResult r = run_pipeline(entry.spec);
            require(r.residual.is_zero(), entry.name + ": nonzero residual");
            require(r.ok, entry.name + ": not ok");
            require(r.secondary_ok, entry.name + ": secondary identity failed");
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        require(secs < 10.0, "corpus took " + std::to_string(secs) + " s");
    });

    // 2. The hand-verified cusp instance.
    criterion(2, "cusp fixture: zeta, orbit invariant, tau(log P), zeta(t)", [&] {
        PipelineResult r = run_pipeline(cusp_spec());
        const auto& g = r.ext.group();
        auto h3 = FiniteDiagonalGroup::canonicalize(2, {tv({{0, 1}, {1, 3}})});
        auto h2 = FiniteDiagonalGroup::canonicalize(2, {tv({{1, 2}, {0, 1}})});
        auto e = FiniteDiagonalGroup::trivial(2);

        BurnsideElement zeta_expected = BurnsideElement::basis(g, h3) +
                                        BurnsideElement::basis(g, h2) +
                                        BurnsideElement::basis(g, e, -1);
        require(r.zeta == zeta_expected, "zeta differs from the fixture");

        ExtBurnsideElement orbit_expected = ExtBurnsideElement::basis(r.ext, e);
        require(r.orbit == orbit_expected, "orbit invariant differs");

        ExtBurnsideElement tau_expected = ExtBurnsideElement::basis(r.ext, h3) +
                                          ExtBurnsideElement::basis(r.ext, h2) +
                                          ExtBurnsideElement::basis(r.ext, g, -1);
        require(r.tau_log_p == tau_expected, "tau(log P) differs");

        ClassicalReport c = run_classical(r);
        require(c.zeta_t.to_string() == "(1-t^2)(1-t^3)(1-t^6)^-1",
                "zeta(t) string differs: " + c.zeta_t.to_string());
    });

    // 3. The one-variable family x^d.
    criterion(3, "one-variable family: P_X, orbit invariant, zeta(t), residual", [&] {
        for (long d : {1L, 2L, 5L}) {
            ProblemSpec spec =
                simple_spec({"x"}, {{{d}, 1}}, GroupChoice::MonodromyCyclic);
            PipelineResult r = run_pipeline(spec);
            auto coeffs = r.poincare.classical_coefficients();
            for (long s = 0; s < static_cast<long>(coeffs.size()); ++s)
                require(coeffs[static_cast<size_t>(s)] == (s < d ? 1 : 0),
                        "P_X coefficient mismatch at degree " + std::to_string(s));
            require(r.orbit.is_zero(), "orbit invariant should vanish");
            require(r.residual.is_zero(), "residual should vanish");
            ClassicalReport c = run_classical(r);
            require(c.zeta_t.exponents().size() == 1 &&
                        c.zeta_t.exponents().count(d) == 1 &&
                        c.zeta_t.exponents().at(d) == 1,
                    "zeta(t) should be 1 - t^" + std::to_string(d));
        }
    });

    // 4. Route independence: the two chi routes agree and the two Milnor
    //    number routes agree.
    criterion(4, "chi route agreement and Milnor number cross-checks", [&] {
        long strata_checked = 0;
        for (const auto& entry : builtin_corpus()) {
            PipelineResult r = run_pipeline(entry.spec);
            for (const auto& e : r.strata.entries) {
                if (!e.routes_agree) continue;
                require(*e.routes_agree, entry.name + ": routes disagree at {" +
                                             index_set_key(e.index_set) + "}");
                ++strata_checked;
            }
        }
        require(strata_checked >= 30, "too few strata exercised both routes");

        PipelineResult cusp = run_pipeline(cusp_spec());
        const auto& big = cusp.strata.lookup({0, 1});
        require(big.chi_v == -6 && big.chi_v_alt && *big.chi_v_alt == -6,
                "cusp big-torus chi should be -6 on both routes");

        auto mu_pair = [](std::vector<std::string> vars, std::vector<Term> terms,
                          long expected) {
            long n = static_cast<long>(vars.size());
            auto p = QuasiPolynomial(n, terms).with_inferred_weights();
            mpq_class formula = milnor_number(p);
            auto oracle = milnor_algebra_oracle(p, default_resource_limit());
            require(oracle.has_value(), "oracle reports non-isolated");
            require(formula == mpq_class(expected), "formula value unexpected");
            require(*oracle == expected, "oracle value unexpected");
        };
        mu_pair({"x", "y", "z"}, {{{2, 0, 0}, 1}, {{0, 3, 0}, 1}, {{0, 0, 5}, 1}}, 8);
        mu_pair({"x", "y"}, {{{2, 0}, 1}, {{0, 3}, 1}}, 2);
        mu_pair({"x", "y"}, {{{2, 1}, 1}, {{0, 2}, 1}}, 3);
    });

    // 5. Algebraic laws against brute-force oracles.
    criterion(5, "exp/log, red after ind, product and character oracles", [&] {
        auto cusp = QuasiPolynomial(2, {{{2, 0}, 1}, {{0, 3}, 1}}).with_inferred_weights();
        ExtendedGroup ext(cusp.weights(), cusp.symmetry_group());
        std::mt19937 rng(20240808);
        std::uniform_int_distribution<int> coeff(-3, 3);
        std::uniform_int_distribution<long> expo(0, 4);
        for (int trial = 0; trial < 100; ++trial) {
            NegSeries a(ext, 12);
            for (int t = 0; t < 4; ++t) {
                std::vector<long> m(2);
                do {
                    m[0] = expo(rng);
                    m[1] = expo(rng);
                } while (m[0] == 0 && m[1] == 0);
                a.add_term(monomial_character(ext, m), coeff(rng));
            }
            require(log_map(exp_map(a)) == a, "log(exp) failed");
            NegSeries s = exp_map(a);
            require(exp_map(log_map(s)) == s, "exp(log) failed");
        }

        auto subs = testing::all_subgroups(ext.group());
        for (int trial = 0; trial < 100; ++trial) {
            BurnsideElement x(ext.group());
            for (const auto& s : subs)
                if (rng() % 2) x.add_term(s, coeff(rng));
            require(red(ind_ext(x, ext)) == x, "red after ind is not the identity");
        }

        std::vector<FiniteDiagonalGroup> groups = {
            FiniteDiagonalGroup::canonicalize(2, {tv({{1, 2}, {1, 3}})}),
            FiniteDiagonalGroup::canonicalize(
                2, {tv({{1, 2}, {0, 1}}), tv({{0, 1}, {1, 4}})}),
            FiniteDiagonalGroup::canonicalize(3, {tv({{1, 2}, {1, 3}, {1, 5}})}),
        };
        for (const auto& g : groups) {
            auto sgs = testing::all_subgroups(g);
            for (const auto& h : sgs)
                for (const auto& k : sgs) {
                    auto lib = BurnsideElement::basis(g, h) * BurnsideElement::basis(g, k);
                    auto brute = testing::product_orbits_brute(g, h, k);
                    BurnsideElement expect(g);
                    for (const auto& [stab, count] : brute) expect.add_term(stab, count);
                    require(lib == expect, "product differs from orbit enumeration");
                }
        }

        int pairs = 0;
        while (pairs < 50) {
            const auto& g = groups[static_cast<size_t>(rng() % groups.size())];
            auto sgs = testing::all_subgroups(g);
            BurnsideElement a(g), b(g);
            for (const auto& s : sgs) {
                if (rng() % 3 == 0) a.add_term(s, coeff(rng));
                if (rng() % 3 == 0) b.add_term(s, coeff(rng));
            }
            auto lhs = testing::to_multiset(to_repr_ring(a * b));
            auto rhs = testing::multiset_product(testing::to_multiset(to_repr_ring(a)),
                                                 testing::to_multiset(to_repr_ring(b)));
            require(lhs == rhs, "representation-ring map not multiplicative");
            ++pairs;
        }
    });

    // 6. The closed form and its logarithm as executable identities.
    criterion(6, "closed Poincare form and its finite logarithm, corpus-wide", [&] {
        for (const auto& entry : builtin_corpus()) {
            PipelineResult r = run_pipeline(entry.spec);
            require(r.depth >= 12, "depth below 12");
            require(r.closed_matches_counted, entry.name + ": closed form mismatch");
            require(r.log_matches_finite_form, entry.name + ": log mismatch");
        }
    });

    // 7. Classical consistency of the zeta degrees.
    criterion(7, "sum of m s_m equals chi of the Milnor fibre", [&] {
        for (const auto& entry : builtin_corpus()) {
            if (entry.spec.group_choice != GroupChoice::MonodromyCyclic) continue;
            PipelineResult r = run_pipeline(entry.spec);
            ClassicalReport c = run_classical(r);
            long n = static_cast<long>(entry.spec.variables.size());
            mpq_class mu = c.milnor;
            require(mu.get_den() == 1, entry.name + ": non-integral Milnor number");
            mpz_class expected = 1 + ((n % 2 == 1) ? mu.get_num() : -mu.get_num());
            require(c.sum_m_sm == expected, entry.name + ": degree sum mismatch");
            require(c.chi_v_total == c.sum_m_sm, entry.name + ": strata total mismatch");
        }
        PipelineResult e8 = run_pipeline(simple_spec(
            {"x", "y", "z"}, {{{2, 0, 0}, 1}, {{0, 3, 0}, 1}, {{0, 0, 5}, 1}},
            GroupChoice::MonodromyCyclic));
        require(run_classical(e8).sum_m_sm == 9, "E8 degree sum should be 9");
    });

    // 8. The series identity under the frozen duality conventions.
    criterion(8, "series identity on calibration and independent entries", [&] {
        std::vector<std::string> calibration = {"cusp_x2_y3/cyclic", "a1_x2/cyclic",
                                                "a4_x5/cyclic", "pt_x/cyclic"};
        long non_calibration_passed = 0;
        for (const auto& entry : builtin_corpus()) {
            if (entry.spec.group_choice != GroupChoice::MonodromyCyclic) continue;
            PipelineResult r = run_pipeline(entry.spec);
            ClassicalReport c = run_classical(r);
            require(r.depth >= 12, "residual depth below 12");
            require(c.ini_ok, entry.name + ": series residual is nonzero");
            for (const auto& coeff_i : c.ini_residual)
                require(coeff_i == 0, entry.name + ": nonzero residual coefficient");
            bool is_calibration =
                std::find(calibration.begin(), calibration.end(), entry.name) !=
                calibration.end();
            if (!is_calibration) ++non_calibration_passed;
        }
        require(non_calibration_passed >= 2, "need two independent entries");
    });

    // 9. Negative control through the CLI.
    criterion(9, "corrupted overrides flip the CLI to exit code 2", [&] {
        json clean = problem_to_json(cusp_spec());
        std::string clean_path = write_temp_json(clean, "clean");
        require(run_cli(cli, "verify --input " + clean_path) == 0, "clean run should pass");

        json bad_v = clean;
        bad_v["overrides"] = {{"chi_V", {{"1,2", -12}}}};
        std::string bad_v_path = write_temp_json(bad_v, "bad_v");
        require(run_cli(cli, "verify --input " + bad_v_path) == 2,
                "chi_V corruption should exit 2");

        json bad_y = clean;
        bad_y["overrides"] = {{"chi_Y", {{"1,2", 2}}}};
        std::string bad_y_path = write_temp_json(bad_y, "bad_y");
        require(run_cli(cli, "verify --input " + bad_y_path) == 2,
                "chi_Y corruption should exit 2");

        json bad_axis = clean;
        bad_axis["overrides"] = {{"chi_Y", {{"1", 7}}}};
        std::string bad_axis_path = write_temp_json(bad_axis, "bad_axis");
        require(run_cli(cli, "verify --input " + bad_axis_path) == 2,
                "axis chi_Y corruption should exit 2");
    });

    if (failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
}
