#ifndef EQUIZETA_PIPELINE_HPP
#define EQUIZETA_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "equizeta/burnside.hpp"
#include "equizeta/qhpoly.hpp"
#include "equizeta/repr_ring.hpp"
#include "equizeta/strata.hpp"

namespace equizeta {

using json = nlohmann::json;

enum class GroupChoice { MonodromyCyclic, FullSymmetry, Explicit };

// One problem instance: a polynomial, a symmetry-group choice, a truncation
// depth and optional chi overrides.
struct ProblemSpec {
    std::vector<std::string> variables;
    std::vector<Term> terms;
    GroupChoice group_choice = GroupChoice::MonodromyCyclic;
    std::vector<TorsionVector> generators; // only for GroupChoice::Explicit
    long truncation = 12;
    ChiOverrides overrides;
};

ProblemSpec parse_problem(const json& doc);
json problem_to_json(const ProblemSpec& spec);
mpq_class parse_rational(const std::string& text);

// Everything the verification needs, computed once.
struct PipelineResult {
    ProblemSpec spec;
    QuasiPolynomial poly;
    FiniteDiagonalGroup full_symmetry;
    ExtendedGroup ext;
    StrataChi strata;
    long depth = 12; // effective truncation, at least the degree

    BurnsideElement zeta;
    BurnsideElement zeta_red;
    ExtBurnsideElement orbit;
    FiniteRepElement log_p;
    ExtBurnsideElement tau_log_p;
    ExtBurnsideElement lhs;      // tau(log P) - orbit
    ExtBurnsideElement rhs;      // ind(zeta - 1)
    ExtBurnsideElement residual; // lhs - rhs
    bool ok = false;
    bool secondary_ok = false;
    bool independent = false;

    NegSeries poincare;          // hypersurface series, counted route
    bool closed_matches_counted = false;
    bool log_matches_finite_form = false;

    PipelineResult(ProblemSpec s, QuasiPolynomial p, FiniteDiagonalGroup gf, ExtendedGroup e,
                   StrataChi st, BurnsideElement z, ExtBurnsideElement orb,
                   FiniteRepElement lp, NegSeries ps);
};

PipelineResult run_pipeline(const ProblemSpec& spec);

// The classical single-variable-t invariants; only defined when the finite
// part is the cyclic group generated by the monodromy element.
struct ClassicalReport {
    CyclotomicFunction zeta_t;
    CyclotomicFunction zeta_reduced_t;
    CyclotomicFunction saito_dual_t;
    CyclotomicFunction orbit_t;
    CyclotomicFunction poincare_t;
    std::vector<long> poincare_coefficients;
    std::vector<mpz_class> ini_residual;
    bool ini_ok = false;
    mpz_class sum_m_sm;
    long chi_v_total = 0;
    mpq_class milnor;
};

ClassicalReport run_classical(const PipelineResult& r);

// JSON reports with deterministic (lexicographic) key order.
json analyze_report(const PipelineResult& r);
json verify_report(const PipelineResult& r);
json classical_report_json(const PipelineResult& r, const ClassicalReport& c);

// Built-in corpus: named problem instances, each in both canonical group
// choices.
struct CorpusEntry {
    std::string name;
    ProblemSpec spec;
};
std::vector<CorpusEntry> builtin_corpus();

struct CorpusOutcome {
    json report;
    bool all_ok = false;
};
CorpusOutcome run_corpus();

// Serialization helpers shared by reports and tests.
json subgroup_to_json(const FiniteDiagonalGroup& g);
json burnside_to_json(const BurnsideElement& e);
json ext_burnside_to_json(const ExtBurnsideElement& e);
json character_to_json(const ExtCharacter& c);
std::string index_set_key(const std::vector<long>& s);

} // namespace equizeta

#endif
