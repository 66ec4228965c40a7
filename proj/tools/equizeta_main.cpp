#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "equizeta/errors.hpp"
#include "equizeta/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIdentityViolated = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitParse = 4;

equizeta::json load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw equizeta::ParseError("cannot open input file '" + path + "'");
    equizeta::json doc;
    try {
        in >> doc;
    } catch (const std::exception& ex) {
        throw equizeta::ParseError(std::string("invalid JSON: ") + ex.what());
    }
    return doc;
}

void emit(const equizeta::json& doc, const std::string& output, const std::string& format,
          const std::string& text_rendering) {
    std::string payload =
        format == "json" ? doc.dump(2) + "\n" : text_rendering;
    if (output.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(output);
        if (!out) throw equizeta::ParseError("cannot open output file '" + output + "'");
        out << payload;
    }
}

std::string text_summary_analyze(const equizeta::PipelineResult& r) {
    std::ostringstream os;
    os << "polynomial: " << r.poly.to_string(r.spec.variables) << "\n";
    os << "weights: " << r.poly.weights().to_string() << "\n";
    os << "|G_f| = " << r.full_symmetry.order().get_str()
       << ", |G| = " << r.ext.group().order().get_str() << "\n";
    os << "h = " << r.ext.monodromy().to_string() << "\n";
    os << "strata:\n";
    for (const auto& e : r.strata.entries) {
        os << "  {" << equizeta::index_set_key(e.index_set) << "}: chi_V = " << e.chi_v << " ("
           << equizeta::provenance_name(e.prov_v) << "), chi_Y = " << e.chi_y << " ("
           << equizeta::provenance_name(e.prov_y) << ")\n";
    }
    return os.str();
}

std::string text_summary_verify(const equizeta::PipelineResult& r) {
    std::ostringstream os;
    os << text_summary_analyze(r);
    os << "zeta = " << r.zeta.to_string() << "\n";
    os << "orbit invariant = " << r.orbit.to_string() << "\n";
    os << "tau(log P) = " << r.tau_log_p.to_string() << "\n";
    os << "residual = " << r.residual.to_string() << "\n";
    os << "main identity: " << (r.ok ? "ok" : "VIOLATED") << "\n";
    os << "secondary identity: " << (r.secondary_ok ? "ok" : "VIOLATED") << "\n";
    os << "independent chi routes: " << (r.independent ? "yes" : "no") << "\n";
    return os.str();
}

std::string text_summary_classical(const equizeta::PipelineResult& r,
                                   const equizeta::ClassicalReport& c) {
    std::ostringstream os;
    os << "polynomial: " << r.poly.to_string(r.spec.variables) << "\n";
    os << "P_X(t) = " << c.poincare_t.to_string() << "\n";
    os << "zeta(t) = " << c.zeta_t.to_string() << "\n";
    os << "reduced zeta(t) = " << c.zeta_reduced_t.to_string() << "\n";
    os << "Saito dual of reduced zeta = " << c.saito_dual_t.to_string() << "\n";
    os << "orbit function = " << c.orbit_t.to_string() << "\n";
    os << "sum of m*s_m = " << c.sum_m_sm.get_str() << " (chi of the Milnor fibre: "
       << c.chi_v_total << ")\n";
    os << "series identity check: " << (c.ini_ok ? "ok" : "VIOLATED") << "\n";
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equivariant zeta functions, Poincare series and Burnside-group "
                 "identities for quasihomogeneous hypersurface singularities"};
    app.require_subcommand(1);

    std::string input, output;
    std::string format = "json";
    long truncation = -1;

    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        if (needs_input)
            cmd->add_option("--input", input, "problem JSON file")->required();
        cmd->add_option("--output", output, "write the report to a file instead of stdout");
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "text"}));
        cmd->add_option("--truncation", truncation, "override the truncation depth");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "weights, groups and strata table");
    add_common(analyze, true);
    CLI::App* verify =
        app.add_subcommand("verify", "check the Burnside-group identity exactly");
    add_common(verify, true);
    CLI::App* classical =
        app.add_subcommand("classical", "classical one-variable invariants and diagnostics");
    add_common(classical, true);
    CLI::App* corpus = app.add_subcommand("corpus", "run the built-in corpus");
    add_common(corpus, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (corpus->parsed()) {
            equizeta::CorpusOutcome out = equizeta::run_corpus();
            std::ostringstream text;
            for (auto it = out.report["entries"].begin(); it != out.report["entries"].end(); ++it)
                text << it.key() << ": " << (it.value()["ok"].get<bool>() ? "ok" : "FAILED")
                     << "\n";
            text << (out.all_ok ? "corpus ok" : "corpus FAILED") << "\n";
            emit(out.report, output, format, text.str());
            return out.all_ok ? kExitOk : kExitIdentityViolated;
        }

        equizeta::ProblemSpec spec = equizeta::parse_problem(load_input(input));
        if (truncation >= 0) spec.truncation = truncation;

        if (analyze->parsed()) {
            equizeta::PipelineResult r = equizeta::run_pipeline(spec);
            emit(equizeta::analyze_report(r), output, format, text_summary_analyze(r));
            return kExitOk;
        }
        if (verify->parsed()) {
            equizeta::PipelineResult r = equizeta::run_pipeline(spec);
            emit(equizeta::verify_report(r), output, format, text_summary_verify(r));
            return r.ok ? kExitOk : kExitIdentityViolated;
        }
        if (classical->parsed()) {
            equizeta::PipelineResult r = equizeta::run_pipeline(spec);
            equizeta::ClassicalReport c = equizeta::run_classical(r);
            emit(equizeta::classical_report_json(r, c), output, format,
                 text_summary_classical(r, c));
            return kExitOk;
        }
    } catch (const equizeta::ParseError& ex) {
        std::cerr << ex.what() << "\n";
        return kExitParse;
    } catch (const equizeta::InvalidInput& ex) {
        std::cerr << ex.what() << "\n";
        return kExitUnsupported;
    } catch (const equizeta::ResourceLimit& ex) {
        std::cerr << ex.what() << "\n";
        return kExitUnsupported;
    } catch (const equizeta::Error& ex) {
        std::cerr << ex.what() << "\n";
        return kExitUnsupported;
    }
    return kExitOk;
}
