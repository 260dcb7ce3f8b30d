// pvshort: character-sum toolkit CLI.
//
// Subcommands mirror the library surface: exact character evaluation,
// prefix-sum profiles, Gauss sums, the trigonometric-sum checks, the
// three-part decomposition report, batch surveys, and the verification
// suite.

#include <complex>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pvshort/acceptance.hpp"
#include "pvshort/character.hpp"
#include "pvshort/charsum.hpp"
#include "pvshort/decomposition.hpp"
#include "pvshort/error.hpp"
#include "pvshort/io.hpp"
#include "pvshort/survey.hpp"
#include "pvshort/triglemma.hpp"

namespace {

using namespace pvshort;

CharacterLabel resolve_label(std::uint64_t q, const std::string& text) {
    CharacterLabel label = parse_label(text);
    if (label.q == 0) label.q = q;
    if (label.q != q)
        throw UsageError("label modulus " + std::to_string(label.q) +
                         " does not match q = " + std::to_string(q));
    return label;
}

std::string complex_str(std::complex<double> z) {
    return "(" + format_double(z.real()) + ", " + format_double(z.imag()) + ")";
}

int run(int argc, char** argv) {
    CLI::App app{"short-range character sum toolkit"};
    app.require_subcommand(1);

    // char-eval
    std::uint64_t q = 0;
    std::string label_text;
    std::int64_t n = 0;
    auto* cmd_eval = app.add_subcommand("char-eval", "evaluate chi(n) as an exact angle");
    cmd_eval->add_option("q", q, "modulus")->required();
    cmd_eval->add_option("label", label_text, "character label k1,k2,... or q:k1,...")->required();
    cmd_eval->add_option("n", n, "argument")->required();

    // charsum
    std::string profile_path;
    auto* cmd_charsum = app.add_subcommand("charsum", "prefix sums S(N, chi) for N = 1..q-1");
    cmd_charsum->add_option("q", q, "modulus")->required();
    cmd_charsum->add_option("label", label_text, "character label")->required();
    cmd_charsum->add_option("--emit-profile", profile_path, "write the profile CSV here");

    // gauss
    auto* cmd_gauss = app.add_subcommand("gauss", "Gauss sum tau(chi)");
    cmd_gauss->add_option("q", q, "modulus")->required();
    cmd_gauss->add_option("label", label_text, "character label")->required();

    // trig family
    auto* cmd_trig = app.add_subcommand("trig", "trigonometric-sum checks");
    cmd_trig->require_subcommand(1);
    double lower = 1.0, upper = 1.0, alpha = 0.0, gamma = 0.0, epsilon = 0.05, theta = 0.0;
    std::uint64_t trig_q = 1'000'000, m = 1, p = 1, terms = 10'000;
    auto* t_sigma = cmd_trig->add_subcommand("sigma", "sum of cos(alpha n)/n over [lower, upper]");
    t_sigma->add_option("--lower", lower)->required();
    t_sigma->add_option("--upper", upper)->required();
    t_sigma->add_option("--alpha", alpha)->required();
    auto* t_eq1 = cmd_trig->add_subcommand("eq1", "cosine-deficit sum vs its log q main term");
    auto* t_eq2 = cmd_trig->add_subcommand("eq2", "|sin| sum vs its (2/pi) log q main term");
    auto* t_eq3 = cmd_trig->add_subcommand("eq3", "window floor via the v-split chain");
    for (auto* c : {t_eq1, t_eq2, t_eq3}) {
        c->add_option("--q", trig_q)->required();
        c->add_option("--gamma", gamma)->required();
        c->add_option("--epsilon", epsilon)->capture_default_str();
        c->add_option("--alpha", alpha)->required();
    }
    auto* t_eq4 = cmd_trig->add_subcommand("eq4", "floor for sigma(m+1, p(2m+1))");
    t_eq4->add_option("--m", m)->required();
    t_eq4->add_option("--p", p)->required();
    t_eq4->add_option("--alpha", alpha)->required();
    t_eq4->add_option("--q", trig_q)->capture_default_str();
    auto* t_fourier = cmd_trig->add_subcommand("fourier", "truncated |sin| cosine expansion");
    t_fourier->add_option("--theta", theta)->required();
    t_fourier->add_option("--terms", terms)->capture_default_str();

    // decomp
    std::uint64_t decomp_N = 1;
    auto* cmd_decomp = app.add_subcommand("decomp", "three-part decomposition report (JSON)");
    cmd_decomp->add_option("q", q, "modulus")->required();
    cmd_decomp->add_option("label", label_text, "character label")->required();
    cmd_decomp->add_option("N", decomp_N, "prefix length")->required();
    cmd_decomp->add_option("--gamma", gamma)->capture_default_str();
    cmd_decomp->add_option("--epsilon", epsilon)->capture_default_str();

    // survey
    std::string config_path, output_dir_override;
    auto* cmd_survey = app.add_subcommand("survey", "batch experiments");
    cmd_survey->require_subcommand(1);
    auto* s_theorem = cmd_survey->add_subcommand("theorem", "max-ratio scan over characters");
    auto* s_lemma = cmd_survey->add_subcommand("lemma", "trig-bound sweeps");
    auto* s_decomp = cmd_survey->add_subcommand("decomposition", "per-character reports");
    for (auto* c : {s_theorem, s_lemma, s_decomp}) {
        c->add_option("--config", config_path, "flat key-value config file");
        c->add_option("--output-dir", output_dir_override, "override output_dir");
    }

    // verify
    AcceptanceOptions accept;
    auto* cmd_verify = app.add_subcommand("verify", "run the full verification suite");
    cmd_verify->add_option("--output-dir", accept.outputDir, "scratch/output directory")
        ->capture_default_str();
    cmd_verify->add_option("--workers", accept.workerCount, "worker count (0 = hardware)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (cmd_eval->parsed()) {
        const CharacterGroup group(q);
        const auto label = resolve_label(q, label_text);
        const auto v = group.evaluate(label, n);
        if (!v) {
            std::cout << "chi(" << n << ") = 0 (gcd(n, q) > 1)\n";
        } else {
            std::cout << "chi(" << n << ") = e(" << v->num << "/" << v->den
                      << ") = " << complex_str(v->to_complex()) << "\n";
        }
        return 0;
    }
    if (cmd_charsum->parsed()) {
        const CharacterGroup group(q);
        const auto label = resolve_label(q, label_text);
        const auto profile = prefix_sums(group, label);
        std::cout << "label " << to_string(label) << ": maxAbs = "
                  << format_double(profile.maxAbs) << " at N = " << profile.argmaxN
                  << ", full-period sum = " << complex_str(profile.partials.back()) << "\n";
        if (!profile_path.empty()) {
            std::ofstream out(profile_path, std::ios::binary);
            if (!out) throw UsageError("cannot open " + profile_path);
            write_profile_csv(profile, out);
            std::cout << "profile written to " << profile_path << "\n";
        }
        return 0;
    }
    if (cmd_gauss->parsed()) {
        const CharacterGroup group(q);
        const auto label = resolve_label(q, label_text);
        const auto g = gauss_sum(group, label);
        std::cout << "tau = " << complex_str(g.value)
                  << ", |tau|^2 - q = " << format_double(g.modulusCheck) << "\n";
        return 0;
    }
    if (cmd_trig->parsed()) {
        if (t_sigma->parsed()) {
            std::cout << format_double(sigma({lower, upper, alpha})) << "\n";
        } else if (t_eq1->parsed() || t_eq2->parsed()) {
            const auto r = t_eq1->parsed() ? lemma_eq1(trig_q, gamma, epsilon, alpha)
                                           : lemma_eq2(trig_q, gamma, epsilon, alpha);
            std::cout << "lhs = " << format_double(r.lhs)
                      << ", main = " << format_double(r.mainTerm)
                      << ", residual = " << format_double(r.residual) << "\n";
        } else if (t_eq3->parsed()) {
            const auto r = sigma_lower_bound_eq3(trig_q, gamma, epsilon, alpha);
            std::cout << "value = " << format_double(r.value)
                      << ", chain bound = " << format_double(r.chainBound)
                      << ", holds = " << (r.holds ? "true" : "false")
                      << ", split residual = " << format_double(r.splitResidual)
                      << " (mBar=" << r.points.mBar << " pBar=" << r.points.pBar
                      << " vBar=" << r.points.vBar << ")\n";
        } else if (t_eq4->parsed()) {
            const auto r = lower_bound_eq4_check(m, p, alpha, trig_q);
            std::cout << "sigma(" << m + 1 << ", " << r.v
                      << ") = " << format_double(r.value)
                      << ", bound = " << format_double(r.bound)
                      << ", holds = " << (r.holds ? "true" : "false") << "\n";
        } else if (t_fourier->parsed()) {
            const auto r = abs_sin_fourier(theta, terms);
            std::cout << "approx = " << format_double(r.approx) << ", |sin theta| = "
                      << format_double(std::abs(std::sin(theta)))
                      << ", truncation bound = " << format_double(r.truncationBound) << "\n";
        }
        return 0;
    }
    if (cmd_decomp->parsed()) {
        const CharacterGroup group(q);
        const auto label = resolve_label(q, label_text);
        const auto rep = decompose_sum(group, label, decomp_N, gamma, epsilon);
        std::cout << to_json(rep).dump(2) << "\n";
        return 0;
    }
    if (cmd_survey->parsed()) {
        SurveyConfig cfg = config_path.empty()
                               ? SurveyConfig{}
                               : SurveyConfig::from_key_values(KeyValueConfig::from_file(config_path));
        if (!output_dir_override.empty()) cfg.outputDir = output_dir_override;
        cfg.validate();
        if (s_theorem->parsed()) {
            const auto records = run_theorem_survey(cfg);
            std::cout << records.size() << " records written to " << cfg.outputDir << "\n";
        } else if (s_lemma->parsed()) {
            run_lemma_survey(cfg);
            std::cout << "lemma sweeps written to " << cfg.outputDir << "\n";
        } else {
            const auto reports = run_decomposition_survey(cfg);
            std::cout << reports.size() << " reports written to " << cfg.outputDir << "\n";
        }
        return 0;
    }
    if (cmd_verify->parsed()) {
        const auto results = run_acceptance(accept, std::cout);
        const bool ok = all_passed(results);
        std::cout << (ok ? "ALL CRITERIA PASSED" : "VERIFICATION FAILED") << "\n";
        return ok ? 0 : 1;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const pvshort::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const pvshort::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const pvshort::RangeTooShortError& e) {
        std::cerr << "range too short: " << e.what() << "\n";
        return 2;
    } catch (const pvshort::HypothesisError& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 2;
    } catch (const pvshort::ImprimitiveError& e) {
        std::cerr << "imprimitive character: " << e.what() << "\n";
        return 2;
    } catch (const pvshort::RangeError& e) {
        std::cerr << "range error: " << e.what() << "\n";
        return 2;
    } catch (const pvshort::OracleError& e) {
        std::cerr << "oracle failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
