#pragma once

// Command-line front end. run_cli() is the whole program minus main(), so the
// commands can be driven from tests with string streams.
//
// Exit codes: 0 success, 2 invalid input, 3 internal invariant violated,
// 4 survey budget exceeded, 5 a theorem guarantee failed.

#include "cyclogap/cyclotomic.hpp"
#include "cyclogap/dispatch.hpp"
#include "cyclogap/errors.hpp"
#include "cyclogap/gaps.hpp"
#include "cyclogap/number_theory.hpp"
#include "cyclogap/parallel.hpp"
#include "cyclogap/poly_io.hpp"
#include "cyclogap/survey.hpp"
#include "cyclogap/theorems.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace cyclogap {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kInvalidInput = 2;
inline constexpr int kInvariant = 3;
inline constexpr int kBudget = 4;
inline constexpr int kTheoremFailure = 5;
} // namespace exit_code

enum class OutputFormat { Text, Json, Csv };

struct CliConfig {
    std::uint64_t limit_n = kDefaultLimitN;
    std::uint64_t budget_p1 = 23;
    unsigned threads = default_thread_count();
    OutputFormat output_format = OutputFormat::Text;
    std::string out_path;
};

namespace cli_detail {

struct Context {
    CliConfig config;
    std::ostream& out;
    std::ostream& err;
};

/// Writes payload to --out when given, otherwise to stdout.
inline void emit(Context& ctx, const std::string& payload) {
    if (ctx.config.out_path.empty()) {
        ctx.out << payload;
        return;
    }
    std::ofstream f(ctx.config.out_path, std::ios::binary);
    if (!f) {
        throw IoError("cannot open " + ctx.config.out_path + " for writing");
    }
    f << payload;
    if (!f) {
        throw IoError("failed writing " + ctx.config.out_path);
    }
}

inline std::string render_poly(const SparsePoly& f, OutputFormat format) {
    switch (format) {
    case OutputFormat::Text:
        return to_text(f) + "\n";
    case OutputFormat::Json:
        return to_json_string(f) + "\n";
    case OutputFormat::Csv: {
        std::string s = "exponent,coefficient\n";
        for (const auto& t : f.terms()) {
            s += std::to_string(t.exponent) + "," + std::to_string(t.coefficient) + "\n";
        }
        return s;
    }
    }
    return {};
}

enum class PolyKind { Phi, Psi, Poly };

inline PolyKind parse_kind(const std::string& s) {
    if (s == "phi") {
        return PolyKind::Phi;
    }
    if (s == "psi") {
        return PolyKind::Psi;
    }
    if (s == "poly") {
        return PolyKind::Poly;
    }
    throw InputError("kind must be phi, psi or poly, got \"" + s + "\"");
}

inline SparsePoly build(PolyKind kind, const std::string& arg, const CliConfig& cfg) {
    switch (kind) {
    case PolyKind::Phi:
        return phi_poly_mobius(parse_index(arg, cfg.limit_n), cfg.limit_n);
    case PolyKind::Psi:
        return psi_poly_division(parse_index(arg, cfg.limit_n), cfg.limit_n);
    case PolyKind::Poly:
        return parse_poly(arg);
    }
    return {};
}

/// Cross-checks the constructors for index n; returns a short verdict.
inline bool constructors_agree(std::uint64_t n, const CliConfig& cfg) {
    const SparsePoly phi = phi_poly_mobius(n, cfg.limit_n);
    const SparsePoly psi = psi_poly_division(n, cfg.limit_n);
    if (mul(phi, psi) != SparsePoly::binomial(n)) {
        return false;
    }
    const FactoredIndex f = factor(n, cfg.limit_n);
    const auto ps = f.distinct_primes();
    if (f.is_squarefree && f.is_odd && ps.size() == 3 && psi_poly_moree(ps[0], ps[1], ps[2]) != psi) {
        return false;
    }
    if (f.is_squarefree && f.is_odd && ps.size() == 2) {
        lam_leung(ps[0], ps[1]); // throws on a failed reconstruction
    }
    return true;
}

inline int cmd_poly(Context& ctx, PolyKind kind, const std::string& arg, bool check) {
    const std::uint64_t n = parse_index(arg, ctx.config.limit_n);
    const SparsePoly f = build(kind, arg, ctx.config);
    emit(ctx, render_poly(f, ctx.config.output_format));
    if (check) {
        const bool ok = constructors_agree(n, ctx.config);
        std::ostream& sink = ctx.config.output_format == OutputFormat::Text && ctx.config.out_path.empty()
                                 ? ctx.out
                                 : ctx.err;
        sink << (ok ? "constructors agree" : "constructors DISAGREE") << '\n';
        if (!ok) {
            return exit_code::kInvariant;
        }
    }
    return exit_code::kOk;
}

inline std::string kind_name(const GapAnswer& a) {
    switch (a.kind) {
    case GapKind::Exact:
        return "exact";
    case GapKind::Bounded:
        return "bounded";
    case GapKind::BruteForceOnly:
        return "brute_force_only";
    }
    return "?";
}

inline std::string describe_answer(const GapAnswer& a, const std::optional<ConditionReport>& cond, bool psi) {
    std::string s;
    if (psi && cond) {
        s = "lambda=" + std::to_string(cond->lambda) + ", eq2=" + (cond->eq2 ? "true" : "false");
        if (a.kind == GapKind::Bounded) {
            s += ", bounds [" + std::to_string(a.lower) + ", " + std::to_string(a.upper_exclusive) + ")";
        }
        return s;
    }
    if (a.kind == GapKind::BruteForceOnly) {
        return "no closed form in scope";
    }
    return "closed form " + a.rule + "=" + std::to_string(a.value);
}

inline std::string via_rules(const ReductionChain& chain, bool psi) {
    const char* sym = psi ? "Ψ" : "Φ";
    std::vector<std::string> parts;
    for (const auto& step : chain.steps) {
        const auto to = std::to_string(step.to);
        if (step.kind == ReductionKind::Radical) {
            parts.push_back("radical rule " + std::to_string(step.multiplier) + "·g(" + sym + "_" + to + ")");
        } else if (psi) {
            parts.push_back("even rule max{g(Ψ_" + to + "), deg Φ_" + to + "}");
        } else {
            parts.push_back("even rule g(Φ_" + to + ")");
        }
    }
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        s += (i == 0 ? " via " : " then ") + parts[i];
    }
    return s;
}

inline int cmd_gap(Context& ctx, PolyKind kind, const std::string& arg, bool diagram) {
    const SparsePoly f = build(kind, arg, ctx.config);
    const GapProfile profile = gap_profile(f);
    const std::uint64_t g = profile.max_gap;

    std::optional<GapDispatch> dispatch;
    const GapAnswer* answer = nullptr;
    const GapAnswer* core = nullptr;
    const bool psi = kind == PolyKind::Psi;
    if (kind != PolyKind::Poly) {
        dispatch = gap_dispatch(parse_index(arg, ctx.config.limit_n), ctx.config.limit_n);
        answer = psi ? &dispatch->psi : &dispatch->phi;
        core = psi ? &dispatch->core_psi : &dispatch->core_phi;
    }
    const bool agree = answer == nullptr || answer->consistent_with(g);

    if (ctx.config.output_format == OutputFormat::Json) {
        nlohmann::ordered_json j;
        j["kind"] = kind == PolyKind::Phi ? "phi" : psi ? "psi" : "poly";
        if (dispatch) {
            j["n"] = dispatch->chain.n;
        }
        j["g"] = g;
        if (profile.argmax) {
            j["argmax"] = {profile.argmax->first, profile.argmax->second};
        } else {
            j["argmax"] = nullptr;
        }
        if (answer) {
            nlohmann::ordered_json a;
            a["kind"] = kind_name(*answer);
            a["rule"] = answer->rule;
            if (answer->kind == GapKind::Exact) {
                a["value"] = answer->value;
            }
            if (answer->kind != GapKind::BruteForceOnly) {
                a["lower"] = answer->lower;
                a["upper_exclusive"] = answer->upper_exclusive;
            }
            j["closed_form"] = std::move(a);
            auto steps = nlohmann::ordered_json::array();
            for (const auto& step : dispatch->chain.steps) {
                steps.push_back(describe(step));
            }
            j["reduction"] = std::move(steps);
            j["core"] = dispatch->chain.core;
            if (dispatch->conditions) {
                j["lambda"] = dispatch->conditions->lambda;
                j["eq2"] = dispatch->conditions->eq2;
            }
        }
        j["agree"] = agree;
        if (diagram) {
            j["diagram"] = render_diagram(f, DiagramFormat::Ascii);
        }
        emit(ctx, j.dump() + "\n");
    } else {
        std::string line = "g=" + std::to_string(g);
        if (answer) {
            line += via_rules(dispatch->chain, psi);
            std::string detail;
            if (!dispatch->chain.steps.empty()) {
                detail = "core " + std::string(psi ? "Ψ_" : "Φ_") + std::to_string(dispatch->chain.core) + ": " +
                         describe_answer(*core, dispatch->conditions, psi);
                if (answer->kind == GapKind::Exact) {
                    detail += ", predicted " + std::to_string(answer->value);
                }
            } else {
                detail = describe_answer(*answer, dispatch->conditions, psi);
            }
            const std::string verdict = answer->kind == GapKind::BruteForceOnly ? "brute force only"
                                        : agree                                 ? "agree"
                                                                                : "DISAGREE";
            line += " (" + detail + ", " + verdict + ")";
        } else if (profile.argmax) {
            line += " (between x^" + std::to_string(profile.argmax->first) + " and x^" +
                    std::to_string(profile.argmax->second) + ")";
        }
        line += "\n";
        if (diagram) {
            line += render_diagram(f, DiagramFormat::Ascii) + "\n";
        }
        emit(ctx, line);
    }
    return agree ? exit_code::kOk : exit_code::kTheoremFailure;
}

inline int cmd_decompose(Context& ctx, std::uint64_t p1, std::uint64_t p2) {
    const LamLeungForm form = lam_leung(p1, p2);
    const SparsePoly ab = mul(form.A, form.B);
    const SparsePoly cd = mul(form.C, form.D);
    const std::uint64_t bound_ab = gap_product_bound(form.A, form.B);
    const std::uint64_t bound_cd = gap_product_bound(form.C, form.D);
    if (ctx.config.output_format == OutputFormat::Json) {
        nlohmann::ordered_json j;
        j["p1"] = p1;
        j["p2"] = p2;
        j["rho"] = form.rho;
        j["sigma"] = form.sigma;
        j["A"] = to_json(form.A);
        j["B"] = to_json(form.B);
        j["C"] = to_json(form.C);
        j["D"] = to_json(form.D);
        j["reconstruction"] = "OK";
        j["g_AB"] = max_gap(ab);
        j["g_AB_bound"] = bound_ab;
        j["g_CD"] = max_gap(cd);
        j["g_CD_bound"] = bound_cd;
        emit(ctx, j.dump() + "\n");
        return exit_code::kOk;
    }
    std::ostringstream s;
    s << "rho=" << form.rho << " sigma=" << form.sigma << '\n'
      << "A = " << to_text(form.A) << '\n'
      << "B = " << to_text(form.B) << '\n'
      << "C = " << to_text(form.C) << '\n'
      << "D = " << to_text(form.D) << '\n'
      << "AB = " << to_text(ab) << '\n'
      << "CD = " << to_text(cd) << '\n'
      << "reconstruction OK: AB + CD = Φ_" << p1 * p2 << ", supports disjoint\n"
      << "g(AB)=" << max_gap(ab) << " <= product bound " << bound_ab << '\n'
      << "g(CD)=" << max_gap(cd) << " <= product bound " << bound_cd << '\n';
    emit(ctx, s.str());
    return exit_code::kOk;
}

inline int cmd_verify(Context& ctx, std::uint64_t p1, std::uint64_t p2, std::uint64_t p3) {
    const VerificationRecord r = verify_triple(p1, p2, p3, ctx.config.limit_n);
    if (ctx.config.output_format == OutputFormat::Json) {
        emit(ctx, to_json(r).dump() + "\n");
    } else {
        std::string s;
        const auto j = to_json(r);
        for (const auto& [key, value] : j.items()) {
            s += key + "=" + value.dump() + "\n";
        }
        emit(ctx, s);
    }
    return theorem_guarantees_hold(r) ? exit_code::kOk : exit_code::kTheoremFailure;
}

inline int cmd_survey(Context& ctx, std::uint64_t p1) {
    SurveyOptions options;
    options.threads = ctx.config.threads;
    options.budget_p1 = ctx.config.budget_p1;
    const FrequencyRow row = classify(p1, options);
    ctx.out << row.total << ' ' << row.v1 << ' ' << row.v2 << ' ' << row.v3 << '\n';
    if (!ctx.config.out_path.empty()) {
        export_records(row.records,
                       ctx.config.output_format == OutputFormat::Json ? ExportFormat::Json : ExportFormat::Csv,
                       ctx.config.out_path);
    }
    const bool all_bounds = std::all_of(row.records.begin(), row.records.end(), [](const SurveyRecord& r) {
        return r.lower <= static_cast<std::int64_t>(r.g) && static_cast<std::int64_t>(r.g) < r.upper_exclusive;
    });
    return all_bounds ? exit_code::kOk : exit_code::kTheoremFailure;
}

inline int cmd_diagram(Context& ctx, PolyKind kind, const std::string& arg, bool svg) {
    const SparsePoly f = build(kind, arg, ctx.config);
    std::string d = render_diagram(f, svg ? DiagramFormat::Svg : DiagramFormat::Ascii);
    if (!svg) {
        d += "\n";
    }
    emit(ctx, d);
    return exit_code::kOk;
}

} // namespace cli_detail

/// Runs one command. args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cyclotomic and inverse cyclotomic polynomials: construction and maximum-gap analysis",
                 "cyclogap"};
    app.fallthrough();
    app.require_subcommand(1);

    CliConfig cfg;
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--limit-n", cfg.limit_n, "Largest index accepted")->check(CLI::PositiveNumber);
    app.add_option("--threads", cfg.threads, "Worker threads for survey")->check(CLI::PositiveNumber);
    app.add_option("--budget-p1", cfg.budget_p1, "Largest p1 a survey may run for");
    app.add_option("--out", cfg.out_path, "Write the result to this file");

    std::string kind;
    std::string arg;
    bool check = false;
    bool diagram = false;
    bool svg = false;
    std::uint64_t p1 = 0;
    std::uint64_t p2 = 0;
    std::uint64_t p3 = 0;

    auto* phi = app.add_subcommand("phi", "Print the cyclotomic polynomial Phi_n");
    phi->add_option("n", arg, "Index, decimal or as 3*5*7")->required();
    phi->add_flag("--check", check, "Cross-validate the constructors");

    auto* psi = app.add_subcommand("psi", "Print the inverse cyclotomic polynomial Psi_n");
    psi->add_option("n", arg, "Index, decimal or as 3*5*7")->required();
    psi->add_flag("--check", check, "Cross-validate the constructors");

    auto* gap = app.add_subcommand("gap", "Maximum gap by brute force, compared with the closed forms");
    gap->add_option("kind", kind, "phi, psi or poly")->required();
    gap->add_option("n", arg, "Index, or a polynomial in text/JSON form for kind poly")->required();
    gap->add_flag("--diagram", diagram, "Append the exponent bar diagram");

    auto* decompose = app.add_subcommand("decompose", "Lam-Leung form of Phi_{p1 p2}");
    decompose->add_option("p1", p1)->required();
    decompose->add_option("p2", p2)->required();

    auto* verify = app.add_subcommand("verify", "Check the closed form and bounds for Psi_{p1 p2 p3}");
    verify->add_option("p1", p1)->required();
    verify->add_option("p2", p2)->required();
    verify->add_option("p3", p3)->required();

    auto* survey = app.add_subcommand("survey", "Classify every exceptional (p2, p3) for p1");
    survey->add_option("p1", p1)->required();

    auto* dia = app.add_subcommand("diagram", "Render the exponent bar diagram");
    dia->add_option("kind", kind, "phi, psi or poly")->required();
    dia->add_option("n", arg, "Index, or a polynomial for kind poly")->required();
    dia->add_flag("--svg", svg, "SVG instead of ASCII");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::kOk : exit_code::kInvalidInput;
    }

    static const std::map<std::string, OutputFormat> formats{
        {"text", OutputFormat::Text}, {"json", OutputFormat::Json}, {"csv", OutputFormat::Csv}};
    cfg.output_format = formats.at(format);
    cli_detail::Context ctx{cfg, out, err};

    try {
        if (*phi) {
            return cli_detail::cmd_poly(ctx, cli_detail::PolyKind::Phi, arg, check);
        }
        if (*psi) {
            return cli_detail::cmd_poly(ctx, cli_detail::PolyKind::Psi, arg, check);
        }
        if (*gap) {
            return cli_detail::cmd_gap(ctx, cli_detail::parse_kind(kind), arg, diagram);
        }
        if (*decompose) {
            return cli_detail::cmd_decompose(ctx, p1, p2);
        }
        if (*verify) {
            return cli_detail::cmd_verify(ctx, p1, p2, p3);
        }
        if (*survey) {
            return cli_detail::cmd_survey(ctx, p1);
        }
        if (*dia) {
            return cli_detail::cmd_diagram(ctx, cli_detail::parse_kind(kind), arg, svg);
        }
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kBudget;
    } catch (const InvariantViolation& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_code::kInvariant;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kInvalidInput;
    } catch (const OverflowDetected& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kInvalidInput;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kInvalidInput;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_code::kInvariant;
    }
    return exit_code::kInvalidInput;
}

} // namespace cyclogap
