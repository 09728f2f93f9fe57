// Command-line front end: moment tables, certificate verification, optimal
// bound searches, proof identities, minimization, and witness plots.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "tracehull/certify.hpp"
#include "tracehull/data.hpp"
#include "tracehull/errors.hpp"
#include "tracehull/io.hpp"
#include "tracehull/moments.hpp"
#include "tracehull/optimize.hpp"
#include "tracehull/oracle.hpp"
#include "tracehull/svg.hpp"
#include "tracehull/threshold.hpp"

using namespace tracehull;

namespace {

constexpr int kExitValid = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInput = 2;
constexpr int kExitIndeterminate = 3;

struct RunConfig {
    int precision = 60;
    int grid_n = 257;
    std::uint64_t seed = 0;
    bool json = false;
};

CaseId parse_case(const std::string& s) {
    if (s == "a" || s == "A") return CaseId::A;
    if (s == "b" || s == "B") return CaseId::B;
    throw input_error("unknown case \"" + s + "\" (expected a or b)");
}

Poly2 load_poly(const std::string& spec) {
    if (spec.rfind("builtin:", 0) == 0) {
        auto p = builtin::find_poly(spec.substr(8));
        if (!p) throw input_error("unknown builtin polynomial \"" + spec + "\"");
        return *p;
    }
    return io::poly_from_json(io::load_json_file(spec));
}

Region load_region(const std::string& spec) {
    if (spec.rfind("builtin:", 0) == 0) {
        auto r = builtin::find_region(spec.substr(8));
        if (!r) throw input_error("unknown builtin region \"" + spec + "\"");
        return *r;
    }
    if (spec.find(">=") != std::string::npos || spec.find("<=") != std::string::npos)
        return io::region_from_inline(spec);
    return io::region_from_json(io::load_json_file(spec));
}

struct LoadedAtoms {
    io::AtomsData atoms;
    std::optional<std::vector<Rational>> packaged_weights;
};

LoadedAtoms load_atoms(const std::string& spec) {
    LoadedAtoms out;
    if (spec.rfind("builtin:", 0) == 0) {
        std::string name = spec.substr(8);
        if (const auto* pts = builtin::find_points(name)) {
            out.atoms.symmetric = false;
            out.atoms.xy = *pts;
            return out;
        }
        if (const auto* w = builtin::find_case_a_witness(name)) {
            out.atoms.symmetric = true;
            out.atoms.sym = w->atoms;
            out.packaged_weights = w->weights;
            return out;
        }
        throw input_error("unknown builtin atom set \"" + spec + "\"");
    }
    out.atoms = io::atoms_from_json(io::load_json_file(spec));
    return out;
}

void print_moments(CaseId c, bool as_json) {
    const MomentVector& m = case_target(c);
    const MomentBasis& basis = m.basis_ref();
    const char* names_a5[] = {"x+y", "x*y", "x^2+y^2", "x^2*y+x*y^2", "x^2*y^2"};
    if (as_json) {
        io::json feats = io::json::array();
        for (size_t i = 0; i < basis.size(); ++i) {
            std::string label = c == CaseId::A ? names_a5[i] : known_monomials_b()[i].to_string();
            feats.push_back({{"feature", label},
                             {"value", m.values[i].to_fraction_string()},
                             {"decimal", m.values[i].to_decimal_string(20)}});
        }
        std::cout << io::json({{"case", c == CaseId::A ? "a" : "b"}, {"moments", feats}}).dump(2) << "\n";
        return;
    }
    for (size_t i = 0; i < basis.size(); ++i) {
        std::string label = c == CaseId::A ? names_a5[i] : known_monomials_b()[i].to_string();
        std::string frac = m.values[i].to_fraction_string();
        std::string dec = m.values[i].to_decimal_string(20);
        std::cout << label << " " << frac;
        if (frac != dec) std::cout << " (" << dec << ")";
        std::cout << "\n";
    }
}

int exit_for(Verdict v) {
    switch (v) {
        case Verdict::Valid:
        case Verdict::ValidCoarse: return kExitValid;
        case Verdict::Invalid: return kExitInvalid;
        case Verdict::Indeterminate: return kExitIndeterminate;
    }
    return kExitIndeterminate;
}

int run_self_check(std::uint64_t seed, bool as_json) {
    auto reports = oracle::run_self_check(seed);
    if (as_json) {
        std::cout << io::to_json(reports).dump(2) << "\n";
    } else {
        for (const auto& r : reports)
            std::cout << (r.pass ? "PASS " : "FAIL ") << r.quantity << ": oracle=" << r.oracle_value
                      << " main=" << r.main_value << " |diff|=" << r.discrepancy
                      << " tol=" << r.tolerance << "\n";
    }
    for (const auto& r : reports)
        if (!r.pass) return kExitInvalid;
    return kExitValid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certificate toolkit for constrained trace-moment problems on [-2,2]^2"};
    app.require_subcommand(0, 1);

    RunConfig cfg;
    if (const char* env = std::getenv("REPRO_PRECISION")) cfg.precision = std::atoi(env);
    app.add_option("--precision", cfg.precision, "working precision in decimal digits (>= 30)")
        ->check(CLI::Range(30, 100000));
    app.add_option("--grid-n", cfg.grid_n, "search lattice resolution (>= 33)")->check(CLI::Range(33, 100000));
    app.add_option("--seed", cfg.seed, "seed for every randomized component");
    app.add_flag("--json", cfg.json, "emit reports as JSON");
    bool self_check = false;
    app.add_flag("--self-check", self_check, "run the oracle battery and exit");

    // moments
    auto* cmd_moments = app.add_subcommand("moments", "print a case's feature basis and target averages");
    std::string case_str = "b";
    cmd_moments->add_option("--case", case_str, "a or b")->required();

    // verify hyperplane / measure
    auto* cmd_verify = app.add_subcommand("verify", "verify a certificate");
    cmd_verify->require_subcommand(1);
    auto* cmd_hyp = cmd_verify->add_subcommand("hyperplane", "separating-polynomial certificate");
    std::string hyp_poly, hyp_region, hyp_case = "b";
    int hyp_digits = 0;
    double hyp_gap = 0.01;
    cmd_hyp->add_option("--poly", hyp_poly, "polynomial file or builtin:{q,r,p1,p2}")->required();
    cmd_hyp->add_option("--region", hyp_region, "region file, inline sum>=..., or builtin name")->required();
    cmd_hyp->add_option("--case", hyp_case, "a or b");
    cmd_hyp->add_option("--digits", hyp_digits, "override precision for this run");
    cmd_hyp->add_option("--lb-gap", hyp_gap, "certified lower-bound gap");

    auto* cmd_meas = cmd_verify->add_subcommand("measure", "atomic-measure witness");
    std::string meas_atoms, meas_weights, meas_region, meas_case = "b";
    double meas_tol = 1e-9;
    cmd_meas->add_option("--atoms", meas_atoms, "atoms file or builtin name")->required();
    cmd_meas->add_option("--weights", meas_weights, "weights file (solved when absent)");
    cmd_meas->add_option("--region", meas_region, "region file, inline, or builtin name")->required();
    cmd_meas->add_option("--case", meas_case, "a or b");
    cmd_meas->add_option("--tol", meas_tol, "moment residual tolerance (split case)");

    // threshold
    auto* cmd_thr = app.add_subcommand("threshold", "optimal provable bound by bisection");
    std::string thr_case, thr_form, thr_dir, thr_emit;
    double thr_tol = 1e-4;
    cmd_thr->add_option("--case", thr_case, "a or b")->required();
    cmd_thr->add_option("--form", thr_form, "sum or product")->required();
    cmd_thr->add_option("--dir", thr_dir, "geq or leq")->required();
    cmd_thr->add_option("--tol", thr_tol, "bracket width target")->required();
    cmd_thr->add_option("--emit-certificates", thr_emit, "directory for witness/separator files");

    // identities
    auto* cmd_id = app.add_subcommand("identities", "check the packaged proof identities");

    // minimize
    auto* cmd_min = app.add_subcommand("minimize", "global minimum of a polynomial over a region");
    std::string min_poly, min_region;
    cmd_min->add_option("--poly", min_poly, "polynomial file or builtin name")->required();
    cmd_min->add_option("--region", min_region, "region file, inline, or builtin name")->required();

    // plot
    auto* cmd_plot = app.add_subcommand("plot", "scatter plot of an atom set as SVG");
    std::string plot_atoms, plot_region, plot_out;
    cmd_plot->add_option("--atoms", plot_atoms, "atoms file or builtin name")->required();
    cmd_plot->add_option("--region", plot_region, "optional region whose boundary to draw");
    cmd_plot->add_option("-o,--output", plot_out, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help path
        app.exit(e);
        return kExitInput;
    }

    try {
        if (self_check) return run_self_check(cfg.seed, cfg.json);

        if (cmd_moments->parsed()) {
            print_moments(parse_case(case_str), cfg.json);
            return kExitValid;
        }

        if (cmd_hyp->parsed()) {
            CaseId c = parse_case(hyp_case);
            Poly2 p = load_poly(hyp_poly);
            Region r = load_region(hyp_region);
            HyperplaneOptions opts;
            opts.digits = hyp_digits > 0 ? hyp_digits : cfg.precision;
            opts.grid_n = cfg.grid_n;
            opts.lb_gap = hyp_gap;
            auto rep = verify_hyperplane(p, r, case_target(c), opts);
            if (cfg.json) {
                std::cout << io::to_json(rep).dump(2) << "\n";
            } else {
                std::cout << "verdict: " << verdict_name(rep.verdict) << "\n"
                          << "average: " << rep.expectation.to_fraction_string() << " = "
                          << rep.expectation.to_decimal_string(20) << "\n"
                          << "minimum: " << rep.min_result.value.to_string(20) << " at ("
                          << rep.min_result.x.to_string(20) << ", " << rep.min_result.y.to_string(20)
                          << ") [" << rep.min_result.active_set_string() << "]\n"
                          << "certified bound: " << rep.bound.bound.to_string(20)
                          << " (gap " << rep.bound.achieved_gap << ")\n"
                          << "margin: " << rep.margin.to_string(20) << "\n"
                          << rep.conclusion << "\n";
            }
            return exit_for(rep.verdict);
        }

        if (cmd_meas->parsed()) {
            CaseId c = parse_case(meas_case);
            LoadedAtoms loaded = load_atoms(meas_atoms);
            Region r = load_region(meas_region);
            std::optional<std::vector<Rational>> weights;
            if (!meas_weights.empty()) weights = io::weights_from_json(io::load_json_file(meas_weights));
            else if (loaded.packaged_weights) weights = loaded.packaged_weights;
            Verdict verdict;
            io::json rep_json;
            std::string residual_text;
            if (c == CaseId::A) {
                if (!loaded.atoms.symmetric)
                    throw input_error("case a expects symmetric (e1, e2) atoms");
                auto rep = verify_measure(loaded.atoms.sym, weights, r, case_target(c));
                verdict = rep.verdict;
                rep_json = io::to_json(rep);
                residual_text = rep.residual_inf.to_fraction_string();
            } else {
                if (loaded.atoms.symmetric)
                    throw input_error("case b expects coordinate (x, y) atoms");
                auto rep = verify_measure(loaded.atoms.xy, weights, r, case_target(c), meas_tol,
                                          cfg.precision);
                verdict = rep.verdict;
                rep_json = io::to_json(rep);
                residual_text = rep.residual_inf.to_string(8);
            }
            if (cfg.json) {
                std::cout << rep_json.dump(2) << "\n";
            } else {
                std::cout << "verdict: " << verdict_name(verdict) << "\n"
                          << "atoms: " << loaded.atoms.size() << ", weights "
                          << rep_json["weights_source"].get<std::string>() << "\n"
                          << "max |moment residual|: " << residual_text << "\n";
                const auto& slacks = rep_json["atoms"];
                for (size_t i = 0; i < slacks.size(); ++i)
                    std::cout << "  atom " << i << ": inside="
                              << (slacks[i]["inside"].get<bool>() ? "yes" : "no")
                              << " slack=" << slacks[i]["slack"].get<std::string>() << "\n";
            }
            return exit_for(verdict);
        }

        if (cmd_thr->parsed()) {
            CaseId c = parse_case(thr_case);
            ConstraintForm form;
            if (thr_form == "sum") form = ConstraintForm::Sum;
            else if (thr_form == "product") form = ConstraintForm::Product;
            else throw input_error("form must be sum or product");
            ConstraintDir dir;
            if (thr_dir == "geq") dir = ConstraintDir::Geq;
            else if (thr_dir == "leq") dir = ConstraintDir::Leq;
            else throw input_error("dir must be geq or leq");
            FeasibilityOptions opts;
            opts.digits = cfg.precision;
            auto res = threshold(c, form, dir, thr_tol, opts);
            if (cfg.json) {
                std::cout << io::to_json(res).dump(2) << "\n";
            } else {
                std::cout << "bracket: [" << res.u_feasible.to_decimal_string(16) << ", "
                          << res.u_infeasible.to_decimal_string(16) << "]\n"
                          << "bisection steps: " << res.iterations << " (" << res.seconds << " s)\n"
                          << "witness re-verification: " << verdict_name(res.witness_verdict) << "\n"
                          << "separator re-verification: " << verdict_name(res.separator_verdict) << "\n";
            }
            if (!thr_emit.empty()) {
                std::string wpath = thr_emit + "/witness.json";
                std::string spath = thr_emit + "/separator.json";
                io::save_json_file(wpath, io::to_json(res.witness));
                io::save_json_file(spath, io::poly_to_json(res.separator));
                std::cout << "witness: " << wpath << "\nseparator: " << spath << "\n";
            }
            bool ok = (res.witness_verdict == Verdict::Valid) &&
                      (res.separator_verdict == Verdict::Valid ||
                       res.separator_verdict == Verdict::ValidCoarse);
            return ok ? kExitValid : kExitInvalid;
        }

        if (cmd_id->parsed()) {
            auto rep = verify_identity_suite();
            if (cfg.json) {
                std::cout << io::to_json(rep).dump(2) << "\n";
            } else {
                for (const auto& item : rep.items) {
                    std::cout << (item.pass ? "PASS " : "FAIL ") << item.name;
                    if (!item.mismatch.empty()) std::cout << " (" << item.mismatch << ")";
                    std::cout << "\n";
                }
            }
            return rep.all_pass ? kExitValid : kExitInvalid;
        }

        if (cmd_min->parsed()) {
            Poly2 p = load_poly(min_poly);
            Region r = load_region(min_region);
            MinOptions opts;
            opts.digits = cfg.precision;
            opts.grid_n = cfg.grid_n;
            auto m = global_min(p, r, opts);
            if (cfg.json) {
                std::cout << io::to_json(m).dump(2) << "\n";
            } else {
                std::cout << "minimum " << m.value.to_string(20) << " at (" << m.x.to_string(20) << ", "
                          << m.y.to_string(20) << ")\n"
                          << "active set: " << m.active_set_string() << "\n"
                          << "kkt residual: " << m.kkt_residual.to_string(6)
                          << (m.converged ? " (converged)" : " (not converged)") << "\n";
            }
            return kExitValid;
        }

        if (cmd_plot->parsed()) {
            LoadedAtoms loaded = load_atoms(plot_atoms);
            if (loaded.atoms.symmetric) throw input_error("plot expects coordinate atoms");
            std::optional<Region> r;
            if (!plot_region.empty()) r = load_region(plot_region);
            std::vector<std::pair<double, double>> pts;
            for (const auto& [x, y] : loaded.atoms.xy) pts.push_back({x.to_double(), y.to_double()});
            io::save_text_file(plot_out, render_scatter_svg(pts, r));
            std::cout << "wrote " << plot_out << " (" << pts.size() << " atoms)\n";
            return kExitValid;
        }

        std::cout << app.help();
        return kExitValid;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const solver_error& e) {
        std::cerr << "solver: " << e.what() << "\n";
        return kExitIndeterminate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIndeterminate;
    }
}
