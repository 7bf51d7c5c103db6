#ifndef NSPEC_CLI_HPP
#define NSPEC_CLI_HPP

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nspec/report.hpp"

namespace nspec {
namespace cli {

struct Result {
    int status = 0;
    std::string out;
};

namespace detail {

struct CommonOpts {
    std::string input;
    bool assume_nondegenerate = true;
    bool assume_isolated = false;
    bool nondeg_flag_given = false;
    bool isolated_flag_given = false;
    std::string output = "json";
};

inline newton::MonomialSupport support_from_json(const report::json& j, const CommonOpts& o) {
    int n = j.at("n").get<int>();
    std::vector<std::pair<IVec, Rat>> monos;
    for (const auto& m : j.at("monomials")) {
        IVec e;
        for (const auto& x : m.at("e")) e.push_back(Int(x.get<long long>()));
        Rat c(1);
        if (m.contains("c")) {
            if (m.at("c").is_string()) c = puiseux::parse_rat(m.at("c").get<std::string>());
            else c = Rat(m.at("c").get<long long>());
        }
        monos.emplace_back(std::move(e), c);
    }
    bool nondeg = o.nondeg_flag_given
                      ? o.assume_nondegenerate
                      : j.value("assume_nondegenerate", o.assume_nondegenerate);
    bool iso = o.isolated_flag_given ? o.assume_isolated
                                     : j.value("assume_isolated", o.assume_isolated);
    return newton::make_support(n, std::move(monos), nondeg, iso);
}

inline newton::MonomialSupport load_support(const CommonOpts& o) {
    std::string text = o.input;
    std::error_code ec;
    if (std::filesystem::exists(o.input, ec) && !std::filesystem::is_directory(o.input, ec)) {
        std::ifstream in(o.input);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        report::json j;
        try {
            j = report::json::parse(text);
        } catch (const report::json::exception& e) {
            fail(errc::syntax_error, std::string("bad structured input: ") + e.what());
        }
        try {
            return support_from_json(j, o);
        } catch (const report::json::exception& e) {
            fail(errc::syntax_error, std::string("bad structured input: ") + e.what());
        }
    }
    return newton::parse_polynomial(text, o.assume_nondegenerate, o.assume_isolated);
}

inline std::string render(const report::json& j, const std::string& mode,
                          const std::string& text_form) {
    return mode == "text" ? text_form : report::dump(j);
}

} // namespace detail

// Parses and runs one command; the report goes to the returned string. Exit
// status: 0 success, 1 input errors, 2 domain errors (typed, named in the
// report body).
inline Result run(const std::vector<std::string>& args) {
    CLI::App app{"Newton polyhedron singularity invariants"};
    app.require_subcommand(1);

    detail::CommonOpts o;
    unsigned long long seed = 0;
    int sample_count = 25;

    auto add_common = [&](CLI::App* sub, bool needs_input = true) {
        if (needs_input)
            sub->add_option("input", o.input, "polynomial text, file path, or structured JSON")
                ->required();
        sub->add_flag("--assume-nondegenerate,!--no-assume-nondegenerate",
                      o.assume_nondegenerate, "treat the support as non-degenerate (default on)");
        sub->add_flag("--assume-isolated", o.assume_isolated,
                      "assert the singularity is isolated");
        sub->add_option("--output", o.output, "json or text")
            ->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
    };

    CLI::App* analyze = app.add_subcommand("analyze", "classification and face table");
    CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "Hodge and Steenbrink spectrum");
    CLI::App* pairs = app.add_subcommand("pairs", "spectral pair generating function");
    CLI::App* jordan = app.add_subcommand("jordan", "Jordan block counts of the monodromy");
    CLI::App* bsroot = app.add_subcommand("bs-root", "maximal Bernstein-Sato root");
    CLI::App* fancmd = app.add_subcommand("fan", "normal fan and a smooth subdivision");
    CLI::App* descent = app.add_subcommand("descent-check", "symbolic nearby-fiber descent");
    CLI::App* oracle = app.add_subcommand("oracle-check", "cross-validation oracles");
    CLI::App* identities = app.add_subcommand("identities", "combinatorial identity battery");
    for (CLI::App* sub : {analyze, spectrum_cmd, pairs, jordan, bsroot, fancmd, descent, identities})
        add_common(sub);
    add_common(oracle, false);
    oracle->add_option("input", o.input, "optional polynomial to include in the checks");
    oracle->add_option("--seed", seed, "seed for the random support sample")->capture_default_str();
    oracle->add_option("--count", sample_count, "number of random supports")
        ->capture_default_str();

    std::vector<const char*> argv;
    argv.push_back("newton-spectrum");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse((int)argv.size(), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream os;
        int code = app.exit(e, os, os);
        return {code == 0 ? 0 : 1, os.str()};
    }

    CLI::App* sub = app.get_subcommands().front();
    o.nondeg_flag_given = sub->count("--assume-nondegenerate") > 0 ||
                          sub->count("--no-assume-nondegenerate") > 0;
    o.isolated_flag_given = sub->count("--assume-isolated") > 0;

    using report::json;
    try {
        if (sub == oracle) {
            // pure-power spectra against the box-count oracle, and the volume
            // formula against the spectrum mass on seeded random supports
            int bp_count = 0;
            bool bp_ok = true;
            for (int n : {2, 3}) {
                std::vector<int> a(n, 2);
                for (;;) {
                    bool ordered = true;
                    for (int i = 0; i + 1 < n; ++i)
                        if (a[i] > a[i + 1]) ordered = false;
                    if (ordered) {
                        ++bp_count;
                        std::vector<std::pair<IVec, Rat>> monos;
                        for (int i = 0; i < n; ++i) {
                            IVec e((std::size_t)n, Int(0));
                            e[i] = a[i];
                            monos.emplace_back(std::move(e), Rat(1));
                        }
                        auto p = newton::build_polyhedron(newton::make_support(n, monos));
                        auto rep = spectrum::hodge_spectrum(p);
                        if (!(rep.hodge.dual(Rat(n)) == spectrum::bp_oracle(a))) bp_ok = false;
                    }
                    int i = n - 1;
                    while (i >= 0 && a[i] == 6) a[i--] = 2;
                    if (i < 0) break;
                    ++a[i];
                }
            }
            std::mt19937_64 rng(seed);
            int mu_count = 0;
            bool mu_ok = true;
            for (int t = 0; t < sample_count; ++t) {
                auto p = newton::build_polyhedron(newton::sample_convenient_support(rng));
                ++mu_count;
                if (spectrum::hodge_spectrum(p).mu != newton::newton_number(p)) mu_ok = false;
            }
            if (!o.input.empty()) {
                auto p = newton::build_polyhedron(detail::load_support(o));
                if (p.cls.convenient) {
                    ++mu_count;
                    if (spectrum::hodge_spectrum(p).mu != newton::newton_number(p)) mu_ok = false;
                }
            }
            json j = {{"bp_instances", bp_count}, {"bp_ok", bp_ok},
                      {"mu_instances", mu_count}, {"mu_ok", mu_ok},
                      {"seed", seed}};
            std::ostringstream text;
            text << "pure-power oracle: " << bp_count << " instances, "
                 << (bp_ok ? "all equal" : "MISMATCH") << "\n"
                 << "volume vs spectrum mass: " << mu_count << " instances, "
                 << (mu_ok ? "all equal" : "MISMATCH") << "\n";
            return {bp_ok && mu_ok ? 0 : 2, detail::render(j, o.output, text.str())};
        }

        auto p = newton::build_polyhedron(detail::load_support(o));

        if (sub == analyze) {
            json j = report::classification_json(p);
            j["faces"] = report::face_table_json(p);
            if (p.cls.convenient) j["newton_number"] = report::json_int(newton::newton_number(p));
            else j["newton_number"] = nullptr;
            std::ostringstream text;
            text << "n=" << p.n << " convenient=" << p.cls.convenient
                 << " simplicial=" << p.cls.simplicial << " isolated=" << p.cls.isolated
                 << " c=" << puiseux::rat_string(p.cls.diagonal_c) << "\n";
            for (const auto& f : p.faces)
                text << "face " << f.id << ": dim=" << f.dim << " k=" << f.k
                     << " delta=" << f.lattice_scale << " internal=" << f.internal
                     << " simplex=" << f.simplex << "\n";
            return {0, detail::render(j, o.output, text.str())};
        }
        if (sub == spectrum_cmd) {
            auto rep = spectrum::hodge_spectrum(p);
            json j = report::spectrum_json(rep);
            j["assumptions"] = report::assumptions_json(p);
            std::ostringstream text;
            text << "hodge: " << puiseux::to_text(rep.hodge) << "\n"
                 << "steenbrink: " << puiseux::to_text(rep.steenbrink) << "\n"
                 << "mu: " << rep.mu << "\nvalidity: " << spectrum::validity_name(rep.trust)
                 << "\n";
            return {0, detail::render(j, o.output, text.str())};
        }
        if (sub == pairs) {
            auto t = spectrum::build_tables(p);
            auto pp = spectrum::spectral_pairs(p, t);
            json j = {{"pairs", report::pairs_json(pp)},
                      {"mu", report::json_int(pp.total_mass())},
                      {"assumptions", report::assumptions_json(p)}};
            return {0, detail::render(j, o.output, report::pairs_text(pp) + "\n")};
        }
        if (sub == jordan) {
            auto table = monodromy::jordan_table(p);
            json j = report::jordan_json(table);
            j["assumptions"] = report::assumptions_json(p);
            std::ostringstream text;
            for (const auto& r : table.rows)
                text << "order " << r.q << " size " << r.k << ": " << r.count << "\n";
            return {0, detail::render(j, o.output, text.str())};
        }
        if (sub == bsroot) {
            auto r = spectrum::bernstein_max_root(p);
            json j = {{"root", puiseux::rat_string(r.root)},
                      {"reduced", r.reduced},
                      {"assumptions", report::assumptions_json(p)}};
            std::ostringstream text;
            text << "root: " << puiseux::rat_string(r.root) << (r.reduced ? " (reduced)" : "")
                 << "\n";
            return {0, detail::render(j, o.output, text.str())};
        }
        if (sub == fancmd) {
            auto nf = fan::normal_fan(p);
            auto xi = fan::smooth_subdivision(nf.sigma);
            json j = {{"sigma", report::fan_json(nf.sigma)}, {"xi", report::fan_json(xi)}};
            std::ostringstream text;
            text << "sigma: " << nf.sigma.rays.size() << " rays, " << nf.sigma.cones.size()
                 << " cones\nxi: " << xi.rays.size() << " rays, " << xi.cones.size()
                 << " cones\n";
            return {0, detail::render(j, o.output, text.str())};
        }
        if (sub == descent) {
            auto rep = motivic::descent_check(p);
            json j = {{"ok", rep.ok}, {"diagnostic", rep.diagnostic}};
            std::ostringstream text;
            text << (rep.ok ? "descent holds" : "descent FAILS: " + rep.diagnostic) << "\n";
            return {rep.ok ? 0 : 2, detail::render(j, o.output, text.str())};
        }
        if (sub == identities) {
            auto rep = spectrum::check_identities(p);
            json j = {{"checks", report::identities_json(rep)}};
            std::ostringstream text;
            auto line = [&](const char* name, const std::optional<bool>& v) {
                text << name << ": " << (!v ? "skipped" : (*v ? "pass" : "FAIL")) << "\n";
            };
            line("twisted_sum_vs_product", rep.twisted_sum_vs_product);
            line("moebius", rep.moebius);
            line("comb_symmetry", rep.comb_symmetry);
            line("spectrum_palindrome", rep.spectrum_palindrome);
            line("interior_self_duality", rep.interior_self_duality);
            line("pairs_involution", rep.pairs_involution);
            return {rep.all_applicable_hold() ? 0 : 2, detail::render(j, o.output, text.str())};
        }
        fail(errc::internal, "unknown subcommand");
    } catch (const error& e) {
        json j = report::error_json(e);
        std::string text = std::string("error ") + errc_name(e.code()) + ": " + e.what() + "\n";
        return {e.is_input_error() ? 1 : 2, detail::render(j, o.output, text)};
    }
}

} // namespace cli
} // namespace nspec

#endif
