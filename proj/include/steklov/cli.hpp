#pragma once

// Command-line dispatcher. Exit status: 0 success, 1 domain or numerical
// error, 2 usage or configuration error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "steklov/asymptotics.hpp"
#include "steklov/config.hpp"
#include "steklov/dn_map.hpp"
#include "steklov/errors.hpp"
#include "steklov/inverse.hpp"
#include "steklov/selfcheck.hpp"
#include "steklov/spectrum_io.hpp"
#include "steklov/sturm_liouville.hpp"

namespace steklov {

namespace cli_detail {

struct Options {
    std::string config;
    std::string out;
    std::string spectrum_csv;
    std::string a;
    std::string b;
    std::optional<int> m_max;
    int order = kDefaultExpansionOrder;
    std::optional<double> mu;
    double z = 0.0;
    int count = 10;
    double tol = kSpectrumTolerance;
    int fit_from = 20;
    int fit_to = -1;
};

/// Writes to --out when given, else to the supplied stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw UsageError("cannot open output file " + path);
            stream_ = file_.get();
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

struct Loaded {
    RunConfig config;
    WarpingProfile profile;
    Potential potential;
};

inline Loaded load(const std::string& path, const Options& o) {
    if (path.empty()) throw UsageError("--config is required");
    auto c = load_config(path);
    if (o.m_max) {
        if (*o.m_max < 0) throw UsageError("--m-max must be >= 0");
        c.m_max = *o.m_max;
    }
    auto profile = make_profile(c);
    auto potential = build_potential(profile, static_cast<std::size_t>(c.node_count));
    return {std::move(c), std::move(profile), std::move(potential)};
}

inline std::string out_path(const Options& o, const RunConfig& c) {
    return o.out.empty() ? c.output_path : o.out;
}

inline void emit_json(const nlohmann::json& j, const std::string& path, std::ostream& out) {
    Sink sink(path, out);
    sink.get() << j.dump(2) << '\n';
}

inline int cmd_spectrum(const Options& o, std::ostream& out) {
    const auto l = load(o.config, o);
    const auto s = steklov_spectrum(l.profile, l.potential, l.config.m_max);
    Sink sink(out_path(o, l.config), out);
    write_spectrum_csv(sink.get(), s);
    return 0;
}

/// With --mu: one DN block as JSON. Without: the trace/det signature CSV.
inline int cmd_block(const Options& o, std::ostream& out) {
    const auto l = load(o.config, o);
    if (!o.mu) {
        const auto sig = trace_det_signature(l.profile, l.potential, 0, l.config.m_max);
        Sink sink(out_path(o, l.config), out);
        write_signature_csv(sink.get(), sig);
        return 0;
    }
    const auto b = dn_block(l.profile, l.potential, *o.mu, -1);
    const auto ev = block_eigenvalues(b);
    emit_json({{"mu", b.mu},
               {"a11", b.a11},
               {"a12", b.a12},
               {"a21", b.a21},
               {"a22", b.a22},
               {"trace", b.trace()},
               {"det", b.det()},
               {"lambda_minus", ev.lambda_minus},
               {"lambda_plus", ev.lambda_plus}},
              out_path(o, l.config), out);
    return 0;
}

inline int cmd_wt(const Options& o, std::ostream& out) {
    const auto l = load(o.config, o);
    const auto fv = fundamental_at(l.potential, o.z);
    const auto w = weyl_functions(fv);
    nlohmann::json j{{"z", o.z},
                     {"M", w.m},
                     {"N", w.n},
                     {"log_abs_delta", fv.delta.log_abs()},
                     {"wronskian_defect", fv.wronskian_defect}};
    if (o.z > 0.0) {
        const auto coeffs = riccati_coefficients(l.potential, o.order);
        const auto p = wt_expansion(coeffs, std::sqrt(o.z));
        j["order"] = o.order;
        j["predicted_minus_M"] = p.minus_m;
        j["predicted_minus_N"] = p.minus_n;
    }
    emit_json(j, out_path(o, l.config), out);
    return 0;
}

inline int cmd_alphas(const Options& o, std::ostream& out) {
    const auto l = load(o.config, o);
    if (o.count < 1) throw UsageError("--count must be >= 1");
    const auto alphas = dirichlet_alphas(l.potential, o.count);
    Sink sink(out_path(o, l.config), out);
    sink.get() << "k,alpha\n";
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        sink.get() << k << ',' << detail::format_real(alphas[k]) << '\n';
    }
    return 0;
}

/// Expansion coefficients as JSON on stdout; per-m predictions as CSV to --out.
inline int cmd_asym(const Options& o, std::ostream& out) {
    const auto l = load(o.config, o);
    const auto coeffs = riccati_coefficients(l.potential, o.order);
    const auto path = out_path(o, l.config);
    if (path.empty()) {
        out << nlohmann::json{{"order", coeffs.order}, {"beta", coeffs.beta}, {"gamma", coeffs.gamma}}.dump(2)
            << '\n';
        return 0;
    }
    const int n = l.profile.dimension();
    const auto s = steklov_spectrum(l.profile, l.potential, l.config.m_max);
    Sink sink(path, out);
    auto& csv = sink.get();
    csv << "m,kappa,lambda_minus,lambda_plus,leading_minus,leading_plus,series_minus,series_plus,"
           "refined_minus,refined_plus\n";
    for (int m = 1; m <= l.config.m_max; ++m) {
        const double k = kappa(n, m);
        const auto p = vp_prediction(l.profile, l.potential, coeffs, k);
        double lm = 0.0, lp = 0.0;
        for (const auto& e : s.entries) {
            if (e.m != m) continue;
            (e.branch == Branch::plus ? lp : lm) = e.value;
        }
        csv << m << ',' << detail::format_real(k) << ',' << detail::format_real(lm) << ','
            << detail::format_real(lp) << ',' << detail::format_real(p.leading_minus) << ','
            << detail::format_real(p.leading_plus) << ',' << detail::format_real(p.series_minus) << ','
            << detail::format_real(p.series_plus) << ',' << detail::format_real(p.refined_minus) << ','
            << detail::format_real(p.refined_plus) << '\n';
    }
    return 0;
}

inline int cmd_recover(const Options& o, std::ostream& out) {
    SteklovSpectrum s;
    std::string path = o.out;
    if (!o.spectrum_csv.empty()) {
        std::ifstream in(o.spectrum_csv);
        if (!in) throw UsageError("cannot open " + o.spectrum_csv);
        s = read_spectrum_csv(in);
    } else {
        const auto l = load(o.config, o);
        s = steklov_spectrum(l.profile, l.potential, l.config.m_max);
        path = out_path(o, l.config);
    }
    const int fit_to = o.fit_to < 0 ? s.m_max : o.fit_to;
    const auto r = recover_boundary(s, o.fit_from, fit_to);
    emit_json({{"f0", r.f0_hat},
               {"f1", r.f1_hat},
               {"b0", r.b0_hat},
               {"b1", r.b1_hat},
               {"volume", r.volume_hat},
               {"volume_from_endpoints", r.volume_from_endpoints},
               {"volume_residual", r.volume_residual},
               {"residual", r.residual}},
              path, out);
    return 0;
}

inline std::pair<Loaded, Loaded> load_pair(const Options& o) {
    if (o.a.empty() || o.b.empty()) throw UsageError("--a and --b are required");
    auto a = load(o.a, o);
    auto b = load(o.b, o);
    if (a.config.m_max != b.config.m_max) throw UsageError("configs disagree on m_max; pass --m-max");
    return {std::move(a), std::move(b)};
}

inline int cmd_compare(const Options& o, std::ostream& out) {
    const auto [a, b] = load_pair(o);
    const int m_max = a.config.m_max;
    const auto report = isospectral_compare(steklov_spectrum(a.profile, a.potential, m_max),
                                            steklov_spectrum(b.profile, b.potential, m_max), o.tol);
    const auto probe = uniqueness_probe(a.profile, b.profile, m_max,
                                        static_cast<std::size_t>(a.config.node_count));
    emit_json({{"matched", report.matched},
               {"max_deviation", report.max_deviation},
               {"unmatched_excess", report.unmatched_excess},
               {"verdict", verdict_name(probe.verdict)}},
              o.out, out);
    return 0;
}

inline int cmd_probe(const Options& o, std::ostream& out, std::ostream& err) {
    const auto [a, b] = load_pair(o);
    const auto r = uniqueness_probe(a.profile, b.profile, a.config.m_max,
                                    static_cast<std::size_t>(a.config.node_count));
    if (r.cb_warning) err << "warning: a profile violates |f'(k)/f(k)| <= 1/(n-2) at an endpoint\n";
    const char* match = r.coefficients == CoefficientMatch::same        ? "same"
                        : r.coefficients == CoefficientMatch::reflected ? "reflected"
                                                                        : "none";
    emit_json({{"verdict", verdict_name(r.verdict)},
               {"coefficient_match", match},
               {"spectrum_deviation", r.spectrum_deviation},
               {"signature_deviation", r.signature_deviation},
               {"witness_m", r.witness_m},
               {"spectrally_equivalent", r.spectrally_equivalent},
               {"cb_warning", r.cb_warning}},
              o.out, out);
    return 0;
}

inline int cmd_selfcheck(std::ostream& out) {
    bool all = true;
    for (const auto& c : run_selfcheck()) {
        char line[160];
        std::snprintf(line, sizeof line, "%-4s %-36s err=%.3e tol=%.1e", c.pass ? "PASS" : "FAIL",
                      c.name.c_str(), c.error, c.tolerance);
        out << line << '\n';
        all = all && c.pass;
    }
    return all ? 0 : 1;
}

} // namespace cli_detail

/// args excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
    using namespace cli_detail;
    CLI::App app{"Steklov spectra of warped cylinders", "steklov"};
    app.require_subcommand(1);
    Options o;

    auto config_opts = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "JSON run configuration")->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "output file (default: stdout)");
        sub->add_option("--m-max", o.m_max, "largest transversal index");
    };
    auto* spectrum = app.add_subcommand("spectrum", "Steklov spectrum as CSV");
    config_opts(spectrum);
    auto* block = app.add_subcommand("block", "DN block at --mu, or the trace/det signature");
    config_opts(block);
    block->add_option("--mu", o.mu, "transversal eigenvalue");
    auto* wt = app.add_subcommand("wt", "Weyl-Titchmarsh functions at --z");
    config_opts(wt);
    wt->add_option("--z", o.z, "spectral parameter")->required();
    wt->add_option("--order", o.order, "expansion order");
    auto* alphas = app.add_subcommand("alphas", "roots of the characteristic function");
    config_opts(alphas);
    alphas->add_option("--count", o.count, "number of roots");
    auto* asym = app.add_subcommand("asym", "large-z expansion and branch predictions");
    config_opts(asym);
    asym->add_option("--order", o.order, "expansion order");
    auto* recover = app.add_subcommand("recover", "boundary data from a spectrum");
    config_opts(recover);
    recover->add_option("--spectrum", o.spectrum_csv, "spectrum CSV instead of --config")
        ->check(CLI::ExistingFile);
    recover->add_option("--fit-from", o.fit_from, "first index of the fit window");
    recover->add_option("--fit-to", o.fit_to, "last index of the fit window (default m_max)");
    auto* compare = app.add_subcommand("compare", "isospectrality report for two configs");
    auto* probe = app.add_subcommand("probe", "uniqueness probe for two configs");
    for (auto* sub : {compare, probe}) {
        sub->add_option("--a", o.a, "first config")->required()->check(CLI::ExistingFile);
        sub->add_option("--b", o.b, "second config")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "output file (default: stdout)");
        sub->add_option("--m-max", o.m_max, "largest transversal index");
    }
    compare->add_option("--tol", o.tol, "matching tolerance");
    auto* selfcheck = app.add_subcommand("selfcheck", "closed-form oracle checks");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (spectrum->parsed()) return cmd_spectrum(o, out);
        if (block->parsed()) return cmd_block(o, out);
        if (wt->parsed()) return cmd_wt(o, out);
        if (alphas->parsed()) return cmd_alphas(o, out);
        if (asym->parsed()) return cmd_asym(o, out);
        if (recover->parsed()) return cmd_recover(o, out);
        if (compare->parsed()) return cmd_compare(o, out);
        if (probe->parsed()) return cmd_probe(o, out, err);
        if (selfcheck->parsed()) return cmd_selfcheck(out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace steklov
