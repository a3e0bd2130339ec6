// qortho — evaluation, tabulation and identity-verification CLI for the
// q-Hermite family catalog.
//
// Exit codes: 0 all residual checks pass, 1 verification failure, 2 usage error.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qortho/densities.hpp"
#include "qortho/expansions.hpp"
#include "qortho/families.hpp"
#include "qortho/kernels.hpp"
#include "qortho/kibble.hpp"
#include "qortho/qcore.hpp"
#include "qortho/report.hpp"
#include "qortho/verify.hpp"

using namespace qortho;

namespace {

TruncationPolicy policy_from(double abs_tol, double rel_tol, int max_terms) {
    TruncationPolicy pol;
    pol.abs_tol = abs_tol;
    pol.rel_tol = rel_tol;
    pol.max_terms = max_terms;
    if (const char* env = std::getenv("QORTHO_MAX_TERMS")) {
        pol.max_terms = std::atoi(env);
    }
    pol.validate();
    return pol;
}

FamilySpec spec_from(const std::string& family, double q, double a, double b, double y, double rho,
                     double beta) {
    FamilySpec spec;
    spec.family = family_from_string(family);
    spec.q = QParam(q);
    spec.a = a;
    spec.b = b;
    spec.y = y;
    spec.rho = rho;
    spec.beta = beta;
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-orthogonal polynomial catalog: evaluation and verification"};
    app.require_subcommand(1);

    double abs_tol = 1e-14, rel_tol = 1e-12;
    int max_terms = 1000;
    app.add_option("--abs-tol", abs_tol, "truncation absolute tolerance");
    app.add_option("--rel-tol", rel_tol, "truncation relative tolerance");
    app.add_option("--max-terms", max_terms, "series/product term cap");

    // ---- eval ----
    auto* cmd_eval = app.add_subcommand("eval", "evaluate a family member P_n(x)");
    std::string family = "qHermite_H";
    int n = 0, m = 0;
    double q = 0.5, x = 0.0, y = 0.0, rho = 0.0, beta = 0.0, a = 0.0, b = 0.0;
    cmd_eval->add_option("--family", family, "family name")->required();
    cmd_eval->add_option("--n", n, "degree")->required();
    cmd_eval->add_option("--q", q, "deformation parameter");
    cmd_eval->add_option("--x", x, "evaluation point")->required();
    cmd_eval->add_option("--a", a, "parameter a");
    cmd_eval->add_option("--b", b, "parameter b");
    cmd_eval->add_option("--y", y, "parameter y");
    cmd_eval->add_option("--rho", rho, "parameter rho");
    cmd_eval->add_option("--beta", beta, "parameter beta");

    // ---- coeffs ----
    auto* cmd_coeffs = app.add_subcommand("coeffs", "print the coefficient vector of P_n");
    cmd_coeffs->add_option("--family", family)->required();
    cmd_coeffs->add_option("--n", n)->required();
    cmd_coeffs->add_option("--q", q);
    cmd_coeffs->add_option("--a", a);
    cmd_coeffs->add_option("--b", b);
    cmd_coeffs->add_option("--y", y);
    cmd_coeffs->add_option("--rho", rho);
    cmd_coeffs->add_option("--beta", beta);

    // ---- table ----
    auto* cmd_table = app.add_subcommand("table", "CSV table of P_0..P_n over an x grid");
    double x_min = -1.0, x_max = 1.0;
    int steps = 20;
    cmd_table->add_option("--family", family)->required();
    cmd_table->add_option("--n-max", n)->required();
    cmd_table->add_option("--q", q);
    cmd_table->add_option("--x-min", x_min);
    cmd_table->add_option("--x-max", x_max);
    cmd_table->add_option("--steps", steps);
    cmd_table->add_option("--a", a);
    cmd_table->add_option("--b", b);
    cmd_table->add_option("--y", y);
    cmd_table->add_option("--rho", rho);
    cmd_table->add_option("--beta", beta);

    // ---- verify ----
    auto* cmd_verify = app.add_subcommand("verify", "run identity verification sweeps");
    std::string identity, out_path, format = "csv";
    bool all = false;
    std::uint64_t seed = 1;
    int n_max = 6, m_max = 6, points = 5;
    cmd_verify->add_option("--identity", identity, "identity or sweep-group id");
    cmd_verify->add_flag("--all", all, "run every registered sweep");
    cmd_verify->add_option("--n-max", n_max);
    cmd_verify->add_option("--m-max", m_max);
    cmd_verify->add_option("--points", points, "random points per configuration");
    cmd_verify->add_option("--q", q, "override the q grid with a single value");
    bool q_given_verify = false;
    cmd_verify->callback([&] { q_given_verify = cmd_verify->count("--q") > 0; });
    cmd_verify->add_option("--seed", seed);
    cmd_verify->add_option("--out", out_path, "report path (default stdout)");
    cmd_verify->add_option("--format", format, "csv or json");

    // ---- kernel ----
    auto* cmd_kernel = app.add_subcommand("kernel", "series vs closed form of a kernel");
    std::string kind = "PM";
    double t = 0.0, z = 0.0, alpha = 0.0, beta2 = 0.0, rho1 = 0.0, rho2 = 0.0;
    cmd_kernel->add_option("--kind", kind,
                           "PM | PM_corollary | cheb_i | ultra_ii | bigH_iii | ascQ_iv_a | "
                           "ascQ_iv_b | ascP_v | bigH_corollary | recip_i | recip_ii_q1 | "
                           "recip_iii | recip_iv")
        ->required();
    cmd_kernel->add_option("--q", q);
    cmd_kernel->add_option("--x", x);
    cmd_kernel->add_option("--y", y);
    cmd_kernel->add_option("--z", z);
    cmd_kernel->add_option("--t", t);
    cmd_kernel->add_option("--rho", rho);
    cmd_kernel->add_option("--rho1", rho1);
    cmd_kernel->add_option("--rho2", rho2);
    cmd_kernel->add_option("--a", a);
    cmd_kernel->add_option("--b", b);
    cmd_kernel->add_option("--alpha", alpha);
    cmd_kernel->add_option("--beta", beta);
    cmd_kernel->add_option("--beta2", beta2);

    // ---- density ----
    auto* cmd_density = app.add_subcommand("density", "evaluate an orthogonality density");
    std::string dkind = "fN";
    cmd_density->add_option("--kind", dkind, "fN | fbN | fCN | fR")->required();
    cmd_density->add_option("--q", q)->required();
    cmd_density->add_option("--x", x)->required();
    cmd_density->add_option("--a", a);
    cmd_density->add_option("--y", y);
    cmd_density->add_option("--rho", rho);
    cmd_density->add_option("--beta", beta);

    // ---- quadrature ----
    auto* cmd_quad = app.add_subcommand("quadrature", "orthogonality integral <P_n, P_m>");
    cmd_quad->add_option("--family", family)->required();
    cmd_quad->add_option("--n", n)->required();
    cmd_quad->add_option("--m", m)->required();
    cmd_quad->add_option("--q", q);
    cmd_quad->add_option("--a", a);
    cmd_quad->add_option("--y", y);
    cmd_quad->add_option("--rho", rho);
    cmd_quad->add_option("--beta", beta);

    // ---- ks ----
    auto* cmd_ks = app.add_subcommand("ks", "Kibble-Slepian sum g(x1,x2,x3)");
    double x1 = 0.0, x2 = 0.0, x3 = 0.0, rho12 = 0.0, rho13 = 0.0, rho23 = 0.0;
    std::string rep = "direct";
    cmd_ks->add_option("--x1", x1)->required();
    cmd_ks->add_option("--x2", x2)->required();
    cmd_ks->add_option("--x3", x3)->required();
    cmd_ks->add_option("--rho12", rho12)->required();
    cmd_ks->add_option("--rho13", rho13)->required();
    cmd_ks->add_option("--rho23", rho23)->required();
    cmd_ks->add_option("--q", q)->required();
    cmd_ks->add_option("--rep", rep, "direct | i | ii");

    CLI11_PARSE(app, argc, argv);

    try {
        const TruncationPolicy pol = policy_from(abs_tol, rel_tol, max_terms);

        if (cmd_eval->parsed()) {
            FamilySpec spec = spec_from(family, q, a, b, y, rho, beta);
            if (spec.family == Family::ASC_Q) {
                const cplx v = family_eval(Family::ASC_Q, n, cplx(x), spec.complex_params());
                std::cout << format_number(v.real());
                if (v.imag() != 0.0) std::cout << " " << format_number(v.imag()) << "i";
                std::cout << "\n";
            } else {
                std::cout << format_number(family_eval(spec.family, n, x, spec.real_params()))
                          << "\n";
            }
            return 0;
        }
        if (cmd_coeffs->parsed()) {
            FamilySpec spec = spec_from(family, q, a, b, y, rho, beta);
            auto poly = family_coeffs(spec.family, n, spec.real_params());
            for (int i = 0; i <= poly.degree(); ++i) {
                if (i) std::cout << ",";
                std::cout << format_number(poly.coeff(i));
            }
            std::cout << "\n";
            return 0;
        }
        if (cmd_table->parsed()) {
            FamilySpec spec = spec_from(family, q, a, b, y, rho, beta);
            std::cout << "x";
            for (int j = 0; j <= n; ++j) std::cout << ",P" << j;
            std::cout << "\n";
            for (int i = 0; i <= steps; ++i) {
                const double xv = x_min + (x_max - x_min) * i / steps;
                auto vals = family_eval_seq(spec.family, n, xv, spec.real_params());
                std::cout << format_number(xv);
                for (int j = 0; j <= n; ++j) std::cout << "," << format_number(vals[(size_t)j]);
                std::cout << "\n";
            }
            return 0;
        }
        if (cmd_verify->parsed()) {
            SweepConfig cfg;
            cfg.policy = pol;
            cfg.seed = seed;
            cfg.n_max = n_max;
            cfg.m_max = m_max;
            cfg.points = points;
            if (q_given_verify) {
                cfg.q_grid = {q};
                cfg.q_single = q;
                cfg.has_q_override = true;
            }
            std::vector<VerifyRow> rows;
            if (all) {
                rows = run_verify_all(cfg);
            } else if (!identity.empty()) {
                rows = run_verify(identity, cfg);
            } else {
                std::cerr << "verify: need --identity <id> or --all\n";
                return 2;
            }
            write_report(rows, out_path, format);
            for (const auto& r : rows)
                if (!r.pass) return 1;
            return 0;
        }
        if (cmd_kernel->parsed()) {
            KernelResult kr;
            QParam qp(q);
            if (kind == "PM") {
                kr = poisson_mehler(x, y, rho, qp, pol);
            } else if (kind == "PM_corollary") {
                kr = poisson_mehler_diagonal_corollary(x, rho, qp, pol);
            } else if (kind == "recip_i" || kind == "recip_ii_q1" || kind == "recip_iii" ||
                       kind == "recip_iv") {
                KernelArgs ka;
                ka.x = x;
                ka.y = y;
                ka.z = z;
                ka.rho1 = rho1 != 0.0 ? rho1 : rho;
                ka.rho2 = rho2;
                ka.a = a;
                ka.b = b;
                kr = reciprocal_expansion(reciprocal_kind_from_string(kind), ka, qp, pol);
            } else {
                KernelArgs ka;
                ka.x = x;
                ka.y = y;
                ka.z = z;
                ka.t = t;
                ka.beta = beta;
                ka.a = a;
                ka.b = b;
                ka.alpha = alpha;
                ka.beta2 = beta2;
                ka.rho1 = rho1;
                ka.rho2 = rho2;
                kr = kernel_sum(kernel_kind_from_string(kind), ka, qp, pol);
            }
            std::cout << "series=" << format_number(kr.series_value)
                      << " closed=" << format_number(kr.closed_value)
                      << " residual=" << format_number(kr.residual) << " terms=" << kr.terms_used
                      << " converged=" << (kr.converged ? "true" : "false") << "\n";
            return kr.converged && kr.residual <= 1e-6 * std::max(1.0, std::abs(kr.closed_value))
                       ? 0
                       : 1;
        }
        if (cmd_density->parsed()) {
            DensitySpec ds;
            ds.kind = density_kind_from_string(dkind);
            ds.q = QParam(q);
            ds.a = a;
            ds.y = y;
            ds.rho = rho;
            ds.beta = beta;
            std::cout << format_number(density(ds, x, pol)) << "\n";
            return 0;
        }
        if (cmd_quad->parsed()) {
            FamilySpec spec = spec_from(family, q, a, b, y, rho, beta);
            auto r = orthogonality_integral(spec, n, m, 1e-9, pol);
            std::cout << "integral=" << format_number(r.value)
                      << " expected=" << format_number(r.expected) << "\n";
            const double tol = 1e-6 * std::max(1.0, std::abs(r.expected));
            return std::abs(r.value - r.expected) <= tol ? 0 : 1;
        }
        if (cmd_ks->parsed()) {
            KSParams ks{rho12, rho13, rho23};
            auto r = kibble_slepian(x1, x2, x3, ks, QParam(q), ks_representation_from_string(rep),
                                    pol);
            std::cout << "g=" << format_number(r.value) << " terms=" << r.terms_used
                      << " converged=" << (r.converged ? "true" : "false")
                      << " gaussian_pd=" << (ks.gaussian_pd() ? "true" : "false") << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
