#include "qh/cli/verify.hpp"

#include <algorithm>
#include <sstream>

#include "qh/closed_forms.hpp"
#include "qh/harness_form.hpp"
#include "qh/polynomials.hpp"
#include "qh/sampling.hpp"

namespace qh::cli {

namespace {

std::string describe(const QHParams<Rational>& p) {
    std::ostringstream s;
    s << "sigma=" << to_string(p.sigma) << " tau=" << to_string(p.tau)
      << " theta=" << to_string(p.theta) << " eta=" << to_string(p.eta) << " q=" << to_string(p.q);
    return s.str();
}

void corrupt(CoefficientTable<Rational>& t, Fault f) {
    if (f == Fault::PerturbChi2 && t.chi.size() > 2) {
        t.chi[2] += 1;
    }
}

void corrupt(SequenceBundle<Rational>& b, Fault f) {
    if (f == Fault::PerturbBeta2 && b.beta.size() > 2) {
        b.beta[2] = 2;
    }
}

SequenceBundle<Rational> bundle(const QHParams<Rational>& p, std::size_t n, Fault f) {
    CoefficientTable<Rational> t = solve_table(p, n);
    corrupt(t, f);
    SequenceBundle<Rational> b = bundle_from_table(t);
    corrupt(b, f);
    return b;
}

// Seeds differ per suite so suites stay independent of each other's draw counts.
Sampler sampler_for(const VerifyOptions& opt, std::uint64_t salt) {
    return Sampler(opt.seed * 0x9E3779B97F4A7C15ULL + salt);
}

void record(SuiteResult& r, bool ok, const std::string& what) {
    ++r.total;
    if (ok) {
        ++r.passed;
    } else if (!r.first_counterexample) {
        r.first_counterexample = what;
    }
}

SuiteResult closed_forms_suite(const VerifyOptions& opt) {
    SuiteResult r;
    r.name = "closed-forms";
    Sampler rng = sampler_for(opt, 1);
    for (SpecialCase c : kAllSpecialCases) {
        for (std::size_t i = 0; i < opt.points; ++i) {
            const auto p = rng.for_case(c);
            CoefficientTable<Rational> closed = closed_table(c, p, opt.n_max);
            CoefficientTable<Rational> solved = solve_table(p, opt.n_max);
            corrupt(solved, opt.fault);
            std::string where;
            for (std::size_t n = 0; n <= opt.n_max && where.empty(); ++n) {
                if (closed.lambda[n] != solved.lambda[n]) where = "lambda";
                else if (closed.gamma[n] != solved.gamma[n]) where = "gamma";
                else if (closed.delta[n] != solved.delta[n]) where = "delta";
                else if (closed.chi[n] != solved.chi[n]) where = "chi";
                if (!where.empty()) {
                    where += "_" + std::to_string(n);
                }
            }
            record(r, where.empty(),
                   std::string(to_string(c)) + " " + describe(p) + ": " + where + " differs");
        }
    }
    return r;
}

SuiteResult residuals_suite(const VerifyOptions& opt) {
    SuiteResult r;
    r.name = "residuals";
    Sampler rng = sampler_for(opt, 2);
    Rational worst(0);
    for (std::size_t i = 0; i < opt.points; ++i) {
        const auto p = rng.strict_admissible();
        const auto res = residuals_system(bundle(p, opt.n_max, opt.fault), p, opt.n_max);
        worst = std::max(worst, res.max());
        std::string what = describe(p);
        if (res.first_nonzero) {
            what += ": equation " + std::to_string(res.first_nonzero->first) + " at n = " +
                    std::to_string(res.first_nonzero->second);
        }
        record(r, sign(res.max()) == 0, what);
    }
    r.max_residual = to_string(worst);
    return r;
}

SuiteResult favard_suite(const VerifyOptions& opt) {
    SuiteResult r;
    r.name = "favard";
    Sampler rng = sampler_for(opt, 3);
    const auto grid = default_favard_grid();
    std::size_t drawn = 0;
    while (r.total < opt.points && drawn < 50 * opt.points + 50) {
        ++drawn;
        QHParams<Rational> p;
        p.sigma = rng.rational(0, 1);
        p.tau = rng.rational(0, 1);
        p.theta = rng.rational(-2, 2);
        p.eta = rng.rational(-2, 2);
        p.q = rng.rational(Rational(-9, 10), Rational(3, 2));
        if (regime_of(p) == Regime::OutOfRange) {
            continue;
        }
        CoefficientTable<Rational> t;
        try {
            t = solve_table(p, opt.n_max);
        } catch (const Error&) {
            continue;
        }
        corrupt(t, opt.fault);
        const bool analytic = favard_check(p, t).ok;
        const bool sampled = favard_sampled(p, t, grid);
        record(r, analytic == sampled,
               describe(p) + ": analytic " + (analytic ? "pass" : "fail") + ", sampled " +
                   (sampled ? "pass" : "fail"));
    }
    return r;
}

SuiteResult symmetry_suite(const VerifyOptions& opt) {
    SuiteResult r;
    r.name = "symmetry";
    Sampler rng = sampler_for(opt, 4);
    while (r.total < opt.points) {
        QHParams<Rational> p;
        p.sigma = p.tau = rng.rational(0, Rational(1, 2));
        p.theta = p.eta = rng.rational(-2, 2);
        p.q = rng.rational(Rational(-15, 16), 1);
        if (regime_of(p) != Regime::StrictAdmissible) {
            continue;
        }
        const auto ok = symmetry_check(p, opt.n_max);
        record(r, ok.value_or(false), describe(p) + ": t <-> 1/t symmetry broken");
    }
    return r;
}

SuiteResult appendix_suite(const VerifyOptions& opt) {
    SuiteResult r;
    r.name = "appendix";
    Sampler rng = sampler_for(opt, 5);
    const std::size_t horizon = std::min<std::size_t>(opt.n_max, 16);
    for (std::size_t i = 0; i < opt.points; ++i) {
        const auto p = rng.strict_admissible();
        const auto b = bundle(p, horizon + 1, opt.fault);
        const auto tm = rng.times();
        const auto n = static_cast<std::size_t>(rng.integer(0, static_cast<long>(horizon)));
        const auto c0 = q_form_coeffs(tm.s, tm.s, tm.u, p);
        const auto c1 = q_form_coeffs(tm.s, tm.u, tm.u, p);
        const bool edges = c0.A == 1 && sign(c0.B) == 0 && sign(c0.C) == 0 && sign(c0.D) == 0 &&
                           sign(c0.E) == 0 && sign(c0.F) == 0 && sign(c1.A) == 0 &&
                           sign(c1.B) == 0 && c1.C == 1 && sign(c1.D) == 0 && sign(c1.E) == 0 &&
                           sign(c1.F) == 0;
        const Rational ident = identity_residual(p, b, n, tm.s, tm.t, tm.u);
        const Rational affine = affinity_residual(b, n, tm.s, tm.t, tm.u);
        std::string what = describe(p) + " n=" + std::to_string(n) + " (s,t,u)=(" +
                           to_string(tm.s) + "," + to_string(tm.t) + "," + to_string(tm.u) + "): ";
        if (!edges) what += "boundary identities fail";
        else if (sign(ident) != 0) what += "p_{n+2} identity residual " + to_string(ident);
        else what += "affinity residual " + to_string(affine);
        record(r, edges && sign(ident) == 0 && sign(affine) == 0, what);
    }
    return r;
}

}  // namespace

std::vector<SuiteResult> run_verify(const std::string& name, const VerifyOptions& opt) {
    std::vector<SuiteResult> out;
    const bool all = name == "all";
    if (!all && std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
        throw Error(ErrorKind::Parse, "unknown suite '" + name + "'");
    }
    if (all || name == "closed-forms") out.push_back(closed_forms_suite(opt));
    if (all || name == "residuals") out.push_back(residuals_suite(opt));
    if (all || name == "favard") out.push_back(favard_suite(opt));
    if (all || name == "symmetry") out.push_back(symmetry_suite(opt));
    if (all || name == "appendix") out.push_back(appendix_suite(opt));
    return out;
}

void print_results(const std::vector<SuiteResult>& results, std::ostream& out) {
    std::size_t failed = 0;
    for (const SuiteResult& r : results) {
        out << r.name << ": " << r.passed << "/" << r.total << " passed";
        if (r.max_residual) {
            out << ", max residual " << *r.max_residual;
        }
        out << "\n";
        if (r.first_counterexample) {
            out << "  first counterexample: " << *r.first_counterexample << "\n";
        }
        failed += r.ok() ? 0 : 1;
    }
    out << (failed == 0 ? "all suites passed" : std::to_string(failed) + " suite(s) failed") << "\n";
}

}  // namespace qh::cli
