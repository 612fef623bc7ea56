// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qh/cli/app.hpp"
#include "qh/cli/report.hpp"
#include "qh/closed_forms.hpp"
#include "qh/harness_form.hpp"
#include "qh/lambda_engine.hpp"
#include "qh/polynomials.hpp"
#include "qh/qnum.hpp"
#include "qh/sampling.hpp"

using namespace qh;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) {
            detail = why;
        }
        ok = false;
    }
};

Rational R(long p, long q = 1) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string show(const QHParams<Rational>& p) {
    std::ostringstream s;
    s << "(sigma,tau,theta,eta,q)=(" << p.sigma << "," << p.tau << "," << p.theta << "," << p.eta
      << "," << p.q << ")";
    return s.str();
}

// 1. residuals_system = 0 exactly on 100 random admissible points, N = 32.
Outcome master_residual() {
    Outcome o;
    Sampler rng(1001);
    for (int i = 0; i < 100; ++i) {
        const auto p = rng.strict_admissible();
        const auto r = residuals_system(reconstruct_six_sequences(p, 32), p, 32);
        if (sign(r.max()) != 0) {
            o.fail(show(p) + " residual " + to_string(r.max()));
        }
    }
    if (o.ok) o.detail = "100 points, max residual 0";
    return o;
}

// 2. closed_table == recursion exactly, N = 64, 20 points per case.
Outcome closed_form_equivalence() {
    Outcome o;
    Sampler rng(2002);
    std::size_t checked = 0;
    for (SpecialCase c : kAllSpecialCases) {
        for (int i = 0; i < 20; ++i) {
            QHParams<Rational> p;
            if (c == SpecialCase::BoundaryQ) {
                // cycle sigma tau through 1/4, 1/9, 1/16
                const long root = 2 + i % 3;
                const Rational s = R(1, root);
                const Rational ratio = rng.rational(R(1, 4), 4);
                p = {Rational(s * ratio), Rational(s / ratio), 0, 0, Rational(1 - 2 * s)};
            } else {
                p = rng.for_case(c);
            }
            if (sign(verify_against_recursion(c, p, 64)) != 0) {
                o.fail(std::string(to_string(c)) + " " + show(p));
            }
            ++checked;
        }
    }
    const QHParams<Rational> edge{R(1, 2), R(1, 2), 0, 0, 0};
    const auto b = closed_table(SpecialCase::BoundaryQ, edge, 4);
    const auto s = solve_table(edge, 4);
    if (b.chi[1] != 1 || s.chi[1] != 1) {
        o.fail("BoundaryQ chi_1 != 1 at sigma tau = 1/4");
    }
    if (o.ok) o.detail = std::to_string(checked) + " tables equal, BoundaryQ chi_1 = 1";
    return o;
}

// 3. lambda analysis.
Outcome lambda_analysis() {
    Outcome o;
    const MobiusParams<Rational> half{R(1, 2), 0};
    const auto y = fixed_point(half);
    if (!y || *y != 2) {
        o.fail("fixed_point(1/2, 0) != 2");
    } else {
        const auto seq = lambda_sequence(half, 100).values;
        Rational bound = *y;
        for (std::size_t n = 0; n <= 100; ++n) {
            if (abs(Rational(seq[n] - *y)) > bound) {
                o.fail("|lambda_n - y| > 2^-n y at n = " + std::to_string(n));
            }
            bound /= 2;
        }
    }
    const MobiusParams<Rational> osc{R(9, 10), R(1, 25)};
    const auto oseq = lambda_sequence(osc, 200);
    if (oseq.truncated_at) o.fail("oscillatory sequence hit a pole");
    if (sign_changes(oseq) < 3) o.fail("fewer than 3 sign changes at (0.9, 0.04)");
    if (fixed_point(osc).has_value()) o.fail("fixed point present at (0.9, 0.04)");
    // sqrt(z) lambda_n < 1 on a 10x10 grid with rational sqrt(z) = j/20.
    for (long j = 0; j < 10; ++j) {
        const Rational rz = R(j, 20);
        const Rational top = Rational(1 - 2 * rz);
        for (long i = 0; i < 10; ++i) {
            const Rational q = Rational(R(-9, 10) + (top + R(9, 10)) * R(i, 9));
            const MobiusParams<Rational> p{q, Rational(rz * rz)};
            if (!is_admissible(regime_classify(p))) {
                o.fail("grid point not admissible");
                continue;
            }
            for (const Rational& l : lambda_sequence(p, 200).values) {
                if (sign(l) < 0 || rz * l >= 1) {
                    o.fail("sqrt(z) lambda_n >= 1 at q=" + to_string(q) + " z=" + to_string(p.z));
                    break;
                }
            }
        }
    }
    if (o.ok) o.detail = "y=2 with 2^-n rate, " + std::to_string(sign_changes(oseq)) +
                         " sign changes, 100-point range grid";
    return o;
}

// 4. kappa and chi limits in the strict regime with theta = eta = 0.
Outcome kappa_chi_limits() {
    Outcome o;
    double worst_kappa = 0;
    double worst_chi = 0;
    for (double st : {0.0, 1.0 / 8, 1.0 / 4 - 1.0 / 64}) {
        const double top = 1 - 2 * std::sqrt(st);
        for (int k = 0; k <= 5; ++k) {
            const double q = -0.9 + (top - 0.05 + 0.9) * k / 5.0;
            const QHParams<double> p{std::sqrt(st), std::sqrt(st), 0, 0, q};
            const auto t = solve_table(p, 600);
            const auto kappa = kappa_sequence(p, t.lambda);
            const double d = limit_ratio_D(p.mobius());
            const double xi = chi_limit(p);
            for (std::size_t n = 400; n < 600; ++n) {
                worst_kappa = std::max(worst_kappa, std::fabs(kappa[n] - d));
                worst_chi = std::max(worst_chi, std::fabs(t.chi[n] - xi));
            }
        }
    }
    if (worst_kappa > 1e-8) o.fail("|kappa_n - D| = " + std::to_string(worst_kappa));
    if (worst_chi > 1e-6) o.fail("|chi_n - chi_limit| = " + std::to_string(worst_chi));
    for (Rational q : {R(0), R(1, 2), R(-1, 2), R(1, 3), R(-3, 4)}) {
        if (chi_limit<Rational>({0, 0, 0, 0, q}) != Rational(1 / (1 - q))) {
            o.fail("chi_limit != 1/(1-q) at sigma tau = 0, q = " + to_string(q));
        }
    }
    if (o.ok) {
        std::ostringstream s;
        s << "max |kappa-D| " << worst_kappa << ", max |chi-limit| " << worst_chi
          << ", 1/(1-q) exact at st=0";
        o.detail = s.str();
    }
    return o;
}

// 5. analytic Favard == t-grid sampling on 50 points with pass and fail cases.
Outcome favard_agreement() {
    Outcome o;
    const auto grid = default_favard_grid();
    std::vector<QHParams<Rational>> points{
        {0, 0, 1, -2, 1},               // theta eta = -2, q = 1: fails at n = 2
        {R(1, 5), R(1, 5), 0, 0, R(9, 10)},  // oscillatory
    };
    Sampler rng(5005);
    while (points.size() < 50) {
        QHParams<Rational> p{rng.rational(0, 1), rng.rational(0, 1), rng.rational(-2, 2),
                             rng.rational(-2, 2), rng.rational(R(-9, 10), R(3, 2))};
        if (regime_of(p) == Regime::OutOfRange) continue;
        try {
            solve_table(p, 32);  // redraw points whose lambda sequence hits a pole
        } catch (const Error&) {
            continue;
        }
        points.push_back(p);
    }
    int pass = 0;
    int fail = 0;
    for (const auto& p : points) {
        CoefficientTable<Rational> t;
        try {
            t = solve_table(p, 32);
        } catch (const Error& e) {
            o.fail(show(p) + ": " + e.what());
            continue;
        }
        const FavardReport rep = favard_check(p, t);
        if (rep.ok != favard_sampled(p, t, grid)) {
            o.fail(show(p) + ": analytic and sampled disagree");
        }
        (rep.ok ? pass : fail)++;
    }
    const auto first = favard_check(points[0], solve_table(points[0], 8));
    if (first.ok || first.first_failure != 2u) o.fail("theta eta = -2 case does not fail at n = 2");
    if (favard_check(points[1], solve_table(points[1], 32)).ok) o.fail("oscillatory example passes");
    if (pass == 0 || fail == 0) o.fail("sample lacks pass or fail cases");
    if (o.ok) o.detail = "50 points agree (" + std::to_string(pass) + " pass, " +
                         std::to_string(fail) + " fail)";
    return o;
}

// Dense (k+1)x(k+1) truncated Jacobi matrix, top-left entry of J^k.
double matrix_power_moment(const JacobiData<double>& jd, std::size_t k) {
    const std::size_t d = k + 1;
    std::vector<std::vector<double>> j(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
        j[i][i] = jd.b[i];
        if (i + 1 < d) {
            j[i][i + 1] = 1.0;
            j[i + 1][i] = jd.c_hat[i + 1];
        }
    }
    std::vector<std::vector<double>> acc(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) acc[i][i] = 1.0;
    for (std::size_t s = 0; s < k; ++s) {
        std::vector<std::vector<double>> next(d, std::vector<double>(d, 0.0));
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t c = 0; c < d; ++c)
                for (std::size_t b = 0; b < d; ++b) next[a][b] += acc[a][c] * j[c][b];
        acc = std::move(next);
    }
    return acc[0][0];
}

// 6. moments.
Outcome moments_criterion() {
    Outcome o;
    Sampler rng(6006);
    std::size_t hankel_checked = 0;
    for (int i = 0; i < 20; ++i) {
        const auto p = rng.strict_admissible();
        const auto table = solve_table(p, 16);
        for (Rational t : {R(1, 4), R(1), R(4)}) {
            const auto jd = jacobi_data(p, table, t);
            if (sign(moments(jd, 1)) != 0) o.fail(show(p) + ": m_1 != 0");
            if (t * moments(jd, 2) != t) o.fail(show(p) + ": Var X_t != t");
        }
        if (favard_check(p, table).ok) {
            const auto pd = p.as<double>();
            const auto jd = jacobi_data(pd, solve_table(pd, 16), 1.0);
            const auto dets = hankel_determinants(moment_sequence(jd, 12), 6);
            for (std::size_t k = 0; k <= 6; ++k) {
                if (!(dets[k] > 0.0)) o.fail(show(p) + ": Hankel det " + std::to_string(k) + " <= 0");
            }
            ++hankel_checked;
        }
    }
    for (double q : {0.0, 0.5, -0.5}) {
        const QHParams<double> p{0, 0, 0, 0, q};
        const auto jd = jacobi_data(p, solve_table(p, 8), 1.0);
        const double m4 = moments(jd, 4);
        if (std::fabs(m4 - (2 + q)) > 1e-12 || std::fabs(matrix_power_moment(jd, 4) - (2 + q)) > 1e-12) {
            o.fail("q-Wiener m_4 != 2 + q at q = " + std::to_string(q));
        }
    }
    if (o.ok) o.detail = "60 (point, t) pairs exact, m_4 = 2+q, Hankel > 0 on " +
                         std::to_string(hankel_checked) + " Favard-positive points";
    return o;
}

// 7. t -> 1/t symmetry.
Outcome symmetry_criterion() {
    Outcome o;
    std::size_t checked = 0;
    for (Rational s : {R(0), R(1, 8), R(1, 4), R(1, 2)}) {
        for (Rational th : {R(-2), R(-1, 3), R(0), R(1, 2), R(3, 2)}) {
            for (Rational q : {R(-1, 2), R(0), R(1, 4)}) {
                const QHParams<Rational> p{s, s, th, th, q};
                if (!is_admissible(regime_of(p))) continue;
                const auto table = solve_table(p, 64);
                for (std::size_t n = 0; n <= 64; ++n) {
                    if (table.gamma[n] != table.delta[n]) o.fail(show(p) + ": gamma != delta");
                }
                const auto a = jacobi_data(p, table, R(4));
                const auto b = jacobi_data(p, table, R(1, 4));
                if (a.b != b.b || a.c_hat != b.c_hat) o.fail(show(p) + ": t=4 and t=1/4 differ");
                if (symmetry_check(p, 64) != std::optional<bool>(true)) o.fail(show(p) + ": symmetry_check");
                ++checked;
            }
        }
    }
    if (o.ok) o.detail = std::to_string(checked) + " grid points, N = 64";
    return o;
}

// 8. named processes.
Outcome named_processes() {
    Outcome o;
    const auto w = cli::classify<Rational>({0, 0, 0, 0, 0}, 64);
    if (w.known_process != cli::KnownProcess::QWiener) o.fail("zero point is not QWiener");
    const QHParams<Rational> poisson{0, 0, 1, 0, 1};
    if (cli::classify(poisson, 32).known_process != cli::KnownProcess::Poisson) {
        o.fail("Poisson point not recognized");
    }
    const auto jd = jacobi_data(poisson, solve_table(poisson, 32), R(1));
    for (std::size_t n = 1; n <= 32; ++n) {
        if (jd.b[n] != static_cast<long>(n) || jd.c_hat[n] != static_cast<long>(n)) {
            o.fail("Poisson b_n or c_hat_n != n at n = " + std::to_string(n));
        }
    }
    if (o.ok) o.detail = "QWiener tagged, Poisson b_n = c_hat_n = n for n <= 32";
    return o;
}

// 9. appendix identities.
Outcome appendix_criterion() {
    Outcome o;
    Sampler rng(9009);
    for (int i = 0; i < 50; ++i) {
        const auto p = rng.strict_admissible();
        const auto tm = rng.times();
        const auto l = q_form_coeffs(tm.s, tm.s, tm.u, p);
        const auto r = q_form_coeffs(tm.s, tm.u, tm.u, p);
        const bool left = l.A == 1 && sign(l.B) == 0 && sign(l.C) == 0 && sign(l.D) == 0 &&
                          sign(l.E) == 0 && sign(l.F) == 0;
        const bool right = sign(r.A) == 0 && sign(r.B) == 0 && r.C == 1 && sign(r.D) == 0 &&
                           sign(r.E) == 0 && sign(r.F) == 0;
        if (!left || !right) o.fail(show(p) + ": boundary identities");
    }
    for (int i = 0; i < 50; ++i) {
        const auto p = rng.strict_admissible();
        const auto b = reconstruct_six_sequences(p, 17);
        const auto tm = rng.times();
        const auto n = static_cast<std::size_t>(rng.integer(0, 16));
        if (sign(identity_residual(p, b, n, tm.s, tm.t, tm.u)) != 0) {
            o.fail(show(p) + ": identity residual at n = " + std::to_string(n));
        }
        if (sign(affinity_residual(b, n, tm.s, tm.t, tm.u)) != 0) {
            o.fail(show(p) + ": affinity residual at n = " + std::to_string(n));
        }
    }
    if (o.ok) o.detail = "50 boundary draws, 50 identity + affinity draws, all exactly 0";
    return o;
}

// 10. CLI determinism, lossless JSON rationals, exit codes.
Outcome cli_criterion() {
    Outcome o;
    auto run = [](const std::vector<std::string>& args, std::string* out_text = nullptr) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run_cli(args, out, err);
        if (out_text) *out_text = out.str();
        return code;
    };
    const std::vector<std::vector<std::string>> cmds{
        {"solve", "--sigma", "1/3", "--tau", "1/5", "--theta", "1/2", "--eta", "-1/4", "--q", "1/7",
         "--n", "32", "--t", "9/4"},
        {"classify", "--sigma", "1/2", "--tau", "1/2", "--q", "-1/4"},
        {"sweep", "--q", "-1/2:1:1/8", "--sigma", "0:1:1/4", "--tau", "1/4", "--theta", "0,1"},
        {"verify", "--suite", "all", "--seed", "4", "--n", "24", "--points", "5"},
    };
    for (const auto& c : cmds) {
        std::string a, b;
        const int ca = run(c, &a);
        const int cb = run(c, &b);
        if (ca != cb || a != b || a.empty()) o.fail("non-deterministic output for " + c[0]);
    }
    std::string text;
    run(cmds[0], &text);
    const auto j = nlohmann::json::parse(text);
    const QHParams<Rational> p{R(1, 3), R(1, 5), R(1, 2), R(-1, 4), R(1, 7)};
    const auto table = solve_table(p, 32);
    const auto jd = jacobi_data(p, table, R(9, 4));
    for (std::size_t n = 0; n <= 32; ++n) {
        bool same = parse_rational(j["lambda"][n].get<std::string>()) == table.lambda[n] &&
                    parse_rational(j["gamma"][n].get<std::string>()) == table.gamma[n] &&
                    parse_rational(j["delta"][n].get<std::string>()) == table.delta[n] &&
                    parse_rational(j["jacobi"]["b"][n].get<std::string>()) == jd.b[n];
        if (n >= 1) {
            same = same && parse_rational(j["chi"][n - 1].get<std::string>()) == table.chi[n] &&
                   parse_rational(j["jacobi"]["c_hat"][n - 1].get<std::string>()) == jd.c_hat[n];
        }
        if (!same) o.fail("JSON round trip differs at n = " + std::to_string(n));
    }
    struct Case {
        std::vector<std::string> args;
        int code;
    };
    const std::vector<Case> cases{
        {{"solve", "--q", "1/2/3"}, 2},
        {{"solve", "--n", "ten"}, 2},
        {{"solve", "--mode", "fast"}, 2},
        {{"solve", "--q", "2"}, 3},
        {{"solve", "--tau", "-1"}, 3},
        {{"solve", "--sigma", "1/5", "--tau", "1/5", "--q", "0.9"}, 4},
        {{"solve", "--mode", "float", "--sigma", "1e200", "--theta", "1e200", "--q", "1/2"}, 5},
    };
    for (const auto& c : cases) {
        const int got = run(c.args);
        if (got != c.code) {
            o.fail("exit code " + std::to_string(got) + " (expected " + std::to_string(c.code) + ")");
        }
    }
    if (o.ok) o.detail = "4 commands byte-identical, 33-row JSON round trip, exit codes 2/3/4/5";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"master residual", master_residual},
        {"closed-form equivalence", closed_form_equivalence},
        {"lambda analysis", lambda_analysis},
        {"kappa/chi limits", kappa_chi_limits},
        {"Favard agreement", favard_agreement},
        {"moments", moments_criterion},
        {"symmetry", symmetry_criterion},
        {"named processes", named_processes},
        {"appendix identities", appendix_criterion},
        {"CLI contract", cli_criterion},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [name, fn] : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line.precision(2);
        line << std::fixed << (o.ok ? "PASS" : "FAIL") << "  " << index << ". " << name << " ["
             << secs << "s]  " << o.detail;
        std::cout << line.str() << "\n";
        failed += o.ok ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all 10 criteria passed" : std::to_string(failed) + " criteria failed")
              << "\n";
    return failed == 0 ? 0 : 1;
}
