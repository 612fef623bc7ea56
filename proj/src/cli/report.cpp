#include "qh/cli/report.hpp"

#include <algorithm>
#include <cmath>

#include "qh/polynomials.hpp"

namespace qh::cli {

using json = nlohmann::ordered_json;

std::string_view to_string(KnownProcess k) {
    switch (k) {
        case KnownProcess::QWiener: return "QWiener";
        case KnownProcess::Poisson: return "Poisson";
        case KnownProcess::GeneralizedChebyshevSupported: return "GeneralizedChebyshevSupported";
    }
    return "";
}

json scalar_json(const Rational& x) { return qh::to_string(x); }

json scalar_json(double x) {
    if (std::isfinite(x)) {
        return x;
    }
    return qh::to_string(x);
}

template <Field T>
std::optional<KnownProcess> known_process(const QHParams<T>& p, SpecialCase c, bool favard_ok) {
    auto zero = [](const T& v) { return sign(v) == 0; };
    if (zero(p.sigma) && zero(p.tau) && zero(p.theta) && zero(p.eta)) {
        return KnownProcess::QWiener;
    }
    if (zero(p.sigma) && zero(p.tau) && zero(p.eta) && p.q == T(1) && p.theta == T(1)) {
        return KnownProcess::Poisson;
    }
    const bool chebyshev_case = satisfies(SpecialCase::QSigmaZero, p) ||
                                satisfies(SpecialCase::QTauZero, p) ||
                                satisfies(SpecialCase::QEqualsMinusSigmaTau, p);
    if (chebyshev_case && favard_ok && c != SpecialCase::None) {
        return KnownProcess::GeneralizedChebyshevSupported;
    }
    return std::nullopt;
}

namespace {

template <Field T>
void add_case_notes(const QHParams<T>& p, SpecialCase c, std::vector<std::string>& notes) {
    switch (c) {
        case SpecialCase::QSigmaZero:
        case SpecialCase::QTauZero:
            notes.emplace_back("closed form: n = 1 coefficients differ from the constant values "
                               "that hold for n >= 2");
            break;
        case SpecialCase::QEqualsMinusSigmaTau:
            notes.emplace_back("closed form: gamma, delta constant from n = 2 and chi constant "
                               "from n = 3; chi_2 = P / (1 - sigma tau)^3");
            break;
        case SpecialCase::BoundaryQ: {
            if (p.sigma_tau() == T(T(1) / 4)) {
                notes.emplace_back("closed form: chi_1 = 1 from the reduced boundary formula, "
                                   "which is 0/0 at n = 1 when sqrt(sigma tau) = 1/2");
            }
            break;
        }
        default:
            break;
    }
}

}  // namespace

template <Field T>
ClassificationReport classify(const QHParams<T>& raw, std::size_t n_max) {
    const QHParams<T> p = QHParams<T>::make(raw.sigma, raw.tau, raw.theta, raw.eta, raw.q);
    ClassificationReport r;
    r.params = params_json(p);
    r.mode = mode_of<T>();
    r.regime = regime_of(p);
    r.special_case = detect_case(p);
    add_case_notes(p, r.special_case, r.notes);

    try {
        const CoefficientTable<T> table = solve_table(p, n_max);
        const FavardReport fav = favard_check(p, table);
        r.favard_ok = fav.ok;
        r.favard_first_failure = fav.first_failure;
    } catch (const Error& e) {
        r.favard_ok = false;
        r.notes.push_back(std::string("favard: ") + e.what());
    }

    const QHParams<double> pd = p.template as<double>();
    try {
        const CoefficientTable<double> wide = solve_table(pd, std::max<std::size_t>(n_max, 1024));
        const BoundednessReport b = boundedness_check(wide, 1.0);
        r.bounded = b.bounded;
        r.determinacy = b.determinacy;
        r.sup_b = b.sup_b;
        r.sup_c_hat = b.sup_c_hat;
        r.notes.insert(r.notes.end(), b.notes.begin(), b.notes.end());
    } catch (const Error& e) {
        r.bounded = false;
        r.determinacy = "unknown";
        r.notes.push_back(std::string("boundedness: ") + e.what());
    }

    if (r.regime == Regime::Oscillatory) {
        r.notes.emplace_back("lambda_n changes sign infinitely often; no fixed point");
    } else {
        std::optional<json> y;
        try {
            if (auto v = fixed_point(p.mobius())) {
                y = scalar_json(*v);
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Irrational) {
                throw;
            }
            if (auto v = fixed_point(pd.mobius())) {
                y = scalar_json(*v);
                r.notes.emplace_back("fixed point is irrational; reported in float");
            }
        }
        if (y) {
            r.fixed_point = *y;
        } else {
            r.notes.emplace_back("fixed point at infinity");
        }
    }
    if (r.regime == Regime::StrictAdmissible && sign(p.theta) == 0 && sign(p.eta) == 0) {
        try {
            r.chi_limit = scalar_json(chi_limit(p));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Irrational) {
                throw;
            }
            r.chi_limit = scalar_json(chi_limit(pd));
            r.notes.emplace_back("chi limit is irrational; reported in float");
        }
        r.notes.emplace_back("chi limit from the fixed-point equation xi = D xi + c");
    }
    if (!r.favard_ok) {
        r.determinacy = "n/a";
    }
    r.known_process = known_process(p, r.special_case, r.favard_ok);
    return r;
}

json to_json(const ClassificationReport& r) {
    json j;
    j["params"] = r.params;
    j["mode"] = r.mode == Mode::Exact ? "exact" : "float";
    j["regime"] = std::string(qh::to_string(r.regime));
    j["special_case"] = std::string(qh::to_string(r.special_case));
    j["favard_ok"] = r.favard_ok;
    j["favard_first_failure"] = r.favard_first_failure ? json(*r.favard_first_failure) : json(nullptr);
    j["bounded"] = r.bounded;
    j["determinacy"] = r.determinacy;
    j["sup_b"] = scalar_json(r.sup_b);
    j["sup_c_hat"] = scalar_json(r.sup_c_hat);
    j["fixed_point"] = r.fixed_point;
    j["chi_limit"] = r.chi_limit;
    j["known_process"] = r.known_process ? json(std::string(to_string(*r.known_process))) : json(nullptr);
    j["notes"] = r.notes;
    return j;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string csv_cell(const json& v) {
    if (v.is_null()) {
        return "";
    }
    if (v.is_string()) {
        return csv_field(v.get<std::string>());
    }
    return csv_field(v.dump());
}

std::string csv_header() {
    return "sigma,tau,theta,eta,q,regime,special_case,favard_ok,favard_first_failure,bounded,"
           "determinacy,fixed_point,chi_limit,known_process,notes,error";
}

namespace {

std::string param_cells(const json& params) {
    std::string s;
    for (const char* k : {"sigma", "tau", "theta", "eta", "q"}) {
        s += csv_cell(params.contains(k) ? params[k] : json(nullptr)) + ",";
    }
    return s;
}

}  // namespace

std::string csv_row(const ClassificationReport& r) {
    const json j = to_json(r);
    std::string notes;
    for (std::size_t i = 0; i < r.notes.size(); ++i) {
        notes += (i ? "; " : "") + r.notes[i];
    }
    std::string s = param_cells(r.params);
    for (const char* k : {"regime", "special_case", "favard_ok", "favard_first_failure", "bounded",
                          "determinacy", "fixed_point", "chi_limit", "known_process"}) {
        s += csv_cell(j[k]) + ",";
    }
    return s + csv_field(notes) + ",";
}

std::string csv_error_row(const json& params, const std::string& error) {
    return param_cells(params) + ",,,,,,,,,," + csv_field(error);
}

#define QH_INSTANTIATE(T)                                                                \
    template std::optional<KnownProcess> known_process<T>(const QHParams<T>&, SpecialCase, \
                                                          bool);                         \
    template ClassificationReport classify<T>(const QHParams<T>&, std::size_t);

QH_INSTANTIATE(double)
QH_INSTANTIATE(Rational)

#undef QH_INSTANTIATE

}  // namespace qh::cli
