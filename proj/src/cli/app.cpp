#include "qh/cli/app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "qh/cli/report.hpp"
#include "qh/cli/sweep.hpp"
#include "qh/polynomials.hpp"

namespace qh::cli {

using json = nlohmann::ordered_json;

namespace {

const std::set<std::string> kKeys{"sigma", "tau",    "theta", "eta",   "q",      "n",
                                  "t",     "mode",   "format", "seed", "suite",  "points",
                                  "threads", "inject-fault"};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
        return "";
    }
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Flag values merged with the config file; flags win.
class Settings {
public:
    std::map<std::string, std::optional<std::string>> flags;
    std::map<std::string, std::string> config;

    std::optional<std::string> get(const std::string& key) const {
        if (auto it = flags.find(key); it != flags.end() && it->second) {
            return it->second;
        }
        if (auto it = config.find(key); it != config.end()) {
            return it->second;
        }
        return std::nullopt;
    }

    std::string get_or(const std::string& key, const std::string& fallback) const {
        return get(key).value_or(fallback);
    }
};

long parse_count(const std::string& key, const std::string& text, long min) {
    long v = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw Error(ErrorKind::Parse, "--" + key + " expects an integer, got '" + text + "'");
    }
    if (v < min) {
        throw Error(ErrorKind::Range, "--" + key + " must be at least " + std::to_string(min));
    }
    return v;
}

Mode parse_mode(const std::string& s) {
    if (s == "exact") return Mode::Exact;
    if (s == "float") return Mode::Float;
    throw Error(ErrorKind::Parse, "--mode must be exact or float, got '" + s + "'");
}

bool parse_format_json(const std::string& s) {
    if (s == "json") return true;
    if (s == "csv") return false;
    throw Error(ErrorKind::Parse, "--format must be json or csv, got '" + s + "'");
}

template <Field T>
QHParams<T> read_params(const Settings& st) {
    auto read = [&](const char* key) { return parse_scalar<T>(trim(st.get_or(key, "0"))); };
    return QHParams<T>::make(read("sigma"), read("tau"), read("theta"), read("eta"), read("q"));
}

template <Field T>
json array_json(const std::vector<T>& v, std::size_t from = 0) {
    json a = json::array();
    for (std::size_t i = from; i < v.size(); ++i) {
        a.push_back(scalar_json(v[i]));
    }
    return a;
}

struct JacobiOut {
    json b;
    json c_hat;
    std::string mode;
};

template <Field T>
JacobiOut jacobi_out(const QHParams<T>& p, const CoefficientTable<T>& table, const T& t) {
    try {
        const JacobiData<T> jd = jacobi_data(p, table, t);
        return {array_json(jd.b), array_json(jd.c_hat, 1), is_exact_v<T> ? "exact" : "float"};
    } catch (const Error& e) {
        if constexpr (is_exact_v<T>) {
            if (e.kind() == ErrorKind::Irrational) {
                const auto pd = p.template as<double>();
                auto lower = [](const std::vector<T>& v) {
                    std::vector<double> d;
                    for (const T& x : v) {
                        d.push_back(to_double(x));
                    }
                    return d;
                };
                const CoefficientTable<double> td{table.N, pd, lower(table.lambda), lower(table.gamma),
                                                  lower(table.delta), lower(table.chi)};
                const JacobiData<double> jd = jacobi_data(pd, td, to_double(t));
                return {array_json(jd.b), array_json(jd.c_hat, 1), "float"};
            }
        }
        throw;
    }
}

template <Field T>
void cmd_solve(const Settings& st, std::ostream& out, std::ostream& err) {
    const QHParams<T> p = read_params<T>(st);
    const auto n = static_cast<std::size_t>(parse_count("n", st.get_or("n", "64"), 1));
    const bool as_json = parse_format_json(st.get_or("format", "json"));
    const Regime regime = regime_of(p);
    if (!is_admissible(regime)) {
        throw Error(ErrorKind::Regime, "solve needs q <= 1 - 2 sqrt(sigma tau); regime is " +
                                           std::string(to_string(regime)));
    }
    const CoefficientTable<T> table = solve_table(p, n);
    std::optional<T> t;
    std::optional<JacobiOut> jac;
    if (auto text = st.get("t")) {
        t = parse_scalar<T>(trim(*text));
        jac = jacobi_out(p, table, *t);
        if (is_exact_v<T> && jac->mode == "float") {
            err << "note: sqrt(t) is irrational; jacobi block evaluated in float\n";
        }
    }
    if (as_json) {
        json j;
        j["params"] = params_json(p);
        j["mode"] = is_exact_v<T> ? "exact" : "float";
        j["N"] = n;
        if (t) {
            j["t"] = scalar_json(*t);
        }
        j["lambda"] = array_json(table.lambda);
        j["gamma"] = array_json(table.gamma);
        j["delta"] = array_json(table.delta);
        j["chi"] = array_json(table.chi, 1);
        if (jac) {
            j["jacobi"] = {{"b", jac->b}, {"c_hat", jac->c_hat}};
            j["jacobi_mode"] = jac->mode;
        }
        out << j.dump(2) << "\n";
        return;
    }
    out << "n,lambda,gamma,delta,chi" << (jac ? ",b,c_hat" : "") << "\n";
    for (std::size_t i = 0; i <= n; ++i) {
        out << i << "," << csv_cell(scalar_json(table.lambda[i])) << ","
            << csv_cell(scalar_json(table.gamma[i])) << "," << csv_cell(scalar_json(table.delta[i]))
            << "," << (i ? csv_cell(scalar_json(table.chi[i])) : "");
        if (jac) {
            out << "," << csv_cell(jac->b[i]) << "," << (i ? csv_cell(jac->c_hat[i - 1]) : "");
        }
        out << "\n";
    }
}

template <Field T>
void cmd_classify(const Settings& st, std::ostream& out) {
    const QHParams<T> p = read_params<T>(st);
    const auto n = static_cast<std::size_t>(parse_count("n", st.get_or("n", "64"), 1));
    const bool as_json = parse_format_json(st.get_or("format", "json"));
    const ClassificationReport r = classify(p, n);
    if (as_json) {
        json j;
        j["params"] = r.params;
        j["mode"] = is_exact_v<T> ? "exact" : "float";
        j["N"] = n;
        j["report"] = to_json(r);
        out << j.dump(2) << "\n";
    } else {
        out << csv_header() << "\n" << csv_row(r) << "\n";
    }
}

template <Field T>
void cmd_sweep(const Settings& st, std::ostream& out) {
    Grid grid;
    const char* keys[] = {"sigma", "tau", "theta", "eta", "q"};
    for (std::size_t k = 0; k < 5; ++k) {
        grid.axes[k] = parse_axis(st.get_or(keys[k], "0"));
    }
    const auto n = static_cast<std::size_t>(parse_count("n", st.get_or("n", "64"), 1));
    const bool as_json = parse_format_json(st.get_or("format", "csv"));
    const auto threads = static_cast<unsigned>(parse_count("threads", st.get_or("threads", "0"), 0));
    const std::vector<SweepRow> rows = run_sweep<T>(grid, n, threads);
    if (as_json) {
        json a = json::array();
        for (const SweepRow& row : rows) {
            json j;
            j["params"] = row.params;
            if (row.report) {
                j["report"] = to_json(*row.report);
            } else {
                j["error"] = row.error;
            }
            a.push_back(std::move(j));
        }
        out << a.dump(2) << "\n";
        return;
    }
    if (rows.empty()) {
        return;
    }
    out << csv_header() << "\n";
    for (const SweepRow& row : rows) {
        out << (row.report ? csv_row(*row.report) : csv_error_row(row.params, row.error)) << "\n";
    }
}

int cmd_verify(const Settings& st, std::ostream& out) {
    VerifyOptions opt;
    opt.seed = static_cast<std::uint64_t>(parse_count("seed", st.get_or("seed", "1"), 0));
    opt.n_max = static_cast<std::size_t>(parse_count("n", st.get_or("n", "64"), 2));
    opt.points = static_cast<std::size_t>(parse_count("points", st.get_or("points", "20"), 1));
    const std::string fault = st.get_or("inject-fault", "none");
    if (fault == "none") opt.fault = Fault::None;
    else if (fault == "beta2") opt.fault = Fault::PerturbBeta2;
    else if (fault == "chi2") opt.fault = Fault::PerturbChi2;
    else throw Error(ErrorKind::Parse, "--inject-fault must be none, beta2 or chi2");
    const auto results = run_verify(st.get_or("suite", "all"), opt);
    print_results(results, out);
    for (const auto& r : results) {
        if (!r.ok()) {
            return 1;
        }
    }
    return 0;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message, int code) {
    json j;
    j["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code}};
    err << j.dump() << "\n";
}

}  // namespace

std::map<std::string, std::string> parse_config(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::Parse, "config line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        if (key.rfind("--", 0) == 0) {
            key.erase(0, 2);
        }
        if (!kKeys.count(key)) {
            throw Error(ErrorKind::Parse, "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        out[key] = value;
    }
    return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Recurrence coefficients of quadratic-harness orthogonal polynomials", "qhcli"};
    app.require_subcommand(1, 1);
    Settings st;
    std::optional<std::string> config_path;

    struct Command {
        const char* name;
        const char* help;
        std::vector<std::string> keys;
    };
    const std::vector<Command> commands{
        {"solve", "Coefficient table (and Jacobi data when --t is given) for one point",
         {"sigma", "tau", "theta", "eta", "q", "n", "t", "mode", "format"}},
        {"classify", "Regime, special case, Favard and boundedness report for one point",
         {"sigma", "tau", "theta", "eta", "q", "n", "mode", "format"}},
        {"sweep", "Classify every point of a grid (lists a,b,c or ranges start:stop:step)",
         {"sigma", "tau", "theta", "eta", "q", "n", "mode", "format", "threads"}},
        {"verify", "Run cross-validation suites on seeded random rational points",
         {"suite", "seed", "n", "points", "inject-fault"}},
    };
    const std::map<std::string, std::string> help{
        {"sigma", "sigma >= 0"}, {"tau", "tau >= 0"}, {"theta", "theta"}, {"eta", "eta"},
        {"q", "q"}, {"n", "horizon N"}, {"t", "time t > 0"}, {"mode", "exact | float"},
        {"format", "json | csv"}, {"seed", "random seed"}, {"points", "points per suite"},
        {"threads", "worker threads (0 = all cores)"},
        {"suite", "closed-forms | residuals | favard | symmetry | appendix | all"},
        {"inject-fault", "none | beta2 | chi2 (harness sensitivity check)"},
    };
    for (const auto& key : kKeys) {
        st.flags[key] = std::nullopt;
    }
    for (const Command& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        for (const std::string& key : c.keys) {
            auto* opt = sub->add_option("--" + key, st.flags[key], help.at(key));
            if (key == "inject-fault") {
                opt->group("");
            }
        }
        sub->add_option("--config", config_path, "flat key = value file; flags take precedence");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        report_error(err, "parse", e.what(), 2);
        return 2;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        if (config_path) {
            std::ifstream f(*config_path);
            if (!f) {
                throw Error(ErrorKind::Parse, "cannot read config file '" + *config_path + "'");
            }
            std::stringstream buf;
            buf << f.rdbuf();
            st.config = parse_config(buf.str());
        }
        if (name == "verify") {
            return cmd_verify(st, out);
        }
        const Mode mode = parse_mode(st.get_or("mode", "exact"));
        if (name == "solve") {
            mode == Mode::Exact ? cmd_solve<Rational>(st, out, err) : cmd_solve<double>(st, out, err);
        } else if (name == "classify") {
            mode == Mode::Exact ? cmd_classify<Rational>(st, out) : cmd_classify<double>(st, out);
        } else {
            mode == Mode::Exact ? cmd_sweep<Rational>(st, out) : cmd_sweep<double>(st, out);
        }
        return 0;
    } catch (const Error& e) {
        const int code = exit_code(e.kind());
        report_error(err, qh::to_string(e.kind()), e.what(), code);
        return code;
    }
}

}  // namespace qh::cli
