#include "qh/cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace qh::cli {

namespace {

constexpr std::size_t kMaxAxisLength = 100000;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<Rational> parse_axis(std::string_view spec) {
    spec = trim(spec);
    std::vector<Rational> out;
    if (spec.empty()) {
        return out;
    }
    if (spec.find(':') != std::string_view::npos) {
        const auto a = spec.find(':');
        const auto b = spec.find(':', a + 1);
        if (b == std::string_view::npos || spec.find(':', b + 1) != std::string_view::npos) {
            throw Error(ErrorKind::Parse, "range must be start:stop:step, got '" + std::string(spec) + "'");
        }
        const Rational start = parse_rational(trim(spec.substr(0, a)));
        const Rational stop = parse_rational(trim(spec.substr(a + 1, b - a - 1)));
        const Rational step = parse_rational(trim(spec.substr(b + 1)));
        if (sign(step) == 0) {
            throw Error(ErrorKind::Parse, "range step must be nonzero");
        }
        for (Rational x = start; sign(step) > 0 ? x <= stop : x >= stop; x += step) {
            if (out.size() == kMaxAxisLength) {
                throw Error(ErrorKind::Range, "range has more than 100000 points");
            }
            out.push_back(x);
        }
        return out;
    }
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const auto next = spec.find(',', pos);
        const auto piece = trim(spec.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        out.push_back(parse_rational(piece));
        if (next == std::string_view::npos) {
            break;
        }
        pos = next + 1;
    }
    return out;
}

std::size_t Grid::size() const {
    std::size_t n = 1;
    for (const auto& a : axes) {
        n *= a.size();
    }
    return n;
}

QHParams<Rational> Grid::point(std::size_t index) const {
    std::array<Rational, 5> v;
    for (std::size_t k = 5; k-- > 0;) {
        const std::size_t len = axes[k].size();
        v[k] = axes[k][index % len];
        index /= len;
    }
    return {v[0], v[1], v[2], v[3], v[4]};
}

template <Field T>
std::vector<SweepRow> run_sweep(const Grid& grid, std::size_t n_max, unsigned threads) {
    const std::size_t total = grid.size();
    std::vector<SweepRow> rows(total);
    if (total == 0) {
        return rows;
    }
    auto evaluate = [&](std::size_t i) {
        const QHParams<T> p = grid.point(i).template as<T>();
        SweepRow& row = rows[i];
        row.params = params_json(p);
        try {
            row.report = classify(p, n_max);
        } catch (const Error& e) {
            row.error = std::string(qh::to_string(e.kind())) + ": " + e.what();
        } catch (const std::exception& e) {
            row.error = std::string("internal: ") + e.what();
        }
    };
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < total; i = next++) {
                evaluate(i);
            }
        });
    }
    pool.clear();
    return rows;
}

template std::vector<SweepRow> run_sweep<double>(const Grid&, std::size_t, unsigned);
template std::vector<SweepRow> run_sweep<Rational>(const Grid&, std::size_t, unsigned);

}  // namespace qh::cli
