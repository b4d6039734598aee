#include "blflux/flux.hpp"

#include "blflux/error.hpp"
#include "blflux/format.hpp"
#include "blflux/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blflux::flux {

namespace {

// Jets of m_a at s and m_b at 1 - s, both differentiated with respect to
// their own argument.
struct PhaseJets {
    Jet3 a;
    Jet3 b;
};

PhaseJets phase_jets(const ModelPair& pair, double s) {
    return {pair.m_a.eval_at(s), pair.m_b.eval_at(1.0 - s)};
}

std::optional<AuxRoot> first_root(const ModelPair& pair, const ScanOptions& opt,
                                  double (*g)(const PhaseJets&)) {
    auto at = [&](double s) { return g(phase_jets(pair, s)); };
    const auto grid = uniform_grid(opt.eps, 1.0 - opt.eps, opt.grid_n);
    std::vector<double> values;
    values.reserve(grid.size());
    for (double s : grid) values.push_back(at(s));
    const auto brackets = sign_changes(grid, values);
    if (brackets.empty()) return std::nullopt;
    const auto& b = brackets.front();
    return AuxRoot{bisect(at, b.lo, b.hi, opt.tol), static_cast<int>(brackets.size())};
}

}  // namespace

Jet3 f_jet(const ModelPair& pair, double s) {
    const Jet3 a = pair.m_a.eval_at(s);
    const Jet3 b = reflect(pair.m_b.as_function(), s);
    const Jet3 total = a + b;
    if (total.f0 == 0.0) {
        throw DomainError("zero total mobility at s = " + format_double(s), s);
    }
    // Divide the smaller mobility by the total so that f near 1 keeps its
    // relative accuracy in the derivatives.
    if (b.f0 < a.f0) {
        const Jet3 q = b / total;
        return {1.0 - q.f0, -q.f1, -q.f2, -q.f3};
    }
    return a / total;
}

double f2_closed(const ModelPair& pair, double s) {
    const auto [a, b] = phase_jets(pair, s);
    const double m = a.f0 + b.f0;
    if (m == 0.0) throw DomainError("zero total mobility at s = " + format_double(s), s);
    const double m1 = a.f1 - b.f1;
    const double h = a.f1 * b.f0 + a.f0 * b.f1;
    const double h1 = a.f2 * b.f0 - a.f0 * b.f2;
    return (h1 * m - 2.0 * m1 * h) / (m * m * m);
}

double f1_closed(const ModelPair& pair, double s) {
    const auto [a, b] = phase_jets(pair, s);
    const double m = a.f0 + b.f0;
    if (m == 0.0) throw DomainError("zero total mobility at s = " + format_double(s), s);
    const double h = a.f1 * b.f0 + a.f0 * b.f1;
    return h / (m * m);
}

std::function<Jet3(double)> as_function(const ModelPair& pair) {
    return [pair](double s) { return f_jet(pair, s); };
}

std::optional<AuxRoot> find_s1(const ModelPair& pair, const ScanOptions& opt) {
    return first_root(pair, opt, [](const PhaseJets& p) { return p.a.f1 - p.b.f1; });
}

std::optional<AuxRoot> find_s2(const ModelPair& pair, const ScanOptions& opt) {
    return first_root(pair, opt, [](const PhaseJets& p) { return p.a.f2 * p.b.f0 - p.a.f0 * p.b.f2; });
}

FluxAnalysis inflection_points(const ModelPair& pair, const ScanOptions& opt) {
    if (opt.grid_n < 1000) throw std::invalid_argument("grid_n must be >= 1000");

    FluxAnalysis out;
    auto f2 = [&](double s) { return f_jet(pair, s).f2; };
    const auto grid = uniform_grid(opt.eps, 1.0 - opt.eps, opt.grid_n);
    std::vector<double> values;
    values.reserve(grid.size());
    for (double s : grid) values.push_back(f2(s));

    for (const auto& b : sign_changes(grid, values)) {
        const double root = bisect(f2, b.lo, b.hi, opt.tol);
        out.inflections.push_back(
            {root, b.sign_lo < 0 ? Direction::rising : Direction::falling});
    }

    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double v = std::abs(values[i]);
        if (v >= opt.tangency_tol) continue;
        if (v > std::abs(values[i - 1]) || v > std::abs(values[i + 1])) continue;
        const int left = sign_of(values[i - 1]);
        const int right = sign_of(values[i + 1]);
        if (left != 0 && left == right) out.tangency_warnings.push_back(grid[i]);
    }

    out.s1 = find_s1(pair, opt);
    out.s2 = find_s2(pair, opt);
    out.s_shaped = out.inflections.size() == 1;
    if (pair.symmetric()) out.f3_at_half = f_jet(pair, 0.5).f3;
    return out;
}

std::vector<Sample> tabulate(const ModelPair& pair, int n, double eps) {
    if (n < 2) throw std::invalid_argument("need at least 2 samples");
    std::vector<Sample> rows;
    rows.reserve(static_cast<std::size_t>(n));
    const auto grid = uniform_grid(0.0, 1.0, n);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double s = grid[i];
        if (i == 0) {
            rows.push_back({0.0, 0.0, f_jet(pair, eps).f2});
        } else if (i + 1 == grid.size()) {
            rows.push_back({1.0, 1.0, f_jet(pair, 1.0 - eps).f2});
        } else {
            const Jet3 j = f_jet(pair, std::clamp(s, eps, 1.0 - eps));
            rows.push_back({s, j.f0, j.f2});
        }
    }
    return rows;
}

}  // namespace blflux::flux
