#include "blflux/report.hpp"

#include "blflux/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace blflux::report {

using nlohmann::json;
using classifier::Condition;
using classifier::ConditionReport;
using classifier::Verdict;

namespace {

std::string num(double v) { return format_double(v); }

json num_json(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

double num_from(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

Verdict verdict_from(const std::string& s) {
    if (s == "pass") return Verdict::pass;
    if (s == "fail") return Verdict::fail;
    if (s == "indeterminate") return Verdict::indeterminate;
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

Condition condition_from(const std::string& s) {
    for (auto c : {Condition::c1, Condition::c2, Condition::c3, Condition::c4,
                   Condition::log_decreasing}) {
        if (classifier::to_string(c) == s) return c;
    }
    throw std::invalid_argument("unknown condition '" + s + "'");
}

std::string_view direction_name(flux::Direction d) {
    return d == flux::Direction::rising ? "-+" : "+-";
}

}  // namespace

void write_text(std::ostream& os, const ConditionReport& r) {
    os << "c1: " << classifier::to_string(r.c1) << '\n'
       << "c2: " << classifier::to_string(r.c2) << '\n'
       << "c3: " << classifier::to_string(r.c3) << '\n'
       << "c4: " << classifier::to_string(r.c4) << '\n'
       << "log_decreasing: " << classifier::to_string(r.log_decreasing) << '\n'
       << "c4star: " << classifier::to_string(r.c4star) << '\n'
       << "in_class_M: " << (r.in_class_M ? "true" : "false") << '\n'
       << "criterion_T3: " << num(r.criterion_T3) << '\n'
       << "grid_n: " << r.grid_n << '\n'
       << "eps: " << num(r.eps) << '\n'
       << "m_at_eps: " << num(r.m_at_eps) << '\n'
       << "slope_at_eps: " << num(r.slope_at_eps) << '\n';
    for (const auto& w : r.witnesses) {
        os << "witness: " << classifier::to_string(w.condition) << " s=" << num(w.s)
           << " value=" << num(w.value) << (w.indeterminate ? " (indeterminate)" : "") << '\n';
    }
}

json to_json(const ConditionReport& r) {
    json witnesses = json::array();
    for (const auto& w : r.witnesses) {
        witnesses.push_back({{"condition", classifier::to_string(w.condition)},
                             {"s", num_json(w.s)},
                             {"value", num_json(w.value)},
                             {"indeterminate", w.indeterminate}});
    }
    return {
        {"c1", classifier::to_string(r.c1)},
        {"c2", classifier::to_string(r.c2)},
        {"c3", classifier::to_string(r.c3)},
        {"c4", classifier::to_string(r.c4)},
        {"log_decreasing", classifier::to_string(r.log_decreasing)},
        {"c4star", classifier::to_string(r.c4star)},
        {"in_class_M", r.in_class_M},
        {"criterion_T3", num_json(r.criterion_T3)},
        {"grid_n", r.grid_n},
        {"eps", num_json(r.eps)},
        {"m_at_eps", num_json(r.m_at_eps)},
        {"slope_at_eps", num_json(r.slope_at_eps)},
        {"witnesses", witnesses},
    };
}

ConditionReport condition_report_from_json(const json& j) {
    ConditionReport r;
    r.c1 = verdict_from(j.at("c1").get<std::string>());
    r.c2 = verdict_from(j.at("c2").get<std::string>());
    r.c3 = verdict_from(j.at("c3").get<std::string>());
    r.c4 = verdict_from(j.at("c4").get<std::string>());
    r.log_decreasing = verdict_from(j.at("log_decreasing").get<std::string>());
    r.c4star = verdict_from(j.at("c4star").get<std::string>());
    r.in_class_M = j.at("in_class_M").get<bool>();
    r.criterion_T3 = num_from(j.at("criterion_T3"));
    r.grid_n = j.at("grid_n").get<int>();
    r.eps = num_from(j.at("eps"));
    r.m_at_eps = num_from(j.at("m_at_eps"));
    r.slope_at_eps = num_from(j.at("slope_at_eps"));
    for (const auto& w : j.at("witnesses")) {
        r.witnesses.push_back({condition_from(w.at("condition").get<std::string>()),
                               num_from(w.at("s")), num_from(w.at("value")),
                               w.at("indeterminate").get<bool>()});
    }
    return r;
}

void write_text(std::ostream& os, const flux::FluxAnalysis& a) {
    os << "inflection_count: " << a.inflections.size() << '\n';
    for (const auto& p : a.inflections) {
        os << "inflection: " << num(p.s) << ' ' << direction_name(p.direction) << '\n';
    }
    os << "s1: " << (a.s1 ? num(a.s1->s) : "none") << '\n'
       << "s2: " << (a.s2 ? num(a.s2->s) : "none") << '\n';
    if (a.s1 && a.s1->sign_changes > 1) os << "s1_sign_changes: " << a.s1->sign_changes << '\n';
    if (a.s2 && a.s2->sign_changes > 1) os << "s2_sign_changes: " << a.s2->sign_changes << '\n';
    os << "s_shaped: " << (a.s_shaped ? "true" : "false") << '\n';
    if (a.f3_at_half) os << "f3_at_half: " << num(*a.f3_at_half) << '\n';
    for (double s : a.tangency_warnings) os << "tangency_warning: " << num(s) << '\n';
}

json to_json(const flux::FluxAnalysis& a) {
    json inflections = json::array();
    for (const auto& p : a.inflections) {
        inflections.push_back({{"s", p.s}, {"direction", direction_name(p.direction)}});
    }
    auto aux = [](const std::optional<flux::AuxRoot>& r) -> json {
        if (!r) return nullptr;
        return {{"s", r->s}, {"sign_changes", r->sign_changes}};
    };
    return {
        {"inflections", inflections},
        {"s1", aux(a.s1)},
        {"s2", aux(a.s2)},
        {"s_shaped", a.s_shaped},
        {"f3_at_half", a.f3_at_half ? num_json(*a.f3_at_half) : json(nullptr)},
        {"tangency_warnings", a.tangency_warnings},
    };
}

void write_text(std::ostream& os, const riemann::WaveFan& fan) {
    os << "s_L: " << num(fan.s_left) << '\n'
       << "s_R: " << num(fan.s_right) << '\n'
       << "wave_count: " << fan.waves.size() << '\n';
    for (const auto& w : fan.waves) {
        if (w.is_shock()) {
            os << "shock: " << num(w.left_state) << " -> " << num(w.right_state)
               << " speed=" << num(w.speed_lo) << '\n';
        } else {
            os << "rarefaction: " << num(w.left_state) << " -> " << num(w.right_state)
               << " speeds=[" << num(w.speed_lo) << ", " << num(w.speed_hi) << "]\n";
        }
    }
}

json to_json(const riemann::WaveFan& fan) {
    json waves = json::array();
    for (const auto& w : fan.waves) {
        json jw = {{"kind", w.is_shock() ? "shock" : "rarefaction"},
                   {"left_state", w.left_state},
                   {"right_state", w.right_state}};
        if (w.is_shock()) {
            jw["speed"] = w.speed_lo;
        } else {
            jw["speed_range"] = {w.speed_lo, w.speed_hi};
        }
        waves.push_back(jw);
    }
    return {{"s_L", fan.s_left}, {"s_R", fan.s_right}, {"waves", waves}};
}

void write_csv(std::ostream& os, const std::vector<flux::Sample>& rows) {
    os << "s,f,f2\n";
    for (const auto& r : rows) os << num(r.s) << ',' << num(r.f) << ',' << num(r.f2) << '\n';
}

void write_svg(std::ostream& os, const Series& series) {
    constexpr double width = 640, height = 480, margin = 50;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!series.x.empty()) {
        auto [xmin, xmax] = std::minmax_element(series.x.begin(), series.x.end());
        auto [ymin, ymax] = std::minmax_element(series.y.begin(), series.y.end());
        x0 = *xmin, x1 = *xmax, y0 = *ymin, y1 = *ymax;
    }
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    auto px = [&](double x) { return margin + (x - x0) / (x1 - x0) * (width - 2 * margin); };
    auto py = [&](double y) { return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin); };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    // Axes: bottom and left edges of the plot box, plus y = 0 when in range.
    os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
       << width - margin << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
       << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    if (y0 < 0 && y1 > 0) {
        os << "<line x1=\"" << margin << "\" y1=\"" << py(0) << "\" x2=\"" << width - margin
           << "\" y2=\"" << py(0) << "\" stroke=\"gray\"/>\n";
    }
    os << "<text x=\"" << margin << "\" y=\"" << margin - 15 << "\">" << series.label << "</text>\n";
    os << "<text x=\"" << margin << "\" y=\"" << height - margin + 20 << "\">" << num(x0) << "</text>\n";
    os << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 20 << "\">" << num(x1)
       << "</text>\n";
    os << "<text x=\"5\" y=\"" << height - margin << "\">" << num(y0) << "</text>\n";
    os << "<text x=\"5\" y=\"" << margin << "\">" << num(y1) << "</text>\n";
    os << "<polyline fill=\"none\" stroke=\"blue\" points=\"";
    for (std::size_t i = 0; i < series.x.size(); ++i) {
        if (i) os << ' ';
        os << px(series.x[i]) << ',' << py(series.y[i]);
    }
    os << "\"/>\n</svg>\n";
}

}  // namespace blflux::report
