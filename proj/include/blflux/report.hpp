#pragma once

#include "blflux/classifier.hpp"
#include "blflux/flux.hpp"
#include "blflux/riemann.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace blflux::report {

// "key: value" text reports.
void write_text(std::ostream& os, const classifier::ConditionReport& r);
void write_text(std::ostream& os, const flux::FluxAnalysis& a);
void write_text(std::ostream& os, const riemann::WaveFan& fan);

nlohmann::json to_json(const classifier::ConditionReport& r);
nlohmann::json to_json(const flux::FluxAnalysis& a);
nlohmann::json to_json(const riemann::WaveFan& fan);

/// Inverse of to_json for condition reports. Throws nlohmann::json
/// exceptions on malformed input.
classifier::ConditionReport condition_report_from_json(const nlohmann::json& j);

/// CSV with header "s,f,f2"; numbers in shortest round-trip form.
void write_csv(std::ostream& os, const std::vector<flux::Sample>& rows);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Minimal SVG line plot of one series with axes.
void write_svg(std::ostream& os, const Series& series);

}  // namespace blflux::report
