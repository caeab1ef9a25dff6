#pragma once

#include <string>

#include <json.hpp>

#include "ffharm/experiments.hpp"

namespace ffharm {

using json = nlohmann::json;

json to_json(const NormEstimate& e);
json to_json(const ExponentFit& f);
json to_json(const SweepResult& s);
json to_json(const CheckResult& c);
json to_json(const SuiteReport& r);
json to_json(const ExponentRegion& r);
json to_json(const AffineSubspace& h);
json variety_summary_json(const Variety& v, bool include_points);

// aligned-column human output
std::string suite_report_text(const SuiteReport& r);
std::string sweep_text(const SweepResult& s, const ExponentFit* fit);

// CSV with a header row
std::string sweep_csv(const SweepResult& s);

// minimal self-contained log-log scatter plot with the fitted line
std::string sweep_svg(const SweepResult& s, const ExponentFit* fit);

}
