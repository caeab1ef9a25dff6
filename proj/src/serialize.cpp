#include "ffharm/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ffharm/version.hpp"

namespace ffharm {

namespace {

json exponent_json(double p) {
    if (std::isinf(p)) return "inf";
    return p;
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

json to_json(const NormEstimate& e) {
    json j;
    j["value"] = e.value;
    j["method"] = e.method;
    j["witness"] = e.witness;
    j["iterations"] = e.iterations;
    j["converged"] = e.converged;
    j["witness_digest"] = e.witness_digest;
    if (!e.extras.empty()) j["extras"] = e.extras;
    return j;
}

json to_json(const ExponentFit& f) {
    return json{{"slope", f.slope},
                {"intercept", f.intercept},
                {"r2", f.r2},
                {"max_residual", f.max_residual},
                {"residuals", f.residuals}};
}

json to_json(const SweepResult& s) {
    json rows = json::array();
    for (const SweepRow& r : s.rows) {
        json row{{"q", r.q},
                 {"cardinality", r.cardinality},
                 {"value", r.value},
                 {"method", r.method}};
        if (!r.witness_values.empty()) row["witness_values"] = r.witness_values;
        rows.push_back(std::move(row));
    }
    json j;
    j["kind"] = kind_name(s.request.kind);
    j["d"] = s.request.d;
    j["scheme"] = scheme_name(s.request.scheme);
    j["p"] = exponent_json(s.request.p);
    j["r"] = exponent_json(s.request.r);
    j["method"] = s.request.method;
    j["seed"] = s.request.seed;
    j["rows"] = std::move(rows);
    return j;
}

json to_json(const CheckResult& c) {
    json j{{"name", c.name}, {"pass", c.pass}, {"measured", c.measured}};
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

json to_json(const SuiteReport& r) {
    json checks = json::array();
    for (const CheckResult& c : r.checks) checks.push_back(to_json(c));
    return json{{"suite", r.suite},   {"pass", r.pass},     {"seed", r.seed},
                {"q_list", r.q_list}, {"d_list", r.d_list}, {"trials", r.trials},
                {"checks", std::move(checks)}, {"version", kVersion}};
}

json to_json(const ExponentRegion& r) {
    json verts = json::array();
    for (auto [u, v] : r.vertices()) verts.push_back(json::array({u, v}));
    json cons = json::array();
    for (const HalfPlane& h : r.constraints())
        cons.push_back(json{{"a", h.a}, {"b", h.b}, {"c", h.c}});
    return json{{"vertices", std::move(verts)}, {"constraints", std::move(cons)}};
}

json to_json(const AffineSubspace& h) {
    return json{{"d", h.d}, {"k", h.k}, {"offset", h.offset}, {"basis", h.basis}};
}

json variety_summary_json(const Variety& v, bool include_points) {
    json j;
    j["q"] = v.field()->q();
    j["p"] = v.field()->p();
    j["n"] = v.field()->n();
    j["d"] = v.dim();
    if (v.form().is_diagonal()) j["coefficients"] = v.form().diag();
    else j["gram"] = v.form().gram_matrix();
    j["cardinality"] = v.cardinality();
    if (include_points) j["points"] = std::vector<std::uint64_t>(v.points().begin(), v.points().end());
    return j;
}

std::string suite_report_text(const SuiteReport& r) {
    std::ostringstream os;
    os << "suite " << r.suite << "  seed=" << r.seed << "\n";
    std::size_t width = 4;
    for (const CheckResult& c : r.checks) width = std::max(width, c.name.size());
    for (const CheckResult& c : r.checks) {
        os << (c.pass ? "PASS " : "FAIL ") << c.name;
        for (std::size_t i = c.name.size(); i < width + 2; ++i) os << ' ';
        bool first = true;
        for (const auto& [k, v] : c.measured) {
            os << (first ? "" : "  ") << k << "=" << fmt(v);
            first = false;
        }
        if (!c.note.empty()) os << "  # " << c.note;
        os << "\n";
    }
    os << (r.pass ? "PASS" : "FAIL") << " " << r.suite << "\n";
    return os.str();
}

std::string sweep_text(const SweepResult& s, const ExponentFit* fit) {
    std::ostringstream os;
    os << "sweep " << kind_name(s.request.kind) << " d=" << s.request.d << " scheme="
       << scheme_name(s.request.scheme) << " p=" << fmt(s.request.p) << " r="
       << fmt(s.request.r) << " method=" << s.request.method << "\n";
    os << "    q     |S|        value\n";
    for (const SweepRow& r : s.rows) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%5ld %9llu  %.12g\n", r.q,
                      (unsigned long long)r.cardinality, r.value);
        os << buf;
    }
    if (fit)
        os << "fit: slope=" << fmt(fit->slope) << " intercept=" << fmt(fit->intercept)
           << " r2=" << fmt(fit->r2) << "\n";
    return os.str();
}

std::string sweep_svg(const SweepResult& s, const ExponentFit* fit) {
    const double W = 480, H = 320, L = 56, B = 40, T = 16, R = 16;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    std::vector<std::pair<double, double>> pts;
    for (const SweepRow& r : s.rows) {
        if (r.value <= 0) continue;
        double x = std::log(double(r.q)), y = std::log(r.value);
        pts.emplace_back(x, y);
        xmin = std::min(xmin, x), xmax = std::max(xmax, x);
        ymin = std::min(ymin, y), ymax = std::max(ymax, y);
    }
    if (pts.empty()) return "<svg xmlns=\"http://www.w3.org/2000/svg\"/>\n";
    if (xmax - xmin < 1e-12) xmax = xmin + 1;
    if (ymax - ymin < 1e-12) ymax = ymin + 1, ymin -= 1;
    auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\""
       << H - B << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
       << "\" stroke=\"black\"/>\n";
    for (const SweepRow& r : s.rows) {
        if (r.value <= 0) continue;
        os << "<circle cx=\"" << px(std::log(double(r.q))) << "\" cy=\""
           << py(std::log(r.value)) << "\" r=\"3\" fill=\"steelblue\"/>\n";
        os << "<text x=\"" << px(std::log(double(r.q))) << "\" y=\"" << H - B + 14
           << "\" font-size=\"10\" text-anchor=\"middle\">" << r.q << "</text>\n";
    }
    if (fit) {
        double y0 = fit->intercept + fit->slope * xmin;
        double y1 = fit->intercept + fit->slope * xmax;
        os << "<line x1=\"" << px(xmin) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(xmax)
           << "\" y2=\"" << py(y1) << "\" stroke=\"crimson\" stroke-dasharray=\"4 3\"/>\n";
        os << "<text x=\"" << L + 8 << "\" y=\"" << T + 12
           << "\" font-size=\"11\">slope " << fmt(fit->slope) << "  (log-log)</text>\n";
    }
    os << "<text x=\"" << (W + L - R) / 2 << "\" y=\"" << H - 8
       << "\" font-size=\"11\" text-anchor=\"middle\">q</text>\n";
    os << "</svg>\n";
    return os.str();
}

std::string sweep_csv(const SweepResult& s) {
    std::ostringstream os;
    os << "q,cardinality,value,method\n";
    for (const SweepRow& r : s.rows) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%ld,%llu,%.17g,%s\n", r.q,
                      (unsigned long long)r.cardinality, r.value, r.method.c_str());
        os << buf;
    }
    return os.str();
}

}
