#include "ffharm/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace ffharm {

namespace {

using Pt = std::pair<double, double>;

double eval(const HalfPlane& h, const Pt& p) { return h.a * p.first + h.b * p.second - h.c; }

std::vector<Pt> clip(const std::vector<Pt>& poly, const HalfPlane& h) {
    std::vector<Pt> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Pt& cur = poly[i];
        const Pt& nxt = poly[(i + 1) % n];
        double fc = eval(h, cur), fn = eval(h, nxt);
        bool in_c = fc <= 1e-12, in_n = fn <= 1e-12;
        if (in_c) out.push_back(cur);
        if (in_c != in_n) {
            double t = fc / (fc - fn);
            out.emplace_back(cur.first + t * (nxt.first - cur.first),
                             cur.second + t * (nxt.second - cur.second));
        }
    }
    return out;
}

std::vector<Pt> dedupe(std::vector<Pt> poly) {
    std::vector<Pt> out;
    for (const Pt& p : poly) {
        bool dup = false;
        for (const Pt& q : out)
            if (std::abs(p.first - q.first) < 1e-10 && std::abs(p.second - q.second) < 1e-10)
                dup = true;
        if (!dup) out.push_back(p);
    }
    return out;
}

double cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
}

// Andrew monotone chain, counter-clockwise
std::vector<Pt> convex_hull(std::vector<Pt> pts) {
    pts = dedupe(std::move(pts));
    std::sort(pts.begin(), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<Pt> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 1e-14) --k;
        hull[k++] = pts[i];
    }
    std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 1e-14) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) return dedupe(std::move(pts));
    return hull;
}

std::vector<HalfPlane> hull_constraints(const std::vector<Pt>& hull) {
    std::vector<HalfPlane> out;
    if (hull.size() < 3) return out;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Pt& p = hull[i];
        const Pt& q = hull[(i + 1) % hull.size()];
        HalfPlane h;
        h.a = q.second - p.second;
        h.b = -(q.first - p.first);
        h.c = h.a * p.first + h.b * p.second;
        out.push_back(h);
    }
    return out;
}

double dist_to_segment(const Pt& p, const Pt& a, const Pt& b) {
    double vx = b.first - a.first, vy = b.second - a.second;
    double wx = p.first - a.first, wy = p.second - a.second;
    double len2 = vx * vx + vy * vy;
    double t = len2 > 0 ? std::clamp((wx * vx + wy * vy) / len2, 0.0, 1.0) : 0.0;
    double dx = wx - t * vx, dy = wy - t * vy;
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

ExponentRegion::ExponentRegion(std::vector<std::pair<double, double>> vertices,
                               std::vector<HalfPlane> constraints)
    : vertices_(std::move(vertices)), constraints_(std::move(constraints)) {}

bool ExponentRegion::contains(double u, double v, double eps) const {
    if (u < -eps || u > 1 + eps || v < -eps || v > 1 + eps) return false;
    if (!constraints_.empty()) {
        for (const HalfPlane& h : constraints_)
            if (h.a * u + h.b * v > h.c + eps) return false;
        return true;
    }
    // degenerate region: a segment or a point
    Pt p{u, v};
    if (vertices_.empty()) return false;
    if (vertices_.size() == 1)
        return dist_to_segment(p, vertices_[0], vertices_[0]) <= eps;
    double best = 1e300;
    for (std::size_t i = 0; i + 1 < vertices_.size(); ++i)
        best = std::min(best, dist_to_segment(p, vertices_[i], vertices_[i + 1]));
    return best <= eps;
}

ExponentRegion region_necessary_extension(int d, std::optional<int> k, bool square_ratio) {
    if (d < 2) throw Error("BadDimension", "need d >= 2");
    if (k && (*k < 1 || *k >= d - 1))
        throw Error("BadDimension", "subspace dimension must satisfy 1 <= k < d-1");

    std::vector<HalfPlane> hs;
    double dd = double(d);
    hs.push_back({0.0, 1.0, (dd - 1.0) / (2.0 * dd)});        // r >= 2d/(d-1)
    hs.push_back({(dd - 1.0) / dd, 1.0, (dd - 1.0) / dd});    // r >= dp/((d-1)(p-1))
    if (k) {
        double kk = double(*k);
        double s = (dd - 1.0 - kk) / (dd - kk);               // r >= p(d-k)/((p-1)(d-1-k))
        hs.push_back({s, 1.0, s});
    }
    if (d % 2 == 0 || square_ratio) {
        if (d == 2)
            hs.push_back({0.0, 1.0, 0.0});                    // r >= infinity
        else
            hs.push_back({0.0, 1.0, (dd - 2.0) / (2.0 * dd - 2.0)});  // r >= (2d-2)/(d-2)
    }

    std::vector<Pt> poly{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (const HalfPlane& h : hs) poly = clip(poly, h);
    return ExponentRegion(dedupe(std::move(poly)), std::move(hs));
}

ExponentRegion region_necessary_averaging(int d, std::optional<int> k) {
    if (d < 2) throw Error("BadDimension", "need d >= 2");
    double dd = double(d);
    std::vector<Pt> pts{{0, 0}, {0, 1}, {1, 1}};
    if (!k) {
        pts.emplace_back(dd / (dd + 1.0), 1.0 / (dd + 1.0));
    } else {
        if (2 * *k <= d - 1)
            throw Error("BadSubspaceDim", "the subspace test needs k > (d-1)/2");
        double kk = double(*k);
        double denom = (dd - 1.0) * (dd - kk);
        pts.emplace_back((dd * dd - (kk + 2.0) * dd + 2.0 * kk + 1.0) / denom, kk / denom);
        pts.emplace_back(dd * (dd - 1.0 - kk) / denom, (dd - 1.0 - kk) / denom);
    }
    std::vector<Pt> hull = convex_hull(pts);
    std::vector<HalfPlane> hs = hull_constraints(hull);
    return ExponentRegion(std::move(hull), std::move(hs));
}

}
