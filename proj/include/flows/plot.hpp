#pragma once

#include "flow.hpp"
#include "ratfn.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace flows {

struct PlotPoint {
    Scalar x, y;
};

struct OrbitPlot {
    std::optional<Scalar> level_value; // empty: the curve den(𝒲) = 0
    std::vector<std::pair<PlotPoint, PlotPoint>> segments;
    std::vector<PlotPoint> points; // distinct segment endpoints in emission order
    std::optional<PlotPoint> marker;
    Scalar lo = -2, hi = 2;
    int grid = 40;
};

// Decimal only at serialization; negative zero is printed as 0.
inline std::string fmt_decimal(double v, int prec = 6)
{
    if (std::isnan(v))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    std::string s = buf;
    if (s.find_first_not_of("-0.") == std::string::npos)
        return std::string(buf + (buf[0] == '-' ? 1 : 0));
    return s;
}

// Unit vector along vf at (x, y); nan components at poles, zero at zeros.
inline std::pair<double, double> normalized_vf(const VectorField& vf, const Scalar& x, const Scalar& y)
{
    auto w = vf.w(x, y), r = vf.r(x, y);
    if (!w || !r)
        return {NAN, NAN};
    double a = w->get_d(), b = r->get_d();
    double n = std::hypot(a, b);
    if (n == 0)
        return {0, 0};
    return {a / n, b / n};
}

// Zero set of G = num − c·den (or den when c = ∞) on the grid [lo, hi]², by marching squares with
// exact evaluation at grid nodes and exact linear interpolation on cell edges.
inline OrbitPlot sample_orbit(const RatFn& W, std::optional<Scalar> c, const Scalar& lo, const Scalar& hi, int n)
{
    if (n < 1)
        throw FlowError("grid must be positive");
    OrbitPlot out;
    out.level_value = c;
    out.lo = lo;
    out.hi = hi;
    out.grid = n;
    Poly G = c ? W.num() - W.den() * *c : W.den();
    Scalar h = (hi - lo) / n;
    std::vector<Scalar> coord(n + 1);
    for (int i = 0; i <= n; ++i)
        coord[i] = lo + h * i;
    std::vector<std::vector<Scalar>> g(n + 1, std::vector<Scalar>(n + 1));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            g[i][j] = G(coord[i], coord[j]);
    auto pos = [](const Scalar& s) { return sgn(s) >= 0; };
    auto cross = [&](int i0, int j0, int i1, int j1) {
        const Scalar &a = g[i0][j0], &b = g[i1][j1];
        Scalar t = a / (a - b);
        return PlotPoint{coord[i0] + (coord[i1] - coord[i0]) * t, coord[j0] + (coord[j1] - coord[j0]) * t};
    };
    std::set<std::pair<Scalar, Scalar>> seen;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // corners in cyclic order: (i,j) (i+1,j) (i+1,j+1) (i,j+1)
            int ci[4] = {i, i + 1, i + 1, i}, cj[4] = {j, j, j + 1, j + 1};
            std::vector<PlotPoint> hits;
            for (int e = 0; e < 4; ++e) {
                int f = (e + 1) % 4;
                if (pos(g[ci[e]][cj[e]]) != pos(g[ci[f]][cj[f]]))
                    hits.push_back(cross(ci[e], cj[e], ci[f], cj[f]));
            }
            for (size_t k = 0; k + 1 < hits.size(); k += 2) {
                out.segments.push_back({hits[k], hits[k + 1]});
                for (const auto& q : {hits[k], hits[k + 1]})
                    if (seen.insert({q.x, q.y}).second)
                        out.points.push_back(q);
            }
        }
    }
    return out;
}

inline std::string orbit_csv(const OrbitPlot& p, const VectorField& vf)
{
    std::ostringstream os;
    os << "x,y,w,r\n";
    auto row = [&](const PlotPoint& q) {
        auto [a, b] = normalized_vf(vf, q.x, q.y);
        os << fmt_decimal(q.x.get_d()) << ',' << fmt_decimal(q.y.get_d()) << ',' << fmt_decimal(a) << ','
           << fmt_decimal(b) << '\n';
    };
    if (p.marker)
        row(*p.marker);
    for (const auto& q : p.points)
        row(q);
    return os.str();
}

inline std::string orbit_svg(const OrbitPlot& p, const VectorField& vf, const std::string& title)
{
    const double size = 600;
    double lo = p.lo.get_d(), hi = p.hi.get_d();
    auto sx = [&](double x) { return fmt_decimal((x - lo) / (hi - lo) * size, 2); };
    auto sy = [&](double y) { return fmt_decimal((hi - y) / (hi - lo) * size, 2); };
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"600\" viewBox=\"0 0 600 "
          "600\">\n"
       << "<title>" << title << "</title>\n"
       << "<rect x=\"0\" y=\"0\" width=\"600\" height=\"600\" fill=\"white\"/>\n";
    if (lo < 0 && hi > 0)
        os << "<g stroke=\"#999\" stroke-width=\"1\"><line x1=\"" << sx(lo) << "\" y1=\"" << sy(0) << "\" x2=\""
           << sx(hi) << "\" y2=\"" << sy(0) << "\"/><line x1=\"" << sx(0) << "\" y1=\"" << sy(lo) << "\" x2=\""
           << sx(0) << "\" y2=\"" << sy(hi) << "\"/></g>\n";
    // field arrows on a coarse grid
    if (!vf.is_zero()) {
        int m = 16;
        Scalar step = (p.hi - p.lo) / m;
        double len = (hi - lo) / m * 0.4;
        os << "<g stroke=\"#4a7ab0\" stroke-width=\"1\">\n";
        for (int i = 0; i <= m; ++i) {
            for (int j = 0; j <= m; ++j) {
                Scalar x = p.lo + step * i, y = p.lo + step * j;
                auto [a, b] = normalized_vf(vf, x, y);
                if (std::isnan(a) || (a == 0 && b == 0))
                    continue;
                double x0 = x.get_d(), y0 = y.get_d();
                os << "<line x1=\"" << sx(x0) << "\" y1=\"" << sy(y0) << "\" x2=\"" << sx(x0 + a * len)
                   << "\" y2=\"" << sy(y0 + b * len) << "\"/>\n";
            }
        }
        os << "</g>\n";
    }
    if (!p.segments.empty()) {
        os << "<path fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\" d=\"";
        for (const auto& [a, b] : p.segments)
            os << 'M' << sx(a.x.get_d()) << ' ' << sy(a.y.get_d()) << 'L' << sx(b.x.get_d()) << ' '
               << sy(b.y.get_d());
        os << "\"/>\n";
    }
    if (p.marker)
        os << "<circle cx=\"" << sx(p.marker->x.get_d()) << "\" cy=\"" << sy(p.marker->y.get_d())
           << "\" r=\"4\" fill=\"black\"/>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace flows
