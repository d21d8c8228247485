#include "koebe/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace koebe {

namespace {

std::string num(double x) {
    if (std::abs(x) < 5e-7) x = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

}  // namespace

std::string render_svg(const Packing& packing, const PlanarMap& map, const SvgOptions& opts) {
    const int n = packing.size();
    if (n == 0) fail(Errc::InvalidInput, "packing is empty");
    if (n != map.vertex_count()) fail(Errc::InvalidInput, "packing size does not match the map");
    if (opts.flow && static_cast<int>(opts.flow->value.size()) != map.edge_count())
        fail(Errc::InvalidInput, "flow size does not match the map");

    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (int v = 0; v < n; ++v) {
        Point c = packing.center[v];
        double r = packing.radius[v];
        x0 = std::min(x0, c.real() - r);
        x1 = std::max(x1, c.real() + r);
        y0 = std::min(y0, c.imag() - r);
        y1 = std::max(y1, c.imag() + r);
    }
    const double span = std::max(x1 - x0, y1 - y0);
    if (!(span > 0.0) || !std::isfinite(span)) fail(Errc::InvalidInput, "packing has no extent");
    const double margin = 0.02 * opts.size;
    const double scale = (opts.size - 2 * margin) / span;
    // The y axis points down in SVG.
    auto sx = [&](double x) { return margin + (x - x0) * scale; };
    auto sy = [&](double y) { return margin + (y1 - y) * scale; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(opts.size) + "\" height=\"" + num(opts.size) +
           "\" viewBox=\"0 0 " + num(opts.size) + " " + num(opts.size) + "\">\n";
    if (opts.flow) {
        out += "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"4\" markerHeight=\"4\" "
               "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#c0392b\"/></marker></defs>\n";
    }
    out += "<g fill=\"none\" stroke=\"#1f3a5f\" stroke-width=\"1\">\n";
    for (int v = 0; v < n; ++v) {
        out += "<circle id=\"v" + std::to_string(v) + "\" cx=\"" + num(sx(packing.center[v].real())) + "\" cy=\"" +
               num(sy(packing.center[v].imag())) + "\" r=\"" + num(packing.radius[v] * scale) + "\"/>\n";
    }
    out += "</g>\n";
    if (opts.labels) {
        out += "<g font-family=\"sans-serif\" text-anchor=\"middle\" dominant-baseline=\"central\" fill=\"#000000\">\n";
        for (int v = 0; v < n; ++v) {
            double fs = std::clamp(packing.radius[v] * scale, 4.0, 18.0);
            out += "<text x=\"" + num(sx(packing.center[v].real())) + "\" y=\"" + num(sy(packing.center[v].imag())) +
                   "\" font-size=\"" + num(fs) + "\">" + std::to_string(v) + "</text>\n";
        }
        out += "</g>\n";
    }
    if (opts.flow) {
        double peak = 0.0;
        for (double f : opts.flow->value) peak = std::max(peak, std::abs(f));
        out += "<g stroke=\"#c0392b\" marker-end=\"url(#arrow)\">\n";
        for (int e = 0; e < map.edge_count() && peak > 0.0; ++e) {
            double f = opts.flow->value[e];
            if (std::abs(f) <= 1e-12 * peak) continue;
            auto [u, v] = map.edge_ends(e);
            if (f < 0) std::swap(u, v);
            Point a = packing.center[u], b = packing.center[v];
            out += "<line id=\"e" + std::to_string(e) + "\" x1=\"" + num(sx(a.real())) + "\" y1=\"" + num(sy(a.imag())) +
                   "\" x2=\"" + num(sx(b.real())) + "\" y2=\"" + num(sy(b.imag())) + "\" stroke-width=\"" +
                   num(opts.max_stroke * std::abs(f) / peak) + "\"/>\n";
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace koebe
