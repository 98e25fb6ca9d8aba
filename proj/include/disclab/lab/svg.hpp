#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "disclab/lab/scaling.hpp"
#include "disclab/util/io.hpp"

namespace disclab::lab {

/// Standalone SVG line plot of log-log data with an optional fit overlay.
inline std::string svgLogLogPlot(const std::vector<std::pair<double, double>>& data,
                                 const SlopeFit* fit, const std::string& title) {
    const int W = 640, H = 440, ML = 70, MR = 20, MT = 40, MB = 50;
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const auto& [x, y] : data) {
        xlo = std::min(xlo, std::log10(x));
        xhi = std::max(xhi, std::log10(x));
        ylo = std::min(ylo, std::log10(y));
        yhi = std::max(yhi, std::log10(y));
    }
    if (xhi - xlo < 1e-9) xhi = xlo + 1.0;
    if (yhi - ylo < 1e-9) yhi = ylo + 1.0;
    const double padY = 0.05 * (yhi - ylo);
    ylo -= padY;
    yhi += padY;
    auto px = [&](double lx) { return ML + (lx - xlo) / (xhi - xlo) * (W - ML - MR); };
    auto py = [&](double ly) { return H - MB - (ly - ylo) / (yhi - ylo) * (H - MT - MB); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) + "\" height=\"" +
         std::to_string(H) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + std::to_string(W / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
         title + "</text>\n";
    // axes
    s += "<line x1=\"" + std::to_string(ML) + "\" y1=\"" + std::to_string(H - MB) + "\" x2=\"" +
         std::to_string(W - MR) + "\" y2=\"" + std::to_string(H - MB) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + std::to_string(ML) + "\" y1=\"" + std::to_string(MT) + "\" x2=\"" +
         std::to_string(ML) + "\" y2=\"" + std::to_string(H - MB) + "\" stroke=\"black\"/>\n";
    // decade ticks
    for (int d = static_cast<int>(std::ceil(xlo)); d <= static_cast<int>(std::floor(xhi)); ++d) {
        const double x = px(d);
        s += "<line x1=\"" + fmtDouble(x) + "\" y1=\"" + std::to_string(H - MB) + "\" x2=\"" +
             fmtDouble(x) + "\" y2=\"" + std::to_string(H - MB + 6) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + fmtDouble(x) + "\" y=\"" + std::to_string(H - MB + 22) +
             "\" text-anchor=\"middle\" font-size=\"12\">1e" + std::to_string(d) + "</text>\n";
    }
    for (int d = static_cast<int>(std::ceil(ylo)); d <= static_cast<int>(std::floor(yhi)); ++d) {
        const double y = py(d);
        s += "<line x1=\"" + std::to_string(ML - 6) + "\" y1=\"" + fmtDouble(y) + "\" x2=\"" +
             std::to_string(ML) + "\" y2=\"" + fmtDouble(y) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + std::to_string(ML - 10) + "\" y=\"" + fmtDouble(y + 4) +
             "\" text-anchor=\"end\" font-size=\"12\">1e" + std::to_string(d) + "</text>\n";
    }
    // fit overlay
    if (fit) {
        const double lx1 = xlo, lx2 = xhi;
        const double ln10 = std::log(10.0);
        const double ly1 = (fit->intercept + fit->slope * lx1 * ln10) / ln10;
        const double ly2 = (fit->intercept + fit->slope * lx2 * ln10) / ln10;
        s += "<line x1=\"" + fmtDouble(px(lx1)) + "\" y1=\"" + fmtDouble(py(ly1)) + "\" x2=\"" +
             fmtDouble(px(lx2)) + "\" y2=\"" + fmtDouble(py(ly2)) +
             "\" stroke=\"#c03020\" stroke-dasharray=\"6 3\"/>\n";
        s += "<text x=\"" + std::to_string(W - MR - 10) + "\" y=\"" + std::to_string(MT + 16) +
             "\" text-anchor=\"end\" font-size=\"13\" fill=\"#c03020\">slope " +
             fmtDouble(std::round(fit->slope * 1000) / 1000) + "</text>\n";
    }
    // polyline + markers
    std::string path;
    for (size_t i = 0; i < data.size(); ++i) {
        const double x = px(std::log10(data[i].first)), y = py(std::log10(data[i].second));
        path += (i ? " " : "") + fmtDouble(x) + "," + fmtDouble(y);
    }
    s += "<polyline fill=\"none\" stroke=\"#1060c0\" stroke-width=\"1.5\" points=\"" + path + "\"/>\n";
    for (const auto& [x, y] : data)
        s += "<circle cx=\"" + fmtDouble(px(std::log10(x))) + "\" cy=\"" +
             fmtDouble(py(std::log10(y))) + "\" r=\"3\" fill=\"#1060c0\"/>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace disclab::lab
