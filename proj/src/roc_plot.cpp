#include <cstdio>
#include <fstream>
#include <sstream>

#include "respscreen/errors.hpp"
#include "respscreen/eval.hpp"

namespace respscreen {

namespace {

constexpr double kPlotSize = 480.0;
constexpr double kMargin = 56.0;

double map_x(double fpr) {
    return kMargin + fpr * (kPlotSize - 2 * kMargin);
}

double map_y(double tpr) {
    return kPlotSize - kMargin - tpr * (kPlotSize - 2 * kMargin);
}

}  // namespace

void write_roc_svg(const RocSummary& roc, const std::filesystem::path& path,
                   const std::string& title) {
    std::ostringstream svg;
    char buf[160];

    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPlotSize << "\" height=\""
        << kPlotSize << "\" viewBox=\"0 0 " << kPlotSize << " " << kPlotSize << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // frame and chance diagonal
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                  "fill=\"none\" stroke=\"black\"/>\n",
                  kMargin, kMargin, kPlotSize - 2 * kMargin, kPlotSize - 2 * kMargin);
    svg << buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"gray\" "
                  "stroke-dasharray=\"5,5\"/>\n",
                  map_x(0.0), map_y(0.0), map_x(1.0), map_y(1.0));
    svg << buf;

    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.6\" points=\"";
    for (const RocPoint& p : roc.points) {
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", map_x(p.fpr), map_y(p.tpr));
        svg << buf;
    }
    svg << "\"/>\n";

    // axis ticks at 0, 0.5, 1
    for (double v : {0.0, 0.5, 1.0}) {
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" text-anchor=\"middle\">"
                      "%.1f</text>\n",
                      map_x(v), kPlotSize - kMargin + 16.0, v);
        svg << buf;
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" text-anchor=\"end\">"
                      "%.1f</text>\n",
                      kMargin - 6.0, map_y(v) + 4.0, v);
        svg << buf;
    }

    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" text-anchor=\"middle\">"
                  "False positive rate</text>\n",
                  kPlotSize / 2.0, kPlotSize - 16.0);
    svg << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"16\" y=\"%.1f\" font-size=\"12\" text-anchor=\"middle\" "
                  "transform=\"rotate(-90 16 %.1f)\">True positive rate</text>\n",
                  kPlotSize / 2.0, kPlotSize / 2.0);
    svg << buf;

    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"24\" font-size=\"13\" text-anchor=\"middle\">"
                  "%s (AUC %.2f%%, spec@80%%sens %.2f%%)</text>\n",
                  kPlotSize / 2.0, title.c_str(), roc.auc, roc.spec_at_80_sens);
    svg << buf;
    svg << "</svg>\n";

    std::ofstream f(path, std::ios::trunc);
    if (!f) {
        throw IoError("cannot write ROC plot: " + path.string());
    }
    f << svg.str();
}

}  // namespace respscreen
