#include "ctcprobe/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ctcprobe {

namespace {

struct Series {
    const char* name;
    const char* color;
    double SweepRow::* field;
};

constexpr Series kSeries[] = {
    {"P_TM", "#1f77b4", &SweepRow::P_TM},
    {"P_AdS2", "#d62728", &SweepRow::P_AdS2},
    {"P_EC", "#2ca02c", &SweepRow::P_EC},
    {"P_M", "#7f7f7f", &SweepRow::P_M},
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string render_svg(const SweepTable& table, const std::string& swept_label) {
    std::vector<const SweepRow*> rows;
    for (const auto& r : table.rows)
        if (r.status == "ok") rows.push_back(&r);
    if (rows.empty())
        throw InvalidParameterError("plot: no plottable rows (empty data section)");

    double xmin = rows.front()->swept, xmax = rows.back()->swept;
    double ymin = 1e300, ymax = -1e300;
    for (const auto* r : rows) {
        for (const auto& s : kSeries) {
            ymin = std::min(ymin, r->*s.field);
            ymax = std::max(ymax, r->*s.field);
        }
    }
    if (xmin == xmax) {
        xmin -= 1.0;
        xmax += 1.0;
    }
    const double ypad = (ymax > ymin ? ymax - ymin : std::fabs(ymax) + 1e-12) * 0.08;
    ymin -= ypad;
    ymax += ypad;

    const double W = 900, H = 560, ml = 90, mr = 180, mt = 40, mb = 60;
    const auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    const auto Y = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";

    // axes and ticks
    os << "<g stroke=\"#333333\" stroke-width=\"1\" fill=\"none\">\n";
    os << "<path d=\"M " << coord(ml) << " " << coord(mt) << " L " << coord(ml) << " "
       << coord(H - mb) << " L " << coord(W - mr) << " " << coord(H - mb) << "\"/>\n";
    os << "</g>\n";
    os << "<g font-family=\"sans-serif\" font-size=\"13\" fill=\"#333333\">\n";
    const int nticks = 6;
    for (int i = 0; i < nticks; ++i) {
        const double fx = xmin + (xmax - xmin) * i / (nticks - 1);
        const double fy = ymin + (ymax - ymin) * i / (nticks - 1);
        os << "<line x1=\"" << coord(X(fx)) << "\" y1=\"" << coord(H - mb) << "\" x2=\""
           << coord(X(fx)) << "\" y2=\"" << coord(H - mb + 5) << "\" stroke=\"#333333\"/>\n";
        os << "<text x=\"" << coord(X(fx)) << "\" y=\"" << coord(H - mb + 20)
           << "\" text-anchor=\"middle\">" << num(fx) << "</text>\n";
        os << "<line x1=\"" << coord(ml - 5) << "\" y1=\"" << coord(Y(fy)) << "\" x2=\""
           << coord(ml) << "\" y2=\"" << coord(Y(fy)) << "\" stroke=\"#333333\"/>\n";
        os << "<text x=\"" << coord(ml - 9) << "\" y=\"" << coord(Y(fy) + 4)
           << "\" text-anchor=\"end\">" << num(fy) << "</text>\n";
    }
    os << "<text x=\"" << coord((ml + W - mr) / 2) << "\" y=\"" << coord(H - 15)
       << "\" text-anchor=\"middle\">" << swept_label << "</text>\n";
    os << "<text x=\"20\" y=\"" << coord((mt + H - mb) / 2)
       << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << coord((mt + H - mb) / 2)
       << ")\">P / lambda^2</text>\n";
    os << "</g>\n";

    // one polyline (or markers for a single point) per response column
    for (const auto& s : kSeries) {
        if (rows.size() > 1) {
            os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.8\" points=\"";
            for (const auto* r : rows) os << coord(X(r->swept)) << "," << coord(Y(r->*s.field)) << " ";
            os << "\"/>\n";
        }
        for (const auto* r : rows)
            os << "<circle cx=\"" << coord(X(r->swept)) << "\" cy=\"" << coord(Y(r->*s.field))
               << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
    }

    // legend
    os << "<g font-family=\"sans-serif\" font-size=\"14\">\n";
    double ly = mt + 10;
    for (const auto& s : kSeries) {
        os << "<line x1=\"" << coord(W - mr + 20) << "\" y1=\"" << coord(ly) << "\" x2=\""
           << coord(W - mr + 50) << "\" y2=\"" << coord(ly) << "\" stroke=\"" << s.color
           << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << coord(W - mr + 58) << "\" y=\"" << coord(ly + 5) << "\">" << s.name
           << "</text>\n";
        ly += 24;
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

void render_svg_file(const std::string& csv_path, const std::string& out_path,
                     const std::string& swept_label) {
    const SweepTable table = read_csv_file(csv_path);
    const std::string svg = render_svg(table, swept_label);
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw InvalidParameterError("cannot open output path: " + out_path);
    os << svg;
}

}  // namespace ctcprobe
