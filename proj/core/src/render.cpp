#include "cakecut/render.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "cakecut/format.hpp"

namespace cakecut {

namespace {

constexpr double kWidth = 720.0, kHeight = 400.0;
constexpr double kLeft = 45.0, kRight = 680.0, kBottom = 360.0, kTop = 25.0;

const char* fill_for(int agent) {
    static const char* palette[] = {"#b8b8b8", "#ffffff", "#303030", "#7a9e9f",
                                    "#d4a373", "#8e7dbe", "#6a994e", "#c97b84"};
    return palette[agent % 8];
}

struct Mapper {
    double ymax;
    double x(double v) const { return kLeft + (kRight - kLeft) * v; }
    double y(double v) const { return kBottom - (kBottom - kTop) * (v / ymax); }
};

std::string pt(const Mapper& m, double cx, double cy) {
    return format_g12(m.x(cx)) + "," + format_g12(m.y(cy));
}

}  // namespace

std::string render_svg(const CakeInstance& instance, const Allocation* allocation) {
    double ymax = 0.0;
    for (const auto& a : instance.agents()) ymax = std::max(ymax, a.peak_density());
    const Mapper m{ymax * 1.06};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << format_g12(kWidth) << "\" height=\"" << format_g12(kHeight) << "\" viewBox=\"0 0 "
        << format_g12(kWidth) << " " << format_g12(kHeight) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"#fdfdfd\"/>\n";

    if (allocation != nullptr) {
        for (int i = 0; i < allocation->n(); ++i) {
            const auto& v = instance.agent(i);
            for (const auto& iv : allocation->piece(i)) {
                std::vector<double> xs{iv.start};
                for (double kx : {v.support_left(), v.peak(), v.support_right()})
                    if (kx > iv.start + 1e-12 && kx < iv.end - 1e-12) xs.push_back(kx);
                xs.push_back(iv.end);
                std::sort(xs.begin(), xs.end());
                svg << "<polygon points=\"" << pt(m, iv.start, 0.0);
                for (double x : xs) svg << " " << pt(m, x, v.density_at(x));
                svg << " " << pt(m, iv.end, 0.0) << "\" fill=\"" << fill_for(i)
                    << "\" fill-opacity=\"0.85\" stroke=\"#555555\" stroke-width=\"0.4\"/>\n";
            }
        }
    }

    for (int i = 0; i < instance.n(); ++i) {
        const auto& v = instance.agent(i);
        svg << "<polyline points=\"" << pt(m, v.support_left(), v.density_at(v.support_left()))
            << " " << pt(m, v.peak(), v.peak_density()) << " "
            << pt(m, v.support_right(), v.density_at(v.support_right()))
            << "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1.2\"/>\n";
    }

    // axes
    svg << "<line x1=\"" << format_g12(kLeft) << "\" y1=\"" << format_g12(kBottom) << "\" x2=\""
        << format_g12(kRight + 12.0) << "\" y2=\"" << format_g12(kBottom)
        << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << format_g12(kLeft) << "\" y1=\"" << format_g12(kBottom) << "\" x2=\""
        << format_g12(kLeft) << "\" y2=\"" << format_g12(kTop - 8.0)
        << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    for (double tick : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        svg << "<line x1=\"" << format_g12(m.x(tick)) << "\" y1=\"" << format_g12(kBottom)
            << "\" x2=\"" << format_g12(m.x(tick)) << "\" y2=\"" << format_g12(kBottom + 5.0)
            << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << format_g12(m.x(tick)) << "\" y=\"" << format_g12(kBottom + 18.0)
            << "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">"
            << format_g12(tick) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace cakecut
