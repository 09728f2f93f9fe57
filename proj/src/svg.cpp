#include "tracehull/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace tracehull {

namespace {

constexpr double kSpan = 2.2;     // half-width of the data window
constexpr double kScale = 100.0;  // pixels per unit
constexpr double kSize = 2 * kSpan * kScale;

// data coords -> pixel coords (y flipped)
double px(double x) { return (x + kSpan) * kScale; }
double py(double y) { return (kSpan - y) * kScale; }

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string render_scatter_svg(const std::vector<std::pair<double, double>>& atoms,
                               const std::optional<Region>& region) {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kSize) << "\" height=\""
      << num(kSize) << "\" viewBox=\"0 0 " << num(kSize) << " " << num(kSize) << "\">\n";
    s << "<rect width=\"" << num(kSize) << "\" height=\"" << num(kSize)
      << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // unit gridlines at integer coordinates
    for (int g = -2; g <= 2; ++g) {
        const char* style = g == 0 ? "stroke=\"#888888\" stroke-width=\"1\""
                                   : "stroke=\"#dddddd\" stroke-width=\"1\"";
        s << "<line x1=\"" << num(px(g)) << "\" y1=\"" << num(py(-kSpan)) << "\" x2=\"" << num(px(g))
          << "\" y2=\"" << num(py(kSpan)) << "\" " << style << "/>\n";
        s << "<line x1=\"" << num(px(-kSpan)) << "\" y1=\"" << num(py(g)) << "\" x2=\""
          << num(px(kSpan)) << "\" y2=\"" << num(py(g)) << "\" " << style << "/>\n";
    }
    // the box itself
    s << "<rect x=\"" << num(px(-2)) << "\" y=\"" << num(py(2)) << "\" width=\"" << num(4 * kScale)
      << "\" height=\"" << num(4 * kScale) << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1.5\"/>\n";

    if (region && region->constraint) {
        double b = region->constraint->bound.to_double();
        s << "<path fill=\"none\" stroke=\"#cc3333\" stroke-width=\"1.5\" d=\"";
        if (region->constraint->form == ConstraintForm::Sum) {
            double xa = std::max(-2.0, b - 2.0), xb = std::min(2.0, b + 2.0);
            if (xa <= xb)
                s << "M " << num(px(xa)) << " " << num(py(b - xa)) << " L " << num(px(xb)) << " "
                  << num(py(b - xb));
        } else if (b != 0) {
            // both branches of x*y = b, sampled uniformly in x
            for (int branch = 0; branch < 2; ++branch) {
                bool first = true;
                for (int i = 0; i <= 400; ++i) {
                    double x = -2.0 + 4.0 * i / 400.0;
                    if (branch == 0 && x < 1e-9) continue;
                    if (branch == 1 && x > -1e-9) continue;
                    double y = b / x;
                    if (y < -2 || y > 2) continue;
                    s << (first ? "M " : "L ") << num(px(x)) << " " << num(py(y)) << " ";
                    first = false;
                }
            }
        } else {
            s << "M " << num(px(-2)) << " " << num(py(0)) << " L " << num(px(2)) << " " << num(py(0))
              << " M " << num(px(0)) << " " << num(py(-2)) << " L " << num(px(0)) << " " << num(py(2));
        }
        s << "\"/>\n";
    }

    for (const auto& [x, y] : atoms)
        s << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y))
          << "\" r=\"4\" fill=\"#2255bb\"/>\n";

    s << "</svg>\n";
    return s.str();
}

}  // namespace tracehull
