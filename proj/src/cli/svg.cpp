#include "bmc/cli.hpp"

#include <cstdio>
#include <sstream>

namespace bmc {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::string to_svg(const BoxSet& s, const Box& view, int pixels) {
    const double w = Rational(view.x1 - view.x0).get_d();
    const double h = Rational(view.y1 - view.y0).get_d();
    const double scale = pixels / (w > h ? w : h);
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w * scale) << "\" height=\"" << num(h * scale)
      << "\" viewBox=\"0 0 " << num(w * scale) << ' ' << num(h * scale) << "\">\n";
    for (const auto& b : s.boxes()) {
        // SVG's y axis points down.
        const double x = Rational(b.x0 - view.x0).get_d() * scale;
        const double y = Rational(view.y1 - b.y1).get_d() * scale;
        const double bw = Rational(b.x1 - b.x0).get_d() * scale;
        const double bh = Rational(b.y1 - b.y0).get_d() * scale;
        o << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(bw) << "\" height=\"" << num(bh)
          << "\" fill=\"black\"/>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace bmc
