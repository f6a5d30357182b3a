#include "fcone/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <vector>

#include "fcone/errors.hpp"

namespace fcone {

namespace {

struct Pt {
    double x;
    double y;
};

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

double cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain; fine in doubles since this only drives drawing
std::vector<Pt> convex_hull(std::vector<Pt> pts) {
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Pt& a, const Pt& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Pt> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace

std::string paving_svg(const Instance& inst, const Paving& paving) {
    std::size_t dim = inst.ground.dimension();
    if (dim != 1 && dim != 2) {
        throw DimensionMismatch("svg rendering needs a 1- or 2-dimensional ground set");
    }

    std::size_t n = inst.ground.size();
    std::vector<Pt> pos(n);
    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec& c = inst.ground.point(i).coords;
        pos[i].x = static_cast<double>(c[0]);
        pos[i].y = dim == 2 ? static_cast<double>(c[1]) : 0.0;
        if (i == 0) {
            min_x = max_x = pos[i].x;
            min_y = max_y = pos[i].y;
        } else {
            min_x = std::min(min_x, pos[i].x);
            max_x = std::max(max_x, pos[i].x);
            min_y = std::min(min_y, pos[i].y);
            max_y = std::max(max_y, pos[i].y);
        }
    }

    double span = std::max({max_x - min_x, max_y - min_y, 1.0});
    double scale = 560.0 / span;
    double width = (max_x - min_x) * scale + 80.0;
    double height = (max_y - min_y) * scale + 80.0;
    auto sx = [&](double x) { return (x - min_x) * scale + 40.0; };
    auto sy = [&](double y) { return height - ((y - min_y) * scale + 40.0); };

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) +
                      "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " +
                      fmt(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t k = 0; k < paving.classes.size(); ++k) {
        const PavingClass& cls = paving.classes[k];
        const char* color = kPalette[k % kPaletteSize];

        std::set<std::size_t> members(cls.atoms.begin(), cls.atoms.end());
        for (const auto& [atom, targets] : cls.supports) {
            (void)atom;
            members.insert(targets.begin(), targets.end());
        }
        std::vector<Pt> pts;
        pts.reserve(members.size());
        for (std::size_t i : members) pts.push_back(pos[i]);
        std::vector<Pt> hull = convex_hull(std::move(pts));
        if (hull.size() >= 2) {
            std::string points;
            for (const Pt& p : hull) {
                if (!points.empty()) points += " ";
                points += fmt(sx(p.x)) + "," + fmt(sy(p.y));
            }
            out += "<polygon points=\"" + points + "\" fill=\"" + color +
                   "\" fill-opacity=\"0.10\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        out += "<circle cx=\"" + fmt(sx(pos[i].x)) + "\" cy=\"" + fmt(sy(pos[i].y)) +
               "\" r=\"3.5\" fill=\"#b0b0b0\"><title>" + inst.ground.point(i).id +
               "</title></circle>\n";
    }
    for (std::size_t k = 0; k < paving.classes.size(); ++k) {
        const PavingClass& cls = paving.classes[k];
        const char* color = kPalette[k % kPaletteSize];
        std::set<std::size_t> targets;
        for (const auto& [atom, tl] : cls.supports) {
            (void)atom;
            targets.insert(tl.begin(), tl.end());
        }
        for (std::size_t i : targets) {
            out += "<circle cx=\"" + fmt(sx(pos[i].x)) + "\" cy=\"" + fmt(sy(pos[i].y)) +
                   "\" r=\"4\" fill=\"" + color + "\" fill-opacity=\"0.55\"><title>" +
                   inst.ground.point(i).id + "</title></circle>\n";
        }
        for (std::size_t i : cls.atoms) {
            out += "<circle cx=\"" + fmt(sx(pos[i].x)) + "\" cy=\"" + fmt(sy(pos[i].y)) +
                   "\" r=\"5.5\" fill=\"" + color + "\" stroke=\"#303030\" stroke-width=\"1.2\">" +
                   "<title>" + inst.ground.point(i).id + "</title></circle>\n";
        }
    }

    out += "</svg>\n";
    return out;
}

}  // namespace fcone
