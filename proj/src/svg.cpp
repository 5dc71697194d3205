#include "pecoh/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

namespace pecoh
{

    namespace
    {
        const std::array<const char *, 4> kFamilyFill = {
            "#f2d0a4", "#e8a87c", "#a4c8f2", "#7ca6e8"};

        const std::array<const char *, 10> kRotationStroke = {
            "#a01010", "#a05a10", "#a0a010", "#5aa010", "#10a010",
            "#10a05a", "#10a0a0", "#105aa0", "#1010a0", "#5a10a0"};

        std::string fmt(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.6f", v);
            return buf;
        }

        // screen coordinates: y flipped
        std::array<std::pair<double, double>, 3> corners(const Triangle &t)
        {
            std::array<std::pair<double, double>, 3> c;
            const CycloNum *v[3] = {&t.apex, &t.b1, &t.b2};
            for (int i = 0; i < 3; i++)
            {
                auto z = v[i]->embed();
                c[static_cast<size_t>(i)] = {z.real(), -z.imag()};
            }
            return c;
        }

        void emit_triangle(std::ostringstream &out, const Triangle &t, int id,
                           double stroke_width)
        {
            auto c = corners(t);
            out << "  <polygon points=\"";
            for (int i = 0; i < 3; i++)
            {
                if (i)
                    out << ' ';
                out << fmt(c[static_cast<size_t>(i)].first) << ','
                    << fmt(c[static_cast<size_t>(i)].second);
            }
            out << "\" fill=\"" << kFamilyFill[static_cast<size_t>(family_of(id))]
                << "\" stroke=\"" << kRotationStroke[static_cast<size_t>(rotation_of(id))]
                << "\" stroke-width=\"" << fmt(stroke_width) << "\"/>\n";
        }
    }

    std::string patch_to_svg(const Patch &p)
    {
        double minx = 0, maxx = 0, miny = 0, maxy = 0;
        bool first = true;
        std::vector<Triangle> placed;
        placed.reserve(p.tiles.size());
        for (const PlacedTile &t : p.tiles)
        {
            placed.push_back(placed_triangle(t));
            for (auto [x, y] : corners(placed.back()))
            {
                if (first)
                {
                    minx = maxx = x;
                    miny = maxy = y;
                    first = false;
                }
                minx = std::min(minx, x);
                maxx = std::max(maxx, x);
                miny = std::min(miny, y);
                maxy = std::max(maxy, y);
            }
        }
        if (first) // empty patch still renders a legend
        {
            minx = miny = 0;
            maxx = maxy = 1;
        }

        // legend grid to the right: one column per family, one row per rotation
        const double cell_w = 3.0, cell_h = 1.8, legend_x = maxx + 1.5;
        const double legend_y = miny;
        const double legend_right = legend_x + 4 * cell_w;
        const double legend_bottom = legend_y + 10 * cell_h;

        const double margin = 1.0;
        double vb_x = minx - margin;
        double vb_y = std::min(miny, legend_y) - margin;
        double vb_w = legend_right - vb_x + margin;
        double vb_h = std::max(maxy, legend_bottom) - vb_y + margin;

        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
            << fmt(vb_x) << ' ' << fmt(vb_y) << ' ' << fmt(vb_w) << ' ' << fmt(vb_h)
            << "\">\n";
        out << "  <rect x=\"" << fmt(vb_x) << "\" y=\"" << fmt(vb_y) << "\" width=\""
            << fmt(vb_w) << "\" height=\"" << fmt(vb_h) << "\" fill=\"#ffffff\"/>\n";

        for (size_t i = 0; i < placed.size(); i++)
            emit_triangle(out, placed[i], p.tiles[i].prototile, 0.02);

        out << "  <g font-family=\"sans-serif\" font-size=\"0.45\" fill=\"#303030\">\n";
        for (int id = 0; id < 40; id++)
        {
            int fam = family_of(id), rot = rotation_of(id);
            double cx = legend_x + fam * cell_w;
            double cy = legend_y + rot * cell_h + 0.9;
            auto c = corners(canonical_triangle(id));
            out << "  <polygon points=\"";
            for (int i = 0; i < 3; i++)
            {
                if (i)
                    out << ' ';
                out << fmt(c[static_cast<size_t>(i)].first * 0.7 + cx) << ','
                    << fmt(c[static_cast<size_t>(i)].second * 0.7 + cy);
            }
            out << "\" fill=\"" << kFamilyFill[static_cast<size_t>(fam)] << "\" stroke=\""
                << kRotationStroke[static_cast<size_t>(rot)]
                << "\" stroke-width=\"0.020000\"/>\n";
            out << "    <text x=\"" << fmt(cx + 1.1) << "\" y=\"" << fmt(cy + 0.15)
                << "\">t" << id << "</text>\n";
        }
        out << "  </g>\n";
        out << "</svg>\n";
        return out.str();
    }

} // namespace pecoh
