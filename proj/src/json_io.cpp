#include "pecoh/json_io.hpp"

#include <fstream>
#include <sstream>

namespace pecoh
{

    namespace
    {
        std::string rational_to_string(const Rational &r)
        {
            return r.get_num().get_str() + "/" + r.get_den().get_str();
        }

        Rational rational_from_string(const std::string &s, const std::string &where)
        {
            try
            {
                Rational r(s, 10);
                if (r.get_den() == 0)
                    throw SchemaError(where + ": zero denominator");
                r.canonicalize();
                return r;
            }
            catch (const std::invalid_argument &)
            {
                throw SchemaError(where + ": not a rational \"num/den\": " + s);
            }
        }

        const Json &field(const Json &j, const char *name, const std::string &where)
        {
            auto it = j.find(name);
            if (it == j.end())
                throw SchemaError(where + ": missing field \"" + name + "\"");
            return *it;
        }

        long int_field(const Json &j, const char *name, const std::string &where)
        {
            const Json &f = field(j, name, where);
            if (!f.is_number_integer())
                throw SchemaError(where + "." + name + ": expected an integer");
            return f.get<long>();
        }
    }

    Json cyclo_to_json(const CycloNum &c)
    {
        Json j = Json::array();
        for (int k = 0; k < 4; k++)
            j.push_back(rational_to_string(c.coeff(k)));
        return j;
    }

    namespace
    {
        CycloNum cyclo_from_json_at(const Json &j, const std::string &where)
        {
            if (!j.is_array() || j.size() != 4)
                throw SchemaError(where + ": expected an array of 4 coefficient strings");
            Rational c[4];
            for (int k = 0; k < 4; k++)
            {
                if (!j[static_cast<size_t>(k)].is_string())
                    throw SchemaError(where + "[" + std::to_string(k) +
                                      "]: expected a string");
                c[k] = rational_from_string(j[static_cast<size_t>(k)].get<std::string>(),
                                            where + "[" + std::to_string(k) + "]");
            }
            return CycloNum(c[0], c[1], c[2], c[3]);
        }

        CycloNum point_from_json_at(const Json &j, const std::string &where)
        {
            if (!j.is_array() || j.size() != 2)
                throw SchemaError(where + ": expected a pair [x, y]");
            CycloNum x = cyclo_from_json_at(j[0], where + "[0]");
            CycloNum y = cyclo_from_json_at(j[1], where + "[1]");
            if (!x.is_real())
                throw SchemaError(where + "[0]: x part must be real");
            if (!y.is_imaginary())
                throw SchemaError(where + "[1]: y part must be purely imaginary");
            return x + y;
        }
    }

    CycloNum cyclo_from_json(const Json &j)
    {
        return cyclo_from_json_at(j, "cyclonum");
    }

    Json point_to_json(const CycloNum &z)
    {
        Json j = Json::array();
        j.push_back(cyclo_to_json(re_part(z)));
        j.push_back(cyclo_to_json(im_part_times_i(z)));
        return j;
    }

    CycloNum point_from_json(const Json &j)
    {
        return point_from_json_at(j, "point");
    }

    Json matrix_to_json(const IntMatrix &m)
    {
        Json rows = Json::array();
        for (int i = 0; i < m.rows(); i++)
        {
            Json row = Json::array();
            for (int j = 0; j < m.cols(); j++)
                row.push_back(m.at(i, j).get_str());
            rows.push_back(row);
        }
        return rows;
    }

    Json patch_to_json(const Patch &p)
    {
        Json j;
        j["seed"] = p.seed;
        j["depth"] = p.depth;
        Json tiles = Json::array();
        for (const PlacedTile &t : p.tiles)
        {
            Json tile;
            tile["prototile"] = t.prototile;
            tile["anchor"] = point_to_json(t.anchor);
            tile["level"] = t.level;
            tiles.push_back(tile);
        }
        j["tiles"] = tiles;
        return j;
    }

    Patch patch_from_json(const Json &j)
    {
        if (!j.is_object())
            throw SchemaError("patch: expected an object");
        Patch p;
        p.seed = static_cast<int>(int_field(j, "seed", "patch"));
        p.depth = static_cast<int>(int_field(j, "depth", "patch"));
        const Json &tiles = field(j, "tiles", "patch");
        if (!tiles.is_array())
            throw SchemaError("patch.tiles: expected an array");
        for (size_t i = 0; i < tiles.size(); i++)
        {
            std::string where = "patch.tiles[" + std::to_string(i) + "]";
            const Json &tj = tiles[i];
            if (!tj.is_object())
                throw SchemaError(where + ": expected an object");
            PlacedTile t;
            long id = int_field(tj, "prototile", where);
            if (id < 0 || id >= 40)
                throw SchemaError(where + ".prototile: out of range 0..39");
            t.prototile = static_cast<int>(id);
            t.anchor = point_from_json_at(field(tj, "anchor", where), where + ".anchor");
            if (tj.contains("level"))
                t.level = static_cast<int>(int_field(tj, "level", where));
            p.tiles.push_back(t);
        }
        return p;
    }

    Json pattern_to_json(const PointPattern &p)
    {
        p.validate();
        Json j;
        Json pts = Json::array();
        for (const CycloNum &z : p.points)
            pts.push_back(point_to_json(z));
        j["points"] = pts;
        j["labels"] = p.labels;
        j["exact"] = true;
        j["one_d"] = p.one_d;
        return j;
    }

    PointPattern pattern_from_json(const Json &j)
    {
        if (!j.is_object())
            throw SchemaError("pattern: expected an object");
        PointPattern p;
        bool exact = true;
        if (j.contains("exact"))
        {
            if (!j["exact"].is_boolean())
                throw SchemaError("pattern.exact: expected a boolean");
            exact = j["exact"].get<bool>();
        }
        if (j.contains("one_d"))
        {
            if (!j["one_d"].is_boolean())
                throw SchemaError("pattern.one_d: expected a boolean");
            p.one_d = j["one_d"].get<bool>();
        }
        const Json &pts = field(j, "points", "pattern");
        if (!pts.is_array())
            throw SchemaError("pattern.points: expected an array");
        for (size_t i = 0; i < pts.size(); i++)
        {
            std::string where = "pattern.points[" + std::to_string(i) + "]";
            const Json &pj = pts[i];
            if (exact)
            {
                p.points.push_back(point_from_json_at(pj, where));
                continue;
            }
            // float coordinates lift exactly only on the line
            if (!pj.is_array() || pj.size() != 2 || !pj[0].is_number() ||
                !pj[1].is_number())
                throw SchemaError(where + ": expected a pair of numbers");
            if (!p.one_d || pj[1].get<double>() != 0.0)
                throw SchemaError(where + ": planar float points have no exact lift; "
                                          "provide exact coordinates");
            p.points.push_back(CycloNum(rational_from_double(pj[0].get<double>())));
        }
        const Json &labels = field(j, "labels", "pattern");
        if (!labels.is_array() || labels.size() != pts.size())
            throw SchemaError("pattern.labels: expected an array matching points");
        for (size_t i = 0; i < labels.size(); i++)
        {
            if (!labels[i].is_number_integer())
                throw SchemaError("pattern.labels[" + std::to_string(i) +
                                  "]: expected an integer");
            p.labels.push_back(labels[i].get<int>());
        }
        p.validate();
        return p;
    }

    Rational rational_from_text(const std::string &s)
    {
        return rational_from_string(s, "rational");
    }

    Json parse_json_text(const std::string &text)
    {
        try
        {
            return Json::parse(text);
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw SchemaError(std::string("invalid JSON: ") + e.what());
        }
    }

    Json load_json_file(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw SchemaError("cannot read file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_json_text(buf.str());
    }

    void save_text_file(const std::string &path, const std::string &text)
    {
        std::ofstream out(path);
        if (!out)
            throw SchemaError("cannot write file: " + path);
        out << text;
        if (!out)
            throw SchemaError("write failed: " + path);
    }

} // namespace pecoh
