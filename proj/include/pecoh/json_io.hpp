#pragma once

#include <string>

#include <json.hpp>

#include "pecoh/cyclotomic.hpp"
#include "pecoh/errors.hpp"
#include "pecoh/linalg.hpp"
#include "pecoh/pattern.hpp"
#include "pecoh/penrose.hpp"

namespace pecoh
{

    using Json = nlohmann::ordered_json;

    // A field element is an array of 4 strings "num/den" in basis order
    // 1, z, z^2, z^3; the denominator is always written, so integers read
    // "n/1".  Round-trips are exact.
    Json cyclo_to_json(const CycloNum &c);
    CycloNum cyclo_from_json(const Json &j);

    // A plane point is the pair [x, y] of its unique split z = x + y with x
    // real and y purely imaginary inside the field (the field contains no i,
    // so y carries the factor i itself).
    Json point_to_json(const CycloNum &z);
    CycloNum point_from_json(const Json &j);

    Json matrix_to_json(const IntMatrix &m); // nested arrays of decimal strings

    // { "seed": s, "depth": n, "tiles": [ { "prototile": id,
    //   "anchor": [x, y], "level": l } ] }
    Json patch_to_json(const Patch &p);
    Patch patch_from_json(const Json &j);

    // { "points": [[x, y]...], "labels": [int...], "exact": true,
    //   "one_d": bool }.  A float form { "points": [[float, float]...],
    //   "exact": false } is accepted for one-dimensional patterns, whose
    //   coordinates lift exactly to dyadic rationals; planar float points
    //   have no exact lift into the field and are rejected.
    Json pattern_to_json(const PointPattern &p);
    PointPattern pattern_from_json(const Json &j);

    // "num/den" (or plain integer) text to an exact rational.
    Rational rational_from_text(const std::string &s);

    // Strict front ends: parse text, or throw SchemaError naming the issue.
    Json parse_json_text(const std::string &text);
    Json load_json_file(const std::string &path);
    void save_text_file(const std::string &path, const std::string &text);

} // namespace pecoh
