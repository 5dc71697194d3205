#pragma once

#include <array>
#include <optional>
#include <string>

#include "pecoh/cyclotomic.hpp"
#include "pecoh/errors.hpp"
#include "pecoh/linalg.hpp"
#include "pecoh/pattern.hpp"

namespace pecoh
{

    // Words over {a, b} under a -> ab, b -> a, starting from "a".
    std::string fibonacci_word(int level, int level_cap = 30);

    // Column j counts the children of letter j (0 = a, 1 = b).
    IntMatrix fibonacci_substitution_matrix();

    std::array<long, 2> letter_counts(const std::string &word);

    // Tiles on the line: letter a has length tau, letter b has length one.
    // Points are the left endpoints (exact), labels 0 = a, 1 = b.
    PointPattern fibonacci_realization(const std::string &word);
    PointPattern fibonacci_midpoints(const std::string &word);

    // Total length of the realized word, exact.
    CycloNum fibonacci_total_length(const std::string &word);

    DirectLimit fibonacci_h1();

    // Primitive F of a comb G, evaluated as a per-point sum of the profile's
    // antiderivative (so F' = G and a zero-mean profile makes F local).  The
    // growth rate is estimated two ways: a least-squares fit over the rational
    // grid lo, lo + step, ..., <= hi, and the difference quotient across a
    // matched pair of pattern points inside the window whose exact local
    // configurations agree (exact repetitions live on the pattern, not the
    // grid).  The equivariance report checks the detrended values across all
    // matched groups of pattern-anchored sites.
    struct PrimitiveProbe
    {
        double grid_step = 0;
        size_t grid_points = 0;
        std::vector<double> grid_values; // F on the grid
        double lsq_slope = 0;
        std::optional<double> matched_slope;
        std::optional<std::pair<size_t, size_t>> matched_pair; // pattern indices
        double slope_used = 0;
        EquivarianceReport equivariance;
    };

    PrimitiveProbe primitive_probe(const PointPattern &pattern, const BumpProfile &profile,
                                   const Rational &lo, const Rational &hi,
                                   const Rational &step, const Rational &key_radius_sq,
                                   double tol);

} // namespace pecoh
