#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "pecoh/cyclotomic.hpp"
#include "pecoh/linalg.hpp"

namespace pecoh
{

    // Robinson-triangle substitution for the Penrose tiling, kept exact in Z[z].
    //
    // There are 40 prototile classes: four families crossed with ten rotations.
    // Families 0 and 1 are the two mirror decorations of the obtuse gnomon
    // (legs 1, base tau, apex angle 3pi/5); families 2 and 3 the two mirror
    // decorations of the acute triangle (legs 1, base 1/tau, apex angle pi/5).
    // A bare isoceles triangle is symmetric about its own axis, so chirality is
    // carried by the *ordered* vertex roles (apex; b1, b2), not by the vertex
    // set: family-k reference tiles and their rotations are pairwise distinct
    // as ordered triples. Class id = 10*family + rotation.
    struct Triangle
    {
        CycloNum apex, b1, b2;
    };

    struct PlacedTile
    {
        int prototile = 0;
        CycloNum anchor; // lexicographically smallest vertex of the placed triangle
        int level = 0;   // generation step that produced the tile
    };

    struct Patch
    {
        int seed = 0;
        int depth = 0;
        std::vector<PlacedTile> tiles;
    };

    inline int family_of(int id) { return id / 10; }
    inline int rotation_of(int id) { return id % 10; }

    // Reference triangle with the apex at the origin; rotation l multiplies by z^l.
    Triangle reference_triangle(int id);
    // Same triangle translated so its lex-smallest vertex sits at the origin.
    Triangle canonical_triangle(int id);

    CycloNum lexmin_vertex(const Triangle &t);
    Triangle placed_triangle(const PlacedTile &t);

    // Exact role-respecting classification; throws ClassifyError when the
    // ordered triple is not a translate of any reference tile.
    int classify(const Triangle &t);

    // Children of an already inflated triangle (vertices scaled by tau) of the
    // given family, with their role order. Obtuse parents split into three,
    // acute parents into two.
    std::vector<Triangle> subdivide(const Triangle &inflated, int family);

    // Seeded substitution patch. Each step rescales the whole patch by tau and
    // subdivides every tile, so coordinates stay in Z[z] at every depth.
    Patch generate_patch(int seed, int depth, int depth_cap = 10);

    // 10x10 cyclic shift: omega e_l = e_{l+1 mod 10}.
    IntMatrix omega_matrix();
    // The 40x40 substitution matrix built from its block structure over omega.
    IntMatrix sigma_matrix();
    // Rotation by pi/5 and reflection on class indices; S is derived by
    // classifying mirrored reference tiles, not hardcoded.
    IntMatrix rotation_matrix();
    IntMatrix reflection_matrix();

    // Counts of child classes per parent class, computed geometrically.
    IntMatrix substitution_count_matrix();

    struct ConsistencyReport
    {
        bool matches_sigma = false;
        bool matches_sigma_transpose = false;
        std::string orientation; // "sigma", "transpose" or "neither"
        std::string diff;        // first mismatch as text; empty when consistent
    };

    // Compares the geometric count matrix against the block-structured sigma
    // and its transpose, entry by entry.
    ConsistencyReport consistency_check();

    // Exact relative tile frequencies: the Perron eigenvector of the count
    // matrix for tau^2, normalized to total 1. Verified by exact eigen-equation
    // and positivity before being returned.
    std::vector<CycloNum> tile_frequencies_exact();

    std::vector<long> census_of_patch(const Patch &p); // counts by class id

    // Centroids with class labels, and the deduplicated vertex set.
    std::vector<std::pair<CycloNum, int>> tile_centers(const Patch &p);
    std::vector<CycloNum> patch_vertices(const Patch &p);

    // Float sanity checks used by tests and the CLI.
    bool tiles_interior_disjoint_sample(const Patch &p, int max_pairs, double tol);
    double patch_bounding_radius(const Patch &p);

} // namespace pecoh
