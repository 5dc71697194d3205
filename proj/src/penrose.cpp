#include "pecoh/penrose.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <sstream>

namespace pecoh
{

    namespace
    {
        void check_id(int id)
        {
            if (id < 0 || id >= 40)
                throw DomainError("prototile id out of range: " + std::to_string(id));
        }

        // base-vector powers (b1, b2) of the four family references
        constexpr int ref_pow[4][2] = {
            {8, 5}, // family 0: obtuse, clockwise decoration
            {5, 8}, // family 1: obtuse, counterclockwise
            {6, 7}, // family 2: acute, counterclockwise
            {7, 6}, // family 3: acute, clockwise
        };

        Triangle translated(const Triangle &t, const CycloNum &d)
        {
            return Triangle{t.apex + d, t.b1 + d, t.b2 + d};
        }

        Triangle scaled(const Triangle &t, const CycloNum &f)
        {
            return Triangle{t.apex * f, t.b1 * f, t.b2 * f};
        }

        const std::array<Triangle, 40> &canonical_table()
        {
            static const std::array<Triangle, 40> table = []
            {
                std::array<Triangle, 40> out;
                for (int id = 0; id < 40; id++)
                {
                    Triangle r = reference_triangle(id);
                    out[static_cast<size_t>(id)] = translated(r, -lexmin_vertex(r));
                }
                return out;
            }();
            return table;
        }
    } // namespace

    Triangle reference_triangle(int id)
    {
        check_id(id);
        const int k = family_of(id), l = rotation_of(id);
        CycloNum rot = CycloNum::zeta(l);
        return Triangle{CycloNum(0),
                        CycloNum::zeta(ref_pow[k][0]) * rot,
                        CycloNum::zeta(ref_pow[k][1]) * rot};
    }

    Triangle canonical_triangle(int id)
    {
        check_id(id);
        return canonical_table()[static_cast<size_t>(id)];
    }

    CycloNum lexmin_vertex(const Triangle &t)
    {
        const CycloNum *best = &t.apex;
        if (cmp_points(t.b1, *best) < 0)
            best = &t.b1;
        if (cmp_points(t.b2, *best) < 0)
            best = &t.b2;
        return *best;
    }

    Triangle placed_triangle(const PlacedTile &t)
    {
        return translated(canonical_triangle(t.prototile), t.anchor);
    }

    int classify(const Triangle &t)
    {
        Triangle c = translated(t, -lexmin_vertex(t));
        for (int id = 0; id < 40; id++)
        {
            const Triangle &ref = canonical_table()[static_cast<size_t>(id)];
            if (c.apex == ref.apex && c.b1 == ref.b1 && c.b2 == ref.b2)
                return id;
        }
        throw ClassifyError("classify: triangle is not a translate of any prototile");
    }

    std::vector<Triangle> subdivide(const Triangle &inflated, int family)
    {
        if (family < 0 || family > 3)
            throw DomainError("subdivide: bad family");
        const CycloNum &a = inflated.apex, &b = inflated.b1, &c = inflated.b2;
        // 1/tau and 1/tau^2 are units of Z[z]: tau - 1 and 2 - tau
        const CycloNum inv_tau = CycloNum::tau_plus() - CycloNum(1);
        const CycloNum inv_tau2 = CycloNum(2) - CycloNum::tau_plus();
        if (family >= 2)
        {
            // acute: one cut point on the apex--b2 leg
            CycloNum m = a + (c - a) * inv_tau;
            return {Triangle{m, b, a}, Triangle{b, c, m}};
        }
        // obtuse: one cut on the apex--b1 leg, one on the base
        CycloNum w = a + (b - a) * inv_tau2;
        CycloNum n = b + (c - b) * inv_tau;
        return {Triangle{w, n, b}, Triangle{n, c, a}, Triangle{n, a, w}};
    }

    Patch generate_patch(int seed, int depth, int depth_cap)
    {
        check_id(seed);
        if (depth < 0)
            throw DomainError("generate_patch: negative depth");
        if (depth > depth_cap)
            throw DomainError("generate_patch: depth " + std::to_string(depth) +
                              " exceeds cap " + std::to_string(depth_cap));
        Patch p;
        p.seed = seed;
        p.depth = depth;
        p.tiles = {PlacedTile{seed, CycloNum(0), 0}};
        const CycloNum tau = CycloNum::tau_plus();
        for (int step = 1; step <= depth; step++)
        {
            std::vector<PlacedTile> next;
            next.reserve(p.tiles.size() * 3);
            for (const PlacedTile &t : p.tiles)
            {
                Triangle big = scaled(placed_triangle(t), tau);
                for (const Triangle &child : subdivide(big, family_of(t.prototile)))
                {
                    int id = classify(child);
                    next.push_back(PlacedTile{id, lexmin_vertex(child), step});
                }
            }
            p.tiles = std::move(next);
        }
        return p;
    }

    IntMatrix omega_matrix()
    {
        IntMatrix w(10, 10);
        for (int l = 0; l < 10; l++)
            w.at((l + 1) % 10, l) = 1;
        return w;
    }

    IntMatrix sigma_matrix()
    {
        // block (i, j) is omega^{p[i][j]}, or zero where p is -1
        static constexpr int p[4][4] = {
            {4, 0, -1, 6},
            {0, 6, 4, -1},
            {3, -1, 7, -1},
            {-1, 7, -1, 3},
        };
        IntMatrix s(40, 40);
        for (int i = 0; i < 4; i++)
            for (int j = 0; j < 4; j++)
            {
                if (p[i][j] < 0)
                    continue;
                for (int l = 0; l < 10; l++)
                    s.at(10 * i + (l + p[i][j]) % 10, 10 * j + l) = 1;
            }
        return s;
    }

    IntMatrix rotation_matrix()
    {
        IntMatrix r(40, 40);
        for (int id = 0; id < 40; id++)
        {
            int k = family_of(id), l = rotation_of(id);
            r.at(10 * k + (l + 1) % 10, id) = 1;
        }
        return r;
    }

    IntMatrix reflection_matrix()
    {
        IntMatrix s(40, 40);
        for (int id = 0; id < 40; id++)
        {
            Triangle t = reference_triangle(id);
            Triangle mirror{t.apex.conj(), t.b1.conj(), t.b2.conj()};
            int mid = classify(mirror);
            s.at(mid, id) = 1;
        }
        return s;
    }

    IntMatrix substitution_count_matrix()
    {
        IntMatrix m(40, 40);
        const CycloNum tau = CycloNum::tau_plus();
        for (int parent = 0; parent < 40; parent++)
        {
            Triangle big = scaled(reference_triangle(parent), tau);
            for (const Triangle &child : subdivide(big, family_of(parent)))
                m.at(classify(child), parent) += 1;
        }
        return m;
    }

    ConsistencyReport consistency_check()
    {
        IntMatrix counts = substitution_count_matrix();
        IntMatrix sig = sigma_matrix();
        IntMatrix sig_t = sig.transpose();
        ConsistencyReport rep;
        rep.matches_sigma = (counts == sig);
        rep.matches_sigma_transpose = (counts == sig_t);
        if (rep.matches_sigma_transpose)
            rep.orientation = "transpose";
        else if (rep.matches_sigma)
            rep.orientation = "sigma";
        else
        {
            rep.orientation = "neither";
            std::ostringstream os;
            for (int i = 0; i < 40 && os.tellp() == 0; i++)
                for (int j = 0; j < 40; j++)
                    if (counts.at(i, j) != sig_t.at(i, j))
                    {
                        os << "counts[" << i << "][" << j << "] = " << counts.at(i, j).get_str()
                           << ", sigma^T has " << sig_t.at(i, j).get_str();
                        break;
                    }
            rep.diff = os.str();
        }
        return rep;
    }

    std::vector<CycloNum> tile_frequencies_exact()
    {
        const CycloNum tau = CycloNum::tau_plus();
        // 20 gnomon classes weighted tau, 20 acute classes weighted 1
        CycloNum total = CycloNum(20) * tau + CycloNum(20);
        std::vector<CycloNum> f(40);
        for (int id = 0; id < 40; id++)
            f[static_cast<size_t>(id)] = (family_of(id) <= 1 ? tau : CycloNum(1)) / total;

        // exact certificates: positivity, normalization, eigen-equation
        CycloNum sum;
        for (const auto &x : f)
        {
            if (!x.is_real() || x.real_sign() <= 0)
                throw VerificationError("tile_frequencies_exact: non-positive frequency");
            sum += x;
        }
        if (!(sum == CycloNum(1)))
            throw VerificationError("tile_frequencies_exact: frequencies do not sum to 1");
        IntMatrix m = substitution_count_matrix();
        const CycloNum tau2 = tau * tau;
        for (int i = 0; i < 40; i++)
        {
            CycloNum acc;
            for (int j = 0; j < 40; j++)
                if (m.at(i, j) != 0)
                    acc += CycloNum(Rational(m.at(i, j))) * f[static_cast<size_t>(j)];
            if (!(acc == tau2 * f[static_cast<size_t>(i)]))
                throw VerificationError("tile_frequencies_exact: eigen-equation fails at row " +
                                        std::to_string(i));
        }
        return f;
    }

    std::vector<long> census_of_patch(const Patch &p)
    {
        std::vector<long> counts(40, 0);
        for (const PlacedTile &t : p.tiles)
        {
            check_id(t.prototile);
            counts[static_cast<size_t>(t.prototile)]++;
        }
        return counts;
    }

    std::vector<std::pair<CycloNum, int>> tile_centers(const Patch &p)
    {
        std::vector<std::pair<CycloNum, int>> out;
        out.reserve(p.tiles.size());
        const Rational third(1, 3);
        for (const PlacedTile &t : p.tiles)
        {
            Triangle tri = placed_triangle(t);
            out.emplace_back((tri.apex + tri.b1 + tri.b2) * third, t.prototile);
        }
        return out;
    }

    std::vector<CycloNum> patch_vertices(const Patch &p)
    {
        std::set<CycloNum, PointLess> seen;
        for (const PlacedTile &t : p.tiles)
        {
            Triangle tri = placed_triangle(t);
            seen.insert(tri.apex);
            seen.insert(tri.b1);
            seen.insert(tri.b2);
        }
        return {seen.begin(), seen.end()};
    }

    namespace
    {
        using Vec2 = std::complex<double>;

        std::array<Vec2, 3> float_triangle(const PlacedTile &t)
        {
            Triangle tri = placed_triangle(t);
            return {tri.apex.embed(), tri.b1.embed(), tri.b2.embed()};
        }

        // strict separating-axis test with a penetration tolerance: returns true
        // when the interiors overlap by more than tol in every axis direction
        bool interiors_overlap(const std::array<Vec2, 3> &a, const std::array<Vec2, 3> &b, double tol)
        {
            auto axis_separates = [&](const Vec2 &n)
            {
                double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
                for (const Vec2 &v : a)
                {
                    double d = n.real() * v.real() + n.imag() * v.imag();
                    amin = std::min(amin, d);
                    amax = std::max(amax, d);
                }
                for (const Vec2 &v : b)
                {
                    double d = n.real() * v.real() + n.imag() * v.imag();
                    bmin = std::min(bmin, d);
                    bmax = std::max(bmax, d);
                }
                return amax <= bmin + tol || bmax <= amin + tol;
            };
            for (int e = 0; e < 3; e++)
            {
                Vec2 ea = a[static_cast<size_t>((e + 1) % 3)] - a[static_cast<size_t>(e)];
                Vec2 eb = b[static_cast<size_t>((e + 1) % 3)] - b[static_cast<size_t>(e)];
                Vec2 na(-ea.imag(), ea.real());
                Vec2 nb(-eb.imag(), eb.real());
                na /= std::abs(na);
                nb /= std::abs(nb);
                if (axis_separates(na) || axis_separates(nb))
                    return false;
            }
            return true;
        }
    } // namespace

    bool tiles_interior_disjoint_sample(const Patch &p, int max_pairs, double tol)
    {
        const size_t n = p.tiles.size();
        if (n < 2)
            return true;
        std::vector<std::array<Vec2, 3>> tri(n);
        for (size_t i = 0; i < n; i++)
            tri[i] = float_triangle(p.tiles[i]);

        auto check_pair = [&](size_t i, size_t j)
        { return !interiors_overlap(tri[i], tri[j], tol); };

        const size_t all = n * (n - 1) / 2;
        if (all <= static_cast<size_t>(max_pairs))
        {
            for (size_t i = 0; i < n; i++)
                for (size_t j = i + 1; j < n; j++)
                    if (!check_pair(i, j))
                        return false;
            return true;
        }
        std::mt19937 rng(20260819u);
        std::uniform_int_distribution<size_t> pick(0, n - 1);
        for (int t = 0; t < max_pairs; t++)
        {
            size_t i = pick(rng), j = pick(rng);
            if (i == j)
                continue;
            if (!check_pair(i, j))
                return false;
        }
        return true;
    }

    double patch_bounding_radius(const Patch &p)
    {
        double r = 0.0;
        for (const PlacedTile &t : p.tiles)
            for (const Vec2 &v : float_triangle(t))
                r = std::max(r, std::abs(v));
        return r;
    }

} // namespace pecoh
