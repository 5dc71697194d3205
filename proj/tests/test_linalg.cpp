#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pecoh/linalg.hpp"

using namespace pecoh;

namespace
{
    IntMatrix from_rows(const std::vector<std::vector<long>> &rows)
    {
        IntMatrix m(static_cast<int>(rows.size()),
                    rows.empty() ? 0 : static_cast<int>(rows[0].size()));
        for (int i = 0; i < m.rows(); i++)
            for (int j = 0; j < m.cols(); j++)
                m.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
        return m;
    }

    // independent determinant oracle: cofactor expansion along the first row
    Int cofactor_det(const IntMatrix &a)
    {
        const int n = a.rows();
        if (n == 0)
            return 1;
        if (n == 1)
            return a.at(0, 0);
        Int d = 0;
        for (int j = 0; j < n; j++)
        {
            if (a.at(0, j) == 0)
                continue;
            IntMatrix minor(n - 1, n - 1);
            for (int i = 1; i < n; i++)
                for (int c = 0, cc = 0; c < n; c++)
                {
                    if (c == j)
                        continue;
                    minor.at(i - 1, cc++) = a.at(i, c);
                }
            Int term = a.at(0, j) * cofactor_det(minor);
            d += (j % 2 == 0) ? term : Int(-term);
        }
        return d;
    }

    IntMatrix random_matrix(std::mt19937 &rng, int n, int m, long lo, long hi)
    {
        std::uniform_int_distribution<long> d(lo, hi);
        IntMatrix a(n, m);
        for (int i = 0; i < n; i++)
            for (int j = 0; j < m; j++)
                a.at(i, j) = d(rng);
        return a;
    }
} // namespace

TEST_CASE("smith normal form: frozen small cases")
{
    SmithDecomposition s = smith_normal_form(from_rows({{2, 0}, {0, 3}}));
    CHECK(s.D.at(0, 0) == 1);
    CHECK(s.D.at(1, 1) == 6);

    // 2x3 zero matrix: quotient of Z^2 by nothing
    LatticeQuotient q0 = quotient_by_columns(IntMatrix(2, 3));
    CHECK(q0.free_rank == 2);
    CHECK(q0.torsion.empty());

    LatticeQuotient q1 = quotient_by_columns(from_rows({{2, 0}, {0, 3}}));
    CHECK(q1.free_rank == 0);
    REQUIRE(q1.torsion.size() == 1);
    CHECK(q1.torsion[0] == 6);

    LatticeQuotient q2 = quotient_by_columns(from_rows({{2, 0}, {0, 2}}));
    CHECK(q2.free_rank == 0);
    REQUIRE(q2.torsion.size() == 2);
    CHECK(q2.torsion[0] == 2);
    CHECK(q2.torsion[1] == 2);
}

TEST_CASE("smith normal form: random matrices verify and have unimodular transforms")
{
    std::mt19937 rng(2024);
    for (int t = 0; t < 25; t++)
    {
        IntMatrix a = random_matrix(rng, 5, 6, -30, 30);
        SmithDecomposition s = smith_normal_form(a); // self-verifying
        Int du = det_int(s.U);
        Int dv = det_int(s.V);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
    }
}

TEST_CASE("determinant and rank by fraction-free elimination")
{
    std::mt19937 rng(555);
    for (int t = 0; t < 30; t++)
    {
        IntMatrix a = random_matrix(rng, 5, 5, -9, 9);
        CHECK(det_int(a) == cofactor_det(a));
    }
    CHECK(rank_int(from_rows({{1, 2, 3}, {2, 4, 6}, {0, 0, 1}})) == 2);
    CHECK(rank_int(IntMatrix(3, 3)) == 0);
    CHECK(det_int(IntMatrix::identity(4)) == 1);
}

TEST_CASE("characteristic polynomial: convention and Cayley-Hamilton")
{
    IntMatrix fib = from_rows({{1, 1}, {1, 0}});
    std::vector<Int> p = charpoly(fib); // x^2 - x - 1
    REQUIRE(p.size() == 3);
    CHECK(p[0] == -1);
    CHECK(p[1] == -1);
    CHECK(p[2] == 1);

    std::mt19937 rng(99);
    for (int t = 0; t < 10; t++)
    {
        IntMatrix a = random_matrix(rng, 5, 5, -6, 6);
        std::vector<Int> c = charpoly(a);
        // value at 0 is (-1)^n det(A)
        CHECK(c[0] == -cofactor_det(a));
        // evaluation at two integer points agrees with det(xI - A)
        for (long x0 : {2L, -3L})
        {
            IntMatrix xi = IntMatrix::identity(5);
            for (int i = 0; i < 5; i++)
                xi.at(i, i) = x0;
            CHECK(poly_eval_int(c, Int(x0)) == det_int(xi - a));
        }
        // Cayley-Hamilton, evaluated exactly
        CHECK(poly_eval_matrix(c, a).is_zero());
    }
}

TEST_CASE("polynomial division and gcd over Q")
{
    std::vector<Int> x3m1 = {-1, 0, 0, 1}; // x^3 - 1
    std::vector<Int> xm1 = {-1, 1};        // x - 1
    auto q = poly_div_exact(x3m1, xm1);
    REQUIRE(q.size() == 3);
    CHECK(q[0] == 1);
    CHECK(q[1] == 1);
    CHECK(q[2] == 1);
    CHECK(poly_divides(xm1, x3m1));
    CHECK_FALSE(poly_divides(std::vector<Int>{1, 1}, x3m1)); // x+1 does not divide
    CHECK_THROWS_AS(poly_div_exact(x3m1, std::vector<Int>{1, 1}), VerificationError);

    auto g = poly_gcd(poly_mul(xm1, {1, 1}), poly_mul(xm1, {2, 3}));
    REQUIRE(g.size() == 2); // x - 1, monic
    CHECK(g[0] == -1);
    CHECK(g[1] == 1);

    auto g2 = poly_gcd({1, 1}, {1, 0, 1});
    REQUIRE(g2.size() == 1);
    CHECK(g2[0] == 1);
}

TEST_CASE("kernels are exact and saturated")
{
    IntMatrix a = from_rows({{1, 2, 3}});
    IntMatrix k = kernel_saturated(a);
    CHECK(k.cols() == 2);
    // saturation: invariant factors of the basis are all 1
    SmithDecomposition s = smith_normal_form(k);
    CHECK(s.D.at(0, 0) == 1);
    CHECK(s.D.at(1, 1) == 1);

    // saturating an index-2 sublattice: columns (2,0,1) and (0,2,1)
    IntMatrix b = from_rows({{2, 0}, {0, 2}, {1, 1}});
    IntMatrix sat = saturate_columns(b);
    CHECK(sat.cols() == 2);
    // same rational span, now primitive
    IntMatrix both(3, 4);
    for (int i = 0; i < 3; i++)
    {
        for (int j = 0; j < 2; j++)
        {
            both.at(i, j) = sat.at(i, j);
            both.at(i, 2 + j) = b.at(i, j);
        }
    }
    CHECK(rank_int(both) == 2);
    LatticeQuotient q = quotient_by_columns(sat);
    CHECK(q.free_rank == 1);
    CHECK(q.torsion.empty());
    // the original lattice has index 2 in its saturation
    LatticeQuotient qb = quotient_by_columns(b);
    REQUIRE(qb.torsion.size() == 1);
    CHECK(qb.torsion[0] == 2);
}

TEST_CASE("eventual kernel and direct limit: frozen outcomes")
{
    // invertible over Z: nothing dies, the limit is Z^2 with det -1
    DirectLimit fib = direct_limit(from_rows({{1, 1}, {1, 0}}));
    CHECK(fib.quotient.free_rank == 2);
    CHECK(fib.quotient.torsion.empty());
    CHECK(fib.induced_det == -1);
    CHECK(fib.invertible);
    CHECK(fib.flag.empty());
    CHECK(eventual_kernel(from_rows({{1, 1}, {1, 0}})).cols() == 0);

    // strictly expanding 1x1: the limit is Z[1/2], flagged
    DirectLimit two = direct_limit(from_rows({{2}}));
    CHECK(two.quotient.free_rank == 1);
    CHECK(two.induced_det == 2);
    CHECK_FALSE(two.invertible);
    CHECK(two.flag == "limit requires localization");

    // nilpotent: everything dies
    DirectLimit nil = direct_limit(from_rows({{0, 1}, {0, 0}}));
    CHECK(eventual_kernel(from_rows({{0, 1}, {0, 0}})).cols() == 2);
    CHECK(nil.quotient.free_rank == 0);
    CHECK(nil.invertible); // empty product
    CHECK(nil.flag.empty());

    // mixed: one direction dies, one survives with multiplier 1
    DirectLimit mixed = direct_limit(from_rows({{1, 1}, {0, 0}}));
    CHECK(mixed.quotient.free_rank == 1);
    CHECK(mixed.induced_det == 1);
    CHECK(mixed.invertible);
}

TEST_CASE("field elimination over Q(z)")
{
    FieldMatrix a(2, 2);
    a.at(0, 0) = CycloNum(1);
    a.at(0, 1) = CycloNum::zeta();
    a.at(1, 0) = CycloNum::zeta(9);
    a.at(1, 1) = CycloNum(1);
    CHECK(det_field(a).is_zero());
    CHECK(rank_field(a) == 1);
    auto ker = kernel_field(a); // verified internally against A v = 0
    CHECK(ker.size() == 1);

    FieldMatrix b(2, 2);
    b.at(0, 0) = CycloNum::tau_plus();
    b.at(0, 1) = CycloNum(1);
    b.at(1, 0) = CycloNum(1);
    b.at(1, 1) = CycloNum::tau_plus() - CycloNum(1);
    // det = tau(tau-1) - 1 = tau^2 - tau - 1 = 0
    CHECK(det_field(b).is_zero());

    FieldMatrix basis(3, 2), target(3, 1), bad(3, 1);
    basis.at(0, 0) = CycloNum(1);
    basis.at(2, 0) = CycloNum(1);
    basis.at(1, 1) = CycloNum(1);
    basis.at(2, 1) = CycloNum(1);
    target.at(0, 0) = CycloNum(1);
    target.at(1, 0) = CycloNum(1);
    target.at(2, 0) = CycloNum(2);
    FieldMatrix x = solve_in_span(basis, target);
    CHECK(x.at(0, 0) == CycloNum(1));
    CHECK(x.at(1, 0) == CycloNum(1));
    bad.at(2, 0) = CycloNum(1);
    CHECK_THROWS_AS(solve_in_span(basis, bad), VerificationError);

    // rank over the field of a rational matrix agrees with the integer rank
    std::mt19937 rng(4242);
    for (int t = 0; t < 10; t++)
    {
        IntMatrix m = random_matrix(rng, 4, 6, -5, 5);
        CHECK(rank_field(FieldMatrix::from_int(m)) == rank_int(m));
    }
}
