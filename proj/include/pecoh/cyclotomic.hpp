#pragma once

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>

#include "pecoh/errors.hpp"

namespace pecoh
{

    using Int = mpz_class;
    using Rational = mpq_class;

    // Exact element of Q(z), z = exp(i*pi/5), a primitive 10th root of unity with
    // minimal polynomial x^4 - x^3 + x^2 - x + 1. Elements live on the Q-basis
    // {1, z, z^2, z^3}; every arithmetic operation is exact. The canonical
    // embedding (z -> exp(i*pi/5)) is only used for float output, never for
    // decisions: signs and comparisons are decided with integer arithmetic.
    //
    // The golden ratio tau = (1+sqrt 5)/2 = z + z^9 and its conjugate
    // (1-sqrt 5)/2 = z^3 + z^7 both live in this field, as do all vertices of
    // the tilings we build: plane points are represented as single field
    // elements via x + iy = element.
    class CycloNum
    {
    public:
        CycloNum() : c_{Rational(0), Rational(0), Rational(0), Rational(0)} {}

        CycloNum(long v) : c_{Rational(v), Rational(0), Rational(0), Rational(0)} {}

        explicit CycloNum(const Rational &r) : c_{r, Rational(0), Rational(0), Rational(0)} {}

        CycloNum(Rational c0, Rational c1, Rational c2, Rational c3)
            : c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)}
        {
            for (auto &x : c_)
                x.canonicalize();
        }

        // z^k for any integer k (negative powers allowed; z^-1 = -z^4... reduced).
        static CycloNum zeta(long k = 1)
        {
            long m = k % 10;
            if (m < 0)
                m += 10;
            // z^m on the basis, from z^5 = -1 and x^4 = x^3 - x^2 + x - 1.
            static const int table[10][4] = {
                {1, 0, 0, 0},   // z^0
                {0, 1, 0, 0},   // z^1
                {0, 0, 1, 0},   // z^2
                {0, 0, 0, 1},   // z^3
                {-1, 1, -1, 1}, // z^4
                {-1, 0, 0, 0},  // z^5
                {0, -1, 0, 0},  // z^6
                {0, 0, -1, 0},  // z^7
                {0, 0, 0, -1},  // z^8
                {1, -1, 1, -1}, // z^9
            };
            return CycloNum(Rational(table[m][0]), Rational(table[m][1]),
                            Rational(table[m][2]), Rational(table[m][3]));
        }

        static CycloNum from_int(long v) { return CycloNum(v); }

        // (1+sqrt 5)/2 = z + z^9
        static CycloNum tau_plus()
        {
            return CycloNum(Rational(1), Rational(0), Rational(1), Rational(-1));
        }

        // (1-sqrt 5)/2 = z^3 + z^7
        static CycloNum tau_minus()
        {
            return CycloNum(Rational(0), Rational(0), Rational(-1), Rational(1));
        }

        static CycloNum sqrt5()
        {
            return CycloNum(Rational(1), Rational(0), Rational(2), Rational(-2));
        }

        const Rational &coeff(int k) const { return c_[static_cast<size_t>(k)]; }

        bool is_zero() const
        {
            return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
        }

        bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

        Rational to_rational() const
        {
            if (!is_rational())
                throw DomainError("CycloNum: not a rational number");
            return c_[0];
        }

        // Fixed by complex conjugation, i.e. a real number under the canonical
        // embedding: conj keeps c0+c1, so c1 = 0 and c2 = -c3 is the exact test.
        bool is_real() const { return c_[1] == 0 && c_[2] == -c_[3]; }

        // conj(x) = -x, i.e. purely imaginary under the canonical embedding.
        bool is_imaginary() const { return conj() == -*this; }

        CycloNum operator-() const
        {
            return CycloNum(-c_[0], -c_[1], -c_[2], -c_[3]);
        }

        CycloNum &operator+=(const CycloNum &o)
        {
            for (int k = 0; k < 4; k++)
                c_[static_cast<size_t>(k)] += o.c_[static_cast<size_t>(k)];
            return *this;
        }

        CycloNum &operator-=(const CycloNum &o)
        {
            for (int k = 0; k < 4; k++)
                c_[static_cast<size_t>(k)] -= o.c_[static_cast<size_t>(k)];
            return *this;
        }

        CycloNum &operator*=(const CycloNum &o)
        {
            *this = *this * o;
            return *this;
        }

        CycloNum &operator/=(const CycloNum &o)
        {
            *this = *this / o;
            return *this;
        }

        friend CycloNum operator+(CycloNum a, const CycloNum &b) { return a += b; }
        friend CycloNum operator-(CycloNum a, const CycloNum &b) { return a -= b; }

        friend CycloNum operator*(const CycloNum &a, const CycloNum &b)
        {
            std::array<Rational, 7> e;
            for (int i = 0; i < 4; i++)
                for (int j = 0; j < 4; j++)
                    e[static_cast<size_t>(i + j)] += a.c_[static_cast<size_t>(i)] * b.c_[static_cast<size_t>(j)];
            // reduce z^4, z^5, z^6
            Rational r0 = e[0] - e[4] - e[5];
            Rational r1 = e[1] + e[4] - e[6];
            Rational r2 = e[2] - e[4];
            Rational r3 = e[3] + e[4];
            return CycloNum(std::move(r0), std::move(r1), std::move(r2), std::move(r3));
        }

        friend CycloNum operator*(const CycloNum &a, const Rational &s)
        {
            return CycloNum(a.c_[0] * s, a.c_[1] * s, a.c_[2] * s, a.c_[3] * s);
        }

        friend CycloNum operator*(const Rational &s, const CycloNum &a) { return a * s; }

        friend CycloNum operator*(const CycloNum &a, long s) { return a * Rational(s); }
        friend CycloNum operator*(long s, const CycloNum &a) { return a * Rational(s); }

        friend CycloNum operator/(const CycloNum &a, const CycloNum &b)
        {
            return a * b.inverse();
        }

        friend bool operator==(const CycloNum &a, const CycloNum &b)
        {
            return a.c_ == b.c_;
        }

        friend bool operator!=(const CycloNum &a, const CycloNum &b) { return !(a == b); }

        // Multiplicative inverse, by solving the 4x4 rational system
        // (multiplication-by-this) * x = 1. Division by zero is reported as an
        // explicit error, never a crash.
        std::optional<CycloNum> try_inverse() const
        {
            if (is_zero())
                return std::nullopt;
            // columns of m: coefficients of this * z^j
            Rational m[4][8];
            for (int j = 0; j < 4; j++)
            {
                CycloNum col = *this * zeta(j);
                for (int i = 0; i < 4; i++)
                    m[i][j] = col.c_[static_cast<size_t>(i)];
            }
            for (int i = 0; i < 4; i++)
                for (int j = 4; j < 8; j++)
                    m[i][j] = Rational(i == j - 4 ? 1 : 0);
            for (int col = 0; col < 4; col++)
            {
                int piv = -1;
                for (int r = col; r < 4; r++)
                    if (m[r][col] != 0)
                    {
                        piv = r;
                        break;
                    }
                if (piv < 0)
                    return std::nullopt; // cannot happen for a field element != 0
                if (piv != col)
                    for (int j = 0; j < 8; j++)
                        std::swap(m[piv][j], m[col][j]);
                Rational d = m[col][col];
                for (int j = 0; j < 8; j++)
                    m[col][j] /= d;
                for (int r = 0; r < 4; r++)
                {
                    if (r == col || m[r][col] == 0)
                        continue;
                    Rational f = m[r][col];
                    for (int j = 0; j < 8; j++)
                        m[r][j] -= f * m[col][j];
                }
            }
            // inverse coefficients = (m^-1) * e0 = column 4 of the augmented block
            return CycloNum(m[0][4], m[1][4], m[2][4], m[3][4]);
        }

        CycloNum inverse() const
        {
            auto inv = try_inverse();
            if (!inv)
                throw DomainError("CycloNum: division by zero");
            return *inv;
        }

        // Galois action z -> z^g for g in {1,3,7,9} (the units mod 10).
        CycloNum galois(int g) const
        {
            if (g != 1 && g != 3 && g != 7 && g != 9)
                throw DomainError("CycloNum: galois index must be 1, 3, 7 or 9");
            CycloNum out;
            for (int k = 0; k < 4; k++)
                out += c_[static_cast<size_t>(k)] * zeta(static_cast<long>(g) * k);
            return out;
        }

        // Complex conjugation; z -> z^9.
        CycloNum conj() const
        {
            return CycloNum(c_[0] + c_[1], -c_[1], c_[1] - c_[3], -c_[1] - c_[2]);
        }

        // Field norm: the product over the full Galois orbit; always rational.
        Rational norm() const
        {
            CycloNum n = *this * galois(3) * galois(7) * galois(9);
            if (!n.is_rational())
                throw VerificationError("CycloNum: norm left the rationals");
            return n.c_[0];
        }

        // Numerical value of the embedding z -> exp(i*pi*g/5).
        std::complex<double> embed(int galois_index = 1) const
        {
            if (galois_index != 1 && galois_index != 3 && galois_index != 7 && galois_index != 9)
                throw DomainError("CycloNum: embedding index must be 1, 3, 7 or 9");
            long double re = 0.0L, im = 0.0L;
            constexpr long double pi = 3.141592653589793238462643383279502884L;
            for (int k = 0; k < 4; k++)
            {
                long double v = static_cast<long double>(c_[static_cast<size_t>(k)].get_d());
                long double ang = pi * static_cast<long double>(galois_index * k) / 5.0L;
                re += v * std::cos(ang);
                im += v * std::sin(ang);
            }
            return {static_cast<double>(re), static_cast<double>(im)};
        }

        // Exact sign of a real element. Writing it as p + q*sqrt(5) with
        // rational p, q, mixed-sign cases reduce to comparing p^2 with 5 q^2.
        int real_sign() const
        {
            if (!is_real())
                throw DomainError("CycloNum: real_sign of a non-real element");
            // x = c0 + c2 (z^2 - z^3), and z^2 - z^3 = (sqrt 5 - 1)/2
            Rational p = c_[0] - c_[2] / 2;
            Rational q = c_[2] / 2;
            int sp = sgn(p), sq = sgn(q);
            if (sq == 0)
                return sp;
            if (sp == 0)
                return sq;
            if (sp == sq)
                return sp;
            Rational d = p * p - 5 * q * q;
            int sd = sgn(d);
            if (sd == 0)
                throw VerificationError("CycloNum: p^2 = 5 q^2 with q != 0 (sqrt 5 rational?)");
            // p and q have opposite signs: the larger magnitude wins
            return sd > 0 ? sp : sq;
        }

        std::string to_string() const
        {
            std::string s = "(";
            for (int k = 0; k < 4; k++)
            {
                if (k)
                    s += ", ";
                s += c_[static_cast<size_t>(k)].get_str();
            }
            return s + ")";
        }

        friend std::ostream &operator<<(std::ostream &os, const CycloNum &x)
        {
            return os << x.to_string();
        }

    private:
        std::array<Rational, 4> c_; // coefficients of 1, z, z^2, z^3
    };

    // ---- plane points -------------------------------------------------------
    //
    // A point of the plane is a single CycloNum under the canonical embedding:
    // the element x + i y. Real and imaginary parts are again field elements.

    inline CycloNum re_part(const CycloNum &z)
    {
        return (z + z.conj()) * Rational(1, 2);
    }

    // The imaginary part *as a multiple of i*: returns the anti-real element
    // z - conj(z) halved; use imag_sign for its sign as a real number.
    inline CycloNum im_part_times_i(const CycloNum &z)
    {
        return (z - z.conj()) * Rational(1, 2);
    }

    // Exact sign of the imaginary part of an anti-real element t (conj t = -t):
    // t * (z - z^9) is real and equals -2 sin(pi/5) Im(t).
    inline int antireal_sign(const CycloNum &t)
    {
        if (!(t.conj() == -t))
            throw DomainError("antireal_sign: element is not anti-real");
        static const CycloNum two_i_sin36(Rational(-1), Rational(2), Rational(-1), Rational(1));
        return -(t * two_i_sin36).real_sign();
    }

    inline int imag_sign(const CycloNum &z)
    {
        return antireal_sign(im_part_times_i(z));
    }

    inline int real_sign_of(const CycloNum &z)
    {
        return re_part(z).real_sign();
    }

    // Lexicographic exact comparison by (Re, Im); a strict weak order on points.
    inline int cmp_points(const CycloNum &a, const CycloNum &b)
    {
        CycloNum d = a - b;
        int s = real_sign_of(d);
        if (s != 0)
            return s;
        return imag_sign(d);
    }

    struct PointLess
    {
        bool operator()(const CycloNum &a, const CycloNum &b) const
        {
            return cmp_points(a, b) < 0;
        }
    };

    // |z|^2 as an exact real field element.
    inline CycloNum abs2(const CycloNum &z) { return z * z.conj(); }

    // Exact comparison of |z|^2 against a rational threshold r2: -1, 0 or +1.
    inline int cmp_abs2(const CycloNum &z, const Rational &r2)
    {
        return (abs2(z) - CycloNum(r2)).real_sign();
    }

    // Exact dyadic rational from a double (doubles are dyadic, so this is lossless).
    inline Rational rational_from_double(double x)
    {
        if (!std::isfinite(x))
            throw DomainError("rational_from_double: non-finite value");
        Rational r;
        mpq_set_d(r.get_mpq_t(), x);
        return r;
    }

} // namespace pecoh
