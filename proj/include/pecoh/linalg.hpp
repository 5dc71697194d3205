#pragma once

#include <string>
#include <vector>

#include "pecoh/cyclotomic.hpp"
#include "pecoh/errors.hpp"

namespace pecoh
{

    // Dense matrix over Z (GMP integers). Row-major, exact throughout.
    class IntMatrix
    {
    public:
        IntMatrix() : rows_(0), cols_(0) {}

        IntMatrix(int rows, int cols)
            : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * static_cast<size_t>(cols))
        {
            if (rows < 0 || cols < 0)
                throw DomainError("IntMatrix: negative dimension");
        }

        static IntMatrix identity(int n)
        {
            IntMatrix m(n, n);
            for (int i = 0; i < n; i++)
                m.at(i, i) = 1;
            return m;
        }

        int rows() const { return rows_; }
        int cols() const { return cols_; }

        Int &at(int i, int j) { return a_[idx(i, j)]; }
        const Int &at(int i, int j) const { return a_[idx(i, j)]; }

        IntMatrix transpose() const;
        IntMatrix pow(unsigned long k) const;
        bool is_zero() const;
        Int trace() const;

        friend IntMatrix operator+(const IntMatrix &a, const IntMatrix &b);
        friend IntMatrix operator-(const IntMatrix &a, const IntMatrix &b);
        friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b);
        friend bool operator==(const IntMatrix &a, const IntMatrix &b)
        {
            return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
        }
        friend bool operator!=(const IntMatrix &a, const IntMatrix &b) { return !(a == b); }

        std::string to_string() const;

    private:
        size_t idx(int i, int j) const
        {
            if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
                throw DomainError("IntMatrix: index out of range");
            return static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j);
        }

        int rows_, cols_;
        std::vector<Int> a_;
    };

    // Dense matrix over Q(z).
    class FieldMatrix
    {
    public:
        FieldMatrix() : rows_(0), cols_(0) {}

        FieldMatrix(int rows, int cols)
            : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * static_cast<size_t>(cols))
        {
            if (rows < 0 || cols < 0)
                throw DomainError("FieldMatrix: negative dimension");
        }

        static FieldMatrix identity(int n)
        {
            FieldMatrix m(n, n);
            for (int i = 0; i < n; i++)
                m.at(i, i) = CycloNum(1);
            return m;
        }

        static FieldMatrix from_int(const IntMatrix &a);

        int rows() const { return rows_; }
        int cols() const { return cols_; }

        CycloNum &at(int i, int j) { return a_[idx(i, j)]; }
        const CycloNum &at(int i, int j) const { return a_[idx(i, j)]; }

        FieldMatrix transpose() const;

        friend FieldMatrix operator+(const FieldMatrix &a, const FieldMatrix &b);
        friend FieldMatrix operator-(const FieldMatrix &a, const FieldMatrix &b);
        friend FieldMatrix operator*(const FieldMatrix &a, const FieldMatrix &b);
        friend FieldMatrix operator*(const CycloNum &s, const FieldMatrix &a);
        friend bool operator==(const FieldMatrix &a, const FieldMatrix &b)
        {
            return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
        }
        friend bool operator!=(const FieldMatrix &a, const FieldMatrix &b) { return !(a == b); }

    private:
        size_t idx(int i, int j) const
        {
            if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
                throw DomainError("FieldMatrix: index out of range");
            return static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j);
        }

        int rows_, cols_;
        std::vector<CycloNum> a_;
    };

    // U * A * V = D with U, V unimodular and the diagonal divisibility chain
    // d1 | d2 | ... ; Uinv and Vinv are maintained alongside so lattice bases can
    // be read off without a separate inversion. Verified before being returned.
    struct SmithDecomposition
    {
        IntMatrix U, Uinv, D, V, Vinv;
    };

    SmithDecomposition smith_normal_form(const IntMatrix &a);

    // Z^rows / (column span of relations).
    struct LatticeQuotient
    {
        long free_rank = 0;
        std::vector<Int> torsion; // invariant factors > 1, in the chain order
    };

    LatticeQuotient quotient_by_columns(const IntMatrix &relations);

    // Rank over Q and determinant, both by fraction-free (Bareiss) elimination.
    int rank_int(const IntMatrix &a);
    Int det_int(const IntMatrix &a);

    // Monic characteristic polynomial det(xI - A), coefficients c[0..n] with
    // c[n] = 1, by the Faddeev-LeVerrier recurrence (all divisions exact).
    std::vector<Int> charpoly(const IntMatrix &a);

    // Polynomial helpers. Integer polynomials are coefficient vectors, low
    // degree first; rational ones likewise.
    std::vector<Int> poly_mul(const std::vector<Int> &a, const std::vector<Int> &b);
    // Exact division a / b over Q; throws VerificationError if the remainder
    // is nonzero. Returns the quotient with rational coefficients.
    std::vector<Rational> poly_div_exact(const std::vector<Int> &a, const std::vector<Int> &b);
    bool poly_divides(const std::vector<Int> &b, const std::vector<Int> &a);
    // gcd over Q, normalized monic; constant gcd comes back as {1}.
    std::vector<Rational> poly_gcd(const std::vector<Int> &a, const std::vector<Int> &b);
    Int poly_eval_int(const std::vector<Int> &p, const Int &x);
    IntMatrix poly_eval_matrix(const std::vector<Int> &p, const IntMatrix &a);

    // Saturated integer basis of ker(A) over Q, as matrix columns: the columns
    // of the Smith V matrix that hit zero diagonal entries. Unimodularity of V
    // makes the result a basis of the full lattice kernel.
    IntMatrix kernel_saturated(const IntMatrix &a);

    // Saturation of the column lattice of B (full column rank): the smallest
    // primitive sublattice of Z^n containing all columns. Read off the leading
    // columns of Uinv in the Smith decomposition of B.
    IntMatrix saturate_columns(const IntMatrix &b);

    // Basis of the eventual kernel, ker(A^n) for n = dim, saturated.
    IntMatrix eventual_kernel(const IntMatrix &a);

    // Direct limit of Z^n --A--> Z^n --A--> ... : the quotient by the eventual
    // kernel together with the induced (injective) endomorphism. When the
    // induced map is not unimodular the limit is a proper localization and we
    // report that as a flag instead of pretending Z^k is the answer.
    struct DirectLimit
    {
        LatticeQuotient quotient;
        IntMatrix induced;
        Int induced_det = 0;
        bool invertible = false;
        std::string flag; // empty, or "limit requires localization"
    };

    DirectLimit direct_limit(const IntMatrix &a);

    // Field linear algebra. Kernel vectors are verified against A exactly.
    int rank_field(const FieldMatrix &a);
    CycloNum det_field(const FieldMatrix &a);
    std::vector<std::vector<CycloNum>> kernel_field(const FieldMatrix &a);

    // Solve basis * X = targets where basis has full column rank; throws
    // VerificationError when some target leaves the span.
    FieldMatrix solve_in_span(const FieldMatrix &basis, const FieldMatrix &targets);

} // namespace pecoh
