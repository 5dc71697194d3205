#include "pecoh/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace pecoh
{

    namespace
    {
        Int divexact(const Int &a, const Int &b)
        {
            if (b == 0)
                throw DomainError("divexact: zero divisor");
            Int q;
            mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            return q;
        }

        bool divisible(const Int &a, const Int &b)
        {
            return mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0;
        }
    } // namespace

    IntMatrix IntMatrix::transpose() const
    {
        IntMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; i++)
            for (int j = 0; j < cols_; j++)
                t.at(j, i) = at(i, j);
        return t;
    }

    IntMatrix IntMatrix::pow(unsigned long k) const
    {
        if (rows_ != cols_)
            throw DomainError("IntMatrix::pow: matrix not square");
        IntMatrix result = identity(rows_);
        IntMatrix base = *this;
        while (k)
        {
            if (k & 1UL)
                result = result * base;
            k >>= 1UL;
            if (k)
                base = base * base;
        }
        return result;
    }

    bool IntMatrix::is_zero() const
    {
        for (const auto &x : a_)
            if (x != 0)
                return false;
        return true;
    }

    Int IntMatrix::trace() const
    {
        if (rows_ != cols_)
            throw DomainError("IntMatrix::trace: matrix not square");
        Int t = 0;
        for (int i = 0; i < rows_; i++)
            t += at(i, i);
        return t;
    }

    IntMatrix operator+(const IntMatrix &a, const IntMatrix &b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw DomainError("IntMatrix: shape mismatch in +");
        IntMatrix c(a.rows_, a.cols_);
        for (size_t k = 0; k < a.a_.size(); k++)
            c.a_[k] = a.a_[k] + b.a_[k];
        return c;
    }

    IntMatrix operator-(const IntMatrix &a, const IntMatrix &b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw DomainError("IntMatrix: shape mismatch in -");
        IntMatrix c(a.rows_, a.cols_);
        for (size_t k = 0; k < a.a_.size(); k++)
            c.a_[k] = a.a_[k] - b.a_[k];
        return c;
    }

    IntMatrix operator*(const IntMatrix &a, const IntMatrix &b)
    {
        if (a.cols_ != b.rows_)
            throw DomainError("IntMatrix: shape mismatch in *");
        IntMatrix c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; i++)
            for (int k = 0; k < a.cols_; k++)
            {
                const Int &aik = a.at(i, k);
                if (aik == 0)
                    continue;
                for (int j = 0; j < b.cols_; j++)
                {
                    const Int &bkj = b.at(k, j);
                    if (bkj != 0)
                        c.at(i, j) += aik * bkj;
                }
            }
        return c;
    }

    std::string IntMatrix::to_string() const
    {
        std::ostringstream os;
        for (int i = 0; i < rows_; i++)
        {
            os << (i ? "\n[" : "[");
            for (int j = 0; j < cols_; j++)
                os << (j ? " " : "") << at(i, j).get_str();
            os << "]";
        }
        return os.str();
    }

    FieldMatrix FieldMatrix::from_int(const IntMatrix &a)
    {
        FieldMatrix f(a.rows(), a.cols());
        for (int i = 0; i < a.rows(); i++)
            for (int j = 0; j < a.cols(); j++)
                f.at(i, j) = CycloNum(Rational(a.at(i, j)));
        return f;
    }

    FieldMatrix FieldMatrix::transpose() const
    {
        FieldMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; i++)
            for (int j = 0; j < cols_; j++)
                t.at(j, i) = at(i, j);
        return t;
    }

    FieldMatrix operator+(const FieldMatrix &a, const FieldMatrix &b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw DomainError("FieldMatrix: shape mismatch in +");
        FieldMatrix c(a.rows_, a.cols_);
        for (size_t k = 0; k < a.a_.size(); k++)
            c.a_[k] = a.a_[k] + b.a_[k];
        return c;
    }

    FieldMatrix operator-(const FieldMatrix &a, const FieldMatrix &b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw DomainError("FieldMatrix: shape mismatch in -");
        FieldMatrix c(a.rows_, a.cols_);
        for (size_t k = 0; k < a.a_.size(); k++)
            c.a_[k] = a.a_[k] - b.a_[k];
        return c;
    }

    FieldMatrix operator*(const FieldMatrix &a, const FieldMatrix &b)
    {
        if (a.cols_ != b.rows_)
            throw DomainError("FieldMatrix: shape mismatch in *");
        FieldMatrix c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; i++)
            for (int k = 0; k < a.cols_; k++)
            {
                const CycloNum &aik = a.at(i, k);
                if (aik.is_zero())
                    continue;
                for (int j = 0; j < b.cols_; j++)
                {
                    const CycloNum &bkj = b.at(k, j);
                    if (!bkj.is_zero())
                        c.at(i, j) += aik * bkj;
                }
            }
        return c;
    }

    FieldMatrix operator*(const CycloNum &s, const FieldMatrix &a)
    {
        FieldMatrix c(a.rows_, a.cols_);
        for (size_t k = 0; k < a.a_.size(); k++)
            c.a_[k] = s * a.a_[k];
        return c;
    }

    // ---- Smith normal form --------------------------------------------------

    SmithDecomposition smith_normal_form(const IntMatrix &a)
    {
        const int rows = a.rows(), cols = a.cols();
        IntMatrix w = a;
        IntMatrix u = IntMatrix::identity(rows), uinv = IntMatrix::identity(rows);
        IntMatrix v = IntMatrix::identity(cols), vinv = IntMatrix::identity(cols);

        auto row_swap = [&](int i, int j)
        {
            if (i == j)
                return;
            for (int c = 0; c < cols; c++)
                std::swap(w.at(i, c), w.at(j, c));
            for (int c = 0; c < rows; c++)
            {
                std::swap(u.at(i, c), u.at(j, c));
                std::swap(uinv.at(c, i), uinv.at(c, j));
            }
        };
        auto col_swap = [&](int i, int j)
        {
            if (i == j)
                return;
            for (int r = 0; r < rows; r++)
                std::swap(w.at(r, i), w.at(r, j));
            for (int r = 0; r < cols; r++)
            {
                std::swap(v.at(r, i), v.at(r, j));
                std::swap(vinv.at(i, r), vinv.at(j, r));
            }
        };
        // row i += k * row j
        auto row_addmul = [&](int i, int j, const Int &k)
        {
            if (k == 0)
                return;
            for (int c = 0; c < cols; c++)
                w.at(i, c) += k * w.at(j, c);
            for (int c = 0; c < rows; c++)
            {
                u.at(i, c) += k * u.at(j, c);
                uinv.at(c, j) -= k * uinv.at(c, i);
            }
        };
        // col j += k * col i
        auto col_addmul = [&](int j, int i, const Int &k)
        {
            if (k == 0)
                return;
            for (int r = 0; r < rows; r++)
                w.at(r, j) += k * w.at(r, i);
            for (int r = 0; r < cols; r++)
            {
                v.at(r, j) += k * v.at(r, i);
                vinv.at(i, r) -= k * vinv.at(j, r);
            }
        };
        auto row_negate = [&](int i)
        {
            for (int c = 0; c < cols; c++)
                w.at(i, c) = -w.at(i, c);
            for (int c = 0; c < rows; c++)
            {
                u.at(i, c) = -u.at(i, c);
                uinv.at(c, i) = -uinv.at(c, i);
            }
        };

        const int steps = std::min(rows, cols);
        for (int t = 0; t < steps; t++)
        {
            for (;;)
            {
                // smallest nonzero entry of the remaining block becomes the pivot
                int pi = -1, pj = -1;
                for (int i = t; i < rows; i++)
                    for (int j = t; j < cols; j++)
                    {
                        const Int &x = w.at(i, j);
                        if (x == 0)
                            continue;
                        if (pi < 0 || cmp(abs(x), abs(w.at(pi, pj))) < 0)
                        {
                            pi = i;
                            pj = j;
                        }
                    }
                if (pi < 0)
                    goto reduced; // the rest of the matrix is zero
                row_swap(t, pi);
                col_swap(t, pj);
                if (w.at(t, t) < 0)
                    row_negate(t);

                bool leftover = false;
                for (int i = t + 1; i < rows; i++)
                {
                    if (w.at(i, t) == 0)
                        continue;
                    Int q = w.at(i, t) / w.at(t, t);
                    row_addmul(i, t, -q);
                    if (w.at(i, t) != 0)
                        leftover = true;
                }
                for (int j = t + 1; j < cols; j++)
                {
                    if (w.at(t, j) == 0)
                        continue;
                    Int q = w.at(t, j) / w.at(t, t);
                    col_addmul(j, t, -q);
                    if (w.at(t, j) != 0)
                        leftover = true;
                }
                if (leftover)
                    continue; // remainders are strictly smaller; try again

                // force the divisibility chain: the pivot must divide the rest
                int bi = -1, bj = -1;
                for (int i = t + 1; i < rows && bi < 0; i++)
                    for (int j = t + 1; j < cols; j++)
                        if (!divisible(w.at(i, j), w.at(t, t)))
                        {
                            bi = i;
                            bj = j;
                            break;
                        }
                if (bi >= 0)
                {
                    (void)bj;
                    row_addmul(t, bi, Int(1));
                    continue;
                }
                break;
            }
        }
    reduced:;

        SmithDecomposition s{u, uinv, w, v, vinv};

        // verify everything before handing the result out
        if (s.U * a * s.V != s.D)
            throw VerificationError("smith_normal_form: U*A*V != D");
        if (s.U * s.Uinv != IntMatrix::identity(rows))
            throw VerificationError("smith_normal_form: U not invertible");
        if (s.V * s.Vinv != IntMatrix::identity(cols))
            throw VerificationError("smith_normal_form: V not invertible");
        for (int i = 0; i < rows; i++)
            for (int j = 0; j < cols; j++)
                if (i != j && s.D.at(i, j) != 0)
                    throw VerificationError("smith_normal_form: D not diagonal");
        for (int t = 0; t + 1 < steps; t++)
        {
            const Int &d0 = s.D.at(t, t);
            const Int &d1 = s.D.at(t + 1, t + 1);
            if (d0 == 0 && d1 != 0)
                throw VerificationError("smith_normal_form: zero before nonzero on diagonal");
            if (d0 != 0 && !divisible(d1, d0))
                throw VerificationError("smith_normal_form: divisibility chain broken");
            if (d0 < 0 || d1 < 0)
                throw VerificationError("smith_normal_form: negative invariant factor");
        }
        return s;
    }

    LatticeQuotient quotient_by_columns(const IntMatrix &relations)
    {
        SmithDecomposition s = smith_normal_form(relations);
        LatticeQuotient q;
        const int n = relations.rows();
        int nonzero = 0;
        const int steps = std::min(relations.rows(), relations.cols());
        for (int t = 0; t < steps; t++)
        {
            const Int &d = s.D.at(t, t);
            if (d == 0)
                break;
            nonzero++;
            if (d > 1)
                q.torsion.push_back(d);
        }
        q.free_rank = n - nonzero;
        return q;
    }

    // ---- fraction-free elimination over Z ------------------------------------

    namespace
    {
        // One pass of Bareiss elimination; returns rank, leaves w echeloned.
        // If det_out is non-null the matrix must be square and receives det.
        int bareiss(IntMatrix &w, Int *det_out)
        {
            const int rows = w.rows(), cols = w.cols();
            Int prev = 1;
            int sign = 1;
            int r = 0;
            for (int c = 0; c < cols && r < rows; c++)
            {
                int piv = -1;
                for (int i = r; i < rows; i++)
                    if (w.at(i, c) != 0)
                    {
                        piv = i;
                        break;
                    }
                if (piv < 0)
                    continue;
                if (piv != r)
                {
                    for (int j = 0; j < cols; j++)
                        std::swap(w.at(piv, j), w.at(r, j));
                    sign = -sign;
                }
                for (int i = r + 1; i < rows; i++)
                {
                    for (int j = c + 1; j < cols; j++)
                        w.at(i, j) = divexact(w.at(r, c) * w.at(i, j) - w.at(i, c) * w.at(r, j), prev);
                    w.at(i, c) = 0;
                }
                prev = w.at(r, c);
                r++;
            }
            if (det_out)
            {
                if (rows != cols)
                    throw DomainError("det: matrix not square");
                if (r < rows)
                    *det_out = 0;
                else
                    *det_out = sign > 0 ? prev : Int(-prev);
            }
            return r;
        }
    } // namespace

    int rank_int(const IntMatrix &a)
    {
        IntMatrix w = a;
        return bareiss(w, nullptr);
    }

    Int det_int(const IntMatrix &a)
    {
        IntMatrix w = a;
        Int d;
        bareiss(w, &d);
        return d;
    }

    std::vector<Int> charpoly(const IntMatrix &a)
    {
        if (a.rows() != a.cols())
            throw DomainError("charpoly: matrix not square");
        const int n = a.rows();
        std::vector<Int> c(static_cast<size_t>(n) + 1);
        c[static_cast<size_t>(n)] = 1;
        IntMatrix m = IntMatrix::identity(n);
        for (int k = 1; k <= n; k++)
        {
            IntMatrix am = a * m;
            Int t = am.trace();
            if (!divisible(t, Int(k)))
                throw VerificationError("charpoly: non-integer coefficient in recurrence");
            Int ck = -divexact(t, Int(k));
            c[static_cast<size_t>(n - k)] = ck;
            m = am;
            for (int i = 0; i < n; i++)
                m.at(i, i) += ck;
        }
        // the recurrence must terminate on the zero matrix
        if (!m.is_zero())
            throw VerificationError("charpoly: recurrence did not terminate at zero");
        return c;
    }

    std::vector<Int> poly_mul(const std::vector<Int> &a, const std::vector<Int> &b)
    {
        if (a.empty() || b.empty())
            return {};
        std::vector<Int> c(a.size() + b.size() - 1);
        for (size_t i = 0; i < a.size(); i++)
            for (size_t j = 0; j < b.size(); j++)
                c[i + j] += a[i] * b[j];
        return c;
    }

    namespace
    {
        std::vector<Rational> to_rat(const std::vector<Int> &p)
        {
            std::vector<Rational> r(p.size());
            for (size_t i = 0; i < p.size(); i++)
                r[i] = Rational(p[i]);
            return r;
        }

        void trim(std::vector<Rational> &p)
        {
            while (!p.empty() && p.back() == 0)
                p.pop_back();
        }

        // remainder of a mod b, in place on a; returns quotient
        std::vector<Rational> poly_divmod(std::vector<Rational> &a, const std::vector<Rational> &b)
        {
            trim(a);
            if (b.empty())
                throw DomainError("poly_divmod: division by zero polynomial");
            std::vector<Rational> q;
            if (a.size() >= b.size())
                q.assign(a.size() - b.size() + 1, Rational(0));
            const Rational &lead = b.back();
            while (a.size() >= b.size())
            {
                Rational f = a.back() / lead;
                size_t shift = a.size() - b.size();
                q[shift] = f;
                for (size_t i = 0; i < b.size(); i++)
                    a[shift + i] -= f * b[i];
                trim(a);
                if (a.empty())
                    break;
                if (a.size() >= b.size() && a.back() == 0)
                    trim(a);
            }
            return q;
        }
    } // namespace

    std::vector<Rational> poly_div_exact(const std::vector<Int> &a, const std::vector<Int> &b)
    {
        std::vector<Rational> ra = to_rat(a), rb = to_rat(b);
        trim(rb);
        std::vector<Rational> q = poly_divmod(ra, rb);
        if (!ra.empty())
            throw VerificationError("poly_div_exact: nonzero remainder");
        return q;
    }

    bool poly_divides(const std::vector<Int> &b, const std::vector<Int> &a)
    {
        std::vector<Rational> ra = to_rat(a), rb = to_rat(b);
        trim(rb);
        poly_divmod(ra, rb);
        return ra.empty();
    }

    std::vector<Rational> poly_gcd(const std::vector<Int> &a, const std::vector<Int> &b)
    {
        std::vector<Rational> x = to_rat(a), y = to_rat(b);
        trim(x);
        trim(y);
        while (!y.empty())
        {
            poly_divmod(x, y);
            std::swap(x, y);
        }
        if (x.empty())
            return x;
        Rational lead = x.back();
        for (auto &c : x)
            c /= lead;
        return x;
    }

    Int poly_eval_int(const std::vector<Int> &p, const Int &x)
    {
        Int acc = 0;
        for (size_t i = p.size(); i-- > 0;)
            acc = acc * x + p[i];
        return acc;
    }

    IntMatrix poly_eval_matrix(const std::vector<Int> &p, const IntMatrix &a)
    {
        if (a.rows() != a.cols())
            throw DomainError("poly_eval_matrix: matrix not square");
        const int n = a.rows();
        IntMatrix acc(n, n);
        for (size_t i = p.size(); i-- > 0;)
        {
            acc = acc * a;
            for (int d = 0; d < n; d++)
                acc.at(d, d) += p[i];
        }
        return acc;
    }

    IntMatrix kernel_saturated(const IntMatrix &a)
    {
        SmithDecomposition s = smith_normal_form(a);
        const int steps = std::min(a.rows(), a.cols());
        int rank = 0;
        for (int t = 0; t < steps; t++)
            if (s.D.at(t, t) != 0)
                rank++;
        const int n = a.cols();
        IntMatrix basis(n, n - rank);
        for (int j = rank; j < n; j++)
            for (int i = 0; i < n; i++)
                basis.at(i, j - rank) = s.V.at(i, j);
        // A * basis must vanish identically
        if (!(a * basis).is_zero())
            throw VerificationError("kernel_saturated: basis fails A*v = 0");
        return basis;
    }

    IntMatrix saturate_columns(const IntMatrix &b)
    {
        SmithDecomposition s = smith_normal_form(b);
        const int steps = std::min(b.rows(), b.cols());
        int rank = 0;
        for (int t = 0; t < steps; t++)
            if (s.D.at(t, t) != 0)
                rank++;
        IntMatrix sat(b.rows(), rank);
        for (int j = 0; j < rank; j++)
            for (int i = 0; i < b.rows(); i++)
                sat.at(i, j) = s.Uinv.at(i, j);
        return sat;
    }

    IntMatrix eventual_kernel(const IntMatrix &a)
    {
        if (a.rows() != a.cols())
            throw DomainError("eventual_kernel: matrix not square");
        const int n = a.rows();
        if (n == 0)
            return IntMatrix(0, 0);
        unsigned long m = 1;
        while (m < static_cast<unsigned long>(n))
            m <<= 1UL;
        return kernel_saturated(a.pow(m));
    }

    DirectLimit direct_limit(const IntMatrix &a)
    {
        if (a.rows() != a.cols())
            throw DomainError("direct_limit: matrix not square");
        const int n = a.rows();
        IntMatrix ek = eventual_kernel(a);
        const int k = ek.cols();

        IntMatrix u = IntMatrix::identity(n), uinv = IntMatrix::identity(n);
        if (k > 0)
        {
            SmithDecomposition s = smith_normal_form(ek);
            for (int t = 0; t < k; t++)
                if (s.D.at(t, t) != 1)
                    throw VerificationError("direct_limit: eventual kernel basis not saturated");
            u = s.U;
            uinv = s.Uinv;
        }

        IntMatrix t = u * a * uinv;
        // the eventual kernel is A-invariant: the lower-left block must vanish
        for (int i = k; i < n; i++)
            for (int j = 0; j < k; j++)
                if (t.at(i, j) != 0)
                    throw VerificationError("direct_limit: eventual kernel not invariant");

        DirectLimit out;
        out.induced = IntMatrix(n - k, n - k);
        for (int i = k; i < n; i++)
            for (int j = k; j < n; j++)
                out.induced.at(i - k, j - k) = t.at(i, j);
        out.induced_det = (n - k == 0) ? Int(1) : det_int(out.induced);
        out.invertible = (out.induced_det == 1 || out.induced_det == -1);
        out.quotient.free_rank = n - k;
        if (!out.invertible)
            out.flag = "limit requires localization";
        return out;
    }

    // ---- field elimination ----------------------------------------------------

    namespace
    {
        // clear rational denominators row by row; kernels and ranks are unchanged
        void integerize_rows(FieldMatrix &w)
        {
            for (int i = 0; i < w.rows(); i++)
            {
                Int l = 1;
                for (int j = 0; j < w.cols(); j++)
                    for (int k = 0; k < 4; k++)
                    {
                        Int den = w.at(i, j).coeff(k).get_den();
                        l = lcm(l, den);
                    }
                if (l != 1)
                {
                    CycloNum f{Rational(l)};
                    for (int j = 0; j < w.cols(); j++)
                        w.at(i, j) = w.at(i, j) * f;
                }
            }
        }

        // fraction-free forward elimination; fills pivot bookkeeping
        int bareiss_field(FieldMatrix &w, std::vector<int> &pivot_cols, CycloNum *det_out)
        {
            const int rows = w.rows(), cols = w.cols();
            integerize_rows(w);
            CycloNum prev(1);
            int sign = 1;
            int r = 0;
            for (int c = 0; c < cols && r < rows; c++)
            {
                int piv = -1;
                for (int i = r; i < rows; i++)
                    if (!w.at(i, c).is_zero())
                    {
                        piv = i;
                        break;
                    }
                if (piv < 0)
                    continue;
                if (piv != r)
                {
                    for (int j = 0; j < cols; j++)
                        std::swap(w.at(piv, j), w.at(r, j));
                    sign = -sign;
                }
                for (int i = r + 1; i < rows; i++)
                {
                    for (int j = c + 1; j < cols; j++)
                        w.at(i, j) = (w.at(r, c) * w.at(i, j) - w.at(i, c) * w.at(r, j)) / prev;
                    w.at(i, c) = CycloNum();
                }
                prev = w.at(r, c);
                pivot_cols.push_back(c);
                r++;
            }
            if (det_out)
            {
                if (rows != cols)
                    throw DomainError("det_field: matrix not square");
                if (r < rows)
                    *det_out = CycloNum();
                else
                    *det_out = sign > 0 ? prev : -prev;
            }
            return r;
        }
    } // namespace

    int rank_field(const FieldMatrix &a)
    {
        FieldMatrix w = a;
        std::vector<int> pc;
        return bareiss_field(w, pc, nullptr);
    }

    CycloNum det_field(const FieldMatrix &a)
    {
        FieldMatrix w = a;
        std::vector<int> pc;
        CycloNum d;
        bareiss_field(w, pc, &d);
        return d;
    }

    std::vector<std::vector<CycloNum>> kernel_field(const FieldMatrix &a)
    {
        FieldMatrix w = a;
        std::vector<int> pivot_cols;
        int r = bareiss_field(w, pivot_cols, nullptr);
        const int cols = a.cols();

        std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
        for (int c : pivot_cols)
            is_pivot[static_cast<size_t>(c)] = true;

        std::vector<std::vector<CycloNum>> basis;
        for (int f = 0; f < cols; f++)
        {
            if (is_pivot[static_cast<size_t>(f)])
                continue;
            std::vector<CycloNum> v(static_cast<size_t>(cols));
            v[static_cast<size_t>(f)] = CycloNum(1);
            for (int row = r - 1; row >= 0; row--)
            {
                int c = pivot_cols[static_cast<size_t>(row)];
                CycloNum s;
                for (int j = c + 1; j < cols; j++)
                    if (!v[static_cast<size_t>(j)].is_zero())
                        s += w.at(row, j) * v[static_cast<size_t>(j)];
                v[static_cast<size_t>(c)] = -(s / w.at(row, c));
            }
            // clear denominators for a tidier basis
            Int l = 1;
            for (const auto &x : v)
                for (int k = 0; k < 4; k++)
                    l = lcm(l, x.coeff(k).get_den());
            if (l != 1)
                for (auto &x : v)
                    x = x * CycloNum(Rational(l));
            // exact verification
            for (int i = 0; i < a.rows(); i++)
            {
                CycloNum s;
                for (int j = 0; j < cols; j++)
                    if (!v[static_cast<size_t>(j)].is_zero())
                        s += a.at(i, j) * v[static_cast<size_t>(j)];
                if (!s.is_zero())
                    throw VerificationError("kernel_field: basis vector fails A*v = 0");
            }
            basis.push_back(std::move(v));
        }
        return basis;
    }

    FieldMatrix solve_in_span(const FieldMatrix &basis, const FieldMatrix &targets)
    {
        if (basis.rows() != targets.rows())
            throw DomainError("solve_in_span: row mismatch");
        const int n = basis.rows(), k = basis.cols(), m = targets.cols();
        FieldMatrix aug(n, k + m);
        for (int i = 0; i < n; i++)
        {
            for (int j = 0; j < k; j++)
                aug.at(i, j) = basis.at(i, j);
            for (int j = 0; j < m; j++)
                aug.at(i, k + j) = targets.at(i, j);
        }
        int r = 0;
        for (int c = 0; c < k; c++)
        {
            int piv = -1;
            for (int i = r; i < n; i++)
                if (!aug.at(i, c).is_zero())
                {
                    piv = i;
                    break;
                }
            if (piv < 0)
                throw VerificationError("solve_in_span: basis is rank deficient");
            if (piv != r)
                for (int j = 0; j < k + m; j++)
                    std::swap(aug.at(piv, j), aug.at(r, j));
            CycloNum d = aug.at(r, c);
            for (int j = 0; j < k + m; j++)
                aug.at(r, j) = aug.at(r, j) / d;
            for (int i = 0; i < n; i++)
            {
                if (i == r || aug.at(i, c).is_zero())
                    continue;
                CycloNum f = aug.at(i, c);
                for (int j = 0; j < k + m; j++)
                    aug.at(i, j) = aug.at(i, j) - f * aug.at(r, j);
            }
            r++;
        }
        for (int i = r; i < n; i++)
            for (int j = 0; j < m; j++)
                if (!aug.at(i, k + j).is_zero())
                    throw VerificationError("solve_in_span: target leaves the span of the basis");
        FieldMatrix x(k, m);
        for (int i = 0; i < k; i++)
            for (int j = 0; j < m; j++)
                x.at(i, j) = aug.at(i, k + j);
        return x;
    }

} // namespace pecoh
