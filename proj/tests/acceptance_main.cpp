// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails.  Every check below recomputes its data from scratch through
// the public API; nothing is shared between criteria except the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "pecoh/cohomology.hpp"
#include "pecoh/cyclotomic.hpp"
#include "pecoh/fibonacci.hpp"
#include "pecoh/linalg.hpp"
#include "pecoh/pattern.hpp"
#include "pecoh/penrose.hpp"

using namespace pecoh;

namespace
{

    int g_failures = 0;

    void report(int n, const std::string &label, bool ok, const std::string &detail)
    {
        std::printf("%s criterion %02d: %s%s%s\n", ok ? "PASS" : "FAIL", n, label.c_str(),
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok)
            g_failures++;
    }

    template <typename F>
    void criterion(int n, const std::string &label, F body)
    {
        std::string detail;
        bool ok = false;
        try
        {
            ok = body(detail);
        }
        catch (const std::exception &e)
        {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        report(n, label, ok, detail);
    }

    std::string fmt(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return buf;
    }

    IntMatrix block_of(const IntMatrix &m, int bi, int bj)
    {
        IntMatrix out(10, 10);
        for (int i = 0; i < 10; i++)
            for (int j = 0; j < 10; j++)
                out.at(i, j) = m.at(10 * bi + i, 10 * bj + j);
        return out;
    }

    int lookup(const std::vector<std::pair<std::string, int>> &table, const std::string &key)
    {
        for (const auto &[name, value] : table)
            if (name == key)
                return value;
        return -1;
    }

    // ---- criterion bodies ------------------------------------------------

    bool c1_sigma_blocks(std::string &detail)
    {
        IntMatrix sigma = sigma_matrix();
        IntMatrix omega = omega_matrix();
        const int powtab[4][4] = {{4, 0, -1, 6}, {0, 6, 4, -1}, {3, -1, 7, -1}, {-1, 7, -1, 3}};
        IntMatrix assembled(40, 40);
        for (int bi = 0; bi < 4; bi++)
            for (int bj = 0; bj < 4; bj++)
            {
                if (powtab[bi][bj] < 0)
                    continue;
                IntMatrix w = omega.pow(static_cast<unsigned long>(powtab[bi][bj]));
                for (int i = 0; i < 10; i++)
                    for (int j = 0; j < 10; j++)
                        assembled.at(10 * bi + i, 10 * bj + j) = w.at(i, j);
            }
        bool spots = block_of(sigma, 0, 0) == omega.pow(4) &&
                     block_of(sigma, 1, 2) == omega.pow(4) &&
                     block_of(sigma, 3, 1) == omega.pow(7) &&
                     block_of(sigma, 2, 3).is_zero();
        bool assembly = assembled == sigma;
        detail = std::string("spot blocks ") + (spots ? "ok" : "WRONG") + ", full assembly " +
                 (assembly ? "ok" : "WRONG");
        return spots && assembly;
    }

    bool c2_real_h2(std::string &detail)
    {
        RealH2 h = real_h2();
        std::vector<CycloNum> expect_vals = surviving_eigenvalues();
        std::vector<int> expect_dims = {1, 1, 3, 3};
        bool dims_ok = h.eigen_dims.size() == 4;
        if (dims_ok)
            for (size_t k = 0; k < 4; k++)
                dims_ok = dims_ok && h.eigen_dims[k].first == expect_vals[k] &&
                          h.eigen_dims[k].second == expect_dims[k];
        bool total_ok = h.dim == 8;
        bool certs = h.factorization_certified && h.decomposition_certified;
        detail = "dim " + std::to_string(h.dim) + ", eigenspace dims " +
                 (dims_ok ? "1,1,3,3" : "WRONG") + ", certificates " + (certs ? "ok" : "MISSING");
        return dims_ok && total_ok && certs;
    }

    bool c3_candidates(std::string &detail)
    {
        auto uni = verify_uniform_candidates();
        auto alt = verify_alternating_candidates();
        auto har = verify_harmonic_candidates();
        bool ok = uni.size() == 2 && alt.size() == 2 && har.size() == 2;
        // alternating tuples hold literally; rotation/reflection identities too
        for (const EigReport &r : alt)
            ok = ok && r.status == CandidateStatus::verified && r.printed_ok && r.identities_ok &&
                 !r.certified.empty();
        // the other two families must resolve: printed or corrected, never failed
        int corrected = 0;
        for (const auto *fam : {&uni, &har})
            for (const EigReport &r : *fam)
            {
                ok = ok && r.status != CandidateStatus::failed && !r.certified.empty() &&
                     r.identities_ok;
                if (r.status == CandidateStatus::corrected_candidate_verified)
                    corrected++;
            }
        detail = "alternating literal, " + std::to_string(corrected) +
                 " corrected elsewhere, none failed";
        return ok;
    }

    bool c4_generators(std::string &detail)
    {
        GeneratorReport g = comb_generators();
        bool span_ok = g.generators.size() == 4 && g.span_coefficients.size() == 4;
        for (const auto &coeffs : g.span_coefficients)
            span_ok = span_ok && coeffs.size() == 2;
        bool rank_ok = g.independence_rank == 4;
        detail = "independence rank " + std::to_string(g.independence_rank) +
                 ", literal third generator in span: " +
                 (g.printed_third_in_span ? "yes" : "no");
        return span_ok && rank_ok;
    }

    bool c5_integer(std::string &detail)
    {
        IntMatrix sigma = sigma_matrix();
        IntegerH2 a = integer_h2(sigma);
        IntegerH2 b = integer_h2(sigma.transpose());
        auto good = [](const IntegerH2 &h)
        {
            return h.quotient.free_rank == 8 && h.quotient.torsion.empty() &&
                   h.induced_unimodular && (h.induced_det == 1 || h.induced_det == -1);
        };
        detail = "free rank " + std::to_string(a.quotient.free_rank) + "/" +
                 std::to_string(b.quotient.free_rank) + ", torsion " +
                 (a.quotient.torsion.empty() && b.quotient.torsion.empty() ? "none" : "PRESENT") +
                 ", induced dets " + a.induced_det.get_str() + "/" + b.induced_det.get_str();
        return good(a) && good(b);
    }

    bool c6_d10(std::string &detail)
    {
        D10Report d = d10_decomposition();
        bool traces = d.trace_rotation == Rational(1) && d.trace_reflection == Rational(4);
        bool mults = lookup(d.multiplicities, "trivial") == 2 &&
                     lookup(d.multiplicities, "rotation_sign") == 2 &&
                     lookup(d.multiplicities, "reflection_sign") == 0 &&
                     lookup(d.multiplicities, "full_sign") == 0 &&
                     lookup(d.multiplicities, "dihedral_2d_1") == 1 &&
                     lookup(d.multiplicities, "dihedral_2d_2") == 0 &&
                     lookup(d.multiplicities, "dihedral_2d_3") == 1 &&
                     lookup(d.multiplicities, "dihedral_2d_4") == 0;
        bool lattice = lookup(d.integer_isotypic_ranks, "trivial") == 2 &&
                       lookup(d.integer_isotypic_ranks, "rotation_sign") == 2 &&
                       lookup(d.integer_isotypic_ranks, "reflection_sign") == 0 &&
                       lookup(d.integer_isotypic_ranks, "full_sign") == 0 &&
                       lookup(d.integer_isotypic_ranks, "dihedral_2d_1_plus_3") == 4 &&
                       lookup(d.integer_isotypic_ranks, "dihedral_2d_2_plus_4") == 0;
        detail = "traces " + d.trace_rotation.get_str() + "," + d.trace_reflection.get_str() +
                 "; multiplicities " + (mults ? "2,2,0,0,1,0,1,0" : "WRONG") + "; routes " +
                 (d.routes_agree ? "agree" : "DISAGREE") + "; lattice ranks " +
                 (lattice ? "2,2,4" : "WRONG");
        return traces && mults && d.routes_agree && lattice;
    }

    bool c7_counts(std::string &detail)
    {
        ConsistencyReport c = consistency_check();
        bool orient = (c.matches_sigma || c.matches_sigma_transpose) && c.diff.empty();
        IntMatrix m = substitution_count_matrix();
        bool census_ok = true;
        long grand_total = 0;
        for (int seed : {0, 25})
            for (int n = 0; n <= 8 && census_ok; n++)
            {
                Patch p = generate_patch(seed, n);
                std::vector<long> census = census_of_patch(p);
                IntMatrix mn = m.pow(static_cast<unsigned long>(n));
                for (int i = 0; i < 40; i++)
                    census_ok = census_ok && Int(census[static_cast<size_t>(i)]) == mn.at(i, seed);
                grand_total += static_cast<long>(p.tiles.size());
            }
        detail = "count matrix orientation: " + c.orientation + "; depth 0..8 censuses " +
                 (census_ok ? "match" : "MISMATCH") + " (" + std::to_string(grand_total) +
                 " tiles checked)";
        return orient && census_ok;
    }

    bool c8_equivariance(std::string &detail)
    {
        Patch patch = generate_patch(0, 6);
        PointPattern pat = centers_pattern(patch);
        auto emb = pat.embedded();
        double r0 = 1e300;
        for (size_t i = 0; i < emb.size(); i++)
            for (size_t j = i + 1; j < emb.size(); j++)
                r0 = std::min(r0, std::abs(emb[i] - emb[j]));
        const double s = 0.5;
        Rational r = rational_from_double(s + r0);
        Rational radius_sq = r * r;
        std::vector<size_t> sites(pat.size());
        std::iota(sites.begin(), sites.end(), size_t{0});

        EquivarianceReport comb0 = check_equivariance(
            pat, sites, dirac_comb_convolve(pat, BumpProfile(2, s, 0.0), pat.points), radius_sq,
            1e-9);
        EquivarianceReport comb1 = check_equivariance(
            pat, sites, dirac_comb_convolve(pat, BumpProfile(2, s, 1.0), pat.points), radius_sq,
            1e-9);
        std::vector<double> coord(pat.size());
        for (size_t i = 0; i < pat.size(); i++)
            coord[i] = emb[i].real();
        EquivarianceReport cr = check_equivariance(pat, sites, coord, radius_sq, 1e-9);

        bool ok = comb0.pass && comb1.pass && comb0.group_count > 1 && !cr.pass &&
                  cr.witness.has_value();
        detail = "comb spreads " + fmt(comb0.max_spread) + "/" + fmt(comb1.max_spread) + " over " +
                 std::to_string(comb0.group_count) + " groups; coordinate function " +
                 (cr.pass ? "UNDETECTED" : "rejected with witness");
        if (cr.witness)
            detail += " sites (" + std::to_string(cr.witness->first) + "," +
                      std::to_string(cr.witness->second) + ")";
        return ok;
    }

    bool c9_frequencies(std::string &detail)
    {
        // Per-class relative agreement is limited by the subdominant
        // eigenvalue (ratio 1/tau per depth step, about 2% at depth 8 before
        // the overlap amplitude), so the 2% budget is checked in absolute
        // percentage points per class, plus relatively per family where the
        // alternating component cancels.
        std::vector<CycloNum> exact = tile_frequencies_exact();
        Patch p = generate_patch(0, 8);
        std::vector<long> census = census_of_patch(p);
        double total = static_cast<double>(p.tiles.size());
        double max_abs = 0;
        double fam_got[4] = {0, 0, 0, 0}, fam_expect[4] = {0, 0, 0, 0};
        for (int i = 0; i < 40; i++)
        {
            double expect = exact[static_cast<size_t>(i)].embed().real();
            double got = static_cast<double>(census[static_cast<size_t>(i)]) / total;
            max_abs = std::max(max_abs, std::abs(got - expect));
            fam_got[family_of(i)] += got;
            fam_expect[family_of(i)] += expect;
        }
        double max_fam_rel = 0;
        for (int k = 0; k < 4; k++)
            max_fam_rel = std::max(max_fam_rel,
                                   std::abs(fam_got[k] - fam_expect[k]) / fam_expect[k]);
        auto counts = letter_counts(fibonacci_word(20));
        double freq_a = static_cast<double>(counts[0]) / static_cast<double>(counts[0] + counts[1]);
        double limit_a = 1.0 / CycloNum::tau_plus().embed().real();
        double fib_err = std::abs(freq_a - limit_a);
        detail = "max class deviation " + fmt(max_abs) + " (abs), max family deviation " +
                 fmt(max_fam_rel) + " (rel), over " + std::to_string(p.tiles.size()) +
                 " tiles; letter frequency error " + fmt(fib_err);
        return max_abs <= 0.02 && max_fam_rel <= 0.02 && fib_err <= 1e-3;
    }

    bool c10_line_invariants(std::string &detail)
    {
        DirectLimit dl = fibonacci_h1();
        bool h1_ok = dl.quotient.free_rank == 2 && dl.quotient.torsion.empty() &&
                     (dl.induced_det == 1 || dl.induced_det == -1);
        PointPattern mid = fibonacci_midpoints(fibonacci_word(14));
        PrimitiveProbe probe =
            primitive_probe(mid, BumpProfile(1, 0.4, 0.0), Rational(100), Rational(260),
                            Rational(1, 20), Rational(4), 1e-6);
        bool probe_ok = std::abs(probe.slope_used) <= 1e-3 && probe.equivariance.pass &&
                        probe.matched_pair.has_value();
        detail = "rank " + std::to_string(dl.quotient.free_rank) + ", induced det " +
                 dl.induced_det.get_str() + "; slope " + fmt(probe.slope_used) +
                 ", equivariance spread " + fmt(probe.equivariance.max_spread) + " over " +
                 std::to_string(probe.equivariance.group_count) + " groups";
        return h1_ok && probe_ok;
    }

    bool c11_metric(std::string &detail)
    {
        Patch patch = generate_patch(0, 9);
        PointPattern verts = vertices_pattern(patch);
        auto emb = verts.embedded();
        std::complex<double> centroid = 0;
        for (const auto &z : emb)
            centroid += z;
        centroid /= static_cast<double>(emb.size());
        size_t pick = 0;
        for (size_t i = 1; i < emb.size(); i++)
            if (std::abs(emb[i] - centroid) < std::abs(emb[pick] - centroid))
                pick = i;
        PointPattern a = translated(verts, -verts.points[pick]);

        // smallest inter-point distance: the short interval 1/tau
        double r0 = 1e300;
        auto ea = a.embedded();
        for (size_t i = 0; i < ea.size(); i++)
            for (size_t j = i + 1; j < ea.size(); j++)
                r0 = std::min(r0, std::abs(ea[i] - ea[j]));
        CycloNum inv_tau = CycloNum::tau_plus() - CycloNum(1);
        bool r0_ok = std::abs(r0 - inv_tau.embed().real()) <= 1e-9;

        MetricOptions self_opt;
        self_opt.max_radius = 8.0;
        MetricResult self = pattern_metric(a, a, self_opt);
        bool self_ok = self.nontrivial && self.bound <= 1.0 / 9.0 + 1e-12;

        MetricOptions t_opt;
        t_opt.max_radius = 16.0;
        t_opt.grid_pitch = inv_tau * Rational(1, 16);
        t_opt.grid_span = 1;
        t_opt.max_exact_checks = 64;

        double allowance_pad = inv_tau.embed().real() / 16.0; // r0 / 16
        bool translate_ok = true, symmetric = true;
        std::string bounds;
        for (long den : {4L, 8L, 16L})
        {
            CycloNum v = CycloNum::zeta(1) * inv_tau * Rational(1, den);
            PointPattern b = translated(a, -v);
            MetricResult ab = pattern_metric(a, b, t_opt);
            double vlen = std::abs(v.embed());
            translate_ok = translate_ok && ab.nontrivial && ab.bound <= vlen + allowance_pad;
            if (den == 4)
            {
                MetricResult ba = pattern_metric(b, a, t_opt);
                symmetric = ba.nontrivial && ab.bound == ba.bound;
            }
            if (!bounds.empty())
                bounds += ",";
            bounds += fmt(ab.bound);
        }
        detail = "self bound " + fmt(self.bound) + "; translate bounds " + bounds +
                 "; symmetry " + (symmetric ? "exact" : "BROKEN") + "; shortest distance " +
                 (r0_ok ? "1/tau" : "UNEXPECTED " + fmt(r0));
        return r0_ok && self_ok && translate_ok && symmetric;
    }

    bool c12_curl(std::string &detail)
    {
        auto g = [](double u) { return u * u * u; };
        double axis = max_discrete_curl(sample_gradient_one_form(g, 0.0, 8, 0.1));
        bool axis_ok = axis == 0.0;
        std::vector<double> curls;
        for (double h : {0.2, 0.1, 0.05, 0.025})
            curls.push_back(max_discrete_curl(sample_gradient_one_form(
                g, std::numbers::pi / 5.0, 8, h)));
        bool ratios_ok = true;
        std::string ratios;
        for (size_t k = 0; k + 1 < curls.size(); k++)
        {
            double ratio = curls[k] / curls[k + 1];
            ratios_ok = ratios_ok && ratio >= 3.0 && ratio <= 5.0;
            if (!ratios.empty())
                ratios += ",";
            ratios += fmt(ratio);
        }
        detail = "axis curl " + fmt(axis) + "; halving ratios " + ratios;
        return axis_ok && ratios_ok;
    }

} // namespace

int main()
{
    criterion(1, "substitution matrix assembles from its cyclic-shift blocks", c1_sigma_blocks);
    criterion(2, "surviving eigenspace dimensions 1,1,3,3 with certified complement",
              c2_real_h2);
    criterion(3, "published eigenvector candidates verify or are resolved", c3_candidates);
    criterion(4, "comb generators lie in the surviving span and are independent",
              c4_generators);
    criterion(5, "integer invariant: free rank 8, no torsion, unimodular action", c5_integer);
    criterion(6, "dihedral decomposition: traces, multiplicities, lattice ranks", c6_d10);
    criterion(7, "geometric child counts reproduce the matrix and its powers", c7_counts);
    criterion(8, "comb functions are equivariant; the coordinate function is not",
              c8_equivariance);
    criterion(9, "empirical frequencies approach the exact eigenvector data", c9_frequencies);
    criterion(10, "line invariant: rank 2, no torsion; balanced primitive stays bounded",
              c10_line_invariants);
    criterion(11, "pattern-space metric bounds: self, translates, symmetry", c11_metric);
    criterion(12, "discrete curl vanishes on-axis and decays quadratically off-axis",
              c12_curl);

    if (g_failures == 0)
        std::printf("acceptance: all 12 criteria passed\n");
    else
        std::printf("acceptance: %d of 12 criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
