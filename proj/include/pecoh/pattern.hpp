#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "pecoh/cyclotomic.hpp"
#include "pecoh/errors.hpp"
#include "pecoh/penrose.hpp"

namespace pecoh
{

    // A labeled point set with exact coordinates.  one_d patterns live on the
    // real axis and are used by the substitution-line tooling.
    struct PointPattern
    {
        std::vector<CycloNum> points;
        std::vector<int> labels;
        bool one_d = false;

        size_t size() const { return points.size(); }
        void validate() const;
        std::vector<std::complex<double>> embedded() const;
    };

    PointPattern centers_pattern(const Patch &p);
    PointPattern vertices_pattern(const Patch &p);
    PointPattern translated(const PointPattern &p, const CycloNum &shift);

    // Exact local configuration around a center: the labeled offsets of all
    // pattern points within the given radius, sorted canonically.
    struct PatchKey
    {
        std::vector<std::pair<int, CycloNum>> atoms;

        bool operator==(const PatchKey &o) const { return atoms == o.atoms; }
        bool operator<(const PatchKey &o) const;
    };

    PatchKey patch_key_at(const PointPattern &p, const CycloNum &center,
                          const Rational &radius_sq);
    PatchKey patch_key_of_site(const PointPattern &p, size_t site,
                               const Rational &radius_sq);

    struct CensusGroup
    {
        PatchKey key;
        std::vector<size_t> sites;
    };

    std::vector<CensusGroup> exact_census(const PointPattern &p,
                                          const std::vector<size_t> &sites,
                                          const Rational &radius_sq);

    // Sites among the candidates whose exact key matches the key at `site`.
    std::vector<size_t> occurrences(const PointPattern &p, size_t site,
                                    const Rational &radius_sq,
                                    const std::vector<size_t> &candidate_sites);

    // Floating-point keys refuse to decide membership for points that fall
    // within `guard` of the cut radius (AmbiguityError); keys are compared
    // entrywise with tolerance `tol`.
    struct FloatKeyOptions
    {
        double guard = 1e-9;
        double tol = 1e-6;
    };

    // Groups the sites into equal-key classes (union-find over tolerant
    // pairwise comparisons).
    std::vector<std::vector<size_t>> float_census(const PointPattern &p,
                                                  const std::vector<size_t> &sites,
                                                  double radius,
                                                  const FloatKeyOptions &opt = {});

    // Convex hull (Andrew monotone chain), counterclockwise, no duplicates.
    std::vector<std::array<double, 2>> convex_hull(std::vector<std::array<double, 2>> pts);

    // How far a local configuration at `center` can be trusted: distance to
    // the hull of the finite sample minus a safety margin.  Negative values
    // mean "not at all".
    double reliable_radius(const PointPattern &p, const CycloNum &center, double margin);
    std::vector<size_t> reliable_sites(const PointPattern &p, double min_radius,
                                       double margin);

    // Smooth radial profile supported in |x| <= scale.  mean == 0 selects the
    // balanced two-scale profile whose integral cancels analytically; any
    // other mean rescales the plain bump to that total integral.  The
    // constructor cross-checks the integral numerically.
    struct BumpProfile
    {
        int dim;
        double scale;
        double mean;

        BumpProfile(int dim_, double scale_, double mean_);
        double operator()(double dist) const;
    };

    // G(q) = sum over pattern points p of profile(|q - p|).  Offsets are
    // computed exactly before embedding and contributions are summed in a
    // canonical order, so equal exact patches produce bit-identical values.
    std::vector<double> dirac_comb_convolve(const PointPattern &p,
                                            const BumpProfile &profile,
                                            const std::vector<CycloNum> &queries);

    struct EquivarianceReport
    {
        int group_count = 0;
        double max_spread = 0;
        bool pass = true;
        std::optional<std::pair<size_t, size_t>> witness; // indices into `sites`
    };

    // Sites with equal local configuration must carry equal values.
    EquivarianceReport check_equivariance(const PointPattern &p,
                                          const std::vector<size_t> &sites,
                                          const std::vector<double> &values,
                                          const Rational &radius_sq, double tol);
    EquivarianceReport check_equivariance_float(const PointPattern &p,
                                                const std::vector<size_t> &sites,
                                                const std::vector<double> &values,
                                                double radius, double tol,
                                                const FloatKeyOptions &opt = {});

    struct DerivationReport
    {
        bool locally_derivable = true;
        int group_count = 0;
        std::optional<std::pair<size_t, size_t>> witness; // indices into `sites`
    };

    // Local derivability probe: sites (indices into source.points) whose
    // source configurations agree within source_radius must have derived
    // configurations that agree within derived_radius.
    DerivationReport local_derivation_check(const PointPattern &source,
                                            const PointPattern &derived,
                                            const std::vector<size_t> &sites,
                                            const Rational &source_radius_sq,
                                            const Rational &derived_radius_sq);

    struct MetricOptions
    {
        double candidate_radius = 2.0;
        double max_radius = 64.0;
        double margin = 1.6180339887498949;
        CycloNum grid_pitch;   // zero pitch: only w = 0 is tried
        int grid_span = 0;     // w = pitch * (a + b*zeta), |a|, |b| <= span
        int max_exact_checks = 32;
        double probe_radius = 2.0;
    };

    struct MetricResult
    {
        double bound = 1.0;        // certified upper bound 1/(1 + r)
        Rational witness_radius;   // r, exact; zero when nothing verified
        CycloNum center_a, center_b;
        bool nontrivial = false;
        int exact_checks = 0;
    };

    // Certified upper bound for the pattern-space distance: searches for
    // centers x, x' with x - x' realized by a point difference such that the
    // two patterns agree exactly on balls of radius r around them, and
    // reports 1/(1 + r) for the best verified r.
    MetricResult pattern_metric(const PointPattern &a, const PointPattern &b,
                                const MetricOptions &opt = {});

    // Sampled 1-form on the square grid (i*h, j*h), |i|, |j| <= n, row-major
    // with index (i + n) * (2n + 1) + (j + n).
    struct OneFormSample
    {
        int n = 0;
        double h = 0;
        std::vector<double> f1, f2;

        size_t index(int i, int j) const
        {
            return static_cast<size_t>((i + n) * (2 * n + 1) + (j + n));
        }
    };

    // f = grad Phi for Phi(x) = (potential of g) along direction `angle`:
    // f_k(x) = n_k * g(n . x) with n = (cos angle, sin angle).
    OneFormSample sample_gradient_one_form(const std::function<double(double)> &g,
                                           double angle, int n, double h);

    // Largest |d1 f2 - d2 f1| over interior grid nodes, central differences.
    double max_discrete_curl(const OneFormSample &s);

} // namespace pecoh
