#include "pecoh/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <unordered_map>

namespace pecoh
{

    void PointPattern::validate() const
    {
        if (points.size() != labels.size())
            throw DomainError("PointPattern: points/labels size mismatch");
        if (one_d)
            for (const CycloNum &p : points)
                if (!p.is_real())
                    throw DomainError("PointPattern: one-d pattern with a non-real point");
    }

    std::vector<std::complex<double>> PointPattern::embedded() const
    {
        std::vector<std::complex<double>> out(points.size());
        for (size_t i = 0; i < points.size(); i++)
            out[i] = points[i].embed();
        return out;
    }

    PointPattern centers_pattern(const Patch &p)
    {
        PointPattern out;
        for (const auto &[center, label] : tile_centers(p))
        {
            out.points.push_back(center);
            out.labels.push_back(label);
        }
        return out;
    }

    PointPattern vertices_pattern(const Patch &p)
    {
        PointPattern out;
        out.points = patch_vertices(p);
        out.labels.assign(out.points.size(), 0);
        return out;
    }

    PointPattern translated(const PointPattern &p, const CycloNum &shift)
    {
        if (p.one_d && !shift.is_real())
            throw DomainError("translated: one-d pattern shifted off the line");
        PointPattern out = p;
        for (CycloNum &pt : out.points)
            pt += shift;
        return out;
    }

    namespace
    {
        bool atom_less(const std::pair<int, CycloNum> &a, const std::pair<int, CycloNum> &b)
        {
            if (a.first != b.first)
                return a.first < b.first;
            return cmp_points(a.second, b.second) < 0;
        }
    }

    bool PatchKey::operator<(const PatchKey &o) const
    {
        return std::lexicographical_compare(atoms.begin(), atoms.end(),
                                            o.atoms.begin(), o.atoms.end(), atom_less);
    }

    PatchKey patch_key_at(const PointPattern &p, const CycloNum &center,
                          const Rational &radius_sq)
    {
        PatchKey key;
        for (size_t i = 0; i < p.points.size(); i++)
        {
            CycloNum off = p.points[i] - center;
            if (cmp_abs2(off, radius_sq) <= 0)
                key.atoms.emplace_back(p.labels[i], off);
        }
        std::sort(key.atoms.begin(), key.atoms.end(), atom_less);
        return key;
    }

    PatchKey patch_key_of_site(const PointPattern &p, size_t site, const Rational &radius_sq)
    {
        if (site >= p.points.size())
            throw DomainError("patch_key_of_site: site out of range");
        return patch_key_at(p, p.points[site], radius_sq);
    }

    std::vector<CensusGroup> exact_census(const PointPattern &p,
                                          const std::vector<size_t> &sites,
                                          const Rational &radius_sq)
    {
        std::map<PatchKey, std::vector<size_t>> groups;
        for (size_t site : sites)
            groups[patch_key_of_site(p, site, radius_sq)].push_back(site);
        std::vector<CensusGroup> out;
        for (auto &[key, members] : groups)
            out.push_back({key, members});
        return out;
    }

    std::vector<size_t> occurrences(const PointPattern &p, size_t site,
                                    const Rational &radius_sq,
                                    const std::vector<size_t> &candidate_sites)
    {
        PatchKey want = patch_key_of_site(p, site, radius_sq);
        std::vector<size_t> out;
        for (size_t cand : candidate_sites)
            if (patch_key_of_site(p, cand, radius_sq) == want)
                out.push_back(cand);
        return out;
    }

    namespace
    {
        struct FloatAtom
        {
            int label;
            double x, y;
        };
        using FloatKey = std::vector<FloatAtom>;

        FloatKey float_key_at(const PointPattern &p,
                              const std::vector<std::complex<double>> &emb,
                              std::complex<double> center, double radius, double guard)
        {
            FloatKey key;
            for (size_t i = 0; i < emb.size(); i++)
            {
                std::complex<double> off = emb[i] - center;
                double d = std::abs(off);
                if (std::abs(d - radius) <= guard)
                    throw AmbiguityError("float patch key: point within the guard band "
                                         "of the cut radius");
                if (d < radius)
                    key.push_back({p.labels[i], off.real(), off.imag()});
            }
            std::sort(key.begin(), key.end(), [](const FloatAtom &a, const FloatAtom &b)
                      {
                          if (a.label != b.label) return a.label < b.label;
                          if (a.x != b.x) return a.x < b.x;
                          return a.y < b.y;
                      });
            return key;
        }

        bool float_key_match(const FloatKey &a, const FloatKey &b, double tol)
        {
            if (a.size() != b.size())
                return false;
            for (size_t i = 0; i < a.size(); i++)
                if (a[i].label != b[i].label || std::abs(a[i].x - b[i].x) > tol ||
                    std::abs(a[i].y - b[i].y) > tol)
                    return false;
            return true;
        }

        struct UnionFind
        {
            std::vector<size_t> parent;
            explicit UnionFind(size_t n) : parent(n)
            {
                for (size_t i = 0; i < n; i++)
                    parent[i] = i;
            }
            size_t find(size_t i)
            {
                while (parent[i] != i)
                    i = parent[i] = parent[parent[i]];
                return i;
            }
            void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
        };
    }

    std::vector<std::vector<size_t>> float_census(const PointPattern &p,
                                                  const std::vector<size_t> &sites,
                                                  double radius, const FloatKeyOptions &opt)
    {
        auto emb = p.embedded();
        std::vector<FloatKey> keys;
        keys.reserve(sites.size());
        for (size_t site : sites)
        {
            if (site >= emb.size())
                throw DomainError("float_census: site out of range");
            keys.push_back(float_key_at(p, emb, emb[site], radius, opt.guard));
        }
        UnionFind uf(sites.size());
        for (size_t i = 0; i < sites.size(); i++)
            for (size_t j = i + 1; j < sites.size(); j++)
                if (uf.find(i) != uf.find(j) && float_key_match(keys[i], keys[j], opt.tol))
                    uf.unite(i, j);
        std::map<size_t, std::vector<size_t>> by_root;
        for (size_t i = 0; i < sites.size(); i++)
            by_root[uf.find(i)].push_back(sites[i]);
        std::vector<std::vector<size_t>> out;
        for (auto &[root, members] : by_root)
            out.push_back(members);
        std::sort(out.begin(), out.end(),
                  [](const auto &a, const auto &b) { return a.front() < b.front(); });
        return out;
    }

    std::vector<std::array<double, 2>> convex_hull(std::vector<std::array<double, 2>> pts)
    {
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        const size_t n = pts.size();
        if (n < 3)
            return pts;
        auto cross = [](const std::array<double, 2> &o, const std::array<double, 2> &a,
                        const std::array<double, 2> &b)
        {
            return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
        };
        std::vector<std::array<double, 2>> hull(2 * n);
        size_t k = 0;
        for (size_t i = 0; i < n; i++)
        {
            while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0)
                k--;
            hull[k++] = pts[i];
        }
        for (size_t i = n - 1, t = k + 1; i-- > 0;)
        {
            while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0)
                k--;
            hull[k++] = pts[i];
        }
        hull.resize(k - 1);
        return hull;
    }

    namespace
    {
        struct HullInfo
        {
            bool one_d = false;
            double min_x = 0, max_x = 0;
            std::vector<std::array<double, 2>> hull;
        };

        HullInfo build_hull(const PointPattern &p)
        {
            HullInfo info;
            info.one_d = p.one_d;
            auto emb = p.embedded();
            if (p.one_d)
            {
                if (emb.empty())
                {
                    info.min_x = 1;
                    info.max_x = -1;
                    return info;
                }
                info.min_x = info.max_x = emb[0].real();
                for (const auto &z : emb)
                {
                    info.min_x = std::min(info.min_x, z.real());
                    info.max_x = std::max(info.max_x, z.real());
                }
                return info;
            }
            std::vector<std::array<double, 2>> pts(emb.size());
            for (size_t i = 0; i < emb.size(); i++)
                pts[i] = {emb[i].real(), emb[i].imag()};
            info.hull = convex_hull(pts);
            return info;
        }

        double inner_distance(const HullInfo &info, std::complex<double> c)
        {
            if (info.one_d)
            {
                if (info.min_x > info.max_x)
                    return -1e18;
                return std::min(c.real() - info.min_x, info.max_x - c.real());
            }
            if (info.hull.size() < 3)
                return -1e18;
            double best = 1e18;
            for (size_t i = 0; i < info.hull.size(); i++)
            {
                const auto &a = info.hull[i];
                const auto &b = info.hull[(i + 1) % info.hull.size()];
                double ex = b[0] - a[0], ey = b[1] - a[1];
                double len = std::hypot(ex, ey);
                if (len == 0)
                    continue;
                double signed_dist = (ex * (c.imag() - a[1]) - ey * (c.real() - a[0])) / len;
                best = std::min(best, signed_dist);
            }
            return best;
        }
    }

    double reliable_radius(const PointPattern &p, const CycloNum &center, double margin)
    {
        return inner_distance(build_hull(p), center.embed()) - margin;
    }

    std::vector<size_t> reliable_sites(const PointPattern &p, double min_radius, double margin)
    {
        HullInfo info = build_hull(p);
        auto emb = p.embedded();
        std::vector<size_t> out;
        for (size_t i = 0; i < emb.size(); i++)
            if (inner_distance(info, emb[i]) - margin >= min_radius)
                out.push_back(i);
        return out;
    }

    namespace
    {
        double bump01(double t)
        {
            double u = std::abs(t);
            return u < 1 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
        }

        double simpson_slice(const std::function<double(double)> &f, double a, double fa,
                             double b, double fb, double m, double fm)
        {
            (void)m;
            return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        }

        double adaptive_step(const std::function<double(double)> &f, double a, double fa,
                             double b, double fb, double m, double fm, double whole,
                             double tol, int depth)
        {
            double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            double flm = f(lm), frm = f(rm);
            double left = simpson_slice(f, a, fa, m, fm, lm, flm);
            double right = simpson_slice(f, m, fm, b, fb, rm, frm);
            if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return adaptive_step(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1) +
                   adaptive_step(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1);
        }

        double adaptive_simpson(const std::function<double(double)> &f, double a, double b,
                                double tol)
        {
            double m = 0.5 * (a + b);
            double fa = f(a), fb = f(b), fm = f(m);
            double whole = simpson_slice(f, a, fa, b, fb, m, fm);
            return adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, 48);
        }

        double ball_integral(int dim)
        {
            static const double i1 = 2.0 * adaptive_simpson([](double t) { return bump01(t); },
                                                            0.0, 1.0, 1e-13);
            static const double i2 =
                2.0 * std::numbers::pi *
                adaptive_simpson([](double t) { return bump01(t) * t; }, 0.0, 1.0, 1e-13);
            return dim == 1 ? i1 : i2;
        }
    }

    BumpProfile::BumpProfile(int dim_, double scale_, double mean_)
        : dim(dim_), scale(scale_), mean(mean_)
    {
        if (dim != 1 && dim != 2)
            throw DomainError("BumpProfile: dim must be 1 or 2");
        if (!(scale > 0))
            throw DomainError("BumpProfile: scale must be positive");
        auto radial = [this](double r) { return (*this)(r); };
        double total;
        if (dim == 1)
            total = 2.0 * adaptive_simpson(radial, 0.0, scale, 1e-13);
        else
            total = 2.0 * std::numbers::pi *
                    adaptive_simpson([&](double r) { return radial(r) * r; }, 0.0, scale, 1e-13);
        if (std::abs(total - mean) > 1e-8)
            throw VerificationError("BumpProfile: numeric integral disagrees with the "
                                    "advertised mean");
    }

    double BumpProfile::operator()(double dist) const
    {
        double t = std::abs(dist) / scale;
        if (mean == 0)
            return bump01(t) - (dim == 2 ? 4.0 : 2.0) * bump01(2.0 * t);
        return mean * bump01(t) / (std::pow(scale, dim) * ball_integral(dim));
    }

    std::vector<double> dirac_comb_convolve(const PointPattern &p, const BumpProfile &profile,
                                            const std::vector<CycloNum> &queries)
    {
        p.validate();
        if (profile.dim != (p.one_d ? 1 : 2))
            throw DomainError("dirac_comb_convolve: profile dimension does not match "
                              "the pattern");
        const double s = profile.scale;
        auto emb = p.embedded();

        std::map<std::pair<long, long>, std::vector<size_t>> grid;
        auto cell_of = [&](std::complex<double> z)
        {
            long cx = static_cast<long>(std::floor(z.real() / s));
            long cy = p.one_d ? 0 : static_cast<long>(std::floor(z.imag() / s));
            return std::make_pair(cx, cy);
        };
        for (size_t i = 0; i < emb.size(); i++)
            grid[cell_of(emb[i])].push_back(i);

        std::vector<double> out;
        out.reserve(queries.size());
        for (const CycloNum &q : queries)
        {
            auto qc = cell_of(q.embed());
            std::vector<std::array<double, 2>> offsets;
            for (long dx = -1; dx <= 1; dx++)
                for (long dy = p.one_d ? 0 : -1; dy <= (p.one_d ? 0 : 1); dy++)
                {
                    auto it = grid.find({qc.first + dx, qc.second + dy});
                    if (it == grid.end())
                        continue;
                    for (size_t idx : it->second)
                    {
                        // exact difference first, so equal patches embed equally
                        std::complex<double> off = (p.points[idx] - q).embed();
                        if (std::hypot(off.real(), off.imag()) < s)
                            offsets.push_back({off.real(), off.imag()});
                    }
                }
            std::sort(offsets.begin(), offsets.end());
            double acc = 0;
            for (const auto &o : offsets)
                acc += profile(std::hypot(o[0], o[1]));
            out.push_back(acc);
        }
        return out;
    }

    namespace
    {
        template <typename Key>
        EquivarianceReport spread_report(const std::vector<Key> &keys,
                                         const std::vector<double> &values, double tol)
        {
            struct Group
            {
                double lo, hi;
                size_t ilo, ihi;
            };
            std::map<Key, Group> groups;
            for (size_t i = 0; i < keys.size(); i++)
            {
                auto [it, fresh] = groups.try_emplace(keys[i], Group{values[i], values[i], i, i});
                if (!fresh)
                {
                    if (values[i] < it->second.lo)
                    {
                        it->second.lo = values[i];
                        it->second.ilo = i;
                    }
                    if (values[i] > it->second.hi)
                    {
                        it->second.hi = values[i];
                        it->second.ihi = i;
                    }
                }
            }
            EquivarianceReport rep;
            rep.group_count = static_cast<int>(groups.size());
            for (const auto &[key, g] : groups)
            {
                double spread = g.hi - g.lo;
                if (spread > rep.max_spread)
                {
                    rep.max_spread = spread;
                    rep.witness = std::make_pair(g.ilo, g.ihi);
                }
            }
            rep.pass = rep.max_spread <= tol;
            return rep;
        }
    }

    EquivarianceReport check_equivariance(const PointPattern &p,
                                          const std::vector<size_t> &sites,
                                          const std::vector<double> &values,
                                          const Rational &radius_sq, double tol)
    {
        if (sites.size() != values.size())
            throw DomainError("check_equivariance: sites/values size mismatch");
        std::vector<PatchKey> keys;
        keys.reserve(sites.size());
        for (size_t site : sites)
            keys.push_back(patch_key_of_site(p, site, radius_sq));
        return spread_report(keys, values, tol);
    }

    EquivarianceReport check_equivariance_float(const PointPattern &p,
                                                const std::vector<size_t> &sites,
                                                const std::vector<double> &values,
                                                double radius, double tol,
                                                const FloatKeyOptions &opt)
    {
        if (sites.size() != values.size())
            throw DomainError("check_equivariance: sites/values size mismatch");
        auto groups = float_census(p, sites, radius, opt);
        std::unordered_map<size_t, size_t> pos;
        for (size_t i = 0; i < sites.size(); i++)
            pos[sites[i]] = i;

        EquivarianceReport rep;
        rep.group_count = static_cast<int>(groups.size());
        for (const auto &members : groups)
        {
            size_t ilo = pos.at(members.front()), ihi = ilo;
            for (size_t m : members)
            {
                size_t i = pos.at(m);
                if (values[i] < values[ilo])
                    ilo = i;
                if (values[i] > values[ihi])
                    ihi = i;
            }
            double spread = values[ihi] - values[ilo];
            if (spread > rep.max_spread)
            {
                rep.max_spread = spread;
                rep.witness = std::make_pair(ilo, ihi);
            }
        }
        rep.pass = rep.max_spread <= tol;
        return rep;
    }

    DerivationReport local_derivation_check(const PointPattern &source,
                                            const PointPattern &derived,
                                            const std::vector<size_t> &sites,
                                            const Rational &source_radius_sq,
                                            const Rational &derived_radius_sq)
    {
        struct Seen
        {
            size_t first_pos;
            PatchKey derived_key;
        };
        std::map<PatchKey, Seen> groups;
        DerivationReport rep;
        for (size_t i = 0; i < sites.size(); i++)
        {
            const CycloNum &center = source.points.at(sites[i]);
            PatchKey src = patch_key_at(source, center, source_radius_sq);
            PatchKey der = patch_key_at(derived, center, derived_radius_sq);
            auto [it, fresh] = groups.try_emplace(src, Seen{i, der});
            if (!fresh && !(it->second.derived_key == der))
            {
                rep.locally_derivable = false;
                if (!rep.witness)
                    rep.witness = std::make_pair(it->second.first_pos, i);
            }
        }
        rep.group_count = static_cast<int>(groups.size());
        return rep;
    }

    MetricResult pattern_metric(const PointPattern &a, const PointPattern &b,
                                const MetricOptions &opt)
    {
        if (a.one_d || b.one_d)
            throw DomainError("pattern_metric: two-dimensional patterns only");
        a.validate();
        b.validate();
        auto ea = a.embedded(), eb = b.embedded();
        HullInfo hull_a = build_hull(a), hull_b = build_hull(b);

        std::vector<size_t> near_a, near_b;
        for (size_t i = 0; i < ea.size(); i++)
            if (std::abs(ea[i]) <= opt.candidate_radius)
                near_a.push_back(i);
        for (size_t i = 0; i < eb.size(); i++)
            if (std::abs(eb[i]) <= opt.candidate_radius)
                near_b.push_back(i);

        std::set<CycloNum, PointLess> deltas;
        deltas.insert(CycloNum(0));
        for (size_t ia : near_a)
            for (size_t ib : near_b)
                deltas.insert(a.points[ia] - b.points[ib]);

        std::vector<CycloNum> shifts = {CycloNum(0)};
        if (!opt.grid_pitch.is_zero() && opt.grid_span > 0)
            for (int u = -opt.grid_span; u <= opt.grid_span; u++)
                for (int v = -opt.grid_span; v <= opt.grid_span; v++)
                {
                    if (u == 0 && v == 0)
                        continue;
                    shifts.push_back(opt.grid_pitch *
                                     (CycloNum(u) + CycloNum(v) * CycloNum::zeta(1)));
                }

        struct Candidate
        {
            double cap;
            CycloNum x, xp;
        };
        std::vector<Candidate> candidates;
        for (const CycloNum &delta : deltas)
            for (const CycloNum &w : shifts)
            {
                CycloNum x = delta * Rational(1, 2) + w;
                CycloNum xp = x - delta;
                std::complex<double> xe = x.embed(), xpe = xp.embed();
                double cap = std::min(opt.max_radius,
                                      std::min(inner_distance(hull_a, xe) - opt.margin,
                                               inner_distance(hull_b, xpe) - opt.margin));
                if (std::abs(xe) > 1e-12)
                    cap = std::min(cap, 1.0 / std::abs(xe));
                if (std::abs(xpe) > 1e-12)
                    cap = std::min(cap, 1.0 / std::abs(xpe));
                if (cap > 1e-9)
                    candidates.push_back({cap, x, xp});
            }
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const Candidate &l, const Candidate &r) { return l.cap > r.cap; });

        MetricResult result;
        FloatKeyOptions fko;
        for (const Candidate &cand : candidates)
        {
            if (result.exact_checks >= opt.max_exact_checks)
                break;
            double probe = std::min(cand.cap, opt.probe_radius);
            bool probe_ok = true;
            try
            {
                FloatKey ka = float_key_at(a, ea, cand.x.embed(), probe, fko.guard);
                FloatKey kb = float_key_at(b, eb, cand.xp.embed(), probe, fko.guard);
                probe_ok = float_key_match(ka, kb, fko.tol);
            }
            catch (const AmbiguityError &)
            {
                probe_ok = true; // let the exact check decide
            }
            if (!probe_ok)
                continue;

            Rational rw(static_cast<long>(std::floor(cand.cap * 1048576.0)), 1048576);
            rw.canonicalize();
            if (rw <= 0)
                continue;
            result.exact_checks++;
            Rational r2 = rw * rw;
            PatchKey ka = patch_key_at(a, cand.x, r2);
            PatchKey kb = patch_key_at(b, cand.xp, r2);
            if (ka == kb)
            {
                result.bound = 1.0 / (1.0 + rw.get_d());
                result.witness_radius = rw;
                result.center_a = cand.x;
                result.center_b = cand.xp;
                result.nontrivial = true;
                return result;
            }
        }
        return result; // trivial bound 1
    }

    OneFormSample sample_gradient_one_form(const std::function<double(double)> &g,
                                           double angle, int n, double h)
    {
        if (n < 2 || !(h > 0))
            throw DomainError("sample_gradient_one_form: need n >= 2 and h > 0");
        OneFormSample s;
        s.n = n;
        s.h = h;
        const size_t side = static_cast<size_t>(2 * n + 1);
        s.f1.resize(side * side);
        s.f2.resize(side * side);
        const double n1 = std::cos(angle), n2 = std::sin(angle);
        for (int i = -n; i <= n; i++)
            for (int j = -n; j <= n; j++)
            {
                double u = n1 * (i * h) + n2 * (j * h);
                double gv = g(u);
                s.f1[s.index(i, j)] = n1 * gv;
                s.f2[s.index(i, j)] = n2 * gv;
            }
        return s;
    }

    double max_discrete_curl(const OneFormSample &s)
    {
        if (s.n < 1)
            throw DomainError("max_discrete_curl: grid too small");
        double worst = 0;
        for (int i = -s.n + 1; i <= s.n - 1; i++)
            for (int j = -s.n + 1; j <= s.n - 1; j++)
            {
                double d1f2 = (s.f2[s.index(i + 1, j)] - s.f2[s.index(i - 1, j)]) / (2.0 * s.h);
                double d2f1 = (s.f1[s.index(i, j + 1)] - s.f1[s.index(i, j - 1)]) / (2.0 * s.h);
                worst = std::max(worst, std::abs(d1f2 - d2f1));
            }
        return worst;
    }

} // namespace pecoh
