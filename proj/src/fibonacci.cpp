#include "pecoh/fibonacci.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace pecoh
{

    std::string fibonacci_word(int level, int level_cap)
    {
        if (level < 0 || level > level_cap)
            throw DomainError("fibonacci_word: level out of range");
        std::string w = "a";
        for (int step = 0; step < level; step++)
        {
            std::string next;
            next.reserve(2 * w.size());
            for (char c : w)
                next += (c == 'a') ? "ab" : "a";
            w.swap(next);
        }
        return w;
    }

    IntMatrix fibonacci_substitution_matrix()
    {
        IntMatrix m(2, 2);
        m.at(0, 0) = 1; // a -> ab
        m.at(1, 0) = 1;
        m.at(0, 1) = 1; // b -> a
        m.at(1, 1) = 0;
        return m;
    }

    std::array<long, 2> letter_counts(const std::string &word)
    {
        std::array<long, 2> counts = {0, 0};
        for (char c : word)
        {
            if (c == 'a')
                counts[0]++;
            else if (c == 'b')
                counts[1]++;
            else
                throw DomainError("letter_counts: alphabet is {a, b}");
        }
        return counts;
    }

    namespace
    {
        CycloNum letter_length(char c)
        {
            if (c == 'a')
                return CycloNum::tau_plus();
            if (c == 'b')
                return CycloNum(1);
            throw DomainError("fibonacci realization: alphabet is {a, b}");
        }
    }

    PointPattern fibonacci_realization(const std::string &word)
    {
        PointPattern p;
        p.one_d = true;
        CycloNum t;
        for (char c : word)
        {
            p.points.push_back(t);
            p.labels.push_back(c == 'a' ? 0 : 1);
            t += letter_length(c);
        }
        return p;
    }

    PointPattern fibonacci_midpoints(const std::string &word)
    {
        PointPattern p;
        p.one_d = true;
        CycloNum t;
        for (char c : word)
        {
            CycloNum len = letter_length(c);
            p.points.push_back(t + len * Rational(1, 2));
            p.labels.push_back(c == 'a' ? 0 : 1);
            t += len;
        }
        return p;
    }

    CycloNum fibonacci_total_length(const std::string &word)
    {
        CycloNum t;
        for (char c : word)
            t += letter_length(c);
        return t;
    }

    DirectLimit fibonacci_h1()
    {
        return direct_limit(fibonacci_substitution_matrix());
    }

    namespace
    {
        double simpson_fixed(const std::function<double(double)> &f, double a, double b)
        {
            // composite Simpson, fixed resolution; plenty for the smooth bump
            const int n = 64; // even
            double h = (b - a) / n, acc = f(a) + f(b);
            for (int i = 1; i < n; i++)
                acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
            return acc * h / 3.0;
        }

        // antiderivative of the radial profile along the line, from -scale
        double phi0(const BumpProfile &profile, double u)
        {
            if (u <= -profile.scale)
                return 0.0;
            if (u >= profile.scale)
                return profile.mean;
            return simpson_fixed([&](double t) { return profile(t); }, -profile.scale, u);
        }

        // F(x) = sum over pattern points p of phi0(x - p), offsets exact before
        // embedding and contributions summed in sorted order, so sites with
        // equal exact configurations get bit-identical local parts.
        double primitive_value(const PointPattern &pattern,
                               const std::vector<std::pair<double, size_t>> &order,
                               const BumpProfile &profile, const CycloNum &x, double xf)
        {
            const double s = profile.scale, slack = 1e-6;
            auto first = std::lower_bound(order.begin(), order.end(),
                                          std::make_pair(xf - s - slack, size_t{0}));
            double full = profile.mean * static_cast<double>(first - order.begin());
            std::vector<double> near;
            for (auto it = first; it != order.end() && it->first <= xf + s + slack; ++it)
                near.push_back((x - pattern.points[it->second]).embed().real());
            std::sort(near.begin(), near.end());
            double acc = full;
            for (double u : near)
                acc += phi0(profile, u);
            return acc;
        }
    }

    PrimitiveProbe primitive_probe(const PointPattern &pattern, const BumpProfile &profile,
                                   const Rational &lo, const Rational &hi,
                                   const Rational &step, const Rational &key_radius_sq,
                                   double tol)
    {
        pattern.validate();
        if (!pattern.one_d)
            throw DomainError("primitive_probe: one-dimensional patterns only");
        if (profile.dim != 1)
            throw DomainError("primitive_probe: profile must be one-dimensional");
        if (step <= 0 || hi <= lo || key_radius_sq <= 0)
            throw DomainError("primitive_probe: bad grid parameters");
        if (step.get_d() > profile.scale / 8.0 + 1e-12)
            throw DomainError("primitive_probe: sampling too sparse");

        Rational span = (hi - lo) / step;
        Int whole;
        mpz_fdiv_q(whole.get_mpz_t(), span.get_num().get_mpz_t(), span.get_den().get_mpz_t());
        if (!whole.fits_slong_p() || whole.get_si() < 1 || whole.get_si() > 5000000)
            throw DomainError("primitive_probe: grid too small or too large");
        const long m = whole.get_si();

        std::vector<std::pair<double, size_t>> order(pattern.size());
        for (size_t i = 0; i < pattern.size(); i++)
            order[i] = {pattern.points[i].embed().real(), i};
        std::sort(order.begin(), order.end());

        PrimitiveProbe probe;
        probe.grid_step = step.get_d();
        probe.grid_points = static_cast<size_t>(m) + 1;

        // least-squares growth rate of F over the uniform grid
        double xbar = 0, fbar = 0;
        std::vector<double> gx(probe.grid_points);
        probe.grid_values.resize(probe.grid_points);
        for (long j = 0; j <= m; j++)
        {
            Rational xr = lo + Rational(j) * step;
            CycloNum xq(xr);
            gx[static_cast<size_t>(j)] = xr.get_d();
            probe.grid_values[static_cast<size_t>(j)] =
                primitive_value(pattern, order, profile, xq, gx[static_cast<size_t>(j)]);
            xbar += gx[static_cast<size_t>(j)];
            fbar += probe.grid_values[static_cast<size_t>(j)];
        }
        xbar /= static_cast<double>(probe.grid_points);
        fbar /= static_cast<double>(probe.grid_points);
        double num = 0, den = 0;
        for (size_t j = 0; j < probe.grid_points; j++)
        {
            num += (gx[j] - xbar) * (probe.grid_values[j] - fbar);
            den += (gx[j] - xbar) * (gx[j] - xbar);
        }
        probe.lsq_slope = num / den;

        // pattern-anchored sites inside the window: exact repetitions occur
        // there, unlike on the rational grid
        const double lof = lo.get_d(), hif = hi.get_d();
        std::vector<size_t> anchors;
        for (const auto &[pos, idx] : order)
            if (pos >= lof && pos <= hif)
                anchors.push_back(idx);

        std::vector<double> af(anchors.size());
        std::vector<double> ax(anchors.size());
        std::vector<PatchKey> keys(anchors.size());
        const double radius = std::sqrt(key_radius_sq.get_d());
        for (size_t k = 0; k < anchors.size(); k++)
        {
            const CycloNum &site = pattern.points[anchors[k]];
            ax[k] = site.embed().real();
            af[k] = primitive_value(pattern, order, profile, site, ax[k]);

            auto first = std::lower_bound(order.begin(), order.end(),
                                          std::make_pair(ax[k] - radius - 1e-6, size_t{0}));
            PatchKey key;
            for (auto it = first; it != order.end() && it->first <= ax[k] + radius + 1e-6; ++it)
            {
                CycloNum off = pattern.points[it->second] - site;
                if (cmp_abs2(off, key_radius_sq) <= 0)
                    key.atoms.emplace_back(pattern.labels[it->second], off);
            }
            std::sort(key.atoms.begin(), key.atoms.end(),
                      [](const auto &a, const auto &b)
                      {
                          if (a.first != b.first)
                              return a.first < b.first;
                          return cmp_points(a.second, b.second) < 0;
                      });
            keys[k] = key;
        }

        std::map<PatchKey, std::vector<size_t>> groups;
        for (size_t k = 0; k < keys.size(); k++)
            groups[keys[k]].push_back(k);

        // the matched pair with the widest separation gives the detrending slope
        for (const auto &[key, members] : groups)
            if (members.size() >= 2)
            {
                size_t a = members.front(), b = members.back();
                if (!probe.matched_pair ||
                    ax[b] - ax[a] > ax[probe.matched_pair->second] - ax[probe.matched_pair->first])
                    probe.matched_pair = std::make_pair(a, b);
            }
        if (probe.matched_pair)
        {
            auto [a, b] = *probe.matched_pair;
            probe.matched_slope = (af[b] - af[a]) / (ax[b] - ax[a]);
            probe.matched_pair = std::make_pair(anchors[a], anchors[b]);
        }
        probe.slope_used = probe.matched_slope.value_or(probe.lsq_slope);

        EquivarianceReport rep;
        rep.group_count = static_cast<int>(groups.size());
        for (const auto &[key, members] : groups)
        {
            size_t ilo = members.front(), ihi = members.front();
            auto detrended = [&](size_t k) { return af[k] - probe.slope_used * ax[k]; };
            for (size_t k : members)
            {
                if (detrended(k) < detrended(ilo))
                    ilo = k;
                if (detrended(k) > detrended(ihi))
                    ihi = k;
            }
            double spread = detrended(ihi) - detrended(ilo);
            if (spread > rep.max_spread)
            {
                rep.max_spread = spread;
                rep.witness = std::make_pair(anchors[ilo], anchors[ihi]);
            }
        }
        rep.pass = rep.max_spread <= tol;
        probe.equivariance = rep;
        return probe;
    }

} // namespace pecoh
