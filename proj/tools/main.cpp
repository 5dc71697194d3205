#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pecoh/cohomology.hpp"
#include "pecoh/fibonacci.hpp"
#include "pecoh/json_io.hpp"
#include "pecoh/pattern.hpp"
#include "pecoh/penrose.hpp"
#include "pecoh/svg.hpp"

using namespace pecoh;

namespace
{

    Json float_tagged(double v)
    {
        Json j;
        j["float"] = v;
        j["embedding"] = 1;
        return j;
    }

    Json exact_cyclo(const CycloNum &c)
    {
        Json j;
        j["exact"] = cyclo_to_json(c);
        return j;
    }

    Json exact_rational(const Rational &r)
    {
        Json j;
        j["exact"] = r.get_num().get_str() + "/" + r.get_den().get_str();
        return j;
    }

    Json exact_int(const Int &n)
    {
        Json j;
        j["exact"] = n.get_str();
        return j;
    }

    void write_output(const std::string &out, const std::string &text)
    {
        if (out.empty())
            std::cout << text;
        else
            save_text_file(out, text);
    }

    void write_report(const std::string &out, const Json &j)
    {
        write_output(out, j.dump(2) + "\n");
    }

    PointPattern load_pattern(const std::string &path, const std::string &derive)
    {
        Json j = load_json_file(path);
        if (j.is_object() && j.contains("tiles"))
        {
            Patch p = patch_from_json(j);
            if (derive == "vertices")
                return vertices_pattern(p);
            return centers_pattern(p);
        }
        if (!derive.empty() && derive != "centers")
            throw SchemaError(path + ": --derive applies to patch files only");
        return pattern_from_json(j);
    }

    std::vector<size_t> all_sites(const PointPattern &p)
    {
        std::vector<size_t> s(p.size());
        for (size_t i = 0; i < s.size(); i++)
            s[i] = i;
        return s;
    }

    Json equivariance_json(const EquivarianceReport &rep,
                           const std::vector<size_t> &sites)
    {
        Json j;
        j["sites"] = sites.size();
        j["group_count"] = rep.group_count;
        j["max_spread"] = float_tagged(rep.max_spread);
        j["pass"] = rep.pass;
        if (rep.witness)
        {
            Json w;
            w["site_a"] = sites[rep.witness->first];
            w["site_b"] = sites[rep.witness->second];
            j["witness"] = w;
        }
        return j;
    }

    // ---- generate -----------------------------------------------------------

    struct GenerateArgs
    {
        int seed = 0;
        int depth = 0;
        int depth_cap = 10;
        std::string format = "json";
        std::string points; // empty, "centers" or "vertices"
        std::string out;
    };

    int run_generate(const GenerateArgs &a)
    {
        Patch p = generate_patch(a.seed, a.depth, a.depth_cap);
        if (!a.points.empty())
        {
            PointPattern pat =
                a.points == "vertices" ? vertices_pattern(p) : centers_pattern(p);
            write_report(a.out, pattern_to_json(pat));
            return 0;
        }
        if (a.format == "svg")
        {
            write_output(a.out, patch_to_svg(p));
            return 0;
        }
        write_report(a.out, patch_to_json(p));
        return 0;
    }

    // ---- cohomology ---------------------------------------------------------

    struct CohomologyArgs
    {
        bool real = false, integer = false, eigenvectors = false, d10 = false;
        bool generators = false, h0_flag = false;
        std::string out;
    };

    Json eig_json(const EigReport &e)
    {
        Json j;
        j["label"] = e.label;
        j["eigenvalue"] = exact_cyclo(e.eigenvalue);
        j["eigenspace_dim"] = e.eigenspace_dim;
        j["status"] = to_string(e.status);
        j["printed_ok"] = e.printed_ok;
        j["identities_ok"] = e.identities_ok;
        return j;
    }

    int run_cohomology(CohomologyArgs a)
    {
        if (!a.real && !a.integer && !a.eigenvectors && !a.d10 && !a.generators &&
            !a.h0_flag)
            a.real = a.integer = a.eigenvectors = a.d10 = a.generators = a.h0_flag = true;

        Json rep;
        bool ok = true;
        Json violations = Json::array();

        if (a.real)
        {
            RealH2 r = real_h2();
            Json j;
            j["dim"] = r.dim;
            Json dims = Json::array();
            for (const auto &[ev, d] : r.eigen_dims)
            {
                Json e;
                e["eigenvalue"] = exact_cyclo(ev);
                e["dim"] = d;
                dims.push_back(e);
            }
            j["eigen_dims"] = dims;
            j["factorization_certified"] = r.factorization_certified;
            j["decomposition_certified"] = r.decomposition_certified;
            j["trace_rotation"] = exact_rational(r.trace_rotation);
            j["trace_reflection"] = exact_rational(r.trace_reflection);
            rep["real"] = j;
            if (r.dim != 8 || !r.factorization_certified || !r.decomposition_certified)
            {
                ok = false;
                violations.push_back("real: expected a certified 8-dimensional complement");
            }
        }
        if (a.eigenvectors)
        {
            Json fams = Json::array();
            for (const auto &family :
                 {verify_uniform_candidates(), verify_alternating_candidates(),
                  verify_harmonic_candidates()})
                for (const EigReport &e : family)
                {
                    fams.push_back(eig_json(e));
                    if (e.status == CandidateStatus::failed)
                    {
                        ok = false;
                        violations.push_back("eigenvector candidate failed: " + e.label);
                    }
                }
            rep["eigenvectors"] = fams;
        }
        if (a.generators)
        {
            GeneratorReport g = comb_generators();
            Json j;
            j["count"] = g.generators.size();
            Json coeffs = Json::array();
            for (const auto &pair : g.span_coefficients)
            {
                Json c = Json::array();
                for (const CycloNum &x : pair)
                    c.push_back(exact_cyclo(x));
                coeffs.push_back(c);
            }
            j["span_coefficients"] = coeffs;
            j["printed_third_in_span"] = g.printed_third_in_span;
            j["independence_rank"] = g.independence_rank;
            rep["generators"] = j;
            if (g.independence_rank != 4)
            {
                ok = false;
                violations.push_back("generators: expected independence rank 4");
            }
        }
        if (a.integer)
        {
            Json both = Json::array();
            IntMatrix sigma = sigma_matrix();
            const std::pair<std::string, IntMatrix> cases[] = {
                {"sigma", sigma}, {"sigma_transpose", sigma.transpose()}};
            for (const auto &[name, m] : cases)
            {
                IntegerH2 z = integer_h2(m);
                Json j;
                j["matrix"] = name;
                j["gamma_rank"] = z.gamma_rank;
                j["free_rank"] = z.quotient.free_rank;
                Json tor = Json::array();
                for (const Int &t : z.quotient.torsion)
                    tor.push_back(t.get_str());
                j["torsion"] = tor;
                j["induced_det"] = exact_int(z.induced_det);
                j["induced_unimodular"] = z.induced_unimodular;
                both.push_back(j);
                if (z.quotient.free_rank != 8 || !z.quotient.torsion.empty() ||
                    !z.induced_unimodular)
                {
                    ok = false;
                    violations.push_back("integer (" + name +
                                         "): expected free rank 8, no torsion, "
                                         "unimodular induced map");
                }
            }
            rep["integer"] = both;
        }
        if (a.d10)
        {
            D10Report d = d10_decomposition();
            Json j;
            j["trace_rotation"] = exact_rational(d.trace_rotation);
            j["trace_reflection"] = exact_rational(d.trace_reflection);
            auto table = [](const std::vector<std::pair<std::string, int>> &t)
            {
                Json j2 = Json::object();
                for (const auto &[k, v] : t)
                    j2[k] = v;
                return j2;
            };
            j["multiplicities"] = table(d.multiplicities);
            j["projector_ranks"] = table(d.projector_ranks);
            j["integer_isotypic_ranks"] = table(d.integer_isotypic_ranks);
            j["routes_agree"] = d.routes_agree;
            rep["d10"] = j;
            if (!d.routes_agree)
            {
                ok = false;
                violations.push_back("d10: projector and character routes disagree");
            }
        }
        if (a.h0_flag)
        {
            H0Report h = h0();
            Json j;
            j["dim"] = h.dim;
            j["description"] = h.description;
            rep["h0"] = j;
        }

        rep["all_verified"] = ok;
        if (!ok)
            rep["violations"] = violations;
        write_report(a.out, rep);
        return ok ? 0 : 2;
    }

    // ---- equivariance -------------------------------------------------------

    struct EquivarianceArgs
    {
        std::string pattern, derive, function_file, builtin = "comb";
        double scale = 1.0, mean = 0.0;
        std::string radius_sq = "1/1";
        double tol = 1e-9;
        bool float_keys = false;
        double float_radius = 1.0, guard = 1e-9, key_tol = 1e-6;
        double reliable_min = 0.0, margin = 1.6180339887498949;
        std::string out;
    };

    int run_equivariance(const EquivarianceArgs &a)
    {
        PointPattern p = load_pattern(a.pattern, a.derive);
        std::vector<size_t> sites = a.reliable_min > 0
                                        ? reliable_sites(p, a.reliable_min, a.margin)
                                        : all_sites(p);
        std::vector<double> values;
        std::string source;
        if (!a.function_file.empty())
        {
            Json f = load_json_file(a.function_file);
            if (!f.is_object() || !f.contains("values") || !f["values"].is_array())
                throw SchemaError("function: expected an object with a \"values\" array");
            if (f.contains("sites"))
            {
                if (!f["sites"].is_array() || f["sites"].size() != f["values"].size())
                    throw SchemaError("function.sites: must match values in length");
                sites.clear();
                for (const auto &s : f["sites"])
                {
                    if (!s.is_number_integer() || s.get<long>() < 0 ||
                        s.get<size_t>() >= p.size())
                        throw SchemaError("function.sites: index out of range");
                    sites.push_back(s.get<size_t>());
                }
            }
            else if (f["values"].size() != p.size())
                throw SchemaError("function.values: must cover every pattern point "
                                  "when no sites are given");
            else
                sites = all_sites(p); // values align with the full pattern
            for (const auto &v : f["values"])
            {
                if (!v.is_number())
                    throw SchemaError("function.values: expected numbers");
                values.push_back(v.get<double>());
            }
            source = "file:" + a.function_file;
        }
        else if (a.builtin == "coordinate")
        {
            for (size_t s : sites)
                values.push_back(p.points[s].embed().real());
            source = "coordinate";
        }
        else
        {
            BumpProfile profile(p.one_d ? 1 : 2, a.scale, a.mean);
            std::vector<CycloNum> queries;
            for (size_t s : sites)
                queries.push_back(p.points[s]);
            values = dirac_comb_convolve(p, profile, queries);
            source = "comb";
        }

        EquivarianceReport rep =
            a.float_keys
                ? check_equivariance_float(p, sites, values, a.float_radius, a.tol,
                                           FloatKeyOptions{a.guard, a.key_tol})
                : check_equivariance(p, sites, values, rational_from_text(a.radius_sq),
                                     a.tol);
        Json j;
        j["function"] = source;
        j["keys"] = a.float_keys ? "float" : "exact";
        j.update(equivariance_json(rep, sites));
        write_report(a.out, j);
        return rep.pass ? 0 : 2;
    }

    // ---- metric -------------------------------------------------------------

    struct MetricArgs
    {
        std::string a, b, derive;
        double candidate_radius = 2.0, max_radius = 64.0;
        double margin = 1.6180339887498949, probe_radius = 2.0;
        std::string pitch = "0/1";
        int span = 0, max_checks = 32;
        std::string out;
    };

    int run_metric(const MetricArgs &a)
    {
        PointPattern pa = load_pattern(a.a, a.derive);
        PointPattern pb = load_pattern(a.b, a.derive);
        MetricOptions opt;
        opt.candidate_radius = a.candidate_radius;
        opt.max_radius = a.max_radius;
        opt.margin = a.margin;
        opt.probe_radius = a.probe_radius;
        opt.grid_pitch = CycloNum(rational_from_text(a.pitch));
        opt.grid_span = a.span;
        opt.max_exact_checks = a.max_checks;
        MetricResult r = pattern_metric(pa, pb, opt);
        Json j;
        j["bound"] = float_tagged(r.bound);
        j["witness_radius"] = exact_rational(r.witness_radius);
        j["nontrivial"] = r.nontrivial;
        j["exact_checks"] = r.exact_checks;
        if (r.nontrivial)
        {
            j["center_a"] = point_to_json(r.center_a);
            j["center_b"] = point_to_json(r.center_b);
        }
        write_report(a.out, j);
        return 0;
    }

    // ---- fibonacci ----------------------------------------------------------

    struct FibonacciArgs
    {
        int level = 10;
        bool h1 = false, word = false, realize = false, midpoints = false;
        bool probe = false;
        std::string probe_lo = "0/1", probe_hi = "1/1", probe_step = "1/20";
        std::string probe_key_radius_sq = "4/1";
        double probe_scale = 0.4, probe_mean = 0.0, probe_tol = 1e-6;
        bool probe_values = false;
        std::string out;
    };

    int run_fibonacci(FibonacciArgs a)
    {
        if (!a.h1 && !a.word && !a.realize && !a.midpoints && !a.probe)
            a.h1 = true;
        Json rep;
        rep["level"] = a.level;
        std::string w = fibonacci_word(a.level);
        rep["length"] = w.size();
        int exit_code = 0;

        if (a.word)
            rep["word"] = w;
        if (a.h1)
        {
            DirectLimit d = fibonacci_h1();
            Json j;
            j["free_rank"] = d.quotient.free_rank;
            Json tor = Json::array();
            for (const Int &t : d.quotient.torsion)
                tor.push_back(t.get_str());
            j["torsion"] = tor;
            j["induced_det"] = exact_int(d.induced_det);
            j["invertible"] = d.invertible;
            rep["h1"] = j;
        }
        if (a.realize)
            rep["realization"] = pattern_to_json(fibonacci_realization(w));
        if (a.midpoints)
            rep["midpoints"] = pattern_to_json(fibonacci_midpoints(w));
        if (a.probe)
        {
            PointPattern mid = fibonacci_midpoints(w);
            BumpProfile profile(1, a.probe_scale, a.probe_mean);
            PrimitiveProbe pr = primitive_probe(
                mid, profile, rational_from_text(a.probe_lo),
                rational_from_text(a.probe_hi), rational_from_text(a.probe_step),
                rational_from_text(a.probe_key_radius_sq), a.probe_tol);
            Json j;
            j["grid_step"] = float_tagged(pr.grid_step);
            j["grid_points"] = pr.grid_points;
            j["lsq_slope"] = float_tagged(pr.lsq_slope);
            if (pr.matched_slope)
            {
                j["matched_slope"] = float_tagged(*pr.matched_slope);
                Json mp;
                mp["point_a"] = pr.matched_pair->first;
                mp["point_b"] = pr.matched_pair->second;
                j["matched_pair"] = mp;
            }
            j["slope_used"] = float_tagged(pr.slope_used);
            j["equivariance"] = equivariance_json(
                pr.equivariance, all_sites(mid)); // witness already pattern-indexed
            if (a.probe_values)
            {
                Json vals = Json::array();
                for (double v : pr.grid_values)
                    vals.push_back(v);
                j["grid_values"] = vals;
            }
            rep["probe"] = j;
            if (!pr.equivariance.pass)
                exit_code = 2;
        }
        write_report(a.out, rep);
        return exit_code;
    }

    // ---- frequencies --------------------------------------------------------

    struct FrequenciesArgs
    {
        int depth = -1, seed = 0, fibonacci_level = -1;
        std::string out;
    };

    int run_frequencies(const FrequenciesArgs &a)
    {
        Json rep;
        std::vector<CycloNum> freq = tile_frequencies_exact();
        Json classes = Json::array();
        for (int id = 0; id < 40; id++)
        {
            Json j;
            j["prototile"] = id;
            j["frequency"] = exact_cyclo(freq[static_cast<size_t>(id)]);
            j["value"] = float_tagged(freq[static_cast<size_t>(id)].embed().real());
            classes.push_back(j);
        }
        rep["classes"] = classes;

        if (a.depth >= 0)
        {
            Patch p = generate_patch(a.seed, a.depth);
            std::vector<long> counts = census_of_patch(p);
            long total = 0;
            for (long c : counts)
                total += c;
            double max_rel = 0;
            Json emp = Json::array();
            for (int id = 0; id < 40; id++)
            {
                double expected = freq[static_cast<size_t>(id)].embed().real();
                double got = static_cast<double>(counts[static_cast<size_t>(id)]) /
                             static_cast<double>(total);
                if (expected > 0)
                    max_rel = std::max(max_rel, std::abs(got - expected) / expected);
                Json j;
                j["prototile"] = id;
                j["count"] = counts[static_cast<size_t>(id)];
                j["fraction"] = float_tagged(got);
                emp.push_back(j);
            }
            Json e;
            e["seed"] = a.seed;
            e["depth"] = a.depth;
            e["tiles"] = total;
            e["by_class"] = emp;
            e["max_relative_error"] = float_tagged(max_rel);
            rep["empirical"] = e;
        }

        if (a.fibonacci_level >= 0)
        {
            std::string w = fibonacci_word(a.fibonacci_level);
            auto counts = letter_counts(w);
            double freq_a = static_cast<double>(counts[0]) /
                            static_cast<double>(counts[0] + counts[1]);
            double inv_tau = 1.0 / CycloNum::tau_plus().embed().real();
            Json j;
            j["level"] = a.fibonacci_level;
            j["count_long"] = counts[0];
            j["count_short"] = counts[1];
            j["frequency_long"] = float_tagged(freq_a);
            j["inverse_tau"] = float_tagged(inv_tau);
            j["abs_error"] = float_tagged(std::abs(freq_a - inv_tau));
            rep["fibonacci"] = j;
        }

        write_report(a.out, rep);
        return 0;
    }

    // ---- census -------------------------------------------------------------

    struct CensusArgs
    {
        std::string pattern, derive;
        std::string radius_sq = "1/1";
        bool float_keys = false;
        double float_radius = 1.0, guard = 1e-9, key_tol = 1e-6;
        double reliable_min = 0.0, margin = 1.6180339887498949;
        bool with_keys = false;
        std::string out;
    };

    int run_census(const CensusArgs &a)
    {
        PointPattern p = load_pattern(a.pattern, a.derive);
        std::vector<size_t> sites = a.reliable_min > 0
                                        ? reliable_sites(p, a.reliable_min, a.margin)
                                        : all_sites(p);
        Json rep;
        rep["points"] = p.size();
        rep["sites"] = sites.size();
        Json groups = Json::array();
        if (a.float_keys)
        {
            auto census =
                float_census(p, sites, a.float_radius, FloatKeyOptions{a.guard, a.key_tol});
            rep["keys"] = "float";
            for (const auto &members : census)
            {
                Json g;
                g["size"] = members.size();
                g["representative"] = members.front();
                groups.push_back(g);
            }
        }
        else
        {
            auto census = exact_census(p, sites, rational_from_text(a.radius_sq));
            rep["keys"] = "exact";
            for (const CensusGroup &cg : census)
            {
                Json g;
                g["size"] = cg.sites.size();
                g["representative"] = cg.sites.front();
                g["atoms"] = cg.key.atoms.size();
                if (a.with_keys)
                {
                    Json atoms = Json::array();
                    for (const auto &[label, off] : cg.key.atoms)
                    {
                        Json atom;
                        atom["label"] = label;
                        atom["offset"] = point_to_json(off);
                        atoms.push_back(atom);
                    }
                    g["key"] = atoms;
                }
                groups.push_back(g);
            }
        }
        rep["group_count"] = groups.size();
        rep["groups"] = groups;
        write_report(a.out, rep);
        return 0;
    }

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"pecoh: exact pattern-equivariant cohomology toolkit for the "
                 "Penrose tiling and its Fibonacci line subsystem"};
    app.require_subcommand(1);
    app.set_config("--config");

    GenerateArgs gen;
    CLI::App *cgen = app.add_subcommand("generate", "Substitution patches as JSON/SVG");
    cgen->add_option("--seed", gen.seed, "Prototile id of the seed tile")
        ->check(CLI::Range(0, 39));
    cgen->add_option("--depth", gen.depth, "Substitution steps")->required();
    cgen->add_option("--depth-cap", gen.depth_cap, "Refuse depths beyond this");
    cgen->add_option("--format", gen.format, "json or svg")
        ->check(CLI::IsMember({"json", "svg"}));
    cgen->add_option("--points", gen.points,
                     "Emit a point pattern instead of the patch")
        ->check(CLI::IsMember({"centers", "vertices"}));
    cgen->add_option("--out", gen.out, "Output file (default stdout)");

    CohomologyArgs coh;
    CLI::App *ccoh = app.add_subcommand("cohomology", "Exact H2 reports");
    ccoh->add_flag("--real", coh.real, "Real eigenspace decomposition");
    ccoh->add_flag("--integer", coh.integer, "Integer direct limit");
    ccoh->add_flag("--verify-eigenvectors", coh.eigenvectors,
                   "Check the published eigenvector candidates");
    ccoh->add_flag("--d10", coh.d10, "Dihedral symmetry analysis");
    ccoh->add_flag("--generators", coh.generators, "Comb generator certificates");
    ccoh->add_flag("--h0", coh.h0_flag, "Connectedness rank");
    ccoh->add_option("--out", coh.out, "Output file (default stdout)");

    EquivarianceArgs eqv;
    CLI::App *ceqv =
        app.add_subcommand("equivariance", "Strong equivariance check of a function");
    ceqv->add_option("--pattern", eqv.pattern, "Pattern or patch JSON file")->required();
    ceqv->add_option("--derive", eqv.derive, "centers or vertices (patch input)")
        ->check(CLI::IsMember({"centers", "vertices"}));
    ceqv->add_option("--function", eqv.function_file,
                     "Sampled function JSON {sites?, values}");
    ceqv->add_option("--builtin", eqv.builtin, "comb or coordinate")
        ->check(CLI::IsMember({"comb", "coordinate"}));
    ceqv->add_option("--scale", eqv.scale, "Comb profile support radius");
    ceqv->add_option("--mean", eqv.mean, "Comb profile total integral");
    ceqv->add_option("--radius-sq", eqv.radius_sq, "Exact key radius^2, num/den");
    ceqv->add_option("--tol", eqv.tol, "Value spread tolerance");
    ceqv->add_flag("--float-keys", eqv.float_keys, "Tolerant float keys");
    ceqv->add_option("--float-radius", eqv.float_radius, "Float key radius");
    ceqv->add_option("--guard", eqv.guard, "Float key boundary guard band");
    ceqv->add_option("--key-tol", eqv.key_tol, "Float key comparison tolerance");
    ceqv->add_option("--reliable-min", eqv.reliable_min,
                     "Only sites with at least this reliable radius");
    ceqv->add_option("--margin", eqv.margin, "Reliability hull margin");
    ceqv->add_option("--out", eqv.out, "Output file (default stdout)");

    MetricArgs met;
    CLI::App *cmet = app.add_subcommand("metric", "Certified hull-metric upper bound");
    cmet->add_option("--a", met.a, "First pattern or patch file")->required();
    cmet->add_option("--b", met.b, "Second pattern or patch file")->required();
    cmet->add_option("--derive", met.derive, "centers or vertices (patch input)")
        ->check(CLI::IsMember({"centers", "vertices"}));
    cmet->add_option("--candidate-radius", met.candidate_radius,
                     "Shift candidates from point pairs within this radius");
    cmet->add_option("--max-radius", met.max_radius, "Cap on the certified radius");
    cmet->add_option("--margin", met.margin, "Reliability hull margin");
    cmet->add_option("--probe-radius", met.probe_radius, "Float pre-screen radius");
    cmet->add_option("--pitch", met.pitch, "Center grid pitch, num/den");
    cmet->add_option("--span", met.span, "Center grid span in pitch units");
    cmet->add_option("--max-checks", met.max_checks, "Exact verifications to attempt");
    cmet->add_option("--out", met.out, "Output file (default stdout)");

    FibonacciArgs fib;
    CLI::App *cfib = app.add_subcommand("fibonacci", "The 1D line subsystem");
    cfib->add_option("--level", fib.level, "Substitution level")->check(CLI::Range(0, 30));
    cfib->add_flag("--h1", fib.h1, "First cohomology of the direct limit");
    cfib->add_flag("--word", fib.word, "Include the substitution word");
    cfib->add_flag("--realize", fib.realize, "Include the exact cut-point pattern");
    cfib->add_flag("--midpoints", fib.midpoints, "Include the exact midpoint pattern");
    cfib->add_flag("--probe", fib.probe, "Run the comb primitive probe");
    cfib->add_option("--probe-lo", fib.probe_lo, "Window start, num/den");
    cfib->add_option("--probe-hi", fib.probe_hi, "Window end, num/den");
    cfib->add_option("--probe-step", fib.probe_step, "Grid step, num/den");
    cfib->add_option("--probe-scale", fib.probe_scale, "Profile support radius");
    cfib->add_option("--probe-mean", fib.probe_mean, "Profile total integral");
    cfib->add_option("--probe-key-radius-sq", fib.probe_key_radius_sq,
                     "Exact key radius^2, num/den");
    cfib->add_option("--probe-tol", fib.probe_tol, "Equivariance tolerance");
    cfib->add_flag("--probe-grid-values", fib.probe_values,
                   "Include the sampled primitive");
    cfib->add_option("--out", fib.out, "Output file (default stdout)");

    FrequenciesArgs frq;
    CLI::App *cfrq =
        app.add_subcommand("frequencies", "Exact tile frequencies and empirical counts");
    cfrq->add_option("--depth", frq.depth, "Also census a patch of this depth");
    cfrq->add_option("--seed", frq.seed, "Seed tile for the census")
        ->check(CLI::Range(0, 39));
    cfrq->add_option("--fibonacci-level", frq.fibonacci_level,
                     "Also report letter frequencies at this level")
        ->check(CLI::Range(0, 30));
    cfrq->add_option("--out", frq.out, "Output file (default stdout)");

    CensusArgs cns;
    CLI::App *ccns = app.add_subcommand("census", "Local configuration census");
    ccns->add_option("--pattern", cns.pattern, "Pattern or patch JSON file")->required();
    ccns->add_option("--derive", cns.derive, "centers or vertices (patch input)")
        ->check(CLI::IsMember({"centers", "vertices"}));
    ccns->add_option("--radius-sq", cns.radius_sq, "Exact key radius^2, num/den");
    ccns->add_flag("--float-keys", cns.float_keys, "Tolerant float keys");
    ccns->add_option("--float-radius", cns.float_radius, "Float key radius");
    ccns->add_option("--guard", cns.guard, "Float key boundary guard band");
    ccns->add_option("--key-tol", cns.key_tol, "Float key comparison tolerance");
    ccns->add_option("--reliable-min", cns.reliable_min,
                     "Only sites with at least this reliable radius");
    ccns->add_option("--margin", cns.margin, "Reliability hull margin");
    ccns->add_flag("--with-keys", cns.with_keys, "Include full exact keys");
    ccns->add_option("--out", cns.out, "Output file (default stdout)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try
    {
        if (cgen->parsed())
            return run_generate(gen);
        if (ccoh->parsed())
            return run_cohomology(coh);
        if (ceqv->parsed())
            return run_equivariance(eqv);
        if (cmet->parsed())
            return run_metric(met);
        if (cfib->parsed())
            return run_fibonacci(fib);
        if (cfrq->parsed())
            return run_frequencies(frq);
        if (ccns->parsed())
            return run_census(cns);
        std::cerr << "no command selected\n";
        return 1;
    }
    catch (const VerificationError &e)
    {
        Json j;
        j["verified"] = false;
        j["error"] = e.what();
        std::cout << j.dump(2) << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
