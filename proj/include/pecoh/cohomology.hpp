#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pecoh/linalg.hpp"
#include "pecoh/penrose.hpp"

namespace pecoh
{

    // Everything here is exact. "Candidates" are eigenvector formulas that were
    // published alongside the substitution matrix; each one is checked against
    // sigma literally, and when the literal form fails an exact check, a minimal
    // corrected form is checked and reported as such instead of silently fixed.
    enum class CandidateStatus
    {
        verified,
        failed,
        corrected_candidate_verified,
    };

    std::string to_string(CandidateStatus s);

    struct EigReport
    {
        std::string label;         // which candidate family and branch
        CycloNum eigenvalue;       // exact
        int eigenspace_dim = 0;    // dimension over Q(z) of ker(sigma - lambda)
        CandidateStatus status = CandidateStatus::failed;
        bool printed_ok = false;   // the literal published tuple satisfied the equation
        bool identities_ok = false; // side identities (rotation/reflection behaviour)
        std::vector<CycloNum> printed;   // 40-vector actually tested first
        std::vector<CycloNum> certified; // 40-vector that passed (empty if none)
    };

    // (x^2 - 3x + 1)(x^2 + x - 1): the factor of the characteristic polynomial
    // whose roots survive in the expanding/contracting pair structure.
    std::vector<Int> survivor_polynomial();
    std::vector<CycloNum> surviving_eigenvalues(); // tau^2, tau'^2, -tau, -tau'

    struct RealH2
    {
        int dim = 0;                                      // expected 8
        std::vector<std::pair<CycloNum, int>> eigen_dims; // (eigenvalue, dim) pairs
        IntMatrix survivor_kernel;                        // 40 x dim saturated integer basis
        bool factorization_certified = false; // charpoly = survivor part * h, gcd(h, surv) = 1
        bool decomposition_certified = false; // kernel(surv) + kernel(h) spans exactly
        Rational trace_rotation;              // trace of R restricted to the kernel
        Rational trace_reflection;            // trace of S restricted to the kernel
    };

    RealH2 real_h2();

    // The three published eigenvector families, by the block shape of the
    // repeated 10-vector: all-ones, alternating signs, and the discrete
    // harmonics xi^l. Two branches each (golden pair).
    std::vector<EigReport> verify_uniform_candidates();
    std::vector<EigReport> verify_alternating_candidates();
    std::vector<EigReport> verify_harmonic_candidates();

    struct GeneratorReport
    {
        std::vector<std::vector<CycloNum>> generators; // B1..B4 as 40-vectors
        std::vector<std::vector<CycloNum>> span_coefficients; // coefficients on the branch pair
        bool printed_third_in_span = false; // the literal published B3 lies in its span?
        int independence_rank = 0;          // rank of B1..B4 inside the survivor kernel
    };

    GeneratorReport comb_generators();

    struct IntegerH2
    {
        int gamma_rank = 0;        // rank of the saturated image of the survivor polynomial
        LatticeQuotient quotient;  // Z^40 / Gamma
        IntMatrix induced;         // induced endomorphism of the quotient
        Int induced_det = 0;
        bool induced_unimodular = false;
    };

    // Integer-level invariant for m = sigma or its transpose.
    IntegerH2 integer_h2(const IntMatrix &m);

    struct D10Report
    {
        Rational trace_rotation;
        Rational trace_reflection;
        // real irreducible characters of the dihedral group of order 20
        std::vector<std::pair<std::string, int>> multiplicities;  // via character inner products
        std::vector<std::pair<std::string, int>> projector_ranks; // rank of the isotypic projector
        bool routes_agree = false;
        // ranks of the isotypic sublattices of the integer kernel, grouped into
        // rational components (the two 2-dim harmonics fuse over Q)
        std::vector<std::pair<std::string, int>> integer_isotypic_ranks;
    };

    D10Report d10_decomposition();

    struct H0Report
    {
        int dim = 1;
        std::string description;
    };

    H0Report h0();

} // namespace pecoh
