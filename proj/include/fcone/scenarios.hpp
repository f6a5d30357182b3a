#pragma once

#include <string>
#include <vector>

#include "fcone/ground.hpp"

namespace fcone {

// Deterministic instance builders: the fixed worked examples used across the
// test suite, and stopped-random-walk instances on unit grids where the exit
// distributions are exact solutions of the discrete Dirichlet problem.

// A domain is an interior mask placed on the lattice; mask cell (col, row)
// sits at lattice point (ox + col, oy + row). The boundary is derived: every
// lattice point 4-adjacent to an interior cell that is not itself interior.
struct GridDomain {
    long ox = 0;
    long oy = 0;
    std::vector<std::vector<bool>> interior;  // [row][col]
};

struct GridStart {
    long x = 0;
    long y = 0;
    Rational mass;
};

struct GridScenario {
    Instance instance;
    std::vector<std::size_t> harmonic_indices;  // one generator per boundary vertex
    std::vector<std::size_t> affine_indices;    // the trailing x and y generators
    // affine only, affine plus one separating boundary generator, everything
    std::vector<std::vector<std::size_t>> nested_subsets;
};

// Ground set = all domain points; μ sits on the starts; ν is the exact exit
// distribution of the simple random walk stopped on the boundary, summed
// over starts. Generators: one grid-harmonic per boundary vertex, then
// affine x and y. The resulting instance is always in order at level zero
// because the stopped walk is a martingale in every harmonic direction.
//
// Guards: DisconnectedInterior (empty or disconnected mask),
// StartOnBoundary (a start that is not strictly interior to one domain),
// DomainsAdjacent (two domains sharing or touching lattice points),
// AmbiguousBoundary (a derived boundary point surrounded on all four sides,
// which the Dirichlet solver could not pin down).
GridScenario gen_grid_harmonic(const std::vector<GridDomain>& domains,
                               const std::vector<GridStart>& starts);

// the named fixtures: "submartingale_shift", "symmetric_split",
// "two_islands", "relaxed_threshold". UnknownScenario otherwise.
Instance gen_classic(const std::string& name);

// one plus-shaped domain, start at the center, uniform exit law
GridScenario grid_single();

// a staircase bowl with a small separate domain nested inside the bowl's
// convex hull, one start in each; the affine directions alone cannot split
// the two starts but any bowl-boundary generator can
GridScenario grid_two_domains();

// tabulated real and imaginary parts of z^m, m = 1..max_degree, evaluated at
// the (planar) ground points; NotPlanar off the plane. The rounded overload
// snaps every value to the nearest multiple of 1/denominator.
std::vector<GeneratorSpec> gen_harmonic_polynomials(const GroundSet& ground, int max_degree);
std::vector<GeneratorSpec> gen_harmonic_polynomials(const GroundSet& ground, int max_degree,
                                                    long denominator);

}  // namespace fcone
