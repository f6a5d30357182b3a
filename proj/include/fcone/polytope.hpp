#pragma once

#include <cstddef>

#include "fcone/rational.hpp"

namespace fcone {

// Vertex-listed convex polytopes in evaluation coordinates. All predicates
// are decided by exact feasibility or optimization, never by rounding.

struct Polytope {
    std::size_t ambient_dim = 0;
    Mat vertices;                // irredundant, first-seen order
    std::size_t affine_dim = 0;  // rank of the difference set
};

// hull of the given points: exact duplicates dropped, then a point is kept
// iff it is not a convex combination of the remaining ones
Polytope make_polytope(const Mat& points);  // EmptySupport on an empty list

bool hull_contains(const Polytope& p, const Vec& point);

// strict relative-interior membership: some representation weights every
// vertex positively (maximize the smallest weight, ask for > 0)
bool rint_contains(const Polytope& p, const Vec& point);

// relative interiors meet: a common point representable with all-positive
// weights on both vertex lists; polytopes sharing only boundary stay apart
bool rint_intersects(const Polytope& p, const Polytope& q);  // DimensionMismatch

bool hull_equal(const Polytope& p, const Polytope& q);  // DimensionMismatch

// minimal face of p containing the point: vertex v belongs iff the segment
// from v through the point extends strictly beyond it inside p
Polytope gleason_part(const Polytope& p, const Vec& point);  // PointOutside

}  // namespace fcone
