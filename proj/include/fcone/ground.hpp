#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "fcone/rational.hpp"

namespace fcone {

// Discrete model of the base space: finitely many labeled points with exact
// rational coordinates, probability measures on them, and a finite generator
// family G that spans the test-function space A = span(G ∪ {1}).

struct GroundPoint {
    std::string id;
    Vec coords;
};

class GroundSet {
public:
    explicit GroundSet(std::vector<GroundPoint> points);

    std::size_t size() const { return points_.size(); }
    std::size_t dimension() const { return dim_; }
    const GroundPoint& point(std::size_t i) const { return points_[i]; }
    const std::vector<GroundPoint>& points() const { return points_; }

    bool has(const std::string& id) const;
    std::size_t index_of(const std::string& id) const;  // throws SchemaError

private:
    std::vector<GroundPoint> points_;
    std::map<std::string, std::size_t> index_;
    std::size_t dim_ = 0;
};

// Probability measure stored by ground-point index. Masses are nonnegative
// and sum to one exactly.
class DiscreteMeasure {
public:
    DiscreteMeasure(const GroundSet& ground, const std::map<std::string, Rational>& masses);
    DiscreteMeasure(const GroundSet& ground, Vec masses);

    std::size_t size() const { return masses_.size(); }
    const Rational& mass(std::size_t i) const { return masses_[i]; }
    const Vec& masses() const { return masses_; }

    // indices with strictly positive mass, ascending
    std::vector<std::size_t> support() const;

private:
    Vec masses_;
};

enum class GenKind { Affine, Tabulated, Harmonic2D, GridHarmonic };

// How a generator was specified; enough to evaluate it at every ground point
// and to serialize it back out losslessly.
struct GeneratorSpec {
    GenKind kind = GenKind::Tabulated;

    Vec affine_coeffs;            // Affine: g(w) = coeffs.w + constant
    Rational affine_constant;

    std::map<std::string, Rational> tabulated;  // Tabulated: explicit values

    int harm_m = 1;               // Harmonic2D: Re or Im of (x+iy)^m
    bool harm_re = true;

    std::string grid_boundary;    // GridHarmonic: boundary vertex id
};

struct Generator {
    std::string id;
    Vec values;               // by ground-point index
    bool declared_symmetric;  // -g is also admissible (martingale direction)
    GeneratorSpec spec;
};

// Values of the discrete harmonic extension of the indicator of `boundary_id`
// on the unit-grid component containing it: the component is grown by exact
// unit-step 4-adjacency among ground points, its interior is the cells with
// all four neighbors present, and the extension solves the 5-point Dirichlet
// problem with value 1 at boundary_id and 0 at every other non-interior cell.
// Points outside the component get 0.
Vec grid_harmonic_values(const GroundSet& ground, const std::string& boundary_id);

// The generator family together with everything derived from it: a basis of
// A = span(G ∪ {1}) chosen greedily (constant first, then input order), the
// evaluation rows Φ(ω) in that basis, and per-generator lineality flags
// marking the directions along which -g lies back in Cone(G).
class GeneratorSet {
public:
    GeneratorSet(const GroundSet& ground, std::vector<Generator> generators);

    const std::vector<Generator>& generators() const { return generators_; }
    std::size_t count() const { return generators_.size(); }
    std::size_t n_points() const { return n_points_; }

    // basis()[k] is a value vector over ground points; basis()[0] is all ones
    const Mat& basis() const { return basis_; }
    const std::vector<std::string>& basis_labels() const { return basis_labels_; }
    std::size_t dim() const { return basis_.size(); }

    const std::vector<bool>& lineality_flags() const { return lineality_; }
    bool fully_lineal() const;  // every generator flagged

    bool separates_points() const { return separates_; }

    // evaluation matrix: one row per ground point, one column per basis element
    const Mat& evaluation() const { return eval_; }
    const Vec& phi(std::size_t point_index) const { return eval_[point_index]; }

    // the same construction restricted to a subset of generators (apirc Z-sets);
    // basis, flags and Φ are all recomputed within the subset
    GeneratorSet subset(const std::vector<std::size_t>& generator_indices) const;

private:
    GeneratorSet() = default;
    void derive();

    std::size_t n_points_ = 0;
    std::vector<Generator> generators_;
    Mat basis_;
    std::vector<std::string> basis_labels_;
    std::vector<bool> lineality_;
    bool separates_ = false;
    Mat eval_;
};

// evaluates specs at every ground point and derives the basis data.
// generator ids are "g0", "g1", ... in input order.
GeneratorSet build_generator_set(const GroundSet& ground, const std::vector<GeneratorSpec>& specs);

enum class Weight { One, OnePlusMaxnorm };

// p(ω) per ground point: 1, or 1 + max|coord|.
Vec weight_values(const GroundSet& ground, Weight weight);

// max over points of |values| / weights (the growth seminorm of g against p).
Rational growth_norm(const Vec& values, const Vec& weights);

// true iff Φ(ω) lies in the convex hull of {Φ(s) : s ∈ S}, decided exactly.
bool f_convex_hull_membership(const std::vector<std::size_t>& S, std::size_t omega,
                              const GeneratorSet& gs);

// One self-contained problem instance as read from or written to JSON.
struct Instance {
    GroundSet ground;
    DiscreteMeasure mu;
    DiscreteMeasure nu;
    GeneratorSet gens;
    Weight weight = Weight::One;
};

}  // namespace fcone
