#pragma once

#include "qmut/coxeter.hpp"
#include "qmut/fork.hpp"

#include <optional>
#include <string>

namespace qmut {

// Rank-3 plane arrangement on the universal cover: vertical lines x = m,
// diagonal lines x + y = m, horizontal lines y = m, for every integer m.
// Marked points are the lattice points; cells are the triangles they cut out.
enum class Family { vertical = 0, diagonal = 1, horizontal = 2 };

struct CurvePoint {
    Rat x;
    Rat y;

    bool operator==(const CurvePoint&) const = default;
};

// Piecewise-linear curve.  Endpoints must be lattice points; every interior
// waypoint must avoid all three line families.
using Polyline = std::vector<CurvePoint>;

// Assignment of quiver vertices to line families via a linear ordering:
// order[0] labels the vertical family, order[1] the diagonal, order[2] the
// horizontal.
struct FamilyLabeling {
    LinearOrdering sigma;

    int vertex_of(Family f) const { return sigma.order[static_cast<std::size_t>(f)]; }

    Family family_of(int vertex) const {
        for (std::size_t p = 0; p < sigma.order.size(); ++p)
            if (sigma.order[p] == vertex) return static_cast<Family>(p);
        throw InputError("vertex " + std::to_string(vertex + 1) + " is not labeled");
    }
};

// Sequence of vertices whose lines the curve crosses, in order.  Rejects
// degenerate geometry: segments collinear with a grid line, crossings at
// points on two families at once, interior waypoints on a grid line, or
// endpoints off the lattice.
Word crossing_word(const Polyline& curve, const FamilyLabeling& lab);

// Crossing word is a reflection and the curve does not cross itself.
bool is_admissible_curve(const Polyline& curve, const FamilyLabeling& lab);

// No two segments cross or overlap anywhere except shared lattice endpoints
// and the joints between consecutive segments of one polyline.
bool non_crossing(const std::vector<Polyline>& curves);

// Searches for a curve anchored at the origin whose crossing word equals the
// given reflection; `bound` caps the placement attempts per start cell.  The
// result self-validates through crossing_word before being returned.
std::optional<Polyline> curve_for_reflection(const Word& reflection, const FamilyLabeling& lab,
                                             int bound = 8);

// Jointly non-crossing realization of several reflections, with bounded
// backtracking over placements and small translations.
std::optional<std::vector<Polyline>> curve_family(const std::vector<Word>& reflections,
                                                  const FamilyLabeling& lab, int bound = 8);

// SVG 1.1 document, 100 units per lattice cell, fixed palette, deterministic
// byte-for-byte output for equal inputs.
std::string render_svg(const std::vector<Polyline>& curves, int x0, int y0, int x1, int y1);

// Smallest integer window containing every curve, padded by one cell.
void svg_window(const std::vector<Polyline>& curves, int& x0, int& y0, int& x1, int& y1);

}  // namespace qmut
