#include "qmut/curves.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace qmut {

namespace {

Int rat_floor(const Rat& r) {
    const Int num = numerator(r);
    const Int den = denominator(r);
    Int q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
}

bool is_integer(const Rat& r) { return denominator(r) == 1; }

bool lattice_point(const CurvePoint& p) { return is_integer(p.x) && is_integer(p.y); }

void validate_polyline(const Polyline& curve) {
    if (curve.size() < 2) throw InputError("a curve needs at least two points");
    if (!lattice_point(curve.front()) || !lattice_point(curve.back()))
        throw InputError("curve endpoints must be lattice points");
    for (std::size_t t = 1; t + 1 < curve.size(); ++t) {
        const CurvePoint& p = curve[t];
        if (is_integer(p.x) || is_integer(p.y) || is_integer(p.x + p.y))
            throw InputError("interior point " + std::to_string(t + 1) +
                             " lies on a grid line");
    }
    for (std::size_t t = 1; t < curve.size(); ++t)
        if (curve[t] == curve[t - 1])
            throw InputError("repeated consecutive point " + std::to_string(t + 1));
}

struct Crossing {
    Rat t;
    Family fam;
};

}  // namespace

Word crossing_word(const Polyline& curve, const FamilyLabeling& lab) {
    validate_polyline(curve);

    Word word;
    for (std::size_t s = 0; s + 1 < curve.size(); ++s) {
        const CurvePoint& p = curve[s];
        const CurvePoint& q = curve[s + 1];

        std::vector<Crossing> cs;
        const auto sweep = [&](Family fam, const Rat& from, const Rat& to) {
            const Rat d = to - from;
            if (d == 0) {
                if (is_integer(from))
                    throw InputError("segment " + std::to_string(s + 1) +
                                     " is collinear with a grid line");
                return;
            }
            const Rat lo = std::min(from, to);
            const Rat hi = std::max(from, to);
            for (Int m = rat_floor(lo); m <= rat_floor(hi) + 1; ++m) {
                const Rat t = (Rat(m) - from) / d;
                if (t > 0 && t < 1) cs.push_back({t, fam});
            }
        };
        sweep(Family::vertical, p.x, q.x);
        sweep(Family::diagonal, p.x + p.y, q.x + q.y);
        sweep(Family::horizontal, p.y, q.y);

        std::sort(cs.begin(), cs.end(),
                  [](const Crossing& a, const Crossing& b) { return a.t < b.t; });
        for (std::size_t u = 1; u < cs.size(); ++u)
            if (cs[u].t == cs[u - 1].t)
                throw InputError("segment " + std::to_string(s + 1) +
                                 " crosses two grid lines at one point");
        for (const Crossing& c : cs) word.push_back(lab.vertex_of(c.fam));
    }
    return word;
}

bool is_admissible_curve(const Polyline& curve, const FamilyLabeling& lab) {
    const Word w = crossing_word(curve, lab);
    return is_reflection(w) && non_crossing({curve});
}

namespace {

Rat cross2(const Rat& ax, const Rat& ay, const Rat& bx, const Rat& by) {
    return ax * by - ay * bx;
}

struct Seg {
    CurvePoint a, b;
    std::size_t curve;
    std::size_t index;
};

bool endpoint_of(const CurvePoint& x, const Seg& s) { return x == s.a || x == s.b; }

bool contact_allowed(const CurvePoint& x, const Seg& s, const Seg& t) {
    if (!endpoint_of(x, s) || !endpoint_of(x, t)) return false;
    if (s.curve == t.curve && (s.index + 1 == t.index || t.index + 1 == s.index))
        return true;  // joint between consecutive segments
    return lattice_point(x);
}

// True when the closed segments meet only in an allowed contact point.
bool pair_ok(const Seg& s, const Seg& t) {
    const Rat d1x = s.b.x - s.a.x, d1y = s.b.y - s.a.y;
    const Rat d2x = t.b.x - t.a.x, d2y = t.b.y - t.a.y;
    const Rat rx = t.a.x - s.a.x, ry = t.a.y - s.a.y;
    const Rat denom = cross2(d1x, d1y, d2x, d2y);

    if (denom != 0) {
        const Rat u = cross2(rx, ry, d2x, d2y) / denom;
        const Rat v = cross2(rx, ry, d1x, d1y) / denom;
        if (u < 0 || u > 1 || v < 0 || v > 1) return true;
        const CurvePoint x{s.a.x + u * d1x, s.a.y + u * d1y};
        return contact_allowed(x, s, t);
    }

    if (cross2(rx, ry, d1x, d1y) != 0) return true;  // parallel, distinct lines

    // Collinear: compare parameter intervals along the dominant axis.
    const bool use_x = (d1x != 0);
    const auto coord = [&](const CurvePoint& p) { return use_x ? p.x : p.y; };
    Rat s_lo = std::min(coord(s.a), coord(s.b)), s_hi = std::max(coord(s.a), coord(s.b));
    Rat t_lo = std::min(coord(t.a), coord(t.b)), t_hi = std::max(coord(t.a), coord(t.b));
    const Rat lo = std::max(s_lo, t_lo);
    const Rat hi = std::min(s_hi, t_hi);
    if (lo > hi) return true;
    if (lo < hi) return false;  // genuine overlap

    // Single shared point on the common line.
    CurvePoint x = (coord(s.a) == lo) ? s.a : s.b;
    return contact_allowed(x, s, t);
}

}  // namespace

bool non_crossing(const std::vector<Polyline>& curves) {
    std::vector<Seg> segs;
    for (std::size_t c = 0; c < curves.size(); ++c) {
        if (curves[c].size() < 2) throw InputError("a curve needs at least two points");
        for (std::size_t i = 0; i + 1 < curves[c].size(); ++i)
            segs.push_back({curves[c][i], curves[c][i + 1], c, i});
    }
    for (std::size_t i = 0; i < segs.size(); ++i)
        for (std::size_t j = i + 1; j < segs.size(); ++j)
            if (!pair_ok(segs[i], segs[j])) return false;
    return true;
}

namespace {

struct Cell {
    long long ix;
    long long iy;
    int half;  // 0: lower-left triangle of the unit square, 1: upper-right

    bool operator==(const Cell&) const = default;
};

std::array<CurvePoint, 3> cell_vertices(const Cell& c) {
    const Rat x(c.ix), y(c.iy);
    if (c.half == 0)
        return {CurvePoint{x, y}, CurvePoint{x + 1, y}, CurvePoint{x, y + 1}};
    return {CurvePoint{x + 1, y}, CurvePoint{x, y + 1}, CurvePoint{x + 1, y + 1}};
}

Cell neighbor(const Cell& c, Family f) {
    if (c.half == 0) {
        switch (f) {
            case Family::vertical: return {c.ix - 1, c.iy, 1};
            case Family::diagonal: return {c.ix, c.iy, 1};
            case Family::horizontal: return {c.ix, c.iy - 1, 1};
        }
    } else {
        switch (f) {
            case Family::vertical: return {c.ix + 1, c.iy, 0};
            case Family::diagonal: return {c.ix, c.iy, 0};
            case Family::horizontal: return {c.ix, c.iy + 1, 0};
        }
    }
    throw InternalError("unreachable family");
}

// The six triangles incident to the anchor lattice point.
std::array<Cell, 6> cells_at(long long ax, long long ay) {
    return {Cell{ax, ay, 0},          Cell{ax - 1, ay, 0},     Cell{ax, ay - 1, 0},
            Cell{ax - 1, ay, 1},      Cell{ax, ay - 1, 1},     Cell{ax - 1, ay - 1, 1}};
}

CurvePoint waypoint_in(const Cell& c, Rng& rng) {
    const auto v = cell_vertices(c);
    const int wa = rng.uniform(1, 9);
    const int wb = rng.uniform(1, 9);
    const int wc = rng.uniform(1, 9);
    const Rat s(wa + wb + wc);
    return {(wa * v[0].x + wb * v[1].x + wc * v[2].x) / s,
            (wa * v[0].y + wb * v[1].y + wc * v[2].y) / s};
}

bool lex_less(const CurvePoint& a, const CurvePoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

// Each triangle has exactly one edge per family, so the cell path is fully
// determined by the word once the start cell is chosen.
Polyline realize(const Word& word, const FamilyLabeling& lab, long long ax, long long ay,
                 int start_index, int attempt) {
    Cell c = cells_at(ax, ay)[static_cast<std::size_t>(start_index)];
    std::vector<Cell> path = {c};
    for (int letter : word) {
        c = neighbor(c, lab.family_of(letter));
        path.push_back(c);
    }

    Rng rng(static_cast<std::uint64_t>(attempt) * 1000003ULL +
            static_cast<std::uint64_t>(start_index) * 7919ULL + 17ULL);

    Polyline poly;
    const CurvePoint anchor{Rat(ax), Rat(ay)};
    poly.push_back(anchor);
    for (const Cell& cell : path) poly.push_back(waypoint_in(cell, rng));

    auto ends = cell_vertices(path.back());
    std::sort(ends.begin(), ends.end(), lex_less);
    CurvePoint endpoint = ends[0];
    for (const auto& cand : ends)
        if (!(cand == anchor)) {
            endpoint = cand;
            break;
        }
    poly.push_back(endpoint);
    return poly;
}

void require_rank3_labeling(const FamilyLabeling& lab) {
    if (lab.sigma.order.size() != 3)
        throw InputError("family labeling needs exactly three vertices");
    for (int v = 0; v < 3; ++v)
        lab.family_of(v);  // throws when missing
}

std::optional<Polyline> find_one(const Word& reflection, const FamilyLabeling& lab,
                                 long long ax, long long ay, int bound) {
    for (int attempt = 0; attempt < bound; ++attempt)
        for (int start = 0; start < 6; ++start) {
            Polyline poly = realize(reflection, lab, ax, ay, start, attempt);
            if (crossing_word(poly, lab) != reflection)
                throw InternalError("realized curve crosses the wrong lines");
            if (non_crossing({poly})) return poly;
        }
    return std::nullopt;
}

}  // namespace

std::optional<Polyline> curve_for_reflection(const Word& reflection, const FamilyLabeling& lab,
                                             int bound) {
    require_rank3_labeling(lab);
    if (!is_reflection(reflection)) throw InputError("word is not a reflection");
    for (int letter : reflection)
        if (letter < 0 || letter > 2) throw InputError("letter out of range 1..3");
    if (bound < 1) throw InputError("bound must be positive");
    return find_one(reflection, lab, 0, 0, bound);
}

std::optional<std::vector<Polyline>> curve_family(const std::vector<Word>& reflections,
                                                  const FamilyLabeling& lab, int bound) {
    require_rank3_labeling(lab);
    if (bound < 1) throw InputError("bound must be positive");
    for (const Word& r : reflections) {
        if (!is_reflection(r)) throw InputError("every word must be a reflection");
        for (int letter : r)
            if (letter < 0 || letter > 2) throw InputError("letter out of range 1..3");
    }

    // Anchor offsets ordered by distance from the origin.
    std::vector<std::pair<long long, long long>> offsets;
    for (long long dx = -3; dx <= 3; ++dx)
        for (long long dy = -3; dy <= 3; ++dy) offsets.emplace_back(dx, dy);
    std::sort(offsets.begin(), offsets.end(), [](const auto& a, const auto& b) {
        const long long na = a.first * a.first + a.second * a.second;
        const long long nb = b.first * b.first + b.second * b.second;
        if (na != nb) return na < nb;
        return a < b;
    });

    // Self-valid candidates per reflection, compact placements first.
    std::vector<std::vector<Polyline>> candidates(reflections.size());
    for (std::size_t i = 0; i < reflections.size(); ++i) {
        for (const auto& [ax, ay] : offsets) {
            for (int attempt = 0; attempt < bound; ++attempt)
                for (int start = 0; start < 6; ++start) {
                    Polyline poly = realize(reflections[i], lab, ax, ay, start, attempt);
                    if (crossing_word(poly, lab) != reflections[i])
                        throw InternalError("realized curve crosses the wrong lines");
                    if (non_crossing({poly})) candidates[i].push_back(std::move(poly));
                    if (candidates[i].size() >= 48) break;
                }
            if (candidates[i].size() >= 48) break;
        }
        if (candidates[i].empty()) return std::nullopt;
    }

    std::vector<Polyline> placed;
    long long budget = 4000;
    const auto search = [&](const auto& self, std::size_t i) -> bool {
        if (i == reflections.size()) return true;
        for (const Polyline& cand : candidates[i]) {
            if (--budget < 0) return false;
            bool ok = true;
            for (const Polyline& prev : placed)
                if (!non_crossing({prev, cand})) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            placed.push_back(cand);
            if (self(self, i + 1)) return true;
            placed.pop_back();
        }
        return false;
    };
    if (!search(search, 0)) return std::nullopt;

    if (!non_crossing(placed)) throw InternalError("assembled family fails the joint check");
    return placed;
}

namespace {

std::string dec(const Rat& r, int places = 3) {
    Int num = numerator(r);
    const Int den = denominator(r);
    const bool neg = num < 0;
    if (neg) num = -num;
    Int scale = 1;
    for (int p = 0; p < places; ++p) scale *= 10;
    Int q = (num * scale) / den;
    const Int rem = (num * scale) % den;
    if (2 * rem >= den) ++q;
    const Int ip = q / scale;
    Int fp = q % scale;
    std::string out = (neg && q != 0) ? "-" : "";
    out += ip.str();
    if (fp != 0) {
        std::string f = fp.str();
        f.insert(f.begin(), static_cast<std::size_t>(places) - f.size(), '0');
        while (!f.empty() && f.back() == '0') f.pop_back();
        out += "." + f;
    }
    return out;
}

}  // namespace

void svg_window(const std::vector<Polyline>& curves, int& x0, int& y0, int& x1, int& y1) {
    Rat min_x = 0, min_y = 0, max_x = 1, max_y = 1;
    bool first = true;
    for (const auto& curve : curves)
        for (const auto& p : curve) {
            if (first || p.x < min_x) min_x = p.x;
            if (first || p.y < min_y) min_y = p.y;
            if (first || p.x > max_x) max_x = p.x;
            if (first || p.y > max_y) max_y = p.y;
            first = false;
        }
    x0 = static_cast<int>(rat_floor(min_x)) - 1;
    y0 = static_cast<int>(rat_floor(min_y)) - 1;
    x1 = static_cast<int>(rat_floor(max_x)) + 2;
    y1 = static_cast<int>(rat_floor(max_y)) + 2;
}

std::string render_svg(const std::vector<Polyline>& curves, int x0, int y0, int x1, int y1) {
    if (x1 <= x0 || y1 <= y0) throw InputError("empty drawing window");
    static const std::array<const char*, 6> palette = {"#d62728", "#1f77b4", "#2ca02c",
                                                       "#9467bd", "#ff7f0e", "#8c564b"};
    const int scale = 100;
    const int width = (x1 - x0) * scale;
    const int height = (y1 - y0) * scale;

    const auto px = [&](const Rat& x) { return dec((x - x0) * scale); };
    const auto py = [&](const Rat& y) { return dec((Rat(y1) - y) * scale); };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
        << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";

    svg << "<g stroke=\"#c8c8c8\" stroke-width=\"1\">\n";
    for (int m = x0; m <= x1; ++m)
        svg << "<line x1=\"" << px(Rat(m)) << "\" y1=\"" << py(Rat(y0)) << "\" x2=\""
            << px(Rat(m)) << "\" y2=\"" << py(Rat(y1)) << "\"/>\n";
    for (int m = y0; m <= y1; ++m)
        svg << "<line x1=\"" << px(Rat(x0)) << "\" y1=\"" << py(Rat(m)) << "\" x2=\""
            << px(Rat(x1)) << "\" y2=\"" << py(Rat(m)) << "\"/>\n";
    for (int m = x0 + y0; m <= x1 + y1; ++m) {
        const int xa = std::max(x0, m - y1);
        const int xb = std::min(x1, m - y0);
        if (xa > xb) continue;
        svg << "<line x1=\"" << px(Rat(xa)) << "\" y1=\"" << py(Rat(m - xa)) << "\" x2=\""
            << px(Rat(xb)) << "\" y2=\"" << py(Rat(m - xb)) << "\"/>\n";
    }
    svg << "</g>\n";

    svg << "<g fill=\"#555555\">\n";
    for (int ix = x0; ix <= x1; ++ix)
        for (int iy = y0; iy <= y1; ++iy)
            svg << "<circle cx=\"" << px(Rat(ix)) << "\" cy=\"" << py(Rat(iy))
                << "\" r=\"5\"/>\n";
    svg << "</g>\n";

    svg << "<g fill=\"none\" stroke-width=\"4\" stroke-linejoin=\"round\" "
           "stroke-linecap=\"round\">\n";
    for (std::size_t c = 0; c < curves.size(); ++c) {
        svg << "<polyline stroke=\"" << palette[c % palette.size()] << "\" points=\"";
        for (std::size_t t = 0; t < curves[c].size(); ++t) {
            if (t) svg << " ";
            svg << px(curves[c][t].x) << "," << py(curves[c][t].y);
        }
        svg << "\"/>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

}  // namespace qmut
