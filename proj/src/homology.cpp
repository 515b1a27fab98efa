#include "phlab/homology.hpp"

#include <cstdlib>
#include <stdexcept>

namespace phlab {

HomologyClass apply(const TwistMatrix& m, const HomologyClass& h) {
    return {m.m[0][0] * h.gamma2 + m.m[0][1] * h.gamma1,
            m.m[1][0] * h.gamma2 + m.m[1][1] * h.gamma1};
}

TwistMatrix compose(const TwistMatrix& lhs, const TwistMatrix& rhs) {
    TwistMatrix out{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.m[i][j] = lhs.m[i][0] * rhs.m[0][j] + lhs.m[i][1] * rhs.m[1][j];
        }
    }
    return out;
}

TwistMatrix twist_action(std::int64_t k) {
    return {{{{1, 0}, {k, 1}}}};
}

bool is_isotopy_obstructed(std::int64_t k) {
    return !(twist_action(k) == TwistMatrix::identity());
}

CrossingPath CrossingPath::closed(std::vector<PathSegment> segments) {
    if (segments.empty()) {
        throw std::invalid_argument("CrossingPath: empty segment list");
    }
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const PathSegment& seg = segments[i];
        const int total = std::abs(seg.t1_crossings) + std::abs(seg.t2_crossings);
        const bool flips = seg.from != seg.to;
        if ((total % 2 == 1) != flips) {
            throw std::invalid_argument(
                "CrossingPath: crossing parity inconsistent with segment sides");
        }
        const PathSegment& next = segments[(i + 1) % segments.size()];
        if (seg.to != next.from) {
            throw std::invalid_argument(
                "CrossingPath: path is not closed (sides do not chain)");
        }
    }
    return CrossingPath(std::move(segments));
}

CrossingPath CrossingPath::concatenate(const CrossingPath& first,
                                       const CrossingPath& second) {
    std::vector<PathSegment> merged = first.segments_;
    merged.insert(merged.end(), second.segments_.begin(), second.segments_.end());
    return CrossingPath::closed(std::move(merged));
}

int crossing_number(const CrossingPath& path, SeparatingTorus torus) {
    int sum = 0;
    for (const PathSegment& seg : path.segments()) {
        sum += (torus == SeparatingTorus::T1) ? seg.t1_crossings : seg.t2_crossings;
    }
    return sum;
}

CrossingPath gamma1_representative() {
    // A loop around the source orbit, pushed off T_1: stays on one side.
    return CrossingPath::closed({{Side::Attractor, Side::Attractor, 0, 0}});
}

CrossingPath gamma2_representative() {
    // Enters through T_1, comes back through T_2.
    return CrossingPath::closed({{Side::Attractor, Side::Repeller, 1, 0},
                                 {Side::Repeller, Side::Attractor, 0, 1}});
}

}  // namespace phlab
