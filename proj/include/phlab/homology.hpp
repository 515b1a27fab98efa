#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace phlab {

/// Integer class in the rank-2 sublattice of H_1 spanned by [gamma_2] (a curve
/// crossing the separating torus T_1 once) and [gamma_1] (the source-orbit
/// class, disjoint from T_1).
struct HomologyClass {
    std::int64_t gamma2 = 0;  // coefficient a
    std::int64_t gamma1 = 0;  // coefficient b

    bool operator==(const HomologyClass&) const = default;
};

/// 2x2 integer matrix acting on (a, b) column vectors.
struct TwistMatrix {
    std::array<std::array<std::int64_t, 2>, 2> m;

    bool operator==(const TwistMatrix&) const = default;

    static TwistMatrix identity() { return {{{{1, 0}, {0, 1}}}}; }
};

HomologyClass apply(const TwistMatrix& m, const HomologyClass& h);
TwistMatrix compose(const TwistMatrix& lhs, const TwistMatrix& rhs);

// Action of the k-th twist power on the sublattice: (a, b) -> (a, b + k a);
// the time-N factor is isotopic to the identity and contributes nothing.
TwistMatrix twist_action(std::int64_t k);

// True iff twist_action(k) differs from the identity, i.e. k != 0.
bool is_isotopy_obstructed(std::int64_t k);

enum class SeparatingTorus { T1, T2 };
enum class Side { Attractor, Repeller };  // the two pieces cut out by T1 u T2

/// One leg of a closed path: its side endpoints and the signed crossings of
/// each separating torus along it.
struct PathSegment {
    Side from = Side::Attractor;
    Side to = Side::Attractor;
    int t1_crossings = 0;  // signed
    int t2_crossings = 0;  // signed
};

/// Closed piecewise path with validated crossing tags: each segment's parity
/// of crossings matches its side flip, consecutive segments chain, and the
/// path returns to its starting side.
class CrossingPath {
  public:
    static CrossingPath closed(std::vector<PathSegment> segments);

    const std::vector<PathSegment>& segments() const { return segments_; }

    static CrossingPath concatenate(const CrossingPath& first,
                                    const CrossingPath& second);

  private:
    explicit CrossingPath(std::vector<PathSegment> segments)
        : segments_(std::move(segments)) {}
    std::vector<PathSegment> segments_;
};

// Signed crossing count with the chosen torus: the discrete integral of a bump
// 1-form supported in its tubular neighborhood.
int crossing_number(const CrossingPath& path, SeparatingTorus torus);

// Reference representatives: gamma_1 avoids T_1 entirely; gamma_2 enters
// through T_1 and returns through T_2.
CrossingPath gamma1_representative();
CrossingPath gamma2_representative();

}  // namespace phlab
