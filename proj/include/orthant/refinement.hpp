#pragma once

#include <unordered_map>
#include <vector>

#include "orthant/model.hpp"

namespace orthant {

/// One piece Z_j of a refinement: a single box, its unbounded dimensions,
/// its lower corner, and a shift table giving the partition component of n+d
/// for every composite offset d that keeps all of Z_j inside the orthant.
struct RefinedComponent {
    int index = -1;
    Box box;
    int c_index = -1;                       // component of C containing Z_j
    std::vector<int> unbounded;             // I(Z_j)
    State corner;                           // all-lower corner; the single element of the corner set
    std::unordered_map<int64_t, int> shift_c;  // encode_offset(d) -> c(n+d), constant on Z_j

    bool is_unbounded(int i) const {
        for (int u : unbounded)
            if (u == i) return true;
        return false;
    }
};

/// Finite refinement of the model partition in which every bounded piece is a
/// single state and the component of every shifted state n+d (offsets up to
/// the configured radius per coordinate) is constant on each piece.
class Refinement {
  public:
    Refinement(const RandomWalkModel& model, int radius);

    const RandomWalkModel& model() const { return *model_; }
    int radius() const { return radius_; }
    int size() const { return static_cast<int>(comps_.size()); }
    const RefinedComponent& piece(int j) const { return comps_.at(j); }
    const std::vector<RefinedComponent>& pieces() const { return comps_; }
    const std::vector<std::vector<int>>& interval_starts() const { return starts_; }

    /// Membership function z(n).
    int index_of(const State& n) const;

    /// Draws a representative state of Z_j, pushing unbounded dimensions
    /// `depth` past the corner.
    State probe(int j, int depth) const;

    /// Text table (piece index, box, unbounded set, corner) for inspection.
    void dump(std::ostream& os) const;

  private:
    const RandomWalkModel* model_;
    int radius_;
    std::vector<RefinedComponent> comps_;
    std::vector<std::vector<int>> starts_;  // per dimension, sorted interval starts
};

/// Builds the canonical refinement: per dimension, collect every box edge of
/// every component region, close the cut set under shifts up to `radius`, and
/// split every bounded interval into singletons. Pieces are ordered
/// lexicographically by lower corner.
Refinement refine(const RandomWalkModel& model, int radius = 2);

/// c(j,d): component of C containing n+d for every n in Z_j.
/// Throws when some member of Z_j has n+d outside the orthant.
int shift_component(const Refinement& ref, int j, const Offset& d);

}  // namespace orthant
