#include "orthant/refinement.hpp"

#include <algorithm>
#include <ostream>

namespace orthant {

namespace {

// Sorted interval starts for one dimension. The cut set contains every box
// edge (start L and one-past-end U+1) shifted by -radius..radius, so that the
// interval containing n_i + d_i is constant over each refined interval for
// |d_i| <= radius. Every interval below the top cut is bounded and gets split
// into singletons, so the starts are exactly 0..max_cut.
std::vector<int> dimension_starts(const RandomWalkModel& model, int i, int radius) {
    int max_cut = 0;
    for (const Component& c : model.components())
        for (const Box& b : c.region) {
            max_cut = std::max(max_cut, b.lo[i] + radius);
            if (b.hi[i] != kUnbounded) max_cut = std::max(max_cut, b.hi[i] + 1 + radius);
        }
    std::vector<int> starts(max_cut + 1);
    for (int v = 0; v <= max_cut; ++v) starts[v] = v;
    return starts;
}

}  // namespace

Refinement::Refinement(const RandomWalkModel& model, int radius)
    : model_(&model), radius_(radius) {
    const int dim = model.dim();
    starts_.resize(dim);
    for (int i = 0; i < dim; ++i) starts_[i] = dimension_starts(model, i, radius);

    // every cell of the start grid is one piece; the last interval per
    // dimension is unbounded
    std::vector<int> idx(dim, 0);
    while (true) {
        RefinedComponent rc;
        std::vector<int> lo(dim), hi(dim);
        for (int i = 0; i < dim; ++i) {
            lo[i] = starts_[i][idx[i]];
            bool last = idx[i] + 1 == static_cast<int>(starts_[i].size());
            hi[i] = last ? kUnbounded : starts_[i][idx[i] + 1] - 1;
            if (hi[i] == kUnbounded) rc.unbounded.push_back(i);
        }
        rc.box = Box(lo, hi);
        rc.corner = rc.box.lower_corner();
        rc.c_index = model.component_of(rc.corner);
        comps_.push_back(std::move(rc));

        int i = dim - 1;
        for (; i >= 0; --i) {
            if (idx[i] + 1 < static_cast<int>(starts_[i].size())) {
                ++idx[i];
                break;
            }
            idx[i] = 0;
        }
        if (i < 0) break;
    }
    std::sort(comps_.begin(), comps_.end(),
              [](const RefinedComponent& a, const RefinedComponent& b) {
                  return a.box.lo < b.box.lo;
              });
    for (size_t j = 0; j < comps_.size(); ++j) comps_[j].index = static_cast<int>(j);

    // shift tables: component of corner+d for every in-orthant offset of the
    // refinement radius; constancy over the piece is guaranteed by the cuts
    // and double-checked on a second probe state in the unbounded dimensions
    Offset d(dim, 0);
    for (RefinedComponent& rc : comps_) {
        std::fill(d.begin(), d.end(), -radius_);
        while (true) {
            bool valid = true;
            for (int i = 0; i < dim; ++i)
                if (rc.corner[i] + d[i] < 0) valid = false;
            if (valid) {
                int c = model.component_of(add(rc.corner, d));
                if (!rc.unbounded.empty()) {
                    State deep = rc.corner;
                    for (int u : rc.unbounded) deep[u] += 2 * radius_ + 3;
                    if (model.component_of(add(deep, d)) != c)
                        throw std::logic_error("refinement shift table not constant");
                }
                rc.shift_c.emplace(encode_offset(d), c);
            }
            int i = dim - 1;
            for (; i >= 0; --i) {
                if (d[i] < radius_) {
                    ++d[i];
                    break;
                }
                d[i] = -radius_;
            }
            if (i < 0) break;
        }
    }
}

int Refinement::index_of(const State& n) const {
    const int dim = model_->dim();
    // grid lookup via per-dimension binary search
    std::vector<int> pos(dim);
    std::vector<int> counts(dim);
    for (int i = 0; i < dim; ++i) {
        const auto& s = starts_[i];
        auto it = std::upper_bound(s.begin(), s.end(), n[i]);
        pos[i] = static_cast<int>(it - s.begin()) - 1;
        counts[i] = static_cast<int>(s.size());
        if (pos[i] < 0) throw std::invalid_argument("state outside the orthant");
    }
    // pieces are sorted lexicographically by lower corner, matching row-major
    // order over (pos_1, ..., pos_M)
    int j = 0;
    for (int i = 0; i < dim; ++i) j = j * counts[i] + pos[i];
    return j;
}

State Refinement::probe(int j, int depth) const {
    const RefinedComponent& rc = comps_.at(j);
    State n = rc.corner;
    for (int u : rc.unbounded) n[u] += depth;
    return n;
}

void Refinement::dump(std::ostream& os) const {
    for (const RefinedComponent& rc : comps_) {
        os << "Z" << rc.index << "  box=[";
        for (int i = 0; i < rc.box.dim(); ++i) {
            if (i) os << " x ";
            os << rc.box.lo[i] << "..";
            if (rc.box.hi[i] == kUnbounded)
                os << "inf";
            else
                os << rc.box.hi[i];
        }
        os << "]  C=" << rc.c_index << "  I={";
        for (size_t q = 0; q < rc.unbounded.size(); ++q) {
            if (q) os << ",";
            os << rc.unbounded[q];
        }
        os << "}  corner=" << offset_name(rc.corner) << "\n";
    }
}

Refinement refine(const RandomWalkModel& model, int radius) {
    if (radius < 1) throw std::invalid_argument("refinement radius must be >= 1");
    return Refinement(model, radius);
}

int shift_component(const Refinement& ref, int j, const Offset& d) {
    const RefinedComponent& rc = ref.piece(j);
    for (size_t i = 0; i < d.size(); ++i)
        if (rc.corner[i] + d[i] < 0)
            throw std::invalid_argument("offset " + offset_name(d) +
                                        " leaves the orthant for members of piece " +
                                        std::to_string(j));
    auto it = rc.shift_c.find(encode_offset(d));
    if (it == rc.shift_c.end()) throw std::invalid_argument("offset beyond refinement radius");
    return it->second;
}

}  // namespace orthant
