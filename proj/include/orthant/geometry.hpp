#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace orthant {

/// A lattice point in the positive orthant {0,1,...}^M.
using State = std::vector<int>;

/// A unit transition offset; every entry lies in {-1,0,1}.
using Step = std::vector<int>;

/// A composite offset (e.g. the sum of two steps); entries in {-2,...,2}.
using Offset = std::vector<int>;

/// Sentinel for an unbounded upper box edge.
inline constexpr int kUnbounded = std::numeric_limits<int>::max();

inline State add(const State& n, const Offset& d) {
    State out(n.size());
    for (size_t i = 0; i < n.size(); ++i) out[i] = n[i] + d[i];
    return out;
}

inline bool in_orthant(const State& n) {
    for (int c : n)
        if (c < 0) return false;
    return true;
}

inline bool is_zero(const Offset& d) {
    for (int c : d)
        if (c != 0) return false;
    return true;
}

/// Encodes an offset with entries in {-2,...,2} into a single integer key.
inline int64_t encode_offset(const Offset& d) {
    int64_t key = 0;
    for (int c : d) {
        if (c < -2 || c > 2) throw std::invalid_argument("offset entry out of range");
        key = key * 5 + (c + 2);
    }
    return key;
}

inline Offset decode_offset(int64_t key, int dim) {
    Offset d(dim);
    for (int i = dim - 1; i >= 0; --i) {
        d[i] = static_cast<int>(key % 5) - 2;
        key /= 5;
    }
    return d;
}

inline std::string offset_name(const Offset& d) {
    std::string s = "(";
    for (size_t i = 0; i < d.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(d[i]);
    }
    return s + ")";
}

/// Axis-aligned box [lo_1,hi_1] x ... x [lo_M,hi_M]; hi_i == kUnbounded means no
/// upper edge in dimension i. All arithmetic on edges is total.
struct Box {
    std::vector<int> lo;
    std::vector<int> hi;

    Box() = default;
    Box(std::vector<int> l, std::vector<int> h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo.size() != hi.size()) throw std::invalid_argument("box edge arity mismatch");
        for (size_t i = 0; i < lo.size(); ++i) {
            if (lo[i] < 0) throw std::invalid_argument("box lower edge negative");
            if (hi[i] != kUnbounded && hi[i] < lo[i])
                throw std::invalid_argument("box upper edge below lower edge");
        }
    }

    int dim() const { return static_cast<int>(lo.size()); }

    bool contains(const State& n) const {
        for (size_t i = 0; i < lo.size(); ++i) {
            if (n[i] < lo[i]) return false;
            if (hi[i] != kUnbounded && n[i] > hi[i]) return false;
        }
        return true;
    }

    bool bounded() const {
        for (int h : hi)
            if (h == kUnbounded) return false;
        return true;
    }

    /// Number of states, or -1 when unbounded.
    long long cardinality() const {
        long long card = 1;
        for (size_t i = 0; i < lo.size(); ++i) {
            if (hi[i] == kUnbounded) return -1;
            card *= static_cast<long long>(hi[i]) - lo[i] + 1;
        }
        return card;
    }

    State lower_corner() const { return State(lo.begin(), lo.end()); }
};

/// Calls fn(state) for every state of a bounded box.
template <typename Fn>
void for_each_state(const Box& box, Fn&& fn) {
    if (!box.bounded()) throw std::invalid_argument("cannot enumerate unbounded box");
    State n = box.lower_corner();
    const int dim = box.dim();
    while (true) {
        fn(const_cast<const State&>(n));
        int i = 0;
        for (; i < dim; ++i) {
            if (n[i] < box.hi[i]) {
                ++n[i];
                break;
            }
            n[i] = box.lo[i];
        }
        if (i == dim) break;
    }
}

}  // namespace orthant
