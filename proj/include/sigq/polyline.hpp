#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "sigq/common.hpp"

namespace sigq {

inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 d = b - a;
    const double len2 = d.norm2();
    if (len2 == 0.0) return dist(p, a);
    const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    return dist(p, a + t * d);
}

// Uniform grid over segment bounding boxes; near-linear candidate generation
// for intersection scans and nearest-segment queries on dense traces.
class SegmentGrid {
public:
    SegmentGrid(const std::vector<Vec2>& pts, double cell_size)
        : pts_(pts), cell_(cell_size > 0 ? cell_size : 1.0) {
        if (pts_.size() < 2) return;
        min_ = pts_[0];
        Vec2 max = pts_[0];
        for (const Vec2& p : pts_) {
            min_.x = std::min(min_.x, p.x);
            min_.y = std::min(min_.y, p.y);
            max.x = std::max(max.x, p.x);
            max.y = std::max(max.y, p.y);
        }
        nx_ = std::max<int64_t>(1, (int64_t)((max.x - min_.x) / cell_) + 1);
        ny_ = std::max<int64_t>(1, (int64_t)((max.y - min_.y) / cell_) + 1);
        cells_.resize(static_cast<size_t>(nx_ * ny_));
        for (size_t i = 0; i + 1 < pts_.size(); ++i) insert_segment(i);
    }

    int64_t cols() const { return nx_; }
    int64_t rows() const { return ny_; }

    template <class F>
    void for_each_candidate_pair(F&& f) const {
        std::unordered_set<uint64_t> seen;
        for (const auto& cell : cells_) {
            for (size_t a = 0; a < cell.size(); ++a)
                for (size_t b = a + 1; b < cell.size(); ++b) {
                    uint32_t i = cell[a], j = cell[b];
                    if (i > j) std::swap(i, j);
                    const uint64_t key = (uint64_t(i) << 32) | j;
                    if (seen.insert(key).second) f(i, j);
                }
        }
    }

    // Distance from p to the nearest segment, by expanding ring search.
    double nearest_segment_distance(Vec2 p) const {
        if (pts_.size() < 2) return dist(p, pts_.empty() ? Vec2{} : pts_[0]);
        const int64_t cx = std::clamp<int64_t>((int64_t)((p.x - min_.x) / cell_), 0, nx_ - 1);
        const int64_t cy = std::clamp<int64_t>((int64_t)((p.y - min_.y) / cell_), 0, ny_ - 1);
        double best = 1e300;
        const int64_t max_ring = std::max(nx_, ny_);
        for (int64_t ring = 0; ring <= max_ring; ++ring) {
            // once a hit exists, rings further than best/cell cannot improve it
            if (best < 1e300 && (double)(ring - 1) * cell_ > best) break;
            bool any_cell = false;
            for (int64_t dx = -ring; dx <= ring; ++dx)
                for (int64_t dy = -ring; dy <= ring; ++dy) {
                    if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
                    const int64_t x = cx + dx, y = cy + dy;
                    if (x < 0 || y < 0 || x >= nx_ || y >= ny_) continue;
                    any_cell = true;
                    for (uint32_t i : cells_[static_cast<size_t>(y * nx_ + x)])
                        best = std::min(best, point_segment_distance(p, pts_[i], pts_[i + 1]));
                }
            if (!any_cell && best < 1e300) break;
        }
        return best;
    }

private:
    void insert_segment(size_t i) {
        const Vec2 a = pts_[i], b = pts_[i + 1];
        const int64_t x0 = std::clamp<int64_t>((int64_t)((std::min(a.x, b.x) - min_.x) / cell_), 0, nx_ - 1);
        const int64_t x1 = std::clamp<int64_t>((int64_t)((std::max(a.x, b.x) - min_.x) / cell_), 0, nx_ - 1);
        const int64_t y0 = std::clamp<int64_t>((int64_t)((std::min(a.y, b.y) - min_.y) / cell_), 0, ny_ - 1);
        const int64_t y1 = std::clamp<int64_t>((int64_t)((std::max(a.y, b.y) - min_.y) / cell_), 0, ny_ - 1);
        for (int64_t y = y0; y <= y1; ++y)
            for (int64_t x = x0; x <= x1; ++x)
                cells_[static_cast<size_t>(y * nx_ + x)].push_back(static_cast<uint32_t>(i));
    }

    const std::vector<Vec2>& pts_;
    double cell_;
    Vec2 min_;
    int64_t nx_ = 1, ny_ = 1;
    std::vector<std::vector<uint32_t>> cells_;
};

inline double median_segment_length(const std::vector<Vec2>& pts) {
    std::vector<double> lens;
    lens.reserve(pts.size());
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double l = dist(pts[i], pts[i + 1]);
        if (l > 0) lens.push_back(l);
    }
    if (lens.empty()) return 1.0;
    std::nth_element(lens.begin(), lens.begin() + lens.size() / 2, lens.end());
    return lens[lens.size() / 2];
}

struct IntersectionEvent {
    Vec2 point;
    double ta = 0.0;  // fractional position within segment seg_a
    double tb = 0.0;
    uint32_t seg_a = 0;
    uint32_t seg_b = 0;
    double angle = 0.0;  // crossing angle folded to [0, pi/2]
};

// Proper pairwise crossings between non-adjacent segments of one polyline
// (endpoints inclusive, parallel pairs skipped).
inline std::vector<IntersectionEvent> polyline_self_intersections(const std::vector<Vec2>& pts,
                                                                  bool closed_chain) {
    std::vector<IntersectionEvent> events;
    if (pts.size() < 4) return events;
    const size_t nseg = pts.size() - 1;
    SegmentGrid grid(pts, 2.0 * median_segment_length(pts));

    auto adjacent = [&](uint32_t i, uint32_t j) {
        if (j - i <= 1) return true;
        if (closed_chain && i == 0 && j == nseg - 1) return true;
        return false;
    };

    grid.for_each_candidate_pair([&](uint32_t i, uint32_t j) {
        if (adjacent(i, j)) return;
        const Vec2 p1 = pts[i], p2 = pts[i + 1];
        const Vec2 q1 = pts[j], q2 = pts[j + 1];
        const Vec2 da = p2 - p1, db = q2 - q1;
        const double la = da.norm(), lb = db.norm();
        if (la == 0.0 || lb == 0.0) return;

        const double denom = cross(da, db);
        if (std::abs(denom) <= 1e-14 * la * lb) return;  // parallel
        const Vec2 r = q1 - p1;
        const double t = cross(r, db) / denom;
        const double u = cross(r, da) / denom;
        if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) return;
        const double c = std::clamp(dot(da, db) / (la * lb), -1.0, 1.0);
        events.push_back({p1 + t * da, t, u, i, j, std::acos(std::abs(c))});
    });
    return events;
}

// Symmetric Hausdorff distance between two polylines (vertex-to-segment).
inline double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    if (a.empty() || b.empty()) fail("invalid-spec", "hausdorff on empty polyline");
    auto one_sided = [](const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
        SegmentGrid grid(to, 4.0 * median_segment_length(to));
        double worst = 0.0;
        for (const Vec2& p : from) worst = std::max(worst, grid.nearest_segment_distance(p));
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

// Discrete Frechet distance (standard DP over sample points).
inline double discrete_frechet(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    if (a.empty() || b.empty()) fail("invalid-spec", "frechet on empty polyline");
    const size_t n = a.size(), m = b.size();
    std::vector<double> prev(m), cur(m);
    for (size_t j = 0; j < m; ++j) {
        double d = dist(a[0], b[j]);
        prev[j] = j == 0 ? d : std::max(prev[j - 1], d);
    }
    for (size_t i = 1; i < n; ++i) {
        cur[0] = std::max(prev[0], dist(a[i], b[0]));
        for (size_t j = 1; j < m; ++j) {
            const double reach = std::min({prev[j], prev[j - 1], cur[j - 1]});
            cur[j] = std::max(reach, dist(a[i], b[j]));
        }
        std::swap(prev, cur);
    }
    return prev[m - 1];
}

inline double bbox_diagonal(const std::vector<Vec2>& pts) {
    if (pts.empty()) return 0.0;
    Vec2 lo = pts[0], hi = pts[0];
    for (const Vec2& p : pts) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    return dist(lo, hi);
}

}  // namespace sigq
