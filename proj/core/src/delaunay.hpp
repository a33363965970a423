#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace hcong::detail {

// Delaunay triangulation of distinct points by divide and conquer on a
// quad-edge structure.
class Delaunay {
public:
    explicit Delaunay(std::vector<Eigen::Vector2d> pts);

    // Bounded triangles (v, a, b) around v in counterclockwise order.
    std::vector<std::array<int, 3>> star(int v) const;
    const std::vector<Eigen::Vector2d>& points() const { return pts_; }

private:
    static int rot(int e) { return (e & ~3) | ((e + 1) & 3); }
    static int sym(int e) { return (e & ~3) | ((e + 2) & 3); }
    static int invrot(int e) { return (e & ~3) | ((e + 3) & 3); }
    int onext(int e) const { return next_[static_cast<std::size_t>(e)]; }
    int oprev(int e) const { return rot(onext(rot(e))); }
    int lnext(int e) const { return rot(onext(invrot(e))); }
    int rprev(int e) const { return onext(sym(e)); }
    int org(int e) const { return org_[static_cast<std::size_t>(e)]; }
    int dest(int e) const { return org(sym(e)); }

    int make_edge(int a, int b);
    void splice(int a, int b);
    int connect(int a, int b);
    void remove(int e);
    bool ccw(int a, int b, int c) const;
    bool right_of(int x, int e) const { return ccw(x, dest(e), org(e)); }
    bool left_of(int x, int e) const { return ccw(x, org(e), dest(e)); }
    bool in_circle(int a, int b, int c, int d) const;
    std::pair<int, int> build(int lo, int hi);

    std::vector<Eigen::Vector2d> pts_;
    std::vector<int> order_;
    std::vector<int> next_;
    std::vector<int> org_;
    std::vector<char> dead_;
    std::vector<int> vertex_edge_;
};

}  // namespace hcong::detail
