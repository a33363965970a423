#include "delaunay.hpp"

#include "predicates.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hcong::detail {

Delaunay::Delaunay(std::vector<Eigen::Vector2d> pts) : pts_(std::move(pts))
{
    const int n = static_cast<int>(pts_.size());
    order_.resize(static_cast<std::size_t>(n));
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
        const auto& p = pts_[static_cast<std::size_t>(a)];
        const auto& q = pts_[static_cast<std::size_t>(b)];
        return p.x() < q.x() || (p.x() == q.x() && p.y() < q.y());
    });
    for (int i = 1; i < n; ++i)
        if (pts_[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])] ==
            pts_[static_cast<std::size_t>(order_[static_cast<std::size_t>(i - 1)])])
            throw std::invalid_argument("Delaunay: duplicate points");
    next_.reserve(static_cast<std::size_t>(12 * n + 12));
    org_.reserve(static_cast<std::size_t>(12 * n + 12));
    if (n >= 2) build(0, n);

    vertex_edge_.assign(static_cast<std::size_t>(n), -1);
    for (std::size_t q = 0; q < dead_.size(); ++q) {
        if (dead_[q]) continue;
        int e = static_cast<int>(4 * q);
        vertex_edge_[static_cast<std::size_t>(org(e))] = e;
        vertex_edge_[static_cast<std::size_t>(dest(e))] = sym(e);
    }
}

int Delaunay::make_edge(int a, int b)
{
    int e = static_cast<int>(next_.size());
    next_.insert(next_.end(), {e, e + 3, e + 2, e + 1});
    org_.insert(org_.end(), {a, -1, b, -1});
    dead_.push_back(0);
    return e;
}

void Delaunay::splice(int a, int b)
{
    int alpha = rot(onext(a)), beta = rot(onext(b));
    std::swap(next_[static_cast<std::size_t>(a)], next_[static_cast<std::size_t>(b)]);
    std::swap(next_[static_cast<std::size_t>(alpha)], next_[static_cast<std::size_t>(beta)]);
}

int Delaunay::connect(int a, int b)
{
    int e = make_edge(dest(a), org(b));
    splice(e, lnext(a));
    splice(sym(e), b);
    return e;
}

void Delaunay::remove(int e)
{
    splice(e, oprev(e));
    splice(sym(e), oprev(sym(e)));
    dead_[static_cast<std::size_t>(e >> 2)] = 1;
}

bool Delaunay::ccw(int a, int b, int c) const
{
    return orient2d(pts_[static_cast<std::size_t>(a)], pts_[static_cast<std::size_t>(b)],
                    pts_[static_cast<std::size_t>(c)]) > 0;
}

bool Delaunay::in_circle(int a, int b, int c, int d) const
{
    return incircle(pts_[static_cast<std::size_t>(a)], pts_[static_cast<std::size_t>(b)], pts_[static_cast<std::size_t>(c)],
                    pts_[static_cast<std::size_t>(d)]) > 0;
}

std::pair<int, int> Delaunay::build(int lo, int hi)
{
    auto v = [&](int i) { return order_[static_cast<std::size_t>(i)]; };
    const int n = hi - lo;
    if (n == 2) {
        int a = make_edge(v(lo), v(lo + 1));
        return {a, sym(a)};
    }
    if (n == 3) {
        int s1 = v(lo), s2 = v(lo + 1), s3 = v(lo + 2);
        int a = make_edge(s1, s2);
        int b = make_edge(s2, s3);
        splice(sym(a), b);
        if (ccw(s1, s2, s3)) {
            connect(b, a);
            return {a, sym(b)};
        }
        if (ccw(s1, s3, s2)) {
            int c = connect(b, a);
            return {sym(c), c};
        }
        return {a, sym(b)};
    }
    int mid = lo + n / 2;
    auto [ldo, ldi] = build(lo, mid);
    auto [rdi, rdo] = build(mid, hi);
    for (;;) {
        if (left_of(org(rdi), ldi))
            ldi = lnext(ldi);
        else if (right_of(org(ldi), rdi))
            rdi = rprev(rdi);
        else
            break;
    }
    int basel = connect(sym(rdi), ldi);
    if (org(ldi) == org(ldo)) ldo = sym(basel);
    if (org(rdi) == org(rdo)) rdo = basel;
    for (;;) {
        auto valid = [&](int e) { return right_of(dest(e), basel); };
        int lcand = onext(sym(basel));
        if (valid(lcand)) {
            while (in_circle(dest(basel), org(basel), dest(lcand), dest(onext(lcand)))) {
                int t = onext(lcand);
                remove(lcand);
                lcand = t;
            }
        }
        int rcand = oprev(basel);
        if (valid(rcand)) {
            while (in_circle(dest(basel), org(basel), dest(rcand), dest(oprev(rcand)))) {
                int t = oprev(rcand);
                remove(rcand);
                rcand = t;
            }
        }
        bool lv = valid(lcand), rv = valid(rcand);
        if (!lv && !rv) break;
        if (!lv || (rv && in_circle(dest(lcand), org(lcand), org(rcand), dest(rcand))))
            basel = connect(rcand, sym(basel));
        else
            basel = connect(sym(basel), sym(lcand));
    }
    return {ldo, rdo};
}

std::vector<std::array<int, 3>> Delaunay::star(int v) const
{
    std::vector<std::array<int, 3>> out;
    int e0 = vertex_edge_[static_cast<std::size_t>(v)];
    if (e0 < 0) return out;
    int e = e0;
    do {
        int a = dest(e), b = dest(onext(e));
        if (lnext(lnext(lnext(e))) == e && ccw(v, a, b)) out.push_back({v, a, b});
        e = onext(e);
    } while (e != e0);
    return out;
}

}  // namespace hcong::detail
