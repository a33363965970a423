#include "predicates.hpp"

#include <cmath>
#include <limits>

namespace hcong::detail {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2;

// Nonoverlapping expansion in increasing magnitude, stored inline.
template <int N>
struct Exp {
    double v[N];
    int n = 0;
};

inline void two_sum(double a, double b, double& x, double& y)
{
    x = a + b;
    double bv = x - a;
    double av = x - bv;
    y = (a - av) + (b - bv);
}

inline void fast_two_sum(double a, double b, double& x, double& y)
{
    x = a + b;
    y = b - (x - a);
}

inline void two_prod(double a, double b, double& x, double& y)
{
    x = a * b;
    y = std::fma(a, b, -x);
}

template <int N>
Exp<N> diff(double a, double b)
{
    Exp<N> e;
    double x, y;
    two_sum(a, -b, x, y);
    if (y != 0) e.v[e.n++] = y;
    if (x != 0) e.v[e.n++] = x;
    return e;
}

// h = e + f with zero elimination (linear merge).
template <int N, int A, int B>
Exp<N> add(const Exp<A>& e, const Exp<B>& f)
{
    static_assert(N >= A + B);
    Exp<N> h;
    if (e.n == 0) {
        for (int i = 0; i < f.n; ++i) h.v[i] = f.v[i];
        h.n = f.n;
        return h;
    }
    if (f.n == 0) {
        for (int i = 0; i < e.n; ++i) h.v[i] = e.v[i];
        h.n = e.n;
        return h;
    }
    int ei = 0, fi = 0;
    double q, qn, hh;
    auto next = [&]() {
        if (fi >= f.n || (ei < e.n && std::fabs(e.v[ei]) < std::fabs(f.v[fi]))) return e.v[ei++];
        return f.v[fi++];
    };
    q = next();
    if (ei < e.n || fi < f.n) {
        double x = next();
        fast_two_sum(x, q, qn, hh);
        q = qn;
        if (hh != 0) h.v[h.n++] = hh;
        while (ei < e.n || fi < f.n) {
            double y = next();
            two_sum(q, y, qn, hh);
            q = qn;
            if (hh != 0) h.v[h.n++] = hh;
        }
    }
    if (q != 0 || h.n == 0) h.v[h.n++] = q;
    return h;
}

template <int N, int A>
Exp<N> scale(const Exp<A>& e, double b)
{
    static_assert(N >= 2 * A);
    Exp<N> h;
    if (e.n == 0 || b == 0) return h;
    double q, hh;
    two_prod(e.v[0], b, q, hh);
    if (hh != 0) h.v[h.n++] = hh;
    for (int i = 1; i < e.n; ++i) {
        double p1, p0, s, t;
        two_prod(e.v[i], b, p1, p0);
        two_sum(q, p0, s, t);
        if (t != 0) h.v[h.n++] = t;
        fast_two_sum(p1, s, q, t);
        if (t != 0) h.v[h.n++] = t;
    }
    if (q != 0) h.v[h.n++] = q;
    return h;
}

// Product of a short expansion with another; N must hold 2 * A * B terms.
template <int N, int A, int B>
Exp<N> mul(const Exp<A>& e, const Exp<B>& f)
{
    Exp<N> acc;
    for (int i = 0; i < f.n; ++i) {
        Exp<2 * A> part = scale<2 * A>(e, f.v[i]);
        Exp<N> s;
        s.n = 0;
        // grow acc by the partial product
        int ai = 0, pi = 0;
        double q = 0, qn, hh;
        bool first = true;
        while (ai < acc.n || pi < part.n) {
            double x;
            if (pi >= part.n || (ai < acc.n && std::fabs(acc.v[ai]) < std::fabs(part.v[pi])))
                x = acc.v[ai++];
            else
                x = part.v[pi++];
            if (first) {
                q = x;
                first = false;
                continue;
            }
            two_sum(q, x, qn, hh);
            q = qn;
            if (hh != 0) s.v[s.n++] = hh;
        }
        if (!first && q != 0) s.v[s.n++] = q;
        acc = s;
    }
    return acc;
}

template <int N>
Exp<N> negate(Exp<N> e)
{
    for (int i = 0; i < e.n; ++i) e.v[i] = -e.v[i];
    return e;
}

template <int N>
int sign(const Exp<N>& e)
{
    for (int i = e.n - 1; i >= 0; --i)
        if (e.v[i] != 0) return e.v[i] > 0 ? 1 : -1;
    return 0;
}

}  // namespace

int orient2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c)
{
    double l = (a.x() - c.x()) * (b.y() - c.y());
    double r = (a.y() - c.y()) * (b.x() - c.x());
    double det = l - r;
    double bound = (3.0 + 16.0 * kEps) * kEps * (std::fabs(l) + std::fabs(r));
    if (det > bound) return 1;
    if (-det > bound) return -1;
    auto acx = diff<2>(a.x(), c.x()), bcy = diff<2>(b.y(), c.y());
    auto acy = diff<2>(a.y(), c.y()), bcx = diff<2>(b.x(), c.x());
    return sign(add<16>(mul<8>(acx, bcy), negate(mul<8>(acy, bcx))));
}

int incircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c, const Eigen::Vector2d& d)
{
    double adx = a.x() - d.x(), ady = a.y() - d.y();
    double bdx = b.x() - d.x(), bdy = b.y() - d.y();
    double cdx = c.x() - d.x(), cdy = c.y() - d.y();
    double bc = bdx * cdy - cdx * bdy, ca = cdx * ady - adx * cdy, ab = adx * bdy - bdx * ady;
    double al = adx * adx + ady * ady, bl = bdx * bdx + bdy * bdy, cl = cdx * cdx + cdy * cdy;
    double det = al * bc + bl * ca + cl * ab;
    double perm = (std::fabs(bdx * cdy) + std::fabs(cdx * bdy)) * al + (std::fabs(cdx * ady) + std::fabs(adx * cdy)) * bl +
                  (std::fabs(adx * bdy) + std::fabs(bdx * ady)) * cl;
    double bound = (10.0 + 96.0 * kEps) * kEps * perm;
    if (det > bound) return 1;
    if (-det > bound) return -1;

    auto ax = diff<2>(a.x(), d.x()), ay = diff<2>(a.y(), d.y());
    auto bx = diff<2>(b.x(), d.x()), by = diff<2>(b.y(), d.y());
    auto cx = diff<2>(c.x(), d.x()), cy = diff<2>(c.y(), d.y());
    auto ebc = add<16>(mul<8>(bx, cy), negate(mul<8>(cx, by)));
    auto eca = add<16>(mul<8>(cx, ay), negate(mul<8>(ax, cy)));
    auto eab = add<16>(mul<8>(ax, by), negate(mul<8>(bx, ay)));
    auto ea = add<16>(mul<8>(ax, ax), mul<8>(ay, ay));
    auto eb = add<16>(mul<8>(bx, bx), mul<8>(by, by));
    auto ec = add<16>(mul<8>(cx, cx), mul<8>(cy, cy));
    auto t1 = mul<512>(ea, ebc);
    auto t2 = mul<512>(eb, eca);
    auto t3 = mul<512>(ec, eab);
    return sign(add<1536>(add<1024>(t1, t2), t3));
}

}  // namespace hcong::detail
