#pragma once

/**
 * @file numeric.hpp
 * @brief Floating-point integration of the profile system and residual checks.
 *
 * The system is integrated in tau, where every right-hand side is a
 * polynomial:  x'' = a r^2,  y'' = b r^2,  r'' = r + c r^2,  c'' = kappa c
 * with a, b linear in tau. kappa = 1 is the biharmonic system; kappa = 0
 * freezes c' and is used to carry non-biharmonic reference profiles.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bhv {

struct ProfileParams {
    double a0 = 0, a1 = 0; ///< a(tau) = a0 + a1 tau
    double b0 = 0, b1 = 0; ///< b(tau) = b0 + b1 tau
    double kappa = 1;      ///< c'' = kappa c

    double a(double tau) const { return a0 + a1 * tau; }
    double b(double tau) const { return b0 + b1 * tau; }
};

struct ProfileState {
    double tau = 0;
    double x = 0, y = 0, r = 1, c = 0;
    double xd = 0, yd = 0, rd = 0, cd = 0;

    bool finite() const
    {
        for (double v : {tau, x, y, r, c, xd, yd, rd, cd})
            if (!std::isfinite(v)) return false;
        return true;
    }
};

struct Trajectory {
    ProfileParams params;
    double step = 0;                  ///< integration step (signed)
    std::vector<ProfileState> states; ///< increasing tau
    bool truncated = false;
    std::string reason;
};

inline constexpr double kDefaultRFloor = 1e-9;

namespace detail {

using Vec8 = std::array<double, 8>;

inline Vec8 pack(const ProfileState &s) { return {s.x, s.y, s.r, s.c, s.xd, s.yd, s.rd, s.cd}; }

inline ProfileState unpack(double tau, const Vec8 &v)
{
    return {tau, v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

inline Vec8 field(const ProfileParams &p, double tau, const Vec8 &v)
{
    const double r2 = v[2] * v[2];
    return {v[4], v[5], v[6], v[7], p.a(tau) * r2, p.b(tau) * r2, v[2] + v[3] * r2, p.kappa * v[3]};
}

inline Vec8 axpy(const Vec8 &y, double h, const Vec8 &k)
{
    Vec8 out;
    for (std::size_t i = 0; i < 8; ++i) out[i] = y[i] + h * k[i];
    return out;
}

inline ProfileState rk4_step(const ProfileParams &p, const ProfileState &s, double h)
{
    const Vec8 y = pack(s);
    const Vec8 k1 = field(p, s.tau, y);
    const Vec8 k2 = field(p, s.tau + h / 2, axpy(y, h / 2, k1));
    const Vec8 k3 = field(p, s.tau + h / 2, axpy(y, h / 2, k2));
    const Vec8 k4 = field(p, s.tau + h, axpy(y, h, k3));
    Vec8 out;
    for (std::size_t i = 0; i < 8; ++i) out[i] = y[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return unpack(s.tau + h, out);
}

} // namespace detail

/**
 * Classical RK4 from initial.tau to t_end with |step| = step; the step is
 * shortened uniformly so the last sample lands on t_end. Every
 * `sample_every`-th state is stored. Integration stops, flagged, when r
 * falls to r_floor or the state stops being finite.
 */
inline Trajectory integrate_profile(const ProfileState &initial, const ProfileParams &params, double t_end,
                                    double step, std::size_t sample_every = 1, double r_floor = kDefaultRFloor)
{
    if (!(step > 0)) throw std::invalid_argument("integrate_profile: step must be positive");
    if (sample_every == 0) throw std::invalid_argument("integrate_profile: sample_every must be positive");
    if (!initial.finite()) throw std::invalid_argument("integrate_profile: non-finite initial state");
    if (!(initial.r > r_floor)) throw std::invalid_argument("integrate_profile: initial r is not above the floor");
    Trajectory t;
    t.params = params;
    t.states.push_back(initial);
    const double span = t_end - initial.tau;
    const auto n = static_cast<std::size_t>(std::ceil(std::abs(span) / step - 1e-9));
    if (n == 0) {
        t.step = 0;
        return t;
    }
    const double h = span / static_cast<double>(n);
    t.step = h;
    ProfileState s = initial;
    for (std::size_t i = 1; i <= n; ++i) {
        s = detail::rk4_step(params, s, h);
        if (i == n) s.tau = t_end;
        if (!s.finite()) {
            t.truncated = true;
            t.reason = "non-finite state at tau = " + std::to_string(s.tau);
            break;
        }
        if (!(s.r > r_floor)) {
            t.truncated = true;
            t.reason = "r reached the floor at tau = " + std::to_string(s.tau);
            break;
        }
        if (i % sample_every == 0 || i == n) t.states.push_back(s);
    }
    if (h < 0) std::reverse(t.states.begin(), t.states.end());
    return t;
}

/// Integrates both ways from initial.tau over [tau - half_width, tau + half_width].
inline Trajectory integrate_window(const ProfileState &initial, const ProfileParams &params, double half_width,
                                   double step, std::size_t sample_every = 1, double r_floor = kDefaultRFloor)
{
    Trajectory back = integrate_profile(initial, params, initial.tau - half_width, step, sample_every, r_floor);
    Trajectory fwd = integrate_profile(initial, params, initial.tau + half_width, step, sample_every, r_floor);
    Trajectory t;
    t.params = params;
    t.step = fwd.step;
    t.states = std::move(back.states);
    t.states.insert(t.states.end(), fwd.states.begin() + 1, fwd.states.end());
    t.truncated = back.truncated || fwd.truncated;
    t.reason = back.reason.empty() ? fwd.reason : back.reason;
    return t;
}

/// Exact initial data for r = cosh tau, x = tau (the catenoid).
inline ProfileState catenoid_initial() { return {0, 0, 0, 1, 0, 1, 0, 0, 0}; }

/// r = 1, x' = 1, c = -1 with c frozen (kappa = 0): the round cylinder.
inline ProfileState cylinder_initial() { return {0, 0, 0, 1, -1, 1, 0, 0, 0}; }
inline ProfileParams cylinder_params() { return {0, 0, 0, 0, 0}; }

struct ResidualReport {
    double arc_defect = 0;     ///< max |x'^2 + y'^2 + r'^2 - r^2|
    double compatibility = 0;  ///< max |a x' + b y' + c r'|
    double biharmonic = 0;     ///< max Euclidean norm of the three equations below
    double a_equation = 0;     ///< max |a''| / r^2
    double b_equation = 0;     ///< max |b''| / r^2
    double c_equation = 0;     ///< max |c'' - c| / r^2
    double surface_laplacian_gap = 0;
    std::size_t samples = 0;   ///< interior points used by the stencils
};

namespace detail {

/// Centered 5-point first and second derivatives at i of equally spaced f.
inline double d1(const std::vector<double> &f, std::size_t i, double h)
{
    return (f[i - 2] - 8 * f[i - 1] + 8 * f[i + 1] - f[i + 2]) / (12 * h);
}

inline double d2(const std::vector<double> &f, std::size_t i, double h)
{
    return (-f[i - 2] + 16 * f[i - 1] - 30 * f[i] + 16 * f[i + 1] - f[i + 2]) / (12 * h * h);
}

} // namespace detail

/**
 * a = x''/r^2, b = y''/r^2, c = (r'' - r)/r^2 are recovered from the stored
 * first derivatives by differencing, then a'', b'', c'' - c by a second
 * stencil; the three equations are reported divided by r^2, which is their
 * arc-length form. Samples must be equally spaced.
 */
inline ResidualReport biharmonic_residual(const Trajectory &t)
{
    const auto &s = t.states;
    const std::size_t n = s.size();
    if (n < 9) throw std::invalid_argument("biharmonic_residual: need at least 9 samples");
    const double h = (s.back().tau - s.front().tau) / static_cast<double>(n - 1);
    ResidualReport rep;
    for (const auto &p : s) rep.arc_defect = std::max(rep.arc_defect, std::abs(p.xd * p.xd + p.yd * p.yd + p.rd * p.rd - p.r * p.r));

    std::vector<double> xd(n), yd(n), rd(n), a(n), b(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
        xd[i] = s[i].xd;
        yd[i] = s[i].yd;
        rd[i] = s[i].rd;
    }
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const double r2 = s[i].r * s[i].r;
        a[i] = detail::d1(xd, i, h) / r2;
        b[i] = detail::d1(yd, i, h) / r2;
        c[i] = (detail::d1(rd, i, h) - s[i].r) / r2;
        rep.compatibility = std::max(rep.compatibility, std::abs(a[i] * s[i].xd + b[i] * s[i].yd + c[i] * s[i].rd));
    }
    for (std::size_t i = 4; i + 4 < n; ++i) {
        const double r2 = s[i].r * s[i].r;
        const double ea = std::abs(detail::d2(a, i, h)) / r2;
        const double eb = std::abs(detail::d2(b, i, h)) / r2;
        const double ec = std::abs(detail::d2(c, i, h) - c[i]) / r2;
        rep.a_equation = std::max(rep.a_equation, ea);
        rep.b_equation = std::max(rep.b_equation, eb);
        rep.c_equation = std::max(rep.c_equation, ec);
        rep.biharmonic = std::max(rep.biharmonic, std::sqrt(ea * ea + eb * eb + ec * ec));
        ++rep.samples;
    }
    return rep;
}

/// Arc-length profile s -> (x, y, r) with its mean-curvature data a, b, c.
struct SurfaceProfile {
    std::function<double(double)> x, y, r, a, b, c;
    double s0 = -1, s1 = 1;
};

/// r = sqrt(1 + s^2), x = asinh s: minimal, so a = b = c = 0.
inline SurfaceProfile catenoid_profile(double s0 = -1, double s1 = 1)
{
    auto zero = [](double) { return 0.0; };
    return {[](double s) { return std::asinh(s); }, zero, [](double s) { return std::sqrt(1 + s * s); },
            zero, zero, zero, s0, s1};
}

inline SurfaceProfile cylinder_profile(double s0 = -1, double s1 = 1)
{
    auto zero = [](double) { return 0.0; };
    return {[](double s) { return s; }, zero, [](double) { return 1.0; }, zero, zero, [](double) { return -1.0; }, s0, s1};
}

/**
 * max over the interior grid of |Delta_h X - 2H| with X = (x, y, r cos, r sin),
 * Delta = r^-1 d/ds (r d/ds) + r^-2 d^2/dtheta^2 discretized by the
 * conservative 3-point stencil in s and the periodic one in theta, and
 * 2H = (a, b, c cos, c sin).
 */
inline double surface_laplacian_gap(const SurfaceProfile &prof, std::size_t n_s, std::size_t n_theta)
{
    if (n_s < 2) throw std::invalid_argument("surface_laplacian_gap: need at least 2 intervals in s");
    if (!(2 * std::numbers::pi / static_cast<double>(n_theta) < std::numbers::pi / 8))
        throw std::invalid_argument("surface_laplacian_gap: theta spacing must be below pi/8");
    if (!(prof.s1 > prof.s0)) throw std::invalid_argument("surface_laplacian_gap: empty s range");
    const double hs = (prof.s1 - prof.s0) / static_cast<double>(n_s);
    const double ht = 2 * std::numbers::pi / static_cast<double>(n_theta);
    for (std::size_t i = 0; i <= n_s; ++i) {
        const double r = prof.r(prof.s0 + hs * static_cast<double>(i));
        if (!(r > 0)) throw std::invalid_argument("surface_laplacian_gap: r is not positive on the grid");
    }
    double gap = 0;
    for (std::size_t i = 1; i < n_s; ++i) {
        const double s = prof.s0 + hs * static_cast<double>(i);
        const double r = prof.r(s), rp = prof.r(s + hs / 2), rm = prof.r(s - hs / 2);
        auto radial = [&](const std::function<double(double)> &f) {
            return (rp * (f(s + hs) - f(s)) - rm * (f(s) - f(s - hs))) / (hs * hs * r);
        };
        const double lx = radial(prof.x), ly = radial(prof.y), lr = radial(prof.r);
        const double ang = (2 * std::cos(ht) - 2) / (ht * ht) / r; // acting on r cos(theta) / r^2
        for (std::size_t j = 0; j < n_theta; ++j) {
            const double th = ht * static_cast<double>(j);
            const double co = std::cos(th), si = std::sin(th);
            const double c = prof.c(s);
            const std::array<double, 4> d{lx - prof.a(s), ly - prof.b(s), lr * co + ang * co - c * co,
                                          lr * si + ang * si - c * si};
            double norm = 0;
            for (double v : d) norm += v * v;
            gap = std::max(gap, std::sqrt(norm));
        }
    }
    return gap;
}

struct SweepPoint {
    double r0 = 1, r1 = 0, c0 = 0, c1 = 0, alpha = 0, beta = 0;
};

struct SweepRow {
    SweepPoint point;
    double x1 = 0, y1 = 0;
    std::string x1_from;          ///< "compatibility tau^1", "arc-length" or "unsolved"
    double arc0 = 0, comp0 = 0;   ///< constraint values at tau = 0
    bool violated = false;
    double tau_violation = 0;     ///< smallest |tau| where the threshold is exceeded
    double max_arc = 0, max_comp = 0;
    bool truncated = false;
    std::string note;
};

struct SweepOptions {
    double half_width = 2;
    double step = 1e-3;
    double threshold = 1e-6;
};

/**
 * q = (alpha tau, beta). y1 solves compatibility at tau^0 when beta != 0;
 * x1 solves it at tau^1 when alpha != 0 and otherwise the arc-length
 * condition. Each row records where |arc| or |compatibility| first exceeds
 * the threshold, searching outward from tau = 0.
 */
inline SweepRow sweep_point(const SweepPoint &p, const SweepOptions &o = {})
{
    SweepRow row;
    row.point = p;
    if (!(p.r0 > 0)) {
        row.note = "r0 is not positive";
        row.violated = true;
        return row;
    }
    if (p.beta != 0) row.y1 = -p.c0 * p.r1 / p.beta;
    if (p.alpha != 0) {
        row.x1 = -(p.beta * p.beta * p.r0 * p.r0 + p.c1 * p.r1 + p.c0 * p.r0 + p.c0 * p.c0 * p.r0 * p.r0) / p.alpha;
        row.x1_from = "compatibility tau^1";
    } else if (double d = p.r0 * p.r0 - row.y1 * row.y1 - p.r1 * p.r1; d >= 0) {
        row.x1 = std::sqrt(d);
        row.x1_from = "arc-length";
    } else {
        row.x1_from = "unsolved";
    }
    const ProfileParams par{0, p.alpha, p.beta, 0, 1};
    const ProfileState init{0, 0, 0, p.r0, p.c0, row.x1, row.y1, p.r1, p.c1};
    auto arc = [](const ProfileState &s) { return s.xd * s.xd + s.yd * s.yd + s.rd * s.rd - s.r * s.r; };
    auto comp = [&](const ProfileState &s) { return par.a(s.tau) * s.xd + par.b(s.tau) * s.yd + s.c * s.rd; };
    row.arc0 = arc(init);
    row.comp0 = comp(init);
    const Trajectory t = integrate_window(init, par, o.half_width, o.step);
    row.truncated = t.truncated;
    row.note = t.reason;
    std::vector<const ProfileState *> by_distance;
    for (const auto &s : t.states) by_distance.push_back(&s);
    std::stable_sort(by_distance.begin(), by_distance.end(),
                     [](const ProfileState *a, const ProfileState *b) { return std::abs(a->tau) < std::abs(b->tau); });
    for (const ProfileState *s : by_distance) {
        const double ea = std::abs(arc(*s)), ec = std::abs(comp(*s));
        row.max_arc = std::max(row.max_arc, ea);
        row.max_comp = std::max(row.max_comp, ec);
        if (!row.violated && (ea > o.threshold || ec > o.threshold)) {
            row.violated = true;
            row.tau_violation = std::abs(s->tau);
        }
    }
    return row;
}

/// Cartesian product of the per-parameter value lists, in row-major order r0, r1, c0, c1, alpha, beta.
inline std::vector<SweepPoint> sweep_grid(const std::vector<double> &r0, const std::vector<double> &r1,
                                          const std::vector<double> &c0, const std::vector<double> &c1,
                                          const std::vector<double> &alpha, const std::vector<double> &beta)
{
    std::vector<SweepPoint> out;
    for (double a : r0)
        for (double b : r1)
            for (double c : c0)
                for (double d : c1)
                    for (double e : alpha)
                        for (double f : beta) out.push_back({a, b, c, d, e, f});
    return out;
}

inline std::vector<SweepPoint> default_sweep_grid()
{
    return sweep_grid({1.0}, {0.0, 0.2}, {0.0, 0.5}, {0.0, 0.3}, {0.0, 1.0}, {0.0, 1.0});
}

inline std::vector<SweepRow> sweep_nonminimal(const std::vector<SweepPoint> &grid, const SweepOptions &o = {})
{
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (const auto &p : grid) rows.push_back(sweep_point(p, o));
    return rows;
}

/// tau,x,y,r,c,xd,yd,rd,cd,arc,compat with a header line.
inline void write_trajectory_csv(std::ostream &os, const Trajectory &t)
{
    os << "tau,x,y,r,c,xd,yd,rd,cd,arc,compat\n";
    os.precision(17);
    for (const auto &s : t.states) {
        const double arc = s.xd * s.xd + s.yd * s.yd + s.rd * s.rd - s.r * s.r;
        const double comp = t.params.a(s.tau) * s.xd + t.params.b(s.tau) * s.yd + s.c * s.rd;
        os << s.tau << ',' << s.x << ',' << s.y << ',' << s.r << ',' << s.c << ',' << s.xd << ',' << s.yd << ','
           << s.rd << ',' << s.cd << ',' << arc << ',' << comp << '\n';
    }
}

} // namespace bhv
