#include "relwave/actionwave.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "relwave/csv.hpp"

namespace relwave {

ActionWaveState make_gaussian_blob(const SpacetimeGrid& grid, double center0, double center1,
                                   double width0, double width1, double ds0, double ds1,
                                   double m0, double c, BoundaryMode boundary) {
    if (grid.n0 < 4 || grid.n1 < 4)
        throw std::invalid_argument("make_gaussian_blob: grid too small");
    if (!(width0 > 0.0) || !(width1 > 0.0))
        throw std::invalid_argument("make_gaussian_blob: widths must be > 0");
    ActionWaveState st;
    st.grid = grid;
    st.m0 = m0;
    st.c = c;
    st.boundary = boundary;
    st.n.resize(grid.size());
    st.s0.resize(grid.size());
    double mass = 0.0;
    for (int i = 0; i < grid.n0; ++i) {
        const double x0 = grid.q0_at(i) - center0;
        for (int j = 0; j < grid.n1; ++j) {
            const double x1 = grid.q1_at(j) - center1;
            const std::size_t k = grid.idx(i, j);
            st.n[k] = std::exp(-0.5 * (x0 * x0 / (width0 * width0) + x1 * x1 / (width1 * width1)));
            st.s0[k] = ds0 * grid.q0_at(i) + ds1 * grid.q1_at(j);
            mass += st.n[k];
        }
    }
    mass *= grid.d0 * grid.d1;
    for (auto& v : st.n) v /= mass;
    return st;
}

std::vector<double> grid_derivative(const SpacetimeGrid& grid, std::span<const double> f,
                                    int axis) {
    if (f.size() != grid.size()) throw std::invalid_argument("grid_derivative: size mismatch");
    std::vector<double> df(f.size());
    const double d = axis == 0 ? grid.d0 : grid.d1;
    const int n_axis = axis == 0 ? grid.n0 : grid.n1;
    auto at = [&](int i, int j) { return f[grid.idx(i, j)]; };
    for (int i = 0; i < grid.n0; ++i) {
        for (int j = 0; j < grid.n1; ++j) {
            const int m = axis == 0 ? i : j;
            double v;
            auto sample = [&](int mm) { return axis == 0 ? at(mm, j) : at(i, mm); };
            if (m == 0)
                v = (-3.0 * sample(0) + 4.0 * sample(1) - sample(2)) / (2.0 * d);
            else if (m == n_axis - 1)
                v = (3.0 * sample(m) - 4.0 * sample(m - 1) + sample(m - 2)) / (2.0 * d);
            else
                v = (sample(m + 1) - sample(m - 1)) / (2.0 * d);
            df[grid.idx(i, j)] = v;
        }
    }
    return df;
}

std::vector<double> hj_residual(const ActionWaveState& state) {
    const auto a = grid_derivative(state.grid, state.s0, 0);
    const auto b = grid_derivative(state.grid, state.s0, 1);
    std::vector<double> r(state.grid.size());
    const double ms = state.m0 * state.m0 * state.c * state.c;
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = a[k] * a[k] - b[k] * b[k] - ms;
    return r;
}

ActionWaveState evolve(const ActionWaveState& state, double du, int n_steps) {
    if (!(du > 0.0)) throw std::invalid_argument("evolve: du must be > 0");
    if (n_steps < 0) throw std::invalid_argument("evolve: n_steps must be >= 0");
    const SpacetimeGrid& g = state.grid;

    // flux velocities (w0, w1) = (-d0S, +d1S)/m0; the action shape is
    // u-independent so these are fixed for the whole evolution
    const auto a = grid_derivative(g, state.s0, 0);
    const auto b = grid_derivative(g, state.s0, 1);
    double max_ds = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        max_ds = std::max(max_ds, std::max(std::abs(a[k]), std::abs(b[k])));
    const double cfl = du * max_ds / state.m0;
    const double limit = 0.5 * std::min(g.d0, g.d1);
    if (cfl > limit)
        throw std::invalid_argument("evolve: CFL violation, du*max|dS|/m0 = " +
                                    format_double(cfl) + " > " + format_double(limit));

    std::vector<double> w0(g.size()), w1(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        w0[k] = -a[k] / state.m0;
        w1[k] = b[k] / state.m0;
    }

    const bool periodic = state.boundary == BoundaryMode::Periodic;
    ActionWaveState out = state;
    std::vector<double> next(g.size());

    // upwind flux through the face between upwind cell 'lo' and cell 'hi'
    auto face_update = [&](std::size_t lo, std::size_t hi, double w, double du_over_d) {
        const double flux = w >= 0 ? w * out.n[lo] : w * out.n[hi];
        const double d = du_over_d * flux;
        next[lo] -= d;
        next[hi] += d;
    };

    for (int step = 0; step < n_steps; ++step) {
        next = out.n;
        const double r0 = du / g.d0, r1 = du / g.d1;
        // axis 0: interior faces between rows i-1 and i, plus the wrap face
        for (int j = 0; j < g.n1; ++j) {
            for (int i = 1; i < g.n0; ++i) {
                const std::size_t lo = g.idx(i - 1, j), hi = g.idx(i, j);
                face_update(lo, hi, 0.5 * (w0[lo] + w0[hi]), r0);
            }
            if (periodic) {
                const std::size_t lo = g.idx(g.n0 - 1, j), hi = g.idx(0, j);
                face_update(lo, hi, 0.5 * (w0[lo] + w0[hi]), r0);
            }
        }
        // axis 1
        for (int i = 0; i < g.n0; ++i) {
            for (int j = 1; j < g.n1; ++j) {
                const std::size_t lo = g.idx(i, j - 1), hi = g.idx(i, j);
                face_update(lo, hi, 0.5 * (w1[lo] + w1[hi]), r1);
            }
            if (periodic) {
                const std::size_t lo = g.idx(i, g.n1 - 1), hi = g.idx(i, 0);
                face_update(lo, hi, 0.5 * (w1[lo] + w1[hi]), r1);
            }
        }
        out.n.swap(next);
        out.u += du;
    }
    return out;
}

SpacetimeMoments spacetime_moments(const ActionWaveState& state) {
    const SpacetimeGrid& g = state.grid;
    const auto a = grid_derivative(g, state.s0, 0);
    const auto b = grid_derivative(g, state.s0, 1);
    // fixed row-major reduction: per-row sums, then a sum over rows
    double mass = 0, mq0 = 0, mq0sq = 0, ma = 0, mb = 0;
    for (int i = 0; i < g.n0; ++i) {
        double rm = 0, rq0 = 0, rq0sq = 0, ra = 0, rb = 0;
        const double q0 = g.q0_at(i);
        for (int j = 0; j < g.n1; ++j) {
            const std::size_t k = g.idx(i, j);
            rm += state.n[k];
            rq0 += state.n[k] * q0;
            rq0sq += state.n[k] * q0 * q0;
            ra += state.n[k] * a[k];
            rb += state.n[k] * b[k];
        }
        mass += rm;
        mq0 += rq0;
        mq0sq += rq0sq;
        ma += ra;
        mb += rb;
    }
    const double cell = g.d0 * g.d1;
    if (!(mass * cell > 0.0))
        throw std::domain_error("spacetime_moments: zero total mass");
    SpacetimeMoments m;
    m.total_mass = mass * cell;
    const double q0_mean = mq0 / mass;
    m.mean_t = q0_mean / state.c;
    m.var_t = (mq0sq / mass - q0_mean * q0_mean) / (state.c * state.c);
    m.mean_e = -state.c * ma / mass;
    m.mean_p_parallel = mb / mass;
    return m;
}

double total_mass(const ActionWaveState& state) {
    double mass = 0;
    for (int i = 0; i < state.grid.n0; ++i) {
        double rm = 0;
        for (int j = 0; j < state.grid.n1; ++j) rm += state.n[state.grid.idx(i, j)];
        mass += rm;
    }
    return mass * state.grid.d0 * state.grid.d1;
}

LineFit linear_time_slope(std::span<const std::pair<double, double>> u_and_mean_t) {
    if (u_and_mean_t.size() < 3)
        throw std::domain_error("linear_time_slope: need at least 3 samples");
    std::vector<double> u, t;
    u.reserve(u_and_mean_t.size());
    t.reserve(u_and_mean_t.size());
    for (const auto& [uu, tt] : u_and_mean_t) {
        u.push_back(uu);
        t.push_back(tt);
    }
    return least_squares_line(u, t);
}

void write_field_csv(const std::filesystem::path& path, const ActionWaveState& state) {
    CsvTable t;
    t.header = {"q0", "q1", "n", "S"};
    t.rows.reserve(state.grid.size());
    for (int i = 0; i < state.grid.n0; ++i)
        for (int j = 0; j < state.grid.n1; ++j) {
            const std::size_t k = state.grid.idx(i, j);
            t.rows.push_back({state.grid.q0_at(i), state.grid.q1_at(j), state.n[k],
                              state.action_at(k)});
        }
    write_csv(path, t);
}

void write_moments_csv(const std::filesystem::path& path,
                       std::span<const std::pair<double, SpacetimeMoments>> series) {
    CsvTable t;
    t.header = {"u", "mean_t", "mean_E", "mean_p"};
    t.rows.reserve(series.size());
    for (const auto& [u, m] : series)
        t.rows.push_back({u, m.mean_t, m.mean_e, m.mean_p_parallel});
    write_csv(path, t);
}

}  // namespace relwave
