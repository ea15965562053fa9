#include "layout.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace gridplot {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

Point SplitMix64::unit_disk() {
    while (true) {
        double x = 2.0 * uniform() - 1.0;
        double y = 2.0 * uniform() - 1.0;
        if (x * x + y * y <= 1.0) return {x, y};
    }
}

std::optional<LayoutAlgorithm> parse_algorithm(const std::string& name) {
    if (name == "kk" || name == "kamada_kawai" || name == "kamadakawai")
        return LayoutAlgorithm::KamadaKawai;
    if (name == "spring") return LayoutAlgorithm::Spring;
    if (name == "sfdp") return LayoutAlgorithm::Sfdp;
    if (name == "spectral") return LayoutAlgorithm::Spectral;
    if (name == "shell") return LayoutAlgorithm::Shell;
    if (name == "grid") return LayoutAlgorithm::Grid;
    return std::nullopt;
}

const char* algorithm_name(LayoutAlgorithm a) {
    switch (a) {
    case LayoutAlgorithm::KamadaKawai: return "kamada_kawai";
    case LayoutAlgorithm::Spring: return "spring";
    case LayoutAlgorithm::Sfdp: return "sfdp";
    case LayoutAlgorithm::Spectral: return "spectral";
    case LayoutAlgorithm::Shell: return "shell";
    case LayoutAlgorithm::Grid: return "grid";
    }
    return "unknown";
}

void LayoutConfig::check() const {
    if (iterations < 1)
        throw Error(ErrorCode::InvalidArgument, "iterations must be >= 1");
    if (repulsion_c <= 0 || edge_length_k <= 0 || spring_k < 0 || tol <= 0)
        throw Error(ErrorCode::InvalidArgument,
                    "layout parameters must be positive");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void require_nonempty(const PowerGraph& g) {
    if (g.node_count() == 0)
        throw Error(ErrorCode::EmptyGraph, "layout of empty graph");
}

bool any_pinned(const PinnedCoords& pinned) {
    for (const auto& p : pinned)
        if (p) return true;
    return false;
}

std::vector<Point> initial_positions(const PowerGraph& g,
                                     const PinnedCoords& pinned,
                                     std::uint64_t seed, double radius) {
    SplitMix64 rng(seed);
    std::vector<Point> pos(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) {
        Point p = rng.unit_disk(); // always consume, keeps streams aligned
        if (i < static_cast<int>(pinned.size()) && pinned[i])
            pos[i] = *pinned[i];
        else
            pos[i] = {p[0] * radius, p[1] * radius};
    }
    return pos;
}

std::vector<std::vector<int>> all_pairs_hops(const PowerGraph& g) {
    std::vector<std::vector<int>> d(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) d[i] = shortest_paths(g, i);
    return d;
}

double stress_of(const std::vector<Point>& pos,
                 const std::vector<std::vector<int>>& d) {
    double total = 0.0;
    int n = static_cast<int>(pos.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int dij = d[i][j];
            if (dij <= 0) continue;
            double dx = pos[i][0] - pos[j][0];
            double dy = pos[i][1] - pos[j][1];
            double dev = std::sqrt(dx * dx + dy * dy) - dij;
            total += dev * dev / (static_cast<double>(dij) * dij);
        }
    return total;
}

} // namespace

double embedding_stress(const PowerGraph& g, const std::vector<Point>& coords) {
    return stress_of(coords, all_pairs_hops(g));
}

LayoutResult kamada_kawai(const PowerGraph& g, const LayoutConfig& cfg,
                          const PinnedCoords& pinned) {
    require_nonempty(g);
    cfg.check();
    auto t0 = Clock::now();
    int n = g.node_count();
    LayoutResult res;

    if (!any_pinned(pinned) && n <= 2) {
        res.coords = n == 1 ? std::vector<Point>{{0.0, 0.0}}
                            : std::vector<Point>{{0.0, 0.0}, {1.0, 0.0}};
        res.stats.final_stress = embedding_stress(g, res.coords);
        res.stats.stress_trace = {res.stats.final_stress};
        res.stats.elapsed_seconds = seconds_since(t0);
        return res;
    }

    auto d = all_pairs_hops(g);
    int dmax = 1;
    for (const auto& row : d)
        for (int v : row) dmax = std::max(dmax, v);

    auto pos = initial_positions(g, pinned, cfg.seed, dmax / 2.0);

    // stress restricted to the terms touching node i
    auto local_stress = [&](int i, const Point& p) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            int dij = d[i][j];
            if (dij <= 0) continue;
            double w = 1.0 / (static_cast<double>(dij) * dij);
            double r = std::hypot(p[0] - pos[j][0], p[1] - pos[j][1]);
            s += w * (r - dij) * (r - dij);
        }
        return s;
    };

    double stress = stress_of(pos, d);
    res.stats.stress_trace.push_back(stress);
    int sweeps = 0;
    while (sweeps < cfg.max_sweeps) {
        // localized stress majorization: each node moves to the minimizer of
        // its quadratic majorizer, which never increases the global stress
        for (int i = 0; i < n; ++i) {
            if (i < static_cast<int>(pinned.size()) && pinned[i]) continue;
            double wsum = 0.0, nx = 0.0, ny = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                int dij = d[i][j];
                if (dij <= 0) continue;
                double w = 1.0 / (static_cast<double>(dij) * dij);
                double dx = pos[i][0] - pos[j][0];
                double dy = pos[i][1] - pos[j][1];
                double dist = std::sqrt(dx * dx + dy * dy);
                double tx = pos[j][0], ty = pos[j][1];
                if (dist > 1e-12) {
                    tx += dij * dx / dist;
                    ty += dij * dy / dist;
                }
                wsum += w;
                nx += w * tx;
                ny += w * ty;
            }
            if (wsum <= 0.0) continue;
            Point cand = {nx / wsum, ny / wsum};
            double best = local_stress(i, cand);
            if (best > local_stress(i, pos[i])) {
                cand = pos[i]; // numerical guard; majorization can't increase
                best = local_stress(i, cand);
            }

            // safeguarded Newton polish on the true local stress; the
            // majorizer's linear convergence stalls near degenerate (e.g.
            // collinear) optima, while accepted Newton steps stay monotone
            for (int it = 0; it < 3; ++it) {
                double gx = 0, gy = 0, hxx = 0, hxy = 0, hyy = 0;
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    int dij = d[i][j];
                    if (dij <= 0) continue;
                    double w = 1.0 / (static_cast<double>(dij) * dij);
                    double dx = cand[0] - pos[j][0];
                    double dy = cand[1] - pos[j][1];
                    double r = std::sqrt(dx * dx + dy * dy);
                    if (r < 1e-12) continue;
                    double ux = dx / r, uy = dy / r;
                    double c1 = 2.0 * w * (r - dij);
                    gx += c1 * ux;
                    gy += c1 * uy;
                    double a = 2.0 * w * (1.0 - dij / r); // tangential curvature
                    double b = 2.0 * w * (dij / r);       // radial extra
                    hxx += a + b * ux * ux;
                    hxy += b * ux * uy;
                    hyy += a + b * uy * uy;
                }
                double ridge = 1e-12 + 1e-9 * (std::abs(hxx) + std::abs(hyy));
                hxx += ridge;
                hyy += ridge;
                double det = hxx * hyy - hxy * hxy;
                if (!(det > 0.0) || hxx <= 0.0) break; // not positive definite
                double sx = -(hyy * gx - hxy * gy) / det;
                double sy = -(hxx * gy - hxy * gx) / det;
                Point trial = cand;
                double step = 1.0;
                bool improved = false;
                for (int half = 0; half < 4; ++half) {
                    Point q = {cand[0] + step * sx, cand[1] + step * sy};
                    double s = local_stress(i, q);
                    if (s < best) {
                        trial = q;
                        best = s;
                        improved = true;
                        break;
                    }
                    step *= 0.5;
                }
                if (!improved) break;
                cand = trial;
            }
            pos[i] = cand;
        }
        ++sweeps;
        double next = stress_of(pos, d);
        res.stats.stress_trace.push_back(next);
        bool converged = stress <= 0.0 ||
                         std::abs(stress - next) < cfg.tol * stress;
        stress = next;
        if (converged) break;
    }

    res.coords = std::move(pos);
    res.stats.iterations_run = sweeps;
    res.stats.final_stress = stress;
    res.stats.elapsed_seconds = seconds_since(t0);
    return res;
}

LayoutResult spring_layout(const PowerGraph& g, const LayoutConfig& cfg,
                           const PinnedCoords& pinned) {
    require_nonempty(g);
    cfg.check();
    auto t0 = Clock::now();
    int n = g.node_count();
    double k = cfg.spring_k > 0.0 ? cfg.spring_k : std::sqrt(1.0 / n);
    LayoutResult res;

    if (!any_pinned(pinned) && n <= 2) {
        res.coords = n == 1 ? std::vector<Point>{{0.0, 0.0}}
                            : std::vector<Point>{{0.0, 0.0}, {k, 0.0}};
        res.stats.elapsed_seconds = seconds_since(t0);
        return res;
    }

    double side = k * std::sqrt(static_cast<double>(n));
    auto pos = initial_positions(g, pinned, cfg.seed, side / 2.0);
    std::vector<Point> disp(n);

    auto is_pinned = [&](int i) {
        return i < static_cast<int>(pinned.size()) && pinned[i].has_value();
    };

    double t0temp = side / 10.0;
    for (int it = 0; it < cfg.iterations; ++it) {
        for (auto& dvec : disp) dvec = {0.0, 0.0};
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                double dx = pos[i][0] - pos[j][0];
                double dy = pos[i][1] - pos[j][1];
                double d2 = dx * dx + dy * dy;
                double dist = std::sqrt(d2);
                if (dist < 1e-9) { dx = 1e-9; dy = 0.0; dist = 1e-9; d2 = dist * dist; }
                double f = k * k / d2; // repulsion k^2/d, divided by d for unit vec
                disp[i][0] += dx * f;
                disp[i][1] += dy * f;
                disp[j][0] -= dx * f;
                disp[j][1] -= dy * f;
            }
        for (int u = 0; u < n; ++u)
            for (int v : g.adj[u]) {
                if (v <= u) continue;
                double dx = pos[u][0] - pos[v][0];
                double dy = pos[u][1] - pos[v][1];
                double dist = std::sqrt(dx * dx + dy * dy);
                if (dist < 1e-9) continue;
                double f = dist / k; // attraction d^2/k over d
                disp[u][0] -= dx * f;
                disp[u][1] -= dy * f;
                disp[v][0] += dx * f;
                disp[v][1] += dy * f;
            }
        double temp = t0temp * static_cast<double>(cfg.iterations - it) /
                      cfg.iterations;
        for (int i = 0; i < n; ++i) {
            if (is_pinned(i)) continue;
            double len = std::hypot(disp[i][0], disp[i][1]);
            if (len < 1e-12) continue;
            double step = std::min(len, temp);
            pos[i][0] += disp[i][0] / len * step;
            pos[i][1] += disp[i][1] / len * step;
        }
    }

    res.coords = std::move(pos);
    res.stats.iterations_run = cfg.iterations;
    res.stats.elapsed_seconds = seconds_since(t0);
    return res;
}

LayoutResult sfdp_layout(const PowerGraph& g, const LayoutConfig& cfg,
                         const PinnedCoords& pinned) {
    require_nonempty(g);
    cfg.check();
    auto t0 = Clock::now();
    int n = g.node_count();
    double K = cfg.edge_length_k;
    double C = cfg.repulsion_c;
    LayoutResult res;

    if (!any_pinned(pinned) && n <= 2) {
        double eq = K * std::cbrt(C);
        res.coords = n == 1 ? std::vector<Point>{{0.0, 0.0}}
                            : std::vector<Point>{{0.0, 0.0}, {eq, 0.0}};
        res.stats.elapsed_seconds = seconds_since(t0);
        return res;
    }

    auto pos = initial_positions(g, pinned, cfg.seed,
                                 K * std::sqrt(static_cast<double>(n)) / 2.0);
    auto is_pinned = [&](int i) {
        return i < static_cast<int>(pinned.size()) && pinned[i].has_value();
    };

    const double cool = 0.9;
    double step = K;
    double energy = std::numeric_limits<double>::infinity();
    int progress = 0;
    int it = 0;
    for (; it < cfg.iterations && step > 1e-4 * K; ++it) {
        double prev_energy = energy;
        energy = 0.0;
        for (int i = 0; i < n; ++i) {
            double fx = 0.0, fy = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                double dx = pos[j][0] - pos[i][0];
                double dy = pos[j][1] - pos[i][1];
                double dist = std::hypot(dx, dy);
                if (dist < 1e-9) { dx = 1e-9; dy = 0.0; dist = 1e-9; }
                // repulsion C*K^2/d away from every other node
                double fr = C * K * K / dist;
                fx -= dx / dist * fr;
                fy -= dy / dist * fr;
            }
            for (int j : g.adj[i]) {
                double dx = pos[j][0] - pos[i][0];
                double dy = pos[j][1] - pos[i][1];
                double dist = std::hypot(dx, dy);
                if (dist < 1e-9) continue;
                // attraction d^2/K toward the neighbor
                double fa = dist * dist / K;
                fx += dx / dist * fa;
                fy += dy / dist * fa;
            }
            energy += fx * fx + fy * fy;
            if (is_pinned(i)) continue;
            double flen = std::hypot(fx, fy);
            if (flen < 1e-12) continue;
            pos[i][0] += step * fx / flen;
            pos[i][1] += step * fy / flen;
        }
        // adaptive step-length cooling
        if (energy < prev_energy) {
            if (++progress >= 5) {
                progress = 0;
                step /= cool;
            }
        } else {
            progress = 0;
            step *= cool;
        }
    }

    res.coords = std::move(pos);
    res.stats.iterations_run = it;
    res.stats.elapsed_seconds = seconds_since(t0);
    return res;
}

LayoutResult spectral_layout(const PowerGraph& g) {
    require_nonempty(g);
    auto t0 = Clock::now();
    int n = g.node_count();
    LayoutResult res;
    if (n == 1) {
        res.coords = {{0.0, 0.0}};
        res.stats.elapsed_seconds = seconds_since(t0);
        return res;
    }

    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (int u = 0; u < n; ++u) {
        lap(u, u) = static_cast<double>(g.adj[u].size());
        for (int v : g.adj[u]) lap(u, v) = -1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
    Eigen::VectorXd x = solver.eigenvectors().col(1);
    Eigen::VectorXd y = n >= 3 ? Eigen::VectorXd(solver.eigenvectors().col(2))
                               : Eigen::VectorXd(Eigen::VectorXd::Zero(n));
    // deterministic sign: first non-negligible entry is positive
    for (Eigen::VectorXd* v : {&x, &y}) {
        for (int i = 0; i < n; ++i)
            if (std::abs((*v)(i)) > 1e-12) {
                if ((*v)(i) < 0) *v = -*v;
                break;
            }
    }
    res.coords.resize(n);
    for (int i = 0; i < n; ++i) res.coords[i] = {x(i), y(i)};
    res.stats.elapsed_seconds = seconds_since(t0);
    return res;
}

LayoutResult shell_layout(const PowerGraph& g) {
    require_nonempty(g);
    auto t0 = Clock::now();
    int n = g.node_count();
    LayoutResult res;
    res.coords.resize(n);
    if (n == 1) {
        res.coords[0] = {0.0, 0.0};
    } else {
        for (int i = 0; i < n; ++i) {
            double theta = 2.0 * std::numbers::pi * i / n;
            res.coords[i] = {std::cos(theta), std::sin(theta)};
        }
    }
    res.stats.elapsed_seconds = seconds_since(t0);
    return res;
}

LayoutResult grid_layout(const PowerGraph& g) {
    require_nonempty(g);
    auto t0 = Clock::now();
    int n = g.node_count();
    int ncols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    LayoutResult res;
    res.coords.resize(n);
    for (int i = 0; i < n; ++i)
        res.coords[i] = {static_cast<double>(i % ncols),
                         -static_cast<double>(i / ncols)};
    res.stats.elapsed_seconds = seconds_since(t0);
    return res;
}

namespace {

LayoutResult run_algorithm(const PowerGraph& g, const LayoutConfig& cfg,
                           const PinnedCoords& pinned) {
    switch (cfg.algorithm) {
    case LayoutAlgorithm::KamadaKawai: return kamada_kawai(g, cfg, pinned);
    case LayoutAlgorithm::Spring: return spring_layout(g, cfg, pinned);
    case LayoutAlgorithm::Sfdp: return sfdp_layout(g, cfg, pinned);
    case LayoutAlgorithm::Spectral:
    case LayoutAlgorithm::Shell:
    case LayoutAlgorithm::Grid:
        if (any_pinned(pinned))
            throw Error(ErrorCode::InvalidArgument,
                        std::string(algorithm_name(cfg.algorithm)) +
                            " layout does not support pinned coordinates");
        if (cfg.algorithm == LayoutAlgorithm::Spectral) return spectral_layout(g);
        if (cfg.algorithm == LayoutAlgorithm::Shell) return shell_layout(g);
        return grid_layout(g);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown layout algorithm");
}

PowerGraph subgraph_of(const PowerGraph& g, const std::vector<int>& nodes,
                       std::vector<int>& index_in_sub) {
    PowerGraph sub;
    for (size_t i = 0; i < nodes.size(); ++i) index_in_sub[nodes[i]] = (int)i;
    sub.adj.resize(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) {
        sub.node_comp_map.push_back(g.node_comp_map[nodes[i]]);
        for (int v : g.adj[nodes[i]]) sub.adj[i].push_back(index_in_sub[v]);
        std::sort(sub.adj[i].begin(), sub.adj[i].end());
    }
    return sub;
}

} // namespace

LayoutResult compute_layout(const PowerGraph& g, const LayoutConfig& cfg,
                            const PinnedCoords& pinned) {
    require_nonempty(g);
    bool global_placement = cfg.algorithm == LayoutAlgorithm::Shell ||
                            cfg.algorithm == LayoutAlgorithm::Grid;
    auto comps = connected_components(g);
    if (comps.size() == 1 || global_placement)
        return run_algorithm(g, cfg, pinned);

    auto t0 = Clock::now();
    LayoutResult res;
    res.coords.resize(g.node_count());

    struct Placed {
        std::vector<int> nodes;
        std::vector<Point> coords;
        bool has_pins = false;
        double minx = 0, maxx = 0, miny = 0, maxy = 0;
    };
    std::vector<Placed> placed;
    double pinned_maxx = 0.0;
    bool saw_pins = false;

    for (const auto& comp : comps) {
        std::vector<int> index_in_sub(g.node_count(), -1);
        PowerGraph sub = subgraph_of(g, comp, index_in_sub);
        PinnedCoords sub_pins(comp.size());
        bool has_pins = false;
        for (size_t i = 0; i < comp.size(); ++i)
            if (comp[i] < static_cast<int>(pinned.size()) && pinned[comp[i]]) {
                sub_pins[i] = pinned[comp[i]];
                has_pins = true;
            }
        LayoutResult sr = run_algorithm(sub, cfg, sub_pins);
        res.stats.iterations_run =
            std::max(res.stats.iterations_run, sr.stats.iterations_run);
        res.stats.final_stress += sr.stats.final_stress;

        Placed p;
        p.nodes = comp;
        p.coords = std::move(sr.coords);
        p.has_pins = has_pins;
        p.minx = p.maxx = p.coords[0][0];
        p.miny = p.maxy = p.coords[0][1];
        for (const auto& c : p.coords) {
            p.minx = std::min(p.minx, c[0]);
            p.maxx = std::max(p.maxx, c[0]);
            p.miny = std::min(p.miny, c[1]);
            p.maxy = std::max(p.maxy, c[1]);
        }
        if (has_pins) {
            saw_pins = true;
            pinned_maxx = std::max(pinned_maxx, p.maxx);
        }
        placed.push_back(std::move(p));
    }

    // pinned components keep absolute positions; free ones pack left to right
    double cursor = saw_pins ? pinned_maxx : 0.0;
    double prev_width = 0.0;
    bool first_free = !saw_pins;
    for (auto& p : placed) {
        if (p.has_pins) {
            for (size_t i = 0; i < p.nodes.size(); ++i)
                res.coords[p.nodes[i]] = p.coords[i];
            continue;
        }
        double width = p.maxx - p.minx;
        double height = p.maxy - p.miny;
        if (first_free) {
            first_free = false;
        } else {
            double pad = 0.1 * std::max({prev_width, width, height});
            if (pad <= 0.0) pad = 1.0;
            cursor += pad;
        }
        double dx = cursor - p.minx;
        double dy = -(p.miny + p.maxy) / 2.0;
        for (size_t i = 0; i < p.nodes.size(); ++i)
            res.coords[p.nodes[i]] = {p.coords[i][0] + dx, p.coords[i][1] + dy};
        cursor += width;
        prev_width = width;
    }

    res.stats.elapsed_seconds = seconds_since(t0);
    return res;
}

Network layout_network(const Network& net, const LayoutConfig& cfg,
                       const GraphConfig& gcfg, LayoutStats* stats_out) {
    Network out = net;
    PowerGraph g = build_graph(net, gcfg);
    if (g.node_count() == 0) {
        if (stats_out) *stats_out = {};
        return out;
    }

    PinnedCoords pinned(g.node_count());
    int pin_count = 0;
    if (cfg.fixed) {
        for (int i = 0; i < g.node_count(); ++i) {
            const json* rec = net.find_component(g.node_comp_map[i]);
            if (rec && rec->contains("xcoord_1") && rec->contains("ycoord_1") &&
                (*rec)["xcoord_1"].is_number() && (*rec)["ycoord_1"].is_number()) {
                pinned[i] = Point{(*rec)["xcoord_1"].get<double>(),
                                  (*rec)["ycoord_1"].get<double>()};
                ++pin_count;
            }
        }
    }

    if (cfg.fixed && pin_count == g.node_count()) {
        if (stats_out) *stats_out = {}; // nothing to compute
        return out;
    }

    LayoutConfig eff = cfg;
    if (cfg.fixed) eff.algorithm = LayoutAlgorithm::Sfdp; // completion mode

    LayoutResult res = compute_layout(g, eff, pinned);
    for (int i = 0; i < g.node_count(); ++i) {
        const ComponentRef& ref = g.node_comp_map[i];
        json& rec = out.components[ref.type][ref.id];
        if (pinned[i]) {
            // bit-identical: restore the original JSON values untouched
            continue;
        }
        rec["xcoord_1"] = res.coords[i][0];
        rec["ycoord_1"] = res.coords[i][1];
    }
    if (stats_out) *stats_out = res.stats;
    return out;
}

} // namespace gridplot
