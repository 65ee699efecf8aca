// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "swarmform/behaviors.hpp"
#include "swarmform/dynamics.hpp"
#include "swarmform/io.hpp"
#include "swarmform/metrics.hpp"
#include "swarmform/scenario.hpp"
#include "swarmform/topology.hpp"

using namespace swarmform;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& name, const std::string& detail) {
    std::printf("[%s] C%d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string format(const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

double median(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---------------------------------------------------------------------------
// C1: discrete two-body trajectories against a continuous-time reference.

// State: x0, y0, x1, y1, vx0, vy0, vx1, vy1.
using State = std::array<double, 8>;

State two_body_rhs(const State& s, double k, double b, double rest) {
    const double dx = s[0] - s[2];
    const double dy = s[1] - s[3];
    const double r = std::sqrt(dx * dx + dy * dy);
    const double stretch = (r - rest) / r;
    const double fx = -k * stretch * dx - b * (s[4] - s[6]);
    const double fy = -k * stretch * dy - b * (s[5] - s[7]);
    return {s[4], s[5], s[6], s[7], fx, fy, -fx, -fy};
}

State rk4(const State& s, double h, double k, double b, double rest) {
    auto axpy = [](const State& a, double c, const State& d) {
        State o;
        for (int i = 0; i < 8; ++i) o[i] = a[i] + c * d[i];
        return o;
    };
    const State k1 = two_body_rhs(s, k, b, rest);
    const State k2 = two_body_rhs(axpy(s, h / 2, k1), k, b, rest);
    const State k3 = two_body_rhs(axpy(s, h / 2, k2), k, b, rest);
    const State k4 = two_body_rhs(axpy(s, h, k3), k, b, rest);
    State o;
    for (int i = 0; i < 8; ++i) o[i] = s[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return o;
}

void criterion_two_body_oracle() {
    // Sampling ranges for which unit-mass two-body runs are resolved by the step.
    constexpr double k_lo = 0.005, k_hi = 0.05;
    constexpr double b_lo = 0.02, b_hi = 0.2;
    constexpr double dt_lo = 0.05, dt_hi = 0.3;
    constexpr double rest_lo = 5.0, rest_hi = 20.0;
    constexpr double sep_lo = 0.5, sep_hi = 2.0;  // times rest length
    constexpr int samples = 200;
    constexpr int steps = 200;
    constexpr int substeps = 100;
    constexpr double tolerance = 0.02;

    const auto start = Clock::now();
    std::mt19937_64 gen(1001);
    auto U = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); };
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const double k = U(k_lo, k_hi), b = U(b_lo, b_hi), dt = U(dt_lo, dt_hi);
        const double rest = U(rest_lo, rest_hi);
        const double sep = rest * U(sep_lo, sep_hi);
        const double angle = U(0, 6.283185307179586);
        const Vec2 p0{U(-50, 50), U(-50, 50)};
        const Vec2 p1 = p0 + rotated({sep, 0}, angle);

        World w;
        w.agents = {{0, p0, {}, 1.0}, {1, p1, {}, 1.0}};
        LinkSet links;
        links.add({0, 1, rest, k, b});
        links.add({1, 0, rest, k, b});
        SimParams params;
        params.dt = dt;

        State ref{p0.x, p0.y, p1.x, p1.y, 0, 0, 0, 0};
        const double scale = std::max(sep, rest);
        for (int t = 0; t < steps; ++t) {
            w = integrate_step(w, links, params);
            for (int sub = 0; sub < substeps; ++sub) ref = rk4(ref, dt / substeps, k, b, rest);
            const double e0 = std::hypot(w.agents[0].position.x - ref[0], w.agents[0].position.y - ref[1]);
            const double e1 = std::hypot(w.agents[1].position.x - ref[2], w.agents[1].position.y - ref[3]);
            worst = std::max(worst, std::max(e0, e1) / scale);
        }
    }
    const double elapsed = seconds_since(start);
    report(1, worst < tolerance && elapsed < 10.0, "two-body oracle equivalence",
           format("worst relative position error %.4f%% (limit 2%%) over %d samples x %d steps, %.2f s (limit 10 s)",
                  100 * worst, samples, steps, elapsed));
}

// ---------------------------------------------------------------------------
// C2: recorded positions obey x[t+2] = 2 x[t+1] - x[t] + F(t+1) at unit step.

void criterion_recurrence() {
    ScenarioConfig c;
    c.n_agents = 50;
    c.max_steps = 500;
    c.window = 1000;  // never declare convergence: keep all 500 steps
    c.seed = 7;
    const World initial = init_world(c);
    const RunResult r = run(c, initial);

    std::vector<const World*> worlds{&initial};
    for (const auto& f : r.frames) worlds.push_back(&f);
    double worst = 0.0;
    long checked = 0;
    for (std::size_t t = 0; t + 2 < worlds.size(); ++t) {
        const World& w1 = *worlds[t + 1];
        const LinkSet links = dispersion_controller(w1, c.L_d, c.sensing_range, {c.k, c.b}).links;
        const auto forces = net_forces(w1, links);
        for (std::size_t i = 0; i < w1.size(); ++i) {
            const Vec2 x0 = worlds[t]->agents[i].position;
            const Vec2 x1 = w1.agents[i].position;
            const Vec2 x2 = worlds[t + 2]->agents[i].position;
            const Vec2 predicted = 2.0 * x1 - x0 + forces[i] / w1.agents[i].mass;
            worst = std::max(worst, (x2 - predicted).norm() / std::max(1.0, x2.norm()));
            ++checked;
        }
    }
    report(2, r.steps_executed == 500 && worst <= 1e-9, "unit-step recurrence identity",
           format("%ld agent-steps over %ld steps, worst relative residual %.3e (limit 1e-9)", checked,
                  r.steps_executed, worst));
}

// ---------------------------------------------------------------------------

void criterion_dispersion() {
    const auto start = Clock::now();
    int good = 0;
    double worst_err = 0.0;
    std::string failed;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        ScenarioConfig c;
        c.n_agents = 50;
        c.max_steps = 5000;
        c.seed = seed;
        const RunResult r = run(c);
        const double err = r.summary.final_mean_abs_error.value_or(INFINITY);
        const bool ok = r.converged && err < 0.05 * c.L_d;
        if (ok) {
            ++good;
            worst_err = std::max(worst_err, err);
        } else {
            failed += format(" %llu(conv=%d,err=%.3f)", static_cast<unsigned long long>(seed), r.converged, err);
        }
    }
    const double elapsed = seconds_since(start);
    report(3, good >= 18 && elapsed < 30.0, "dispersion quality",
           format("%d/20 seeds converged with mean |error| < 0.5 (need 18); worst passing error %.3f; "
                  "%.2f s (limit 30 s); misses:%s",
                  good, worst_err, elapsed, failed.empty() ? " none" : failed.c_str()));
}

void criterion_line() {
    const auto start = Clock::now();
    int good = 0;
    bool forces_ok = true;
    double worst_ratio = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        ScenarioConfig c;
        c.behavior = Behavior::Line;
        c.n_agents = 20;
        c.seed = seed;
        const RunResult r = run(c);
        const bool stretched = r.summary.final_phase == "stretching";
        if (stretched && r.summary.final_eigen_ratio < 0.05) ++good;
        if (stretched) worst_ratio = std::max(worst_ratio, r.summary.final_eigen_ratio);
        forces_ok = forces_ok && r.forced_agents.size() == (stretched ? 2u : 0u);
    }
    const double elapsed = seconds_since(start);
    report(4, good >= 16 && forces_ok && elapsed < 60.0, "line formation quality",
           format("%d/20 seeds stretched with eigen_ratio < 0.05 (need 16); worst stretched ratio %.2e; "
                  "exactly two forced agents per stretched run: %s; %.2f s (limit 60 s)",
                  good, worst_ratio, forces_ok ? "yes" : "no", elapsed));
}

void criterion_connectivity() {
    const std::array<double, 4> ranges{30, 40, 50, 60};
    std::vector<int> at40, at60;
    bool monotone = true;
    std::string counts;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        std::array<int, 4> cc{};
        for (std::size_t i = 0; i < ranges.size(); ++i) {
            ScenarioConfig c;
            c.n_agents = 100;
            c.region = {100, 100};
            c.sensing_range = SensingRange(ranges[i]);
            c.seed = seed;
            cc[i] = run(c).summary.final_component_count;
        }
        for (std::size_t i = 1; i < cc.size(); ++i) monotone = monotone && cc[i] <= cc[i - 1];
        at40.push_back(cc[1]);
        at60.push_back(cc[3]);
        if (seed <= 3) counts += format(" seed%llu=%d/%d/%d/%d", static_cast<unsigned long long>(seed), cc[0], cc[1], cc[2], cc[3]);
    }
    const double m40 = median(at40), m60 = median(at60);
    report(5, m40 >= m60 && monotone, "sensing-range connectivity",
           format("median components at 40 = %.1f, at 60 = %.1f; non-increasing in range for every seed: %s;%s",
                  m40, m60, monotone ? "yes" : "no", counts.c_str()));
}

// ---------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void criterion_determinism() {
    const fs::path dir = fs::temp_directory_path() / "swarmform_acceptance";
    fs::create_directories(dir);
    std::vector<ScenarioConfig> scenarios(3);
    scenarios[0].n_agents = 50;
    scenarios[1].behavior = Behavior::Line;
    scenarios[1].n_agents = 20;
    scenarios[2].n_agents = 100;
    scenarios[2].sensing_range = SensingRange(40);
    bool identical = true;
    for (std::size_t s = 0; s < scenarios.size(); ++s) {
        for (int rep = 0; rep < 2; ++rep) {
            const RunResult r = run(scenarios[s]);
            write_trajectory(r, dir / format("traj_%zu_%d.csv", s, rep));
            write_metrics(r, dir / format("metrics_%zu_%d.json", s, rep));
        }
        identical = identical &&
                    slurp(dir / format("traj_%zu_0.csv", s)) == slurp(dir / format("traj_%zu_1.csv", s)) &&
                    slurp(dir / format("metrics_%zu_0.json", s)) == slurp(dir / format("metrics_%zu_1.json", s));
    }
    report(6, identical, "determinism",
           format("dispersion, line and limited-range scenarios produce byte-identical files: %s",
                  identical ? "yes" : "no"));
}

// ---------------------------------------------------------------------------
// C7: randomized invariant suites.

World random_world(std::mt19937_64& gen, int n, double extent, double speed) {
    std::uniform_real_distribution<double> pos(0, extent), vel(-speed, speed);
    World w;
    for (int i = 0; i < n; ++i) w.agents.push_back({i, {pos(gen), pos(gen)}, {vel(gen), vel(gen)}, 1.0});
    return w;
}

bool near(const Vec2& a, const Vec2& b, double tol) {
    return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol;
}

int dynamics_invariants(std::mt19937_64& gen, int cases) {
    std::uniform_real_distribution<double> U(0, 1);
    int ok = 0;
    for (int c = 0; c < cases; ++c) {
        const int n = 2 + static_cast<int>(U(gen) * 8);
        const World w = random_world(gen, n, 50, 2);
        const LinkSet links = dispersion_links(w, 1 + 15 * U(gen), 3, SensingRange::unlimited(),
                                               {0.01 + U(gen), U(gen)});
        bool pass = true;
        for (const auto& l : links.links) {
            const SpringLink back{l.to, l.from, l.rest_length, l.k, l.b};
            pass = pass && pair_force(l, w[l.from], w[l.to]) == -pair_force(back, w[l.to], w[l.from]);
        }
        const auto base = net_forces(w, links);
        World moved = w, turned = w;
        const Vec2 shift{200 * U(gen) - 100, 200 * U(gen) - 100};
        const double angle = 6.283185307179586 * U(gen);
        for (auto& a : moved.agents) a.position += shift;
        for (auto& a : turned.agents) {
            a.position = rotated(a.position, angle);
            a.velocity = rotated(a.velocity, angle);
        }
        const auto f_moved = net_forces(moved, links);
        const auto f_turned = net_forces(turned, links);
        for (int i = 0; i < n; ++i) {
            pass = pass && near(f_moved[i], base[i], 1e-9) && near(f_turned[i], rotated(base[i], angle), 1e-9);
        }
        ok += pass;
    }
    return ok;
}

int topology_invariants(std::mt19937_64& gen, int cases) {
    std::uniform_real_distribution<double> U(0, 1);
    int ok = 0;
    for (int c = 0; c < cases; ++c) {
        const int n = 2 + static_cast<int>(U(gen) * 20);
        const World w = random_world(gen, n, 80, 0);
        const SensingRange range = U(gen) < 0.5 ? SensingRange::unlimited() : SensingRange(5 + 60 * U(gen));
        bool pass = true;

        const auto pairs = greedy_pairing(w, range);
        std::set<AgentId> used;
        for (const auto& p : pairs) pass = pass && p.a < p.b && used.insert(p.a).second && used.insert(p.b).second;
        if (range.is_unlimited()) pass = pass && pairs.size() == w.size() / 2;

        if (!pairs.empty()) {
            const PairGraph g = pair_graph(w, pairs, range);
            for (int i = 0; i < static_cast<int>(g.pairs.size()); ++i) pass = pass && g.degree(i) <= 2;
            std::size_t covered = 0;
            for (const auto& path : g.paths()) covered += path.size();
            // A forest on m nodes with p components has m - p edges.
            pass = pass && covered == g.pairs.size() && g.edges.size() + g.paths().size() == g.pairs.size();
        }

        const double r1 = 1 + 40 * U(gen), r2 = r1 + 40 * U(gen);
        const auto c1 = connected_components(w, r1);
        const auto c2 = connected_components(w, r2);
        std::vector<AgentId> all;
        for (const auto& comp : c1) all.insert(all.end(), comp.begin(), comp.end());
        std::sort(all.begin(), all.end());
        pass = pass && all.size() == w.size() && std::adjacent_find(all.begin(), all.end()) == all.end() &&
               c1.size() >= c2.size();
        ok += pass;
    }
    return ok;
}

int metric_invariants(std::mt19937_64& gen, int cases) {
    std::uniform_real_distribution<double> U(0, 1);
    int ok = 0;
    for (int c = 0; c < cases; ++c) {
        const int n = 2 + static_cast<int>(U(gen) * 40);
        World w = random_world(gen, n, 50, 0);
        if (U(gen) < 0.3) {
            for (auto& a : w.agents) a.position.y = 0.5 * a.position.x + U(gen) - 0.5;
        }
        const LineFit fit = collinearity(w);
        World moved = w;
        const double angle = 6.283185307179586 * U(gen);
        const Vec2 shift{400 * U(gen) - 200, 400 * U(gen) - 200};
        for (auto& a : moved.agents) a.position = rotated(a.position, angle) + shift;
        const LineFit after = collinearity(moved);
        const double r = 1 + 40 * U(gen);
        const bool pass = fit.eigen_ratio >= 0 && fit.eigen_ratio <= 1 &&
                          std::abs(after.eigen_ratio - fit.eigen_ratio) <= 1e-9 &&
                          std::abs(after.rms_perpendicular - fit.rms_perpendicular) <=
                              1e-9 * std::max(1.0, fit.rms_perpendicular) &&
                          component_count(w, r) >= component_count(w, r + 30 * U(gen));
        ok += pass;
    }
    return ok;
}

void criterion_invariants() {
    constexpr int cases = 1000;
    std::mt19937_64 gen(7007);
    const int d = dynamics_invariants(gen, cases);
    const int t = topology_invariants(gen, cases);
    const int m = metric_invariants(gen, cases);
    report(7, d == cases && t == cases && m == cases, "invariant suites",
           format("force symmetry/translation/rotation %d/%d, matching/path-forest/partition %d/%d, "
                  "metric invariance %d/%d",
                  d, cases, t, cases, m, cases));
}

}  // namespace

int main() {
    const std::vector<std::function<void()>> criteria{
        criterion_two_body_oracle, criterion_recurrence, criterion_dispersion, criterion_line,
        criterion_connectivity,    criterion_determinism, criterion_invariants};
    for (const auto& c : criteria) c();
    std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
