#include "ivelvp/games.hpp"

#include <cmath>
#include <sstream>

namespace ivelvp {

IntervalGame::IntervalGame(std::vector<Player> players, std::vector<std::vector<Interval>> losses)
    : players_(std::move(players)), losses_(std::move(losses)) {
    if (players_.empty()) throw Error(ErrorKind::InvalidArgument, "a game needs at least one player");
    profiles_ = 1;
    for (std::size_t i = 0; i < players_.size(); ++i) {
        auto& p = players_[i];
        if (p.strategies.empty()) {
            throw Error(ErrorKind::InvalidArgument, "player " + std::to_string(i) + " has no strategies");
        }
        if (p.dist.empty()) {
            // Discrete metric by default.
            p.dist.assign(p.strategies.size(), std::vector<double>(p.strategies.size(), 1.0));
            for (std::size_t s = 0; s < p.strategies.size(); ++s) p.dist[s][s] = 0.0;
        }
        std::vector<Point> coords;
        for (std::size_t s = 0; s < p.strategies.size(); ++s) coords.push_back({static_cast<double>(s)});
        Domain::finite(p.strategies, coords, p.dist);  // validates the metric
        if (profiles_ > 1000000 / p.strategies.size()) {
            throw Error(ErrorKind::InvalidArgument, "product space exceeds 1e6 profiles");
        }
        profiles_ *= p.strategies.size();
    }
    stride_.assign(players_.size(), 1);
    for (std::size_t i = players_.size() - 1; i-- > 0;) stride_[i] = stride_[i + 1] * players_[i + 1].strategies.size();
    if (losses_.size() != players_.size()) {
        throw Error(ErrorKind::InvalidArgument, "one loss table per player is required");
    }
    for (std::size_t i = 0; i < losses_.size(); ++i) {
        if (losses_[i].size() != profiles_) {
            throw Error(ErrorKind::InvalidArgument, "loss table of player " + std::to_string(i) + " has " +
                                                        std::to_string(losses_[i].size()) + " entries, expected " +
                                                        std::to_string(profiles_));
        }
    }
}

std::size_t IntervalGame::index(const Profile& x) const {
    if (x.size() != players_.size()) throw Error(ErrorKind::InvalidArgument, "profile has the wrong length");
    std::size_t k = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] >= players_[i].strategies.size()) {
            throw Error(ErrorKind::InvalidArgument, "strategy index out of range for player " + std::to_string(i));
        }
        k += x[i] * stride_[i];
    }
    return k;
}

Profile IntervalGame::profile(std::size_t k) const {
    Profile x(players_.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (k / stride_[i]) % players_[i].strategies.size();
    return x;
}

std::size_t IntervalGame::deviate(std::size_t k, std::size_t i, std::size_t s) const {
    const std::size_t cur = (k / stride_[i]) % players_[i].strategies.size();
    return k - cur * stride_[i] + s * stride_[i];
}

double IntervalGame::dist(std::size_t a, std::size_t b) const {
    double d = 0.0;
    for (std::size_t i = 0; i < players_.size(); ++i) {
        const std::size_t n = players_[i].strategies.size();
        d += players_[i].dist[(a / stride_[i]) % n][(b / stride_[i]) % n];
    }
    return d;
}

std::string IntervalGame::describe(std::size_t k) const {
    const Profile x = profile(k);
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << players_[i].strategies[x[i]];
    os << ')';
    return os.str();
}

Interval aggregate_bifunction(const IntervalGame& g, std::size_t x, std::size_t y) {
    const Profile py = g.profile(y);
    Interval sum(0.0, 0.0);
    for (std::size_t i = 0; i < g.players(); ++i) {
        sum = sum + gh_diff(g.loss(i, g.deviate(x, i, py[i])), g.loss(i, x));
    }
    return sum;
}

NashVerdict verify_epsilon_nash(const IntervalGame& g, std::size_t x, double epsilon) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw Error(ErrorKind::InvalidArgument, "epsilon must be a nonnegative finite number");
    }
    if (x >= g.profiles()) throw Error(ErrorKind::InvalidArgument, "profile index out of range");
    const Profile px = g.profile(x);
    NashVerdict v;
    for (std::size_t i = 0; i < g.players(); ++i) {
        const Interval& here = g.loss(i, x);
        for (std::size_t s = 0; s < g.strategies(i); ++s) {
            if (s == px[i]) continue;
            const double d = epsilon * g.player(i).dist[px[i]][s];
            if (strictly_below(shifted(g.loss(i, g.deviate(x, i, s)), d), here)) {
                v.is_nash = false;
                v.player = i;
                v.deviation = s;
                return v;
            }
        }
    }
    return v;
}

NashResult find_epsilon_nash(const IntervalGame& g, double epsilon, std::size_t x0, std::uint64_t seed) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw Error(ErrorKind::InvalidArgument, "epsilon must be a positive finite number");
    }
    if (x0 >= g.profiles()) throw Error(ErrorKind::InvalidArgument, "x0 is not a profile of the game");
    const IndexBifunction F = [&g](std::size_t x, std::size_t y) { return aggregate_bifunction(g, x, y); };
    const IndexMetric d = [&g](std::size_t a, std::size_t b) { return g.dist(a, b); };

    NashResult r;
    r.triangle = check_triangle(g.profiles(), F, seed);
    const bool certified = r.triangle.holds && r.triangle.exhaustive;
    r.guarantee = certified ? "certified" : "heuristic";

    BifunctionOptions opts;
    opts.require_triangle = false;
    opts.seed = seed;
    opts.max_iterations = 4 * g.profiles() + 16;
    try {
        auto cert = ekeland_bifunction(g.profiles(), F, d, epsilon, x0, opts);
        cert.triangle = r.triangle;
        r.certificate = cert;
    } catch (const Error& e) {
        // Without the triangle property the descent may cycle.
        if (e.kind() != ErrorKind::Internal || r.triangle.holds) throw;
    }

    if (r.certificate) {
        const std::size_t x = r.certificate->x_bar;
        const bool nash = verify_epsilon_nash(g, x, epsilon).is_nash;
        if (r.certificate->strict_b && !nash) {
            throw Error(ErrorKind::Internal, "descent end point " + g.describe(x) +
                                                 " satisfies the bifunction conclusion but is not epsilon-Nash");
        }
        if (r.triangle.holds && !nash) {
            throw Error(ErrorKind::Internal, "verification failed after a solve with the triangle property");
        }
        if (nash) {
            r.found = true;
            r.profile = x;
            r.method = "bifunction-ekeland";
            return r;
        }
    }
    r.method = "enumeration";
    for (std::size_t k = 0; k < g.profiles(); ++k) {
        if (verify_epsilon_nash(g, k, epsilon).is_nash) {
            r.found = true;
            r.profile = k;
            return r;
        }
    }
    return r;
}

}  // namespace ivelvp
