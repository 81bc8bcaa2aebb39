#include <doctest.h>

#include <algorithm>
#include <random>

#include "ivelvp/games.hpp"
#include "oracles.hpp"

using namespace ivelvp;

namespace {

struct Pair {
    IntervalGame game;
    oracle::Game raw;
};

Pair random_game(std::mt19937_64& rng, std::size_t a, std::size_t b, bool metric) {
    oracle::Game raw;
    raw.sizes = {a, b};
    std::vector<Player> players;
    std::uniform_real_distribution<double> u(0.2, 2.0);
    for (std::size_t n : raw.sizes) {
        Player p;
        std::vector<double> pos(n);
        for (auto& x : pos) x = u(rng) * 3;
        oracle::Dist d(n, std::vector<double>(n));
        for (std::size_t i = 0; i < n; ++i) {
            p.strategies.push_back("s" + std::to_string(i));
            for (std::size_t j = 0; j < n; ++j) d[i][j] = metric ? std::abs(pos[i] - pos[j]) : (i == j ? 0 : 1);
        }
        p.dist = d;
        raw.dist.push_back(d);
        players.push_back(std::move(p));
    }
    std::vector<std::vector<Interval>> losses(2);
    raw.loss.resize(2);
    for (int i = 0; i < 2; ++i) {
        for (std::size_t k = 0; k < a * b; ++k) {
            raw.loss[i].push_back(oracle::random_interval(rng, 0, 3));
            losses[i].emplace_back(raw.loss[i].back().lo, raw.loss[i].back().hi);
        }
    }
    return {IntervalGame(players, losses), raw};
}

}  // namespace

TEST_CASE("profile encoding is row-major") {
    std::mt19937_64 rng(1);
    const auto p = random_game(rng, 3, 4, false);
    CHECK(p.game.profiles() == 12);
    for (std::size_t k = 0; k < 12; ++k) {
        CHECK(p.game.profile(k) == p.raw.decode(k));
        CHECK(p.game.index(p.game.profile(k)) == k);
    }
    CHECK(p.game.deviate(p.game.index({1, 2}), 0, 2) == p.game.index({2, 2}));
}

TEST_CASE("aggregate bifunction and verification match the oracle") {
    std::mt19937_64 rng(99);
    for (int g = 0; g < 20; ++g) {
        const auto p = random_game(rng, 4, 3, g % 2 == 0);
        for (std::size_t a = 0; a < p.game.profiles(); ++a) {
            for (std::size_t b = 0; b < p.game.profiles(); ++b) {
                const auto o = oracle::game_bifunction(p.raw, a, b);
                const auto got = aggregate_bifunction(p.game, a, b);
                REQUIRE(std::abs(got.lo() - o.lo) < 1e-12);
                REQUIRE(std::abs(got.hi() - o.hi) < 1e-12);
                REQUIRE(p.game.dist(a, b) == doctest::Approx(oracle::game_metric(p.raw, a, b)));
            }
            for (double eps : {0.0, 0.1, 1.0}) {
                REQUIRE(verify_epsilon_nash(p.game, a, eps).is_nash == oracle::is_epsilon_nash(p.raw, a, eps));
            }
        }
    }
}

TEST_CASE("unilateral deviation reduces the bifunction to one player") {
    std::mt19937_64 rng(4);
    const auto p = random_game(rng, 3, 3, true);
    for (std::size_t k = 0; k < p.game.profiles(); ++k) {
        for (std::size_t s = 0; s < 3; ++s) {
            const std::size_t y = p.game.deviate(k, 0, s);
            CHECK(aggregate_bifunction(p.game, k, y) == gh_diff(p.game.loss(0, y), p.game.loss(0, k)));
        }
    }
}

TEST_CASE("solver output is an equilibrium from the enumerated set") {
    std::mt19937_64 rng(12);
    int certified = 0;
    for (int g = 0; g < 30; ++g) {
        const auto p = random_game(rng, 5, 5, g % 3 != 0);
        const auto set = oracle::nash_set(p.raw, 0.1);
        const auto r = find_epsilon_nash(p.game, 0.1, rng() % 25, g);
        if (set.empty()) {
            CHECK_FALSE(r.found);
            continue;
        }
        REQUIRE(r.found);
        CHECK(verify_epsilon_nash(p.game, r.profile, 0.1).is_nash);
        CHECK(std::find(set.begin(), set.end(), r.profile) != set.end());
        if (r.guarantee == "certified") ++certified;
    }
    MESSAGE("certified solves: " << certified);
}

TEST_CASE("dominated strategy is caught with a witness") {
    const IntervalGame g({{{"A", "B"}, {}}, {{"A", "B"}, {}}},
                         {{{3, 4}, {3, 5}, {1, 2}, {1, 3}}, {{1, 2}, {2, 3}, {1, 2}, {2, 3}}});
    const auto v = verify_epsilon_nash(g, g.index({0, 0}), 0);
    CHECK_FALSE(v.is_nash);
    CHECK(*v.player == 0);
    CHECK(*v.deviation == 1);
    CHECK(verify_epsilon_nash(g, g.index({1, 0}), 0).is_nash);
}

TEST_CASE("invalid games are rejected") {
    CHECK_THROWS_AS(IntervalGame({{{"A"}, {}}}, {{{0, 1}, {0, 1}}}), Error);
    CHECK_THROWS_AS(IntervalGame({{{"A", "B"}, {{0, 1}, {2, 0}}}}, {{{0, 1}, {0, 1}}}), Error);
}
