#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ivelvp/domain.hpp"
#include "ivelvp/ekeland.hpp"
#include "ivelvp/interval.hpp"

namespace ivelvp {

using Profile = std::vector<std::size_t>;

struct Player {
    std::vector<std::string> strategies;
    Matrix dist;
};

/// Finite noncooperative game with interval losses. Profiles are indexed
/// row-major with player 0 most significant; losses[i][k] is player i's
/// loss at profile k.
class IntervalGame {
public:
    IntervalGame(std::vector<Player> players, std::vector<std::vector<Interval>> losses);

    std::size_t players() const noexcept { return players_.size(); }
    std::size_t strategies(std::size_t i) const { return players_[i].strategies.size(); }
    std::size_t profiles() const noexcept { return profiles_; }
    const Player& player(std::size_t i) const { return players_[i]; }

    std::size_t index(const Profile& x) const;
    Profile profile(std::size_t k) const;
    const Interval& loss(std::size_t i, std::size_t k) const { return losses_[i][k]; }
    /// Index of x with player i's strategy replaced by s.
    std::size_t deviate(std::size_t k, std::size_t i, std::size_t s) const;

    /// Product metric: sum of the per-player distances.
    double dist(std::size_t a, std::size_t b) const;
    std::string describe(std::size_t k) const;

private:
    std::vector<Player> players_;
    std::vector<std::vector<Interval>> losses_;
    std::vector<std::size_t> stride_;
    std::size_t profiles_ = 0;
};

/// Sum over players of f_i(y_i, x_-i) (-)gH f_i(x_i, x_-i).
Interval aggregate_bifunction(const IntervalGame& g, std::size_t x, std::size_t y);

struct NashVerdict {
    bool is_nash = true;
    std::optional<std::size_t> player;
    std::optional<std::size_t> deviation;  // strategy index of that player
};

/// Exhaustive check over all players and unilateral deviations; epsilon may
/// be zero.
NashVerdict verify_epsilon_nash(const IntervalGame& g, std::size_t x, double epsilon);

struct NashResult {
    bool found = false;
    std::size_t profile = 0;
    /// "bifunction-ekeland" or "enumeration".
    std::string method;
    /// "certified" when the triangle check passed exhaustively, else "heuristic".
    std::string guarantee;
    TriangleCheck triangle;
    std::optional<BifunctionCertificate> certificate;
};

/// Bifunction Ekeland on the aggregated bifunction from x0, followed by
/// verification. When the triangle property fails and the descent end point
/// is not an equilibrium, falls back to enumeration in profile order;
/// found is false when no epsilon-Nash profile exists.
NashResult find_epsilon_nash(const IntervalGame& g, double epsilon, std::size_t x0, std::uint64_t seed = 0);

}  // namespace ivelvp
