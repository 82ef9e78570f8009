#include "game.hpp"

#include <random>
#include <set>
#include <stdexcept>

namespace mu4 {

namespace {

// Legal seeker moves for residue r against adversary digit c.
std::vector<std::pair<long long, long long>> round_moves(long long r, long long c) {
    std::vector<std::pair<long long, long long>> out;
    for (long long w : {0LL, c}) {
        long long diff = r - w;
        if (diff % 4 == 0) out.emplace_back(w, diff / 4);
    }
    return out;
}

}  // namespace

GameResult universal_game(const DigitSet& c) {
    auto automaton = ResidueAutomaton::build([&] {
        std::vector<long long> d = c.digits();
        d.push_back(0);
        return d;
    }());
    long long bound = automaton.bound();

    std::vector<long long> states;
    for (long long r = -bound; r <= bound; ++r) states.push_back(r);

    // Two-fixpoint solution of the edge-accepting Buchi condition:
    //   Win = nu Z. mu Y. { r : for all c, some move is accepting into Z
    //                           or moves into Y }.
    std::set<long long> z(states.begin(), states.end());
    std::map<long long, int> rank;
    while (true) {
        // Inner mu iteration, level by level against a frozen snapshot so
        // that rank(r) = number of rounds until an accepting move is forced;
        // every non-accepting strategy move then strictly lowers the rank.
        std::set<long long> y;
        std::map<long long, int> y_rank;
        int round = 0;
        while (true) {
            ++round;
            std::vector<long long> additions;
            for (long long r : states) {
                if (y.count(r)) continue;
                bool all_adversary_ok = true;
                for (long long d : c.digits()) {
                    bool good = false;
                    for (auto& [w, to] : round_moves(r, d)) {
                        if ((w != 0 && z.count(to)) || y.count(to)) {
                            good = true;
                            break;
                        }
                    }
                    if (!good) {
                        all_adversary_ok = false;
                        break;
                    }
                }
                if (all_adversary_ok) additions.push_back(r);
            }
            if (additions.empty()) break;
            for (long long r : additions) {
                y.insert(r);
                y_rank[r] = round;
            }
        }
        if (y == z) {
            rank = std::move(y_rank);
            break;
        }
        z = std::move(y);
    }

    GameResult result;
    result.core_bound = bound;
    result.seeker_wins = !z.empty();
    result.winning_residues.assign(z.begin(), z.end());
    result.rank = rank;
    for (long long r : result.winning_residues) {
        for (long long d : c.digits()) {
            // Prefer an accepting move that stays in the winning set, else
            // a move that strictly lowers the rank toward the next accept.
            long long chosen = 0;
            bool have = false;
            for (auto& [w, to] : round_moves(r, d)) {
                if (w != 0 && z.count(to)) {
                    chosen = w;
                    have = true;
                    break;
                }
            }
            if (!have) {
                for (auto& [w, to] : round_moves(r, d)) {
                    if (z.count(to) && rank.at(to) < rank.at(r)) {
                        chosen = w;
                        have = true;
                        break;
                    }
                }
            }
            if (!have) throw std::logic_error("winning state without a winning move");
            result.strategy[r][d] = chosen;
        }
    }
    return result;
}

PlayoutOutcome replay_strategy(const GameResult& game, const DigitSet& c, long long start,
                               int steps, std::uint64_t seed) {
    if (!game.seeker_wins) return {false, 0, "no winning strategy to replay"};
    if (!game.strategy.count(start)) return {false, 0, "start residue is not winning"};
    std::mt19937_64 rng(seed);
    const auto& digits = c.digits();
    long long r = start;
    int gap = 0, max_gap = 0;
    for (int n = 0; n < steps; ++n) {
        long long d = digits[rng() % digits.size()];
        auto sit = game.strategy.find(r);
        if (sit == game.strategy.end())
            return {false, max_gap, "walk left the winning set"};
        long long w = sit->second.at(d);
        long long diff = r - w;
        if (diff % 4 != 0) return {false, max_gap, "strategy move violates congruence"};
        if (w != 0 && w != d)
            return {false, max_gap, "strategy move outside {0, adversary digit}"};
        r = diff / 4;
        if (w != 0) {
            gap = 0;
        } else {
            ++gap;
            max_gap = std::max(max_gap, gap);
        }
    }
    return {true, max_gap, ""};
}

}  // namespace mu4
