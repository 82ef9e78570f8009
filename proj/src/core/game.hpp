#pragma once

#include <map>
#include <vector>

#include "automaton.hpp"
#include "labels.hpp"

namespace mu4 {

/// Result of the universal game on the residue core. Each round the
/// adversary reveals a digit c from C (the right-edge label of the node the
/// walk sits on), the seeker picks w in {0, c} with 4 | (r - w) and moves to
/// (r - w)/4; the move is accepting iff w != 0. The seeker wins from r iff
/// some play survives forever with infinitely many accepting moves against
/// every adversary.
///
/// seeker_wins == true means: for EVERY label (general trees included) each
/// winning residue lambda has an infinite digit stream meeting all
/// congruences, so no label yields Lambda(L) = Lambda_I(L). seeker_wins ==
/// false is inconclusive for that universal claim.
struct GameResult {
    bool seeker_wins = false;
    std::vector<long long> winning_residues;  // ascending
    /// winning residue -> adversary digit -> seeker digit choice
    std::map<long long, std::map<long long, long long>> strategy;
    /// winning residue -> steps until the next accepting move is forced
    std::map<long long, int> rank;
    long long core_bound = 0;
};

GameResult universal_game(const DigitSet& c);

/// Replays one random playout of a winning strategy: adversary digits are
/// drawn from C uniformly. Verifies the strategy move is always legal and
/// that accepting moves occur at least once every max_gap steps.
struct PlayoutOutcome {
    bool ok = false;
    int max_observed_gap = 0;
    std::string detail;
};
PlayoutOutcome replay_strategy(const GameResult& game, const DigitSet& c, long long start,
                               int steps, std::uint64_t seed);

}  // namespace mu4
