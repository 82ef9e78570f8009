#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "labels.hpp"
#include "words.hpp"

namespace mu4 {

/// Finite graph on bounded integer residues with digit-labeled edges. An
/// edge (r, w, r') exists iff 4 | (r - w) and r' = (r - w) / 4; walking it
/// from r0 = lambda reproduces the congruences
///   lambda = sum_{k<=n} 4^(k-1) w_k  (mod 4^n)
/// because lambda - sum_{k<=n} 4^(k-1) w_k = 4^n r_n by induction.
class ResidueAutomaton {
  public:
    struct Edge {
        long long from;
        long long digit;
        long long to;
    };

    /// digits must contain 0; every nonzero digit must be odd.
    static ResidueAutomaton build(std::vector<long long> digits);

    /// Core bound B = ceil(max|d| / 3); |r| <= B and |d| <= 3B give
    /// |(r - d)/4| <= B, so the core is closed under edges and contains
    /// every cycle.
    long long bound() const { return bound_; }
    const std::vector<long long>& digits() const { return digits_; }
    const std::vector<Edge>& edges() const { return edges_; }  // sorted (from, digit)

    std::vector<std::pair<long long, long long>> successors(long long r) const;

    /// Valid moves from an arbitrary residue (not restricted to the core).
    static std::vector<std::pair<long long, Int>> options(
        const Int& r, const std::vector<long long>& digits);

    /// True when every branch of the free walk from lambda has residue
    /// inside the core after at most max_steps steps. Residues contract by
    /// |r'| <= (|r| + max|d|) / 4, so ceil(log4 |lambda|) + 2 steps suffice.
    bool transient_within(const Int& lambda, int max_steps) const;

  private:
    std::vector<long long> digits_;  // sorted, contains 0
    long long bound_ = 0;
    std::vector<Edge> edges_;
};

/// An integer lambda together with an ultimately periodic digit stream
/// proving that lambda satisfies every congruence with infinitely many
/// nonzero digits: replaying transient then cycle from r0 = lambda keeps
/// 4 | (r - w) at every step, and the cycle carries a nonzero digit.
struct WitnessCertificate {
    Int lambda;
    std::vector<long long> transient;
    std::vector<long long> cycle;         // nonempty, at least one nonzero entry
    std::vector<long long> cycle_states;  // residue before cycle[i] is consumed
};

struct ReplayOutcome {
    bool ok = false;
    std::string detail;
};

/// Replays `steps` congruence steps of a certificate. Checks divisibility at
/// every step, digit membership in `allowed_digits`, agreement with the
/// recorded cycle states (which also proves closure beyond the replay), the
/// presence of a nonzero cycle digit, and, when a label is supplied, that
/// digit n lies in {0, label(n)}.
ReplayOutcome replay_certificate(const WitnessCertificate& cert, std::uint64_t steps,
                                 const std::vector<long long>& allowed_digits,
                                 const LevelLabel* label = nullptr);

/// Deterministic search for a core cycle carrying a nonzero digit: edges are
/// scanned in (from, digit) order and closed through a shortest path.
struct CoreCycle {
    std::vector<long long> states;  // states[i] emits digits[i]
    std::vector<long long> digits;
};
std::optional<CoreCycle> find_nonzero_cycle(const ResidueAutomaton& a);

}  // namespace mu4
