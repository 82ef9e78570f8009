#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "automaton.hpp"
#include "game.hpp"
#include "labels.hpp"
#include "words.hpp"

namespace mu4 {

enum class ExpansionKind { Finite, Infinite, NotMember };

/// Exact classification of an integer against an eventually periodic level
/// label. The walk over (residue, label phase) is deterministic: the digit
/// options at position n are {0, a_n} and an odd a_n never shares a residue
/// class mod 4 with 0, so at most one option survives.
struct ExpansionResult {
    ExpansionKind kind = ExpansionKind::NotMember;
    /// Finite: the digits of the finite quasi expansion (trailing zeros cut).
    std::vector<long long> finite_digits;
    /// Infinite: proof object.
    std::optional<WitnessCertificate> certificate;
    /// NotMember: first failing position (1-based) and the residue there.
    std::uint64_t fail_position = 0;
    Int fail_residue;
};

ExpansionResult expansion_type(const LevelLabel& label, const Int& lambda);

/// Exact spectrality decision for an eventually periodic level label:
/// spectrum iff no product-automaton cycle (core residue x period phase)
/// carries a nonzero digit. Non-spectra come with the certificate of a
/// concrete witness integer.
struct SpectrumResult {
    bool spectrum = false;
    std::optional<WitnessCertificate> witness;
    long long core_bound = 0;
    std::size_t product_states_scanned = 0;
    std::size_t cycles_seen = 0;  // all carrying only zero digits when spectrum
};

SpectrumResult is_spectrum_ep_label(const LevelLabel& label);

/// Existence of an infinite quasi expansion over ANY label built from C:
/// nonempty iff the residue automaton on {0} u C has a cycle with a nonzero
/// digit. The witness comes with a periodic level label realizing it.
struct ExistsResult {
    std::optional<WitnessCertificate> witness;
    std::optional<SignedWord> witness_label;
    long long core_bound = 0;
};

ExistsResult exists_infinite_expansion(const DigitSet& c);

/// Checker for the growing-blocks labels: enumerates every cycle of the
/// {-p,0,p} residue automaton (the graph is functional, so the enumeration
/// is complete), and refutes each nonzero cycle of length t <= cycle_bound
/// by exhibiting, inside two consecutive sign blocks of length > t, both
/// signs in every residue class mod t. Blocks only grow, so the refutation
/// extends past every transient offset.
struct CycleCheck {
    std::vector<long long> states;
    std::vector<long long> digits;
    bool refuted = false;
    std::string note;
};

struct Thm47Result {
    long long p = 0;
    int cycle_bound = 0;
    bool spectrum = false;
    std::vector<CycleCheck> cycles;       // nonzero cycles only
    std::size_t scanned_prefix_length = 0;
    std::optional<std::size_t> surviving_cycle;  // index into cycles
};

Thm47Result thm47_check(long long p, int cycle_bound);

/// Exact probability, over uniform iid label entries along the walk, that
/// lambda still admits an expansion alive after k levels. A level with
/// residue divisible by 4 is forced left and consumes no label entry; an
/// odd residue consumes one uniform entry and survives only through
/// matching digits; reaching residue 0 means the expansion has become
/// finite and counts as dead.
Rat measure_decay_exact(const DigitSet& c, const Int& lambda, int depth);

struct SurvivalEstimate {
    std::uint64_t samples = 0;
    std::uint64_t alive = 0;
    double fraction = 0.0;
    std::uint64_t seed = 0;
};

/// Monte Carlo companion of measure_decay_exact; the estimator mean equals
/// the exact value. Deterministic for a fixed seed.
SurvivalEstimate monte_carlo_survival(const DigitSet& c, const Int& lambda, int depth,
                                      std::uint64_t samples, std::uint64_t seed);

/// All integers in [-bound, bound] satisfying every congruence of the label,
/// with their exact classification (finite or infinite expansion).
struct LambdaIMembers {
    std::vector<std::pair<Int, ExpansionResult>> members;  // ascending lambda
};

LambdaIMembers lambda_i_members(const LevelLabel& label, const Int& bound);

}  // namespace mu4
