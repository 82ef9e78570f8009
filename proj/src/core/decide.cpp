#include "decide.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace mu4 {

namespace {

Int fdiv4(const Int& a) {
    Int q;
    Int four(4);
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), four.get_mpz_t());
    return q;
}

bool divisible4(const Int& a) { return mpz_divisible_ui_p(a.get_mpz_t(), 4) != 0; }

Int pow4(std::uint64_t e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 4, static_cast<unsigned long>(e));
    return r;
}

int label_cursor_advance(int idx, int pre_len, int total_len) {
    ++idx;
    return idx == total_len ? pre_len : idx;
}

struct WalkState {
    Int r;
    int idx;
    bool operator<(const WalkState& o) const {
        if (idx != o.idx) return idx < o.idx;
        return r < o.r;
    }
};

}  // namespace

ExpansionResult expansion_type(const LevelLabel& label, const Int& lambda) {
    if (!label.eventually_periodic())
        throw std::invalid_argument("exact classification needs an eventually periodic label");
    const SignedWord& w = *label.as_word();
    const int pre_len = static_cast<int>(w.preperiod().size());
    const int total_len = pre_len + static_cast<int>(w.period().size());

    std::map<WalkState, std::size_t> seen;
    std::vector<long long> digits;
    std::vector<Int> residues;
    WalkState s{lambda, 0};
    while (true) {
        auto it = seen.find(s);
        if (it != seen.end()) {
            std::size_t start = it->second;
            bool nonzero = false;
            for (std::size_t i = start; i < digits.size(); ++i)
                nonzero = nonzero || digits[i] != 0;
            ExpansionResult res;
            if (!nonzero) {
                res.kind = ExpansionKind::Finite;
                std::size_t keep = digits.size();
                while (keep > 0 && digits[keep - 1] == 0) --keep;
                res.finite_digits.assign(digits.begin(), digits.begin() + keep);
                return res;
            }
            res.kind = ExpansionKind::Infinite;
            WitnessCertificate cert;
            cert.lambda = lambda;
            cert.transient.assign(digits.begin(), digits.begin() + start);
            cert.cycle.assign(digits.begin() + start, digits.end());
            for (std::size_t i = start; i < residues.size(); ++i)
                cert.cycle_states.push_back(residues[i].get_si());
            res.certificate = std::move(cert);
            return res;
        }
        seen.emplace(s, digits.size());

        long long a = w.digit_at(static_cast<std::uint64_t>(s.idx + 1));
        long long chosen = 0;
        bool have = false;
        for (long long cand : {0LL, a}) {
            if (divisible4(s.r - cand)) {
                chosen = cand;
                have = true;
                break;
            }
        }
        if (!have) {
            ExpansionResult res;
            res.kind = ExpansionKind::NotMember;
            res.fail_position = digits.size() + 1;
            res.fail_residue = s.r;
            return res;
        }
        digits.push_back(chosen);
        residues.push_back(s.r);
        s = WalkState{fdiv4(s.r - chosen), label_cursor_advance(s.idx, pre_len, total_len)};
    }
}

SpectrumResult is_spectrum_ep_label(const LevelLabel& label) {
    if (!label.eventually_periodic())
        throw std::invalid_argument("exact decision needs an eventually periodic label");
    const SignedWord& w = *label.as_word();
    const int pre_len = static_cast<int>(w.preperiod().size());
    const int per_len = static_cast<int>(w.period().size());
    const int total_len = pre_len + per_len;

    std::vector<long long> alphabet{0};
    for (long long d : label.digit_values()) alphabet.push_back(d);
    auto automaton = ResidueAutomaton::build(alphabet);
    long long bound = automaton.bound();

    SpectrumResult result;
    result.core_bound = bound;

    // Every product state (core residue, period phase) is reachable from the
    // integer 4^phase * residue through an all-zero transient, so a cycle
    // with a nonzero digit anywhere is a witness and conversely.
    std::set<std::pair<int, long long>> cycle_counted;
    for (int phase = pre_len; phase < total_len; ++phase) {
        for (long long r0 = -bound; r0 <= bound; ++r0) {
            ++result.product_states_scanned;
            // Deterministic walk; states are (residue, phase index).
            std::map<std::pair<long long, int>, std::size_t> seen;
            std::vector<long long> digits;
            long long r = r0;
            int idx = phase;
            while (true) {
                auto key = std::make_pair(r, idx);
                auto it = seen.find(key);
                if (it != seen.end()) {
                    bool nonzero = false;
                    for (std::size_t i = it->second; i < digits.size(); ++i)
                        nonzero = nonzero || digits[i] != 0;
                    if (!cycle_counted.count({idx, r})) {
                        cycle_counted.insert({idx, r});
                        ++result.cycles_seen;
                    }
                    if (nonzero) {
                        // Witness integer: enter the cycle state (r, idx)
                        // through phase-aligned zero digits.
                        Int lambda = pow4(static_cast<std::uint64_t>(idx)) * r;
                        auto classified = expansion_type(label, lambda);
                        if (classified.kind != ExpansionKind::Infinite)
                            throw std::logic_error("witness replay disagrees with scan");
                        result.spectrum = false;
                        result.witness = classified.certificate;
                        return result;
                    }
                    break;
                }
                seen.emplace(key, digits.size());
                long long a = w.digit_at(static_cast<std::uint64_t>(idx + 1));
                long long chosen = 0;
                bool have = false;
                for (long long cand : {0LL, a}) {
                    if ((r - cand) % 4 == 0) {
                        chosen = cand;
                        have = true;
                        break;
                    }
                }
                if (!have) break;  // walk dies; no cycle this way
                digits.push_back(chosen);
                r = (r - chosen) / 4;
                idx = label_cursor_advance(idx, pre_len, total_len);
            }
        }
    }
    result.spectrum = true;
    return result;
}

ExistsResult exists_infinite_expansion(const DigitSet& c) {
    std::vector<long long> alphabet = c.digits();
    alphabet.push_back(0);
    auto automaton = ResidueAutomaton::build(alphabet);

    ExistsResult result;
    result.core_bound = automaton.bound();
    auto cycle = find_nonzero_cycle(automaton);
    if (!cycle) return result;

    WitnessCertificate cert;
    cert.lambda = Int(cycle->states.front());
    cert.cycle = cycle->digits;
    cert.cycle_states = cycle->states;
    result.witness = std::move(cert);

    // A periodic level label carrying the cycle: positions with digit 0 are
    // free, fill them with the smallest member of C.
    std::vector<long long> period;
    for (long long d : cycle->digits) period.push_back(d != 0 ? d : c.digits().front());
    result.witness_label = SignedWord::from_digits({}, period);
    return result;
}

namespace {

// Ranges of the growing sign blocks: block n covers positions n^2 .. n^2+2n,
// the first n of them positive.
struct BlockSpan {
    std::uint64_t first_pos;  // n^2
    std::uint64_t pos_run_len;
    std::uint64_t neg_run_len;
};

BlockSpan block_span(std::uint64_t n) { return {n * n, n, n + 1}; }

}  // namespace

Thm47Result thm47_check(long long p, int cycle_bound) {
    if (p % 2 == 0) throw std::invalid_argument("p must be odd");
    if (cycle_bound < 1) throw std::invalid_argument("cycle bound must be >= 1");

    Thm47Result result;
    result.p = p;
    result.cycle_bound = cycle_bound;

    long long ap = std::llabs(p);
    auto automaton = ResidueAutomaton::build({-ap, 0, ap});

    // +p, -p and 0 occupy three distinct residue classes mod 4, so the core
    // graph is functional; following each state enumerates every cycle.
    std::map<long long, int> color;  // 0 unseen, 1 active, 2 done
    std::vector<std::pair<std::vector<long long>, std::vector<long long>>> cycles;
    for (long long r0 = -automaton.bound(); r0 <= automaton.bound(); ++r0) {
        if (color.count(r0)) continue;
        std::vector<long long> path_states;
        std::vector<long long> path_digits;
        std::map<long long, std::size_t> pos_in_path;
        long long r = r0;
        while (true) {
            if (color.count(r) && color[r] == 2) break;
            auto it = pos_in_path.find(r);
            if (it != pos_in_path.end()) {
                std::size_t s = it->second;
                cycles.emplace_back(
                    std::vector<long long>(path_states.begin() + s, path_states.end()),
                    std::vector<long long>(path_digits.begin() + s, path_digits.end()));
                break;
            }
            auto succ = automaton.successors(r);
            if (succ.size() > 1) throw std::logic_error("automaton is not functional");
            if (succ.empty()) break;
            pos_in_path[r] = path_states.size();
            path_states.push_back(r);
            path_digits.push_back(succ[0].first);
            r = succ[0].second;
        }
        for (long long s : path_states) color[s] = 2;
        color[r0] = 2;
        if (color.count(r) == 0) color[r] = 2;
    }

    // Label sign prefix long enough to contain the blocks used for
    // refutation: everything through block cycle_bound + 2.
    std::uint64_t tmax = static_cast<std::uint64_t>(cycle_bound);
    std::uint64_t prefix_len = (tmax + 2) * (tmax + 2) + 2 * (tmax + 2);
    result.scanned_prefix_length = prefix_len;
    auto label = LevelLabel::growing_blocks(p);
    std::vector<int> sign(prefix_len + 1);  // 1-based
    for (std::uint64_t k = 1; k <= prefix_len; ++k)
        sign[k] = label.digit_at(k) == p ? 1 : -1;

    result.spectrum = true;
    for (auto& [states, digits] : cycles) {
        bool nonzero = false;
        for (long long d : digits) nonzero = nonzero || d != 0;
        if (!nonzero) continue;

        CycleCheck check;
        check.states = states;
        check.digits = digits;
        std::size_t t = digits.size();
        if (t > static_cast<std::size_t>(cycle_bound)) {
            check.refuted = false;
            check.note = "cycle longer than the bound";
            result.cycles.push_back(std::move(check));
            result.surviving_cycle = result.cycles.size() - 1;
            result.spectrum = false;
            continue;
        }

        // An ultimately periodic expansion along this cycle forces some sign
        // to repeat along an arithmetic progression of step t. Verify that
        // inside blocks t+1 and t+2 every residue class mod t carries both
        // signs; since later blocks only grow, no progression is eventually
        // constant, whatever its offset.
        bool refuted = true;
        for (std::uint64_t blk : {tmax + 1, tmax + 2}) {
            BlockSpan span = block_span(blk);
            for (int wanted : {1, -1}) {
                std::vector<char> covered(t, 0);
                for (std::uint64_t pos = span.first_pos;
                     pos <= span.first_pos + span.pos_run_len + span.neg_run_len - 1;
                     ++pos) {
                    if (pos > prefix_len) break;
                    if (sign[pos] == wanted) covered[pos % t] = 1;
                }
                for (std::size_t cls = 0; cls < t; ++cls)
                    if (!covered[cls]) refuted = false;
            }
        }
        check.refuted = refuted;
        check.note = refuted ? "both signs hit every class mod " + std::to_string(t) +
                                   " inside blocks " + std::to_string(tmax + 1) + "," +
                                   std::to_string(tmax + 2)
                             : "refutation scan failed";
        if (!refuted) {
            result.spectrum = false;
            result.surviving_cycle = result.cycles.size();
        }
        result.cycles.push_back(std::move(check));
    }
    return result;
}

Rat measure_decay_exact(const DigitSet& c, const Int& lambda, int depth) {
    if (depth < 0) throw std::invalid_argument("depth must be >= 0");
    const long long m = static_cast<long long>(c.size());
    std::map<Int, Rat> mass{{lambda, Rat(1)}};
    for (int step = 0; step < depth; ++step) {
        std::map<Int, Rat> next;
        for (auto& [r, q] : mass) {
            Int rm = r;
            mpz_fdiv_r_ui(rm.get_mpz_t(), r.get_mpz_t(), 4);
            long long cls = rm.get_si();
            if (cls == 0) {
                next[fdiv4(r)] += q;
            } else if (cls == 1 || cls == 3) {
                for (long long d : c.digits()) {
                    if (DigitSet::residue_mod4(d) != cls) continue;
                    Rat share = q / m;
                    share.canonicalize();
                    next[fdiv4(r - d)] += share;
                }
            }
            // cls == 2: no digit matches, the walk dies.
        }
        for (auto& [r, q] : next) q.canonicalize();
        mass = std::move(next);
    }
    Rat alive(0);
    for (auto& [r, q] : mass)
        if (r != 0) alive += q;
    alive.canonicalize();
    return alive;
}

SurvivalEstimate monte_carlo_survival(const DigitSet& c, const Int& lambda, int depth,
                                      std::uint64_t samples, std::uint64_t seed) {
    if (depth < 0) throw std::invalid_argument("depth must be >= 0");
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    std::mt19937_64 rng(seed);
    const auto& digits = c.digits();
    std::uint64_t alive = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        Int r = lambda;
        bool dead = false;
        for (int step = 0; step < depth && !dead; ++step) {
            Int rm = r;
            mpz_fdiv_r_ui(rm.get_mpz_t(), r.get_mpz_t(), 4);
            long long cls = rm.get_si();
            if (cls == 0) {
                r = fdiv4(r);
            } else if (cls == 1 || cls == 3) {
                long long d = digits[rng() % digits.size()];
                if (DigitSet::residue_mod4(d) != cls) {
                    dead = true;
                } else {
                    r = fdiv4(r - d);
                }
            } else {
                dead = true;
            }
        }
        if (!dead && r != 0) ++alive;
    }
    SurvivalEstimate est;
    est.samples = samples;
    est.alive = alive;
    est.fraction = static_cast<double>(alive) / static_cast<double>(samples);
    est.seed = seed;
    return est;
}

LambdaIMembers lambda_i_members(const LevelLabel& label, const Int& bound) {
    if (bound < 0) throw std::invalid_argument("bound must be >= 0");
    LambdaIMembers out;
    for (Int lambda = -bound; lambda <= bound; ++lambda) {
        auto res = expansion_type(label, lambda);
        if (res.kind != ExpansionKind::NotMember) out.members.emplace_back(lambda, res);
    }
    return out;
}

}  // namespace mu4
