#include "automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
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

}  // namespace

ResidueAutomaton ResidueAutomaton::build(std::vector<long long> digits) {
    std::sort(digits.begin(), digits.end());
    if (std::adjacent_find(digits.begin(), digits.end()) != digits.end())
        throw std::invalid_argument("digits must be distinct");
    if (!std::binary_search(digits.begin(), digits.end(), 0LL))
        throw std::invalid_argument("digit alphabet must contain 0");
    long long max_abs = 0;
    for (long long d : digits) {
        if (d != 0 && d % 2 == 0)
            throw std::invalid_argument("nonzero digits must be odd, got " + std::to_string(d));
        max_abs = std::max(max_abs, std::llabs(d));
    }
    ResidueAutomaton a;
    a.digits_ = std::move(digits);
    a.bound_ = (max_abs + 2) / 3;  // ceil(max/3)
    for (long long r = -a.bound_; r <= a.bound_; ++r) {
        for (long long d : a.digits_) {
            long long diff = r - d;
            if (diff % 4 != 0) continue;
            long long to = diff / 4;
            if (std::llabs(to) > a.bound_)
                throw std::logic_error("core bound violated");  // impossible by the bound
            a.edges_.push_back({r, d, to});
        }
    }
    return a;
}

std::vector<std::pair<long long, long long>> ResidueAutomaton::successors(long long r) const {
    std::vector<std::pair<long long, long long>> out;
    for (const Edge& e : edges_)
        if (e.from == r) out.emplace_back(e.digit, e.to);
    return out;
}

std::vector<std::pair<long long, Int>> ResidueAutomaton::options(
    const Int& r, const std::vector<long long>& digits) {
    std::vector<std::pair<long long, Int>> out;
    for (long long d : digits) {
        Int diff = r - d;
        if (divisible4(diff)) out.emplace_back(d, fdiv4(diff));
    }
    return out;
}

bool ResidueAutomaton::transient_within(const Int& lambda, int max_steps) const {
    std::set<Int> frontier{lambda};
    for (int step = 0; step < max_steps; ++step) {
        std::set<Int> next;
        for (const Int& r : frontier) {
            if (abs(r) <= bound_) continue;  // already inside the core
            for (auto& [d, to] : options(r, digits_)) next.insert(to);
        }
        frontier = std::move(next);
        if (frontier.empty()) return true;
    }
    for (const Int& r : frontier)
        if (abs(r) > bound_) return false;
    return true;
}

ReplayOutcome replay_certificate(const WitnessCertificate& cert, std::uint64_t steps,
                                 const std::vector<long long>& allowed_digits,
                                 const LevelLabel* label) {
    if (cert.cycle.empty()) return {false, "empty cycle"};
    if (cert.cycle.size() != cert.cycle_states.size())
        return {false, "cycle/state length mismatch"};
    bool has_nonzero = false;
    for (long long d : cert.cycle) has_nonzero = has_nonzero || d != 0;
    if (!has_nonzero) return {false, "cycle has no nonzero digit"};

    auto allowed = [&](long long d) {
        return std::find(allowed_digits.begin(), allowed_digits.end(), d) !=
               allowed_digits.end();
    };

    const std::uint64_t t = cert.transient.size();
    const std::uint64_t l = cert.cycle.size();
    Int r = cert.lambda;
    for (std::uint64_t n = 1; n <= steps; ++n) {
        long long w;
        if (n <= t) {
            w = cert.transient[n - 1];
        } else {
            std::uint64_t phase = (n - t - 1) % l;
            w = cert.cycle[phase];
            if (r != cert.cycle_states[phase])
                return {false, "residue disagrees with recorded cycle state at step " +
                                   std::to_string(n)};
        }
        if (!allowed(w))
            return {false, "digit " + std::to_string(w) + " outside the alphabet"};
        if (label) {
            long long a = label->digit_at(n);
            if (w != 0 && w != a)
                return {false, "digit at position " + std::to_string(n) +
                                   " incompatible with the label"};
        }
        Int diff = r - w;
        if (!divisible4(diff))
            return {false, "congruence fails at step " + std::to_string(n)};
        r = fdiv4(diff);
    }
    return {true, ""};
}

std::optional<CoreCycle> find_nonzero_cycle(const ResidueAutomaton& a) {
    for (const auto& e : a.edges()) {
        if (e.digit == 0) continue;
        // Close the cycle with a shortest path e.to ->* e.from.
        std::map<long long, std::pair<long long, long long>> parent;  // node -> (prev, digit)
        std::deque<long long> queue{e.to};
        std::set<long long> seen{e.to};
        bool found = e.to == e.from;
        while (!queue.empty() && !found) {
            long long cur = queue.front();
            queue.pop_front();
            for (auto& [d, to] : a.successors(cur)) {
                if (seen.count(to)) continue;
                seen.insert(to);
                parent[to] = {cur, d};
                if (to == e.from) {
                    found = true;
                    break;
                }
                queue.push_back(to);
            }
        }
        if (!found) continue;
        std::vector<long long> states{e.from};
        std::vector<long long> digits{e.digit};
        std::vector<std::pair<long long, long long>> tail;  // (state, digit) reversed
        long long cur = e.from;
        while (cur != e.to) {
            auto [prev, d] = parent.at(cur);
            tail.emplace_back(prev, d);
            cur = prev;
        }
        for (auto it = tail.rbegin(); it != tail.rend(); ++it) {
            states.push_back(it->first);
            digits.push_back(it->second);
        }
        return CoreCycle{std::move(states), std::move(digits)};
    }
    return std::nullopt;
}

}  // namespace mu4
