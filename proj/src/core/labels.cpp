#include "labels.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mu4 {

namespace {

Int pow4(std::uint64_t e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 4, static_cast<unsigned long>(e));
    return r;
}

void require_odd(long long d) {
    if (d % 2 == 0)
        throw std::invalid_argument("label digit must be odd, got " + std::to_string(d));
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<long long> parse_csv_ints(const std::string& s) {
    std::vector<long long> out;
    std::string t = trim(s);
    if (t.empty()) return out;
    std::stringstream ss(t);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) throw std::invalid_argument("empty entry in list '" + s + "'");
        std::size_t pos = 0;
        out.push_back(std::stoll(tok, &pos));
        if (pos != tok.size()) throw std::invalid_argument("bad entry '" + tok + "'");
    }
    return out;
}

}  // namespace

DigitSet::DigitSet(std::vector<long long> digits) : digits_(std::move(digits)) {
    if (digits_.empty()) throw std::invalid_argument("digit set must be nonempty");
    for (long long d : digits_) {
        if (d == 0) throw std::invalid_argument("0 is implicit and cannot be a member");
        require_odd(d);
    }
    std::sort(digits_.begin(), digits_.end());
    if (std::adjacent_find(digits_.begin(), digits_.end()) != digits_.end())
        throw std::invalid_argument("digit set entries must be distinct");
}

bool DigitSet::contains(long long d) const {
    return std::binary_search(digits_.begin(), digits_.end(), d);
}

int DigitSet::residue_mod4(long long d) {
    int r = static_cast<int>(d % 4);
    return r < 0 ? r + 4 : r;
}

bool DigitSet::covers_both_odd_classes() const {
    bool one = false, three = false;
    for (long long d : digits_) {
        int r = residue_mod4(d);
        one = one || r == 1;
        three = three || r == 3;
    }
    return one && three;
}

std::string DigitSet::format() const {
    std::string out;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(digits_[i]);
    }
    return out;
}

DigitSet DigitSet::parse(const std::string& csv) { return DigitSet(parse_csv_ints(csv)); }

DigitSetReport validate_digit_set(const DigitSet& c) {
    DigitSetReport rep;
    rep.digits = c.digits();
    rep.all_odd = true;       // enforced by the DigitSet constructor
    rep.all_distinct = true;  // likewise
    for (long long d : rep.digits) {
        int r = DigitSet::residue_mod4(d);
        rep.residues[d] = r;
        if (r == 1) ++rep.class1_count;
        if (r == 3) ++rep.class3_count;
    }
    rep.covers_both_classes = rep.class1_count > 0 && rep.class3_count > 0;
    return rep;
}

LevelLabel LevelLabel::from_word(SignedWord w) {
    for (long long d : w.preperiod()) require_odd(d);
    for (long long d : w.period()) require_odd(d);
    LevelLabel l;
    l.kind_ = Kind::Word;
    l.word_ = std::move(w);
    return l;
}

LevelLabel LevelLabel::growing_blocks(long long p) {
    if (p % 2 == 0) throw std::invalid_argument("p must be odd");
    LevelLabel l;
    l.kind_ = Kind::GrowingBlocks;
    l.p_ = p;
    return l;
}

LevelLabel LevelLabel::forced_period(int r, GammaFree free) {
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    if (r > 30) throw std::invalid_argument("r too large (forced digit would overflow)");
    LevelLabel l;
    l.kind_ = Kind::ForcedPeriod;
    l.r_ = r;
    l.free_ = free;
    // Materialize the label as an eventually periodic word so the exact
    // decision procedures apply directly.
    long long c1 = (1LL << (2 * r)) - 1;  // 4^r - 1
    long long c0 = 1;
    std::vector<long long> period;
    if (r == 1) {
        period = {c1};
    } else if (free == GammaFree::Alternate) {
        period.assign(2 * static_cast<std::size_t>(r), 0);
        bool use_c0 = true;
        for (int k = 0; k < 2 * r; ++k) {
            if (k % r == 0) {
                period[k] = c1;
            } else {
                period[k] = use_c0 ? c0 : c1;
                use_c0 = !use_c0;
            }
        }
    } else {
        long long fill = free == GammaFree::C0 ? c0 : c1;
        period.assign(static_cast<std::size_t>(r), fill);
        period[0] = c1;
    }
    l.word_ = SignedWord::from_digits({}, period);
    return l;
}

long long LevelLabel::digit_at(std::uint64_t k) const {
    if (k < 1) throw std::invalid_argument("level index is 1-based");
    if (kind_ == Kind::GrowingBlocks) {
        // Position k falls in block n = isqrt(k), which spans n^2..n^2+2n:
        // the first n entries are +p, the remaining n+1 are -p.
        std::uint64_t n = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(k)));
        while (n * n > k) --n;
        while ((n + 1) * (n + 1) <= k) ++n;
        std::uint64_t offset = k - n * n;
        return offset < n ? p_ : -p_;
    }
    return word_->digit_at(k);
}

const SignedWord* LevelLabel::as_word() const {
    return word_ ? &*word_ : nullptr;
}

std::vector<long long> LevelLabel::digit_values() const {
    std::set<long long> vals;
    if (kind_ == Kind::GrowingBlocks) {
        vals = {p_, -p_};
    } else {
        vals.insert(word_->preperiod().begin(), word_->preperiod().end());
        vals.insert(word_->period().begin(), word_->period().end());
    }
    return {vals.begin(), vals.end()};
}

std::string LevelLabel::describe() const {
    switch (kind_) {
        case Kind::GrowingBlocks:
            return "thm47 p=" + std::to_string(p_);
        case Kind::ForcedPeriod: {
            const char* f = free_ == GammaFree::C0      ? "c0"
                            : free_ == GammaFree::C1    ? "c1"
                                                        : "alternate";
            return "gamma r=" + std::to_string(r_) + " free=" + std::string(f);
        }
        case Kind::Word:
            return word_->format();
    }
    return "";
}

std::vector<long long> label_prefix(const LevelLabel& label, std::size_t n) {
    std::vector<long long> out;
    out.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) out.push_back(label.digit_at(k));
    return out;
}

SignedWord forced_period_witness(int r) {
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    if (r > 30) throw std::invalid_argument("r too large");
    long long c1 = (1LL << (2 * r)) - 1;
    std::vector<long long> period(static_cast<std::size_t>(r), 0);
    period[0] = c1;
    return SignedWord::from_digits({}, period);
}

GeneralLabelPrefix::GeneralLabelPrefix(std::vector<std::vector<long long>> levels)
    : levels_(std::move(levels)) {
    for (std::size_t j = 0; j < levels_.size(); ++j) {
        if (levels_[j].size() != (std::size_t{1} << j))
            throw std::invalid_argument("level " + std::to_string(j + 1) + " must hold " +
                                        std::to_string(1ULL << j) + " digits");
        for (long long d : levels_[j]) require_odd(d);
    }
}

long long GeneralLabelPrefix::right_digit(int j, std::uint64_t k) const {
    if (j < 1 || j > depth()) throw std::invalid_argument("level out of range");
    const auto& row = levels_[static_cast<std::size_t>(j - 1)];
    if (k >= row.size()) throw std::invalid_argument("node index out of range");
    return row[k];
}

namespace {

std::vector<std::pair<Int, int>> nested_from_level_digits(
    const std::vector<long long>& digits) {
    // Depth tag = highest position with a nonzero choice; the all-zero choice
    // contributes 0 at depth 0. Sums are pairwise distinct for odd digits.
    std::vector<std::pair<Int, int>> out;
    out.emplace_back(0, 0);
    std::vector<Int> prev{Int(0)};  // sums with support inside the first d-1 levels
    for (std::size_t d = 1; d <= digits.size(); ++d) {
        Int top = pow4(d - 1) * digits[d - 1];
        std::vector<Int> fresh;
        fresh.reserve(prev.size());
        for (const Int& v : prev) fresh.push_back(v + top);
        for (const Int& v : fresh) out.emplace_back(v, static_cast<int>(d));
        prev.insert(prev.end(), fresh.begin(), fresh.end());
    }
    return out;
}

std::vector<Int> strip_depth(std::vector<std::pair<Int, int>> tagged) {
    std::set<Int> vals;
    for (auto& [v, d] : tagged) vals.insert(v);
    return {vals.begin(), vals.end()};
}

}  // namespace

std::vector<std::pair<Int, int>> enumerate_level_nested(const LevelLabel& label, int depth) {
    if (depth < 0) throw std::invalid_argument("depth must be >= 0");
    return nested_from_level_digits(label_prefix(label, static_cast<std::size_t>(depth)));
}

std::vector<std::pair<Int, int>> enumerate_scaled_nested(const Int& p, int depth) {
    if (depth < 0) throw std::invalid_argument("depth must be >= 0");
    std::vector<long long> ones(static_cast<std::size_t>(depth), 1);
    auto tagged = nested_from_level_digits(ones);
    for (auto& [v, d] : tagged) v *= p;
    return tagged;
}

std::vector<Int> enumerate_level(const LevelLabel& label, int depth) {
    return strip_depth(enumerate_level_nested(label, depth));
}

std::vector<Int> enumerate_canonical(int depth) {
    return strip_depth(enumerate_scaled_nested(Int(1), depth));
}

std::vector<Int> enumerate_scaled(const Int& p, int depth) {
    return strip_depth(enumerate_scaled_nested(p, depth));
}

std::vector<Int> enumerate_general(const GeneralLabelPrefix& prefix, int depth) {
    if (depth < 0 || depth > prefix.depth())
        throw std::invalid_argument("depth exceeds the stored prefix");
    std::set<Int> vals;
    // Walk every root-to-depth path; node index k at level j doubles per step.
    struct Frame {
        int level;
        std::uint64_t node;
        Int sum;
    };
    std::vector<Frame> stack{{0, 0, Int(0)}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        vals.insert(f.sum);
        if (f.level == depth) continue;
        // Left edge: digit 0.
        stack.push_back({f.level + 1, 2 * f.node, f.sum});
        // Right edge: the stored odd digit.
        Int right = f.sum + pow4(static_cast<std::uint64_t>(f.level)) *
                                prefix.right_digit(f.level + 1, f.node);
        stack.push_back({f.level + 1, 2 * f.node + 1, right});
    }
    return {vals.begin(), vals.end()};
}

ParsedLabel parse_label_file(const std::string& content) {
    std::vector<std::string> lines;
    {
        std::stringstream ss(content);
        std::string line;
        while (std::getline(ss, line)) {
            line = trim(line);
            if (!line.empty() && line[0] != '#') lines.push_back(line);
        }
    }
    auto value_of = [&](const std::string& key) -> std::optional<std::string> {
        for (const auto& l : lines)
            if (l.rfind(key + ":", 0) == 0) return trim(l.substr(key.size() + 1));
        return std::nullopt;
    };

    ParsedLabel result;
    if (auto rule = value_of("rule")) {
        std::stringstream ss(*rule);
        std::string name;
        ss >> name;
        std::map<std::string, std::string> kv;
        std::string tok;
        while (ss >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("rule parameter must be key=value: " + tok);
            kv[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
        if (name == "thm47") {
            result.level = LevelLabel::growing_blocks(std::stoll(kv.at("p")));
        } else if (name == "gamma") {
            std::string f = kv.count("free") ? kv.at("free") : "c0";
            GammaFree mode = f == "c0"          ? GammaFree::C0
                             : f == "c1"        ? GammaFree::C1
                             : f == "alternate" ? GammaFree::Alternate
                                                : throw std::invalid_argument(
                                                      "free must be c0|c1|alternate");
            result.level = LevelLabel::forced_period(std::stoi(kv.at("r")), mode);
        } else {
            throw std::invalid_argument("unknown rule '" + name + "'");
        }
        return result;
    }
    if (auto gen = value_of("general")) {
        auto eq = gen->find('=');
        if (eq == std::string::npos || gen->substr(0, eq) != "depth")
            throw std::invalid_argument("general header must be 'general: depth=<n>'");
        int depth = std::stoi(gen->substr(eq + 1));
        std::vector<std::vector<long long>> levels(static_cast<std::size_t>(depth));
        for (int j = 1; j <= depth; ++j) {
            auto row = value_of("level " + std::to_string(j));
            if (!row) throw std::invalid_argument("missing 'level " + std::to_string(j) + ":'");
            levels[static_cast<std::size_t>(j - 1)] = parse_csv_ints(*row);
        }
        result.general = GeneralLabelPrefix(std::move(levels));
        return result;
    }
    auto alpha = value_of("alphabet");
    if (!alpha) throw std::invalid_argument("label file needs alphabet:, rule: or general:");
    auto alphabet = parse_csv_ints(*alpha);
    auto to_digits = [&](const std::string& key) {
        std::vector<long long> out;
        if (auto v = value_of(key)) {
            for (long long idx : parse_csv_ints(*v)) {
                if (idx < 0 || idx >= static_cast<long long>(alphabet.size()))
                    throw std::invalid_argument(key + " index out of range");
                out.push_back(alphabet[static_cast<std::size_t>(idx)]);
            }
        }
        return out;
    };
    auto pre = to_digits("preperiod");
    auto per = to_digits("period");
    if (per.empty()) throw std::invalid_argument("label file needs a nonempty period:");
    std::vector<long long> alpha_sorted = alphabet;
    if (std::find(alpha_sorted.begin(), alpha_sorted.end(), 0) == alpha_sorted.end())
        alpha_sorted.push_back(0);
    result.level =
        LevelLabel::from_word(SignedWord(alpha_sorted, std::move(pre), std::move(per)));
    return result;
}

LevelLabel parse_level_label(const std::string& text) {
    return LevelLabel::from_word(SignedWord::parse(text));
}

}  // namespace mu4
