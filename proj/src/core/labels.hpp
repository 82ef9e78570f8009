#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "words.hpp"

namespace mu4 {

/// Finite set of distinct odd integers used as right-edge labels. The left
/// edge label 0 is implicit and never a member.
class DigitSet {
  public:
    explicit DigitSet(std::vector<long long> digits);

    const std::vector<long long>& digits() const { return digits_; }  // ascending
    std::size_t size() const { return digits_.size(); }
    bool contains(long long d) const;

    /// Residue of d mod 4, computed into {0,1,2,3} for any sign.
    static int residue_mod4(long long d);

    /// True when both residue classes 1 and 3 appear among the digits.
    bool covers_both_odd_classes() const;

    std::string format() const;                     // "1,3"
    static DigitSet parse(const std::string& csv);  // "1,3"

  private:
    std::vector<long long> digits_;
};

struct DigitSetReport {
    std::vector<long long> digits;
    bool all_odd = false;
    bool all_distinct = false;
    std::map<long long, int> residues;  // digit -> residue mod 4
    int class1_count = 0;
    int class3_count = 0;
    bool covers_both_classes = false;  // the {1,3} mod 4 condition
};

/// Validation report; throws on non-odd digits (hard error), reports the
/// residue structure otherwise.
DigitSetReport validate_digit_set(const DigitSet& c);

enum class GammaFree { C0, C1, Alternate };

/// Level label: one odd digit per tree level, either an eventually periodic
/// word or one of the rule-based generators.
class LevelLabel {
  public:
    static LevelLabel from_word(SignedWord w);

    /// Sign blocks of growing length scaled by p: block n contributes n
    /// digits +p followed by n+1 digits -p.
    static LevelLabel growing_blocks(long long p);

    /// Two-digit family over {c0, c1} with c0 = 1, c1 = 3*(1+4+..+4^(r-1))
    /// = 4^r - 1 forced at every position congruent to 1 mod r; remaining
    /// positions carry the chosen free digit.
    static LevelLabel forced_period(int r, GammaFree free);

    long long digit_at(std::uint64_t k) const;  // 1-based level index
    bool eventually_periodic() const { return kind_ != Kind::GrowingBlocks; }
    /// Present for eventually periodic labels (including forced_period ones).
    const SignedWord* as_word() const;

    /// Distinct digit values occurring in the label.
    std::vector<long long> digit_values() const;

    std::string describe() const;

    enum class Kind { Word, GrowingBlocks, ForcedPeriod };
    Kind kind() const { return kind_; }
    long long p() const { return p_; }
    int r() const { return r_; }

  private:
    Kind kind_ = Kind::Word;
    std::optional<SignedWord> word_;
    long long p_ = 0;            // growing_blocks scale
    int r_ = 0;                  // forced_period spacing
    GammaFree free_ = GammaFree::C0;
};

/// First n digits of a level label.
std::vector<long long> label_prefix(const LevelLabel& label, std::size_t n);

/// The digit word that witnesses -1 for the forced_period family: c1 at
/// every position congruent to 1 mod r, 0 elsewhere. It satisfies
/// -1 = sum 4^(k-1) w_k mod 4^n for every n.
SignedWord forced_period_witness(int r);

/// Depth-n prefix of a general tree label: level j carries 2^(j-1) odd
/// right-edge digits, left edges are implicitly 0.
class GeneralLabelPrefix {
  public:
    GeneralLabelPrefix(std::vector<std::vector<long long>> levels);

    int depth() const { return static_cast<int>(levels_.size()); }
    /// Right-edge digit at level j (1-based) under parent node k (0-based,
    /// k < 2^(j-1)).
    long long right_digit(int j, std::uint64_t k) const;
    const std::vector<std::vector<long long>>& levels() const { return levels_; }

  private:
    std::vector<std::vector<long long>> levels_;
};

/// All sums sum_{k<=n} 4^(k-1)*w_k with w_k in {0, a_k}, deduplicated and
/// ascending.
std::vector<Int> enumerate_level(const LevelLabel& label, int depth);

/// Canonical set: digits {0,1} at every level.
std::vector<Int> enumerate_canonical(int depth);

/// Integer scaling of the canonical set.
std::vector<Int> enumerate_scaled(const Int& p, int depth);

/// All digit sums read along root-to-depth paths of a general label prefix.
std::vector<Int> enumerate_general(const GeneralLabelPrefix& prefix, int depth);

/// Elements tagged with the level of their highest nonzero digit, ordered so
/// that every depth-d prefix of the output is exactly the depth-d set.
std::vector<std::pair<Int, int>> enumerate_level_nested(const LevelLabel& label, int depth);
std::vector<std::pair<Int, int>> enumerate_scaled_nested(const Int& p, int depth);

/// Line-oriented label file: either an explicit eventually periodic label
///   alphabet: 0,3,15
///   preperiod:
///   period: 1
/// (preperiod/period entries are indices into the alphabet line), or a rule
///   rule: thm47 p=5
///   rule: gamma r=2 free=c0
/// or a general prefix
///   general: depth=3
///   level 1: 3
///   level 2: 3,15
///   level 3: 3,3,15,15
struct ParsedLabel {
    std::optional<LevelLabel> level;
    std::optional<GeneralLabelPrefix> general;
};
ParsedLabel parse_label_file(const std::string& content);

/// Inline "<pre>(<period>)" form with digit values; digits must be odd.
LevelLabel parse_level_label(const std::string& text);

}  // namespace mu4
