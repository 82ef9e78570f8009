#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace mu4 {

using Int = mpz_class;
using Rat = mpq_class;

/// Eventually periodic digit sequence over the alphabet {0,..,m-1},
/// stored in canonical form: the period is primitive (not a power of a
/// shorter word) and the preperiod is the shortest possible. Two words
/// denote the same infinite sequence iff their canonical forms coincide.
///
/// The zero sequence is represented with empty preperiod and period {0}.
/// All values are immutable after construction.
class Word {
  public:
    Word(long long alphabet_size, std::vector<long long> preperiod,
         std::vector<long long> period);

    static Word zero(long long alphabet_size);

    /// Base-m expansion of an integer: ends in 0^inf for lambda >= 0 and
    /// in (m-1)^inf for lambda < 0.
    static Word from_integer(const Int& lambda, long long alphabet_size);

    /// Inverse of from_integer. Empty when the word ends neither in 0^inf
    /// nor in (m-1)^inf.
    std::optional<Int> to_integer() const;

    /// 1-based digit access.
    long long digit_at(std::uint64_t n) const;

    long long alphabet_size() const { return m_; }
    const std::vector<long long>& preperiod() const { return pre_; }
    const std::vector<long long>& period() const { return per_; }

    bool is_zero() const { return pre_.empty() && per_.size() == 1 && per_[0] == 0; }

    /// Position of the first nonzero digit (1-based); 0 for the zero word.
    std::uint64_t first_nonzero() const;

    bool operator==(const Word& o) const {
        return m_ == o.m_ && pre_ == o.pre_ && per_ == o.per_;
    }
    bool operator!=(const Word& o) const { return !(*this == o); }

    /// Textual form "<preperiod>(<period>)", digits comma-separated as soon
    /// as the alphabet has digits >= 10.
    std::string format() const;
    static Word parse(const std::string& text, long long alphabet_size);

  private:
    long long m_;
    std::vector<long long> pre_, per_;
    void canonicalize();
};

/// Digit n (1-based) of the base-m expansion of lambda:
/// floor(lambda/m^(n-1)) - m*floor(lambda/m^n). Invariant under replacing
/// lambda by anything congruent to it mod m^n.
long long integer_digit(const Int& lambda, std::uint64_t n, long long m = 4);

/// Componentwise sum with carries in {0,1}.
Word add(const Word& a, const Word& b);

/// Additive inverse; negate(0^inf) = 0^inf.
Word negate(const Word& w);

Word sub(const Word& a, const Word& b);

/// Scalar product a*w realized by the carry recurrence
/// x_n = a*i_n + k_(n-1) - m*k_n. Negative a composes with negate.
Word scalar_mul(const Int& a, const Word& w);

/// Unique j with scalar_mul(a, j) == w; requires gcd(a, m) == 1, a != 0.
/// Digit-by-digit division with carry state in {0,..,|a|-1}.
Word div_exact(const Int& a, const Word& w);

/// Ultrametric distance m^(-n) where n is the first differing position;
/// is_zero is set when the words are equal.
struct RhoDistance {
    bool is_zero;
    std::uint64_t exponent;  // distance = m^-exponent (meaningless when zero)

    Rat value(long long m) const;
};
RhoDistance rho(const Word& a, const Word& b);

/// Regroup s consecutive base-m digits into one base-m^s digit.
Word block_recode(int s, const Word& w);
/// Inverse of block_recode: split base-m^s digits into s base-m digits.
Word block_decode(int s, long long base_alphabet, const Word& w);

/// First n digits of the base-4 digit stream of sum_k 4^(k-1)*terms[k],
/// where each summand contributes the expansion of an integer. Only the
/// first n terms can influence the output because the k-th summand starts
/// with k-1 zero digits.
std::vector<long long> series_prefix(const std::vector<Int>& terms, std::size_t n);

/// Eventually periodic sequence whose digits are arbitrary integers from an
/// explicit alphabet that always contains 0. Canonicalization rules match
/// Word. Used for signed digit streams and for tree labels.
class SignedWord {
  public:
    SignedWord(std::vector<long long> alphabet, std::vector<long long> preperiod,
               std::vector<long long> period);

    /// Alphabet inferred as {0} plus the digits that occur.
    static SignedWord from_digits(std::vector<long long> preperiod,
                                  std::vector<long long> period);

    long long digit_at(std::uint64_t n) const;
    const std::vector<long long>& alphabet() const { return alphabet_; }
    const std::vector<long long>& preperiod() const { return pre_; }
    const std::vector<long long>& period() const { return per_; }

    bool same_sequence(const SignedWord& o) const {
        return pre_ == o.pre_ && per_ == o.per_;
    }

    std::string format() const;
    /// Parses "<preperiod>(<period>)"; digits must lie in `alphabet` when
    /// one is supplied, otherwise the alphabet is inferred.
    static SignedWord parse(const std::string& text,
                            const std::vector<long long>* alphabet = nullptr);

  private:
    std::vector<long long> alphabet_;  // sorted, contains 0
    std::vector<long long> pre_, per_;
    void canonicalize();
};

/// First n digits of the base-4 stream obtained from a +-p/0 digit sequence
/// by summing the expansions of 4^(k-1)*omega_k. The first differing input
/// position is exactly the first differing output position, which makes the
/// transform injective.
std::vector<long long> hp_prefix(long long p, const SignedWord& omega, std::size_t n);

}  // namespace mu4
