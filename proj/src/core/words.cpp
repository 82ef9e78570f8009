#include "words.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mu4 {

namespace {

Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int fmod_pos(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int pow_int(long long base, std::uint64_t e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(e));
    return r;
}

void check_digits(const std::vector<long long>& ds, long long m) {
    for (long long d : ds)
        if (d < 0 || d >= m)
            throw std::invalid_argument("digit out of range for alphabet size " +
                                        std::to_string(m));
}

// Canonicalization shared by Word and SignedWord: make the period primitive,
// then absorb preperiod digits that merely repeat the rotated period.
void canonical_form(std::vector<long long>& pre, std::vector<long long>& per) {
    if (per.empty()) throw std::invalid_argument("period must be nonempty");
    for (std::size_t d = 1; d <= per.size() / 2; ++d) {
        if (per.size() % d != 0) continue;
        bool tiles = true;
        for (std::size_t i = d; i < per.size() && tiles; ++i)
            tiles = per[i] == per[i - d];
        if (tiles) {
            per.resize(d);
            break;
        }
    }
    while (!pre.empty() && pre.back() == per.back()) {
        per.insert(per.begin(), per.back());
        per.pop_back();
        pre.pop_back();
    }
}

long long seq_digit(const std::vector<long long>& pre, const std::vector<long long>& per,
                    std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("digit positions are 1-based");
    if (n <= pre.size()) return pre[n - 1];
    return per[(n - 1 - pre.size()) % per.size()];
}

// Index of position n inside the pre*per^inf layout, saturating into the
// periodic part; used as the finite per-input component of walk states.
int cursor_advance(int idx, int pre_len, int total_len) {
    ++idx;
    return idx == total_len ? pre_len : idx;
}

// Runs a digit-emitting state machine until its state repeats and packages
// the emitted digits as a canonical word. The state must determine the whole
// remaining digit stream.
template <typename State, typename Less, typename Step>
Word collect_word(long long alphabet, State s, Less, Step step) {
    std::map<State, std::size_t, Less> seen;
    std::vector<long long> digits;
    while (true) {
        auto it = seen.find(s);
        if (it != seen.end()) {
            std::vector<long long> pre(digits.begin(),
                                       digits.begin() + static_cast<long>(it->second));
            std::vector<long long> per(digits.begin() + static_cast<long>(it->second),
                                       digits.end());
            return Word(alphabet, std::move(pre), std::move(per));
        }
        seen.emplace(s, digits.size());
        auto [d, ns] = step(s);
        digits.push_back(d);
        s = ns;
    }
}

std::vector<long long> parse_digit_list(const std::string& s, bool allow_signed) {
    std::vector<long long> out;
    if (s.empty()) return out;
    bool tokenized = s.find(',') != std::string::npos ||
                     s.find('-') != std::string::npos || allow_signed;
    if (tokenized) {
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) throw std::invalid_argument("empty digit token in '" + s + "'");
            std::size_t pos = 0;
            long long v = std::stoll(tok, &pos);
            if (pos != tok.size())
                throw std::invalid_argument("bad digit token '" + tok + "'");
            out.push_back(v);
        }
    } else {
        for (char c : s) {
            if (c < '0' || c > '9')
                throw std::invalid_argument(std::string("bad digit character '") + c + "'");
            out.push_back(c - '0');
        }
    }
    return out;
}

std::string format_digit_list(const std::vector<long long>& ds, bool commas) {
    std::string out;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (commas && i) out += ',';
        out += std::to_string(ds[i]);
    }
    return out;
}

void split_word_text(const std::string& text, std::string& pre, std::string& per) {
    std::string s = text;
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
    auto lp = s.find('(');
    if (lp == std::string::npos || s.empty() || s.back() != ')')
        throw std::invalid_argument("word literal must look like \"<pre>(<period>)\": " + text);
    pre = s.substr(0, lp);
    per = s.substr(lp + 1, s.size() - lp - 2);
    if (per.empty()) throw std::invalid_argument("period must be nonempty: " + text);
}

}  // namespace

Word::Word(long long alphabet_size, std::vector<long long> preperiod,
           std::vector<long long> period)
    : m_(alphabet_size), pre_(std::move(preperiod)), per_(std::move(period)) {
    if (m_ < 2) throw std::invalid_argument("alphabet size must be >= 2");
    canonicalize();
}

void Word::canonicalize() {
    check_digits(pre_, m_);
    check_digits(per_, m_);
    canonical_form(pre_, per_);
}

Word Word::zero(long long alphabet_size) { return Word(alphabet_size, {}, {0}); }

Word Word::from_integer(const Int& lambda, long long alphabet_size) {
    if (alphabet_size < 2) throw std::invalid_argument("alphabet size must be >= 2");
    std::vector<long long> pre;
    Int r = lambda;
    while (r != 0 && r != -1) {
        Int d = fmod_pos(r, alphabet_size);
        pre.push_back(d.get_si());
        r = fdiv(r - d, alphabet_size);
    }
    std::vector<long long> per{r == 0 ? 0 : alphabet_size - 1};
    return Word(alphabet_size, std::move(pre), std::move(per));
}

std::optional<Int> Word::to_integer() const {
    bool tail_zero = per_.size() == 1 && per_[0] == 0;
    bool tail_top = per_.size() == 1 && per_[0] == m_ - 1;
    if (!tail_zero && !tail_top) return std::nullopt;
    Int v = 0;
    Int scale = 1;
    for (long long d : pre_) {
        v += scale * d;
        scale *= m_;
    }
    if (tail_top) v -= scale;
    return v;
}

long long Word::digit_at(std::uint64_t n) const { return seq_digit(pre_, per_, n); }

std::uint64_t Word::first_nonzero() const {
    for (std::size_t i = 0; i < pre_.size(); ++i)
        if (pre_[i] != 0) return i + 1;
    for (std::size_t i = 0; i < per_.size(); ++i)
        if (per_[i] != 0) return pre_.size() + i + 1;
    return 0;
}

std::string Word::format() const {
    bool commas = m_ > 10;
    return format_digit_list(pre_, commas) + "(" + format_digit_list(per_, commas) + ")";
}

Word Word::parse(const std::string& text, long long alphabet_size) {
    std::string pre, per;
    split_word_text(text, pre, per);
    return Word(alphabet_size, parse_digit_list(pre, false), parse_digit_list(per, false));
}

long long integer_digit(const Int& lambda, std::uint64_t n, long long m) {
    if (n < 1) throw std::invalid_argument("digit positions are 1-based");
    if (m < 2) throw std::invalid_argument("alphabet size must be >= 2");
    Int r = lambda;
    for (std::uint64_t k = 1; k < n; ++k) {
        if (r == 0) return 0;
        if (r == -1) return m - 1;
        r = fdiv(r, m);
    }
    return fmod_pos(r, m).get_si();
}

Word add(const Word& a, const Word& b) {
    if (a.alphabet_size() != b.alphabet_size())
        throw std::invalid_argument("alphabet mismatch in add");
    long long m = a.alphabet_size();
    int pa = static_cast<int>(a.preperiod().size());
    int la = pa + static_cast<int>(a.period().size());
    int pb = static_cast<int>(b.preperiod().size());
    int lb = pb + static_cast<int>(b.period().size());

    struct St {
        int i, j, carry;
    };
    struct Less {
        bool operator()(const St& x, const St& y) const {
            if (x.i != y.i) return x.i < y.i;
            if (x.j != y.j) return x.j < y.j;
            return x.carry < y.carry;
        }
    };
    auto step = [&](const St& s) {
        long long da = seq_digit(a.preperiod(), a.period(), s.i + 1);
        long long db = seq_digit(b.preperiod(), b.period(), s.j + 1);
        long long t = da + db + s.carry;
        St ns{cursor_advance(s.i, pa, la), cursor_advance(s.j, pb, lb),
              static_cast<int>(t / m)};
        return std::pair<long long, St>(t % m, ns);
    };
    return collect_word(m, St{0, 0, 0}, Less{}, step);
}

Word negate(const Word& w) {
    if (w.is_zero()) return w;
    long long m = w.alphabet_size();
    int p = static_cast<int>(w.preperiod().size());
    int l = p + static_cast<int>(w.period().size());

    struct St {
        int i;
        int seen_nonzero;
    };
    struct Less {
        bool operator()(const St& x, const St& y) const {
            if (x.i != y.i) return x.i < y.i;
            return x.seen_nonzero < y.seen_nonzero;
        }
    };
    auto step = [&](const St& s) {
        long long d = seq_digit(w.preperiod(), w.period(), s.i + 1);
        long long out;
        int seen = s.seen_nonzero;
        if (!seen) {
            if (d == 0) {
                out = 0;
            } else {
                out = m - d;
                seen = 1;
            }
        } else {
            out = m - 1 - d;
        }
        return std::pair<long long, St>(out, St{cursor_advance(s.i, p, l), seen});
    };
    return collect_word(m, St{0, 0}, Less{}, step);
}

Word sub(const Word& a, const Word& b) { return add(a, negate(b)); }

Word scalar_mul(const Int& a, const Word& w) {
    if (a == 0) return Word::zero(w.alphabet_size());
    if (a < 0) return negate(scalar_mul(-a, w));
    long long m = w.alphabet_size();
    int p = static_cast<int>(w.preperiod().size());
    int l = p + static_cast<int>(w.period().size());

    struct St {
        int i;
        Int carry;
    };
    struct Less {
        bool operator()(const St& x, const St& y) const {
            if (x.i != y.i) return x.i < y.i;
            return x.carry < y.carry;
        }
    };
    auto step = [&](const St& s) {
        Int t = a * seq_digit(w.preperiod(), w.period(), s.i + 1) + s.carry;
        Int q = fdiv(t, m);
        long long digit = (t - q * m).get_si();
        return std::pair<long long, St>(digit, St{cursor_advance(s.i, p, l), q});
    };
    return collect_word(m, St{0, Int(0)}, Less{}, step);
}

Word div_exact(const Int& a, const Word& w) {
    if (a == 0) throw std::invalid_argument("division by zero");
    long long m = w.alphabet_size();
    Int g;
    Int mm(m);
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), mm.get_mpz_t());
    if (g != 1)
        throw std::domain_error("divisor must be coprime to the alphabet size " +
                                std::to_string(m));
    if (a < 0) return negate(div_exact(-a, w));

    Int ainv;
    Int amod = fmod_pos(a, m);
    if (mpz_invert(ainv.get_mpz_t(), amod.get_mpz_t(), mm.get_mpz_t()) == 0)
        throw std::domain_error("no modular inverse");  // unreachable, gcd == 1

    int p = static_cast<int>(w.preperiod().size());
    int l = p + static_cast<int>(w.period().size());

    struct St {
        int i;
        Int carry;  // in {0,..,a-1}
    };
    struct Less {
        bool operator()(const St& x, const St& y) const {
            if (x.i != y.i) return x.i < y.i;
            return x.carry < y.carry;
        }
    };
    auto step = [&](const St& s) {
        long long in = seq_digit(w.preperiod(), w.period(), s.i + 1);
        Int j = fmod_pos(ainv * fmod_pos(Int(in) - s.carry, m), m);
        Int carry = (a * j + s.carry - in) / m;  // exact by construction
        return std::pair<long long, St>(j.get_si(), St{cursor_advance(s.i, p, l), carry});
    };
    return collect_word(m, St{0, Int(0)}, Less{}, step);
}

Rat RhoDistance::value(long long m) const {
    if (is_zero) return Rat(0);
    Rat r(Int(1), pow_int(m, exponent));
    r.canonicalize();
    return r;
}

RhoDistance rho(const Word& a, const Word& b) {
    if (a.alphabet_size() != b.alphabet_size())
        throw std::invalid_argument("alphabet mismatch in rho");
    if (a == b) return RhoDistance{true, 0};
    std::uint64_t qa = a.period().size(), qb = b.period().size();
    std::uint64_t bound = std::max(a.preperiod().size(), b.preperiod().size()) +
                          std::lcm(qa, qb);
    for (std::uint64_t n = 1; n <= bound; ++n)
        if (a.digit_at(n) != b.digit_at(n)) return RhoDistance{false, n};
    throw std::logic_error("distinct canonical words agree on a full period");
}

Word block_recode(int s, const Word& w) {
    if (s < 1) throw std::invalid_argument("block size must be >= 1");
    long long m = w.alphabet_size();
    Int big = pow_int(m, static_cast<std::uint64_t>(s));
    if (big > Int("4611686018427387904"))  // 2^62
        throw std::invalid_argument("recoded alphabet size exceeds 2^62");
    long long M = big.get_si();

    int p = static_cast<int>(w.preperiod().size());
    int l = p + static_cast<int>(w.period().size());
    struct Less {
        bool operator()(int x, int y) const { return x < y; }
    };
    auto step = [&](int idx) {
        long long sigma = 0;
        long long scale = 1;
        int cur = idx;
        for (int i = 0; i < s; ++i) {
            sigma += scale * seq_digit(w.preperiod(), w.period(), cur + 1);
            scale *= m;
            cur = cursor_advance(cur, p, l);
        }
        return std::pair<long long, int>(sigma, cur);
    };
    return collect_word(M, 0, Less{}, step);
}

Word block_decode(int s, long long base_alphabet, const Word& w) {
    if (s < 1) throw std::invalid_argument("block size must be >= 1");
    Int big = pow_int(base_alphabet, static_cast<std::uint64_t>(s));
    if (big != w.alphabet_size())
        throw std::invalid_argument("word alphabet is not base_alphabet^s");

    int p = static_cast<int>(w.preperiod().size());
    int l = p + static_cast<int>(w.period().size());
    struct St {
        int i, sub;
    };
    struct Less {
        bool operator()(const St& x, const St& y) const {
            if (x.i != y.i) return x.i < y.i;
            return x.sub < y.sub;
        }
    };
    auto step = [&](const St& st) {
        long long sigma = seq_digit(w.preperiod(), w.period(), st.i + 1);
        long long v = sigma;
        for (int k = 0; k < st.sub; ++k) v /= base_alphabet;
        long long digit = v % base_alphabet;
        St ns = st.sub + 1 == s ? St{cursor_advance(st.i, p, l), 0} : St{st.i, st.sub + 1};
        return std::pair<long long, St>(digit, ns);
    };
    return collect_word(base_alphabet, St{0, 0}, Less{}, step);
}

std::vector<long long> series_prefix(const std::vector<Int>& terms, std::size_t n) {
    if (n < 1) throw std::invalid_argument("depth must be >= 1");
    auto term = [&](std::size_t k) -> Int {  // 1-based
        return k <= terms.size() ? terms[k - 1] : Int(0);
    };
    std::vector<long long> out;
    out.reserve(n);
    for (std::size_t j = 1; j <= n; ++j) {
        // d_j = sum_{k=1}^{j} sum_{i=1}^{j+1-k} 4^{i+k-2} * digit_i(term_k)
        Int d = 0;
        for (std::size_t k = 1; k <= j; ++k) {
            Int scale = pow_int(4, k - 1);
            for (std::size_t i = 1; i + k <= j + 1; ++i) {
                d += scale * integer_digit(term(k), i, 4);
                scale *= 4;
            }
        }
        Int hi = fdiv(d, pow_int(4, j - 1));
        Int digit = hi - 4 * fdiv(d, pow_int(4, j));
        out.push_back(digit.get_si());
    }
    return out;
}

SignedWord::SignedWord(std::vector<long long> alphabet, std::vector<long long> preperiod,
                       std::vector<long long> period)
    : alphabet_(std::move(alphabet)), pre_(std::move(preperiod)), per_(std::move(period)) {
    canonicalize();
}

SignedWord SignedWord::from_digits(std::vector<long long> preperiod,
                                   std::vector<long long> period) {
    std::set<long long> alpha(preperiod.begin(), preperiod.end());
    alpha.insert(period.begin(), period.end());
    alpha.insert(0);
    return SignedWord(std::vector<long long>(alpha.begin(), alpha.end()),
                      std::move(preperiod), std::move(period));
}

void SignedWord::canonicalize() {
    std::sort(alphabet_.begin(), alphabet_.end());
    if (std::adjacent_find(alphabet_.begin(), alphabet_.end()) != alphabet_.end())
        throw std::invalid_argument("alphabet digits must be pairwise distinct");
    if (!std::binary_search(alphabet_.begin(), alphabet_.end(), 0))
        throw std::invalid_argument("alphabet must contain 0");
    auto member = [&](long long d) {
        return std::binary_search(alphabet_.begin(), alphabet_.end(), d);
    };
    for (long long d : pre_)
        if (!member(d)) throw std::invalid_argument("digit outside declared alphabet");
    for (long long d : per_)
        if (!member(d)) throw std::invalid_argument("digit outside declared alphabet");
    canonical_form(pre_, per_);
}

long long SignedWord::digit_at(std::uint64_t n) const { return seq_digit(pre_, per_, n); }

std::string SignedWord::format() const {
    bool commas = false;
    for (long long d : alphabet_)
        if (d < 0 || d >= 10) commas = true;
    return format_digit_list(pre_, commas) + "(" + format_digit_list(per_, commas) + ")";
}

SignedWord SignedWord::parse(const std::string& text,
                             const std::vector<long long>* alphabet) {
    std::string pre, per;
    split_word_text(text, pre, per);
    auto pre_d = parse_digit_list(pre, true);
    auto per_d = parse_digit_list(per, true);
    if (alphabet) return SignedWord(*alphabet, std::move(pre_d), std::move(per_d));
    return SignedWord::from_digits(std::move(pre_d), std::move(per_d));
}

std::vector<long long> hp_prefix(long long p, const SignedWord& omega, std::size_t n) {
    if (p % 2 == 0) throw std::invalid_argument("p must be odd");
    std::vector<Int> terms;
    terms.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) {
        long long d = omega.digit_at(k);
        if (d != 0 && d != p && d != -p)
            throw std::invalid_argument("digit stream must take values in {-p,0,p}");
        terms.emplace_back(d);
    }
    return series_prefix(terms, n);
}

}  // namespace mu4
