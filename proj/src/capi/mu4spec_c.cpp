#include "mu4spec.h"

#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "../core/api.hpp"
#include "../core/words.hpp"

using mu4::Int;
using mu4::Word;

struct mu4spec_word {
    Word value;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
mu4spec_status guard(Fn&& fn) {
    try {
        fn();
        return MU4SPEC_OK;
    } catch (const std::domain_error& e) {
        g_last_error = e.what();
        return MU4SPEC_ERR_DOMAIN;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return MU4SPEC_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return MU4SPEC_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return MU4SPEC_ERR_INTERNAL;
    }
}

Int parse_decimal(const char* decimal) {
    if (!decimal) throw std::invalid_argument("null integer string");
    try {
        return Int(decimal);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("not a decimal integer: ") + decimal);
    }
}

const Word& deref(const mu4spec_word* w) {
    if (!w) throw std::invalid_argument("null word handle");
    return w->value;
}

void emit(Word result, mu4spec_word** out) {
    if (!out) throw std::invalid_argument("null output handle");
    *out = new mu4spec_word{std::move(result)};
}

}  // namespace

extern "C" {

const char* mu4spec_version(void) { return "1.0.0"; }

const char* mu4spec_last_error(void) { return g_last_error.c_str(); }

void mu4spec_string_free(char* s) { std::free(s); }

void mu4spec_word_free(mu4spec_word* w) { delete w; }

mu4spec_status mu4spec_word_parse(const char* text, int64_t alphabet_size,
                                  mu4spec_word** out) {
    return guard([&] {
        if (!text) throw std::invalid_argument("null text");
        emit(Word::parse(text, alphabet_size), out);
    });
}

mu4spec_status mu4spec_word_format(const mu4spec_word* w, char** out) {
    return guard([&] {
        if (!out) throw std::invalid_argument("null output");
        *out = dup_string(deref(w).format());
        if (!*out) throw std::bad_alloc();
    });
}

mu4spec_status mu4spec_word_from_integer(const char* decimal, int64_t alphabet_size,
                                         mu4spec_word** out) {
    return guard([&] { emit(Word::from_integer(parse_decimal(decimal), alphabet_size), out); });
}

mu4spec_status mu4spec_word_to_integer(const mu4spec_word* w, char** out) {
    return guard([&] {
        if (!out) throw std::invalid_argument("null output");
        auto v = deref(w).to_integer();
        *out = v ? dup_string(v->get_str()) : nullptr;
        if (v && !*out) throw std::bad_alloc();
    });
}

mu4spec_status mu4spec_word_digit_at(const mu4spec_word* w, uint64_t position,
                                     int64_t* digit) {
    return guard([&] {
        if (!digit) throw std::invalid_argument("null output");
        *digit = deref(w).digit_at(position);
    });
}

mu4spec_status mu4spec_integer_digit(const char* decimal, uint64_t position,
                                     int64_t alphabet_size, int64_t* digit) {
    return guard([&] {
        if (!digit) throw std::invalid_argument("null output");
        *digit = mu4::integer_digit(parse_decimal(decimal), position, alphabet_size);
    });
}

mu4spec_status mu4spec_word_add(const mu4spec_word* a, const mu4spec_word* b,
                                mu4spec_word** out) {
    return guard([&] { emit(mu4::add(deref(a), deref(b)), out); });
}

mu4spec_status mu4spec_word_sub(const mu4spec_word* a, const mu4spec_word* b,
                                mu4spec_word** out) {
    return guard([&] { emit(mu4::sub(deref(a), deref(b)), out); });
}

mu4spec_status mu4spec_word_negate(const mu4spec_word* w, mu4spec_word** out) {
    return guard([&] { emit(mu4::negate(deref(w)), out); });
}

mu4spec_status mu4spec_word_scalar_mul(int64_t a, const mu4spec_word* w,
                                       mu4spec_word** out) {
    return guard([&] { emit(mu4::scalar_mul(Int(static_cast<long>(a)), deref(w)), out); });
}

mu4spec_status mu4spec_word_div_exact(int64_t a, const mu4spec_word* w,
                                      mu4spec_word** out) {
    return guard([&] { emit(mu4::div_exact(Int(static_cast<long>(a)), deref(w)), out); });
}

mu4spec_status mu4spec_word_rho(const mu4spec_word* a, const mu4spec_word* b,
                                int* is_zero, uint64_t* exponent) {
    return guard([&] {
        if (!is_zero || !exponent) throw std::invalid_argument("null output");
        auto d = mu4::rho(deref(a), deref(b));
        *is_zero = d.is_zero ? 1 : 0;
        *exponent = d.is_zero ? 0 : d.exponent;
    });
}

mu4spec_status mu4spec_word_block_recode(int s, const mu4spec_word* w,
                                         mu4spec_word** out) {
    return guard([&] { emit(mu4::block_recode(s, deref(w)), out); });
}

mu4spec_status mu4spec_word_block_decode(int s, int64_t base_alphabet,
                                         const mu4spec_word* w, mu4spec_word** out) {
    return guard([&] { emit(mu4::block_decode(s, base_alphabet, deref(w)), out); });
}

mu4spec_status mu4spec_word_equal(const mu4spec_word* a, const mu4spec_word* b,
                                  int* equal) {
    return guard([&] {
        if (!equal) throw std::invalid_argument("null output");
        *equal = deref(a) == deref(b) ? 1 : 0;
    });
}

mu4spec_status mu4spec_series_prefix(const int64_t* terms, size_t n_terms, size_t n,
                                     int64_t* digits_out) {
    return guard([&] {
        if (!digits_out || (!terms && n_terms > 0))
            throw std::invalid_argument("null buffer");
        std::vector<Int> ts;
        ts.reserve(n_terms);
        for (size_t i = 0; i < n_terms; ++i) ts.emplace_back(static_cast<long>(terms[i]));
        auto digits = mu4::series_prefix(ts, n);
        for (size_t i = 0; i < n; ++i) digits_out[i] = digits[i];
    });
}

mu4spec_status mu4spec_hp_prefix(int64_t p, const char* omega, size_t n,
                                 int64_t* digits_out) {
    return guard([&] {
        if (!digits_out || !omega) throw std::invalid_argument("null buffer");
        auto w = mu4::SignedWord::parse(omega);
        auto digits = mu4::hp_prefix(p, w, n);
        for (size_t i = 0; i < n; ++i) digits_out[i] = digits[i];
    });
}

mu4spec_status mu4spec_run(const char* request_json, char** reply_json) {
    return guard([&] {
        if (!request_json || !reply_json) throw std::invalid_argument("null argument");
        *reply_json = dup_string(mu4::api::run_request(request_json));
        if (!*reply_json) throw std::bad_alloc();
    });
}

}  // extern "C"
