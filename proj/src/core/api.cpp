#include "api.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "regress.hpp"

namespace mu4::api {

namespace {

Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
            throw std::invalid_argument("not an integer: " + j.get<std::string>());
        }
    }
    throw std::invalid_argument("expected an integer or a decimal string");
}

Int require_int(const json& req, const char* key) {
    if (!req.contains(key)) throw std::invalid_argument(std::string("missing field ") + key);
    return int_from_json(req.at(key));
}

long long require_i64(const json& req, const char* key) {
    Int v = require_int(req, key);
    if (!v.fits_slong_p()) throw std::invalid_argument(std::string(key) + " out of range");
    return v.get_si();
}

long long opt_i64(const json& req, const char* key, long long fallback) {
    if (!req.contains(key)) return fallback;
    return require_i64(req, key);
}

std::string require_str(const json& req, const char* key) {
    if (!req.contains(key) || !req.at(key).is_string())
        throw std::invalid_argument(std::string("missing string field ") + key);
    return req.at(key).get<std::string>();
}

DigitSet digits_from_json(const json& req, const char* key = "digits") {
    if (!req.contains(key)) throw std::invalid_argument("missing digit set");
    const json& j = req.at(key);
    if (j.is_string()) return DigitSet::parse(j.get<std::string>());
    if (j.is_array()) {
        std::vector<long long> ds;
        for (const auto& e : j) ds.push_back(int_from_json(e).get_si());
        return DigitSet(ds);
    }
    throw std::invalid_argument("digit set must be a csv string or an array");
}

json digits_json(const DigitSet& c) {
    json out = json::array();
    for (long long d : c.digits()) out.push_back(d);
    return out;
}

json int_vector_json(const std::vector<long long>& v) {
    json out = json::array();
    for (long long d : v) out.push_back(d);
    return out;
}

json word_result(const Word& w) {
    json out;
    out["result"] = w.format();
    out["alphabet_size"] = w.alphabet_size();
    return out;
}

GammaFree gamma_free_from(const std::string& s) {
    if (s == "c0") return GammaFree::C0;
    if (s == "c1") return GammaFree::C1;
    if (s == "alternate") return GammaFree::Alternate;
    throw std::invalid_argument("free must be c0|c1|alternate");
}

const char* gamma_free_name(GammaFree f) {
    switch (f) {
        case GammaFree::C0: return "c0";
        case GammaFree::C1: return "c1";
        case GammaFree::Alternate: return "alternate";
    }
    return "c0";
}

TruncationParams params_from_json(const json& req) {
    TruncationParams p;
    p.depth = static_cast<int>(opt_i64(req, "depth", p.depth));
    p.terms = static_cast<int>(opt_i64(req, "terms", std::max(p.depth + 5, 25)));
    p.grid_points = static_cast<int>(opt_i64(req, "grid", p.grid_points));
    if (req.contains("tolerance")) p.tolerance = req.at("tolerance").get<double>();
    p.validate();
    return p;
}

}  // namespace

json json_int(const Int& v) {
    if (v.fits_slong_p()) return json(static_cast<long long>(v.get_si()));
    return json(v.get_str());
}

json certificate_json(const WitnessCertificate& cert) {
    json out;
    out["lambda"] = json_int(cert.lambda);
    out["transient"] = int_vector_json(cert.transient);
    out["cycle"] = int_vector_json(cert.cycle);
    out["states"] = int_vector_json(cert.cycle_states);
    return out;
}

json expansion_json(const ExpansionResult& res) {
    json out;
    switch (res.kind) {
        case ExpansionKind::Finite:
            out["type"] = "finite";
            out["digits"] = int_vector_json(res.finite_digits);
            break;
        case ExpansionKind::Infinite:
            out["type"] = "infinite";
            out["certificate"] = certificate_json(*res.certificate);
            break;
        case ExpansionKind::NotMember:
            out["type"] = "not-member";
            out["fail_position"] = res.fail_position;
            out["fail_residue"] = json_int(res.fail_residue);
            break;
    }
    return out;
}

json game_json(const DigitSet& c, const GameResult& g) {
    json out;
    out["digits"] = digits_json(c);
    out["core_bound"] = g.core_bound;
    out["verdict"] = g.seeker_wins ? "seeker-wins" : "adversary-wins";
    out["winning_residues"] = int_vector_json(g.winning_residues);
    json strat = json::object();
    for (const auto& [r, moves] : g.strategy) {
        json row = json::object();
        for (const auto& [c_digit, w] : moves) row[std::to_string(c_digit)] = w;
        strat[std::to_string(r)] = row;
    }
    out["strategy"] = strat;
    out["note"] = g.seeker_wins
                      ? "every label admits an integer with an infinite expansion; no "
                        "label yields a spectrum"
                      : "inconclusive for the universal claim";
    return out;
}

json frame_json(const FrameReport& rep) {
    json params;
    params["depth"] = rep.params.depth;
    params["terms"] = rep.params.terms;
    params["grid_points"] = rep.params.grid_points;
    params["tolerance"] = rep.params.tolerance;
    json out;
    out["params"] = params;
    out["grid"] = rep.grid;
    out["Q"] = rep.q;
    json checkpoints = json::object();
    for (std::size_t i = 0; i < rep.checkpoint_depths.size(); ++i)
        checkpoints[std::to_string(rep.checkpoint_depths[i])] = rep.q_at_depth[i];
    out["checkpoints"] = checkpoints;
    out["minQ"] = rep.min_q;
    out["maxQ"] = rep.max_q;
    out["tail_bound"] = rep.tail_bound;
    out["orthogonal"] = rep.orthogonal;
    out["verdict"] = rep.verdict;
    out["refined_min_xi"] = rep.refined_min_xi;
    out["refined_minQ"] = rep.refined_min_q;
    return out;
}

std::string frame_csv(const FrameReport& rep) {
    std::ostringstream os;
    os << "xi,Q\n";
    char buf[64];
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", rep.grid[i], rep.q[i]);
        os << buf;
    }
    return os.str();
}

Selector Selector::from_json(const json& j) {
    Selector s;
    if (j.is_string()) {
        // Shorthand: "canonical" or a label literal.
        std::string t = j.get<std::string>();
        if (t == "canonical") {
            s.kind = Kind::Canonical;
        } else {
            s.kind = Kind::Label;
            s.label_text = t;
        }
        return s;
    }
    std::string kind = require_str(j, "kind");
    if (kind == "canonical") {
        s.kind = Kind::Canonical;
    } else if (kind == "scaled") {
        s.kind = Kind::Scaled;
        s.p = require_int(j, "p");
        if (s.p % 2 == 0) throw std::invalid_argument("scaling factor must be odd");
    } else if (kind == "label") {
        s.kind = Kind::Label;
        s.label_text = require_str(j, "label");
    } else if (kind == "thm47") {
        s.kind = Kind::Thm47;
        s.p = require_int(j, "p");
        if (s.p % 2 == 0) throw std::invalid_argument("p must be odd");
    } else if (kind == "gamma") {
        s.kind = Kind::Gamma;
        s.r = static_cast<int>(require_i64(j, "r"));
        s.free = gamma_free_from(j.contains("free") ? j.at("free").get<std::string>() : "c0");
    } else {
        throw std::invalid_argument("unknown selector kind '" + kind + "'");
    }
    return s;
}

json Selector::to_json() const {
    json out;
    switch (kind) {
        case Kind::Canonical:
            out["kind"] = "canonical";
            break;
        case Kind::Scaled:
            out["kind"] = "scaled";
            out["p"] = json_int(p);
            break;
        case Kind::Label:
            out["kind"] = "label";
            out["label"] = label_text;
            break;
        case Kind::Thm47:
            out["kind"] = "thm47";
            out["p"] = json_int(p);
            break;
        case Kind::Gamma:
            out["kind"] = "gamma";
            out["r"] = r;
            out["free"] = gamma_free_name(free);
            break;
    }
    return out;
}

std::string Selector::describe() const {
    switch (kind) {
        case Kind::Canonical: return "canonical";
        case Kind::Scaled: return "scaled p=" + p.get_str();
        case Kind::Label: return "label " + label_text;
        case Kind::Thm47: return "thm47 p=" + p.get_str();
        case Kind::Gamma: return "gamma r=" + std::to_string(r);
    }
    return "";
}

LevelLabel Selector::level_label() const {
    switch (kind) {
        case Kind::Canonical:
            return LevelLabel::from_word(SignedWord::from_digits({}, {1}));
        case Kind::Scaled: {
            if (!p.fits_slong_p()) throw std::invalid_argument("p out of range");
            return LevelLabel::from_word(SignedWord::from_digits({}, {p.get_si()}));
        }
        case Kind::Label:
            return parse_any_level_label(label_text);
        case Kind::Thm47: {
            if (!p.fits_slong_p()) throw std::invalid_argument("p out of range");
            return LevelLabel::growing_blocks(p.get_si());
        }
        case Kind::Gamma:
            return LevelLabel::forced_period(r, free);
    }
    throw std::logic_error("bad selector");
}

std::vector<std::pair<Int, int>> Selector::nested(int depth) const {
    return enumerate_level_nested(level_label(), depth);
}

LevelLabel parse_any_level_label(const std::string& text) {
    bool file_like = text.find("rule:") != std::string::npos ||
                     text.find("alphabet:") != std::string::npos ||
                     text.find("general:") != std::string::npos;
    if (file_like) {
        auto parsed = parse_label_file(text);
        if (!parsed.level)
            throw std::invalid_argument("label file does not describe a level label");
        return *parsed.level;
    }
    return parse_level_label(text);
}

namespace {

json op_adic(const std::string& op, const json& req) {
    long long m = opt_i64(req, "m", 4);
    json out;
    out["op"] = op;
    out["m"] = m;
    if (op == "adic.add" || op == "adic.sub") {
        Word w1 = Word::parse(require_str(req, "w1"), m);
        Word w2 = Word::parse(require_str(req, "w2"), m);
        out["w1"] = w1.format();
        out["w2"] = w2.format();
        out.update(word_result(op == "adic.add" ? add(w1, w2) : sub(w1, w2)));
    } else if (op == "adic.negate") {
        Word w = Word::parse(require_str(req, "w"), m);
        out["w"] = w.format();
        out.update(word_result(negate(w)));
    } else if (op == "adic.mul" || op == "adic.div") {
        Int a = require_int(req, "a");
        Word w = Word::parse(require_str(req, "w"), m);
        out["a"] = json_int(a);
        out["w"] = w.format();
        out.update(word_result(op == "adic.mul" ? scalar_mul(a, w) : div_exact(a, w)));
    } else if (op == "adic.rho") {
        Word w1 = Word::parse(require_str(req, "w1"), m);
        Word w2 = Word::parse(require_str(req, "w2"), m);
        auto d = rho(w1, w2);
        out["w1"] = w1.format();
        out["w2"] = w2.format();
        out["is_zero"] = d.is_zero;
        if (d.is_zero) {
            out["exponent"] = nullptr;
            out["value"] = "0";
            out["value_double"] = 0.0;
        } else {
            out["exponent"] = d.exponent;
            Rat v = d.value(m);
            out["value"] = v.get_str();
            out["value_double"] = v.get_d();
        }
    } else if (op == "adic.recode" || op == "adic.decode") {
        int s = static_cast<int>(require_i64(req, "s"));
        Word w = Word::parse(require_str(req, "w"),
                             op == "adic.recode" ? m : [&] {
                                 Int big;
                                 mpz_ui_pow_ui(big.get_mpz_t(),
                                               static_cast<unsigned long>(m),
                                               static_cast<unsigned long>(s));
                                 if (!big.fits_slong_p())
                                     throw std::invalid_argument("alphabet too large");
                                 return big.get_si();
                             }());
        out["s"] = s;
        out["w"] = w.format();
        out.update(word_result(op == "adic.recode" ? block_recode(s, w)
                                                   : block_decode(s, m, w)));
    } else if (op == "adic.from_int") {
        Int lambda = require_int(req, "lambda");
        out["lambda"] = json_int(lambda);
        out.update(word_result(Word::from_integer(lambda, m)));
    } else if (op == "adic.to_int") {
        Word w = Word::parse(require_str(req, "w"), m);
        out["w"] = w.format();
        auto v = w.to_integer();
        out["integer"] = v ? json_int(*v) : json(nullptr);
    } else if (op == "adic.digit") {
        Int lambda = require_int(req, "lambda");
        std::uint64_t n = static_cast<std::uint64_t>(require_i64(req, "n"));
        out["lambda"] = json_int(lambda);
        out["n"] = n;
        out["digit"] = integer_digit(lambda, n, m);
    } else if (op == "adic.series") {
        std::vector<Int> terms;
        for (const auto& e : req.at("terms")) terms.push_back(int_from_json(e));
        std::size_t depth = static_cast<std::size_t>(require_i64(req, "depth"));
        json ts = json::array();
        for (const auto& t : terms) ts.push_back(json_int(t));
        out["terms"] = ts;
        out["depth"] = depth;
        out["digits"] = int_vector_json(series_prefix(terms, depth));
    } else if (op == "adic.hp") {
        long long p = require_i64(req, "p");
        SignedWord omega = SignedWord::parse(require_str(req, "omega"));
        std::size_t depth = static_cast<std::size_t>(require_i64(req, "depth"));
        out["p"] = p;
        out["omega"] = omega.format();
        out["depth"] = depth;
        out["digits"] = int_vector_json(hp_prefix(p, omega, depth));
    } else {
        throw std::invalid_argument("unknown op '" + op + "'");
    }
    return out;
}

json op_construct(const std::string& op, const json& req) {
    json out;
    out["op"] = op;
    if (op == "construct.lambda") {
        Selector sel = Selector::from_json(req.at("selector"));
        int depth = static_cast<int>(require_i64(req, "depth"));
        auto elems = enumerate_level(sel.level_label(), depth);
        out["selector"] = sel.to_json();
        out["depth"] = depth;
        out["count"] = elems.size();
        json arr = json::array();
        for (const auto& v : elems) arr.push_back(json_int(v));
        out["elements"] = arr;
    } else if (op == "construct.lambda_general") {
        auto parsed = parse_label_file(require_str(req, "file"));
        if (!parsed.general)
            throw std::invalid_argument("file does not describe a general label prefix");
        int depth = static_cast<int>(opt_i64(req, "depth", parsed.general->depth()));
        auto elems = enumerate_general(*parsed.general, depth);
        out["depth"] = depth;
        out["count"] = elems.size();
        json arr = json::array();
        for (const auto& v : elems) arr.push_back(json_int(v));
        out["elements"] = arr;
    } else if (op == "construct.lambda_i") {
        LevelLabel label = parse_any_level_label(require_str(req, "label"));
        Int bound = require_int(req, "bound");
        auto members = lambda_i_members(label, bound);
        out["label"] = label.describe();
        out["bound"] = json_int(bound);
        json arr = json::array();
        for (auto& [lambda, res] : members.members) {
            json row;
            row["lambda"] = json_int(lambda);
            row.update(expansion_json(res));
            arr.push_back(row);
        }
        out["count"] = members.members.size();
        out["members"] = arr;
    } else if (op == "construct.thm47") {
        long long p = require_i64(req, "p");
        std::size_t depth = static_cast<std::size_t>(require_i64(req, "depth"));
        auto label = LevelLabel::growing_blocks(p);
        out["p"] = p;
        out["depth"] = depth;
        out["digits"] = int_vector_json(label_prefix(label, depth));
    } else if (op == "construct.gamma") {
        int r = static_cast<int>(require_i64(req, "r"));
        GammaFree free = gamma_free_from(
            req.contains("free") ? req.at("free").get<std::string>() : "c0");
        std::size_t depth = static_cast<std::size_t>(require_i64(req, "depth"));
        auto label = LevelLabel::forced_period(r, free);
        out["r"] = r;
        out["free"] = gamma_free_name(free);
        out["depth"] = depth;
        out["c0"] = 1;
        out["c1"] = (1LL << (2 * r)) - 1;
        out["digits"] = int_vector_json(label_prefix(label, depth));
        SignedWord witness = forced_period_witness(r);
        out["witness_word"] = witness.format();
        // The witness satisfies -1 = sum 4^(k-1) w_k mod 4^n at every depth.
        bool ok = true;
        Int sum = 0, scale = 1, modulus = 4;
        for (std::uint64_t k = 1; k <= 4 * static_cast<std::uint64_t>(r) + 8; ++k) {
            sum += scale * witness.digit_at(k);
            Int residue;
            Int shifted = sum + 1;
            mpz_fdiv_r(residue.get_mpz_t(), shifted.get_mpz_t(), modulus.get_mpz_t());
            ok = ok && residue == 0;
            scale *= 4;
            modulus *= 4;
        }
        out["witness_congruence_ok"] = ok;
    } else if (op == "construct.validate") {
        DigitSet c = digits_from_json(req);
        auto rep = validate_digit_set(c);
        out["digits"] = digits_json(c);
        out["all_odd"] = rep.all_odd;
        out["all_distinct"] = rep.all_distinct;
        json residues = json::object();
        for (auto& [d, r] : rep.residues) residues[std::to_string(d)] = r;
        out["residues"] = residues;
        out["class1_count"] = rep.class1_count;
        out["class3_count"] = rep.class3_count;
        out["covers_both_classes"] = rep.covers_both_classes;
    } else {
        throw std::invalid_argument("unknown op '" + op + "'");
    }
    return out;
}

json op_decide(const std::string& op, const json& req) {
    json out;
    out["op"] = op;
    if (op == "decide.exists") {
        DigitSet c = digits_from_json(req);
        auto res = exists_infinite_expansion(c);
        out["digits"] = digits_json(c);
        out["core_bound"] = res.core_bound;
        out["verdict"] = res.witness ? "witness-found" : "all-labels-spectra";
        out["witness"] = res.witness ? certificate_json(*res.witness) : json(nullptr);
        out["witness_label"] =
            res.witness_label ? json(res.witness_label->format()) : json(nullptr);
    } else if (op == "decide.label") {
        LevelLabel label = parse_any_level_label(require_str(req, "label"));
        Int lambda = require_int(req, "lambda");
        auto res = expansion_type(label, lambda);
        out["label"] = label.describe();
        out["lambda"] = json_int(lambda);
        out.update(expansion_json(res));
    } else if (op == "decide.spectrum") {
        LevelLabel label = parse_any_level_label(require_str(req, "label"));
        out["label"] = label.describe();
        if (label.eventually_periodic()) {
            auto res = is_spectrum_ep_label(label);
            out["engine"] = "ep-product-automaton";
            out["spectrum"] = res.spectrum;
            out["witness"] = res.witness ? certificate_json(*res.witness) : json(nullptr);
            out["core_bound"] = res.core_bound;
            out["product_states_scanned"] = res.product_states_scanned;
            out["cycles_seen"] = res.cycles_seen;
        } else {
            auto res = thm47_check(label.p(), 8);
            out["engine"] = "growing-blocks-cycle-refutation";
            out["spectrum"] = res.spectrum;
            out["witness"] = nullptr;
            out["cycle_bound"] = res.cycle_bound;
        }
    } else if (op == "decide.game") {
        DigitSet c = digits_from_json(req);
        out.update(game_json(c, universal_game(c)));
    } else if (op == "decide.thm47") {
        long long p = require_i64(req, "p");
        int bound = static_cast<int>(opt_i64(req, "bound", 8));
        auto res = thm47_check(p, bound);
        out["p"] = p;
        out["cycle_bound"] = res.cycle_bound;
        out["verdict"] = res.spectrum ? "spectrum" : "surviving-cycle";
        out["scanned_prefix_length"] = res.scanned_prefix_length;
        json cyc = json::array();
        for (const auto& c : res.cycles) {
            json row;
            row["states"] = int_vector_json(c.states);
            row["digits"] = int_vector_json(c.digits);
            row["refuted"] = c.refuted;
            row["note"] = c.note;
            cyc.push_back(row);
        }
        out["cycles"] = cyc;
    } else {
        throw std::invalid_argument("unknown op '" + op + "'");
    }
    return out;
}

json op_verify(const std::string& op, const json& req) {
    json out;
    out["op"] = op;
    if (op == "verify.muhat") {
        double xi = req.at("xi").get<double>();
        int terms = static_cast<int>(opt_i64(req, "terms", 25));
        auto v = mu4_hat(xi, terms);
        out["xi"] = xi;
        out["terms"] = terms;
        out["value_re"] = v.value.real();
        out["value_im"] = v.value.imag();
        out["modulus"] = v.modulus;
        out["tail_abs_bound"] = v.tail_abs_bound;
    } else if (op == "verify.zero") {
        Int z = require_int(req, "z");
        out["z"] = json_int(z);
        out["is_zero"] = is_zero_exact(z);
    } else if (op == "verify.orthogonality") {
        Selector sel = Selector::from_json(req.at("selector"));
        int depth = static_cast<int>(require_i64(req, "depth"));
        auto elems = enumerate_level(sel.level_label(), depth);
        auto rep = check_orthogonality(elems);
        out["selector"] = sel.to_json();
        out["depth"] = depth;
        out["count"] = elems.size();
        out["orthogonal"] = rep.orthogonal;
        out["pairs_checked"] = rep.pairs_checked;
        out["numeric_samples"] = rep.numeric_samples;
        out["numeric_max_modulus"] = rep.numeric_max_modulus;
        out["offending_pair"] =
            rep.offending_pair
                ? json(json::array(
                      {json_int(rep.offending_pair->first), json_int(rep.offending_pair->second)}))
                : json(nullptr);
    } else if (op == "verify.frame" || op == "verify.report") {
        Selector sel = Selector::from_json(req.at("selector"));
        TruncationParams params = params_from_json(req);
        std::vector<int> checkpoints;
        if (req.contains("checkpoints"))
            for (const auto& e : req.at("checkpoints"))
                checkpoints.push_back(static_cast<int>(int_from_json(e).get_si()));
        auto nested = sel.nested(params.depth);
        auto frame = frame_function(nested, params, checkpoints);
        json fj = frame_json(frame);
        fj["selector"] = sel.to_json();
        if (op == "verify.frame") {
            out.update(fj);
            return out;
        }
        out["selector"] = sel.to_json();
        json exact;
        LevelLabel label = sel.level_label();
        bool exact_spectrum;
        if (label.eventually_periodic()) {
            auto res = is_spectrum_ep_label(label);
            exact["engine"] = "ep-product-automaton";
            exact["spectrum"] = res.spectrum;
            exact["witness"] = res.witness ? certificate_json(*res.witness) : json(nullptr);
            exact_spectrum = res.spectrum;
        } else {
            auto res = thm47_check(label.p(), 8);
            exact["engine"] = "growing-blocks-cycle-refutation";
            exact["spectrum"] = res.spectrum;
            exact["witness"] = nullptr;
            exact_spectrum = res.spectrum;
        }
        out["exact"] = exact;
        out["frame"] = fj;
        // Exact and numeric must not contradict each other: an exact
        // spectrum may not show a clear deficit; an exact non-spectrum must
        // show one or be flagged as unresolved at this resolution.
        std::string note;
        bool concordant;
        if (exact_spectrum) {
            concordant = frame.verdict != "non-spectrum";
            note = concordant ? "" : "numeric deficit contradicts the exact decision";
        } else if (frame.verdict == "non-spectrum") {
            concordant = true;
        } else {
            concordant = true;
            note = "deficit not located at this resolution";
        }
        out["concordant"] = concordant;
        out["note"] = note;
    } else {
        throw std::invalid_argument("unknown op '" + op + "'");
    }
    return out;
}

json op_measure(const std::string& op, const json& req) {
    json out;
    out["op"] = op;
    DigitSet c = digits_from_json(req);
    Int lambda = require_int(req, "lambda");
    int depth = static_cast<int>(require_i64(req, "depth"));
    out["digits"] = digits_json(c);
    out["lambda"] = json_int(lambda);
    out["depth"] = depth;
    if (op == "measure.decay") {
        Rat q = measure_decay_exact(c, lambda, depth);
        out["measure"] = q.get_str();
        out["measure_num"] = json_int(q.get_num());
        out["measure_den"] = json_int(q.get_den());
        out["measure_double"] = q.get_d();
        // Geometric envelope ((m-1)/m)^(depth-1).
        long long m = static_cast<long long>(c.size());
        Rat envelope(Int(1), Int(1));
        if (depth >= 1) {
            Rat base(Int(m - 1), Int(m));
            base.canonicalize();
            for (int i = 0; i < depth - 1; ++i) envelope *= base;
            envelope.canonicalize();
        }
        out["envelope"] = envelope.get_str();
        out["within_envelope"] = q <= envelope;
    } else if (op == "measure.sample") {
        std::uint64_t samples = static_cast<std::uint64_t>(opt_i64(req, "samples", 100000));
        std::uint64_t seed = static_cast<std::uint64_t>(opt_i64(req, "seed", 0));
        auto est = monte_carlo_survival(c, lambda, depth, samples, seed);
        out["samples"] = est.samples;
        out["seed"] = est.seed;
        out["alive"] = est.alive;
        out["fraction"] = est.fraction;
    } else {
        throw std::invalid_argument("unknown op '" + op + "'");
    }
    return out;
}

}  // namespace

json run_request_json(const json& request) {
    if (!request.is_object() || !request.contains("op"))
        throw std::invalid_argument("request must be an object with an \"op\" field");
    std::string op = request.at("op").get<std::string>();
    std::string family = op.substr(0, op.find('.'));
    if (family == "adic") return op_adic(op, request);
    if (family == "construct") return op_construct(op, request);
    if (family == "decide") return op_decide(op, request);
    if (family == "verify") return op_verify(op, request);
    if (family == "measure") return op_measure(op, request);
    if (op == "regress") {
        std::string filter =
            request.contains("filter") ? request.at("filter").get<std::string>() : "";
        return regress::run_all(filter);
    }
    throw std::invalid_argument("unknown op '" + op + "'");
}

std::string run_request(const std::string& request_json) {
    json req;
    try {
        req = json::parse(request_json);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("bad request JSON: ") + e.what());
    }
    return run_request_json(req).dump(2);
}

}  // namespace mu4::api
