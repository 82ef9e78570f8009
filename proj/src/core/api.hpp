#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "automaton.hpp"
#include "decide.hpp"
#include "fourier.hpp"
#include "game.hpp"
#include "labels.hpp"
#include "words.hpp"

namespace mu4::api {

using json = nlohmann::ordered_json;

/// Integers render as JSON numbers when they fit in 64 bits and as decimal
/// strings otherwise.
json json_int(const Int& v);

json certificate_json(const WitnessCertificate& cert);
json expansion_json(const ExpansionResult& res);
json game_json(const DigitSet& c, const GameResult& g);
json frame_json(const FrameReport& rep);
std::string frame_csv(const FrameReport& rep);

/// Frequency-set selector shared by the construct/verify verbs:
///   {"kind":"canonical"} | {"kind":"scaled","p":5} |
///   {"kind":"label","label":"(3)"} | {"kind":"thm47","p":5} |
///   {"kind":"gamma","r":2,"free":"c0"}
struct Selector {
    enum class Kind { Canonical, Scaled, Label, Thm47, Gamma };
    Kind kind = Kind::Canonical;
    Int p = 1;
    std::string label_text;
    int r = 1;
    GammaFree free = GammaFree::C0;

    static Selector from_json(const json& j);
    json to_json() const;
    std::string describe() const;

    /// Every selector is realized by a level label (the canonical set is the
    /// all-ones label, a scaled set the all-p label).
    LevelLabel level_label() const;
    std::vector<std::pair<Int, int>> nested(int depth) const;
};

/// Parses a level label from an inline word literal or from label-file
/// content (sniffed by the presence of a key: line).
LevelLabel parse_any_level_label(const std::string& text);

/// Single dispatch point for every report-producing operation. The request
/// carries an "op" plus op-specific fields; the reply is a deterministic
/// JSON document (sets ascending, object keys in fixed order). Throws
/// std::invalid_argument / std::domain_error on bad input.
json run_request_json(const json& request);
std::string run_request(const std::string& request_json);

}  // namespace mu4::api
