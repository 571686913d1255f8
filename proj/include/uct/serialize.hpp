#pragma once

// JSON forms of the pipeline results and the tree file loader. Every
// number is an exact dyadic string; key order is fixed.

#include <set>
#include <string>

#include <json.hpp>

#include "uct/binseq.hpp"
#include "uct/dyadic.hpp"
#include "uct/errors.hpp"
#include "uct/modulus.hpp"
#include "uct/trees.hpp"
#include "uct/witness.hpp"

namespace uct {

using Json = nlohmann::ordered_json;

inline Json to_json(const PathResult& r) {
    Json j;
    j["word"] = r.word.to_string();
    if (r.full_depth) {
        j["status"] = "full_depth";
    } else {
        j["status"] = Json{{"longest", r.member_length}};
    }
    return j;
}

inline Json to_json(const WitnessReport& r, bool trace = false) {
    Json j;
    if (r.found) {
        j["outcome"] = "found";
        j["x"] = r.found->x.to_string();
        j["y"] = r.found->y.to_string();
        j["flip_level"] = r.found->flip_level;
        j["cert_lo"] = r.found->certificate.lo.to_string();
    } else {
        j["outcome"] = "none_up_to";
        j["depth"] = r.depth;
    }
    if (trace) {
        j["trace"] = Json{{"lambda", r.trace.lambda}, {"level_sizes", r.trace.level_sizes}};
    }
    return j;
}

inline Json to_json(const ModulusCertificate& c, bool trace = false) {
    Json j;
    j["epsilon"] = c.epsilon.to_string();
    j["delta_exp"] = c.delta_exp;
    j["strategy"] = to_string(c.strategy);
    j["xi_interval"] = Json::array({c.xi_interval.lo().to_string(), c.xi_interval.hi().to_string()});
    j["depth_used"] = c.depth_used;
    j["verification"] = Json{{"resolution_exp", c.verification.resolution_exp},
                             {"max_osc_upper", c.verification.max_osc_upper.to_string()},
                             {"certified", c.verification.certified}};
    if (trace) {
        j["trace"] = Json{{"path", c.path.to_string()},
                          {"local_delta", c.local_delta.to_string()},
                          {"first_candidate_exp", c.first_candidate_exp},
                          {"level_sizes", c.tree_level_sizes}};
    }
    return j;
}

inline Json to_json(const VerifyResult& v, const Dyadic& epsilon, const Dyadic& delta) {
    Json j;
    j["verdict"] = to_string(v.verdict);
    j["epsilon"] = epsilon.to_string();
    j["delta"] = delta.to_string();
    j["resolution_exp"] = v.resolution_exp;
    switch (v.verdict) {
        case Verdict::Certified:
            j["max_osc_upper"] = v.max_osc_upper.to_string();
            break;
        case Verdict::Counterexample:
            j["x"] = v.x.to_string();
            j["y"] = v.y.to_string();
            j["cert_lo"] = v.certificate.lo.to_string();
            break;
        case Verdict::Inconclusive:
            break;
    }
    return j;
}

/// Parsed tree file. `depth` is the explored depth the file implies.
struct TreeFile {
    DecidableTree tree;
    std::size_t depth;
};

/// {"type":"explicit","words":[...]} or {"type":"full","depth":N}.
inline TreeFile load_tree(const Json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        throw TreeFormatError("tree file needs a string \"type\" field");
    }
    const std::string type = j["type"];
    if (type == "full") {
        if (!j.contains("depth") || !j["depth"].is_number_unsigned()) {
            throw TreeFormatError("full tree needs a nonnegative integer \"depth\"");
        }
        std::size_t depth = j["depth"];
        return TreeFile{DecidableTree::full(depth), depth};
    }
    if (type != "explicit") {
        throw TreeFormatError("unknown tree type \"" + type + "\"");
    }
    if (!j.contains("words") || !j["words"].is_array()) {
        throw TreeFormatError("explicit tree needs a \"words\" array");
    }
    std::set<BinaryWord, ShortLex> words;
    for (const auto& w : j["words"]) {
        if (!w.is_string()) {
            throw TreeFormatError("tree words must be strings");
        }
        try {
            words.insert(BinaryWord::parse(w.get<std::string>()));
        } catch (const InvalidWord& e) {
            throw TreeFormatError(e.what());
        }
    }
    if (words.empty()) {
        throw TreeFormatError("explicit tree has no words");
    }
    for (const auto& w : words) {
        if (!w.empty() && !words.count(w.prefix(w.size() - 1))) {
            throw TreeFormatError("prefix-closure violated at \"" + w.to_string() + "\"");
        }
    }
    std::set<BinaryWord> plain(words.begin(), words.end());
    DecidableTree tree = DecidableTree::from_words(std::move(plain));
    std::size_t depth = tree.explored_depth();
    return TreeFile{std::move(tree), depth};
}

inline TreeFile parse_tree(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw TreeFormatError(std::string("malformed tree file: ") + e.what());
    }
    return load_tree(j);
}

}  // namespace uct
