#pragma once

// File formats and external poset ingestion.  JSON is the single
// interchange format: "ncp-poset-v1" for graded posets (with optional
// construction metadata) and "ncp-decomp-v1" for decompositions.  DOT
// export groups elements by rank.  The reference table carries the known
// rank and gamma vectors of the exceptional well-generated groups, used to
// validate imported lattices.

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncp/poset.hpp"
#include "ncp/sperner.hpp"

namespace ncp {

struct PosetMeta {
    std::optional<std::string> family;
    std::optional<int> d;
    std::optional<int> n;
    std::optional<std::string> coxeter;  // cycle notation
};

struct PosetFile {
    GradedPoset poset;
    PosetMeta meta;
};

inline nlohmann::json poset_to_json(const GradedPoset& p, const PosetMeta& meta = {}) {
    nlohmann::json j;
    j["format"] = "ncp-poset-v1";
    nlohmann::json m = nlohmann::json::object();
    if (meta.family) m["family"] = *meta.family;
    if (meta.d) m["d"] = *meta.d;
    if (meta.n) m["n"] = *meta.n;
    if (meta.coxeter) m["coxeter"] = *meta.coxeter;
    j["meta"] = m;
    j["elements"] = nlohmann::json::array();
    for (int i = 0; i < p.m; ++i) {
        nlohmann::json e;
        e["id"] = i;
        e["rank"] = p.rank[i];
        e["label"] = p.labels.empty() ? "" : p.labels[i];
        j["elements"].push_back(e);
    }
    j["covers"] = nlohmann::json::array();
    for (int u = 0; u < p.m; ++u)
        for (int v : p.up[u]) j["covers"].push_back({u, v});
    return j;
}

inline PosetFile poset_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("format") || j["format"] != "ncp-poset-v1")
        throw input_error("not an ncp-poset-v1 file");
    PosetFile out;
    if (j.contains("meta") && j["meta"].is_object()) {
        const auto& m = j["meta"];
        if (m.contains("family")) out.meta.family = m["family"].get<std::string>();
        if (m.contains("d")) out.meta.d = m["d"].get<int>();
        if (m.contains("n")) out.meta.n = m["n"].get<int>();
        if (m.contains("coxeter")) out.meta.coxeter = m["coxeter"].get<std::string>();
    }
    if (!j.contains("elements") || !j["elements"].is_array())
        throw input_error("missing 'elements' array");
    GradedPoset& p = out.poset;
    p.m = static_cast<int>(j["elements"].size());
    p.rank.assign(p.m, -1);
    p.up.resize(p.m);
    p.labels.assign(p.m, "");
    for (std::size_t i = 0; i < j["elements"].size(); ++i) {
        const auto& e = j["elements"][i];
        if (!e.contains("id") || !e.contains("rank"))
            throw input_error("element entry " + std::to_string(i) + " lacks id or rank");
        const int id = e["id"].get<int>();
        if (id < 0 || id >= p.m || p.rank[id] != -1)
            throw input_error("element ids must be dense 0..m-1 (bad id at entry " +
                              std::to_string(i) + ")");
        const int r = e["rank"].get<int>();
        if (r < 0) throw input_error("negative rank at element " + std::to_string(id));
        p.rank[id] = r;
        if (e.contains("label")) p.labels[id] = e["label"].get<std::string>();
    }
    if (!j.contains("covers") || !j["covers"].is_array()) throw input_error("missing 'covers' array");
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < j["covers"].size(); ++i) {
        const auto& c = j["covers"][i];
        if (!c.is_array() || c.size() != 2)
            throw input_error("cover entry " + std::to_string(i) + " is not a pair");
        const int lo = c[0].get<int>(), hi = c[1].get<int>();
        if (lo < 0 || lo >= p.m || hi < 0 || hi >= p.m)
            throw input_error("cover entry " + std::to_string(i) + " references a missing id");
        if (p.rank[hi] != p.rank[lo] + 1)
            throw input_error("cover entry " + std::to_string(i) + " (" + std::to_string(lo) +
                              " -> " + std::to_string(hi) + ") does not raise rank by 1");
        if (!seen.insert({lo, hi}).second)
            throw input_error("duplicate cover entry " + std::to_string(i));
        p.up[lo].push_back(hi);
    }
    for (auto& ups : p.up) std::sort(ups.begin(), ups.end());
    return out;
}

inline void export_poset(const GradedPoset& p, const PosetMeta& meta, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw input_error("cannot write '" + path + "'");
    os << poset_to_json(p, meta).dump(1) << '\n';
}

inline PosetFile import_poset(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw input_error("cannot read '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(is);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error("JSON parse error in '" + path + "': " + e.what());
    }
    try {
        return poset_from_json(j);
    } catch (const input_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

inline void export_dot(const GradedPoset& p, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw input_error("cannot write '" + path + "'");
    os << "digraph poset {\n  rankdir=BT;\n  node [shape=box];\n";
    for (int r = 0; r <= p.max_rank() && p.m > 0; ++r) {
        os << "  { rank=same;";
        for (int u = 0; u < p.m; ++u)
            if (p.rank[u] == r) os << " e" << u << ";";
        os << " }\n";
    }
    for (int u = 0; u < p.m; ++u) {
        std::string label = p.labels.empty() || p.labels[u].empty() ? std::to_string(u) : p.labels[u];
        std::string escaped;
        for (char c : label) {
            if (c == '"' || c == '\\') escaped.push_back('\\');
            escaped.push_back(c);
        }
        os << "  e" << u << " [label=\"" << escaped << "\"];\n";
    }
    for (int u = 0; u < p.m; ++u)
        for (int v : p.up[u]) os << "  e" << u << " -> e" << v << ";\n";
    os << "}\n";
}

// --- decompositions ------------------------------------------------------------

inline nlohmann::json decomposition_to_json(const Decomposition& d, const GradedPoset& p,
                                            const std::string& mode) {
    nlohmann::json j;
    j["format"] = "ncp-decomp-v1";
    j["mode"] = mode;
    j["parts"] = nlohmann::json::array();
    for (const auto& part : d.parts) {
        nlohmann::json pj;
        switch (part.type) {
            case PartType::Boolean: pj["type"] = "boolean"; pj["rank"] = part.type_rank; break;
            case PartType::Chain: pj["type"] = "chain"; pj["length"] = part.type_rank; break;
            case PartType::Untyped: pj["type"] = "untyped"; break;
        }
        if (!part.tag.empty()) pj["tag"] = part.tag;
        if (!part.iso_type.empty()) pj["iso"] = part.iso_type;
        auto [lo, hi] = part_span(p, part);
        pj["span"] = {lo, hi};
        pj["elements"] = part.elements;
        j["parts"].push_back(pj);
    }
    return j;
}

inline Decomposition decomposition_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("format") || j["format"] != "ncp-decomp-v1")
        throw input_error("not an ncp-decomp-v1 file");
    if (!j.contains("parts") || !j["parts"].is_array()) throw input_error("missing 'parts' array");
    Decomposition out;
    for (std::size_t i = 0; i < j["parts"].size(); ++i) {
        const auto& pj = j["parts"][i];
        DecompositionPart part;
        if (!pj.contains("elements") || !pj["elements"].is_array())
            throw input_error("part " + std::to_string(i) + " lacks 'elements'");
        for (const auto& e : pj["elements"]) part.elements.push_back(e.get<int>());
        std::sort(part.elements.begin(), part.elements.end());
        const std::string type = pj.value("type", "untyped");
        if (type == "boolean") {
            part.type = PartType::Boolean;
            part.type_rank = pj.value("rank", 0);
        } else if (type == "chain") {
            part.type = PartType::Chain;
            part.type_rank = pj.value("length", 0);
        } else if (type == "untyped") {
            part.type = PartType::Untyped;
        } else {
            throw input_error("part " + std::to_string(i) + " has unknown type '" + type + "'");
        }
        part.tag = pj.value("tag", "");
        part.iso_type = pj.value("iso", "");
        out.parts.push_back(std::move(part));
    }
    return out;
}

inline void export_decomposition(const Decomposition& d, const GradedPoset& p,
                                 const std::string& mode, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw input_error("cannot write '" + path + "'");
    os << decomposition_to_json(d, p, mode).dump(1) << '\n';
}

inline Decomposition import_decomposition(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw input_error("cannot read '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(is);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error("JSON parse error in '" + path + "': " + e.what());
    }
    return decomposition_from_json(j);
}

// --- reports -------------------------------------------------------------------

inline nlohmann::json sperner_report_to_json(const SpernerReport& r) {
    nlohmann::json j;
    j["width"] = r.width;
    j["strongly_sperner"] = r.strongly_sperner;
    j["truncations"] = nlohmann::json::array();
    for (const auto& v : r.verdicts) {
        nlohmann::json vj;
        vj["removed_ranks"] = v.removed_ranks;
        vj["max_rank_size"] = v.max_rank_size;
        vj["width"] = v.width;
        vj["sperner"] = v.sperner;
        j["truncations"].push_back(vj);
    }
    if (r.k_family_sizes) j["k_family_sizes"] = *r.k_family_sizes;
    return j;
}

// --- reference data ------------------------------------------------------------

struct ReferenceProfile {
    std::vector<long long> rank_vector;
    std::vector<long long> gamma_vector;
};

// Known rank and gamma vectors of the noncrossing partition lattices of the
// exceptional well-generated groups, keyed by Shephard-Todd name.
inline const std::map<std::string, ReferenceProfile>& reference_profiles() {
    static const std::map<std::string, ReferenceProfile> table = {
        {"G4", {{1, 3, 1}, {1, 1}}},
        {"G5", {{1, 4, 1}, {1, 2}}},
        {"G6", {{1, 6, 1}, {1, 4}}},
        {"G8", {{1, 3, 1}, {1, 1}}},
        {"G9", {{1, 6, 1}, {1, 4}}},
        {"G10", {{1, 4, 1}, {1, 2}}},
        {"G14", {{1, 8, 1}, {1, 6}}},
        {"G16", {{1, 3, 1}, {1, 1}}},
        {"G17", {{1, 6, 1}, {1, 4}}},
        {"G18", {{1, 4, 1}, {1, 2}}},
        {"G20", {{1, 5, 1}, {1, 3}}},
        {"G21", {{1, 10, 1}, {1, 8}}},
        {"G23", {{1, 15, 15, 1}, {1, 12}}},
        {"G24", {{1, 14, 14, 1}, {1, 11}}},
        {"G25", {{1, 6, 6, 1}, {1, 3}}},
        {"G26", {{1, 9, 9, 1}, {1, 6}}},
        {"G27", {{1, 20, 20, 1}, {1, 17}}},
        {"G28", {{1, 24, 55, 24, 1}, {1, 20, 9}}},
        {"G29", {{1, 25, 60, 25, 1}, {1, 21, 12}}},
        {"G30", {{1, 60, 158, 60, 1}, {1, 56, 40}}},
        {"G32", {{1, 10, 20, 10, 1}, {1, 6, 2}}},
        {"G33", {{1, 30, 123, 123, 30, 1}, {1, 25, 38}}},
        {"G34", {{1, 56, 385, 700, 385, 56, 1}, {1, 50, 170, 40}}},
        {"G35", {{1, 36, 204, 351, 204, 36, 1}, {1, 30, 69, 13}}},
        {"G36", {{1, 63, 546, 1470, 1470, 546, 63, 1}, {1, 56, 245, 140}}},
        {"G37", {{1, 120, 1540, 6120, 9518, 6120, 1540, 120, 1}, {1, 112, 840, 1024, 120}}},
    };
    return table;
}

struct ReferenceReport {
    bool rank_match = false;
    bool gamma_match = false;
    bool strongly_sperner = false;
    std::vector<long long> computed_rank_vector;
    std::vector<long long> computed_gamma_vector;

    bool ok() const { return rank_match && gamma_match && strongly_sperner; }
};

// Recompute the rank profile, gamma-vector, and strong Sperner verdict of
// an imported poset and compare against an expected record.  Mismatches are
// reported, not thrown.
inline ReferenceReport verify_reference_table(const GradedPoset& p, const ReferenceProfile& expected) {
    ReferenceReport report;
    const RankProfile profile = rank_profile(p);
    report.computed_rank_vector = profile.rank_vector;
    if (profile.gamma_vector) report.computed_gamma_vector = *profile.gamma_vector;
    report.rank_match = profile.rank_vector == expected.rank_vector;
    report.gamma_match =
        profile.gamma_vector.has_value() && *profile.gamma_vector == expected.gamma_vector;
    report.strongly_sperner = is_strongly_sperner(p).strongly_sperner;
    return report;
}

inline ReferenceReport verify_reference_table(const std::string& path, const std::string& group) {
    const auto& table = reference_profiles();
    auto it = table.find(group);
    if (it == table.end()) throw input_error("no reference profile for group '" + group + "'");
    return verify_reference_table(import_poset(path).poset, it->second);
}

}  // namespace ncp
