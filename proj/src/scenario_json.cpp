#include <algorithm>
#include <string>

#include <json.hpp>

#include "ctx/errors.hpp"
#include "ctx/scenario.hpp"

namespace ctx {

namespace {

using json = nlohmann::ordered_json;

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

const json& require(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) throw ParseError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(path + "." + key, "missing field");
    return *it;
}

ObservableFamily parse_family(const json& j, const std::string& path) {
    ObservableFamily fam;
    fam.name = path;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ParseError(path + ".name", "expected a string");
        fam.name = j["name"].get<std::string>();
    }
    if (j.contains("n")) {
        if (!j["n"].is_number_integer()) throw ParseError(path + ".n", "expected an integer");
        fam.n = j["n"].get<int>();
    }
    const json& list = require(j, "observables", path);
    if (!list.is_array()) throw ParseError(path + ".observables", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = path + ".observables[" + std::to_string(i) + "].bloch";
        const json& b = require(list[i], "bloch", path + ".observables[" + std::to_string(i) + "]");
        if (!b.is_array() || b.size() != 3 || !std::all_of(b.begin(), b.end(), [](const json& v) { return v.is_number(); }))
            throw ParseError(where, "expected three numbers");
        const BlochVector v{b[0].get<double>(), b[1].get<double>(), b[2].get<double>()};
        try {
            fam.observables.push_back(QubitObservable::from_bloch(v, false));
        } catch (const NonUnitBloch& e) {
            throw ValidationError(where + ": " + e.what());
        }
    }
    return fam;
}

json family_to_json(const ObservableFamily& f) {
    json obs = json::array();
    for (const auto& a : f.observables) {
        const auto& b = a.bloch();
        obs.push_back({{"bloch", {b.x, b.y, b.z}}});
    }
    json out = {{"name", f.name}, {"observables", obs}};
    if (f.n) out["n"] = *f.n;
    return out;
}

}  // namespace

OperationalScenario scenario_from_json(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError("", e.what(), line_of(text, e.byte == 0 ? 0 : e.byte - 1));
    }

    OperationalScenario s;
    const json& name = require(root, "name", "$");
    if (!name.is_string()) throw ParseError("$.name", "expected a string");
    s.name = name.get<std::string>();
    s.alice = parse_family(require(root, "alice", "$"), "alice");
    s.bob = parse_family(require(root, "bob", "$"), "bob");

    if (root.contains("equivalences")) {
        const json& eqs = root["equivalences"];
        if (!eqs.is_array()) throw ParseError("$.equivalences", "expected an array");
        for (std::size_t i = 0; i < eqs.size(); ++i) {
            const std::string path = "$.equivalences[" + std::to_string(i) + "]";
            const json& e = eqs[i];
            OperationalEquivalence eq;
            const json& side = require(e, "side", path);
            if (side == "preparation") eq.side = Side::preparation;
            else if (side == "measurement") eq.side = Side::measurement;
            else throw ParseError(path + ".side", "expected \"preparation\" or \"measurement\"");
            const json& party = require(e, "party", path);
            if (party == "alice") eq.party = Party::alice;
            else if (party == "bob") eq.party = Party::bob;
            else throw ParseError(path + ".party", "expected \"alice\" or \"bob\"");
            const json& terms = require(e, "terms", path);
            if (!terms.is_array()) throw ParseError(path + ".terms", "expected an array");
            for (std::size_t k = 0; k < terms.size(); ++k) {
                const std::string tp = path + ".terms[" + std::to_string(k) + "]";
                const json& idx = require(terms[k], "index", tp);
                const json& sign = require(terms[k], "sign", tp);
                const json& coeff = require(terms[k], "coeff", tp);
                if (!idx.is_number_integer() || idx.get<long long>() < 0)
                    throw ParseError(tp + ".index", "expected a non-negative integer");
                if (!sign.is_number_integer() || (sign.get<int>() != 1 && sign.get<int>() != -1))
                    throw ParseError(tp + ".sign", "expected +1 or -1");
                if (!coeff.is_string()) throw ParseError(tp + ".coeff", "expected a \"p/q\" string");
                EquivalenceTerm term;
                term.index = idx.get<std::size_t>();
                term.sign = sign.get<int>();
                try {
                    term.coeff = parse_rational(coeff.get<std::string>());
                } catch (const ParseError& pe) {
                    throw ParseError(tp + ".coeff", pe.what());
                }
                eq.terms.push_back(term);
            }
            s.equivalences.push_back(std::move(eq));
        }
    }

    if (root.contains("relations")) {
        const json& rels = root["relations"];
        if (!rels.is_array()) throw ParseError("$.relations", "expected an array");
        for (std::size_t i = 0; i < rels.size(); ++i) {
            const std::string path = "$.relations[" + std::to_string(i) + "]";
            if (!rels[i].is_array()) throw ParseError(path, "expected an array of integers");
            SignedRelation r;
            for (const auto& v : rels[i]) {
                if (!v.is_number_integer()) throw ParseError(path, "expected an array of integers");
                r.push_back(v.get<int>());
            }
            if (r.size() != s.alice.size() + s.bob.size())
                throw ValidationError(path + " must have one entry per observable (Alice's, then Bob's)");
            s.relations.push_back(std::move(r));
        }
    }

    if (root.contains("game")) {
        if (!root["game"].is_string()) throw ParseError("$.game", "expected a string");
        try {
            s.game = parse_game_rule(root["game"].get<std::string>());
        } catch (const UnknownKind& e) {
            throw ParseError("$.game", e.what());
        }
    }

    validate(s);
    return s;
}

std::string scenario_to_json(const OperationalScenario& s) {
    json eqs = json::array();
    for (const auto& eq : s.equivalences) {
        json terms = json::array();
        for (const auto& t : eq.terms) terms.push_back({{"index", t.index}, {"sign", t.sign}, {"coeff", to_string(t.coeff)}});
        eqs.push_back({{"side", to_string(eq.side)}, {"party", to_string(eq.party)}, {"terms", terms}});
    }
    json root = {{"name", s.name},
                 {"alice", family_to_json(s.alice)},
                 {"bob", family_to_json(s.bob)},
                 {"equivalences", eqs},
                 {"relations", s.relations}};
    if (s.game) root["game"] = to_string(*s.game);
    return root.dump(2);
}

}  // namespace ctx
