#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <string>
#include <string_view>

#include "json.hpp"

#include "family.hpp"

#ifndef DQM_FIXTURES_DEFAULT
#define DQM_FIXTURES_DEFAULT "data/fixtures.json"
#endif

namespace dqm {

// accepts "re", "re+imi", "re-imi", "imi", "i", "-i"
inline cplx parse_complex(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s.push_back(c);
    auto fail = [&] { return ValidationError("cannot parse complex literal '" + std::string(text) + "'"); };
    if (s.empty()) throw fail();
    auto to_double = [&](const std::string& t) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            throw fail();
        }
        if (used != t.size()) throw fail();
        return v;
    };
    if (s.back() != 'i' && s.back() != 'j') return {to_double(s), 0.0};
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_part = [&](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return to_double(t);
    };
    if (split == std::string::npos) return {0.0, imag_part(s)};
    return {to_double(s.substr(0, split)), imag_part(s.substr(split))};
}

inline std::string format_complex(cplx v) {
    char buf[96];
    if (v.imag() == 0.0)
        std::snprintf(buf, sizeof buf, "%.17g", v.real());
    else
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", v.real(), v.imag());
    return buf;
}

inline std::string default_fixtures_path() {
    if (const char* env = std::getenv("DQM_FIXTURES"); env && *env) return env;
    return DQM_FIXTURES_DEFAULT;
}

inline ParamSet params_from_json(FamilyId id, const nlohmann::json& j) {
    ParamSet p;
    if (j.contains("a"))
        for (const auto& v : j.at("a"))
            p.lambda.push_back(v.is_string() ? parse_complex(v.get<std::string>()) : cplx(v.get<double>()));
    if (j.contains("alpha")) p.lambda.push_back(j.at("alpha").get<double>());
    if (j.contains("beta")) p.lambda.push_back(j.at("beta").get<double>());
    if (j.contains("q")) p.q = j.at("q").get<double>();
    if (j.contains("phi")) p.phi = j.at("phi").get<double>();
    (void)id;
    return p;
}

inline nlohmann::json params_to_json(FamilyId id, const ParamSet& p) {
    nlohmann::json j = nlohmann::json::object();
    if (id == FamilyId::ContinuousQJacobi || id == FamilyId::ContinuousQLaguerre) {
        j["alpha"] = p.lambda.at(0).real();
        if (id == FamilyId::ContinuousQJacobi) j["beta"] = p.lambda.at(1).real();
    } else if (!p.lambda.empty()) {
        auto& a = j["a"] = nlohmann::json::array();
        for (auto v : p.lambda) a.push_back(format_complex(v));
    }
    if (p.q) j["q"] = *p.q;
    if (p.phi) j["phi"] = *p.phi;
    return j;
}

class FixtureStore {
public:
    static FixtureStore load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ValidationError("cannot open fixtures file " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError("malformed fixtures file " + path + ": " + e.what());
        }
        if (j.value("version", 0) != 1) throw ValidationError("unsupported fixtures version in " + path);
        FixtureStore fs;
        fs.path_ = path;
        for (const auto& [slug, entries] : j.at("families").items()) {
            auto id = family_from_string(slug);
            if (!id) throw ValidationError("unknown family '" + slug + "' in " + path);
            for (const auto& [name, body] : entries.items()) fs.data_[*id][name] = params_from_json(*id, body);
        }
        return fs;
    }
    static FixtureStore load_default() { return load(default_fixtures_path()); }

    ParamSet get(FamilyId id, const std::string& name = "default") const {
        auto f = data_.find(id);
        if (f == data_.end() || !f->second.count(name))
            throw ValidationError("no fixture '" + name + "' for " + std::string(to_string(id)));
        return f->second.at(name);
    }
    std::vector<std::string> names(FamilyId id) const {
        std::vector<std::string> r;
        if (auto f = data_.find(id); f != data_.end())
            for (const auto& [k, v] : f->second) r.push_back(k);
        return r;
    }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::map<FamilyId, std::map<std::string, ParamSet>> data_;
};

}  // namespace dqm
