#include "omack/json_io.hpp"

#include <fstream>
#include <set>

namespace omack {

std::string canonical_dump(const Json& j) { return j.dump(); }

uint64_t content_hash(const Json& j) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical_dump(j)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Json group_to_json(const FiniteGroup& g) {
    Json j;
    j["order"] = g.order;
    j["mul"] = g.mul;
    j["names"] = g.element_names;
    if (!g.family_name.empty()) j["family"] = g.family_name;
    return j;
}

FiniteGroup group_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("mul"))
        throw Error(Error::Kind::Parse, "group file needs 'order' and 'mul'");
    std::vector<std::vector<int>> table = j.at("mul").get<std::vector<std::vector<int>>>();
    if (int(table.size()) != j.at("order").get<int>())
        throw Error(Error::Kind::Parse, "group order does not match the table");
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    FiniteGroup g = build_group(std::move(table), std::move(names));
    if (j.contains("family")) g.family_name = j.at("family").get<std::string>();
    return g;
}

FiniteGroup resolve_group(const Json& ref) {
    if (ref.is_string()) return resolve_group_spec(ref.get<std::string>());
    if (ref.is_object() && ref.contains("name"))
        return named_group(ref.at("name").get<std::string>());
    return group_from_json(ref);
}

FiniteGroup resolve_group_spec(const std::string& name_or_path) {
    if (name_or_path.size() > 5 && name_or_path.substr(name_or_path.size() - 5) == ".json")
        return group_from_json(load_json_file(name_or_path));
    return named_group(name_or_path);
}

Json ts_to_json(const TransferSystem& ts) {
    Json j;
    const FiniteGroup& g = ts.lat->group;
    j["group"] = g.family_name.empty() ? group_to_json(g) : Json(g.family_name);
    Json pairs = Json::array();
    for (auto [k, h] : ts.pairs()) pairs.push_back(Json::array({k, h}));
    j["pairs"] = pairs;
    return j;
}

TsLoadResult ts_from_json(const Json& j, LatticePtr lat) {
    if (!j.is_object() || !j.contains("pairs"))
        throw Error(Error::Kind::Parse, "transfer-system file needs 'pairs'");
    if (!lat) {
        if (!j.contains("group"))
            throw Error(Error::Kind::Parse, "transfer-system file needs 'group'");
        lat = make_lattice(resolve_group(j.at("group")));
    }
    TsLoadResult r;
    for (const Json& p : j.at("pairs")) {
        if (!p.is_array() || p.size() != 2)
            throw Error(Error::Kind::Parse, "pairs must be [k, h] id pairs");
        int k = p.at(0).get<int>(), h = p.at(1).get<int>();
        if (k < 0 || h < 0 || k >= lat->size() || h >= lat->size())
            throw Error(Error::Kind::Parse, "subgroup id out of range in pair list");
        r.given.emplace_back(k, h);
    }
    r.ts = generate(lat, r.given);
    std::set<std::pair<int, int>> given(r.given.begin(), r.given.end());
    for (auto pr : r.ts.pairs())
        if (!given.count(pr)) r.added.push_back(pr);
    return r;
}

Json element_to_json(const BurnsideElement& x) {
    Json j;
    j["level"] = x.level;
    Json coeffs = Json::object();
    for (const auto& [k, c] : x.coeffs)
        if (c != 0) coeffs[std::to_string(k)] = rat_str(c);
    j["coeffs"] = coeffs;
    return j;
}

BurnsideElement element_from_json(const Json& j) {
    BurnsideElement x;
    x.level = j.at("level").get<int>();
    for (auto& [key, val] : j.at("coeffs").items())
        x.coeffs[std::stoi(key)] = rat_parse(val.get<std::string>());
    return x;
}

Json partition_to_json(const InsepPartition& p) {
    Json j;
    Json classes = Json::array();
    for (const auto& [rep, members] : p.classes) {
        Json c;
        c["rep"] = rep;
        c["members"] = members;
        classes.push_back(c);
    }
    j["classes"] = classes;
    Json hull = Json::object();
    for (int i = 0; i < int(p.hull.size()); ++i)
        if (p.hull[i] >= 0) hull[std::to_string(i)] = p.hull[i];
    j["hull"] = hull;
    return j;
}

Json qmatrix_to_json(const QMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rat_str(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

QMatrix qmatrix_from_json(const Json& j) {
    int rows = int(j.size());
    int cols = rows ? int(j.at(0).size()) : 0;
    QMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (int(j.at(r).size()) != cols) throw Error(Error::Kind::Parse, "ragged matrix");
        for (int c = 0; c < cols; ++c) m.at(r, c) = rat_parse(j.at(r).at(c).get<std::string>());
    }
    return m;
}

Json mackey_to_json(const MackeyFunctor& m) {
    Json j;
    j["ts"] = ts_to_json(m.ts);
    j["family_top"] = m.family_top;
    Json levels = Json::object();
    for (int l : m.levels) levels[std::to_string(l)] = m.dim(l);
    j["levels"] = levels;
    Json res = Json::object(), tr = Json::object(), conj = Json::object();
    for (auto& [key, f] : m.res)
        res[std::to_string(key.first) + ">" + std::to_string(key.second)] = qmatrix_to_json(f);
    for (auto& [key, f] : m.tr)
        tr[std::to_string(key.first) + ">" + std::to_string(key.second)] = qmatrix_to_json(f);
    for (auto& [key, f] : m.conj)
        conj[std::to_string(key.first) + "," + std::to_string(key.second)] = qmatrix_to_json(f);
    j["res"] = res;
    j["tr"] = tr;
    j["conj"] = conj;
    return j;
}

MackeyFunctor mackey_from_json(const Json& j, LatticePtr lat) {
    TsLoadResult tsr = ts_from_json(j.at("ts"), lat);
    const SubgroupLattice& l = *tsr.ts.lat;
    int family_top = j.contains("family_top") ? j.at("family_top").get<int>() : l.top();
    MackeyFunctor m = zero_mackey(tsr.ts, family_top);
    for (auto& [key, val] : j.at("levels").items()) {
        int id = std::stoi(key);
        if (id < 0 || id >= l.size() || !m.in_family(id))
            throw Error(Error::Kind::Parse, "level id outside the family");
        m.dims[id] = val.get<int>();
    }
    auto parse_pair = [](const std::string& s, char sep) {
        auto pos = s.find(sep);
        if (pos == std::string::npos) throw Error(Error::Kind::Parse, "bad map key");
        return std::pair(std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 1)));
    };
    for (auto& [key, val] : j.at("res").items()) m.res[parse_pair(key, '>')] = qmatrix_from_json(val);
    for (auto& [key, val] : j.at("tr").items()) m.tr[parse_pair(key, '>')] = qmatrix_from_json(val);
    for (auto& [key, val] : j.at("conj").items()) m.conj[parse_pair(key, ',')] = qmatrix_from_json(val);

    // Extend conjugation data by composition if only a generating set was
    // provided: conj(hg, L) = conj(h, gLg^-1) conj(g, L).
    for (int lvl : m.levels) m.conj[{0, lvl}] = QMatrix::identity(m.dim(lvl));
    bool changed = true;
    while (changed) {
        changed = false;
        for (int lvl : m.levels)
            for (int g = 0; g < l.group.order; ++g) {
                auto ig = m.conj.find({g, lvl});
                if (ig == m.conj.end()) continue;
                int glvl = l.conj_sub(g, lvl);
                for (int h = 0; h < l.group.order; ++h) {
                    auto ih = m.conj.find({h, glvl});
                    if (ih == m.conj.end()) continue;
                    int hg = l.group.mul[h][g];
                    if (!m.conj.count({hg, lvl})) {
                        m.conj[{hg, lvl}] = ih->second * ig->second;
                        changed = true;
                    }
                }
            }
    }
    return m;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Error::Kind::Parse, "cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error(Error::Kind::Parse, "bad JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error(Error::Kind::Parse, "cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace omack
