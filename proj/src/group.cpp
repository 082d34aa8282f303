#include "omack/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace omack {

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < order; ++a)
        for (int b = a + 1; b < order; ++b)
            if (mul[a][b] != mul[b][a]) return false;
    return true;
}

namespace {

std::vector<std::vector<int>> apply_permutation(const std::vector<std::vector<int>>& table,
                                                const std::vector<int>& perm) {
    // perm maps old index -> new index; the new table satisfies
    // new[perm[a]][perm[b]] = perm[old[a][b]].
    int n = int(table.size());
    std::vector<std::vector<int>> out(n, std::vector<int>(n, 0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out[perm[a]][perm[b]] = perm[table[a][b]];
    return out;
}

} // namespace

FiniteGroup build_group(std::vector<std::vector<int>> table, std::vector<std::string> names) {
    int n = int(table.size());
    if (n == 0) throw Error(Error::Kind::Parse, "empty multiplication table");
    for (int i = 0; i < n; ++i) {
        if (int(table[i].size()) != n) throw Error(Error::Kind::Parse, "multiplication table is not square");
        for (int j = 0; j < n; ++j)
            if (table[i][j] < 0 || table[i][j] >= n)
                throw Error(Error::Kind::Parse, "table entry out of range");
    }
    if (!names.empty() && int(names.size()) != n)
        throw Error(Error::Kind::Parse, "element name list length mismatch");

    int e = -1;
    for (int c = 0; c < n && e < 0; ++c) {
        bool ok = true;
        for (int x = 0; x < n; ++x)
            if (table[c][x] != x || table[x][c] != x) { ok = false; break; }
        if (ok) e = c;
    }
    if (e < 0) throw Error(Error::Kind::NoIdentity, "no two-sided identity element");

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[a][table[b][c]] != table[table[a][b]][c]) {
                    std::ostringstream os;
                    os << "not associative at (" << a << ", " << b << ", " << c << ")";
                    throw Error(Error::Kind::NotAssociative, os.str());
                }

    std::vector<int> inv(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (table[a][b] == e && table[b][a] == e) { inv[a] = b; break; }
        if (inv[a] < 0) {
            std::ostringstream os;
            os << "element " << a << " has no two-sided inverse";
            throw Error(Error::Kind::NoInverse, os.str());
        }
    }

    FiniteGroup g;
    if (e != 0) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::swap(perm[0], perm[e]); // transposition 0 <-> e
        table = apply_permutation(table, perm);
        std::vector<int> inv2(n);
        for (int a = 0; a < n; ++a) inv2[perm[a]] = perm[inv[a]];
        inv = inv2;
        if (!names.empty()) {
            std::vector<std::string> nm(n);
            for (int a = 0; a < n; ++a) nm[perm[a]] = names[a];
            names = nm;
        }
        g.reindex_permutation = perm;
    }
    g.order = n;
    g.mul = std::move(table);
    g.inv = std::move(inv);
    g.identity = 0;
    g.element_names = std::move(names);
    if (g.element_names.empty()) {
        for (int a = 0; a < n; ++a) g.element_names.push_back("g" + std::to_string(a));
        g.element_names[0] = "e";
    }
    return g;
}

namespace {

FiniteGroup make_cyclic(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    std::vector<std::string> names;
    for (int a = 0; a < n; ++a) names.push_back("r" + std::to_string(a));
    names[0] = "e";
    return build_group(std::move(t), std::move(names));
}

FiniteGroup make_dihedral(int n) {
    // r^a s^i * r^b s^j, with s r = r^-1 s.
    int m = 2 * n;
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    auto enc = [&](int rot, int flip) { return flip ? n + rot : rot; };
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            int a = x % n, i = x / n;
            int b = y % n, j = y / n;
            int rot = i ? ((a - b) % n + n) % n : (a + b) % n;
            t[x][y] = enc(rot, i ^ j);
        }
    std::vector<std::string> names;
    for (int a = 0; a < n; ++a) names.push_back("r" + std::to_string(a));
    for (int a = 0; a < n; ++a) names.push_back("r" + std::to_string(a) + "s");
    names[0] = "e";
    return build_group(std::move(t), std::move(names));
}

FiniteGroup make_klein4() {
    std::vector<std::vector<int>> t(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) t[a][b] = a ^ b;
    return build_group(std::move(t), {"e", "a", "b", "ab"});
}

FiniteGroup make_symmetric(int n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    int m = int(perms.size());
    auto index_of = [&](const std::vector<int>& q) {
        return int(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            std::vector<int> q(n);
            for (int i = 0; i < n; ++i) q[i] = perms[a][perms[b][i]];
            t[a][b] = index_of(q);
        }
    std::vector<std::string> names;
    for (const auto& q : perms) {
        std::string s = "(";
        for (int i = 0; i < n; ++i) s += std::to_string(q[i]);
        names.push_back(s + ")");
    }
    return build_group(std::move(t), std::move(names));
}

FiniteGroup make_quaternion8() {
    // Elements 1, -1, i, -i, j, -j, k, -k encoded as (axis, sign):
    // 0:+1 1:-1 2:+i 3:-i 4:+j 5:-j 6:+k 7:-k.
    auto enc = [](int axis, int neg) { return 2 * axis + neg; };
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    // axis multiplication table on {1,i,j,k} with result sign
    static const int ax[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sg[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    // sg[a][b] = 1 when axis_a * axis_b = -axis: i*i=j*j=k*k=-1, i*j=k,
    // j*k=i, k*i=j and the reversed products are negated.
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            int a = x / 2, na = x % 2, b = y / 2, nb = y % 2;
            t[x][y] = enc(ax[a][b], na ^ nb ^ sg[a][b]);
        }
    return build_group(std::move(t), {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

} // namespace

FiniteGroup named_group(const std::string& name) {
    std::string family = name;
    int param = -1;
    if (auto pos = name.find(':'); pos != std::string::npos) {
        family = name.substr(0, pos);
        try {
            param = std::stoi(name.substr(pos + 1));
        } catch (const std::exception&) {
            throw Error(Error::Kind::UnknownFamily, "bad group parameter in '" + name + "'");
        }
    }
    FiniteGroup g;
    if (family == "cyclic" && param >= 1)
        g = make_cyclic(param);
    else if (family == "dihedral" && param >= 2)
        g = make_dihedral(param);
    else if ((family == "klein4" && param == -1) || (family == "klein" && param == 4))
        g = make_klein4();
    else if (family == "symmetric" && (param == 3 || param == 4))
        g = make_symmetric(param);
    else if (family == "quaternion" && param == 8)
        g = make_quaternion8();
    else
        throw Error(Error::Kind::UnknownFamily, "unknown group family '" + name + "'");
    g.family_name = name;
    return g;
}

std::vector<std::string> builtin_sweep_names(int max_order) {
    std::vector<std::string> out;
    for (int n = 2; n <= 16 && n <= max_order; ++n) out.push_back("cyclic:" + std::to_string(n));
    if (max_order >= 4) out.push_back("klein4");
    if (max_order >= 6) out.push_back("symmetric:3");
    if (max_order >= 8) out.push_back("dihedral:4");
    if (max_order >= 8) out.push_back("quaternion:8");
    if (max_order >= 12) out.push_back("dihedral:6");
    return out;
}

} // namespace omack
