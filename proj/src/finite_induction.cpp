#include "bclab/finite_induction.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

namespace bclab {

namespace {

void check_range(int v, int n, const char* what) {
    if (v < 0 || v >= n) throw std::invalid_argument(std::string(what) + " out of range");
}

std::vector<int> identity_perm(int m) {
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

/* (p o q)(x) = p[q[x]] */
std::vector<int> compose_perm(const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(q.size());
    for (size_t x = 0; x < q.size(); ++x) r[x] = p[q[x]];
    return r;
}

}  // namespace

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (mul[a][b] != mul[b][a]) return false;
    return true;
}

FiniteGroup group_from_table(std::vector<std::vector<int>> table) {
    int n = static_cast<int>(table.size());
    if (n < 1 || n > 256) throw std::invalid_argument("group order out of range");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("multiplication table is not square");
        for (int v : row) check_range(v, n, "table entry");
    }
    FiniteGroup G;
    G.n = n;
    G.mul = std::move(table);
    for (int g = 0; g < n; ++g)
        if (G.mul[0][g] != g || G.mul[g][0] != g)
            throw std::invalid_argument("element 0 is not an identity");
    for (int g = 0; g < n; ++g) {
        std::vector<char> row(n, 0), col(n, 0);
        for (int h = 0; h < n; ++h) {
            if (row[G.mul[g][h]]++) throw std::invalid_argument("row repeats an element");
            if (col[G.mul[h][g]]++) throw std::invalid_argument("column repeats an element");
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (G.mul[G.mul[a][b]][c] != G.mul[a][G.mul[b][c]])
                    throw std::invalid_argument("table is not associative");
    G.inv.assign(n, -1);
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            if (G.mul[g][h] == 0) G.inv[g] = h;
    return G;
}

FiniteGroup cyclic_group(int n) {
    if (n < 1 || n > 256) throw std::invalid_argument("group order out of range");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return group_from_table(std::move(t));
}

FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B) {
    long n = static_cast<long>(A.n) * B.n;
    if (n > 256) throw std::invalid_argument("group order out of range");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < A.n; ++a)
        for (int b = 0; b < B.n; ++b)
            for (int c = 0; c < A.n; ++c)
                for (int d = 0; d < B.n; ++d)
                    t[a * B.n + b][c * B.n + d] = A.mul[a][c] * B.n + B.mul[b][d];
    return group_from_table(std::move(t));
}

FiniteGroup abelian_group(const std::vector<int>& factors) {
    FiniteGroup G = cyclic_group(1);
    for (int f : factors) G = direct_product(G, cyclic_group(f));
    return G;
}

FiniteGroup unit_group_mod(long m, std::vector<long>* residues) {
    if (m < 2 || m > 4096) throw std::invalid_argument("modulus out of range");
    std::vector<long> res = {1};
    for (long r = 2; r < m; ++r)
        if (std::gcd(r, m) == 1) res.push_back(r);
    int n = static_cast<int>(res.size());
    if (n > 256) throw std::invalid_argument("unit group too large");
    std::vector<int> pos(m, -1);
    for (int i = 0; i < n; ++i) pos[res[i]] = i;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = pos[res[i] * res[j] % m];
    if (residues) *residues = res;
    return group_from_table(std::move(t));
}

int element_order(const FiniteGroup& G, int g) {
    check_range(g, G.n, "element");
    int k = 1, e = g;
    while (e != 0) {
        e = G.mul[e][g];
        ++k;
        if (k > G.n) throw internal_check_error("element order exceeds the group order");
    }
    return k;
}

std::vector<std::vector<int>> abelian_types(int order) {
    if (order < 1 || order > 4096) throw std::invalid_argument("order out of range");
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    // choose the smallest invariant factor first; later ones are multiples
    auto rec = [&](auto&& self, int rem, int min_d) -> void {
        if (rem == 1) {
            out.push_back(cur);
            return;
        }
        for (int d = std::max(2, min_d); d <= rem; ++d) {
            if (rem % d != 0 || d % min_d != 0) continue;
            cur.push_back(d);
            self(self, rem / d, d);
            cur.pop_back();
        }
    };
    rec(rec, order, 1);
    return out;
}

std::vector<int> subgroup_closure(const FiniteGroup& G, std::vector<int> gens) {
    for (int g : gens) check_range(g, G.n, "generator");
    std::vector<char> in(G.n, 0);
    std::vector<int> members = {0};
    in[0] = 1;
    for (int g : gens)
        if (!in[g]) {
            in[g] = 1;
            members.push_back(g);
        }
    for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = 0; j < members.size(); ++j) {
            int p = G.mul[members[i]][members[j]];
            if (!in[p]) {
                in[p] = 1;
                members.push_back(p);
            }
        }
    std::sort(members.begin(), members.end());
    return members;
}

std::vector<std::vector<int>> all_subgroups(const FiniteGroup& G) {
    if (G.n > 128) throw std::invalid_argument("group too large for subgroup enumeration");
    std::set<std::vector<int>> known;
    std::queue<std::vector<int>> work;
    std::vector<int> triv = {0};
    known.insert(triv);
    work.push(triv);
    while (!work.empty()) {
        std::vector<int> H = std::move(work.front());
        work.pop();
        for (int g = 0; g < G.n; ++g) {
            if (std::binary_search(H.begin(), H.end(), g)) continue;
            std::vector<int> gens = H;
            gens.push_back(g);
            std::vector<int> B = subgroup_closure(G, gens);
            if (known.insert(B).second) work.push(B);
        }
    }
    std::vector<std::vector<int>> out(known.begin(), known.end());
    std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

bool is_subgroup(const FiniteGroup& G, const std::vector<int>& H) {
    if (H.empty() || H[0] != 0) return false;
    for (size_t i = 0; i < H.size(); ++i) {
        if (H[i] < 0 || H[i] >= G.n) return false;
        if (i && H[i] <= H[i - 1]) return false;
    }
    for (int a : H)
        for (int b : H)
            if (!std::binary_search(H.begin(), H.end(), G.mul[a][b])) return false;
    return true;
}

FiniteGroup subgroup_group(const FiniteGroup& G, const std::vector<int>& H) {
    if (!is_subgroup(G, H)) throw std::invalid_argument("not a subgroup");
    int n = static_cast<int>(H.size());
    auto pos = [&](int e) {
        return static_cast<int>(std::lower_bound(H.begin(), H.end(), e) - H.begin());
    };
    FiniteGroup S;
    S.n = n;
    S.mul.assign(n, std::vector<int>(n));
    S.inv.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) S.mul[i][j] = pos(G.mul[H[i]][H[j]]);
        S.inv[i] = pos(G.inv[H[i]]);
    }
    return S;
}

GroupAction make_action(FiniteGroup G, std::vector<std::vector<int>> act) {
    if (static_cast<int>(act.size()) != G.n)
        throw std::invalid_argument("action table must have one row per element");
    if (act.empty() || act[0].empty()) throw std::invalid_argument("empty action");
    int m = static_cast<int>(act[0].size());
    for (const auto& row : act) {
        if (static_cast<int>(row.size()) != m) throw std::invalid_argument("ragged action table");
        for (int v : row) check_range(v, m, "action value");
    }
    for (int x = 0; x < m; ++x)
        if (act[0][x] != x) throw std::invalid_argument("identity must act trivially");
    for (int g = 0; g < G.n; ++g)
        for (int h = 0; h < G.n; ++h) {
            int gh = G.mul[g][h];
            for (int x = 0; x < m; ++x)
                if (act[g][act[h][x]] != act[gh][x])
                    throw std::invalid_argument("table is not an action");
        }
    GroupAction A;
    A.G = std::move(G);
    A.m = m;
    A.act = std::move(act);
    return A;
}

std::vector<GroupAction> all_actions(const FiniteGroup& H, int m) {
    if (m < 1 || m > 6) throw std::invalid_argument("point count out of range");
    if (H.n > 64) throw std::invalid_argument("group too large for action enumeration");

    std::vector<int> gens;
    std::vector<int> closure = {0};
    while (static_cast<int>(closure.size()) < H.n) {
        int g = 0;
        while (std::binary_search(closure.begin(), closure.end(), g)) ++g;
        gens.push_back(g);
        closure = subgroup_closure(H, gens);
    }

    std::vector<std::vector<int>> perms;
    std::vector<int> p = identity_perm(m);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    // candidate images per generator: permutations whose order divides the
    // generator's order
    std::vector<std::vector<int>> cand(gens.size());
    long tuples = 1;
    for (size_t i = 0; i < gens.size(); ++i) {
        int ord = element_order(H, gens[i]);
        for (size_t k = 0; k < perms.size(); ++k) {
            std::vector<int> q = perms[k];
            for (int e = 1; e < ord; ++e) q = compose_perm(q, perms[k]);
            if (q == identity_perm(m)) cand[i].push_back(static_cast<int>(k));
        }
        tuples *= static_cast<long>(cand[i].size());
        if (tuples > 5000000) throw std::invalid_argument("too many generator images");
    }

    std::vector<GroupAction> out;
    std::vector<int> choice(gens.size());
    auto attempt = [&]() {
        std::vector<std::vector<int>> pe(H.n);
        pe[0] = identity_perm(m);
        std::vector<int> queue = {0};
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int h = queue[qi];
            for (size_t i = 0; i < gens.size(); ++i) {
                int h2 = H.mul[h][gens[i]];
                std::vector<int> q = compose_perm(pe[h], perms[cand[i][choice[i]]]);
                if (pe[h2].empty()) {
                    pe[h2] = std::move(q);
                    queue.push_back(h2);
                } else if (pe[h2] != q) {
                    return;
                }
            }
        }
        out.push_back(make_action(H, std::move(pe)));
    };
    auto rec = [&](auto&& self, size_t i) -> void {
        if (i == gens.size()) {
            attempt();
            return;
        }
        for (size_t k = 0; k < cand[i].size(); ++k) {
            choice[i] = static_cast<int>(k);
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<int> orbit_partition(const GroupAction& A) {
    std::vector<int> orb(A.m, -1);
    int next = 0;
    for (int x = 0; x < A.m; ++x) {
        if (orb[x] >= 0) continue;
        int id = next++;
        std::vector<int> stack = {x};
        orb[x] = id;
        while (!stack.empty()) {
            int y = stack.back();
            stack.pop_back();
            for (int g = 0; g < A.G.n; ++g) {
                int z = A.act[g][y];
                if (orb[z] < 0) {
                    orb[z] = id;
                    stack.push_back(z);
                }
            }
        }
    }
    return orb;
}

int InducedSystem::point_of(int g, int x) const {
    if (m_orig <= 0) throw std::invalid_argument("uninitialized system");
    check_range(x, m_orig, "point");
    check_range(g, static_cast<int>(point_index.size()) / m_orig, "element");
    return point_index[g * m_orig + x];
}

InducedSystem induce(const FiniteGroup& G, const std::vector<int>& H, const GroupAction& AX) {
    if (!is_subgroup(G, H)) throw std::invalid_argument("not a subgroup");
    FiniteGroup sg = subgroup_group(G, H);
    if (AX.G.n != sg.n || AX.G.mul != sg.mul)
        throw std::invalid_argument("action group does not match the subgroup");
    int m = AX.m;
    int hs = static_cast<int>(H.size());
    if (static_cast<long>(G.n) * m > 65536) throw std::invalid_argument("induced system too large");

    InducedSystem S;
    S.m_orig = m;
    S.point_index.assign(static_cast<size_t>(G.n) * m, -1);
    std::vector<int> canon_id(static_cast<size_t>(G.n) * m, -1);
    int next = 0;
    for (int g = 0; g < G.n; ++g)
        for (int x = 0; x < m; ++x) {
            std::pair<int, int> best = {G.n, m};
            for (int k = 0; k < hs; ++k) {
                std::pair<int, int> c = {G.mul[g][G.inv[H[k]]], AX.act[k][x]};
                if (c < best) best = c;
            }
            int enc = best.first * m + best.second;
            if (canon_id[enc] < 0) {
                canon_id[enc] = next++;
                S.label.push_back(best);
            }
            S.point_index[g * m + x] = canon_id[enc];
        }
    if (next * hs != G.n * m) throw internal_check_error("balanced product classes are not free");

    S.clopen.resize(m);
    for (int x = 0; x < m; ++x) S.clopen[x] = S.point_index[x];

    std::vector<std::vector<int>> rows(G.n, std::vector<int>(next));
    for (int gp = 0; gp < G.n; ++gp)
        for (int id = 0; id < next; ++id)
            rows[gp][id] = S.point_index[G.mul[gp][S.label[id].first] * m + S.label[id].second];
    S.induced = make_action(G, std::move(rows));
    return S;
}

bool clopen_return_matches(const InducedSystem& S, const FiniteGroup& G,
                           const std::vector<int>& H, const GroupAction& AX) {
    std::vector<int> which_x(S.induced.m, -1);
    for (int x = 0; x < AX.m; ++x) which_x[S.clopen[x]] = x;
    std::vector<int> hpos(G.n, -1);
    for (size_t k = 0; k < H.size(); ++k) hpos[H[k]] = static_cast<int>(k);
    for (int x = 0; x < AX.m; ++x) {
        int y = S.clopen[x];
        for (int g = 0; g < G.n; ++g) {
            int t = S.induced.act[g][y];
            if (hpos[g] >= 0) {
                if (which_x[t] != AX.act[hpos[g]][x]) return false;
            } else if (which_x[t] >= 0) {
                return false;
            }
        }
    }
    return true;
}

bool orbits_correspond(const InducedSystem& S, const GroupAction& AX) {
    std::vector<int> po = orbit_partition(S.induced);
    std::vector<int> xo = orbit_partition(AX);
    int npo = *std::max_element(po.begin(), po.end()) + 1;
    int nxo = *std::max_element(xo.begin(), xo.end()) + 1;
    if (npo != nxo) return false;
    std::vector<int> image(nxo, -1);
    for (int x = 0; x < AX.m; ++x) {
        int a = xo[x], b = po[S.clopen[x]];
        if (image[a] < 0)
            image[a] = b;
        else if (image[a] != b)
            return false;
    }
    std::vector<char> hit(npo, 0);
    for (int a = 0; a < nxo; ++a) {
        if (image[a] < 0) return false;
        if (hit[image[a]]++) return false;
    }
    return true;
}

bool clopen_is_full(const InducedSystem& S) {
    std::vector<int> po = orbit_partition(S.induced);
    int npo = *std::max_element(po.begin(), po.end()) + 1;
    std::vector<char> hit(npo, 0);
    for (int y : S.clopen) hit[po[y]] = 1;
    for (int k = 0; k < npo; ++k)
        if (!hit[k]) return false;
    return true;
}

bool inversion_identities_hold(const GroupAction& A) {
    const FiniteGroup& G = A.G;
    for (int g = 0; g < G.n; ++g)
        for (int y = 0; y < A.m; ++y) {
            int gi = G.inv[g], y2 = A.act[g][y];
            if (G.inv[gi] != g) return false;
            if (A.act[gi][y2] != y) return false;  // applying the inversion twice
        }
    for (int g1 = 0; g1 < G.n; ++g1)
        for (int g2 = 0; g2 < G.n; ++g2) {
            // anti-multiplicative on the group part
            if (G.inv[G.mul[g2][g1]] != G.mul[G.inv[g1]][G.inv[g2]]) return false;
            for (int y = 0; y < A.m; ++y) {
                // the inverted composite starts where the composite ends
                if (A.act[G.mul[g2][g1]][y] != A.act[g2][A.act[g1][y]]) return false;
            }
        }
    return true;
}

GroupAction induce_chain(const FiniteGroup& G, const std::vector<std::vector<int>>& chain,
                         const GroupAction& AX) {
    if (chain.empty() || chain.size() > 16)
        throw std::invalid_argument("chain must have between 1 and 16 stages");
    std::vector<int> full(G.n);
    std::iota(full.begin(), full.end(), 0);
    if (chain[0] != full) throw std::invalid_argument("chain must start at the whole group");
    for (const auto& H : chain)
        if (!is_subgroup(G, H)) throw std::invalid_argument("chain stage is not a subgroup");
    for (size_t k = 1; k < chain.size(); ++k)
        for (int e : chain[k])
            if (!std::binary_search(chain[k - 1].begin(), chain[k - 1].end(), e))
                throw std::invalid_argument("chain stages must be nested");
    FiniteGroup bottom = subgroup_group(G, chain.back());
    if (AX.G.n != bottom.n || AX.G.mul != bottom.mul)
        throw std::invalid_argument("action group does not match the last stage");

    GroupAction A = AX;
    std::vector<std::pair<int, int>> flat(AX.m);
    for (int x = 0; x < AX.m; ++x) flat[x] = {0, x};
    for (int k = static_cast<int>(chain.size()) - 2; k >= 0; --k) {
        const std::vector<int>& P = chain[k];
        const std::vector<int>& C = chain[k + 1];
        FiniteGroup PG = subgroup_group(G, P);
        std::vector<int> cpos;
        cpos.reserve(C.size());
        for (int e : C)
            cpos.push_back(
                static_cast<int>(std::lower_bound(P.begin(), P.end(), e) - P.begin()));
        InducedSystem S = induce(PG, cpos, A);
        std::vector<std::pair<int, int>> nf(S.induced.m);
        for (int id = 0; id < S.induced.m; ++id) {
            int ppos = S.label[id].first, xin = S.label[id].second;
            nf[id] = {G.mul[P[ppos]][flat[xin].first], flat[xin].second};
        }
        A = std::move(S.induced);
        flat = std::move(nf);
    }

    InducedSystem direct = induce(G, chain.back(), AX);
    if (A.m != direct.induced.m)
        throw internal_check_error("staged induction has the wrong size");
    std::vector<char> used(A.m, 0);
    std::vector<int> iso(A.m);
    for (int id = 0; id < A.m; ++id) {
        iso[id] = direct.point_of(flat[id].first, flat[id].second);
        if (used[iso[id]]++) throw internal_check_error("staged relabeling is not injective");
    }
    for (int g = 0; g < G.n; ++g)
        for (int id = 0; id < A.m; ++id)
            if (iso[A.act[g][id]] != direct.induced.act[g][iso[id]])
                throw internal_check_error("staged induction disagrees with direct induction");
    return A;
}

}  // namespace bclab
