#include <evdom/labeling.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

namespace evdom {

verdict check_nice(const domain_fragment& frag, const theta_classes_result& theta,
                   const edge_labeling& lab) {
    for (int e = 0; e < frag.num_edges(); e++)
        if (lab.class_label[theta.edge_class[e]] < 0)
            throw unlabeled_class("class " + std::to_string(theta.edge_class[e]) +
                                  " has no label");
    for (int v = 0; v < frag.num_vertices(); v++) {
        std::map<int, int> seen;  // label -> edge
        for (int e : frag.out_adj()[v]) {
            int l = lab.class_label[theta.edge_class[e]];
            auto [it, fresh] = seen.emplace(l, e);
            if (!fresh)
                return {false, "vertex " + frag.vname[v] + ": outgoing edges " +
                                   std::to_string(it->second) + " and " + std::to_string(e) +
                                   " share label " + std::to_string(l)};
        }
    }
    return {true, ""};
}

nice_search_result search_nice(const domain_fragment& frag, const theta_classes_result& theta,
                               int alphabet, long count_limit) {
    int nc = theta.num_classes;
    // order by first appearance from the basepoint
    std::vector<int> order(nc);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::tie(theta.first_depth[a], a) < std::tie(theta.first_depth[b], b);
    });
    std::vector<int> rank(nc);
    for (int i = 0; i < nc; i++) rank[order[i]] = i;

    // conflict graph: classes co-initial at some vertex
    std::vector<std::set<int>> adj(nc);
    for (int v = 0; v < frag.num_vertices(); v++) {
        const auto& out = frag.out_adj()[v];
        for (size_t i = 0; i < out.size(); i++)
            for (size_t j = i + 1; j < out.size(); j++) {
                int a = theta.edge_class[out[i]], b = theta.edge_class[out[j]];
                if (a != b) {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
    }

    nice_search_result res;
    std::vector<int> label(nc, -1);
    std::function<bool(int, int)> rec = [&](int idx, int used) -> bool {
        if (idx == nc) {
            res.solutions++;
            if (!res.found) {
                res.found = true;
                res.labeling.alphabet = alphabet;
                res.labeling.class_label = label;
            }
            return res.solutions >= count_limit;
        }
        int c = order[idx];
        int cap = std::min(alphabet, used + 1);  // symmetry: new labels in order
        for (int l = 0; l < cap; l++) {
            bool ok = true;
            for (int d : adj[c])
                if (label[d] == l) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            label[c] = l;
            if (rec(idx + 1, std::max(used, l + 1))) {
                label[c] = -1;
                return true;
            }
            label[c] = -1;
        }
        return false;
    };
    bool hit_limit = rec(0, 0);
    res.exhausted = !hit_limit;
    return res;
}

trace_verdict check_trace(const event_fragment& ef, const edge_labeling& lab) {
    if (!lab.has_independence)
        throw missing_independence("labeling carries no independence relation");
    auto lbl = [&](int e) {
        // label of an event via any dual edge's class: events are classes
        return lab.class_label[e];
    };
    auto dependent = [&](int l1, int l2) {
        if (l1 == l2) return true;  // irreflexive independence
        return !lab.independent[l1][l2];
    };
    trace_verdict out;
    int n = ef.num_events;
    for (int e = 0; e < n; e++)
        for (int f = e + 1; f < n; f++) {
            if (!ef.pair_resolved(e, f)) {
                out.unresolved_pairs++;
                continue;
            }
            int le = lbl(e), lf = lbl(f);
            if (ef.is_mc(e, f) && le == lf)
                return {false, "LES1",
                        "events " + std::to_string(e) + "," + std::to_string(f) +
                            " in minimal conflict share label " + std::to_string(le),
                        out.unresolved_pairs};
            if ((ef.is_mc(e, f) || ef.immediate_le(e, f) || ef.immediate_le(f, e)) &&
                !dependent(le, lf))
                return {false, "LES2",
                        "events " + std::to_string(e) + "," + std::to_string(f) +
                            " immediately related but labels independent",
                        out.unresolved_pairs};
            if (dependent(le, lf) && ef.at(e, f) == event_fragment::rel::concurrent)
                return {false, "LES3",
                        "concurrent events " + std::to_string(e) + "," + std::to_string(f) +
                            " carry dependent labels",
                        out.unresolved_pairs};
        }
    return out;
}

edge_labeling canonical_hyperplane_labeling(const square_complex& base,
                                            const domain_fragment& frag,
                                            const theta_classes_result& theta) {
    std::vector<base_hyperplane> hyps = base_hyperplanes(base);
    std::vector<int> edge_hyp(base.num_edges(), -1);
    for (const auto& h : hyps)
        for (int e : h.dual_edges) edge_hyp[e] = h.id;

    edge_labeling lab;
    lab.alphabet = static_cast<int>(hyps.size());
    for (const auto& h : hyps) lab.symbols.push_back("H" + std::to_string(h.id));
    lab.class_label.assign(theta.num_classes, -1);
    for (int c = 0; c < theta.num_classes; c++) {
        for (int e : theta.dual_edges[c]) {
            int be = frag.edges[e].base_edge;
            if (be < 0) throw validation_error("fragment edge has no base edge");
            int h = edge_hyp[be];
            if (lab.class_label[c] < 0)
                lab.class_label[c] = h;
            else if (lab.class_label[c] != h)
                throw fold_inconsistency("fragment class projects onto two hyperplanes");
        }
    }
    lab.has_independence = true;
    lab.independent.assign(lab.alphabet, std::vector<uint8_t>(lab.alphabet, 0));
    for (int q = 0; q < base.num_squares(); q++) {
        const square_rec& sq = base.squares[q];
        for (int i = 0; i < 4; i++) {
            int h1 = edge_hyp[sq.sides[i].edge], h2 = edge_hyp[sq.sides[(i + 1) % 4].edge];
            if (h1 != h2) lab.independent[h1][h2] = lab.independent[h2][h1] = 1;
        }
    }
    return lab;
}

std::optional<std::vector<std::pair<int, int>>> labeled_filter_iso(
    const domain_fragment& frag, const theta_classes_result& theta, const edge_labeling* lab,
    int v1, int v2, int depth) {
    // depth-truncated directed filters inside the fragment
    auto collect = [&](int root) {
        std::vector<int> verts{root};
        std::map<int, int> local{{root, 0}};
        std::vector<int> dep{0};
        for (size_t h = 0; h < verts.size(); h++) {
            if (dep[h] == depth) continue;
            for (int e : frag.out_adj()[verts[h]]) {
                int w = frag.edges[e].dst;
                if (!local.count(w)) {
                    local[w] = static_cast<int>(verts.size());
                    verts.push_back(w);
                    dep.push_back(dep[h] + 1);
                }
            }
        }
        return std::make_pair(verts, dep);
    };
    auto [va, da] = collect(v1);
    auto [vb, db] = collect(v2);
    if (va.size() != vb.size()) return std::nullopt;
    int n = static_cast<int>(va.size());
    std::map<int, int> la, lbm;
    for (int i = 0; i < n; i++) la[va[i]] = i;
    for (int i = 0; i < n; i++) lbm[vb[i]] = i;

    auto edge_key = [&](int e) { return lab ? lab->class_label[theta.edge_class[e]] : 0; };
    // local adjacency with edge keys
    auto build = [&](const std::vector<int>& verts, const std::vector<int>& dep,
                     std::map<int, int>& local) {
        std::vector<std::vector<std::pair<int, int>>> out(verts.size());
        for (size_t i = 0; i < verts.size(); i++) {
            if (dep[i] == depth) continue;
            for (int e : frag.out_adj()[verts[i]]) {
                auto it = local.find(frag.edges[e].dst);
                if (it != local.end()) out[i].push_back({edge_key(e), it->second});
            }
            std::sort(out[i].begin(), out[i].end());
        }
        return out;
    };
    auto outa = build(va, da, la), outb = build(vb, db, lbm);

    std::vector<int> map_ab(n, -1), map_ba(n, -1);
    std::function<bool(int)> rec = [&](int i) -> bool {
        if (i == n) return true;
        for (int c = 0; c < n; c++) {
            if (map_ba[c] >= 0) continue;
            if (da[i] != db[c]) continue;
            if (frag.vtype[va[i]] != frag.vtype[vb[c]]) continue;
            if (outa[i].size() != outb[c].size()) continue;
            bool ok = true;
            // mapped out-neighbors must correspond with equal keys
            for (auto [k, j] : outa[i]) {
                if (map_ab[j] < 0) {
                    // key multiset must still be available
                    bool found = false;
                    for (auto [k2, j2] : outb[c])
                        if (k2 == k && map_ba[j2] < 0) found = true;
                    if (!found) ok = false;
                } else {
                    bool found = false;
                    for (auto [k2, j2] : outb[c])
                        if (k2 == k && j2 == map_ab[j]) found = true;
                    if (!found) ok = false;
                }
                if (!ok) break;
            }
            // and incoming edges from already-mapped vertices
            if (ok)
                for (int p = 0; p < i && ok; p++) {
                    for (auto [k, j] : outa[p])
                        if (j == i) {
                            bool found = false;
                            for (auto [k2, j2] : outb[map_ab[p]])
                                if (k2 == k && j2 == c) found = true;
                            if (!found) {
                                ok = false;
                                break;
                            }
                        }
                }
            if (!ok) continue;
            map_ab[i] = c;
            map_ba[c] = i;
            if (rec(i + 1)) return true;
            map_ab[i] = -1;
            map_ba[c] = -1;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; i++) out.push_back({va[i], vb[map_ab[i]]});
    return out;
}

obstruction_witness regular_obstruction_witness(const quadrant_fragment& qf,
                                                const theta_classes_result& theta,
                                                const edge_labeling& lab, int k, int m, int n) {
    if (n < 1 || n > qf.n) throw validation_error("row length outside the quadrant");
    if (k < 0 || m < 0 || k > qf.m || m > qf.m) throw validation_error("height outside the quadrant");
    verdict nice = check_nice(qf.frag, theta, lab);
    if (!nice.pass) throw not_nice(nice.witness);

    std::string wk = qf.rect.row_word(k).substr(0, n);
    std::string wm = qf.rect.row_word(m).substr(0, n);
    if (wk == wm)
        throw words_equal("row words at heights " + std::to_string(k) + " and " +
                          std::to_string(m) + " agree");
    int i = 0;
    while (wk[i] == wm[i]) i++;

    obstruction_witness w;
    w.index = i;
    w.word_k = wk;
    w.word_m = wm;
    int z = qf.zv[i][m];
    w.vertex = qf.frag.vname[z];
    w.edge_row = qf.out_edge(z, qf.hb[i][m]);
    int other_bary = qf.star_bary(i, m, std::string(1, wk[i]));
    if (other_bary < 0)
        throw validation_error("missing star edge for color " + std::string(1, wk[i]));
    w.edge_other = qf.out_edge(z, other_bary);
    // transported label: the row-k edge at index i is parallel to the row-m
    // edge at index i, so any labeling gives them the same label; a filter
    // isomorphism would copy it onto edge_other.
    int ek = qf.out_edge(qf.zv[i][k], qf.hb[i][k]);
    if (theta.edge_class[ek] != theta.edge_class[w.edge_row])
        throw fold_inconsistency("row edges at a common column are not parallel");
    w.label_row = lab.class_label[theta.edge_class[w.edge_row]];
    w.label_transported = w.label_row;
    return w;
}

std::string labeling_to_json(const edge_labeling& lab) {
    nlohmann::json j;
    j["alphabet"] = lab.alphabet;
    j["class_label"] = lab.class_label;
    if (!lab.symbols.empty()) j["symbols"] = lab.symbols;
    if (lab.has_independence) {
        j["independent"] = nlohmann::json::array();
        for (int a = 0; a < lab.alphabet; a++)
            for (int b = a + 1; b < lab.alphabet; b++)
                if (lab.independent[a][b]) j["independent"].push_back({a, b});
    }
    return j.dump(2);
}

std::string witness_to_json(const obstruction_witness& w) {
    nlohmann::json j;
    j["index"] = w.index;
    j["vertex"] = w.vertex;
    j["edge_row"] = w.edge_row;
    j["edge_other"] = w.edge_other;
    j["word_k"] = w.word_k;
    j["word_m"] = w.word_m;
    j["label_row"] = w.label_row;
    j["label_transported"] = w.label_transported;
    return j.dump(2);
}

}  // namespace evdom
