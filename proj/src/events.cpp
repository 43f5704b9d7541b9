#include <evdom/events.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace evdom {

bool event_fragment::immediate_le(int e, int f) const {
    if (e == f || at(e, f) != rel::le) return false;
    for (int g = 0; g < num_events; g++) {
        if (g == e || g == f) continue;
        if (at(e, g) == rel::le && at(g, f) == rel::le) return false;
    }
    return true;
}

event_fragment events_from_filter(const domain_fragment& frag, int config_bound) {
    event_fragment ef;
    ef.config_bound = config_bound;
    ef.theta = theta_classes(frag);
    int n = ef.num_events = ef.theta.num_classes;

    // Resolution discipline: an event participates when its halfspace
    // split is clean and its first appearance is inside the certified
    // region; a pair's relation is recorded only when a crossing witness
    // could not hide beyond the truncation (first depths sum within the
    // square-carrying region). Boundary-touching classes are reported via
    // theta.boundary_flag but do not gate resolution: in a filter, carrier
    // chains descend toward the minimal dual edge, so classes that appear
    // this shallow cannot be under-merged.
    int lim = frag.certified_depth();
    ef.resolved.assign(n, 0);
    for (int c = 0; c < n; c++)
        ef.resolved[c] = ef.theta.split_ok[c] &&
                         (frag.all_certified || ef.theta.first_depth[c] <= lim);

    // enabling vertices: tails of dual edges
    ef.enablers.assign(n, {});
    for (int c = 0; c < n; c++) {
        std::set<int> tails;
        for (int e : ef.theta.dual_edges[c]) tails.insert(frag.edges[e].src);
        ef.enablers[c].assign(tails.begin(), tails.end());
    }

    // causes: classes crossed by a directed geodesic to the least enabler
    ef.causes.assign(n, {});
    for (int c = 0; c < n; c++) {
        std::set<int> cs;
        int cur = ef.theta.min_vertex[c];
        while (cur != frag.basepoint) {
            int pick = -1;
            for (int e : frag.in_adj()[cur])
                if (frag.depth()[frag.edges[e].src] + 1 == frag.depth()[cur] &&
                    (pick < 0 || e < pick))
                    pick = e;
            if (pick < 0) throw validation_error("fragment vertex without a parent");
            cs.insert(ef.theta.edge_class[pick]);
            cur = frag.edges[pick].src;
        }
        ef.causes[c].assign(cs.begin(), cs.end());
    }

    // crossing pairs from squares
    std::vector<uint8_t> crossing(static_cast<size_t>(n) * n, 0);
    for (const auto& s : frag.squares) {
        int c1 = ef.theta.edge_class[s.a], c2 = ef.theta.edge_class[s.b];
        crossing[c1 * n + c2] = crossing[c2 * n + c1] = 1;
    }

    ef.matrix.assign(static_cast<size_t>(n) * n, event_fragment::rel::unresolved);
    auto set_rel = [&](int e, int f, event_fragment::rel r) { ef.matrix[e * n + f] = r; };
    for (int e = 0; e < n; e++) {
        if (ef.resolved[e]) set_rel(e, e, event_fragment::rel::equal);
        for (int f = 0; f < n; f++) {
            if (e == f) continue;
            if (!ef.resolved[e] || !ef.resolved[f]) continue;
            if (!frag.all_certified &&
                ef.theta.first_depth[e] + ef.theta.first_depth[f] > lim + 1)
                continue;
            bool cross = crossing[e * n + f];
            bool e_le_f = std::binary_search(ef.causes[f].begin(), ef.causes[f].end(), e);
            bool f_le_e = std::binary_search(ef.causes[e].begin(), ef.causes[e].end(), f);
            if (cross)
                set_rel(e, f, event_fragment::rel::concurrent);
            else if (e_le_f)
                set_rel(e, f, event_fragment::rel::le);
            else if (f_le_e)
                set_rel(e, f, event_fragment::rel::ge);
            else
                set_rel(e, f, event_fragment::rel::conflict);
        }
    }

    // co-initiality witnessed by a vertex enabling both
    ef.co_initial.assign(static_cast<size_t>(n) * n, 0);
    std::vector<std::vector<int>> out_classes(frag.num_vertices());
    for (int e = 0; e < frag.num_edges(); e++)
        out_classes[frag.edges[e].src].push_back(ef.theta.edge_class[e]);
    for (auto& v : out_classes) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        for (size_t i = 0; i < v.size(); i++)
            for (size_t j = i + 1; j < v.size(); j++)
                ef.co_initial[v[i] * n + v[j]] = ef.co_initial[v[j] * n + v[i]] = 1;
    }

    ef.minimal_conflict.assign(static_cast<size_t>(n) * n, 0);
    for (int e = 0; e < n; e++)
        for (int f = 0; f < n; f++)
            if (ef.at(e, f) == event_fragment::rel::conflict && ef.co_initial[e * n + f])
                ef.minimal_conflict[e * n + f] = 1;

    natural_relation(ef);
    return ef;
}

void natural_relation(event_fragment& ef) {
    int n = ef.num_events;
    ef.natural.assign(static_cast<size_t>(n) * n, 0);
    ef.natural_clause3.assign(static_cast<size_t>(n) * n, 0);
    auto enabled_at = [&](int e, int z) {
        return std::binary_search(ef.enablers[e].begin(), ef.enablers[e].end(), z);
    };
    for (int e1 = 0; e1 < n; e1++)
        for (int e2 = e1 + 1; e2 < n; e2++) {
            if (!ef.pair_resolved(e1, e2)) continue;
            bool nat = ef.at(e1, e2) == event_fragment::rel::concurrent || ef.is_mc(e1, e2);
            if (!nat) {
                // mixed clause: e3 concurrent with one, minimally conflicting
                // with the other, co-initial with them at two distinct
                // configurations
                for (int e3 = 0; e3 < n && !nat; e3++) {
                    if (e3 == e1 || e3 == e2) continue;
                    auto witness = [&](int a, int b) {
                        // a || e3, b #mu e3, distinct co-initial configs
                        if (!ef.pair_resolved(a, e3) ||
                            ef.at(a, e3) != event_fragment::rel::concurrent)
                            return false;
                        if (!ef.is_mc(b, e3)) return false;
                        for (int z1 : ef.enablers[e3]) {
                            if (!enabled_at(a, z1)) continue;
                            for (int z2 : ef.enablers[e3])
                                if (z2 != z1 && enabled_at(b, z2)) return true;
                        }
                        return false;
                    };
                    if (witness(e1, e2) || witness(e2, e1)) {
                        nat = true;
                        ef.natural_clause3[e1 * n + e2] = ef.natural_clause3[e2 * n + e1] = 1;
                    }
                }
            }
            if (nat) ef.natural[e1 * n + e2] = ef.natural[e2 * n + e1] = 1;
        }
}

namespace {

void bron_kerbosch(const std::vector<std::vector<int>>& adj, std::vector<int>& R,
                   std::vector<int> P, std::vector<int> X, std::vector<int>& best) {
    if (P.empty() && X.empty()) {
        if (R.size() > best.size() || (R.size() == best.size() && R < best)) best = R;
        return;
    }
    if (R.size() + P.size() < best.size()) return;
    int pivot = -1;
    size_t most = 0;
    for (int u : P) {
        size_t cnt = 0;
        for (int w : P)
            if (std::binary_search(adj[u].begin(), adj[u].end(), w)) cnt++;
        if (pivot < 0 || cnt > most) {
            pivot = u;
            most = cnt;
        }
    }
    std::vector<int> cands;
    for (int u : P)
        if (pivot < 0 || !std::binary_search(adj[pivot].begin(), adj[pivot].end(), u))
            cands.push_back(u);
    for (int u : cands) {
        std::vector<int> P2, X2;
        for (int w : P)
            if (std::binary_search(adj[u].begin(), adj[u].end(), w)) P2.push_back(w);
        for (int w : X)
            if (std::binary_search(adj[u].begin(), adj[u].end(), w)) X2.push_back(w);
        R.push_back(u);
        bron_kerbosch(adj, R, P2, X2, best);
        R.pop_back();
        P.erase(std::find(P.begin(), P.end(), u));
        X.insert(std::lower_bound(X.begin(), X.end(), u), u);
    }
}

}  // namespace

int natural_clique_max(const event_fragment& ef, std::vector<int>* witness) {
    int n = ef.num_events;
    std::vector<std::vector<int>> adj(n);
    std::vector<int> P;
    for (int e = 0; e < n; e++) {
        if (!ef.resolved[e]) continue;
        P.push_back(e);
        for (int f = 0; f < n; f++)
            if (ef.is_natural(e, f)) adj[e].push_back(f);
    }
    std::vector<int> R, best;
    bron_kerbosch(adj, R, P, {}, best);
    if (witness) *witness = best;
    return static_cast<int>(best.size());
}

verdict event_axioms_check(const event_fragment& ef) {
    int n = ef.num_events;
    using rel = event_fragment::rel;
    for (int e = 0; e < n; e++) {
        if (ef.resolved[e] && ef.at(e, e) != rel::equal) return {false, "reflexivity broken"};
        for (int f = 0; f < n; f++) {
            if (e == f || !ef.pair_resolved(e, f)) continue;
            rel r = ef.at(e, f), rt = ef.at(f, e);
            bool sym_ok = (r == rel::le && rt == rel::ge) || (r == rel::ge && rt == rel::le) ||
                          (r == rel::conflict && rt == rel::conflict) ||
                          (r == rel::concurrent && rt == rel::concurrent);
            if (!sym_ok)
                return {false, "pair (" + std::to_string(e) + "," + std::to_string(f) +
                                   ") has asymmetric relations"};
        }
    }
    // conflict inheritance on resolved triples
    for (int e = 0; e < n; e++)
        for (int f = 0; f < n; f++) {
            if (!ef.pair_resolved(e, f) || ef.at(e, f) != rel::conflict) continue;
            for (int g = 0; g < n; g++) {
                if (g == e || g == f) continue;
                if (!ef.pair_resolved(f, g) || ef.at(f, g) != rel::le) continue;
                if (!ef.pair_resolved(e, g)) continue;
                if (ef.at(e, g) != rel::conflict)
                    return {false, "conflict not inherited: " + std::to_string(e) + "#" +
                                       std::to_string(f) + "<=" + std::to_string(g)};
            }
        }
    // transitivity of <= on resolved triples
    for (int e = 0; e < n; e++)
        for (int f = 0; f < n; f++) {
            if (!ef.pair_resolved(e, f) || ef.at(e, f) != rel::le) continue;
            for (int g = 0; g < n; g++) {
                if (g == e || g == f) continue;
                if (!ef.pair_resolved(f, g) || ef.at(f, g) != rel::le) continue;
                if (ef.pair_resolved(e, g) && ef.at(e, g) != rel::le)
                    return {false, "causality not transitive"};
            }
        }
    return {true, ""};
}

verdict domain_reconstruction_check(const domain_fragment& frag, const event_fragment& ef, int s) {
    // every pair of events that can share a configuration of size <= s must
    // be resolved, which needs the square-carrying region to reach 2s
    if (!frag.all_certified && 2 * s > frag.certified_depth() + 1)
        throw boundary_unsafe("reconstruction bound exceeds the certified region");
    for (int c = 0; c < ef.num_events; c++)
        if (ef.theta.first_depth[c] <= s && !ef.resolved[c])
            return {false, "event " + std::to_string(c) + " at depth " +
                               std::to_string(ef.theta.first_depth[c]) + " is unresolved"};

    // realize a configuration as the endpoint of a directed path taking
    // enabled events in canonical order
    auto realize = [&](const std::vector<int>& config) -> int {
        std::set<int> todo(config.begin(), config.end());
        int cur = frag.basepoint;
        while (!todo.empty()) {
            int step = -1;
            for (int e : frag.out_adj()[cur]) {
                int c = ef.theta.edge_class[e];
                if (todo.count(c) && (step < 0 || e < step)) step = e;
            }
            if (step < 0) return -1;
            todo.erase(ef.theta.edge_class[step]);
            cur = frag.edges[step].dst;
        }
        return cur;
    };

    // Enumerate each downward-closed set exactly once: extend in rank order
    // (first depth, id). A cause always has strictly smaller first depth
    // than its effect, so the rank prefix of a configuration is itself a
    // configuration.
    std::vector<int> rank_order(ef.num_events);
    std::iota(rank_order.begin(), rank_order.end(), 0);
    std::sort(rank_order.begin(), rank_order.end(), [&](int a, int b) {
        return std::tie(ef.theta.first_depth[a], a) < std::tie(ef.theta.first_depth[b], b);
    });
    std::set<int> seen_vertices;
    long configs = 0;
    std::vector<int> config;
    std::function<bool(int, std::string&)> enumerate = [&](int min_rank, std::string& err) -> bool {
        configs++;
        int v = realize(config);
        if (v < 0) {
            err = "configuration of size " + std::to_string(config.size()) + " is not realizable";
            return false;
        }
        if (!seen_vertices.insert(v).second) {
            err = "two configurations reach vertex " + frag.vname[v];
            return false;
        }
        if (static_cast<int>(config.size()) == s) return true;
        for (int r = min_rank; r < ef.num_events; r++) {
            int c = rank_order[r];
            if (ef.theta.first_depth[c] > s) continue;
            // downward closed: causes in config; conflict-free
            bool ok = true;
            for (int cause : ef.causes[c])
                if (!std::binary_search(config.begin(), config.end(), cause)) ok = false;
            for (int x : config)
                if (ef.at(x, c) == event_fragment::rel::conflict) ok = false;
            if (!ok) continue;
            config.insert(std::lower_bound(config.begin(), config.end(), c), c);
            bool sub = enumerate(r + 1, err);
            config.erase(std::find(config.begin(), config.end(), c));
            if (!sub) return false;
        }
        return true;
    };
    std::string err;
    if (!enumerate(0, err)) return {false, err};

    long vertices = 0;
    for (int v = 0; v < frag.num_vertices(); v++)
        if (frag.depth()[v] <= s) vertices++;
    if (configs != vertices)
        return {false, std::to_string(configs) + " configurations vs " +
                           std::to_string(vertices) + " vertices at depth <= " +
                           std::to_string(s)};
    return {true, ""};
}

std::string events_to_json(const event_fragment& ef) {
    nlohmann::json j;
    j["num_events"] = ef.num_events;
    j["config_bound"] = ef.config_bound;
    auto relchar = [&](int e, int f) -> std::string {
        switch (ef.at(e, f)) {
            case event_fragment::rel::unresolved: return "?";
            case event_fragment::rel::equal: return "=";
            case event_fragment::rel::le: return "<";
            case event_fragment::rel::ge: return ">";
            case event_fragment::rel::conflict: return "#";
            case event_fragment::rel::concurrent: return "|";
        }
        return "?";
    };
    for (int e = 0; e < ef.num_events; e++) {
        nlohmann::json je;
        je["id"] = e;
        je["resolved"] = static_cast<bool>(ef.resolved[e]);
        je["first_depth"] = ef.theta.first_depth[e];
        je["dual_edges"] = ef.theta.dual_edges[e];
        j["events"].push_back(je);
    }
    std::vector<std::string> rows, mc_rows, nat_rows;
    for (int e = 0; e < ef.num_events; e++) {
        std::string row, mc, nat;
        for (int f = 0; f < ef.num_events; f++) {
            row += relchar(e, f);
            mc += ef.is_mc(e, f) ? "1" : "0";
            nat += ef.is_natural(e, f) ? "1" : "0";
        }
        rows.push_back(row);
        mc_rows.push_back(mc);
        nat_rows.push_back(nat);
    }
    j["relations"] = rows;
    j["minimal_conflict"] = mc_rows;
    j["natural"] = nat_rows;
    return j.dump(2);
}

std::string natural_to_dot(const event_fragment& ef) {
    std::ostringstream out;
    out << "graph natural {\n";
    for (int e = 0; e < ef.num_events; e++)
        out << "  e" << e << (ef.resolved[e] ? "" : " [style=dashed]") << ";\n";
    for (int e = 0; e < ef.num_events; e++)
        for (int f = e + 1; f < ef.num_events; f++)
            if (ef.is_natural(e, f)) out << "  e" << e << " -- e" << f << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace evdom
