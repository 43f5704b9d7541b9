#include <evdom/special.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

namespace evdom {

std::vector<base_hyperplane> base_hyperplanes(const square_complex& c) {
    int ne = c.num_edges();
    // union-find with parity: par = 1 when the two edges are parallel with
    // reversed direction
    std::vector<int> parent(ne), rank_(ne, 0);
    std::vector<uint8_t> par(ne, 0);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::pair<int, uint8_t>(int)> find = [&](int x) -> std::pair<int, uint8_t> {
        if (parent[x] == x) return {x, 0};
        auto [r, p] = find(parent[x]);
        parent[x] = r;
        par[x] ^= p;
        return {r, par[x]};
    };
    std::vector<uint8_t> inconsistent(ne, 0);
    auto unite = [&](int a, int b, uint8_t rel) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) {
            if ((pa ^ pb) != rel) inconsistent[ra] = 1;
            return;
        }
        if (rank_[ra] < rank_[rb]) {
            std::swap(ra, rb);
            std::swap(pa, pb);
        }
        parent[rb] = ra;
        par[rb] = pa ^ pb ^ rel;
        inconsistent[ra] |= inconsistent[rb];
        if (rank_[ra] == rank_[rb]) rank_[ra]++;
    };
    for (const parallel_pair& pp : elementary_parallelisms(c))
        unite(pp.e1, pp.e2, pp.same_direction ? 0 : 1);

    std::map<int, int> root_to_id;
    std::vector<base_hyperplane> out;
    for (int e = 0; e < ne; e++) {
        auto [r, p] = find(e);
        auto [it, fresh] = root_to_id.emplace(r, static_cast<int>(out.size()));
        if (fresh) {
            out.push_back({});
            out.back().id = it->second;
            out.back().two_sided = !inconsistent[r];
        }
        out[it->second].dual_edges.push_back(e);
        out[it->second].flip.push_back(p);
    }
    return out;
}

namespace {

struct end_info {
    int hyp = -1;
    uint8_t flip = 0;
    bool two_sided = true;
};

}  // namespace

pathology_report detect_pathologies(const square_complex& c) {
    pathology_report rep;
    rep.hyperplanes = base_hyperplanes(c);

    std::vector<end_info> einfo(2 * c.num_edges());
    for (const base_hyperplane& h : rep.hyperplanes) {
        if (!h.two_sided) rep.b_one_sided.push_back(h.id);
        for (size_t i = 0; i < h.dual_edges.size(); i++) {
            int e = h.dual_edges[i];
            for (int end : {tail_end(e), head_end(e)})
                einfo[end] = {h.id, h.flip[i], h.two_sided};
        }
    }

    // (a) self-intersections: consecutive sides of a square dual to the
    // same hyperplane
    for (int q = 0; q < c.num_squares(); q++) {
        const square_rec& sq = c.squares[q];
        for (int i = 0; i < 4; i++) {
            int e1 = sq.sides[i].edge, e2 = sq.sides[(i + 1) % 4].edge;
            if (einfo[tail_end(e1)].hyp == einfo[tail_end(e2)].hyp)
                rep.a_self_intersecting.push_back({einfo[tail_end(e1)].hyp, q, i, (i + 1) % 4});
        }
    }

    // intersecting hyperplane pairs (for inter-osculation)
    std::set<std::pair<int, int>> intersecting;
    std::map<std::pair<int, int>, int> intersection_square;
    for (int q = 0; q < c.num_squares(); q++) {
        const square_rec& sq = c.squares[q];
        for (int i = 0; i < 4; i++) {
            int h1 = einfo[tail_end(sq.sides[i].edge)].hyp;
            int h2 = einfo[tail_end(sq.sides[(i + 1) % 4].edge)].hyp;
            if (h1 == h2) continue;
            auto key = std::minmax(h1, h2);
            intersecting.insert({key.first, key.second});
            intersection_square.emplace(std::make_pair(key.first, key.second), q);
        }
    }

    // osculations: co-located edge-end pairs that span no square corner
    std::set<std::pair<int, int>> corner_pairs;
    for (const auto& cr : c.corners()) {
        int a = cr.arrive_end, b = cr.leave_end;
        if (a > b) std::swap(a, b);
        corner_pairs.insert({a, b});
    }
    std::set<std::pair<int, int>> seen_inter;  // hyperplane pairs already reported
    for (int v = 0; v < c.num_vertices(); v++) {
        const auto& ends = c.ends_at()[v];
        for (size_t i = 0; i < ends.size(); i++)
            for (size_t j = i + 1; j < ends.size(); j++) {
                int a = ends[i], b = ends[j];
                if (corner_pairs.count({a, b})) continue;
                const end_info &ia = einfo[a], &ib = einfo[b];
                if (ia.hyp == ib.hyp) {
                    if (!ia.two_sided) continue;  // already pathological as (b)
                    bool src_a = !end_is_head(a) != static_cast<bool>(ia.flip);
                    bool src_b = !end_is_head(b) != static_cast<bool>(ib.flip);
                    if (src_a == src_b)
                        rep.c_direct.push_back({ia.hyp, {v, a, b}});
                    else
                        rep.d_indirect.push_back({ia.hyp, {v, a, b}});
                } else {
                    auto key = std::minmax(ia.hyp, ib.hyp);
                    auto kit = intersection_square.find({key.first, key.second});
                    if (kit == intersection_square.end()) continue;
                    if (seen_inter.insert({key.first, key.second}).second)
                        rep.e_inter_osculating.push_back(
                            {key.first, key.second, kit->second, {v, a, b}});
                }
            }
    }
    return rep;
}

special_verdict check_special(const square_complex& c) {
    special_verdict out;
    out.report = detect_pathologies(c);
    const pathology_report& r = out.report;
    out.is_special = r.a_self_intersecting.empty() && r.b_one_sided.empty() &&
                     r.c_direct.empty() && r.e_inter_osculating.empty();
    if (out.is_special) {
        out.summary = "SPECIAL";
    } else {
        out.summary = "NOT SPECIAL:";
        if (!r.a_self_intersecting.empty()) out.summary += " (a)self-intersection";
        if (!r.b_one_sided.empty()) out.summary += " (b)one-sided";
        if (!r.c_direct.empty()) out.summary += " (c)direct-self-osculation";
        if (!r.e_inter_osculating.empty()) out.summary += " (e)inter-osculation";
    }
    return out;
}

std::string pathologies_to_json(const square_complex& c, const pathology_report& r) {
    nlohmann::json j;
    auto end_name = [&](int end) {
        return c.edges[end_edge(end)].name + (end_is_head(end) ? ".head" : ".tail");
    };
    j["hyperplanes"] = nlohmann::json::array();
    for (const auto& h : r.hyperplanes) {
        nlohmann::json jh;
        jh["id"] = h.id;
        jh["two_sided"] = h.two_sided;
        for (int e : h.dual_edges) jh["dual_edges"].push_back(c.edges[e].name);
        j["hyperplanes"].push_back(jh);
    }
    j["a"] = nlohmann::json::array();
    for (const auto& x : r.a_self_intersecting) {
        j["a"].push_back({{"hyperplane", x.hyperplane},
                          {"square", c.squares[x.square].name},
                          {"sides", {x.side1, x.side2}}});
    }
    j["b"] = r.b_one_sided;
    auto osc_json = [&](const pathology_report::osculation& o) {
        return nlohmann::json{{"vertex", c.vertex_names[o.vertex]},
                              {"end1", end_name(o.end1)},
                              {"end2", end_name(o.end2)}};
    };
    j["c"] = nlohmann::json::array();
    for (const auto& x : r.c_direct)
        j["c"].push_back({{"hyperplane", x.hyperplane}, {"at", osc_json(x.at)}});
    j["d"] = nlohmann::json::array();
    for (const auto& x : r.d_indirect)
        j["d"].push_back({{"hyperplane", x.hyperplane}, {"at", osc_json(x.at)}});
    j["e"] = nlohmann::json::array();
    for (const auto& x : r.e_inter_osculating)
        j["e"].push_back({{"h1", x.h1},
                          {"h2", x.h2},
                          {"intersection_square", c.squares[x.square].name},
                          {"at", osc_json(x.at)}});
    return j.dump(2);
}

}  // namespace evdom
