#include <evdom/cover.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace evdom {

namespace {

// star as sorted (base end -> lifted edge) vector
using star_vec = std::vector<std::pair<int, int>>;

int star_lookup(const star_vec& s, int bend) {
    auto it = std::lower_bound(s.begin(), s.end(), std::make_pair(bend, -1));
    if (it != s.end() && it->first == bend) return it->second;
    return -1;
}

void star_insert(star_vec& s, int bend, int le) {
    auto it = std::lower_bound(s.begin(), s.end(), std::make_pair(bend, -1));
    s.insert(it, {bend, le});
}

// Mutable cover under construction: union-find over vertices and edges,
// folding driven by square closure.
struct builder {
    const square_complex& base;
    long budget;

    std::vector<int> vparent, vfiber, vlayer;
    std::vector<star_vec> stars;
    struct redge {
        int base_edge, vtail, vhead;
    };
    std::vector<int> eparent;
    std::vector<redge> redges;
    struct rsquare {
        int base_square;
        std::array<int, 4> sides;
    };
    std::vector<rsquare> rsquares;
    std::deque<std::pair<int, int>> vmerge_queue;
    std::deque<std::pair<int, int>> emerge_queue;

    builder(const square_complex& b, long budget_) : base(b), budget(budget_) {}

    int find_v(int x) {
        while (vparent[x] != x) {
            vparent[x] = vparent[vparent[x]];
            x = vparent[x];
        }
        return x;
    }
    int find_e(int x) {
        while (eparent[x] != x) {
            eparent[x] = eparent[eparent[x]];
            x = eparent[x];
        }
        return x;
    }

    int new_vertex(int fiber, int layer) {
        if (static_cast<long>(vparent.size() + redges.size()) > budget)
            throw resource_limit("cell budget exceeded while unfolding");
        vparent.push_back(static_cast<int>(vparent.size()));
        vfiber.push_back(fiber);
        vlayer.push_back(layer);
        stars.emplace_back();
        return static_cast<int>(vparent.size()) - 1;
    }

    // create the lift of base end `bend` at vertex v, with a fresh far vertex
    int grow_end(int v, int bend) {
        int e = end_edge(bend);
        int far_fiber = base.end_vertex(partner_end(bend));
        int w = new_vertex(far_fiber, vlayer[v] + 1);
        int le = static_cast<int>(redges.size());
        eparent.push_back(le);
        if (!end_is_head(bend))
            redges.push_back({e, v, w});
        else
            redges.push_back({e, w, v});
        star_insert(stars[v], bend, le);
        star_insert(stars[w], partner_end(bend), le);
        return le;
    }

    void queue_vmerge(int a, int b) { vmerge_queue.push_back({a, b}); }

    void drain() {
        while (!vmerge_queue.empty() || !emerge_queue.empty()) {
            if (!emerge_queue.empty()) {
                auto [x, y] = emerge_queue.front();
                emerge_queue.pop_front();
                merge_edges(x, y);
            } else {
                auto [x, y] = vmerge_queue.front();
                vmerge_queue.pop_front();
                merge_vertices(x, y);
            }
        }
    }

    void merge_vertices(int a, int b) {
        a = find_v(a);
        b = find_v(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        if (vfiber[a] != vfiber[b])
            throw fold_inconsistency("folding would identify vertices over distinct base vertices");
        vparent[b] = a;
        vlayer[a] = std::min(vlayer[a], vlayer[b]);
        for (auto [bend, le] : stars[b]) {
            le = find_e(le);
            int cur = star_lookup(stars[a], bend);
            if (cur < 0)
                star_insert(stars[a], bend, le);
            else if (find_e(cur) != le)
                emerge_queue.push_back({find_e(cur), le});
        }
        stars[b].clear();
        stars[b].shrink_to_fit();
    }

    void merge_edges(int a, int b) {
        a = find_e(a);
        b = find_e(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        if (redges[a].base_edge != redges[b].base_edge)
            throw fold_inconsistency("folding would identify edges over distinct base edges");
        eparent[b] = a;
        queue_vmerge(redges[a].vtail, redges[b].vtail);
        queue_vmerge(redges[a].vhead, redges[b].vhead);
    }

    int edge_vertex_at(int le, int bend) const {
        return end_is_head(bend) ? redges[le].vhead : redges[le].vtail;
    }

    void complete_star(int v) {
        v = find_v(v);
        for (int bend : base.ends_at()[vfiber[v]])
            if (star_lookup(stars[v], bend) < 0) grow_end(v, bend);
    }

    // Try to close the lift of base square `q` at the corner instance
    // rooted at vertex u (corner position `pos`). Known side lifts are
    // chased around the boundary from both directions; coincident far
    // corners fold. Never creates cells. Returns true when the pass should
    // be reiterated (a fold happened or a new square was recorded).
    bool close_corner(int u, int q, int pos, std::set<std::array<int, 5>>& have) {
        const square_rec& sq = base.squares[q];
        // V[t] = lift of the walk vertex before side pos+t; V[4] wraps to u
        std::array<int, 5> V{-1, -1, -1, -1, -1};
        std::array<int, 4> E{-1, -1, -1, -1};
        V[0] = V[4] = u;
        bool progress = true;
        while (progress) {
            progress = false;
            for (int t = 0; t < 4; t++) {
                const side& sd = sq.sides[(pos + t) % 4];
                if (E[t] < 0 && V[t] >= 0) {
                    int le = star_lookup(stars[find_v(V[t])], base.side_start_end(sd));
                    if (le >= 0) {
                        E[t] = find_e(le);
                        progress = true;
                    }
                }
                if (E[t] < 0 && V[t + 1] >= 0) {
                    int le = star_lookup(stars[find_v(V[t + 1])], base.side_end_end(sd));
                    if (le >= 0) {
                        E[t] = find_e(le);
                        progress = true;
                    }
                }
                if (E[t] < 0) continue;
                int s = find_v(edge_vertex_at(E[t], base.side_start_end(sd)));
                int e = find_v(edge_vertex_at(E[t], base.side_end_end(sd)));
                for (auto [idx, val] : {std::pair{t, s}, std::pair{t + 1, e}}) {
                    if (V[idx] < 0) {
                        V[idx] = val;
                        progress = true;
                    } else if (find_v(V[idx]) != val) {
                        queue_vmerge(V[idx], val);
                        drain();
                        return true;
                    }
                }
            }
        }
        if (E[0] < 0 || E[1] < 0 || E[2] < 0 || E[3] < 0) return false;
        std::array<int, 5> key{q, -1, -1, -1, -1};
        for (int t = 0; t < 4; t++) key[1 + (pos + t) % 4] = E[t];
        if (have.insert(key).second) {
            rsquares.push_back({q, {key[1], key[2], key[3], key[4]}});
            return true;
        }
        return false;
    }

    void saturate() {
        bool changed = true;
        while (changed) {
            changed = false;
            std::set<std::array<int, 5>> have;
            for (auto& rs : rsquares) {
                std::array<int, 5> key{rs.base_square, find_e(rs.sides[0]), find_e(rs.sides[1]),
                                       find_e(rs.sides[2]), find_e(rs.sides[3])};
                have.insert(key);
            }
            for (int v = 0; v < static_cast<int>(vparent.size()); v++) {
                if (find_v(v) != v) continue;
                for (int ci : base.corners_at()[vfiber[v]]) {
                    const auto& cr = base.corners()[ci];
                    if (star_lookup(stars[v], cr.arrive_end) < 0) continue;
                    if (star_lookup(stars[v], cr.leave_end) < 0) continue;
                    if (close_corner(v, cr.square, cr.pos, have)) changed = true;
                    if (find_v(v) != v) break;  // v got folded away
                }
            }
        }
    }
};

// Lexicographically least shortest lift path name per vertex, then a
// stable reindexing of all cells.
cover_ball finalize(const square_complex& base, int basepoint_raw, int radius, builder& bld,
                    bool out_star_semantics) {
    bld.drain();

    // compact live roots
    std::vector<int> live;
    for (int v = 0; v < static_cast<int>(bld.vparent.size()); v++)
        if (bld.find_v(v) == v) live.push_back(v);
    std::vector<int> raw2live(bld.vparent.size(), -1);
    for (int i = 0; i < static_cast<int>(live.size()); i++) raw2live[live[i]] = i;
    int n = static_cast<int>(live.size());

    std::vector<int> elive;
    for (int e = 0; e < static_cast<int>(bld.redges.size()); e++)
        if (bld.find_e(e) == e) elive.push_back(e);
    std::vector<int> eraw2live(bld.redges.size(), -1);
    for (int i = 0; i < static_cast<int>(elive.size()); i++) eraw2live[elive[i]] = i;

    auto live_of_v = [&](int raw) { return raw2live[bld.find_v(raw)]; };
    auto live_of_e = [&](int raw) { return eraw2live[bld.find_e(raw)]; };

    // adjacency by live index, slots normalized
    std::vector<star_vec> star(n);
    for (int i = 0; i < n; i++)
        for (auto [bend, le] : bld.stars[live[i]]) star[i].push_back({bend, live_of_e(le)});

    int bp = live_of_v(basepoint_raw);

    // BFS distances
    std::vector<int> dist(n, -1);
    {
        std::deque<int> q{bp};
        dist[bp] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (auto [bend, le] : star[v]) {
                int w = live_of_v(end_is_head(bend) ? bld.redges[elive[le]].vtail
                                                    : bld.redges[elive[le]].vhead);
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
    }
    for (int i = 0; i < n; i++) {
        if (dist[i] < 0) throw fold_inconsistency("disconnected cell after folding");
        if (dist[i] > radius) throw fold_inconsistency("cell beyond requested radius");
        if (dist[i] != bld.vlayer[live[i]])
            throw fold_inconsistency("layer/distance mismatch after folding");
    }

    // canonical names: min over in-neighbors one layer down
    std::vector<std::string> name(n);
    std::vector<std::vector<int>> by_dist(radius + 1);
    for (int i = 0; i < n; i++) by_dist[dist[i]].push_back(i);
    name[bp] = "@";
    for (int d = 0; d + 1 <= radius; d++) {
        for (int v : by_dist[d])
            if (name[v].empty()) throw fold_inconsistency("unnamed vertex in layer");
        std::vector<int> layer = by_dist[d];
        std::sort(layer.begin(), layer.end(), [&](int a, int b) { return name[a] < name[b]; });
        for (int v : layer) {
            for (auto [bend, le] : star[v]) {
                const auto& re = bld.redges[elive[le]];
                int w = live_of_v(end_is_head(bend) ? re.vtail : re.vhead);
                if (dist[w] != d + 1) continue;
                std::string cand = name[v] + "." + base.edges[end_edge(bend)].name +
                                   (end_is_head(bend) ? "-" : "+");
                if (name[w].empty() || cand < name[w]) name[w] = cand;
            }
        }
    }

    // final order: (dist, name)
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::tie(dist[a], name[a]) < std::tie(dist[b], name[b]);
    });
    std::vector<int> perm(n);
    for (int i = 0; i < n; i++) perm[order[i]] = i;

    cover_ball ball;
    ball.base = base;
    ball.radius = radius;
    ball.basepoint = perm[bp];
    ball.vfiber.resize(n);
    ball.vdist.resize(n);
    ball.vname.resize(n);
    for (int i = 0; i < n; i++) {
        ball.vfiber[perm[i]] = bld.vfiber[live[i]];
        ball.vdist[perm[i]] = dist[i];
        ball.vname[perm[i]] = name[i];
    }

    // edges: reindex endpoints then sort canonically
    int ne = static_cast<int>(elive.size());
    std::vector<cover_ball::lifted_edge> edges(ne);
    for (int i = 0; i < ne; i++) {
        const auto& re = bld.redges[elive[i]];
        edges[i] = {re.base_edge, perm[live_of_v(re.vtail)], perm[live_of_v(re.vhead)]};
    }
    std::vector<int> eorder(ne);
    std::iota(eorder.begin(), eorder.end(), 0);
    std::sort(eorder.begin(), eorder.end(), [&](int a, int b) {
        return std::tie(edges[a].src, edges[a].dst, edges[a].base_edge) <
               std::tie(edges[b].src, edges[b].dst, edges[b].base_edge);
    });
    std::vector<int> eperm(ne);
    for (int i = 0; i < ne; i++) eperm[eorder[i]] = i;
    ball.edges.resize(ne);
    for (int i = 0; i < ne; i++) ball.edges[eperm[i]] = edges[i];

    ball.star.assign(n, {});
    for (int i = 0; i < n; i++) {
        for (auto [bend, le] : star[i]) ball.star[perm[i]].push_back({bend, eperm[le]});
        std::sort(ball.star[perm[i]].begin(), ball.star[perm[i]].end());
    }

    // squares: dedupe + canonical order
    std::set<std::array<int, 5>> sqset;
    for (const auto& rs : bld.rsquares) {
        std::array<int, 5> rec{rs.base_square, eperm[live_of_e(rs.sides[0])],
                               eperm[live_of_e(rs.sides[1])], eperm[live_of_e(rs.sides[2])],
                               eperm[live_of_e(rs.sides[3])]};
        sqset.insert(rec);
    }
    for (const auto& rec : sqset)
        ball.squares.push_back({rec[0], {rec[1], rec[2], rec[3], rec[4]}});

    // interior: full (or out-) star present
    ball.vinterior.assign(n, 0);
    for (int v = 0; v < n; v++) {
        size_t expected = 0;
        for (int bend : base.ends_at()[ball.vfiber[v]])
            if (!out_star_semantics || !end_is_head(bend)) expected++;
        size_t got = 0;
        for (auto [bend, le] : ball.star[v])
            if (!out_star_semantics || !end_is_head(bend)) got++;
        ball.vinterior[v] = got == expected;
    }

    // corner completeness from the recorded squares
    ball.vcorner_complete.assign(n, 0);
    {
        std::vector<int> corner_count(n, 0);
        for (const auto& ls : ball.squares)
            for (int i = 0; i < 4; i++) {
                const side& sd = base.squares[ls.base_square].sides[i];
                const auto& le = ball.edges[ls.sides[i]];
                corner_count[sd.fwd ? le.src : le.dst]++;
            }
        for (int v = 0; v < n; v++)
            ball.vcorner_complete[v] =
                ball.vinterior[v] &&
                corner_count[v] == static_cast<int>(base.corners_at()[ball.vfiber[v]].size());
    }
    return ball;
}

}  // namespace

int cover_ball::star_at(int v, int bend) const {
    return star_lookup(star[v], bend);
}

std::vector<int> cover_ball::out_edges(int v) const {
    std::vector<int> out;
    for (auto [bend, le] : star[v])
        if (!end_is_head(bend)) out.push_back(le);
    return out;
}

cover_ball unfold_ball(const square_complex& base, int base_vertex, int radius, long budget) {
    if (base_vertex < 0 || base_vertex >= base.num_vertices())
        throw unknown_vertex("no base vertex " + std::to_string(base_vertex));
    verdict npc = check_npc(base);
    if (!npc.pass) throw not_npc(npc.witness);
    builder bld(base, budget);
    int bp = bld.new_vertex(base_vertex, 0);
    for (int layer = 0; layer < radius; layer++) {
        for (int v = 0; v < static_cast<int>(bld.vparent.size()); v++) {
            if (bld.find_v(v) != v || bld.vlayer[v] != layer) continue;
            bld.complete_star(v);
        }
        bld.saturate();
    }
    return finalize(base, bp, radius, bld, false);
}

namespace {

struct tree {
    // node 0 is the root
    struct node {
        int parent = -1;
        int arrive_slot = -1;  // base end by which the parent edge attaches here
        int via_edge = -1;     // base edge of the parent step
        bool via_fwd = true;   // parent step traverses the base edge forward
        int depth = 0;
    };
    std::vector<node> nodes;
};

tree build_tree(const square_complex& base, int base_vertex, const std::vector<int>& step_ends,
                int radius, bool filter_only, long budget) {
    tree t;
    t.nodes.push_back({});
    size_t head = 0;
    while (head < t.nodes.size()) {
        tree::node cur = t.nodes[head];
        if (cur.depth == radius) {
            head++;
            continue;
        }
        for (int bend : step_ends) {
            if (filter_only && end_is_head(bend)) continue;
            if (cur.arrive_slot == bend) continue;  // no immediate backtrack
            tree::node child;
            child.parent = static_cast<int>(head);
            child.arrive_slot = partner_end(bend);
            child.via_edge = end_edge(bend);
            child.via_fwd = !end_is_head(bend);
            child.depth = cur.depth + 1;
            t.nodes.push_back(child);
            if (static_cast<long>(t.nodes.size()) > budget)
                throw resource_limit("tree budget exceeded");
        }
        head++;
    }
    (void)base;
    (void)base_vertex;
    return t;
}

}  // namespace

cover_ball unfold_csc_product(const square_complex& base, int base_vertex, int radius,
                              bool filter_only, long budget) {
    if (base.num_vertices() != 1) throw not_one_vertex("complex has more than one vertex");
    if (base_vertex != 0) throw unknown_vertex("no base vertex " + std::to_string(base_vertex));
    csc_verdict csc = check_csc(base);
    if (!csc.pass) throw not_csc(csc.witness);
    verdict npc = check_npc(base);
    if (!npc.pass) throw not_npc(npc.witness);

    std::vector<int> h_ends, v_ends;
    for (int bend : base.ends_at()[0])
        (base.edges[end_edge(bend)].vh == vh_tag::horizontal ? h_ends : v_ends).push_back(bend);

    tree th = build_tree(base, 0, h_ends, radius, filter_only, budget);
    tree tv = build_tree(base, 0, v_ends, radius, filter_only, budget);

    // corner lookup: unordered end pair -> corner index (unique by CSC+NPC)
    std::map<std::pair<int, int>, int> corner_of;
    for (int ci = 0; ci < static_cast<int>(base.corners().size()); ci++) {
        const auto& cr = base.corners()[ci];
        int a = cr.arrive_end, b = cr.leave_end;
        if (a > b) std::swap(a, b);
        if (!corner_of.emplace(std::make_pair(a, b), ci).second)
            throw not_csc("corner pair spanned by more than one square corner");
    }

    // product vertices with depth sum <= radius
    std::map<std::pair<int, int>, int> vid;
    std::vector<std::pair<int, int>> vlist;
    for (int hi = 0; hi < static_cast<int>(th.nodes.size()); hi++)
        for (int vi = 0; vi < static_cast<int>(tv.nodes.size()); vi++)
            if (th.nodes[hi].depth + tv.nodes[vi].depth <= radius) {
                vid[{hi, vi}] = static_cast<int>(vlist.size());
                vlist.push_back({hi, vi});
                if (static_cast<long>(vlist.size()) > budget)
                    throw resource_limit("product ball budget exceeded");
            }

    builder bld(base, budget * 4);
    for (size_t i = 0; i < vlist.size(); i++) bld.new_vertex(0, th.nodes[vlist[i].first].depth +
                                                                    tv.nodes[vlist[i].second].depth);

    struct pedge {
        int lift = -1;   // builder edge id once assigned
        int bedge = -1;  // base edge
        bool fwd = true; // forward means the up/right traversal follows the base direction
    };
    // horizontal product edge: (h child node, v node); vertical: (h node, v child node)
    std::map<std::pair<int, int>, pedge> hedges, vedges;

    auto add_lift = [&](int bedge, bool fwd, int from, int to) {
        // from -> to is the right/up traversal
        int le = static_cast<int>(bld.redges.size());
        bld.eparent.push_back(le);
        if (fwd)
            bld.redges.push_back({bedge, from, to});
        else
            bld.redges.push_back({bedge, to, from});
        star_insert(bld.stars[from], fwd ? tail_end(bedge) : head_end(bedge), le);
        star_insert(bld.stars[to], fwd ? head_end(bedge) : tail_end(bedge), le);
        return le;
    };

    // axis edges inherit the tree step labels
    for (int hc = 1; hc < static_cast<int>(th.nodes.size()); hc++) {
        const auto& nd = th.nodes[hc];
        for (int vi = 0; vi < static_cast<int>(tv.nodes.size()); vi++) {
            auto it_from = vid.find({nd.parent, vi});
            auto it_to = vid.find({hc, vi});
            if (it_from == vid.end() || it_to == vid.end()) continue;
            pedge pe;
            if (vi == 0) {
                pe.bedge = nd.via_edge;
                pe.fwd = nd.via_fwd;
                pe.lift = add_lift(pe.bedge, pe.fwd, it_from->second, it_to->second);
            }
            hedges[{hc, vi}] = pe;
        }
    }
    for (int vc = 1; vc < static_cast<int>(tv.nodes.size()); vc++) {
        const auto& nd = tv.nodes[vc];
        for (int hi = 0; hi < static_cast<int>(th.nodes.size()); hi++) {
            auto it_from = vid.find({hi, nd.parent});
            auto it_to = vid.find({hi, vc});
            if (it_from == vid.end() || it_to == vid.end()) continue;
            pedge pe;
            if (hi == 0) {
                pe.bedge = nd.via_edge;
                pe.fwd = nd.via_fwd;
                pe.lift = add_lift(pe.bedge, pe.fwd, it_from->second, it_to->second);
            }
            vedges[{hi, vc}] = pe;
        }
    }

    // fill squares from the corner closest to the basepoint outward
    struct psquare {
        int hc, vc;  // child nodes; square spans (parent(hc),parent(vc))..(hc,vc)
        int excess;
    };
    std::vector<psquare> order;
    for (int hc = 1; hc < static_cast<int>(th.nodes.size()); hc++)
        for (int vc = 1; vc < static_cast<int>(tv.nodes.size()); vc++)
            if (th.nodes[hc].depth + tv.nodes[vc].depth <= radius)
                order.push_back({hc, vc, th.nodes[hc].depth - 1 + tv.nodes[vc].depth - 1});
    std::sort(order.begin(), order.end(), [](const psquare& a, const psquare& b) {
        return std::tie(a.excess, a.hc, a.vc) < std::tie(b.excess, b.hc, b.vc);
    });

    for (const auto& ps : order) {
        int hp = th.nodes[ps.hc].parent, vp = tv.nodes[ps.vc].parent;
        pedge& bottom = hedges[{ps.hc, vp}];
        pedge& left = vedges[{hp, ps.vc}];
        if (bottom.lift < 0 || left.lift < 0)
            throw fold_inconsistency("square fill reached an unassigned side");
        // ends at the near corner
        int eh = bottom.fwd ? tail_end(bottom.bedge) : head_end(bottom.bedge);
        int ev = left.fwd ? tail_end(left.bedge) : head_end(left.bedge);
        int a = eh, b = ev;
        if (a > b) std::swap(a, b);
        auto it = corner_of.find({a, b});
        if (it == corner_of.end())
            throw not_csc("missing corner extension during product fill");
        const auto& cr = base.corners()[it->second];
        const square_rec& sq = base.squares[cr.square];
        int i = cr.pos;
        // side i leaves the corner; identify whether it is the horizontal one
        bool horiz_leaves = base.side_start_end(sq.sides[i]) == eh;
        // positions relative to the walk: i = side from near corner along the
        // leaving edge, then around the square
        int pos_right, pos_top, pos_left, pos_bottom;
        if (horiz_leaves) {
            pos_bottom = i;
            pos_right = (i + 1) % 4;
            pos_top = (i + 2) % 4;
            pos_left = (i + 3) % 4;
        } else {
            pos_left = i;  // walk climbs the vertical side first
            pos_top = (i + 1) % 4;
            pos_right = (i + 2) % 4;
            pos_bottom = (i + 3) % 4;
        }
        // consistency of the two known sides
        auto side_matches = [&](int pos, const pedge& pe, bool along_walk) {
            const side& sd = sq.sides[pos];
            if (sd.edge != pe.bedge) return false;
            // along_walk: our traversal (right/up) coincides with walk direction
            return along_walk ? (sd.fwd == pe.fwd) : (sd.fwd != pe.fwd);
        };
        bool ok = horiz_leaves
                      ? side_matches(pos_bottom, bottom, true) && side_matches(pos_left, left, false)
                      : side_matches(pos_left, left, true) && side_matches(pos_bottom, bottom, false);
        if (!ok) throw fold_inconsistency("corner extension contradicts known sides");

        // assign the far sides
        int c_se = vid.at({ps.hc, vp}), c_nw = vid.at({hp, ps.vc}), c_ne = vid.at({ps.hc, ps.vc});
        pedge& right = vedges[{ps.hc, ps.vc}];
        pedge& top = hedges[{ps.hc, ps.vc}];
        // walk direction along right side: upward iff horiz_leaves
        {
            const side& sd = sq.sides[pos_right];
            bool fwd_up = horiz_leaves ? sd.fwd : !sd.fwd;
            if (right.lift < 0) {
                right.bedge = sd.edge;
                right.fwd = fwd_up;
                right.lift = add_lift(sd.edge, fwd_up, c_se, c_ne);
            } else if (right.bedge != sd.edge || right.fwd != fwd_up)
                throw fold_inconsistency("square fill disagrees on a vertical side");
        }
        {
            const side& sd = sq.sides[pos_top];
            bool fwd_right = horiz_leaves ? !sd.fwd : sd.fwd;
            if (top.lift < 0) {
                top.bedge = sd.edge;
                top.fwd = fwd_right;
                top.lift = add_lift(sd.edge, fwd_right, c_nw, c_ne);
            } else if (top.bedge != sd.edge || top.fwd != fwd_right)
                throw fold_inconsistency("square fill disagrees on a horizontal side");
        }
        std::array<int, 4> sides{};
        sides[pos_bottom] = bottom.lift;
        sides[pos_right] = right.lift;
        sides[pos_top] = top.lift;
        sides[pos_left] = left.lift;
        bld.rsquares.push_back({cr.square, sides});
    }

    return finalize(base, vid.at({0, 0}), radius, bld, filter_only);
}

lifted_path lift_path(const cover_ball& ball, const std::vector<side>& base_walk, int start) {
    if (start < 0 || start >= ball.num_vertices())
        throw unknown_vertex("lift start outside ball");
    lifted_path p;
    p.vertices.push_back(start);
    int cur = start;
    for (const side& sd : base_walk) {
        if (ball.base.side_start(sd) != ball.vfiber[cur])
            throw validation_error("walk does not start at the current fiber");
        int le = ball.star_at(cur, ball.base.side_start_end(sd));
        if (le < 0)
            throw leaves_ball("lift exits the built region; enlarge the radius");
        p.edges.push_back(le);
        cur = end_is_head(ball.base.side_end_end(sd)) ? ball.edges[le].dst : ball.edges[le].src;
        p.vertices.push_back(cur);
    }
    return p;
}

transport_map deck_transport(const cover_ball& ball, int u, int u_prime) {
    if (u < 0 || u >= ball.num_vertices() || u_prime < 0 || u_prime >= ball.num_vertices())
        throw unknown_vertex("transport endpoints outside ball");
    if (ball.vfiber[u] != ball.vfiber[u_prime])
        throw different_fibers("transport endpoints lie in different fibers");
    transport_map tm;
    tm.image.assign(ball.num_vertices(), -1);
    tm.image[u] = u_prime;
    tm.mapped = 1;
    std::deque<int> q{u};
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (auto [bend, le] : ball.star[v]) {
            int w = ball.edge_other(le, v);
            if (tm.image[w] >= 0) continue;
            int le2 = ball.star_at(tm.image[v], bend);
            if (le2 < 0) continue;  // image falls outside the ball
            tm.image[w] = ball.edge_other(le2, tm.image[v]);
            tm.mapped++;
            q.push_back(w);
        }
    }
    // verify the hom property on the covered part; trim anything stale
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < ball.num_vertices(); v++) {
            if (tm.image[v] < 0 || v == u) continue;
            for (auto [bend, le] : ball.star[v]) {
                int w = ball.edge_other(le, v);
                if (tm.image[w] < 0) continue;
                int le2 = ball.star_at(tm.image[v], bend);
                // a missing image edge only means the ball ends there; an
                // edge landing on the wrong vertex is a genuine clash
                if (le2 >= 0 && ball.edge_other(le2, tm.image[v]) != tm.image[w]) {
                    tm.image[v] = -1;
                    tm.mapped--;
                    changed = true;
                    break;
                }
            }
        }
    }
    return tm;
}

ball_iso_result balls_isomorphic(const cover_ball& a, const cover_ball& b) {
    if (a.num_vertices() != b.num_vertices()) return {false, "vertex counts differ"};
    if (a.edges.size() != b.edges.size()) return {false, "edge counts differ"};
    if (a.squares.size() != b.squares.size()) return {false, "square counts differ"};
    if (a.vfiber[a.basepoint] != b.vfiber[b.basepoint]) return {false, "basepoint fibers differ"};
    std::vector<int> map_v(a.num_vertices(), -1);
    map_v[a.basepoint] = b.basepoint;
    std::deque<int> q{a.basepoint};
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        int v2 = map_v[v];
        if (a.star[v].size() != b.star[v2].size()) return {false, "star sizes differ at " + a.vname[v]};
        for (auto [bend, le] : a.star[v]) {
            int le2 = b.star_at(v2, bend);
            if (le2 < 0) return {false, "missing slot " + std::to_string(bend) + " at " + a.vname[v]};
            int w = a.edge_other(le, v), w2 = b.edge_other(le2, v2);
            if (map_v[w] < 0) {
                map_v[w] = w2;
                q.push_back(w);
            } else if (map_v[w] != w2) {
                return {false, "star matching is inconsistent at " + a.vname[w]};
            }
        }
    }
    for (int v = 0; v < a.num_vertices(); v++)
        if (map_v[v] < 0) return {false, "unreached vertex " + a.vname[v]};
    // squares must correspond
    auto square_key = [](const cover_ball& ball, const cover_ball::lifted_square& ls,
                         const std::vector<int>* vmap) {
        std::array<int, 9> key{};
        key[0] = ls.base_square;
        for (int i = 0; i < 4; i++) {
            const auto& le = ball.edges[ls.sides[i]];
            key[1 + 2 * i] = vmap ? (*vmap)[le.src] : le.src;
            key[2 + 2 * i] = vmap ? (*vmap)[le.dst] : le.dst;
        }
        return key;
    };
    std::set<std::array<int, 9>> sa, sb;
    for (const auto& ls : a.squares) sa.insert(square_key(a, ls, &map_v));
    for (const auto& ls : b.squares) sb.insert(square_key(b, ls, nullptr));
    if (sa != sb) return {false, "square sets differ"};
    return {true, ""};
}

// ------------------------------------------------------------------ census

namespace {

struct filter_graph {
    std::vector<int> verts;               // ball vertex ids, BFS order from root
    std::vector<int> depth;               // directed depth from root
    std::vector<int> vkey;                // vertex invariant (type)
    std::vector<std::vector<std::pair<int, int>>> out;  // (edge key, local target)
};

filter_graph truncated_filter(const cover_ball& ball, int root, int depth, bool use_colors,
                              std::map<std::string, int>& color_ids) {
    filter_graph fg;
    std::map<int, int> local;
    std::deque<int> q{root};
    local[root] = 0;
    fg.verts.push_back(root);
    fg.depth.push_back(0);
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        int lv = local[v];
        if (fg.depth[lv] == depth) continue;
        for (int le : ball.out_edges(v)) {
            int w = ball.edges[le].dst;
            if (!local.count(w)) {
                local[w] = static_cast<int>(fg.verts.size());
                fg.verts.push_back(w);
                fg.depth.push_back(fg.depth[lv] + 1);
                q.push_back(w);
            }
        }
    }
    fg.vkey.resize(fg.verts.size());
    fg.out.resize(fg.verts.size());
    for (size_t i = 0; i < fg.verts.size(); i++) {
        int bv = ball.vfiber[fg.verts[i]];
        fg.vkey[i] = ball.base.vertex_types[bv];
        if (fg.depth[i] == depth) continue;
        for (int le : ball.out_edges(fg.verts[i])) {
            int w = ball.edges[le].dst;
            auto it = local.find(w);
            if (it == local.end()) continue;
            int ekey = 0;
            if (use_colors) {
                std::string c = ball.base.edges[ball.edges[le].base_edge].color;
                auto [cit, ins] = color_ids.emplace(c, static_cast<int>(color_ids.size()));
                ekey = cit->second;
            }
            fg.out[i].push_back({ekey, it->second});
        }
        std::sort(fg.out[i].begin(), fg.out[i].end());
    }
    return fg;
}

// Iterated refinement signature, root-anchored. Cheap filter before the
// exact isomorphism search.
std::string filter_signature(const filter_graph& fg) {
    std::vector<long> color(fg.verts.size());
    for (size_t i = 0; i < fg.verts.size(); i++) color[i] = fg.vkey[i] * 64 + fg.depth[i];
    for (int round = 0; round < 8; round++) {
        std::vector<std::string> sig(fg.verts.size());
        for (size_t i = 0; i < fg.verts.size(); i++) {
            std::string s = std::to_string(color[i]) + "|";
            std::vector<std::pair<int, long>> nb;
            for (auto [k, j] : fg.out[i]) nb.push_back({k, color[j]});
            std::sort(nb.begin(), nb.end());
            for (auto [k, c] : nb) s += std::to_string(k) + ":" + std::to_string(c) + ",";
            sig[i] = s;
        }
        std::map<std::string, long> remap;
        for (const auto& s : sig) remap.emplace(s, 0);
        long next = 0;
        for (auto& [s, id] : remap) id = next++;
        std::vector<long> nc(fg.verts.size());
        for (size_t i = 0; i < fg.verts.size(); i++) nc[i] = remap[sig[i]];
        if (nc == color) break;
        color = nc;
    }
    // canonical multiset string + the root color
    std::vector<long> sorted = color;
    std::sort(sorted.begin(), sorted.end());
    std::string out = "r" + std::to_string(color[0]) + ";";
    for (long c : sorted) out += std::to_string(c) + ".";
    return out;
}

bool filter_iso_search(const filter_graph& A, const filter_graph& B) {
    if (A.verts.size() != B.verts.size()) return false;
    size_t n = A.verts.size();
    std::vector<int> map_ab(n, -1), map_ba(n, -1);
    // match in BFS order; candidates must agree on invariants and on the
    // already-mapped out/in structure
    std::vector<std::vector<std::pair<int, int>>> inA(n), inB(n);
    for (size_t i = 0; i < n; i++) {
        for (auto [k, j] : A.out[i]) inA[j].push_back({k, static_cast<int>(i)});
        for (auto [k, j] : B.out[i]) inB[j].push_back({k, static_cast<int>(i)});
    }
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == n) return true;
        for (size_t c = 0; c < n; c++) {
            if (map_ba[c] >= 0) continue;
            if (A.vkey[i] != B.vkey[c] || A.depth[i] != B.depth[c]) continue;
            if (A.out[i].size() != B.out[c].size() || inA[i].size() != inB[c].size()) continue;
            // consistency with mapped neighbors
            bool ok = true;
            for (auto [k, j] : A.out[i])
                if (static_cast<size_t>(j) < i || map_ab[j] >= 0) {
                    if (map_ab[j] < 0) continue;
                    bool found = false;
                    for (auto [k2, j2] : B.out[c])
                        if (k2 == k && j2 == map_ab[j]) found = true;
                    if (!found) {
                        ok = false;
                        break;
                    }
                }
            if (ok)
                for (auto [k, j] : inA[i]) {
                    if (map_ab[j] < 0) continue;
                    bool found = false;
                    for (auto [k2, j2] : inB[c])
                        if (k2 == k && j2 == map_ab[j]) found = true;
                    if (!found) {
                        ok = false;
                        break;
                    }
                }
            if (!ok) continue;
            map_ab[i] = static_cast<int>(c);
            map_ba[c] = static_cast<int>(i);
            if (rec(i + 1)) return true;
            map_ab[i] = -1;
            map_ba[c] = -1;
        }
        return false;
    };
    return rec(0);
}

}  // namespace

census_result filter_type_census(const cover_ball& ball, int depth, bool use_colors) {
    if (depth < 0) throw depth_exceeds_ball("negative depth");
    census_result res;
    std::map<std::string, int> color_ids;
    std::vector<std::pair<filter_graph, int>> reps;  // representative graph, entry index
    for (int v = 0; v < ball.num_vertices(); v++) {
        // eligibility: everything strictly inside the truncated filter is interior
        filter_graph probe = truncated_filter(ball, v, depth, use_colors, color_ids);
        bool eligible = true;
        for (size_t i = 0; i < probe.verts.size(); i++)
            if (probe.depth[i] < depth && !ball.vinterior[probe.verts[i]]) eligible = false;
        if (!eligible) continue;
        res.eligible++;
        bool matched = false;
        for (auto& [rep, idx] : reps) {
            if (filter_signature(rep) != filter_signature(probe)) continue;
            if (filter_iso_search(rep, probe)) {
                res.entries[idx].count++;
                matched = true;
                break;
            }
        }
        if (!matched) {
            res.entries.push_back({1, ball.vname[v]});
            reps.push_back({probe, static_cast<int>(res.entries.size()) - 1});
        }
    }
    res.classes = static_cast<int>(res.entries.size());
    if (res.eligible == 0 && depth > ball.radius)
        throw depth_exceeds_ball("no vertex has an interior filter at this depth");
    return res;
}

// ----------------------------------------------------------- serialization

std::string ball_to_json(const cover_ball& ball) {
    nlohmann::json j;
    j["base"] = nlohmann::json::parse(complex_to_json(ball.base));
    j["basepoint"] = ball.basepoint;
    j["radius"] = ball.radius;
    j["vertices"] = nlohmann::json::array();
    for (int v = 0; v < ball.num_vertices(); v++) {
        nlohmann::json jv;
        jv["name"] = ball.vname[v];
        jv["rho"] = ball.base.vertex_names[ball.vfiber[v]];
        jv["dist"] = ball.vdist[v];
        jv["interior"] = static_cast<bool>(ball.vinterior[v]);
        jv["corner_complete"] = static_cast<bool>(ball.vcorner_complete[v]);
        j["vertices"].push_back(jv);
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& le : ball.edges) {
        nlohmann::json je;
        je["rho"] = ball.base.edges[le.base_edge].name;
        je["src"] = le.src;
        je["dst"] = le.dst;
        j["edges"].push_back(je);
    }
    j["squares"] = nlohmann::json::array();
    for (const auto& ls : ball.squares) {
        nlohmann::json js;
        js["rho"] = ball.base.squares[ls.base_square].name;
        js["sides"] = ls.sides;
        j["squares"].push_back(js);
    }
    return j.dump(2);
}

cover_ball ball_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw parse_error(std::string("bad ball json: ") + e.what());
    }
    cover_ball ball;
    ball.base = complex_from_json(j.at("base").dump());
    ball.basepoint = j.at("basepoint").get<int>();
    ball.radius = j.at("radius").get<int>();
    for (const auto& jv : j.at("vertices")) {
        ball.vname.push_back(jv.at("name").get<std::string>());
        ball.vfiber.push_back(ball.base.vertex_id(jv.at("rho").get<std::string>()));
        ball.vdist.push_back(jv.at("dist").get<int>());
        ball.vinterior.push_back(jv.at("interior").get<bool>());
        ball.vcorner_complete.push_back(jv.at("corner_complete").get<bool>());
    }
    ball.star.assign(ball.num_vertices(), {});
    for (const auto& je : j.at("edges")) {
        cover_ball::lifted_edge le;
        le.base_edge = ball.base.edge_id(je.at("rho").get<std::string>());
        le.src = je.at("src").get<int>();
        le.dst = je.at("dst").get<int>();
        int id = static_cast<int>(ball.edges.size());
        ball.edges.push_back(le);
        ball.star[le.src].push_back({tail_end(le.base_edge), id});
        ball.star[le.dst].push_back({head_end(le.base_edge), id});
    }
    for (auto& s : ball.star) std::sort(s.begin(), s.end());
    for (const auto& js : j.value("squares", nlohmann::json::array())) {
        cover_ball::lifted_square ls;
        int q = -1;
        for (int i = 0; i < ball.base.num_squares(); i++)
            if (ball.base.squares[i].name == js.at("rho").get<std::string>()) q = i;
        ls.base_square = q;
        auto sides = js.at("sides");
        for (int i = 0; i < 4; i++) ls.sides[i] = sides.at(i).get<int>();
        ball.squares.push_back(ls);
    }
    return ball;
}

std::string ball_to_dot(const cover_ball& ball) {
    std::ostringstream out;
    out << "digraph ball {\n";
    for (int v = 0; v < ball.num_vertices(); v++) {
        out << "  \"" << ball.vname[v] << "\" [dist=" << ball.vdist[v];
        int t = ball.base.vertex_types[ball.vfiber[v]];
        if (t >= 0) out << ", type=" << t;
        if (!ball.vinterior[v]) out << ", style=dashed";
        out << "];\n";
    }
    for (const auto& le : ball.edges) {
        out << "  \"" << ball.vname[le.src] << "\" -> \"" << ball.vname[le.dst] << "\"";
        const auto& be = ball.base.edges[le.base_edge];
        out << " [label=\"" << be.name << "\"";
        if (!be.color.empty()) out << ", color=\"" << be.color << "\"";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace evdom
