#include <evdom/fragment.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace evdom {

void domain_fragment::finish() {
    int n = num_vertices();
    out_adj_.assign(n, {});
    in_adj_.assign(n, {});
    for (int e = 0; e < num_edges(); e++) {
        out_adj_[edges[e].src].push_back(e);
        in_adj_[edges[e].dst].push_back(e);
    }
    for (const fsquare& s : squares) {
        if (edges[s.a].src != edges[s.b].src || edges[s.a].dst != edges[s.c].src ||
            edges[s.b].dst != edges[s.d].src || edges[s.c].dst != edges[s.d].dst)
            throw validation_error("fragment square is not a commuting square");
    }
    depth_.assign(n, -1);
    std::deque<int> q{basepoint};
    depth_[basepoint] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int e : out_adj_[v])
            if (depth_[edges[e].dst] < 0) {
                depth_[edges[e].dst] = depth_[v] + 1;
                q.push_back(edges[e].dst);
            }
    }
    for (int v = 0; v < n; v++)
        if (depth_[v] < 0)
            throw validation_error("fragment vertex '" + vname[v] +
                                   "' is not reachable from the basepoint");
    certified_depth_ = 0;
    if (!all_certified) {
        int lim = INT_MAX / 4;
        for (int v = 0; v < n; v++)
            if (!vinterior[v]) lim = std::min(lim, depth_[v]);
        certified_depth_ = lim == INT_MAX / 4 ? INT_MAX / 4 : lim - 1;
    }
    dist_rows_.assign(n, {});
    reach_.clear();
}

int domain_fragment::dist(int u, int w) const {
    if (dist_rows_[u].empty()) {
        auto& row = dist_rows_[u];
        row.assign(num_vertices(), -1);
        std::deque<int> q{u};
        row[u] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            auto step = [&](int x) {
                if (row[x] < 0) {
                    row[x] = row[v] + 1;
                    q.push_back(x);
                }
            };
            for (int e : out_adj_[v]) step(edges[e].dst);
            for (int e : in_adj_[v]) step(edges[e].src);
        }
    }
    return dist_rows_[u][w];
}

bool domain_fragment::pair_certified(int u, int w) const {
    if (all_certified) return true;
    int d = dist(u, w);
    if (d < 0) return false;
    int lim = certified_depth();
    return depth_[u] + d <= lim && depth_[w] + d <= lim;
}

void domain_fragment::build_reach() const {
    int n = num_vertices();
    int words = (n + 63) / 64;
    reach_.assign(n, std::vector<uint64_t>(words, 0));
    // process in reverse topological (depth descending) order
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return depth_[a] > depth_[b]; });
    for (int v : order) {
        reach_[v][v / 64] |= 1ull << (v % 64);
        for (int e : out_adj_[v]) {
            const auto& rw = reach_[edges[e].dst];
            for (int i = 0; i < words; i++) reach_[v][i] |= rw[i];
        }
    }
}

bool domain_fragment::reaches(int u, int w) const {
    if (reach_.empty()) build_reach();
    return (reach_[u][w / 64] >> (w % 64)) & 1;
}

std::vector<int> domain_fragment::interval(int u, int w) const {
    if (!pair_certified(u, w))
        throw boundary_unsafe("interval endpoints are not certified: " + vname[u] + "," + vname[w]);
    int d = dist(u, w);
    dist(w, u);  // materialize both rows
    const auto& ru = dist_rows_[u];
    const auto& rw = dist_rows_[w];
    std::vector<int> out;
    for (int x = 0; x < num_vertices(); x++)
        if (ru[x] >= 0 && rw[x] >= 0 && ru[x] + rw[x] == d) out.push_back(x);
    return out;
}

filter_extraction principal_filter_extract(const cover_ball& ball, int v) {
    if (v < 0 || v >= ball.num_vertices()) throw unknown_vertex("filter root outside ball");
    if (!ball.vinterior[v])
        throw boundary_unsafe("filter root is not interior");
    // directed reachability through interior vertices
    std::vector<int> keep;
    std::vector<char> in(ball.num_vertices(), 0);
    std::deque<int> q{v};
    in[v] = 1;
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        keep.push_back(x);
        if (!ball.vinterior[x]) continue;  // boundary: stop expanding
        for (int le : ball.out_edges(x)) {
            int w = ball.edges[le].dst;
            if (!in[w]) {
                in[w] = 1;
                q.push_back(w);
            }
        }
    }
    std::sort(keep.begin(), keep.end());
    std::vector<int> ball2frag(ball.num_vertices(), -1);
    filter_extraction fx;
    for (int i = 0; i < static_cast<int>(keep.size()); i++) {
        ball2frag[keep[i]] = i;
        fx.to_ball.push_back(keep[i]);
    }
    domain_fragment& f = fx.frag;
    f.distances_exact = true;
    for (int x : keep) {
        f.vname.push_back(ball.vname[x]);
        f.vtype.push_back(ball.base.vertex_types[ball.vfiber[x]]);
        f.vinterior.push_back(ball.vinterior[x]);
    }
    f.basepoint = ball2frag[v];
    std::vector<int> ledge2fedge(ball.edges.size(), -1);
    for (int le = 0; le < static_cast<int>(ball.edges.size()); le++) {
        int s = ball.edges[le].src, d = ball.edges[le].dst;
        if (ball2frag[s] < 0 || ball2frag[d] < 0) continue;
        // only edges leaving expandable vertices belong to the filter
        if (!ball.vinterior[s]) continue;
        ledge2fedge[le] = f.num_edges();
        f.edges.push_back({ball2frag[s], ball2frag[d],
                           ball.base.edges[ball.edges[le].base_edge].color,
                           ball.edges[le].base_edge});
    }
    for (const auto& ls : ball.squares) {
        // identify the commuting-square roles from the walk
        const square_rec& bs = ball.base.squares[ls.base_square];
        int a = -1, b = -1, c = -1, d = -1;
        // source corner: side i leaves along its edge, side i-1 arrives
        // against its edge, so both directed edges point out of the corner
        for (int i = 0; i < 4; i++) {
            if (bs.sides[i].fwd && !bs.sides[(i + 3) % 4].fwd) {
                a = ls.sides[i];
                b = ls.sides[(i + 3) % 4];
                c = ls.sides[(i + 1) % 4];
                d = ls.sides[(i + 2) % 4];
                break;
            }
        }
        if (a < 0) continue;  // not an admissibly oriented square
        int fa = ledge2fedge[a], fb = ledge2fedge[b], fc = ledge2fedge[c], fd = ledge2fedge[d];
        if (fa < 0 || fb < 0 || fc < 0 || fd < 0) continue;
        f.squares.push_back({fa, fb, fc, fd});
    }
    f.finish();
    return fx;
}

domain_fragment principal_filter(const cover_ball& ball, int v) {
    return principal_filter_extract(ball, v).frag;
}

static std::vector<int> region_by_depth(const domain_fragment& frag, int max_region) {
    // vertices swept by the cubic/quartic scans, capped for tractability
    std::vector<int> verts;
    if (max_region < 0) {
        int cap = 0;
        std::vector<int> count_at(1024, 0);
        int maxd = 0;
        for (int v = 0; v < frag.num_vertices(); v++) {
            int d = std::min(frag.depth()[v], 1023);
            count_at[d]++;
            maxd = std::max(maxd, d);
        }
        int total = 0;
        for (int d = 0; d <= maxd; d++) {
            if (total + count_at[d] > 350 && d > 0) break;
            total += count_at[d];
            cap = d;
        }
        max_region = cap;
    }
    for (int v = 0; v < frag.num_vertices(); v++)
        if (frag.depth()[v] <= max_region) verts.push_back(v);
    return verts;
}

median_report median_check(const domain_fragment& frag, int max_region) {
    std::vector<int> verts = region_by_depth(frag, max_region);
    median_report rep;
    int n = static_cast<int>(verts.size());
    for (int i = 0; i < n; i++)
        for (int j = i; j < n; j++) {
            if (!frag.pair_certified(verts[i], verts[j])) continue;
            for (int k = j; k < n; k++) {
                int x = verts[i], y = verts[j], z = verts[k];
                if (!frag.pair_certified(y, z) || !frag.pair_certified(x, z)) continue;
                int dxy = frag.dist(x, y), dyz = frag.dist(y, z), dxz = frag.dist(x, z);
                rep.triples++;
                int medians = 0;
                for (int m = 0; m < frag.num_vertices(); m++) {
                    if (frag.dist(x, m) + frag.dist(m, y) != dxy) continue;
                    if (frag.dist(y, m) + frag.dist(m, z) != dyz) continue;
                    if (frag.dist(x, m) + frag.dist(m, z) != dxz) continue;
                    medians++;
                }
                if (medians != 1) {
                    rep.pass = false;
                    rep.witness = "triple " + frag.vname[x] + "," + frag.vname[y] + "," +
                                  frag.vname[z] + " has " + std::to_string(medians) + " medians";
                    return rep;
                }
            }
        }
    return rep;
}

verdict check_three_cube(const domain_fragment& frag) {
    int n = frag.num_vertices();
    std::vector<std::vector<int>> squares_at(n);
    auto corners = [&](const domain_fragment::fsquare& s) {
        return std::array<int, 4>{frag.edges[s.a].src, frag.edges[s.a].dst, frag.edges[s.b].dst,
                                  frag.edges[s.c].dst};
    };
    for (int q = 0; q < static_cast<int>(frag.squares.size()); q++)
        for (int v : corners(frag.squares[q])) squares_at[v].push_back(q);
    auto square_edges = [&](int q) {
        const auto& s = frag.squares[q];
        return std::array<int, 4>{s.a, s.b, s.c, s.d};
    };
    auto edge_has_vertex = [&](int e, int v) {
        return frag.edges[e].src == v || frag.edges[e].dst == v;
    };
    for (int v = 0; v < n; v++) {
        auto& qs = squares_at[v];
        std::sort(qs.begin(), qs.end());
        qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
        int m = static_cast<int>(qs.size());
        auto shared_edges_at_v = [&](int q1, int q2) {
            std::vector<int> out;
            for (int e1 : square_edges(q1))
                for (int e2 : square_edges(q2))
                    if (e1 == e2 && edge_has_vertex(e1, v)) out.push_back(e1);
            return out;
        };
        // the cube-corner pattern needs three distinct pairwise
        // intersection edges; a book of squares along one edge is fine
        for (int i = 0; i < m; i++)
            for (int j = i + 1; j < m; j++) {
                auto eij = shared_edges_at_v(qs[i], qs[j]);
                if (eij.empty()) continue;
                for (int k = j + 1; k < m; k++) {
                    auto eik = shared_edges_at_v(qs[i], qs[k]);
                    auto ejk = shared_edges_at_v(qs[j], qs[k]);
                    for (int a : eij)
                        for (int b : eik)
                            for (int c : ejk)
                                if (a != b && a != c && b != c)
                                    return {false,
                                            "vertex " + frag.vname[v] + ": squares " +
                                                std::to_string(qs[i]) + "," +
                                                std::to_string(qs[j]) + "," +
                                                std::to_string(qs[k]) +
                                                " pairwise share edges with no completing cube"};
                }
            }
    }
    return {true, ""};
}

theta_classes_result theta_classes(const domain_fragment& frag) {
    theta_classes_result res;
    int ne = frag.num_edges();
    std::vector<int> parent(ne);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    for (const auto& s : frag.squares) {
        unite(s.a, s.d);
        unite(s.b, s.c);
    }
    res.edge_class.assign(ne, -1);
    std::map<int, int> root_to_class;
    for (int e = 0; e < ne; e++) {
        int r = find(e);
        auto [it, fresh] = root_to_class.emplace(r, res.num_classes);
        if (fresh) res.num_classes++;
        res.edge_class[e] = it->second;
    }
    res.dual_edges.assign(res.num_classes, {});
    for (int e = 0; e < ne; e++) res.dual_edges[res.edge_class[e]].push_back(e);

    res.boundary_flag.assign(res.num_classes, 0);
    for (int e = 0; e < ne; e++) {
        int c = res.edge_class[e];
        if (!frag.vinterior[frag.edges[e].src] || !frag.vinterior[frag.edges[e].dst])
            res.boundary_flag[c] = 1;
    }
    if (frag.all_certified)
        std::fill(res.boundary_flag.begin(), res.boundary_flag.end(), 0);

    // halfspace sides by removing the class
    int n = frag.num_vertices();
    res.split_ok.assign(res.num_classes, 0);
    res.side.assign(res.num_classes, {});
    res.min_vertex.assign(res.num_classes, -1);
    res.first_depth.assign(res.num_classes, -1);
    for (int c = 0; c < res.num_classes; c++) {
        for (int e : res.dual_edges[c]) {
            int t = frag.edges[e].src;
            if (res.min_vertex[c] < 0 || frag.depth()[t] < frag.depth()[res.min_vertex[c]] ||
                (frag.depth()[t] == frag.depth()[res.min_vertex[c]] && t < res.min_vertex[c]))
                res.min_vertex[c] = t;
        }
        res.first_depth[c] = frag.depth()[res.min_vertex[c]] + 1;

        std::vector<int8_t> side(n, -1);
        std::vector<char> is_dual(frag.num_edges(), 0);
        for (int e : res.dual_edges[c]) is_dual[e] = 1;
        std::deque<int> q{frag.basepoint};
        side[frag.basepoint] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            auto step = [&](int e, int w) {
                if (is_dual[e] || side[w] >= 0) return;
                side[w] = side[v];
                q.push_back(w);
            };
            for (int e : frag.out_adj()[v]) step(e, frag.edges[e].dst);
            for (int e : frag.in_adj()[v]) step(e, frag.edges[e].src);
        }
        for (int v = 0; v < n; v++)
            if (side[v] < 0) side[v] = 1;
        bool ok = true;
        for (int e : res.dual_edges[c])
            if (side[frag.edges[e].src] != 0 || side[frag.edges[e].dst] != 1) ok = false;
        res.split_ok[c] = ok;
        res.side[c] = std::move(side);
    }
    return res;
}

verdict order_agreement_check(const domain_fragment& frag) {
    int n = frag.num_vertices();
    for (int u = 0; u < n; u++)
        for (int w = 0; w < n; w++) {
            if (u == w || !frag.pair_certified(u, w)) continue;
            bool o_order = frag.reaches(u, w);
            bool v_order = frag.depth()[u] + frag.dist(u, w) == frag.depth()[w];
            if (o_order != v_order)
                return {false, "pair " + frag.vname[u] + "," + frag.vname[w] + ": prec_o " +
                                   (o_order ? "holds" : "fails") + " but basepoint order " +
                                   (v_order ? "holds" : "fails")};
        }
    return {true, ""};
}

verdict filter_halfspace_check(const cover_ball& ball, const domain_fragment& frag,
                               const std::vector<int>& frag_to_ball) {
    // ball-wide parallelism classes with orientation consistency
    int ne = static_cast<int>(ball.edges.size());
    std::vector<int> parent(ne);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& ls : ball.squares) {
        const square_rec& bs = ball.base.squares[ls.base_square];
        for (int i = 0; i < 2; i++) {
            if (bs.sides[i].fwd == bs.sides[i + 2].fwd)
                return {false, "square without an admissible orientation in the ball"};
            int a = find(ls.sides[i]), b = find(ls.sides[i + 2]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    // interior radius of certification
    int rint = INT_MAX / 4;
    for (int v = 0; v < ball.num_vertices(); v++)
        if (!ball.vinterior[v]) rint = std::min(rint, ball.vdist[v]);
    if (rint != INT_MAX / 4) rint -= 1;

    std::vector<char> in_frag(ball.num_vertices(), 0);
    for (int bv : frag_to_ball) in_frag[bv] = 1;
    int bp = frag_to_ball[frag.basepoint];

    // BFS tree from the filter basepoint over the whole ball
    std::vector<int> par_edge(ball.num_vertices(), -1), dist(ball.num_vertices(), -1);
    std::deque<int> q{bp};
    dist[bp] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (auto [bend, le] : ball.star[v]) {
            int w = ball.edge_other(le, v);
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                par_edge[w] = le;
                q.push_back(w);
            }
        }
    }
    for (int x = 0; x < ball.num_vertices(); x++) {
        if (dist[x] < 0) continue;
        if (ball.vdist[bp] + dist[x] > rint || ball.vdist[x] + dist[x] > rint) continue;
        // classes separating bp and x, with crossing direction, read off the
        // BFS tree path (class sets are geodesic-independent in median graphs)
        bool all_forward = true;
        int cur = x;
        while (cur != bp) {
            int le = par_edge[cur];
            bool forward = ball.edges[le].dst == cur;  // crossed tail -> head
            if (!forward) all_forward = false;
            cur = ball.edge_other(le, cur);
        }
        bool in_filter = in_frag[x];
        if (in_filter != all_forward)
            return {false, "vertex " + ball.vname[x] + ": reachable=" +
                               (in_filter ? "yes" : "no") + " but halfspace membership=" +
                               (all_forward ? "yes" : "no")};
    }
    return {true, ""};
}

verdict local_convexity_check(const cover_ball& ball, const domain_fragment& frag,
                              const std::vector<int>& frag_to_ball) {
    int rint = INT_MAX / 4;
    for (int v = 0; v < ball.num_vertices(); v++)
        if (!ball.vinterior[v]) rint = std::min(rint, ball.vdist[v]);
    if (rint != INT_MAX / 4) rint -= 1;
    std::vector<char> in_frag(ball.num_vertices(), 0);
    for (int bv : frag_to_ball) in_frag[bv] = 1;

    // pairs at ball distance 2 with a common neighbor in the fragment
    for (int i = 0; i < frag.num_vertices(); i++) {
        int bz = frag_to_ball[i];
        if (ball.vdist[bz] + 2 > rint) continue;
        std::vector<int> nbrs;
        for (auto [bend, le] : ball.star[bz]) nbrs.push_back(ball.edge_other(le, bz));
        for (size_t a = 0; a < nbrs.size(); a++)
            for (size_t b = a + 1; b < nbrs.size(); b++) {
                int x = nbrs[a], y = nbrs[b];
                if (x == y || !in_frag[x] || !in_frag[y]) continue;
                // common neighbors of x and y must lie in the fragment
                for (auto [bend2, le2] : ball.star[x]) {
                    int z = ball.edge_other(le2, x);
                    bool adj = false;
                    for (auto [bend3, le3] : ball.star[y])
                        if (ball.edge_other(le3, y) == z) adj = true;
                    if (adj && !in_frag[z])
                        return {false, "interval of " + ball.vname[x] + "," + ball.vname[y] +
                                           " leaves the filter at " + ball.vname[z]};
                }
            }
    }
    return {true, ""};
}

int flat_grid_max(const domain_fragment& frag, int root, int cap) {
    std::vector<int> roots;
    if (root >= 0)
        roots.push_back(root);
    else
        for (int v = 0; v < frag.num_vertices(); v++) roots.push_back(v);

    // square lookup by (a,b) out-edge pair at the source corner
    std::map<std::pair<int, int>, int> apex;  // (edge s->p, edge s->q) -> t
    for (const auto& s : frag.squares) {
        apex[{s.a, s.b}] = frag.edges[s.c].dst;
        apex[{s.b, s.a}] = frag.edges[s.c].dst;
    }
    auto edge_between = [&](int u, int w) {
        for (int e : frag.out_adj()[u])
            if (frag.edges[e].dst == w) return e;
        return -1;
    };

    int best = 0;
    for (int r : roots) {
        // grow side-n grids; grid[i][j], i right, j up
        std::vector<std::vector<int>> grid(cap + 1, std::vector<int>(cap + 1, -1));
        grid[0][0] = r;
        std::function<bool(int)> grow = [&](int n) -> bool {
            if (n > cap) return false;
            // choose grid[n][0] then grid[0][n], then fill the L-shaped band
            for (int e1 : frag.out_adj()[grid[n - 1][0]]) {
                grid[n][0] = frag.edges[e1].dst;
                for (int e2 : frag.out_adj()[grid[0][n - 1]]) {
                    grid[0][n] = frag.edges[e2].dst;
                    // complete the L-shaped band cell by cell; the corner
                    // cell needs both band arms first
                    auto fill = [&](int ci, int cj, int& target) {
                        int ea = edge_between(grid[ci][cj], grid[ci + 1][cj]);
                        int eb = edge_between(grid[ci][cj], grid[ci][cj + 1]);
                        auto it = (ea >= 0 && eb >= 0) ? apex.find({ea, eb}) : apex.end();
                        if (it == apex.end()) return false;
                        target = it->second;
                        return true;
                    };
                    bool ok = true;
                    for (int i = 1; i < n && ok; i++) ok = fill(i - 1, n - 1, grid[i][n]);
                    for (int j = 1; j < n && ok; j++) ok = fill(n - 1, j - 1, grid[n][j]);
                    if (ok) ok = fill(n - 1, n - 1, grid[n][n]);
                    if (ok) {
                        // exact isometry of the extended band
                        for (int i = 0; i <= n && ok; i++)
                            for (int j = 0; j <= n && ok; j++) {
                                int du = frag.dist(grid[i][j], grid[n][0]);
                                if (du != (n - i) + j) ok = false;
                                int dv = frag.dist(grid[i][j], grid[0][n]);
                                if (dv != i + (n - j)) ok = false;
                            }
                    }
                    if (ok) {
                        best = std::max(best, n);
                        if (grow(n + 1)) return true;
                    }
                }
            }
            return false;
        };
        if (frag.out_adj()[r].size() >= 2) grow(1);
        best = std::max(best, 0);
    }
    return best;
}

four_point_result four_point_delta(const domain_fragment& frag, int max_region,
                                   long sample_budget) {
    std::vector<int> verts;
    for (int v : region_by_depth(frag, max_region < 0 ? INT_MAX / 4 : max_region))
        verts.push_back(v);
    if (!frag.all_certified && !frag.distances_exact) {
        // distance values themselves may be inflated near the boundary;
        // fall back to a pairwise-certified core
        int lim = frag.certified_depth() / 3;
        std::vector<int> filtered;
        for (int v : verts)
            if (frag.depth()[v] <= lim) filtered.push_back(v);
        verts = filtered;
    }
    four_point_result res;
    long n = static_cast<long>(verts.size());
    auto consider = [&](int a, int b, int c, int d) {
        long s1 = frag.dist(a, b) + frag.dist(c, d);
        long s2 = frag.dist(a, c) + frag.dist(b, d);
        long s3 = frag.dist(a, d) + frag.dist(b, c);
        long hi = std::max({s1, s2, s3});
        long mid = s1 + s2 + s3 - hi - std::min({s1, s2, s3});
        res.tuples++;
        if (hi - mid > res.twice_delta) {
            res.twice_delta = hi - mid;
            res.witness = {a, b, c, d};
        }
    };
    long total = n * (n - 1) / 2 * (n - 2) / 3 * (n - 3) / 4;
    if (total <= sample_budget || n < 8) {
        for (long i = 0; i < n; i++)
            for (long j = i + 1; j < n; j++)
                for (long k = j + 1; k < n; k++)
                    for (long l = k + 1; l < n; l++)
                        consider(verts[i], verts[j], verts[k], verts[l]);
    } else {
        res.exhaustive = false;
        uint64_t state = 0x2545F4914F6CDD1Dull;
        auto rnd = [&]() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            return state;
        };
        for (long t = 0; t < sample_budget; t++) {
            int a = verts[rnd() % n], b = verts[rnd() % n], c = verts[rnd() % n],
                d = verts[rnd() % n];
            if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
            consider(a, b, c, d);
        }
    }
    return res;
}

std::string fragment_to_json(const domain_fragment& frag) {
    nlohmann::json j;
    j["basepoint"] = frag.basepoint;
    j["all_certified"] = frag.all_certified;
    j["distances_exact"] = frag.distances_exact;
    j["vertices"] = nlohmann::json::array();
    for (int v = 0; v < frag.num_vertices(); v++) {
        nlohmann::json jv;
        jv["name"] = frag.vname[v];
        if (frag.vtype[v] >= 0) jv["type"] = frag.vtype[v];
        jv["interior"] = static_cast<bool>(frag.vinterior[v]);
        jv["depth"] = frag.depth()[v];
        j["vertices"].push_back(jv);
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& e : frag.edges) {
        nlohmann::json je;
        je["src"] = e.src;
        je["dst"] = e.dst;
        if (!e.color.empty()) je["color"] = e.color;
        j["edges"].push_back(je);
    }
    j["squares"] = nlohmann::json::array();
    for (const auto& s : frag.squares) j["squares"].push_back({s.a, s.b, s.c, s.d});
    return j.dump(2);
}

domain_fragment fragment_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw parse_error(std::string("bad fragment json: ") + e.what());
    }
    domain_fragment f;
    f.basepoint = j.at("basepoint").get<int>();
    f.all_certified = j.value("all_certified", false);
    f.distances_exact = j.value("distances_exact", false);
    for (const auto& jv : j.at("vertices")) {
        f.vname.push_back(jv.at("name").get<std::string>());
        f.vtype.push_back(jv.value("type", -1));
        f.vinterior.push_back(jv.value("interior", true));
    }
    for (const auto& je : j.at("edges"))
        f.edges.push_back({je.at("src").get<int>(), je.at("dst").get<int>(), je.value("color", "")});
    for (const auto& js : j.value("squares", nlohmann::json::array()))
        f.squares.push_back({js.at(0).get<int>(), js.at(1).get<int>(), js.at(2).get<int>(),
                             js.at(3).get<int>()});
    f.finish();
    return f;
}

std::string fragment_to_dot(const domain_fragment& frag) {
    std::ostringstream out;
    out << "digraph fragment {\n";
    for (int v = 0; v < frag.num_vertices(); v++) {
        out << "  \"" << frag.vname[v] << "\" [depth=" << frag.depth()[v];
        if (frag.vtype[v] >= 0) out << ", type=" << frag.vtype[v];
        out << "];\n";
    }
    for (const auto& e : frag.edges) {
        out << "  \"" << frag.vname[e.src] << "\" -> \"" << frag.vname[e.dst] << "\"";
        if (!e.color.empty()) out << " [color=\"" << e.color << "\"]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace evdom
