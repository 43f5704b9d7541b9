#include <evdom/quadrant.hpp>

#include <algorithm>
#include <map>

namespace evdom {

std::string quadrant_rect::row_word(int j) const {
    std::string w;
    for (int i = 0; i < n; i++) w += tiles->hcolors[hrow[i][j]];
    return w;
}

std::string quadrant_rect::col_word(int i) const {
    std::string w;
    for (int j = 0; j < m; j++) w += tiles->vcolors[vcol[i][j]];
    return w;
}

quadrant_rect fill_quadrant(const tile_set& t, int n, int m, const std::string& bottom_color,
                            const std::string& left_color) {
    int bc = t.hcolor_id(bottom_color), lc = t.vcolor_id(left_color);
    if (bc < 0) throw validation_error("unknown horizontal color '" + bottom_color + "'");
    if (lc < 0) throw validation_error("unknown vertical color '" + left_color + "'");
    std::map<std::pair<int, int>, int> by_ws;
    for (int i = 0; i < static_cast<int>(t.tiles.size()); i++) {
        auto [it, fresh] = by_ws.emplace(std::make_pair(t.tiles[i].west, t.tiles[i].south), i);
        if (!fresh)
            throw transcription_incomplete("two tiles share a SW corner: " +
                                           t.tiles[it->second].name + ", " + t.tiles[i].name);
    }
    quadrant_rect qr;
    qr.n = n;
    qr.m = m;
    qr.tiles = &t;
    qr.cell.assign(n, std::vector<int>(m, -1));
    qr.vcol.assign(n + 1, std::vector<int>(m, -1));
    qr.hrow.assign(n, std::vector<int>(m + 1, -1));
    for (int i = 0; i < n; i++) qr.hrow[i][0] = bc;
    for (int j = 0; j < m; j++) qr.vcol[0][j] = lc;
    for (int j = 0; j < m; j++)
        for (int i = 0; i < n; i++) {
            auto it = by_ws.find({qr.vcol[i][j], qr.hrow[i][j]});
            if (it == by_ws.end())
                throw transcription_incomplete(
                    "no tile with west=" + t.vcolors[qr.vcol[i][j]] +
                    " south=" + t.hcolors[qr.hrow[i][j]]);
            qr.cell[i][j] = it->second;
            qr.vcol[i + 1][j] = t.tiles[it->second].east;
            qr.hrow[i][j + 1] = t.tiles[it->second].north;
        }
    return qr;
}

int quadrant_fragment::out_edge(int from, int to) const {
    for (int e : frag.out_adj()[from])
        if (frag.edges[e].dst == to) return e;
    return -1;
}

int quadrant_fragment::star_bary(int i, int j, const std::string& color) const {
    auto it = bary_by_color.find({zv[i][j], color});
    return it == bary_by_color.end() ? -1 : it->second;
}

quadrant_fragment build_quadrant_fragment(const tile_set& t, int n, int m,
                                          const std::map<std::string, int>& tip_len,
                                          const std::string& bottom_color,
                                          const std::string& left_color, bool with_stars) {
    quadrant_fragment qf;
    qf.n = n;
    qf.m = m;
    // one extra ring of cells so star colors exist at the top/right rim
    qf.rect = fill_quadrant(t, n + 1, m + 1, bottom_color, left_color);
    domain_fragment& f = qf.frag;
    f.all_certified = true;

    auto add_vertex = [&](const std::string& nm, int type) {
        f.vname.push_back(nm);
        f.vtype.push_back(type);
        f.vinterior.push_back(1);
        return f.num_vertices() - 1;
    };
    auto add_edge = [&](int src, int dst, const std::string& color) {
        f.edges.push_back({src, dst, color});
        return f.num_edges() - 1;
    };
    auto pos = [](int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; };

    qf.zv.assign(n + 1, std::vector<int>(m + 1, -1));
    qf.hb.assign(n, std::vector<int>(m + 1, -1));
    qf.vb.assign(n + 1, std::vector<int>(m, -1));
    qf.ctr.assign(n, std::vector<int>(m, -1));
    for (int j = 0; j <= m; j++)
        for (int i = 0; i <= n; i++) qf.zv[i][j] = add_vertex("z" + pos(i, j), 0);
    for (int j = 0; j <= m; j++)
        for (int i = 0; i < n; i++) qf.hb[i][j] = add_vertex("h" + pos(i, j), 1);
    for (int j = 0; j < m; j++)
        for (int i = 0; i <= n; i++) qf.vb[i][j] = add_vertex("v" + pos(i, j), 1);
    for (int j = 0; j < m; j++)
        for (int i = 0; i < n; i++) qf.ctr[i][j] = add_vertex("c" + pos(i, j), 2);

    auto attach_tip = [&](int root, const std::string& color, const std::string& nm) {
        auto it = tip_len.find(color);
        if (it == tip_len.end()) throw non_bijective_map("no tip length for '" + color + "'");
        int prev = root;
        for (int k = 1; k <= it->second; k++) {
            int w = add_vertex(nm + ".t" + std::to_string(k), 3);
            add_edge(prev, w, "");
            prev = w;
        }
    };

    // subdivided grid edges with their parent colors
    std::vector<std::vector<std::pair<int, int>>> h1(n, std::vector<std::pair<int, int>>(m + 1)),
        v1(n + 1, std::vector<std::pair<int, int>>(m));
    for (int j = 0; j <= m; j++)
        for (int i = 0; i < n; i++) {
            std::string col = t.hcolors[qf.rect.hrow[i][j]];
            int e1 = add_edge(qf.zv[i][j], qf.hb[i][j], col);
            int e2 = add_edge(qf.hb[i][j], qf.zv[i + 1][j], col);
            h1[i][j] = {e1, e2};
            qf.bary_by_color[{qf.zv[i][j], col}] = qf.hb[i][j];
            attach_tip(qf.hb[i][j], col, "h" + pos(i, j));
        }
    for (int j = 0; j < m; j++)
        for (int i = 0; i <= n; i++) {
            std::string col = t.vcolors[qf.rect.vcol[i][j]];
            int e1 = add_edge(qf.zv[i][j], qf.vb[i][j], col);
            int e2 = add_edge(qf.vb[i][j], qf.zv[i][j + 1], col);
            v1[i][j] = {e1, e2};
            qf.bary_by_color[{qf.zv[i][j], col}] = qf.vb[i][j];
            attach_tip(qf.vb[i][j], col, "v" + pos(i, j));
        }
    // spokes and the four quarter squares per cell
    for (int j = 0; j < m; j++)
        for (int i = 0; i < n; i++) {
            int c = qf.ctr[i][j];
            int sb = add_edge(qf.hb[i][j], c, "");
            int st = add_edge(c, qf.hb[i][j + 1], "");
            int sl = add_edge(qf.vb[i][j], c, "");
            int sr = add_edge(c, qf.vb[i + 1][j], "");
            // commuting squares (a: s->p, b: s->q, c: p->t, d: q->t)
            f.squares.push_back({h1[i][j].first, v1[i][j].first, sb, sl});
            f.squares.push_back({h1[i][j].second, sb, v1[i + 1][j].first, sr});
            f.squares.push_back({sl, v1[i][j].second, st, h1[i][j + 1].first});
            f.squares.push_back({st, sr, h1[i][j + 1].second, v1[i + 1][j].second});
        }

    if (with_stars) {
        // remaining out-colors at each 0-vertex: stub barycenter plus tip
        for (int j = 0; j <= m; j++)
            for (int i = 0; i <= n; i++) {
                int z = qf.zv[i][j];
                auto add_stub = [&](const std::string& col) {
                    if (qf.bary_by_color.count({z, col})) return;
                    int w = add_vertex("s" + pos(i, j) + "." + col, 1);
                    add_edge(z, w, col);
                    qf.bary_by_color[{z, col}] = w;
                    attach_tip(w, col, "s" + pos(i, j) + "." + col);
                };
                for (const std::string& col : t.hcolors) add_stub(col);
                for (const std::string& col : t.vcolors) add_stub(col);
            }
    }
    f.finish();
    return qf;
}

}  // namespace evdom
