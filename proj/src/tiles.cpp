#include <evdom/tiles.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace evdom {

int tile_set::hcolor_id(const std::string& nm) const {
    auto it = std::find(hcolors.begin(), hcolors.end(), nm);
    return it == hcolors.end() ? -1 : static_cast<int>(it - hcolors.begin());
}

int tile_set::vcolor_id(const std::string& nm) const {
    auto it = std::find(vcolors.begin(), vcolors.end(), nm);
    return it == vcolors.end() ? -1 : static_cast<int>(it - vcolors.begin());
}

tile_set parse_tiles(const std::string& text) {
    tile_set t;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string tok;
        while (ls >> tok) {
            if (tok[0] == '#') break;
            toks.push_back(tok);
        }
        if (toks.empty()) continue;
        auto fail = [&](const std::string& m) {
            throw parse_error("line " + std::to_string(lineno) + ": " + m);
        };
        if (toks[0] == "hcolor") {
            for (size_t i = 1; i < toks.size(); i++) t.hcolors.push_back(toks[i]);
        } else if (toks[0] == "vcolor") {
            for (size_t i = 1; i < toks.size(); i++) t.vcolors.push_back(toks[i]);
        } else if (toks[0] == "tile") {
            if (toks.size() != 6) fail("expected: tile NAME n=C e=C s=C w=C");
            tile_set::tile tl;
            tl.name = toks[1];
            tl.north = tl.east = tl.south = tl.west = -1;
            for (size_t i = 2; i < 6; i++) {
                const std::string& a = toks[i];
                if (a.size() < 3 || a[1] != '=') fail("bad attribute '" + a + "'");
                std::string color = a.substr(2);
                switch (a[0]) {
                    case 'n': tl.north = t.hcolor_id(color); break;
                    case 's': tl.south = t.hcolor_id(color); break;
                    case 'e': tl.east = t.vcolor_id(color); break;
                    case 'w': tl.west = t.vcolor_id(color); break;
                    default: fail("bad attribute '" + a + "'");
                }
            }
            if (tl.north < 0 || tl.south < 0 || tl.east < 0 || tl.west < 0)
                fail("tile '" + tl.name + "' uses an undeclared color");
            t.tiles.push_back(tl);
        } else {
            fail("unknown directive '" + toks[0] + "'");
        }
    }
    std::set<std::string> h(t.hcolors.begin(), t.hcolors.end());
    for (const std::string& v : t.vcolors)
        if (h.count(v)) throw palette_overlap("color '" + v + "' is in both palettes");
    return t;
}

tile_set load_tiles(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_tiles(ss.str());
}

std::string write_tiles(const tile_set& t) {
    std::ostringstream out;
    out << "hcolor";
    for (const auto& c : t.hcolors) out << " " << c;
    out << "\nvcolor";
    for (const auto& c : t.vcolors) out << " " << c;
    out << "\n";
    for (const auto& tl : t.tiles)
        out << "tile " << tl.name << " n=" << t.hcolors[tl.north] << " e=" << t.vcolors[tl.east]
            << " s=" << t.hcolors[tl.south] << " w=" << t.vcolors[tl.west] << "\n";
    return out.str();
}

determinism_verdict check_4way_deterministic(const tile_set& t) {
    struct probe {
        const char* name;
        int tile_set::tile::*x;
        int tile_set::tile::*y;
    };
    const probe probes[4] = {{"NW", &tile_set::tile::north, &tile_set::tile::west},
                             {"NE", &tile_set::tile::north, &tile_set::tile::east},
                             {"SW", &tile_set::tile::south, &tile_set::tile::west},
                             {"SE", &tile_set::tile::south, &tile_set::tile::east}};
    for (const probe& p : probes) {
        std::map<std::pair<int, int>, int> seen;
        for (int i = 0; i < static_cast<int>(t.tiles.size()); i++) {
            auto key = std::make_pair(t.tiles[i].*(p.x), t.tiles[i].*(p.y));
            auto [it, fresh] = seen.emplace(key, i);
            if (!fresh)
                return {false, p.name,
                        "tiles " + t.tiles[it->second].name + " and " + t.tiles[i].name +
                            " share the " + p.name + " corner colors"};
        }
    }
    return {true, "", ""};
}

square_complex complex_from_tiles(const tile_set& t) {
    {
        std::set<std::string> h(t.hcolors.begin(), t.hcolors.end());
        for (const std::string& v : t.vcolors)
            if (h.count(v)) throw palette_overlap("color '" + v + "' is in both palettes");
    }
    square_complex c;
    c.name = "tiles";
    int v = c.add_vertex("o");
    std::map<std::string, int> eid;
    for (const std::string& nm : t.vcolors)
        eid[nm] = c.add_edge(nm, v, v, nm, vh_tag::vertical);
    for (const std::string& nm : t.hcolors)
        eid[nm] = c.add_edge(nm, v, v, nm, vh_tag::horizontal);
    for (const auto& tl : t.tiles) {
        // walk south, east, north (against), west (against)
        c.add_square(tl.name, {side{eid[t.hcolors[tl.south]], true},
                               side{eid[t.vcolors[tl.east]], true},
                               side{eid[t.hcolors[tl.north]], false},
                               side{eid[t.vcolors[tl.west]], false}});
    }
    c.validate();
    return c;
}

namespace {

// candidate tiles by (west, south) pair, plus full list
struct tile_index {
    std::map<std::pair<int, int>, std::vector<int>> by_ws;
    explicit tile_index(const tile_set& t) {
        for (int i = 0; i < static_cast<int>(t.tiles.size()); i++)
            by_ws[{t.tiles[i].west, t.tiles[i].south}].push_back(i);
    }
};

}  // namespace

std::optional<std::vector<std::vector<int>>> tile_patch(const tile_set& t, int w, int h,
                                                        const patch_constraints& bc) {
    if (w < 1 || h < 1) throw validation_error("patch dimensions must be positive");
    std::vector<std::vector<int>> g(w, std::vector<int>(h, -1));
    int n = static_cast<int>(t.tiles.size());
    // cells in row-major order (y outer), backtracking
    std::function<bool(int)> rec = [&](int idx) -> bool {
        if (idx == w * h) return true;
        int y = idx / w, x = idx % w;
        for (int i = 0; i < n; i++) {
            const auto& tl = t.tiles[i];
            if (x > 0 && t.tiles[g[x - 1][y]].east != tl.west) continue;
            if (y > 0 && t.tiles[g[x][y - 1]].north != tl.south) continue;
            if (x == 0 && !bc.west.empty() && bc.west[y] >= 0 && bc.west[y] != tl.west) continue;
            if (y == 0 && !bc.south.empty() && bc.south[x] >= 0 && bc.south[x] != tl.south)
                continue;
            if (x == w - 1 && !bc.east.empty() && bc.east[y] >= 0 && bc.east[y] != tl.east)
                continue;
            if (y == h - 1 && !bc.north.empty() && bc.north[x] >= 0 && bc.north[x] != tl.north)
                continue;
            g[x][y] = i;
            if (rec(idx + 1)) return true;
            g[x][y] = -1;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return g;
}

std::optional<std::vector<std::vector<int>>> tile_torus(const tile_set& t, int a, int b) {
    if (a < 1 || b < 1) throw validation_error("torus dimensions must be positive");
    std::vector<std::vector<int>> g(a, std::vector<int>(b, -1));
    int n = static_cast<int>(t.tiles.size());
    std::function<bool(int)> rec = [&](int idx) -> bool {
        if (idx == a * b) return true;
        int y = idx / a, x = idx % a;
        for (int i = 0; i < n; i++) {
            const auto& tl = t.tiles[i];
            if (x > 0 && t.tiles[g[x - 1][y]].east != tl.west) continue;
            if (y > 0 && t.tiles[g[x][y - 1]].north != tl.south) continue;
            // wrap-around; width/height 1 wraps onto the tile itself
            if (x == a - 1) {
                int west_wrap = x == 0 ? tl.west : t.tiles[g[0][y]].west;
                if (tl.east != west_wrap) continue;
            }
            if (y == b - 1) {
                int south_wrap = y == 0 ? tl.south : t.tiles[g[x][0]].south;
                if (tl.north != south_wrap) continue;
            }
            g[x][y] = i;
            if (rec(idx + 1)) return true;
            g[x][y] = -1;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return g;
}

probe_report aperiodicity_probe(const tile_set& t, int max_patch, int max_period) {
    probe_report rep;
    for (int k = 1; k <= max_patch; k++) {
        if (!tile_patch(t, k, k)) {
            rep.patches_exhausted = false;
            break;
        }
        rep.largest_patch = k;
    }
    // (a,b) in increasing a*b, ties by a <= b then a
    std::vector<std::pair<int, int>> order;
    for (int a = 1; a <= max_period; a++)
        for (int b = 1; b <= max_period; b++) order.push_back({a, b});
    std::sort(order.begin(), order.end(), [](auto p, auto q) {
        return std::make_tuple(p.first * p.second, std::min(p.first, p.second), p.first) <
               std::make_tuple(q.first * q.second, std::min(q.first, q.second), q.first);
    });
    for (auto [a, b] : order)
        if (tile_torus(t, a, b)) rep.torus_tilings.push_back({a, b});
    if (!rep.patches_exhausted)
        rep.classification = "does not tile (bounded certificate)";
    else if (!rep.torus_tilings.empty())
        rep.classification = "periodic";
    else
        rep.classification = "aperiodic-consistent up to bounds";
    return rep;
}

std::string tiling_to_text(const tile_set& t, const std::vector<std::vector<int>>& g) {
    std::ostringstream out;
    int w = static_cast<int>(g.size()), h = static_cast<int>(g[0].size());
    for (int y = h - 1; y >= 0; y--) {
        for (int x = 0; x < w; x++) out << (x ? " " : "") << t.tiles[g[x][y]].name;
        out << "\n";
    }
    return out.str();
}

std::string tiling_to_json(const tile_set& t, const std::vector<std::vector<int>>& g) {
    nlohmann::json j;
    j["width"] = g.size();
    j["height"] = g[0].size();
    j["rows"] = nlohmann::json::array();
    int w = static_cast<int>(g.size()), h = static_cast<int>(g[0].size());
    for (int y = 0; y < h; y++) {
        nlohmann::json row = nlohmann::json::array();
        for (int x = 0; x < w; x++) row.push_back(t.tiles[g[x][y]].name);
        j["rows"].push_back(row);
    }
    return j.dump(2);
}

std::string probe_to_json(const probe_report& r) {
    nlohmann::json j;
    j["largest_patch"] = r.largest_patch;
    j["patches_exhausted"] = r.patches_exhausted;
    j["torus_tilings"] = nlohmann::json::array();
    for (auto [a, b] : r.torus_tilings) j["torus_tilings"].push_back({a, b});
    j["classification"] = r.classification;
    return j.dump(2);
}

}  // namespace evdom
