#include <evdom/complex.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace evdom {

int square_complex::add_vertex(const std::string& vname, int type) {
    if (vertex_index_.count(vname))
        throw validation_error("duplicate vertex '" + vname + "'");
    int id = num_vertices();
    vertex_index_[vname] = id;
    vertex_names.push_back(vname);
    vertex_types.push_back(type);
    derived_valid_ = false;
    return id;
}

int square_complex::add_edge(const std::string& ename, int src, int dst,
                             const std::string& color, vh_tag vh) {
    if (edge_index_.count(ename))
        throw validation_error("duplicate edge '" + ename + "'");
    if (src < 0 || src >= num_vertices() || dst < 0 || dst >= num_vertices())
        throw validation_error("edge '" + ename + "' references missing vertex");
    int id = num_edges();
    edge_index_[ename] = id;
    edges.push_back({ename, src, dst, color, vh});
    derived_valid_ = false;
    return id;
}

int square_complex::add_square(const std::string& sname, const std::array<side, 4>& sides) {
    for (const side& s : sides)
        if (s.edge < 0 || s.edge >= num_edges())
            throw validation_error("square '" + sname + "' references missing edge");
    for (int i = 0; i < 4; i++)
        if (side_end(sides[i]) != side_start(sides[(i + 1) % 4]))
            throw validation_error("square '" + sname + "' boundary walk is not closed");
    int id = num_squares();
    squares.push_back({sname, sides});
    derived_valid_ = false;
    return id;
}

int square_complex::vertex_id(const std::string& vname) const {
    auto it = vertex_index_.find(vname);
    return it == vertex_index_.end() ? -1 : it->second;
}

int square_complex::edge_id(const std::string& ename) const {
    auto it = edge_index_.find(ename);
    return it == edge_index_.end() ? -1 : it->second;
}

void square_complex::build_derived() const {
    ends_at_.assign(num_vertices(), {});
    for (int e = 0; e < num_edges(); e++) {
        ends_at_[edges[e].src].push_back(tail_end(e));
        ends_at_[edges[e].dst].push_back(head_end(e));
    }
    for (auto& v : ends_at_) std::sort(v.begin(), v.end());

    corners_.clear();
    corners_at_.assign(num_vertices(), {});
    for (int q = 0; q < num_squares(); q++) {
        for (int i = 0; i < 4; i++) {
            corner c;
            c.square = q;
            c.pos = i;
            c.vertex = side_start(squares[q].sides[i]);
            c.arrive_end = side_end_end(squares[q].sides[(i + 3) % 4]);
            c.leave_end = side_start_end(squares[q].sides[i]);
            corners_at_[c.vertex].push_back(static_cast<int>(corners_.size()));
            corners_.push_back(c);
        }
    }
    derived_valid_ = true;
}

const std::vector<std::vector<int>>& square_complex::ends_at() const {
    if (!derived_valid_) build_derived();
    return ends_at_;
}

const std::vector<square_complex::corner>& square_complex::corners() const {
    if (!derived_valid_) build_derived();
    return corners_;
}

const std::vector<std::vector<int>>& square_complex::corners_at() const {
    if (!derived_valid_) build_derived();
    return corners_at_;
}

void square_complex::validate() const {
    for (int q = 0; q < num_squares(); q++) {
        const square_rec& sq = squares[q];
        for (const side& s : sq.sides)
            if (s.edge < 0 || s.edge >= num_edges())
                throw validation_error("square '" + sq.name + "' references missing edge");
        for (int i = 0; i < 4; i++)
            if (side_end(sq.sides[i]) != side_start(sq.sides[(i + 1) % 4]))
                throw validation_error("square '" + sq.name + "' boundary walk is not closed");
    }
    // vh alternation is a checked property (check_vh), not a structural
    // invariant: tagged-but-bad inputs must load so the checker can name
    // the offending square
}

vertex_link make_vertex_link(const square_complex& c, int v) {
    if (v < 0 || v >= c.num_vertices())
        throw unknown_vertex("no vertex with id " + std::to_string(v));
    vertex_link lk;
    lk.vertex = v;
    lk.nodes = c.ends_at()[v];
    for (int ci : c.corners_at()[v]) {
        const auto& cr = c.corners()[ci];
        int a = cr.arrive_end, b = cr.leave_end;
        if (a > b) std::swap(a, b);
        lk.link_edges.push_back({a, b, cr.square, cr.pos});
    }
    std::sort(lk.link_edges.begin(), lk.link_edges.end(),
              [](const vertex_link::link_edge& x, const vertex_link::link_edge& y) {
                  return std::tie(x.a, x.b, x.square, x.pos) < std::tie(y.a, y.b, y.square, y.pos);
              });
    return lk;
}

static std::string end_desc(const square_complex& c, int end) {
    return c.edges[end_edge(end)].name + (end_is_head(end) ? ".head" : ".tail");
}

verdict check_npc(const square_complex& c) {
    for (int v = 0; v < c.num_vertices(); v++) {
        vertex_link lk = make_vertex_link(c, v);
        // loops and multi-edges
        std::set<std::pair<int, int>> seen;
        for (const auto& le : lk.link_edges) {
            if (le.a == le.b)
                return {false, "vertex " + c.vertex_names[v] + ": link loop at " +
                                   end_desc(c, le.a) + " (square " + c.squares[le.square].name + ")"};
            if (!seen.insert({le.a, le.b}).second)
                return {false, "vertex " + c.vertex_names[v] + ": doubled link edge " +
                                   end_desc(c, le.a) + "--" + end_desc(c, le.b)};
        }
        // triangles in the (now simple) link graph
        std::map<int, std::set<int>> adj;
        for (const auto& le : lk.link_edges) {
            adj[le.a].insert(le.b);
            adj[le.b].insert(le.a);
        }
        for (const auto& le : lk.link_edges)
            for (int w : adj[le.a])
                if (w != le.b && adj[le.b].count(w))
                    return {false, "vertex " + c.vertex_names[v] + ": link triangle " +
                                       end_desc(c, le.a) + "," + end_desc(c, le.b) + "," +
                                       end_desc(c, w)};
    }
    return {true, ""};
}

verdict check_vh(const square_complex& c) {
    for (const edge_rec& e : c.edges)
        if (e.vh == vh_tag::none)
            throw missing_tags("edge '" + e.name + "' has no vh tag");
    for (const square_rec& sq : c.squares)
        for (int i = 0; i < 4; i++)
            if (c.edges[sq.sides[i].edge].vh == c.edges[sq.sides[(i + 1) % 4].edge].vh)
                return {false, "square " + sq.name + " does not alternate V/H"};
    return {true, ""};
}

csc_verdict check_csc(const square_complex& c) {
    for (const edge_rec& e : c.edges)
        if (e.vh == vh_tag::none)
            throw missing_tags("edge '" + e.name + "' has no vh tag");
    csc_verdict out;
    for (int v = 0; v < c.num_vertices(); v++) {
        std::vector<int> vends, hends;
        for (int end : c.ends_at()[v])
            (c.edges[end_edge(end)].vh == vh_tag::vertical ? vends : hends).push_back(end);
        if (vends.empty() || hends.empty()) continue;
        std::map<std::pair<int, int>, int> cover;
        for (int ci : c.corners_at()[v]) {
            const auto& cr = c.corners()[ci];
            int a = cr.arrive_end, b = cr.leave_end;
            if (a > b) std::swap(a, b);
            cover[{a, b}]++;
        }
        for (int ve : vends)
            for (int he : hends) {
                int a = ve, b = he;
                if (a > b) std::swap(a, b);
                auto it = cover.find({a, b});
                int n = it == cover.end() ? 0 : it->second;
                if (n == 0) {
                    if (out.pass)
                        out.witness = "vertex " + c.vertex_names[v] + ": uncovered corner pair " +
                                      end_desc(c, ve) + "," + end_desc(c, he);
                    out.pass = false;
                } else if (n > 1) {
                    out.all_unique = false;
                }
            }
    }
    if (c.num_squares() == 0 && c.num_edges() > 0) {
        // both palettes inhabited but nothing spans them
        bool has_v = false, has_h = false;
        for (const edge_rec& e : c.edges) {
            has_v |= e.vh == vh_tag::vertical;
            has_h |= e.vh == vh_tag::horizontal;
        }
        if (has_v && has_h && out.pass) {
            out.pass = false;
            out.witness = "no squares cover any corner pair";
        }
    }
    return out;
}

verdict check_admissible_orientation(const square_complex& c) {
    for (const square_rec& sq : c.squares)
        for (int i = 0; i < 2; i++)
            if (sq.sides[i].fwd == sq.sides[i + 2].fwd)
                return {false, "square " + sq.name + ": opposite sides " + std::to_string(i) +
                                   "," + std::to_string(i + 2) + " point against each other"};
    return {true, ""};
}

std::vector<parallel_pair> elementary_parallelisms(const square_complex& c) {
    std::vector<parallel_pair> out;
    for (int q = 0; q < c.num_squares(); q++) {
        const square_rec& sq = c.squares[q];
        for (int i = 0; i < 2; i++)
            out.push_back({sq.sides[i].edge, sq.sides[i + 2].edge,
                           sq.sides[i].fwd != sq.sides[i + 2].fwd, q});
    }
    return out;
}

// Rotate a square's sides so signs read (+,+,-,-) when the orientation is
// admissible; otherwise rotate the first + to front. Fixes which side
// plays "bottom" for subdivision.
static int canonical_rotation(const square_rec& sq) {
    for (int r = 0; r < 4; r++)
        if (sq.sides[r].fwd && sq.sides[(r + 1) % 4].fwd && !sq.sides[(r + 2) % 4].fwd &&
            !sq.sides[(r + 3) % 4].fwd)
            return r;
    for (int r = 0; r < 4; r++)
        if (sq.sides[r].fwd) return r;
    return 0;
}

square_complex barycentric_subdivision(const square_complex& c) {
    c.validate();
    square_complex out;
    out.name = c.name.empty() ? "subdivision" : "b(" + c.name + ")";
    std::vector<int> v_of_vertex(c.num_vertices()), v_of_edge(c.num_edges()),
        v_of_square(c.num_squares());
    for (int v = 0; v < c.num_vertices(); v++)
        v_of_vertex[v] = out.add_vertex(c.vertex_names[v], 0);
    for (int e = 0; e < c.num_edges(); e++)
        v_of_edge[e] = out.add_vertex("m." + c.edges[e].name, 1);
    for (int q = 0; q < c.num_squares(); q++)
        v_of_square[q] = out.add_vertex("c." + c.squares[q].name, 2);

    // halves inherit color, vh and direction of the parent edge
    std::vector<std::pair<int, int>> half(c.num_edges());  // (first, second)
    for (int e = 0; e < c.num_edges(); e++) {
        const edge_rec& er = c.edges[e];
        int h1 = out.add_edge(er.name + ".1", v_of_vertex[er.src], v_of_edge[e], er.color, er.vh);
        int h2 = out.add_edge(er.name + ".2", v_of_edge[e], v_of_vertex[er.dst], er.color, er.vh);
        half[e] = {h1, h2};
    }

    // Traversal of half-edges: side s of the parent walk splits into two
    // sides of the subdivided walk.
    auto half_sides = [&](const side& s) -> std::array<side, 2> {
        if (s.fwd) return {side{half[s.edge].first, true}, side{half[s.edge].second, true}};
        return {side{half[s.edge].second, false}, side{half[s.edge].first, false}};
    };

    for (int q = 0; q < c.num_squares(); q++) {
        const square_rec& sq = c.squares[q];
        int rot = canonical_rotation(sq);
        // In the canonical rotation the walk reads bottom (SW->SE), right
        // (SE->NE), top (NE->NW), left (NW->SW).
        side b = sq.sides[rot], r = sq.sides[(rot + 1) % 4], t = sq.sides[(rot + 2) % 4],
             l = sq.sides[(rot + 3) % 4];
        int ctr = v_of_square[q];
        int mb = v_of_edge[b.edge], mr = v_of_edge[r.edge], mt = v_of_edge[t.edge],
            ml = v_of_edge[l.edge];
        // Spokes through the bottom/top barycenters run vertically, so they
        // take the left edge's palette, and vice versa.
        vh_tag spoke_bt = vh_tag::none, spoke_lr = vh_tag::none;
        if (c.edges[b.edge].vh != vh_tag::none && c.edges[l.edge].vh != vh_tag::none) {
            spoke_bt = c.edges[l.edge].vh;
            spoke_lr = c.edges[b.edge].vh;
        }
        // spokes oriented bottom-to-top and left-to-right
        int sb = out.add_edge("s." + sq.name + ".b", mb, ctr, "", spoke_bt);
        int st = out.add_edge("s." + sq.name + ".t", ctr, mt, "", spoke_bt);
        int sl = out.add_edge("s." + sq.name + ".l", ml, ctr, "", spoke_lr);
        int sr = out.add_edge("s." + sq.name + ".r", ctr, mr, "", spoke_lr);

        // halves of each parent side, in walk direction
        auto hb = half_sides(b), hr = half_sides(r), ht = half_sides(t), hl = half_sides(l);
        out.add_square(sq.name + ".sw", {hb[0], side{sb, true}, side{sl, false}, hl[1]});
        out.add_square(sq.name + ".se", {hb[1], hr[0], side{sr, false}, side{sb, false}});
        out.add_square(sq.name + ".ne", {side{sr, true}, hr[1], ht[0], side{st, false}});
        out.add_square(sq.name + ".nw", {side{sl, true}, side{st, true}, ht[1], hl[0]});
    }
    out.validate();
    return out;
}

square_complex attach_tips(const square_complex& subdivided,
                           const std::map<std::string, int>& tip_len) {
    for (int t : subdivided.vertex_types)
        if (t < 0)
            throw not_subdivided("complex has untyped vertices; subdivide first");
    {
        std::set<int> lens;
        for (const auto& [color, len] : tip_len) {
            if (len < 1) throw non_bijective_map("tip length for '" + color + "' must be >= 1");
            if (!lens.insert(len).second)
                throw non_bijective_map("tip length " + std::to_string(len) + " used twice");
        }
    }
    square_complex out = subdivided;
    out.name = subdivided.name.empty() ? "tips" : subdivided.name + "+tips";
    int nv = subdivided.num_vertices();
    for (int v = 0; v < nv; v++) {
        if (subdivided.vertex_types[v] != 1) continue;
        // a 1-vertex is the barycenter of exactly one parent edge; both
        // halves carry the parent color
        std::string color;
        for (int end : subdivided.ends_at()[v]) {
            const edge_rec& e = subdivided.edges[end_edge(end)];
            if (!e.color.empty()) color = e.color;
        }
        auto it = tip_len.find(color);
        if (it == tip_len.end())
            throw non_bijective_map("no tip length for color '" + color + "'");
        int prev = v;
        for (int k = 1; k <= it->second; k++) {
            int w = out.add_vertex("t." + subdivided.vertex_names[v] + "." + std::to_string(k), 3);
            out.add_edge("t." + subdivided.vertex_names[v] + "." + std::to_string(k), prev, w);
            prev = w;
        }
    }
    out.validate();
    return out;
}

// ---------------------------------------------------------------- parsing

static std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

square_complex parse_complex(const std::string& text) {
    square_complex c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0, sq_auto = 0;
    while (std::getline(in, line)) {
        lineno++;
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        auto fail = [&](const std::string& msg) -> square_complex& {
            throw parse_error("line " + std::to_string(lineno) + ": " + msg);
        };
        try {
            if (toks[0] == "complex") {
                if (toks.size() != 2) fail("expected: complex NAME");
                c.name = toks[1];
            } else if (toks[0] == "vertex") {
                if (toks.size() < 2) fail("expected: vertex NAME [type=K]");
                int type = -1;
                for (size_t i = 2; i < toks.size(); i++) {
                    if (toks[i].rfind("type=", 0) == 0)
                        type = std::stoi(toks[i].substr(5));
                    else
                        fail("unknown vertex attribute '" + toks[i] + "'");
                }
                c.add_vertex(toks[1], type);
            } else if (toks[0] == "edge") {
                if (toks.size() < 4) fail("expected: edge NAME SRC DST [color=C] [vh=V|H]");
                int src = c.vertex_id(toks[2]), dst = c.vertex_id(toks[3]);
                if (src < 0) fail("unknown vertex '" + toks[2] + "'");
                if (dst < 0) fail("unknown vertex '" + toks[3] + "'");
                std::string color;
                vh_tag vh = vh_tag::none;
                for (size_t i = 4; i < toks.size(); i++) {
                    if (toks[i].rfind("color=", 0) == 0)
                        color = toks[i].substr(6);
                    else if (toks[i] == "vh=V")
                        vh = vh_tag::vertical;
                    else if (toks[i] == "vh=H")
                        vh = vh_tag::horizontal;
                    else
                        fail("unknown edge attribute '" + toks[i] + "'");
                }
                c.add_edge(toks[1], src, dst, color, vh);
            } else if (toks[0] == "square") {
                if (toks.size() != 9) fail("expected: square E1 S1 E2 S2 E3 S3 E4 S4");
                std::array<side, 4> sides;
                for (int i = 0; i < 4; i++) {
                    int e = c.edge_id(toks[1 + 2 * i]);
                    if (e < 0) fail("unknown edge '" + toks[1 + 2 * i] + "'");
                    const std::string& sg = toks[2 + 2 * i];
                    if (sg != "+" && sg != "-") fail("sign must be + or -");
                    sides[i] = {e, sg == "+"};
                }
                c.add_square("sq" + std::to_string(sq_auto++), sides);
            } else {
                fail("unknown directive '" + toks[0] + "'");
            }
        } catch (const validation_error& e) {
            throw validation_error("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    c.validate();
    return c;
}

square_complex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
        return complex_from_json(ss.str());
    return parse_complex(ss.str());
}

std::string write_complex(const square_complex& c) {
    std::ostringstream out;
    if (!c.name.empty()) out << "complex " << c.name << "\n";
    for (int v = 0; v < c.num_vertices(); v++) {
        out << "vertex " << c.vertex_names[v];
        if (c.vertex_types[v] >= 0) out << " type=" << c.vertex_types[v];
        out << "\n";
    }
    for (const edge_rec& e : c.edges) {
        out << "edge " << e.name << " " << c.vertex_names[e.src] << " " << c.vertex_names[e.dst];
        if (!e.color.empty()) out << " color=" << e.color;
        if (e.vh == vh_tag::vertical) out << " vh=V";
        if (e.vh == vh_tag::horizontal) out << " vh=H";
        out << "\n";
    }
    for (const square_rec& sq : c.squares) {
        out << "square";
        for (const side& s : sq.sides) out << " " << c.edges[s.edge].name << " " << (s.fwd ? "+" : "-");
        out << "\n";
    }
    return out.str();
}

std::string complex_to_json(const square_complex& c) {
    nlohmann::json j;
    j["name"] = c.name;
    for (int v = 0; v < c.num_vertices(); v++) {
        nlohmann::json jv;
        jv["name"] = c.vertex_names[v];
        if (c.vertex_types[v] >= 0) jv["type"] = c.vertex_types[v];
        j["vertices"].push_back(jv);
    }
    j["edges"] = nlohmann::json::array();
    for (const edge_rec& e : c.edges) {
        nlohmann::json je;
        je["name"] = e.name;
        je["src"] = c.vertex_names[e.src];
        je["dst"] = c.vertex_names[e.dst];
        if (!e.color.empty()) je["color"] = e.color;
        if (e.vh != vh_tag::none) je["vh"] = e.vh == vh_tag::vertical ? "V" : "H";
        j["edges"].push_back(je);
    }
    j["squares"] = nlohmann::json::array();
    for (const square_rec& sq : c.squares) {
        nlohmann::json js = nlohmann::json::array();
        for (const side& s : sq.sides) {
            js.push_back(c.edges[s.edge].name);
            js.push_back(s.fwd ? "+" : "-");
        }
        j["squares"].push_back(js);
    }
    return j.dump(2);
}

square_complex complex_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw parse_error(std::string("bad json: ") + e.what());
    }
    square_complex c;
    c.name = j.value("name", "");
    for (const auto& jv : j.value("vertices", nlohmann::json::array()))
        c.add_vertex(jv.at("name").get<std::string>(), jv.value("type", -1));
    for (const auto& je : j.value("edges", nlohmann::json::array())) {
        std::string vh = je.value("vh", "");
        c.add_edge(je.at("name").get<std::string>(),
                   c.vertex_id(je.at("src").get<std::string>()),
                   c.vertex_id(je.at("dst").get<std::string>()), je.value("color", ""),
                   vh == "V" ? vh_tag::vertical : vh == "H" ? vh_tag::horizontal : vh_tag::none);
    }
    int sq_auto = 0;
    for (const auto& js : j.value("squares", nlohmann::json::array())) {
        std::array<side, 4> sides;
        for (int i = 0; i < 4; i++) {
            int e = c.edge_id(js.at(2 * i).get<std::string>());
            if (e < 0) throw parse_error("unknown edge in square");
            sides[i] = {e, js.at(2 * i + 1).get<std::string>() == "+"};
        }
        c.add_square("sq" + std::to_string(sq_auto++), sides);
    }
    c.validate();
    return c;
}

}  // namespace evdom
