#include "lcy/io.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace lcy {

using nlohmann::ordered_json;

namespace {

ordered_json parse(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t k = 0; k < end; ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string what = e.what();
        auto pos = what.find("syntax error");
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                         (pos == std::string::npos ? what : what.substr(pos)));
    }
}

[[noreturn]] void bad(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what); }

const ordered_json& need(const ordered_json& j, const char* key, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(where, std::string("missing key \"") + key + "\"");
    return *it;
}

i64 as_int(const ordered_json& j, const std::string& where) {
    if (!j.is_number_integer()) bad(where, "expected an integer");
    return j.get<i64>();
}

I2 as_i2(const ordered_json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) bad(where, "expected a pair of integers");
    return I2{as_int(j[0], where + "[0]"), as_int(j[1], where + "[1]")};
}

Q as_q(const ordered_json& j, const std::string& where) {
    if (j.is_number_integer()) return Q(static_cast<long>(j.get<i64>()));
    if (!j.is_string()) bad(where, "expected a rational \"p/q\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::exception&) {
        bad(where, "malformed rational \"" + j.get<std::string>() + "\"");
    }
}

const ordered_json& as_array(const ordered_json& j, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array");
    return j;
}

void reject_unknown(const ordered_json& j, std::initializer_list<const char*> keys, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (auto k : keys) known = known || it.key() == k;
        if (!known) bad(where, "unknown key \"" + it.key() + "\"");
    }
}

ordered_json i2_json(const I2& v) { return ordered_json::array({v.x, v.y}); }

} // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

LooijengaPair read_pair(const std::string& text) {
    auto j = parse(text);
    if (!j.is_object()) bad("pair", "expected an object");
    reject_unknown(j, {"name", "fan_rays", "blowups_per_ray", "exceptional_labels", "self_ints"}, "pair");
    LooijengaPair p;
    if (j.contains("self_ints")) {
        if (j.contains("fan_rays") || j.contains("blowups_per_ray")) bad("pair", "give either self_ints or a toric model");
        std::vector<i64> s;
        const auto& a = as_array(j["self_ints"], "self_ints");
        for (std::size_t k = 0; k < a.size(); ++k) s.push_back(as_int(a[k], "self_ints[" + std::to_string(k) + "]"));
        p = pair_from_self_ints(s);
    } else {
        ToricModel tm;
        const auto& rays = as_array(need(j, "fan_rays", "pair"), "fan_rays");
        for (std::size_t k = 0; k < rays.size(); ++k) tm.rays.push_back(as_i2(rays[k], "fan_rays[" + std::to_string(k) + "]"));
        const auto& l = as_array(need(j, "blowups_per_ray", "pair"), "blowups_per_ray");
        for (std::size_t k = 0; k < l.size(); ++k) {
            i64 v = as_int(l[k], "blowups_per_ray[" + std::to_string(k) + "]");
            if (v < 0) bad("blowups_per_ray[" + std::to_string(k) + "]", "negative blowup count");
            tm.blowups.push_back(static_cast<int>(v));
        }
        if (tm.rays.size() != tm.blowups.size()) bad("pair", "fan_rays and blowups_per_ray differ in length");
        std::vector<std::vector<std::string>> labels;
        bool custom = j.contains("exceptional_labels");
        if (custom) {
            const auto& ls = as_array(j["exceptional_labels"], "exceptional_labels");
            if (ls.size() != tm.rays.size()) bad("exceptional_labels", "one list per ray expected");
            for (std::size_t k = 0; k < ls.size(); ++k) {
                std::string w = "exceptional_labels[" + std::to_string(k) + "]";
                std::vector<std::string> row;
                for (auto& s : as_array(ls[k], w)) {
                    if (!s.is_string()) bad(w, "expected strings");
                    row.push_back(s.get<std::string>());
                }
                if (row.size() != static_cast<std::size_t>(tm.blowups[k])) bad(w, "one label per blowup expected");
                labels.push_back(row);
            }
        }
        p = build_pair({}, tm, custom ? &labels : nullptr);
    }
    if (j.contains("name")) {
        if (!j["name"].is_string()) bad("name", "expected a string");
        p.set_name(j["name"].get<std::string>());
    }
    return p;
}

std::string write_pair(const LooijengaPair& p) {
    ordered_json j = ordered_json::object();
    if (!p.name().empty()) j["name"] = p.name();
    if (p.has_toric_model()) {
        const auto& tm = p.toric_model();
        j["fan_rays"] = ordered_json::array();
        for (auto& r : tm.rays) j["fan_rays"].push_back(i2_json(r));
        j["blowups_per_ray"] = tm.blowups;
        if (p.custom_labels()) j["exceptional_labels"] = p.labels();
    } else {
        j["self_ints"] = p.self_ints();
    }
    return j.dump(2) + "\n";
}

LooijengaPair load_pair(const std::string& path) { return read_pair(read_file(path)); }

TropicalCycle read_cycle(const FocusFocusLayout& L, const std::string& text) {
    auto j = parse(text);
    if (!j.is_object()) bad("cycle", "expected an object");
    reject_unknown(j, {"name", "vertices", "edges", "loops"}, "cycle");
    TropicalCycle c;
    if (j.contains("name")) {
        if (!j["name"].is_string()) bad("name", "expected a string");
        c.name = j["name"].get<std::string>();
    }
    std::vector<int> vcone;
    const auto& vs = as_array(need(j, "vertices", "cycle"), "vertices");
    for (std::size_t k = 0; k < vs.size(); ++k) {
        std::string w = "vertices[" + std::to_string(k) + "]";
        reject_unknown(vs[k], {"cone", "at", "boundary"}, w);
        i64 cone = as_int(need(vs[k], "cone", w), w + ".cone");
        if (cone < 0 || cone >= L.n()) bad(w + ".cone", "no cone " + std::to_string(cone));
        const auto& at = need(vs[k], "at", w);
        if (!at.is_array() || at.size() != 2) bad(w + ".at", "expected [b, c]");
        V2 bc(as_q(at[0], w + ".at[0]"), as_q(at[1], w + ".at[1]"));
        if (sgn(bc.x) < 0 || sgn(bc.y) < 0 || bc.is_zero()) bad(w + ".at", "point outside cone " + std::to_string(cone));
        bool boundary = false;
        if (vs[k].contains("boundary")) {
            if (!vs[k]["boundary"].is_boolean()) bad(w + ".boundary", "expected true or false");
            boundary = vs[k]["boundary"].get<bool>();
        }
        c.vertices.push_back({L.to_plane(static_cast<int>(cone), bc), boundary});
        vcone.push_back(static_cast<int>(cone));
    }
    auto vertex_index = [&](const ordered_json& x, const std::string& w) {
        i64 v = as_int(x, w);
        if (v < 0 || v >= static_cast<i64>(c.vertices.size())) bad(w, "no vertex " + std::to_string(v));
        return static_cast<int>(v);
    };
    if (j.contains("edges")) {
        const auto& es = as_array(j["edges"], "edges");
        for (std::size_t k = 0; k < es.size(); ++k) {
            std::string w = "edges[" + std::to_string(k) + "]";
            reject_unknown(es[k], {"tail", "head", "vector"}, w);
            int t = vertex_index(need(es[k], "tail", w), w + ".tail");
            int h = vertex_index(need(es[k], "head", w), w + ".head");
            I2 v = L.vec_to_plane(vcone[static_cast<std::size_t>(t)], as_i2(need(es[k], "vector", w), w + ".vector"));
            // the tail may sit on a ray with the edge running into the other cone
            const V2& a = c.vertices[static_cast<std::size_t>(t)].at;
            V2 mid = (a + c.vertices[static_cast<std::size_t>(h)].at) * Q(1, 2);
            if (mid.is_zero()) bad(w, "edge through the origin");
            auto pm = L.locate(mid);
            auto pt = L.locate(a);
            int tc = vcone[static_cast<std::size_t>(t)];
            if (pm.ray < 0 && pt.ray >= 0 && pm.cone != tc) {
                int r = pt.ray;
                int slab = L.slab_of(r, pt.radius);
                if (tc == r && pm.cone == L.mod(r - 1))
                    v = L.cross(r, slab, v, false);
                else if (tc == L.mod(r - 1) && pm.cone == r)
                    v = L.cross(r, slab, v, true);
            }
            c.edges.push_back({t, h, v});
        }
    }
    if (j.contains("loops")) {
        const auto& ls = as_array(j["loops"], "loops");
        for (std::size_t k = 0; k < ls.size(); ++k) {
            std::string w = "loops[" + std::to_string(k) + "]";
            reject_unknown(ls[k], {"ray", "singularity", "orientation", "vertex", "vector"}, w);
            FocusLoop lp;
            i64 ray = as_int(need(ls[k], "ray", w), w + ".ray");
            if (ray < 0 || ray >= L.n()) bad(w + ".ray", "no ray " + std::to_string(ray));
            lp.ray = static_cast<int>(ray);
            i64 s = as_int(need(ls[k], "singularity", w), w + ".singularity");
            if (s < 1 || s > L.blowups(lp.ray)) bad(w + ".singularity", "no singular point " + std::to_string(s) + " on that ray");
            lp.singularity = static_cast<int>(s);
            i64 o = as_int(need(ls[k], "orientation", w), w + ".orientation");
            if (o != 1 && o != -1) bad(w + ".orientation", "expected 1 or -1");
            lp.orientation = static_cast<int>(o);
            lp.vertex = vertex_index(need(ls[k], "vertex", w), w + ".vertex");
            lp.xi = L.vec_to_plane(vcone[static_cast<std::size_t>(lp.vertex)], as_i2(need(ls[k], "vector", w), w + ".vector"));
            c.loops.push_back(lp);
        }
    }
    return c;
}

std::string write_cycle(const FocusFocusLayout& L, const TropicalCycle& c) {
    ordered_json j = ordered_json::object();
    if (!c.name.empty()) j["name"] = c.name;
    std::vector<int> vcone;
    j["vertices"] = ordered_json::array();
    for (auto& v : c.vertices) {
        auto pl = L.locate(v.at);
        int cone = pl.ray >= 0 ? pl.ray : pl.cone;
        V2 bc = L.to_cone(cone, v.at);
        ordered_json x = ordered_json::object();
        x["cone"] = cone;
        x["at"] = ordered_json::array({fmt(bc.x), fmt(bc.y)});
        x["boundary"] = v.boundary;
        j["vertices"].push_back(x);
        vcone.push_back(cone);
    }
    j["edges"] = ordered_json::array();
    for (auto& e : c.edges) {
        I2 v = e.xi;
        int tc = vcone[static_cast<std::size_t>(e.tail)];
        const V2& a = c.vertices[static_cast<std::size_t>(e.tail)].at;
        auto pt = L.locate(a);
        V2 mid = (a + c.vertices[static_cast<std::size_t>(e.head)].at) * Q(1, 2);
        if (pt.ray >= 0 && !mid.is_zero()) {
            auto pm = L.locate(mid);
            if (pm.ray < 0 && pm.cone == L.mod(pt.ray - 1)) v = L.cross(pt.ray, L.slab_of(pt.ray, pt.radius), v, true);
        }
        ordered_json x = ordered_json::object();
        x["tail"] = e.tail;
        x["head"] = e.head;
        x["vector"] = i2_json(L.vec_to_cone(tc, v));
        j["edges"].push_back(x);
    }
    j["loops"] = ordered_json::array();
    for (auto& lp : c.loops) {
        ordered_json x = ordered_json::object();
        x["ray"] = lp.ray;
        x["singularity"] = lp.singularity;
        x["orientation"] = lp.orientation;
        x["vertex"] = lp.vertex;
        x["vector"] = i2_json(L.vec_to_cone(vcone[static_cast<std::size_t>(lp.vertex)], lp.xi));
        j["loops"].push_back(x);
    }
    return j.dump(2) + "\n";
}

TropicalCycle load_cycle(const FocusFocusLayout& L, const std::string& path) { return read_cycle(L, read_file(path)); }

} // namespace lcy
