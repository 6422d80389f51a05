#pragma once

// JSON (de)serialization. Numbers that carry real values travel as strings ("2.75", "1/3", "inf");
// matrix and relation entries are plain integers reduced mod p.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cmod/diagram.hpp"
#include "cmod/levelset.hpp"
#include "cmod/slice2d.hpp"

namespace cmod {

using json = nlohmann::ordered_json;

namespace detail {

// Run a parser body, turning nlohmann errors into InvalidInput.
template <class F>
auto guarded(const char* what, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const json::exception& e) {
        fail(ErrorKind::InvalidInput, std::string("bad ") + what + " JSON: " + e.what());
    }
}

inline Rational rational_field(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    fail(ErrorKind::InvalidInput, "real values must be decimal strings or integers, got " + v.dump());
}

inline ExtReal ext_field(const json& v) {
    if (v.is_string()) return parse_ext(v.get<std::string>());
    return ExtReal(rational_field(v));
}

inline json rationals_to_json(const std::vector<Rational>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(format_rational(x));
    return a;
}

inline std::vector<Rational> rationals_from_json(const json& a) {
    require(a.is_array(), ErrorKind::InvalidInput, "expected an array of values");
    std::vector<Rational> out;
    for (const auto& v : a) out.push_back(rational_field(v));
    return out;
}

inline std::vector<std::vector<std::int64_t>> int_rows(const json& a, std::size_t cols, const std::string& what) {
    require(a.is_array(), ErrorKind::InvalidInput, what + " must be an array of rows");
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& r : a) {
        require(r.is_array() && r.size() == cols, ErrorKind::DimensionMismatch,
                what + " rows must have length " + std::to_string(cols));
        std::vector<std::int64_t> row;
        for (const auto& x : r) {
            require(x.is_number_integer(), ErrorKind::InvalidInput, what + " entries must be integers");
            row.push_back(x.get<std::int64_t>());
        }
        rows.push_back(row);
    }
    return rows;
}

inline json mat_to_json(const Mat& m) {
    json a = json::array();
    for (const auto& r : m.to_rows()) a.push_back(r);
    return a;
}

inline Mat mat_from_json(FieldSpec f, const json& a, std::size_t rows, std::size_t cols, const std::string& what) {
    auto r = int_rows(a, cols, what);
    require(r.size() == rows, ErrorKind::DimensionMismatch, what + " needs " + std::to_string(rows) + " rows");
    return Mat::from_rows(f, cols, r);
}

inline FieldSpec field_from_json(const json& j, std::optional<std::uint32_t> fallback = std::nullopt) {
    if (!j.contains("field")) {
        require(fallback.has_value(), ErrorKind::InvalidInput, "missing \"field\"");
        return FieldSpec(*fallback);
    }
    require(j.at("field").is_number_integer() && j.at("field").get<long long>() > 0, ErrorKind::InvalidInput,
            "\"field\" must be a positive integer");
    return FieldSpec(static_cast<std::uint32_t>(j.at("field").get<long long>()));
}

} // namespace detail

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
    }
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::InvalidInput, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

// ---- GridCModule

inline json to_json(const GridCModule& m) {
    json j;
    j["field"] = m.field().p();
    j["grid"] = detail::rationals_to_json(m.grid().values());
    j["dims"] = m.dims();
    json corrs = json::array();
    for (const auto& c : m.corrs()) corrs.push_back(detail::mat_to_json(c.space().basis()));
    j["corrs"] = corrs;
    return j;
}

inline GridCModule module_from_json(const json& j) {
    return detail::guarded("module", [&] {
        FieldSpec f = detail::field_from_json(j);
        GridLine g(detail::rationals_from_json(j.at("grid")));
        auto dims = j.at("dims").get<std::vector<std::size_t>>();
        require(dims.size() == g.positions(), ErrorKind::DimensionMismatch,
                "expected " + std::to_string(g.positions()) + " dims for a grid of " + std::to_string(g.n()) + " values");
        const json& cs = j.at("corrs");
        require(cs.is_array() && cs.size() + 1 == dims.size(), ErrorKind::DimensionMismatch,
                "expected " + std::to_string(dims.size() - 1) + " correspondences");
        std::vector<Correspondence> corrs;
        for (std::size_t q = 0; q + 1 < dims.size(); ++q) {
            std::size_t w = dims[q] + dims[q + 1];
            auto rows = detail::int_rows(cs[q], w, "corrs[" + std::to_string(q) + "]");
            corrs.push_back(Correspondence::from_rows(dims[q], dims[q + 1], Mat::from_rows(f, w, rows)));
        }
        return GridCModule(f, g, dims, corrs);
    });
}

// ---- decorated diagrams

inline json to_json(const DecoratedDiagram& d) {
    json j;
    j["grid"] = detail::rationals_to_json(d.grid.values());
    json bars = json::array();
    for (const auto& [b, k] : d.mult) {
        json e;
        e["type"] = bar_type_code(b.type);
        e["start"] = b.start;
        e["end"] = b.end;
        e["birth"] = format_decorated(bar_birth(d.grid, b));
        e["death"] = format_decorated(bar_death(d.grid, b));
        e["mult"] = k;
        bars.push_back(e);
    }
    j["bars"] = bars;
    return j;
}

inline DecoratedDiagram decorated_from_json(const json& j) {
    return detail::guarded("diagram", [&] {
        DecoratedDiagram d{GridLine(detail::rationals_from_json(j.at("grid"))), {}};
        for (const auto& e : j.at("bars")) {
            Bar b{e.at("start").get<std::size_t>(), e.at("end").get<std::size_t>(), parse_bar_type(e.at("type").get<std::string>())};
            validate_bar(d.grid, b);
            if (e.contains("birth"))
                require(e.at("birth").get<std::string>() == format_decorated(bar_birth(d.grid, b)), ErrorKind::BadBar,
                        "birth " + e.at("birth").get<std::string>() + " does not match start position");
            if (e.contains("death"))
                require(e.at("death").get<std::string>() == format_decorated(bar_death(d.grid, b)), ErrorKind::BadBar,
                        "death " + e.at("death").get<std::string>() + " does not match end position");
            std::size_t k = e.contains("mult") ? e.at("mult").get<std::size_t>() : 1;
            require(k > 0, ErrorKind::InvalidInput, "bar multiplicity must be positive");
            d.add(b, k);
        }
        return d;
    });
}

// ---- undecorated diagrams

inline json to_json(const UndecoratedDiagram& u) {
    json pts = json::array();
    for (auto t : kBarTypes)
        for (const auto& [p, k] : u.of(t)) {
            json e;
            e["type"] = bar_type_code(t);
            e["birth"] = format_ext(p.first);
            e["death"] = format_ext(p.second);
            e["mult"] = k;
            pts.push_back(e);
        }
    json j;
    j["points"] = pts;
    return j;
}

// Accepts the undecorated schema or a decorated diagram (which is then undecorated).
inline UndecoratedDiagram undecorated_from_json(const json& j) {
    if (j.contains("bars")) return undecorate(decorated_from_json(j));
    return detail::guarded("undecorated diagram", [&] {
        UndecoratedDiagram u;
        for (const auto& e : j.at("points")) {
            BarType t = parse_bar_type(e.at("type").get<std::string>());
            DiagramPoint p{detail::ext_field(e.at("birth")), detail::ext_field(e.at("death"))};
            validate_point(t, p);
            std::size_t k = e.contains("mult") ? e.at("mult").get<std::size_t>() : 1;
            u.add(t, p, k);
        }
        return u;
    });
}

inline json to_json(const BottleneckResult& r, const UndecoratedDiagram& a, const UndecoratedDiagram& b) {
    json j;
    j["distance"] = format_ext(r.distance);
    if (!r.certificate) {
        j["matching"] = nullptr;
        return j;
    }
    auto point = [](const DiagramPoint& p) { return json::array({format_ext(p.first), format_ext(p.second)}); };
    json m;
    m["epsilon"] = format_rational(r.certificate->epsilon);
    json classes;
    for (auto t : kBarTypes) {
        const auto& cm = r.certificate->classes[static_cast<int>(t)];
        auto pa = a.expanded(t), pb = b.expanded(t);
        json c;
        c["matched"] = json::array();
        for (auto [i, k] : cm.matched) c["matched"].push_back(json::array({point(pa[i]), point(pb[k])}));
        c["deleted_a"] = json::array();
        for (auto i : cm.deleted_a) c["deleted_a"].push_back(point(pa[i]));
        c["deleted_b"] = json::array();
        for (auto i : cm.deleted_b) c["deleted_b"].push_back(point(pb[i]));
        classes[bar_type_code(t)] = c;
    }
    m["classes"] = classes;
    j["matching"] = m;
    return j;
}

// ---- PL complexes

inline json to_json(const PLComplex& c) {
    json j;
    j["field"] = c.field.p();
    json vs = json::array();
    for (const auto& v : c.vertices) vs.push_back(json{{"id", v.id}, {"value", format_rational(v.value)}});
    j["vertices"] = vs;
    j["simplices"] = c.simplices;
    return j;
}

inline PLComplex complex_from_json(const json& j, std::optional<std::uint32_t> field_override = std::nullopt) {
    return detail::guarded("complex", [&] {
        PLComplex c;
        c.field = field_override ? FieldSpec(*field_override) : detail::field_from_json(j, 2);
        for (const auto& v : j.at("vertices")) c.vertices.push_back({v.at("id").get<long long>(), detail::rational_field(v.at("value"))});
        c.simplices = j.at("simplices").get<std::vector<std::vector<long long>>>();
        validate(c);
        return c;
    });
}

// ---- 2-D grid modules and lines

inline json to_json(const GridModule2D& m) {
    json j;
    j["field"] = m.field().p();
    j["xs"] = detail::rationals_to_json(m.xs());
    j["ys"] = detail::rationals_to_json(m.ys());
    j["dims"] = m.dims();
    auto maps = [](const std::vector<std::vector<Mat>>& ms) {
        json a = json::array();
        for (const auto& row : ms) {
            json r = json::array();
            for (const auto& x : row) r.push_back(detail::mat_to_json(x));
            a.push_back(r);
        }
        return a;
    };
    j["hmaps"] = maps(m.hmaps());
    j["vmaps"] = maps(m.vmaps());
    return j;
}

inline GridModule2D module2d_from_json(const json& j, std::optional<std::uint32_t> field_override = std::nullopt) {
    return detail::guarded("2-D module", [&] {
        FieldSpec f = field_override ? FieldSpec(*field_override) : detail::field_from_json(j);
        auto xs = detail::rationals_from_json(j.at("xs")), ys = detail::rationals_from_json(j.at("ys"));
        auto dims = j.at("dims").get<std::vector<std::vector<std::size_t>>>();
        std::size_t nx = xs.size(), ny = ys.size();
        require(dims.size() == nx, ErrorKind::DimensionMismatch, "dims needs one row per x value");
        for (const auto& r : dims) require(r.size() == ny, ErrorKind::DimensionMismatch, "dims row needs one entry per y value");
        const json& hj = j.at("hmaps");
        const json& vj = j.at("vmaps");
        require(hj.is_array() && hj.size() + 1 == nx, ErrorKind::DimensionMismatch, "hmaps needs len(xs)-1 rows");
        require(vj.is_array() && vj.size() == nx, ErrorKind::DimensionMismatch, "vmaps needs len(xs) rows");
        std::vector<std::vector<Mat>> h(nx - 1), v(nx);
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t k = 0; k < ny; ++k) {
                std::string at = "(" + std::to_string(i) + "," + std::to_string(k) + ")";
                if (i + 1 < nx) {
                    require(hj[i].is_array() && hj[i].size() == ny, ErrorKind::DimensionMismatch, "hmaps row needs len(ys) maps");
                    h[i].push_back(detail::mat_from_json(f, hj[i][k], dims[i + 1][k], dims[i][k], "hmap " + at));
                }
                if (k + 1 < ny) {
                    require(vj[i].is_array() && vj[i].size() + 1 == ny, ErrorKind::DimensionMismatch, "vmaps row needs len(ys)-1 maps");
                    v[i].push_back(detail::mat_from_json(f, vj[i][k], dims[i][k + 1], dims[i][k], "vmap " + at));
                }
            }
        return GridModule2D(f, xs, ys, dims, h, v);
    });
}

inline json to_json(const LineSpec& l) {
    return json{{"slope", format_rational(l.slope)}, {"intercept", format_rational(l.intercept)}};
}

inline LineSpec line_from_json(const json& j) {
    return detail::guarded("line", [&] {
        LineSpec l{detail::rational_field(j.at("slope")), detail::rational_field(j.at("intercept"))};
        validate_line(l);
        return l;
    });
}

// "slope,intercept", e.g. "-1/2,3"
inline LineSpec parse_line(const std::string& s) {
    auto comma = s.find(',');
    require(comma != std::string::npos, ErrorKind::InvalidInput, "line must be given as \"slope,intercept\"");
    LineSpec l{parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
    validate_line(l);
    return l;
}

// ---- Mayer-Vietoris report

inline json to_json(const MVReport& r) {
    json j;
    j["grid"] = detail::rationals_to_json(r.grid.values());
    json table = json::array();
    for (const auto& row : r.table) {
        json e;
        e["position"] = row.position;
        e["value"] = format_rational(row.value);
        e["dims"] = json{{"h1_sub", row.h1_sub}, {"h1_sup", row.h1_sup}, {"h1_x", row.h1_x}, {"h0_level", row.h0_level},
                         {"h0_sub", row.h0_sub}, {"h0_sup", row.h0_sup}, {"h0_x", row.h0_x}};
        e["exact"] = json{{"h1_x", row.exact_h1_x}, {"h0_level", row.exact_h0_level}, {"h0_cover", row.exact_h0_cover},
                          {"h0_x_onto", row.onto_h0_x}};
        table.push_back(e);
    }
    j["table"] = table;
    json nat;
    for (const auto& [k, v] : r.naturality) nat[k] = v;
    j["naturality"] = nat;
    j["cokernel"] = to_json(r.cokernel);
    j["cokernel_diagram"] = to_json(r.cokernel_diagram);
    j["levelset_h0_diagram"] = to_json(r.levelset_h0);
    return j;
}

} // namespace cmod
