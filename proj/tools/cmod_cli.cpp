// cmod_cli: command-line front end for the c-module library.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cmod/cmod.hpp"

using namespace cmod;

namespace {

const char* kSchemas = R"(JSON schemas (real values are strings: "2", "-0.25", "1/3", "inf"; matrix entries are integers mod p):

  module      {"field":p, "grid":["t1",...,"tn"], "dims":[d0,...,d2n],
               "corrs":[[row,...], ...]}   corrs[q]: rows of length dims[q]+dims[q+1]
                                            spanning the relation between positions q and q+1.
               Position 2i-1 is the value t_i, position 2i the gap after it.
  diagram     {"grid":[...], "bars":[{"type":"[]"|"[>"|"<]"|"<>", "start":q0, "end":q1,
               "birth":"-2-", "death":"-1-", "mult":1}, ...]}   birth/death optional on input.
  undecorated {"points":[{"type":"[]", "birth":"0", "death":"2", "mult":1}, ...]}
  complex     {"field":p, "vertices":[{"id":0, "value":"-2"}, ...], "simplices":[[0,1],[0,1,2], ...]}
               dimension <= 2, every edge of a listed triangle listed.
  module2d    {"field":p, "xs":[...], "ys":[...], "dims":[[d(i,j) for j] for i],
               "hmaps":[[M(i,j): U(i,j)->U(i+1,j) for j] for i < len(xs)-1],
               "vmaps":[[M(i,j): U(i,j)->U(i,j+1) for j < len(ys)-1] for i]}
               matrices as row lists; off-grid points take the space below-left.
  line        --line "slope,intercept" with slope < 0, e.g. "-1/2,3"

Output: diagram JSON (or undecorated with --undecorated), bottleneck
{"distance", "matching"}, mv report {"table", "naturality", "cokernel", ...}.
--ascii prints a text barcode instead of JSON on stdout (JSON still goes to --out).
Exit codes: 0 ok, 2 invalid input, 3 internal invariant violation.)";

struct Options {
    std::string in, a, b, complex, module2d, line, out;
    int degree = 0;
    std::optional<std::uint32_t> field;
    bool undecorated = false, ascii = false;
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    require(f.good(), ErrorKind::InvalidInput, "cannot write " + path);
    f << text;
}

void emit(const Options& o, const json& j, const std::optional<std::string>& ascii = std::nullopt) {
    std::string text = j.dump(2) + "\n";
    if (!o.out.empty()) write_text(o.out, text);
    if (o.ascii && ascii)
        std::cout << *ascii;
    else if (o.out.empty())
        std::cout << text;
}

void emit_diagram(const Options& o, const DecoratedDiagram& d) {
    if (o.undecorated)
        emit(o, to_json(undecorate(d)), render_ascii(d));
    else
        emit(o, to_json(d), render_ascii(d));
}

PLComplex load_complex(const Options& o) {
    require(!o.complex.empty(), ErrorKind::InvalidInput, "--complex FILE is required");
    return complex_from_json(read_json_file(o.complex), o.field);
}

int run_decompose(const Options& o) {
    require(!o.in.empty(), ErrorKind::InvalidInput, "--in FILE is required");
    GridCModule m = module_from_json(read_json_file(o.in));
    if (o.field) require(m.field().p() == *o.field, ErrorKind::FieldMismatch, "--field differs from the module's field");
    DecoratedDiagram d = multiplicities(m);
    check_pointwise_dims(m, d);
    emit_diagram(o, d);
    return 0;
}

int run_bottleneck(const Options& o) {
    require(!o.a.empty() && !o.b.empty(), ErrorKind::InvalidInput, "--a FILE and --b FILE are required");
    UndecoratedDiagram a = undecorated_from_json(read_json_file(o.a));
    UndecoratedDiagram b = undecorated_from_json(read_json_file(o.b));
    auto r = bottleneck(a, b);
    emit(o, to_json(r, a, b), format_ext(r.distance) + "\n");
    return 0;
}

int run_filtration(const Options& o, const std::string& which) {
    require(o.degree == 0 || o.degree == 1, ErrorKind::InvalidInput, "--degree must be 0 or 1");
    PLComplex c = load_complex(o);
    GridCModule m = which == "levelset" ? levelset_cmodule(c, o.degree)
                    : which == "sublevel" ? sublevel_cmodule(c, o.degree)
                                          : superlevel_cmodule(c, o.degree);
    emit_diagram(o, multiplicities(m));
    return 0;
}

int run_mv(const Options& o) {
    MVReport r = mayer_vietoris(load_complex(o), 1);
    emit(o, to_json(r), render_ascii(r.cokernel_diagram));
    return 0;
}

int run_slice(const Options& o) {
    require(!o.module2d.empty(), ErrorKind::InvalidInput, "--module2d FILE is required");
    require(!o.line.empty(), ErrorKind::InvalidInput, "--line \"slope,intercept\" is required");
    GridModule2D m = module2d_from_json(read_json_file(o.module2d), o.field);
    emit_diagram(o, multiplicities(slice(m, parse_line(o.line))));
    return 0;
}

// Built-in smoke checks on small hand-computed cases.
int run_selftest() {
    auto check = [](bool ok, const std::string& what) {
        require(ok, ErrorKind::Internal, "selftest failed: " + what);
        std::cout << "ok " << what << "\n";
    };
    FieldSpec f(2);
    PLComplex fig4{f, {{0, -2}, {1, -2}, {2, -1}, {3, 0}, {4, 0}, {5, 1}, {6, 2}, {7, 2}},
                   {{0, 2}, {1, 2}, {2, 3}, {3, 5}, {2, 4}, {4, 5}, {5, 6}, {5, 7}}};
    auto d = multiplicities(levelset_cmodule(fig4, 0));
    DecoratedDiagram want{d.grid, {}};
    want.add({1, 2, BarType::CoOpen});
    want.add({8, 9, BarType::ContraOpen});
    want.add({4, 6, BarType::Open});
    want.add({1, 9, BarType::Closed});
    check(d == want, "two-strand levelset diagram");
    check(decompose_via_unfolding(levelset_cmodule(fig4, 0)) == d, "unfolding agrees");

    PLComplex circle{f, {{0, 0}, {1, 1}, {2, 2}}, {{0, 1}, {1, 2}, {0, 2}}};
    auto mv = mayer_vietoris(circle, 1);
    DecoratedDiagram open{mv.grid, {}};
    open.add({2, 4, BarType::Open});
    check(mv.cokernel_diagram == open, "circle Mayer-Vietoris cokernel");

    Mat one = Mat::identity(f, 1);
    GridModule2D rect(f, {0, 2}, {0, 2}, {{1, 0}, {0, 0}}, {{Mat(f, 0, 1), Mat(f, 0, 0)}}, {{Mat(f, 0, 1)}, {Mat(f, 0, 0)}});
    auto s = multiplicities(slice(rect, {Rational(-1, 2), Rational(5, 2)}));
    check(s.total() == 1 && s.mult.begin()->first.type == BarType::Open, "rectangle slice");

    UndecoratedDiagram u;
    u.add(BarType::Closed, {ExtReal(Rational(0)), ExtReal(Rational(4))});
    check(bottleneck(u, UndecoratedDiagram{}).distance == ExtReal(Rational(1)), "closed bar deletion cost");
    return 0;
}

std::string one_line(std::string s) {
    for (auto& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"c-module persistence: decompose, compare, levelset, Mayer-Vietoris, slices"};
    app.footer(kSchemas);
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--field", o.field, "prime field order (overrides the input's field for complexes and 2-D modules)");
        c->add_option("--out", o.out, "write JSON output to FILE");
        c->add_flag("--ascii", o.ascii, "print a text barcode on stdout");
    };
    auto* dec = app.add_subcommand("decompose", "interval decomposition of a module");
    dec->add_option("--in", o.in, "module JSON")->required();
    dec->add_flag("--undecorated", o.undecorated, "emit the undecorated diagram");
    add_common(dec);

    auto* bot = app.add_subcommand("bottleneck", "bottleneck distance between two diagrams");
    bot->add_option("--a", o.a, "diagram JSON (decorated or undecorated)")->required();
    bot->add_option("--b", o.b, "diagram JSON (decorated or undecorated)")->required();
    add_common(bot);

    std::vector<CLI::App*> filt;
    for (const char* name : {"levelset", "sublevel", "superlevel"}) {
        auto* c = app.add_subcommand(name, std::string(name) + " homology module of a PL function, decomposed");
        c->add_option("--complex", o.complex, "complex JSON")->required();
        c->add_option("--degree", o.degree, "homology degree, 0 or 1")->check(CLI::IsMember({0, 1}));
        c->add_flag("--undecorated", o.undecorated, "emit the undecorated diagram");
        add_common(c);
        filt.push_back(c);
    }

    auto* mv = app.add_subcommand("mv", "persistent Mayer-Vietoris report and coker(p1 - q1)");
    mv->add_option("--complex", o.complex, "complex JSON")->required();
    add_common(mv);

    auto* sl = app.add_subcommand("slice", "slice a 2-D grid module along a negative-slope line");
    sl->add_option("--module2d", o.module2d, "2-D module JSON")->required();
    sl->add_option("--line", o.line, "\"slope,intercept\"")->required();
    sl->add_flag("--undecorated", o.undecorated, "emit the undecorated diagram");
    add_common(sl);

    auto* st = app.add_subcommand("selftest", "run built-in checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: InvalidInput: " << one_line(e.what()) << "\n";
        return 2;
    }

    try {
        if (*dec) return run_decompose(o);
        if (*bot) return run_bottleneck(o);
        for (auto* c : filt)
            if (*c) return run_filtration(o, c->get_name());
        if (*mv) return run_mv(o);
        if (*sl) return run_slice(o);
        if (*st) return run_selftest();
    } catch (const Error& e) {
        std::cerr << "error: " << one_line(e.what()) << "\n";
        return is_internal(e.kind()) ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << one_line(e.what()) << "\n";
        return 3;
    }
    return 0;
}
