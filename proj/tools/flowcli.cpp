// flowcli: command line front end for the flows library.
#include <flows/flows.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <variant>

using namespace flows;

namespace {

struct Input {
    std::variant<Flow, VectorField> value;
    bool is_flow() const { return std::holds_alternative<Flow>(value); }
    const Flow& flow() const { return std::get<Flow>(value); }
};

std::string read_source(const std::string& arg)
{
    if (arg.empty() || arg[0] != '@')
        return arg;
    std::string path = arg.substr(1);
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string s = ss.str();
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
    return s;
}

Input parse_input(const std::string& arg)
{
    std::string src = read_source(arg);
    if (ExprParser::looks_like_flow(src))
        return {parse_flow(src)};
    return {parse_field(src)};
}

Scalar parse_rational(const std::string& s)
{
    RatFn e = parse_expr(s);
    if (!e.is_constant())
        throw ParseError("expected a rational constant", 1, 1);
    return e.constant_value();
}

VectorField field_of(const Input& in) { return in.is_flow() ? vector_field(in.flow()) : std::get<VectorField>(in.value); }

void emit(const json& j, bool as_json, const std::string& text)
{
    if (as_json)
        std::cout << j.dump(2) << '\n';
    else
        std::cout << text;
}

std::string report_text(const CanonicalizationResult& r)
{
    std::ostringstream os;
    json j = to_json(r);
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.value().is_null())
            continue;
        os << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << '\n';
    }
    return os.str();
}

bool needs_root(const CanonicalizationResult& r) { return r.verdict == Verdict::NeedsRationalRoot; }

CanonicalizationResult classify_input(const Input& in)
{
    return in.is_flow() ? canonicalize(in.flow()) : canonicalize_vf(std::get<VectorField>(in.value));
}

json zoo_check(const ZooEntry& e)
{
    json j;
    j["name"] = e.name;
    j["translation"] = verify_translation(e.flow);
    VectorField vf = vector_field(e.flow);
    j["vector_field"] = vf == e.vf;
    j["zeros_poles"] = zeros_poles(vf) == e.zeros_poles;
    CanonicalizationResult r = canonicalize(e.flow);
    j["level"] = r.verdict == Verdict::RationalFlow && r.level == e.level;
    j["orbit_W"] = r.orbit_W && *r.orbit_W == e.orbit_W;
    bool coords = true;
    if (e.phat)
        coords = r.phat && *r.phat == *e.phat;
    if (e.p2)
        coords = r.pN && *r.pN == *e.p2;
    j["coords"] = coords;
    bool ok = true;
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.value().is_boolean() && !it.value().get<bool>())
            ok = false;
    j["ok"] = ok;
    if (!e.note.empty())
        j["note"] = e.note;
    return j;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact classification of rational projective flows in the plane"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit JSON");

    std::string input;
    auto add_input = [&](CLI::App* sc) {
        sc->add_option("input", input, "flow \"u = ...; v = ...\", vector field \"(w, r)\", or @file")->required();
    };

    auto* c_parse = app.add_subcommand("parse", "parse and print the normalized input");
    add_input(c_parse);
    auto* c_verify = app.add_subcommand("verify", "check the boundary condition, translation equation and PDE");
    add_input(c_verify);
    auto* c_vf = app.add_subcommand("vf", "vector field and zeros-poles count");
    add_input(c_vf);
    auto* c_level = app.add_subcommand("level", "level of the vector field");
    add_input(c_level);

    auto* c_classify = app.add_subcommand("classify", "canonicalize and report");
    add_input(c_classify);
    bool timings = false;
    c_classify->add_flag("--timings", timings, "include wall-clock timings (breaks byte-identical output)");

    auto* c_orbit = app.add_subcommand("orbit", "sample an orbit curve and the vector field");
    add_input(c_orbit);
    std::vector<std::string> point, range{"-2", "2"};
    std::string value, csv_path, svg_path;
    int grid = 40;
    c_orbit->add_option("--point", point, "base point x0 y0 (rationals)")->expected(2);
    c_orbit->add_option("--value", value, "orbit level W = c (rational)");
    c_orbit->add_option("--range", range, "square window [a, b]")->expected(2);
    c_orbit->add_option("--grid", grid, "cells per side")->check(CLI::Range(1, 2000));
    c_orbit->add_option("--csv", csv_path, "write curve samples as CSV (- for stdout)");
    c_orbit->add_option("--svg", svg_path, "write an SVG document (- for stdout)");

    auto* c_series = app.add_subcommand("series", "jets and diagonal coefficients");
    add_input(c_series);
    int order = 8;
    std::vector<std::string> dir{"1", "1"};
    c_series->add_option("--order", order, "jet order K")->check(CLI::Range(1, 200));
    c_series->add_option("--dir", dir, "direction dx dy")->expected(2);

    auto* c_zoo = app.add_subcommand("zoo", "list the catalogue, or check it against the library");
    std::string zoo_name;
    int zoo_N = 2;
    bool zoo_check_flag = false;
    c_zoo->add_option("name", zoo_name, "entry name, or phi_N with --N");
    c_zoo->add_option("--N", zoo_N, "level for phi_N");
    c_zoo->add_flag("--check", zoo_check_flag, "verify every row");

    auto* c_sym = app.add_subcommand("symmetric", "symmetric flows");
    std::string kind = "phi";
    int sym_N = 1;
    c_sym->add_option("--kind", kind, "phi, phi_prime, tor1 or psi")
        ->check(CLI::IsMember({"phi", "phi_prime", "tor1", "psi"}));
    c_sym->add_option("--N", sym_N, "index N");

    auto* c_dual = app.add_subcommand("dual", "dual of a flow of level >= 2");
    add_input(c_dual);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (c_parse->parsed()) {
            Input in = parse_input(input);
            std::string s = in.is_flow() ? print_flow(in.flow()) : print_field(std::get<VectorField>(in.value));
            emit({{"kind", in.is_flow() ? "flow" : "vector_field"}, {"text", s}}, as_json, s + "\n");
        } else if (c_verify->parsed()) {
            Input in = parse_input(input);
            if (!in.is_flow())
                throw FlowError("verify needs a flow");
            bool b = check_boundary(in.flow());
            bool t = b && verify_translation(in.flow());
            bool p = b && verify_pde(in.flow());
            std::ostringstream os;
            os << "boundary: " << b << "\ntranslation: " << t << "\npde: " << p << '\n';
            emit({{"boundary", b}, {"translation", t}, {"pde", p}}, as_json, os.str());
        } else if (c_vf->parsed()) {
            Input in = parse_input(input);
            VectorField vf = field_of(in);
            ZerosPoles zp = zeros_poles(vf);
            std::ostringstream os;
            os << vf.to_string() << "\nzeros-poles: " << zp.zeros << "-" << zp.poles << '\n';
            emit({{"vector_field", to_json(vf)}, {"zeros_poles", json::array({zp.zeros, zp.poles})}}, as_json,
                 os.str());
        } else if (c_level->parsed()) {
            Input in = parse_input(input);
            json j = level_json(level_of(field_of(in)));
            std::string text = j["tag"].get<std::string>();
            if (j.contains("N"))
                text += " " + std::to_string(j["N"].get<int>());
            if (j.contains("value"))
                text += " " + j["value"].get<std::string>();
            emit(j, as_json, text + "\n");
        } else if (c_classify->parsed()) {
            auto t0 = std::chrono::steady_clock::now();
            Input in = parse_input(input);
            auto t1 = std::chrono::steady_clock::now();
            CanonicalizationResult r = classify_input(in);
            auto t2 = std::chrono::steady_clock::now();
            json j = to_json(r);
            if (timings) {
                using ms = std::chrono::duration<double, std::milli>;
                j["timings"] = {{"parse_ms", ms(t1 - t0).count()}, {"classify_ms", ms(t2 - t1).count()}};
            }
            emit(j, as_json, report_text(r));
            if (needs_root(r))
                return 4;
        } else if (c_orbit->parsed()) {
            Input in = parse_input(input);
            Scalar lo = parse_rational(range[0]), hi = parse_rational(range[1]);
            if (!(lo < hi))
                throw FlowError("empty range");
            OrbitPlot plot;
            plot.lo = lo;
            plot.hi = hi;
            plot.grid = grid;
            VectorField vf;
            if (in.is_flow() && in.flow() == Flow::identity()) {
                // every point is fixed: the orbit is the point itself
                if (point.size() != 2)
                    throw FlowError("identity flow: --point is required");
            } else {
                CanonicalizationResult r = classify_input(in);
                if (needs_root(r)) {
                    std::cout << report_text(r);
                    return 4;
                }
                if (!r.orbit_W)
                    throw FlowError("no rational orbit invariant for verdict " + to_string(r.verdict));
                vf = *r.vf;
                std::optional<Scalar> c;
                if (!value.empty()) {
                    c = parse_rational(value);
                } else if (point.size() == 2) {
                    c = (*r.orbit_W)(parse_rational(point[0]), parse_rational(point[1]));
                } else {
                    throw FlowError("orbit needs --point or --value");
                }
                plot = sample_orbit(*r.orbit_W, c, lo, hi, grid);
            }
            if (point.size() == 2)
                plot.marker = PlotPoint{parse_rational(point[0]), parse_rational(point[1])};
            auto write = [](const std::string& path, const std::string& body) {
                if (path == "-") {
                    std::cout << body;
                    return;
                }
                std::ofstream out(path);
                if (!out)
                    throw std::runtime_error("cannot write " + path);
                out << body;
            };
            std::string title = in.is_flow() ? print_flow(in.flow()) : print_field(vf);
            if (!csv_path.empty())
                write(csv_path, orbit_csv(plot, vf));
            if (!svg_path.empty())
                write(svg_path, orbit_svg(plot, vf, title));
            if (csv_path.empty() && svg_path.empty()) {
                json j = {{"level_value", plot.level_value ? json(plot.level_value->get_str()) : json(nullptr)},
                          {"segments", plot.segments.size()}};
                emit(j, as_json, orbit_csv(plot, vf));
            }
        } else if (c_series->parsed()) {
            Input in = parse_input(input);
            JetTable jets = in.is_flow() ? expand_flow(in.flow(), order) : expand_from_vf(field_of(in), order);
            Scalar dx = parse_rational(dir[0]), dy = parse_rational(dir[1]);
            std::vector<Scalar> diag = diagonal_series(jets, dx, dy);
            PrimeReport pr = prime_growth_diagnostic(diag);
            json coeffs = json::array();
            for (const auto& c : diag)
                coeffs.push_back(c.get_str());
            json j = {{"jets", jets_json(jets)},
                      {"direction", json::array({dx.get_str(), dy.get_str()})},
                      {"diagonal", coeffs},
                      {"denominator_primes_growing", pr.growing}};
            std::ostringstream os;
            for (int i = 1; i <= jets.order; ++i)
                os << "[" << i << "] " << jets.u_parts[i].to_string() << " | " << jets.v_parts[i].to_string() << '\n';
            os << "diagonal:";
            for (const auto& c : diag)
                os << ' ' << c.get_str();
            os << '\n';
            emit(j, as_json, os.str());
        } else if (c_zoo->parsed()) {
            if (zoo_check_flag) {
                std::vector<std::future<json>> tasks;
                for (const auto& e : zoo())
                    tasks.push_back(std::async(std::launch::async, [&e] { return zoo_check(e); }));
                json rows = json::array();
                bool all = true;
                std::ostringstream os;
                for (auto& t : tasks) {
                    json r = t.get();
                    all = all && r["ok"].get<bool>();
                    os << (r["ok"].get<bool>() ? "ok   " : "FAIL ") << r["name"].get<std::string>() << '\n';
                    rows.push_back(std::move(r));
                }
                emit(rows, as_json, os.str());
                return all ? 0 : 1;
            }
            json rows = json::array();
            std::ostringstream os;
            auto describe = [&](const ZooEntry& e) {
                json r = {{"name", e.name}, {"flow", print_flow(e.flow)}, {"level", e.level},
                          {"orbit_W", e.orbit_W.to_string()}, {"vector_field", to_json(e.vf)},
                          {"zeros_poles", json::array({e.zeros_poles.zeros, e.zeros_poles.poles})}};
                if (e.phat)
                    r["p_hat"] = e.phat->to_string();
                if (e.p2)
                    r["p_2"] = json::array({e.p2->X.get_str(), e.p2->Y.get_str(), e.p2->Z.get_str()});
                if (!e.note.empty())
                    r["note"] = e.note;
                os << e.name << " [level " << e.level << "]: " << print_flow(e.flow) << '\n';
                rows.push_back(r);
            };
            if (!zoo_name.empty()) {
                auto e = zoo_lookup(zoo_name, zoo_N);
                if (!e)
                    throw FlowError("no zoo entry named " + zoo_name);
                describe(*e);
                emit(rows[0], as_json, os.str());
            } else {
                for (const auto& e : zoo())
                    describe(e);
                emit(rows, as_json, os.str());
            }
        } else if (c_sym->parsed()) {
            SymmetricKind k = kind == "phi" ? SymmetricKind::Phi
                              : kind == "phi_prime" ? SymmetricKind::PhiPrime
                              : kind == "tor1"      ? SymmetricKind::Tor1
                                                    : SymmetricKind::Psi;
            Flow f = symmetric_family(sym_N, k);
            bool sym = is_i0_symmetric(f), tr = verify_translation(f);
            std::ostringstream os;
            os << print_flow(f) << "\nsymmetric: " << sym << "\ntranslation: " << tr << '\n';
            emit({{"flow", print_flow(f)}, {"symmetric", sym}, {"translation", tr}}, as_json, os.str());
        } else if (c_dual->parsed()) {
            Input in = parse_input(input);
            if (!in.is_flow())
                throw FlowError("dual needs a flow");
            Flow d = dual(in.flow());
            emit({{"flow", print_flow(d)}}, as_json, print_flow(d) + "\n");
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const IdenticallySingular& e) {
        std::cerr << "identically singular: " << e.what() << '\n';
        return 3;
    } catch (const NeedsRationalRoot& e) {
        std::cerr << "needs a rational root: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
