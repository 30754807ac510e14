#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sslab/acceptance.hpp"
#include "sslab/analyze.hpp"
#include "sslab/catalog.hpp"
#include "sslab/errors.hpp"
#include "sslab/locus.hpp"
#include "sslab/mesh.hpp"

using namespace sslab;

namespace {

std::vector<double> split_numbers(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParamError("not a number: '" + item + "'");
        }
    }
    return out;
}

// rect:x0,y0,x1,y1 | annulus:rmin,rmax | disc:r
Window parse_window(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ParamError("window needs a shape prefix: rect:, annulus: or disc:");
    std::string shape = text.substr(0, colon);
    std::vector<double> v = split_numbers(text.substr(colon + 1));
    if (shape == "rect" && v.size() == 4) return Window::rect({v[0], v[1]}, {v[2], v[3]});
    if (shape == "annulus" && v.size() == 2) return Window::annulus(v[0], v[1]);
    if (shape == "disc" && v.size() == 1) return Window::disc(v[0]);
    throw ParamError("malformed window '" + text + "'");
}

struct EntryArgs {
    std::string name;
    std::string data_path;
    std::vector<std::string> params;

    void attach(CLI::App* app) {
        app->add_option("name", name, "catalog entry");
        app->add_option("--data", data_path, "Weierstrass data file instead of a catalog entry");
        app->add_option("--param,-p", params, "entry parameter k=v (repeatable)");
    }

    CatalogEntry resolve() const {
        if (!data_path.empty()) {
            if (!name.empty() || !params.empty()) throw ParamError("--data excludes an entry name and --param");
            WeierstrassData d = load_wdata(data_path);
            return CatalogEntry{d.label(), d, std::nullopt, "data file " + data_path, {}};
        }
        if (name.empty()) throw ParamError("an entry name or --data is required");
        Params p;
        for (const auto& a : params) p.parse_assignment(a);
        return make_entry(name, p);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weierstrass data laboratory for stationary surfaces in Lorentz 4-space"};
    app.require_subcommand(1);
    std::string config;
    app.add_option("--config", config, "settings file (key = value); SSLAB_CONFIG takes precedence");

    auto* cat = app.add_subcommand("catalog", "catalog entries");
    auto* cat_list = cat->add_subcommand("list", "names, parameters and citations");
    cat->require_subcommand(1);

    EntryArgs an_args;
    bool an_kv = false, an_no_area = false, an_no_mesh = false;
    auto* an = app.add_subcommand("analyze", "full report against the expected record");
    an_args.attach(an);
    an->add_flag("--kv", an_kv, "flat key=value output");
    an->add_flag("--no-area", an_no_area, "skip the area total-curvature method");
    an->add_flag("--no-mesh", an_no_mesh, "skip the self-intersection scan");

    EntryArgs me_args;
    int me_res = 0, me_sheets = 1;
    std::string me_proj = "drop-x4", me_out;
    bool me_scan = false;
    auto* me = app.add_subcommand("mesh", "sample, export and optionally scan a mesh");
    me_args.attach(me);
    me->add_option("--res", me_res, "vertices per axis (default: mesh_res)");
    me->add_option("--sheets", me_sheets, "sheets of an annulus chart")->check(CLI::PositiveNumber);
    me->add_option("--proj", me_proj, "drop-x1..4, slice-xk=c");
    me->add_option("--out", me_out, "output path (.obj or .ply)");
    me->add_flag("--scan", me_scan, "report self-intersections");

    EntryArgs lo_args;
    std::string lo_window;
    int lo_grid = 0;
    auto* lo = app.add_subcommand("locus", "CSV of solutions of phi = conj psi");
    lo_args.attach(lo);
    lo->add_option("--window", lo_window, "rect:x0,y0,x1,y1 | annulus:rmin,rmax | disc:r");
    lo->add_option("--grid", lo_grid, "grid size (default: locus_grid)");

    int fp_m = 1;
    std::string fp_a = "0.5,0";
    auto* fp = app.add_subcommand("scan-4pi", "locus of the total-curvature -4pi family");
    fp->add_option("--m", fp_m, "exponent m >= 0");
    fp->add_option("--a", fp_a, "parameter a as RE,IM");

    std::vector<int> ve_only;
    bool ve_kv = false;
    auto* ve = app.add_subcommand("verify", "run the acceptance criteria");
    ve->add_option("--only", ve_only, "criterion numbers");
    ve->add_flag("--kv", ve_kv, "flat key=value summary");

    CLI11_PARSE(app, argc, argv);

    try {
        Settings s = settings_from_environment(config);

        if (cat_list->parsed()) {
            for (const auto& e : list_entries())
                std::cout << e.name << "\n  params: " << e.params << "\n  " << e.citation << "\n";
            return 0;
        }

        if (an->parsed()) {
            AnalyzeOptions opt;
            opt.area = !an_no_area;
            opt.mesh = !an_no_mesh;
            AnalysisReport r = analyze(an_args.resolve(), s, opt);
            std::cout << (an_kv ? format_kv(r) : format_text(r));
            return r.pass() ? 0 : 1;
        }

        if (me->parsed()) {
            CatalogEntry e = me_args.resolve();
            int res = me_res > 0 ? me_res : s.mesh_res;
            SurfaceMesh m = sample_mesh(e.data, default_chart(e.data, res, s, me_sheets), s);
            std::cout << "chart " << m.chart.str() << "\n";
            int valid = 0;
            for (char v : m.valid) valid += v ? 1 : 0;
            std::cout << "vertices " << valid << "/" << m.valid.size() << ", faces " << m.faces.size() << "\n";
            std::cout << "isometry defect " << isometry_defect(m) << "\n";
            for (const auto& cut : m.cuts) {
                if (m.periodic) break;
                const Vec4& o = cut.per_turn;
                std::printf("cut offset per turn (%.12g, %.12g, %.12g, %.12g)\n", o(0), o(1), o(2), o(3));
            }
            if (!me_out.empty()) {
                export_mesh(m, me_proj, me_out);
                std::cout << "wrote " << me_out << " (" << me_proj << ")\n";
            }
            if (me_scan) {
                IntersectionReport r = self_intersection_scan(e.data, m, true, s);
                std::cout << "self-intersections " << r.clusters.size() << " (candidates " << r.candidates
                          << ", newton runs " << r.newton_runs << ")\n";
                for (size_t i = 0; i < r.clusters.size(); ++i) {
                    const auto& c = r.clusters[i];
                    std::cout << "  cluster " << i << ": residual " << c.residual << ", preimages";
                    for (Complex z : c.preimages) std::cout << " " << format_complex(z);
                    std::cout << "\n";
                }
            }
            return 0;
        }

        if (lo->parsed()) {
            CatalogEntry e = lo_args.resolve();
            Window w = lo_window.empty() ? default_window(e.data, s) : parse_window(lo_window);
            LocusFinding f = scan(e.data, w, lo_grid > 0 ? lo_grid : s.locus_grid, s);
            std::cout << "# " << e.name << " " << to_string(f.kind) << " in " << w.str() << "\n" << locus_csv(f);
            return 0;
        }

        if (fp->parsed()) {
            std::vector<double> a = split_numbers(fp_a);
            if (a.size() != 2) throw ParamError("--a expects RE,IM");
            if (fp_m < 0) throw ParamError("--m must be >= 0");
            LocusFinding f = fourpi_scan(fp_m, {a[0], a[1]}, s);
            std::cout << "# m=" << fp_m << " a=" << format_complex({a[0], a[1]}) << " " << to_string(f.kind) << "\n"
                      << locus_csv(f);
            return 0;
        }

        if (ve->parsed()) {
            AcceptanceReport r = run_acceptance(s, ve_only, ve_kv ? nullptr : &std::cout);
            if (ve_kv) {
                std::cout << format_acceptance_kv(r);
            } else {
                int passed = 0;
                for (const auto& c : r.results) passed += c.pass ? 1 : 0;
                std::cout << passed << "/" << r.results.size() << " criteria passed\n";
            }
            return r.pass() ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
