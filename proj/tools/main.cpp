// nash-atlas: command-line front end. Parses inputs, dispatches to the
// library, emits machine-readable verification reports and point clouds.
//
// Exit codes: 0 all checks pass, 1 check failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nashatlas/report.hpp"
#include "nashatlas/suite.hpp"

namespace na = nashatlas;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 42;
    std::string json_path;
    double tol = 0.0;
    std::string cloud_path;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw na::IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int finish(const std::vector<na::VerificationReport>& reports, const GlobalOpts& g) {
    nlohmann::json arr = na::to_json(reports);
    if (!g.json_path.empty()) {
        std::ofstream out(g.json_path);
        out << arr.dump(2) << "\n";
    } else {
        for (const auto& item : arr)
            std::cout << (item["status"] == "pass" ? "PASS" : "FAIL") << "  " << item["check"].get<std::string>()
                      << "  max_error=" << item["max_error"].dump() << " tol=" << item["tolerance"].dump()
                      << (item["citation"].get<std::string>().empty()
                              ? ""
                              : "  [" + item["citation"].get<std::string>() + "]")
                      << "\n";
    }
    for (const auto& r : reports)
        if (!r.passed()) return 1;
    return 0;
}

na::VerificationReport adhoc(const std::string& check, const std::string& citation, double err, double tol,
                             std::uint64_t samples, const GlobalOpts& g, const na::Stopwatch& sw,
                             bool ok = true) {
    na::SuiteOptions so;
    so.seed = g.seed;
    so.tol_override = g.tol;
    return na::detail::make_report(check, citation, err, tol, samples, so, sw, ok);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nash-atlas: explicit Nash-map constructions with verification"};
    app.require_subcommand(1);

    GlobalOpts g;
    if (const char* env = std::getenv("NASH_ATLAS_SEED")) g.seed = std::strtoull(env, nullptr, 10);
    app.add_option("--seed", g.seed, "PRNG seed (env NASH_ATLAS_SEED as fallback)");
    app.add_option("--json", g.json_path, "write reports as JSON to this path");
    app.add_option("--tol", g.tol, "override per-check tolerances");
    app.add_option("--emit-cloud", g.cloud_path, "write sampled points as CSV");

    // catalog ---------------------------------------------------------------
    auto* cat = app.add_subcommand("catalog", "1-dimensional map catalog");
    auto* cat_list = cat->add_subcommand("list", "print map names with citations");
    std::string cat_name;
    auto* cat_verify = cat->add_subcommand("verify", "verify one catalog map");
    cat_verify->add_option("name", cat_name, "map name")->required();

    // double ----------------------------------------------------------------
    auto* dbl = app.add_subcommand("double", "Nash double checks");
    std::string dbl_model = "interval", dbl_check = "fiber";
    dbl->add_option("--model", dbl_model, "interval|halfspace|disk")->required();
    dbl->add_option("--check", dbl_check, "fiber|square|onto")->required();

    // drill -----------------------------------------------------------------
    auto* drl = app.add_subcommand("drill", "drilling blow-up checks");
    std::string drl_spec, drl_check;
    drl->add_option("--spec", drl_spec, "center spec file")->required();
    drl->add_option("--check", drl_check, "phi|fiber|localrep|generators|classical|erase")->required();

    // simplex ---------------------------------------------------------------
    auto* spx = app.add_subcommand("simplex", "exact simplicial operations");
    std::string spx_op, spx_file, spx_facets = "0";
    spx->add_option("op", spx_op, "erase|subdivide|order")->required();
    spx->add_option("file", spx_file, "simplex file")->required();
    spx->add_option("--facets", spx_facets, "comma-separated facet indices (subdivide)");

    // weld ------------------------------------------------------------------
    auto* wld = app.add_subcommand("weld", "orthant welding engine");
    std::string wld_orthants;
    wld->add_option("--orthants", wld_orthants, "sign strings, e.g. \"++,--\"")->required();

    // sample ----------------------------------------------------------------
    auto* smp = app.add_subcommand("sample", "rejection-sample a semialgebraic set");
    std::string smp_file, smp_box;
    std::size_t smp_n = 1000;
    smp->add_option("--set", smp_file, "set description file")->required();
    smp->add_option("--box", smp_box, "bounding box lo,hi;lo,hi;... (default [-1,1]^d)");
    smp->add_option("--n", smp_n, "requested number of accepted points");

    // suite -----------------------------------------------------------------
    auto* sui = app.add_subcommand("suite", "acceptance checks");
    bool sui_all = false;
    sui->add_flag("--all", sui_all, "run every acceptance check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11 prints its own message; collapse every usage problem to 2
        std::ostringstream dummy;
        app.exit(e, dummy, dummy);
        std::cerr << (e.get_name() == "CallForHelp" ? dummy.str() : dummy.str());
        return e.get_name() == "CallForHelp" ? 0 : 2;
    }

    na::SuiteOptions so;
    so.seed = g.seed;
    so.tol_override = g.tol;

    try {
        std::vector<na::VerificationReport> reports;

        if (cat_list->parsed()) {
            for (const auto& name : na::catalog_names()) {
                na::NamedMap m = na::make(name);
                std::cout << name << "  [" << m.citation << "]\n";
            }
            return 0;
        }
        if (cat_verify->parsed()) {
            na::NamedMap m = na::make(cat_name);
            if (m.piecewise()) {
                na::Stopwatch sw;
                na::C2Report rep = na::verify_c2(m);
                bool exact = rep.monotone;
                for (const auto& k : rep.knots)
                    exact = exact && k.value_gap == 0 && k.d1_gap == 0 && k.d2_gap == 0;
                reports.push_back(adhoc("catalog." + cat_name + ".c2", m.citation, rep.max_knot_gap, 0.0,
                                        10000, g, sw, exact));
            }
            na::Stopwatch sw;
            na::ImageReport rep = na::verify_image(m, 1000, g.seed, 1000, 1e-8);
            reports.push_back(adhoc("catalog." + cat_name + ".image", m.citation, rep.max_residual, 1e-8,
                                    rep.grid, g, sw, rep.pass()));
            return finish(reports, g);
        }

        if (dbl->parsed()) {
            na::ModelKind kind;
            if (dbl_model == "interval") kind = na::ModelKind::Interval;
            else if (dbl_model == "halfspace") kind = na::ModelKind::HalfSpace;
            else if (dbl_model == "disk") kind = na::ModelKind::Disk;
            else {
                std::cerr << "unknown model '" << dbl_model << "'\n";
                return 2;
            }
            na::BoundedModel model = na::make_model(kind);
            na::DoubleModel dm = na::nash_double(model, g.seed);
            std::vector<double> bp = kind == na::ModelKind::Interval ? std::vector<double>{0.0}
                                     : kind == na::ModelKind::HalfSpace
                                         ? std::vector<double>{0.0, 0.5}
                                         : std::vector<double>{1.0, 0.0};
            if (dbl_check == "fiber") {
                na::Stopwatch sw;
                na::SplitMix64 rng(g.seed);
                double max_err = 0.0;
                bool ok = true;
                std::vector<std::vector<double>> cloud;
                int found = 0;
                for (int s = 0; s < 5000 && found < 100; ++s) {
                    std::vector<double> x(model.dim);
                    for (int i = 0; i < model.dim; ++i)
                        x[i] = rng.uniform(model.chart_box.lo_d(i), model.chart_box.hi_d(i));
                    if (!model.interior_contains(x)) continue;
                    ++found;
                    auto fib = na::fiber(dm, x);
                    ok = ok && fib.size() == 2;
                    for (auto& p : fib) {
                        max_err = std::max(max_err, dm.defect(p));
                        cloud.push_back(p);
                    }
                }
                ok = ok && na::fiber(dm, bp).size() == 1;
                if (!g.cloud_path.empty()) {
                    auto names = na::coordinate_names("x", model.dim);
                    names.push_back("t");
                    na::emit_cloud(cloud, names, g.cloud_path);
                }
                reports.push_back(adhoc("double." + dbl_model + ".fiber", "4.5-4.8", max_err, 1e-9,
                                        found, g, sw, ok));
            } else if (dbl_check == "square") {
                na::Stopwatch sw;
                auto rep = na::verify_local_square(dm, bp, g.tol > 0 ? g.tol : 1e-6, g.seed, 100);
                reports.push_back(adhoc("double." + dbl_model + ".square_chart", "4.6(iii)", rep.max_error,
                                        1e-6, rep.samples, g, sw));
            } else if (dbl_check == "onto") {
                na::Stopwatch sw;
                na::InteriorOnto onto(model);
                auto rep = onto.probe(1000, g.tol > 0 ? g.tol : 1e-6);
                reports.push_back(adhoc("double." + dbl_model + ".onto", "Prop. 4.1", rep.max_residual,
                                        1e-6, rep.grid, g, sw, rep.boundary_residual <= 1e-6));
            } else {
                std::cerr << "unknown check '" << dbl_check << "'\n";
                return 2;
            }
            return finish(reports, g);
        }

        if (drl->parsed()) {
            na::CenterSpec spec = na::parse_center_spec(slurp(drl_spec));
            na::validate_spec(spec, g.seed);
            na::SplitMix64 rng(g.seed);
            if (!g.cloud_path.empty()) {
                std::vector<std::vector<double>> cloud;
                for (int s = 0; s < 500; ++s) {
                    std::vector<double> y(spec.e);
                    for (int i = 0; i < spec.e; ++i) y[i] = rng.uniform(-2.0, 2.0);
                    double rho = rng.uniform(-2.0, 2.0);
                    auto w = rng.sphere(spec.normal_dim());
                    na::DrillPoint p = na::phi(spec, y, rho, w);
                    auto row = p.base;
                    row.insert(row.end(), p.dir.begin(), p.dir.end());
                    cloud.push_back(std::move(row));
                }
                auto names = na::coordinate_names("x", spec.d);
                for (auto& n : na::coordinate_names("w", spec.k)) names.push_back(n);
                na::emit_cloud(cloud, names, g.cloud_path);
            }
            na::Stopwatch sw;
            if (drl_check == "phi") {
                double max_err = 0.0;
                const int n = 1000;
                for (int s = 0; s < n; ++s) {
                    std::vector<double> y(spec.e);
                    for (int i = 0; i < spec.e; ++i) y[i] = rng.uniform(-2.0, 2.0);
                    double rho = rng.uniform(-2.0, 2.0);
                    auto w = rng.sphere(spec.normal_dim());
                    na::DrillPoint p = na::phi(spec, y, rho, w);
                    double norm = 0.0;
                    for (double c : p.dir) norm += c * c;
                    max_err = std::max(max_err, std::abs(std::sqrt(norm) - 1.0));
                    na::ChartTriple t = na::psi0(spec, p);
                    na::DrillPoint p2 = na::phi(spec, t.y, t.rho, t.w);
                    for (int i = 0; i < spec.d; ++i) max_err = std::max(max_err, std::abs(p2.base[i] - p.base[i]));
                    for (int l = 0; l < spec.k; ++l) max_err = std::max(max_err, std::abs(p2.dir[l] - p.dir[l]));
                }
                reports.push_back(adhoc("drill.phi", "5.1, eq. (psi0)", max_err, 1e-9, n, g, sw));
            } else if (drl_check == "fiber") {
                double max_err = 0.0;
                const int n = 200;
                std::vector<double> q(spec.d, 0.0);
                for (int i = 0; i < spec.e; ++i) q[i] = rng.uniform(-2.0, 2.0);
                na::FiberSphere fs = na::fiber_over(spec, q);
                for (int s = 0; s < n; ++s) {
                    auto w = rng.sphere(spec.normal_dim());
                    auto img = fs(w);
                    double norm = 0.0;
                    for (double c : img) norm += c * c;
                    max_err = std::max(max_err, std::abs(std::sqrt(norm) - 1.0));
                    max_err = std::max(max_err, fs.span_residual(w));
                }
                reports.push_back(adhoc("drill.fiber", "5.4(iii)", max_err, 1e-9, n, g, sw));
            } else if (drl_check == "localrep") {
                std::vector<double> p(spec.d, 0.0);
                auto rep = na::local_rep_check(spec, p, g.tol > 0 ? g.tol : 1e-6, g.seed, 100);
                reports.push_back(adhoc("drill.localrep", "eq. (lr), 5.5",
                                        std::max(rep.max_error, rep.transversality_error), 1e-6,
                                        rep.samples, g, sw));
            } else if (drl_check == "generators") {
                if (!spec.generator_form) {
                    std::cerr << "generators check needs a generator-form spec\n";
                    return 2;
                }
                std::vector<na::Polynomial> gcoef(spec.k, na::Polynomial::constant(spec.d, na::Rat(1)));
                na::GeneratorChange gc = na::change_generators(spec, gcoef);
                double max_err = 0.0;
                const int n = 1000;
                for (int s = 0; s < n; ++s) {
                    std::vector<double> x(spec.d);
                    for (int i = 0; i < spec.d; ++i) x[i] = rng.uniform(-2.0, 2.0);
                    double off = 0.0;
                    for (int j = spec.e; j < spec.d; ++j) off += x[j] * x[j];
                    if (off < 0.01) continue;
                    auto F = na::gauss(spec, x);
                    na::DrillPoint p(x, F);
                    na::DrillPoint moved = gc.theta(p);
                    auto Fp = na::gauss(gc.extended, x);
                    for (int l = 0; l < gc.extended.k; ++l)
                        max_err = std::max(max_err, std::abs(moved.dir[l] - Fp[l]));
                    na::DrillPoint back = gc.psi(moved);
                    for (int l = 0; l < spec.k; ++l)
                        max_err = std::max(max_err, std::abs(back.dir[l] - p.dir[l]));
                }
                reports.push_back(adhoc("drill.generators", "5.9, eq. (unicden)", max_err, 1e-9, n, g, sw));
            } else if (drl_check == "classical") {
                bool ok = true;
                const int n = 1000;
                for (int s = 0; s < n; ++s) {
                    std::vector<double> x(spec.d);
                    for (int i = 0; i < spec.d; ++i) x[i] = rng.uniform(-2.0, 2.0);
                    auto w = rng.sphere(spec.k);
                    na::DrillPoint p(x, w);
                    auto wneg = w;
                    for (double& c : wneg) c = -c;
                    ok = ok && (na::classical_compare(spec, p) == na::classical_compare(spec, na::DrillPoint(x, wneg)));
                }
                reports.push_back(adhoc("drill.classical", "Cor. 5.14", ok ? 0.0 : 1.0, 0.0, n, g, sw, ok));
            } else if (drl_check == "erase") {
                na::EraseMap er(spec.d, spec.e);
                auto rep = na::erase_probe(er, g.tol > 0 ? g.tol : 1e-6);
                reports.push_back(adhoc("drill.erase", "Cor. 5.13", rep.max_residual, 1e-6, rep.grid, g, sw));
            } else {
                std::cerr << "unknown check '" << drl_check << "'\n";
                return 2;
            }
            return finish(reports, g);
        }

        if (spx->parsed()) {
            auto simplices = na::parse_simplices(slurp(spx_file));
            na::Stopwatch sw;
            if (spx_op == "erase") {
                if (simplices.size() != 2) {
                    std::cerr << "erase needs exactly two simplices\n";
                    return 2;
                }
                na::EraseHomeo eh = na::erase_homeo(simplices[0], simplices[1]);
                bool ok = eh.forward.consistent() && eh.inverse.consistent() &&
                          eh.forward.apply(eh.tau.barycenter()) == eh.v1;
                reports.push_back(adhoc("simplex.erase", "Lem. 6.4", ok ? 0.0 : 1.0, 0.0,
                                        eh.forward.cells.size(), g, sw, ok));
            } else if (spx_op == "subdivide") {
                if (simplices.size() != 1) {
                    std::cerr << "subdivide needs exactly one simplex\n";
                    return 2;
                }
                std::vector<int> facets;
                std::stringstream fs(spx_facets);
                std::string tok;
                while (std::getline(fs, tok, ',')) facets.push_back(std::stoi(tok));
                auto pieces = na::subdivide(simplices[0], facets);
                for (const auto& piece : pieces) {
                    std::ostringstream line;
                    for (std::size_t v = 0; v < piece.verts.size(); ++v) {
                        if (v) line << "; ";
                        line << "(";
                        for (std::size_t c = 0; c < piece.verts[v].size(); ++c) {
                            if (c) line << ", ";
                            line << piece.verts[v][c].str();
                        }
                        line << ")";
                    }
                    std::cout << line.str() << "\n";
                }
                reports.push_back(adhoc("simplex.subdivide", "Lem. 6.5", 0.0, 0.0, pieces.size(), g, sw));
            } else if (spx_op == "order") {
                na::Complex K(simplices);
                auto order = na::order_d_simplices(K);
                for (std::size_t i = 0; i < order.size(); ++i)
                    std::cout << (i ? " " : "") << order[i];
                std::cout << "\n";
                bool ok = na::valid_order(K, order);
                reports.push_back(adhoc("simplex.order", "6.3.2", ok ? 0.0 : 1.0, 0.0, order.size(), g,
                                        sw, ok));
            } else {
                std::cerr << "unknown simplex op '" << spx_op << "'\n";
                return 2;
            }
            return finish(reports, g);
        }

        if (wld->parsed()) {
            na::Stopwatch sw;
            na::OrthantSet F = na::parse_orthants(wld_orthants);
            na::WeldResult res = na::weld_sequence(F);
            nlohmann::json j{{"components", na::reg_component_count(F)},
                             {"final_family", res.final.to_string()},
                             {"pivots", res.pivots},
                             {"stalled", res.stalled},
                             {"trace", res.component_trace}};
            bool trace_ok = true;
            for (std::size_t i = 1; i < res.component_trace.size(); ++i)
                trace_ok = trace_ok && res.component_trace[i] <= res.component_trace[i - 1];
            reports.push_back(adhoc("weld.sequence", "Prop. 8.3", trace_ok && !res.stalled ? 0.0 : 1.0,
                                    0.0, F.size(), g, sw, trace_ok));
            if (!g.json_path.empty()) {
                nlohmann::json out{{"reports", na::to_json(reports)}, {"weld", j}};
                std::ofstream os(g.json_path);
                os << out.dump(2) << "\n";
                return reports[0].passed() ? 0 : 1;
            }
            std::cout << j.dump(2) << "\n";
            return reports[0].passed() ? 0 : 1;
        }

        if (smp->parsed()) {
            na::SemiSet set = na::parse_semiset(slurp(smp_file));
            na::DomainBox box = na::DomainBox::cube(set.dim(), na::Rat(-1), na::Rat(1));
            if (!smp_box.empty()) {
                std::vector<na::DomainBox::Interval> iv;
                std::stringstream bs(smp_box);
                std::string part;
                while (std::getline(bs, part, ';')) {
                    auto comma = part.find(',');
                    if (comma == std::string::npos) {
                        std::cerr << "bad box component '" << part << "'\n";
                        return 2;
                    }
                    iv.push_back({na::parse_rat(part.substr(0, comma)), na::parse_rat(part.substr(comma + 1))});
                }
                box = na::DomainBox(iv);
            }
            na::Stopwatch sw;
            na::SampleCloud cloud = na::sample(set, box, smp_n, g.seed);
            if (!g.cloud_path.empty())
                na::emit_cloud(cloud.points, na::coordinate_names("x", set.dim()), g.cloud_path);
            std::cout << "accepted " << cloud.accepted << " rejected " << cloud.rejected
                      << " ratio " << cloud.acceptance_ratio() << "\n";
            reports.push_back(adhoc("sample", "", 0.0, 0.0, cloud.accepted, g, sw));
            return finish(reports, g);
        }

        if (sui->parsed()) {
            auto groups = na::run_all(so);
            std::vector<na::VerificationReport> all;
            bool pass = true;
            for (const auto& [label, reps] : groups) {
                bool group_ok = true;
                for (const auto& r : reps) {
                    group_ok = group_ok && r.passed();
                    all.push_back(r);
                }
                pass = pass && group_ok;
                if (g.json_path.empty())
                    std::cout << (group_ok ? "PASS" : "FAIL") << "  criterion " << label << "\n";
            }
            if (!g.json_path.empty()) {
                std::ofstream os(g.json_path);
                os << na::to_json(all).dump(2) << "\n";
            }
            return pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
