// Command-line driver. Three subcommands:
//   compute  KL polynomial (optionally the equivariant character) of one matroid spec
//   check    conjecture sweep over family corpora, bundled graphs, and extra specs
//   solve    functional-equation tables with cross-checks against independent methods
// Exit codes: 0 all checks pass, 2 falsification or cross-check mismatch,
// 3 resource budget exceeded without a falsification, 1 usage or input errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <klm/equivariant.hpp>
#include <klm/io.hpp>
#include <klm/kl.hpp>
#include <klm/sweep.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

namespace {

using nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_falsified = 2;
constexpr int exit_budget = 3;

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// one object per t-degree mapping partition -> multiplicity
ordered_json character_json(const klm::EquivariantKL& e) {
    ordered_json arr = ordered_json::array();
    for (const auto& f : e.coeffs) {
        ordered_json level = ordered_json::object();
        for (const auto& [la, c] : f.terms())
            level[la.to_string()] = klm::integer_json(klm::to_integer(c.coeff(0)));
        arr.push_back(std::move(level));
    }
    return arr;
}

bool same_character(const klm::EquivariantKL& a, const klm::EquivariantKL& b) {
    return a.n == b.n && a.matroid_rank == b.matroid_rank && a.coeffs == b.coeffs;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + out_path);
    f << text;
}

struct ComputeArgs {
    std::string spec;
    bool equivariant = false;
    std::string out;
};

int run_compute(const ComputeArgs& a) {
    klm::Matroid m = klm::parse_matroid_spec(a.spec);
    klm::KLResult r = klm::kl_polynomial(m);
    ordered_json j;
    j["spec"] = a.spec;
    j["rank"] = r.matroid_rank;
    j["method"] = klm::to_string(r.method);
    j["kl"] = klm::coefficients_json(r.polynomial);
    if (a.equivariant) {
        // characters are available in closed or solvable form for the three
        // families with a symmetric-group action on the ground set
        int p1 = 0, p2 = 0;
        klm::EquivariantKL e;
        if (std::sscanf(a.spec.c_str(), "uniform:%d,%d", &p1, &p2) == 2) {
            e = klm::uniform_equivariant_kl(p1, p2);
        } else if (std::sscanf(a.spec.c_str(), "thagomizer:%d", &p1) == 1 && p1 >= 1) {
            e = klm::solve_thagomizer_fe(p1, true).characters.at(p1);
        } else if (std::sscanf(a.spec.c_str(), "complete:%d", &p1) == 1 && p1 >= 1) {
            e = klm::solve_braid_fe(p1, true).characters.at(p1);
        } else {
            throw std::invalid_argument(
                "equivariant output needs uniform:m,d, thagomizer:n, or complete:n with n >= 1");
        }
        j["equivariant"] = character_json(e);
    }
    emit(j.dump(2) + "\n", a.out);
    return exit_ok;
}

struct CheckArgs {
    std::string families = "uniform,thagomizer,k2n,braid,graphic";
    int max = 8;
    int edges = 8;
    std::string graphs_file = "data/graphs_2conn_max8edges.txt";
    std::string checks = "nonneg,logconcave,negrealroots,nondegenerate";
    std::vector<std::string> extras;
    int jobs = 1;
    long budget = 200000;
    std::string format = "json";
    std::string out;
};

int run_check(const CheckArgs& a) {
    klm::SweepOptions opt;
    opt.uniform_total = 0;
    opt.braid_max = 0;
    opt.checks = split_csv(a.checks);
    opt.jobs = a.jobs;
    opt.step_budget = a.budget;
    bool want_graphs = false;
    for (const std::string& f : split_csv(a.families)) {
        if (f == "uniform") opt.uniform_total = a.max;
        else if (f == "thagomizer") opt.thagomizer_max = a.max;
        else if (f == "k2n") opt.k2n_max = a.max;
        else if (f == "braid") opt.braid_max = a.max;
        else if (f == "graphic") want_graphs = true;
        else throw std::invalid_argument("unknown family " + f);
    }
    if (want_graphs) {
        for (auto& entry : klm::load_graph_corpus(a.graphs_file))
            if (static_cast<int>(entry.second.size()) <= a.edges)
                opt.graphs.push_back(std::move(entry));
    }
    for (const std::string& spec : a.extras)
        opt.extras.emplace_back(spec, klm::parse_matroid_spec(spec));

    klm::SweepReport rep = klm::run_sweep(opt);
    std::string text =
        a.format == "csv" ? klm::to_csv(rep) : klm::to_json(rep).dump(2) + "\n";
    emit(text, a.out);
    if (!rep.falsifications.empty()) return exit_falsified;
    if (rep.summary.budget_exceeded > 0) return exit_budget;
    return exit_ok;
}

struct SolveArgs {
    std::string fe;
    int max = -1;
    std::vector<int> orders;
    std::vector<int> check_gf;
    std::string out;
};

int default_solve_max(const std::string& fe) {
    if (fe == "uniform" || fe == "uniform-eq") return 8;
    if (fe == "thag") return 10;
    if (fe == "thag-eq") return 8;
    if (fe == "braid") return 20;
    return 6;  // braid-eq
}

int run_solve(const SolveArgs& a) {
    bool eq = a.fe.size() > 3 && a.fe.compare(a.fe.size() - 3, 3, "-eq") == 0;
    int max = a.max > 0 ? a.max : default_solve_max(a.fe);
    ordered_json j;
    j["fe"] = a.fe;
    j["max"] = max;
    j["equivariant"] = eq;
    std::vector<std::string> diags;
    ordered_json polys = ordered_json::object();
    ordered_json chars = ordered_json::object();
    int entries = 0;
    std::string oracle;

    if (a.fe == "uniform" || a.fe == "uniform-eq") {
        int x_order = max - 1;
        int u_order = max;
        if (!a.orders.empty()) {
            if (a.orders.size() != 2)
                throw std::invalid_argument("--orders expects X,U for the uniform equation");
            x_order = a.orders[0];
            u_order = a.orders[1];
        }
        klm::UniformFETable table = eq ? klm::solve_uniform_fe(x_order, u_order, true, max)
                                       : klm::solve_uniform_fe(x_order, u_order, false);
        oracle = eq ? "uniform equivariant closed form" : "uniform type recursion";
        for (int total = 1; total <= max; ++total) {
            for (int m = 0; m < total; ++m) {
                int d = total - m;
                if (m > x_order || d > u_order) continue;
                std::string key = std::to_string(m) + "," + std::to_string(d);
                if (eq) {
                    auto it = table.characters.find({m, d});
                    if (it == table.characters.end()) continue;
                    chars[key] = character_json(it->second);
                    polys[key] = klm::coefficients_json(klm::graded_dimension(it->second));
                    if (!same_character(it->second, klm::uniform_equivariant_kl(m, d)))
                        diags.push_back("uniform-eq (" + key +
                                        "): functional equation disagrees with the closed form");
                } else {
                    auto it = table.polynomials.find({m, d});
                    if (it == table.polynomials.end()) continue;
                    polys[key] = klm::coefficients_json(it->second);
                    if (!(it->second == klm::kl_uniform_type(m, d).polynomial))
                        diags.push_back("uniform (" + key +
                                        "): functional equation disagrees with the type recursion");
                }
                ++entries;
            }
        }
    } else if (a.fe == "thag" || a.fe == "thag-eq" || a.fe == "braid" || a.fe == "braid-eq") {
        if (!a.orders.empty()) {
            if (a.orders.size() != 1)
                throw std::invalid_argument("--orders expects a single value for " + a.fe);
            max = a.orders[0];
            j["max"] = max;
        }
        bool thag = a.fe.compare(0, 4, "thag") == 0;
        klm::FamilyFETable table =
            thag ? klm::solve_thagomizer_fe(max, eq) : klm::solve_braid_fe(max, eq);
        oracle = thag ? "thagomizer closed form" : "braid type recursion";
        auto expected = [&](int n) {
            return thag ? klm::kl_thagomizer_closed(n) : klm::kl_braid_type(n).polynomial;
        };
        if (eq) {
            for (const auto& [n, e] : table.characters) {
                std::string key = std::to_string(n);
                chars[key] = character_json(e);
                klm::IntPolynomial dims = klm::graded_dimension(e);
                polys[key] = klm::coefficients_json(dims);
                if (!(dims == expected(n)))
                    diags.push_back(a.fe + " (n=" + key +
                                    "): graded dimensions disagree with the ordinary polynomial");
                ++entries;
            }
        } else {
            for (const auto& [n, p] : table.polynomials) {
                std::string key = std::to_string(n);
                polys[key] = klm::coefficients_json(p);
                if (!(p == expected(n)))
                    diags.push_back(a.fe + " (n=" + key +
                                    "): functional equation disagrees with the " + oracle);
                ++entries;
            }
        }
    } else {
        throw std::invalid_argument(
            "unknown functional equation " + a.fe +
            " (expected uniform, uniform-eq, thag, thag-eq, braid, or braid-eq)");
    }

    j["polynomials"] = std::move(polys);
    if (eq) j["characters"] = std::move(chars);
    j["crosscheck"] = ordered_json{{"oracle", oracle},
                                   {"entries", entries},
                                   {"status", diags.empty() ? "pass" : "fail"}};

    if (!a.check_gf.empty()) {
        if (a.fe != "braid")
            throw std::invalid_argument("--check-gf applies to the braid equation only");
        int order = std::clamp(max, 14, 25);
        ordered_json arr = ordered_json::array();
        for (int i : a.check_gf) {
            klm::BraidGFReport r = klm::braid_coefficient_gf_check(i, order);
            ordered_json e;
            e["index"] = r.index;
            e["order"] = order;
            e["match"] = r.match();
            e["first_mismatch"] = r.first_mismatch;
            arr.push_back(std::move(e));
            if (!r.match())
                diags.push_back("braid coefficient " + std::to_string(i) +
                                ": generating function mismatch at n = " +
                                std::to_string(r.first_mismatch));
        }
        j["gf_checks"] = std::move(arr);
    }

    emit(j.dump(2) + "\n", a.out);
    if (!diags.empty()) {
        for (const std::string& d : diags) std::cerr << "cross-check failure: " << d << "\n";
        return exit_falsified;
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kazhdan-Lusztig polynomials of matroids"};
    app.require_subcommand(1);

    ComputeArgs cargs;
    CLI::App* compute = app.add_subcommand(
        "compute", "KL polynomial of one matroid spec (uniform:m,d, complete:n, thagomizer:n, "
                   "k2n:n, edges:u-v,..., graph:PATH, linear:PATH:p, dsum:(A)+(B))");
    compute->add_option("spec", cargs.spec, "matroid spec")->required();
    compute->add_flag("--equivariant", cargs.equivariant,
                      "include the equivariant character (uniform, thagomizer, complete)");
    compute->add_option("--out", cargs.out, "write JSON to a file instead of stdout");

    CheckArgs kargs;
    CLI::App* check = app.add_subcommand("check", "run conjecture checks over a corpus");
    check->add_option("--families", kargs.families,
                      "comma list from uniform,thagomizer,k2n,braid,graphic")
        ->capture_default_str();
    check->add_option("--max", kargs.max, "family size bound: m+d for uniform, n otherwise")
        ->capture_default_str();
    check->add_option("--edges", kargs.edges, "edge bound for the bundled graph corpus")
        ->capture_default_str();
    check->add_option("--graphs-file", kargs.graphs_file, "graph corpus path")
        ->capture_default_str();
    check->add_option("--checks", kargs.checks,
                      "comma list from nonneg,logconcave,negrealroots,nondegenerate,interlace")
        ->capture_default_str();
    check->add_option("--extra", kargs.extras, "additional matroid specs to include");
    check->add_option("--jobs", kargs.jobs, "worker threads")->capture_default_str();
    check->add_option("--budget", kargs.budget, "root-isolation step budget per item")
        ->capture_default_str();
    check->add_option("--format", kargs.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    check->add_option("--out", kargs.out, "write the report to a file instead of stdout");

    SolveArgs sargs;
    CLI::App* solve = app.add_subcommand("solve", "solve a functional equation and cross-check");
    solve->add_option("fe", sargs.fe, "uniform, uniform-eq, thag, thag-eq, braid, or braid-eq")
        ->required();
    solve->add_option("--max", sargs.max,
                      "table bound: m+d for uniform, n otherwise (defaults: uniform 8, "
                      "thag 10, thag-eq 8, braid 20, braid-eq 6)");
    solve->add_option("--orders", sargs.orders,
                      "explicit truncation orders: X,U for uniform, N otherwise")
        ->delimiter(',');
    solve->add_option("--check-gf", sargs.check_gf,
                      "verify braid coefficient generating functions (indices from 1,2)")
        ->delimiter(',');
    solve->add_option("--out", sargs.out, "write JSON to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (compute->parsed()) return run_compute(cargs);
        if (check->parsed()) return run_check(kargs);
        return run_solve(sargs);
    } catch (const klm::resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_budget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}
