#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "klm/io.hpp"
#include "klm/kl.hpp"
#include "klm/matroid.hpp"
#include "klm/roots.hpp"

// Conjecture sweeps over matroid corpora: per-matroid coefficient checks
// (non-negativity, log-concavity, negative real-rootedness, non-degeneracy)
// and interlacing along the family contraction chains. Items are independent
// tasks; the report is a deterministic fold in corpus order, whatever the
// worker count.

namespace klm {

enum class CheckStatus { pass, fail, skip };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::skip: return "skip";
    }
    return "?";
}

struct MatroidCheckResult {
    std::string spec;
    int rank = 0;
    IntPolynomial kl;
    std::vector<std::pair<std::string, CheckStatus>> checks;
    std::vector<std::string> notes;
};

struct InterlacingPairResult {
    std::string parent;
    std::string child;
    std::string verdict;  // pass | fail | skip
    std::string note;
};

struct SweepSummary {
    int items = 0;
    int checks_pass = 0;
    int checks_fail = 0;
    int checks_skip = 0;
    int pairs_pass = 0;
    int pairs_fail = 0;
    int pairs_skip = 0;
    int budget_exceeded = 0;
};

struct SweepReport {
    std::string corpus;
    std::vector<MatroidCheckResult> results;
    std::vector<InterlacingPairResult> interlacing;
    SweepSummary summary;
    std::vector<std::string> falsifications;
    bool all_pass() const { return falsifications.empty(); }
};

struct SweepOptions {
    int uniform_total = 0;    // include U_{m,d} for m >= 0, d >= 1, m+d <= this
    int thagomizer_max = -1;  // include T_n for 0 <= n <= this
    int k2n_max = -1;         // include K_{2,n} for 2 <= n <= this
    int braid_max = 0;        // include B_n for 1 <= n <= this
    std::vector<std::pair<std::string, Matroid>> graphs;  // bundled graph corpus entries
    std::vector<std::pair<std::string, Matroid>> extras;  // ad-hoc spec'd matroids
    std::vector<std::string> checks = {"nonneg", "logconcave", "negrealroots", "nondegenerate"};
    int jobs = 1;
    long step_budget = 200000;
};

namespace detail {

struct SweepItem {
    enum class Kind { uniform, thagomizer, k2n, braid, external };
    std::string spec;
    Kind kind = Kind::external;
    int p1 = 0;
    int p2 = 0;
    std::optional<Matroid> m;
};

inline KLResult solve_sweep_item(const SweepItem& it) {
    switch (it.kind) {
        case SweepItem::Kind::uniform: return kl_uniform_type(it.p1, it.p2);
        case SweepItem::Kind::thagomizer:
            return {kl_thagomizer_closed(it.p1), it.p1 + 1, KLMethod::closed_form};
        case SweepItem::Kind::k2n:
            return {kl_k2n(it.p1), it.p1 + 1, KLMethod::closed_form};
        case SweepItem::Kind::braid: return kl_braid_type(it.p1);
        case SweepItem::Kind::external: return kl_polynomial(*it.m);
    }
    throw std::logic_error("solve_sweep_item: unreachable");
}

// The matroid of a graph is connected exactly when the graph, restricted to
// its non-isolated vertices, is loopless and 2-vertex-connected (one
// non-loop edge alone also qualifies). Parallel edges are fine, so the
// articulation-point scan walks edge ids, not neighbor vertices.
inline bool graphic_matroid_connected(int nv, const std::vector<std::pair<int, int>>& edges) {
    if (edges.empty()) return false;
    for (const auto& [u, v] : edges)
        if (u == v) return false;  // a loop is a separate direct summand
    if (edges.size() == 1) return true;

    std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (other endpoint, edge id)
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        auto [u, v] = edges[i];
        adj[u].emplace_back(v, i);
        adj[v].emplace_back(u, i);
    }
    std::vector<int> disc(nv, 0), low(nv, 0);
    int timer = 0;
    bool has_articulation = false;
    auto dfs = [&](auto&& self, int u, int parent_edge) -> void {
        disc[u] = low[u] = ++timer;
        int children = 0;
        for (auto [w, eid] : adj[u]) {
            if (eid == parent_edge) continue;
            if (!disc[w]) {
                ++children;
                self(self, w, eid);
                low[u] = std::min(low[u], low[w]);
                if (parent_edge != -1 && low[w] >= disc[u]) has_articulation = true;
            } else {
                low[u] = std::min(low[u], disc[w]);
            }
        }
        if (parent_edge == -1 && children > 1) has_articulation = true;
    };
    dfs(dfs, edges[0].first, -1);
    for (const auto& [u, v] : edges)
        if (!disc[u] || !disc[v]) return false;  // another component with edges
    return !has_articulation;
}

// Conjecture hypothesis gate for the non-degeneracy check: the statement is
// about connected regular matroids, so only items known to satisfy that are
// tested; the rest are skipped with a note.
inline bool nondegenerate_applicable(const SweepItem& it, std::string& why) {
    switch (it.kind) {
        case SweepItem::Kind::uniform:
            // U_{1,d} is the cycle C_{d+1}, U_{m,1} the (m+1)-fold parallel
            // edge; other uniform matroids are not regular
            if (it.p1 >= 1 && it.p2 >= 1 && (it.p1 == 1 || it.p2 == 1)) return true;
            why = "not a connected regular matroid";
            return false;
        case SweepItem::Kind::thagomizer: return true;
        case SweepItem::Kind::k2n: return true;
        case SweepItem::Kind::braid:
            if (it.p1 >= 2) return true;
            why = "empty ground set";
            return false;
        case SweepItem::Kind::external: {
            if (const auto* g = std::get_if<GraphicBacking>(&it.m->backing())) {
                if (graphic_matroid_connected(g->nv, g->edges)) return true;
                why = "graph is not 2-connected";
                return false;
            }
            why = "regularity not established for this backing";
            return false;
        }
    }
    why = "unreachable";
    return false;
}

inline void run_indexed(int jobs, int count, const std::function<void(int)>& task) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || count <= 1) {
        for (int i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    int workers = std::min(jobs, count);
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) task(i);
        });
    for (auto& th : pool) th.join();
}

struct ChainPair {
    std::string parent_spec;
    std::string child_spec;
    SweepItem parent;
    SweepItem child;
};

}  // namespace detail

inline SweepReport run_sweep(const SweepOptions& opt) {
    static const std::vector<std::string> known = {"nonneg", "logconcave", "negrealroots",
                                                   "nondegenerate", "interlace"};
    bool interlace = false;
    std::vector<std::string> scalar_checks;
    for (const auto& c : opt.checks) {
        if (std::find(known.begin(), known.end(), c) == known.end())
            throw std::invalid_argument("run_sweep: unknown check \"" + c + "\"");
        if (c == "interlace")
            interlace = true;
        else
            scalar_checks.push_back(c);
    }

    using detail::SweepItem;
    std::vector<SweepItem> items;
    std::vector<detail::ChainPair> pairs;
    std::string corpus;
    auto describe = [&corpus](const std::string& part) {
        if (!corpus.empty()) corpus += "; ";
        corpus += part;
    };

    auto uniform_item = [](int m, int d) {
        return SweepItem{"uniform:" + std::to_string(m) + "," + std::to_string(d),
                         SweepItem::Kind::uniform, m, d, std::nullopt};
    };
    auto thag_item = [](int n) {
        return SweepItem{"thagomizer:" + std::to_string(n), SweepItem::Kind::thagomizer, n, 0,
                         std::nullopt};
    };
    auto k2n_item = [](int n) {
        return SweepItem{"k2n:" + std::to_string(n), SweepItem::Kind::k2n, n, 0, std::nullopt};
    };
    auto braid_item = [](int n) {
        return SweepItem{"complete:" + std::to_string(n), SweepItem::Kind::braid, n, 0,
                         std::nullopt};
    };

    if (opt.uniform_total > 0) {
        describe("uniform m+d<=" + std::to_string(opt.uniform_total));
        for (int total = 1; total <= opt.uniform_total; ++total)
            for (int m = 0; m < total; ++m) {
                int d = total - m;
                items.push_back(uniform_item(m, d));
                if (interlace && d >= 2)
                    pairs.push_back({items.back().spec, uniform_item(m, d - 1).spec,
                                     items.back(), uniform_item(m, d - 1)});
            }
    }
    if (opt.thagomizer_max >= 0) {
        describe("thagomizer n<=" + std::to_string(opt.thagomizer_max));
        for (int n = 0; n <= opt.thagomizer_max; ++n) {
            items.push_back(thag_item(n));
            if (interlace && n >= 1)
                pairs.push_back({items.back().spec, thag_item(n - 1).spec, items.back(),
                                 thag_item(n - 1)});
        }
    }
    if (opt.k2n_max >= 2) {
        describe("k2n n<=" + std::to_string(opt.k2n_max));
        for (int n = 2; n <= opt.k2n_max; ++n) {
            items.push_back(k2n_item(n));
            if (interlace)
                pairs.push_back({items.back().spec, thag_item(n - 1).spec, items.back(),
                                 thag_item(n - 1)});
        }
    }
    if (opt.braid_max >= 1) {
        describe("braid n<=" + std::to_string(opt.braid_max));
        for (int n = 1; n <= opt.braid_max; ++n) {
            items.push_back(braid_item(n));
            if (interlace && n >= 3)
                pairs.push_back({items.back().spec, braid_item(n - 1).spec, items.back(),
                                 braid_item(n - 1)});
        }
    }
    if (!opt.graphs.empty()) {
        describe("graph corpus (" + std::to_string(opt.graphs.size()) + " graphs)");
        for (const auto& [spec, m] : opt.graphs)
            items.push_back({spec, SweepItem::Kind::external, 0, 0, m});
    }
    if (!opt.extras.empty()) {
        describe("extras (" + std::to_string(opt.extras.size()) + " specs)");
        for (const auto& [spec, m] : opt.extras)
            items.push_back({spec, SweepItem::Kind::external, 0, 0, m});
    }
    if (corpus.empty()) corpus = "empty corpus";

    SweepReport rep;
    rep.corpus = corpus;
    rep.results.resize(items.size());
    rep.interlacing.resize(pairs.size());
    std::vector<char> item_budget(items.size(), 0), pair_budget(pairs.size(), 0);

    detail::run_indexed(opt.jobs, static_cast<int>(items.size()), [&](int i) {
        const SweepItem& it = items[static_cast<size_t>(i)];
        MatroidCheckResult& r = rep.results[static_cast<size_t>(i)];
        r.spec = it.spec;
        std::optional<KLResult> kl;
        try {
            kl = detail::solve_sweep_item(it);
            r.rank = kl->matroid_rank;
            r.kl = kl->polynomial;
        } catch (const resource_error& ex) {
            item_budget[static_cast<size_t>(i)] = 1;
            r.notes.push_back(std::string("budget: ") + ex.what());
        } catch (const std::exception& ex) {
            r.notes.push_back(std::string("error: ") + ex.what());
        }
        for (const auto& name : scalar_checks) {
            if (!kl) {
                r.checks.emplace_back(name, CheckStatus::skip);
                continue;
            }
            try {
                if (name == "nonneg") {
                    bool ok = true;
                    for (const auto& c : kl->polynomial.coefficients())
                        if (c < 0) ok = false;
                    r.checks.emplace_back(name, ok ? CheckStatus::pass : CheckStatus::fail);
                } else if (name == "logconcave") {
                    r.checks.emplace_back(name, is_log_concave_no_internal_zeros(kl->polynomial)
                                                    ? CheckStatus::pass
                                                    : CheckStatus::fail);
                } else if (name == "negrealroots") {
                    r.checks.emplace_back(name, all_roots_negative_real(kl->polynomial)
                                                    ? CheckStatus::pass
                                                    : CheckStatus::fail);
                } else {  // nondegenerate
                    std::string why;
                    if (!detail::nondegenerate_applicable(it, why)) {
                        r.checks.emplace_back(name, CheckStatus::skip);
                        r.notes.push_back("nondegenerate: skipped, " + why);
                    } else {
                        r.checks.emplace_back(name, is_non_degenerate(*kl) ? CheckStatus::pass
                                                                           : CheckStatus::fail);
                    }
                }
            } catch (const std::exception& ex) {
                r.checks.emplace_back(name, CheckStatus::skip);
                r.notes.push_back(name + std::string(": error, ") + ex.what());
            }
        }
    });

    detail::run_indexed(opt.jobs, static_cast<int>(pairs.size()), [&](int i) {
        const detail::ChainPair& p = pairs[static_cast<size_t>(i)];
        InterlacingPairResult& r = rep.interlacing[static_cast<size_t>(i)];
        r.parent = p.parent_spec;
        r.child = p.child_spec;
        try {
            InterlacingReport ir = kl_interlacing_report(detail::solve_sweep_item(p.parent),
                                                         detail::solve_sweep_item(p.child),
                                                         opt.step_budget);
            if (ir.status == InterlacingStatus::checked) {
                bool ok = ir.p_form && ir.q_form && ir.agree;
                r.verdict = ok ? "pass" : "fail";
                if (!ok)
                    r.note = std::string("p_form=") + (ir.p_form ? "true" : "false") +
                             " q_form=" + (ir.q_form ? "true" : "false");
            } else {
                r.verdict = "skip";
                r.note = std::string(to_string(ir.status)) +
                         (ir.note.empty() ? "" : ": " + ir.note);
                if (ir.status == InterlacingStatus::budget_exceeded)
                    pair_budget[static_cast<size_t>(i)] = 1;
            }
        } catch (const resource_error& ex) {
            r.verdict = "skip";
            r.note = std::string("budget: ") + ex.what();
            pair_budget[static_cast<size_t>(i)] = 1;
        } catch (const std::exception& ex) {
            r.verdict = "skip";
            r.note = std::string("error: ") + ex.what();
        }
    });

    for (size_t i = 0; i < rep.results.size(); ++i) {
        const auto& r = rep.results[i];
        ++rep.summary.items;
        if (item_budget[i]) ++rep.summary.budget_exceeded;
        for (const auto& [name, st] : r.checks) {
            if (st == CheckStatus::pass) ++rep.summary.checks_pass;
            if (st == CheckStatus::fail) {
                ++rep.summary.checks_fail;
                rep.falsifications.push_back(r.spec + ": " + name + " failed");
            }
            if (st == CheckStatus::skip) ++rep.summary.checks_skip;
        }
    }
    for (size_t i = 0; i < rep.interlacing.size(); ++i) {
        const auto& r = rep.interlacing[i];
        if (pair_budget[i]) ++rep.summary.budget_exceeded;
        if (r.verdict == "pass") ++rep.summary.pairs_pass;
        if (r.verdict == "fail") {
            ++rep.summary.pairs_fail;
            rep.falsifications.push_back(r.parent + " -> " + r.child + ": interlacing failed (" +
                                         r.note + ")");
        }
        if (r.verdict == "skip") ++rep.summary.pairs_skip;
    }
    return rep;
}

// Serialization: stable key order, integers emitted as JSON numbers when
// they fit a signed 64-bit value and as decimal strings otherwise.

inline nlohmann::ordered_json integer_json(const Integer& v) {
    if (v.fits_slong_p()) return nlohmann::ordered_json(v.get_si());
    return nlohmann::ordered_json(v.get_str());
}

inline nlohmann::ordered_json coefficients_json(const IntPolynomial& p) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : p.coefficients()) arr.push_back(integer_json(c));
    return arr;
}

inline nlohmann::ordered_json to_json(const MatroidCheckResult& r) {
    nlohmann::ordered_json j;
    j["spec"] = r.spec;
    j["rank"] = r.rank;
    j["kl"] = coefficients_json(r.kl);
    nlohmann::ordered_json checks = nlohmann::ordered_json::object();
    for (const auto& [name, st] : r.checks) checks[name] = to_string(st);
    j["checks"] = checks;
    j["notes"] = r.notes;
    return j;
}

inline nlohmann::ordered_json to_json(const SweepReport& rep) {
    nlohmann::ordered_json j;
    j["corpus"] = rep.corpus;
    j["results"] = nlohmann::ordered_json::array();
    for (const auto& r : rep.results) j["results"].push_back(to_json(r));
    j["interlacing"] = nlohmann::ordered_json::array();
    for (const auto& p : rep.interlacing) {
        nlohmann::ordered_json pj;
        pj["parent"] = p.parent;
        pj["child"] = p.child;
        pj["verdict"] = p.verdict;
        pj["note"] = p.note;
        j["interlacing"].push_back(pj);
    }
    nlohmann::ordered_json s;
    s["items"] = rep.summary.items;
    s["checks_pass"] = rep.summary.checks_pass;
    s["checks_fail"] = rep.summary.checks_fail;
    s["checks_skip"] = rep.summary.checks_skip;
    s["pairs_pass"] = rep.summary.pairs_pass;
    s["pairs_fail"] = rep.summary.pairs_fail;
    s["pairs_skip"] = rep.summary.pairs_skip;
    s["budget_exceeded"] = rep.summary.budget_exceeded;
    j["summary"] = s;
    j["falsifications"] = rep.falsifications;
    return j;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace detail

// Flat per-matroid table; interlacing pairs live only in the JSON form.
inline std::string to_csv(const SweepReport& rep) {
    std::vector<std::string> check_names;
    if (!rep.results.empty())
        for (const auto& [name, st] : rep.results.front().checks) check_names.push_back(name);
    std::string out = "spec,rank,kl";
    for (const auto& n : check_names) out += "," + n;
    out += ",notes\n";
    for (const auto& r : rep.results) {
        std::string kl;
        for (const auto& c : r.kl.coefficients()) {
            if (!kl.empty()) kl += ' ';
            kl += c.get_str();
        }
        out += detail::csv_field(r.spec) + "," + std::to_string(r.rank) + "," +
               detail::csv_field(kl);
        for (size_t k = 0; k < check_names.size(); ++k)
            out += "," + std::string(k < r.checks.size() ? to_string(r.checks[k].second) : "skip");
        std::string notes;
        for (const auto& n : r.notes) {
            if (!notes.empty()) notes += "; ";
            notes += n;
        }
        out += "," + detail::csv_field(notes) + "\n";
    }
    return out;
}

}  // namespace klm
