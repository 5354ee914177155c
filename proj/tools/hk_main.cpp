// hk: Hilbert-Kunz functions of trinomial hypersurfaces over F_p.
// Thin command-line front end over the C API in hk/hk.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hk/hk.h"

namespace {

using nlohmann::json;

int status_to_exit(hk_status status) {
    switch (status) {
        case HK_OK: return 0;
        case HK_ERROR_BUDGET: return 2;
        default: return 1;
    }
}

int fail(hk_status status) {
    std::cerr << "hk: " << hk_status_str(status) << ": " << hk_last_error() << "\n";
    return status_to_exit(status);
}

int write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "hk: cannot open " << path << " for writing\n";
        return 1;
    }
    out << text;
    return 0;
}

struct PolyHandle {
    hk_poly* p = nullptr;
    ~PolyHandle() { hk_poly_free(p); }
};

struct CString {
    char* s = nullptr;
    ~CString() { hk_string_free(s); }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---- sweep ----------------------------------------------------------------

struct SweepSpec {
    std::int64_t p = 2;
    int nmax = 6;
    std::string qmax = "10000";
    std::uint64_t budget = 0;
    int vars = 0;
    int max_degree = 0;
    std::vector<std::string> polys;
};

SweepSpec load_sweep_spec(const std::string& path) {
    json j = json::parse(read_file(path));
    SweepSpec spec;
    spec.p = j.value("p", std::int64_t{2});
    spec.nmax = j.value("nmax", 6);
    if (j.contains("qmax")) {
        if (j["qmax"].is_string())
            spec.qmax = j["qmax"].get<std::string>();
        else
            spec.qmax = std::to_string(j["qmax"].get<std::int64_t>());
    }
    spec.budget = j.value("budget", std::uint64_t{0});
    spec.vars = j.value("vars", 0);
    spec.max_degree = j.value("max_degree", 0);
    if (j.contains("polys"))
        for (const auto& s : j["polys"]) spec.polys.push_back(s.get<std::string>());
    return spec;
}

// All non-constant monomial strings in `vars` variables of total degree
// <= max_degree, enumerated in a fixed order.
std::vector<std::string> monomial_pool(int vars, int max_degree) {
    std::vector<std::string> pool;
    std::vector<int> exps(static_cast<std::size_t>(vars), 0);
    // mixed-radix counter over exponents 0..max_degree
    for (;;) {
        int deg = 0;
        for (int e : exps) deg += e;
        if (deg >= 1 && deg <= max_degree) {
            std::ostringstream out;
            bool first = true;
            for (int v = 0; v < vars; ++v) {
                if (exps[static_cast<std::size_t>(v)] == 0) continue;
                if (!first) out << "*";
                out << "x" << v;
                if (exps[static_cast<std::size_t>(v)] != 1) out << "^" << exps[static_cast<std::size_t>(v)];
                first = false;
            }
            pool.push_back(out.str());
        }
        int i = 0;
        for (; i < vars; ++i) {
            if (++exps[static_cast<std::size_t>(i)] <= max_degree) break;
            exps[static_cast<std::size_t>(i)] = 0;
        }
        if (i == vars) break;
    }
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::vector<std::string> sweep_family(const SweepSpec& spec) {
    std::vector<std::string> family = spec.polys;
    if (spec.vars >= 1 && spec.max_degree >= 1) {
        std::vector<std::string> pool = monomial_pool(spec.vars, spec.max_degree);
        for (std::size_t i = 0; i < pool.size(); ++i)
            for (std::size_t j = i + 1; j < pool.size(); ++j)
                for (std::size_t k = j + 1; k < pool.size(); ++k)
                    family.push_back(pool[i] + " + " + pool[j] + " + " + pool[k]);
    }
    return family;
}

struct SweepRow {
    bool ok = false;
    std::string error;
    std::string poly, hk_last, estimate, band, converged, verdict, best, truncated;
};

SweepRow sweep_member(const std::string& poly_text, const SweepSpec& spec) {
    SweepRow row;
    PolyHandle poly;
    hk_status st = hk_poly_parse(poly_text.c_str(), spec.p, &poly.p);
    if (st != HK_OK) {
        row.error = std::string(hk_status_str(st)) + ": " + hk_last_error();
        return row;
    }
    CString canonical;
    hk_poly_canonical(poly.p, &canonical.s);
    row.poly = canonical.s ? canonical.s : poly_text;

    CString series;
    st = hk_series_text(poly.p, spec.nmax, spec.budget, 0, &series.s);
    if (st != HK_OK) {
        row.error = std::string(hk_status_str(st)) + ": " + hk_last_error();
        return row;
    }
    CString report;
    st = hk_estimate_json(series.s, -1, spec.qmax.c_str(), 0, &report.s);
    if (st != HK_OK) {
        row.error = std::string(hk_status_str(st)) + ": " + hk_last_error();
        return row;
    }
    json s = json::parse(std::string(series.s));
    json r = json::parse(std::string(report.s));
    row.hk_last = s["points"].empty() ? "" : s["points"].back()["hk"].get<std::string>();
    row.truncated = s["truncated"].get<bool>() ? "1" : "0";
    row.estimate = r["estimate_decimal"].get<std::string>();
    row.band = r["band_decimal"].get<std::string>();
    row.converged = r["converged"].get<bool>() ? "1" : "0";
    row.verdict = r["verdict"].get<std::string>();
    if (!r["best"].is_null())
        row.best = r["best"]["num"].get<std::string>() + "/" + r["best"]["den"].get<std::string>();
    row.ok = true;
    return row;
}

// decimal-string comparison: longer integer part wins, then lexicographic
bool decimal_less(const std::string& a, const std::string& b) {
    auto ip = [](const std::string& s) { return s.substr(0, s.find('.')); };
    std::string ia = ip(a), ib = ip(b);
    if (ia.size() != ib.size()) return ia.size() < ib.size();
    if (ia != ib) return ia < ib;
    return a < b;
}

int run_sweep(const std::string& spec_path, const std::string& out_path, int jobs) {
    SweepSpec spec = load_sweep_spec(spec_path);
    std::vector<std::string> family = sweep_family(spec);
    if (family.empty()) {
        std::cerr << "hk: sweep family is empty\n";
        return 1;
    }
    std::vector<SweepRow> rows(family.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= family.size()) return;
            rows[i] = sweep_member(family[i], spec);
        }
    };
    if (jobs < 1) jobs = 1;
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::size_t failures = 0;
    std::vector<const SweepRow*> ok_rows;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].ok) {
            ++failures;
            std::cerr << "hk: sweep member skipped: " << family[i] << ": " << rows[i].error << "\n";
        } else {
            ok_rows.push_back(&rows[i]);
        }
    }
    std::stable_sort(ok_rows.begin(), ok_rows.end(), [](const SweepRow* a, const SweepRow* b) {
        if (a->verdict != b->verdict) return a->verdict < b->verdict;
        if (a->band != b->band) return decimal_less(a->band, b->band);
        return a->poly < b->poly;
    });

    std::ostringstream csv;
    csv << "poly,p,nmax,truncated,hk_last,estimate,band,converged,verdict,best\n";
    for (const auto* r : ok_rows) {
        csv << '"' << r->poly << '"' << "," << spec.p << "," << spec.nmax << "," << r->truncated << ","
            << r->hk_last << "," << r->estimate << "," << r->band << "," << r->converged << ","
            << r->verdict << "," << r->best << "\n";
    }
    int rc = write_output(out_path, csv.str());
    if (rc != 0) return rc;
    if (failures == rows.size()) return 1;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hilbert-Kunz functions of trinomial hypersurfaces over F_p"};
    app.require_subcommand(1);

    std::string poly_text, out_path, series_path, spec_path, format = "json", qmax = "10000";
    std::int64_t p = 2, d = -1, bound = 10;
    int nmax = 4, n = 1, depth = 8, jobs = 1;
    std::uint64_t budget = 0;
    bool force = false;

    auto add_common = [&](CLI::App* cmd, bool needs_poly) {
        if (needs_poly) cmd->add_option("--poly", poly_text, "trinomial, e.g. \"x0^2 + x0*x1 + x1^2\"")->required();
        cmd->add_option("-p,--prime", p, "field characteristic (prime)");
        cmd->add_option("--budget", budget, "max basis monomials per box (0 = default 2^24)")
            ->envname("HK_BUDGET");
        cmd->add_option("--out,-o", out_path, "output file (default stdout)");
    };

    CLI::App* compute = app.add_subcommand("compute", "exact Hilbert-Kunz series by the rank oracle");
    add_common(compute, true);
    compute->add_option("--nmax", nmax, "largest Frobenius level")->required();
    compute->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    CLI::App* classify = app.add_subcommand("classify", "membership verdicts for every box monomial");
    add_common(classify, true);
    classify->add_option("-n,--level", n, "Frobenius level")->required();
    classify->add_option("--depth", depth, "rewrite depth of the truncated mutant sets");

    CLI::App* analyze = app.add_subcommand("analyze", "reduced linear systems grouped by class key");
    add_common(analyze, true);
    analyze->add_option("-n,--level", n, "Frobenius level")->required();
    analyze->add_option("--bound", bound, "truncation bound of the index families");

    CLI::App* estimate = app.add_subcommand("estimate", "multiplicity estimate and rationality probe");
    estimate->add_option("--series", series_path, "series JSON produced by compute")->required();
    estimate->add_option("--d", d, "dimension (default: variable count - 1)");
    estimate->add_option("--qmax", qmax, "largest probed denominator");
    estimate->add_flag("--force", force, "probe even without convergence");
    estimate->add_option("--out,-o", out_path, "output file (default stdout)");

    CLI::App* sweep = app.add_subcommand("sweep", "series + estimate over a family of trinomials");
    sweep->add_option("--spec", spec_path, "sweep spec JSON")->required();
    sweep->add_option("--jobs", jobs, "parallel members");
    sweep->add_option("--out,-o", out_path, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) {
            PolyHandle poly;
            hk_status st = hk_poly_parse(poly_text.c_str(), p, &poly.p);
            if (st != HK_OK) return fail(st);
            CString text;
            st = hk_series_text(poly.p, nmax, budget, format == "csv" ? 1 : 0, &text.s);
            if (st != HK_OK) return fail(st);
            return write_output(out_path, text.s);
        }
        if (classify->parsed()) {
            PolyHandle poly;
            hk_status st = hk_poly_parse(poly_text.c_str(), p, &poly.p);
            if (st != HK_OK) return fail(st);
            CString text;
            st = hk_classify_csv(poly.p, n, depth, budget, &text.s);
            if (st != HK_OK) return fail(st);
            return write_output(out_path, text.s);
        }
        if (analyze->parsed()) {
            PolyHandle poly;
            hk_status st = hk_poly_parse(poly_text.c_str(), p, &poly.p);
            if (st != HK_OK) return fail(st);
            CString text;
            st = hk_analyze_json(poly.p, n, bound, budget, &text.s);
            if (st != HK_OK) return fail(st);
            return write_output(out_path, text.s);
        }
        if (estimate->parsed()) {
            std::string series = read_file(series_path);
            CString text;
            hk_status st = hk_estimate_json(series.c_str(), d, qmax.c_str(), force ? 1 : 0, &text.s);
            if (st != HK_OK) return fail(st);
            return write_output(out_path, text.s);
        }
        if (sweep->parsed()) return run_sweep(spec_path, out_path, jobs);
    } catch (const std::exception& e) {
        std::cerr << "hk: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
