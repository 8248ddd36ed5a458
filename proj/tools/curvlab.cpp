// curvlab: build curvature data from closed-form families or metric
// descriptors, run sampled property checks, and run the named verification
// suites. Exit codes: 0 success / property holds-on-samples, 3 property
// fails / suite fails, 1 usage or input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "curvlab/classify.hpp"
#include "curvlab/geometry.hpp"
#include "curvlab/json_io.hpp"

using namespace curvlab;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFails = 3;

std::map<std::string, std::string> parse_kv(const std::vector<std::string>& extras) {
    std::map<std::string, std::string> kv;
    for (const auto& tok : extras) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("expected key=value argument, got '" + tok + "'");
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return kv;
}

int kv_int(const std::map<std::string, std::string>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument("missing argument " + key + "=...");
    return std::stoi(it->second);
}

std::string kv_str(const std::map<std::string, std::string>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument("missing argument " + key + "=...");
    return it->second;
}

std::vector<Rat> parse_point(const std::string& text) {
    std::vector<Rat> point;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) point.push_back(Rat::parse(tok));
    return point;
}

// x1..xu and y1..yu for Walker families.
int walker_lookup(const std::string& name, int u) {
    if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'y')) {
        int idx = std::stoi(name.substr(1));
        if (idx >= 1 && idx <= u) return (name[0] == 'x' ? 0 : u) + idx - 1;
    }
    return -1;
}

MatQ parse_phi(const std::string& text, int m) {
    if (text.rfind("diag:", 0) == 0) {
        auto vals = parse_point(text.substr(5));
        if (static_cast<int>(vals.size()) != m)
            throw std::invalid_argument("diag: needs exactly p+q entries");
        MatQ phi(m, m);
        for (int i = 0; i < m; ++i) phi(i, i) = vals[static_cast<std::size_t>(i)];
        return phi;
    }
    if (!text.empty() && text[0] == '@') {
        std::ifstream in(text.substr(1));
        if (!in) throw std::invalid_argument("cannot open " + text.substr(1));
        json j = json::parse(in);
        Signature sig(0, 1);
        MatQ phi = io::linear_map_from_json(j, sig);
        if (sig.dim() != m) throw std::invalid_argument("phi dimension mismatch");
        return phi;
    }
    throw std::invalid_argument("phi must be diag:v1,...,vm or @file.json");
}

// psi DSL: [[entry,...],[...]] with polynomial entries.
std::vector<MPoly> parse_psi(const std::string& text, int& u_out) {
    std::vector<std::vector<std::string>> rows;
    std::size_t i = 0;
    auto skip = [&]() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    if (i >= text.size() || text[i] != '[') throw std::invalid_argument("psi: expected [[...],...]");
    ++i;
    while (true) {
        skip();
        if (i >= text.size()) throw std::invalid_argument("psi: unterminated matrix");
        if (text[i] == ']') {
            ++i;
            break;
        }
        if (text[i] == ',') {
            ++i;
            continue;
        }
        if (text[i] != '[') throw std::invalid_argument("psi: expected row '['");
        ++i;
        std::vector<std::string> row;
        std::string cur;
        int depth = 0;
        for (; i < text.size(); ++i) {
            char c = text[i];
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == ',' && depth == 0) {
                row.push_back(cur);
                cur.clear();
                continue;
            }
            if (c == ']' && depth == 0) {
                row.push_back(cur);
                ++i;
                break;
            }
            cur += c;
        }
        rows.push_back(std::move(row));
    }
    const int u = static_cast<int>(rows.size());
    std::vector<MPoly> psi(static_cast<std::size_t>(u) * u);
    for (int r = 0; r < u; ++r) {
        if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != u)
            throw std::invalid_argument("psi: matrix must be square");
        for (int c = 0; c < u; ++c)
            psi[static_cast<std::size_t>(r * u + c)] =
                parse_mpoly(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                            [&](const std::string& n) { return walker_lookup(n, u); });
    }
    u_out = u;
    return psi;
}

void write_output(const json& j, const std::string& out) {
    std::string text = j.dump(2) + "\n";
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        std::ofstream os(out, std::ios::binary);
        if (!os) throw std::invalid_argument("cannot write " + out);
        os << text;
    }
}

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t cli_seed) {
    if (opt->count() > 0) return cli_seed;
    if (const char* env = std::getenv("CURVLAB_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

struct CheckArgs {
    std::string tensor_file;
    std::string property;
    int samples = 200;
    std::uint64_t seed = 0;
    std::string scalar = "exact";
    double tolerance = 1e-8;
    int threads = 1;
    bool full_budget = false;
    std::string out;
    std::string format = "json";
};

int run_check(const CheckArgs& a, const CLI::Option* seed_opt) {
    classify::PropertyQuery q;
    if (!classify::parse_property(a.property, q.property, q.r, q.s))
        throw std::invalid_argument("unknown property '" + a.property + "'");
    q.sample_budget = a.samples;
    q.cfg.seed = resolve_seed(seed_opt, a.seed);
    q.threads = a.threads;
    q.float_tol = a.tolerance;
    q.early_exit = !a.full_budget;

    std::ifstream in(a.tensor_file);
    if (!in) throw std::invalid_argument("cannot open " + a.tensor_file);
    json jin = json::parse(in);
    io::TensorFile tf = io::tensor_file_from_json(jin);

    bool on5 = a.property.find("szabo") != std::string::npos;
    classify::PropertyReport rep;
    if (a.scalar == "float") {
        if (on5) {
            if (!tf.D) throw std::invalid_argument("input has no rank-5 tensor");
            rep = classify::check_float(curvature::to_float(*tf.D), q);
        } else {
            if (!tf.R) throw std::invalid_argument("input has no curvature tensor");
            rep = classify::check_float(curvature::to_float(*tf.R), q);
        }
    } else {
        if (on5) {
            if (!tf.D) throw std::invalid_argument("input has no rank-5 tensor");
            rep = classify::check(*tf.D, q);
        } else {
            if (!tf.R) throw std::invalid_argument("input has no curvature tensor");
            if (q.property == classify::Property::AlmostComplexJordanIP) {
                auto h = curvature::HermitianStructure::standard(tf.R->sig);
                rep = classify::check(*tf.R, q, &h);
            } else {
                rep = classify::check(*tf.R, q);
            }
        }
    }

    io::RunManifest manifest;
    manifest.command = "check";
    manifest.inputs["tensor"] = a.tensor_file;
    manifest.inputs["property"] = a.property;
    manifest.seed = q.cfg.seed;
    manifest.budget = a.samples;
    manifest.scalar_mode = a.scalar;
    manifest.out = a.out;

    if (a.format == "csv") {
        std::string csv = "property,verdict,samples,seed\n" + rep.property + "," + rep.verdict() +
                          "," + std::to_string(rep.samples_used) + "," +
                          std::to_string(rep.seed) + "\n";
        if (a.out.empty() || a.out == "-")
            std::cout << csv;
        else
            std::ofstream(a.out, std::ios::binary) << csv;
    } else {
        write_output(io::report_to_json(rep, manifest), a.out);
    }
    std::cerr << rep.property << ": " << rep.verdict() << " (" << rep.samples_used
              << " samples), reference " << rep.reference << "\n";
    for (const auto& n : rep.notes) std::cerr << "  note: " << n << "\n";
    return rep.holds ? kExitOk : kExitFails;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvature tensor laboratory"};
    app.require_subcommand(1);

    // ---- build ----
    auto* build = app.add_subcommand("build", "construct tensors from families or metrics");
    bool f_ra = false, f_rphi = false, f_const = false;
    bool f_fab = false, f_psi = false, f_affine = false, f_warped = false;
    build->add_flag("--ra", f_ra, "curvature tensor of the rank-2a skew map family");
    build->add_flag("--rphi", f_rphi, "R_phi from a self-adjoint phi");
    build->add_flag("--const", f_const, "constant sectional curvature tensor");
    build->add_flag("--metric-fab", f_fab, "metric family psi = df.df plus flat factor");
    build->add_flag("--metric-psi", f_psi, "metric family with explicit psi plus flat factor");
    build->add_flag("--metric-affine", f_affine, "metric of a torsion-free affine connection");
    build->add_flag("--metric-warped", f_warped, "warped product metric");
    std::string at_str, build_out;
    build->add_option("--at", at_str, "evaluation point, comma-separated rationals");
    build->add_option("--out", build_out, "output file (default stdout)");
    build->allow_extras();

    // ---- check ----
    auto* chk = app.add_subcommand("check", "run one sampled property check");
    CheckArgs ca;
    chk->add_option("tensor", ca.tensor_file, "tensor JSON file")->required();
    chk->add_option("--property", ca.property, "property name")->required();
    chk->add_option("--samples", ca.samples, "sample budget");
    auto* chk_seed = chk->add_option("--seed", ca.seed, "seed (falls back to CURVLAB_SEED)");
    chk->add_option("--scalar", ca.scalar, "exact|float")->check(CLI::IsMember({"exact", "float"}));
    chk->add_option("--tolerance", ca.tolerance, "float-mode relative tolerance");
    chk->add_option("--threads", ca.threads, "parallel sample evaluation");
    chk->add_flag("--full-budget", ca.full_budget, "do not stop at the first witness");
    chk->add_option("--out", ca.out, "report file (default stdout)");
    chk->add_option("--format", ca.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    // ---- suite ----
    auto* ste = app.add_subcommand("suite", "run a named verification suite");
    std::string suite_name, suite_out;
    std::uint64_t suite_seed = 0;
    ste->add_option("name", suite_name, "suite name")->required();
    auto* suite_seed_opt = ste->add_option("--seed", suite_seed, "seed");
    ste->add_option("--out", suite_out, "report file (default stdout)");

    // ---- list ----
    auto* lst = app.add_subcommand("list", "list properties and suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitError;
    }

    try {
        if (build->parsed()) {
            auto kv = parse_kv(build->remaining());
            io::TensorFile tf;
            io::RunManifest manifest;
            manifest.command = "build";
            for (const auto& [k, v] : kv) manifest.inputs[k] = v;

            auto eval_metric = [&](const geometry::MetricFamily& mf) {
                geometry::MetricModel model(mf);
                if (at_str.empty())
                    throw std::invalid_argument("metric families need --at point");
                auto point = parse_point(at_str);
                if (static_cast<int>(point.size()) != model.dim())
                    throw std::invalid_argument("--at needs " + std::to_string(model.dim()) +
                                                " coordinates");
                geometry::PointEval pe = model.eval(point);
                if (!pe.canonical_exact)
                    throw std::invalid_argument(
                        "frame norms are not perfect squares at this point; exact canonical "
                        "components unavailable (pick a point where f/h^2 is a square)");
                tf.R = pe.R;
                tf.D = pe.dR;
                tf.extra["family"] = geometry::family_name(mf);
                tf.extra["point"] = at_str;
                manifest.inputs["at"] = at_str;
            };

            if (f_ra) {
                tf.R = curvature::build_R_a(kv_int(kv, "p"), kv_int(kv, "q"), kv_int(kv, "a"));
            } else if (f_rphi) {
                Signature sig(kv_int(kv, "p"), kv_int(kv, "q"));
                tf.R = curvature::build_R_phi(parse_phi(kv_str(kv, "phi"), sig.dim()), sig);
            } else if (f_const) {
                Signature sig(kv_int(kv, "p"), kv_int(kv, "q"));
                tf.R = curvature::build_constant_curvature(Rat::parse(kv_str(kv, "kappa")), sig);
            } else if (f_fab) {
                int a = kv_int(kv, "a"), b = kv_int(kv, "b");
                int u = kv.count("u") ? kv_int(kv, "u") : 2;
                MPoly f = parse_mpoly(kv_str(kv, "f"),
                                      [&](const std::string& n) { return walker_lookup(n, u); });
                eval_metric(geometry::MetricFamily(geometry::FAB{u, f, a, b}));
            } else if (f_psi) {
                int u = 0;
                auto psi = parse_psi(kv_str(kv, "psi"), u);
                int a = kv.count("a") ? kv_int(kv, "a") : 0;
                int b = kv.count("b") ? kv_int(kv, "b") : 0;
                eval_metric(geometry::MetricFamily(geometry::PsiAB{u, psi, a, b}));
            } else if (f_affine) {
                int u = kv_int(kv, "u");
                std::vector<MPoly> gamma(static_cast<std::size_t>(u) * u * u);
                // gamma entries: G[i][j][k]=poly separated by ';'
                std::stringstream ss(kv_str(kv, "gamma"));
                std::string assign;
                while (std::getline(ss, assign, ';')) {
                    if (assign.empty()) continue;
                    int i = 0, j = 0, k = 0;
                    if (std::sscanf(assign.c_str(), "G[%d][%d][%d]=", &i, &j, &k) != 3)
                        throw std::invalid_argument("gamma: expected G[i][j][k]=poly");
                    auto eq = assign.find('=');
                    if (eq == std::string::npos || i < 1 || i > u || j < 1 || j > u || k < 1 ||
                        k > u)
                        throw std::invalid_argument("gamma: expected G[i][j][k]=poly");
                    MPoly val =
                        parse_mpoly(assign.substr(eq + 1),
                                    [&](const std::string& n) { return walker_lookup(n, u); });
                    gamma[static_cast<std::size_t>(((i - 1) * u + (j - 1)) * u + (k - 1))] = val;
                    gamma[static_cast<std::size_t>(((j - 1) * u + (i - 1)) * u + (k - 1))] = val;
                }
                eval_metric(geometry::MetricFamily(geometry::AffineNabla{u, gamma}));
            } else if (f_warped) {
                geometry::Warped w;
                w.eps = kv_int(kv, "eps");
                w.kappa = Rat::parse(kv_str(kv, "kappa"));
                w.A = Rat::parse(kv_str(kv, "A"));
                w.B = Rat::parse(kv_str(kv, "B"));
                w.fiber = kv_int(kv, "fiber");
                eval_metric(geometry::MetricFamily(w));
            } else {
                throw std::invalid_argument(
                    "pick one of --ra --rphi --const --metric-fab --metric-psi --metric-affine "
                    "--metric-warped");
            }
            if (tf.R) {
                auto violations = curvature::validate_acst(*tf.R);
                if (!violations.empty())
                    throw std::logic_error("built tensor failed validation: " +
                                           violations.front().identity);
            }
            manifest.out = build_out;
            tf.extra["manifest"] = manifest.to_json();
            write_output(io::tensor_file_to_json(tf), build_out);
            return kExitOk;
        }

        if (chk->parsed()) return run_check(ca, chk_seed);

        if (ste->parsed()) {
            std::uint64_t seed = resolve_seed(suite_seed_opt, suite_seed);
            classify::SuiteReport rep = classify::run_suite(suite_name, seed);
            io::RunManifest manifest;
            manifest.command = "suite";
            manifest.inputs["name"] = suite_name;
            manifest.seed = seed;
            manifest.out = suite_out;
            write_output(io::suite_to_json(rep, manifest), suite_out);
            for (const auto& item : rep.items)
                std::cerr << (item.ok ? "[ok]   " : "[FAIL] ") << item.what
                          << (item.detail.empty() ? "" : " -- " + item.detail) << "\n";
            std::cerr << "suite " << rep.name << ": " << (rep.pass ? "PASS" : "FAIL") << "\n";
            return rep.pass ? kExitOk : kExitFails;
        }

        if (lst->parsed()) {
            std::cout << "suites:\n";
            for (const auto& n : classify::suite_names()) std::cout << "  " << n << "\n";
            std::cout << "properties:\n";
            std::cout << "  spacelike-osserman timelike-osserman\n"
                         "  spacelike-jordan-osserman timelike-jordan-osserman\n"
                         "  osserman-type:R,S jordan-osserman-type:R,S\n"
                         "  spacelike-ip timelike-ip mixed-ip\n"
                         "  spacelike-jordan-ip timelike-jordan-ip mixed-jordan-ip\n"
                         "  rank-constant:spacelike rank-constant:timelike rank-constant:mixed\n"
                         "  spacelike-szabo timelike-szabo spacelike-jordan-szabo "
                         "timelike-jordan-szabo\n"
                         "  almost-complex-jordan-ip two-nilpotent\n";
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
