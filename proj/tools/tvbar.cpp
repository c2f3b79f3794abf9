#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tvbar/tvbar.hpp"

namespace {

using tvbar::json;

std::uint64_t env_seed() {
    const char* s = std::getenv("TVBAR_SEED");
    if (!s || !*s) return 0;
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw tvbar::Error("TVBAR_SEED must be a nonnegative integer");
    }
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    return tvbar::read_file(path);
}

bool looks_like_json(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{' || c == '[';
    }
    return false;
}

tvbar::Signal load_signal(const std::string& path) {
    const std::string text = read_input(path);
    if (looks_like_json(text)) return tvbar::signal_from_json(tvbar::parse_json(text, path));
    return tvbar::Signal(tvbar::grid_from_csv(text));
}

tvbar::BarCode load_code(const std::string& path) {
    return tvbar::barcode_from_json(tvbar::parse_json(read_input(path), path));
}

// One manifest per invocation, written next to the primary file output.
struct Emitter {
    std::string command;
    json parameters = json::object();
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::uint64_t seed = 0;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void input(const std::string& path) {
        if (path != "-") inputs.push_back(path);
    }

    void emit(const std::string& path, const std::string& content) {
        if (path == "-" || path.empty()) {
            std::cout << content;
            return;
        }
        tvbar::write_file(path, content);
        outputs.push_back(path);
    }

    void finish() {
        if (outputs.empty()) return;
        tvbar::RunManifest m;
        m.command = command;
        m.parameters = parameters;
        m.inputs = inputs;
        m.outputs = outputs;
        m.seed = seed;
        m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        tvbar::write_file(outputs.front() + ".manifest.json", to_json(m).dump(2) + "\n");
    }
};

std::optional<tvbar::EndpointClass> parse_endpoints(const std::string& s) {
    if (s.empty()) return std::nullopt;
    if (s.size() != 3 || s[1] != ',' || (s[0] != '0' && s[0] != '1') || (s[2] != '0' && s[2] != '1'))
        throw tvbar::Error("endpoints must look like 0,0 or 1,0 or 0,1 or 1,1");
    return tvbar::EndpointClass{s[0] - '0', s[2] - '0'};
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw tvbar::Error("expected a comma-separated list of numbers");
    return out;
}

tvbar::Kernel make_kernel(const std::string& kind, double size, double trunc, const std::string& profile_path) {
    if (kind == "hat") return tvbar::Kernel::hat(size);
    if (kind == "gaussian") return tvbar::Kernel::gaussian(size, trunc);
    if (kind == "tabulated") {
        if (profile_path.empty()) throw tvbar::Error("tabulated kernel needs --profile x,p CSV");
        const tvbar::GridSignal g = tvbar::grid_from_csv(read_input(profile_path));
        std::vector<std::pair<double, double>> prof;
        for (std::size_t i = 0; i < g.samples.size(); ++i) prof.emplace_back(g.x(i), g.samples[i]);
        return tvbar::Kernel::tabulated(size, prof);
    }
    throw tvbar::Error("unknown kernel kind: " + kind);
}

// ---- subcommands ----

int cmd_synth(const std::string& out, double omega, int max_bars, std::uint64_t seed, const std::string& endpoints) {
    Emitter em;
    em.command = "synth";
    em.seed = seed;
    em.parameters = json{{"omega", omega}, {"max_bars", max_bars}, {"endpoints", endpoints}};
    tvbar::GeneratorConfig cfg;
    cfg.omega = omega;
    cfg.max_bars = max_bars;
    cfg.seed = seed;
    cfg.endpoints = parse_endpoints(endpoints);
    const tvbar::BarCode z = tvbar::generate(cfg);
    json j = tvbar::to_json(z);
    j["omega"] = omega;
    j["x_dimension"] = z.empty() ? json(nullptr) : json(z.x_dimension());
    em.emit(out, j.dump(2) + "\n");
    em.finish();
    return 0;
}

int cmd_blur(const std::string& in, const std::string& out, const std::string& kind, double sigma, double trunc,
             const std::string& profile, const std::string& format, double h, double pad) {
    Emitter em;
    em.command = "blur";
    em.input(in);
    em.parameters = json{{"kernel", kind}, {"sigma", sigma}, {"format", format}, {"h", h}, {"pad", pad}};
    const tvbar::BarCode z = load_code(in);

    if (format == "json" && kind == "hat") {
        const tvbar::Signal f = tvbar::hat_convolve(z, sigma);
        em.emit(out, tvbar::to_json(f).dump(2) + "\n");
        em.finish();
        return 0;
    }

    const tvbar::Kernel k = make_kernel(kind, sigma, trunc, profile);
    const double radius = k.support_radius();
    if (h <= 0.0) h = sigma / 400.0;
    if (pad <= 0.0) pad = std::ceil(radius / h) * h;
    const tvbar::GridSpec spec = tvbar::GridSpec::cover(-pad, 1.0 + pad, h);

    tvbar::Signal f = (kind == "hat")
                          ? tvbar::Signal(tvbar::hat_convolve(z, sigma).sampled(spec.x0, spec.h, spec.n),
                                          "hat blur sampled")
                          : tvbar::grid_convolve(z, k, spec);
    if (format == "json")
        em.emit(out, tvbar::to_json(f).dump(2) + "\n");
    else
        em.emit(out, tvbar::to_csv(f.grid()));
    em.finish();
    return 0;
}

int cmd_noise(const std::string& in, const std::string& out, double amplitude, double omega, std::uint64_t seed) {
    Emitter em;
    em.command = "noise";
    em.input(in);
    em.seed = seed;
    em.parameters = json{{"amplitude", amplitude}, {"omega", omega}};
    const tvbar::Signal f = load_signal(in);
    if (!f.is_grid()) throw tvbar::Error("noise expects a sampled signal; blur with --format csv first");
    tvbar::NoiseConfig cfg;
    cfg.amplitude = amplitude;
    cfg.seed = seed;
    em.emit(out, tvbar::to_csv(tvbar::add_noise(f.grid(), cfg, omega)));
    em.finish();
    return 0;
}

int cmd_certify(const std::string& out, const std::string& functional, double omega, double sigma, double rho,
                double lambda, bool unified, bool strict) {
    Emitter em;
    em.command = "certify";
    em.parameters = json{{"functional", functional}, {"omega", omega}, {"sigma", sigma},
                         {"rho", rho},               {"lambda", lambda}, {"unified", unified}};
    tvbar::Certificate cert;
    if (unified) {
        cert = tvbar::certify_unified(omega, sigma, rho > 0.0 ? rho : sigma, lambda);
    } else {
        const tvbar::Functional fn = tvbar::functional_from_string(functional);
        tvbar::EnergyParams p;
        switch (fn) {
        case tvbar::Functional::F1:
            p = tvbar::EnergyParams::f1(lambda, sigma);
            break;
        case tvbar::Functional::F2:
            p = tvbar::EnergyParams::f2(lambda, sigma);
            break;
        case tvbar::Functional::F3:
            p = tvbar::EnergyParams::f3(lambda, sigma, rho);
            break;
        }
        cert = tvbar::certify(p, omega);
    }
    em.emit(out, tvbar::to_json(cert).dump(2) + "\n");
    em.finish();
    if (!cert.certified && strict) {
        std::cerr << "certify: parameters are outside the certified regime\n";
        return 1;
    }
    return 0;
}

int cmd_dualnorm(const std::string& in, const std::string& out) {
    Emitter em;
    em.command = "dualnorm";
    em.input(in);
    const tvbar::Signal f = load_signal(in);
    em.emit(out, json{{"dual_norm", tvbar::dual_norm(f)}}.dump(2) + "\n");
    em.finish();
    return 0;
}

int cmd_kernel_check(const std::string& out, const std::string& kind, double size, double trunc,
                     const std::string& profile, bool strict) {
    Emitter em;
    em.command = "kernel-check";
    em.parameters = json{{"kernel", kind}, {"size", size}};
    const tvbar::Kernel k = make_kernel(kind, size, trunc, profile);
    const tvbar::KernelAdmissibility adm = tvbar::check_condition_J(k);
    em.emit(out, tvbar::to_json(adm).dump(2) + "\n");
    em.finish();
    if (strict && !adm.in_K3) {
        std::cerr << "kernel-check: kernel is not admissible\n";
        return 1;
    }
    return 0;
}

int cmd_paper_check(bool verbose) {
    (void)verbose;
    const tvbar::CheckReport r = tvbar::paper_check();
    for (const tvbar::CheckLine& line : r.lines)
        std::cout << (line.passed ? "PASS  " : "FAIL  ") << line.name << "  (" << line.detail << ")\n";
    std::cout << (r.all_passed ? "all checks passed\n" : "some checks FAILED\n");
    return r.all_passed ? 0 : 1;
}

tvbar::EnergyParams build_params(const std::string& functional, double lambda, double sigma, double rho) {
    const tvbar::Functional fn = tvbar::functional_from_string(functional);
    switch (fn) {
    case tvbar::Functional::F1:
        return tvbar::EnergyParams::f1(lambda, sigma);
    case tvbar::Functional::F2:
        return tvbar::EnergyParams::f2(lambda, sigma);
    case tvbar::Functional::F3:
        if (!(rho > 0.0)) throw tvbar::Error("F3 needs --rho");
        return tvbar::EnergyParams::f3(lambda, sigma, rho);
    }
    throw tvbar::Error("unknown functional");
}

int cmd_oracle(const std::string& in, const std::string& observe_code, const std::string& out,
               const std::string& functional, double lambda, const std::string& lambdas, double sigma, double rho,
               int grid_points, int max_interfaces, const std::string& endpoints,
               const std::vector<std::string>& extras, std::size_t budget, int jobs, const std::string& format) {
    Emitter em;
    em.command = "oracle";
    em.parameters = json{{"functional", functional}, {"lambda", lambda},     {"lambdas", lambdas},
                         {"sigma", sigma},           {"rho", rho},           {"grid_points", grid_points},
                         {"max_interfaces", max_interfaces}, {"endpoints", endpoints}, {"jobs", jobs}};

    tvbar::Signal f = [&] {
        if (!observe_code.empty()) {
            em.input(observe_code);
            return tvbar::hat_convolve(load_code(observe_code), sigma);
        }
        if (in.empty()) throw tvbar::Error("oracle needs --input or --observe-code");
        em.input(in);
        return load_signal(in);
    }();

    tvbar::SearchSpace space;
    space.grid_points = grid_points;
    space.max_interfaces = max_interfaces;
    space.endpoint_constraint = parse_endpoints(endpoints);
    space.budget_cap = budget;
    for (const std::string& path : extras) {
        em.input(path);
        space.extra_candidates.push_back(load_code(path));
    }

    const tvbar::EnergyParams params = build_params(functional, lambda > 0.0 ? lambda : 1.0, sigma, rho);

    if (!lambdas.empty()) {
        const tvbar::SweepResult sweep = tvbar::sweep_lambda(space, f, params, parse_list(lambdas), jobs);
        if (format == "csv") {
            std::ostringstream os;
            os << std::setprecision(17) << "lambda,tv,fidelity,total\n";
            for (const tvbar::SweepPoint& p : sweep.points)
                os << p.lambda << ',' << p.tv << ',' << p.fidelity << ',' << p.total << '\n';
            em.emit(out, os.str());
        } else {
            em.emit(out, tvbar::to_json(sweep).dump(2) + "\n");
        }
        em.finish();
        return 0;
    }

    if (!(lambda > 0.0)) throw tvbar::Error("oracle needs --lambda or --lambdas");
    const tvbar::OracleResult r = tvbar::minimize(space, f, params, jobs);
    em.emit(out, tvbar::to_json(r).dump(2) + "\n");
    em.finish();
    return 0;
}

int cmd_deblur(const std::string& in, const std::string& prefix, const std::string& functional, double sigma,
               double rho, double lambda, double epsilon, double dt, long max_steps, double steady_tol,
               const std::string& init, double h, double pad, double omega, const std::string& generating,
               std::uint64_t seed, bool strict) {
    Emitter em;
    em.command = "deblur";
    em.seed = seed;
    em.input(in);
    em.parameters = json{{"functional", functional}, {"sigma", sigma},   {"rho", rho},
                         {"lambda", lambda},         {"epsilon", epsilon}, {"dt", dt},
                         {"max_steps", max_steps},   {"steady_tol", steady_tol}, {"init", init},
                         {"h", h},                   {"pad", pad},       {"omega", omega}};

    const tvbar::Signal f = load_signal(in);
    const tvbar::Functional fn = tvbar::functional_from_string(functional);
    double rho_eff = rho;
    if (fn == tvbar::Functional::F2) rho_eff = sigma;
    if (fn == tvbar::Functional::F1) rho_eff = 0.0;
    if (fn == tvbar::Functional::F3 && !(rho_eff > 0.0)) throw tvbar::Error("F3 needs --rho");

    if (omega > 0.0) {
        const tvbar::EnergyParams p = build_params(functional, lambda, sigma, rho_eff);
        const tvbar::Certificate cert = tvbar::certify(p, omega);
        if (!cert.certified) {
            if (strict) {
                std::cerr << "deblur: parameters are outside the certified regime (--strict)\n";
                return 1;
            }
            std::cerr << "deblur: warning: parameters are outside the certified regime\n";
        }
    }

    tvbar::SolverConfig cfg;
    cfg.epsilon = epsilon;
    cfg.lambda = lambda;
    if (rho_eff > 0.0) cfg.deblur_kernel = tvbar::Kernel::hat(rho_eff);
    cfg.dt = dt;
    cfg.max_steps = max_steps;
    cfg.steady_tol = steady_tol;
    if (init == "half")
        cfg.init = tvbar::SolverConfig::Init::Half;
    else if (init != "zero")
        throw tvbar::Error("init must be 'zero' or 'half'");
    if (h > 0.0)
        cfg.h = h;
    else if (omega > 0.0)
        cfg.h = omega / 400.0;
    else if (f.is_grid())
        cfg.h = f.grid().h;
    else
        cfg.h = sigma / 400.0;
    cfg.pad = pad > 0.0 ? pad : std::max(0.05, 2.0 * rho_eff);

    const tvbar::SolveResult res = tvbar::deblur(f, cfg);
    if (!res.converged) std::cerr << "deblur: warning: no steady state within max_steps\n";

    json summary = tvbar::to_json(res);
    std::optional<tvbar::BarCode> gen;
    if (!generating.empty()) {
        em.input(generating);
        gen = load_code(generating);
        if (gen->total_variation() == res.code.total_variation()) {
            double worst = 0.0;
            for (std::size_t i = 0; i < gen->interfaces().size(); ++i)
                worst = std::max(worst, std::abs(gen->interfaces()[i] - res.code.interfaces()[i]));
            summary["interface_max_distance"] = worst;
        } else {
            summary["interface_max_distance"] = nullptr;
            summary["interface_count_mismatch"] = true;
        }
    }

    if (prefix != "-" && !prefix.empty()) {
        em.emit(prefix + "_field.csv", tvbar::to_csv(res.field));
        em.emit(prefix + "_code.json", tvbar::to_json(res.code).dump(2) + "\n");
        em.emit(prefix + ".svg",
                tvbar::overlay_svg(gen ? &*gen : nullptr, &f, &res.field, &res.code));
    }
    std::cout << summary.dump(2) << "\n";
    em.finish();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bar code blur and total-variation deblur toolkit"};
    app.require_subcommand(1);
    std::uint64_t seed_default = 0;

    try {
        seed_default = env_seed();
    } catch (const tvbar::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    // synth
    auto* synth = app.add_subcommand("synth", "generate a random bar code");
    std::string synth_out = "-", synth_endpoints;
    double synth_omega = 0.05;
    int synth_max_bars = 10;
    std::uint64_t synth_seed = seed_default;
    synth->add_option("--omega", synth_omega, "minimal feature width");
    synth->add_option("--max-bars", synth_max_bars, "upper bound on the number of bars");
    synth->add_option("--seed", synth_seed, "RNG seed");
    synth->add_option("--endpoints", synth_endpoints, "endpoint values, e.g. 0,0");
    synth->add_option("--output,-o", synth_out, "output path or -");

    // blur
    auto* blur = app.add_subcommand("blur", "convolve a bar code with a kernel");
    std::string blur_in = "-", blur_out = "-", blur_kind = "hat", blur_profile, blur_format = "csv";
    double blur_sigma = 0.05, blur_trunc = 4.0, blur_h = 0.0, blur_pad = 0.0;
    blur->add_option("--input,-i", blur_in, "bar code JSON path or -");
    blur->add_option("--kernel", blur_kind, "hat, gaussian, or tabulated");
    blur->add_option("--sigma", blur_sigma, "kernel size (hat radius or gaussian stddev)");
    blur->add_option("--trunc", blur_trunc, "gaussian truncation multiple");
    blur->add_option("--profile", blur_profile, "tabulated profile CSV");
    blur->add_option("--format", blur_format, "csv or json");
    blur->add_option("--grid-h", blur_h, "sample spacing (default sigma/400)");
    blur->add_option("--pad", blur_pad, "extension beyond [0,1]");
    blur->add_option("--output,-o", blur_out, "output path or -");

    // noise
    auto* noise = app.add_subcommand("noise", "add block noise to a sampled signal");
    std::string noise_in = "-", noise_out = "-";
    double noise_a = 0.1, noise_omega = 0.05;
    std::uint64_t noise_seed = seed_default;
    noise->add_option("--input,-i", noise_in, "signal CSV path or -");
    noise->add_option("--amplitude", noise_a, "noise amplitude");
    noise->add_option("--omega", noise_omega, "feature width fixing the block size")->required();
    noise->add_option("--seed", noise_seed, "RNG seed");
    noise->add_option("--output,-o", noise_out, "output path or -");

    // deblur
    auto* deblur = app.add_subcommand("deblur", "phase-field gradient-flow reconstruction");
    std::string deblur_in = "-", deblur_prefix = "deblur", deblur_functional = "F2", deblur_init = "zero";
    std::string deblur_generating;
    double deblur_sigma = 0.05, deblur_rho = 0.0, deblur_lambda = 0.0, deblur_eps = 0.0004, deblur_dt = 0.0;
    double deblur_tol = 1e-8, deblur_h = 0.0, deblur_pad = 0.0, deblur_omega = 0.0;
    long deblur_steps = 150000;
    std::uint64_t deblur_seed = seed_default;
    bool deblur_strict = false;
    deblur->add_option("--input,-i", deblur_in, "signal CSV/JSON path or -");
    deblur->add_option("--functional", deblur_functional, "F1, F2, or F3");
    deblur->add_option("--sigma", deblur_sigma, "blur radius of the observation");
    deblur->add_option("--rho", deblur_rho, "deblur radius (F3)");
    deblur->add_option("--lambda", deblur_lambda, "fidelity weight")->required();
    deblur->add_option("--epsilon", deblur_eps, "interface width");
    deblur->add_option("--dt", deblur_dt, "time step (0 = auto)");
    deblur->add_option("--max-steps", deblur_steps, "step budget");
    deblur->add_option("--steady-tol", deblur_tol, "sup-norm change defining steady state");
    deblur->add_option("--init", deblur_init, "zero or half");
    deblur->add_option("--grid-h", deblur_h, "grid spacing (default omega/400)");
    deblur->add_option("--pad", deblur_pad, "domain extension beyond [0,1]");
    deblur->add_option("--omega", deblur_omega, "feature width (grid default + certificate check)");
    deblur->add_option("--generating", deblur_generating, "generating code JSON for the overlay/report");
    deblur->add_option("--seed", deblur_seed, "recorded in the manifest");
    deblur->add_flag("--strict", deblur_strict, "fail when outside the certified regime");
    deblur->add_option("--output,-o", deblur_prefix, "output prefix for field/code/svg, or -");

    // certify
    auto* certify = app.add_subcommand("certify", "check the certified-recovery conditions");
    std::string cert_out = "-", cert_functional = "F2";
    double cert_omega = 0.0, cert_sigma = 0.0, cert_rho = 0.0, cert_lambda = 0.0;
    bool cert_unified = false, cert_strict = false;
    certify->add_option("--functional", cert_functional, "F1, F2, or F3");
    certify->add_option("--omega", cert_omega, "X dimension")->required();
    certify->add_option("--sigma", cert_sigma, "blur radius")->required();
    certify->add_option("--rho", cert_rho, "deblur radius");
    certify->add_option("--lambda", cert_lambda, "fidelity weight")->required();
    certify->add_flag("--unified", cert_unified, "use the combined condition");
    certify->add_flag("--strict", cert_strict, "exit 1 when outside the certified regime");
    certify->add_option("--output,-o", cert_out, "output path or -");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exhaustive minimization over grid codes");
    std::string oracle_in, oracle_code, oracle_out = "-", oracle_functional = "F2", oracle_endpoints;
    std::string oracle_lambdas, oracle_format = "json";
    std::vector<std::string> oracle_extras;
    double oracle_lambda = 0.0, oracle_sigma = 0.05, oracle_rho = 0.0;
    int oracle_grid = 21, oracle_max_if = 4, oracle_jobs = 1;
    std::size_t oracle_budget = 5'000'000;
    oracle->add_option("--input,-i", oracle_in, "observation signal CSV/JSON");
    oracle->add_option("--observe-code", oracle_code, "bar code JSON to blur with --sigma instead of --input");
    oracle->add_option("--functional", oracle_functional, "F1, F2, or F3");
    oracle->add_option("--lambda", oracle_lambda, "fidelity weight");
    oracle->add_option("--lambdas", oracle_lambdas, "comma-separated sweep values");
    oracle->add_option("--sigma", oracle_sigma, "blur radius");
    oracle->add_option("--rho", oracle_rho, "deblur radius (F3)");
    oracle->add_option("--grid-points", oracle_grid, "interface grid resolution");
    oracle->add_option("--max-interfaces", oracle_max_if, "even cap on interfaces");
    oracle->add_option("--endpoints", oracle_endpoints, "endpoint constraint, e.g. 0,0");
    oracle->add_option("--extra", oracle_extras, "extra candidate JSON (repeatable)");
    oracle->add_option("--budget", oracle_budget, "candidate budget cap");
    oracle->add_option("--jobs", oracle_jobs, "worker threads");
    oracle->add_option("--format", oracle_format, "json or csv (sweeps)");
    oracle->add_option("--output,-o", oracle_out, "output path or -");

    // dualnorm
    auto* dualnorm = app.add_subcommand("dualnorm", "dual TV norm of a signal");
    std::string dual_in = "-", dual_out = "-";
    dualnorm->add_option("--input,-i", dual_in, "signal CSV/JSON path or -");
    dualnorm->add_option("--output,-o", dual_out, "output path or -");

    // kernel-check
    auto* kcheck = app.add_subcommand("kernel-check", "kernel class membership report");
    std::string kc_out = "-", kc_kind = "hat", kc_profile;
    double kc_size = 0.05, kc_trunc = 4.0;
    bool kc_strict = false;
    kcheck->add_option("--kernel", kc_kind, "hat, gaussian, or tabulated");
    kcheck->add_option("--size", kc_size, "support radius or stddev");
    kcheck->add_option("--trunc", kc_trunc, "gaussian truncation multiple");
    kcheck->add_option("--profile", kc_profile, "tabulated profile CSV");
    kcheck->add_flag("--strict", kc_strict, "exit 1 when not admissible");
    kcheck->add_option("--output,-o", kc_out, "output path or -");

    // paper-check
    auto* pcheck = app.add_subcommand("paper-check", "run the closed-form verification battery");
    bool pc_verbose = false;
    pcheck->add_flag("--verbose", pc_verbose, "unused; checks always print");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return 64;
    }

    try {
        if (synth->parsed()) return cmd_synth(synth_out, synth_omega, synth_max_bars, synth_seed, synth_endpoints);
        if (blur->parsed())
            return cmd_blur(blur_in, blur_out, blur_kind, blur_sigma, blur_trunc, blur_profile, blur_format, blur_h,
                            blur_pad);
        if (noise->parsed()) return cmd_noise(noise_in, noise_out, noise_a, noise_omega, noise_seed);
        if (deblur->parsed())
            return cmd_deblur(deblur_in, deblur_prefix, deblur_functional, deblur_sigma, deblur_rho, deblur_lambda,
                              deblur_eps, deblur_dt, deblur_steps, deblur_tol, deblur_init, deblur_h, deblur_pad,
                              deblur_omega, deblur_generating, deblur_seed, deblur_strict);
        if (certify->parsed())
            return cmd_certify(cert_out, cert_functional, cert_omega, cert_sigma, cert_rho, cert_lambda, cert_unified,
                               cert_strict);
        if (oracle->parsed())
            return cmd_oracle(oracle_in, oracle_code, oracle_out, oracle_functional, oracle_lambda, oracle_lambdas,
                              oracle_sigma, oracle_rho, oracle_grid, oracle_max_if, oracle_endpoints, oracle_extras,
                              oracle_budget, oracle_jobs, oracle_format);
        if (dualnorm->parsed()) return cmd_dualnorm(dual_in, dual_out);
        if (kcheck->parsed()) return cmd_kernel_check(kc_out, kc_kind, kc_size, kc_trunc, kc_profile, kc_strict);
        if (pcheck->parsed()) return cmd_paper_check(pc_verbose);
        std::cerr << "error: no subcommand\n";
        return 64;
    } catch (const tvbar::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const tvbar::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
