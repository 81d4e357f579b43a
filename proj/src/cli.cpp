#include "sckn/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "sckn/assembly.hpp"
#include "sckn/errors.hpp"
#include "sckn/oracles.hpp"
#include "sckn/regions.hpp"
#include "sckn/spectral.hpp"
#include "sckn/sweep.hpp"

namespace sckn::cli {

using sweep::format_double;

namespace {

struct OutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
    T value{};
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) throw DomainError("config: bad value for " + key + ": '" + text + "'");
    return value;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// key -> (getter, setter)
using Field = std::pair<std::function<std::string(const RunConfig&)>,
                        std::function<void(RunConfig&, const std::string&)>>;

const std::vector<std::pair<std::string, Field>>& fields() {
    static const std::vector<std::pair<std::string, Field>> table = [] {
        std::vector<std::pair<std::string, Field>> t;
        auto real = [&t](const char* key, double RunConfig::*member) {
            t.push_back({key, {[member](const RunConfig& c) { return format_double(c.*member); },
                               [member, key](RunConfig& c, const std::string& v) {
                                   c.*member = parse_number<double>(key, v);
                               }}});
        };
        auto integer = [&t](const char* key, int RunConfig::*member) {
            t.push_back({key, {[member](const RunConfig& c) { return std::to_string(c.*member); },
                               [member, key](RunConfig& c, const std::string& v) {
                                   c.*member = parse_number<int>(key, v);
                               }}});
        };
        auto text = [&t](const char* key, std::string RunConfig::*member) {
            t.push_back({key, {[member](const RunConfig& c) { return c.*member; },
                               [member](RunConfig& c, const std::string& v) { c.*member = v; }}});
        };
        text("command", &RunConfig::command);
        real("alpha", &RunConfig::alpha);
        real("p", &RunConfig::p);
        integer("N", &RunConfig::N);
        real("tol", &RunConfig::tol);
        real("alpha_lo", &RunConfig::alpha_lo);
        real("alpha_hi", &RunConfig::alpha_hi);
        real("p_lo", &RunConfig::p_lo);
        real("p_hi", &RunConfig::p_hi);
        integer("n_alpha", &RunConfig::n_alpha);
        integer("n_p", &RunConfig::n_p);
        real("exclude_band", &RunConfig::exclude_band);
        real("s_min", &RunConfig::s_min);
        real("s_max", &RunConfig::s_max);
        integer("s_points", &RunConfig::s_points);
        text("which", &RunConfig::which);
        text("out", &RunConfig::output_path);
        t.push_back({"format",
                     {[](const RunConfig& c) { return std::string(c.format == Format::Json ? "json" : "csv"); },
                      [](RunConfig& c, const std::string& v) {
                          if (v == "csv") c.format = Format::Csv;
                          else if (v == "json") c.format = Format::Json;
                          else throw DomainError("config: format must be csv or json");
                      }}});
        return t;
    }();
    return table;
}

void emit(const RunConfig& cfg, const std::string& payload, std::ostream& out) {
    if (cfg.output_path.empty() || cfg.output_path == "-") {
        out << payload;
        return;
    }
    std::ofstream file(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!file) throw OutputError("cannot open output file: " + cfg.output_path);
    file << payload;
    file.flush();
    if (!file) throw OutputError("write failed: " + cfg.output_path);
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    const auto pt = validate(cfg.alpha, cfg.p);
    const auto label = regions::classify(pt);
    out << "alpha=" << format_double(pt.alpha) << " p=" << format_double(pt.p) << '\n';
    out << regions::to_string(label.tag);
    if (!label.sources.empty()) {
        out << " sources=";
        for (std::size_t i = 0; i < label.sources.size(); ++i) {
            out << (i ? "," : "") << regions::to_string(label.sources[i]);
        }
    }
    out << '\n';
    out << "margin_symmetry=" << format_double(label.margins.symmetry) << '\n';
    out << "margin_corollary="
        << (label.margins.corollary ? format_double(*label.margins.corollary) : std::string("undefined")) << '\n';
    if (label.corollary_error) out << "corollary_note=" << *label.corollary_error << '\n';
    out << "margin_red=" << format_double(label.margins.red) << '\n';
    out << "margin_blue=" << format_double(label.margins.blue) << '\n';
    return kOk;
}

int cmd_eigen(const RunConfig& cfg, std::ostream& out) {
    const auto pt = validate(cfg.alpha, cfg.p);
    if (cfg.N < 4) throw DomainError("N must be at least 4");
    const auto m = assembly::assemble(pt, cfg.N);
    const auto r = spectral::solve(m);
    const double half = spectral::stability_eigenvalue(pt, std::max(4, cfg.N / 2));
    out << "alpha=" << format_double(pt.alpha) << '\n';
    out << "p=" << format_double(pt.p) << '\n';
    out << "N=" << cfg.N << '\n';
    out << "lambda_min=" << format_double(r.lambda_min) << '\n';
    out << "lambda_half=" << format_double(half) << '\n';
    out << "residual=" << format_double(r.residual) << '\n';
    out << "converged=" << (sweep::is_converged(r.lambda_min, half) ? "true" : "false") << '\n';
    out << "asymmetry=" << format_double(m.asymmetry) << '\n';
    out << "method=" << spectral::to_string(r.method) << '\n';
    return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    sweep::GridSpec grid;
    grid.alpha_range = {cfg.alpha_lo, cfg.alpha_hi};
    grid.p_range = {cfg.p_lo, cfg.p_hi};
    grid.n_alpha = cfg.n_alpha;
    grid.n_p = cfg.n_p;
    grid.N = cfg.N;
    grid.exclude_band = cfg.exclude_band;
    sweep::validate_grid(grid);
    // fail on an unwritable path before spending time on the grid
    if (!cfg.output_path.empty() && cfg.output_path != "-") emit(cfg, "", out);
    const auto rows = sweep::sign_map(grid);
    std::ostringstream payload;
    if (cfg.format == Format::Json) sweep::write_json(rows, payload);
    else sweep::write_csv(rows, payload);
    emit(cfg, payload.str(), out);
    return kOk;
}

int cmd_boundary(const RunConfig& cfg, std::ostream& out) {
    const auto b = sweep::boundary_bisect(cfg.p, cfg.N, cfg.tol);
    std::ostringstream payload;
    payload << "p,alpha_lo,alpha_hi,N\n"
            << format_double(cfg.p) << ',' << format_double(b.lo) << ',' << format_double(b.hi) << ',' << cfg.N
            << '\n';
    emit(cfg, payload.str(), out);
    return kOk;
}

int cmd_eigvec(const RunConfig& cfg, std::ostream& out) {
    const auto pt = validate(cfg.alpha, cfg.p);
    if (cfg.s_points < 2 || !(cfg.s_min < cfg.s_max)) throw DomainError("s range needs s_min < s_max and 2+ points");
    auto r = spectral::solve(assembly::assemble(pt, cfg.N));
    std::vector<double> s(static_cast<std::size_t>(cfg.s_points));
    for (int i = 0; i < cfg.s_points; ++i) {
        s[static_cast<std::size_t>(i)] = cfg.s_min + (cfg.s_max - cfg.s_min) * i / (cfg.s_points - 1);
    }
    const auto prof = spectral::eigenvector_to_s_profile(r, pt, s);
    std::ostringstream payload;
    payload << "s,phi1_abs,phi2_abs\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        payload << format_double(s[i]) << ',' << format_double(prof.upper[i]) << ','
                << format_double(prof.lower[i]) << '\n';
    }
    emit(cfg, payload.str(), out);
    return kOk;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
    std::vector<oracles::Check> checks;
    auto add = [&checks](const std::vector<oracles::Check>& more) { checks.insert(checks.end(), more.begin(), more.end()); };
    const std::string& w = cfg.which;
    if (w != "all" && w != "gegenbauer" && w != "fd" && w != "poschl-teller") {
        throw DomainError("--which must be gegenbauer, fd, poschl-teller or all");
    }
    if (w == "all" || w == "gegenbauer") add(oracles::gegenbauer_checks());
    if (w == "all" || w == "poschl-teller") add(oracles::poschl_teller_checks());
    if (w == "all" || w == "fd") add(oracles::fd_checks());
    for (const auto& c : checks) {
        out << (c.pass() ? "ok     " : "BREACH ") << c.name << " deviation=" << format_double(c.deviation)
            << " tolerance=" << format_double(c.tolerance) << '\n';
    }
    std::string worst;
    const double ratio = oracles::worst_ratio(checks, &worst);
    out << "worst=" << worst << " ratio=" << format_double(ratio) << '\n';
    return ratio <= 1.0 ? kOk : kOracle;
}

}  // namespace

std::string to_config_text(const RunConfig& cfg) {
    std::string text;
    for (const auto& [key, field] : fields()) text += key + "=" + field.first(cfg) + "\n";
    return text;
}

RunConfig parse_config_text(std::string_view text, RunConfig base) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw DomainError("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(std::string_view(t).substr(0, eq));
        const std::string value = trim(std::string_view(t).substr(eq + 1));
        const auto& table = fields();
        const auto it = std::find_if(table.begin(), table.end(), [&](const auto& f) { return f.first == key; });
        if (it == table.end()) throw DomainError("config: unknown key '" + key + "'");
        it->second.second(base, value);
    }
    return base;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        for (int i = 1; i < argc; ++i) {
            std::string arg = argv[i];
            std::string path;
            if (arg == "--config" && i + 1 < argc) path = argv[i + 1];
            else if (arg.rfind("--config=", 0) == 0) path = arg.substr(9);
            if (path.empty()) continue;
            std::ifstream in(path);
            if (!in) throw DomainError("cannot read config file: " + path);
            std::stringstream buf;
            buf << in.rdbuf();
            cfg = parse_config_text(buf.str(), cfg);
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    }

    CLI::App app{"Linear stability of the radial optimizer: classification, spectra, sweeps."};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "flat key=value file overriding defaults");

    auto point_opts = [&cfg](CLI::App* sub) {
        sub->add_option("--alpha", cfg.alpha, "alpha in (0, 1/2)")->capture_default_str();
        sub->add_option("--p", cfg.p, "p > 2")->capture_default_str();
    };
    auto out_opt = [&cfg](CLI::App* sub) {
        sub->add_option("--out", cfg.output_path, "output file, - for stdout")->capture_default_str();
    };

    auto* classify = app.add_subcommand("classify", "analytic region of a point");
    point_opts(classify);

    auto* eigen = app.add_subcommand("eigen", "smallest eigenvalue at truncation N");
    point_opts(eigen);
    eigen->add_option("--N", cfg.N, "per-block truncation")->capture_default_str();

    auto* sweep_cmd = app.add_subcommand("sweep", "sign map over an (alpha, p) grid");
    sweep_cmd->add_option("--alpha-lo", cfg.alpha_lo)->capture_default_str();
    sweep_cmd->add_option("--alpha-hi", cfg.alpha_hi)->capture_default_str();
    sweep_cmd->add_option("--p-lo", cfg.p_lo)->capture_default_str();
    sweep_cmd->add_option("--p-hi", cfg.p_hi)->capture_default_str();
    sweep_cmd->add_option("--n-alpha", cfg.n_alpha)->capture_default_str();
    sweep_cmd->add_option("--n-p", cfg.n_p)->capture_default_str();
    sweep_cmd->add_option("--exclude-band", cfg.exclude_band)->capture_default_str();
    sweep_cmd->add_option("--N", cfg.N)->capture_default_str();
    std::string format_name;
    sweep_cmd->add_option("--format", format_name, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    out_opt(sweep_cmd);

    auto* boundary = app.add_subcommand("boundary", "bisect the numerical boundary in alpha at fixed p");
    boundary->add_option("--p", cfg.p)->capture_default_str();
    boundary->add_option("--N", cfg.N)->capture_default_str();
    boundary->add_option("--tol", cfg.tol)->capture_default_str();
    out_opt(boundary);

    auto* eigvec = app.add_subcommand("eigvec", "reconstructed eigenvector on the s-line");
    point_opts(eigvec);
    eigvec->add_option("--N", cfg.N)->capture_default_str();
    eigvec->add_option("--s-min", cfg.s_min)->capture_default_str();
    eigvec->add_option("--s-max", cfg.s_max)->capture_default_str();
    eigvec->add_option("--s-points", cfg.s_points)->capture_default_str();
    out_opt(eigvec);

    auto* oracle = app.add_subcommand("oracle", "run the internal consistency oracles");
    oracle->add_option("--which", cfg.which, "gegenbauer, fd, poschl-teller or all")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    }
    if (!format_name.empty()) cfg.format = format_name == "json" ? Format::Json : Format::Csv;

    try {
        if (classify->parsed()) return cmd_classify(cfg, out);
        if (eigen->parsed()) return cmd_eigen(cfg, out);
        if (sweep_cmd->parsed()) return cmd_sweep(cfg, out);
        if (boundary->parsed()) return cmd_boundary(cfg, out);
        if (eigvec->parsed()) return cmd_eigvec(cfg, out);
        if (oracle->parsed()) return cmd_oracle(cfg, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const OutputError& e) {
        err << "error: " << e.what() << '\n';
        return kOutput;
    } catch (const Error& e) {
        err << "solver error: " << e.what() << '\n';
        return kSolver;
    }
    return kDomain;
}

}  // namespace sckn::cli
