#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "qbargain/entangle.hpp"
#include "qbargain/mcsim.hpp"
#include "qbargain/rwgame.hpp"
#include "qbargain/serialize.hpp"
#include "qbargain/thermo.hpp"

namespace qbargain::cli {

using nlohmann::json;

namespace {

// Output sink: standard output, or a temporary file renamed over --out only
// after the command finished.
class Output {
public:
    Output(std::string path, std::ostream& fallback) : path_(std::move(path)), fallback_(fallback) {}

    std::ostream& stream() { return buffer_; }

    void commit() {
        if (path_.empty() || path_ == "-") {
            fallback_ << buffer_.str();
            return;
        }
        const std::string tmp = path_ + ".tmp";
        {
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            if (!f) throw std::runtime_error("cannot open '" + path_ + "' for writing");
            f << buffer_.str();
            f.flush();
            if (!f) {
                std::remove(tmp.c_str());
                throw std::runtime_error("failed writing '" + path_ + "'");
            }
        }
        std::error_code ec;
        std::filesystem::rename(tmp, path_, ec);
        if (ec) {
            std::remove(tmp.c_str());
            throw std::runtime_error("cannot move output into '" + path_ + "': " + ec.message());
        }
    }

private:
    std::string path_;
    std::ostream& fallback_;
    std::ostringstream buffer_;
};

std::string csv_row(std::initializer_list<double> values) {
    std::string line;
    for (double v : values) {
        if (!line.empty()) line += ',';
        line += io::format_double(v);
    }
    line += '\n';
    return line;
}

std::vector<Basis> parse_bases(const json& j, std::size_t n_states) {
    auto one = [](const json& b) {
        if (!b.is_array() || b.size() != 2) throw io::SpecError("basis must be [b0, b1]", std::string::npos);
        return Basis::make(io::state_from_json(b[0]), io::state_from_json(b[1]));
    };
    if (!j.is_array() || j.empty()) throw io::SpecError("--bases must be a JSON array", std::string::npos);
    // A single basis is [[c, c], [c, c]]; a list of bases nests one level deeper.
    const bool single = j.size() == 2 && j[0].is_array() && j[0].size() == 2 && j[0][0].is_array() &&
                        !j[0][0].empty() && j[0][0][0].is_number();
    if (single) return std::vector<Basis>(n_states * (n_states - 1) / 2, one(j));
    std::vector<Basis> out;
    for (const auto& b : j) out.push_back(one(b));
    return out;
}

json dominance_json(const DominanceMatrix& m) {
    json rows = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (auto d : row) r.push_back(to_string(d));
        rows.push_back(r);
    }
    return rows;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum bargaining model: analytic game, simulation and polarization algebra", "qbargain"};
    app.require_subcommand(1);

    std::function<void()> action;

    // surface ---------------------------------------------------------------
    rw::SurfaceSpec surface;
    std::string surface_out = "-";
    std::string surface_format = "csv";
    auto* cmd_surface = app.add_subcommand("surface", "Profit intensity over (a, p01) as CSV or JSON");
    cmd_surface->add_option("--a-min", surface.a_min, "Smallest a")->capture_default_str();
    cmd_surface->add_option("--a-max", surface.a_max, "Largest a")->capture_default_str();
    cmd_surface->add_option("--a-steps", surface.a_steps, "Grid points along a")
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))
        ->capture_default_str();
    cmd_surface->add_option("--p01-steps", surface.p01_steps, "Grid points along p01")
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))
        ->capture_default_str();
    cmd_surface->add_option("--out", surface_out, "Output path ('-' for stdout)");
    cmd_surface->add_option("--format", surface_format)->check(CLI::IsMember({"csv", "json"}));
    cmd_surface->callback([&] {
        action = [&] {
            surface.validate();
            const auto cells = rw::profit_surface(surface);
            Output o(surface_out, out);
            if (surface_format == "csv") {
                o.stream() << "a,p01,rho\n";
                for (const auto& c : cells) o.stream() << csv_row({c.a, c.p01, c.rho});
            } else {
                json arr = json::array();
                for (const auto& c : cells) arr.push_back({{"a", c.a}, {"p01", c.p01}, {"rho", c.rho}});
                o.stream() << arr.dump() << '\n';
            }
            o.commit();
        };
    });

    // optimize / fixed-point -------------------------------------------------
    double opt_p10 = 1.0;
    auto* cmd_opt = app.add_subcommand("optimize", "Withdrawal parameter maximizing the profit intensity");
    cmd_opt->add_option("--p10", opt_p10, "Probability that Alice proposes")->required()->check(CLI::Range(0.0, 1.0));
    cmd_opt->callback([&] {
        action = [&] {
            const auto r = rw::maximize_profit(opt_p10);
            out << json{{"p10", opt_p10}, {"a_star", r.a_star}, {"rho_star", r.rho_star}}.dump() << '\n';
        };
    });

    double fp_p10 = 0.0;
    double fp_tol = 1e-10;
    auto* cmd_fp = app.add_subcommand("fixed-point", "Iterate a <- rho(a) from a = 0");
    cmd_fp->add_option("--p10", fp_p10, "Probability that Alice proposes")->required()->check(CLI::Range(0.0, 1.0));
    cmd_fp->add_option("--tol", fp_tol, "Stop when successive iterates differ by less")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_fp->callback([&] {
        action = [&] {
            const auto r = rw::fixed_point(fp_p10, fp_tol);
            out << json{{"p10", fp_p10}, {"tol", fp_tol}, {"a_fix", r.a_fix}, {"iterations", r.iterations}}.dump()
                << '\n';
        };
    });

    // simulate ---------------------------------------------------------------
    std::string sim_alice, sim_bob, sim_out = "-";
    double sim_p10 = 1.0, sim_theta = 1.0;
    std::uint64_t sim_rounds = 0, sim_seed = 0;
    int sim_workers = 0;
    auto* cmd_sim = app.add_subcommand("simulate", "Monte Carlo run of repeated bargaining rounds");
    cmd_sim->add_option("--alice", sim_alice, "Alice law over q = -ln c (JSON spec)")->required();
    cmd_sim->add_option("--bob", sim_bob, "Bob law over p = ln c (JSON spec)")->required();
    cmd_sim->add_option("--p10", sim_p10, "Probability that Alice proposes")->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd_sim->add_option("--rounds", sim_rounds, "Bargaining rounds")->required()->check(CLI::PositiveNumber);
    cmd_sim->add_option("--seed", sim_seed, "RNG seed")->required();
    cmd_sim->add_option("--theta", sim_theta, "Round duration")->check(CLI::PositiveNumber)->capture_default_str();
    cmd_sim->add_option("--workers", sim_workers, "OpenMP threads (0 = runtime default)")->capture_default_str();
    cmd_sim->add_option("--out", sim_out, "Output path ('-' for stdout)");
    cmd_sim->callback([&] {
        action = [&] {
            mc::SimConfig cfg;
            try {
                cfg.pair.alice = io::parse_distribution(sim_alice);
            } catch (const io::SpecError& e) {
                throw io::SpecError("--alice: " + std::string(e.what()), e.position());
            }
            try {
                cfg.pair.bob = io::parse_distribution(sim_bob);
            } catch (const io::SpecError& e) {
                throw io::SpecError("--bob: " + std::string(e.what()), e.position());
            }
            cfg.p10 = sim_p10;
            cfg.rounds = sim_rounds;
            cfg.seed = sim_seed;
            cfg.theta = sim_theta;
            cfg.validate();
            const auto report = mc::run_simulation(cfg, sim_workers);
            json j = io::to_json(report);
            const auto* alice = std::get_if<Dirac>(&cfg.pair.alice);
            const auto* bob = std::get_if<Gaussian>(&cfg.pair.bob);
            if (alice && bob && bob->mean == 0.0 && bob->sigma == 1.0 && report.defined) {
                j["comparison"] =
                    io::to_json(mc::compare_with_analytic(report, {alice->location, cfg.p10, cfg.theta}));
            }
            Output o(sim_out, out);
            o.stream() << j.dump(2) << '\n';
            o.commit();
        };
    });

    // dominance / rps-demo ---------------------------------------------------
    std::string dom_states, dom_bases;
    auto* cmd_dom = app.add_subcommand("dominance", "Pairwise dominance and cycle search");
    cmd_dom->add_option("--states", dom_states, "JSON array of states [[re,im],[re,im]]")->required();
    cmd_dom->add_option("--bases", dom_bases,
                        "One basis [b0,b1] for every pair, or one per pair in (0,1),(0,2),...,(1,2),... order")
        ->required();
    cmd_dom->callback([&] {
        action = [&] {
            const json js = io::parse_document(dom_states);
            if (!js.is_array() || js.size() < 2)
                throw io::SpecError("--states must list at least two states", std::string::npos);
            std::vector<QubitState> states;
            for (const auto& s : js) states.push_back(io::state_from_json(s));
            auto pair_basis = pair_bases_from_list(states.size(), parse_bases(io::parse_document(dom_bases), states.size()));
            json j;
            if (states.size() >= 3) {
                const auto rep = dominance_cycle(states, pair_basis);
                j = {{"outcome", dominance_json(rep.outcome)}, {"has_cycle", rep.has_cycle}, {"cycle", rep.cycle}};
            } else {
                j = {{"outcome", dominance_json(dominance_matrix(states, pair_basis))},
                     {"has_cycle", false},
                     {"cycle", json::array()}};
            }
            out << j.dump(2) << '\n';
        };
    });

    auto* cmd_rps = app.add_subcommand("rps-demo", "Built-in 120-degree witness of non-transitive dominance");
    cmd_rps->callback([&] {
        action = [&] {
            const auto w = rps_witness();
            const auto cyc = dominance_cycle(w.states, w.cyclic());
            const Basis shared = w.bases[0];
            const auto flat = dominance_cycle(w.states, [&](std::size_t, std::size_t) { return shared; });
            json states = json::array();
            for (const auto& s : w.states) states.push_back(io::to_json(s));
            out << json{{"states", states},
                        {"pair_bases", {{"A,B", "basis of A"}, {"B,C", "basis of B"}, {"A,C", "basis of C"}}},
                        {"outcome", dominance_json(cyc.outcome)},
                        {"has_cycle", cyc.has_cycle},
                        {"cycle", cyc.cycle},
                        {"shared_basis", {{"outcome", dominance_json(flat.outcome)}, {"has_cycle", flat.has_cycle}}}}
                       .dump(2)
                << '\n';
        };
    });

    // entropy / risk temperature ---------------------------------------------
    double ent_lo = -10.0, ent_hi = 10.0;
    std::size_t ent_steps = 201;
    std::string ent_out = "-", ent_format = "csv";
    auto* cmd_ent = app.add_subcommand("entropy", "Shannon entropy and convex weights over beta_s");
    cmd_ent->add_option("--beta-min", ent_lo)->capture_default_str();
    cmd_ent->add_option("--beta-max", ent_hi)->capture_default_str();
    cmd_ent->add_option("--steps", ent_steps)
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))
        ->capture_default_str();
    cmd_ent->add_option("--out", ent_out, "Output path ('-' for stdout)");
    cmd_ent->add_option("--format", ent_format)->check(CLI::IsMember({"csv", "json"}));
    cmd_ent->callback([&] {
        action = [&] {
            if (!(ent_lo < ent_hi)) throw std::invalid_argument("--beta-min must be below --beta-max");
            Output o(ent_out, out);
            json arr = json::array();
            if (ent_format == "csv") o.stream() << "beta_s,entropy,w_plus,w_minus\n";
            for (std::size_t i = 0; i < ent_steps; ++i) {
                const double t = static_cast<double>(i) / static_cast<double>(ent_steps - 1);
                const double beta = ent_lo * (1.0 - t) + ent_hi * t;
                const double s = thermo::shannon_entropy(beta);
                const auto w = thermo::convex_weights(beta);
                if (ent_format == "csv") o.stream() << csv_row({beta, s, w.w_plus, w.w_minus});
                else arr.push_back({{"beta_s", beta}, {"entropy", s}, {"w_plus", w.w_plus}, {"w_minus", w.w_minus}});
            }
            if (ent_format == "json") o.stream() << arr.dump() << '\n';
            o.commit();
        };
    });

    thermo::RiskTempParams risk{0.0, 0.0, 0.0};
    double s2b_sigma = 0.0, b2s_beta = 0.0;
    auto add_risk_opts = [&](CLI::App* c) {
        c->add_option("--h-e", risk.h_e, "Economic Planck-constant analogue")->required();
        c->add_option("--theta", risk.theta, "Round duration")->required();
        c->add_option("--const", risk.conserved, "Conserved sigma^2 tanh(h_e beta / 2 theta)")->required();
    };
    auto* cmd_s2b = app.add_subcommand("sigma-to-beta", "Risk inverse temperature from dispersion");
    cmd_s2b->add_option("--sigma", s2b_sigma)->required();
    add_risk_opts(cmd_s2b);
    cmd_s2b->callback([&] {
        action = [&] { out << json{{"beta", thermo::risk_beta_from_sigma(s2b_sigma, risk)}}.dump() << '\n'; };
    });
    auto* cmd_b2s = app.add_subcommand("beta-to-sigma", "Dispersion from risk inverse temperature");
    cmd_b2s->add_option("--beta", b2s_beta)->required();
    add_risk_opts(cmd_b2s);
    cmd_b2s->callback([&] {
        action = [&] { out << json{{"sigma", thermo::sigma_from_risk_beta(b2s_beta, risk)}}.dump() << '\n'; };
    });

    // ------------------------------------------------------------------------
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kArgumentError;
    }

    try {
        if (action) action();
        return kOk;
    } catch (const io::SpecError& e) {
        err << "error: " << e.what();
        if (e.position() != std::string::npos) err << " (position " << e.position() << ")";
        err << '\n';
        return kArgumentError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kArgumentError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
}

}  // namespace qbargain::cli
