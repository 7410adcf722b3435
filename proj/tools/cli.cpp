#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "dessin/dessin_correlators.hpp"
#include "dessin/hurwitz.hpp"
#include "dessin/lue.hpp"
#include "dessin/verify.hpp"

using json = nlohmann::ordered_json;
using namespace dessin;

namespace {

constexpr const char* kSchema = "dessin-toda/1";

struct OutputTarget {
    std::string path;
    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open output file: " + path);
        os << text;
    }
};

void warn_above_cap(const std::string& what, long value, long cap) {
    if (value > cap)
        std::cerr << "warning: " << what << " " << value << " is above the default cap " << cap
                  << "\n";
}

Partition parse_mu(const std::vector<int>& parts) {
    if (parts.empty()) throw CLI::ValidationError("--mu", "at least one part required");
    for (int p : parts)
        if (p < 1) throw CLI::ValidationError("--mu", "parts must be positive");
    return Partition::of_unsorted(parts);
}

std::string dessins_report(const Partition& mu, const std::string& format) {
    auto counts = n_kl(mu);
    if (format == "json") {
        json j;
        j["schema"] = kSchema;
        j["command"] = "dessins";
        j["mu"] = mu.parts();
        j["entries"] = json::array();
        for (const auto& e : counts)
            j["entries"].push_back({{"k", e.k}, {"l", e.l}, {"g", e.g}, {"value", e.value.str()}});
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    if (format == "csv") {
        os << "k,l,g,value\n";
        for (const auto& e : counts)
            os << e.k << "," << e.l << "," << e.g << "," << e.value.str() << "\n";
        return os.str();
    }
    os << "dessin counts for mu = " << mu.str() << "\n";
    for (const auto& e : counts)
        os << "  k=" << e.k << " l=" << e.l << " g=" << e.g << "  N = " << e.value.str() << "\n";
    return os.str();
}

std::string polynomial_report(const std::string& command, const Partition& mu,
                              const MultiPoly& value, const std::vector<std::string>& vars,
                              const std::string& format) {
    if (format == "json") {
        json j;
        j["schema"] = kSchema;
        j["command"] = command;
        j["mu"] = mu.parts();
        j["variables"] = vars;
        j["value"] = value.str();
        return j.dump(2) + "\n";
    }
    if (format == "csv") {
        std::ostringstream os;
        os << "mu,value\n\"" << mu.str() << "\",\"" << value.str() << "\"\n";
        return os.str();
    }
    return value.str() + "\n";
}

std::string hurwitz_report(int g, const Partition& mu, const Partition& nu, long long value,
                           const std::string& format) {
    if (format == "json") {
        json j;
        j["schema"] = kSchema;
        j["command"] = "hurwitz";
        j["g"] = g;
        j["mu"] = mu.parts();
        j["nu"] = nu.parts();
        j["value"] = value;
        return j.dump(2) + "\n";
    }
    if (format == "csv") {
        std::ostringstream os;
        os << "g,mu,nu,value\n"
           << g << ",\"" << mu.str() << "\",\"" << nu.str() << "\"," << value << "\n";
        return os.str();
    }
    return std::to_string(value) + "\n";
}

std::string verify_report(const std::string& suite, const std::vector<VerifyItem>& items,
                          const std::string& format) {
    bool all_ok = true;
    for (const auto& it : items) all_ok = all_ok && it.ok;
    if (format == "json") {
        json j;
        j["schema"] = kSchema;
        j["command"] = "verify";
        j["suite"] = suite;
        j["items"] = json::array();
        for (const auto& it : items) {
            json e = {{"name", it.name}, {"ok", it.ok}};
            if (!it.detail.empty()) e["detail"] = it.detail;
            j["items"].push_back(e);
        }
        j["all_ok"] = all_ok;
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    if (format == "csv") {
        os << "name,ok,detail\n";
        for (const auto& it : items)
            os << it.name << "," << (it.ok ? "1" : "0") << ",\"" << it.detail << "\"\n";
        return os.str();
    }
    for (const auto& it : items) {
        os << (it.ok ? "PASS " : "FAIL ") << it.name;
        char buf[32];
        std::snprintf(buf, sizeof(buf), " (%.2fs)", it.seconds);
        os << buf;
        if (!it.ok && !it.detail.empty()) os << "\n     " << it.detail;
        os << "\n";
    }
    os << (all_ok ? "all checks passed" : "FAILURES present") << "\n";
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact dessin / Laguerre-ensemble / Toda-lattice computations"};
    app.set_config("--config", "", "key=value configuration file (flags win)");

    std::string format = "pretty";
    std::string out_path;
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "pretty"}))
        ->capture_default_str();
    app.add_option("--out", out_path, "write the report to a file instead of stdout");

    std::vector<int> mu_arg, nu_arg;
    int g_arg = 0;
    int weight = 8, lambda_order = 10, eps_order = 8, threads = 1;

    auto* cmd_dessins = app.add_subcommand("dessins", "table of weighted dessin counts");
    cmd_dessins->add_option("--mu", mu_arg, "pole orders")->delimiter(',')->required();

    auto* cmd_corr = app.add_subcommand("correlator", "connected correlator as a polynomial");
    cmd_corr->add_option("--mu", mu_arg, "insertions")->delimiter(',')->required();

    auto* cmd_lue = app.add_subcommand("lue", "connected Laguerre-ensemble correlator");
    cmd_lue->add_option("--mu", mu_arg, "trace powers")->delimiter(',')->required();

    auto* cmd_hurwitz = app.add_subcommand("hurwitz", "strictly monotone double Hurwitz number");
    cmd_hurwitz->add_option("--mu", mu_arg, "first cycle type")->delimiter(',')->required();
    cmd_hurwitz->add_option("--nu", nu_arg, "second cycle type")->delimiter(',')->required();
    cmd_hurwitz->add_option("--g", g_arg, "genus")->check(CLI::NonNegativeNumber);

    std::string suite = "all";
    auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
    cmd_verify->add_option("suite", suite, "oracles|virasoro|toda|hurwitz|barnes|genus|all");
    cmd_verify->add_option("--weight", weight, "coupling-weight window")->capture_default_str();
    cmd_verify->add_option("--lambda-order", lambda_order, "tail order")->capture_default_str();
    cmd_verify->add_option("--eps-order", eps_order, "epsilon order")->capture_default_str();
    cmd_verify->add_option("--threads", threads, "suite-level parallelism")->capture_default_str();

    app.require_subcommand(1);
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    }

    OutputTarget target{out_path};
    try {
        if (*cmd_dessins) {
            Partition mu = parse_mu(mu_arg);
            warn_above_cap("coupling weight", mu.weight(), 8);
            warn_above_cap("insertions", mu.length(), 5);
            target.write(dessins_report(mu, format));
            return 0;
        }
        if (*cmd_corr) {
            Partition mu = parse_mu(mu_arg);
            warn_above_cap("coupling weight", mu.weight(), 8);
            warn_above_cap("insertions", mu.length(), 5);
            target.write(
                polynomial_report("correlator", mu, correlator(mu.parts()), {"n", "w"}, format));
            return 0;
        }
        if (*cmd_lue) {
            Partition mu = parse_mu(mu_arg);
            warn_above_cap("coupling weight", mu.weight(), 8);
            warn_above_cap("insertions", mu.length(), 5);
            target.write(
                polynomial_report("lue", mu, lue_correlator(mu.parts()), {"n", "a"}, format));
            return 0;
        }
        if (*cmd_hurwitz) {
            Partition mu = parse_mu(mu_arg);
            Partition nu = parse_mu(nu_arg);
            warn_above_cap("degree", mu.weight(), 8);
            long long value =
                strictly_monotone_hurwitz(g_arg, mu, nu, std::max(8, mu.weight()));
            target.write(hurwitz_report(g_arg, mu, nu, value, format));
            return 0;
        }
        if (*cmd_verify) {
            warn_above_cap("coupling weight", weight, 8);
            warn_above_cap("tail order", lambda_order, 10);
            warn_above_cap("epsilon order", eps_order, 8);
            VerifyOptions opt;
            opt.weight = weight;
            opt.lambda_order = lambda_order;
            opt.eps_order = eps_order;
            opt.threads = threads;
            auto items = run_suite(suite, opt);
            target.write(verify_report(suite, items, format));
            for (const auto& it : items)
                if (!it.ok) return 1;
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal verification failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
