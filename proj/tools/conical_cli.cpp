#include "conical/cli.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

using nlohmann::json;
using namespace conical;

int emit(const json& report, const std::optional<std::string>& out) {
    const std::string text = report.dump(2) + "\n";
    if (!out) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(*out, std::ios::binary);
    if (!f || !(f << text)) {
        std::cerr << "cannot write " << *out << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral and reducibility toolkit for spherical conical metrics on the sphere"};
    app.require_subcommand(1);

    std::optional<std::string> config_path, beta, extension, out, profile_csv;
    std::optional<int> n, k_max;
    std::optional<double> lambda_max, tol;
    bool exact = false;

    for (const char* name : {"spectrum", "reduce", "series-verify", "eigenspace", "bochner-check", "profile"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON run configuration");
        sub->add_option("--beta", beta, "cone parameter of a football: p/q, integer or decimal");
        sub->add_option("--n", n, "degree of a power cover");
        sub->add_option("--extension", extension, "friedrichs or holomorphic");
        sub->add_option("--k-max", k_max, "largest |k| scanned");
        sub->add_option("--lambda-max", lambda_max, "upper end of the eigenvalue scan");
        sub->add_option("--tol", tol, "residual bound for reported eigenvalues");
        sub->add_flag("--exact", exact, "exact rational arithmetic");
        sub->add_option("--out", out, "write the JSON report here instead of stdout");
        sub->add_option("--profile-csv", profile_csv, "CSV destination for the profile command");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << json{{"error", {{"stage", "arguments"}, {"kind", "ArgumentError"}, {"message", e.what()}}}}.dump(2)
                  << "\n";
        return 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    cli::RunConfig config;
    std::string stage = "config";
    try {
        if (config_path) {
            config = cli::load_config(*config_path);
        } else if (!beta && !n) {
            throw config_error("MissingField", "give --config, --beta or --n");
        }
        json j = cli::to_json(config);
        if (!config_path) j.erase("beta");
        if (beta) {
            j["family"] = "football";
            j["beta"] = *beta;
            j.erase("n");
        }
        if (n) {
            j["family"] = "power_cover";
            j["n"] = *n;
            j.erase("beta");
        }
        if (extension) j["extension"] = *extension;
        if (k_max) j["k_max"] = *k_max;
        if (lambda_max) j["lambda_max"] = *lambda_max;
        if (tol) j["tol"] = *tol;
        if (exact) j["exact"] = true;
        config = cli::parse_config(j);

        cli::Runner runner(config, profile_csv);
        json report;
        try {
            report = runner.run(command);
        } catch (const Error&) {
            stage = runner.stage();
            throw;
        }
        if (int rc = emit(report, out)) return rc;
        return runner.status();
    } catch (const Error& e) {
        emit(cli::error_payload(stage, e), out);
        return cli::exit_code(e.error_class());
    } catch (const std::exception& e) {
        emit(json{{"error", {{"stage", stage}, {"kind", "InternalError"}, {"message", e.what()}}}}, out);
        return 3;
    }
}
