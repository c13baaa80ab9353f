#include "spamstake/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

namespace spamstake {

namespace {

namespace fs = std::filesystem;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::unique_ptr<WhoisClient> make_whois(const RunConfig& config) {
    if (config.whois_fixture_path.empty())
        return std::make_unique<NullWhoisClient>();
    if (!fs::exists(config.whois_fixture_path))
        throw std::runtime_error("whois fixture not found: " + config.whois_fixture_path);
    return std::make_unique<FixtureWhoisClient>(FixtureWhoisClient::from_csv(
        config.whois_fixture_path, config.whois_default_days));
}

}  // namespace

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (!fs::exists(config.dataset_path)) {
            err << "simulate: dataset not found: " << config.dataset_path << "\n";
            return 2;
        }
        auto whois = make_whois(config);
        auto data = load_dataset(config.dataset_path);
        auto partition = partition_dataset(data, config.base_fraction,
                                           config.good_fraction, config.seed);
        SimulationTrace trace =
            run_simulation(partition, config.actors, config.rounds, config.ledger,
                           config.train, config.seed, *whois);
        trace.config_echo = config_to_text(config);
        emit_trace(trace, config.out_dir);
        out << "simulate: rounds=" << config.rounds
            << " final_accuracy=" << fmt_double(trace.round_accuracy.back())
            << " contract_balance=" << trace.round_contract.back() << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << "simulate: " << e.what() << "\n";
        return 2;
    }
}

int cmd_curve(const RunConfig& config, const std::vector<size_t>& sizes,
              std::ostream& out, std::ostream& err) {
    try {
        if (!fs::exists(config.dataset_path)) {
            err << "curve: dataset not found: " << config.dataset_path << "\n";
            return 2;
        }
        auto whois = make_whois(config);
        auto data = load_dataset(config.dataset_path);
        FeatureMatrix matrix = FeatureMatrix::from_rows(extract_rows(data, *whois));
        auto curve = accuracy_curve(matrix, sizes, config.train, config.seed);

        fs::create_directories(config.out_dir);
        fs::path path = fs::path(config.out_dir) / "curve.csv";
        std::ofstream file(path);
        if (!file) throw std::runtime_error("cannot write " + path.string());
        file << "size,accuracy\n";
        for (const auto& [size, acc] : curve)
            file << size << ',' << fmt_double(acc) << '\n';
        out << "curve: " << curve.size() << " sizes written to " << path.string() << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << "curve: " << e.what() << "\n";
        return 2;
    }
}

int cmd_extract(const std::string& url, const RunConfig& config, std::ostream& out,
                std::ostream& err) {
    try {
        auto whois = make_whois(config);
        FeatureVector fv = extract_features(url, *whois);
        out << "domain_length=" << fv.domain_length << " has_dash=" << fv.has_dash
            << " is_redirect=" << fv.is_redirect
            << " num_subdomains=" << fv.num_subdomains
            << " active_duration_days=" << fv.active_duration_days << "\n";
        return 0;
    } catch (const std::exception& e) {
        err << "extract: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace spamstake
