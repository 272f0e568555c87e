// lhskit: command-line surface for the metrological LHS-separability criteria.

#include "lhs/criteria.hpp"
#include "lhs/scenarios.hpp"
#include "lhs/state_io.hpp"

#include <CLI11.hpp>

#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::array<double, 3> parse_direction(const std::string& text) {
    if (text == "x") return {1.0, 0.0, 0.0};
    if (text == "y") return {0.0, 1.0, 0.0};
    if (text == "z") return {0.0, 0.0, 1.0};
    double theta = 0.0, phi = 0.0;
    char comma = 0;
    std::istringstream is(text);
    if (!(is >> theta >> comma >> phi) || comma != ',') {
        throw std::invalid_argument("direction '" + text + "' is not x|y|z or 'theta,phi'");
    }
    std::string rest;
    if (is >> rest) {
        throw std::invalid_argument("direction '" + text + "' has trailing content");
    }
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::vector<std::pair<std::size_t, std::size_t>> parse_wh_list(const std::vector<std::string>& items) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& item : items) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("wh entry '" + item + "' is not of the form w:h");
        }
        out.emplace_back(std::stoul(item.substr(0, colon)), std::stoul(item.substr(colon + 1)));
    }
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        throw std::runtime_error("cannot open '" + out_path + "' for writing");
    }
    out << text;
}

struct SearchFlags {
    std::size_t n_theta = 64;
    std::size_t n_phi = 32;
    double refine_tol = 1e-6;

    lhs::SettingSearch to_search() const {
        lhs::SettingSearch s;
        s.n_theta = n_theta;
        s.n_phi = n_phi;
        s.refine_tolerance = refine_tol;
        return s;
    }
};

void add_search_flags(CLI::App* cmd, SearchFlags& flags) {
    cmd->add_option("--n-theta", flags.n_theta, "Polar grid resolution")->check(CLI::Range(2, 4096));
    cmd->add_option("--n-phi", flags.n_phi, "Azimuthal grid resolution")->check(CLI::Range(2, 4096));
    cmd->add_option("--refine-tol", flags.refine_tol, "Objective tolerance of the local refinement")
        ->check(CLI::PositiveNumber);
}

int run_bell_example(const SearchFlags& flags, const std::string& out_path) {
    const lhs::QuantumState rho = lhs::build_bell_counterexample();
    const lhs::SettingSearch search = flags.to_search();
    const std::array<double, 3> z{0.0, 0.0, 1.0};
    const lhs::Partition partition = lhs::Partition::parse("B1|B2");

    std::ostringstream os;
    os << lhs::format_report(lhs::lambda_sep_test(rho, "A", partition, z, search)) << "\n";
    os << lhs::format_report(lhs::steering_test(rho, "A", z, search)) << "\n";
    const lhs::QuantumState rho_b = lhs::partial_trace(rho, {"B1", "B2"});
    os << lhs::format_report(lhs::reduced_sep_test(rho_b, partition, z)) << "\n";
    os << lhs::format_report(lhs::assisted_entanglement_test(rho, "A", {"B1"}, search));
    emit(os.str(), out_path);
    return 0;
}

int run_ghz_scan(std::size_t n, const std::vector<std::size_t>& blocks,
                 const std::vector<std::string>& wh_items, std::size_t p_steps,
                 const std::string& out_path) {
    const auto wh_list = parse_wh_list(wh_items);
    const auto rows = lhs::ghz_bound_scan(n, blocks, wh_list, p_steps);
    emit(lhs::scan_to_csv(rows, blocks, wh_list), out_path);
    return 0;
}

struct CriterionFlags {
    std::string name;
    std::string state_path;
    std::string a_party = "A";
    std::string partition_text;
    std::string direction_text = "z";
    std::string meas_direction_text;
    std::string cut_text;
    std::size_t w = 0;
    std::size_t h = 0;
    SearchFlags search;
    std::string out_path;
};

int run_criterion(const CriterionFlags& flags) {
    const lhs::QuantumState rho = lhs::read_state_file(flags.state_path);
    const std::array<double, 3> direction = parse_direction(flags.direction_text);
    const lhs::SettingSearch search = flags.search.to_search();

    auto require_partition = [&]() {
        if (flags.partition_text.empty()) {
            throw std::invalid_argument("criterion '" + flags.name + "' needs --partition");
        }
        return lhs::Partition::parse(flags.partition_text);
    };

    lhs::CriterionReport report;
    if (flags.name == "lambda-sep") {
        report = lhs::lambda_sep_test(rho, flags.a_party, require_partition(), direction, search);
    } else if (flags.name == "steering") {
        report = lhs::steering_test(rho, flags.a_party, direction, search);
    } else if (flags.name == "reduced-sep") {
        // The input is Bob's state; with --a-party present in the layout the
        // untrusted qubit is traced out first.
        const lhs::Partition partition = require_partition();
        if (rho.layout().has(flags.a_party)) {
            const lhs::QuantumState rho_b =
                lhs::partial_trace(rho, rho.layout().without(flags.a_party).parties());
            report = lhs::reduced_sep_test(rho_b, partition, direction);
        } else {
            report = lhs::reduced_sep_test(rho, partition, direction);
        }
    } else if (flags.name == "reid") {
        if (flags.meas_direction_text.empty()) {
            throw std::invalid_argument("criterion 'reid' needs --meas-direction");
        }
        const lhs::QubitLayout b_layout = rho.layout().without(flags.a_party);
        const lhs::HermitianObservable meas =
            lhs::collective_spin(b_layout, parse_direction(flags.meas_direction_text));
        report = lhs::reid_sep_test(rho, flags.a_party, require_partition(), direction, meas, search);
    } else if (flags.name == "wh-sep") {
        if (flags.w == 0 || flags.h == 0) {
            throw std::invalid_argument("criterion 'wh-sep' needs --w and --h");
        }
        report = lhs::wh_sep_test(rho, flags.a_party, flags.w, flags.h, search);
    } else if (flags.name == "assisted") {
        if (flags.cut_text.empty()) {
            throw std::invalid_argument("criterion 'assisted' needs --cut");
        }
        const lhs::Partition cut = lhs::Partition::parse(flags.cut_text);
        if (cut.blocks().size() > 2) {
            throw std::invalid_argument("--cut must name one side of a bipartition (or both sides "
                                        "separated by '|')");
        }
        report = lhs::assisted_entanglement_test(rho, flags.a_party, cut.blocks().front(), search);
    } else {
        throw std::invalid_argument("unknown criterion '" + flags.name + "'");
    }

    emit(lhs::format_report(report), flags.out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Metrological tests for the separability of local hidden states"};
    app.set_help_flag("--help", "Print this help message and exit");   // frees -h for wh-sep's --h
    app.require_subcommand(1);

    // bell-example
    SearchFlags bell_search;
    std::string bell_out;
    auto* bell = app.add_subcommand("bell-example",
                                    "Evaluate the built-in Bell-pair counterexample scenario");
    add_search_flags(bell, bell_search);
    bell->add_option("--out", bell_out, "Write the reports to a file instead of stdout");

    // ghz-scan
    std::size_t scan_n = 16;
    std::vector<std::size_t> scan_blocks{1, 2, 4, 8, 16};
    std::vector<std::string> scan_wh{"1:16", "16:1"};
    std::size_t scan_steps = 101;
    double scan_phi = 0.0;
    std::string scan_out;
    auto* scan = app.add_subcommand("ghz-scan", "Emit the analytic noisy-GHZ sweep as CSV");
    scan->add_option("--n", scan_n, "Bob's qubit count")->check(CLI::Range(1, 1000000));
    scan->add_option("--blocks", scan_blocks, "Block counts k (each must divide N)")->delimiter(',');
    scan->add_option("--wh", scan_wh, "Young classes as w:h entries")->delimiter(',');
    scan->add_option("--p-steps", scan_steps, "Number of p samples in [0,1]")
        ->check(CLI::Range(2, 1000000));
    scan->add_option("--phi", scan_phi,
                     "GHZ phase (the analytic z-generator bounds do not depend on it)");
    scan->add_option("--out", scan_out, "Write the CSV to a file instead of stdout");

    // criterion
    CriterionFlags crit;
    auto* criterion = app.add_subcommand("criterion", "Evaluate one criterion on a state file");
    criterion->add_option("--name", crit.name, "lambda-sep|steering|reduced-sep|reid|wh-sep|assisted")
        ->required();
    criterion->add_option("--state", crit.state_path, "Path to a state file")->required();
    criterion->add_option("--a-party", crit.a_party, "Label of the untrusted qubit (default A)");
    criterion->add_option("--partition", crit.partition_text, "Partition of Bob, e.g. B1,B2|B3");
    criterion->add_option("--direction", crit.direction_text,
                          "Generator spin direction: x|y|z or 'theta,phi' in radians");
    criterion->add_option("--meas-direction", crit.meas_direction_text,
                          "Measured collective-spin direction for the reid criterion");
    criterion->add_option("--w", crit.w, "Width bound for wh-sep");
    criterion->add_option("--h", crit.h, "Height bound for wh-sep");
    criterion->add_option("--cut", crit.cut_text, "One side of Bob's bipartition for assisted");
    add_search_flags(criterion, crit.search);
    criterion->add_option("--out", crit.out_path, "Write the report to a file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bell->parsed()) return run_bell_example(bell_search, bell_out);
        if (scan->parsed()) return run_ghz_scan(scan_n, scan_blocks, scan_wh, scan_steps, scan_out);
        if (criterion->parsed()) return run_criterion(crit);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
