#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cakecut/experiments.hpp"
#include "cakecut/format.hpp"
#include "cakecut/io.hpp"
#include "cakecut/render.hpp"

namespace {

using namespace cakecut;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrereq = 3;

std::string join_utilities(const std::vector<double>& u) {
    std::string s;
    for (size_t i = 0; i < u.size(); ++i) s += (i ? " " : "") + format_g12(u[i]);
    return s;
}

MechanismResult dispatch(const std::string& name, const CakeInstance& inst) {
    if (name == "ww") return run_ww(inst);
    if (name == "mww") return run_mww(inst);
    if (name == "ll") return run_ll(inst);
    if (name == "um") return run_um(inst);
    if (name == "envelope") return run_envelope_um(inst);
    throw DomainError("unknown mechanism: " + name);
}

int cmd_run(const std::string& mechanism, const std::string& instance_path,
            const std::string& out_path, bool waste_tolerant) {
    const auto inst = load_instance(instance_path, waste_tolerant);
    const auto res = dispatch(mechanism, inst);
    save_allocation(res.allocation, out_path);
    double sum = 0.0;
    for (double u : res.utilities) sum += u;
    std::cout << "mechanism: " << res.mechanism << '\n'
              << "utilities: " << join_utilities(res.utilities) << '\n'
              << "sum: " << format_g12(sum) << '\n'
              << "queries: eval=" << res.queries.eval_count()
              << " cut=" << res.queries.cut_count() << '\n'
              << "allocation: " << out_path << '\n';
    return kExitOk;
}

int cmd_audit(const std::string& instance_path, const std::string& allocation_path,
              std::vector<std::string> checks, double epsilon, bool waste_tolerant) {
    const auto inst = load_instance(instance_path, waste_tolerant);
    const auto alloc = load_allocation(allocation_path);
    if (checks.empty()) checks = {"ef", "prop", "po"};

    bool all_passed = true;
    bool inapplicable = false;
    for (const auto& check : checks) {
        if (check == "ef") {
            const auto rep = audit_envy_free(inst, alloc, epsilon);
            std::cout << "envy-free: " << (rep.passed ? "pass" : "fail");
            if (rep.envy)
                std::cout << "  agent " << rep.envy->envious + 1 << " envies agent "
                          << rep.envy->envied + 1 << ": own " << format_g12(rep.envy->own)
                          << " < " << format_g12(rep.envy->other);
            std::cout << '\n';
            all_passed &= rep.passed;
        } else if (check == "prop") {
            const auto rep = audit_proportional(inst, alloc, epsilon);
            std::cout << "proportional: " << (rep.passed ? "pass" : "fail");
            if (rep.share)
                std::cout << "  agent " << rep.share->agent + 1 << ": own "
                          << format_g12(rep.share->own) << " < 1/" << inst.n();
            std::cout << '\n';
            all_passed &= rep.passed;
        } else if (check == "po") {
            const auto v = audit_pareto_sp(inst, alloc);
            if (v.verdict == Pareto::PO) {
                std::cout << "pareto: pass\n";
            } else if (v.verdict == Pareto::NotPO) {
                std::cout << "pareto: fail";
                if (v.wasteful)
                    std::cout << "  agent " << v.wasteful->agent + 1 << " wastes ["
                              << format_g12(v.wasteful->interval.start) << ", "
                              << format_g12(v.wasteful->interval.end) << "]";
                if (v.order)
                    std::cout << "  agent " << v.order->left_owner + 1
                              << " sits left of agent " << v.order->right_owner + 1
                              << " against the peak order near "
                              << format_g12(v.order->left_iv.end);
                std::cout << '\n';
                all_passed = false;
            } else {
                std::cout << "pareto: inapplicable (" << v.reason << ")\n";
                inapplicable = true;
            }
        } else {
            std::cerr << "unknown check: " << check << " (expected ef, prop, po)\n";
            return kExitUsage;
        }
    }
    if (inapplicable) return kExitPrereq;
    return all_passed ? kExitOk : kExitCheckFailed;
}

int cmd_compare(const std::string& instance_path, const std::string& csv_path,
                bool waste_tolerant) {
    const auto inst = load_instance(instance_path, waste_tolerant);
    const auto table = compare_mechanisms(inst);

    std::cout << "mechanism  ef    prop  pareto        dom-ww  queries(e/c)  utilities\n";
    for (size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        std::ostringstream line;
        line << row.name;
        for (size_t pad = row.name.size(); pad < 11; ++pad) line << ' ';
        if (!row.applicable) {
            line << "inapplicable (" << row.skip_reason << ")";
        } else {
            const std::string pareto = row.pareto == Pareto::PO      ? "po"
                                       : row.pareto == Pareto::NotPO ? "not-po"
                                                                     : "inapplicable";
            line << (row.envy_free ? "yes   " : "no    ")
                 << (row.proportional ? "yes   " : "no    ") << pareto;
            for (size_t pad = pareto.size(); pad < 14; ++pad) line << ' ';
            line << (table.dominates[r][0] ? "yes" : "no ") << "     " << row.eval_queries << "/"
                 << row.cut_queries << "           " << join_utilities(row.utilities);
        }
        std::cout << line.str() << '\n';
    }
    if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw DomainError("cannot write " + csv_path);
        write_csv(table, f);
    }
    return kExitOk;
}

int cmd_experiment(const std::string& name, int n_min, int n_max, const std::string& csv_path) {
    if (name != "welfare-loss") {
        std::cerr << "unknown experiment: " << name << '\n';
        return kExitUsage;
    }
    const auto rows = welfare_loss_curve(n_min, n_max);
    std::ostringstream out;
    write_csv(rows, out);
    std::cout << out.str();
    if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw DomainError("cannot write " + csv_path);
        f << out.str();
    }
    return kExitOk;
}

int cmd_render(const std::string& instance_path, const std::string& allocation_path,
               const std::string& out_path, bool waste_tolerant) {
    const auto inst = load_instance(instance_path, waste_tolerant);
    std::string svg;
    if (allocation_path.empty()) {
        svg = render_svg(inst);
    } else {
        const auto alloc = load_allocation(allocation_path);
        svg = render_svg(inst, &alloc);
    }
    std::ofstream f(out_path);
    if (!f) throw DomainError("cannot write " + out_path);
    f << svg;
    std::cout << "wrote " << out_path << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cake-cutting with single-peaked valuations"};
    app.require_subcommand(1);

    std::string mechanism, instance_path, allocation_path, out_path, csv_path, experiment_name;
    std::vector<std::string> checks;
    double epsilon = kAuditTol;
    bool waste_tolerant = false;
    int n_min = 2, n_max = 10;

    auto* run = app.add_subcommand("run", "run a mechanism on an instance");
    run->add_option("--mechanism", mechanism, "ww|mww|ll|um|envelope")->required();
    run->add_option("--instance", instance_path)->required();
    run->add_option("--out", out_path, "allocation file to write")->required();
    run->add_flag("--waste-tolerant", waste_tolerant);

    auto* audit = app.add_subcommand("audit", "audit an allocation");
    audit->add_option("--instance", instance_path)->required();
    audit->add_option("--allocation", allocation_path)->required();
    audit->add_option("--checks", checks, "subset of ef,prop,po")->delimiter(',');
    audit->add_option("--epsilon", epsilon);
    audit->add_flag("--waste-tolerant", waste_tolerant);

    auto* compare = app.add_subcommand("compare", "run and audit the four mechanisms");
    compare->add_option("--instance", instance_path)->required();
    compare->add_option("--csv", csv_path);
    compare->add_flag("--waste-tolerant", waste_tolerant);

    auto* experiment = app.add_subcommand("experiment", "run a built-in experiment");
    experiment->add_option("name", experiment_name, "welfare-loss")->required();
    experiment->add_option("--n-min", n_min);
    experiment->add_option("--n-max", n_max);
    experiment->add_option("--csv", csv_path);

    auto* render = app.add_subcommand("render", "draw an instance (and allocation) as SVG");
    render->add_option("--instance", instance_path)->required();
    render->add_option("--allocation", allocation_path);
    render->add_option("--out", out_path)->required();
    render->add_flag("--waste-tolerant", waste_tolerant);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (run->parsed()) return cmd_run(mechanism, instance_path, out_path, waste_tolerant);
        if (audit->parsed())
            return cmd_audit(instance_path, allocation_path, checks, epsilon, waste_tolerant);
        if (compare->parsed()) return cmd_compare(instance_path, csv_path, waste_tolerant);
        if (experiment->parsed()) return cmd_experiment(experiment_name, n_min, n_max, csv_path);
        if (render->parsed())
            return cmd_render(instance_path, allocation_path, out_path, waste_tolerant);
    } catch (const PrereqViolated& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPrereq;
    } catch (const EmptySegment& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPrereq;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
