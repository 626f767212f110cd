#include "frobavg/experiment.hpp"
#include "frobavg/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace frobavg;
using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);)
        if (!item.empty()) out.push_back(item);
    return out;
}

// "4" or "1-8"
std::pair<int, int> parse_range(const std::string& s) {
    const auto dash = s.find('-');
    if (dash == std::string::npos) return {std::stoi(s), std::stoi(s)};
    return {std::stoi(s.substr(0, dash)), std::stoi(s.substr(dash + 1))};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frobenius averages for rank-2 Drinfeld modules"};
    app.require_subcommand(1);

    std::uint32_t q = 3;
    std::string p_text, a_text = "0", d_text, gamma_text, delta_text, cache_path;
    unsigned u = 1, threads = 1;

    auto* charpoly = app.add_subcommand("charpoly", "Frobenius characteristic polynomial of T -> T + gamma tau + delta tau^2");
    charpoly->add_option("--q", q)->required();
    charpoly->add_option("--p", p_text)->required();
    charpoly->add_option("--gamma", gamma_text)->required();
    charpoly->add_option("--delta", delta_text)->required();

    auto* classnumber = app.add_subcommand("classnumber", "class number h(d)");
    classnumber->add_option("--q", q)->required();
    classnumber->add_option("--d", d_text)->required();
    classnumber->add_option("--cache", cache_path, "class-number cache file, read and updated");

    auto* mass = app.add_subcommand("mass", "Deuring-Gekeler mass H_p");
    mass->add_option("--q", q)->required();
    mass->add_option("--p", p_text)->required();
    mass->add_option("--a", a_text)->required();
    mass->add_option("--u", u)->required();
    mass->add_option("--cache", cache_path);

    TruncationParams trunc;
    std::optional<int> U, V, M;
    std::string route = "euler";
    auto* constant = app.add_subcommand("constant", "the constant C(a)");
    constant->add_option("--q", q)->required();
    constant->add_option("--a", a_text)->required();
    constant->add_option("--U", U);
    constant->add_option("--V", V);
    constant->add_option("--max-prime-deg", M);
    constant->add_option("--route", route)->check(CLI::IsMember({"euler", "doublesum", "both"}));

    std::string x_text, routes = "empirical,classnumber,main", out_path, csv_path;
    std::optional<int> deg_g, deg_delta;
    auto* average = app.add_subcommand("average", "empirical, class-number and main-term averages");
    average->add_option("--q", q)->required();
    average->add_option("--x", x_text, "degree, or a range such as 1-8")->required();
    average->add_option("--a", a_text)->required();
    average->add_option("--u", u)->required();
    average->add_option("--deg-g", deg_g);
    average->add_option("--deg-delta", deg_delta);
    average->add_option("--routes", routes);
    average->add_option("--out", out_path);
    average->add_option("--csv", csv_path);
    average->add_option("--threads", threads);
    average->add_option("--cache", cache_path);
    average->add_option("--max-prime-deg", M);

    std::vector<int> criteria;
    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance checks");
    verify_cmd->add_option("--criterion", criteria, "run only these criteria");
    verify_cmd->add_option("--threads", threads);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto F = GaloisField::create(q);
        ClassNumberCache cache;
        if (!cache_path.empty() && std::ifstream(cache_path)) cache.load(cache_path, F);
        auto save_cache = [&] {
            if (!cache_path.empty()) cache.save(cache_path);
        };

        if (*charpoly) {
            const auto K = FpField::create(parse_poly(F, p_text));
            const auto cp = frobenius_charpoly(FiniteDrinfeldModule(K, K->parse(gamma_text), K->parse(delta_text)));
            std::cout << json{{"a", format_poly(cp.a)}, {"u", cp.u}}.dump() << "\n";
        } else if (*classnumber) {
            std::cout << to_string(class_number(parse_poly(F, d_text), &cache)) << "\n";
            save_cache();
        } else if (*mass) {
            std::cout << to_string(hurwitz_mass(parse_poly(F, a_text), u, parse_poly(F, p_text), &cache)) << "\n";
            save_cache();
        } else if (*constant) {
            trunc = default_truncation(q);
            if (U) trunc.U = *U;
            if (V) trunc.V = *V;
            if (M) trunc.max_prime_deg = *M;
            const Poly a = parse_poly(F, a_text);
            json j{{"q", q}, {"a", format_poly(a)}, {"U", trunc.U}, {"V", trunc.V}, {"max_prime_deg", trunc.max_prime_deg}};
            if (route != "doublesum") {
                const Rational e = constant_C(a, trunc, CRoute::euler);
                j["euler"] = exact_json(e);
                j["euler_tail_bound"] = to_decimal(euler_tail_bound(q, trunc.max_prime_deg, e), 6);
            }
            if (route != "euler") {
                j["doublesum"] = exact_json(constant_C(a, trunc, CRoute::doublesum));
                j["doublesum_tail_bound"] = to_decimal(doublesum_tail_bound(q, trunc.U, trunc.V), 6);
            }
            std::cout << j.dump(2) << "\n";
        } else if (*average) {
            const auto [x_lo, x_hi] = parse_range(x_text);
            ExperimentConfig cfg;
            cfg.q = q;
            cfg.a = a_text;
            cfg.u = u;
            cfg.threads = threads;
            const auto rs = split(routes, ',');
            auto has = [&](const char* r) { return std::find(rs.begin(), rs.end(), r) != rs.end(); };
            cfg.empirical = has("empirical");
            cfg.classnumber = has("classnumber");
            cfg.main = has("main");
            if (M) {
                cfg.truncation = default_truncation(q);
                cfg.truncation->max_prime_deg = *M;
            }
            std::vector<ExperimentReport> reports;
            json arr = json::array();
            for (int x = x_lo; x <= x_hi; ++x) {
                cfg.x = x;
                if (deg_g || deg_delta) cfg.box = BoxSpec{deg_g.value_or(x), deg_delta.value_or(x)};
                reports.push_back(run_experiment(cfg, &cache));
                arr.push_back(to_json(reports.back()));
            }
            const json out = x_lo == x_hi ? arr[0] : json{{"schema", 1}, {"reports", arr}};
            if (out_path.empty())
                std::cout << out.dump(2) << "\n";
            else
                write_text(out_path, out.dump(2) + "\n");
            if (!csv_path.empty()) write_text(csv_path, to_csv(reports));
            save_cache();
        } else if (*verify_cmd) {
            bool ok = true;
            verify::run_all(criteria, std::max(1u, threads), [&](const verify::CriterionResult& r) {
                std::cout << verify::format_result(r) << std::endl;
                ok = ok && r.pass;
            });
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
