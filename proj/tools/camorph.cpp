// camorph: exact construction, verification, fusion and duality of amorphic
// C-algebras over Q(sqrt(n)), with canonical JSON files on every surface.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "camorph/amorphic.hpp"
#include "camorph/calgebra.hpp"
#include "camorph/duality.hpp"
#include "camorph/fusion.hpp"
#include "camorph/realization.hpp"

using namespace camorph;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

// a leading '{' means inline JSON, anything else is a file path
nlohmann::json read_json_arg(const std::string& arg) {
    std::string trimmed = arg;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
        trimmed.erase(trimmed.begin());
    if (!trimmed.empty() && trimmed.front() == '{') return nlohmann::json::parse(arg);
    return read_json_file(arg);
}

void emit(const nlohmann::json& j, const std::string& out_path) {
    std::string text = canonical_dump(j);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write " + out_path);
        out << text;
    }
}

int parse_eps(const std::string& s) {
    if (s == "1" || s == "+1") return 1;
    if (s == "-1") return -1;
    throw std::invalid_argument("epsilon must be +1 or -1, got '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with amorphic C-algebras"};
    app.require_subcommand(1);

    std::string spec_arg, in_path, out_path, plane_path, partition_arg, d_arg, eps_arg = "-1";
    long q = 0, nu = 0;
    std::int64_t gen_n = 0;
    unsigned seed = 42;
    int jobs = 0;
    std::size_t cap = 12;
    bool check_amorphic = false, check_table = false;

    auto* cmd_build = app.add_subcommand("build", "construct the amorphic algebra of a degree spec");
    cmd_build->add_option("--spec", spec_arg, "degree spec JSON (inline or file)")->required();
    cmd_build->add_option("--out", out_path, "output file (default stdout)");

    auto* cmd_gen = app.add_subcommand("build-genaffine", "construct a generalized affine algebra");
    cmd_gen->add_option("--n", gen_n, "perfect-square total degree")->required();
    cmd_gen->add_option("--eps", eps_arg, "+1 or -1")->required();
    cmd_gen->add_option("--out", out_path, "output file (default stdout)");

    auto* cmd_realize = app.add_subcommand("realize", "affine-plane matrix realization");
    auto* opt_q = cmd_realize->add_option("--q", q, "plane order (prime)");
    auto* opt_plane = cmd_realize->add_option("--plane", plane_path, "plane incidence file");
    opt_q->excludes(opt_plane);
    cmd_realize->add_option("--out", out_path, "output file (default stdout)");

    auto* cmd_verify = app.add_subcommand("verify", "axioms + associativity (+ optional checks)");
    cmd_verify->add_option("--in", in_path, "algebra file")->required();
    cmd_verify->add_flag("--amorphic", check_amorphic, "also check the amorphic criterion");
    cmd_verify->add_flag("--table", check_table, "also check nonnegativity of the constants");
    cmd_verify->add_option("--jobs", jobs, "worker threads (0 = default)");

    auto* cmd_fuse = app.add_subcommand("fuse", "fuse an algebra along a partition");
    cmd_fuse->add_option("--in", in_path, "algebra file")->required();
    cmd_fuse->add_option("--partition", partition_arg, "partition JSON (inline or file)")->required();
    cmd_fuse->add_option("--out", out_path, "output file (default stdout)");

    auto* cmd_fuse_all = app.add_subcommand("fuse-all", "enumerate all fusions");
    cmd_fuse_all->add_option("--in", in_path, "algebra file")->required();
    cmd_fuse_all->add_option("--cap", cap, "dimension cap (default 12)");
    cmd_fuse_all->add_option("--jobs", jobs, "worker threads (0 = default)");

    auto* cmd_fission = app.add_subcommand("fission", "homogeneous parent + partition");
    cmd_fission->add_option("--in", in_path, "algebra file")->required();
    cmd_fission->add_option("--d", d_arg, "parent degree p/q, or 'auto' for 1/lcm of denominators")
        ->required();
    cmd_fission->add_option("--out", out_path, "output file (default stdout)");

    auto* cmd_aut = app.add_subcommand("aut", "automorphism group of an amorphic algebra");
    cmd_aut->add_option("--in", in_path, "algebra file")->required();

    auto* cmd_recover = app.add_subcommand("recover", "degree multiset and sign of an amorphic algebra");
    cmd_recover->add_option("--in", in_path, "algebra file")->required();

    auto* cmd_latin = app.add_subcommand("latin", "Latin-square parameters (m, g_r, type)");
    cmd_latin->add_option("--in", in_path, "algebra file")->required();

    auto* cmd_region = app.add_subcommand("table-region", "table-algebra feasibility of (nu, d, eps)");
    cmd_region->add_option("--nu", nu, "dimension (>= 4)")->required();
    cmd_region->add_option("--eps", eps_arg, "+1 or -1")->required();
    cmd_region->add_option("--d", d_arg, "degree p/q")->required();

    std::string eigen_out;
    auto* cmd_dual = app.add_subcommand("dual", "dual algebra via the character table");
    cmd_dual->add_option("--in", in_path, "algebra file")->required();
    cmd_dual->add_option("--out", out_path, "output file (default stdout)");
    cmd_dual->add_option("--eigen-out", eigen_out, "write the eigenmatrices P, Q here");
    cmd_dual->add_option("--seed", seed, "seed for the numeric stage");

    auto* cmd_selfdual = app.add_subcommand("selfdual", "self-duality checks");
    cmd_selfdual->add_option("--in", in_path, "algebra file")->required();
    cmd_selfdual->add_option("--seed", seed, "seed for the numeric stage");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        return kExitInputError;
    }

    try {
        if (cmd_build->parsed()) {
            DegreeSpec spec = read_json_arg(spec_arg).get<DegreeSpec>();
            emit(construct(spec), out_path);
            return kExitOk;
        }
        if (cmd_gen->parsed()) {
            emit(generalized_affine(Rat(static_cast<long>(gen_n)), parse_eps(eps_arg)), out_path);
            return kExitOk;
        }
        if (cmd_realize->parsed()) {
            if ((q != 0) == !plane_path.empty())
                throw std::invalid_argument("use exactly one of --q and --plane");
            AffinePlane plane = q != 0 ? build_plane(q) : load_plane(read_json_file(plane_path));
            emit(matrix_algebra(plane), out_path);
            return kExitOk;
        }
        if (cmd_verify->parsed()) {
            CAlgebra a = algebra_from_json(read_json_file(in_path));
            VerificationReport rep = verify_axioms(a);
            VerificationReport assoc = verify_associativity(a, jobs);
            rep.checks.insert(rep.checks.end(), assoc.checks.begin(), assoc.checks.end());
            if (check_amorphic) {
                VerificationReport am = is_amorphic(a);
                rep.checks.insert(rep.checks.end(), am.checks.begin(), am.checks.end());
            }
            nlohmann::json j = rep;
            bool ok = rep.ok();
            if (check_table) {
                TableCheck tc = table_check(a);
                j["table"] = tc;
                ok = ok && tc.is_table;
                j["ok"] = ok;
            }
            emit(j, "");
            return ok ? kExitOk : kExitVerifyFailed;
        }
        if (cmd_fuse->parsed()) {
            CAlgebra a = algebra_from_json(read_json_file(in_path));
            Partition pi = read_json_arg(partition_arg).get<Partition>();
            FuseResult r = fuse(a, pi);
            if (std::holds_alternative<NotClosed>(r)) {
                const auto& nc = std::get<NotClosed>(r);
                emit(nlohmann::json{{"not_closed",
                                     {{"class_r", nc.class_r},
                                      {"class_s", nc.class_s},
                                      {"t1", nc.t1},
                                      {"t2", nc.t2},
                                      {"detail", nc.detail}}}},
                     "");
                return kExitVerifyFailed;
            }
            emit(std::get<CAlgebra>(r), out_path);
            return kExitOk;
        }
        if (cmd_fuse_all->parsed()) {
            CAlgebra a = algebra_from_json(read_json_file(in_path));
            FuseAllSummary s = fuse_all(a, cap, jobs);
            emit(s, "");
            return s.all_closed() ? kExitOk : kExitVerifyFailed;
        }
        if (cmd_fission->parsed()) {
            CAlgebra a = algebra_from_json(read_json_file(in_path));
            Rat d = (d_arg == "auto") ? rational_fission_witness(a) : parse_rat(d_arg);
            Fission f = fission(a, d);
            emit(nlohmann::json{{"d", rat_str(d)}, {"parent", f.parent}, {"pi", f.pi}}, out_path);
            return kExitOk;
        }
        if (cmd_aut->parsed()) {
            emit(aut_group(algebra_from_json(read_json_file(in_path))), "");
            return kExitOk;
        }
        if (cmd_recover->parsed()) {
            emit(recover_spec(algebra_from_json(read_json_file(in_path))), "");
            return kExitOk;
        }
        if (cmd_latin->parsed()) {
            LatinParams lp = latin_params(algebra_from_json(read_json_file(in_path)));
            emit(nlohmann::json{{"m", lp.m},
                                {"epsilon", lp.epsilon},
                                {"g", std::vector<QuadNum>(lp.g.begin(), lp.g.end())},
                                {"type", lp.epsilon == -1 ? "latin-square" : "negative-latin-square"}},
                 "");
            return kExitOk;
        }
        if (cmd_region->parsed()) {
            emit(table_region(nu, parse_eps(eps_arg), parse_rat(d_arg)), "");
            return kExitOk;
        }
        if (cmd_dual->parsed()) {
            CAlgebra a = algebra_from_json(read_json_file(in_path));
            emit(dual_algebra(a, seed), out_path);
            if (!eigen_out.empty()) emit(characters(a, seed), eigen_out);
            return kExitOk;
        }
        if (cmd_selfdual->parsed()) {
            SelfDualityReport rep = verify_selfduality(algebra_from_json(read_json_file(in_path)), seed);
            emit(rep, "");
            return rep.ok() ? kExitOk : kExitVerifyFailed;
        }
        throw std::invalid_argument("no subcommand");
    } catch (const nlohmann::json::exception& ex) {
        emit(nlohmann::json{{"error", ex.what()}}, "");
        return kExitInputError;
    } catch (const std::exception& ex) {
        emit(nlohmann::json{{"error", ex.what()}}, "");
        return kExitInputError;
    }
}
