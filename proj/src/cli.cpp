#include "dirac3t/cli.hpp"

#include <CLI11.hpp>
#include <fstream>

#include "dirac3t/errors.hpp"
#include "dirac3t/parallel.hpp"
#include "dirac3t/serialization.hpp"

namespace dirac3t::cli {

namespace {

void emit(const std::string& payload, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << payload;
        if (!payload.empty() && payload.back() != '\n') out << "\n";
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw DomainError("cli", "cannot open output file '" + out_path + "'");
    f << payload;
}

ParameterLattice lattice_from_flag(const std::string& s) {
    return saturate_and_cosets(io::parse_generators(s));
}

struct Options {
    std::string khat, alpha = "0,0,0", loop, lattice, cutoff, R, degrees, format = "json", out;
    std::string dump_matrix, norm_k = "1";
    int samples = 64, grid = 96, levels = 2, threads = 0;
    std::int64_t h = 1, rank = 0;
    std::int64_t chern = 0, count = 10000;
    bool have_rank = false, have_chern = false;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectra, spectral flows, indices and small-R spectral sections for "
                 "Spin^c Dirac families on the flat 3-torus"};
    app.require_subcommand(0, 1);
    Options o;
    app.add_option("--threads", o.threads, "cap worker threads (env DIRAC3T_THREADS)");

    auto add_common = [&](CLI::App* c, bool needs_khat) {
        if (needs_khat) c->add_option("--khat", o.khat, "Spin^c class a,b,c")->required();
        c->add_option("--out", o.out, "write output to file instead of stdout");
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "closed-form eigenvalues up to a cutoff");
    add_common(spectrum, true);
    spectrum->add_option("--alpha", o.alpha, "harmonic form x,y,z (pi literals allowed)");
    spectrum->add_option("--cutoff", o.cutoff, "spectral cutoff")->required();
    spectrum->add_option("--format", o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    CLI::App* flow = app.add_subcommand("flow", "spectral flow along an integer loop");
    add_common(flow, true);
    flow->add_option("--loop", o.loop, "loop class a,b,c")->required();
    flow->add_option("--samples", o.samples, "tracker samples (>= 16)");

    CLI::App* index = app.add_subcommand("index", "K^1 index of the family over B");
    add_common(index, true);
    index->add_option("--lattice", o.lattice, "generators \"v1;v2\"")->required();

    CLI::App* exists = app.add_subcommand("exists", "spectral-section existence test");
    add_common(exists, true);
    exists->add_option("--lattice", o.lattice, "generators \"v1;v2\"")->required();

    CLI::App* classify = app.add_subcommand("classify", "minimal system of infinitesimal sections");
    add_common(classify, true);
    classify->add_option("--lattice", o.lattice, "generators \"v1;v2\"")->required();

    CLI::App* sections = app.add_subcommand("sections", "spectral-section constructions");
    CLI::App* build_cmd = sections->add_subcommand("build", "build + verify a projector field");
    add_common(build_cmd, true);
    build_cmd->add_option("--lattice", o.lattice, "generators \"v1;v2\"")->required();
    build_cmd->add_option("--R", o.R, "section radius (pi literals allowed)")->required();
    build_cmd->add_option("--grid", o.grid, "grid size (<= 256)");
    build_cmd->add_option("--degrees", o.degrees, "trivial case: idx:deg,... per coset");
    build_cmd->add_option("--rank", o.rank, "nontrivial case: subbundle rank");
    build_cmd->add_option("--chern", o.chern, "nontrivial case: Chern number");

    CLI::App* verify = app.add_subcommand("verify", "independent numerical checks");
    CLI::App* landau = verify->add_subcommand("landau", "flux-lattice Landau level check");
    landau->add_option("--h", o.h, "flux / Chern class")->required();
    landau->add_option("--grid", o.grid, "lattice size N")->required();
    landau->add_option("--levels", o.levels, "Landau levels to check");
    landau->add_option("--norm-k", o.norm_k, "|k| (sets the torus area 1/|k|)");
    landau->add_option("--dump-matrix", o.dump_matrix, "write the Dirac matrix (row col re im)");
    landau->add_option("--out", o.out, "write output to file instead of stdout");
    CLI::App* blocks = verify->add_subcommand("blocks", "random 2x2 block eigensolve check");
    blocks->add_option("--count", o.count, "number of random draws");
    blocks->add_option("--out", o.out, "write output to file instead of stdout");
    CLI::App* vflow = verify->add_subcommand("flow", "numeric flow vs closed form");
    add_common(vflow, true);
    vflow->add_option("--loop", o.loop, "loop class a,b,c")->required();
    vflow->add_option("--samples", o.samples, "tracker samples (>= 16)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (app.get_subcommands().empty()) {
            out << app.help();
            return 0;
        }
        if (o.threads > 0) set_max_threads(o.threads);
        o.have_rank = build_cmd->count("--rank") > 0;
        o.have_chern = build_cmd->count("--chern") > 0;

        if (spectrum->parsed()) {
            SpincStructure spinc = decompose_spinc(io::parse_vec3i(o.khat));
            SpectrumSlice slice =
                enumerate_spectrum(spinc, io::parse_vec3d(o.alpha), io::parse_real(o.cutoff));
            emit(o.format == "csv" ? io::spectrum_csv(slice) : io::spectrum_json(slice), o.out, out);
            return 0;
        }
        if (flow->parsed()) {
            SpincStructure spinc = decompose_spinc(io::parse_vec3i(o.khat));
            const Vec3i a = io::parse_vec3i(o.loop);
            FlowResult fr = spectral_flow_numeric(spinc, a, o.samples);
            emit(io::flow_json(fr, spectral_flow_closed_form(spinc, a), o.samples), o.out, out);
            return 0;
        }
        if (index->parsed()) {
            SpincStructure spinc = decompose_spinc(io::parse_vec3i(o.khat));
            ParameterLattice lat = lattice_from_flag(o.lattice);
            emit(io::index_json(spinc, lat, index_element(spinc, lat)), o.out, out);
            return 0;
        }
        if (exists->parsed()) {
            SpincStructure spinc = decompose_spinc(io::parse_vec3i(o.khat));
            emit(io::exists_json(sections_exist(spinc, lattice_from_flag(o.lattice))), o.out, out);
            return 0;
        }
        if (classify->parsed()) {
            SpincStructure spinc = decompose_spinc(io::parse_vec3i(o.khat));
            emit(io::classification_json(classify_small_R(spinc, lattice_from_flag(o.lattice))),
                 o.out, out);
            return 0;
        }
        if (sections->parsed() && build_cmd->parsed()) {
            SpincStructure spinc = decompose_spinc(io::parse_vec3i(o.khat));
            ParameterLattice lat = lattice_from_flag(o.lattice);
            const double radius = io::parse_real(o.R);
            SectionBuild build;
            std::vector<std::int64_t> degree_certs;
            std::int64_t chern_cert = 0;
            if (spinc.trivial()) {
                if (o.have_rank || o.have_chern)
                    throw DomainError("cli", "trivial class takes --degrees, not --rank/--chern");
                std::vector<std::int64_t> degs(lat.cosets.size(), 0);
                if (!o.degrees.empty())
                    for (auto [idx, deg] : io::parse_degrees(o.degrees)) {
                        if (idx < 0 || std::size_t(idx) >= degs.size())
                            throw DomainError("cli", "coset index out of range in --degrees");
                        degs[idx] = deg;
                    }
                build = build_projector_field_trivial(spinc, lat, radius, degs, o.grid);
                if (lat.rank == 2)
                    for (const auto& f : build.disc_fields)
                        if (f.in_plane) degree_certs.push_back(relative_degree(f));
            } else {
                if (!o.have_rank) throw DomainError("cli", "nontrivial class requires --rank");
                build = build_projector_field_nontrivial(spinc, lat, radius, o.rank, o.chern, o.grid);
                chern_cert = lat.rank == 2 ? chern_number(build.torus_field) : 0;
            }
            SectionVerifyReport rep = verify_spectral_section(build, spinc, lat, radius);
            emit(io::section_build_json(build, rep, degree_certs, chern_cert), o.out, out);
            return rep.ok ? 0 : 1;
        }
        if (verify->parsed()) {
            if (landau->parsed()) {
                OracleReport rep = landau_check(o.h, io::parse_real(o.norm_k), o.grid, o.levels);
                if (!o.dump_matrix.empty()) {
                    FluxLattice fl = build_flux_lattice(o.h, o.grid, 1.0 / io::parse_real(o.norm_k));
                    std::ofstream f(o.dump_matrix, std::ios::binary);
                    if (!f) throw DomainError("cli", "cannot open dump file");
                    f << io::sparse_matrix_dump(build_flux_dirac(fl), 2 * fl.sites());
                }
                emit(io::oracle_report_json(rep), o.out, out);
                return rep.conclusive ? 0 : 1;
            }
            if (blocks->parsed()) {
                emit(io::block_report_json(mode_block_oracle(o.count)), o.out, out);
                return 0;
            }
            if (vflow->parsed()) {
                SpincStructure spinc = decompose_spinc(io::parse_vec3i(o.khat));
                const Vec3i a = io::parse_vec3i(o.loop);
                FlowResult fr = spectral_flow_numeric(spinc, a, o.samples);
                const std::int64_t cf = spectral_flow_closed_form(spinc, a);
                emit(io::flow_verify_json(fr, cf), o.out, out);
                return fr.flow == cf ? 0 : 1;
            }
            err << "verify needs a subcommand (landau|blocks|flow)\n";
            return 2;
        }
        err << "no runnable subcommand\n";
        return 2;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        out << io::error_json(e.module(), e.what()) << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return 2;
    }
}

}  // namespace dirac3t::cli
