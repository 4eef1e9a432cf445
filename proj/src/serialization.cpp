#include "dirac3t/serialization.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dirac3t::io {

namespace {

std::string lab(const BranchLabel& l) {
    std::string s = "{";
    if (l.kase == SpectralCase::Nontrivial) {
        s += "\"case\":\"nontrivial\",\"l\":" + std::to_string(l.l) + ",\"n\":" + std::to_string(l.n);
        s += std::string(",\"sign\":\"") + (l.sign > 0 ? "+" : (l.sign < 0 ? "-" : "0")) + "\"";
    } else {
        s += "\"case\":\"trivial\",\"b\":[" + std::to_string(l.b[0]) + "," + std::to_string(l.b[1]) +
             "," + std::to_string(l.b[2]) + "]";
        s += std::string(",\"sign\":\"") + (l.sign > 0 ? "+" : "-") + "\"";
    }
    return s + "}";
}

std::string lab_csv(const BranchLabel& l) {
    if (l.kase == SpectralCase::Nontrivial)
        return "l=" + std::to_string(l.l) + ";n=" + std::to_string(l.n) + ";sign=" +
               (l.sign > 0 ? "+" : (l.sign < 0 ? "-" : "0"));
    return "b=(" + std::to_string(l.b[0]) + " " + std::to_string(l.b[1]) + " " +
           std::to_string(l.b[2]) + ");sign=" + (l.sign > 0 ? "+" : "-");
}

std::string arr(const Vec3d& v) {
    return "[" + format_double(v[0]) + "," + format_double(v[1]) + "," + format_double(v[2]) + "]";
}

std::string arr(const Vec3i& v) {
    return "[" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) + "]";
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

double parse_plain(const std::string& s) {
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse number '" + s + "'");
    }
    if (used != s.size()) throw std::invalid_argument("cannot parse number '" + s + "'");
    return v;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

double parse_real(const std::string& raw) {
    const std::string s = trim(raw);
    const std::size_t p = s.find("pi");
    if (p == std::string::npos) return parse_plain(s);
    std::string pre = s.substr(0, p);
    std::string post = s.substr(p + 2);
    double mult = 1.0;
    if (pre == "-") mult = -1.0;
    else if (pre == "+" || pre.empty()) mult = 1.0;
    else mult = parse_plain(pre);
    double den = 1.0;
    if (!post.empty()) {
        if (post[0] != '/') throw std::invalid_argument("cannot parse pi literal '" + s + "'");
        den = parse_plain(post.substr(1));
    }
    return mult * 3.14159265358979323846 / den;
}

Vec3d parse_vec3d(const std::string& s) {
    auto parts = split(s, ',');
    if (parts.size() != 3) throw std::invalid_argument("expected 3 components in '" + s + "'");
    return {parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2])};
}

Vec3i parse_vec3i(const std::string& s) {
    auto parts = split(s, ',');
    if (parts.size() != 3) throw std::invalid_argument("expected 3 components in '" + s + "'");
    Vec3i v;
    for (int i = 0; i < 3; ++i) {
        std::size_t used = 0;
        long long x;
        try {
            x = std::stoll(parts[i], &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse integer '" + parts[i] + "'");
        }
        if (used != parts[i].size())
            throw std::invalid_argument("cannot parse integer '" + parts[i] + "'");
        v[i] = x;
    }
    return v;
}

std::vector<Vec3i> parse_generators(const std::string& s) {
    std::vector<Vec3i> out;
    for (const auto& part : split(s, ';'))
        if (!part.empty()) out.push_back(parse_vec3i(part));
    return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> parse_degrees(const std::string& s) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (const auto& part : split(s, ',')) {
        const std::size_t c = part.find(':');
        if (c == std::string::npos)
            throw std::invalid_argument("degree entries use idx:deg syntax, got '" + part + "'");
        out.emplace_back(std::stoll(part.substr(0, c)), std::stoll(part.substr(c + 1)));
    }
    return out;
}

std::string spectrum_json(const SpectrumSlice& slice) {
    std::string s = "{\"alpha\":" + arr(slice.alpha) + ",\"entries\":[";
    for (std::size_t i = 0; i < slice.entries.size(); ++i) {
        const auto& e = slice.entries[i];
        if (i) s += ",";
        s += "{\"value\":" + format_double(e.value) + ",\"mult\":" + std::to_string(e.mult) +
             ",\"label\":" + lab(e.label) + "}";
    }
    return s + "]}";
}

std::string spectrum_csv(const SpectrumSlice& slice) {
    std::string s = "value,mult,label\n";
    for (const auto& e : slice.entries)
        s += format_double(e.value) + "," + std::to_string(e.mult) + "," + lab_csv(e.label) + "\n";
    return s;
}

std::string flow_json(const FlowResult& flow, std::int64_t closed_form, int samples) {
    std::string s = "{\"loop\":" + arr(flow.loop) + ",\"flow\":" + std::to_string(flow.flow);
    s += ",\"closed_form\":" + std::to_string(closed_form);
    s += ",\"samples\":" + std::to_string(samples);
    s += std::string(",\"degeneracy_warning\":") + (flow.degeneracy_warning ? "true" : "false");
    s += ",\"crossings\":[";
    for (std::size_t i = 0; i < flow.crossings.size(); ++i) {
        const auto& c = flow.crossings[i];
        if (i) s += ",";
        s += "{\"t\":" + format_double(c.t) + ",\"branch\":" + lab(c.branch) +
             ",\"dir\":" + std::to_string(c.direction) + "}";
    }
    return s + "]}";
}

std::string index_json(const SpincStructure& spinc, const ParameterLattice& lattice,
                       const IndexElement& el) {
    std::string s = "{\"khat\":" + arr(spinc.khat) + ",\"generators\":[";
    for (std::size_t i = 0; i < lattice.generators.size(); ++i) {
        if (i) s += ",";
        s += arr(lattice.generators[i]);
    }
    s += "],\"values\":[";
    for (std::size_t i = 0; i < el.values.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(el.values[i]);
    }
    return s + "]}";
}

std::string exists_json(bool exists) {
    return std::string("{\"exists\":") + (exists ? "true" : "false") + "}";
}

std::string classification_json(const SmallRClassification& cls) {
    std::string s = "{";
    if (cls.kase == SectionCase::Nontrivial) {
        s += "\"case\":\"nontrivial\"";
        s += ",\"base_rank\":" + std::to_string(cls.base_rank);
        s += ",\"R_inf\":" + format_double(cls.R_inf);
        s += ",\"epsilon\":" + format_double(cls.epsilon);
        s += ",\"h\":" + std::to_string(cls.h);
        s += ",\"ranks\":[";
        for (std::int64_t r = 0; r <= cls.h; ++r) {
            if (r) s += ",";
            s += std::to_string(r);
        }
        s += "],\"chern_free_ranks\":[";
        bool first = true;
        if (cls.chern_free)
            for (std::int64_t r = 1; r < cls.h; ++r) {
                if (!first) s += ",";
                s += std::to_string(r);
                first = false;
            }
        s += "]";
    } else {
        s += "\"case\":\"trivial\"";
        s += ",\"base_rank\":" + std::to_string(cls.base_rank);
        s += ",\"R_inf\":" + format_double(cls.R_inf);
        s += ",\"epsilon\":" + format_double(cls.epsilon);
        s += ",\"cosets\":[";
        for (std::size_t i = 0; i < cls.cosets.size(); ++i) {
            if (i) s += ",";
            s += arr(cls.cosets[i]);
        }
        s += "],\"free_coset\":" + std::to_string(cls.free_coset);
        s += std::string(",\"degree_free\":") + (cls.degree_free ? "true" : "false");
    }
    return s + "}";
}

std::string verify_report_json(const SectionVerifyReport& rep) {
    std::string s = std::string("{\"ok\":") + (rep.ok ? "true" : "false");
    s += ",\"max_idempotency\":" + format_double(rep.max_idem);
    s += ",\"max_hermiticity\":" + format_double(rep.max_herm);
    s += ",\"max_forced\":" + format_double(rep.max_forced);
    s += ",\"max_jump\":" + format_double(rep.max_jump);
    s += ",\"jump_constant\":" + format_double(rep.jump_constant);
    s += ",\"rank\":" + std::to_string(rep.rank);
    s += ",\"epsilon\":" + format_double(rep.epsilon);
    s += ",\"failures\":[";
    for (std::size_t i = 0; i < rep.failures.size(); ++i) {
        if (i) s += ",";
        s += "\"" + escape(rep.failures[i]) + "\"";
    }
    return s + "]}";
}

namespace {

std::string mat2c_json(const Mat2c& m) {
    std::string s = "[";
    for (int i = 0; i < 4; ++i) {
        if (i) s += ",";
        s += "[" + format_double(m[i].real()) + "," + format_double(m[i].imag()) + "]";
    }
    return s + "]";
}

std::string disc_field_json(const DiscField& f) {
    std::string s = "{\"kind\":\"disc\",\"block\":" + arr(f.block);
    s += std::string(",\"in_plane\":") + (f.in_plane ? "true" : "false");
    s += ",\"R\":" + format_double(f.R) + ",\"r_outer\":" + format_double(f.r_outer);
    s += ",\"grid\":[" + std::to_string(f.nr) + "," + std::to_string(f.ntheta) + "]";
    s += ",\"matrices\":[";
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (i) s += ",";
        s += mat2c_json(f.values[i]);
    }
    return s + "]}";
}

std::string torus_field_json(const TorusField& f) {
    std::string s = "{\"kind\":\"torus\",\"h\":" + std::to_string(f.h);
    s += ",\"grid\":[" + std::to_string(f.n1) + "," + std::to_string(f.n2) + "]";
    s += ",\"matrices\":[";
    const std::int64_t per = f.h * f.h;
    const std::int64_t nsamples = f.n1 * f.n2;
    for (std::int64_t sidx = 0; sidx < nsamples; ++sidx) {
        if (sidx) s += ",";
        s += "[";
        for (std::int64_t q = 0; q < per; ++q) {
            if (q) s += ",";
            const auto& z = f.values[sidx * per + q];
            s += "[" + format_double(z.real()) + "," + format_double(z.imag()) + "]";
        }
        s += "]";
    }
    return s + "]}";
}

}  // namespace

std::string section_build_json(const SectionBuild& build, const SectionVerifyReport& rep,
                               const std::vector<std::int64_t>& degree_certificates,
                               std::int64_t chern_certificate) {
    std::string s = "{";
    if (build.kase == SectionCase::Trivial) {
        s += "\"case\":\"trivial\"";
        s += ",\"R\":" + format_double(build.descriptor.R);
        s += ",\"degrees\":[";
        for (std::size_t i = 0; i < build.descriptor.degrees.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(build.descriptor.degrees[i]);
        }
        s += "],\"degree_certificates\":[";
        for (std::size_t i = 0; i < degree_certificates.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(degree_certificates[i]);
        }
        s += "]";
    } else {
        s += "\"case\":\"nontrivial\"";
        s += ",\"R\":" + format_double(build.descriptor.R);
        s += ",\"rank\":" + std::to_string(build.descriptor.rank);
        s += ",\"chern\":" + std::to_string(build.descriptor.chern);
        s += ",\"chern_certificate\":" + std::to_string(chern_certificate);
    }
    s += ",\"verify\":" + verify_report_json(rep);
    s += ",\"fields\":[";
    bool first = true;
    for (const auto& f : build.disc_fields) {
        if (!first) s += ",";
        s += disc_field_json(f);
        first = false;
    }
    if (build.kase == SectionCase::Nontrivial) {
        if (!first) s += ",";
        s += torus_field_json(build.torus_field);
    }
    return s + "]}";
}

std::string disc_field_bloch_csv(const DiscField& f) {
    std::string s = "i,j,ux,uy,uz\n";
    for (std::int64_t i = 0; i < f.nr; ++i)
        for (std::int64_t j = 0; j < f.ntheta; ++j) {
            const Vec3d u = projector_to_bloch(f.at(i, j));
            s += std::to_string(i) + "," + std::to_string(j) + "," + format_double(u[0]) + "," +
                 format_double(u[1]) + "," + format_double(u[2]) + "\n";
        }
    return s;
}

std::string oracle_report_json(const OracleReport& rep) {
    std::string s = "{\"h\":" + std::to_string(rep.h) + ",\"N\":" + std::to_string(rep.N);
    s += ",\"norm_k\":" + format_double(rep.norm_k) + ",\"area\":" + format_double(rep.area);
    s += ",\"computed_levels\":[";
    for (std::size_t i = 0; i < rep.computed_levels.size(); ++i) {
        if (i) s += ",";
        s += format_double(rep.computed_levels[i]);
    }
    s += "],\"predicted_levels\":[";
    for (std::size_t i = 0; i < rep.predicted_levels.size(); ++i) {
        if (i) s += ",";
        s += format_double(rep.predicted_levels[i]);
    }
    s += "],\"cluster_sizes\":[";
    for (std::size_t i = 0; i < rep.cluster_sizes.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(rep.cluster_sizes[i]);
    }
    s += "],\"zero_modes\":" + std::to_string(rep.zero_modes);
    s += ",\"zero_mode_scale\":" + format_double(rep.zero_mode_scale);
    s += ",\"max_rel_error\":" + format_double(rep.max_rel_error);
    s += std::string(",\"conclusive\":") + (rep.conclusive ? "true" : "false");
    s += ",\"message\":\"" + escape(rep.message) + "\"";
    return s + "}";
}

std::string block_report_json(const BlockOracleReport& rep) {
    std::string s = "{\"count\":" + std::to_string(rep.count);
    s += ",\"max_clifford_eig_dev\":" + format_double(rep.max_clifford_eig_dev);
    s += ",\"max_clifford_proj_dev\":" + format_double(rep.max_clifford_proj_dev);
    s += ",\"max_block_eig_dev\":" + format_double(rep.max_block_eig_dev);
    s += ",\"max_block_angle\":" + format_double(rep.max_block_angle);
    return s + "}";
}

std::string flow_verify_json(const FlowResult& numeric, std::int64_t closed_form) {
    std::string s = "{\"loop\":" + arr(numeric.loop);
    s += ",\"closed_form\":" + std::to_string(closed_form);
    s += ",\"numeric\":" + std::to_string(numeric.flow);
    s += std::string(",\"match\":") + (numeric.flow == closed_form ? "true" : "false");
    s += ",\"crossing_count\":" + std::to_string(numeric.crossings.size());
    return s + "}";
}

std::string error_json(const std::string& module, const std::string& message) {
    return "{\"error\":\"" + escape(message) + "\",\"module\":\"" + escape(module) + "\"}";
}

std::string sparse_matrix_dump(const std::vector<SparseEntry>& entries, std::int64_t dim) {
    std::string s = "# dim " + std::to_string(dim) + "\n";
    for (const auto& e : entries)
        s += std::to_string(e.row) + " " + std::to_string(e.col) + " " +
             format_double(e.value.real()) + " " + format_double(e.value.imag()) + "\n";
    return s;
}

}  // namespace dirac3t::io
