#pragma once

#include <string>
#include <vector>

#include "dirac3t/flow_index.hpp"
#include "dirac3t/lattice_oracle.hpp"
#include "dirac3t/spectral_sections.hpp"
#include "dirac3t/spectrum_engine.hpp"

namespace dirac3t::io {

// All numeric output goes through a fixed 12-significant-digit format so
// identical invocations are byte identical.
std::string format_double(double x);

// Accepts plain decimals plus pi literals: "pi", "2pi", "-0.5pi", "pi/4".
double parse_real(const std::string& s);
Vec3d parse_vec3d(const std::string& s);   // "x,y,z"
Vec3i parse_vec3i(const std::string& s);   // "a,b,c" (exact integers)
std::vector<Vec3i> parse_generators(const std::string& s);  // "v1;v2"
// "--degrees" syntax: "idx:deg,idx:deg" with coset indices as printed by
// `classify`
std::vector<std::pair<std::int64_t, std::int64_t>> parse_degrees(const std::string& s);

std::string spectrum_json(const SpectrumSlice& slice);
std::string spectrum_csv(const SpectrumSlice& slice);
std::string flow_json(const FlowResult& flow, std::int64_t closed_form, int samples);
std::string index_json(const SpincStructure& spinc, const ParameterLattice& lattice,
                       const IndexElement& el);
std::string exists_json(bool exists);
std::string classification_json(const SmallRClassification& cls);
std::string verify_report_json(const SectionVerifyReport& rep);
std::string section_build_json(const SectionBuild& build, const SectionVerifyReport& rep,
                               const std::vector<std::int64_t>& degree_certificates,
                               std::int64_t chern_certificate);
std::string disc_field_bloch_csv(const DiscField& field);
std::string oracle_report_json(const OracleReport& rep);
std::string block_report_json(const BlockOracleReport& rep);
std::string flow_verify_json(const FlowResult& numeric, std::int64_t closed_form);
std::string error_json(const std::string& module, const std::string& message);

// coordinate text dump "row col re im" of the sparse Dirac matrix
std::string sparse_matrix_dump(const std::vector<SparseEntry>& entries, std::int64_t dim);

}  // namespace dirac3t::io
