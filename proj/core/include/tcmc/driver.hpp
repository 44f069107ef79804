#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tcmc/dpw.hpp"
#include "tcmc/potentials.hpp"

namespace tcmc {

/// Exit codes shared by the CLI commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitAllFailed = 3;

/// Full description of one pipeline run. Parsed from a JSON document with
/// the keys potential, grid, truncation, lambda, substeps, output_dir,
/// write_obj, write_csv, write_report, write_frames, max_failure_fraction.
/// Unknown keys are errors; grid and potential are required.
struct RunConfig {
    PotentialPair potential;
    Grid grid;
    int truncation = 16;
    std::vector<double> lambdas{1.0};
    int substeps = 16;
    std::string output_dir = "out";
    bool write_obj = true;
    bool write_csv = true;
    bool write_report = true;
    bool write_frames = false;
    double max_failure_fraction = 0.5;
    bool quiet = false;

    static RunConfig from_json_text(const std::string& json_text);
    static RunConfig from_json_file(const std::string& path);

    void validate() const; // throws std::invalid_argument
};

/// Parse "xmin,xmax,ymin,ymax,nx,ny".
Grid grid_from_string(const std::string& s);

/// Build the framing, apply the Sym formula per spectral value, export
/// meshes / field CSVs / verification reports. Returns kExitOk on success,
/// kExitAllFailed when the big-cell failure fraction is fatal.
int run_pipeline(const RunConfig& config, std::ostream& log);

int cmd_list_examples(std::ostream& out);

/// Read one loop in debug text format, print its Birkhoff factors.
int cmd_factorize_demo(std::istream& in, std::ostream& out,
                       const std::string& convention = "minus_plus");

/// Re-measure an exported surface (field CSV or OBJ with normals) and
/// write fundamental data + residual report into output_dir.
int cmd_verify(const std::string& input_path, const std::string& output_dir,
               std::ostream& log);

/// Run normalized-potential extraction on a stored frame field and write
/// the sampled potentials.
int cmd_extract(const std::string& frames_path, const std::string& output_dir,
                std::ostream& log);

} // namespace tcmc
