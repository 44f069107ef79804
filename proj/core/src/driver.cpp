#include "tcmc/driver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "tcmc/errors.hpp"
#include "tcmc/geometry.hpp"
#include "tcmc/io.hpp"
#include "tcmc/sym.hpp"

namespace tcmc {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const char* where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) {
            if (it.key() == a) { ok = true; break; }
        }
        if (!ok) {
            throw std::invalid_argument(std::string("unknown key \"") + it.key() +
                                        "\" in " + where);
        }
    }
}

Grid grid_from_json(const json& j) {
    if (j.is_string()) return grid_from_string(j.get<std::string>());
    reject_unknown(j, {"x_min", "x_max", "y_min", "y_max", "nx", "ny"}, "grid");
    return Grid::make(j.at("x_min").get<double>(), j.at("x_max").get<double>(),
                      j.at("y_min").get<double>(), j.at("y_max").get<double>(),
                      j.at("nx").get<int>(), j.at("ny").get<int>());
}

std::string lambda_tag(double l) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", l);
    return buf;
}

std::string fmtg(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void report_stat(std::ostringstream& os, const std::string& name,
                 const ResidualStat& s) {
    os << "residual " << name << ": max " << fmtg(s.max) << " mean " << fmtg(s.mean)
       << " argmax (" << s.argmax_i << "," << s.argmax_j << ")\n";
}

void report_pde(std::ostringstream& os, const std::string& name,
                const PdeResidualResult& r) {
    if (r.applicable) {
        os << "pde " << name << ": max " << fmtg(r.stat.max) << " mean "
           << fmtg(r.stat.mean) << " argmax (" << r.stat.argmax_i << ","
           << r.stat.argmax_j << ")\n";
    } else {
        os << "pde " << name << ": not applicable (" << r.reason
           << "; measured Q " << fmtg(r.measured_Q) << ", R " << fmtg(r.measured_R)
           << ")\n";
    }
}

} // namespace

Grid grid_from_string(const std::string& s) {
    std::istringstream is(s);
    double a, b, c, d;
    int nx, ny;
    char c1, c2, c3, c4, c5;
    if (!(is >> a >> c1 >> b >> c2 >> c >> c3 >> d >> c4 >> nx >> c5 >> ny) ||
        c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',' || c5 != ',') {
        throw std::invalid_argument(
            "grid string must be \"xmin,xmax,ymin,ymax,nx,ny\": " + s);
    }
    return Grid::make(a, b, c, d, nx, ny);
}

RunConfig RunConfig::from_json_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: object expected");
    reject_unknown(j,
                   {"potential", "grid", "truncation", "lambda", "substeps",
                    "output_dir", "write_obj", "write_csv", "write_report",
                    "write_frames", "max_failure_fraction"},
                   "config");
    RunConfig c;
    if (!j.contains("potential")) throw std::invalid_argument("config: potential missing");
    if (!j.contains("grid")) throw std::invalid_argument("config: grid missing");
    c.potential = potential_from_json_text(j.at("potential").dump());
    c.grid = grid_from_json(j.at("grid"));
    if (j.contains("truncation")) c.truncation = j.at("truncation").get<int>();
    if (j.contains("substeps")) c.substeps = j.at("substeps").get<int>();
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("write_obj")) c.write_obj = j.at("write_obj").get<bool>();
    if (j.contains("write_csv")) c.write_csv = j.at("write_csv").get<bool>();
    if (j.contains("write_report")) c.write_report = j.at("write_report").get<bool>();
    if (j.contains("write_frames")) c.write_frames = j.at("write_frames").get<bool>();
    if (j.contains("max_failure_fraction")) {
        c.max_failure_fraction = j.at("max_failure_fraction").get<double>();
    }
    if (j.contains("lambda")) {
        c.lambdas.clear();
        if (j.at("lambda").is_array()) {
            for (const auto& v : j.at("lambda")) c.lambdas.push_back(v.get<double>());
        } else {
            c.lambdas.push_back(j.at("lambda").get<double>());
        }
    }
    c.validate();
    return c;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

void RunConfig::validate() const {
    if (truncation < 4) throw std::invalid_argument("config: truncation must be >= 4");
    if (substeps < 1) throw std::invalid_argument("config: substeps must be >= 1");
    if (lambdas.empty()) throw std::invalid_argument("config: lambda list is empty");
    for (double l : lambdas) {
        if (!(l > 0.0)) throw std::invalid_argument("config: lambda values must be positive");
    }
    Grid::make(grid.x_min, grid.x_max, grid.y_min, grid.y_max, grid.nx, grid.ny);
}

int run_pipeline(const RunConfig& config, std::ostream& log) {
    namespace fs = std::filesystem;
    config.validate();
    fs::create_directories(config.output_dir);

    if (!config.quiet) {
        log << "building extended framing (" << config.grid.nx << "x" << config.grid.ny
            << ", N = " << config.truncation << ", substeps = " << config.substeps
            << ")\n";
    }
    FrameField field =
        build_extended_framing(config.potential, config.grid, config.substeps,
                               config.truncation);
    const double fail_frac = field.failure_fraction();
    if (!config.quiet) {
        log << "failure fraction " << fail_frac << ", tail loss " << field.tail_loss
            << "\n";
    }

    const MaurerCartanReport mc = maurer_cartan_form(field);
    const std::vector<ConnectionClass> classes = classify_connection(mc);

    if (config.write_frames) {
        write_frame_field((fs::path(config.output_dir) / "frames.txt").string(), field);
    }

    const double H = config.potential.H;
    for (double lambda0 : config.lambdas) {
        const std::string tag = lambda_tag(lambda0);
        SurfacePatch patch = sym_immersion(field, lambda0, H);
        FundamentalData data = fundamental_data(patch);

        if (config.write_obj) {
            write_obj((fs::path(config.output_dir) / ("surface_l" + tag + ".obj")).string(),
                      patch, "timelike cmc surface, lambda0 = " + tag);
        }
        if (config.write_csv) {
            write_field_csv(
                (fs::path(config.output_dir) / ("field_l" + tag + ".csv")).string(),
                patch, data);
        }
        if (config.write_report) {
            std::ostringstream os;
            std::time_t now = std::time(nullptr);
            char ts[64];
            std::strftime(ts, sizeof(ts), "%Y-%m-%d %H:%M:%S", std::gmtime(&now));
            os << "run report\n";
            os << "generated: " << ts << "\n";
            os << "potential: " << (config.potential.name.empty() ? "custom"
                                                                  : config.potential.name)
               << "\n";
            os << "H: " << fmtg(H) << "\nlambda0: " << tag << "\n";
            os << "grid: " << config.grid.nx << "x" << config.grid.ny << " on ["
               << fmtg(config.grid.x_min) << "," << fmtg(config.grid.x_max) << "]x["
               << fmtg(config.grid.y_min) << "," << fmtg(config.grid.y_max) << "]\n";
            os << "truncation: " << config.truncation << "\nsubsteps: "
               << config.substeps << "\n";
            os << "failure_fraction: " << fmtg(fail_frac) << "\n";
            os << "tail_loss: " << fmtg(field.tail_loss) << "\n";
            report_stat(os, "mc_structure", mc.structure);
            report_stat(os, "mc_flatness", mc.flatness);
            report_stat(os, "mc_admissibility", mc.admissibility);
            report_stat(os, "gauss_identity", gauss_equation_residual(data));

            ResidualStat nn, ox, oy;
            const Grid& g = patch.grid;
            for (int j = 1; j + 1 < g.ny; ++j) {
                for (int i = 1; i + 1 < g.nx; ++i) {
                    const std::size_t idx = g.index(i, j);
                    if (!data.valid[idx]) continue;
                    const Vec3M& n = patch.normals[idx];
                    nn.add(std::fabs(lorentz_inner(n, n) - 1.0), i, j);
                    auto P = [&](int a, int b) { return patch.points[g.index(a, b)]; };
                    const Vec3M px = (P(i + 1, j) - P(i - 1, j)) * (1.0 / (2 * g.hx()));
                    const Vec3M py = (P(i, j + 1) - P(i, j - 1)) * (1.0 / (2 * g.hy()));
                    ox.add(std::fabs(lorentz_inner(px, n)), i, j);
                    oy.add(std::fabs(lorentz_inner(py, n)), i, j);
                }
            }
            nn.finalize();
            ox.finalize();
            oy.finalize();
            report_stat(os, "normal_norm", nn);
            report_stat(os, "orthogonality_x", ox);
            report_stat(os, "orthogonality_y", oy);
            report_stat(os, "harmonic",
                        harmonic_residual(patch.normals, g, &patch.failed));

            long np = 0, nz = 0, nm = 0;
            for (ConnectionClass c : classes) {
                np += c == ConnectionClass::h_plus;
                nz += c == ConnectionClass::h_zero;
                nm += c == ConnectionClass::h_minus;
            }
            os << "classification: H+ " << np << " H0 " << nz << " H- " << nm << "\n";
            report_pde(os, "gauss_general", pde_residual(data, PdeKind::gauss_general));
            report_pde(os, "sinh_gordon", pde_residual(data, PdeKind::sinh));
            report_pde(os, "cosh_gordon", pde_residual(data, PdeKind::cosh));
            report_pde(os, "liouville", pde_residual(data, PdeKind::liouville));
            write_text_file(
                (fs::path(config.output_dir) / ("report_l" + tag + ".txt")).string(),
                os.str());
        }
        if (!config.quiet) log << "lambda0 = " << tag << " done\n";
    }
    return fail_frac > config.max_failure_fraction ? kExitAllFailed : kExitOk;
}

int cmd_list_examples(std::ostream& out) {
    for (const auto& n : builtin_potential_names()) out << n << "\n";
    return kExitOk;
}

int cmd_factorize_demo(std::istream& in, std::ostream& out,
                       const std::string& convention) {
    SplitConvention conv;
    if (convention == "minus_plus") {
        conv = SplitConvention::minus_plus;
    } else if (convention == "plus_minus") {
        conv = SplitConvention::plus_minus;
    } else {
        out << "unknown convention: " << convention << "\n";
        return kExitConfigError;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    TruncatedLoop gamma(0, false);
    try {
        gamma = from_debug_text(buf.str());
    } catch (const std::exception& e) {
        out << "parse error: " << e.what() << "\n";
        return kExitConfigError;
    }
    try {
        const BirkhoffResult b = birkhoff_split(gamma, conv);
        out << "# normalized factor\n" << to_debug_text(b.normalized_factor);
        out << "# complement factor\n" << to_debug_text(b.complement_factor);
        out << "# residual " << b.residual << "\n";
        out << "# rcond " << b.condition_estimate << "\n";
    } catch (const big_cell_error& e) {
        out << "big-cell failure: " << e.what() << "\n";
        return kExitAllFailed;
    }
    return kExitOk;
}

int cmd_verify(const std::string& input_path, const std::string& output_dir,
               std::ostream& log) {
    namespace fs = std::filesystem;
    SurfacePatch patch;
    try {
        if (input_path.size() > 4 &&
            input_path.compare(input_path.size() - 4, 4, ".obj") == 0) {
            patch = read_obj(input_path);
        } else {
            patch = read_field_csv(input_path);
        }
    } catch (const std::exception& e) {
        log << "verify: " << e.what() << "\n";
        return kExitConfigError;
    }
    fs::create_directories(output_dir);
    const FundamentalData data = fundamental_data(patch);
    write_field_csv((fs::path(output_dir) / "verified_field.csv").string(), patch, data);

    std::ostringstream os;
    os << "verify report\n";
    report_stat(os, "gauss_identity", gauss_equation_residual(data));
    report_stat(os, "harmonic", harmonic_residual(patch.normals, patch.grid, &patch.failed));
    report_pde(os, "gauss_general", pde_residual(data, PdeKind::gauss_general));
    report_pde(os, "sinh_gordon", pde_residual(data, PdeKind::sinh));
    report_pde(os, "cosh_gordon", pde_residual(data, PdeKind::cosh));
    report_pde(os, "liouville", pde_residual(data, PdeKind::liouville));

    ResidualStat habs;
    for (int j = 0; j < patch.grid.ny; ++j) {
        for (int i = 0; i < patch.grid.nx; ++i) {
            const std::size_t idx = patch.grid.index(i, j);
            if (data.valid[idx]) habs.add(std::fabs(data.H[idx]), i, j);
        }
    }
    habs.finalize();
    os << "measured |H|: max " << fmtg(habs.max) << " mean " << fmtg(habs.mean) << "\n";
    write_text_file((fs::path(output_dir) / "verify_report.txt").string(), os.str());
    log << os.str();
    return kExitOk;
}

int cmd_extract(const std::string& frames_path, const std::string& output_dir,
                std::ostream& log) {
    namespace fs = std::filesystem;
    FrameField field;
    try {
        field = read_frame_field(frames_path);
    } catch (const std::exception& e) {
        log << "extract: " << e.what() << "\n";
        return kExitConfigError;
    }
    ExtractedPotentials ex;
    try {
        ex = extract_normalized_potentials(field);
    } catch (const std::exception& e) {
        log << "extract: " << e.what() << "\n";
        return kExitAllFailed;
    }
    fs::create_directories(output_dir);
    std::ostringstream o1;
    o1 << "x,eta1_12,eta1_21\n";
    for (std::size_t i = 0; i < ex.xs.size(); ++i) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", ex.xs[i],
                      ex.eta1_samples[i].a12, ex.eta1_samples[i].a21);
        o1 << buf;
    }
    write_text_file((fs::path(output_dir) / "potential_x.csv").string(), o1.str());
    std::ostringstream o2;
    o2 << "y,eta2_12,eta2_21\n";
    for (std::size_t j = 0; j < ex.ys.size(); ++j) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", ex.ys[j],
                      ex.eta2_samples[j].a12, ex.eta2_samples[j].a21);
        o2 << buf;
    }
    write_text_file((fs::path(output_dir) / "potential_y.csv").string(), o2.str());
    log << "extract: structure residual " << ex.structure_residual
        << ", dependence residual " << ex.dependence_residual << "\n";
    return kExitOk;
}

} // namespace tcmc
