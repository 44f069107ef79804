#include "tcmc/io.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tcmc {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

std::string grid_comment(const Grid& g) {
    std::ostringstream os;
    os << "# grid " << fmt(g.x_min) << ' ' << fmt(g.x_max) << ' ' << fmt(g.y_min)
       << ' ' << fmt(g.y_max) << ' ' << g.nx << ' ' << g.ny;
    return os.str();
}

bool parse_grid_comment(const std::string& line, Grid& g) {
    std::istringstream is(line);
    std::string hash, word;
    if (!(is >> hash >> word) || hash != "#" || word != "grid") return false;
    Grid t;
    if (!(is >> t.x_min >> t.x_max >> t.y_min >> t.y_max >> t.nx >> t.ny)) return false;
    g = Grid::make(t.x_min, t.x_max, t.y_min, t.y_max, t.nx, t.ny);
    return true;
}

std::string timestamp() {
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%d %H:%M:%S", std::gmtime(&now));
    return buf;
}

} // namespace

void write_obj(const std::string& path, const SurfacePatch& patch,
               const std::string& title) {
    std::ofstream out = open_out(path);
    const Grid& g = patch.grid;
    out << "# " << title << "\n";
    out << "# generated: " << timestamp() << "\n";
    out << grid_comment(g) << "\n";
    out << "# lambda0 " << fmt(patch.lambda0) << " H " << fmt(patch.H) << "\n";
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (!patch.valid(i, j)) out << "# mask " << i << ' ' << j << "\n";
        }
    }
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const Vec3M& p = patch.points[g.index(i, j)];
            out << "v " << fmt(p.u1) << ' ' << fmt(p.u2) << ' ' << fmt(p.u3) << "\n";
        }
    }
    if (patch.has_normals) {
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const Vec3M& n = patch.normals[g.index(i, j)];
                out << "vn " << fmt(n.u1) << ' ' << fmt(n.u2) << ' ' << fmt(n.u3) << "\n";
            }
        }
    }
    for (int j = 0; j + 1 < g.ny; ++j) {
        for (int i = 0; i + 1 < g.nx; ++i) {
            if (!patch.valid(i, j) || !patch.valid(i + 1, j) ||
                !patch.valid(i + 1, j + 1) || !patch.valid(i, j + 1)) {
                continue;
            }
            const std::size_t a = g.index(i, j) + 1;
            const std::size_t b = g.index(i + 1, j) + 1;
            const std::size_t c = g.index(i + 1, j + 1) + 1;
            const std::size_t d = g.index(i, j + 1) + 1;
            if (patch.has_normals) {
                out << "f " << a << "//" << a << ' ' << b << "//" << b << ' ' << c
                    << "//" << c << ' ' << d << "//" << d << "\n";
            } else {
                out << "f " << a << ' ' << b << ' ' << c << ' ' << d << "\n";
            }
        }
    }
}

SurfacePatch read_obj(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    Grid g;
    bool have_grid = false;
    std::vector<Vec3M> vs, ns;
    std::vector<std::pair<int, int>> masked;
    double lambda0 = 1.0, H = 0.0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream is(line);
        std::string tag;
        is >> tag;
        if (tag == "#") {
            std::string word;
            is >> word;
            if (word == "grid") {
                have_grid = parse_grid_comment(line, g);
            } else if (word == "mask") {
                int i, j;
                if (is >> i >> j) masked.emplace_back(i, j);
            } else if (word == "lambda0") {
                is >> lambda0 >> word >> H;
            }
        } else if (tag == "v") {
            Vec3M p;
            if (!(is >> p.u1 >> p.u2 >> p.u3)) throw std::runtime_error("bad v line");
            vs.push_back(p);
        } else if (tag == "vn") {
            Vec3M p;
            if (!(is >> p.u1 >> p.u2 >> p.u3)) throw std::runtime_error("bad vn line");
            ns.push_back(p);
        }
    }
    if (!have_grid) throw std::runtime_error("read_obj: missing '# grid' header: " + path);
    if (vs.size() != g.size()) {
        throw std::runtime_error("read_obj: vertex count does not match the grid");
    }
    SurfacePatch p;
    p.grid = g;
    p.lambda0 = lambda0;
    p.H = H;
    p.points = std::move(vs);
    p.failed.assign(g.size(), 0);
    for (auto [i, j] : masked) p.failed[g.index(i, j)] = 1;
    if (ns.size() == g.size()) {
        p.normals = std::move(ns);
        p.has_normals = true;
    }
    return p;
}

void write_field_csv(const std::string& path, const SurfacePatch& patch,
                     const FundamentalData& data) {
    std::ofstream out = open_out(path);
    const Grid& g = patch.grid;
    out << grid_comment(g) << "\n";
    out << "# lambda0 " << fmt(patch.lambda0) << " H " << fmt(patch.H) << "\n";
    out << "x,y,u1,u2,u3,n1,n2,n3,E,F,G,omega,Q,R,H,K,mask\n";
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t idx = g.index(i, j);
            const Vec3M& p = patch.points[idx];
            const Vec3M n = patch.has_normals ? patch.normals[idx] : Vec3M{};
            const bool v = data.valid[idx] != 0;
            const bool w = data.omega_valid[idx] != 0;
            out << fmt(g.x(i)) << ',' << fmt(g.y(j)) << ',' << fmt(p.u1) << ','
                << fmt(p.u2) << ',' << fmt(p.u3) << ',' << fmt(n.u1) << ','
                << fmt(n.u2) << ',' << fmt(n.u3) << ',' << fmt(v ? data.E[idx] : 0.0)
                << ',' << fmt(v ? data.F[idx] : 0.0) << ',' << fmt(v ? data.G[idx] : 0.0)
                << ',' << fmt(w ? data.omega[idx] : 0.0) << ','
                << fmt(v ? data.Q[idx] : 0.0) << ',' << fmt(v ? data.R[idx] : 0.0) << ','
                << fmt(v ? data.H[idx] : 0.0) << ',' << fmt(v ? data.K[idx] : 0.0) << ','
                << (patch.failed[idx] ? 1 : 0) << "\n";
        }
    }
}

SurfacePatch read_field_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    Grid g;
    bool have_grid = false;
    double lambda0 = 1.0, H = 0.0;
    SurfacePatch p;
    std::size_t row = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!have_grid && parse_grid_comment(line, g)) {
                have_grid = true;
            } else {
                std::istringstream is(line);
                std::string hash, word;
                is >> hash >> word;
                if (word == "lambda0") is >> lambda0 >> word >> H;
            }
            continue;
        }
        if (!header_seen) { // column header row
            header_seen = true;
            if (line.rfind("x,y,", 0) != 0) {
                throw std::runtime_error("read_field_csv: unexpected header: " + line);
            }
            if (!have_grid) {
                throw std::runtime_error("read_field_csv: missing '# grid' comment");
            }
            p.grid = g;
            p.lambda0 = lambda0;
            p.H = H;
            p.points.assign(g.size(), Vec3M{});
            p.normals.assign(g.size(), Vec3M{});
            p.failed.assign(g.size(), 0);
            p.has_normals = true;
            continue;
        }
        std::istringstream is(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(is, cell, ',')) vals.push_back(std::stod(cell));
        if (vals.size() != 17) {
            throw std::runtime_error("read_field_csv: expected 17 columns, got " +
                                     std::to_string(vals.size()));
        }
        if (row >= g.size()) throw std::runtime_error("read_field_csv: too many rows");
        p.points[row] = {vals[2], vals[3], vals[4]};
        p.normals[row] = {vals[5], vals[6], vals[7]};
        p.failed[row] = vals[16] != 0.0 ? 1 : 0;
        ++row;
    }
    if (row != p.points.size()) {
        throw std::runtime_error("read_field_csv: row count does not match the grid");
    }
    return p;
}

void write_frame_field(const std::string& path, const FrameField& field) {
    std::ofstream out = open_out(path);
    out << "# frame field\n";
    out << grid_comment(field.grid) << "\n";
    out << "order " << field.order << "\n";
    out << "H " << fmt(field.H) << "\n";
    const Grid& g = field.grid;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t idx = g.index(i, j);
            out << "point " << i << ' ' << j << ' ' << (field.failed[idx] ? 1 : 0)
                << "\n";
            if (!field.failed[idx]) out << to_debug_text(field.frames[idx]);
        }
    }
}

FrameField read_frame_field(const std::string& path) {
    std::ifstream in = open_in(path);
    std::string line;
    FrameField f;
    bool have_grid = false, have_order = false;
    int cur_i = -1, cur_j = -1;
    std::string block;
    auto flush_block = [&]() {
        if (cur_i < 0) return;
        const std::size_t idx = f.grid.index(cur_i, cur_j);
        if (f.failed[idx] == 0) {
            if (block.empty()) throw std::runtime_error("frame field: missing loop block");
            f.frames[idx] = from_debug_text(block, true).with_order(f.order);
            double tail = 0.0;
            f.inverse_frames[idx] = loop_invert(f.frames[idx], &tail);
        }
        block.clear();
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (parse_grid_comment(line, f.grid)) have_grid = true;
            continue;
        }
        std::istringstream is(line);
        std::string tag;
        is >> tag;
        if (tag == "order") {
            if (!(is >> f.order)) throw std::runtime_error("frame field: bad order line");
            have_order = true;
            if (!have_grid) throw std::runtime_error("frame field: grid must precede order");
            f.frames.assign(f.grid.size(), TruncatedLoop(f.order, true));
            f.inverse_frames.assign(f.grid.size(), TruncatedLoop(f.order, true));
            f.failed.assign(f.grid.size(), 0);
            f.lplus_diag.assign(f.grid.size(), 1.0);
            f.split_residual.assign(f.grid.size(), 0.0);
            f.rcond.assign(f.grid.size(), 0.0);
        } else if (tag == "H") {
            is >> f.H;
        } else if (tag == "point") {
            if (!have_order) throw std::runtime_error("frame field: point before order");
            flush_block();
            int m = 0;
            if (!(is >> cur_i >> cur_j >> m)) {
                throw std::runtime_error("frame field: bad point line");
            }
            f.failed[f.grid.index(cur_i, cur_j)] = m ? 1 : 0;
        } else {
            block += line;
            block += '\n';
        }
    }
    flush_block();
    if (!have_grid || !have_order) {
        throw std::runtime_error("frame field: missing grid/order header: " + path);
    }
    return f;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out = open_out(path);
    out << content;
}

} // namespace tcmc
