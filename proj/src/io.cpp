#include "roughkit/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace roughkit::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_path_csv(const GridPath& path, const std::string& filename) {
    std::ofstream out(filename);
    if (!out) throw ParameterError("cannot open for writing: " + filename);
    out << "t";
    for (std::size_t k = 1; k <= path.dim(); ++k) out << ",x" << k;
    out << "\n";
    for (std::size_t i = 0; i < path.n(); ++i) {
        out << format_double(path.grid().t(i));
        const auto v = path.value(i);
        for (double x : v) out << "," << format_double(x);
        out << "\n";
    }
}

GridPath read_path_csv(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw ParameterError("cannot open: " + filename);
    std::string line;
    if (!std::getline(in, line)) throw ParameterError("empty path file: " + filename);

    std::size_t dim = 0;
    {
        std::stringstream hs(line);
        std::string col;
        bool first = true;
        while (std::getline(hs, col, ',')) {
            if (first) {
                if (col != "t") throw ParameterError("path CSV must start with column 't'");
                first = false;
            } else {
                ++dim;
            }
        }
    }
    if (dim == 0) throw ParameterError("path CSV has no value columns");

    std::vector<double> times, values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(ls, cell, ',')) {
            const double v = std::stod(cell);
            if (col == 0)
                times.push_back(v);
            else
                values.push_back(v);
            ++col;
        }
        if (col != dim + 1) throw ParameterError("path CSV row has wrong arity");
    }
    return GridPath(TimeGrid(std::move(times)), dim, std::move(values));
}

json scalar_field_to_json(const ScalarField2& f) {
    json j;
    j["grid"] = f.grid().times();
    j["kind"] = "scalar";
    j["rows"] = 1;
    j["cols"] = 1;
    j["entries"] = f.raw();
    return j;
}

ScalarField2 scalar_field_from_json(const json& j) {
    TimeGrid grid(j.at("grid").get<std::vector<double>>());
    ScalarField2 f(grid);
    auto e = j.at("entries").get<std::vector<double>>();
    if (e.size() != f.raw().size()) throw ParameterError("field JSON: wrong entry count");
    f.raw() = std::move(e);
    return f;
}

json tensor_field_to_json(const TensorField2& f) {
    json j;
    j["grid"] = f.grid().times();
    j["kind"] = f.cols() == 1 ? "vector" : "tensor";
    j["rows"] = f.rows();
    j["cols"] = f.cols();
    j["entries"] = f.raw();
    return j;
}

TensorField2 tensor_field_from_json(const json& j) {
    TimeGrid grid(j.at("grid").get<std::vector<double>>());
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    TensorField2 f(grid, rows, cols);
    auto e = j.at("entries").get<std::vector<double>>();
    if (e.size() != f.raw().size()) throw ParameterError("field JSON: wrong entry count");
    f.raw() = std::move(e);
    return f;
}

json roughpath_to_json(const rough::RoughPath& p) {
    json j;
    j["grid"] = p.grid().times();
    j["dim"] = p.dim();
    j["X"] = p.x().raw();
    j["XX"] = p.xx().raw();
    return j;
}

rough::RoughPath roughpath_from_json(const json& j) {
    TimeGrid grid(j.at("grid").get<std::vector<double>>());
    const auto dim = j.at("dim").get<std::size_t>();
    GridPath x(grid, dim, j.at("X").get<std::vector<double>>());
    TensorField2 xx(grid, dim, dim);
    auto e = j.at("XX").get<std::vector<double>>();
    if (e.size() != xx.raw().size()) throw ParameterError("rough path JSON: wrong XX size");
    xx.raw() = std::move(e);
    return rough::RoughPath(std::move(x), std::move(xx));
}

void write_json(const json& j, const std::string& filename) {
    std::ofstream out(filename);
    if (!out) throw ParameterError("cannot open for writing: " + filename);
    out << j.dump(2) << "\n";
}

json read_json(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw ParameterError("cannot open: " + filename);
    return json::parse(in);
}

std::string file_hash(const std::string& filename) {
    std::ifstream in(filename, std::ios::binary);
    if (!in) throw ParameterError("cannot open: " + filename);
    std::uint64_t h = 0xcbf29ce484222325ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace roughkit::io
