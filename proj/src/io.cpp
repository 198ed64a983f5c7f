#include "hsch/io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace hsch {

namespace {

nlohmann::json grid_json(const Grid& g) {
    nlohmann::json j;
    j["dim"] = g.dim();
    for (int k = 0; k < g.dim(); ++k) {
        nlohmann::json a;
        a["lo"] = g.axis(k).lo;
        a["hi"] = g.axis(k).hi;
        a["n"] = g.axis(k).n;
        j["axes"].push_back(a);
    }
    return j;
}

void write_raw(const std::string& path, const double* data, std::size_t count) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path);
    os.write(reinterpret_cast<const char*>(data),
             static_cast<std::streamsize>(count * sizeof(double)));
}

} // namespace

void write_snapshot(const std::string& path_base, const std::string& name,
                    const ScalarField& f, double t) {
    write_raw(path_base + ".f64", f.data().data(), f.size());
    nlohmann::json j;
    j["field"] = name;
    j["t"] = t;
    j["layout"] = "node";
    j["dtype"] = "float64-le";
    j["count"] = f.size();
    j["grid"] = grid_json(f.grid());
    std::ofstream os(path_base + ".json");
    os << j.dump(2) << "\n";
}

void write_snapshot(const std::string& path_base, const std::string& name,
                    const VectorField& v, double t) {
    std::vector<double> packed;
    for (int k = 0; k < v.components(); ++k)
        packed.insert(packed.end(), v.comp(k).begin(), v.comp(k).end());
    write_raw(path_base + ".f64", packed.data(), packed.size());
    nlohmann::json j;
    j["field"] = name;
    j["t"] = t;
    j["layout"] = "faces";
    j["dtype"] = "float64-le";
    j["count"] = packed.size();
    for (int k = 0; k < v.components(); ++k)
        j["component_sizes"].push_back(v.comp_size(k));
    j["grid"] = grid_json(v.grid());
    std::ofstream os(path_base + ".json");
    os << j.dump(2) << "\n";
}

ScalarField read_scalar_snapshot(const std::string& path_base) {
    std::ifstream js(path_base + ".json");
    if (!js) throw std::runtime_error("cannot open " + path_base + ".json");
    nlohmann::json j;
    js >> j;
    const auto& axes = j["grid"]["axes"];
    Grid g = (j["grid"]["dim"].get<int>() == 1)
                 ? Grid::interval(axes[0]["lo"], axes[0]["hi"], axes[0]["n"])
                 : Grid::rectangle(axes[0]["lo"], axes[0]["hi"], axes[0]["n"],
                                   axes[1]["lo"], axes[1]["hi"], axes[1]["n"]);
    ScalarField f(g, Bc::None);
    std::ifstream is(path_base + ".f64", std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path_base + ".f64");
    is.read(reinterpret_cast<char*>(f.data().data()),
            static_cast<std::streamsize>(f.size() * sizeof(double)));
    if (static_cast<std::size_t>(is.gcount()) != f.size() * sizeof(double))
        throw std::runtime_error("snapshot size mismatch in " + path_base);
    return f;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::string s((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return s;
}

} // namespace hsch
