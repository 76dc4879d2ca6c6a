#include "nlscat/field_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace nlscat {

void write_field(const std::string& path, const Field& f, const std::string& description) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    nlohmann::json header = {
        {"d", f.grid.d}, {"L", f.grid.L}, {"N", f.grid.N}, {"description", description}};
    out << header.dump() << "\n";
    out << std::setprecision(17);
    const Grid& g = f.grid;
    const int N = g.N;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (g.d == 1) {
            out << g.x(static_cast<int>(i));
        } else {
            out << g.x(static_cast<int>(i / N)) << "," << g.x(static_cast<int>(i % N));
        }
        out << "," << f[i].real() << "," << f[i].imag() << "\n";
    }
}

Field read_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw InvalidField("empty field file: " + path);
    auto header = nlohmann::json::parse(line);
    int d = header.at("d").get<int>();
    double L = header.at("L").get<double>();
    int N = header.at("N").get<int>();
    if (N < 8 || (N & (N - 1)) != 0)
        throw InvalidField("field file header: N must be a power of two, N >= 8");
    Grid g(d, L, N);
    Field f(g);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!std::getline(in, line)) throw InvalidField("field file truncated: " + path);
        std::stringstream ss(line);
        std::string tok;
        double re = 0.0, im = 0.0;
        // skip the d coordinate columns
        for (int c = 0; c < d; ++c) std::getline(ss, tok, ',');
        std::getline(ss, tok, ',');
        re = std::stod(tok);
        std::getline(ss, tok, ',');
        im = std::stod(tok);
        f[i] = Complex(re, im);
    }
    return f;
}

}  // namespace nlscat
