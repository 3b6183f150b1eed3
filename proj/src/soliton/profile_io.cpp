#include "solq/soliton/profile_io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "solq/csv.hpp"

namespace solq::soliton {

void save_profile(const RadialProfile& profile, const ModelParams& params,
                  const std::filesystem::path& csv_path) {
    CsvWriter csv({"r", "f", "g"});
    for (std::size_t i = 0; i < profile.grid.size(); ++i) {
        csv.cell(profile.grid.points[i]).cell(profile.f[i]).cell(profile.g[i]);
        csv.end_row();
    }
    csv.write(csv_path);

    const auto asymp = decay_constants(params);
    std::ofstream meta(csv_path.string() + ".meta");
    if (!meta) throw std::runtime_error("cannot open " + csv_path.string() + ".meta");
    meta << "ell0 = " << format_double(params.ell0) << "\n"
         << "lambda = " << format_double(params.lambda) << "\n"
         << "omega = " << format_double(params.omega) << "\n"
         << "c2 = " << format_double(profile.c2) << "\n"
         << "norm = " << format_double(profile.norm) << "\n"
         << "nu = " << format_double(asymp.nu) << "\n"
         << "B = " << format_double(asymp.b_const) << "\n";
}

LoadedProfile load_profile(const std::filesystem::path& csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open " + csv_path.string());
    LoadedProfile out;
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        double r, f, g;
        char comma;
        if (!(row >> r >> comma >> f >> comma >> g))
            throw std::runtime_error("malformed profile row: " + line);
        out.profile.grid.points.push_back(r);
        out.profile.f.push_back(f);
        out.profile.g.push_back(g);
    }
    out.profile.grid.validate();

    std::ifstream meta(csv_path.string() + ".meta");
    if (!meta) throw std::runtime_error("cannot open " + csv_path.string() + ".meta");
    std::map<std::string, double> kv;
    while (std::getline(meta, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        key.erase(key.find_last_not_of(" \t") + 1);
        kv[key] = std::stod(line.substr(eq + 1));
    }
    for (const char* required : {"ell0", "lambda", "omega", "c2", "norm"})
        if (!kv.count(required))
            throw std::runtime_error(std::string("profile sidecar missing key: ") + required);
    out.params.ell0 = kv["ell0"];
    out.params.lambda = kv["lambda"];
    out.params.omega = kv["omega"];
    out.profile.c2 = kv["c2"];
    out.profile.norm = kv["norm"];
    return out;
}

} // namespace solq::soliton
